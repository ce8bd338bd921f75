//! Parameter estimation for the CI / CIF / ABG / dual-slope families by
//! minimizing the shadow-fading standard deviation over a measured
//! path-loss dataset, plus the frequency-centroid helper and the
//! binned-MSE scorer for LOS-probability curves.
//!
//! CI has a closed form; CIF and ABG are linear least squares after
//! moving the known terms to the left-hand side; the dual-slope fits
//! run an exhaustive breakpoint grid with both segments re-fitted under
//! the continuity constraint at every candidate. Residual spread is the
//! population (1/N) root-mean-square of the model residuals, without
//! mean removal: the residuals ARE the shadow-fading samples, and only
//! models with a free intercept (ABG) zero their mean by construction.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::los::{p_los, LosModelId};
use crate::pathloss::{fspl, AbgParams, CiParams, CifParams, DualAbgParams, DualCifParams};
use crate::registry::{ModelFamily, ModelParams, Scenario};
use crate::units::{Distance, Frequency};

/// One measured path-loss point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementSample {
    pub f: Frequency,
    pub d: Distance,
    pub pl_db: f64,
    pub scenario: Scenario,
}

/// One binary LOS/NLOS observation at a 2D distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LosObservation {
    pub d_m: f64,
    pub los: bool,
}

/// A fitted model with its residual diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub params: ModelParams,
    /// Population RMS of the residuals, dB.
    pub sigma_sf_db: f64,
    pub sample_count: usize,
    /// Breakpoint candidates evaluated (dual-slope fits only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bp_grid_m: Option<Vec<f64>>,
    /// Per-sample residuals, dB, in input order. Not serialized; the CLI
    /// writes them to a separate CSV.
    #[serde(skip)]
    pub residuals_db: Vec<f64>,
}

impl FitResult {
    pub fn to_json_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("fit result serializes");
        s.push('\n');
        s
    }
}

fn rms(residuals: &[f64]) -> f64 {
    (residuals.iter().map(|r| r * r).sum::<f64>() / residuals.len() as f64).sqrt()
}

/// Sample-count-weighted centroid of the frequencies present in the
/// dataset: `sum(f_k * N_k) / sum(N_k)` over the unique frequencies,
/// which is just the mean carrier over all samples.
pub fn centroid_f0(samples: &[MeasurementSample]) -> Result<Frequency> {
    if samples.is_empty() {
        return Err(Error::domain(
            "cannot compute a frequency centroid of zero samples",
        ));
    }
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    for s in samples {
        *counts.entry(s.f.ghz().to_bits()).or_insert(0) += 1;
    }
    let total = samples.len() as f64;
    let weighted: f64 = counts
        .iter()
        .map(|(&bits, &n)| f64::from_bits(bits) * n as f64)
        .sum();
    Frequency::from_ghz(weighted / total)
}

fn unique_frequency_count(samples: &[MeasurementSample]) -> usize {
    let mut set: Vec<u64> = samples.iter().map(|s| s.f.ghz().to_bits()).collect();
    set.sort_unstable();
    set.dedup();
    set.len()
}

fn unique_distance_count(samples: &[MeasurementSample]) -> usize {
    let mut set: Vec<u64> = samples.iter().map(|s| s.d.meters().to_bits()).collect();
    set.sort_unstable();
    set.dedup();
    set.len()
}

/// Normal-equation accumulator for a K-column least-squares problem,
/// solved by Gaussian elimination with partial pivoting.
struct NormalEq<const K: usize> {
    ata: [[f64; K]; K],
    aty: [f64; K],
}

impl<const K: usize> NormalEq<K> {
    fn new() -> Self {
        NormalEq {
            ata: [[0.0; K]; K],
            aty: [0.0; K],
        }
    }

    fn add(&mut self, x: &[f64; K], y: f64) {
        for i in 0..K {
            for j in 0..K {
                self.ata[i][j] += x[i] * x[j];
            }
            self.aty[i] += x[i] * y;
        }
    }

    fn solve(mut self) -> Option<[f64; K]> {
        let scale = self
            .ata
            .iter()
            .flatten()
            .fold(0.0f64, |m, v| m.max(v.abs()))
            .max(1e-300);
        for col in 0..K {
            let pivot_row = (col..K)
                .max_by(|&a, &b| self.ata[a][col].abs().total_cmp(&self.ata[b][col].abs()))
                .unwrap();
            if self.ata[pivot_row][col].abs() < 1e-10 * scale {
                return None;
            }
            if pivot_row != col {
                self.ata.swap(pivot_row, col);
                self.aty.swap(pivot_row, col);
            }
            for row in (col + 1)..K {
                let factor = self.ata[row][col] / self.ata[col][col];
                for j in col..K {
                    self.ata[row][j] -= factor * self.ata[col][j];
                }
                self.aty[row] -= factor * self.aty[col];
            }
        }
        let mut out = [0.0; K];
        for row in (0..K).rev() {
            let mut acc = self.aty[row];
            for (a, o) in self.ata[row][(row + 1)..].iter().zip(&out[(row + 1)..]) {
                acc -= a * o;
            }
            out[row] = acc / self.ata[row][row];
        }
        Some(out)
    }
}

/// Closed-form CI fit: `n = sum(D_i * A_i) / sum(D_i^2)` with
/// `D = 10*log10(d)` and `A = PL - FSPL(f, 1 m)`.
pub fn fit_ci(samples: &[MeasurementSample]) -> Result<FitResult> {
    if samples.len() < 2 {
        return Err(Error::degenerate(format!(
            "CI fit needs at least 2 samples, got {}",
            samples.len()
        )));
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for s in samples {
        let d10 = 10.0 * s.d.meters().log10();
        num += d10 * (s.pl_db - fspl(s.f));
        den += d10 * d10;
    }
    if den == 0.0 {
        return Err(Error::degenerate(
            "all samples sit at the 1 m anchor, the exponent is unidentifiable",
        ));
    }
    let n = num / den;
    if !(n > 0.0) {
        return Err(Error::fit_failure(format!(
            "fitted CI exponent {n:.4} is not positive"
        )));
    }
    let residuals: Vec<f64> = samples
        .iter()
        .map(|s| s.pl_db - (fspl(s.f) + 10.0 * n * s.d.meters().log10()))
        .collect();
    let sigma = rms(&residuals);
    Ok(FitResult {
        params: ModelParams::Ci(CiParams::new(n, sigma)?),
        sigma_sf_db: sigma,
        sample_count: samples.len(),
        bp_grid_m: None,
        residuals_db: residuals,
    })
}

/// Ordinary least squares for (alpha, beta, gamma).
pub fn fit_abg(samples: &[MeasurementSample]) -> Result<FitResult> {
    if samples.len() < 3 {
        return Err(Error::degenerate(format!(
            "ABG fit needs at least 3 samples, got {}",
            samples.len()
        )));
    }
    if unique_distance_count(samples) < 2 {
        return Err(Error::degenerate(
            "distance column (log10 d) is constant: need at least 2 distinct distances",
        ));
    }
    if unique_frequency_count(samples) < 2 {
        return Err(Error::degenerate(
            "frequency column (log10 f) is constant: need at least 2 distinct frequencies",
        ));
    }
    let mut eq = NormalEq::<3>::new();
    for s in samples {
        eq.add(
            &[10.0 * s.d.meters().log10(), 1.0, 10.0 * s.f.ghz().log10()],
            s.pl_db,
        );
    }
    let [alpha, beta, gamma] = eq.solve().ok_or_else(|| {
        Error::degenerate("ABG design matrix is rank deficient (collinear columns)")
    })?;
    let residuals: Vec<f64> = samples
        .iter()
        .map(|s| {
            s.pl_db
                - (10.0 * alpha * s.d.meters().log10() + beta + 10.0 * gamma * s.f.ghz().log10())
        })
        .collect();
    let sigma = rms(&residuals);
    let params = AbgParams::new(alpha, beta, gamma, sigma)
        .map_err(|e| Error::fit_failure(format!("fitted ABG parameters are inadmissible: {e}")))?;
    Ok(FitResult {
        params: ModelParams::Abg(params),
        sigma_sf_db: sigma,
        sample_count: samples.len(),
        bp_grid_m: None,
        residuals_db: residuals,
    })
}

/// CIF fit: linear least squares on `A = n*D + (n*b)*(D*u)` with
/// `u = (f - f0)/f0` and f0 the dataset centroid. A single-frequency
/// dataset cannot identify b; it falls back to the CI fit with b = 0.
pub fn fit_cif(samples: &[MeasurementSample]) -> Result<FitResult> {
    if samples.len() < 2 {
        return Err(Error::degenerate(format!(
            "CIF fit needs at least 2 samples, got {}",
            samples.len()
        )));
    }
    let f0 = centroid_f0(samples)?;
    if unique_frequency_count(samples) < 2 {
        log::warn!("CIF fit on a single-frequency dataset: b is unidentifiable, fixing b = 0");
        let ci = fit_ci(samples)?;
        let (n, sigma) = match ci.params {
            ModelParams::Ci(p) => (p.n, p.sigma_sf_db),
            _ => unreachable!("fit_ci returns CI params"),
        };
        return Ok(FitResult {
            params: ModelParams::Cif(CifParams::new(n, 0.0, f0, sigma)?),
            ..ci
        });
    }
    let mut eq = NormalEq::<2>::new();
    for s in samples {
        let d10 = 10.0 * s.d.meters().log10();
        let u = (s.f.hz() - f0.hz()) / f0.hz();
        eq.add(&[d10, d10 * u], s.pl_db - fspl(s.f));
    }
    let [n, nb] = eq.solve().ok_or_else(|| {
        Error::degenerate("CIF design matrix is rank deficient: need at least 2 distinct distances")
    })?;
    if !(n > 0.0) {
        return Err(Error::fit_failure(format!(
            "fitted CIF exponent {n:.4} is not positive"
        )));
    }
    let b = nb / n;
    let residuals: Vec<f64> = samples
        .iter()
        .map(|s| {
            let u = (s.f.hz() - f0.hz()) / f0.hz();
            s.pl_db - (fspl(s.f) + 10.0 * n * (1.0 + b * u) * s.d.meters().log10())
        })
        .collect();
    let sigma = rms(&residuals);
    let params = CifParams::new(n, b, f0, sigma)
        .map_err(|e| Error::fit_failure(format!("fitted CIF parameters are inadmissible: {e}")))?;
    Ok(FitResult {
        params: ModelParams::Cif(params),
        sigma_sf_db: sigma,
        sample_count: samples.len(),
        bp_grid_m: None,
        residuals_db: residuals,
    })
}

/// Default breakpoint grid: 50 log-spaced candidates between the 5th and
/// 95th percentiles of the sample distances.
pub fn default_bp_grid(samples: &[MeasurementSample]) -> Vec<f64> {
    let mut d: Vec<f64> = samples.iter().map(|s| s.d.meters()).collect();
    d.sort_by(f64::total_cmp);
    let lo = percentile_sorted(&d, 0.05).max(1.0 + 1e-9);
    let hi = percentile_sorted(&d, 0.95);
    if !(hi > lo) {
        return vec![lo];
    }
    let count = 50;
    (0..count)
        .map(|i| lo * (hi / lo).powf(i as f64 / (count - 1) as f64))
        .collect()
}

/// Linear-interpolation percentile of an ascending-sorted slice, q in [0, 1].
pub fn percentile_sorted(sorted: &[f64], q: f64) -> f64 {
    let idx = q * (sorted.len() - 1) as f64;
    let lo = idx.floor() as usize;
    let frac = idx - lo as f64;
    if lo + 1 >= sorted.len() {
        sorted[sorted.len() - 1]
    } else {
        sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac
    }
}

/// Dual-slope fit over an exhaustive breakpoint grid. Both segments are
/// re-fitted for every candidate under the continuity constraint; the
/// candidate with the smallest residual RMS wins, smallest breakpoint on
/// ties. `family` selects dual-CIF (for `Ci`/`Cif`) or dual-ABG.
pub fn fit_dual(
    samples: &[MeasurementSample],
    family: ModelFamily,
    bp_grid: Option<Vec<f64>>,
) -> Result<FitResult> {
    if samples.len() < 4 {
        return Err(Error::degenerate(format!(
            "dual-slope fit needs at least 4 samples, got {}",
            samples.len()
        )));
    }
    let grid = match bp_grid {
        Some(g) => {
            let mut g = g;
            g.sort_by(f64::total_cmp);
            if g.iter().any(|&bp| !(bp > 1.0) || !bp.is_finite()) {
                return Err(Error::domain("breakpoint candidates must be > 1 m"));
            }
            g
        }
        None => default_bp_grid(samples),
    };
    let multi_frequency = unique_frequency_count(samples) >= 2;
    if !multi_frequency && family == ModelFamily::Abg {
        return Err(Error::degenerate(
            "frequency column (log10 f) is constant: need at least 2 distinct frequencies",
        ));
    }
    if !multi_frequency {
        log::warn!("dual-CIF fit on a single-frequency dataset: fixing b1 = b2 = 0");
    }
    let f0 = centroid_f0(samples)?;

    let mut any_split = false;
    let mut best: Option<(f64, ModelParams, Vec<f64>)> = None;
    for &bp in &grid {
        let below = samples.iter().filter(|s| s.d.meters() <= bp).count();
        let above = samples.len() - below;
        if below < 2 || above < 2 {
            continue;
        }
        any_split = true;
        let candidate = match family {
            ModelFamily::Abg => fit_dual_abg_at(samples, bp),
            ModelFamily::Ci | ModelFamily::Cif => fit_dual_cif_at(samples, bp, f0, multi_frequency),
        };
        if let Some((params, residuals)) = candidate {
            let sigma = rms(&residuals);
            let better = match &best {
                None => true,
                Some((best_sigma, _, _)) => sigma < *best_sigma,
            };
            if better {
                best = Some((sigma, params, residuals));
            }
        }
    }
    if !any_split {
        return Err(Error::degenerate(
            "no breakpoint candidate has at least 2 samples on each side",
        ));
    }
    let (sigma, params, residuals) = best.ok_or_else(|| {
        Error::fit_failure("no breakpoint candidate produced admissible dual-slope parameters")
    })?;
    Ok(FitResult {
        params,
        sigma_sf_db: sigma,
        sample_count: samples.len(),
        bp_grid_m: Some(grid),
        residuals_db: residuals,
    })
}

fn fit_dual_abg_at(samples: &[MeasurementSample], bp: f64) -> Option<(ModelParams, Vec<f64>)> {
    let design = |s: &MeasurementSample| {
        [
            10.0 * s.d.meters().min(bp).log10(),
            1.0,
            10.0 * s.f.ghz().log10(),
            10.0 * (s.d.meters() / bp).max(1.0).log10(),
        ]
    };
    let mut eq = NormalEq::<4>::new();
    for s in samples {
        eq.add(&design(s), s.pl_db);
    }
    let [alpha1, beta1, gamma, alpha2] = eq.solve()?;
    let residuals: Vec<f64> = samples
        .iter()
        .map(|s| {
            let x = design(s);
            s.pl_db - (alpha1 * x[0] + beta1 + gamma * x[2] + alpha2 * x[3])
        })
        .collect();
    let params = DualAbgParams {
        alpha1,
        beta1,
        gamma,
        d_bp: bp,
        alpha2,
        sigma_sf_db: rms(&residuals),
    };
    params.validate().ok()?;
    Some((ModelParams::DualAbg(params), residuals))
}

fn fit_dual_cif_at(
    samples: &[MeasurementSample],
    bp: f64,
    f0: Frequency,
    multi_frequency: bool,
) -> Option<(ModelParams, Vec<f64>)> {
    let d_parts = |s: &MeasurementSample| {
        (
            10.0 * s.d.meters().min(bp).log10(),
            10.0 * (s.d.meters() / bp).max(1.0).log10(),
        )
    };
    let u_of = |s: &MeasurementSample| (s.f.hz() - f0.hz()) / f0.hz();

    let (n1, b1, n2, b2) = if multi_frequency {
        let mut eq = NormalEq::<4>::new();
        for s in samples {
            let (d1, d2) = d_parts(s);
            let u = u_of(s);
            eq.add(&[d1, d1 * u, d2, d2 * u], s.pl_db - fspl(s.f));
        }
        let [n1, c1, n2, c2] = eq.solve()?;
        if !(n1 > 0.0) || !(n2 > 0.0) {
            return None;
        }
        (n1, c1 / n1, n2, c2 / n2)
    } else {
        let mut eq = NormalEq::<2>::new();
        for s in samples {
            let (d1, d2) = d_parts(s);
            eq.add(&[d1, d2], s.pl_db - fspl(s.f));
        }
        let [n1, n2] = eq.solve()?;
        if !(n1 > 0.0) || !(n2 > 0.0) {
            return None;
        }
        (n1, 0.0, n2, 0.0)
    };
    let residuals: Vec<f64> = samples
        .iter()
        .map(|s| {
            let (d1, d2) = d_parts(s);
            let u = u_of(s);
            let model = fspl(s.f)
                + 10.0 * n1 * (1.0 + b1 * u) * (d1 / 10.0)
                + 10.0 * n2 * (1.0 + b2 * u) * (d2 / 10.0);
            s.pl_db - model
        })
        .collect();
    let params = DualCifParams {
        n1,
        b1,
        f0,
        n2,
        b2,
        d_bp: bp,
        sigma_sf_db: rms(&residuals),
    };
    params.validate().ok()?;
    Some((ModelParams::DualCif(params), residuals))
}

/// Binned mean-squared error of a LOS-probability curve against binary
/// observations: distances are split into `bin_width` bins, the empirical
/// LOS fraction of every non-empty bin is compared with the curve at the
/// bin center, and the squared errors are averaged over non-empty bins.
pub fn los_mse(model: LosModelId, obs: &[LosObservation], bin_width: f64) -> Result<f64> {
    if obs.is_empty() {
        return Err(Error::domain("LOS MSE needs at least one observation"));
    }
    if !(bin_width > 0.0) || !bin_width.is_finite() {
        return Err(Error::domain(format!(
            "bin width must be > 0 m, got {bin_width}"
        )));
    }
    let mut bins: BTreeMap<u64, (usize, usize)> = BTreeMap::new();
    for o in obs {
        if !o.d_m.is_finite() || o.d_m < 0.0 {
            return Err(Error::domain(format!(
                "LOS observation distance must be >= 0 m, got {}",
                o.d_m
            )));
        }
        let idx = (o.d_m / bin_width).floor() as u64;
        let e = bins.entry(idx).or_insert((0, 0));
        e.0 += 1;
        e.1 += o.los as usize;
    }
    let mut sum = 0.0;
    for (&idx, &(count, los_count)) in &bins {
        let center = (idx as f64 + 0.5) * bin_width;
        let empirical = los_count as f64 / count as f64;
        let err = empirical - p_los(model, center)?;
        sum += err * err;
    }
    Ok(sum / bins.len() as f64)
}
