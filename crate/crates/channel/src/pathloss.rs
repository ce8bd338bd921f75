//! Large-scale path-loss models: free-space anchor, close-in (CI), CI with
//! frequency-dependent exponent (CIF), alpha-beta-gamma (ABG), and the
//! dual-slope CIF/ABG extensions, plus lognormal shadow-fading draws.
//!
//! All evaluators are deterministic and exclude shadow fading; callers
//! compose `sample_shadow_fading` on top when they want the stochastic
//! term. Frequencies enter the CI/CIF/FSPL formulas in Hz; the ABG
//! frequency term uses GHz.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::{Distance, Frequency, SPEED_OF_LIGHT, SUPPORTED_BAND_GHZ};

/// Close-in free-space reference-distance model: a single path-loss
/// exponent over a 1 m FSPL anchor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CiParams {
    /// Path-loss exponent.
    pub n: f64,
    /// Shadow-fading standard deviation, dB.
    pub sigma_sf_db: f64,
}

/// CI model with a frequency-dependent exponent `n * (1 + b*(f-f0)/f0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CifParams {
    pub n: f64,
    /// Linear frequency slope of the exponent.
    pub b: f64,
    /// Reference frequency: the sample-count-weighted centroid of the
    /// frequencies the model was fitted on.
    #[serde(rename = "f0_ghz")]
    pub f0: Frequency,
    pub sigma_sf_db: f64,
}

/// Alpha-beta-gamma model: free distance slope, floating offset, and
/// frequency slope (frequency in GHz).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbgParams {
    pub alpha: f64,
    /// Offset, dB.
    pub beta: f64,
    pub gamma: f64,
    pub sigma_sf_db: f64,
}

/// Dual-slope CIF: first-segment exponent up to the breakpoint, then a
/// second exponent anchored at the first segment's value there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualCifParams {
    pub n1: f64,
    pub b1: f64,
    #[serde(rename = "f0_ghz")]
    pub f0: Frequency,
    pub n2: f64,
    pub b2: f64,
    /// Breakpoint distance, meters.
    #[serde(rename = "d_bp_m")]
    pub d_bp: f64,
    pub sigma_sf_db: f64,
}

/// Dual-slope ABG, continuous at the breakpoint by construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualAbgParams {
    pub alpha1: f64,
    pub beta1: f64,
    pub gamma: f64,
    #[serde(rename = "d_bp_m")]
    pub d_bp: f64,
    pub alpha2: f64,
    pub sigma_sf_db: f64,
}

impl CiParams {
    pub fn new(n: f64, sigma_sf_db: f64) -> Result<Self> {
        let p = Self { n, sigma_sf_db };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.n > 0.0) {
            return Err(Error::domain(format!(
                "CI exponent must be > 0, got {}",
                self.n
            )));
        }
        check_sigma(self.sigma_sf_db)
    }
}

impl CifParams {
    pub fn new(n: f64, b: f64, f0: Frequency, sigma_sf_db: f64) -> Result<Self> {
        let p = Self {
            n,
            b,
            f0,
            sigma_sf_db,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.n > 0.0) {
            return Err(Error::domain(format!(
                "CIF exponent must be > 0, got {}",
                self.n
            )));
        }
        check_sigma(self.sigma_sf_db)?;
        check_effective_exponent(self.n, self.b, self.f0)
    }
}

impl AbgParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64, sigma_sf_db: f64) -> Result<Self> {
        let p = Self {
            alpha,
            beta,
            gamma,
            sigma_sf_db,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0) {
            return Err(Error::domain(format!(
                "ABG alpha must be > 0, got {}",
                self.alpha
            )));
        }
        if self.gamma < 0.0 {
            return Err(Error::domain(format!(
                "ABG gamma must be >= 0, got {}",
                self.gamma
            )));
        }
        check_sigma(self.sigma_sf_db)
    }
}

impl DualCifParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.d_bp > 1.0) {
            return Err(Error::domain(format!(
                "breakpoint must be > 1 m, got {} m",
                self.d_bp
            )));
        }
        check_sigma(self.sigma_sf_db)?;
        check_effective_exponent(self.n1, self.b1, self.f0)?;
        check_effective_exponent(self.n2, self.b2, self.f0)
    }
}

impl DualAbgParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.d_bp > 1.0) {
            return Err(Error::domain(format!(
                "breakpoint must be > 1 m, got {} m",
                self.d_bp
            )));
        }
        if !(self.alpha1 > 0.0) || !(self.alpha2 > 0.0) {
            return Err(Error::domain("dual-ABG slopes must be > 0".to_string()));
        }
        if self.gamma < 0.0 {
            return Err(Error::domain(format!(
                "ABG gamma must be >= 0, got {}",
                self.gamma
            )));
        }
        check_sigma(self.sigma_sf_db)
    }
}

fn check_sigma(sigma_sf_db: f64) -> Result<()> {
    if sigma_sf_db < 0.0 || !sigma_sf_db.is_finite() {
        return Err(Error::domain(format!(
            "shadow-fading sigma must be >= 0 dB, got {sigma_sf_db}"
        )));
    }
    Ok(())
}

/// The CIF effective exponent `n*(1 + b*(f-f0)/f0)` must stay positive
/// across the supported band; it is linear in f, so the band edges decide.
/// Also rejects a non-positive f0, which deserialization cannot catch.
fn check_effective_exponent(n: f64, b: f64, f0: Frequency) -> Result<()> {
    if !(n > 0.0) {
        return Err(Error::domain(format!("CIF exponent must be > 0, got {n}")));
    }
    if !(f0.ghz() > 0.0) || !f0.ghz().is_finite() {
        return Err(Error::domain(format!(
            "reference frequency must be positive, got {} GHz",
            f0.ghz()
        )));
    }
    for edge_ghz in [SUPPORTED_BAND_GHZ.0, SUPPORTED_BAND_GHZ.1] {
        let u = (edge_ghz * 1e9 - f0.hz()) / f0.hz();
        let eff = n * (1.0 + b * u);
        if !(eff > 0.0) {
            return Err(Error::domain(format!(
                "effective exponent {eff:.4} is not positive at {edge_ghz} GHz (n={n}, b={b}, f0={} GHz)",
                f0.ghz()
            )));
        }
    }
    Ok(())
}

/// Free-space path loss at the 1 m reference distance:
/// `20*log10(4*pi*f/c)` with f in Hz.
pub fn fspl(f: Frequency) -> f64 {
    20.0 * (4.0 * std::f64::consts::PI * f.hz() / SPEED_OF_LIGHT).log10()
}

/// CI path loss in dB, shadow fading excluded.
pub fn pl_ci(p: &CiParams, f: Frequency, d: Distance) -> f64 {
    fspl(f) + 10.0 * p.n * d.meters().log10()
}

/// CIF path loss in dB, shadow fading excluded.
///
/// Collapses to `pl_ci` bit-for-bit when `b == 0` or `f == f0`.
pub fn pl_cif(p: &CifParams, f: Frequency, d: Distance) -> f64 {
    let u = (f.hz() - p.f0.hz()) / p.f0.hz();
    fspl(f) + 10.0 * p.n * (1.0 + p.b * u) * d.meters().log10()
}

/// ABG path loss in dB, shadow fading excluded. The frequency term uses GHz.
pub fn pl_abg(p: &AbgParams, f: Frequency, d: Distance) -> f64 {
    10.0 * p.alpha * d.meters().log10() + p.beta + 10.0 * p.gamma * f.ghz().log10()
}

/// Dual-slope CIF path loss in dB. The second segment is anchored at the
/// first segment's value at the breakpoint, so the curve is continuous.
pub fn pl_dual_cif(p: &DualCifParams, f: Frequency, d: Distance) -> f64 {
    let u = (f.hz() - p.f0.hz()) / p.f0.hz();
    let slope1 = 10.0 * p.n1 * (1.0 + p.b1 * u);
    let anchor = fspl(f);
    let d = d.meters();
    if d <= p.d_bp {
        anchor + slope1 * d.log10()
    } else {
        let slope2 = 10.0 * p.n2 * (1.0 + p.b2 * u);
        anchor + slope1 * p.d_bp.log10() + slope2 * (d / p.d_bp).log10()
    }
}

/// Dual-slope ABG path loss in dB, continuous at the breakpoint.
pub fn pl_dual_abg(p: &DualAbgParams, f: Frequency, d: Distance) -> f64 {
    let freq_term = 10.0 * p.gamma * f.ghz().log10();
    let d = d.meters();
    if d <= p.d_bp {
        10.0 * p.alpha1 * d.log10() + p.beta1 + freq_term
    } else {
        10.0 * p.alpha1 * p.d_bp.log10()
            + p.beta1
            + freq_term
            + 10.0 * p.alpha2 * (d / p.d_bp).log10()
    }
}

/// One zero-mean Gaussian shadow-fading draw with standard deviation
/// `sigma_sf_db`. Always consumes exactly one standard-normal variate so
/// that RNG stream positions do not depend on sigma.
pub fn sample_shadow_fading<R: Rng + ?Sized>(sigma_sf_db: f64, rng: &mut R) -> Result<f64> {
    check_sigma(sigma_sf_db)?;
    let z: f64 = rng.sample(StandardNormal);
    Ok(sigma_sf_db * z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f_ghz(x: f64) -> Frequency {
        Frequency::from_ghz(x).unwrap()
    }

    fn d_m(x: f64) -> Distance {
        Distance::from_meters(x).unwrap()
    }

    #[test]
    fn fspl_reference_values() {
        assert!((fspl(f_ghz(28.0)) - 61.390_943_85).abs() < 0.01);
        assert!((fspl(f_ghz(2.5)) - 40.406_583_40).abs() < 0.01);
    }

    #[test]
    fn fspl_is_zero_at_c_over_4pi() {
        let f = Frequency::from_hz(SPEED_OF_LIGHT / (4.0 * std::f64::consts::PI)).unwrap();
        assert!(fspl(f).abs() < 1e-9);
    }

    #[test]
    fn ci_reference_values() {
        let office_los = CiParams::new(1.73, 3.02).unwrap();
        assert!((pl_ci(&office_los, f_ghz(28.0), d_m(10.0)) - 78.690_943_85).abs() < 0.02);
        let free_space = CiParams::new(2.0, 0.0).unwrap();
        assert!((pl_ci(&free_space, f_ghz(28.0), d_m(100.0)) - 101.390_943_85).abs() < 0.02);
    }

    #[test]
    fn ci_at_one_meter_is_fspl_exactly() {
        let p = CiParams::new(1.73, 3.02).unwrap();
        for ghz in [0.5, 2.5, 28.0, 73.0, 100.0] {
            assert_eq!(pl_ci(&p, f_ghz(ghz), d_m(1.0)), fspl(f_ghz(ghz)));
        }
    }

    #[test]
    fn cif_reference_value() {
        let p = CifParams::new(3.19, 0.06, f_ghz(24.2), 8.29).unwrap();
        assert!((pl_cif(&p, f_ghz(28.0), d_m(10.0)) - 93.591_489_30).abs() < 0.05);
    }

    #[test]
    fn abg_reference_values() {
        let office = AbgParams::new(3.83, 17.30, 2.49, 8.03).unwrap();
        assert!((pl_abg(&office, f_ghz(28.0), d_m(10.0)) - 91.634_234_98).abs() < 0.05);
        let mall = AbgParams::new(3.21, 18.09, 2.24, 6.97).unwrap();
        assert!((pl_abg(&mall, f_ghz(39.5), d_m(10.0)) - 85.953_774_94).abs() < 0.05);
    }

    #[test]
    fn abg_at_unit_arguments_is_beta() {
        let p = AbgParams::new(3.83, 17.30, 2.49, 0.0).unwrap();
        assert_eq!(pl_abg(&p, f_ghz(1.0), d_m(1.0)), 17.30);
    }

    #[test]
    fn dual_abg_reference_value() {
        let p = DualAbgParams {
            alpha1: 1.7,
            beta1: 33.0,
            gamma: 2.49,
            d_bp: 6.90,
            alpha2: 4.17,
            sigma_sf_db: 7.78,
        };
        assert!((pl_dual_abg(&p, f_ghz(28.0), d_m(20.0)) - 102.567_613_26).abs() < 0.1);
    }

    #[test]
    fn dual_cif_reference_value() {
        let p = DualCifParams {
            n1: 2.51,
            b1: 0.12,
            f0: f_ghz(24.1),
            n2: 4.25,
            b2: 0.04,
            d_bp: 7.8,
            sigma_sf_db: 7.65,
        };
        assert!((pl_dual_cif(&p, f_ghz(24.1), d_m(20.0)) - 99.859_452_80).abs() < 0.1);
    }

    #[test]
    fn dual_branches_agree_at_breakpoint() {
        let p = DualAbgParams {
            alpha1: 1.7,
            beta1: 33.0,
            gamma: 2.49,
            d_bp: 6.90,
            alpha2: 4.17,
            sigma_sf_db: 0.0,
        };
        let f = f_ghz(28.0);
        let at_bp = pl_dual_abg(&p, f, d_m(p.d_bp));
        // second-branch expression at d = d_bp: the added term is log10(1) = 0
        let second = 10.0 * p.alpha1 * p.d_bp.log10()
            + p.beta1
            + 10.0 * p.gamma * f.ghz().log10()
            + 10.0 * p.alpha2 * (p.d_bp / p.d_bp).log10();
        assert_eq!(at_bp, second);
    }

    #[test]
    fn cif_invariant_rejects_sign_flip_in_band() {
        // a large negative b drives the effective exponent negative at 100 GHz
        let err = CifParams::new(3.0, -1.5, f_ghz(24.0), 8.0);
        assert!(err.is_err());
    }

    #[test]
    fn shadow_fading_zero_sigma_and_determinism() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        assert_eq!(sample_shadow_fading(0.0, &mut rng).unwrap(), 0.0);
        assert!(sample_shadow_fading(-1.0, &mut rng).is_err());

        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..16)
                .map(|_| sample_shadow_fading(8.29, &mut rng).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(42), draw(42));
        assert_ne!(draw(42), draw(43));
    }

    #[test]
    fn shadow_fading_sample_statistics() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let sigma = 8.29;
        let n = 100_000;
        let draws: Vec<f64> = (0..n)
            .map(|_| sample_shadow_fading(sigma, &mut rng).unwrap())
            .collect();
        let mean = draws.iter().sum::<f64>() / n as f64;
        let var = draws.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n as f64;
        let std = var.sqrt();
        assert!(mean.abs() < 0.1, "sample mean {mean} out of +/-0.1 dB");
        assert!(
            (std - sigma).abs() < 0.02 * sigma,
            "sample std {std} more than 2% from {sigma}"
        );
    }

    proptest! {
        // CIF with b = 0 or f = f0 must reproduce CI bit-for-bit.
        #[test]
        fn cif_reverts_to_ci(n in 0.5f64..6.0, ghz in 0.5f64..100.0, d in 1.0f64..1000.0) {
            let ci = CiParams { n, sigma_sf_db: 0.0 };
            let f = f_ghz(ghz);
            let dist = d_m(d);

            let b_zero = CifParams { n, b: 0.0, f0: f_ghz(24.2), sigma_sf_db: 0.0 };
            prop_assert_eq!(pl_cif(&b_zero, f, dist), pl_ci(&ci, f, dist));

            let at_f0 = CifParams { n, b: 0.12, f0: f, sigma_sf_db: 0.0 };
            prop_assert_eq!(pl_cif(&at_f0, f, dist), pl_ci(&ci, f, dist));
        }

        #[test]
        fn ci_anchor_at_one_meter(ghz in 0.5f64..100.0, n in 0.5f64..6.0) {
            let p = CiParams { n, sigma_sf_db: 0.0 };
            prop_assert_eq!(pl_ci(&p, f_ghz(ghz), d_m(1.0)), fspl(f_ghz(ghz)));
        }
    }
}
