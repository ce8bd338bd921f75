//! Acceptance suite: one test per release criterion, each printing a
//! PASS line. Expected values are frozen from independent high-precision
//! hand computation, never from the code under test.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use inh_channel::csvio;
use inh_channel::fitting::{
    centroid_f0, default_bp_grid, fit_abg, fit_ci, fit_cif, fit_dual, los_mse, LosObservation,
    MeasurementSample,
};
use inh_channel::geometry::Point2;
use inh_channel::los::{p_los, sample_los, LosModelId, ALL_LOS_MODELS};
use inh_channel::pathloss::{
    fspl, pl_abg, pl_ci, pl_cif, pl_dual_abg, pl_dual_cif, sample_shadow_fading, AbgParams,
    CiParams, CifParams, DualAbgParams, DualCifParams,
};
use inh_channel::penetration::{Material, MaterialLossTable};
use inh_channel::registry::{
    Environment, LinkState, ModelFamily, ModelParams, ParamRegistry, Scenario, Slope,
};
use inh_channel::simulator::{
    cdf, los_by_map, run_drop, ApPlacement, CdfField, DropConfig, FloorPlan, LosMode, Wall,
};
use inh_channel::units::{Distance, Frequency};

fn ghz(x: f64) -> Frequency {
    Frequency::from_ghz(x).unwrap()
}

fn meters(x: f64) -> Distance {
    Distance::from_meters(x).unwrap()
}

fn office_nlos() -> Scenario {
    Scenario {
        environment: Environment::IndoorOffice,
        state: LinkState::Nlos,
    }
}

/// Criterion 1: the nine derived numeric examples across the five
/// deterministic evaluators match a hand-computed oracle within 0.1 dB.
#[test]
fn c1_golden_path_loss_evaluations() {
    // (label, implementation value, hand-computed oracle value)
    let cases: Vec<(&str, f64, f64)> = vec![
        ("fspl 28 GHz", fspl(ghz(28.0)), 61.390_943_848_727_76),
        ("fspl 2.5 GHz", fspl(ghz(2.5)), 40.406_583_395_324_13),
        (
            "CI office-LOS 28 GHz 10 m",
            pl_ci(&CiParams::new(1.73, 3.02).unwrap(), ghz(28.0), meters(10.0)),
            78.690_943_848_727_76,
        ),
        (
            "CI free-space exponent 28 GHz 100 m",
            pl_ci(&CiParams::new(2.0, 0.0).unwrap(), ghz(28.0), meters(100.0)),
            101.390_943_848_727_76,
        ),
        (
            "CIF office-NLOS 28 GHz 10 m",
            pl_cif(
                &CifParams::new(3.19, 0.06, ghz(24.2), 8.29).unwrap(),
                ghz(28.0),
                meters(10.0),
            ),
            93.591_489_303_273_2,
        ),
        (
            "ABG office-NLOS 28 GHz 10 m",
            pl_abg(
                &AbgParams::new(3.83, 17.30, 2.49, 8.03).unwrap(),
                ghz(28.0),
                meters(10.0),
            ),
            91.634_234_980_421_26,
        ),
        (
            "ABG mall-NLOS 39.5 GHz 10 m",
            pl_abg(
                &AbgParams::new(3.21, 18.09, 2.24, 6.97).unwrap(),
                ghz(39.5),
                meters(10.0),
            ),
            85.953_774_942_032_71,
        ),
        (
            "dual-ABG office-NLOS 28 GHz 20 m",
            pl_dual_abg(
                &DualAbgParams {
                    alpha1: 1.7,
                    beta1: 33.0,
                    gamma: 2.49,
                    d_bp: 6.90,
                    alpha2: 4.17,
                    sigma_sf_db: 7.78,
                },
                ghz(28.0),
                meters(20.0),
            ),
            102.567_613_258_399_07,
        ),
        (
            "dual-CIF office-NLOS at centroid 20 m",
            pl_dual_cif(
                &DualCifParams {
                    n1: 2.51,
                    b1: 0.12,
                    f0: ghz(24.1),
                    n2: 4.25,
                    b2: 0.04,
                    d_bp: 7.8,
                    sigma_sf_db: 7.65,
                },
                ghz(24.1),
                meters(20.0),
            ),
            99.859_452_802_285_58,
        ),
    ];
    assert_eq!(cases.len(), 9);
    for (label, got, oracle) in cases {
        assert!(
            (got - oracle).abs() <= 0.1,
            "{label}: got {got}, oracle {oracle}"
        );
        // the implementations are the same closed-form expressions, so
        // they should in fact agree far tighter than the acceptance bound
        assert!(
            (got - oracle).abs() < 1e-9,
            "{label}: got {got}, oracle {oracle}"
        );
    }
    println!("acceptance 1 (golden path-loss evaluations): PASS");
}

/// Criterion 2: the built-in registry byte-matches the checked-in golden
/// transcription, and both LOS rows carry n = 1.73 < 2.
#[test]
fn c2_registry_fidelity() {
    let golden = include_str!("../assets/registry.json");
    let builtin = ParamRegistry::builtin();
    assert_eq!(
        builtin.to_json_pretty(),
        golden,
        "registry JSON drifted from golden file"
    );

    let parsed = ParamRegistry::from_json(golden).unwrap();
    assert_eq!(parsed, builtin);
    assert_eq!(builtin.rows.len(), 6);

    for environment in [Environment::IndoorOffice, Environment::ShoppingMall] {
        let scenario = Scenario {
            environment,
            state: LinkState::Los,
        };
        match builtin
            .lookup(scenario, ModelFamily::Ci, Slope::Single)
            .unwrap()
        {
            ModelParams::Ci(p) => {
                assert_eq!(p.n, 1.73);
                assert!(
                    p.n < 2.0,
                    "LOS exponent must stay below the free-space value"
                );
            }
            other => panic!("LOS row is not a CI entry: {other:?}"),
        }
        assert!(builtin
            .lookup(scenario, ModelFamily::Abg, Slope::Single)
            .is_none());
        assert!(builtin
            .lookup(scenario, ModelFamily::Cif, Slope::Dual)
            .is_none());
    }
    println!("acceptance 2 (registry fidelity): PASS");
}

/// Criterion 3: structural identities on >= 1000 randomized (f, d)
/// points: CIF(b=0) == CI and CIF(f=f0) == CI exactly, CI(1 m) == FSPL
/// exactly, dual-slope branch gap below 1e-4 dB at the breakpoint, and
/// strict monotonicity in distance for every registered model.
#[test]
fn c3_structural_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(301);
    for _ in 0..1000 {
        let f = ghz(10f64.powf(rng.gen_range(0.5f64.log10()..2.0)));
        let d = meters(10f64.powf(rng.gen_range(0.0..3.0)));
        let n = rng.gen_range(0.5..6.0);
        let ci = CiParams {
            n,
            sigma_sf_db: 0.0,
        };

        let b_zero = CifParams {
            n,
            b: 0.0,
            f0: ghz(24.2),
            sigma_sf_db: 0.0,
        };
        assert_eq!(pl_cif(&b_zero, f, d), pl_ci(&ci, f, d));

        let at_f0 = CifParams {
            n,
            b: rng.gen_range(-0.2..0.4),
            f0: f,
            sigma_sf_db: 0.0,
        };
        assert_eq!(pl_cif(&at_f0, f, d), pl_ci(&ci, f, d));

        assert_eq!(pl_ci(&ci, f, meters(1.0)), fspl(f));
    }

    let registry = ParamRegistry::builtin();
    let freqs = [0.5, 6.0, 28.0, 73.0, 100.0];
    let all_models: Vec<&ModelParams> = registry
        .rows
        .iter()
        .flat_map(|r| [r.ci_cif.as_ref(), r.abg.as_ref()])
        .flatten()
        .collect();
    assert_eq!(all_models.len(), 10);

    for params in &all_models {
        for f in freqs {
            let f = ghz(f);
            // dual-slope continuity at the breakpoint
            if let Some(bp) = match params {
                ModelParams::DualCif(p) => Some(p.d_bp),
                ModelParams::DualAbg(p) => Some(p.d_bp),
                _ => None,
            } {
                let below = params.path_loss(f, meters(bp - 1e-6));
                let above = params.path_loss(f, meters(bp + 1e-6));
                assert!(
                    (below - above).abs() < 1e-4,
                    "branch gap {} dB at breakpoint {bp}",
                    (below - above).abs()
                );
                assert_eq!(
                    params.path_loss(f, meters(bp)),
                    params.path_loss(f, meters(bp)),
                );
            }
            // strict monotonicity on a 1000-point log grid over [1, 1000] m
            let mut prev = f64::NEG_INFINITY;
            for i in 0..1000 {
                let d = 10f64.powf(3.0 * i as f64 / 999.0);
                let pl = params.path_loss(f, meters(d));
                assert!(
                    pl > prev,
                    "path loss not strictly increasing at d = {d} m ({} GHz)",
                    f.ghz()
                );
                prev = pl;
            }
        }
    }
    println!("acceptance 3 (structural identities): PASS");
}

/// Criterion 4: LOS-probability piecewise checks and curve sanity on a
/// 10^4-point grid out to 1 km.
#[test]
fn c4_los_probability_piecewise() {
    for d in [0.0, 0.5, 1.0, 1.2] {
        assert_eq!(p_los(LosModelId::NewInH, d).unwrap(), 1.0);
    }
    let at5 = p_los(LosModelId::NewInH, 5.0).unwrap();
    assert!((at5 - 0.4455).abs() <= 0.001, "got {at5}");

    // the exponential branch approaches 0.3238 while the far branch
    // starts at 0.32: the published rounding leaves a gap <= 0.004
    let gap =
        p_los(LosModelId::NewInH, 6.5 - 1e-9).unwrap() - p_los(LosModelId::NewInH, 6.5).unwrap();
    assert!(gap.abs() <= 0.004, "branch gap {gap}");

    // every curve stays a probability and never rises by more than the
    // rounding of its published constants (< 6e-3 at the ITU floors)
    let grid_points = 10_000;
    for model in ALL_LOS_MODELS {
        let mut prev = f64::INFINITY;
        for i in 0..grid_points {
            let d = 1000.0 * i as f64 / (grid_points - 1) as f64;
            let p = p_los(model, d).unwrap();
            assert!((0.0..=1.0).contains(&p), "{model} at {d} m: {p}");
            assert!(
                p <= prev + 0.006,
                "{model} rises from {prev} to {p} at {d} m"
            );
            prev = p;
        }
    }
    println!("acceptance 4 (LOS-probability piecewise checks): PASS");
}

fn synth_ci(
    rng: &mut ChaCha8Rng,
    truth: &CiParams,
    count: usize,
    d_range: (f64, f64),
    freqs: &[f64],
) -> Vec<MeasurementSample> {
    (0..count)
        .map(|_| {
            let d = 10f64.powf(rng.gen_range(d_range.0.log10()..d_range.1.log10()));
            let f = freqs[rng.gen_range(0..freqs.len())];
            let pl = pl_ci(truth, ghz(f), meters(d))
                + sample_shadow_fading(truth.sigma_sf_db, rng).unwrap();
            MeasurementSample {
                f: ghz(f),
                d: meters(d),
                pl_db: pl,
                scenario: office_nlos(),
            }
        })
        .collect()
}

/// Criterion 5: fitting round-trips over 100 seeded trials per family.
#[test]
fn c5_fitting_round_trips() {
    // CI noiseless: exact recovery in every trial
    for trial in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(5000 + trial);
        let n_true = rng.gen_range(1.2..4.5);
        let truth = CiParams::new(n_true, 0.0).unwrap();
        let samples = synth_ci(&mut rng, &truth, 50, (2.0, 100.0), &[6.0, 28.0, 73.0]);
        let fit = fit_ci(&samples).unwrap();
        match fit.params {
            ModelParams::Ci(p) => assert!((p.n - n_true).abs() < 1e-9),
            other => panic!("unexpected {other:?}"),
        }
        assert!(fit.sigma_sf_db < 1e-9);
    }

    // CI noisy: n within 0.05 and sigma within 0.2 dB in >= 95 of 100 trials
    let mut ci_hits = 0;
    for trial in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(5100 + trial);
        let truth = CiParams::new(3.19, 8.29).unwrap();
        let samples = synth_ci(&mut rng, &truth, 5000, (2.0, 50.0), &[28.0, 73.0]);
        let fit = fit_ci(&samples).unwrap();
        let n = match fit.params {
            ModelParams::Ci(p) => p.n,
            _ => unreachable!(),
        };
        if (n - 3.19).abs() <= 0.05 && (fit.sigma_sf_db - 8.29).abs() <= 0.2 {
            ci_hits += 1;
        }
    }
    assert!(
        ci_hits >= 95,
        "CI noisy round-trip: only {ci_hits}/100 inside tolerance"
    );

    // ABG three-parameter recovery: alpha 0.1, gamma 0.15, beta 2 dB
    let mut abg_hits = 0;
    for trial in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(5200 + trial);
        let truth = AbgParams::new(3.83, 17.30, 2.49, 8.0).unwrap();
        let samples: Vec<MeasurementSample> = (0..10_000)
            .map(|_| {
                let d = 10f64.powf(rng.gen_range(2.0f64.log10()..50.0f64.log10()));
                let f = [6.0, 28.0, 73.0][rng.gen_range(0..3)];
                let pl = pl_abg(&truth, ghz(f), meters(d))
                    + sample_shadow_fading(truth.sigma_sf_db, &mut rng).unwrap();
                MeasurementSample {
                    f: ghz(f),
                    d: meters(d),
                    pl_db: pl,
                    scenario: office_nlos(),
                }
            })
            .collect();
        let fit = fit_abg(&samples).unwrap();
        match fit.params {
            ModelParams::Abg(p) => {
                if (p.alpha - 3.83).abs() <= 0.1
                    && (p.gamma - 2.49).abs() <= 0.15
                    && (p.beta - 17.30).abs() <= 2.0
                {
                    abg_hits += 1;
                }
            }
            other => panic!("unexpected {other:?}"),
        }
    }
    assert!(
        abg_hits >= 95,
        "ABG round-trip: only {abg_hits}/100 inside tolerance"
    );

    // ABG noiseless exact recovery
    {
        let truth = AbgParams::new(3.83, 17.30, 2.49, 0.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5999);
        let samples: Vec<MeasurementSample> = (0..60)
            .map(|_| {
                let d = 10f64.powf(rng.gen_range(0.2..1.8));
                let f = [6.0, 28.0, 73.0][rng.gen_range(0..3)];
                MeasurementSample {
                    f: ghz(f),
                    d: meters(d),
                    pl_db: pl_abg(&truth, ghz(f), meters(d)),
                    scenario: office_nlos(),
                }
            })
            .collect();
        let fit = fit_abg(&samples).unwrap();
        match fit.params {
            ModelParams::Abg(p) => {
                assert!((p.alpha - 3.83).abs() < 1e-6);
                assert!((p.beta - 17.30).abs() < 1e-6);
                assert!((p.gamma - 2.49).abs() < 1e-6);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    // dual-slope: breakpoint within one default-grid step, slopes within 0.3
    let truth = DualAbgParams {
        alpha1: 1.7,
        beta1: 33.0,
        gamma: 2.49,
        d_bp: 6.90,
        alpha2: 4.17,
        sigma_sf_db: 7.78,
    };
    let mut dual_hits = 0;
    for trial in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(5300 + trial);
        let samples: Vec<MeasurementSample> = (0..20_000)
            .map(|_| {
                let d = 10f64.powf(rng.gen_range(1.5f64.log10()..60.0f64.log10()));
                let f = [28.0, 73.0][rng.gen_range(0..2)];
                let pl = pl_dual_abg(&truth, ghz(f), meters(d))
                    + sample_shadow_fading(truth.sigma_sf_db, &mut rng).unwrap();
                MeasurementSample {
                    f: ghz(f),
                    d: meters(d),
                    pl_db: pl,
                    scenario: office_nlos(),
                }
            })
            .collect();
        let grid = default_bp_grid(&samples);
        let step_ratio = grid[1] / grid[0];
        let fit = fit_dual(&samples, ModelFamily::Abg, None).unwrap();
        match fit.params {
            ModelParams::DualAbg(p) => {
                let within_step = (p.d_bp / 6.90).ln().abs() <= step_ratio.ln() * 1.0001;
                if within_step && (p.alpha1 - 1.7).abs() <= 0.3 && (p.alpha2 - 4.17).abs() <= 0.3 {
                    dual_hits += 1;
                }
            }
            other => panic!("unexpected {other:?}"),
        }
    }
    assert!(
        dual_hits >= 95,
        "dual round-trip: only {dual_hits}/100 inside tolerance"
    );

    println!(
        "acceptance 5 (fitting round-trips): PASS (ci {ci_hits}/100, abg {abg_hits}/100, dual {dual_hits}/100)"
    );
}

/// Criterion 6: the closed-form / least-squares fits agree with an
/// independent brute-force grid search on 20 random small datasets.
#[test]
fn c6_grid_search_oracle_equivalence() {
    for trial in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(600 + trial);
        let count = rng.gen_range(20..=50);

        // --- CI: grid over n in [1, 6] step 1e-3
        let truth = CiParams::new(rng.gen_range(1.5..4.0), rng.gen_range(0.5..3.0)).unwrap();
        let samples = synth_ci(&mut rng, &truth, count, (2.0, 100.0), &[6.0, 28.0, 73.0]);
        let fit_n = match fit_ci(&samples).unwrap().params {
            ModelParams::Ci(p) => p.n,
            _ => unreachable!(),
        };
        let sse_ci = |n: f64| -> f64 {
            samples
                .iter()
                .map(|s| {
                    let r = s.pl_db - (fspl(s.f) + 10.0 * n * s.d.meters().log10());
                    r * r
                })
                .sum()
        };
        let step = 1e-3;
        let mut best = (f64::INFINITY, 0.0);
        let mut n = 1.0;
        while n <= 6.0 + 1e-12 {
            let sse = sse_ci(n);
            if sse < best.0 {
                best = (sse, n);
            }
            n += step;
        }
        assert!(
            (fit_n - best.1).abs() <= step + 1e-12,
            "trial {trial}: CI closed form {fit_n} vs grid argmin {}",
            best.1
        );

        // --- ABG: exhaustive grid over the slope parameters (alpha,
        // gamma), with the intercept at its conditional optimum (the mean
        // residual). The intercept rides on the quantized slopes, so its
        // agreement bound is the exact affine propagation of the realized
        // slope deviations through the design means.
        let abg_truth = AbgParams::new(
            rng.gen_range(1.5..4.0),
            rng.gen_range(5.0..30.0),
            rng.gen_range(1.0..3.0),
            rng.gen_range(0.5..3.0),
        )
        .unwrap();
        let abg_samples: Vec<MeasurementSample> = (0..count)
            .map(|_| {
                let d = 10f64.powf(rng.gen_range(0.4..2.0));
                let f = [6.0, 28.0, 73.0][rng.gen_range(0..3)];
                let pl = pl_abg(&abg_truth, ghz(f), meters(d))
                    + sample_shadow_fading(abg_truth.sigma_sf_db, &mut rng).unwrap();
                MeasurementSample {
                    f: ghz(f),
                    d: meters(d),
                    pl_db: pl,
                    scenario: office_nlos(),
                }
            })
            .collect();
        let (fa, fb, fg) = match fit_abg(&abg_samples).unwrap().params {
            ModelParams::Abg(p) => (p.alpha, p.beta, p.gamma),
            _ => unreachable!(),
        };
        // moments of the objective: SSE(a, g | conditional beta) expands to
        // a quadratic in (a, g), evaluated per grid point
        let nf = abg_samples.len() as f64;
        let (mut s_ld, mut s_lf, mut s_y) = (0.0, 0.0, 0.0);
        let (mut s_ldld, mut s_lflf, mut s_ldlf) = (0.0, 0.0, 0.0);
        let (mut s_yld, mut s_ylf, mut s_yy) = (0.0, 0.0, 0.0);
        for s in &abg_samples {
            let ld = 10.0 * s.d.meters().log10();
            let lf = 10.0 * s.f.ghz().log10();
            let y = s.pl_db;
            s_ld += ld;
            s_lf += lf;
            s_y += y;
            s_ldld += ld * ld;
            s_lflf += lf * lf;
            s_ldlf += ld * lf;
            s_yld += y * ld;
            s_ylf += y * lf;
            s_yy += y * y;
        }
        let (a_step, g_step) = (0.01, 0.01);
        let mut best = (f64::INFINITY, 0.0, 0.0);
        let mut a = 0.5;
        while a <= 6.5 + 1e-12 {
            let mut g = 0.0;
            while g <= 5.0 + 1e-12 {
                let beta = (s_y - a * s_ld - g * s_lf) / nf;
                let sse = s_yy - 2.0 * a * s_yld - 2.0 * g * s_ylf
                    + a * a * s_ldld
                    + 2.0 * a * g * s_ldlf
                    + g * g * s_lflf
                    - nf * beta * beta;
                if sse < best.0 {
                    best = (sse, a, g);
                }
                g += g_step;
            }
            a += a_step;
        }
        let (a_grid, g_grid) = (best.1, best.2);
        let beta_grid = (s_y - a_grid * s_ld - g_grid * s_lf) / nf;
        assert!(
            (fa - a_grid).abs() <= a_step + 1e-12,
            "trial {trial}: alpha {fa} vs {a_grid}"
        );
        assert!(
            (fg - g_grid).abs() <= g_step + 1e-12,
            "trial {trial}: gamma {fg} vs {g_grid}"
        );
        let beta_tol = (s_ld / nf) * (fa - a_grid).abs() + (s_lf / nf) * (fg - g_grid).abs() + 1e-6;
        assert!(
            (fb - beta_grid).abs() <= beta_tol,
            "trial {trial}: beta {fb} vs {beta_grid} (tolerance {beta_tol})"
        );

        // --- CIF: grid over (n, b)
        let cif_truth = CifParams::new(
            rng.gen_range(1.5..4.0),
            rng.gen_range(-0.2..0.3),
            ghz(30.0),
            rng.gen_range(0.5..3.0),
        )
        .unwrap();
        let cif_samples: Vec<MeasurementSample> = (0..count)
            .map(|_| {
                let d = 10f64.powf(rng.gen_range(0.4..2.0));
                let f = [14.0, 28.0, 60.0][rng.gen_range(0..3)];
                let pl = pl_cif(&cif_truth, ghz(f), meters(d))
                    + sample_shadow_fading(cif_truth.sigma_sf_db, &mut rng).unwrap();
                MeasurementSample {
                    f: ghz(f),
                    d: meters(d),
                    pl_db: pl,
                    scenario: office_nlos(),
                }
            })
            .collect();
        let (fn_, fb_) = match fit_cif(&cif_samples).unwrap().params {
            ModelParams::Cif(p) => (p.n, p.b),
            _ => unreachable!(),
        };
        let f0 = centroid_f0(&cif_samples).unwrap();
        // moments over the two regressors x1 = 10*log10(d), x2 = x1*u
        let (mut s11, mut s22, mut s12) = (0.0, 0.0, 0.0);
        let (mut sy1, mut sy2, mut syy) = (0.0, 0.0, 0.0);
        for s in &cif_samples {
            let x1 = 10.0 * s.d.meters().log10();
            let x2 = x1 * (s.f.hz() - f0.hz()) / f0.hz();
            let y = s.pl_db - fspl(s.f);
            s11 += x1 * x1;
            s22 += x2 * x2;
            s12 += x1 * x2;
            sy1 += y * x1;
            sy2 += y * x2;
            syy += y * y;
        }
        let (n_step, b_step) = (0.005, 0.002);
        let mut best = (f64::INFINITY, 0.0, 0.0);
        let mut n = 0.5;
        while n <= 6.0 + 1e-12 {
            let mut b = -1.0;
            while b <= 1.0 + 1e-12 {
                let c = n * b;
                let sse = syy - 2.0 * n * sy1 - 2.0 * c * sy2
                    + n * n * s11
                    + 2.0 * n * c * s12
                    + c * c * s22;
                if sse < best.0 {
                    best = (sse, n, b);
                }
                b += b_step;
            }
            n += n_step;
        }
        assert!(
            (fn_ - best.1).abs() <= n_step + 1e-12,
            "trial {trial}: n {fn_} vs {}",
            best.1
        );
        assert!(
            (fb_ - best.2).abs() <= 1.5 * b_step,
            "trial {trial}: b {fb_} vs {}",
            best.2
        );
    }
    println!("acceptance 6 (grid-search oracle equivalence): PASS");
}

/// Criterion 7: data synthesized from the indoor-hotspot curve must rank
/// that curve first by binned MSE in at least 95 of 100 seeded runs.
#[test]
fn c7_los_mse_self_consistency() {
    let mut wins = 0;
    for run in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(700 + run);
        let obs: Vec<LosObservation> = (0..100_000)
            .map(|_| {
                let d = rng.gen_range(0.0..70.0);
                let state = sample_los(LosModelId::NewInH, d, &mut rng).unwrap();
                LosObservation {
                    d_m: d,
                    los: state == LinkState::Los,
                }
            })
            .collect();
        let mut scored: Vec<(LosModelId, f64)> = ALL_LOS_MODELS
            .into_iter()
            .map(|m| (m, los_mse(m, &obs, 1.0).unwrap()))
            .collect();
        scored.sort_by(|a, b| a.1.total_cmp(&b.1));
        if scored[0].0 == LosModelId::NewInH {
            wins += 1;
        }
    }
    assert!(wins >= 95, "generator ranked first in only {wins}/100 runs");
    println!("acceptance 7 (LOS-MSE self-consistency): PASS ({wins}/100 wins)");
}

/// Criterion 8: the seven measured penetration rates are exact, the
/// shipped material table byte-matches its golden file, and multi-wall
/// additivity agrees with a brute-force path-walk oracle on 50 random
/// floor plans.
#[test]
fn c8_penetration_goldens_and_additivity() {
    let table = MaterialLossTable::builtin();
    let golden_points = [
        (Material::ClearGlass, 2.5, 20.0),
        (Material::ClearGlass, 28.0, 3.5),
        (Material::ClearGlass, 60.0, 11.3),
        (Material::MeshGlass, 2.5, 24.1),
        (Material::MeshGlass, 60.0, 31.9),
        (Material::TintedGlass, 28.0, 24.5),
        (Material::Wall, 28.0, 1.0),
    ];
    for (m, f, rate) in golden_points {
        assert_eq!(table.loss_rate(m, ghz(f)).unwrap(), rate, "{m} at {f} GHz");
    }
    assert_eq!(
        table.to_json_pretty(),
        include_str!("../assets/penetration.json"),
        "material table drifted from golden file"
    );

    let usable = [
        Material::ClearGlass,
        Material::MeshGlass,
        Material::TintedGlass,
        Material::Wall,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(800);
    for trial in 0..50 {
        let mut plan = FloorPlan::empty(40.0, 40.0);
        let wall_count = rng.gen_range(3..=12);
        for _ in 0..wall_count {
            plan.walls.push(Wall {
                from: Point2::new(rng.gen_range(0.0..40.0), rng.gen_range(0.0..40.0)),
                to: Point2::new(rng.gen_range(0.0..40.0), rng.gen_range(0.0..40.0)),
                material: usable[rng.gen_range(0..usable.len())],
                thickness_cm: rng.gen_range(1.0..30.0),
            });
        }
        let ap = Point2::new(rng.gen_range(0.0..40.0), rng.gen_range(0.0..40.0));
        let ue = Point2::new(rng.gen_range(0.0..40.0), rng.gen_range(0.0..40.0));
        let f = ghz(rng.gen_range(0.5..100.0));

        let (_, crossed) = los_by_map(&plan, ap, ue).unwrap();
        let implementation: f64 = crossed
            .iter()
            .map(|&wi| {
                let w = &plan.walls[wi];
                table
                    .penetration_loss(w.material, w.thickness_cm, f)
                    .unwrap()
            })
            .sum();
        assert!(implementation >= 0.0);

        // path-walk oracle: march the AP->UE segment in small steps and
        // detect side changes of each wall's supporting line; the side
        // function is affine in the walk parameter, so the sign-change
        // root is exact and only in-extent hits are counted
        let mut oracle = 0.0;
        let steps = 20_000;
        for w in &plan.walls {
            let side = |t: f64| {
                let px = ap.x + t * (ue.x - ap.x);
                let py = ap.y + t * (ue.y - ap.y);
                (w.to.x - w.from.x) * (py - w.from.y) - (w.to.y - w.from.y) * (px - w.from.x)
            };
            let mut s_prev = side(0.0);
            for k in 1..=steps {
                let t = k as f64 / steps as f64;
                let s = side(t);
                if s_prev * s < 0.0 {
                    let t_prev = (k - 1) as f64 / steps as f64;
                    let t_star = t_prev + (t - t_prev) * s_prev.abs() / (s_prev.abs() + s.abs());
                    let hx = ap.x + t_star * (ue.x - ap.x);
                    let hy = ap.y + t_star * (ue.y - ap.y);
                    let wall_len2 = (w.to.x - w.from.x).powi(2) + (w.to.y - w.from.y).powi(2);
                    let u = ((hx - w.from.x) * (w.to.x - w.from.x)
                        + (hy - w.from.y) * (w.to.y - w.from.y))
                        / wall_len2;
                    if u > 0.0 && u < 1.0 {
                        oracle += table
                            .penetration_loss(w.material, w.thickness_cm, f)
                            .unwrap();
                    }
                }
                s_prev = s;
            }
        }
        assert!(
            (implementation - oracle).abs() < 1e-9,
            "trial {trial}: implementation {implementation} dB vs oracle {oracle} dB"
        );
    }
    println!("acceptance 8 (penetration goldens and additivity): PASS");
}

/// Criterion 9: a 10^4-UE stochastic-LOS drop reproduces the LOS curve
/// within 0.02 in every well-populated 1 m bin, and output files are
/// byte-identical across reruns of the same seed.
#[test]
fn c9_simulator_end_to_end() {
    let plan = FloorPlan::empty(50.0, 120.0);
    let config = DropConfig {
        environment: Environment::IndoorOffice,
        ap: ApPlacement::Grid { count: 100 },
        ue_count: 10_000,
        ap_height_m: 3.0,
        ue_height_m: 1.5,
        frequency: ghz(28.0),
        family: ModelFamily::Ci,
        slope: Slope::Single,
        los_mode: LosMode::Stochastic(LosModelId::NewInH),
        sigma_sf_override_db: None,
        seed: 902,
    };
    let registry = ParamRegistry::builtin();
    let materials = MaterialLossTable::builtin();
    let results = run_drop(&config, &plan, &registry, &materials).unwrap();
    assert_eq!(results.len(), 1_000_000);

    // bin links by 2D distance; in every bin with at least 1000 links the
    // empirical LOS fraction must match the curve at the bin's mean
    // distance within 0.02
    let mut bins: std::collections::BTreeMap<u64, (usize, usize, f64)> =
        std::collections::BTreeMap::new();
    for r in &results {
        let e = bins.entry(r.d2_m.floor() as u64).or_insert((0, 0, 0.0));
        e.0 += 1;
        e.1 += (r.state == LinkState::Los) as usize;
        e.2 += r.d2_m;
    }
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    for (_, (count, los_count, d_sum)) in bins {
        if count < 1000 {
            continue;
        }
        let fraction = los_count as f64 / count as f64;
        let expected = p_los(LosModelId::NewInH, d_sum / count as f64).unwrap();
        let err = (fraction - expected).abs();
        worst = worst.max(err);
        assert!(err <= 0.02, "bin error {err} exceeds 0.02");
        checked += 1;
    }
    assert!(checked >= 40, "only {checked} populated bins");
    println!("  ({checked} bins checked, worst error {worst:.4})");

    // byte reproducibility of both output files
    let rerun = run_drop(&config, &plan, &registry, &materials).unwrap();
    assert_eq!(results, rerun);
    let grid: Vec<f64> = (40..160).map(|x| x as f64).collect();
    let to_bytes = |links: &[inh_channel::simulator::LinkResult]| {
        let mut link_bytes = Vec::new();
        csvio::write_links(&mut link_bytes, links).unwrap();
        let mut cdf_bytes = Vec::new();
        let points = cdf(links, CdfField::TotalDb, &grid).unwrap();
        csvio::write_cdf(&mut cdf_bytes, &points).unwrap();
        (link_bytes, cdf_bytes)
    };
    assert_eq!(to_bytes(&results), to_bytes(&rerun));
    println!("acceptance 9 (simulator end-to-end consistency): PASS");
}
