//! Subcommand implementations. Every run echoes its resolved
//! configuration as `# key = value` lines before any results.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use inh_channel::csvio;
use inh_channel::error::{Error, Result};
use inh_channel::fitting::{
    fit_abg, fit_ci, fit_cif, fit_dual, los_mse, percentile_sorted, FitResult, LosObservation,
};
use inh_channel::los::{p_los, sample_los, LosModelId, ALL_LOS_MODELS};
use inh_channel::pathloss::{fspl, sample_shadow_fading};
use inh_channel::penetration::MaterialLossTable;
use inh_channel::registry::{LinkState, ParamRegistry, Scenario};
use inh_channel::simulator::{cdf, run_drop, ApPlacement, DropConfig, FloorPlan, LosMode};
use inh_channel::units::{Distance, Frequency};

use crate::args::{CompareLosArgs, EvalArgs, FitArgs, SimulateArgs};

pub const REGISTRY_ENV: &str = "INH_REGISTRY";
pub const MATERIALS_ENV: &str = "INH_MATERIALS";

fn print_config(pairs: &[(&str, String)]) {
    println!("# resolved configuration");
    for (k, v) in pairs {
        println!("# {k} = {v}");
    }
}

/// Registry resolution order: --registry flag, then the INH_REGISTRY
/// environment variable, then the built-in table.
fn load_registry(flag: &Option<PathBuf>) -> Result<(ParamRegistry, String)> {
    if let Some(path) = flag {
        return Ok((
            ParamRegistry::from_json_file(path)?,
            path.display().to_string(),
        ));
    }
    if let Ok(path) = std::env::var(REGISTRY_ENV) {
        return Ok((ParamRegistry::from_json_file(Path::new(&path))?, path));
    }
    Ok((ParamRegistry::builtin(), "builtin".to_string()))
}

fn load_materials(flag: &Option<PathBuf>) -> Result<(MaterialLossTable, String)> {
    if let Some(path) = flag {
        return Ok((
            MaterialLossTable::from_json_file(path)?,
            path.display().to_string(),
        ));
    }
    if let Ok(path) = std::env::var(MATERIALS_ENV) {
        return Ok((MaterialLossTable::from_json_file(Path::new(&path))?, path));
    }
    Ok((MaterialLossTable::builtin(), "builtin".to_string()))
}

fn warn_if_out_of_band(f: Frequency) {
    if !f.in_supported_band() {
        eprintln!(
            "warning: {} GHz is outside the supported 0.5-100 GHz band; \
             model parameters are extrapolated",
            f.ghz()
        );
    }
}

fn parse_d_range(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::domain(format!(
            "--d-range expects start:stop:step, got '{spec}'"
        )));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.parse::<f64>()
                .map_err(|_| Error::domain(format!("--d-range: '{p}' is not a number")))
        })
        .collect::<Result<_>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !(step > 0.0) || stop < start {
        return Err(Error::domain(format!(
            "--d-range needs stop >= start and step > 0, got '{spec}'"
        )));
    }
    let mut out = Vec::new();
    let mut d = start;
    while d <= stop + 1e-9 {
        out.push(d);
        d += step;
    }
    Ok(out)
}

pub fn cmd_eval(args: &EvalArgs) -> Result<()> {
    let (registry, registry_source) = load_registry(&args.registry)?;
    let scenario = Scenario {
        environment: args.env.into(),
        state: args.state.into(),
    };
    let f = Frequency::from_ghz(args.f_ghz)?;
    let distances = match (&args.d_m, &args.d_range) {
        (Some(d), None) => vec![*d],
        (None, Some(spec)) => parse_d_range(spec)?,
        _ => unreachable!("clap enforces exactly one distance form"),
    };
    let params = registry.require(scenario, args.family.into(), args.slope.into())?;

    print_config(&[
        ("command", "eval".to_string()),
        ("registry", registry_source),
        ("scenario", scenario.to_string()),
        ("family", params.kind_name().to_string()),
        ("f_ghz", format!("{}", f.ghz())),
        ("points", format!("{}", distances.len())),
        ("with_sf", format!("{}", args.with_sf)),
        ("seed", format!("{}", args.seed)),
        (
            "params",
            serde_json::to_string(params).expect("params serialize"),
        ),
    ]);
    warn_if_out_of_band(f);

    struct EvalRow {
        d_m: f64,
        fspl_db: f64,
        pl_db: f64,
        sf: Option<(f64, f64)>,
    }

    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut rows: Vec<EvalRow> = Vec::new();
    for &d_m in &distances {
        let d = Distance::from_meters(d_m)?;
        let pl_db = params.path_loss(f, d);
        let sf = if args.with_sf {
            let sf = sample_shadow_fading(params.sigma_sf_db(), &mut rng)?;
            Some((sf, pl_db + sf))
        } else {
            None
        };
        rows.push(EvalRow {
            d_m,
            fspl_db: fspl(f),
            pl_db,
            sf,
        });
    }

    if args.with_sf {
        println!(
            "{:>10} {:>10} {:>10} {:>10} {:>10}",
            "d_m", "fspl_db", "pl_db", "sf_db", "total_db"
        );
    } else {
        println!("{:>10} {:>10} {:>10}", "d_m", "fspl_db", "pl_db");
    }
    for r in &rows {
        let (d, anchor, pl) = (r.d_m, r.fspl_db, r.pl_db);
        match r.sf {
            Some((sf, total)) => {
                println!("{d:>10.3} {anchor:>10.2} {pl:>10.2} {sf:>10.2} {total:>10.2}")
            }
            None => println!("{d:>10.3} {anchor:>10.2} {pl:>10.2}"),
        }
    }

    if let Some(path) = &args.csv_out {
        let mut w = BufWriter::new(File::create(path)?);
        if args.with_sf {
            writeln!(w, "d_m,fspl_db,pl_db,sf_db,total_db")?;
        } else {
            writeln!(w, "d_m,fspl_db,pl_db")?;
        }
        for r in &rows {
            let (d, anchor, pl) = (r.d_m, r.fspl_db, r.pl_db);
            match r.sf {
                Some((sf, total)) => writeln!(w, "{d:.4},{anchor:.4},{pl:.4},{sf:.4},{total:.4}")?,
                None => writeln!(w, "{d:.4},{anchor:.4},{pl:.4}")?,
            }
        }
    }
    Ok(())
}

pub fn cmd_fit(args: &FitArgs) -> Result<()> {
    let mut samples = csvio::read_samples_file(&args.input)?;
    let total_read = samples.len();
    if let Some(env) = args.env {
        let env: inh_channel::registry::Environment = env.into();
        samples.retain(|s| s.scenario.environment == env);
    }
    if let Some(state) = args.state {
        let state: LinkState = state.into();
        samples.retain(|s| s.scenario.state == state);
    }
    if samples.is_empty() {
        return Err(Error::degenerate(format!(
            "no samples left after filtering ({total_read} read)"
        )));
    }
    let bp_grid = match &args.bp_grid {
        None => None,
        Some(_) if matches!(args.slope, crate::args::SlopeArg::Single) => {
            return Err(Error::domain("--bp-grid is only valid with --slope dual"));
        }
        Some(spec) => Some(
            spec.split(',')
                .map(|p| {
                    p.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::domain(format!("--bp-grid: '{p}' is not a number")))
                })
                .collect::<Result<Vec<f64>>>()?,
        ),
    };

    print_config(&[
        ("command", "fit".to_string()),
        ("input", args.input.display().to_string()),
        ("samples_read", format!("{total_read}")),
        ("samples_used", format!("{}", samples.len())),
        (
            "family",
            inh_channel::registry::ModelFamily::from(args.family)
                .token()
                .to_string(),
        ),
        (
            "slope",
            inh_channel::registry::Slope::from(args.slope)
                .token()
                .to_string(),
        ),
    ]);

    let result: FitResult = match args.slope {
        crate::args::SlopeArg::Dual => fit_dual(&samples, args.family.into(), bp_grid)?,
        crate::args::SlopeArg::Single => match args.family {
            crate::args::FamilyArg::Ci => fit_ci(&samples)?,
            crate::args::FamilyArg::Cif => fit_cif(&samples)?,
            crate::args::FamilyArg::Abg => fit_abg(&samples)?,
        },
    };

    println!(
        "# fitted {} on {} samples, sigma_sf = {:.4} dB",
        result.params.kind_name(),
        result.sample_count,
        result.sigma_sf_db
    );
    let json = result.to_json_pretty();
    match &args.out {
        Some(path) => {
            std::fs::write(path, &json)?;
            println!("# wrote {}", path.display());
        }
        None => print!("{json}"),
    }

    if let Some(path) = &args.residuals_csv {
        let mut w = BufWriter::new(File::create(path)?);
        writeln!(w, "index,f_ghz,d_m,pl_db,residual_db")?;
        for (i, (s, r)) in samples.iter().zip(&result.residuals_db).enumerate() {
            writeln!(
                w,
                "{i},{:.6},{:.4},{:.4},{:.4}",
                s.f.ghz(),
                s.d.meters(),
                s.pl_db,
                r
            )?;
        }
        println!("# wrote {}", path.display());
    }
    Ok(())
}

pub fn cmd_compare_los(args: &CompareLosArgs) -> Result<()> {
    if !(args.bin_width > 0.0) || !args.bin_width.is_finite() {
        return Err(Error::domain(format!(
            "--bin-width must be > 0, got {}",
            args.bin_width
        )));
    }
    let (obs, source) = match (&args.obs, &args.synthetic) {
        (Some(path), None) => (
            csvio::read_los_observations_file(path)?,
            path.display().to_string(),
        ),
        (None, Some(model)) => {
            if args.count == 0 {
                return Err(Error::domain("--count must be >= 1"));
            }
            if !(args.d_max > 0.0) {
                return Err(Error::domain("--d-max must be > 0"));
            }
            let model: LosModelId = (*model).into();
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let obs: Vec<LosObservation> = (0..args.count)
                .map(|_| {
                    let d = rand::Rng::gen_range(&mut rng, 0.0..args.d_max);
                    let state = sample_los(model, d, &mut rng)?;
                    Ok(LosObservation {
                        d_m: d,
                        los: state == LinkState::Los,
                    })
                })
                .collect::<Result<_>>()?;
            (
                obs,
                format!(
                    "synthetic {model} (count {}, seed {})",
                    args.count, args.seed
                ),
            )
        }
        _ => unreachable!("clap enforces exactly one source"),
    };

    print_config(&[
        ("command", "compare-los".to_string()),
        ("observations", source),
        ("bin_width_m", format!("{}", args.bin_width)),
    ]);

    let mut scored: Vec<(LosModelId, f64)> = ALL_LOS_MODELS
        .into_iter()
        .map(|m| Ok((m, los_mse(m, &obs, args.bin_width)?)))
        .collect::<Result<_>>()?;
    scored.sort_by(|a, b| a.1.total_cmp(&b.1));
    println!("{:<22} {:>12}", "model", "mse");
    for (model, mse) in &scored {
        println!("{:<22} {mse:>12.6}", model.token());
    }

    if let Some(path) = &args.curves_out {
        if !(args.curves_step > 0.0) || !(args.curves_max > 0.0) {
            return Err(Error::domain("--curves-step and --curves-max must be > 0"));
        }
        let mut w = BufWriter::new(File::create(path)?);
        write!(w, "d_m")?;
        for m in ALL_LOS_MODELS {
            write!(w, ",p_{}", m.token())?;
        }
        writeln!(w)?;
        let steps = (args.curves_max / args.curves_step).round() as usize;
        for i in 0..=steps {
            let d = i as f64 * args.curves_step;
            write!(w, "{d:.3}")?;
            for m in ALL_LOS_MODELS {
                write!(w, ",{:.6}", p_los(m, d)?)?;
            }
            writeln!(w)?;
        }
        println!("# wrote {}", path.display());
    }
    Ok(())
}

fn describe_los_mode(mode: &LosMode) -> String {
    match mode {
        LosMode::MapBased => "map_based".to_string(),
        LosMode::Stochastic(m) => format!("stochastic {m}"),
    }
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<()> {
    let config = DropConfig::from_json_file(&args.config)?;
    let plan = FloorPlan::from_json_file(&args.plan)?;
    let (registry, registry_source) = load_registry(&args.registry)?;
    let (materials, materials_source) = load_materials(&args.materials)?;

    let ap_count = match &config.ap {
        ApPlacement::Positions(v) => v.len(),
        ApPlacement::Grid { count } => *count,
    };
    print_config(&[
        ("command", "simulate".to_string()),
        ("config", args.config.display().to_string()),
        ("plan", args.plan.display().to_string()),
        ("registry", registry_source),
        ("materials", materials_source),
        ("environment", config.environment.to_string()),
        ("ap_count", format!("{ap_count}")),
        ("ue_count", format!("{}", config.ue_count)),
        ("f_ghz", format!("{}", config.frequency.ghz())),
        (
            "model",
            format!("{}/{}", config.family.token(), config.slope.token()),
        ),
        ("los_mode", describe_los_mode(&config.los_mode)),
        (
            "sigma_sf_override_db",
            config
                .sigma_sf_override_db
                .map(|s| s.to_string())
                .unwrap_or_else(|| "none".to_string()),
        ),
        ("seed", format!("{}", config.seed)),
        ("walls", format!("{}", plan.walls.len())),
    ]);
    warn_if_out_of_band(config.frequency);

    let results = run_drop(&config, &plan, &registry, &materials)?;

    let links_path = format!("{}_links.csv", args.out_prefix);
    let mut w = BufWriter::new(File::create(&links_path)?);
    csvio::write_links(&mut w, &results)?;
    w.flush()?;

    let mut values: Vec<f64> = results
        .iter()
        .map(|r| match args.cdf_field {
            crate::args::CdfFieldArg::TotalDb => r.total_db,
            crate::args::CdfFieldArg::PlDb => r.pl_db,
        })
        .collect();
    values.sort_by(f64::total_cmp);
    let lo = values[0].floor() - 1.0;
    let hi = values[values.len() - 1].ceil() + 1.0;
    let grid: Vec<f64> = (0..)
        .map(|i| lo + i as f64 * 0.5)
        .take_while(|&x| x <= hi + 1e-9)
        .collect();
    let points = cdf(&results, args.cdf_field.into(), &grid)?;
    let cdf_path = format!("{}_cdf.csv", args.out_prefix);
    let mut w = BufWriter::new(File::create(&cdf_path)?);
    csvio::write_cdf(&mut w, &points)?;
    w.flush()?;

    if let Some(path) = &args.samples_out {
        // links re-expressed in the fitting schema: the measured loss is
        // the full budget, and clamped links report the evaluated 1 m
        let samples: Vec<inh_channel::fitting::MeasurementSample> = results
            .iter()
            .map(|r| inh_channel::fitting::MeasurementSample {
                f: config.frequency,
                d: Distance::from_meters(r.d3_m.max(1.0)).expect("clamped distance is valid"),
                pl_db: r.total_db,
                scenario: Scenario {
                    environment: config.environment,
                    state: r.state,
                },
            })
            .collect();
        let mut w = BufWriter::new(File::create(path)?);
        csvio::write_samples(&mut w, &samples)?;
        w.flush()?;
        println!("# wrote {}", path.display());
    }

    let los_fraction =
        results.iter().filter(|r| r.state == LinkState::Los).count() as f64 / results.len() as f64;
    let median = percentile_sorted(&values, 0.5);
    let p95 = percentile_sorted(&values, 0.95);
    println!("# wrote {links_path}");
    println!("# wrote {cdf_path}");
    println!(
        "summary: links={} los_fraction={los_fraction:.4} median_{field}={median:.2} p95_{field}={p95:.2}",
        results.len(),
        field = match args.cdf_field {
            crate::args::CdfFieldArg::TotalDb => "total_db",
            crate::args::CdfFieldArg::PlDb => "pl_db",
        }
    );
    Ok(())
}
