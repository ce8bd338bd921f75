//! CSV readers and writers for the file interfaces.
//!
//! Schemas (headers are fixed and version-stable):
//!   measurement samples  `f_ghz,d_m,pl_db,env,state`
//!   LOS observations     `d_m,los`               (los in {0,1})
//!   link results         `ap_id,ue_id,d2_m,d3_m,state,pl_db,sf_db,pen_db,total_db`
//!   empirical CDF        `x_db,p`
//!
//! Read errors always name the 1-based line number.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::fitting::{LosObservation, MeasurementSample};
use crate::registry::{Environment, LinkState, Scenario};
use crate::simulator::LinkResult;
use crate::units::{Distance, Frequency};

pub const SAMPLES_HEADER: &str = "f_ghz,d_m,pl_db,env,state";
pub const LOS_OBS_HEADER: &str = "d_m,los";
pub const LINKS_HEADER: &str = "ap_id,ue_id,d2_m,d3_m,state,pl_db,sf_db,pen_db,total_db";
pub const CDF_HEADER: &str = "x_db,p";

fn split_fields(line: &str) -> Vec<&str> {
    line.split(',').map(str::trim).collect()
}

fn parse_f64(field: &str, name: &str, line_no: usize) -> Result<f64> {
    field.parse::<f64>().map_err(|_| {
        Error::io(format!(
            "line {line_no}: cannot parse {name} '{field}' as a number"
        ))
    })
}

fn check_header(first: Option<&str>, expected: &str) -> Result<()> {
    match first {
        None => Err(Error::io("empty file: expected a CSV header line")),
        Some(h) if h.trim() == expected => Ok(()),
        Some(h) => Err(Error::io(format!(
            "line 1: expected header '{expected}', got '{}'",
            h.trim()
        ))),
    }
}

/// Parse measurement samples from CSV text.
pub fn parse_samples(text: &str) -> Result<Vec<MeasurementSample>> {
    let mut lines = text.lines();
    check_header(lines.next(), SAMPLES_HEADER)?;
    let mut out = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line_no = idx + 2;
        if line.trim().is_empty() {
            continue;
        }
        let fields = split_fields(line);
        if fields.len() != 5 {
            return Err(Error::io(format!(
                "line {line_no}: expected 5 fields, got {}",
                fields.len()
            )));
        }
        let f_ghz = parse_f64(fields[0], "f_ghz", line_no)?;
        let d_m = parse_f64(fields[1], "d_m", line_no)?;
        let pl_db = parse_f64(fields[2], "pl_db", line_no)?;
        if !pl_db.is_finite() {
            return Err(Error::io(format!("line {line_no}: pl_db must be finite")));
        }
        let environment = Environment::from_token(fields[3])
            .map_err(|e| Error::io(format!("line {line_no}: {e}")))?;
        let state = LinkState::from_token(fields[4])
            .map_err(|e| Error::io(format!("line {line_no}: {e}")))?;
        let f =
            Frequency::from_ghz(f_ghz).map_err(|e| Error::io(format!("line {line_no}: {e}")))?;
        let d =
            Distance::from_meters(d_m).map_err(|e| Error::io(format!("line {line_no}: {e}")))?;
        out.push(MeasurementSample {
            f,
            d,
            pl_db,
            scenario: Scenario { environment, state },
        });
    }
    if out.is_empty() {
        return Err(Error::io("no data rows after the header"));
    }
    Ok(out)
}

pub fn read_samples_file(path: &Path) -> Result<Vec<MeasurementSample>> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::io(format!("{}: {e}", path.display())))?;
    parse_samples(&text).map_err(|e| Error::io(format!("{}: {e}", path.display())))
}

pub fn write_samples<W: Write>(w: &mut W, samples: &[MeasurementSample]) -> std::io::Result<()> {
    writeln!(w, "{SAMPLES_HEADER}")?;
    for s in samples {
        writeln!(
            w,
            "{:.6},{:.4},{:.4},{},{}",
            s.f.ghz(),
            s.d.meters(),
            s.pl_db,
            s.scenario.environment.token(),
            s.scenario.state.token()
        )?;
    }
    Ok(())
}

/// Parse binary LOS observations from CSV text.
pub fn parse_los_observations(text: &str) -> Result<Vec<LosObservation>> {
    let mut lines = text.lines();
    check_header(lines.next(), LOS_OBS_HEADER)?;
    let mut out = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line_no = idx + 2;
        if line.trim().is_empty() {
            continue;
        }
        let fields = split_fields(line);
        if fields.len() != 2 {
            return Err(Error::io(format!(
                "line {line_no}: expected 2 fields, got {}",
                fields.len()
            )));
        }
        let d_m = parse_f64(fields[0], "d_m", line_no)?;
        if !d_m.is_finite() || d_m < 0.0 {
            return Err(Error::io(format!("line {line_no}: d_m must be >= 0")));
        }
        let los = match fields[1] {
            "0" => false,
            "1" => true,
            other => {
                return Err(Error::io(format!(
                    "line {line_no}: los must be 0 or 1, got '{other}'"
                )))
            }
        };
        out.push(LosObservation { d_m, los });
    }
    if out.is_empty() {
        return Err(Error::io("no data rows after the header"));
    }
    Ok(out)
}

pub fn read_los_observations_file(path: &Path) -> Result<Vec<LosObservation>> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::io(format!("{}: {e}", path.display())))?;
    parse_los_observations(&text).map_err(|e| Error::io(format!("{}: {e}", path.display())))
}

pub fn write_los_observations<W: Write>(w: &mut W, obs: &[LosObservation]) -> std::io::Result<()> {
    writeln!(w, "{LOS_OBS_HEADER}")?;
    for o in obs {
        writeln!(w, "{:.4},{}", o.d_m, o.los as u8)?;
    }
    Ok(())
}

pub fn write_links<W: Write>(w: &mut W, links: &[LinkResult]) -> std::io::Result<()> {
    writeln!(w, "{LINKS_HEADER}")?;
    for r in links {
        writeln!(
            w,
            "{},{},{:.4},{:.4},{},{:.4},{:.4},{:.4},{:.4}",
            r.ap_id,
            r.ue_id,
            r.d2_m,
            r.d3_m,
            r.state.token(),
            r.pl_db,
            r.sf_db,
            r.penetration_db,
            r.total_db
        )?;
    }
    Ok(())
}

pub fn write_cdf<W: Write>(w: &mut W, points: &[(f64, f64)]) -> std::io::Result<()> {
    writeln!(w, "{CDF_HEADER}")?;
    for (x, p) in points {
        writeln!(w, "{x:.4},{p:.6}")?;
    }
    Ok(())
}
