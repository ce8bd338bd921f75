//! Scenario taxonomy and the built-in path-loss parameter registry.
//!
//! The registry mirrors the published indoor parameter table: one row per
//! (environment, link state, slope), each row carrying a CI/CIF-column
//! entry and an ABG-column entry. LOS rows have no ABG model and no
//! dual-slope variant; those lookups return a typed absence, not an error.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pathloss::{
    pl_abg, pl_ci, pl_cif, pl_dual_abg, pl_dual_cif, AbgParams, CiParams, CifParams, DualAbgParams,
    DualCifParams,
};
use crate::units::{Distance, Frequency};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Environment {
    #[serde(rename = "office")]
    IndoorOffice,
    #[serde(rename = "mall")]
    ShoppingMall,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkState {
    Los,
    Nlos,
}

/// Environment x link-state pair selecting a registry row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Scenario {
    pub environment: Environment,
    pub state: LinkState,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelFamily {
    Ci,
    Cif,
    Abg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Slope {
    Single,
    Dual,
}

impl Environment {
    pub fn token(self) -> &'static str {
        match self {
            Environment::IndoorOffice => "office",
            Environment::ShoppingMall => "mall",
        }
    }

    pub fn from_token(s: &str) -> Result<Self> {
        match s {
            "office" => Ok(Environment::IndoorOffice),
            "mall" => Ok(Environment::ShoppingMall),
            other => Err(Error::domain(format!(
                "unknown environment '{other}' (expected 'office' or 'mall')"
            ))),
        }
    }
}

impl ModelFamily {
    pub fn token(self) -> &'static str {
        match self {
            ModelFamily::Ci => "ci",
            ModelFamily::Cif => "cif",
            ModelFamily::Abg => "abg",
        }
    }
}

impl Slope {
    pub fn token(self) -> &'static str {
        match self {
            Slope::Single => "single",
            Slope::Dual => "dual",
        }
    }
}

impl LinkState {
    pub fn token(self) -> &'static str {
        match self {
            LinkState::Los => "los",
            LinkState::Nlos => "nlos",
        }
    }

    pub fn from_token(s: &str) -> Result<Self> {
        match s {
            "los" => Ok(LinkState::Los),
            "nlos" => Ok(LinkState::Nlos),
            other => Err(Error::domain(format!(
                "unknown link state '{other}' (expected 'los' or 'nlos')"
            ))),
        }
    }
}

impl fmt::Display for Environment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl fmt::Display for LinkState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.environment, self.state)
    }
}

/// One concrete parameter set for any of the model families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelParams {
    Ci(CiParams),
    Cif(CifParams),
    Abg(AbgParams),
    DualCif(DualCifParams),
    DualAbg(DualAbgParams),
}

impl ModelParams {
    /// Deterministic path loss in dB (shadow fading excluded).
    pub fn path_loss(&self, f: Frequency, d: Distance) -> f64 {
        match self {
            ModelParams::Ci(p) => pl_ci(p, f, d),
            ModelParams::Cif(p) => pl_cif(p, f, d),
            ModelParams::Abg(p) => pl_abg(p, f, d),
            ModelParams::DualCif(p) => pl_dual_cif(p, f, d),
            ModelParams::DualAbg(p) => pl_dual_abg(p, f, d),
        }
    }

    pub fn sigma_sf_db(&self) -> f64 {
        match self {
            ModelParams::Ci(p) => p.sigma_sf_db,
            ModelParams::Cif(p) => p.sigma_sf_db,
            ModelParams::Abg(p) => p.sigma_sf_db,
            ModelParams::DualCif(p) => p.sigma_sf_db,
            ModelParams::DualAbg(p) => p.sigma_sf_db,
        }
    }

    pub fn slope(&self) -> Slope {
        match self {
            ModelParams::Ci(_) | ModelParams::Cif(_) | ModelParams::Abg(_) => Slope::Single,
            ModelParams::DualCif(_) | ModelParams::DualAbg(_) => Slope::Dual,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ModelParams::Ci(p) => p.validate(),
            ModelParams::Cif(p) => p.validate(),
            ModelParams::Abg(p) => p.validate(),
            ModelParams::DualCif(p) => p.validate(),
            ModelParams::DualAbg(p) => p.validate(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ModelParams::Ci(_) => "ci",
            ModelParams::Cif(_) => "cif",
            ModelParams::Abg(_) => "abg",
            ModelParams::DualCif(_) => "dual_cif",
            ModelParams::DualAbg(_) => "dual_abg",
        }
    }
}

/// One table row: the CI/CIF-column entry and the ABG-column entry for a
/// given scenario and slope.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegistryRow {
    pub environment: Environment,
    pub state: LinkState,
    pub slope: Slope,
    pub ci_cif: Option<ModelParams>,
    pub abg: Option<ModelParams>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamRegistry {
    pub rows: Vec<RegistryRow>,
}

impl ParamRegistry {
    /// The published indoor office / shopping-mall parameter table.
    pub fn builtin() -> Self {
        let ghz = |x| Frequency::from_ghz(x).expect("static frequency");
        ParamRegistry {
            rows: vec![
                RegistryRow {
                    environment: Environment::IndoorOffice,
                    state: LinkState::Los,
                    slope: Slope::Single,
                    ci_cif: Some(ModelParams::Ci(CiParams {
                        n: 1.73,
                        sigma_sf_db: 3.02,
                    })),
                    abg: None,
                },
                RegistryRow {
                    environment: Environment::IndoorOffice,
                    state: LinkState::Nlos,
                    slope: Slope::Single,
                    ci_cif: Some(ModelParams::Cif(CifParams {
                        n: 3.19,
                        b: 0.06,
                        f0: ghz(24.2),
                        sigma_sf_db: 8.29,
                    })),
                    abg: Some(ModelParams::Abg(AbgParams {
                        alpha: 3.83,
                        beta: 17.3,
                        gamma: 2.49,
                        sigma_sf_db: 8.03,
                    })),
                },
                RegistryRow {
                    environment: Environment::IndoorOffice,
                    state: LinkState::Nlos,
                    slope: Slope::Dual,
                    ci_cif: Some(ModelParams::DualCif(DualCifParams {
                        n1: 2.51,
                        b1: 0.12,
                        f0: ghz(24.1),
                        n2: 4.25,
                        b2: 0.04,
                        d_bp: 7.8,
                        sigma_sf_db: 7.65,
                    })),
                    abg: Some(ModelParams::DualAbg(DualAbgParams {
                        alpha1: 1.7,
                        beta1: 33.0,
                        gamma: 2.49,
                        d_bp: 6.9,
                        alpha2: 4.17,
                        sigma_sf_db: 7.78,
                    })),
                },
                RegistryRow {
                    environment: Environment::ShoppingMall,
                    state: LinkState::Los,
                    slope: Slope::Single,
                    ci_cif: Some(ModelParams::Ci(CiParams {
                        n: 1.73,
                        sigma_sf_db: 2.01,
                    })),
                    abg: None,
                },
                RegistryRow {
                    environment: Environment::ShoppingMall,
                    state: LinkState::Nlos,
                    slope: Slope::Single,
                    ci_cif: Some(ModelParams::Cif(CifParams {
                        n: 2.59,
                        b: 0.01,
                        f0: ghz(39.5),
                        sigma_sf_db: 7.4,
                    })),
                    abg: Some(ModelParams::Abg(AbgParams {
                        alpha: 3.21,
                        beta: 18.09,
                        gamma: 2.24,
                        sigma_sf_db: 6.97,
                    })),
                },
                RegistryRow {
                    environment: Environment::ShoppingMall,
                    state: LinkState::Nlos,
                    slope: Slope::Dual,
                    ci_cif: Some(ModelParams::DualCif(DualCifParams {
                        n1: 2.43,
                        b1: 0.01,
                        f0: ghz(39.5),
                        n2: 8.36,
                        b2: 0.39,
                        d_bp: 110.0,
                        sigma_sf_db: 6.26,
                    })),
                    abg: Some(ModelParams::DualAbg(DualAbgParams {
                        alpha1: 2.9,
                        beta1: 22.17,
                        gamma: 2.24,
                        d_bp: 147.0,
                        alpha2: 11.47,
                        sigma_sf_db: 6.36,
                    })),
                },
            ],
        }
    }

    /// Parameter lookup. `Ci` and `Cif` both address the CI/CIF column;
    /// what comes back is whatever variant the table holds there (the LOS
    /// rows are plain CI, the NLOS rows CIF). Returns `None` where the
    /// table has no entry: LOS/ABG and every LOS/dual combination.
    pub fn lookup(
        &self,
        scenario: Scenario,
        family: ModelFamily,
        slope: Slope,
    ) -> Option<&ModelParams> {
        let row = self.rows.iter().find(|r| {
            r.environment == scenario.environment && r.state == scenario.state && r.slope == slope
        })?;
        match family {
            ModelFamily::Ci | ModelFamily::Cif => row.ci_cif.as_ref(),
            ModelFamily::Abg => row.abg.as_ref(),
        }
    }

    /// Like `lookup`, but turns absence into a configuration error that
    /// spells out the missing table entry.
    pub fn require(
        &self,
        scenario: Scenario,
        family: ModelFamily,
        slope: Slope,
    ) -> Result<&ModelParams> {
        self.lookup(scenario, family, slope).ok_or_else(|| {
            Error::config(format!(
                "no {}/{} parameters for scenario {scenario}: that table entry is N/A",
                family.token(),
                slope.token()
            ))
        })
    }

    pub fn validate(&self) -> Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            for (col, entry) in [("ci_cif", &row.ci_cif), ("abg", &row.abg)] {
                if let Some(p) = entry {
                    p.validate()
                        .map_err(|e| Error::config(format!("rows[{i}].{col}: {e}")))?;
                    if p.slope() != row.slope {
                        return Err(Error::config(format!(
                            "rows[{i}].{col}: {} entry in a {:?}-slope row",
                            p.kind_name(),
                            row.slope
                        )));
                    }
                    let column_ok = match col {
                        "ci_cif" => !matches!(p, ModelParams::Abg(_) | ModelParams::DualAbg(_)),
                        _ => matches!(p, ModelParams::Abg(_) | ModelParams::DualAbg(_)),
                    };
                    if !column_ok {
                        return Err(Error::config(format!(
                            "rows[{i}].{col}: {} entry does not belong in this column",
                            p.kind_name()
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_json_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("registry serializes");
        s.push('\n');
        s
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let reg: ParamRegistry =
            serde_json::from_str(json).map_err(|e| Error::config(format!("registry JSON: {e}")))?;
        reg.validate()?;
        Ok(reg)
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}
