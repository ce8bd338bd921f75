//! Material penetration loss: per-centimeter attenuation tables and the
//! thickness composition rule.
//!
//! Rates are tabulated at measured carrier frequencies. Between entries
//! the default rule interpolates linearly in dB/cm over log-frequency;
//! outside the measured span the nearest entry applies. Loss through a
//! wall is rate times thickness, with no angle-of-incidence term.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::Frequency;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Material {
    ClearGlass,
    MeshGlass,
    TintedGlass,
    Whiteboard,
    Wall,
}

pub const ALL_MATERIALS: [Material; 5] = [
    Material::ClearGlass,
    Material::MeshGlass,
    Material::TintedGlass,
    Material::Whiteboard,
    Material::Wall,
];

impl Material {
    pub fn token(self) -> &'static str {
        match self {
            Material::ClearGlass => "clear_glass",
            Material::MeshGlass => "mesh_glass",
            Material::TintedGlass => "tinted_glass",
            Material::Whiteboard => "whiteboard",
            Material::Wall => "wall",
        }
    }

    pub fn from_token(s: &str) -> Result<Self> {
        ALL_MATERIALS
            .into_iter()
            .find(|m| m.token() == s)
            .ok_or_else(|| Error::domain(format!("unknown material '{s}'")))
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl std::fmt::Display for Material {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InterpolationRule {
    /// Linear in dB/cm over log-frequency (default).
    #[default]
    LogFrequencyLinear,
    /// Nearest measured frequency everywhere.
    NearestEntry,
}

/// Serialized form: one `[[f_ghz, db_per_cm], ...]` list per material.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct MaterialTableDoc {
    clear_glass: Vec<(f64, f64)>,
    mesh_glass: Vec<(f64, f64)>,
    tinted_glass: Vec<(f64, f64)>,
    whiteboard: Vec<(f64, f64)>,
    wall: Vec<(f64, f64)>,
}

/// Per-material attenuation-rate table, immutable after load.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialLossTable {
    // (f_ghz, db_per_cm) entries per material, sorted by frequency
    entries: [Vec<(f64, f64)>; 5],
    rule: InterpolationRule,
}

impl MaterialLossTable {
    /// The measured defaults. Walls attenuate "less than 1 dB/cm"; the
    /// table carries exactly 1.0 dB/cm as the conservative upper bound.
    /// Whiteboard rates were not published as numbers, so that entry list
    /// ships empty and must come from user data.
    pub fn builtin() -> Self {
        MaterialLossTable {
            entries: [
                vec![(2.5, 20.0), (28.0, 3.5), (60.0, 11.3)],
                vec![(2.5, 24.1), (60.0, 31.9)],
                vec![(28.0, 24.5)],
                vec![],
                vec![(28.0, 1.0)],
            ],
            rule: InterpolationRule::default(),
        }
    }

    pub fn with_rule(mut self, rule: InterpolationRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn entries(&self, material: Material) -> &[(f64, f64)] {
        &self.entries[material.index()]
    }

    /// Attenuation rate in dB/cm at carrier `f`.
    pub fn loss_rate(&self, material: Material, f: Frequency) -> Result<f64> {
        let entries = &self.entries[material.index()];
        if entries.is_empty() {
            return Err(Error::config(format!(
                "no attenuation entries for material '{material}'; supply them in the material table"
            )));
        }
        let fg = f.ghz();
        if fg <= entries[0].0 {
            return Ok(entries[0].1);
        }
        if fg >= entries[entries.len() - 1].0 {
            return Ok(entries[entries.len() - 1].1);
        }
        // strictly inside the measured span, with at least two entries
        let hi = entries.partition_point(|e| e.0 < fg);
        let (f_hi, r_hi) = entries[hi];
        if f_hi == fg {
            return Ok(r_hi);
        }
        let (f_lo, r_lo) = entries[hi - 1];
        Ok(match self.rule {
            InterpolationRule::LogFrequencyLinear => {
                let t = (fg.ln() - f_lo.ln()) / (f_hi.ln() - f_lo.ln());
                r_lo + t * (r_hi - r_lo)
            }
            InterpolationRule::NearestEntry => {
                if (fg.ln() - f_lo.ln()) <= (f_hi.ln() - fg.ln()) {
                    r_lo
                } else {
                    r_hi
                }
            }
        })
    }

    /// Loss in dB through `thickness_cm` of material at carrier `f`.
    pub fn penetration_loss(
        &self,
        material: Material,
        thickness_cm: f64,
        f: Frequency,
    ) -> Result<f64> {
        if !thickness_cm.is_finite() || thickness_cm < 0.0 {
            return Err(Error::domain(format!(
                "thickness must be >= 0 cm, got {thickness_cm}"
            )));
        }
        Ok(self.loss_rate(material, f)? * thickness_cm)
    }

    pub fn to_json_pretty(&self) -> String {
        let doc = MaterialTableDoc {
            clear_glass: self.entries[0].clone(),
            mesh_glass: self.entries[1].clone(),
            tinted_glass: self.entries[2].clone(),
            whiteboard: self.entries[3].clone(),
            wall: self.entries[4].clone(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("material table serializes");
        s.push('\n');
        s
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let doc: MaterialTableDoc = serde_json::from_str(json)
            .map_err(|e| Error::config(format!("material table JSON: {e}")))?;
        let mut table = MaterialLossTable {
            entries: [
                doc.clear_glass,
                doc.mesh_glass,
                doc.tinted_glass,
                doc.whiteboard,
                doc.wall,
            ],
            rule: InterpolationRule::default(),
        };
        for (m, list) in ALL_MATERIALS.iter().zip(table.entries.iter_mut()) {
            list.sort_by(|a, b| a.0.total_cmp(&b.0));
            for window in list.windows(2) {
                if window[0].0 == window[1].0 {
                    return Err(Error::config(format!(
                        "{m}: duplicate frequency {} GHz",
                        window[0].0
                    )));
                }
            }
            for &(f_ghz, rate) in list.iter() {
                if !(f_ghz > 0.0) || !f_ghz.is_finite() {
                    return Err(Error::config(format!(
                        "{m}: non-positive frequency {f_ghz} GHz"
                    )));
                }
                if rate < 0.0 || !rate.is_finite() {
                    return Err(Error::config(format!(
                        "{m}: negative loss rate {rate} dB/cm"
                    )));
                }
            }
        }
        Ok(table)
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

impl Default for MaterialLossTable {
    fn default() -> Self {
        Self::builtin()
    }
}
