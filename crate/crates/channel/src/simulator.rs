//! Monte-Carlo AP/UE link drops in parametric indoor floor plans.
//!
//! A drop places APs (explicit positions or a uniform grid), scatters UEs
//! uniformly in the plan, and resolves one link budget per AP-UE pair:
//! LOS state (wall blockage in plan view, or a Bernoulli draw from a
//! LOS-probability curve), tabulated path loss on the 3D distance, a
//! shadow-fading draw, and the summed penetration loss of every crossed
//! wall in map mode.
//!
//! Randomness is partitioned so results never depend on evaluation
//! order: UE positions come from stream 0 of the seeded generator and
//! every UE owns stream `ue_id + 1` for its link draws (LOS Bernoulli
//! then shadow fading, in AP-index order).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{segment_crossing_param, Point2, Point3};
use crate::los::{sample_los, LosModelId};
use crate::pathloss::sample_shadow_fading;
use crate::penetration::{Material, MaterialLossTable};
use crate::registry::{Environment, LinkState, ModelFamily, ParamRegistry, Scenario, Slope};
use crate::units::{Distance, Frequency};

/// Axis-aligned plan-view rectangle, meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl Bounds {
    pub fn contains(&self, p: Point2) -> bool {
        p.x >= self.min_x && p.x <= self.max_x && p.y >= self.min_y && p.y <= self.max_y
    }

    pub fn width(&self) -> f64 {
        self.max_x - self.min_x
    }

    pub fn depth(&self) -> f64 {
        self.max_y - self.min_y
    }
}

/// One wall segment in plan view.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Wall {
    pub from: Point2,
    pub to: Point2,
    pub material: Material,
    pub thickness_cm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FloorPlan {
    pub bounds: Bounds,
    pub walls: Vec<Wall>,
}

impl FloorPlan {
    pub fn empty(width_m: f64, depth_m: f64) -> Self {
        FloorPlan {
            bounds: Bounds {
                min_x: 0.0,
                min_y: 0.0,
                max_x: width_m,
                max_y: depth_m,
            },
            walls: Vec::new(),
        }
    }

    /// Open-plan rectangular office with `wall_rows` full-width interior
    /// walls (15 cm standard wall), evenly spaced along the depth.
    pub fn office_template(width_m: f64, depth_m: f64, wall_rows: usize) -> Self {
        let mut plan = Self::empty(width_m, depth_m);
        for k in 1..=wall_rows {
            let y = depth_m * k as f64 / (wall_rows + 1) as f64;
            plan.walls.push(Wall {
                from: Point2::new(0.0, y),
                to: Point2::new(width_m, y),
                material: Material::Wall,
                thickness_cm: 15.0,
            });
        }
        plan
    }

    /// Shopping-mall template: two crossing corridors of the given width
    /// along the midlines, with four walled shop blocks in the corners.
    pub fn mall_template(width_m: f64, depth_m: f64, corridor_width_m: f64) -> Self {
        let mut plan = Self::empty(width_m, depth_m);
        let bx = (width_m - corridor_width_m) / 2.0;
        let by = (depth_m - corridor_width_m) / 2.0;
        let blocks = [
            (0.0, 0.0, bx, by),
            (width_m - bx, 0.0, width_m, by),
            (0.0, depth_m - by, bx, depth_m),
            (width_m - bx, depth_m - by, width_m, depth_m),
        ];
        for (x0, y0, x1, y1) in blocks {
            let corners = [
                Point2::new(x0, y0),
                Point2::new(x1, y0),
                Point2::new(x1, y1),
                Point2::new(x0, y1),
            ];
            for i in 0..4 {
                plan.walls.push(Wall {
                    from: corners[i],
                    to: corners[(i + 1) % 4],
                    material: Material::Wall,
                    thickness_cm: 15.0,
                });
            }
        }
        plan
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.bounds.max_x > self.bounds.min_x) || !(self.bounds.max_y > self.bounds.min_y) {
            return Err(Error::config("bounds: max must exceed min in both axes"));
        }
        for (i, w) in self.walls.iter().enumerate() {
            if !(w.thickness_cm > 0.0) || !w.thickness_cm.is_finite() {
                return Err(Error::config(format!(
                    "walls[{i}].thickness_cm: must be > 0, got {}",
                    w.thickness_cm
                )));
            }
            for (name, p) in [("from", w.from), ("to", w.to)] {
                if !self.bounds.contains(p) {
                    return Err(Error::config(format!(
                        "walls[{i}].{name}: point ({}, {}) lies outside the bounds",
                        p.x, p.y
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_json_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("floor plan serializes");
        s.push('\n');
        s
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let plan: FloorPlan = serde_json::from_str(json)
            .map_err(|e| Error::config(format!("floor plan JSON: {e}")))?;
        plan.validate()?;
        Ok(plan)
    }

    pub fn from_json_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

/// Map-based LOS: the link is LOS iff the plan-view segment from AP to
/// UE properly crosses no wall. NLOS links also report which walls were
/// crossed, ordered along the path from the AP.
pub fn los_by_map(plan: &FloorPlan, ap: Point2, ue: Point2) -> Result<(LinkState, Vec<usize>)> {
    for (name, p) in [("AP", ap), ("UE", ue)] {
        if !plan.bounds.contains(p) {
            return Err(Error::domain(format!(
                "{name} position ({}, {}) lies outside the floor-plan bounds",
                p.x, p.y
            )));
        }
    }
    let mut crossings: Vec<(f64, usize)> = plan
        .walls
        .iter()
        .enumerate()
        .filter_map(|(i, w)| segment_crossing_param(ap, ue, w.from, w.to).map(|t| (t, i)))
        .collect();
    crossings.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let walls: Vec<usize> = crossings.into_iter().map(|(_, i)| i).collect();
    let state = if walls.is_empty() {
        LinkState::Los
    } else {
        LinkState::Nlos
    };
    Ok((state, walls))
}

/// AP placement: explicit plan-view positions, or `count` APs on a
/// uniform grid of cell centers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ApPlacement {
    Positions(Vec<Point2>),
    Grid { count: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LosMode {
    /// Wall blockage decides, and crossed walls contribute penetration loss.
    MapBased,
    /// Bernoulli draw from the named curve on the 2D distance; no
    /// penetration term.
    Stochastic(LosModelId),
}

fn default_ap_height() -> f64 {
    3.0
}

fn default_ue_height() -> f64 {
    1.5
}

fn default_slope() -> Slope {
    Slope::Single
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DropConfig {
    pub environment: Environment,
    pub ap: ApPlacement,
    pub ue_count: usize,
    #[serde(default = "default_ap_height")]
    pub ap_height_m: f64,
    #[serde(default = "default_ue_height")]
    pub ue_height_m: f64,
    #[serde(rename = "f_ghz")]
    pub frequency: Frequency,
    pub family: ModelFamily,
    #[serde(default = "default_slope")]
    pub slope: Slope,
    pub los_mode: LosMode,
    /// Replaces the tabulated shadow-fading sigma when set (0 disables SF).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_sf_override_db: Option<f64>,
    pub seed: u64,
}

impl DropConfig {
    pub fn validate(&self) -> Result<()> {
        if self.ue_count == 0 {
            return Err(Error::config("ue_count: must be >= 1"));
        }
        match &self.ap {
            ApPlacement::Positions(v) if v.is_empty() => {
                return Err(Error::config("ap.positions: must contain at least one AP"));
            }
            ApPlacement::Grid { count: 0 } => {
                return Err(Error::config("ap.grid.count: must be >= 1"));
            }
            _ => {}
        }
        for (name, h) in [
            ("ap_height_m", self.ap_height_m),
            ("ue_height_m", self.ue_height_m),
        ] {
            if !(h > 0.0) || !h.is_finite() {
                return Err(Error::config(format!("{name}: must be > 0, got {h}")));
            }
        }
        if !(self.frequency.ghz() > 0.0) || !self.frequency.ghz().is_finite() {
            return Err(Error::config(format!(
                "f_ghz: must be > 0, got {}",
                self.frequency.ghz()
            )));
        }
        if let Some(s) = self.sigma_sf_override_db {
            if s < 0.0 || !s.is_finite() {
                return Err(Error::config(format!(
                    "sigma_sf_override_db: must be >= 0, got {s}"
                )));
            }
        }
        Ok(())
    }

    pub fn to_json_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("drop config serializes");
        s.push('\n');
        s
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let cfg: DropConfig = serde_json::from_str(json)
            .map_err(|e| Error::config(format!("drop config JSON: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_json_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

/// One resolved AP-UE link budget. `total_db = pl_db + sf_db +
/// penetration_db` exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkResult {
    pub ap_id: usize,
    pub ue_id: usize,
    pub d2_m: f64,
    pub d3_m: f64,
    pub state: LinkState,
    pub pl_db: f64,
    pub sf_db: f64,
    pub penetration_db: f64,
    pub total_db: f64,
    /// Set when the 3D distance fell below the 1 m model anchor and was
    /// clamped to it.
    pub clamped: bool,
}

fn grid_positions(bounds: Bounds, count: usize) -> Vec<Point2> {
    let w = bounds.width();
    let h = bounds.depth();
    let cols = ((count as f64 * w / h).sqrt().ceil() as usize).clamp(1, count);
    let rows = count.div_ceil(cols);
    let mut out = Vec::with_capacity(count);
    'outer: for r in 0..rows {
        for c in 0..cols {
            if out.len() == count {
                break 'outer;
            }
            out.push(Point2::new(
                bounds.min_x + (c as f64 + 0.5) * w / cols as f64,
                bounds.min_y + (r as f64 + 0.5) * h / rows as f64,
            ));
        }
    }
    out
}

pub fn resolve_ap_positions(config: &DropConfig, plan: &FloorPlan) -> Result<Vec<Point2>> {
    let positions = match &config.ap {
        ApPlacement::Positions(v) => v.clone(),
        ApPlacement::Grid { count } => grid_positions(plan.bounds, *count),
    };
    for (i, p) in positions.iter().enumerate() {
        if !plan.bounds.contains(*p) {
            return Err(Error::config(format!(
                "ap.positions[{i}]: ({}, {}) lies outside the floor-plan bounds",
                p.x, p.y
            )));
        }
    }
    Ok(positions)
}

/// Run one Monte-Carlo drop: every AP-UE pair becomes a `LinkResult`,
/// ordered by UE index then AP index. Deterministic for a fixed
/// (config, plan, seed).
pub fn run_drop(
    config: &DropConfig,
    plan: &FloorPlan,
    registry: &ParamRegistry,
    materials: &MaterialLossTable,
) -> Result<Vec<LinkResult>> {
    config.validate()?;
    plan.validate()?;
    if !config.frequency.in_supported_band() {
        log::warn!(
            "carrier {} GHz is outside the supported 0.5-100 GHz band; parameters are extrapolated",
            config.frequency.ghz()
        );
    }
    let aps: Vec<Point3> = resolve_ap_positions(config, plan)?
        .into_iter()
        .map(|p| Point3::new(p.x, p.y, config.ap_height_m))
        .collect();

    let mut pos_rng = ChaCha8Rng::seed_from_u64(config.seed);
    pos_rng.set_stream(0);
    let ues: Vec<Point3> = (0..config.ue_count)
        .map(|_| {
            Point3::new(
                pos_rng.gen_range(plan.bounds.min_x..plan.bounds.max_x),
                pos_rng.gen_range(plan.bounds.min_y..plan.bounds.max_y),
                config.ue_height_m,
            )
        })
        .collect();

    let mut results = Vec::with_capacity(aps.len() * ues.len());
    for (ue_id, &ue) in ues.iter().enumerate() {
        let mut link_rng = ChaCha8Rng::seed_from_u64(config.seed);
        link_rng.set_stream(ue_id as u64 + 1);
        for (ap_id, &ap) in aps.iter().enumerate() {
            let d2 = ap.plan_view().distance(ue.plan_view());
            let d3 = ap.distance(ue);
            let (state, penetration_db) = match config.los_mode {
                LosMode::MapBased => {
                    let (state, crossed) = los_by_map(plan, ap.plan_view(), ue.plan_view())?;
                    let mut pen = 0.0;
                    for wi in crossed {
                        let w = &plan.walls[wi];
                        pen += materials.penetration_loss(
                            w.material,
                            w.thickness_cm,
                            config.frequency,
                        )?;
                    }
                    (state, pen)
                }
                LosMode::Stochastic(model) => (sample_los(model, d2, &mut link_rng)?, 0.0),
            };
            let scenario = Scenario {
                environment: config.environment,
                state,
            };
            let params = registry.require(scenario, config.family, config.slope)?;
            let clamped = d3 < 1.0;
            let d_eval = Distance::from_meters(d3.max(1.0))?;
            let pl_db = params.path_loss(config.frequency, d_eval);
            let sigma = config
                .sigma_sf_override_db
                .unwrap_or_else(|| params.sigma_sf_db());
            let sf_db = sample_shadow_fading(sigma, &mut link_rng)?;
            results.push(LinkResult {
                ap_id,
                ue_id,
                d2_m: d2,
                d3_m: d3,
                state,
                pl_db,
                sf_db,
                penetration_db,
                total_db: pl_db + sf_db + penetration_db,
                clamped,
            });
        }
    }
    Ok(results)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CdfField {
    TotalDb,
    PlDb,
}

impl CdfField {
    pub fn token(self) -> &'static str {
        match self {
            CdfField::TotalDb => "total_db",
            CdfField::PlDb => "pl_db",
        }
    }

    pub fn from_token(s: &str) -> Result<Self> {
        match s {
            "total_db" => Ok(CdfField::TotalDb),
            "pl_db" => Ok(CdfField::PlDb),
            other => Err(Error::domain(format!(
                "unknown CDF field '{other}' (expected 'total_db' or 'pl_db')"
            ))),
        }
    }

    fn extract(self, r: &LinkResult) -> f64 {
        match self {
            CdfField::TotalDb => r.total_db,
            CdfField::PlDb => r.pl_db,
        }
    }
}

/// Right-continuous empirical CDF of the chosen field, evaluated on the
/// given dB grid: `P(X <= x)` for every grid point.
pub fn cdf(results: &[LinkResult], field: CdfField, grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    if results.is_empty() {
        return Err(Error::domain("CDF of zero links is undefined"));
    }
    let mut values: Vec<f64> = results.iter().map(|r| field.extract(r)).collect();
    values.sort_by(f64::total_cmp);
    let n = values.len() as f64;
    Ok(grid
        .iter()
        .map(|&x| (x, values.partition_point(|&v| v <= x) as f64 / n))
        .collect())
}
