use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use vortex_core::beams::BeamSpec;
use vortex_core::evolve::GridOptions;
use vortex_core::field::{PulseParams, DEFAULT_GRID_POINTS, DEFAULT_SUPPORT_TOL};
use vortex_core::spinors::Spin;
use vortex_core::units::{intensity_to_field, ConeKinematics};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub pulse: PulseConfig,
    pub beam: BeamConfig,
    #[serde(default)]
    pub numerics: Numerics,
    #[serde(default)]
    pub outputs: Outputs,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseConfig {
    #[serde(
        rename = "intensity_Wcm2",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub intensity_wcm2: Option<f64>,
    #[serde(rename = "E_star_au", default, skip_serializing_if = "Option::is_none")]
    pub e_star_au: Option<f64>,
    pub omega_au: f64,
    pub a: f64,
    #[serde(default)]
    pub phi_rad: f64,
    #[serde(default = "default_support_tol")]
    pub support_tol: f64,
    #[serde(default = "default_grid_points")]
    pub grid_points: usize,
}

fn default_support_tol() -> f64 {
    DEFAULT_SUPPORT_TOL
}

fn default_grid_points() -> usize {
    DEFAULT_GRID_POINTS
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeamConfig {
    /// "bessel" (uses l, s) or "rotated" (uses m, mu).
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta0_deg: Option<f64>,
    #[serde(
        rename = "kinetic_keV",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub kinetic_kev: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub momentum_au: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_par: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_perp: Option<f64>,
    #[serde(default = "default_sigma")]
    pub sigma: f64,
}

fn default_sigma() -> f64 {
    10.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Numerics {
    /// "coarse" or "default"; explicit fields below override it.
    pub grid: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub panels: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_phi: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub width_sigmas: Option<f64>,
    /// Half-length of the initial packet region; absent means the delta limit.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_box: Option<f64>,
    pub box_n_xy: usize,
    pub box_n_z: usize,
    pub box_z_sigmas: f64,
    /// Packet lengths kept clear of the pulse at the ends of the time window.
    pub window_margin: f64,
    pub n_phi_classical: usize,
    pub field_samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_rho: Option<usize>,
}

impl Default for Numerics {
    fn default() -> Self {
        Numerics {
            grid: "coarse".into(),
            panels: None,
            order: None,
            n_phi: None,
            width_sigmas: None,
            l_box: None,
            box_n_xy: 24,
            box_n_z: 24,
            box_z_sigmas: 4.0,
            window_margin: 3.0,
            n_phi_classical: 32,
            field_samples: 2001,
            rho_max: None,
            n_rho: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Outputs {
    /// Explicit times; otherwise `n_times` points across the collision window.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub times: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_times: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phis: Option<Vec<f64>>,
    /// Single classical paths written next to the average.
    pub classical_phis: Vec<f64>,
    pub spinor: bool,
}

/// Physics inputs after validation.
#[derive(Debug, Clone, Copy)]
pub struct Resolved {
    pub spec: BeamSpec,
    pub pulse: PulseParams,
    pub grid: GridOptions,
}

fn spin_of(v: f64, field: &str, errs: &mut Vec<String>) -> Spin {
    if v == 0.5 {
        Spin::Up
    } else if v == -0.5 {
        Spin::Down
    } else {
        errs.push(format!("{field}: must be 0.5 or -0.5, got {v}"));
        Spin::Up
    }
}

fn positive(v: f64, field: &str, errs: &mut Vec<String>) {
    if !(v > 0.0 && v.is_finite()) {
        errs.push(format!("{field}: must be a positive number, got {v}"));
    }
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let sc: Scenario =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        Ok(sc)
    }

    /// SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("scenario serializes");
        hex::encode(Sha256::digest(bytes))
    }

    pub fn resolve(&self) -> Result<Resolved> {
        let mut errs = Vec::new();
        let p = &self.pulse;
        let e_star = match (p.intensity_wcm2, p.e_star_au) {
            (Some(i), None) => {
                positive(i, "pulse.intensity_Wcm2", &mut errs);
                intensity_to_field(i).unwrap_or(0.0)
            }
            (None, Some(e)) => {
                if !(e >= 0.0 && e.is_finite()) {
                    errs.push(format!("pulse.E_star_au: must be >= 0, got {e}"));
                }
                e
            }
            _ => {
                errs.push("pulse: give exactly one of intensity_Wcm2, E_star_au".into());
                0.0
            }
        };
        positive(p.omega_au, "pulse.omega_au", &mut errs);
        positive(p.a, "pulse.a", &mut errs);
        if !p.phi_rad.is_finite() {
            errs.push("pulse.phi_rad: must be finite".into());
        }
        if !(p.support_tol > 0.0 && p.support_tol < 1.0) {
            errs.push(format!(
                "pulse.support_tol: must lie in (0, 1), got {}",
                p.support_tol
            ));
        }
        if p.grid_points < 16 {
            errs.push(format!(
                "pulse.grid_points: need at least 16, got {}",
                p.grid_points
            ));
        }

        let b = &self.beam;
        positive(b.sigma, "beam.sigma", &mut errs);
        let kin = match (
            b.p_par,
            b.p_perp,
            b.theta0_deg,
            b.kinetic_kev,
            b.momentum_au,
        ) {
            (Some(pp), Some(pt), None, None, None) => {
                positive(pt, "beam.p_perp", &mut errs);
                Some(ConeKinematics::from_components(pp, pt))
            }
            (None, None, Some(th), Some(k), None) => {
                positive(k, "beam.kinetic_keV", &mut errs);
                ConeKinematics::from_kinetic_energy(k, th.to_radians()).ok()
            }
            (None, None, Some(th), None, Some(pm)) => {
                positive(pm, "beam.momentum_au", &mut errs);
                Some(ConeKinematics::from_momentum(pm, th.to_radians()))
            }
            _ => {
                errs.push("beam: give p_par and p_perp, or theta0_deg with one of kinetic_keV, momentum_au".into());
                None
            }
        };
        if let Some(th) = b.theta0_deg {
            if !(th > 0.0 && th < 90.0) {
                errs.push(format!("beam.theta0_deg: must lie in (0, 90), got {th}"));
            }
        }

        let n = &self.numerics;
        let mut grid = match n.grid.as_str() {
            "coarse" => GridOptions::coarse(),
            "default" => GridOptions::default(),
            other => {
                errs.push(format!(
                    "numerics.grid: expected \"coarse\" or \"default\", got \"{other}\""
                ));
                GridOptions::coarse()
            }
        };
        grid.panels = n.panels.unwrap_or(grid.panels);
        grid.order = n.order.unwrap_or(grid.order);
        grid.n_phi = n.n_phi.unwrap_or(grid.n_phi);
        grid.width_sigmas = n.width_sigmas.unwrap_or(grid.width_sigmas);
        if let Some(l) = n.l_box {
            positive(l, "numerics.l_box", &mut errs);
        }
        for (v, f) in [
            (n.box_n_xy, "numerics.box_n_xy"),
            (n.box_n_z, "numerics.box_n_z"),
        ] {
            if v < 2 {
                errs.push(format!("{f}: need at least 2 points, got {v}"));
            }
        }
        positive(n.box_z_sigmas, "numerics.box_z_sigmas", &mut errs);
        positive(n.window_margin, "numerics.window_margin", &mut errs);
        if n.n_phi_classical < 16 {
            errs.push(format!(
                "numerics.n_phi_classical: need at least 16, got {}",
                n.n_phi_classical
            ));
        }
        if n.field_samples < 2 {
            errs.push("numerics.field_samples: need at least 2".into());
        }
        if let Some(r) = n.rho_max {
            positive(r, "numerics.rho_max", &mut errs);
        }

        let o = &self.outputs;
        if let Some(ts) = &o.times {
            if ts.is_empty() {
                errs.push("outputs.times: snapshot list is empty".into());
            }
            if ts.iter().any(|t| !t.is_finite()) {
                errs.push("outputs.times: all times must be finite".into());
            }
        }
        if o.n_times == Some(0) {
            errs.push("outputs.n_times: must be at least 1".into());
        }
        if let Some(ps) = &o.phis {
            if ps.is_empty() {
                errs.push("outputs.phis: list is empty".into());
            }
        }

        let spec = match (b.kind.as_str(), kin) {
            ("bessel", Some(k)) => match (b.l, b.s, b.m, b.mu) {
                (Some(l), Some(s), None, None) => {
                    let s = spin_of(s, "beam.s", &mut errs);
                    BeamSpec::bessel(l, s, k.p_par, k.p_perp, b.sigma).ok()
                }
                _ => {
                    errs.push("beam: kind \"bessel\" takes l and s (not m, mu)".into());
                    None
                }
            },
            ("rotated", Some(k)) => match (b.l, b.s, b.m, b.mu) {
                (None, None, Some(m), Some(mu)) => {
                    if (m - 0.5).fract() != 0.0 {
                        errs.push(format!("beam.m: must be half-integer, got {m}"));
                    }
                    let mu = spin_of(mu, "beam.mu", &mut errs);
                    BeamSpec::rotated(m, mu, k.p_par, k.p_perp, b.sigma).ok()
                }
                _ => {
                    errs.push("beam: kind \"rotated\" takes m and mu (not l, s)".into());
                    None
                }
            },
            ("bessel" | "rotated", None) => None,
            (other, _) => {
                errs.push(format!(
                    "beam.kind: expected \"bessel\" or \"rotated\", got \"{other}\""
                ));
                None
            }
        };
        if spec.is_none() && errs.is_empty() {
            errs.push("beam: parameters do not define a valid beam".into());
        }
        if !errs.is_empty() {
            bail!("invalid scenario:\n  {}", errs.join("\n  "));
        }
        let pulse = PulseParams {
            e_star,
            omega: p.omega_au,
            a: p.a,
            phi: p.phi_rad,
            support_tol: p.support_tol,
            grid_points: p.grid_points,
        };
        Ok(Resolved {
            spec: spec.expect("checked above"),
            pulse,
            grid,
        })
    }
}
