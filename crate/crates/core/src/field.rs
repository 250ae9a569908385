//! Linearly polarized plane-wave pulse travelling along -z, with a
//! Gaussian envelope on the electric field.
//!
//! The field depends on the light-front variable `xi = c t + z` only.
//! `A(xi) = -int_{-inf}^{xi} E`, so `E = -(1/c) dA/dt` and the
//! asymptotic potential is `A0 = -c S_E`.

use crate::error::{Error, Result};
use crate::numerics::HermiteTable;
use crate::units::C;

const MODULE: &str = "field";

/// Default number of table nodes on `[-xi_max, xi_max]`.
pub const DEFAULT_GRID_POINTS: usize = 1 << 14;
/// Default envelope cutoff defining the support.
pub const DEFAULT_SUPPORT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseParams {
    pub e_star: f64,
    pub omega: f64,
    pub a: f64,
    pub phi: f64,
    pub support_tol: f64,
    pub grid_points: usize,
}

impl PulseParams {
    pub fn new(e_star: f64, omega: f64, a: f64, phi: f64) -> Self {
        PulseParams {
            e_star,
            omega,
            a,
            phi,
            support_tol: DEFAULT_SUPPORT_TOL,
            grid_points: DEFAULT_GRID_POINTS,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LaserPulse {
    pub e_star: f64,
    pub omega: f64,
    pub a: f64,
    pub phi: f64,
    pub xi_max: f64,
    a0: f64,
    pot: HermiteTable<f64>,
    int_a: HermiteTable<f64>,
    int_a2: HermiteTable<f64>,
}

/// Smallest `xi_max` with `exp(-(omega xi / c)^2 / a^2) < tol` outside it.
pub fn support_bounds(omega: f64, a: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::domain(
            MODULE,
            format!("support tolerance must lie in (0, 1), got {tol}"),
        ));
    }
    if !(omega > 0.0 && a > 0.0) {
        return Err(Error::domain(MODULE, "omega and a must be positive"));
    }
    Ok(C * a / omega * (1.0 / tol).ln().sqrt())
}

/// `(S_E, A0)` in closed form.
pub fn field_area_closed_form(e_star: f64, omega: f64, a: f64, phi: f64) -> (f64, f64) {
    let a0 =
        -(std::f64::consts::PI.sqrt() * C * a * e_star / omega) * (-a * a / 4.0).exp() * phi.sin();
    (-a0 / C, a0)
}

impl LaserPulse {
    pub fn new(p: PulseParams) -> Result<Self> {
        for (name, v) in [
            ("E_star", p.e_star),
            ("omega", p.omega),
            ("a", p.a),
            ("phi", p.phi),
        ] {
            if !v.is_finite() {
                return Err(Error::domain(MODULE, format!("{name} must be finite")));
            }
        }
        if p.e_star < 0.0 {
            return Err(Error::domain(MODULE, "E_star must be >= 0"));
        }
        if p.grid_points < 16 {
            return Err(Error::domain(MODULE, "need at least 16 table points"));
        }
        let xi_max = support_bounds(p.omega, p.a, p.support_tol)?;
        let (_, a0) = field_area_closed_form(p.e_star, p.omega, p.a, p.phi);

        let n = p.grid_points;
        let h = 2.0 * xi_max / (n - 1) as f64;
        let xs: Vec<f64> = (0..n).map(|k| -xi_max + h * k as f64).collect();
        let e: Vec<f64> = xs.iter().map(|&x| field_value(p, x)).collect();
        let de: Vec<f64> = xs.iter().map(|&x| field_slope(p, x)).collect();

        // A' = -E, A'' = -E'
        let neg_e: Vec<f64> = e.iter().map(|v| -v).collect();
        let neg_de: Vec<f64> = de.iter().map(|v| -v).collect();
        let pot = cumulative(&neg_e, &neg_de, h);
        // (A^2)' = 2 A A' = -2 A E
        let sq: Vec<f64> = pot.iter().map(|v| v * v).collect();
        let dsq: Vec<f64> = pot.iter().zip(&e).map(|(a, e)| -2.0 * a * e).collect();
        let int_a = cumulative(&pot, &neg_e, h);
        let int_a2 = cumulative(&sq, &dsq, h);

        Ok(LaserPulse {
            e_star: p.e_star,
            omega: p.omega,
            a: p.a,
            phi: p.phi,
            xi_max,
            a0,
            int_a: HermiteTable::new(-xi_max, h, int_a, pot.clone()),
            int_a2: HermiteTable::new(-xi_max, h, int_a2, sq),
            pot: HermiteTable::new(-xi_max, h, pot, neg_e),
        })
    }

    fn params(&self) -> PulseParams {
        PulseParams {
            e_star: self.e_star,
            omega: self.omega,
            a: self.a,
            phi: self.phi,
            support_tol: 0.5,
            grid_points: 0,
        }
    }

    pub fn electric_field(&self, xi: f64) -> f64 {
        field_value(self.params(), xi)
    }

    pub fn vector_potential(&self, xi: f64) -> f64 {
        if xi <= -self.xi_max {
            0.0
        } else if xi >= self.xi_max {
            self.a0
        } else {
            self.pot.eval(xi)
        }
    }

    /// `(S_E, A0)`.
    pub fn field_area(&self) -> (f64, f64) {
        (-self.a0 / C, self.a0)
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    /// Cumulative `(int A, int A^2)` from `-inf` to `xi`.
    pub fn phase_integrals(&self, xi: f64) -> (f64, f64) {
        if xi <= -self.xi_max {
            (0.0, 0.0)
        } else if xi >= self.xi_max {
            let d = xi - self.xi_max;
            let n = self.int_a.values.len() - 1;
            (
                self.int_a.values[n] + self.a0 * d,
                self.int_a2.values[n] + self.a0 * self.a0 * d,
            )
        } else {
            (self.int_a.eval(xi), self.int_a2.eval(xi))
        }
    }

    /// Table nodes, for dumping.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.pot.values.len();
        (0..n)
            .map(|k| self.pot.x0 + self.pot.step * k as f64)
            .collect()
    }
}

fn field_value(p: PulseParams, xi: f64) -> f64 {
    let eta = p.omega * xi / C;
    p.e_star * (-(eta / p.a).powi(2)).exp() * (eta + p.phi).sin()
}

fn field_slope(p: PulseParams, xi: f64) -> f64 {
    let k = p.omega / C;
    let eta = k * xi;
    let env = (-(eta / p.a).powi(2)).exp();
    p.e_star * k * env * ((eta + p.phi).cos() - 2.0 * eta / (p.a * p.a) * (eta + p.phi).sin())
}

/// Running integral of `f` on a uniform grid from its values and
/// derivatives: trapezoid plus the first end correction, which is the
/// exact integral of the cubic Hermite interpolant.
fn cumulative(f: &[f64], df: &[f64], h: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(f.len());
    let mut acc = 0.0;
    out.push(0.0);
    for k in 1..f.len() {
        acc += 0.5 * h * (f[k - 1] + f[k]) - h * h / 12.0 * (df[k] - df[k - 1]);
        out.push(acc);
    }
    out
}
