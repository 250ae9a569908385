//! Volkov states of the Dirac equation in the linearly polarized pulse,
//! including a nonzero asymptotic potential.
//!
//! With `D = eps' + c p_z'` the state factorizes as
//! `(2 pi)^{-3/2} e^{i zeta (p'.x - eps' t)} G(xi)` where `G` depends on
//! the light-front variable only.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::LaserPulse;
use crate::spinors::{
    alpha, beta, bispinor_u_in, bispinor_v_in, light_front_matrix, Basis, Bispinor, Mat4, Spin,
};
use crate::units::C;

const MODULE: &str = "volkov";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolkovIndex {
    pub p: [f64; 3],
    pub s: Spin,
    /// Energy sign, +1 or -1.
    pub zeta: i32,
    pub basis: Basis,
}

impl VolkovIndex {
    pub fn new(p: [f64; 3], s: Spin, zeta: i32) -> Result<Self> {
        if zeta != 1 && zeta != -1 {
            return Err(Error::domain(MODULE, "zeta must be +1 or -1"));
        }
        if !p.iter().all(|v| v.is_finite()) {
            return Err(Error::domain(MODULE, "momentum must be finite"));
        }
        let idx = VolkovIndex {
            p,
            s,
            zeta,
            basis: Basis::Z,
        };
        if idx.light_front() <= C * 1e-6 {
            return Err(Error::domain(
                MODULE,
                format!(
                    "eps' + c p_z' = {} is at the light-front singularity",
                    idx.light_front()
                ),
            ));
        }
        Ok(idx)
    }

    /// Momentum on the fixed-`p_perp` cylinder.
    pub fn on_cylinder(p_perp: f64, phi: f64, p_par: f64, s: Spin, zeta: i32) -> Result<Self> {
        Self::new([p_perp * phi.cos(), p_perp * phi.sin(), p_par], s, zeta)
    }

    pub fn with_basis(self, basis: Basis) -> Self {
        VolkovIndex { basis, ..self }
    }

    pub fn energy(&self) -> f64 {
        let p2 = self.p[0] * self.p[0] + self.p[1] * self.p[1] + self.p[2] * self.p[2];
        C * (C * C + p2).sqrt()
    }

    /// `eps' + c p_z'`.
    pub fn light_front(&self) -> f64 {
        let pt2 = self.p[0] * self.p[0] + self.p[1] * self.p[1];
        let pz = self.p[2];
        if pz >= 0.0 {
            self.energy() + C * pz
        } else {
            // (eps^2 - c^2 pz^2) / (eps - c pz), free of cancellation
            C * C * (C * C + pt2) / (self.energy() - C * pz)
        }
    }

    /// `u(p', s')` for zeta = +1, `v(-p', s')` for zeta = -1.
    pub fn w(&self) -> Bispinor<f64> {
        if self.zeta > 0 {
            bispinor_u_in(self.p, self.s, self.basis)
        } else {
            bispinor_v_in([-self.p[0], -self.p[1], -self.p[2]], self.s, self.basis)
        }
    }
}

/// `1 + zeta A N / (2 D)` applied to `w`.
pub fn spinor_factor(a: f64, d: f64, zeta: i32, w: &Bispinor<f64>) -> Bispinor<f64> {
    if a == 0.0 {
        return *w;
    }
    let n = light_front_matrix::<f64>();
    let nw = Bispinor::apply(&n, w);
    *w + nw.scale(Complex64::new(zeta as f64 * a / (2.0 * d), 0.0))
}

/// Phase `-(p_x' I_A + zeta I_A2 / 2c) / D` accumulated up to `xi`.
pub fn field_phase(pulse: &LaserPulse, idx: &VolkovIndex, xi: f64) -> f64 {
    let (ia, ia2) = pulse.phase_integrals(xi);
    -(idx.p[0] * ia + idx.zeta as f64 * ia2 / (2.0 * C)) / idx.light_front()
}

/// Light-front factor `G(xi)`.
pub fn light_front_part(pulse: &LaserPulse, idx: &VolkovIndex, xi: f64) -> Bispinor<f64> {
    let w = idx.w();
    let m = spinor_factor(pulse.vector_potential(xi), idx.light_front(), idx.zeta, &w);
    m.scale(Complex64::from_polar(1.0, field_phase(pulse, idx, xi)))
}

pub fn volkov_f(pulse: &LaserPulse, idx: &VolkovIndex, t: f64, z: f64) -> Bispinor<f64> {
    let g = light_front_part(pulse, idx, C * t + z);
    g.scale(Complex64::from_polar(
        1.0,
        -(idx.zeta as f64) * idx.energy() * t,
    ))
}

pub fn volkov_state(pulse: &LaserPulse, idx: &VolkovIndex, t: f64, x: [f64; 3]) -> Bispinor<f64> {
    let px = idx.p[0] * x[0] + idx.p[1] * x[1] + idx.p[2] * x[2];
    let f = volkov_f(pulse, idx, t, x[2]);
    f.scale(Complex64::from_polar(
        (2.0 * PI).powf(-1.5),
        idx.zeta as f64 * px,
    ))
}

fn add_scaled(acc: &mut Bispinor<f64>, m: &Mat4<f64>, v: &Bispinor<f64>, k: Complex64) {
    *acc = *acc + Bispinor::apply(m, v).scale(k);
}

/// Relative residual `|i d_t psi - H psi| / (eps' |psi|)` with
/// `H = c alpha.(-i grad + A x/c) + beta c^2` (electron charge -1).
/// The plane-wave phase is differentiated exactly; `G'` uses a
/// fourth-order central difference with step `h` in `xi`.
pub fn dirac_residual(pulse: &LaserPulse, idx: &VolkovIndex, xi: f64, h: f64) -> f64 {
    let g = |x: f64| light_front_part(pulse, idx, x);
    let g0 = g(xi);
    let gp = {
        let (a, b, c, d) = (g(xi + 2.0 * h), g(xi + h), g(xi - h), g(xi - 2.0 * h));
        (b - c).scale(Complex64::new(8.0 / (12.0 * h), 0.0))
            - (a - d).scale(Complex64::new(1.0 / (12.0 * h), 0.0))
    };
    let z = idx.zeta as f64;
    let eps = idx.energy();
    let i = Complex64::i();
    let mut r = g0.scale(Complex64::new(z * eps, 0.0)) + gp.scale(i * C);
    let a = pulse.vector_potential(xi);
    add_scaled(
        &mut r,
        &alpha(1),
        &g0,
        Complex64::new(-C * (z * idx.p[0] + a / C), 0.0),
    );
    add_scaled(
        &mut r,
        &alpha(2),
        &g0,
        Complex64::new(-C * z * idx.p[1], 0.0),
    );
    add_scaled(
        &mut r,
        &alpha(3),
        &g0,
        Complex64::new(-C * z * idx.p[2], 0.0),
    );
    add_scaled(&mut r, &alpha(3), &gp, i * C);
    add_scaled(&mut r, &beta(), &g0, Complex64::new(-C * C, 0.0));
    r.norm_sqr().sqrt() / (eps * g0.norm_sqr().sqrt())
}
