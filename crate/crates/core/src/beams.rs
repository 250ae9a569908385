//! Field-free twisted electron states: Bessel beams with definite
//! (l, s), and the "rotated" combinations with definite helicity label
//! mu. Both share total angular momentum projection m along z.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{
    bessel_j, bessel_j_run, composite_gauss_legendre, spectral_derivative_periodic,
};
use crate::spinors::{a_coefficients, sigma_z, Bispinor, Spin};
use crate::units::C;

const MODULE: &str = "beams";
const MAX_L: i32 = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BeamKind {
    Bessel {
        l: i32,
        s: Spin,
    },
    /// `twice_m = 2 m` (odd); `mu` is the helicity label.
    Rotated {
        twice_m: i32,
        mu: Spin,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSpec {
    pub kind: BeamKind,
    pub p_par: f64,
    pub p_perp: f64,
    pub sigma: f64,
}

/// One Bessel-beam term `weight * psi_B(l, s)` of a beam.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselTerm {
    pub weight: Complex64,
    pub l: i32,
    pub s: Spin,
}

impl BeamSpec {
    pub fn bessel(l: i32, s: Spin, p_par: f64, p_perp: f64, sigma: f64) -> Result<Self> {
        let b = BeamSpec {
            kind: BeamKind::Bessel { l, s },
            p_par,
            p_perp,
            sigma,
        };
        b.validate()?;
        Ok(b)
    }

    /// `m` must be a half-integer.
    pub fn rotated(m: f64, mu: Spin, p_par: f64, p_perp: f64, sigma: f64) -> Result<Self> {
        let t = 2.0 * m;
        if t.fract() != 0.0 || (t as i64) % 2 == 0 {
            return Err(Error::domain(
                MODULE,
                format!("m must be half-integer, got {m}"),
            ));
        }
        let b = BeamSpec {
            kind: BeamKind::Rotated {
                twice_m: t as i32,
                mu,
            },
            p_par,
            p_perp,
            sigma,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p_perp > 0.0 && self.p_perp.is_finite()) {
            return Err(Error::domain(MODULE, "p_perp must be positive"));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::domain(MODULE, "sigma must be positive"));
        }
        if !self.p_par.is_finite() {
            return Err(Error::domain(MODULE, "p_par must be finite"));
        }
        let top = self
            .terms(self.p_par)
            .iter()
            .map(|t| t.l.abs())
            .max()
            .unwrap_or(0);
        if top > MAX_L {
            return Err(Error::domain(
                MODULE,
                format!("|l| = {top} exceeds {MAX_L}"),
            ));
        }
        Ok(())
    }

    pub fn p(&self) -> f64 {
        self.p_par.hypot(self.p_perp)
    }

    pub fn theta0(&self) -> f64 {
        self.p_perp.atan2(self.p_par)
    }

    pub fn energy(&self) -> f64 {
        C * (C * C + self.p_par * self.p_par + self.p_perp * self.p_perp).sqrt()
    }

    /// `2 m` with `m = l + s`.
    pub fn twice_m(&self) -> i32 {
        match self.kind {
            BeamKind::Bessel { l, s } => 2 * l + s.sign(),
            BeamKind::Rotated { twice_m, .. } => twice_m,
        }
    }

    pub fn m(&self) -> f64 {
        0.5 * self.twice_m() as f64
    }

    /// Bessel-beam decomposition at longitudinal momentum `p_par_q`;
    /// for rotated beams the mixing angle follows that momentum.
    pub fn terms(&self, p_par_q: f64) -> Vec<BesselTerm> {
        match self.kind {
            BeamKind::Bessel { l, s } => vec![BesselTerm {
                weight: Complex64::new(1.0, 0.0),
                l,
                s,
            }],
            BeamKind::Rotated { twice_m, mu } => {
                let half = 0.5 * self.p_perp.atan2(p_par_q);
                let (c, s) = (
                    Complex64::new(half.cos(), 0.0),
                    Complex64::new(0.0, half.sin()),
                );
                let (wu, wd) = match mu {
                    Spin::Up => (c, s),
                    Spin::Down => (s, c),
                };
                vec![
                    BesselTerm {
                        weight: wu,
                        l: (twice_m - 1) / 2,
                        s: Spin::Up,
                    },
                    BesselTerm {
                        weight: wd,
                        l: (twice_m + 1) / 2,
                        s: Spin::Down,
                    },
                ]
            }
        }
    }
}

/// Normalized Gaussian smearing `(pi sigma^2)^{-1/4} exp(-q^2 / 2 sigma^2)`.
pub fn smearing(q: f64, sigma: f64) -> f64 {
    (PI * sigma * sigma).powf(-0.25) * (-q * q / (2.0 * sigma * sigma)).exp()
}

/// Transverse factor `g = sum_k i^k a_k e^{i(l+k)phi} J_{l+k}(p_perp rho)`.
pub fn bessel_transverse(
    l: i32,
    s: Spin,
    p_par: f64,
    p_perp: f64,
    rho: f64,
    phi: f64,
) -> Result<Bispinor<f64>> {
    let a = a_coefficients(p_par, p_perp, s)?;
    let mut j = [0.0; 3];
    bessel_j_run(l - 1, l + 1, p_perp * rho, &mut j);
    let mut g = Bispinor::zero();
    for k in -1..=1i32 {
        let ik = Complex64::i().powi(k);
        let ph = Complex64::from_polar(j[(k + 1) as usize], (l + k) as f64 * phi);
        g = g + a.get(k).scale(ik * ph);
    }
    Ok(g)
}

fn bessel_prefactor(p_perp: f64) -> f64 {
    p_perp.sqrt() / (2f64.powf(1.5) * PI)
}

fn cyl(x: [f64; 3]) -> (f64, f64) {
    (x[0].hypot(x[1]), x[1].atan2(x[0]))
}

/// Bessel beam at position `x`, using the spec's own `p_par`.
pub fn bessel_beam(spec: &BeamSpec, x: [f64; 3]) -> Result<Bispinor<f64>> {
    let BeamKind::Bessel { l, s } = spec.kind else {
        return Err(Error::domain(MODULE, "bessel_beam needs a Bessel spec"));
    };
    let (rho, phi) = cyl(x);
    let g = bessel_transverse(l, s, spec.p_par, spec.p_perp, rho, phi)?;
    Ok(g.scale(Complex64::from_polar(
        bessel_prefactor(spec.p_perp),
        spec.p_par * x[2],
    )))
}

/// Any beam kind at longitudinal momentum `p_par_q`.
pub fn beam_at(spec: &BeamSpec, p_par_q: f64, x: [f64; 3]) -> Result<Bispinor<f64>> {
    let (rho, phi) = cyl(x);
    let mut out = Bispinor::zero();
    for t in spec.terms(p_par_q) {
        out = out + bessel_transverse(t.l, t.s, p_par_q, spec.p_perp, rho, phi)?.scale(t.weight);
    }
    Ok(out.scale(Complex64::from_polar(
        bessel_prefactor(spec.p_perp),
        p_par_q * x[2],
    )))
}

pub fn rotated_beam(spec: &BeamSpec, x: [f64; 3]) -> Result<Bispinor<f64>> {
    if !matches!(spec.kind, BeamKind::Rotated { .. }) {
        return Err(Error::domain(MODULE, "rotated_beam needs a Rotated spec"));
    }
    beam_at(spec, spec.p_par, x)
}

/// `j_z` of a single Bessel beam in closed form.
pub fn current_density_bessel(spec: &BeamSpec, rho: f64) -> Result<f64> {
    let BeamKind::Bessel { l, .. } = spec.kind else {
        return Err(Error::domain(
            MODULE,
            "current_density_bessel needs a Bessel spec",
        ));
    };
    let j = bessel_j(l, spec.p_perp * rho)?;
    Ok(spec.p_perp / (4.0 * PI * PI) * C * spec.p_par / spec.energy() * j * j)
}

/// `j_z` of a rotated beam in closed form; can be negative.
pub fn current_density_rotated(spec: &BeamSpec, rho: f64) -> Result<f64> {
    let BeamKind::Rotated { twice_m, mu } = spec.kind else {
        return Err(Error::domain(
            MODULE,
            "current_density_rotated needs a Rotated spec",
        ));
    };
    let (lo, hi) = ((twice_m - mu.sign()) / 2, (twice_m + mu.sign()) / 2);
    let half = 0.5 * spec.theta0();
    let a = half.cos() * bessel_j(lo, spec.p_perp * rho)?;
    let b = half.sin() * bessel_j(hi, spec.p_perp * rho)?;
    Ok(spec.p_perp / (4.0 * PI * PI) * C * spec.p() / spec.energy() * (a * a - b * b))
}

pub fn current_density(spec: &BeamSpec, rho: f64) -> Result<f64> {
    match spec.kind {
        BeamKind::Bessel { .. } => current_density_bessel(spec, rho),
        BeamKind::Rotated { .. } => current_density_rotated(spec, rho),
    }
}

/// `psi^dag alpha_z psi`.
pub fn alpha_z_expectation(psi: &Bispinor<f64>) -> f64 {
    let [a, b, c, d] = psi.0;
    // alpha_z psi = (c, -d, a, -b)
    2.0 * ((a.conj() * c).re - (b.conj() * d).re)
}

/// Gauss-Legendre nodes and `|f(q)|^2`-weights over the smearing.
pub fn q_quadrature(sigma: f64) -> (Vec<f64>, Vec<f64>) {
    let (q, w) = composite_gauss_legendre(-8.0 * sigma, 8.0 * sigma, 16, 8);
    let w = q
        .iter()
        .zip(&w)
        .map(|(q, w)| w * smearing(*q, sigma).powi(2))
        .collect();
    (q, w)
}

/// Packet current integrated over the polar angle and over z, at each
/// radius. Values are unnormalized apart from the packet's own unit
/// norm.
pub fn radial_current_profile(spec: &BeamSpec, rhos: &[f64]) -> Result<Vec<f64>> {
    let limit = PI / (4.0 * spec.p_perp);
    for w in rhos.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::config(
                MODULE,
                "radial grid must be strictly increasing",
            ));
        }
        if w[1] - w[0] > limit * (1.0 + 1e-12) {
            return Err(Error::config(
                MODULE,
                format!("radial step {} exceeds pi/(4 p_perp) = {limit} (8 points per Bessel oscillation)", w[1] - w[0]),
            ));
        }
    }
    let (qs, ws) = q_quadrature(spec.sigma);
    let mut out = Vec::with_capacity(rhos.len());
    for &rho in rhos {
        let mut acc = 0.0;
        for (q, w) in qs.iter().zip(&ws) {
            let shifted = BeamSpec {
                p_par: spec.p_par + q,
                ..*spec
            };
            acc += w * current_density(&shifted, rho)?;
        }
        // int dz -> 2 pi delta(q - q'), int dphi -> 2 pi
        out.push(4.0 * PI * PI * acc);
    }
    Ok(out)
}

/// `n`-th positive zero of `J_l` (n >= 1).
pub fn bessel_zero(l: i32, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain(MODULE, "zero index starts at 1"));
    }
    let l = l.abs();
    let f = |x: f64| bessel_j(l, x);
    let step = 0.05;
    let mut x = if l == 0 { step } else { l as f64 };
    let mut fx = f(x)?;
    let mut found = 0;
    loop {
        let y = x + step;
        let fy = f(y)?;
        if fx == 0.0 || fx.signum() != fy.signum() {
            found += 1;
            if found == n {
                let (mut a, mut b, mut fa) = (x, y, fx);
                for _ in 0..80 {
                    let mid = 0.5 * (a + b);
                    let fm = f(mid)?;
                    if fa.signum() == fm.signum() {
                        a = mid;
                        fa = fm;
                    } else {
                        b = mid;
                    }
                }
                return Ok(0.5 * (a + b));
            }
        }
        x = y;
        fx = fy;
    }
}

/// Transverse box radius: halfway between the 6th and 7th zeros of the
/// highest Bessel order in the beam.
pub fn default_radial_extent(spec: &BeamSpec) -> Result<f64> {
    let top = spec
        .terms(spec.p_par)
        .iter()
        .map(|t| t.l.abs())
        .max()
        .unwrap_or(0);
    Ok(0.5 * (bessel_zero(top, 6)? + bessel_zero(top, 7)?) / spec.p_perp)
}

/// `<A|B>` over a cylinder of radius `r_max` and length `z_box`
/// centered at the origin.
pub fn beam_overlap(a: &BeamSpec, b: &BeamSpec, r_max: f64, z_box: f64) -> Result<Complex64> {
    if !(r_max > 0.0 && z_box > 0.0) {
        return Err(Error::domain(MODULE, "box dimensions must be positive"));
    }
    let dp = b.p_par - a.p_par;
    let zint = if dp == 0.0 {
        z_box
    } else {
        2.0 * (0.5 * dp * z_box).sin() / dp
    };
    let panels = (r_max * a.p_perp.max(b.p_perp) / PI).ceil() as usize + 2;
    let (rs, ws) = composite_gauss_legendre(0.0, r_max, 16, panels);
    let pref = bessel_prefactor(a.p_perp) * bessel_prefactor(b.p_perp);

    let mut total = Complex64::new(0.0, 0.0);
    for ta in a.terms(a.p_par) {
        let ca = a_coefficients(a.p_par, a.p_perp, ta.s)?;
        for tb in b.terms(b.p_par) {
            let cb = a_coefficients(b.p_par, b.p_perp, tb.s)?;
            for ka in -1..=1i32 {
                let kb = ta.l + ka - tb.l;
                if !(-1..=1).contains(&kb) {
                    continue;
                }
                let spin = ca.get(ka).inner(cb.get(kb));
                if spin == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let n = ta.l + ka;
                let radial: f64 = rs
                    .iter()
                    .zip(&ws)
                    .map(|(r, w)| {
                        Ok(w * r * bessel_j(n, a.p_perp * r)? * bessel_j(n, b.p_perp * r)?)
                    })
                    .sum::<Result<f64>>()?;
                let phase = (Complex64::i().powi(ka) * ta.weight).conj()
                    * Complex64::i().powi(kb)
                    * tb.weight;
                total += phase * spin * 2.0 * PI * radial;
            }
        }
    }
    Ok(total * pref * zint)
}

/// Relative residual of `(-i d/dphi + Sigma_z / 2 - m) psi` on a ring of
/// radius `rho` sampled at `n_phi` azimuths.
pub fn jz_eigen_residual(spec: &BeamSpec, rho: f64, z: f64, n_phi: usize) -> Result<f64> {
    let phis: Vec<f64> = (0..n_phi)
        .map(|k| 2.0 * PI * k as f64 / n_phi as f64)
        .collect();
    let psi: Vec<Bispinor<f64>> = phis
        .iter()
        .map(|&ph| beam_at(spec, spec.p_par, [rho * ph.cos(), rho * ph.sin(), z]))
        .collect::<Result<_>>()?;
    let sz = sigma_z::<f64>();
    let mut dpsi = vec![Bispinor::zero(); n_phi];
    for c in 0..4 {
        let col: Vec<Complex64> = psi.iter().map(|p| p.0[c]).collect();
        let d = spectral_derivative_periodic(&col)?;
        for (k, v) in d.into_iter().enumerate() {
            dpsi[k].0[c] = v;
        }
    }
    let m = spec.m();
    let (mut num, mut den) = (0.0, 0.0);
    for (p, d) in psi.iter().zip(&dpsi) {
        let r = d.scale(-Complex64::i()) + Bispinor::apply(&sz, p).scale(Complex64::new(0.5, 0.0))
            - p.scale(Complex64::new(m, 0.0));
        num += r.norm_sqr();
        den += p.norm_sqr();
    }
    Ok((num / den).sqrt())
}
