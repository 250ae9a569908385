//! Expansion of the initial packet over Volkov states on the fixed-p_perp
//! cylinder, and reconstruction of the wavefunction at any time.
//!
//! Coefficients are stored without the `e^{i eps' t_ref}` factor, which is
//! applied analytically during reconstruction together with the free
//! phase. The Volkov expansion uses helicity spinors; the packet's own
//! spinors are the z-basis `a_k`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::beams::{smearing, BeamSpec};
use crate::error::{Error, Result};
use crate::field::LaserPulse;
use crate::numerics::{
    bessel_j_run, composite_gauss_legendre, fourier_coefficients, gauss_legendre, harmonic_of_bin,
};
use crate::spinors::{a_coefficients, bispinor_u_in, bispinor_v_in, Basis, Bispinor, Spin};
use crate::units::{energy, C};
use crate::volkov::spinor_factor;

const MODULE: &str = "evolve";

/// How the z-integral over the initial packet was taken.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Convention {
    /// `L -> infinity`: the sinc kernel becomes a delta function.
    DeltaLimit,
    /// Packet integrated over `[-L, L]`.
    FiniteL { l_box: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridOptions {
    pub panels: usize,
    pub order: usize,
    pub n_phi: usize,
    /// Half-width of the `p_par'` window in units of sigma.
    pub width_sigmas: f64,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions {
            panels: 32,
            order: 8,
            n_phi: 64,
            width_sigmas: 6.0,
        }
    }
}

impl GridOptions {
    /// Lighter grids for desk-scale runs.
    pub fn coarse() -> Self {
        GridOptions {
            panels: 16,
            order: 8,
            n_phi: 16,
            width_sigmas: 6.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentumGrid {
    pub p_perp: f64,
    pub lo: f64,
    pub hi: f64,
    pub panels: usize,
    pub order: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub n_phi: usize,
}

impl MomentumGrid {
    pub fn new(spec: &BeamSpec, opts: &GridOptions) -> Result<Self> {
        spec.validate()?;
        if opts.panels == 0 || opts.order < 2 || !(opts.width_sigmas > 0.0) {
            return Err(Error::config(
                MODULE,
                "need panels >= 1, order >= 2, width > 0",
            ));
        }
        if opts.n_phi < 4 || !opts.n_phi.is_power_of_two() {
            return Err(Error::config(
                MODULE,
                format!("n_phi = {} must be a power of two >= 4", opts.n_phi),
            ));
        }
        let lo = spec.p_par - opts.width_sigmas * spec.sigma;
        let hi = spec.p_par + opts.width_sigmas * spec.sigma;
        let (nodes, weights) = composite_gauss_legendre(lo, hi, opts.order, opts.panels);
        Ok(MomentumGrid {
            p_perp: spec.p_perp,
            lo,
            hi,
            panels: opts.panels,
            order: opts.order,
            nodes,
            weights,
            n_phi: opts.n_phi,
        })
    }

    pub fn phi(&self, k: usize) -> f64 {
        2.0 * PI * k as f64 / self.n_phi as f64
    }

    pub fn momentum(&self, ip: usize, k: usize) -> [f64; 3] {
        let phi = self.phi(k);
        [
            self.p_perp * phi.cos(),
            self.p_perp * phi.sin(),
            self.nodes[ip],
        ]
    }

    fn panel_width(&self) -> f64 {
        (self.hi - self.lo) / self.panels as f64
    }
}

/// Packet coefficients `c(p_par', phi', s')`, flat index `(ip * n_phi + k) * 2 + s'`
/// with `s' = 0` for spin up.
#[derive(Debug, Clone)]
pub struct MomentumAmplitude {
    pub spec: BeamSpec,
    pub grid: MomentumGrid,
    pub values: Vec<Complex64>,
    pub t_ref: f64,
    pub convention: Convention,
}

// normalization giving total weight 1 for a unit-norm smearing
const K_NORM: f64 = 0.398_942_280_401_432_7; // 1/sqrt(2 pi)

fn spin_of(i: usize) -> Spin {
    if i == 0 {
        Spin::Up
    } else {
        Spin::Down
    }
}

impl MomentumAmplitude {
    pub fn index(&self, ip: usize, k: usize, s: usize) -> usize {
        (ip * self.grid.n_phi + k) * 2 + s
    }

    pub fn get(&self, ip: usize, k: usize, s: Spin) -> Complex64 {
        self.values[self.index(ip, k, if s == Spin::Up { 0 } else { 1 })]
    }

    /// `sum_s' int |c|^2 dp_par' dphi'`.
    pub fn total_weight(&self) -> f64 {
        let dphi = 2.0 * PI / self.grid.n_phi as f64;
        let mut acc = 0.0;
        for (ip, w) in self.grid.weights.iter().enumerate() {
            let mut row = 0.0;
            for k in 0..self.grid.n_phi {
                for s in 0..2 {
                    row += self.values[self.index(ip, k, s)].norm_sqr();
                }
            }
            acc += w * dphi * row;
        }
        acc
    }

    /// Bispinor `sum_s' c u_h(p', s')` at a grid point.
    pub fn spinor_amplitude(&self, ip: usize, k: usize) -> Bispinor<f64> {
        let p = self.grid.momentum(ip, k);
        let mut out = Bispinor::zero();
        for s in 0..2 {
            out = out
                + bispinor_u_in(p, spin_of(s), Basis::Helicity)
                    .scale(self.values[self.index(ip, k, s)]);
        }
        out
    }

    /// Largest projection of the packet onto negative-energy spinors,
    /// relative to the largest coefficient.
    pub fn negative_energy_ratio(&self) -> f64 {
        let mut peak: f64 = 0.0;
        let mut neg: f64 = 0.0;
        for ip in 0..self.grid.nodes.len() {
            for k in 0..self.grid.n_phi {
                let amp = self.spinor_amplitude(ip, k);
                let p = self.grid.momentum(ip, k);
                peak = peak.max(amp.norm_sqr().sqrt());
                for s in [Spin::Up, Spin::Down] {
                    neg = neg.max(bispinor_v_in(p, s, Basis::Helicity).inner(&amp).norm());
                }
            }
        }
        if peak == 0.0 {
            0.0
        } else {
            neg / peak
        }
    }

    /// Same coefficients for a packet that has its initial form at `t_ref`.
    pub fn with_reference_time(self, t_ref: f64) -> Self {
        MomentumAmplitude { t_ref, ..self }
    }

    /// Factor taking the internal normalization to that of the initial
    /// packet built from normalized Bessel beams.
    pub fn position_scale(&self) -> f64 {
        (2.0 * PI).powf(1.5) * self.grid.p_perp.sqrt() / (4.0 * PI * PI * K_NORM)
    }
}

// Packet spinor at one p_par' from harmonic bispinors h[j][k] (term j,
// harmonic k = -1..1) and the term orders l_j; fills all phi and s'.
fn fill_row(
    grid: &MomentumGrid,
    ip: usize,
    harmonics: &[(i32, [Bispinor<f64>; 3])],
    values: &mut [Complex64],
) {
    for k in 0..grid.n_phi {
        let phi = grid.phi(k);
        let mut amp = Bispinor::zero();
        for (l, h) in harmonics {
            let lead = Complex64::i().powi(-l) * Complex64::from_polar(1.0, *l as f64 * phi);
            for (kk, hk) in h.iter().enumerate() {
                let e = Complex64::from_polar(1.0, (kk as f64 - 1.0) * phi);
                amp = amp + hk.scale(lead * e);
            }
        }
        let p = grid.momentum(ip, k);
        for s in 0..2 {
            values[k * 2 + s] = bispinor_u_in(p, spin_of(s), Basis::Helicity).inner(&amp);
        }
    }
}

/// Weighted `a_k / sqrt(2)` for each beam term at longitudinal momentum `pq`.
fn term_harmonics(spec: &BeamSpec, pq: f64, scale: f64) -> Result<Vec<(i32, [Bispinor<f64>; 3])>> {
    let mut out = Vec::new();
    for t in spec.terms(pq) {
        let a = a_coefficients(pq, spec.p_perp, t.s)?;
        let w = t.weight * (scale / 2f64.sqrt());
        out.push((
            t.l,
            [a.get(-1).scale(w), a.get(0).scale(w), a.get(1).scale(w)],
        ));
    }
    Ok(out)
}

/// Coefficients with the sinc kernel collapsed to a delta function.
/// `t_ref` is the time at which the free packet has the initial form;
/// `0` puts the collision with the pulse centre at `t = 0`.
pub fn packet_coefficients_delta(
    spec: &BeamSpec,
    opts: &GridOptions,
    t_ref: f64,
) -> Result<MomentumAmplitude> {
    let grid = MomentumGrid::new(spec, opts)?;
    let row = grid.n_phi * 2;
    let mut values = vec![Complex64::new(0.0, 0.0); grid.nodes.len() * row];
    values
        .par_chunks_mut(row)
        .enumerate()
        .try_for_each(|(ip, chunk)| -> Result<()> {
            let pq = grid.nodes[ip];
            let h = term_harmonics(spec, pq, K_NORM * smearing(pq - spec.p_par, spec.sigma))?;
            fill_row(&grid, ip, &h, chunk);
            Ok(())
        })?;
    Ok(MomentumAmplitude {
        spec: *spec,
        grid,
        values,
        t_ref,
        convention: Convention::DeltaLimit,
    })
}

/// `t_in = -(L + xi_max) / c`: the pulse's leading edge is at `z = L`.
pub fn initial_time(pulse: &LaserPulse, l_box: f64) -> f64 {
    -(l_box + pulse.xi_max) / C
}

/// Smallest half-length that contains the initial packet.
pub fn min_half_length(spec: &BeamSpec) -> f64 {
    8.0 / spec.sigma
}

/// Coefficients from the packet integrated over `[-L, L]` at
/// `t_in = -(L + xi_max)/c`, with `a_k` taken at `p_par + q`.
pub fn packet_coefficients_finite_l(
    spec: &BeamSpec,
    pulse: &LaserPulse,
    l_box: f64,
    opts: &GridOptions,
) -> Result<MomentumAmplitude> {
    let need = min_half_length(spec);
    if !(l_box >= need) {
        return Err(Error::config(
            MODULE,
            format!("packet not contained: need L >= 8/sigma = {need}, got L = {l_box}"),
        ));
    }
    let t_in = initial_time(pulse, l_box);
    // leading edge xi = c t_in + z of the pulse must sit at or beyond z = L
    if C * t_in + l_box > -pulse.xi_max * (1.0 - 1e-12) {
        return Err(Error::config(
            MODULE,
            "pulse overlaps the packet: need c t_in + L <= -xi_max",
        ));
    }
    let grid = MomentumGrid::new(spec, opts)?;
    // q quadrature: panels no wider than half a kernel period or sigma/2
    let q_half = 8.0 * spec.sigma;
    let width = (PI / l_box).min(0.5 * spec.sigma);
    let q_panels = ((2.0 * q_half) / width).ceil() as usize;
    let (qs, qw) = composite_gauss_legendre(-q_half, q_half, 16, q_panels);
    let mut q_terms = Vec::with_capacity(qs.len());
    for &q in &qs {
        q_terms.push(term_harmonics(
            spec,
            spec.p_par + q,
            K_NORM * smearing(q, spec.sigma),
        )?);
    }
    let row = grid.n_phi * 2;
    let mut values = vec![Complex64::new(0.0, 0.0); grid.nodes.len() * row];
    values
        .par_chunks_mut(row)
        .enumerate()
        .for_each(|(ip, chunk)| {
            let pp = grid.nodes[ip];
            let mut acc: Vec<(i32, [Bispinor<f64>; 3])> = q_terms[0]
                .iter()
                .map(|(l, _)| (*l, [Bispinor::zero(); 3]))
                .collect();
            for (iq, &q) in qs.iter().enumerate() {
                let d = spec.p_par + q - pp;
                let kern = if (d * l_box).abs() < 1e-8 {
                    l_box / PI
                } else {
                    (d * l_box).sin() / (PI * d)
                };
                let w = Complex64::new(kern * qw[iq], 0.0);
                for (slot, (_, h)) in acc.iter_mut().zip(&q_terms[iq]) {
                    for k in 0..3 {
                        slot.1[k] = slot.1[k] + h[k].scale(w);
                    }
                }
            }
            fill_row(&grid, ip, &acc, chunk);
        });
    Ok(MomentumAmplitude {
        spec: *spec,
        grid,
        values,
        t_ref: t_in,
        convention: Convention::FiniteL { l_box },
    })
}

/// Uniform axis including both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, count: usize) -> Result<Self> {
        if count < 2 || !(max > min) || !min.is_finite() || !max.is_finite() {
            return Err(Error::config(
                MODULE,
                format!("bad axis [{min}, {max}] x {count}"),
            ));
        }
        Ok(Axis { min, max, count })
    }

    pub fn centered(center: f64, half: f64, count: usize) -> Result<Self> {
        Self::new(center - half, center + half, count)
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.count - 1) as f64
    }

    pub fn value(&self, i: usize) -> f64 {
        self.min + self.step() * i as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.value(i)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialBox {
    pub x: Axis,
    pub y: Axis,
    pub z: Axis,
}

impl SpatialBox {
    pub fn len(&self) -> usize {
        self.x.count * self.y.count * self.z.count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Row-major over (x, y, z), z fastest.
    pub fn index(&self, ix: usize, iy: usize, iz: usize) -> usize {
        (ix * self.y.count + iy) * self.z.count + iz
    }
}

#[derive(Debug, Clone)]
pub struct SpinorGrid {
    pub t: f64,
    pub grid: SpatialBox,
    pub values: Vec<Bispinor<f64>>,
}

impl SpinorGrid {
    pub fn density(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }
}

// Barycentric weights of the Gauss-Legendre nodes on [-1, 1].
fn barycentric(nodes: &[f64]) -> Vec<f64> {
    nodes
        .iter()
        .enumerate()
        .map(|(k, &xk)| {
            let prod: f64 = nodes
                .iter()
                .enumerate()
                .filter(|(m, _)| *m != k)
                .map(|(_, &xm)| xk - xm)
                .product();
            1.0 / prod
        })
        .collect()
}

fn lagrange_at(nodes: &[f64], bw: &[f64], x: f64, out: &mut [f64]) {
    if let Some(k) = nodes.iter().position(|&n| n == x) {
        out.iter_mut().for_each(|v| *v = 0.0);
        out[k] = 1.0;
        return;
    }
    let mut den = 0.0;
    for k in 0..nodes.len() {
        out[k] = bw[k] / (x - nodes[k]);
        den += out[k];
    }
    out.iter_mut().for_each(|v| *v /= den);
}

/// Harmonic content of `sum_s' c u_h` at each p node.
struct Harmonics {
    n_min: i32,
    n_max: i32,
    // [ip][n - n_min]
    coef: Vec<Vec<Bispinor<f64>>>,
}

fn harmonics(amp: &MomentumAmplitude) -> Result<Harmonics> {
    let n_phi = amp.grid.n_phi;
    let n_p = amp.grid.nodes.len();
    let mut all = Vec::with_capacity(n_p);
    let mut peak: f64 = 0.0;
    for ip in 0..n_p {
        let samples: Vec<Bispinor<f64>> = (0..n_phi).map(|k| amp.spinor_amplitude(ip, k)).collect();
        let mut modes = vec![Bispinor::zero(); n_phi];
        for comp in 0..4 {
            let col: Vec<Complex64> = samples.iter().map(|b| b.0[comp]).collect();
            for (bin, c) in fourier_coefficients(&col)?.into_iter().enumerate() {
                modes[bin].0[comp] = c;
            }
        }
        for m in &modes {
            peak = peak.max(m.norm_sqr().sqrt());
        }
        all.push(modes);
    }
    let mut n_min = i32::MAX;
    let mut n_max = i32::MIN;
    for modes in &all {
        for (bin, m) in modes.iter().enumerate() {
            if m.norm_sqr().sqrt() > 1e-13 * peak {
                let n = harmonic_of_bin(bin, n_phi) as i32;
                n_min = n_min.min(n);
                n_max = n_max.max(n);
            }
        }
    }
    if n_min > n_max {
        return Err(Error::config(MODULE, "empty momentum amplitude"));
    }
    if n_max >= (n_phi / 2) as i32 - 1 || n_min <= -((n_phi / 2) as i32) + 1 {
        return Err(Error::resolution(
            MODULE,
            format!("harmonics {n_min}..{n_max} reach the Nyquist limit of n_phi = {n_phi}"),
        ));
    }
    let coef = all
        .into_iter()
        .map(|modes| {
            (n_min..=n_max)
                .map(|n| {
                    modes[if n >= 0 {
                        n as usize
                    } else {
                        (n_phi as i32 + n) as usize
                    }]
                })
                .collect()
        })
        .collect();
    Ok(Harmonics { n_min, n_max, coef })
}

// Longitudinal kernels K_j(z) = int l_j(p) e^{i Theta(p, z)} dp over each
// panel, with the fast phase resolved by Gauss subpanels.
struct Kernels {
    // [iz][ip]
    k: Vec<Vec<Complex64>>,
}

/// `eps + c p_z` on the fixed-`p_perp` cylinder, free of cancellation.
pub fn light_front_d(p_perp: f64, p: f64) -> f64 {
    let eps = energy(p_perp * p_perp + p * p);
    if p >= 0.0 {
        eps + C * p
    } else {
        C * C * (C * C + p_perp * p_perp) / (eps - C * p)
    }
}

fn kernels(amp: &MomentumAmplitude, pulse: &LaserPulse, t: f64, zs: &[f64]) -> Kernels {
    let g = &amp.grid;
    let p0 = amp.spec.p_par;
    let pt2 = g.p_perp * g.p_perp;
    let eps_ref = energy(pt2 + p0 * p0);
    let d_ref = light_front_d(g.p_perp, p0);
    let dt = t - amp.t_ref;
    let (ref_nodes, _) = gauss_legendre::<f64>(g.order);
    let bw = barycentric(&ref_nodes);
    let (sub_x, sub_w) = gauss_legendre::<f64>(8);
    let h = g.panel_width();
    let k = zs
        .par_iter()
        .map(|&z| {
            let (_, ia2) = pulse.phase_integrals(C * t + z);
            let b = ia2 / (2.0 * C);
            let theta = |p: f64| {
                let eps = energy(pt2 + p * p);
                let de = C * C * (p * p - p0 * p0) / (eps + eps_ref);
                let d = light_front_d(g.p_perp, p);
                (p - p0) * z - de * dt - b * (d_ref - d) / (d * d_ref)
            };
            let slope = |p: f64| {
                let eps = energy(pt2 + p * p);
                let v = C * C * p / eps;
                let d = light_front_d(g.p_perp, p);
                z - v * dt + b * (v + C) / (d * d)
            };
            let mut row = vec![Complex64::new(0.0, 0.0); g.nodes.len()];
            let mut basis = vec![0.0; g.order];
            for panel in 0..g.panels {
                let a = g.lo + h * panel as f64;
                let rate = [a, a + 0.5 * h, a + h]
                    .iter()
                    .map(|&p| slope(p).abs())
                    .fold(0.0, f64::max);
                let n_sub = ((1.25 * rate * h / PI).ceil() as usize).max(1);
                let hs = h / n_sub as f64;
                for sp in 0..n_sub {
                    let c0 = a + hs * (sp as f64 + 0.5);
                    for (xr, wr) in sub_x.iter().zip(&sub_w) {
                        let p = c0 + 0.5 * hs * xr;
                        let e = Complex64::from_polar(0.5 * hs * wr, theta(p));
                        lagrange_at(&ref_nodes, &bw, 2.0 * (p - a) / h - 1.0, &mut basis);
                        for (j, lj) in basis.iter().enumerate() {
                            row[panel * g.order + j] += e * *lj;
                        }
                    }
                }
            }
            row
        })
        .collect();
    Kernels { k }
}

/// Wavefunction on a box at time `t`, normalized like the initial packet
/// built from unit-amplitude Bessel beams.
pub fn wavefunction_at(
    amp: &MomentumAmplitude,
    pulse: &LaserPulse,
    t: f64,
    bx: &SpatialBox,
) -> Result<SpinorGrid> {
    let xs = bx.x.values();
    let ys = bx.y.values();
    let xy: Vec<(f64, f64)> = xs
        .iter()
        .flat_map(|&x| ys.iter().map(move |&y| (x, y)))
        .collect();
    let zs = bx.z.values();
    let slab = wavefunction_on(amp, pulse, t, &xy, &zs)?;
    let nz = zs.len();
    let mut values = vec![Bispinor::zero(); bx.len()];
    for (iz, plane) in slab.chunks(xy.len()).enumerate() {
        for (ixy, v) in plane.iter().enumerate() {
            values[ixy * nz + iz] = *v;
        }
    }
    Ok(SpinorGrid {
        t,
        grid: *bx,
        values,
    })
}

/// Wavefunction at the transverse points `xy` on each slice of `zs`;
/// result index `iz * xy.len() + ixy`.
pub fn wavefunction_on(
    amp: &MomentumAmplitude,
    pulse: &LaserPulse,
    t: f64,
    xy: &[(f64, f64)],
    zs: &[f64],
) -> Result<Vec<Bispinor<f64>>> {
    if !t.is_finite()
        || zs
            .iter()
            .chain(xy.iter().flat_map(|p| [&p.0, &p.1]))
            .any(|v| !v.is_finite())
    {
        return Err(Error::domain(MODULE, "time and coordinates must be finite"));
    }
    let g = &amp.grid;
    let harm = harmonics(amp)?;
    let kern = kernels(amp, pulse, t, zs);
    let n_p = g.nodes.len();
    let ds: Vec<f64> = g
        .nodes
        .iter()
        .map(|&p| light_front_d(g.p_perp, p))
        .collect();
    let p0 = amp.spec.p_par;
    let eps_ref = energy(g.p_perp * g.p_perp + p0 * p0);
    let d_ref = light_front_d(g.p_perp, p0);
    let scale = amp.position_scale() / (2.0 * PI).sqrt();
    let i_pow: Vec<Complex64> = (harm.n_min..=harm.n_max)
        .map(|n| Complex64::i().powi(n))
        .collect();
    let n_orders = (harm.n_max - harm.n_min + 1) as usize;

    let mut values = vec![Bispinor::zero(); xy.len() * zs.len()];
    if xy.is_empty() {
        return Ok(values);
    }
    values
        .par_chunks_mut(xy.len())
        .enumerate()
        .for_each(|(iz, plane)| {
            let z = zs[iz];
            let xi = C * t + z;
            let (ia, ia2) = pulse.phase_integrals(xi);
            let a = pulse.vector_potential(xi);
            let global = Complex64::from_polar(
                scale,
                p0 * z - eps_ref * (t - amp.t_ref) - ia2 / (2.0 * C * d_ref),
            );
            let mut jn = vec![0.0; n_orders];
            for (slot, &(x, y)) in plane.iter_mut().zip(xy) {
                let mut psi = Bispinor::zero();
                for ip in 0..n_p {
                    let xt = x - ia / ds[ip];
                    let rho = xt.hypot(y);
                    bessel_j_run(harm.n_min, harm.n_max, g.p_perp * rho, &mut jn);
                    let unit = if rho > 0.0 {
                        Complex64::new(xt / rho, y / rho)
                    } else {
                        Complex64::new(1.0, 0.0)
                    };
                    let mut e = unit.powi(harm.n_min);
                    let mut tsum = Bispinor::zero();
                    for (o, coef) in harm.coef[ip].iter().enumerate() {
                        if jn[o] != 0.0 {
                            tsum = tsum + coef.scale(i_pow[o] * e * jn[o]);
                        }
                        e *= unit;
                    }
                    let m = spinor_factor(a, ds[ip], 1, &tsum);
                    psi = psi + m.scale(kern.k[iz][ip]);
                }
                *slot = psi.scale(global);
            }
        });
    Ok(values)
}
