//! Measured quantities: z-integrated densities, coordinate means, angular
//! momentum statistics and the carrier-envelope phase sweep.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::beams::{default_radial_extent, BeamSpec};
use crate::classical::averaged_trajectory;
use crate::error::{Error, Result};
use crate::evolve::{
    light_front_d, packet_coefficients_delta, wavefunction_at, wavefunction_on, Axis, GridOptions,
    MomentumAmplitude, SpatialBox,
};
use crate::field::{LaserPulse, PulseParams};
use crate::numerics::{fourier_coefficients, harmonic_of_bin, spectral_derivative_periodic};
use crate::spinors::{light_front_matrix, Bispinor};
use crate::units::C;

const MODULE: &str = "observables";

#[derive(Debug, Clone, PartialEq)]
pub struct NamedAxis {
    pub name: String,
    pub axis: Axis,
}

/// Real values on a 2-D or 3-D uniform grid, row-major, last axis fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarGrid {
    pub axes: Vec<NamedAxis>,
    pub values: Vec<f64>,
    pub time: f64,
    pub hash: Option<String>,
}

// trapezoid weights on a uniform axis
fn trapezoid(axis: &Axis) -> Vec<f64> {
    let h = axis.step();
    (0..axis.count)
        .map(|i| {
            if i == 0 || i + 1 == axis.count {
                0.5 * h
            } else {
                h
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub density: ScalarGrid,
    pub mean: [f64; 3],
    /// Box integral of `|psi|^2` before normalization.
    pub box_norm: f64,
}

/// Centre of the azimuthally averaged classical path at `t`.
pub fn classical_center(spec: &BeamSpec, pulse: &LaserPulse, t: f64) -> Result<[f64; 3]> {
    let m = averaged_trajectory(spec.p_par, spec.p_perp, pulse, 16, 0.0, &[t])?;
    Ok([m.x[0], m.y[0], m.z[0]])
}

/// Time at which a packet, unspread and centred at z = 0 at `t_ref`,
/// reaches the pulse centre.
pub fn collision_time(spec: &BeamSpec, t_ref: f64) -> f64 {
    let v = C * C * spec.p_par / spec.energy();
    v * t_ref / (C + v)
}

/// `classical_center` for a packet that is unspread at z = 0 at `t_ref`.
pub fn classical_center_from(
    spec: &BeamSpec,
    pulse: &LaserPulse,
    t: f64,
    t_ref: f64,
) -> Result<[f64; 3]> {
    let tc = collision_time(spec, t_ref);
    let mut c = classical_center(spec, pulse, t - tc)?;
    c[2] -= C * tc;
    Ok(c)
}

fn inside(bx: &SpatialBox, c: [f64; 3]) -> bool {
    let axes = [bx.x, bx.y, bx.z];
    axes.iter().zip(c).all(|(a, v)| v >= a.min && v <= a.max)
}

/// Density integrated over z and first moments, from one evaluation.
pub fn snapshot(
    amp: &MomentumAmplitude,
    pulse: &LaserPulse,
    t: f64,
    bx: &SpatialBox,
) -> Result<Snapshot> {
    let c = classical_center_from(&amp.spec, pulse, t, amp.t_ref)?;
    if !inside(bx, c) {
        return Err(Error::config(
            MODULE,
            format!(
                "classical centre ({:.4}, {:.4}, {:.4}) at t = {t} lies outside the box; shift the box",
                c[0], c[1], c[2]
            ),
        ));
    }
    snapshot_in(amp, pulse, t, bx)
}

fn snapshot_in(
    amp: &MomentumAmplitude,
    pulse: &LaserPulse,
    t: f64,
    bx: &SpatialBox,
) -> Result<Snapshot> {
    let psi = wavefunction_at(amp, pulse, t, bx)?;
    let (wx, wy, wz) = (trapezoid(&bx.x), trapezoid(&bx.y), trapezoid(&bx.z));
    let (xs, ys, zs) = (bx.x.values(), bx.y.values(), bx.z.values());
    let mut rho = vec![0.0; bx.x.count * bx.y.count];
    let mut total = 0.0;
    let mut first = [0.0; 3];
    for ix in 0..bx.x.count {
        for iy in 0..bx.y.count {
            let mut col = 0.0;
            for iz in 0..bx.z.count {
                let d = psi.values[bx.index(ix, iy, iz)].norm_sqr();
                col += wz[iz] * d;
                first[2] += wx[ix] * wy[iy] * wz[iz] * d * zs[iz];
            }
            rho[ix * bx.y.count + iy] = col;
            let w = wx[ix] * wy[iy] * col;
            total += w;
            first[0] += w * xs[ix];
            first[1] += w * ys[iy];
        }
    }
    if !(total > 0.0) {
        return Err(Error::Numerical {
            module: MODULE,
            msg: "zero density in box".into(),
            best: total,
        });
    }
    rho.iter_mut().for_each(|v| *v /= total);
    Ok(Snapshot {
        density: ScalarGrid {
            axes: vec![
                NamedAxis {
                    name: "x".into(),
                    axis: bx.x,
                },
                NamedAxis {
                    name: "y".into(),
                    axis: bx.y,
                },
            ],
            values: rho,
            time: t,
            hash: None,
        },
        mean: [first[0] / total, first[1] / total, first[2] / total],
        box_norm: total,
    })
}

pub fn density_snapshot(
    amp: &MomentumAmplitude,
    pulse: &LaserPulse,
    t: f64,
    bx: &SpatialBox,
) -> Result<ScalarGrid> {
    Ok(snapshot(amp, pulse, t, bx)?.density)
}

pub fn position_mean(
    amp: &MomentumAmplitude,
    pulse: &LaserPulse,
    t: f64,
    bx: &SpatialBox,
) -> Result<[f64; 3]> {
    Ok(snapshot(amp, pulse, t, bx)?.mean)
}

fn shift_x(bx: &SpatialBox, centre: f64) -> SpatialBox {
    let half = 0.5 * (bx.x.max - bx.x.min);
    SpatialBox {
        x: Axis {
            min: centre - half,
            max: centre + half,
            count: bx.x.count,
        },
        ..*bx
    }
}

/// Snapshot in a box re-centred along x until the box centre equals the
/// box moment `<x>`, starting from `bx`. Needed because the transverse
/// density is not normalizable and plain box moments lean toward the box
/// centre.
pub fn recentred_snapshot(
    amp: &MomentumAmplitude,
    pulse: &LaserPulse,
    t: f64,
    bx: &SpatialBox,
) -> Result<Snapshot> {
    let tol = 1e-3 * bx.x.step();
    let centre = |b: &SpatialBox| 0.5 * (b.x.min + b.x.max);
    let mut c0 = centre(bx);
    let mut s0 = snapshot_in(amp, pulse, t, bx)?;
    let mut g0 = s0.mean[0] - c0;
    if g0.abs() <= tol {
        return Ok(s0);
    }
    let mut c1 = s0.mean[0];
    for _ in 0..12 {
        let s1 = snapshot_in(amp, pulse, t, &shift_x(bx, c1))?;
        let g1 = s1.mean[0] - c1;
        if g1.abs() <= tol {
            return Ok(s1);
        }
        let next = if g1 != g0 {
            c1 - g1 * (c1 - c0) / (g1 - g0)
        } else {
            s1.mean[0]
        };
        (c0, g0, s0) = (c1, g1, s1);
        c1 = next;
    }
    Err(Error::Numerical {
        module: MODULE,
        msg: format!("box re-centring did not settle at t = {t}"),
        best: s0.mean[0],
    })
}

/// Standard deviation of `|psi|^2` along z for the free packet after `t`.
pub fn packet_length(spec: &BeamSpec, t: f64) -> f64 {
    let eps = spec.energy();
    // d v_par / d p_par at fixed p_perp
    let dvdp = C * C / eps * (1.0 - (C * spec.p_par / eps).powi(2));
    ((1.0 / spec.sigma).powi(2) + (dvdp * spec.sigma * t).powi(2)).sqrt() / 2f64.sqrt()
}

/// Box centred on the averaged classical path with transverse half-width
/// from the beam's Bessel zeros and `z_sigmas` packet lengths along z.
/// `t_ref` is when the packet is unspread at z = 0.
pub fn tracking_box(
    spec: &BeamSpec,
    pulse: &LaserPulse,
    t: f64,
    t_ref: f64,
    n_xy: usize,
    n_z: usize,
    z_sigmas: f64,
) -> Result<SpatialBox> {
    let c = classical_center_from(spec, pulse, t, t_ref)?;
    let r = default_radial_extent(spec)?;
    let hz = z_sigmas * packet_length(spec, t - t_ref);
    Ok(SpatialBox {
        x: Axis::centered(c[0], r, n_xy)?,
        y: Axis::centered(0.0, r, n_xy)?,
        z: Axis::centered(c[2], hz, n_z)?,
    })
}

/// Collision-centred window `(t_in, t_out)`: the packet's `margin`-length
/// edges clear the pulse support (plus `l_box`) on both sides.
pub fn time_window(
    spec: &BeamSpec,
    pulse: &LaserPulse,
    l_box: f64,
    margin: f64,
) -> Result<(f64, f64)> {
    let v = C * C * spec.p_par / spec.energy();
    let t_in = -(pulse.xi_max + l_box) / (C + v);
    // leading edge of the pulse reached the trailing edge of the packet
    let clear = |t: f64| -> Result<f64> {
        let z = classical_center(spec, pulse, t)?[2];
        Ok(C * t + z - margin * packet_length(spec, t) - pulse.xi_max - l_box)
    };
    let mut lo = 0.0;
    let mut hi = (pulse.xi_max + l_box) / (C - v.abs()).max(1e-3 * C);
    let mut grow = 0;
    while clear(hi)? < 0.0 {
        hi *= 2.0;
        grow += 1;
        if grow > 60 {
            return Err(Error::config(MODULE, "packet never leaves the pulse"));
        }
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if clear(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((t_in, hi))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularMomentumReport {
    pub j_mean: f64,
    pub j2_mean: f64,
    pub dj: f64,
    pub l_mean: f64,
    pub s_mean: f64,
    pub s_e: f64,
    pub time: Option<f64>,
}

// Sigma_z / 2 in the Dirac representation
fn half_sigma_z(v: &Bispinor<f64>) -> Bispinor<f64> {
    Bispinor([v.0[0] * 0.5, -v.0[1] * 0.5, v.0[2] * 0.5, -v.0[3] * 0.5])
}

/// Moments of `J_z = -i d/dphi_p + Sigma_z/2` on the momentum amplitude
/// `sum_s' c (1 + A0 N / 2D) u(p', s')`. `pulse = None` means field-free.
pub fn angular_momentum_stats(
    amp: &MomentumAmplitude,
    pulse: Option<&LaserPulse>,
    time: Option<f64>,
) -> Result<AngularMomentumReport> {
    let g = &amp.grid;
    let n_phi = g.n_phi;
    let (s_e, a0) = pulse.map(|p| p.field_area()).unwrap_or((0.0, 0.0));
    let n = light_front_matrix::<f64>();
    let tail_from = (n_phi / 2 - n_phi / 8) as i64;

    struct Row {
        norm: f64,
        j: f64,
        j2: f64,
        l: f64,
        s: f64,
        tail: f64,
        peak: f64,
    }
    let rows: Vec<Row> = (0..g.nodes.len())
        .into_par_iter()
        .map(|ip| -> Result<Row> {
            let d = light_front_d(g.p_perp, g.nodes[ip]);
            let phi: Vec<Bispinor<f64>> = (0..n_phi)
                .map(|k| {
                    let u = amp.spinor_amplitude(ip, k);
                    if a0 == 0.0 {
                        u
                    } else {
                        u + Bispinor::apply(&n, &u).scale(Complex64::new(a0 / (2.0 * d), 0.0))
                    }
                })
                .collect();
            let mut lphi = vec![Bispinor::zero(); n_phi];
            let (mut tail, mut peak) = (0.0f64, 0.0f64);
            for comp in 0..4 {
                let col: Vec<Complex64> = phi.iter().map(|b| b.0[comp]).collect();
                for (bin, c) in fourier_coefficients(&col)?.iter().enumerate() {
                    peak = peak.max(c.norm());
                    if harmonic_of_bin(bin, n_phi).abs() >= tail_from {
                        tail = tail.max(c.norm());
                    }
                }
                for (k, dv) in spectral_derivative_periodic(&col)?.into_iter().enumerate() {
                    lphi[k].0[comp] = dv * Complex64::new(0.0, -1.0);
                }
            }
            let mut row = Row {
                norm: 0.0,
                j: 0.0,
                j2: 0.0,
                l: 0.0,
                s: 0.0,
                tail,
                peak,
            };
            for k in 0..n_phi {
                let sphi = half_sigma_z(&phi[k]);
                let jphi = lphi[k] + sphi;
                row.norm += phi[k].norm_sqr();
                row.l += phi[k].inner(&lphi[k]).re;
                row.s += phi[k].inner(&sphi).re;
                row.j += phi[k].inner(&jphi).re;
                row.j2 += jphi.norm_sqr();
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let peak = rows.iter().fold(0.0f64, |m, r| m.max(r.peak));
    let tail = rows.iter().fold(0.0f64, |m, r| m.max(r.tail));
    if tail > 1e-6 * peak {
        return Err(Error::resolution(
            MODULE,
            format!(
                "azimuthal spectrum not resolved: tail/peak = {:.2e} with n_phi = {n_phi}",
                tail / peak
            ),
        ));
    }
    let mut acc = [0.0; 5];
    for (r, w) in rows.iter().zip(&g.weights) {
        for (a, v) in acc.iter_mut().zip([r.norm, r.j, r.j2, r.l, r.s]) {
            *a += w * v;
        }
    }
    let [norm, j, j2, l, s] = acc;
    let (j, j2, l, s) = (j / norm, j2 / norm, l / norm, s / norm);
    Ok(AngularMomentumReport {
        j_mean: j,
        j2_mean: j2,
        dj: (j2 - j * j).max(0.0).sqrt(),
        l_mean: l,
        s_mean: s,
        s_e,
        time,
    })
}

/// `(<J_z>, DJ_z)` from the wavefunction on a polar grid about the axis
/// through `(x_axis, 0)`, at the given z slices; the angular derivative
/// is spectral. Box-truncated, so only meaningful when the box holds the
/// displaced slices.
#[allow(clippy::too_many_arguments)]
pub fn position_space_jz(
    amp: &MomentumAmplitude,
    pulse: &LaserPulse,
    t: f64,
    x_axis: f64,
    rho_max: f64,
    n_rho: usize,
    n_phi: usize,
    zs: &[f64],
) -> Result<(f64, f64)> {
    if n_rho < 2 || !(rho_max > 0.0) {
        return Err(Error::config(MODULE, "need n_rho >= 2 and rho_max > 0"));
    }
    let (rs, ws) = crate::numerics::composite_gauss_legendre(0.0, rho_max, 8, n_rho.div_ceil(8));
    let mut xy = Vec::with_capacity(rs.len() * n_phi);
    for &r in &rs {
        for k in 0..n_phi {
            let ph = 2.0 * PI * k as f64 / n_phi as f64;
            xy.push((x_axis + r * ph.cos(), r * ph.sin()));
        }
    }
    let psi = wavefunction_on(amp, pulse, t, &xy, zs)?;
    let (mut num, mut num2, mut den) = (0.0, 0.0, 0.0);
    for plane in psi.chunks(xy.len()) {
        for (ir, ring) in plane.chunks(n_phi).enumerate() {
            let mut dpsi = vec![Bispinor::zero(); n_phi];
            for comp in 0..4 {
                let col: Vec<Complex64> = ring.iter().map(|b| b.0[comp]).collect();
                for (k, dv) in spectral_derivative_periodic(&col)?.into_iter().enumerate() {
                    dpsi[k].0[comp] = dv * Complex64::new(0.0, -1.0);
                }
            }
            let w = ws[ir] * rs[ir];
            for k in 0..n_phi {
                let jv = dpsi[k] + half_sigma_z(&ring[k]);
                num += w * ring[k].inner(&jv).re;
                num2 += w * jv.norm_sqr();
                den += w * ring[k].norm_sqr();
            }
        }
    }
    let j = num / den;
    Ok((j, (num2 / den - j * j).max(0.0).sqrt()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub phi: f64,
    pub s_e: f64,
    pub j_mean: f64,
    pub dj: f64,
}

/// One pipeline run per carrier-envelope phase.
pub fn cep_sweep(
    spec: &BeamSpec,
    base: &PulseParams,
    phis: &[f64],
    opts: &GridOptions,
) -> Result<Vec<SweepRow>> {
    let amp = packet_coefficients_delta(spec, opts, 0.0)?;
    phis.iter()
        .map(|&phi| {
            let pulse = LaserPulse::new(PulseParams { phi, ..*base })?;
            let r = angular_momentum_stats(&amp, Some(&pulse), None)?;
            Ok(SweepRow {
                phi,
                s_e: r.s_e,
                j_mean: r.j_mean,
                dj: r.dj,
            })
        })
        .collect()
}

/// `DJ` at the largest |S_E| over `DJ` at the smallest.
pub fn sweep_contrast(rows: &[SweepRow]) -> Option<f64> {
    let hi = rows
        .iter()
        .max_by(|a, b| a.s_e.abs().total_cmp(&b.s_e.abs()))?;
    let lo = rows
        .iter()
        .min_by(|a, b| a.s_e.abs().total_cmp(&b.s_e.abs()))?;
    Some(hi.dj / lo.dj)
}
