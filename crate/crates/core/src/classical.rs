//! Point-charge motion (charge -1) in the pulse.
//!
//! The wave depends on `xi = ct + z`, so `lambda = eps/c + p_z` and the
//! canonical `p_x - A/c` are conserved. Everything then follows from
//! `A(xi)` and its running integrals.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::LaserPulse;
use crate::units::{energy, C};

const MODULE: &str = "classical";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalState {
    pub t: f64,
    pub x: [f64; 3],
    pub p: [f64; 3],
}

impl ClassicalState {
    pub fn energy(&self) -> f64 {
        energy(self.p[0] * self.p[0] + self.p[1] * self.p[1] + self.p[2] * self.p[2])
    }

    pub fn light_front(&self) -> f64 {
        self.energy() / C + self.p[2]
    }
}

fn light_front_of(p: [f64; 3]) -> Result<f64> {
    let eps = energy(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    let lam = if p[2] >= 0.0 {
        eps / C + p[2]
    } else {
        (C * C + p[0] * p[0] + p[1] * p[1]) / (eps / C - p[2])
    };
    if !(lam > 0.0) || !lam.is_finite() {
        return Err(Error::domain(
            MODULE,
            "light-front denominator eps/c + p_z vanishes",
        ));
    }
    Ok(lam)
}

/// Momentum after the whole pulse has passed, for field area `s_e`.
pub fn final_momentum(p0: [f64; 3], s_e: f64) -> Result<[f64; 3]> {
    let lam = light_front_of(p0)?;
    Ok([p0[0] - s_e, p0[1], p0[2] + s_e * (p0[0] - 0.5 * s_e) / lam])
}

/// Exact motion through the pulse, parameterized by `xi`.
#[derive(Debug, Clone)]
pub struct ExactPath<'a> {
    pulse: &'a LaserPulse,
    p0: [f64; 3],
    lam: f64,
    // offsets so that the path passes through (t0, x0)
    t_off: f64,
    x_off: [f64; 3],
}

impl<'a> ExactPath<'a> {
    /// Path through `x0` at `t0` with kinetic momentum `p0` there. `p0` is
    /// the momentum before the pulse, so `(t0, x0)` should lie ahead of it
    /// unless the caller means the free-extrapolated state.
    pub fn new(pulse: &'a LaserPulse, p0: [f64; 3], t0: f64, x0: [f64; 3]) -> Result<Self> {
        let lam = light_front_of(p0)?;
        let mut path = ExactPath {
            pulse,
            p0,
            lam,
            t_off: 0.0,
            x_off: [0.0; 3],
        };
        let xi0 = C * t0 + x0[2];
        let t_raw = path.time_raw(xi0);
        let x_raw = path.position_raw(xi0, t_raw);
        path.t_off = t0 - t_raw;
        path.x_off = [x0[0] - x_raw[0], x0[1] - x_raw[1], 0.0];
        Ok(path)
    }

    /// Free-extrapolated path through the origin at `t = 0`.
    pub fn through_origin(pulse: &'a LaserPulse, p0: [f64; 3]) -> Result<Self> {
        let lam = light_front_of(p0)?;
        Ok(ExactPath {
            pulse,
            p0,
            lam,
            t_off: 0.0,
            x_off: [0.0; 3],
        })
    }

    pub fn light_front(&self) -> f64 {
        self.lam
    }

    fn time_raw(&self, xi: f64) -> f64 {
        let (ia, ia2) = self.pulse.phase_integrals(xi);
        let p = self.p0;
        let lam = self.lam;
        ((lam * lam + C * C + p[0] * p[0] + p[1] * p[1]) * xi + 2.0 * p[0] * ia / C + ia2 / (C * C))
            / (2.0 * C * lam * lam)
    }

    fn position_raw(&self, xi: f64, t: f64) -> [f64; 3] {
        let (ia, _) = self.pulse.phase_integrals(xi);
        [
            (self.p0[0] * xi + ia / C) / self.lam,
            self.p0[1] * xi / self.lam,
            xi - C * t,
        ]
    }

    pub fn momentum(&self, xi: f64) -> [f64; 3] {
        let px = self.p0[0] + self.pulse.vector_potential(xi) / C;
        let pt2 = px * px + self.p0[1] * self.p0[1];
        let lam = self.lam;
        [px, self.p0[1], (lam * lam - C * C - pt2) / (2.0 * lam)]
    }

    pub fn time(&self, xi: f64) -> f64 {
        self.time_raw(xi) + self.t_off
    }

    pub fn at_xi(&self, xi: f64) -> ClassicalState {
        let t = self.time(xi);
        let r = self.position_raw(xi, t - self.t_off);
        ClassicalState {
            t,
            x: [r[0] + self.x_off[0], r[1] + self.x_off[1], xi - C * t],
            p: self.momentum(xi),
        }
    }

    /// State at time `t`; `xi(t)` by safeguarded Newton iteration.
    pub fn at_time(&self, t: f64) -> Result<ClassicalState> {
        let p = self.p0;
        let eps0 = energy(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        // dt/dxi >= 1/(2c) and the free value is a good start
        let mut xi = (t - self.t_off) * C * C * self.lam / eps0;
        for _ in 0..100 {
            let mom = self.momentum(xi);
            let dtdxi = (self.lam * self.lam + C * C + mom[0] * mom[0] + mom[1] * mom[1])
                / (2.0 * C * self.lam * self.lam);
            let step = (self.time(xi) - t) / dtdxi;
            xi -= step;
            if step.abs() <= 1e-14 * (1.0 + xi.abs()) {
                return Ok(self.at_xi(xi));
            }
        }
        Err(Error::Numerical {
            module: MODULE,
            msg: "light-front time inversion did not converge".into(),
            best: xi,
        })
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub states: Vec<ClassicalState>,
    /// Largest |lambda - lambda_0| / lambda_0 along the path.
    pub invariant_drift: f64,
    /// Set when the step does not resolve 64 per carrier period.
    pub coarse: bool,
}

/// Exact path sampled on a uniform time grid.
pub fn trajectory_exact(
    pulse: &LaserPulse,
    p0: [f64; 3],
    x0: [f64; 3],
    t0: f64,
    t1: f64,
    dt: f64,
) -> Result<Trajectory> {
    let path = ExactPath::new(pulse, p0, t0, x0)?;
    let n = step_count(t0, t1, dt)?;
    let lam0 = path.light_front();
    let mut states = Vec::with_capacity(n + 1);
    let mut drift: f64 = 0.0;
    for k in 0..=n {
        let s = path.at_time(t0 + (t1 - t0) * k as f64 / n as f64)?;
        drift = drift.max((s.light_front() - lam0).abs() / lam0);
        states.push(s);
    }
    Ok(Trajectory {
        states,
        invariant_drift: drift,
        coarse: is_coarse(pulse, p0, dt),
    })
}

fn step_count(t0: f64, t1: f64, dt: f64) -> Result<usize> {
    if !(dt > 0.0) || !(t1 > t0) {
        return Err(Error::domain(MODULE, "need dt > 0 and t1 > t0"));
    }
    Ok(((t1 - t0) / dt).ceil().max(1.0) as usize)
}

// carrier period seen by the particle
fn is_coarse(pulse: &LaserPulse, p0: [f64; 3], dt: f64) -> bool {
    let eps = energy(p0[0] * p0[0] + p0[1] * p0[1] + p0[2] * p0[2]);
    let rate = 1.0 + C * p0[2] / eps;
    let period = 2.0 * std::f64::consts::PI / (pulse.omega * rate.max(1e-300));
    dt > period / 64.0
}

fn lorentz(pulse: &LaserPulse, t: f64, y: &[f64; 6]) -> [f64; 6] {
    let p = [y[3], y[4], y[5]];
    let eps = energy(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    let v = [C * C * p[0] / eps, C * C * p[1] / eps, C * C * p[2] / eps];
    let e = pulse.electric_field(C * t + y[2]);
    // E = (e, 0, 0), B = (0, -e, 0), charge -1
    [v[0], v[1], v[2], -e * (1.0 + v[2] / C), 0.0, e * v[0] / C]
}

/// Classical RK4 on the Lorentz force, used as an oracle for the exact path.
pub fn trajectory_rk4(
    pulse: &LaserPulse,
    p0: [f64; 3],
    x0: [f64; 3],
    t0: f64,
    t1: f64,
    dt: f64,
) -> Result<Trajectory> {
    let n = step_count(t0, t1, dt)?;
    let h = (t1 - t0) / n as f64;
    let mut y = [x0[0], x0[1], x0[2], p0[0], p0[1], p0[2]];
    let to_state = |t: f64, y: &[f64; 6]| ClassicalState {
        t,
        x: [y[0], y[1], y[2]],
        p: [y[3], y[4], y[5]],
    };
    let lam0 = to_state(t0, &y).light_front();
    let mut states = Vec::with_capacity(n + 1);
    states.push(to_state(t0, &y));
    let mut drift: f64 = 0.0;
    for k in 0..n {
        let t = t0 + h * k as f64;
        let k1 = lorentz(pulse, t, &y);
        let k2 = lorentz(pulse, t + 0.5 * h, &axpy(&y, 0.5 * h, &k1));
        let k3 = lorentz(pulse, t + 0.5 * h, &axpy(&y, 0.5 * h, &k2));
        let k4 = lorentz(pulse, t + h, &axpy(&y, h, &k3));
        for i in 0..6 {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        let s = to_state(t + h, &y);
        drift = drift.max((s.light_front() - lam0).abs() / lam0);
        states.push(s);
    }
    Ok(Trajectory {
        states,
        invariant_drift: drift,
        coarse: is_coarse(pulse, p0, dt),
    })
}

fn axpy(y: &[f64; 6], a: f64, k: &[f64; 6]) -> [f64; 6] {
    let mut out = *y;
    for i in 0..6 {
        out[i] += a * k[i];
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeanPath {
    pub t: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub z: Vec<f64>,
}

/// Average over `n_phi` uniform initial azimuths `offset + 2 pi k / n_phi`
/// of the momentum on the cone. Each path is the free-extrapolated one
/// through the origin at `t = 0`.
pub fn averaged_trajectory(
    p_par: f64,
    p_perp: f64,
    pulse: &LaserPulse,
    n_phi: usize,
    offset: f64,
    times: &[f64],
) -> Result<MeanPath> {
    if n_phi < 16 {
        return Err(Error::config(MODULE, format!("n_phi = {n_phi} < 16")));
    }
    let per_phi: Vec<Vec<[f64; 3]>> = (0..n_phi)
        .into_par_iter()
        .map(|k| {
            let phi = offset + 2.0 * std::f64::consts::PI * k as f64 / n_phi as f64;
            let path =
                ExactPath::through_origin(pulse, [p_perp * phi.cos(), p_perp * phi.sin(), p_par])?;
            times
                .iter()
                .map(|&t| path.at_time(t).map(|s| s.x))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut out = MeanPath {
        t: times.to_vec(),
        x: vec![0.0; times.len()],
        y: vec![0.0; times.len()],
        z: vec![0.0; times.len()],
    };
    for path in &per_phi {
        for (i, r) in path.iter().enumerate() {
            out.x[i] += r[0];
            out.y[i] += r[1];
            out.z[i] += r[2];
        }
    }
    let norm = 1.0 / n_phi as f64;
    for v in [&mut out.x, &mut out.y, &mut out.z] {
        v.iter_mut().for_each(|a| *a *= norm);
    }
    Ok(out)
}

/// `I_A(xi) / (eps_0 + c p_z)`: the azimuthally averaged x-drift in light-front form.
pub fn mean_x_drift(pulse: &LaserPulse, p_par: f64, p_perp: f64, xi: f64) -> f64 {
    let d = energy(p_par * p_par + p_perp * p_perp) + C * p_par;
    pulse.phase_integrals(xi).0 / d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{field_area_closed_form, PulseParams};
    use rand::{Rng, SeedableRng};

    fn pulse(e: f64, omega: f64, a: f64, phi: f64) -> LaserPulse {
        LaserPulse::new(PulseParams::new(e, omega, a, phi)).unwrap()
    }

    #[test]
    fn zero_area_keeps_momentum() {
        let p0 = [3.0, -2.0, 7.0];
        assert_eq!(final_momentum(p0, 0.0).unwrap(), p0);
        let pf = final_momentum(p0, 12.5).unwrap();
        assert_eq!(pf[1], p0[1]);
    }

    #[test]
    fn field_free_motion_is_uniform() {
        let pl = pulse(0.0, 0.2, 3.0, 0.0);
        let p0 = [40.0, 10.0, -25.0];
        let tr = trajectory_exact(&pl, p0, [1.0, 2.0, 3.0], -5.0, 5.0, 0.5).unwrap();
        let eps = energy(p0.iter().map(|v| v * v).sum());
        for s in &tr.states {
            for i in 0..3 {
                let expect = [1.0, 2.0, 3.0][i] + C * C * p0[i] / eps * (s.t + 5.0);
                assert!(
                    (s.x[i] - expect).abs() < 1e-9 * (1.0 + expect.abs()),
                    "{i}: {} vs {expect}",
                    s.x[i]
                );
            }
        }
    }

    #[test]
    fn exact_path_reaches_closed_form() {
        let (e, w, a, phi) = (2.0, 0.3, 1.5, 0.7);
        let pl = pulse(e, w, a, phi);
        let (s_e, _) = field_area_closed_form(e, w, a, phi);
        let p0 = [30.0, -12.0, 80.0];
        let path = ExactPath::through_origin(&pl, p0).unwrap();
        let after = path.at_xi(2.0 * pl.xi_max);
        let expect = final_momentum(p0, s_e).unwrap();
        for i in 0..3 {
            assert!((after.p[i] - expect[i]).abs() < 1e-8 * (1.0 + expect[i].abs()));
        }
        let lam = path.light_front();
        for k in -50..=50 {
            let s = path.at_xi(pl.xi_max * k as f64 / 40.0);
            assert!((s.light_front() - lam).abs() < 1e-10 * lam);
        }
    }

    #[test]
    fn rk4_matches_closed_form() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let (e, w, a, phi) = (
                rng.gen_range(0.5..20.0),
                rng.gen_range(0.2..2.0),
                rng.gen_range(0.9..4.0),
                rng.gen_range(0.0..6.3),
            );
            let pl = pulse(e, w, a, phi);
            let p0 = [
                rng.gen_range(-50.0..50.0),
                rng.gen_range(-50.0..50.0),
                rng.gen_range(-50.0..50.0),
            ];
            let eps = energy(p0.iter().map(|v| v * v).sum());
            let vz = C * C * p0[2] / eps;
            let t0 = -1.05 * pl.xi_max / (C + vz);
            let t1 = -t0;
            let period = 2.0 * std::f64::consts::PI / w / (1.0 + vz / C);
            let x0 = [0.0, 0.0, vz * t0];
            let tr = trajectory_rk4(&pl, p0, x0, t0, t1, period / 256.0).unwrap();
            assert!(!tr.coarse);
            let pf = tr.states.last().unwrap().p;
            let (s_e, _) = field_area_closed_form(e, w, a, phi);
            let expect = final_momentum(p0, s_e).unwrap();
            let scale = expect.iter().map(|v| v * v).sum::<f64>().sqrt();
            for i in 0..3 {
                assert!(
                    (pf[i] - expect[i]).abs() < 1e-6 * scale,
                    "{i}: {} vs {}",
                    pf[i],
                    expect[i]
                );
            }
            // and the exact path agrees at the same time
            let ex = ExactPath::new(&pl, p0, t0, x0)
                .unwrap()
                .at_time(t1)
                .unwrap();
            let last = tr.states.last().unwrap();
            for i in 0..3 {
                assert!((ex.x[i] - last.x[i]).abs() < 1e-6 * (1.0 + ex.x[i].abs()));
            }
        }
    }

    #[test]
    fn averaged_path_symmetry() {
        let pl = pulse(5.0, 0.242, 3.0, 0.3);
        let times: Vec<f64> = (-10..=10).map(|k| k as f64 * 0.2 * pl.xi_max / C).collect();
        let m = averaged_trajectory(150.0, 100.0, &pl, 32, 0.0, &times).unwrap();
        let shifted = averaged_trajectory(150.0, 100.0, &pl, 32, 0.05, &times).unwrap();
        let peak = m.x.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        assert!(peak > 0.0);
        for i in 0..times.len() {
            assert!(m.y[i].abs() < 1e-10 * (1.0 + peak));
            assert!((m.x[i] - shifted.x[i]).abs() < 1e-8 * peak);
        }
        assert!(averaged_trajectory(150.0, 100.0, &pl, 8, 0.0, &times).is_err());
    }

    #[test]
    fn single_azimuth_drifts_in_y() {
        let pl = pulse(5.0, 0.242, 3.0, 0.3);
        let path = ExactPath::through_origin(&pl, [0.0, 100.0, 150.0]).unwrap();
        let a = path.at_time(10.0).unwrap();
        let b = path.at_time(100.0).unwrap();
        assert!(b.x[1] > a.x[1] && b.x[1] > 1.0);
    }
}
