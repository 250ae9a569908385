use std::f64::consts::PI;

use anyhow::{bail, Result};

use vortex_core::beams::{default_radial_extent, radial_current_profile, BeamSpec};
use vortex_core::classical::{averaged_trajectory, ExactPath};
use vortex_core::evolve::{
    initial_time, packet_coefficients_delta, packet_coefficients_finite_l, wavefunction_at,
    MomentumAmplitude,
};
use vortex_core::field::LaserPulse;
use vortex_core::observables::{
    angular_momentum_stats, cep_sweep, collision_time, recentred_snapshot, snapshot, time_window,
    tracking_box,
};
use vortex_core::spinors::Spin;
use vortex_core::units::C;

use crate::output::Sink;
use crate::scenario::{Resolved, Scenario};

pub struct Run<'a> {
    pub scenario: &'a Scenario,
    pub res: Resolved,
    pub sink: &'a Sink,
}

impl Run<'_> {
    fn pulse(&self) -> Result<LaserPulse> {
        Ok(LaserPulse::new(self.res.pulse)?)
    }

    fn amplitude(&self, pulse: &LaserPulse) -> Result<MomentumAmplitude> {
        Ok(match self.scenario.numerics.l_box {
            None => packet_coefficients_delta(&self.res.spec, &self.res.grid, 0.0)?,
            Some(l) => packet_coefficients_finite_l(&self.res.spec, pulse, l, &self.res.grid)?,
        })
    }

    fn t_ref(&self, pulse: &LaserPulse) -> f64 {
        self.scenario
            .numerics
            .l_box
            .map(|l| initial_time(pulse, l))
            .unwrap_or(0.0)
    }

    /// Output times on the simulation clock.
    fn times(&self, pulse: &LaserPulse, default_count: usize) -> Result<Vec<f64>> {
        if let Some(ts) = &self.scenario.outputs.times {
            return Ok(ts.clone());
        }
        let n = self.scenario.outputs.n_times.unwrap_or(default_count);
        let l = self.scenario.numerics.l_box.unwrap_or(0.0);
        let (t0, t1) = time_window(
            &self.res.spec,
            pulse,
            l,
            self.scenario.numerics.window_margin,
        )?;
        let tc = collision_time(&self.res.spec, self.t_ref(pulse));
        if n == 1 {
            return Ok(vec![t0 + tc]);
        }
        Ok((0..n)
            .map(|k| t0 + tc + (t1 - t0) * k as f64 / (n - 1) as f64)
            .collect())
    }

    fn phis(&self, default_count: usize) -> Vec<f64> {
        self.scenario.outputs.phis.clone().unwrap_or_else(|| {
            (0..default_count)
                .map(|k| PI * k as f64 / (default_count - 1) as f64)
                .collect()
        })
    }
}

pub fn field(run: &Run) -> Result<()> {
    let pulse = run.pulse()?;
    let n = run.scenario.numerics.field_samples;
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|k| {
            let xi = -pulse.xi_max + 2.0 * pulse.xi_max * k as f64 / (n - 1) as f64;
            let (ia, ia2) = pulse.phase_integrals(xi);
            vec![
                xi,
                pulse.electric_field(xi),
                pulse.vector_potential(xi),
                ia,
                ia2,
            ]
        })
        .collect();
    run.sink
        .csv("field.csv", &["xi", "E", "A", "I_A", "I_A2"], &rows)?;
    let (s_e, a0) = pulse.field_area();
    println!(
        "[field] xi_max = {:.6e}, S_E = {s_e:.6e}, A0 = {a0:.6e}",
        pulse.xi_max
    );
    Ok(())
}

/// Profiles of both families sharing the beam's total m.
pub fn current(run: &Run) -> Result<()> {
    let spec = run.res.spec;
    let twice_m = spec.twice_m();
    let with = |make: &dyn Fn(Spin) -> vortex_core::Result<BeamSpec>| -> Result<[BeamSpec; 2]> {
        Ok([make(Spin::Up)?, make(Spin::Down)?])
    };
    let bessel = with(&|s| {
        BeamSpec::bessel(
            (twice_m - s.sign()) / 2,
            s,
            spec.p_par,
            spec.p_perp,
            spec.sigma,
        )
    })?;
    let rotated = with(&|mu| {
        BeamSpec::rotated(
            0.5 * twice_m as f64,
            mu,
            spec.p_par,
            spec.p_perp,
            spec.sigma,
        )
    })?;
    let n = &run.scenario.numerics;
    let rho_max = match n.rho_max {
        Some(r) => r,
        None => default_radial_extent(&spec)?,
    };
    // 8 points per Bessel oscillation at least
    let count = n
        .n_rho
        .unwrap_or_else(|| (rho_max / (PI / (8.0 * spec.p_perp))).ceil() as usize + 1);
    if count < 2 {
        bail!("numerics.n_rho: need at least 2 points");
    }
    let rhos: Vec<f64> = (0..count)
        .map(|k| rho_max * k as f64 / (count - 1) as f64)
        .collect();
    for (family, pair, cols) in [
        ("bessel", bessel, ["rho", "s_up", "s_down", "sum"]),
        ("rotated", rotated, ["rho", "mu_up", "mu_down", "sum"]),
    ] {
        let a = radial_current_profile(&pair[0], &rhos)?;
        let b = radial_current_profile(&pair[1], &rhos)?;
        let rows: Vec<Vec<f64>> = (0..count)
            .map(|k| vec![rhos[k], a[k], b[k], a[k] + b[k]])
            .collect();
        run.sink
            .csv(&format!("current_{family}.csv"), &cols, &rows)?;
    }
    println!(
        "[current] m = {}, {count} radii up to {rho_max:.4}",
        0.5 * twice_m as f64
    );
    Ok(())
}

pub fn simulate(run: &Run) -> Result<()> {
    let pulse = run.pulse()?;
    let amp = run.amplitude(&pulse)?;
    let times = run.times(&pulse, 4)?;
    let n = &run.scenario.numerics;
    let mut index = Vec::with_capacity(times.len());
    for (k, &t) in times.iter().enumerate() {
        let bx = tracking_box(
            &run.res.spec,
            &pulse,
            t,
            amp.t_ref,
            n.box_n_xy,
            n.box_n_z,
            n.box_z_sigmas,
        )?;
        let snap = snapshot(&amp, &pulse, t, &bx)?;
        let ny = bx.y.count;
        let rows: Vec<Vec<f64>> = snap
            .density
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| vec![bx.x.value(i / ny), bx.y.value(i % ny), *v])
            .collect();
        run.sink
            .csv(&format!("density_{k:03}.csv"), &["x", "y", "value"], &rows)?;
        if run.scenario.outputs.spinor {
            let psi = wavefunction_at(&amp, &pulse, t, &bx)?;
            let mut rows = Vec::with_capacity(bx.len());
            for ix in 0..bx.x.count {
                for iy in 0..bx.y.count {
                    for iz in 0..bx.z.count {
                        let v = psi.values[bx.index(ix, iy, iz)];
                        let mut r = vec![bx.x.value(ix), bx.y.value(iy), bx.z.value(iz)];
                        r.extend(v.0.iter().flat_map(|c| [c.re, c.im]));
                        rows.push(r);
                    }
                }
            }
            let cols = [
                "x", "y", "z", "re0", "im0", "re1", "im1", "re2", "im2", "re3", "im3",
            ];
            run.sink.csv(&format!("spinor_{k:03}.csv"), &cols, &rows)?;
        }
        index.push(vec![
            k as f64,
            t,
            snap.mean[0],
            snap.mean[1],
            snap.mean[2],
            snap.box_norm,
        ]);
        println!("[simulate] t = {t:.4} done ({}/{})", k + 1, times.len());
    }
    run.sink.csv(
        "snapshots.csv",
        &["index", "t", "x_moment", "y_moment", "z_moment", "box_norm"],
        &index,
    )?;
    Ok(())
}

pub fn observables(run: &Run) -> Result<()> {
    let pulse = run.pulse()?;
    let amp = run.amplitude(&pulse)?;
    let times = run.times(&pulse, 9)?;
    let n = &run.scenario.numerics;
    let mut rows = Vec::with_capacity(times.len());
    for &t in &times {
        let bx = tracking_box(
            &run.res.spec,
            &pulse,
            t,
            amp.t_ref,
            n.box_n_xy,
            n.box_n_z,
            n.box_z_sigmas,
        )?;
        let s = recentred_snapshot(&amp, &pulse, t, &bx)?;
        rows.push(vec![t, s.mean[0], s.mean[1], s.mean[2]]);
        println!("[observables] t = {t:.4}: <x> = {:.6e}", s.mean[0]);
    }
    run.sink.csv("means.csv", &["t", "x", "y", "z"], &rows)?;
    let before = angular_momentum_stats(&amp, None, None)?;
    let after = angular_momentum_stats(&amp, Some(&pulse), None)?;
    let row = |stage: f64, r: &vortex_core::observables::AngularMomentumReport| {
        vec![stage, r.s_e, r.j_mean, r.j2_mean, r.dj, r.l_mean, r.s_mean]
    };
    run.sink.csv(
        "angular.csv",
        &[
            "after_pulse",
            "S_E",
            "J_mean",
            "J2_mean",
            "DJ",
            "L_mean",
            "S_mean",
        ],
        &[row(0.0, &before), row(1.0, &after)],
    )?;
    println!(
        "[observables] J = {:.6} -> {:.6}, DJ = {:.3e}",
        before.j_mean, after.j_mean, after.dj
    );
    Ok(())
}

pub fn classical(run: &Run) -> Result<()> {
    let pulse = run.pulse()?;
    let spec = run.res.spec;
    let times = run.times(&pulse, 9)?;
    // paths pass the origin at the collision time of the quantum packet
    let tc = collision_time(&spec, run.t_ref(&pulse));
    let local: Vec<f64> = times.iter().map(|t| t - tc).collect();
    let n_phi = run.scenario.numerics.n_phi_classical;
    let mean = averaged_trajectory(spec.p_par, spec.p_perp, &pulse, n_phi, 0.0, &local)?;
    let rows: Vec<Vec<f64>> = (0..times.len())
        .map(|k| vec![times[k], mean.x[k], mean.y[k], mean.z[k] - C * tc])
        .collect();
    run.sink
        .csv("classical_mean.csv", &["t", "x", "y", "z"], &rows)?;
    let mut paths = Vec::new();
    for &phi in &run.scenario.outputs.classical_phis {
        let path = ExactPath::through_origin(
            &pulse,
            [spec.p_perp * phi.cos(), spec.p_perp * phi.sin(), spec.p_par],
        )?;
        for (k, &t) in local.iter().enumerate() {
            let s = path.at_time(t)?;
            paths.push(vec![
                phi,
                times[k],
                s.x[0],
                s.x[1],
                s.x[2] - C * tc,
                s.p[0],
                s.p[1],
                s.p[2],
            ]);
        }
    }
    run.sink.csv(
        "classical_paths.csv",
        &["phi_p0", "t", "x", "y", "z", "px", "py", "pz"],
        &paths,
    )?;
    println!(
        "[classical] {} times, {n_phi} directions averaged",
        times.len()
    );
    Ok(())
}

pub fn sweep(run: &Run) -> Result<()> {
    let phis = run.phis(9);
    let rows = cep_sweep(&run.res.spec, &run.res.pulse, &phis, &run.res.grid)?;
    let table: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| vec![r.phi, r.s_e, r.j_mean, r.dj])
        .collect();
    run.sink
        .csv("sweep.csv", &["phi", "S_E", "J_mean", "DJ"], &table)?;
    for r in &rows {
        println!(
            "[sweep] phi = {:.4}: S_E = {:.4e}, J = {:.6}, DJ = {:.4e}",
            r.phi, r.s_e, r.j_mean, r.dj
        );
    }
    Ok(())
}
