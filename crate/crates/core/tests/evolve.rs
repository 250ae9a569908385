use num_complex::Complex64;
use rayon::prelude::*;

use vortex_core::beams::{beam_at, smearing, BeamSpec};
use vortex_core::evolve::{
    initial_time, packet_coefficients_delta, packet_coefficients_finite_l, wavefunction_at, Axis,
    GridOptions, SpatialBox, SpinorGrid,
};
use vortex_core::field::{LaserPulse, PulseParams};
use vortex_core::numerics::composite_gauss_legendre;
use vortex_core::spinors::{Bispinor, Spin};
use vortex_core::units::{energy, ConeKinematics};

fn slow_spec() -> BeamSpec {
    let k = ConeKinematics::from_kinetic_energy(1.41, 11.3f64.to_radians()).unwrap();
    BeamSpec::bessel(3, Spin::Up, k.p_par, k.p_perp, 10.0).unwrap()
}

fn no_field() -> LaserPulse {
    LaserPulse::new(PulseParams::new(0.0, 0.15, 0.9, 0.0)).unwrap()
}

// Initial packet freely evolved by dt, summed directly over Bessel beams.
fn free_packet(spec: &BeamSpec, dt: f64, x: [f64; 3]) -> Bispinor<f64> {
    let half = 7.0 * spec.sigma;
    let (qs, ws) = composite_gauss_legendre(-half, half, 16, 240);
    let mut acc = Bispinor::zero();
    for (q, w) in qs.iter().zip(&ws) {
        let pq = spec.p_par + q;
        let e = energy(spec.p_perp * spec.p_perp + pq * pq);
        let ph = Complex64::from_polar(w * smearing(*q, spec.sigma), -e * dt);
        acc = acc + beam_at(spec, pq, x).unwrap().scale(ph);
    }
    acc
}

fn oracle_grid(spec: &BeamSpec, dt: f64, bx: &SpatialBox) -> Vec<Bispinor<f64>> {
    let mut pts = Vec::with_capacity(bx.len());
    for ix in 0..bx.x.count {
        for iy in 0..bx.y.count {
            for iz in 0..bx.z.count {
                pts.push([bx.x.value(ix), bx.y.value(iy), bx.z.value(iz)]);
            }
        }
    }
    pts.par_iter().map(|&x| free_packet(spec, dt, x)).collect()
}

fn rel_rms(a: &SpinorGrid, b: &[Bispinor<f64>]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (u, v) in a.values.iter().zip(b) {
        num += (*u - *v).norm_sqr();
        den += v.norm_sqr();
    }
    (num / den).sqrt()
}

fn density_rel_rms(a: &SpinorGrid, b: &[Bispinor<f64>]) -> f64 {
    let da = a.density();
    let db: Vec<f64> = b.iter().map(|v| v.norm_sqr()).collect();
    let (sa, sb): (f64, f64) = (da.iter().sum(), db.iter().sum());
    let mut num = 0.0;
    let mut den = 0.0;
    for (u, v) in da.iter().zip(&db) {
        num += (u / sa - v / sb).powi(2);
        den += (v / sb).powi(2);
    }
    (num / den).sqrt()
}

#[test]
fn coefficient_invariants() {
    let spec = slow_spec();
    let amp = packet_coefficients_delta(&spec, &GridOptions::default(), 0.0).unwrap();
    assert!(
        (amp.total_weight() - 1.0).abs() < 1e-6,
        "{}",
        amp.total_weight()
    );
    assert!(amp.negative_energy_ratio() < 1e-8);
    let n_phi = amp.grid.n_phi;
    // peak of the p_par' profile sits at the node nearest p_par
    let profile: Vec<f64> = (0..amp.grid.nodes.len())
        .map(|ip| {
            (0..n_phi)
                .map(|k| amp.spinor_amplitude(ip, k).norm_sqr())
                .sum()
        })
        .collect();
    let arg = profile
        .iter()
        .enumerate()
        .fold((0, 0.0), |b, (i, &v)| if v > b.1 { (i, v) } else { b })
        .0;
    let nearest = amp
        .grid
        .nodes
        .iter()
        .enumerate()
        .fold((0, f64::MAX), |b, (i, &p)| {
            if (p - spec.p_par).abs() < b.1 {
                (i, (p - spec.p_par).abs())
            } else {
                b
            }
        })
        .0;
    assert!(arg.abs_diff(nearest) <= 1);
    // both helicity channels are populated off axis
    let other: f64 = (0..n_phi).map(|k| amp.get(arg, k, Spin::Down).norm()).sum();
    let same: f64 = (0..n_phi).map(|k| amp.get(arg, k, Spin::Up).norm()).sum();
    assert!(other > 1e-3 * same && same > 0.0);
}

#[test]
fn finite_l_matches_delta_limit() {
    let spec = slow_spec();
    let pulse = LaserPulse::new(PulseParams::new(0.05, 0.15, 0.9, 0.0)).unwrap();
    let l_box = 40.0 / spec.sigma;
    let opts = GridOptions {
        panels: 16,
        order: 8,
        n_phi: 16,
        width_sigmas: 6.0,
    };
    let fin = packet_coefficients_finite_l(&spec, &pulse, l_box, &opts).unwrap();
    let del = packet_coefficients_delta(&spec, &opts, initial_time(&pulse, l_box)).unwrap();
    assert_eq!(fin.t_ref, del.t_ref);
    let peak = del.values.iter().fold(0.0f64, |m, v| m.max(v.norm()));
    let diff = fin
        .values
        .iter()
        .zip(&del.values)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).norm()));
    assert!(diff < 1e-4 * peak, "{}", diff / peak);
    assert!(packet_coefficients_finite_l(&spec, &pulse, 0.5 / spec.sigma, &opts).is_err());
}

#[test]
fn reproduces_initial_packet() {
    let spec = slow_spec();
    let amp = packet_coefficients_delta(&spec, &GridOptions::coarse(), 0.0).unwrap();
    let bx = SpatialBox {
        x: Axis::new(-5.0, 5.5, 10).unwrap(),
        y: Axis::new(-4.5, 5.0, 9).unwrap(),
        z: Axis::centered(0.0, 0.3, 13).unwrap(),
    };
    let psi = wavefunction_at(&amp, &no_field(), 0.0, &bx).unwrap();
    let err = rel_rms(&psi, &oracle_grid(&spec, 0.0, &bx));
    assert!(err < 1e-4, "{err}");
}

#[test]
fn free_evolution_matches_direct_sum() {
    let spec = slow_spec();
    let amp = packet_coefficients_delta(&spec, &GridOptions::coarse(), 0.0).unwrap();
    let dt = 0.2;
    let v = 137.035_999_084f64.powi(2) * spec.p_par / spec.energy();
    let bx = SpatialBox {
        x: Axis::new(-5.0, 5.5, 8).unwrap(),
        y: Axis::new(-4.5, 5.0, 7).unwrap(),
        z: Axis::centered(v * dt, 6.0, 25).unwrap(),
    };
    let psi = wavefunction_at(&amp, &no_field(), dt, &bx).unwrap();
    let oracle = oracle_grid(&spec, dt, &bx);
    assert!(rel_rms(&psi, &oracle) < 1e-4, "{}", rel_rms(&psi, &oracle));
    assert!(density_rel_rms(&psi, &oracle) < 1e-4);
}

// Direct quadrature over the stored Volkov labels, feasible near t_ref.
#[test]
fn in_field_matches_volkov_sum() {
    use vortex_core::evolve::MomentumAmplitude;
    use vortex_core::spinors::Basis;
    use vortex_core::units::intensity_to_field;
    use vortex_core::volkov::{volkov_state, VolkovIndex};

    let spec = slow_spec();
    let e = intensity_to_field(3.5e16).unwrap();
    let pulse = LaserPulse::new(PulseParams::new(e, 0.15, 0.9, 0.4)).unwrap();
    let opts = GridOptions {
        panels: 16,
        order: 8,
        n_phi: 64,
        width_sigmas: 6.0,
    };
    let amp: MomentumAmplitude = packet_coefficients_delta(&spec, &opts, 0.0).unwrap();
    let t = 0.01;
    let bx = SpatialBox {
        x: Axis::new(-3.0, 4.0, 6).unwrap(),
        y: Axis::new(-3.5, 3.0, 5).unwrap(),
        z: Axis::centered(0.0, 0.25, 5).unwrap(),
    };
    let psi = wavefunction_at(&amp, &pulse, t, &bx).unwrap();
    let dphi = 2.0 * std::f64::consts::PI / opts.n_phi as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for ix in 0..bx.x.count {
        for iy in 0..bx.y.count {
            for iz in 0..bx.z.count {
                let x = [bx.x.value(ix), bx.y.value(iy), bx.z.value(iz)];
                let mut acc = Bispinor::zero();
                for (ip, w) in amp.grid.weights.iter().enumerate() {
                    for k in 0..opts.n_phi {
                        for s in [Spin::Up, Spin::Down] {
                            let p = amp.grid.momentum(ip, k);
                            let idx = VolkovIndex::new(p, s, 1)
                                .unwrap()
                                .with_basis(Basis::Helicity);
                            let c = amp.get(ip, k, s)
                                * Complex64::from_polar(w * dphi, idx.energy() * amp.t_ref);
                            acc = acc + volkov_state(&pulse, &idx, t, x).scale(c);
                        }
                    }
                }
                acc = acc.scale(Complex64::new(amp.position_scale(), 0.0));
                num += (psi.values[bx.index(ix, iy, iz)] - acc).norm_sqr();
                den += acc.norm_sqr();
            }
        }
    }
    let err = (num / den).sqrt();
    assert!(err < 1e-6, "{err}");
}
