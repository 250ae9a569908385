use std::f64::consts::FRAC_PI_2;

use clap::ValueEnum;

use crate::scenario::{BeamConfig, Numerics, Outputs, PulseConfig, Scenario};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Simulate,
    Observables,
    Classical,
    Current,
    Sweep,
}

fn pulse(intensity: f64, omega: f64, a: f64) -> PulseConfig {
    PulseConfig {
        intensity_wcm2: Some(intensity),
        e_star_au: None,
        omega_au: omega,
        a,
        phi_rad: 0.0,
        support_tol: vortex_core::field::DEFAULT_SUPPORT_TOL,
        grid_points: vortex_core::field::DEFAULT_GRID_POINTS,
    }
}

fn bessel(theta_deg: f64, kinetic_kev: f64) -> BeamConfig {
    BeamConfig {
        kind: "bessel".into(),
        l: Some(3),
        s: Some(0.5),
        m: None,
        mu: None,
        theta0_deg: Some(theta_deg),
        kinetic_kev: Some(kinetic_kev),
        momentum_au: None,
        p_par: None,
        p_perp: None,
        sigma: 10.0,
    }
}

fn numerics(full: bool) -> Numerics {
    if full {
        Numerics {
            grid: "default".into(),
            box_n_xy: 64,
            box_n_z: 48,
            ..Numerics::default()
        }
    } else {
        Numerics::default()
    }
}

/// Scenario and pipeline steps for a figure. Desk presets use the coarse
/// momentum grid and few output times; `full` uses the default grid.
pub fn preset(fig: Figure, full: bool) -> (Scenario, Vec<Step>) {
    let n = numerics(full);
    let times = |desk: usize, large: usize| Outputs {
        n_times: Some(if full { large } else { desk }),
        ..Outputs::default()
    };
    match fig {
        Figure::Fig2 => (
            Scenario {
                pulse: pulse(1.3e13, 0.242, 9.0),
                beam: bessel(45.0, 817.4),
                numerics: n,
                outputs: times(4, 8),
            },
            vec![Step::Simulate],
        ),
        Figure::Fig3 => (
            Scenario {
                pulse: pulse(2.1e18, 4.84, 9.0),
                beam: bessel(45.0, 817.4),
                numerics: n,
                outputs: times(4, 8),
            },
            vec![Step::Simulate],
        ),
        Figure::Fig4 => (
            Scenario {
                pulse: pulse(1.3e13, 0.242, 9.0),
                beam: bessel(45.0, 817.4),
                numerics: n,
                outputs: Outputs {
                    classical_phis: vec![FRAC_PI_2, FRAC_PI_2 - 4e-6],
                    ..times(41, 201)
                },
            },
            vec![Step::Observables, Step::Classical],
        ),
        Figure::Fig5 => (
            Scenario {
                pulse: pulse(3.5e18, 0.15, 9.0),
                beam: bessel(11.3, 0.014),
                numerics: n,
                outputs: times(9, 41),
            },
            vec![Step::Observables, Step::Classical],
        ),
        Figure::Fig6 => (
            Scenario {
                pulse: pulse(1.3e13, 0.242, 9.0),
                beam: BeamConfig {
                    kind: "rotated".into(),
                    l: None,
                    s: None,
                    m: Some(-0.5),
                    mu: Some(0.5),
                    theta0_deg: None,
                    kinetic_kev: None,
                    momentum_au: None,
                    p_par: Some(10.0),
                    p_perp: Some(10.0),
                    sigma: 10.0,
                },
                numerics: Numerics {
                    rho_max: Some(2.0),
                    n_rho: Some(if full { 801 } else { 201 }),
                    ..n
                },
                outputs: Outputs::default(),
            },
            vec![Step::Current],
        ),
        Figure::Fig7 => {
            let count = if full { 33 } else { 9 };
            let phis = (0..count)
                .map(|k| std::f64::consts::PI * k as f64 / (count - 1) as f64)
                .collect();
            (
                Scenario {
                    pulse: pulse(3.5e16, 0.15, 0.9),
                    beam: bessel(11.3, 1.41),
                    numerics: n,
                    outputs: Outputs {
                        phis: Some(phis),
                        ..Outputs::default()
                    },
                },
                vec![Step::Sweep],
            )
        }
    }
}
