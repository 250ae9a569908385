//! Atomic units (hbar = m_e = -e = 1) and the handful of lab-unit
//! conversions the scenarios need.
//!
//! Constants are CODATA 2018. Everything downstream of configuration
//! parsing works in atomic units.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Fine-structure constant (CODATA 2018).
pub const ALPHA: f64 = 7.297_352_5693e-3;
/// Speed of light in atomic units, `1 / ALPHA`.
pub const C: f64 = 1.0 / ALPHA;
/// Hartree energy in eV.
pub const HARTREE_EV: f64 = 27.211_386_245_988;
/// Hartree energy in joules.
pub const HARTREE_J: f64 = 4.359_744_722_2071e-18;
/// Atomic unit of time in seconds.
pub const TIME_AU_S: f64 = 2.418_884_326_5857e-17;
/// Bohr radius in centimetres.
pub const BOHR_CM: f64 = 5.291_772_109_03e-9;

/// Bundle of the constants, convertible to any [`Real`] type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants<T> {
    pub c: T,
    pub alpha: T,
    /// One atomic unit of intensity expressed in W/cm^2.
    pub intensity_au_to_wcm2: T,
    /// One hartree expressed in keV.
    pub energy_au_to_kev: T,
}

impl<T: Real> PhysicalConstants<T> {
    pub fn codata2018() -> Self {
        PhysicalConstants {
            c: T::lit(C),
            alpha: T::lit(ALPHA),
            intensity_au_to_wcm2: T::lit(HARTREE_J / TIME_AU_S / (BOHR_CM * BOHR_CM)),
            energy_au_to_kev: T::lit(HARTREE_EV * 1e-3),
        }
    }
}

impl<T: Real> Default for PhysicalConstants<T> {
    fn default() -> Self {
        Self::codata2018()
    }
}

/// Peak field amplitude (a.u.) for a peak intensity in W/cm^2,
/// inverting `I = E^2 / (8 pi alpha)`.
pub fn intensity_to_field<T: Real>(intensity_wcm2: T) -> Result<T> {
    if !(intensity_wcm2 >= T::zero()) {
        return Err(Error::domain(
            "units",
            format!("intensity must be >= 0, got {intensity_wcm2}"),
        ));
    }
    let k = PhysicalConstants::<T>::codata2018();
    let i_au = intensity_wcm2 / k.intensity_au_to_wcm2;
    Ok((T::lit(8.0) * T::PI() * k.alpha * i_au).sqrt())
}

/// Peak intensity in W/cm^2 for a field amplitude in a.u.
pub fn field_to_intensity<T: Real>(field_au: T) -> T {
    let k = PhysicalConstants::<T>::codata2018();
    field_au * field_au / (T::lit(8.0) * T::PI() * k.alpha) * k.intensity_au_to_wcm2
}

/// Momentum magnitude (a.u.) of an electron with kinetic energy in keV.
pub fn kinetic_energy_to_momentum<T: Real>(kinetic_kev: T) -> Result<T> {
    if !(kinetic_kev >= T::zero()) {
        return Err(Error::domain(
            "units",
            format!("kinetic energy must be >= 0, got {kinetic_kev}"),
        ));
    }
    let k = PhysicalConstants::<T>::codata2018();
    let e = kinetic_kev / k.energy_au_to_kev;
    // (c^2 + E)^2 = c^2 (c^2 + p^2), written without cancellation
    Ok((e * e / (k.c * k.c) + T::lit(2.0) * e).sqrt())
}

/// Kinetic energy in keV of an electron with momentum magnitude `p` (a.u.).
pub fn momentum_to_kinetic_energy<T: Real>(p: T) -> T {
    let k = PhysicalConstants::<T>::codata2018();
    let c2 = k.c * k.c;
    // eps - c^2 = c^2 p^2 / (eps + c^2)
    let eps = k.c * (c2 + p * p).sqrt();
    c2 * p * p / (eps + c2) * k.energy_au_to_kev
}

/// Relativistic energy `c sqrt(c^2 + p^2)` including rest energy.
#[inline]
pub fn energy(p2: f64) -> f64 {
    C * (C * C + p2).sqrt()
}

/// Longitudinal and transverse momentum of a conical beam.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeKinematics {
    pub p: f64,
    pub theta0: f64,
    pub p_par: f64,
    pub p_perp: f64,
}

impl ConeKinematics {
    pub fn from_momentum(p: f64, theta0: f64) -> Self {
        ConeKinematics {
            p,
            theta0,
            p_par: p * theta0.cos(),
            p_perp: p * theta0.sin(),
        }
    }

    pub fn from_kinetic_energy(kinetic_kev: f64, theta0: f64) -> Result<Self> {
        Ok(Self::from_momentum(
            kinetic_energy_to_momentum(kinetic_kev)?,
            theta0,
        ))
    }

    pub fn from_components(p_par: f64, p_perp: f64) -> Self {
        let p = p_par.hypot(p_perp);
        ConeKinematics {
            p,
            theta0: p_perp.atan2(p_par),
            p_par,
            p_perp,
        }
    }

    pub fn energy(&self) -> f64 {
        energy(self.p * self.p)
    }
}
