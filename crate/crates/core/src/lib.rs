pub mod beams;
pub mod classical;
pub mod error;
pub mod evolve;
pub mod field;
pub mod numerics;
pub mod observables;
pub mod scalar;
pub mod spinors;
pub mod units;
pub mod volkov;

pub use error::{Error, Result};
pub use scalar::Real;
