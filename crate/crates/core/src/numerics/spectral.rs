//! FFT-based operations on uniformly sampled periodic functions of an
//! angle in `[0, 2 pi)`.

use num_complex::Complex;
use rustfft::{FftNum, FftPlanner};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Signed harmonic number of FFT bin `k` out of `n`.
#[inline]
pub fn harmonic_of_bin(k: usize, n: usize) -> i64 {
    if k <= n / 2 {
        k as i64
    } else {
        k as i64 - n as i64
    }
}

fn check_len(n: usize) -> Result<()> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::domain(
            "numerics::spectral",
            format!("sample count must be a power of two, got {n}"),
        ));
    }
    Ok(())
}

/// Fourier coefficients `c_m` with `f(phi) = sum_m c_m e^{i m phi}`,
/// returned in FFT bin order.
pub fn fourier_coefficients<T: Real + FftNum>(samples: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let n = samples.len();
    check_len(n)?;
    let mut buf = samples.to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let inv = T::one() / T::from_usize_lossy(n);
    buf.iter_mut().for_each(|c| *c = *c * inv);
    Ok(buf)
}

/// d/dphi of uniformly sampled periodic data. The Nyquist mode is
/// dropped since its derivative is not representable on the grid.
pub fn spectral_derivative_periodic<T: Real + FftNum>(
    samples: &[Complex<T>],
) -> Result<Vec<Complex<T>>> {
    let n = samples.len();
    let mut coef = fourier_coefficients(samples)?;
    for (k, c) in coef.iter_mut().enumerate() {
        if n > 1 && k == n / 2 {
            *c = Complex::new(T::zero(), T::zero());
            continue;
        }
        let m = T::from_i64_lossy(harmonic_of_bin(k, n));
        *c = *c * Complex::new(T::zero(), m);
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut coef);
    Ok(coef)
}

/// As [`spectral_derivative_periodic`] but validates that `grid` is a
/// uniform sampling of one full period.
pub fn spectral_derivative_on_grid<T: Real + FftNum>(
    grid: &[T],
    samples: &[Complex<T>],
) -> Result<Vec<Complex<T>>> {
    if grid.len() != samples.len() {
        return Err(Error::domain(
            "numerics::spectral",
            "grid and sample lengths differ",
        ));
    }
    let n = grid.len();
    check_len(n)?;
    let h = T::lit(2.0) * T::PI() / T::from_usize_lossy(n);
    let tol = T::lit(1e3) * T::EPS * T::lit(2.0) * T::PI();
    for (k, &g) in grid.iter().enumerate() {
        let expect = grid[0] + h * T::from_usize_lossy(k);
        if (g - expect).abs() > tol {
            return Err(Error::domain(
                "numerics::spectral",
                format!("grid is not uniform over one period at index {k}"),
            ));
        }
    }
    spectral_derivative_periodic(samples)
}
