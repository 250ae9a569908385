//! One-dimensional quadrature: Gauss–Legendre rules (single and
//! composite), globally adaptive Gauss–Kronrod 7/15, and the periodic
//! trapezoid rule.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Integration scheme selector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scheme {
    /// Globally adaptive G7/K15 bisection.
    AdaptiveGaussKronrod { max_subdivisions: usize },
    /// Fixed composite Gauss–Legendre rule.
    GaussLegendre { order: usize, panels: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureRule<T> {
    pub scheme: Scheme,
    pub abs_tol: T,
    pub rel_tol: T,
}

impl<T: Real> QuadratureRule<T> {
    pub fn adaptive(abs_tol: T, rel_tol: T) -> Self {
        QuadratureRule {
            scheme: Scheme::AdaptiveGaussKronrod {
                max_subdivisions: 2000,
            },
            abs_tol,
            rel_tol,
        }
    }

    pub fn gauss_legendre(order: usize, panels: usize) -> Self {
        QuadratureRule {
            scheme: Scheme::GaussLegendre { order, panels },
            abs_tol: T::zero(),
            rel_tol: T::zero(),
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.abs_tol >= T::zero() && self.rel_tol >= T::zero()) {
            return Err(Error::domain(
                "numerics::quadrature",
                "tolerances must be non-negative",
            ));
        }
        if let Scheme::AdaptiveGaussKronrod { .. } = self.scheme {
            if self.abs_tol == T::zero() && self.rel_tol == T::zero() {
                return Err(Error::domain(
                    "numerics::quadrature",
                    "adaptive rule needs a positive tolerance",
                ));
            }
        }
        Ok(())
    }
}

/// Integral value with its error estimate (zero for fixed rules).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: T,
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    assert!(n > 0, "Gauss-Legendre order must be positive");
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    // Newton in f64, then convert; f64 is at least as precise as any T here
    let m = (n + 1) / 2;
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_and_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = T::lit(-x);
        nodes[n - 1 - i] = T::lit(x);
        weights[i] = T::lit(w);
        weights[n - 1 - i] = T::lit(w);
    }
    if n % 2 == 1 {
        nodes[n / 2] = T::zero();
    }
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite Gauss–Legendre nodes/weights on `[a, b]`.
pub fn composite_gauss_legendre<T: Real>(
    a: T,
    b: T,
    order: usize,
    panels: usize,
) -> (Vec<T>, Vec<T>) {
    let (x, w) = gauss_legendre::<T>(order);
    let h = (b - a) / T::from_usize_lossy(panels);
    let half = h / T::lit(2.0);
    let mut nodes = Vec::with_capacity(order * panels);
    let mut weights = Vec::with_capacity(order * panels);
    for p in 0..panels {
        let mid = a + h * (T::from_usize_lossy(p) + T::lit(0.5));
        for (xi, wi) in x.iter().zip(&w) {
            nodes.push(mid + half * *xi);
            weights.push(half * *wi);
        }
    }
    (nodes, weights)
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gk15<T: Real, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> (T, T) {
    let center = (a + b) / T::lit(2.0);
    let half = (b - a) / T::lit(2.0);
    let fc = f(center);
    let mut kron = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for j in 0..7 {
        let dx = half * T::lit(XGK[j]);
        let s = f(center - dx) + f(center + dx);
        kron = kron + T::lit(WGK[j]) * s;
        if j % 2 == 1 {
            gauss = gauss + T::lit(WG[j / 2]) * s;
        }
    }
    (kron * half, ((kron - gauss) * half).abs())
}

/// Integrates `f` over `[a, b]`; infinite limits are mapped onto finite
/// ones. Fixed Gauss–Legendre rules require finite limits.
pub fn integrate_1d<T: Real, F: FnMut(T) -> T>(
    mut f: F,
    a: T,
    b: T,
    rule: &QuadratureRule<T>,
) -> Result<Estimate<T>> {
    rule.validate()?;
    if a == b {
        return Ok(Estimate {
            value: T::zero(),
            error: T::zero(),
        });
    }
    if b < a {
        let e = integrate_1d(f, b, a, rule)?;
        return Ok(Estimate {
            value: -e.value,
            error: e.error,
        });
    }
    match rule.scheme {
        Scheme::GaussLegendre { order, panels } => {
            if !(a.is_finite() && b.is_finite()) {
                return Err(Error::domain(
                    "numerics::quadrature",
                    "fixed rules need finite limits",
                ));
            }
            let (x, w) = composite_gauss_legendre(a, b, order, panels.max(1));
            let value = x
                .iter()
                .zip(&w)
                .fold(T::zero(), |acc, (xi, wi)| acc + *wi * f(*xi));
            Ok(Estimate {
                value,
                error: T::zero(),
            })
        }
        Scheme::AdaptiveGaussKronrod { max_subdivisions } => match (a.is_finite(), b.is_finite()) {
            (true, true) => adaptive(&mut f, a, b, rule, max_subdivisions),
            (true, false) => {
                // x = a + t / (1 - t), t in [0, 1)
                let mut g = |t: T| {
                    let u = T::one() - t;
                    f(a + t / u) / (u * u)
                };
                adaptive(&mut g, T::zero(), T::one(), rule, max_subdivisions)
            }
            (false, true) => {
                let mut g = |t: T| {
                    let u = T::one() - t;
                    f(b - t / u) / (u * u)
                };
                adaptive(&mut g, T::zero(), T::one(), rule, max_subdivisions)
            }
            (false, false) => {
                // x = t / (1 - t^2), t in (-1, 1)
                let mut g = |t: T| {
                    let u = T::one() - t * t;
                    f(t / u) * (T::one() + t * t) / (u * u)
                };
                adaptive(&mut g, -T::one(), T::one(), rule, max_subdivisions)
            }
        },
    }
}

fn adaptive<T: Real, F: FnMut(T) -> T>(
    f: &mut F,
    a: T,
    b: T,
    rule: &QuadratureRule<T>,
    max_subdivisions: usize,
) -> Result<Estimate<T>> {
    let (v, e) = gk15(f, a, b);
    let mut intervals = vec![(a, b, v, e)];
    let mut value = v;
    let mut error = e;
    loop {
        let target = rule.abs_tol.max(rule.rel_tol * value.abs());
        if error <= target {
            return Ok(Estimate { value, error });
        }
        if intervals.len() >= max_subdivisions {
            return Err(Error::Numerical {
                module: "numerics::quadrature",
                msg: format!(
                    "no convergence after {max_subdivisions} subdivisions (error {error})"
                ),
                best: value.to_f64().unwrap_or(f64::NAN),
            });
        }
        let (idx, _) = intervals
            .iter()
            .enumerate()
            .fold(
                (0, -T::one()),
                |best, (i, iv)| if iv.3 > best.1 { (i, iv.3) } else { best },
            );
        let (lo, hi, v0, e0) = intervals.swap_remove(idx);
        let mid = (lo + hi) / T::lit(2.0);
        if !(mid > lo && mid < hi) {
            return Err(Error::Numerical {
                module: "numerics::quadrature",
                msg: "interval underflow during bisection".into(),
                best: value.to_f64().unwrap_or(f64::NAN),
            });
        }
        let (v1, e1) = gk15(f, lo, mid);
        let (v2, e2) = gk15(f, mid, hi);
        value = value - v0 + v1 + v2;
        error = error - e0 + e1 + e2;
        intervals.push((lo, mid, v1, e1));
        intervals.push((mid, hi, v2, e2));
        // re-sum occasionally to shed accumulated rounding in the running totals
        if intervals.len() % 64 == 0 {
            value = intervals.iter().fold(T::zero(), |acc, iv| acc + iv.2);
            error = intervals.iter().fold(T::zero(), |acc, iv| acc + iv.3);
        }
    }
}

/// Complex-valued adaptive integration, real and imaginary parts
/// integrated separately.
pub fn integrate_1d_complex<T: Real, F: FnMut(T) -> Complex<T>>(
    mut f: F,
    a: T,
    b: T,
    rule: &QuadratureRule<T>,
) -> Result<Complex<T>> {
    let re = integrate_1d(|x| f(x).re, a, b, rule)?.value;
    let im = integrate_1d(|x| f(x).im, a, b, rule)?.value;
    Ok(Complex::new(re, im))
}

/// Periodic trapezoid rule over one period `[0, 2 pi)` with `n` nodes.
pub fn trapezoid_periodic<T: Real, F: FnMut(T) -> Complex<T>>(mut f: F, n: usize) -> Complex<T> {
    let h = T::lit(2.0) * T::PI() / T::from_usize_lossy(n);
    let mut acc = Complex::new(T::zero(), T::zero());
    for k in 0..n {
        acc = acc + f(h * T::from_usize_lossy(k));
    }
    acc * h
}
