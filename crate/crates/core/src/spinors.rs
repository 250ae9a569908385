//! Dirac matrices in the standard representation, free bispinors and
//! the Bessel-beam coefficients `a_k`.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::units::C;

pub type Mat4<T> = [[Complex<T>; 4]; 4];

/// Four complex components in the standard (Dirac) representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bispinor<T>(pub [Complex<T>; 4]);

impl<T: Real> Bispinor<T> {
    pub fn zero() -> Self {
        Bispinor([Complex::new(T::zero(), T::zero()); 4])
    }

    pub fn from_real(v: [T; 4]) -> Self {
        Bispinor(v.map(|x| Complex::new(x, T::zero())))
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.0
            .iter()
            .zip(&other.0)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
                acc + a.conj() * b
            })
    }

    pub fn norm_sqr(&self) -> T {
        self.0.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    pub fn scale(&self, k: Complex<T>) -> Self {
        Bispinor(self.0.map(|a| a * k))
    }

    pub fn apply(m: &Mat4<T>, v: &Self) -> Self {
        let mut out = Self::zero();
        for (i, row) in m.iter().enumerate() {
            out.0[i] = row
                .iter()
                .zip(&v.0)
                .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
                    acc + a * b
                });
        }
        out
    }
}

impl<T: Real> Add for Bispinor<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Bispinor([
            self.0[0] + o.0[0],
            self.0[1] + o.0[1],
            self.0[2] + o.0[2],
            self.0[3] + o.0[3],
        ])
    }
}

impl<T: Real> Sub for Bispinor<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Bispinor([
            self.0[0] - o.0[0],
            self.0[1] - o.0[1],
            self.0[2] - o.0[2],
            self.0[3] - o.0[3],
        ])
    }
}

impl<T: Real> Mul<Complex<T>> for Bispinor<T> {
    type Output = Self;
    fn mul(self, k: Complex<T>) -> Self {
        self.scale(k)
    }
}

/// Spin label along z: `Up` is s = +1/2, `Down` is s = -1/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub const BOTH: [Spin; 2] = [Spin::Up, Spin::Down];

    /// `2 s`.
    pub fn sign(self) -> i32 {
        match self {
            Spin::Up => 1,
            Spin::Down => -1,
        }
    }

    pub fn half(self) -> f64 {
        0.5 * self.sign() as f64
    }

    /// Two-spinor `(alpha, beta)`.
    pub fn w(self) -> (f64, f64) {
        match self {
            Spin::Up => (1.0, 0.0),
            Spin::Down => (0.0, 1.0),
        }
    }
}

type IMat4 = [[Complex<i32>; 4]; 4];

fn pauli(i: usize) -> [[Complex<i32>; 2]; 2] {
    let z = Complex::new(0, 0);
    let one = Complex::new(1, 0);
    let im = Complex::new(0, 1);
    match i {
        1 => [[z, one], [one, z]],
        2 => [[z, -im], [im, z]],
        3 => [[one, z], [z, -one]],
        _ => [[one, z], [z, one]],
    }
}

fn blocks(
    tl: [[Complex<i32>; 2]; 2],
    tr: [[Complex<i32>; 2]; 2],
    bl: [[Complex<i32>; 2]; 2],
    br: [[Complex<i32>; 2]; 2],
) -> IMat4 {
    let mut m = [[Complex::new(0, 0); 4]; 4];
    for r in 0..2 {
        for c in 0..2 {
            m[r][c] = tl[r][c];
            m[r][c + 2] = tr[r][c];
            m[r + 2][c] = bl[r][c];
            m[r + 2][c + 2] = br[r][c];
        }
    }
    m
}

fn neg2(a: [[Complex<i32>; 2]; 2]) -> [[Complex<i32>; 2]; 2] {
    a.map(|r| r.map(|x| -x))
}

const ZERO2: [[Complex<i32>; 2]; 2] = [[Complex { re: 0, im: 0 }; 2]; 2];

/// `gamma^mu`, mu = 0..=3, with exact integer entries.
pub fn gamma_exact(mu: usize) -> IMat4 {
    assert!(mu < 4);
    if mu == 0 {
        blocks(pauli(0), ZERO2, ZERO2, neg2(pauli(0)))
    } else {
        blocks(ZERO2, pauli(mu), neg2(pauli(mu)), ZERO2)
    }
}

/// Exact 4x4 product.
pub fn mul_exact(a: &IMat4, b: &IMat4) -> IMat4 {
    let mut m = [[Complex::new(0, 0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                m[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    m
}

fn to_real<T: Real>(m: &IMat4) -> Mat4<T> {
    m.map(|r| r.map(|x| Complex::new(T::lit(x.re as f64), T::lit(x.im as f64))))
}

pub fn gamma<T: Real>(mu: usize) -> Mat4<T> {
    to_real(&gamma_exact(mu))
}

pub fn beta<T: Real>() -> Mat4<T> {
    gamma(0)
}

/// `alpha_i = beta gamma^i`, i = 1..=3.
pub fn alpha<T: Real>(i: usize) -> Mat4<T> {
    assert!((1..=3).contains(&i));
    to_real(&blocks(ZERO2, pauli(i), pauli(i), ZERO2))
}

/// Spin matrix `Sigma_z = diag(sigma_z, sigma_z)`.
pub fn sigma_z<T: Real>() -> Mat4<T> {
    to_real(&blocks(pauli(3), ZERO2, ZERO2, pauli(3)))
}

/// `(gamma^0 + gamma^3) gamma^1`, the matrix in the Volkov spinor
/// factor. It squares to zero.
pub fn light_front_matrix<T: Real>() -> Mat4<T> {
    let g0 = gamma_exact(0);
    let g3 = gamma_exact(3);
    let mut s = g0;
    for i in 0..4 {
        for j in 0..4 {
            s[i][j] += g3[i][j];
        }
    }
    to_real(&mul_exact(&s, &gamma_exact(1)))
}

pub fn mat_mul<T: Real>(a: &Mat4<T>, b: &Mat4<T>) -> Mat4<T> {
    let mut m = [[Complex::new(T::zero(), T::zero()); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                m[i][j] = m[i][j] + a[i][k] * b[k][j];
            }
        }
    }
    m
}

/// Free Hamiltonian `c alpha.p + beta c^2`.
pub fn dirac_hamiltonian<T: Real>(p: [T; 3]) -> Mat4<T> {
    let c = T::lit(C);
    let mut h = beta::<T>().map(|r| r.map(|x| x * c * c));
    for (i, pi) in p.iter().enumerate() {
        let a = alpha::<T>(i + 1);
        for r in 0..4 {
            for k in 0..4 {
                h[r][k] = h[r][k] + a[r][k] * (c * *pi);
            }
        }
    }
    h
}

pub fn energy<T: Real>(p: [T; 3]) -> T {
    let c = T::lit(C);
    c * (c * c + p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt()
}

/// Two-spinor convention for the spin label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Basis {
    /// Eigenstates of sigma_z.
    #[default]
    Z,
    /// Eigenstates of sigma.p/|p|; reduces to `Z` at p = 0.
    Helicity,
}

fn two_spinor<T: Real>(p: [T; 3], s: Spin, basis: Basis) -> [Complex<T>; 2] {
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let pm = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    if basis == Basis::Z || pm == T::zero() {
        return match s {
            Spin::Up => [one, zero],
            Spin::Down => [zero, one],
        };
    }
    let top = pm + p[2];
    if top <= pm * T::EPS * T::lit(16.0) {
        // antiparallel to z
        return match s {
            Spin::Up => [zero, one],
            Spin::Down => [-one, zero],
        };
    }
    let cos_half = (top / (T::lit(2.0) * pm)).sqrt();
    // sin(theta/2) e^{i phi}
    let sin_e = Complex::new(p[0], p[1]) / (T::lit(2.0) * pm * top).sqrt();
    match s {
        Spin::Up => [Complex::new(cos_half, T::zero()), sin_e],
        Spin::Down => [-sin_e.conj(), Complex::new(cos_half, T::zero())],
    }
}

// sigma.p chi
fn sigma_dot<T: Real>(p: [T; 3], w: [Complex<T>; 2]) -> [Complex<T>; 2] {
    let pm = Complex::new(p[0], -p[1]);
    let pp = Complex::new(p[0], p[1]);
    [w[0] * p[2] + pm * w[1], pp * w[0] - w[1] * p[2]]
}

/// Positive-energy bispinor, `u^dag u = 1`.
pub fn bispinor_u<T: Real>(p: [T; 3], s: Spin) -> Bispinor<T> {
    bispinor_u_in(p, s, Basis::Z)
}

/// Negative-energy bispinor: eigenvalue `-eps` of the same `H(p)`.
pub fn bispinor_v<T: Real>(p: [T; 3], s: Spin) -> Bispinor<T> {
    bispinor_v_in(p, s, Basis::Z)
}

pub fn bispinor_u_in<T: Real>(p: [T; 3], s: Spin, basis: Basis) -> Bispinor<T> {
    let c = T::lit(C);
    let eps = energy(p);
    let n = ((eps + c * c) / (T::lit(2.0) * eps)).sqrt();
    let k = c / (eps + c * c);
    let w = two_spinor(p, s, basis);
    let sp = sigma_dot(p, w);
    Bispinor([w[0] * n, w[1] * n, sp[0] * (n * k), sp[1] * (n * k)])
}

pub fn bispinor_v_in<T: Real>(p: [T; 3], s: Spin, basis: Basis) -> Bispinor<T> {
    let c = T::lit(C);
    let eps = energy(p);
    let n = ((eps + c * c) / (T::lit(2.0) * eps)).sqrt();
    let k = c / (eps + c * c);
    let w = two_spinor(p, s, basis);
    let sp = sigma_dot(p, w);
    Bispinor([-sp[0] * (n * k), -sp[1] * (n * k), w[0] * n, w[1] * n])
}

/// The three constant bispinors of a Bessel beam, indexed by
/// `k = -1, 0, 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorCoefficients<T> {
    pub a_minus1: Bispinor<T>,
    pub a_0: Bispinor<T>,
    pub a_plus1: Bispinor<T>,
}

impl<T: Real> SpinorCoefficients<T> {
    pub fn get(&self, k: i32) -> &Bispinor<T> {
        match k {
            -1 => &self.a_minus1,
            0 => &self.a_0,
            1 => &self.a_plus1,
            _ => panic!("a_k only exists for k in -1..=1"),
        }
    }

    /// `sum_k e^{i k phi} a_k`.
    pub fn combined(&self, phi: T) -> Bispinor<T> {
        let e = Complex::from_polar(T::one(), phi);
        self.a_0 + self.a_plus1.scale(e) + self.a_minus1.scale(e.conj())
    }
}

pub fn a_coefficients<T: Real>(p_par: T, p_perp: T, s: Spin) -> Result<SpinorCoefficients<T>> {
    if !(p_perp > T::zero()) {
        return Err(Error::domain(
            "spinors",
            format!("p_perp must be positive, got {p_perp}"),
        ));
    }
    let c = T::lit(C);
    let p2 = p_par * p_par + p_perp * p_perp;
    let eps = energy([p_perp, T::zero(), p_par]);
    let cos = p_par / p2.sqrt();
    let sin = p_perp / p2.sqrt();
    let plus = T::one() + c * c / eps;
    // 1 - c^2/eps without cancellation
    let minus = c * c * p2 / (eps * (eps + c * c));
    let delta = minus * sin * sin;
    let (wa, wb) = s.w();
    let (wa, wb) = (T::lit(wa), T::lit(wb));
    let z = T::zero();
    Ok(SpinorCoefficients {
        a_0: Bispinor::from_real([
            plus.sqrt() * wa,
            plus.sqrt() * wb,
            minus.sqrt() * cos * wa,
            -minus.sqrt() * cos * wb,
        ]),
        a_minus1: Bispinor::from_real([z, z, wb * delta.sqrt(), z]),
        a_plus1: Bispinor::from_real([z, z, z, wa * delta.sqrt()]),
    })
}
