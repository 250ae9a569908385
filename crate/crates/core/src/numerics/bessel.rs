//! Bessel functions of the first kind of integer order.
//!
//! All orders `0..=N` are produced by one backward (Miller) recurrence,
//! normalized with `J_0 + 2 sum_k J_2k = 1`. Negative orders and
//! negative arguments follow from `J_-n = (-1)^n J_n` and
//! `J_n(-x) = (-1)^n J_n(x)`.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default cap on `|n|`.
pub const DEFAULT_MAX_ORDER: i32 = 64;

/// Largest argument for which the stated accuracy is validated.
pub const MAX_VALIDATED_ARG: f64 = 1.0e3;

/// `J_n(x)` for `|n| <= DEFAULT_MAX_ORDER`.
pub fn bessel_j<T: Real>(n: i32, x: T) -> Result<T> {
    bessel_j_capped(n, x, DEFAULT_MAX_ORDER)
}

/// `J_n(x)` with a caller-chosen order cap.
pub fn bessel_j_capped<T: Real>(n: i32, x: T, max_order: i32) -> Result<T> {
    if n.abs() > max_order {
        return Err(Error::domain(
            "numerics::bessel",
            format!("order {n} exceeds cap {max_order}"),
        ));
    }
    let mut out = [T::zero()];
    bessel_j_run(n, n, x, &mut out);
    Ok(out[0])
}

/// Fills `out[k] = J_{n_min + k}(x)` for `n_min..=n_max`.
///
/// Orders are not capped here; callers validate them. Panics if
/// `out.len() != n_max - n_min + 1`.
pub fn bessel_j_run<T: Real>(n_min: i32, n_max: i32, x: T, out: &mut [T]) {
    assert!(n_max >= n_min);
    assert_eq!(out.len(), (n_max - n_min + 1) as usize);

    let top = n_min.unsigned_abs().max(n_max.unsigned_abs()) as usize;
    let ax = x.abs();
    let mut pos = vec![T::zero(); top + 1];
    bessel_j_nonneg(ax, &mut pos);

    let flip_x = x < T::zero();
    for (slot, n) in out.iter_mut().zip(n_min..=n_max) {
        let m = n.unsigned_abs() as usize;
        let mut v = pos[m];
        // J_-n = (-1)^n J_n and J_n(-x) = (-1)^n J_n(x)
        let odd = m % 2 == 1;
        if odd && (n < 0) != flip_x {
            v = -v;
        }
        *slot = v;
    }
}

/// `out[n] = J_n(x)` for `n = 0..out.len()`, `x >= 0`.
fn bessel_j_nonneg<T: Real>(x: T, out: &mut [T]) {
    let n_max = out.len() - 1;
    if x == T::zero() {
        out.fill(T::zero());
        out[0] = T::one();
        return;
    }

    let small = if T::EPS < T::lit(1e-10) {
        T::lit(1e-6)
    } else {
        T::lit(1e-3)
    };
    if x < small {
        // two-term series, next term is O(x^4)
        let h = x / T::lit(2.0);
        let h2 = h * h;
        let mut pow_fact = T::one(); // (x/2)^n / n!
        for (n, slot) in out.iter_mut().enumerate() {
            if n > 0 {
                pow_fact = pow_fact * h / T::from_usize_lossy(n);
            }
            *slot = pow_fact * (T::one() - h2 / T::from_usize_lossy(n + 1));
        }
        return;
    }

    let xf = x.to_f64().unwrap_or(0.0);
    let m = (n_max as f64).max(xf);
    let mut start = (m + 20.0 + 12.0 * m.cbrt()).ceil() as usize;
    if start % 2 == 1 {
        start += 1;
    }

    let two_over_x = T::lit(2.0) / x;
    let big = if T::EPS < T::lit(1e-10) {
        T::lit(1e200)
    } else {
        T::lit(1e25)
    };
    let mut j_next = T::zero(); // J_{k+1}
    let mut j_cur = T::lit(1e-30).max(T::min_positive_value() * T::lit(1e10)); // J_k, arbitrary seed
    let mut norm = T::zero();

    out.fill(T::zero());
    if start <= n_max {
        out[start] = j_cur;
    }
    if start % 2 == 0 {
        norm = norm + j_cur;
    }
    let mut k = start;
    while k > 0 {
        let j_prev = T::from_usize_lossy(k) * two_over_x * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;
        k -= 1;
        if k <= n_max {
            out[k] = j_cur;
        }
        if k % 2 == 0 && k > 0 {
            norm = norm + j_cur;
        }
        if j_cur.abs() > big {
            let s = T::one() / big;
            j_cur = j_cur * s;
            j_next = j_next * s;
            norm = norm * s;
            for v in out.iter_mut().skip(k) {
                *v = *v * s;
            }
        }
    }
    // j_cur is now the unnormalized J_0; norm holds sum_{k>=1} J_2k
    let total = j_cur + T::lit(2.0) * norm;
    let inv = T::one() / total;
    for v in out.iter_mut() {
        *v = *v * inv;
    }
}
