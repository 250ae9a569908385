//! Cubic Hermite interpolation on a uniform grid with known
//! derivatives at the nodes.

use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct HermiteTable<T> {
    pub x0: T,
    pub step: T,
    pub values: Vec<T>,
    pub slopes: Vec<T>,
}

impl<T: Real> HermiteTable<T> {
    pub fn new(x0: T, step: T, values: Vec<T>, slopes: Vec<T>) -> Self {
        assert_eq!(values.len(), slopes.len());
        assert!(values.len() >= 2 && step > T::zero());
        HermiteTable {
            x0,
            step,
            values,
            slopes,
        }
    }

    pub fn x_end(&self) -> T {
        self.x0 + self.step * T::from_usize_lossy(self.values.len() - 1)
    }

    /// Interpolated value; arguments outside the table are clamped to it.
    pub fn eval(&self, x: T) -> T {
        let n = self.values.len();
        let u = ((x - self.x0) / self.step).max(T::zero());
        let i = u.floor().to_usize().unwrap_or(usize::MAX).min(n - 2);
        let t = (u - T::from_usize_lossy(i)).min(T::one());
        let (y0, y1) = (self.values[i], self.values[i + 1]);
        let (d0, d1) = (self.slopes[i] * self.step, self.slopes[i + 1] * self.step);
        let t2 = t * t;
        let t3 = t2 * t;
        let two = T::lit(2.0);
        let three = T::lit(3.0);
        let h00 = two * t3 - three * t2 + T::one();
        let h10 = t3 - two * t2 + t;
        let h01 = -two * t3 + three * t2;
        let h11 = t3 - t2;
        h00 * y0 + h10 * d0 + h01 * y1 + h11 * d1
    }
}
