use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Power series truncated after the coefficient of `t^order`.
#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    /// Pads with zeros or truncates so exactly `order + 1` coefficients are kept.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        PowerSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> BigRational) -> Self {
        PowerSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![BigRational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Product truncated to the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::from_fn(order, |k| {
            (0..=k).fold(BigRational::zero(), |acc, i| {
                acc + &self.coeffs[i] * &other.coeffs[k - i]
            })
        })
    }

    /// Multiplicative inverse up to the same truncation order.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NonInvertibleSeries);
        }
        let inv0 = a0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for k in 1..self.coeffs.len() {
            let s = (1..=k).fold(BigRational::zero(), |acc, i| {
                acc + &self.coeffs[i] * &out[k - i]
            });
            out.push(-s * &inv0);
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// Whether this equals 1 up to the truncation order.
    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| format!("{c}*t^{k}"))
            .collect();
        write!(f, "{} + O(t^{})", terms.join(" + "), self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn geometric_series() {
        let a = PowerSeries::new(vec![int(1), int(-2)], 3);
        let r = a.reciprocal().unwrap();
        assert_eq!(r.coeffs(), &[int(1), int(2), int(4), int(8)]);
        assert_eq!(
            PowerSeries::one(4).reciprocal().unwrap(),
            PowerSeries::one(4)
        );
    }

    #[test]
    fn zero_constant_term_rejected() {
        let a = PowerSeries::new(vec![int(0), int(1)], 3);
        assert_eq!(a.reciprocal(), Err(Error::NonInvertibleSeries));
    }

    #[test]
    fn reciprocal_of_sinc_in_u() {
        // sin(x)/x with u = x^2: sum (-1)^n u^n / (2n+1)!
        let mut fact = BigRational::one();
        let sinc = PowerSeries::from_fn(6, |n| {
            if n > 0 {
                fact = &fact * int(((2 * n) * (2 * n + 1)) as i64);
            }
            let sign = if n % 2 == 0 { int(1) } else { int(-1) };
            sign / &fact
        });
        assert_eq!(sinc.coeff(1), &rat(-1, 6));
        let r = sinc.reciprocal().unwrap();
        assert_eq!(&r.coeffs()[..3], &[int(1), rat(1, 6), rat(7, 360)]);
        // The frozen values above are checked order by order against the product.
        for order in 0..=6 {
            let a = PowerSeries::new(sinc.coeffs().to_vec(), order);
            assert!(a.mul(&a.reciprocal().unwrap()).is_one());
        }
    }

    proptest! {
        #[test]
        fn reciprocal_inverts(c0 in 1i64..20, rest in proptest::collection::vec(-30i64..30, 0..10), neg in any::<bool>()) {
            let mut coeffs = vec![int(if neg { -c0 } else { c0 })];
            coeffs.extend(rest.iter().enumerate().map(|(i, &n)| rat(n, i as i64 + 1)));
            let order = coeffs.len() + 2;
            let a = PowerSeries::new(coeffs, order);
            prop_assert!(a.mul(&a.reciprocal().unwrap()).is_one());
        }
    }
}
