use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::rational_to_f64;
use crate::error::{Error, Result};

/// The exact number `coefficient * sqrt(radicand)` with a square-free radicand.
///
/// Construction normalises, so two radicals are equal as values iff they are
/// equal as structs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RadicalNumber {
    coefficient: BigRational,
    radicand: BigUint,
}

/// Splits `n` as `f^2 * r` with `r` square-free; returns `(f, r)`.
///
/// Trial division only runs up to the cube root of the shrinking cofactor:
/// once no prime below `d` divides a cofactor `m < d^3`, `m` is 1, a prime,
/// a prime squared, or a product of two distinct primes.
pub fn square_free_decomposition(n: &BigUint) -> (BigUint, BigUint) {
    if n.is_zero() {
        return (BigUint::zero(), BigUint::one());
    }
    let mut m = n.clone();
    let mut f = BigUint::one();
    let mut r = BigUint::one();
    let mut d = BigUint::from(2u32);
    while &d * &d * &d <= m {
        let d2 = &d * &d;
        while (&m % &d2).is_zero() {
            m /= &d2;
            f *= &d;
        }
        if (&m % &d).is_zero() {
            m /= &d;
            r *= &d;
        }
        d += 1u32;
    }
    let root = m.sqrt();
    if &root * &root == m {
        f *= root;
    } else {
        r *= m;
    }
    (f, r)
}

impl RadicalNumber {
    pub fn new(coefficient: BigRational, radicand: BigUint) -> Self {
        if coefficient.is_zero() || radicand.is_zero() {
            return Self::zero();
        }
        let (f, r) = square_free_decomposition(&radicand);
        RadicalNumber {
            coefficient: coefficient * BigRational::from_integer(BigInt::from(f)),
            radicand: r,
        }
    }

    pub fn rational(q: BigRational) -> Self {
        Self::new(q, BigUint::one())
    }

    pub fn zero() -> Self {
        RadicalNumber {
            coefficient: BigRational::zero(),
            radicand: BigUint::one(),
        }
    }

    /// `sqrt(x)` for a nonnegative rational `x = p/q`, written as `sqrt(p*q)/q`.
    pub fn sqrt_of(x: &BigRational) -> Result<Self> {
        if x.is_negative() {
            return Err(Error::Parse(format!(
                "square root of negative rational {x}"
            )));
        }
        let p = x.numer().magnitude().clone();
        let q = x.denom().magnitude().clone();
        Ok(Self::new(
            BigRational::new(BigInt::one(), BigInt::from(q.clone())),
            p * q,
        ))
    }

    pub fn coefficient(&self) -> &BigRational {
        &self.coefficient
    }

    pub fn radicand(&self) -> &BigUint {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.radicand.is_one()
    }

    /// Exact square, always rational.
    pub fn square(&self) -> BigRational {
        &self.coefficient
            * &self.coefficient
            * BigRational::from_integer(BigInt::from(self.radicand.clone()))
    }

    pub fn mul_rational(&self, q: &BigRational) -> Self {
        Self::new(&self.coefficient * q, self.radicand.clone())
    }

    /// Display-only approximation.
    pub fn to_f64(&self) -> f64 {
        let r = rational_to_f64(&BigRational::from_integer(BigInt::from(
            self.radicand.clone(),
        )));
        rational_to_f64(&self.coefficient) * r.sqrt()
    }
}

impl fmt::Display for RadicalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.coefficient)
        } else if self.coefficient.is_one() {
            write!(f, "sqrt({})", self.radicand)
        } else {
            write!(f, "{}*sqrt({})", self.coefficient, self.radicand)
        }
    }
}

impl fmt::Debug for RadicalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RadicalNumber({self})")
    }
}
