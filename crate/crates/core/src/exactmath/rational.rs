pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact binary arithmetic; the result is always in lowest terms.
pub fn rational_arith(a: &BigRational, b: &BigRational, op: ArithOp) -> Result<BigRational> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => {
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            a / b
        }
    })
}

/// `n/d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Display-only decimal approximation.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        // Huge operands: shift both down to a comparable scale first.
        _ => {
            let nb = r.numer().bits() as i64;
            let db = r.denom().bits() as i64;
            let shift_n = (nb - 900).max(0) as usize;
            let shift_d = (db - 900).max(0) as usize;
            let n = (r.numer() >> shift_n).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift_d).to_f64().unwrap_or(f64::NAN);
            n / d * 2f64.powi((shift_n as i64 - shift_d as i64) as i32)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn worked_values() {
        assert_eq!(
            rational_arith(&rat(1, 3), &rat(1, 6), ArithOp::Add).unwrap(),
            rat(1, 2)
        );
        assert_eq!(
            rational_arith(&rat(21, 7), &int(1), ArithOp::Div).unwrap(),
            int(3)
        );
        assert_eq!(
            rational_arith(&rat(-5, 9), &int(0), ArithOp::Mul).unwrap(),
            int(0)
        );
        assert_eq!(rat(0, 7), BigRational::zero());
        assert_eq!(*rat(0, 7).denom(), BigInt::from(1));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            rational_arith(&int(1), &int(0), ArithOp::Div),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn float_display_of_huge_values() {
        let big = BigRational::new(BigInt::from(10).pow(400), BigInt::from(10).pow(399) * 4);
        assert!((rational_to_f64(&big) - 2.5).abs() < 1e-9);
    }

    fn arb_rat() -> impl Strategy<Value = BigRational> {
        (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| rat(n, d))
    }

    fn lowest_terms(r: &BigRational) -> bool {
        use num_integer::Integer;
        r.numer().gcd(r.denom()) == BigInt::from(1) && r.denom() > &BigInt::zero()
    }

    proptest! {
        #[test]
        fn field_laws(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            let add = |x: &BigRational, y: &BigRational| rational_arith(x, y, ArithOp::Add).unwrap();
            let mul = |x: &BigRational, y: &BigRational| rational_arith(x, y, ArithOp::Mul).unwrap();
            prop_assert_eq!(add(&add(&a, &b), &c), add(&a, &add(&b, &c)));
            prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
            prop_assert_eq!(add(&a, &b), add(&b, &a));
            prop_assert_eq!(mul(&a, &b), mul(&b, &a));
            prop_assert_eq!(mul(&a, &add(&b, &c)), add(&mul(&a, &b), &mul(&a, &c)));
            for r in [add(&a, &b), mul(&a, &c), rational_arith(&a, &b, ArithOp::Sub).unwrap()] {
                prop_assert!(lowest_terms(&r));
            }
            if !b.is_zero() {
                let q = rational_arith(&a, &b, ArithOp::Div).unwrap();
                prop_assert!(lowest_terms(&q));
                prop_assert_eq!(mul(&q, &b), a);
            }
        }
    }
}
