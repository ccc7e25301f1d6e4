//! Moments of the limiting law `Z`, whose moment generating function is
//! `sqrt(t/2) / sin(sqrt(t/2))`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactmath::{BigRational, PowerSeries, RadicalNumber};
use crate::moments::{central_moments, limiting_standardized_moment, standardized_moments};

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `M_{z²}(t)` for a standard normal `z`, built from the moments
/// `(2r)!/(2^r r!)`, after checking it against the binomial series of
/// `(1 − 2t)^{−1/2}` term by term.
pub fn chi_square_mgf_check(order: usize) -> Result<PowerSeries> {
    let from_moments = PowerSeries::from_fn(order, |r| {
        let moment = factorial(2 * r) / (BigInt::from(2).pow(r as u32) * factorial(r));
        BigRational::new(moment, factorial(r))
    });
    // (1 − 2t)^{−1/2} = Σ C(−1/2, r) (−2t)^r; successive ratios are (2r − 1)/r.
    let mut binomial = vec![BigRational::one()];
    for r in 1..=order {
        let next = &binomial[r - 1] * BigRational::new(BigInt::from(2 * r - 1), BigInt::from(r));
        binomial.push(next);
    }
    let binomial = PowerSeries::new(binomial, order);
    if from_moments != binomial {
        let k = (0..=order)
            .find(|&k| from_moments.coeff(k) != binomial.coeff(k))
            .unwrap_or(0);
        return Err(Error::Parse(format!(
            "chi-square moment series disagrees at t^{k}"
        )));
    }
    Ok(from_moments)
}

/// `sin(x)/x` with `x² = t/2`: coefficient of `t^n` is `(−1)^n / ((2n+1)! 2^n)`.
pub fn sinc_series(order: usize) -> PowerSeries {
    PowerSeries::from_fn(order, |n| {
        let sign = if n % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        BigRational::new(sign, factorial(2 * n + 1) * BigInt::from(2).pow(n as u32))
    })
}

/// Maclaurin coefficients of `M_Z(t)` up to `t^order`.
pub fn z_mgf_series(order: usize) -> PowerSeries {
    sinc_series(order).reciprocal().expect("constant term is 1")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZMoments {
    pub order: usize,
    pub mgf_coeffs: PowerSeries,
    /// `E[Z^k]`, `k = 0..=order`.
    pub straight: Vec<BigRational>,
    pub central: Vec<BigRational>,
    /// `α_3..α_order`.
    pub standardized: Vec<RadicalNumber>,
}

impl ZMoments {
    pub fn alpha(&self, k: usize) -> Option<&RadicalNumber> {
        k.checked_sub(3).and_then(|i| self.standardized.get(i))
    }

    pub fn to_json(&self) -> Value {
        let list = |v: &[BigRational]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        json!({
            "order": self.order,
            "straight": list(&self.straight),
            "central": list(&self.central),
            "standardized": self.standardized.iter().enumerate()
                .map(|(i, a)| json!({"k": i + 3, "value": a.to_string()}))
                .collect::<Vec<_>>(),
        })
    }
}

pub fn z_moments(order: usize) -> Result<ZMoments> {
    if order < 3 {
        return Err(Error::UnsupportedOrder {
            order,
            reason: "standardized moments start at order 3".into(),
        });
    }
    let mgf_coeffs = z_mgf_series(order);
    let straight: Vec<BigRational> = (0..=order)
        .map(|k| mgf_coeffs.coeff(k) * BigRational::from_integer(factorial(k)))
        .collect();
    let central = central_moments(&straight);
    let standardized = standardized_moments(&central)?;
    Ok(ZMoments {
        order,
        mgf_coeffs,
        straight,
        central,
        standardized,
    })
}

/// One order of [`compare_limits`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitComparison {
    pub order: usize,
    /// Leading-term limit along `t = s + 1`; `None` when no closed form covers the order.
    pub combinatorial: Option<RadicalNumber>,
    pub z: RadicalNumber,
}

impl LimitComparison {
    pub fn equal(&self) -> bool {
        self.combinatorial.as_ref() == Some(&self.z)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitReport {
    pub rows: Vec<LimitComparison>,
}

impl LimitReport {
    pub fn all_equal(&self) -> bool {
        self.rows.iter().all(LimitComparison::equal)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    json!({
                        "r": r.order,
                        "combinatorial": r.combinatorial.as_ref().map(ToString::to_string),
                        "z": r.z.to_string(),
                        "equal": r.equal(),
                    })
                })
                .collect(),
        )
    }
}

impl fmt::Display for LimitReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            match &r.combinatorial {
                Some(c) => writeln!(
                    f,
                    "alpha_{}: cores {c}  Z {}  {}",
                    r.order,
                    r.z,
                    if r.equal() { "equal" } else { "DIFFERENT" }
                )?,
                None => writeln!(
                    f,
                    "alpha_{}: no combinatorial side available  Z {}",
                    r.order, r.z
                )?,
            }
        }
        Ok(())
    }
}

/// Compares `lim α_r` of core sizes along `t = s + 1` with `α_r` of `Z`, for `r = 3..=maxr`.
pub fn compare_limits(maxr: usize) -> Result<LimitReport> {
    let z = z_moments(maxr.max(3))?;
    let rows = (3..=maxr)
        .map(|r| {
            let combinatorial = match limiting_standardized_moment(r, 1) {
                Ok(v) => Some(v),
                Err(Error::UnsupportedOrder { .. }) => None,
                Err(e) => return Err(e),
            };
            Ok(LimitComparison {
                order: r,
                combinatorial,
                z: z.alpha(r).expect("order covered").clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LimitReport { rows })
}

/// True when every coefficient is a positive rational.
pub fn all_positive(series: &PowerSeries) -> bool {
    series.coeffs().iter().all(|c| *c > BigRational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat, BigUint};
    use crate::moments::raw_from_central;

    fn sqrt10(c: BigRational) -> RadicalNumber {
        RadicalNumber::new(c, BigUint::from(10u32))
    }

    #[test]
    fn chi_square_series() {
        let m = chi_square_mgf_check(20).unwrap();
        assert_eq!(m.coeff(0), &int(1));
        assert_eq!(m.coeff(1), &int(1));
        assert_eq!(m.coeff(2), &rat(3, 2));
    }

    #[test]
    fn mgf_coefficients() {
        let m = z_mgf_series(20);
        assert_eq!(m.coeff(0), &int(1));
        assert_eq!(m.coeff(1), &rat(1, 12));
        assert_eq!(m.coeff(2), &rat(7, 1440));
        assert!(m.mul(&sinc_series(20)).is_one());
        assert!(all_positive(&m));
    }

    #[test]
    fn low_moments() {
        let z = z_moments(4).unwrap();
        assert_eq!(z.straight[1], rat(1, 12));
        assert_eq!(z.straight[2], rat(7, 720));
        assert_eq!(z.central[2], rat(1, 360));
        assert_eq!(raw_from_central(&z.central, &z.straight[1]), z.straight);
        assert!(z_moments(2).is_err());
    }

    #[test]
    fn standardized_moments_of_z() {
        let z = z_moments(9).unwrap();
        let want = [
            sqrt10(rat(4, 7)),
            RadicalNumber::rational(rat(57, 7)),
            sqrt10(rat(920, 77)),
            RadicalNumber::rational(rat(1537805, 7007)),
            sqrt10(rat(466860, 1001)),
            RadicalNumber::rational(rat(193032265, 17017)),
            sqrt10(rat(70231858960, 2263261)),
        ];
        assert_eq!(z.standardized, want);
    }

    #[test]
    fn limits_coincide_through_nine() {
        let report = compare_limits(9).unwrap();
        assert_eq!(report.rows.len(), 7);
        assert!(report.all_equal(), "{report}");
        let report = compare_limits(10).unwrap();
        assert_eq!(report.rows.last().unwrap().combinatorial, None);
        assert!(!report.all_equal());
    }
}
