use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::Result;
use crate::exactmath::{BigRational, QWPolynomial};

/// Values the path recurrence can be run over: a commutative semiring in
/// which the step weight `q^e w^k` acts by multiplication.
pub trait WeightAlgebra {
    type Value: Clone;

    fn zero(&self) -> Self::Value;
    fn one(&self) -> Self::Value;
    fn add_assign(&self, acc: &mut Self::Value, x: &Self::Value);
    fn mul_monomial(&self, x: &Self::Value, q_exp: i64, w_exp: u32) -> Result<Self::Value>;
}

/// Full `(q,w)` polynomials.
#[derive(Debug, Clone, Copy, Default)]
pub struct FullPolynomials;

impl WeightAlgebra for FullPolynomials {
    type Value = QWPolynomial;

    fn zero(&self) -> QWPolynomial {
        QWPolynomial::zero()
    }

    fn one(&self) -> QWPolynomial {
        QWPolynomial::one()
    }

    fn add_assign(&self, acc: &mut QWPolynomial, x: &QWPolynomial) {
        acc.add_assign_ref(x);
    }

    fn mul_monomial(&self, x: &QWPolynomial, q_exp: i64, w_exp: u32) -> Result<QWPolynomial> {
        if q_exp == 0 && w_exp == 0 {
            return Ok(x.clone());
        }
        x.checked_mul_monomial(
            &BigRational::one(),
            crate::exactmath::QwExp { q: q_exp, w: w_exp },
        )
    }
}

/// Specialisation at `q = w = 1`: plain path counts.
#[derive(Debug, Clone, Copy, Default)]
pub struct PathCounts;

impl WeightAlgebra for PathCounts {
    type Value = BigUint;

    fn zero(&self) -> BigUint {
        BigUint::zero()
    }

    fn one(&self) -> BigUint {
        BigUint::one()
    }

    fn add_assign(&self, acc: &mut BigUint, x: &BigUint) {
        *acc += x;
    }

    fn mul_monomial(&self, x: &BigUint, _q_exp: i64, _w_exp: u32) -> Result<BigUint> {
        Ok(x.clone())
    }
}

/// For each `w`-degree `k`, the power sums `Σ c·e^m` (`m = 0..=order`) of the
/// `q`-exponents carried with that degree.
///
/// The umbral shift only depends on `k`, so these jets determine the power
/// sums of the final sizes without ever expanding the full polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MomentJet {
    pub buckets: BTreeMap<u32, Vec<BigInt>>,
}

/// Power sums `Σ |λ|^r` over all cores, `r = 0..=order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizePowerSums {
    pub count: BigUint,
    pub sums: Vec<BigInt>,
}

#[derive(Debug, Clone)]
pub struct MomentJets {
    order: usize,
    binomial: Vec<Vec<BigInt>>,
}

impl MomentJets {
    pub fn new(order: usize) -> Self {
        let mut binomial = vec![vec![BigInt::one()]];
        for m in 1..=order {
            let prev = &binomial[m - 1];
            let row: Vec<BigInt> = (0..=m)
                .map(|l| {
                    let a = if l > 0 {
                        prev[l - 1].clone()
                    } else {
                        BigInt::zero()
                    };
                    let b = prev.get(l).cloned().unwrap_or_default();
                    a + b
                })
                .collect();
            binomial.push(row);
        }
        MomentJets { order, binomial }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Power sums of `e + shift` from power sums of `e`.
    fn shift(&self, sums: &[BigInt], shift: i64) -> Vec<BigInt> {
        if shift == 0 {
            return sums.to_vec();
        }
        let base = BigInt::from(shift);
        let mut powers = vec![BigInt::one()];
        for m in 1..=self.order {
            let next = &powers[m - 1] * &base;
            powers.push(next);
        }
        (0..=self.order)
            .map(|m| {
                (0..=m).fold(BigInt::zero(), |acc, l| {
                    acc + &self.binomial[m][l] * &powers[m - l] * &sums[l]
                })
            })
            .collect()
    }

    /// Applies the umbral shift per bucket and merges everything.
    pub fn size_power_sums(&self, jet: &MomentJet) -> SizePowerSums {
        let mut total = vec![BigInt::zero(); self.order + 1];
        for (&k, sums) in &jet.buckets {
            let k = k as i64;
            for (acc, x) in total.iter_mut().zip(self.shift(sums, -(k * (k - 1) / 2))) {
                *acc += x;
            }
        }
        let count = total[0].to_biguint().expect("path counts are nonnegative");
        SizePowerSums { count, sums: total }
    }
}

impl WeightAlgebra for MomentJets {
    type Value = MomentJet;

    fn zero(&self) -> MomentJet {
        MomentJet::default()
    }

    fn one(&self) -> MomentJet {
        let mut sums = vec![BigInt::zero(); self.order + 1];
        sums[0] = BigInt::one();
        MomentJet {
            buckets: BTreeMap::from([(0, sums)]),
        }
    }

    fn add_assign(&self, acc: &mut MomentJet, x: &MomentJet) {
        for (k, sums) in &x.buckets {
            match acc.buckets.get_mut(k) {
                Some(a) => a.iter_mut().zip(sums).for_each(|(p, q)| *p += q),
                None => {
                    acc.buckets.insert(*k, sums.clone());
                }
            }
        }
    }

    fn mul_monomial(&self, x: &MomentJet, q_exp: i64, w_exp: u32) -> Result<MomentJet> {
        Ok(MomentJet {
            buckets: x
                .buckets
                .iter()
                .map(|(k, sums)| (k + w_exp, self.shift(sums, q_exp)))
                .collect(),
        })
    }
}
