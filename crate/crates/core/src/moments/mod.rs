//! Exact moments of core-size distributions.

mod theorems;

use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

pub use theorems::{theorem_polynomial, TheoremId};

use crate::error::{Error, Result};
use crate::exactmath::{BigInt, BigRational, QPolynomial, RadicalNumber};
use crate::partitions::{size_multiset, CorePair};
use crate::pathdp::{size_generating_polynomial, size_power_sums, SizePowerSums};

/// Moments of a finite distribution, all exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentSet {
    /// Total weight `f(1)`; the number of cores for a size polynomial.
    pub total_count: BigRational,
    /// `μ′_0..μ′_R`.
    pub raw: Vec<BigRational>,
    /// `m_0..m_R` about the mean.
    pub central: Vec<BigRational>,
    /// `α_3..α_R`; empty when `R < 3` or the variance is zero.
    pub standardized: Vec<RadicalNumber>,
}

impl MomentSet {
    pub fn from_polynomial(f: &QPolynomial, order: usize) -> Result<Self> {
        let raw = raw_moments(f, order)?;
        Self::from_raw(f.coefficient_sum(), raw)
    }

    pub fn from_power_sums(sums: &SizePowerSums) -> Result<Self> {
        let total = BigRational::from_integer(sums.sums[0].clone());
        if total.is_zero() {
            return Err(Error::ZeroTotal);
        }
        let raw = sums
            .sums
            .iter()
            .map(|x| BigRational::from_integer(x.clone()) / &total)
            .collect();
        Self::from_raw(total, raw)
    }

    /// Rebuilds a moment set from the mean and `m_0..m_R`.
    pub fn from_central(
        total_count: BigRational,
        mean: &BigRational,
        central: Vec<BigRational>,
    ) -> Result<Self> {
        if total_count.is_zero() {
            return Err(Error::ZeroTotal);
        }
        Self::from_raw(total_count, raw_from_central(&central, mean))
    }

    fn from_raw(total_count: BigRational, raw: Vec<BigRational>) -> Result<Self> {
        let central = central_moments(&raw);
        let standardized = if raw.len() > 3 && central[2].is_positive() {
            standardized_moments(&central)?
        } else {
            Vec::new()
        };
        Ok(MomentSet {
            total_count,
            raw,
            central,
            standardized,
        })
    }

    pub fn order(&self) -> usize {
        self.raw.len() - 1
    }

    pub fn mean(&self) -> &BigRational {
        &self.raw[1]
    }

    pub fn variance(&self) -> &BigRational {
        &self.central[2]
    }

    /// `α_k` for `k ≥ 3`.
    pub fn alpha(&self, k: usize) -> Option<&RadicalNumber> {
        k.checked_sub(3).and_then(|i| self.standardized.get(i))
    }

    /// The quantity a theorem predicts: the mean for id 1, `m_r` otherwise.
    pub fn theorem_quantity(&self, id: TheoremId) -> Option<&BigRational> {
        if id.index() == 1 {
            self.raw.get(1)
        } else {
            self.central.get(id.order())
        }
    }
}

/// `f / f(1)`.
pub fn probability_generating_function(f: &QPolynomial) -> Result<QPolynomial> {
    let total = f.coefficient_sum();
    if total.is_zero() {
        return Err(Error::ZeroTotal);
    }
    Ok(f.scale(&(BigRational::one() / total)))
}

/// `μ′_r = Σ n^r c_n / Σ c_n` for `r = 0..=order`.
pub fn raw_moments(f: &QPolynomial, order: usize) -> Result<Vec<BigRational>> {
    let total = f.coefficient_sum();
    if total.is_zero() {
        return Err(Error::ZeroTotal);
    }
    let mut sums = vec![BigRational::zero(); order + 1];
    for (&n, c) in f.terms() {
        let n = BigRational::from_integer(BigInt::from(n));
        let mut term = c.clone();
        for s in sums.iter_mut() {
            *s += &term;
            term *= &n;
        }
    }
    Ok(sums.into_iter().map(|s| s / &total).collect())
}

fn binom(k: usize, i: usize) -> BigRational {
    BigRational::from_integer(binomial(BigInt::from(k), BigInt::from(i)))
}

/// Binomial transform of raw moments about `shift`: `Σ C(k,i) shift^{k-i} x_i`.
fn rebase(moments: &[BigRational], shift: &BigRational) -> Vec<BigRational> {
    let mut powers = vec![BigRational::one()];
    for i in 1..moments.len() {
        let next = &powers[i - 1] * shift;
        powers.push(next);
    }
    (0..moments.len())
        .map(|k| {
            (0..=k).fold(BigRational::zero(), |acc, i| {
                acc + binom(k, i) * &powers[k - i] * &moments[i]
            })
        })
        .collect()
}

/// `m_k = Σ C(k,i) (−μ)^{k−i} μ′_i`.
pub fn central_moments(raw: &[BigRational]) -> Vec<BigRational> {
    let mean = raw.get(1).cloned().unwrap_or_default();
    rebase(raw, &-mean)
}

/// Inverse of [`central_moments`] given the mean.
pub fn raw_from_central(central: &[BigRational], mean: &BigRational) -> Vec<BigRational> {
    rebase(central, mean)
}

/// `m_k / m_2^{k/2}` with the variance given explicitly.
pub fn standardize(mk: &BigRational, m2: &BigRational, k: usize) -> Result<RadicalNumber> {
    if !m2.is_positive() {
        return Err(Error::DegenerateVariance);
    }
    let half = num_traits::pow(m2.clone(), k / 2);
    let base = mk / half;
    if k.is_multiple_of(2) {
        Ok(RadicalNumber::rational(base))
    } else {
        Ok(RadicalNumber::sqrt_of(&(BigRational::one() / m2))?.mul_rational(&base))
    }
}

/// `α_3..α_R` from `m_0..m_R`.
pub fn standardized_moments(central: &[BigRational]) -> Result<Vec<RadicalNumber>> {
    let m2 = central.get(2).ok_or(Error::DegenerateVariance)?;
    (3..central.len())
        .map(|k| standardize(&central[k], m2, k))
        .collect()
}

/// How the size distribution of a pair is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// Expand the full size polynomial with the path DP.
    Full,
    /// Run the DP over power-sum jets; never expands the polynomial.
    FastMoments,
    /// Enumerate every core.
    Brute,
}

pub fn pair_moments(pair: CorePair, order: usize, engine: Engine) -> Result<MomentSet> {
    match engine {
        Engine::Full => MomentSet::from_polynomial(&size_generating_polynomial(pair)?, order),
        Engine::FastMoments => MomentSet::from_power_sums(&size_power_sums(pair, order)?),
        Engine::Brute => MomentSet::from_polynomial(&brute_polynomial(pair), order),
    }
}

/// Size polynomial from explicit enumeration.
pub fn brute_polynomial(pair: CorePair) -> QPolynomial {
    QPolynomial::from_terms(
        size_multiset(pair)
            .into_iter()
            .map(|n| (n as i64, BigRational::one())),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationEntry {
    pub pair: CorePair,
    pub computed: BigRational,
    pub predicted: BigRational,
}

impl VerificationEntry {
    pub fn matches(&self) -> bool {
        self.computed == self.predicted
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub entries: Vec<VerificationEntry>,
}

impl VerificationReport {
    pub fn all_match(&self) -> bool {
        self.entries.iter().all(VerificationEntry::matches)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &VerificationEntry> {
        self.entries.iter().filter(|e| !e.matches())
    }
}

/// Rejects pairs outside the domain of `id`.
pub fn check_theorem_domain(id: TheoremId, pair: CorePair) -> Result<()> {
    if id.successive_only() && pair.t() != pair.s() + 1 {
        return Err(Error::TheoremDomain {
            id: id.index(),
            s: pair.s(),
            t: pair.t(),
        });
    }
    Ok(())
}

/// Compares DP moments with the closed form of `id`, one pair per task.
pub fn verify_theorem(
    id: TheoremId,
    pairs: &[CorePair],
    engine: Engine,
) -> Result<VerificationReport> {
    for &pair in pairs {
        check_theorem_domain(id, pair)?;
    }
    let poly = id.polynomial();
    let entries = pairs
        .par_iter()
        .map(|&pair| {
            let moments = pair_moments(pair, id.order(), engine)?;
            let computed = moments
                .theorem_quantity(id)
                .cloned()
                .expect("order covers the theorem");
            Ok(VerificationEntry {
                pair,
                computed,
                predicted: poly.eval_at(pair.s(), pair.t()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport {
        theorem: id,
        entries,
    })
}

/// `lim α_r` along `t = s + c`, from the leading coefficients of the closed forms.
///
/// Orders 3..=6 accept any `c`; orders 7..=9 exist only for `c = 1`.
pub fn limiting_standardized_moment(r: usize, diff_c: i64) -> Result<RadicalNumber> {
    let restrict = |p: crate::exactmath::BivariatePolynomial| p.substitute_t_shift(diff_c);
    let mr = match r {
        3..=6 => restrict(TheoremId::new(r as u8)?.polynomial()),
        7..=9 if diff_c == 1 => TheoremId::new(r as u8)?.polynomial(),
        7..=9 => {
            return Err(Error::UnsupportedOrder {
                order: r,
                reason: "orders above 6 are only known for t = s + 1".into(),
            })
        }
        _ => {
            return Err(Error::UnsupportedOrder {
                order: r,
                reason: "supported orders are 3..=9".into(),
            })
        }
    };
    let m2 = restrict(TheoremId::new(2)?.polynomial());
    let (d2, l2) = m2.leading_in_s().ok_or(Error::DegenerateVariance)?;
    let (dr, lr) = mr.leading_in_s().unwrap_or((0, BigRational::zero()));
    let scaled = 2 * dr as usize;
    if lr.is_zero() || scaled < r * d2 as usize {
        return Ok(RadicalNumber::zero());
    }
    if scaled > r * d2 as usize {
        return Err(Error::UnsupportedOrder {
            order: r,
            reason: format!("α_{r} diverges along t = s + {diff_c}"),
        });
    }
    standardize(&lr, &l2, r)
}
