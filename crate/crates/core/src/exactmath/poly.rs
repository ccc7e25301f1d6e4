//! Sparse polynomials with exact rational coefficients.
//!
//! A single generic container, [`SparsePoly`], is keyed by an exponent type
//! implementing [`Monomial`]. Three instantiations are used by the crate:
//!
//! * [`QPolynomial`]: Laurent polynomials in `q` (exponents may be negative),
//! * [`QWPolynomial`]: Laurent in `q`, polynomial in `w`,
//! * [`BivariatePolynomial`]: ordinary polynomials in `s` and `t`.
//!
//! Terms are held in a `BTreeMap`, so iteration and the canonical text form
//! are in ascending exponent order. Zero coefficients are never stored.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{Number, Value};

use crate::error::{Error, Result};

/// Exponent vector of a monomial.
pub trait Monomial: Copy + Ord + fmt::Debug {
    fn unit() -> Self;
    /// Exponent addition; `None` on overflow.
    fn checked_mul(self, other: Self) -> Option<Self>;
    /// Text form of the variable part, empty for the unit monomial.
    fn vars(&self) -> String;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl Monomial for i64 {
    fn unit() -> Self {
        0
    }

    fn checked_mul(self, other: Self) -> Option<Self> {
        self.checked_add(other)
    }

    fn vars(&self) -> String {
        power("q", *self)
    }

    fn to_json(&self) -> Value {
        Value::from(*self)
    }

    fn from_json(v: &Value) -> Result<Self> {
        v.as_i64()
            .ok_or_else(|| Error::Parse(format!("expected an integer exponent, got {v}")))
    }
}

/// Exponents of `q^q * w^w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QwExp {
    pub q: i64,
    pub w: u32,
}

impl Monomial for QwExp {
    fn unit() -> Self {
        QwExp { q: 0, w: 0 }
    }

    fn checked_mul(self, other: Self) -> Option<Self> {
        Some(QwExp {
            q: self.q.checked_add(other.q)?,
            w: self.w.checked_add(other.w)?,
        })
    }

    fn vars(&self) -> String {
        join_vars(&[power("q", self.q), power("w", self.w as i64)])
    }

    fn to_json(&self) -> Value {
        Value::from(vec![Value::from(self.q), Value::from(self.w)])
    }

    fn from_json(v: &Value) -> Result<Self> {
        let (q, w) = exponent_pair(v)?;
        Ok(QwExp {
            q,
            w: u32::try_from(w).map_err(|_| Error::Parse(format!("bad w exponent {w}")))?,
        })
    }
}

/// Exponents of `s^s * t^t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StExp {
    pub s: u32,
    pub t: u32,
}

impl Monomial for StExp {
    fn unit() -> Self {
        StExp { s: 0, t: 0 }
    }

    fn checked_mul(self, other: Self) -> Option<Self> {
        Some(StExp {
            s: self.s.checked_add(other.s)?,
            t: self.t.checked_add(other.t)?,
        })
    }

    fn vars(&self) -> String {
        join_vars(&[power("s", self.s as i64), power("t", self.t as i64)])
    }

    fn to_json(&self) -> Value {
        Value::from(vec![Value::from(self.s), Value::from(self.t)])
    }

    fn from_json(v: &Value) -> Result<Self> {
        let (s, t) = exponent_pair(v)?;
        let conv = |x: i64| u32::try_from(x).map_err(|_| Error::Parse(format!("bad exponent {x}")));
        Ok(StExp {
            s: conv(s)?,
            t: conv(t)?,
        })
    }
}

fn power(var: &str, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

fn join_vars(parts: &[String]) -> String {
    parts
        .iter()
        .filter(|p| !p.is_empty())
        .cloned()
        .collect::<Vec<_>>()
        .join("*")
}

fn exponent_pair(v: &Value) -> Result<(i64, i64)> {
    match v.as_array().map(|a| a.as_slice()) {
        Some([a, b]) => match (a.as_i64(), b.as_i64()) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::Parse(format!("bad exponent pair {v}"))),
        },
        _ => Err(Error::Parse(format!("expected an exponent pair, got {v}"))),
    }
}

pub(crate) fn bigint_to_json(n: &BigInt) -> Value {
    // serde_json is built with arbitrary_precision, so any integer literal is exact.
    Value::Number(Number::from_str(&n.to_string()).expect("decimal integer is a JSON number"))
}

pub(crate) fn bigint_from_json(v: &Value) -> Result<BigInt> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(Error::Parse(format!("expected an integer, got {v}"))),
    };
    BigInt::from_str(&text).map_err(|_| Error::Parse(format!("not an integer: {text}")))
}

/// Sparse polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly<M: Monomial> {
    terms: BTreeMap<M, BigRational>,
}

pub type QPolynomial = SparsePoly<i64>;
pub type QWPolynomial = SparsePoly<QwExp>;
pub type BivariatePolynomial = SparsePoly<StExp>;

impl<M: Monomial> Default for SparsePoly<M> {
    fn default() -> Self {
        SparsePoly {
            terms: BTreeMap::new(),
        }
    }
}

impl<M: Monomial> SparsePoly<M> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, M::unit())
    }

    pub fn monomial(c: BigRational, m: M) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    /// Builds a polynomial from possibly repeated terms, combining like terms.
    pub fn from_terms<I: IntoIterator<Item = (M, BigRational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: M, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(*m, c.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&M, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &M) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparsePoly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    /// Multiplies by the monomial `c * m`.
    pub fn checked_mul_monomial(&self, c: &BigRational, m: M) -> Result<Self> {
        if c.is_zero() {
            return Ok(Self::zero());
        }
        let mut terms = BTreeMap::new();
        for (k, x) in &self.terms {
            let e = k.checked_mul(m).ok_or(Error::ExponentOverflow)?;
            terms.insert(e, x * c);
        }
        Ok(SparsePoly { terms })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e = a.checked_mul(*b).ok_or(Error::ExponentOverflow)?;
                out.add_term(e, x * y);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Sum of all coefficients, i.e. the value at the all-ones point.
    pub fn coefficient_sum(&self) -> BigRational {
        self.terms
            .values()
            .fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// Canonical text form, terms in ascending exponent order.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mag = c.abs();
            let vars = m.vars();
            if vars.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&vars);
            } else {
                out.push_str(&format!("{mag}*{vars}"));
            }
        }
        out
    }

    /// JSON form: a list of `[exponent(s), numerator, denominator]` triples.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| {
                    Value::Array(vec![
                        m.to_json(),
                        bigint_to_json(c.numer()),
                        bigint_to_json(c.denom()),
                    ])
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let items = v
            .as_array()
            .ok_or_else(|| Error::Parse("polynomial JSON must be a list".into()))?;
        let mut p = Self::zero();
        for item in items {
            match item.as_array().map(|a| a.as_slice()) {
                Some([e, n, d]) => {
                    let den = bigint_from_json(d)?;
                    if den.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    p.add_term(
                        M::from_json(e)?,
                        BigRational::new(bigint_from_json(n)?, den),
                    );
                }
                _ => return Err(Error::Parse(format!("bad polynomial term {item}"))),
            }
        }
        Ok(p)
    }
}

impl QPolynomial {
    /// `q^e`.
    pub fn q_power(e: i64) -> Self {
        Self::monomial(BigRational::one(), e)
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Evaluates at `q = x`; a negative exponent at `x = 0` is a division by zero.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let v = if *e >= 0 {
                num_traits::pow(x.clone(), *e as usize)
            } else {
                if x.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                num_traits::pow(x.recip(), e.unsigned_abs() as usize)
            };
            acc += c * v;
        }
        Ok(acc)
    }
}

impl QWPolynomial {
    /// `q^q * w^w`.
    pub fn qw_monomial(q: i64, w: u32) -> Self {
        Self::monomial(BigRational::one(), QwExp { q, w })
    }

    pub fn eval(&self, q: &BigRational, w: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let qv = if m.q >= 0 {
                num_traits::pow(q.clone(), m.q as usize)
            } else {
                if q.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                num_traits::pow(q.recip(), m.q.unsigned_abs() as usize)
            };
            acc += c * qv * num_traits::pow(w.clone(), m.w as usize);
        }
        Ok(acc)
    }
}

impl BivariatePolynomial {
    pub fn var_s() -> Self {
        Self::monomial(BigRational::one(), StExp { s: 1, t: 0 })
    }

    pub fn var_t() -> Self {
        Self::monomial(BigRational::one(), StExp { s: 0, t: 1 })
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.s + m.t).max()
    }

    pub fn eval(&self, s: &BigRational, t: &BigRational) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, (m, c)| {
            acc + c
                * num_traits::pow(s.clone(), m.s as usize)
                * num_traits::pow(t.clone(), m.t as usize)
        })
    }

    pub fn eval_at(&self, s: u32, t: u32) -> BigRational {
        self.eval(
            &BigRational::from_integer(s.into()),
            &BigRational::from_integer(t.into()),
        )
    }

    /// Image under `s <-> t`.
    pub fn swap_variables(&self) -> Self {
        SparsePoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (StExp { s: m.t, t: m.s }, c.clone()))
                .collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.swap_variables()
    }

    /// Substitutes `t = s + c`, giving a polynomial in `s` alone.
    pub fn substitute_t_shift(&self, c: i64) -> Self {
        let shifted = &Self::var_s() + &Self::constant(BigRational::from_integer(c.into()));
        let mut out = Self::zero();
        for (m, coeff) in &self.terms {
            let s_part = Self::monomial(coeff.clone(), StExp { s: m.s, t: 0 });
            out.add_assign_ref(&(&s_part * &shifted.pow(m.t)));
        }
        out
    }

    /// Highest `s`-degree term of a polynomial in `s` alone.
    pub fn leading_in_s(&self) -> Option<(u32, BigRational)> {
        debug_assert!(self.terms.keys().all(|m| m.t == 0));
        self.terms.iter().next_back().map(|(m, c)| (m.s, c.clone()))
    }
}

impl<M: Monomial> fmt::Display for SparsePoly<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<M: Monomial> fmt::Debug for SparsePoly<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly({})", self.to_text())
    }
}

impl<M: Monomial> Add for &SparsePoly<M> {
    type Output = SparsePoly<M>;

    fn add(self, rhs: Self) -> SparsePoly<M> {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<M: Monomial> Add for SparsePoly<M> {
    type Output = SparsePoly<M>;

    fn add(mut self, rhs: Self) -> SparsePoly<M> {
        self.add_assign_ref(&rhs);
        self
    }
}

impl<M: Monomial> Neg for &SparsePoly<M> {
    type Output = SparsePoly<M>;

    fn neg(self) -> SparsePoly<M> {
        SparsePoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl<M: Monomial> Sub for &SparsePoly<M> {
    type Output = SparsePoly<M>;

    fn sub(self, rhs: Self) -> SparsePoly<M> {
        self + &(-rhs)
    }
}

impl<M: Monomial> Mul for &SparsePoly<M> {
    type Output = SparsePoly<M>;

    /// Panics on exponent overflow; use [`SparsePoly::checked_mul`] to handle it.
    fn mul(self, rhs: Self) -> SparsePoly<M> {
        self.checked_mul(rhs)
            .expect("exponent overflow in polynomial product")
    }
}

impl<M: Monomial> Mul for SparsePoly<M> {
    type Output = SparsePoly<M>;

    fn mul(self, rhs: Self) -> SparsePoly<M> {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};
    use proptest::prelude::*;

    fn q(coeffs: &[(i64, i64)]) -> QPolynomial {
        QPolynomial::from_terms(coeffs.iter().map(|&(e, c)| (e, int(c))))
    }

    #[test]
    fn worked_products() {
        let one_plus_q = q(&[(0, 1), (1, 1)]);
        assert_eq!(&one_plus_q * &one_plus_q, q(&[(0, 1), (1, 2), (2, 1)]));
        assert_eq!(&one_plus_q + &QPolynomial::zero(), one_plus_q);
        let a = QWPolynomial::qw_monomial(-1, 1);
        let b = QWPolynomial::qw_monomial(3, 0);
        assert_eq!(&a * &b, QWPolynomial::qw_monomial(2, 1));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = q(&[(0, 1), (3, 2)]);
        let d = &p - &p;
        assert!(d.is_zero());
        assert_eq!(d.len(), 0);
        let mut r = q(&[(1, 5)]);
        r.add_term(1, int(-5));
        assert!(r.is_zero());
    }

    #[test]
    fn canonical_text() {
        assert_eq!(
            q(&[(8, 1), (0, 1), (1, 1), (2, 2), (4, 2)]).to_text(),
            "1 + q + 2*q^2 + 2*q^4 + q^8"
        );
        assert_eq!(QPolynomial::zero().to_text(), "0");
        let p = QPolynomial::from_terms([(-2, rat(-1, 3)), (0, int(1)), (1, int(-1))]);
        assert_eq!(p.to_text(), "-1/3*q^-2 + 1 - q");
        let w = QWPolynomial::from_terms([
            (QwExp { q: 0, w: 0 }, int(1)),
            (QwExp { q: 3, w: 2 }, int(4)),
        ]);
        assert_eq!(w.to_text(), "1 + 4*q^3*w^2");
        let st = &BivariatePolynomial::var_s() * &BivariatePolynomial::var_t().pow(2);
        assert_eq!(st.to_text(), "s*t^2");
    }

    #[test]
    fn overflow_is_reported() {
        let big = QPolynomial::q_power(i64::MAX);
        assert_eq!(
            big.checked_mul(&QPolynomial::q_power(1)),
            Err(Error::ExponentOverflow)
        );
    }

    #[test]
    fn json_uses_exact_big_integers() {
        let huge = BigInt::from(10).pow(40u32) + BigInt::from(7);
        let p = QPolynomial::monomial(BigRational::new(huge.clone(), BigInt::from(3)), 5);
        let text = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(text, format!("[[5,{huge},3]]"));
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(QPolynomial::from_json(&back).unwrap(), p);
    }

    #[test]
    fn bivariate_shift_and_leading_term() {
        // s*t*(s+t) with t = s + 1 is 2s^3 + 3s^2 + s.
        let s = BivariatePolynomial::var_s();
        let t = BivariatePolynomial::var_t();
        let p = &(&s * &t) * &(&s + &t);
        let u = p.substitute_t_shift(1);
        assert_eq!(u.leading_in_s(), Some((3, int(2))));
        assert_eq!(u.eval_at(4, 0), p.eval_at(4, 5));
        assert!(p.is_symmetric());
        assert!(!(&s * &s).is_symmetric());
    }

    fn arb_qpoly() -> impl Strategy<Value = QPolynomial> {
        proptest::collection::vec((-4i64..6, -20i64..20, 1i64..5), 0..6)
            .prop_map(|ts| QPolynomial::from_terms(ts.into_iter().map(|(e, n, d)| (e, rat(n, d)))))
    }

    fn arb_qwpoly() -> impl Strategy<Value = QWPolynomial> {
        proptest::collection::vec((-3i64..5, 0u32..4, -9i64..9), 0..6).prop_map(|ts| {
            QWPolynomial::from_terms(ts.into_iter().map(|(q, w, c)| (QwExp { q, w }, int(c))))
        })
    }

    proptest! {
        #[test]
        fn product_agrees_with_evaluation(a in arb_qpoly(), b in arb_qpoly(), n in 1i64..9, d in 1i64..9, neg in any::<bool>()) {
            let x = rat(if neg { -n } else { n }, d);
            let lhs = (&a * &b).eval(&x).unwrap();
            prop_assert_eq!(lhs, a.eval(&x).unwrap() * b.eval(&x).unwrap());
            prop_assert!((&a * &b).terms().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn qw_product_agrees_with_evaluation(a in arb_qwpoly(), b in arb_qwpoly(), x in 1i64..7, y in -5i64..5) {
            let (qx, wy) = (rat(x, 3), int(y));
            let lhs = (&a * &b).eval(&qx, &wy).unwrap();
            prop_assert_eq!(lhs, a.eval(&qx, &wy).unwrap() * b.eval(&qx, &wy).unwrap());
        }

        #[test]
        fn json_round_trip(a in arb_qwpoly()) {
            let text = serde_json::to_string(&a.to_json()).unwrap();
            let back = QWPolynomial::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            prop_assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), text);
            prop_assert_eq!(back, a);
        }
    }
}
