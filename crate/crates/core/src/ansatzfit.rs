//! Polynomial ansatz: recover a moment polynomial from exact data by
//! undetermined coefficients.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactmath::{
    rat, solve_linear_exact, BigRational, BivariatePolynomial, LinearSolution, StExp,
};
use crate::moments::{pair_moments, Engine, TheoremId};
use crate::partitions::CorePair;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitMode {
    /// A polynomial in `s` and `t` over arbitrary coprime pairs.
    Bivariate,
    /// A polynomial in `s` over the pairs `(s, s+1)`.
    Successive,
}

impl FitMode {
    pub fn name(&self) -> &'static str {
        match self {
            FitMode::Bivariate => "biv",
            FitMode::Successive => "succ",
        }
    }
}

impl FromStr for FitMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "biv" | "bivariate" => Ok(FitMode::Bivariate),
            "succ" | "successive" => Ok(FitMode::Successive),
            _ => Err(Error::Parse(format!(
                "unknown fit mode '{s}' (expected biv or succ)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitSpec {
    /// 1 fits the mean, `r ≥ 2` the central moment `m_r`.
    pub order: usize,
    pub degree: u32,
    /// Tie the coefficients of `s^a t^b` and `s^b t^a` (bivariate only).
    pub symmetric: bool,
    pub mode: FitMode,
    pub overdetermination: BigRational,
}

impl FitSpec {
    /// Degree `3r`, symmetric, 25% more points than unknowns.
    pub fn new(order: usize, mode: FitMode) -> Self {
        FitSpec {
            order,
            degree: 3 * order as u32,
            symmetric: mode == FitMode::Bivariate,
            mode,
            overdetermination: rat(5, 4),
        }
    }

    pub fn with_degree(mut self, degree: u32) -> Self {
        self.degree = degree;
        self
    }

    pub fn with_symmetry(mut self, symmetric: bool) -> Self {
        self.symmetric = symmetric;
        self
    }

    pub fn with_overdetermination(mut self, factor: BigRational) -> Self {
        self.overdetermination = factor;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.order == 0 {
            return Err(Error::InvalidFit("moment order must be at least 1".into()));
        }
        if self.overdetermination < rat(5, 4) {
            return Err(Error::InvalidFit(format!(
                "overdetermination factor {} is below 5/4",
                self.overdetermination
            )));
        }
        if self.symmetric && self.mode == FitMode::Successive {
            return Err(Error::InvalidFit(
                "symmetry only applies to bivariate fits".into(),
            ));
        }
        Ok(())
    }

    /// Basis polynomials whose coefficients are the unknowns.
    pub fn basis(&self) -> Vec<BivariatePolynomial> {
        let mono = |s, t| BivariatePolynomial::monomial(BigRational::one(), StExp { s, t });
        match self.mode {
            FitMode::Successive => (0..=self.degree).map(|a| mono(a, 0)).collect(),
            FitMode::Bivariate if self.symmetric => {
                let mut out = Vec::new();
                for total in 0..=self.degree {
                    for a in 0..=total / 2 {
                        let b = total - a;
                        out.push(if a == b {
                            mono(a, b)
                        } else {
                            &mono(a, b) + &mono(b, a)
                        });
                    }
                }
                out
            }
            FitMode::Bivariate => (0..=self.degree)
                .flat_map(|total| (0..=total).map(move |a| (a, total - a)))
                .map(|(a, b)| mono(a, b))
                .collect(),
        }
    }

    /// Smallest number of data points allowed for this basis.
    pub fn required_points(&self) -> usize {
        let n = BigRational::from_integer(self.basis().len().into()) * &self.overdetermination;
        n.ceil()
            .to_integer()
            .to_usize()
            .expect("basis sizes are small")
    }

    /// The first `count` pairs of the deterministic schedule for this mode.
    pub fn pair_schedule(&self, count: usize) -> Vec<CorePair> {
        match self.mode {
            FitMode::Successive => (1..)
                .map(|s| CorePair::new(s, s + 1).expect("consecutive"))
                .take(count)
                .collect(),
            FitMode::Bivariate => bivariate_schedule().take(count).collect(),
        }
    }
}

/// Coprime pairs `s < t` in increasing `s + t`, then increasing `s`.
pub fn bivariate_schedule() -> impl Iterator<Item = CorePair> {
    (3u32..).flat_map(|sum| {
        (1..=(sum - 1) / 2)
            .filter(move |&s| s.gcd(&(sum - s)) == 1 && s < sum - s)
            .map(move |s| CorePair::new(s, sum - s).expect("coprime"))
    })
}

/// Exact `m_r` (the mean for `r = 1`) for each pair.
pub fn collect_moment_data(
    order: usize,
    pairs: &[CorePair],
    engine: Engine,
) -> Result<Vec<(CorePair, BigRational)>> {
    pairs
        .par_iter()
        .map(|&pair| {
            let m = pair_moments(pair, order, engine)?;
            let value = if order == 1 {
                m.raw[1].clone()
            } else {
                m.central[order].clone()
            };
            Ok((pair, value))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitResult {
    pub spec: FitSpec,
    pub polynomial: BivariatePolynomial,
    /// The polynomial reproduces every data point exactly.
    pub residual_check: bool,
    pub data_points_used: usize,
    pub basis_size: usize,
}

fn point(mode: FitMode, pair: CorePair) -> (BigRational, BigRational) {
    let s = BigRational::from_integer(pair.s().into());
    match mode {
        FitMode::Bivariate => (s, BigRational::from_integer(pair.t().into())),
        FitMode::Successive => (s, BigRational::zero()),
    }
}

/// Solves for the coefficients; every extra point is a consistency check.
pub fn fit_polynomial(spec: &FitSpec, data: &[(CorePair, BigRational)]) -> Result<FitResult> {
    spec.validate()?;
    let basis = spec.basis();
    let need = spec.required_points();
    if data.len() < need {
        return Err(Error::InsufficientData {
            have: data.len(),
            basis: basis.len(),
            need,
        });
    }
    let mut seen = BTreeSet::new();
    for (pair, _) in data {
        if !seen.insert(*pair) {
            return Err(Error::InvalidFit(format!("pair {pair} appears twice")));
        }
        if spec.mode == FitMode::Successive && pair.t() != pair.s() + 1 {
            return Err(Error::InvalidFit(format!(
                "pair {pair} does not satisfy t = s + 1"
            )));
        }
    }

    let rows: Vec<Vec<BigRational>> = data
        .iter()
        .map(|(pair, _)| {
            let (s, t) = point(spec.mode, *pair);
            basis.iter().map(|b| b.eval(&s, &t)).collect()
        })
        .collect();
    let rhs: Vec<BigRational> = data.iter().map(|(_, v)| v.clone()).collect();

    let coefficients = match solve_linear_exact(&rows, &rhs)? {
        LinearSolution::Consistent(x) => x,
        LinearSolution::Inconsistent { row } => {
            let pair = data[row].0;
            return Err(Error::AnsatzViolated {
                degree: spec.degree,
                index: row,
                s: pair.s(),
                t: pair.t(),
            });
        }
    };
    let mut polynomial = BivariatePolynomial::zero();
    for (c, b) in coefficients.iter().zip(&basis) {
        polynomial.add_assign_ref(&b.scale(c));
    }
    let residual_check = data.iter().all(|(pair, v)| {
        let (s, t) = point(spec.mode, *pair);
        polynomial.eval(&s, &t) == *v
    });
    Ok(FitResult {
        spec: spec.clone(),
        polynomial,
        residual_check,
        data_points_used: data.len(),
        basis_size: basis.len(),
    })
}

/// Collects data along the schedule and fits, adding points while the
/// system is rank deficient.
pub fn fit_moment(spec: &FitSpec, extra: usize, engine: Engine) -> Result<FitResult> {
    spec.validate()?;
    let mut count = spec.required_points() + extra;
    loop {
        let pairs = spec.pair_schedule(count);
        let data = collect_moment_data(spec.order, &pairs, engine)?;
        match fit_polynomial(spec, &data) {
            Err(Error::Underdetermined { .. }) if count < 8 * spec.required_points() => {
                count += spec.basis().len();
            }
            other => return other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitReport {
    pub order: usize,
    pub mode: FitMode,
    pub degree: u32,
    pub polynomial: BivariatePolynomial,
    pub residual_check: bool,
    pub data_points_used: usize,
    pub basis_size: usize,
    pub spot_values: Vec<(CorePair, BigRational)>,
    pub reference: Option<TheoremId>,
    pub matches_reference: Option<bool>,
}

/// Summary of a fit, compared with a closed form when one is given.
pub fn fit_report(result: &FitResult, reference: Option<TheoremId>) -> FitReport {
    let mode = result.spec.mode;
    let spots = match mode {
        FitMode::Bivariate => [(3, 5), (1, 2)],
        FitMode::Successive => [(3, 4), (1, 2)],
    };
    let spot_values = spots
        .iter()
        .map(|&(s, t)| {
            let pair = CorePair::new(s, t).expect("coprime");
            let (x, y) = point(mode, pair);
            (pair, result.polynomial.eval(&x, &y))
        })
        .collect();
    let matches_reference = reference.map(|id| {
        let closed = id.polynomial();
        let closed = if mode == FitMode::Successive && !id.successive_only() {
            closed.substitute_t_shift(1)
        } else {
            closed
        };
        closed == result.polynomial
    });
    FitReport {
        order: result.spec.order,
        mode,
        degree: result.spec.degree,
        polynomial: result.polynomial.clone(),
        residual_check: result.residual_check,
        data_points_used: result.data_points_used,
        basis_size: result.basis_size,
        spot_values,
        reference,
        matches_reference,
    }
}

impl FitReport {
    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order,
            "mode": self.mode.name(),
            "degree": self.degree,
            "polynomial": self.polynomial.to_text(),
            "coefficients": self.polynomial.to_json(),
            "residual_check": self.residual_check,
            "data_points_used": self.data_points_used,
            "basis_size": self.basis_size,
            "spot_values": self.spot_values.iter()
                .map(|(p, v)| json!({"s": p.s(), "t": p.t(), "value": v.to_string()}))
                .collect::<Vec<_>>(),
            "reference": self.reference.map(|id| id.index()),
            "matches_reference": self.matches_reference,
        })
    }
}

impl fmt::Display for FitReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = if self.order == 1 {
            "mean".to_string()
        } else {
            format!("m_{}", self.order)
        };
        writeln!(
            f,
            "fit of {what} ({} mode, degree {})",
            self.mode.name(),
            self.degree
        )?;
        writeln!(f, "  polynomial: {}", self.polynomial)?;
        writeln!(
            f,
            "  data points: {} for {} unknowns",
            self.data_points_used, self.basis_size
        )?;
        writeln!(
            f,
            "  residuals: {}",
            if self.residual_check {
                "all zero"
            } else {
                "NONZERO"
            }
        )?;
        for (pair, v) in &self.spot_values {
            writeln!(f, "  value at {pair}: {v}")?;
        }
        if let (Some(id), Some(ok)) = (self.reference, self.matches_reference) {
            writeln!(f, "  {id}: {}", if ok { "equal" } else { "DIFFERENT" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;

    fn pair(s: u32, t: u32) -> CorePair {
        CorePair::new(s, t).unwrap()
    }

    #[test]
    fn basis_sizes() {
        let biv = |d| FitSpec::new(1, FitMode::Bivariate).with_degree(d);
        assert_eq!(biv(3).basis().len(), 6);
        assert_eq!(biv(6).basis().len(), 16);
        assert_eq!(biv(9).basis().len(), 30);
        assert_eq!(biv(9).with_symmetry(false).basis().len(), 55);
        assert_eq!(FitSpec::new(7, FitMode::Successive).basis().len(), 22);
        assert_eq!(biv(3).required_points(), 8);
    }

    #[test]
    fn schedule_order() {
        let got: Vec<_> = bivariate_schedule()
            .take(8)
            .map(|p| (p.s(), p.t()))
            .collect();
        assert_eq!(
            got,
            [
                (1, 2),
                (1, 3),
                (1, 4),
                (2, 3),
                (1, 5),
                (1, 6),
                (2, 5),
                (3, 4)
            ]
        );
        let all = CorePair::coprime_pairs_up_to(12);
        let mut scheduled: Vec<_> = bivariate_schedule()
            .take_while(|p| p.s() + p.t() <= 13)
            .collect();
        scheduled.retain(|p| p.t() <= 12);
        assert!(scheduled.iter().all(|p| all.contains(p)));
    }

    #[test]
    fn data_points() {
        let data = collect_moment_data(1, &[pair(3, 5), pair(1, 2)], Engine::Full).unwrap();
        assert_eq!(data[0].1, int(3));
        assert_eq!(data[1].1, int(0));
        let data = collect_moment_data(2, &[pair(3, 5)], Engine::Full).unwrap();
        assert_eq!(data[0].1, int(6));
    }

    #[test]
    fn constant_fit() {
        let spec = FitSpec::new(1, FitMode::Bivariate).with_degree(0);
        let data = vec![
            (pair(1, 2), int(5)),
            (pair(2, 3), int(5)),
            (pair(3, 4), int(5)),
        ];
        let fit = fit_polynomial(&spec, &data).unwrap();
        assert_eq!(fit.polynomial, BivariatePolynomial::constant(int(5)));
        assert!(fit.residual_check);
    }

    #[test]
    fn mean_rediscovered() {
        let pairs = CorePair::coprime_pairs_up_to(12);
        let data = collect_moment_data(1, &pairs, Engine::FastMoments).unwrap();
        let spec = FitSpec::new(1, FitMode::Bivariate);
        let fit = fit_polynomial(&spec, &data).unwrap();
        let report = fit_report(&fit, Some(TheoremId::new(1).unwrap()));
        assert_eq!(report.matches_reference, Some(true));
        assert_eq!(
            report.spot_values,
            vec![(pair(3, 5), int(3)), (pair(1, 2), int(0))]
        );
        let unsym = fit_polynomial(&spec.clone().with_symmetry(false), &data).unwrap();
        assert_eq!(unsym.polynomial, fit.polynomial);
    }

    #[test]
    fn variance_rediscovered_and_stable() {
        let spec = FitSpec::new(2, FitMode::Bivariate);
        let fit = fit_moment(&spec, 0, Engine::FastMoments).unwrap();
        let report = fit_report(&fit, Some(TheoremId::new(2).unwrap()));
        assert_eq!(report.matches_reference, Some(true));
        assert_eq!(report.spot_values[0].1, int(6));
        let refit = fit_moment(&spec, 12, Engine::FastMoments).unwrap();
        assert_eq!(refit.polynomial, fit.polynomial);
    }

    #[test]
    fn successive_fit_of_a_bivariate_theorem() {
        let spec = FitSpec::new(3, FitMode::Successive);
        let fit = fit_moment(&spec, 0, Engine::FastMoments).unwrap();
        assert_eq!(
            fit_report(&fit, Some(TheoremId::new(3).unwrap())).matches_reference,
            Some(true)
        );
    }

    #[test]
    fn too_low_a_degree_is_reported() {
        let spec = FitSpec::new(2, FitMode::Bivariate).with_degree(4);
        let err = fit_moment(&spec, 0, Engine::FastMoments).unwrap_err();
        assert!(
            matches!(err, Error::AnsatzViolated { degree: 4, .. }),
            "{err}"
        );
    }

    #[test]
    fn insufficient_or_bad_data() {
        let spec = FitSpec::new(1, FitMode::Bivariate);
        let data = collect_moment_data(1, &spec.pair_schedule(7), Engine::Full).unwrap();
        assert_eq!(
            fit_polynomial(&spec, &data),
            Err(Error::InsufficientData {
                have: 7,
                basis: 6,
                need: 8
            })
        );
        let loose = spec.clone().with_overdetermination(rat(6, 5));
        assert!(matches!(
            fit_polynomial(&loose, &data),
            Err(Error::InvalidFit(_))
        ));
        let mut dup = collect_moment_data(1, &spec.pair_schedule(8), Engine::Full).unwrap();
        dup[7] = dup[0].clone();
        assert!(matches!(
            fit_polynomial(&spec, &dup),
            Err(Error::InvalidFit(_))
        ));
    }
}
