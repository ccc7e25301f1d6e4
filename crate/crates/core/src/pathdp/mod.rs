//! Weighted lattice-path dynamic program over `(s,t)`-Dyck paths.
//!
//! Paths run from `(0,0)` to `(s,t)` with unit east/north steps and stay in
//! the region `s·j − t·i ≥ 0`. A north step leaving `(i,j)` carries the
//! monomial `q^E w^K`, where the labels `L(i′) = s·j − t·i′ − b` for `i′ ≥ i`
//! are summed into `E` (positive ones only) and counted into `K`. The table
//! obeys
//!
//! ```text
//! F(i,j) = F(i−1,j) + Wt(i,j−1) · F(i,j−1),   F(0,0) = 1,
//! ```
//!
//! and the umbral map `w^k -> q^{−k(k−1)/2}` turns the value at `(s,t)` into
//! the size generating polynomial of the `(s,t)`-cores.
//!
//! The offset `b` and which coordinate carries `s` in the label are fixed by
//! [`calibrate_conventions`] against the brute-force enumerator; the result
//! is frozen in [`Conventions::calibrated`].

mod algebra;
mod calibrate;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

pub use algebra::{
    FullPolynomials, MomentJet, MomentJets, PathCounts, SizePowerSums, WeightAlgebra,
};
pub use calibrate::{calibrate_conventions, default_candidates, Calibration};

use crate::error::{Error, Result};
use crate::exactmath::{QPolynomial, QWPolynomial, QwExp};
use crate::partitions::CorePair;

/// Which pair element multiplies the row index in the step label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `s·j − t·i′ − b`
    AsWritten,
    /// `t·j − s·i′ − b`
    Transposed,
}

impl Orientation {
    pub fn name(&self) -> &'static str {
        match self {
            Orientation::AsWritten => "as_written",
            Orientation::Transposed => "transposed",
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as_written" => Ok(Orientation::AsWritten),
            "transposed" => Ok(Orientation::Transposed),
            _ => Err(Error::Parse(format!("unknown orientation '{s}'"))),
        }
    }
}

/// An integer expression `c + a·s + b·t` for the label offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OffsetExpr {
    pub constant: i64,
    pub s_coef: i64,
    pub t_coef: i64,
}

impl OffsetExpr {
    pub const fn new(constant: i64, s_coef: i64, t_coef: i64) -> Self {
        OffsetExpr {
            constant,
            s_coef,
            t_coef,
        }
    }

    pub fn eval(&self, pair: CorePair) -> i64 {
        self.constant + self.s_coef * pair.s() as i64 + self.t_coef * pair.t() as i64
    }
}

impl fmt::Display for OffsetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (coef, var) in [(self.s_coef, "s"), (self.t_coef, "t"), (self.constant, "")] {
            if coef == 0 {
                continue;
            }
            let mag = coef.unsigned_abs();
            let body = match (mag, var) {
                (_, "") => mag.to_string(),
                (1, v) => v.to_string(),
                (m, v) => format!("{m}*{v}"),
            };
            if out.is_empty() {
                if coef < 0 {
                    out.push('-');
                }
            } else {
                out.push(if coef < 0 { '-' } else { '+' });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl FromStr for OffsetExpr {
    type Err = Error;

    /// Parses any expression of total degree at most one in `s` and `t`
    /// with integer coefficients, e.g. `s+t+1`.
    fn from_str(src: &str) -> Result<Self> {
        let p = crate::exactmath::parse_st_expression(src)?;
        let mut e = OffsetExpr::new(0, 0, 0);
        for (m, c) in p.terms() {
            if !c.is_integer() || m.s + m.t > 1 {
                return Err(Error::Parse(format!(
                    "offset '{src}' must be linear with integer coefficients"
                )));
            }
            let c: i64 = c
                .to_integer()
                .try_into()
                .map_err(|_| Error::Parse(format!("offset coefficient too large in '{src}'")))?;
            match (m.s, m.t) {
                (0, 0) => e.constant = c,
                (1, 0) => e.s_coef = c,
                _ => e.t_coef = c,
            }
        }
        Ok(e)
    }
}

/// A label offset expression together with an orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Conventions {
    pub offset: OffsetExpr,
    pub orientation: Orientation,
}

impl Conventions {
    /// The conventions selected by calibration over all pairs `s < t ≤ 8`.
    /// `calibration_is_unique_and_frozen` re-derives them.
    pub const fn calibrated() -> Self {
        Conventions {
            offset: OffsetExpr::new(0, 0, 1),
            orientation: Orientation::AsWritten,
        }
    }
}

/// Conventions specialised to one pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DPConfig {
    pub pair: CorePair,
    pub offset_b: i64,
    pub orientation: Orientation,
}

impl DPConfig {
    pub fn new(pair: CorePair, conventions: Conventions) -> Self {
        DPConfig {
            pair,
            offset_b: conventions.offset.eval(pair),
            orientation: conventions.orientation,
        }
    }

    pub fn calibrated(pair: CorePair) -> Self {
        Self::new(pair, Conventions::calibrated())
    }

    fn label(&self, i: i64, j: i64) -> Option<i64> {
        let (s, t) = (self.pair.s() as i64, self.pair.t() as i64);
        let (row_coef, col_coef) = match self.orientation {
            Orientation::AsWritten => (s, t),
            Orientation::Transposed => (t, s),
        };
        row_coef
            .checked_mul(j)?
            .checked_sub(col_coef.checked_mul(i)?)?
            .checked_sub(self.offset_b)
    }

    /// Sum `E` and count `K` of the positive labels `L(i′)`, `i′ ≥ i`.
    pub fn label_sums(&self, i: u32, j: u32) -> Result<(i64, u32)> {
        let mut sum: i64 = 0;
        let mut count: u32 = 0;
        let mut ip = i as i64;
        // labels strictly decrease in i′
        loop {
            let l = self.label(ip, j as i64).ok_or(Error::ExponentOverflow)?;
            if l <= 0 {
                return Ok((sum, count));
            }
            sum = sum.checked_add(l).ok_or(Error::ExponentOverflow)?;
            count += 1;
            ip += 1;
        }
    }

    /// Lowest row of column `i` inside the region `s·j ≥ t·i`.
    fn column_floor(&self, i: u32) -> u32 {
        let (s, t) = (self.pair.s() as u64, self.pair.t() as u64);
        (t * i as u64).div_ceil(s) as u32
    }
}

/// The monomial weight of the north step leaving `(i, j)`.
pub fn step_weight(cfg: &DPConfig, i: u32, j: u32) -> Result<QWPolynomial> {
    let (e, k) = cfg.label_sums(i, j)?;
    Ok(QWPolynomial::qw_monomial(e, k))
}

/// Runs the recurrence column by column, keeping only the previous column.
pub fn run_dp<A: WeightAlgebra>(cfg: &DPConfig, alg: &A) -> Result<A::Value> {
    let mut last = None;
    sweep(cfg, alg, |i, j, v| {
        if i == cfg.pair.s() && j == cfg.pair.t() {
            last = Some(v.clone());
        }
    })?;
    Ok(last.expect("terminal point lies on the boundary line"))
}

fn sweep<A: WeightAlgebra>(
    cfg: &DPConfig,
    alg: &A,
    mut visit: impl FnMut(u32, u32, &A::Value),
) -> Result<()> {
    let (s, t) = (cfg.pair.s(), cfg.pair.t());
    let mut prev: Vec<Option<A::Value>> = vec![None; t as usize + 1];
    for i in 0..=s {
        let floor = cfg.column_floor(i);
        let mut cur: Vec<Option<A::Value>> = vec![None; t as usize + 1];
        for j in floor..=t {
            let mut v = if i == 0 && j == 0 {
                alg.one()
            } else {
                alg.zero()
            };
            if let Some(left) = &prev[j as usize] {
                alg.add_assign(&mut v, left);
            }
            if j > floor {
                let below = cur[j as usize - 1]
                    .as_ref()
                    .expect("cell below is in region");
                let (e, k) = cfg.label_sums(i, j - 1)?;
                alg.add_assign(&mut v, &alg.mul_monomial(below, e, k)?);
            }
            visit(i, j, &v);
            cur[j as usize] = Some(v);
        }
        prev = cur;
    }
    Ok(())
}

/// Every cell of the table; debug counterpart of [`run_dp`].
#[derive(Debug, Clone)]
pub struct DPTable {
    pub config: DPConfig,
    pub cells: BTreeMap<(u32, u32), QWPolynomial>,
}

impl DPTable {
    pub fn build(cfg: &DPConfig) -> Result<Self> {
        let mut cells = BTreeMap::new();
        sweep(cfg, &FullPolynomials, |i, j, v| {
            cells.insert((i, j), v.clone());
        })?;
        Ok(DPTable {
            config: *cfg,
            cells,
        })
    }

    /// Value at `(i, j)`; zero outside the region.
    pub fn get(&self, i: i64, j: i64) -> QWPolynomial {
        if i < 0 || j < 0 {
            return QWPolynomial::zero();
        }
        self.cells
            .get(&(i as u32, j as u32))
            .cloned()
            .unwrap_or_default()
    }

    /// Cells violating the recurrence or the initial condition.
    pub fn recurrence_violations(&self) -> Result<Vec<(u32, u32)>> {
        let mut bad = Vec::new();
        for (&(i, j), v) in &self.cells {
            let expected = if (i, j) == (0, 0) {
                QWPolynomial::one()
            } else {
                let mut e = self.get(i as i64 - 1, j as i64);
                if j > 0 && self.cells.contains_key(&(i, j - 1)) {
                    e.add_assign_ref(
                        &(&step_weight(&self.config, i, j - 1)?
                            * &self.get(i as i64, j as i64 - 1)),
                    );
                }
                e
            };
            if expected != *v {
                bad.push((i, j));
            }
        }
        Ok(bad)
    }
}

/// `F_{s,t}(s,t)(q,w)` under the given configuration.
pub fn weight_enumerator(cfg: &DPConfig) -> Result<QWPolynomial> {
    run_dp(cfg, &FullPolynomials)
}

fn umbral_shift(k: u32) -> i64 {
    let k = k as i64;
    k * (k - 1) / 2
}

/// `w^k -> q^{−k(k−1)/2}`, combining like terms.
pub fn umbral_substitute(f: &QWPolynomial) -> QPolynomial {
    QPolynomial::from_terms(f.terms().map(|(m, c)| (m.q - umbral_shift(m.w), c.clone())))
}

/// Terms `q^e w^k` with `e < k(k−1)/2`; empty when the umbral image is a
/// polynomial term by term.
pub fn umbral_violations(f: &QWPolynomial) -> Vec<QwExp> {
    f.terms()
        .map(|(m, _)| *m)
        .filter(|m| m.q < umbral_shift(m.w))
        .collect()
}

/// Generating polynomial of core sizes under explicit conventions.
pub fn size_generating_polynomial_with(cfg: &DPConfig) -> Result<QPolynomial> {
    Ok(umbral_substitute(&weight_enumerator(cfg)?))
}

/// `Σ q^{|λ|}` over all `(s,t)`-cores, via the calibrated DP.
pub fn size_generating_polynomial(pair: CorePair) -> Result<QPolynomial> {
    size_generating_polynomial_with(&DPConfig::calibrated(pair))
}

/// Number of `(s,t)`-Dyck paths: the DP evaluated at `q = w = 1`.
pub fn path_count(pair: CorePair) -> Result<BigUint> {
    run_dp(&DPConfig::calibrated(pair), &PathCounts)
}

/// Power sums `Σ |λ|^r`, `r = 0..=order`, through per-`w`-degree jets.
pub fn size_power_sums(pair: CorePair, order: usize) -> Result<SizePowerSums> {
    let alg = MomentJets::new(order);
    let jet = run_dp(&DPConfig::calibrated(pair), &alg)?;
    Ok(alg.size_power_sums(&jet))
}
