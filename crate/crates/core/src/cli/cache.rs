//! On-disk cache of size polynomials and moment data.
//!
//! Polynomials live in `poly_S_T.json`. Moment data lives in `moments.json`
//! as rows `[s, t, r, numerator, denominator]`: `r = 0` holds the number of
//! cores, `r = 1` the mean and `r ≥ 2` the central moment `m_r`. Anything whose
//! core count disagrees with the closed-form count is discarded on load.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactmath::{bigint_from_json, bigint_to_json, BigInt, BigRational, QPolynomial};
use crate::moments::{pair_moments, Engine};
use crate::partitions::{anderson_count, CorePair};
use crate::pathdp::size_generating_polynomial;

/// Count, mean and central moments of one pair, indexed by `r`.
pub type MomentRow = Vec<BigRational>;

#[derive(Debug, Clone)]
pub struct Cache {
    dir: Option<PathBuf>,
}

fn count_of(pair: CorePair) -> BigRational {
    BigRational::from_integer(BigInt::from(anderson_count(pair)))
}

impl Cache {
    pub fn new(dir: Option<&Path>) -> Result<Self> {
        if let Some(d) = dir {
            fs::create_dir_all(d)?;
        }
        Ok(Cache {
            dir: dir.map(Path::to_path_buf),
        })
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn poly_path(&self, pair: CorePair) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|d| d.join(format!("poly_{}_{}.json", pair.s(), pair.t())))
    }

    fn moments_path(&self) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join("moments.json"))
    }

    fn load_polynomial(&self, pair: CorePair) -> Option<QPolynomial> {
        let text = fs::read_to_string(self.poly_path(pair)?).ok()?;
        let v: Value = serde_json::from_str(&text).ok()?;
        let f = QPolynomial::from_json(v.get("polynomial")?).ok()?;
        (f.coefficient_sum() == count_of(pair)).then_some(f)
    }

    /// The DP size polynomial, from the cache when a valid entry exists.
    pub fn size_polynomial(&self, pair: CorePair) -> Result<QPolynomial> {
        if let Some(f) = self.load_polynomial(pair) {
            return Ok(f);
        }
        let f = size_generating_polynomial(pair)?;
        if let Some(path) = self.poly_path(pair) {
            let v = json!({ "s": pair.s(), "t": pair.t(), "polynomial": f.to_json() });
            fs::write(path, serde_json::to_string(&v)?)?;
        }
        Ok(f)
    }

    fn load_moments(&self) -> BTreeMap<CorePair, MomentRow> {
        let Some(text) = self.moments_path().and_then(|p| fs::read_to_string(p).ok()) else {
            return BTreeMap::new();
        };
        let Ok(Value::Array(rows)) = serde_json::from_str::<Value>(&text) else {
            return BTreeMap::new();
        };
        let mut raw: BTreeMap<CorePair, BTreeMap<usize, BigRational>> = BTreeMap::new();
        for row in rows {
            let Some(cells) = row.as_array().filter(|c| c.len() == 5) else {
                continue;
            };
            let parsed = (|| {
                let small = |i: usize| cells[i].as_u64().and_then(|x| u32::try_from(x).ok());
                let pair = CorePair::new(small(0)?, small(1)?).ok()?;
                let den = bigint_from_json(&cells[4]).ok().filter(|d| !d.is_zero())?;
                Some((
                    pair,
                    small(2)? as usize,
                    BigRational::new(bigint_from_json(&cells[3]).ok()?, den),
                ))
            })();
            if let Some((pair, r, value)) = parsed {
                raw.entry(pair).or_default().insert(r, value);
            }
        }
        raw.into_iter()
            .filter_map(|(pair, by_r)| {
                let n = by_r.len();
                let row: MomentRow = (0..n)
                    .map(|r| by_r.get(&r).cloned())
                    .collect::<Option<_>>()?;
                (row.first() == Some(&count_of(pair))).then_some((pair, row))
            })
            .collect()
    }

    fn store_moments(&self, data: &BTreeMap<CorePair, MomentRow>) -> Result<()> {
        let Some(path) = self.moments_path() else {
            return Ok(());
        };
        let rows: Vec<Value> = data
            .iter()
            .flat_map(|(pair, row)| {
                row.iter().enumerate().map(move |(r, v)| {
                    json!([
                        pair.s(),
                        pair.t(),
                        r,
                        bigint_to_json(v.numer()),
                        bigint_to_json(v.denom())
                    ])
                })
            })
            .collect();
        fs::write(path, serde_json::to_string(&rows)?)?;
        Ok(())
    }

    /// Rows `[count, mean, m_2, .., m_order]` for each pair, in input order.
    pub fn moment_rows(
        &self,
        pairs: &[CorePair],
        order: usize,
        engine: Engine,
    ) -> Result<Vec<MomentRow>> {
        let mut known = self.load_moments();
        let missing: Vec<CorePair> = pairs
            .iter()
            .filter(|p| known.get(p).is_none_or(|row| row.len() <= order))
            .copied()
            .collect();
        let fresh = missing
            .par_iter()
            .map(|&pair| {
                let m = match engine {
                    Engine::Full => crate::moments::MomentSet::from_polynomial(
                        &self.size_polynomial(pair)?,
                        order,
                    )?,
                    _ => pair_moments(pair, order, engine)?,
                };
                let mut row = vec![m.total_count.clone(), m.mean().clone()];
                row.extend(m.central[2..].iter().cloned());
                row.truncate(order + 1);
                Ok((pair, row))
            })
            .collect::<Result<Vec<_>>>()?;
        if !fresh.is_empty() {
            known.extend(fresh);
            self.store_moments(&known)?;
        }
        pairs
            .iter()
            .map(|p| {
                known
                    .get(p)
                    .map(|row| row[..=order].to_vec())
                    .ok_or_else(|| Error::Io(format!("moment data for {p} missing")))
            })
            .collect()
    }
}
