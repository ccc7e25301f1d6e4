use serde_json::{json, Value};

use super::{size_generating_polynomial_with, Conventions, DPConfig, OffsetExpr, Orientation};
use crate::error::{Error, Result};
use crate::exactmath::{int, QPolynomial};
use crate::partitions::{size_multiset, CorePair};

/// The outcome of a successful calibration run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Calibration {
    pub conventions: Conventions,
    pub pairs_checked: Vec<CorePair>,
}

impl Calibration {
    /// `{offset_b, orientation, pairs_checked}`.
    pub fn to_json(&self) -> Value {
        json!({
            "offset_b": self.conventions.offset.to_string(),
            "orientation": self.conventions.orientation.name(),
            "pairs_checked": self.pairs_checked.iter().map(|p| [p.s(), p.t()]).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |k: &str| {
            v.get(k)
                .ok_or_else(|| Error::Parse(format!("calibration is missing '{k}'")))
        };
        let offset: OffsetExpr = field("offset_b")?
            .as_str()
            .ok_or_else(|| Error::Parse("offset_b must be a string".into()))?
            .parse()?;
        let orientation: Orientation = field("orientation")?
            .as_str()
            .ok_or_else(|| Error::Parse("orientation must be a string".into()))?
            .parse()?;
        let pairs_checked = field("pairs_checked")?
            .as_array()
            .ok_or_else(|| Error::Parse("pairs_checked must be a list".into()))?
            .iter()
            .map(|p| {
                let st: Vec<u32> = serde_json::from_value(p.clone())?;
                match st.as_slice() {
                    [s, t] => CorePair::new(*s, *t),
                    _ => Err(Error::Parse(format!("bad pair {p}"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Calibration {
            conventions: Conventions {
                offset,
                orientation,
            },
            pairs_checked,
        })
    }
}

/// Offsets that must always be among the candidates.
pub fn required_candidates() -> Vec<OffsetExpr> {
    vec![
        OffsetExpr::new(0, 0, 0),
        OffsetExpr::new(1, 0, 0),
        OffsetExpr::new(0, 1, 0),
        OffsetExpr::new(0, 0, 1),
        OffsetExpr::new(0, 1, 1),
        OffsetExpr::new(1, 1, 1),
    ]
}

/// The required offsets plus their immediate neighbours.
pub fn default_candidates() -> Vec<OffsetExpr> {
    let mut out = required_candidates();
    out.extend([
        OffsetExpr::new(-1, 0, 0),
        OffsetExpr::new(1, 1, 0),
        OffsetExpr::new(-1, 1, 0),
        OffsetExpr::new(1, 0, 1),
        OffsetExpr::new(-1, 0, 1),
        OffsetExpr::new(-1, 1, 1),
    ]);
    out
}

fn oracle_polynomial(pair: CorePair) -> QPolynomial {
    QPolynomial::from_terms(size_multiset(pair).into_iter().map(|n| (n as i64, int(1))))
}

/// Finds the unique offset and orientation for which the DP reproduces the
/// enumerated size polynomial of every pair `s < t ≤ max_t`.
pub fn calibrate_conventions(candidates: &[OffsetExpr], max_t: u32) -> Result<Calibration> {
    if let Some(missing) = required_candidates()
        .iter()
        .find(|c| !candidates.contains(c))
    {
        return Err(Error::Calibration(format!(
            "candidate list must include offset {missing}"
        )));
    }
    let pairs = CorePair::coprime_pairs_up_to(max_t);
    if pairs.is_empty() {
        return Err(Error::Calibration(format!(
            "no coprime pairs with t <= {max_t}"
        )));
    }
    let oracle: Vec<QPolynomial> = pairs.iter().map(|&p| oracle_polynomial(p)).collect();

    let mut matches = Vec::new();
    let mut misses = Vec::new();
    for orientation in [Orientation::AsWritten, Orientation::Transposed] {
        for &offset in candidates {
            let conventions = Conventions {
                offset,
                orientation,
            };
            let mismatch = pairs.iter().zip(&oracle).find_map(|(&pair, want)| {
                match size_generating_polynomial_with(&DPConfig::new(pair, conventions)) {
                    Ok(got) if got == *want => None,
                    Ok(got) => Some(format!(
                        "{pair}: dp {} vs oracle {}",
                        abbreviate(&got.to_text()),
                        want
                    )),
                    Err(e) => Some(format!("{pair}: {e}")),
                }
            });
            match mismatch {
                None => matches.push(conventions),
                Some(diff) => misses.push(format!("b={offset} {orientation}: {diff}")),
            }
        }
    }

    match matches.as_slice() {
        [only] => Ok(Calibration {
            conventions: *only,
            pairs_checked: pairs,
        }),
        [] => Err(Error::Calibration(format!(
            "no candidate matches:\n{}",
            misses.join("\n")
        ))),
        many => Err(Error::Calibration(format!(
            "{} candidates match every pair up to t = {max_t}; widen the range: {}",
            many.len(),
            many.iter()
                .map(|c| format!("b={} {}", c.offset, c.orientation))
                .collect::<Vec<_>>()
                .join(", ")
        ))),
    }
}

fn abbreviate(text: &str) -> String {
    if text.len() > 80 {
        format!("{}...", &text[..80])
    } else {
        text.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calibration_is_unique_and_frozen() {
        let cal = calibrate_conventions(&default_candidates(), 8).unwrap();
        assert_eq!(cal.conventions, Conventions::calibrated());
        assert_eq!(
            cal.pairs_checked.len(),
            CorePair::coprime_pairs_up_to(8).len()
        );
    }

    #[test]
    fn missing_required_candidate_is_rejected() {
        let err = calibrate_conventions(&required_candidates()[1..], 8).unwrap_err();
        assert!(matches!(err, Error::Calibration(_)));
    }

    #[test]
    fn too_small_a_range_is_ambiguous_or_reported() {
        // With t <= 2 only (1,2) is checked and every offset reproduces it.
        let err = calibrate_conventions(&default_candidates(), 2).unwrap_err();
        assert!(err.to_string().contains("widen the range"), "{err}");
    }

    #[test]
    fn report_round_trips_through_json() {
        let cal = Calibration {
            conventions: Conventions::calibrated(),
            pairs_checked: vec![CorePair::new(2, 3).unwrap(), CorePair::new(3, 5).unwrap()],
        };
        let v = cal.to_json();
        assert_eq!(v["offset_b"], "t");
        assert_eq!(v["orientation"], "as_written");
        assert_eq!(Calibration::from_json(&v).unwrap(), cal);
    }
}
