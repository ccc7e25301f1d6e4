use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Outcome of an exact overdetermined solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    /// Every row is satisfied by this unique solution.
    Consistent(Vec<BigRational>),
    /// No solution; `row` is an original row index that cannot be satisfied.
    Inconsistent { row: usize },
}

fn height(x: &BigRational) -> u64 {
    x.numer().bits() + x.denom().bits()
}

/// Solves `A x = b` exactly for a tall matrix with full column rank.
///
/// Gaussian elimination with the pivot of smallest numerator/denominator
/// height in each column. Rows left over after elimination must reduce to
/// `0 = 0`; the first that does not is reported as inconsistent.
pub fn solve_linear_exact(a: &[Vec<BigRational>], b: &[BigRational]) -> Result<LinearSolution> {
    let rows = a.len();
    assert_eq!(
        rows,
        b.len(),
        "matrix and right-hand side disagree in length"
    );
    let cols = a.first().map_or(0, Vec::len);
    assert!(a.iter().all(|r| r.len() == cols), "ragged matrix");
    if rows < cols {
        return Err(Error::TooFewRows {
            rows,
            columns: cols,
        });
    }

    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(r, rhs)| {
            let mut row = r.clone();
            row.push(rhs.clone());
            row
        })
        .collect();
    let mut origin: Vec<usize> = (0..rows).collect();

    for col in 0..cols {
        let pivot = (col..rows)
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| height(&m[r][col]))
            .ok_or(Error::Underdetermined { column: col })?;
        m.swap(col, pivot);
        origin.swap(col, pivot);

        let inv = m[col][col].recip();
        for x in m[col][col..].iter_mut() {
            *x *= &inv;
        }
        let (upper, lower) = m.split_at_mut(col + 1);
        let (before, pivot) = upper.split_at_mut(col);
        let pivot_row = &pivot[0];
        for row in before.iter_mut().chain(lower.iter_mut()) {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &factor * p;
            }
        }
    }

    if let Some(r) = (cols..rows).find(|&r| !m[r][cols].is_zero()) {
        return Ok(LinearSolution::Inconsistent { row: origin[r] });
    }

    let x: Vec<BigRational> = (0..cols).map(|i| m[i][cols].clone()).collect();
    debug_assert!(a.iter().zip(b).all(|(row, rhs)| {
        row.iter()
            .zip(&x)
            .fold(BigRational::zero(), |acc, (p, q)| acc + p * q)
            == *rhs
    }));
    Ok(LinearSolution::Consistent(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn identity_system() {
        let a = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        assert_eq!(
            solve_linear_exact(&a, &[int(3), int(6)]).unwrap(),
            LinearSolution::Consistent(vec![int(3), int(6)])
        );
    }

    #[test]
    fn constant_fit() {
        let a = vec![vec![int(1)]; 3];
        assert_eq!(
            solve_linear_exact(&a, &[int(5), int(5), int(5)]).unwrap(),
            LinearSolution::Consistent(vec![int(5)])
        );
        let a = vec![vec![int(1)]; 2];
        assert_eq!(
            solve_linear_exact(&a, &[int(5), int(6)]).unwrap(),
            LinearSolution::Inconsistent { row: 1 }
        );
    }

    #[test]
    fn rank_deficiency_and_shape_errors() {
        let a = vec![
            vec![int(1), int(2)],
            vec![int(2), int(4)],
            vec![int(3), int(6)],
        ];
        assert_eq!(
            solve_linear_exact(&a, &[int(1), int(2), int(3)]),
            Err(Error::Underdetermined { column: 1 })
        );
        let a = vec![vec![int(1), int(2)]];
        assert_eq!(
            solve_linear_exact(&a, &[int(1)]),
            Err(Error::TooFewRows {
                rows: 1,
                columns: 2
            })
        );
    }

    #[test]
    fn recovers_a_quadratic_with_rational_coefficients() {
        // 1/3 - x/2 + 7x^2/5 sampled at six points.
        let f = |x: i64| rat(1, 3) - rat(x, 2) + rat(7 * x * x, 5);
        let a: Vec<_> = (0..6).map(|x| vec![int(1), int(x), int(x * x)]).collect();
        let b: Vec<_> = (0..6).map(f).collect();
        assert_eq!(
            solve_linear_exact(&a, &b).unwrap(),
            LinearSolution::Consistent(vec![rat(1, 3), rat(-1, 2), rat(7, 5)])
        );
    }

    proptest! {
        #[test]
        fn consistent_solutions_satisfy_every_row(
            x in proptest::collection::vec(-20i64..20, 3),
            extra in proptest::collection::vec(proptest::collection::vec(-9i64..9, 3), 0..4),
        ) {
            // Vandermonde block guarantees full column rank.
            let mut a: Vec<Vec<BigRational>> = (1..=3).map(|p: i64| vec![int(1), int(p), int(p * p)]).collect();
            a.extend(extra.iter().map(|r| r.iter().map(|&v| int(v)).collect()));
            let b: Vec<BigRational> = a
                .iter()
                .map(|row| row.iter().zip(&x).fold(BigRational::zero(), |acc, (p, &q)| acc + p * int(q)))
                .collect();
            match solve_linear_exact(&a, &b).unwrap() {
                LinearSolution::Consistent(sol) => {
                    prop_assert_eq!(&sol, &x.iter().map(|&v| int(v)).collect::<Vec<_>>());
                    for (row, rhs) in a.iter().zip(&b) {
                        let lhs = row.iter().zip(&sol).fold(BigRational::zero(), |acc, (p, q)| acc + p * q);
                        prop_assert_eq!(&lhs, rhs);
                    }
                }
                other => prop_assert!(false, "unexpected {:?}", other),
            }
        }
    }
}
