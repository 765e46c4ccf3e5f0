use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::IntMatrix;

/// `P * A * Q = B` with `P`, `Q` unimodular and `B` diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmithDecomposition {
    #[serde(rename = "P")]
    pub p: IntMatrix,
    #[serde(rename = "Q")]
    pub q: IntMatrix,
    #[serde(rename = "B")]
    pub b: IntMatrix,
    /// Diagonal of `B`: non-negative, `a_1 | a_2 | ...`, zeros last.
    #[serde(serialize_with = "crate::json::big_vec_as_strings")]
    pub factors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.factors.iter().filter(|a| !a.is_zero()).count()
    }
}

/// Smallest non-zero `|entry|` in the trailing block starting at `(t, t)`;
/// ties go to the lowest `(row, col)`.
fn find_pivot(b: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..b.rows() {
        for j in t..b.cols() {
            let v = &b[(i, j)];
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if b[(bi, bj)].abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows(), a.cols());
    let mut b = a.clone();
    let mut p = IntMatrix::identity(rows);
    let mut q = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = find_pivot(&b, t) else {
                break;
            };
            b.swap_rows(t, pi);
            p.swap_rows(t, pi);
            b.swap_cols(t, pj);
            q.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let f = b[(i, t)].div_floor(&b[(t, t)]);
                if !f.is_zero() {
                    let neg = -f;
                    b.add_row_multiple(i, t, &neg);
                    p.add_row_multiple(i, t, &neg);
                }
                clean &= b[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let f = b[(t, j)].div_floor(&b[(t, t)]);
                if !f.is_zero() {
                    let neg = -f;
                    b.add_col_multiple(j, t, &neg);
                    q.add_col_multiple(j, t, &neg);
                }
                clean &= b[(t, j)].is_zero();
            }
            if !clean {
                // a smaller remainder now exists; re-pivot on it
                continue;
            }

            let pivot = b[(t, t)].clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !b[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    b.add_row_multiple(t, i, &one);
                    p.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if b[(t, t)].is_negative() {
            b.negate_row(t);
            p.negate_row(t);
        }
    }

    let factors = (0..rows.min(cols)).map(|i| b[(i, i)].clone()).collect();
    SmithDecomposition { p, q, b, factors }
}
