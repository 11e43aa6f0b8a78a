//! Exact sparse Gaussian elimination over the rationals.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::rational::Rational;

pub type SparseRow = BTreeMap<usize, Rational>;

/// Solves `A x = b` for square `A` given as sparse rows. Returns `None` when
/// `A` is singular.
///
/// Rows are eliminated in column order with the first nonzero pivot, so a
/// system that is already triangular incurs no fill-in.
pub fn solve(mut rows: Vec<SparseRow>, mut rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = rows.len();
    assert_eq!(rhs.len(), n, "right-hand side length");
    for r in &mut rows {
        r.retain(|_, v| !v.is_zero());
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| rows[r].contains_key(&col))?;
        rows.swap(col, pivot);
        rhs.swap(col, pivot);
        let (head, tail) = rows.split_at_mut(col + 1);
        let prow = &head[col];
        let pval = prow[&col].clone();
        for (offset, row) in tail.iter_mut().enumerate() {
            let Some(v) = row.remove(&col) else { continue };
            let factor = v / &pval;
            for (&j, a) in prow.range(col + 1..) {
                let e = row.entry(j).or_insert_with(Rational::zero);
                *e -= &factor * a;
                if e.is_zero() {
                    row.remove(&j);
                }
            }
            let delta = &factor * &rhs[col];
            rhs[col + 1 + offset] -= delta;
        }
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = rhs[i].clone();
        for (&j, a) in rows[i].range(i + 1..) {
            acc -= a * &x[j];
        }
        x[i] = acc / &rows[i][&i];
    }
    Some(x)
}
