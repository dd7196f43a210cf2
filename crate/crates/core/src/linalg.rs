//! Fraction-free integer elimination.
//!
//! Rows are combined as `p * row - c * pivot_row` (scaled by the gcd of `p`
//! and `c`) and then divided by their content, so every entry stays an exact
//! integer and no rational arithmetic is needed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Brings `mat` to row echelon form in place and returns the pivot column of
/// each nonzero row. The number of pivots is the rank.
pub fn row_echelon(mat: &mut [Vec<BigInt>]) -> Vec<usize> {
    let rows = mat.len();
    let cols = mat.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // smallest nonzero entry keeps the numbers small
        let Some(p) = (r..rows).filter(|&i| !mat[i][c].is_zero()).min_by_key(|&i| mat[i][c].abs()) else {
            continue;
        };
        mat.swap(r, p);
        let (head, tail) = mat.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let g = pivot_row[c].gcd(&row[c]);
            let m_row = &pivot_row[c] / &g;
            let m_piv = &row[c] / &g;
            for (dst, src) in row.iter_mut().zip(pivot_row).skip(c) {
                *dst = &*dst * &m_row - src * &m_piv;
            }
            reduce_content(row);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn reduce_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g > BigInt::from(1) {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Exact rank of the matrix whose rows are `rows`.
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut mat = rows.to_vec();
    row_echelon(&mut mat).len()
}

/// Solves `sum_k x_k * columns[k] == rhs` for integers `x`.
///
/// Returns `None` when there is no solution, when the solution is not unique
/// (dependent columns), or when the unique rational solution is not integral.
pub fn solve_integer(columns: &[Vec<BigInt>], rhs: &[BigInt]) -> Option<Vec<BigInt>> {
    let k = columns.len();
    let m = rhs.len();
    debug_assert!(columns.iter().all(|c| c.len() == m));
    let mut mat: Vec<Vec<BigInt>> = (0..m)
        .map(|i| columns.iter().map(|col| col[i].clone()).chain(std::iter::once(rhs[i].clone())).collect())
        .collect();
    let pivots = row_echelon(&mut mat);
    if pivots.len() != k || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    let mut x = vec![BigInt::zero(); k];
    for i in (0..k).rev() {
        let row = &mat[i];
        let mut acc = row[k].clone();
        for j in i + 1..k {
            acc -= &row[j] * &x[j];
        }
        let (q, rem) = acc.div_rem(&row[i]);
        if !rem.is_zero() {
            return None;
        }
        x[i] = q;
    }
    Some(x)
}
