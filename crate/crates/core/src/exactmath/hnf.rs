//! Row-style Hermite normal form over Z with a unimodular transformation
//! matrix: H = U*M, H upper triangular with positive pivots and the entries
//! above each pivot reduced into [0, pivot).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::exactmath::matrix::IntMatrix;

pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
}

/// HNF of a full-row-rank integer matrix. `RankDeficient` if the rows are
/// dependent over Q.
pub fn hermite_normal_form(m: &IntMatrix) -> Result<Hnf, Error> {
    let (h, u, rank) = hnf_with_rank(m);
    if rank < m.rows() {
        return Err(Error::RankDeficient);
    }
    Ok(Hnf { h, u })
}

/// Row echelon HNF for matrices of any rank. Returns (H, U, rank) with
/// H = U*M, det U = +-1; rows at index >= rank are zero.
pub(crate) fn hnf_with_rank(m: &IntMatrix) -> (IntMatrix, IntMatrix, usize) {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivot_row = 0usize;
    let mut pivots: Vec<(usize, usize)> = Vec::new();

    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        // move a nonzero entry into the pivot position
        let found = (pivot_row..rows).find(|&i| !h.at(i, col).is_zero());
        let Some(first) = found else { continue };
        h.swap_rows(pivot_row, first);
        u.swap_rows(pivot_row, first);

        // clear below the pivot with unimodular 2x2 gcd transforms
        for i in pivot_row + 1..rows {
            if h.at(i, col).is_zero() {
                continue;
            }
            let a = h.at(pivot_row, col).clone();
            let b = h.at(i, col).clone();
            let ext = a.extended_gcd(&b);
            let (g, s, t) = (ext.gcd, ext.x, ext.y);
            let a_g = &a / &g;
            let b_g = &b / &g;
            // [[s, t], [-b/g, a/g]] has determinant +1
            combine_rows(&mut h, pivot_row, i, &s, &t, &-&b_g, &a_g);
            combine_rows(&mut u, pivot_row, i, &s, &t, &-&b_g, &a_g);
        }

        if h.at(pivot_row, col).is_negative() {
            negate_row(&mut h, pivot_row);
            negate_row(&mut u, pivot_row);
        }

        // reduce earlier rows above this pivot into [0, pivot)
        let p = h.at(pivot_row, col).clone();
        for i in 0..pivot_row {
            let q = h.at(i, col).div_floor(&p);
            if q.is_zero() {
                continue;
            }
            subtract_multiple(&mut h, i, pivot_row, &q);
            subtract_multiple(&mut u, i, pivot_row, &q);
        }

        pivots.push((pivot_row, col));
        pivot_row += 1;
    }

    (h, u, pivot_row)
}

/// Replace rows (r1, r2) by (s*r1 + t*r2, x*r1 + y*r2).
fn combine_rows(
    m: &mut IntMatrix,
    r1: usize,
    r2: usize,
    s: &BigInt,
    t: &BigInt,
    x: &BigInt,
    y: &BigInt,
) {
    for j in 0..m.cols() {
        let a = m.at(r1, j).clone();
        let b = m.at(r2, j).clone();
        m.set(r1, j, s * &a + t * &b);
        m.set(r2, j, x * &a + y * &b);
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for j in 0..m.cols() {
        let v = -m.at(r, j);
        m.set(r, j, v);
    }
}

fn subtract_multiple(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    for j in 0..m.cols() {
        let v = m.at(target, j) - q * m.at(source, j);
        m.set(target, j, v);
    }
}

/// Shape predicate used by tests: upper triangular with positive pivots and
/// reduced entries above each pivot.
pub fn is_hnf(h: &IntMatrix) -> bool {
    let mut prev_col: Option<usize> = None;
    for i in 0..h.rows() {
        let lead = (0..h.cols()).find(|&j| !h.at(i, j).is_zero());
        let Some(col) = lead else {
            // zero rows only allowed at the bottom
            return (i..h.rows())
                .all(|r| (0..h.cols()).all(|j| h.at(r, j).is_zero()));
        };
        if let Some(p) = prev_col {
            if col <= p {
                return false;
            }
        }
        if h.at(i, col).is_negative() {
            return false;
        }
        for r in 0..i {
            let e = h.at(r, col);
            if e.is_negative() || e >= h.at(i, col) {
                return false;
            }
        }
        prev_col = Some(col);
    }
    true
}
