//! Smith normal form over the integers.
//!
//! For an integer matrix `M` this computes unimodular `U`, `V` and a diagonal
//! `D = U·M·V` whose nonzero diagonal entries are positive and satisfy
//! `d₁ | d₂ | …`. The diagonal is the invariant-factor presentation of the
//! cokernel `Zᵐ / M·Zⁿ`, which is how finite abelian groups are canonicalized.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub left: IntMatrix,
    pub diagonal: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d₁, …, d_min(m,n)`, zeros included.
    pub fn diagonal_entries(&self) -> Vec<BigInt> {
        let k = self.diagonal.rows().min(self.diagonal.cols());
        (0..k).map(|i| self.diagonal[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let (p, q, r, s) = bezout_block(&a[(t, t)], &a[(i, t)]);
                a.combine_rows(t, i, &p, &q, &r, &s);
                u.combine_rows(t, i, &p, &q, &r, &s);
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let (p, q, r, s) = bezout_block(&a[(t, t)], &a[(t, j)]);
                a.combine_cols(t, j, &p, &q, &r, &s);
                v.combine_cols(t, j, &p, &q, &r, &s);
            }
            if (t + 1..rows).any(|i| !a[(i, t)].is_zero()) {
                continue;
            }
            // Pivot must divide the whole trailing block; otherwise fold the
            // offending row into row t and eliminate again with a smaller gcd.
            let pivot = a[(t, t)].clone();
            let bad_row = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match bad_row {
                Some(i) => {
                    a.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }

        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    SmithForm {
        left: u,
        diagonal: a,
        right: v,
    }
}

fn smallest_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Unimodular 2×2 block `[[p, q], [r, s]]` sending `(x, y)` to `(gcd, 0)`.
fn bezout_block(x: &BigInt, y: &BigInt) -> (BigInt, BigInt, BigInt, BigInt) {
    let e = x.extended_gcd(y);
    let g = e.gcd;
    (e.x, e.y, -(y / &g), x / &g)
}
