//! Exact nullspace computation over the rationals for small dense systems.

use num_rational::Rational64;
use num_traits::{One, Zero};

/// Reduces `rows` (each of length `cols`) to reduced row echelon form in
/// place and returns the pivot columns.
pub fn rref(rows: &mut [Vec<Rational64>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c];
                let pivot = rows[r].clone();
                for (v, p) in rows[i].iter_mut().zip(&pivot) {
                    *v -= f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// A basis of `{v : A v = 0}`, one vector per free column, with that free
/// coordinate set to 1.
pub fn nullspace(a: &[Vec<Rational64>], cols: usize) -> Vec<Vec<Rational64>> {
    let mut rows: Vec<Vec<Rational64>> = a.to_vec();
    let pivots = rref(&mut rows, cols);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational64::zero(); cols];
            v[free] = Rational64::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[i][free];
            }
            v
        })
        .collect()
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<Rational64>], v: &[Rational64]) -> bool {
    let cols = v.len();
    let mut rows = basis.to_vec();
    let rank = rref(&mut rows, cols).len();
    rows.push(v.to_vec());
    rref(&mut rows, cols).len() == rank
}
