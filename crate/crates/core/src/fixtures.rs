//! Small named solutions used throughout the tests, docs and CLI examples.
//!
//! Only the λ-tables are written down here; `ρ`, `q` and `d` are always
//! derived and verified by [`promote`](crate::solution::promote).

use crate::perm::Perm;
use crate::solution::Solution;

fn build(rows: &[&[usize]]) -> Solution {
    let lambdas: Vec<Perm> = rows
        .iter()
        .map(|r| Perm::from_images(r.to_vec()).expect("fixture rows are permutations"))
        .collect();
    Solution::from_lambdas(&lambdas).expect("fixtures are verified solutions")
}

/// `n = 1`.
pub fn triv() -> Solution {
    build(&[&[0]])
}

/// `λ_0 = λ_1 = (0 1)`, so `r(x, y) = (swap(y), y)`.
pub fn swap2() -> Solution {
    build(&[&[1, 0], &[1, 0]])
}

/// `λ_x(y) = x + y mod 2`.
pub fn z2() -> Solution {
    build(&[&[0, 1], &[1, 0]])
}

/// `λ_x(y) = x - y mod 3`.
pub fn z3inv() -> Solution {
    build(&[&[0, 2, 1], &[1, 0, 2], &[2, 1, 0]])
}

/// All `λ_x = id`, so `r(x, y) = (y, y)`.
pub fn proj3() -> Solution {
    build(&[&[0, 1, 2], &[0, 1, 2], &[0, 1, 2]])
}

pub fn all() -> Vec<(&'static str, Solution)> {
    vec![
        ("triv", triv()),
        ("swap2", swap2()),
        ("z2", z2()),
        ("z3inv", z3inv()),
        ("proj3", proj3()),
    ]
}
