//! Permutations of `{0, …, n-1}` and the exponent of the group they generate.
//!
//! Composition follows the functional convention: `a.compose(&b)` is the map
//! `y ↦ a(b(y))`, i.e. `b` is applied first.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point = usize;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct Perm(Vec<Point>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// Builds a permutation from its image list, rejecting non-bijections.
    pub fn from_images(images: Vec<Point>) -> Result<Self> {
        if !is_bijection(&images) {
            return Err(Error::arg(format!("{images:?} is not a permutation")));
        }
        Ok(Perm(images))
    }

    /// Transposition `(a b)` on `n` points.
    pub fn transposition(n: usize, a: Point, b: Point) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(a, b);
        p
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn images(&self) -> &[Point] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, x: Point) -> Point {
        self.0[x]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Perm(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Self {
        Perm(other.0.iter().map(|&y| self.0[y]).collect())
    }

    /// `psi ∘ self ∘ psi⁻¹`.
    pub fn conjugate_by(&self, psi: &Perm) -> Self {
        let mut out = vec![0; self.len()];
        for x in 0..self.len() {
            out[psi.apply(x)] = psi.apply(self.apply(x));
        }
        Perm(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = Point> + '_ {
        self.0.iter().enumerate().filter(|(i, &x)| *i == x).map(|(i, _)| i)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::identity(self.len());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    /// Order as the lcm of the cycle lengths.
    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.len()];
        let mut ord = 1;
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x];
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }

    /// Every permutation of `n` points, in lexicographic order of images.
    pub fn all(n: usize) -> impl Iterator<Item = Perm> {
        (0..n).permutations(n).map(Perm)
    }

    pub fn into_images(self) -> Vec<Point> {
        self.0
    }
}

impl TryFrom<Vec<Point>> for Perm {
    type Error = Error;

    fn try_from(v: Vec<Point>) -> Result<Self> {
        Perm::from_images(v)
    }
}

impl From<Perm> for Vec<Point> {
    fn from(p: Perm) -> Self {
        p.0
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

pub(crate) fn is_bijection(images: &[Point]) -> bool {
    let mut seen = vec![false; images.len()];
    for &y in images {
        if y >= images.len() || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    true
}

/// All elements of the group generated by `gens`, found by breadth-first
/// closure under composition with the generators.
pub fn closure(gens: &[Perm]) -> Result<Vec<Perm>> {
    let n = match gens.first() {
        Some(g) => g.len(),
        None => return Err(Error::arg("empty generating set")),
    };
    if gens.iter().any(|g| g.len() != n) {
        return Err(Error::arg("generators act on different point sets"));
    }
    let id = Perm::identity(n);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for h in gens {
            let gh = h.compose(&g);
            if seen.insert(gh.clone()) {
                order.push(gh.clone());
                queue.push_back(gh);
            }
        }
    }
    Ok(order)
}

/// Exponent (lcm of element orders) of the group generated by `gens`.
pub fn exponent(gens: &[Perm]) -> Result<usize> {
    Ok(closure(gens)?.iter().map(Perm::order).fold(1, lcm))
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
