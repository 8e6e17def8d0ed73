//! Candidate maps `r(x, y) = (λ_x(y), ρ_y(x))` on `{0, …, n-1}` and verified
//! idempotent left non-degenerate solutions.
//!
//! Tables are stored as `lambda[x][y] = λ_x(y)` and `rho[x][y] = ρ_y(x)`, so
//! that `r(x, y) = (lambda[x][y], rho[x][y])`. A product `λ_a λ_b` of
//! permutations always means "apply `λ_b` first".

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Discrepancy, Error, Result};
use crate::perm::{self, Perm, Point};

/// Largest `n` for which the brute-force relabeling search is allowed.
pub const MAX_ISO_N: usize = 7;

/// Raw candidate data. `lambda[x]` need not be bijective.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RMap {
    pub n: usize,
    pub lambda: Vec<Vec<Point>>,
    pub rho: Vec<Vec<Point>>,
}

/// The identities evaluated by [`check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    Ybe1,
    Ybe2,
    Ybe3,
    LeftNondegenerate,
    Idempotent,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Identity::Ybe1 => "YB1",
            Identity::Ybe2 => "YB2",
            Identity::Ybe3 => "YB3",
            Identity::LeftNondegenerate => "left non-degeneracy",
            Identity::Idempotent => "r^2 = r",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub identity: Identity,
    /// `[x, y, z]` for the braid identities, `[x, y]` for idempotency and
    /// `[x]` (the index of a non-bijective `λ_x`) for non-degeneracy.
    pub points: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub ybe1: bool,
    pub ybe2: bool,
    pub ybe3: bool,
    pub left_nondegenerate: bool,
    pub idempotent: bool,
    pub first_counterexample: Option<Counterexample>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.ybe1 && self.ybe2 && self.ybe3 && self.left_nondegenerate && self.idempotent
    }

    pub fn summary(&self) -> String {
        match &self.first_counterexample {
            None => "all identities hold".to_owned(),
            Some(c) => format!("{} fails at {:?}", c.identity, c.points),
        }
    }
}

impl RMap {
    /// Validates shapes and ranges.
    pub fn new(n: usize, lambda: Vec<Vec<Point>>, rho: Vec<Vec<Point>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Malformed("n must be positive".into()));
        }
        for (name, t) in [("lambda", &lambda), ("rho", &rho)] {
            if t.len() != n || t.iter().any(|row| row.len() != n) {
                return Err(Error::Malformed(format!("{name} must be an {n}x{n} table")));
            }
            if t.iter().flatten().any(|&v| v >= n) {
                return Err(Error::Malformed(format!("{name} has an entry outside 0..{n}")));
            }
        }
        Ok(RMap { n, lambda, rho })
    }

    /// Candidate with `ρ_y(x) = q(λ_x(y))`, where `q(x)` is the first
    /// preimage of `x` under `λ_x` (or `x` itself if there is none).
    pub fn from_lambda(n: usize, lambda: Vec<Vec<Point>>) -> Result<Self> {
        let rho = vec![vec![0; n]; n];
        let mut m = RMap::new(n, lambda, rho)?;
        let q: Vec<Point> = (0..n)
            .map(|x| m.lambda[x].iter().position(|&v| v == x).unwrap_or(x))
            .collect();
        for x in 0..n {
            for y in 0..n {
                m.rho[x][y] = q[m.lambda[x][y]];
            }
        }
        Ok(m)
    }

    #[inline]
    fn lam(&self, x: Point, y: Point) -> Point {
        self.lambda[x][y]
    }

    /// `ρ_y(x)`.
    #[inline]
    fn rho_at(&self, y: Point, x: Point) -> Point {
        self.rho[x][y]
    }
}

/// `r(x, y) = (λ_x(y), ρ_y(x))`.
pub fn apply_r(m: &RMap, x: Point, y: Point) -> Result<(Point, Point)> {
    if x >= m.n || y >= m.n {
        return Err(Error::arg(format!("point out of range for n = {}", m.n)));
    }
    Ok((m.lambda[x][y], m.rho[x][y]))
}

/// Exhaustively evaluates the braid relations, non-degeneracy and `r² = r`.
pub fn check(m: &RMap) -> VerificationReport {
    let n = m.n;
    let mut first: Option<Counterexample> = None;
    let mut note = |identity: Identity, points: Vec<Point>| {
        if first.is_none() {
            first = Some(Counterexample { identity, points });
        }
    };

    let (mut ybe1, mut ybe2, mut ybe3) = (true, true, true);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if ybe1 && !ybe1_holds(m, x, y, z) {
                    ybe1 = false;
                    note(Identity::Ybe1, vec![x, y, z]);
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if ybe2 && !ybe2_holds(m, x, y, z) {
                    ybe2 = false;
                    note(Identity::Ybe2, vec![x, y, z]);
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if ybe3 && !ybe3_holds(m, x, y, z) {
                    ybe3 = false;
                    note(Identity::Ybe3, vec![x, y, z]);
                }
            }
        }
    }
    let bad_lambda = (0..n).find(|&x| !perm::is_bijection(&m.lambda[x]));
    if let Some(x) = bad_lambda {
        note(Identity::LeftNondegenerate, vec![x]);
    }
    let bad_pair = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| !idempotent_holds(m, x, y));
    if let Some((x, y)) = bad_pair {
        note(Identity::Idempotent, vec![x, y]);
    }

    VerificationReport {
        ybe1,
        ybe2,
        ybe3,
        left_nondegenerate: bad_lambda.is_none(),
        idempotent: bad_pair.is_none(),
        first_counterexample: first,
    }
}

/// Re-evaluates a single identity at the given points.
pub fn identity_holds(m: &RMap, identity: Identity, points: &[Point]) -> bool {
    match (identity, points) {
        (Identity::Ybe1, &[x, y, z]) => ybe1_holds(m, x, y, z),
        (Identity::Ybe2, &[x, y, z]) => ybe2_holds(m, x, y, z),
        (Identity::Ybe3, &[x, y, z]) => ybe3_holds(m, x, y, z),
        (Identity::LeftNondegenerate, &[x]) => perm::is_bijection(&m.lambda[x]),
        (Identity::Idempotent, &[x, y]) => idempotent_holds(m, x, y),
        _ => panic!("wrong arity for {identity}"),
    }
}

// λ_x λ_y (z) = λ_{λ_x(y)} λ_{ρ_y(x)} (z)
fn ybe1_holds(m: &RMap, x: Point, y: Point, z: Point) -> bool {
    m.lam(x, m.lam(y, z)) == m.lam(m.lam(x, y), m.lam(m.rho_at(y, x), z))
}

// λ_{ρ_{λ_y(z)}(x)}(ρ_z(y)) = ρ_{λ_{ρ_y(x)}(z)}(λ_x(y))
fn ybe2_holds(m: &RMap, x: Point, y: Point, z: Point) -> bool {
    let lhs = m.lam(m.rho_at(m.lam(y, z), x), m.rho_at(z, y));
    let rhs = m.rho_at(m.lam(m.rho_at(y, x), z), m.lam(x, y));
    lhs == rhs
}

// ρ_z(ρ_y(x)) = ρ_{ρ_z(y)}(ρ_{λ_y(z)}(x))
fn ybe3_holds(m: &RMap, x: Point, y: Point, z: Point) -> bool {
    m.rho_at(z, m.rho_at(y, x)) == m.rho_at(m.rho_at(z, y), m.rho_at(m.lam(y, z), x))
}

// λ_{λ_x(y)}(ρ_y(x)) = λ_x(y) and ρ_{ρ_y(x)}(λ_x(y)) = ρ_y(x)
fn idempotent_holds(m: &RMap, x: Point, y: Point) -> bool {
    let (a, b) = (m.lam(x, y), m.rho_at(y, x));
    m.lam(a, b) == a && m.rho_at(b, a) == b
}

/// A verified finite idempotent left non-degenerate solution.
///
/// `d` is the exact exponent of the group generated by the `λ_x`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Solution {
    n: usize,
    lambda: Vec<Perm>,
    rho: Vec<Vec<Point>>,
    q: Vec<Point>,
    d: usize,
}

impl fmt::Debug for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lam: Vec<_> = self.lambda.iter().map(Perm::images).collect();
        f.debug_struct("Solution")
            .field("n", &self.n)
            .field("lambda", &lam)
            .field("q", &self.q)
            .field("d", &self.d)
            .finish()
    }
}

/// Verifies `m` and builds the solution together with `q` and `d`.
pub fn promote(m: &RMap) -> Result<Solution> {
    let report = check(m);
    if !report.is_valid() {
        return Err(Error::Rejected(Box::new(report)));
    }
    let n = m.n;
    let lambda: Vec<Perm> = m
        .lambda
        .iter()
        .map(|row| Perm::from_images(row.clone()))
        .collect::<Result<_>>()?;
    let q: Vec<Point> = (0..n).map(|x| lambda[x].inverse().apply(x)).collect();
    for x in 0..n {
        for y in 0..n {
            if m.rho[x][y] != q[lambda[x].apply(y)] {
                return Err(Discrepancy::new(
                    "(r2=r) forces rho_y(x) = q(lambda_x(y))",
                    "rho table differs from q∘lambda on a verified map",
                    vec![x, y],
                )
                .into());
            }
        }
    }
    let d = perm::exponent(&lambda)?;
    Ok(Solution {
        n,
        lambda,
        rho: m.rho.clone(),
        q,
        d,
    })
}

impl Solution {
    /// Verifies the solution given by its λ-permutations, with `ρ = q∘λ`.
    pub fn from_lambdas(lambda: &[Perm]) -> Result<Self> {
        let n = lambda.len();
        if lambda.iter().any(|l| l.len() != n) {
            return Err(Error::Malformed("each lambda must act on n points".into()));
        }
        let rows = lambda.iter().map(|l| l.images().to_vec()).collect();
        promote(&RMap::from_lambda(n, rows)?)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn q(&self) -> &[Point] {
        &self.q
    }

    #[inline]
    pub fn lambda(&self, x: Point) -> &Perm {
        &self.lambda[x]
    }

    pub fn lambdas(&self) -> &[Perm] {
        &self.lambda
    }

    /// `rho[x][y] = ρ_y(x)`.
    pub fn rho_table(&self) -> &[Vec<Point>] {
        &self.rho
    }

    pub fn lambda_table(&self) -> Vec<Vec<Point>> {
        self.lambda.iter().map(|l| l.images().to_vec()).collect()
    }

    pub fn to_rmap(&self) -> RMap {
        RMap {
            n: self.n,
            lambda: self.lambda_table(),
            rho: self.rho.clone(),
        }
    }

    /// `Λ`, the image of `q`, in increasing order.
    pub fn diagonal_image(&self) -> Vec<Point> {
        let mut v = self.q.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Row-major flattening of the λ-table.
    pub fn flat_lambda(&self) -> Vec<Point> {
        self.lambda.iter().flat_map(|l| l.images().iter().copied()).collect()
    }

    /// Applies `λ_{kx}` to `y` without materialising the permutation.
    ///
    /// `λ_{kx} = λ_x λ_{q(x)} ⋯ λ_{q^{k-1}(x)}`; `k = 0` gives the identity.
    pub fn lambda_word_apply(&self, x: Point, k: usize, mut y: Point) -> Point {
        let mut path = Vec::with_capacity(k);
        let mut p = x;
        for _ in 0..k {
            path.push(p);
            p = self.q[p];
        }
        for &p in path.iter().rev() {
            y = self.lambda[p].apply(y);
        }
        y
    }
}

/// `λ_{kx}`, via `λ_{(k+1)x} = λ_{kx} ∘ λ_{q^k(x)}`.
pub fn lambda_word(s: &Solution, x: Point, k: usize) -> Result<Perm> {
    if k == 0 {
        return Err(Error::arg("lambda_word needs k >= 1"));
    }
    if x >= s.n {
        return Err(Error::arg(format!("point {x} out of range")));
    }
    let mut acc = s.lambda[x].clone();
    let mut qk = s.q[x];
    for _ in 1..k {
        acc = acc.compose(&s.lambda[qk]);
        qk = s.q[qk];
    }
    Ok(acc)
}

/// `q^k(x)` by repeated application of `q`.
pub fn q_power(s: &Solution, x: Point, k: usize) -> Point {
    (0..k).fold(x, |p, _| s.q[p])
}

/// A relabeling `ψ` with `λ'_{ψ(x)} = ψ λ_x ψ⁻¹`, if one exists. The first
/// such `ψ` in lexicographic order is returned.
pub fn iso_check(s1: &Solution, s2: &Solution) -> Result<Option<Perm>> {
    if s1.n != s2.n {
        return Err(Error::arg(format!(
            "size mismatch: {} vs {}",
            s1.n, s2.n
        )));
    }
    if s1.n > MAX_ISO_N {
        return Err(Error::Size {
            what: "isomorphism search",
            n: s1.n,
            limit: MAX_ISO_N,
        });
    }
    if s1.d != s2.d || s1.diagonal_image().len() != s2.diagonal_image().len() {
        return Ok(None);
    }
    Ok(Perm::all(s1.n).find(|psi| is_relabeling(s1, s2, psi)))
}

fn is_relabeling(s1: &Solution, s2: &Solution, psi: &Perm) -> bool {
    (0..s1.n).all(|x| {
        let target = &s2.lambda[psi.apply(x)];
        (0..s1.n).all(|y| target.apply(psi.apply(y)) == psi.apply(s1.lambda[x].apply(y)))
    })
}

/// The λ-table of `s` relabeled by `psi`, flattened row-major.
pub fn relabel_flat(s: &Solution, psi: &Perm) -> Vec<Point> {
    relabel_table(s.n, &s.flat_lambda(), psi)
}

pub(crate) fn relabel_table(n: usize, flat: &[Point], psi: &Perm) -> Vec<Point> {
    let mut out = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            out[psi.apply(x) * n + psi.apply(y)] = psi.apply(flat[x * n + y]);
        }
    }
    out
}

/// Lexicographically least flattened λ-table over all relabelings.
pub fn canonical_form(s: &Solution) -> Result<Vec<Point>> {
    if s.n > MAX_ISO_N {
        return Err(Error::Size {
            what: "canonical form",
            n: s.n,
            limit: MAX_ISO_N,
        });
    }
    let flat = s.flat_lambda();
    Ok(Perm::all(s.n)
        .map(|psi| relabel_table(s.n, &flat, &psi))
        .min()
        .expect("Sym(n) is nonempty"))
}

/// On-disk solution format: `{"n", "lambda", "rho"?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub n: usize,
    pub lambda: Vec<Vec<Point>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<Vec<Vec<Point>>>,
}

impl SolutionFile {
    pub fn to_rmap(&self) -> Result<RMap> {
        match &self.rho {
            Some(rho) => RMap::new(self.n, self.lambda.clone(), rho.clone()),
            None => RMap::from_lambda(self.n, self.lambda.clone()),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

impl From<&RMap> for SolutionFile {
    fn from(m: &RMap) -> Self {
        SolutionFile {
            n: m.n,
            lambda: m.lambda.clone(),
            rho: Some(m.rho.clone()),
        }
    }
}

impl From<&Solution> for SolutionFile {
    fn from(s: &Solution) -> Self {
        (&s.to_rmap()).into()
    }
}

impl Serialize for Solution {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        SolutionFile::from(self).serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Solution {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let file = SolutionFile::deserialize(de)?;
        file.to_rmap()
            .and_then(|m| promote(&m))
            .map_err(serde::de::Error::custom)
    }
}
