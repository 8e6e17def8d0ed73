//! Arithmetic in the structure monoid `M(X, r)` and in the groups of
//! quotients `G_u` of its cancellative components.
//!
//! Every element of the structure semigroup is determined by its length `k`
//! and last letter `x`; it is written `(k, x)` and stands for
//! `(kx, λ_{kx})`. Multiplication is `(k, x)∘(l, y) = (k + l, λ_{kx}(y))`.

use std::collections::{BTreeSet, HashMap};

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Discrepancy, Error, Result};
use crate::invariants;
use crate::linalg;
use crate::perm::{Perm, Point};
use crate::solution::{self, q_power, Solution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MElem {
    /// Length; `0` is the identity.
    pub k: usize,
    /// Last letter, `0` for the identity.
    pub x: Point,
}

impl MElem {
    pub const IDENTITY: MElem = MElem { k: 0, x: 0 };

    pub fn new(k: usize, x: Point) -> Self {
        if k == 0 {
            Self::IDENTITY
        } else {
            MElem { k, x }
        }
    }

    pub fn generator(x: Point) -> Self {
        MElem { k: 1, x }
    }

    pub fn is_identity(&self) -> bool {
        self.k == 0
    }
}

pub fn mul(s: &Solution, a: MElem, b: MElem) -> MElem {
    if a.is_identity() {
        return b;
    }
    if b.is_identity() {
        return a;
    }
    MElem::new(a.k + b.k, s.lambda_word_apply(a.x, a.k, b.x))
}

pub fn pow(s: &Solution, a: MElem, j: usize) -> MElem {
    (0..j).fold(MElem::IDENTITY, |acc, _| mul(s, acc, a))
}

/// The monoid element of a word `x₁x₂⋯x_k`.
pub fn word_element(s: &Solution, word: &[Point]) -> MElem {
    word.iter()
        .fold(MElem::IDENTITY, |acc, &z| mul(s, acc, MElem::generator(z)))
}

/// `u ∈ Λ` with `a ∈ S_u`, i.e. `q^k(x)`.
pub fn component(s: &Solution, a: MElem) -> Result<Point> {
    if a.is_identity() {
        return Err(Error::arg("the identity lies in no component"));
    }
    Ok(q_power(s, a.x, a.k))
}

/// Cached `λ_{kx}` for `1 ≤ k ≤ max_k`.
pub struct LambdaTable<'a> {
    s: &'a Solution,
    table: Vec<Vec<Perm>>,
}

impl<'a> LambdaTable<'a> {
    pub fn new(s: &'a Solution, max_k: usize) -> Self {
        let mut table: Vec<Vec<Perm>> = Vec::with_capacity(max_k);
        if max_k > 0 {
            table.push(s.lambdas().to_vec());
        }
        for k in 1..max_k {
            let row = (0..s.n())
                .map(|x| table[k - 1][x].compose(s.lambda(q_power(s, x, k))))
                .collect();
            table.push(row);
        }
        LambdaTable { s, table }
    }

    pub fn get(&self, k: usize, x: Point) -> &Perm {
        &self.table[k - 1][x]
    }

    pub fn mul(&self, a: MElem, b: MElem) -> MElem {
        if a.is_identity() {
            return b;
        }
        if b.is_identity() {
            return a;
        }
        match self.table.get(a.k - 1) {
            Some(row) => MElem::new(a.k + b.k, row[a.x].apply(b.x)),
            None => mul(self.s, a, b),
        }
    }
}

/// `σ_y(x) = λ_y ρ_{λ_x⁻¹(y)}(x)`, which must equal `y`.
pub fn sigma(s: &Solution, y: Point, x: Point) -> Result<Point> {
    let rho = s.rho_table();
    let inner = rho[x][s.lambda(x).inverse().apply(y)];
    let v = s.lambda(y).apply(inner);
    if v != y {
        return Err(Discrepancy::new(
            "derived monoid relation x + y = y + y",
            format!("sigma_{y}({x}) = {v}"),
            vec![y, x],
        )
        .into());
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NormalForm {
    pub length: usize,
    /// `x'` with `t^{length-1}∘x'` equal to the word.
    pub letter: Point,
    /// The word as a monoid element `(length, last letter)`.
    pub element: MElem,
}

/// Rewrites a word as `t^{k-1}∘x'` by the iteration `x ← λ_t⁻¹(λ_y(z))`.
pub fn normal_form(s: &Solution, word: &[Point], t: Point) -> Result<NormalForm> {
    let (&first, rest) = word
        .split_first()
        .ok_or_else(|| Error::arg("normal_form needs a nonempty word"))?;
    if word.iter().chain([&t]).any(|&p| p >= s.n()) {
        return Err(Error::arg("letter out of range"));
    }
    let t_inv = s.lambda(t).inverse();
    let letter = rest
        .iter()
        .fold(first, |y, &z| t_inv.apply(s.lambda(y).apply(z)));
    let element = word_element(s, word);
    let k = word.len();
    let rebuilt = mul(s, pow(s, MElem::generator(t), k - 1), MElem::generator(letter));
    if rebuilt != element {
        return Err(Discrepancy::new(
            "Prop. stralg: w = t^{n-1}∘x",
            format!("t^(k-1)∘{letter} = {rebuilt:?} but the word is {element:?}"),
            word.to_vec(),
        )
        .into());
    }
    Ok(NormalForm {
        length: k,
        letter,
        element,
    })
}

/// Per-degree element counts computed two independent ways.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthReport {
    /// Distinct `(k, x)` values reached by multiplying out every word.
    pub model: Vec<usize>,
    /// Congruence classes of free words under `xy ~ λ_x(y)ρ_y(x)`.
    pub oracle: Vec<usize>,
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
        }
    }
}

/// Class representative of every word of length `len`, under the
/// congruence generated by the defining relations. Words are encoded in
/// base `n`, most significant letter first. Uses only the λ and ρ tables.
pub fn congruence_classes(s: &Solution, len: usize) -> Vec<u32> {
    let n = s.n();
    let lam = s.lambda_table();
    let rho = s.rho_table();
    let total = n.pow(len as u32);
    let mut uf = UnionFind::new(total);
    let mut digits = vec![0usize; len];
    for w in 0..total {
        let mut v = w;
        for i in (0..len).rev() {
            digits[i] = v % n;
            v /= n;
        }
        let mut place = total / n;
        for i in 0..len.saturating_sub(1) {
            let next_place = place / n;
            let (a, b) = (digits[i], digits[i + 1]);
            let (c, e) = (lam[a][b], rho[a][b]);
            if (c, e) != (a, b) {
                let rewritten = w - a * place - b * next_place + c * place + e * next_place;
                uf.union(w as u32, rewritten as u32);
            }
            place = next_place;
        }
    }
    (0..total as u32).map(|w| uf.find(w)).collect()
}

pub fn growth(s: &Solution, max_len: usize) -> Result<GrowthReport> {
    if max_len == 0 {
        return Err(Error::arg("growth needs a positive length bound"));
    }
    let n = s.n();
    let table = LambdaTable::new(s, max_len);
    let mut model = Vec::with_capacity(max_len);
    let mut oracle = Vec::with_capacity(max_len);
    // elements[w] for every word of the current length
    let mut elements: Vec<MElem> = vec![MElem::IDENTITY];
    for len in 1..=max_len {
        elements = elements
            .iter()
            .flat_map(|&e| (0..n).map(move |z| (e, z)))
            .map(|(e, z)| table.mul(e, MElem::generator(z)))
            .collect();
        let classes = congruence_classes(s, len);
        let mut class_elem: HashMap<u32, MElem> = HashMap::new();
        for (w, &c) in classes.iter().enumerate() {
            let e = *class_elem.entry(c).or_insert(elements[w]);
            if e != elements[w] {
                return Err(Discrepancy::new(
                    "the (length, last letter) model is well defined on word classes",
                    format!("congruent words map to {e:?} and {:?}", elements[w]),
                    vec![len, w],
                )
                .into());
            }
        }
        let distinct: BTreeSet<MElem> = elements.iter().copied().collect();
        model.push(distinct.len());
        oracle.push(class_elem.len());
        if distinct.len() != class_elem.len() || distinct.len() != n {
            return Err(Discrepancy::new(
                "Prop. stralg: exactly |X| elements of each positive length",
                format!(
                    "length {len}: {} model elements, {} word classes",
                    distinct.len(),
                    class_elem.len()
                ),
                vec![len],
            )
            .into());
        }
    }
    Ok(GrowthReport { model, oracle })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `a∘c = b∘c`.
    Right,
    /// `c∘a = c∘b`.
    Left,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CancellationWitness {
    pub side: Side,
    pub a: MElem,
    pub b: MElem,
    pub c: MElem,
}

impl CancellationWitness {
    pub fn is_valid(&self, s: &Solution) -> bool {
        let (lhs, rhs) = match self.side {
            Side::Right => (mul(s, self.a, self.c), mul(s, self.b, self.c)),
            Side::Left => (mul(s, self.c, self.a), mul(s, self.c, self.b)),
        };
        self.a != self.b && lhs == rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CancellationReport {
    pub max_len: usize,
    pub cancellative: bool,
    pub witness: Option<CancellationWitness>,
    pub lambda_singleton: bool,
}

/// Brute-force two-sided cancellation over all elements of length ≤ `max_len`.
pub fn is_cancellative(s: &Solution, max_len: usize) -> Result<CancellationReport> {
    let n = s.n();
    let table = LambdaTable::new(s, max_len);
    let elems: Vec<MElem> = (1..=max_len)
        .flat_map(|k| (0..n).map(move |x| MElem::new(k, x)))
        .collect();
    let mut witness = None;
    'outer: for &c in &elems {
        let mut right: HashMap<MElem, MElem> = HashMap::new();
        let mut left: HashMap<MElem, MElem> = HashMap::new();
        for &a in &elems {
            if let Some(&b) = right.get(&table.mul(a, c)) {
                witness = Some(CancellationWitness { side: Side::Right, a: b, b: a, c });
                break 'outer;
            }
            right.insert(table.mul(a, c), a);
            if let Some(&b) = left.get(&table.mul(c, a)) {
                witness = Some(CancellationWitness { side: Side::Left, a: b, b: a, c });
                break 'outer;
            }
            left.insert(table.mul(c, a), a);
        }
    }
    let lambda_singleton = s.diagonal_image().len() == 1;
    let cancellative = witness.is_none();
    if max_len > 2 * s.d() && cancellative != lambda_singleton {
        return Err(Discrepancy::new(
            "Lemma quotientgroup: S is cancellative iff |Lambda| = 1",
            format!("cancellative = {cancellative}, |Lambda| = 1 is {lambda_singleton}"),
            vec![max_len],
        )
        .into());
    }
    Ok(CancellationReport {
        max_len,
        cancellative,
        witness,
        lambda_singleton,
    })
}

/// A basis (over ℚ) of the degree-`deg` central elements of `K[M]`; vector
/// entry `x` is the coefficient of `(deg, x)`.
pub fn center_basis(s: &Solution, deg: usize) -> Result<Vec<Vec<Rational64>>> {
    if deg == 0 {
        return Err(Error::arg("center_basis needs a positive degree"));
    }
    let n = s.n();
    let mut rows = Vec::with_capacity(n * n);
    for g in 0..n {
        // α∘g − g∘α, coefficient of (deg + 1, z)
        let mut block = vec![vec![Rational64::zero(); n]; n];
        for x in 0..n {
            block[s.lambda_word_apply(x, deg, g)][x] += Rational64::one();
            block[s.lambda(g).apply(x)][x] -= Rational64::one();
        }
        rows.extend(block);
    }
    Ok(linalg::nullspace(&rows, n))
}

/// Whether the single basis element `(deg, x)` is central.
pub fn center_contains(basis: &[Vec<Rational64>], x: Point, n: usize) -> bool {
    let mut e = vec![Rational64::zero(); n];
    e[x] = Rational64::one();
    linalg::in_span(basis, &e)
}

/// An element `(k, x)∘c_u^{-m}` of `G_u`, kept with `1 ≤ k ≤ d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GQElem {
    pub u: Point,
    pub k: usize,
    pub x: Point,
    pub m: i64,
}

impl GQElem {
    pub fn degree(&self, d: usize) -> i64 {
        self.k as i64 - d as i64 * self.m
    }

    /// Uses `c_u∘(l, y) = (l + d, y)` to bring `k` into `1..=d`.
    fn reduced(u: Point, k: usize, x: Point, m: i64, d: usize) -> Self {
        let kr = (k - 1) % d + 1;
        GQElem {
            u,
            k: kr,
            x,
            m: m - ((k - kr) / d) as i64,
        }
    }

    /// For degree-zero elements, the point `x` with `self = t_{u,x}`.
    pub fn torsion_point(&self, d: usize) -> Option<Point> {
        (self.k == d && self.m == 1).then_some(self.x)
    }
}

pub fn gq_from_melem(s: &Solution, a: MElem) -> Result<GQElem> {
    let u = component(s, a)?;
    Ok(GQElem::reduced(u, a.k, a.x, 0, s.d()))
}

/// `t_{u,x} = (dx, λ_{dx})∘c_u^{-1}` for `x ∈ X_u`.
pub fn gq_torsion(s: &Solution, u: Point, x: Point) -> GQElem {
    GQElem { u, k: s.d(), x, m: 1 }
}

pub fn gq_identity(s: &Solution, u: Point) -> GQElem {
    gq_torsion(s, u, u)
}

/// `(a∘c_u^{-m})∘(b∘c_v^{-m'}) = (a∘b)∘c_v^{-(m+m')}`.
pub fn gq_mul(s: &Solution, a: GQElem, b: GQElem) -> GQElem {
    let x = s.lambda_word_apply(a.x, a.k, b.x);
    GQElem::reduced(b.u, a.k + b.k, x, a.m + b.m, s.d())
}

/// `((k,x)∘c^{-m})⁻¹ = (k,x)^{2d-1}∘c^{-(2k-m)}`, using `(k,x)^d = c^k`.
pub fn gq_inverse(s: &Solution, a: GQElem) -> GQElem {
    let d = s.d();
    let p = pow(s, MElem::new(a.k, a.x), 2 * d - 1);
    GQElem::reduced(a.u, p.k, p.x, 2 * a.k as i64 - a.m, d)
}

pub fn gq_pow(s: &Solution, a: GQElem, j: i64) -> GQElem {
    let base = if j < 0 { gq_inverse(s, a) } else { a };
    (0..j.unsigned_abs()).fold(gq_identity(s, a.u), |acc, _| gq_mul(s, acc, base))
}

/// All canonical elements of `G_u` of the given degree.
pub fn gq_elements_of_degree(s: &Solution, u: Point, degree: i64) -> Vec<GQElem> {
    let d = s.d() as i64;
    let k = (degree - 1).rem_euclid(d) + 1;
    let m = (k - degree) / d;
    (0..s.n())
        .filter(|&x| q_power(s, x, k as usize) == u)
        .map(|x| GQElem { u, k: k as usize, x, m })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugationAction {
    pub u: Point,
    /// Smallest `x` with `q(x) = u`.
    pub x_u: Point,
    /// `y ↦ z` with `x_u∘t_{u,y}∘x_u⁻¹ = t_{u,z}`.
    pub map: Vec<(Point, Point)>,
    pub order: usize,
}

pub fn conjugation_action(s: &Solution, u: Point) -> Result<ConjugationAction> {
    let d = s.d();
    let tor = invariants::torsion(s, u)?;
    let x_u = (0..s.n())
        .find(|&x| s.q()[x] == u)
        .expect("u lies in the image of q");
    let g = gq_from_melem(s, MElem::generator(x_u))?;
    let g_inv = gq_inverse(s, g);
    let claim = "Lemma quotientgroup (4): conjugation by x_u is an automorphism of T(G_u)";

    let mut map = Vec::with_capacity(tor.order());
    for &y in &tor.elements {
        let c = gq_mul(s, gq_mul(s, g, gq_torsion(s, u, y)), g_inv);
        match c.torsion_point(d) {
            Some(z) if tor.elements.contains(&z) => map.push((y, z)),
            _ => {
                return Err(Discrepancy::new(claim, format!("conjugate {c:?} is not torsion"), vec![u, y]).into())
            }
        }
    }
    let image = |y: Point| map.iter().find(|(a, _)| *a == y).map(|&(_, b)| b).unwrap();
    let targets: BTreeSet<Point> = map.iter().map(|&(_, z)| z).collect();
    if targets.len() != map.len() {
        return Err(Discrepancy::new(claim, "not injective", vec![u]).into());
    }
    for &a in &tor.elements {
        for &b in &tor.elements {
            if image(tor.mul(a, b)) != tor.mul(image(a), image(b)) {
                return Err(Discrepancy::new(claim, "not a homomorphism", vec![u, a, b]).into());
            }
        }
    }
    let mut order = 1;
    while !tor.elements.iter().all(|&y| (0..order).fold(y, |p, _| image(p)) == y) {
        order += 1;
    }
    if !d.is_multiple_of(order) {
        return Err(Discrepancy::new(
            "conjugation by x_u has order dividing d",
            format!("order {order}, d = {d}"),
            vec![u],
        )
        .into());
    }

    // G_u = T(G_u) ⋊ ⟨x_u⟩: every element of degree j is uniquely t∘x_u^j.
    for j in -(d as i64)..=(d as i64) {
        let xj = gq_pow(s, g, j);
        let products: BTreeSet<GQElem> = tor
            .elements
            .iter()
            .map(|&y| gq_mul(s, gq_torsion(s, u, y), xj))
            .collect();
        let expected: BTreeSet<GQElem> = gq_elements_of_degree(s, u, j).into_iter().collect();
        if products != expected {
            return Err(Discrepancy::new(
                "Lemma quotientgroup: G_u ≅ T(G_u) ⋊ <x_u>",
                format!("degree {j}: torsion∘x_u^j does not enumerate G_u uniquely"),
                vec![u],
            )
            .into());
        }
    }

    Ok(ConjugationAction { u, x_u, map, order })
}

/// `λ_{du} = id` for every `u ∈ Λ`; returns the first `u` where it fails.
pub fn lambda_du_identity(s: &Solution) -> Result<()> {
    for u in s.diagonal_image() {
        if !solution::lambda_word(s, u, s.d())?.is_identity() {
            return Err(Discrepancy::new(
                "Lemma quotientgroup: lambda_{du} = id",
                "lambda_{du} is not the identity",
                vec![u],
            )
            .into());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn me(k: usize, x: usize) -> MElem {
        MElem::new(k, x)
    }

    fn r(v: i64) -> Rational64 {
        Rational64::from_integer(v)
    }

    #[test]
    fn mul_examples() {
        assert_eq!(mul(&fixtures::z2(), me(1, 1), me(1, 1)), me(2, 0));
        assert_eq!(mul(&fixtures::z2(), MElem::IDENTITY, me(3, 1)), me(3, 1));
        assert_eq!(mul(&fixtures::swap2(), me(1, 0), me(1, 0)), me(2, 1));
    }

    #[test]
    fn component_examples() {
        let sw = fixtures::swap2();
        assert_eq!(component(&sw, me(2, 0)).unwrap(), 0);
        assert_eq!(component(&sw, me(1, 0)).unwrap(), 1);
        let prod = mul(&sw, me(2, 0), me(1, 0));
        assert_eq!(prod, me(3, 0));
        assert_eq!(component(&sw, prod).unwrap(), 1);
        assert!(component(&sw, MElem::IDENTITY).is_err());
        assert_eq!(component(&fixtures::z2(), me(5, 1)).unwrap(), 0);
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&fixtures::z2(), 0, 1).unwrap(), 0);
        assert_eq!(sigma(&fixtures::triv(), 0, 0).unwrap(), 0);
        assert_eq!(sigma(&fixtures::z3inv(), 2, 1).unwrap(), 2);
    }

    #[test]
    fn normal_form_examples() {
        let nf = normal_form(&fixtures::z2(), &[1, 1], 0).unwrap();
        assert_eq!((nf.length, nf.letter, nf.element), (2, 0, me(2, 0)));
        let nf = normal_form(&fixtures::z3inv(), &[2], 1).unwrap();
        assert_eq!((nf.length, nf.letter), (1, 2));
        // (1,1)∘(1,0) = (2,1) = (1,0)∘(1,0): letter 0, element (2,1)
        let nf = normal_form(&fixtures::swap2(), &[0, 0], 1).unwrap();
        assert_eq!((nf.length, nf.letter, nf.element), (2, 0, me(2, 1)));
        assert!(normal_form(&fixtures::z2(), &[], 0).is_err());
    }

    #[test]
    fn growth_examples() {
        assert_eq!(growth(&fixtures::z2(), 4).unwrap().oracle, vec![2; 4]);
        assert_eq!(growth(&fixtures::triv(), 3).unwrap().oracle, vec![1; 3]);
        let g = growth(&fixtures::proj3(), 2).unwrap();
        assert_eq!((g.model, g.oracle), (vec![3, 3], vec![3, 3]));
    }

    #[test]
    fn cancellation_examples() {
        let rep = is_cancellative(&fixtures::z2(), 5).unwrap();
        assert!(rep.cancellative && rep.lambda_singleton);

        let sw = fixtures::swap2();
        let rep = is_cancellative(&sw, 5).unwrap();
        assert!(!rep.cancellative);
        assert!(rep.witness.unwrap().is_valid(&sw));
        let cited = CancellationWitness { side: Side::Right, a: me(2, 0), b: me(2, 1), c: me(1, 0) };
        assert!(cited.is_valid(&sw));
        assert_eq!(mul(&sw, me(2, 0), me(1, 0)), me(3, 0));

        assert!(is_cancellative(&fixtures::triv(), 3).unwrap().cancellative);
    }

    #[test]
    fn center_examples() {
        let z2 = fixtures::z2();
        // 01 = 10 in M(X, r), so the whole degree-2 part is central
        assert_eq!(center_basis(&z2, 2).unwrap(), vec![vec![r(1), r(0)], vec![r(0), r(1)]]);
        assert!(center_basis(&fixtures::swap2(), 2).unwrap().is_empty());
        assert_eq!(center_basis(&fixtures::triv(), 1).unwrap(), vec![vec![r(1)]]);
    }

    #[test]
    fn gq_examples() {
        let sw = fixtures::swap2();
        let p = gq_mul(&sw, gq_torsion(&sw, 0, 0), gq_torsion(&sw, 1, 1));
        assert_eq!(p, gq_torsion(&sw, 1, 1));

        let z2 = fixtures::z2();
        assert_eq!(gq_mul(&z2, gq_torsion(&z2, 0, 1), gq_torsion(&z2, 0, 1)), gq_identity(&z2, 0));

        let b = gq_from_melem(&z2, me(3, 1)).unwrap();
        assert_eq!(gq_mul(&z2, gq_identity(&z2, 0), b), b);

        // (1,1)² = c_0, so (1,1)⁻¹ = (1,1)∘c_0⁻¹
        let a = gq_from_melem(&z2, me(1, 1)).unwrap();
        assert_eq!(gq_inverse(&z2, a), GQElem { u: 0, k: 1, x: 1, m: 1 });
        assert_eq!(gq_inverse(&z2, gq_identity(&z2, 0)), gq_identity(&z2, 0));

        let z3 = fixtures::z3inv();
        assert_eq!(gq_inverse(&z3, gq_torsion(&z3, 0, 1)), gq_torsion(&z3, 0, 2));
    }

    #[test]
    fn conjugation_examples() {
        let act = conjugation_action(&fixtures::z2(), 0).unwrap();
        assert!(act.map.iter().all(|(a, b)| a == b));
        let act = conjugation_action(&fixtures::swap2(), 0).unwrap();
        assert_eq!(act.map, vec![(0, 0)]);
        let act = conjugation_action(&fixtures::z3inv(), 0).unwrap();
        assert_eq!(act.x_u, 0);
        // computed value: conjugation by (1,0) inverts Z₃
        assert_eq!(act.map, vec![(0, 0), (1, 2), (2, 1)]);
        assert_eq!(act.order, 2);
    }

    #[test]
    fn lambda_table_agrees_with_recurrence() {
        let s = fixtures::z3inv();
        let t = LambdaTable::new(&s, 8);
        for k in 1..=8 {
            for x in 0..3 {
                assert_eq!(t.get(k, x), &solution::lambda_word(&s, x, k).unwrap());
            }
        }
    }
}
