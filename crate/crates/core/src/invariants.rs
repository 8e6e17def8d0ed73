//! Structural invariants of a solution: the diagonal map, the partition
//! `X = ⋃ X_u`, the left cancellative simple semigroup `x·y = λ_{dx}(y)`,
//! its maximal subgroups, the maps `φ_x = λ_{q^d(x)}` and the classification
//! descriptor `(·, q, φ)` together with the converse construction.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Discrepancy, Error, Result};
use crate::perm::{Perm, Point};
use crate::solution::{self, check, lambda_word, q_power, RMap, Solution, VerificationReport};

/// `q`, `Λ = Im(q)`, `d`, and the component table `q^k(x)` for `1 ≤ k ≤ d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalData {
    pub q: Vec<Point>,
    pub lambda_image: Vec<Point>,
    pub d: usize,
    /// `components[k - 1][x] = q^k(x)`; length classes repeat with period `d`
    /// because `q^{d+1} = q`.
    pub components: Vec<Vec<Point>>,
}

pub fn diagonal(s: &Solution) -> Result<DiagonalData> {
    let n = s.n();
    let d = s.d();
    let components: Vec<Vec<Point>> = (1..=d)
        .map(|k| (0..n).map(|x| q_power(s, x, k)).collect())
        .collect();
    for x in 0..n {
        if q_power(s, x, d + 1) != s.q()[x] {
            return Err(Discrepancy::new(
                "Lemma qq: q^{d+1} = q",
                format!("q^(d+1)({x}) differs from q({x})"),
                vec![x],
            )
            .into());
        }
    }
    Ok(DiagonalData {
        q: s.q().to_vec(),
        lambda_image: s.diagonal_image(),
        d,
        components,
    })
}

/// `u = q^k(x)`: the component `S_u` containing the monoid element `(kx, λ_{kx})`.
pub fn component_of(s: &Solution, k: usize, x: Point) -> Result<Point> {
    if k == 0 {
        return Err(Error::arg("the identity lies in no component"));
    }
    Ok(q_power(s, x, k))
}

/// `X_u = {x : q^d(x) = u}`, cross-checked against `{x : λ_{dx}(u) = x}`.
pub fn partition(s: &Solution) -> Result<BTreeMap<Point, Vec<Point>>> {
    let n = s.n();
    let d = s.d();
    let lam = s.diagonal_image();
    let mut parts: BTreeMap<Point, Vec<Point>> = lam.iter().map(|&u| (u, Vec::new())).collect();
    for x in 0..n {
        let u = q_power(s, x, d);
        match parts.get_mut(&u) {
            Some(v) => v.push(x),
            None => {
                return Err(Discrepancy::new(
                    "Remark qinlambda",
                    format!("q^d({x}) = {u} is not in the image of q"),
                    vec![x, u],
                )
                .into())
            }
        }
    }
    for (&u, xs) in &parts {
        for x in 0..n {
            let by_lambda = s.lambda_word_apply(x, d, u) == x;
            if by_lambda != xs.contains(&x) {
                return Err(Discrepancy::new(
                    "X_u = {x : lambda_{dx}(u) = x}",
                    format!("the two descriptions of X_{u} disagree at {x}"),
                    vec![u, x],
                )
                .into());
            }
        }
    }
    let size = parts.values().next().map_or(0, Vec::len);
    if let Some((&u, _)) = parts.iter().find(|(_, v)| v.len() != size) {
        return Err(Discrepancy::new(
            "Lemma infotorsioncover (4): |X_u| = |X_v|",
            "components of unequal size",
            vec![u],
        )
        .into());
    }
    Ok(parts)
}

/// The table `op[x][y] = λ_{dx}(y)`.
pub fn semigroup_table(s: &Solution) -> Vec<Vec<Point>> {
    (0..s.n())
        .map(|x| (0..s.n()).map(|y| s.lambda_word_apply(x, s.d(), y)).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleSemigroupTable {
    pub op: Vec<Vec<Point>>,
    pub left_identities: Vec<Point>,
    pub idempotents: Vec<Point>,
    pub xu: BTreeMap<Point, Vec<Point>>,
    /// `u₀ = min Λ`.
    pub rees_base: Point,
    /// `x ↦ (x·u₀, u)` with `x ∈ X_u`: coordinates in `M(X_{u₀}, 1, |Λ|, J)`.
    pub rees_coords: Vec<(Point, Point)>,
}

impl SimpleSemigroupTable {
    /// Rees type `(|G|, number of columns)`.
    pub fn rees_type(&self) -> (usize, usize) {
        (self.xu[&self.rees_base].len(), self.xu.len())
    }
}

/// Structural facts about a finite magma table, as used by the checks below
/// and by descriptor validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableFacts {
    pub associative: Option<[Point; 3]>,
    pub left_cancellative: Option<[Point; 3]>,
    pub left_identities: Vec<Point>,
    pub idempotents: Vec<Point>,
}

pub fn table_facts(op: &[Vec<Point>]) -> TableFacts {
    let n = op.len();
    let mut associative = None;
    'assoc: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if op[op[x][y]][z] != op[x][op[y][z]] {
                    associative = Some([x, y, z]);
                    break 'assoc;
                }
            }
        }
    }
    let mut left_cancellative = None;
    'canc: for x in 0..n {
        let mut seen = vec![None; n];
        for y in 0..n {
            if let Some(prev) = seen[op[x][y]] {
                left_cancellative = Some([x, prev, y]);
                break 'canc;
            }
            seen[op[x][y]] = Some(y);
        }
    }
    TableFacts {
        associative,
        left_cancellative,
        left_identities: (0..n).filter(|&u| (0..n).all(|y| op[u][y] == y)).collect(),
        idempotents: (0..n).filter(|&x| op[x][x] == x).collect(),
    }
}

pub fn semigroup(s: &Solution) -> Result<SimpleSemigroupTable> {
    let n = s.n();
    let op = semigroup_table(s);
    let lam = s.diagonal_image();
    let xu = partition(s)?;
    let facts = table_facts(&op);
    if let Some(w) = facts.associative {
        return Err(Discrepancy::new(
            "Lemma infotorsioncover: (X,·) is a semigroup",
            "x·y = lambda_{dx}(y) is not associative",
            w.to_vec(),
        )
        .into());
    }
    if let Some(w) = facts.left_cancellative {
        return Err(Discrepancy::new(
            "Lemma infotorsioncover: (X,·) is left cancellative",
            "x·y = x·z with y ≠ z",
            w.to_vec(),
        )
        .into());
    }
    if facts.left_identities != lam {
        return Err(Discrepancy::new(
            "elements of Lambda are exactly the left identities of (X,·)",
            format!("left identities {:?} vs Lambda {:?}", facts.left_identities, lam),
            facts.left_identities.clone(),
        )
        .into());
    }
    if facts.idempotents != lam {
        return Err(Discrepancy::new(
            "elements of Lambda are exactly the idempotents of (X,·)",
            format!("idempotents {:?} vs Lambda {:?}", facts.idempotents, lam),
            facts.idempotents.clone(),
        )
        .into());
    }
    for (&u, part) in &xu {
        group_check(&op, u, part, "each X_u is a group with identity u")?;
    }

    let u0 = lam[0];
    let column = |x: Point| q_power(s, x, s.d());
    let rees_coords: Vec<(Point, Point)> = (0..n).map(|x| (op[x][u0], column(x))).collect();
    let distinct: BTreeSet<_> = rees_coords.iter().collect();
    if distinct.len() != n || rees_coords.iter().any(|(g, _)| !xu[&u0].contains(g)) {
        return Err(Discrepancy::new(
            "Lemma infotorsioncover (2): (X,·) ≅ M(T(G_u),1,|Lambda|,J)",
            "x ↦ (x·u0, column) is not a bijection onto X_u0 × Lambda",
            vec![u0],
        )
        .into());
    }
    for x in 0..n {
        for y in 0..n {
            let (g, _) = rees_coords[x];
            let (h, j) = rees_coords[y];
            if rees_coords[op[x][y]] != (op[g][h], j) {
                return Err(Discrepancy::new(
                    "Lemma infotorsioncover (2): (g,i)(h,j) = (gh,j)",
                    "Rees coordinates are not multiplicative",
                    vec![x, y],
                )
                .into());
            }
        }
    }
    if xu[&u0].len() * lam.len() != n {
        return Err(Discrepancy::new(
            "Lemma infotorsioncover (3): |X| = |Lambda|·|T(G_u)|",
            "cardinalities do not match",
            vec![n, lam.len(), xu[&u0].len()],
        )
        .into());
    }

    Ok(SimpleSemigroupTable {
        op,
        left_identities: facts.left_identities,
        idempotents: facts.idempotents,
        xu,
        rees_base: u0,
        rees_coords,
    })
}

fn group_check(op: &[Vec<Point>], e: Point, elems: &[Point], claim: &str) -> Result<()> {
    let fail = |detail: &str, w: Vec<Point>| -> Error { Discrepancy::new(claim, detail, w).into() };
    for &x in elems {
        if op[e][x] != x || op[x][e] != x {
            return Err(fail("identity law fails", vec![e, x]));
        }
        if !elems.iter().any(|&y| op[x][y] == e && op[y][x] == e) {
            return Err(fail("element without inverse", vec![x]));
        }
        for &y in elems {
            if !elems.contains(&op[x][y]) {
                return Err(fail("not closed", vec![x, y]));
            }
        }
    }
    Ok(())
}

/// The group `T(G_u)` realised on `X_u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionGroupTable {
    pub u: Point,
    pub elements: Vec<Point>,
    /// `op[i][j]` is the point `elements[i] · elements[j]`.
    pub op: Vec<Vec<Point>>,
    pub identity: Point,
    /// Aligned with `elements`.
    pub orders: Vec<usize>,
}

impl TorsionGroupTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    fn index(&self, x: Point) -> usize {
        self.elements.iter().position(|&e| e == x).expect("element of X_u")
    }

    pub fn mul(&self, x: Point, y: Point) -> Point {
        self.op[self.index(x)][self.index(y)]
    }

    /// The table relabeled to `0..|G|` and minimised over relabelings that
    /// send the identity to `0`: equal for isomorphic groups.
    pub fn canonical_table(&self) -> Vec<usize> {
        let m = self.order();
        let e = self.index(self.identity);
        let others: Vec<usize> = (0..m).filter(|&i| i != e).collect();
        let mut best: Option<Vec<usize>> = None;
        for p in Perm::all(m.saturating_sub(1)) {
            // relabel: e ↦ 0, others[i] ↦ p(i) + 1
            let mut lab = vec![0; m];
            for (i, &o) in others.iter().enumerate() {
                lab[o] = p.apply(i) + 1;
            }
            let mut t = vec![0; m * m];
            for i in 0..m {
                for j in 0..m {
                    let k = self.index(self.op[i][j]);
                    t[lab[i] * m + lab[j]] = lab[k];
                }
            }
            if best.as_ref().is_none_or(|b| t < *b) {
                best = Some(t);
            }
        }
        best.unwrap_or_default()
    }
}

pub fn torsion(s: &Solution, u: Point) -> Result<TorsionGroupTable> {
    let lam = s.diagonal_image();
    if !lam.contains(&u) {
        return Err(Error::arg(format!("{u} is not in the image of q")));
    }
    let d = s.d();
    let parts = partition(s)?;
    let elements = parts[&u].clone();
    let op: Vec<Vec<Point>> = elements
        .iter()
        .map(|&x| elements.iter().map(|&y| s.lambda_word_apply(x, d, y)).collect())
        .collect();
    let full = semigroup_table(s);
    group_check(&full, u, &elements, "Lemma lemmatorsion (1),(3): T(G_u) is a group with identity t_{u,u}")?;

    let mut orders = Vec::with_capacity(elements.len());
    for &x in &elements {
        let mut k = 1;
        let mut p = x;
        while p != u {
            p = full[x][p];
            k += 1;
            if k > s.n() + 1 {
                break;
            }
        }
        if !d.is_multiple_of(k) {
            return Err(Discrepancy::new(
                "Lemma lemmatorsion (5): the order of t_{u,x} divides d",
                format!("order {k} does not divide d = {d}"),
                vec![u, x],
            )
            .into());
        }
        orders.push(k);
    }

    let lu = s.lambda(u);
    for &x in &elements {
        let ldx = solution::lambda_word(s, x, d)?;
        if &ldx.compose(lu) != s.lambda(x) {
            return Err(Discrepancy::new(
                "Lemma lemmatorsion (6): lambda_x = lambda_{dx} lambda_u",
                "identity fails for x in X_u",
                vec![u, x],
            )
            .into());
        }
    }

    Ok(TorsionGroupTable {
        u,
        elements,
        op,
        identity: u,
        orders,
    })
}

/// The isomorphism `T(G_u) → T(G_v)`, `x ↦ x·v`, as a list of pairs.
pub fn torsion_iso(s: &Solution, u: Point, v: Point) -> Result<Vec<(Point, Point)>> {
    let tu = torsion(s, u)?;
    let tv = torsion(s, v)?;
    let d = s.d();
    let map: BTreeMap<Point, Point> = tu
        .elements
        .iter()
        .map(|&x| (x, s.lambda_word_apply(x, d, v)))
        .collect();
    let claim = "Lemma infotorsioncover (1): T(G_u) ≅ T(G_v) via x ↦ x·v";
    let image: BTreeSet<Point> = map.values().copied().collect();
    if image.len() != tu.order() || image.iter().any(|y| !tv.elements.contains(y)) {
        return Err(Discrepancy::new(claim, "not a bijection onto X_v", vec![u, v]).into());
    }
    for &x in &tu.elements {
        for &y in &tu.elements {
            if map[&tu.mul(x, y)] != tv.mul(map[&x], map[&y]) {
                return Err(Discrepancy::new(claim, "not a homomorphism", vec![u, v, x, y]).into());
            }
        }
    }
    Ok(map.into_iter().collect())
}

/// `φ_x = λ_{q^d(x)}`, verified against `λ_x(y) = x·φ_x(y)`.
pub fn phi_maps(s: &Solution) -> Result<Vec<Perm>> {
    let n = s.n();
    let d = s.d();
    let phi: Vec<Perm> = (0..n).map(|x| s.lambda(q_power(s, x, d)).clone()).collect();
    for (x, phi_x) in phi.iter().enumerate() {
        for y in 0..n {
            if s.lambda(x).apply(y) != s.lambda_word_apply(x, d, phi_x.apply(y)) {
                return Err(Discrepancy::new(
                    "lambda_x(y) = x·phi_x(y)",
                    "factorisation through (X,·) fails",
                    vec![x, y],
                )
                .into());
            }
        }
    }
    Ok(phi)
}

/// Classification data: `(X,·)`, `q` and the permutations `φ_x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Descriptor {
    pub n: usize,
    pub op: Vec<Vec<Point>>,
    pub q: Vec<Point>,
    pub phi: Vec<Perm>,
}

impl Descriptor {
    pub fn new(n: usize, op: Vec<Vec<Point>>, q: Vec<Point>, phi: Vec<Perm>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Malformed("n must be positive".into()));
        }
        if op.len() != n || op.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(Error::Malformed(format!("op must be an {n}x{n} table over 0..{n}")));
        }
        if q.len() != n || q.iter().any(|&v| v >= n) {
            return Err(Error::Malformed("q must map 0..n into 0..n".into()));
        }
        if phi.len() != n || phi.iter().any(|p| p.len() != n) {
            return Err(Error::Malformed("phi must hold n permutations of n points".into()));
        }
        Ok(Descriptor { n, op, q, phi })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: Descriptor = serde_json::from_str(text)?;
        Descriptor::new(raw.n, raw.op, raw.q, raw.phi)
    }

    #[inline]
    fn mul(&self, x: Point, y: Point) -> Point {
        self.op[x][y]
    }

    #[inline]
    fn phi_at(&self, x: Point, y: Point) -> Point {
        self.phi[x].apply(y)
    }

    pub fn all_phi_equal(&self) -> bool {
        self.phi.windows(2).all(|w| w[0] == w[1])
    }
}

/// Which of the classification hypotheses a descriptor meets. Reported, not
/// enforced: the converse construction is evaluated regardless.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescriptorHypotheses {
    pub associative: bool,
    pub left_cancellative: bool,
    /// Every idempotent is a left identity (the `M(G,1,m,J)` shape).
    pub idempotents_are_left_identities: bool,
    pub idempotents: Vec<Point>,
    pub q_image: Vec<Point>,
    pub q_image_within_idempotents: bool,
    pub q_onto_idempotents: bool,
}

pub fn descriptor_hypotheses(dsc: &Descriptor) -> DescriptorHypotheses {
    let facts = table_facts(&dsc.op);
    let mut q_image = dsc.q.clone();
    q_image.sort_unstable();
    q_image.dedup();
    let idem: BTreeSet<Point> = facts.idempotents.iter().copied().collect();
    let within = q_image.iter().all(|u| idem.contains(u));
    DescriptorHypotheses {
        associative: facts.associative.is_none(),
        left_cancellative: facts.left_cancellative.is_none(),
        idempotents_are_left_identities: facts
            .idempotents
            .iter()
            .all(|e| facts.left_identities.contains(e)),
        q_onto_idempotents: within && q_image.len() == idem.len(),
        q_image_within_idempotents: within,
        idempotents: facts.idempotents,
        q_image,
    }
}

pub fn descriptor(s: &Solution) -> Result<Descriptor> {
    let table = semigroup(s)?;
    let dsc = Descriptor {
        n: s.n(),
        op: table.op,
        q: s.q().to_vec(),
        phi: phi_maps(s)?,
    };
    let rep = check_fineq(&dsc);
    if let Some((name, cx)) = rep.first_failure() {
        return Err(Discrepancy::new(
            "Thm solgeneral (3): the identities (fineq1)-(fineq4) hold",
            format!("{name} fails"),
            cx.to_vec(),
        )
        .into());
    }
    Ok(dsc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub holds: bool,
    pub counterexample: Option<Vec<Point>>,
}

impl IdentityCheck {
    fn scan<I: IntoIterator<Item = Vec<Point>>>(points: I, holds: impl Fn(&[Point]) -> bool) -> Self {
        let counterexample = points.into_iter().find(|p| !holds(p));
        IdentityCheck {
            holds: counterexample.is_none(),
            counterexample,
        }
    }
}

/// The reduced conditions available when all `φ_x` equal one `φ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AllPhiReport {
    /// `φ ∈ Aut(X,·)`, witnessed by a pair.
    pub automorphism: IdentityCheck,
    /// `φ q = q²`.
    pub phi_q_eq_q2: IdentityCheck,
    /// `q = q⁴`.
    pub q_eq_q4: IdentityCheck,
    /// `q(x·q²(x)) = q(x)`.
    pub q_x_q2x: IdentityCheck,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FineqReport {
    pub fineq1: IdentityCheck,
    pub fineq2: IdentityCheck,
    pub fineq3: IdentityCheck,
    pub fineq4: IdentityCheck,
    pub allphi: Option<AllPhiReport>,
}

impl FineqReport {
    pub fn all_hold(&self) -> bool {
        self.fineq1.holds && self.fineq2.holds && self.fineq3.holds && self.fineq4.holds
    }

    pub fn first_failure(&self) -> Option<(&'static str, &[Point])> {
        [
            ("fineq1", &self.fineq1),
            ("fineq2", &self.fineq2),
            ("fineq3", &self.fineq3),
            ("fineq4", &self.fineq4),
        ]
        .into_iter()
        .find_map(|(name, c)| c.counterexample.as_deref().map(|cx| (name, cx)))
    }
}

fn triples(n: usize) -> impl Iterator<Item = Vec<Point>> {
    (0..n).flat_map(move |x| (0..n).flat_map(move |y| (0..n).map(move |z| vec![x, y, z])))
}

fn pairs(n: usize) -> impl Iterator<Item = Vec<Point>> {
    (0..n).flat_map(move |x| (0..n).map(move |y| vec![x, y]))
}

fn singles(n: usize) -> impl Iterator<Item = Vec<Point>> {
    (0..n).map(|x| vec![x])
}

/// `φ_x(y·φ_y(z)) = φ_x(y) · φ_a(φ_{q(a)}(z))` with `a = x·φ_x(y)`.
pub fn fineq1_holds(m: &Descriptor, x: Point, y: Point, z: Point) -> bool {
    let a = m.mul(x, m.phi_at(x, y));
    let lhs = m.phi_at(x, m.mul(y, m.phi_at(y, z)));
    let rhs = m.mul(m.phi_at(x, y), m.phi_at(a, m.phi_at(m.q[a], z)));
    lhs == rhs
}

/// `φ_{q(x·φ_x(b))}(q(b)) = q(a · φ_a(φ_{q(a)}(z)))` with `b = y·φ_y(z)`,
/// `a = x·φ_x(y)`.
pub fn fineq2_holds(m: &Descriptor, x: Point, y: Point, z: Point) -> bool {
    let b = m.mul(y, m.phi_at(y, z));
    let a = m.mul(x, m.phi_at(x, y));
    let lhs = m.phi_at(m.q[m.mul(x, m.phi_at(x, b))], m.q[b]);
    let rhs = m.q[m.mul(a, m.phi_at(a, m.phi_at(m.q[a], z)))];
    lhs == rhs
}

/// `q(φ_{q(a)}(z)) = q(φ_{x·φ_x(b)}(q(b)))` with `a = x·φ_x(y)`, `b = y·φ_y(z)`.
pub fn fineq3_holds(m: &Descriptor, x: Point, y: Point, z: Point) -> bool {
    let a = m.mul(x, m.phi_at(x, y));
    let b = m.mul(y, m.phi_at(y, z));
    let lhs = m.q[m.phi_at(m.q[a], z)];
    let rhs = m.q[m.phi_at(m.mul(x, m.phi_at(x, b)), m.q[b])];
    lhs == rhs
}

/// `q(x·φ_x(q(x))) = q(x)`.
pub fn fineq4_holds(m: &Descriptor, x: Point) -> bool {
    m.q[m.mul(x, m.phi_at(x, m.q[x]))] == m.q[x]
}

pub fn check_fineq(dsc: &Descriptor) -> FineqReport {
    let n = dsc.n;
    let allphi = dsc.all_phi_equal().then(|| {
        let phi = &dsc.phi[0];
        let q = &dsc.q;
        AllPhiReport {
            automorphism: IdentityCheck::scan(pairs(n), |p| {
                phi.apply(dsc.mul(p[0], p[1])) == dsc.mul(phi.apply(p[0]), phi.apply(p[1]))
            }),
            phi_q_eq_q2: IdentityCheck::scan(singles(n), |p| phi.apply(q[p[0]]) == q[q[p[0]]]),
            q_eq_q4: IdentityCheck::scan(singles(n), |p| q[q[q[q[p[0]]]]] == q[p[0]]),
            q_x_q2x: IdentityCheck::scan(singles(n), |p| {
                let x = p[0];
                q[dsc.mul(x, q[q[x]])] == q[x]
            }),
        }
    });
    FineqReport {
        fineq1: IdentityCheck::scan(triples(n), |p| fineq1_holds(dsc, p[0], p[1], p[2])),
        fineq2: IdentityCheck::scan(triples(n), |p| fineq2_holds(dsc, p[0], p[1], p[2])),
        fineq3: IdentityCheck::scan(triples(n), |p| fineq3_holds(dsc, p[0], p[1], p[2])),
        fineq4: IdentityCheck::scan(singles(n), |p| fineq4_holds(dsc, p[0])),
        allphi,
    }
}

/// `r(x,y) = (x·φ_x(y), q(x·φ_x(y)))`, always followed by a direct check.
pub fn reconstruct(dsc: &Descriptor) -> (RMap, VerificationReport) {
    let n = dsc.n;
    let lambda: Vec<Vec<Point>> = (0..n)
        .map(|x| (0..n).map(|y| dsc.mul(x, dsc.phi_at(x, y))).collect())
        .collect();
    let rho = lambda
        .iter()
        .map(|row| row.iter().map(|&v| dsc.q[v]).collect())
        .collect();
    let m = RMap { n, lambda, rho };
    let report = check(&m);
    (m, report)
}

/// `reconstruct(descriptor(s))` reproduces the λ and ρ tables of `s`.
pub fn roundtrip(s: &Solution) -> Result<bool> {
    let dsc = descriptor(s)?;
    let (m, _) = reconstruct(&dsc);
    let orig = s.to_rmap();
    for x in 0..s.n() {
        for y in 0..s.n() {
            if m.lambda[x][y] != orig.lambda[x][y] || m.rho[x][y] != orig.rho[x][y] {
                return Err(Discrepancy::new(
                    "Thm solgeneral (4): r(x,y) = (x·phi_x(y), q(x·phi_x(y)))",
                    "reconstructed table differs",
                    vec![x, y],
                )
                .into());
            }
        }
    }
    Ok(true)
}

/// For `k ≤ d` and all `x, y`: `λ_{kx} = λ_{ky}` or `λ_{kx}λ_{ky}⁻¹` is
/// fixed-point free.
pub fn fixed_point_remark(s: &Solution) -> Result<()> {
    let n = s.n();
    for k in 1..=s.d() {
        let words: Vec<Perm> = (0..n).map(|x| lambda_word(s, x, k)).collect::<Result<_>>()?;
        for x in 0..n {
            for y in 0..n {
                let (a, b) = (&words[x], &words[y]);
                if a != b && (0..n).any(|p| a.apply(p) == b.apply(p)) {
                    return Err(Discrepancy::new(
                        "Remark fixedpoint: lambda_a = lambda_b or lambda_a lambda_b^-1 has no fixed points",
                        format!("k = {k}"),
                        vec![x, y],
                    )
                    .into());
                }
            }
        }
    }
    Ok(())
}

/// `q^k(x) = λ_{kx}⁻¹(x)` for `1 ≤ k ≤ 2d + 2`.
pub fn q_power_identity(s: &Solution) -> Result<()> {
    for k in 1..=2 * s.d() + 2 {
        for x in 0..s.n() {
            if q_power(s, x, k) != lambda_word(s, x, k)?.inverse().apply(x) {
                return Err(Discrepancy::new(
                    "Lemma qq: q^k(x) = lambda_{kx}^-1(x)",
                    format!("k = {k}"),
                    vec![x],
                )
                .into());
            }
        }
    }
    Ok(())
}

pub(crate) fn is_group_table(table: &[Vec<Point>]) -> std::result::Result<Point, &'static str> {
    let n = table.len();
    if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
        return Err("table is not square over 0..n");
    }
    if table_facts(table).associative.is_some() {
        return Err("associativity");
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or("identity")?;
    if !(0..n).all(|x| (0..n).any(|y| table[x][y] == e && table[y][x] == e)) {
        return Err("inverses");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn p(v: &[usize]) -> Perm {
        Perm::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn component_of_examples() {
        let sw = fixtures::swap2();
        assert_eq!(component_of(&sw, 1, 0).unwrap(), 1);
        assert_eq!(component_of(&sw, 2, 0).unwrap(), 0);
        let z2 = fixtures::z2();
        for k in 1..6 {
            for x in 0..2 {
                assert_eq!(component_of(&z2, k, x).unwrap(), 0);
            }
        }
        assert!(component_of(&z2, 0, 0).is_err());
    }

    #[test]
    fn diagonal_data() {
        let dd = diagonal(&fixtures::swap2()).unwrap();
        assert_eq!(dd.lambda_image, vec![0, 1]);
        assert_eq!(dd.components, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn partition_examples() {
        let m = |v: &[(usize, &[usize])]| -> BTreeMap<usize, Vec<usize>> {
            v.iter().map(|(u, xs)| (*u, xs.to_vec())).collect()
        };
        assert_eq!(partition(&fixtures::swap2()).unwrap(), m(&[(0, &[0]), (1, &[1])]));
        assert_eq!(partition(&fixtures::z2()).unwrap(), m(&[(0, &[0, 1])]));
        assert_eq!(partition(&fixtures::triv()).unwrap(), m(&[(0, &[0])]));
    }

    #[test]
    fn semigroup_examples() {
        let sw = semigroup(&fixtures::swap2()).unwrap();
        assert_eq!(sw.op, vec![vec![0, 1], vec![0, 1]]);
        assert_eq!(sw.rees_type(), (1, 2));

        let z2 = semigroup(&fixtures::z2()).unwrap();
        assert_eq!(z2.op, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(z2.rees_type(), (2, 1));

        let z3 = semigroup(&fixtures::z3inv()).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(z3.op[x][y], (x + y) % 3);
            }
        }
    }

    #[test]
    fn torsion_examples() {
        let t = torsion(&fixtures::z2(), 0).unwrap();
        assert_eq!(t.elements, vec![0, 1]);
        assert_eq!(t.op, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(t.orders, vec![1, 2]);

        let t = torsion(&fixtures::swap2(), 0).unwrap();
        assert_eq!(t.elements, vec![0]);

        let t = torsion(&fixtures::z3inv(), 0).unwrap();
        assert_eq!(t.orders, vec![1, 3, 3]);
        assert!(t.orders.iter().all(|o| 6 % o == 0));

        assert!(matches!(torsion(&fixtures::z2(), 1), Err(Error::Argument(_))));
    }

    #[test]
    fn torsion_iso_examples() {
        assert_eq!(torsion_iso(&fixtures::swap2(), 0, 1).unwrap(), vec![(0, 1)]);
        assert_eq!(torsion_iso(&fixtures::z2(), 0, 0).unwrap(), vec![(0, 0), (1, 1)]);
        assert_eq!(torsion_iso(&fixtures::proj3(), 0, 2).unwrap(), vec![(0, 2)]);
    }

    #[test]
    fn phi_examples() {
        let neg = p(&[0, 2, 1]);
        assert_eq!(phi_maps(&fixtures::z3inv()).unwrap(), vec![neg.clone(), neg.clone(), neg]);
        let sw = p(&[1, 0]);
        assert_eq!(phi_maps(&fixtures::swap2()).unwrap(), vec![sw.clone(), sw]);
        assert!(phi_maps(&fixtures::proj3()).unwrap().iter().all(Perm::is_identity));
    }

    #[test]
    fn descriptor_examples() {
        let d = descriptor(&fixtures::z2()).unwrap();
        assert_eq!(d.op, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(d.q, vec![0, 0]);
        assert!(d.phi.iter().all(Perm::is_identity));

        let d = descriptor(&fixtures::swap2()).unwrap();
        assert_eq!(d.op, vec![vec![0, 1], vec![0, 1]]);
        assert_eq!(d.q, vec![1, 0]);
        assert_eq!(d.phi, vec![p(&[1, 0]), p(&[1, 0])]);

        let d = descriptor(&fixtures::triv()).unwrap();
        assert_eq!((d.n, d.op.clone(), d.q.clone()), (1, vec![vec![0]], vec![0]));
    }

    #[test]
    fn fineq_on_fixtures() {
        let rep = check_fineq(&descriptor(&fixtures::z2()).unwrap());
        assert!(rep.all_hold());
        let allphi = rep.allphi.unwrap();
        assert!(allphi.automorphism.holds && allphi.phi_q_eq_q2.holds);
        assert!(allphi.q_eq_q4.holds && allphi.q_x_q2x.holds);
        assert!(check_fineq(&descriptor(&fixtures::z3inv()).unwrap()).all_hold());
    }

    /// Right-zero semigroup on 4 points, `q = [0,1,0,1]`, `φ = id`.
    fn special() -> Descriptor {
        Descriptor::new(4, vec![vec![0, 1, 2, 3]; 4], vec![0, 1, 0, 1], vec![Perm::identity(4); 4])
            .unwrap()
    }

    #[test]
    fn fineq_on_rees_probe_is_reproducible() {
        let dsc = special();
        let rep = check_fineq(&dsc);
        assert!(rep.fineq1.holds);
        assert!(rep.fineq4.holds);
        for (c, f) in [(&rep.fineq2, fineq2_holds as fn(&Descriptor, usize, usize, usize) -> bool), (&rep.fineq3, fineq3_holds)] {
            if let Some(cx) = &c.counterexample {
                assert!(!f(&dsc, cx[0], cx[1], cx[2]));
            }
        }
        let hyp = descriptor_hypotheses(&dsc);
        assert_eq!(hyp.idempotents, vec![0, 1, 2, 3]);
        assert!(hyp.q_image_within_idempotents);
        assert!(!hyp.q_onto_idempotents);
    }

    #[test]
    fn reconstruct_examples() {
        for s in [fixtures::z2(), fixtures::swap2()] {
            let (m, rep) = reconstruct(&descriptor(&s).unwrap());
            assert!(rep.is_valid());
            assert_eq!(m, s.to_rmap());
        }
        let (m, rep) = reconstruct(&special());
        assert!(m.lambda.iter().all(|r| r == &vec![0, 1, 2, 3]));
        assert_eq!(m.rho[3], vec![0, 1, 0, 1]);
        assert!(rep.ybe1 && rep.ybe2 && rep.ybe3 && rep.left_nondegenerate);
        if let Some(cx) = &rep.first_counterexample {
            assert!(!solution::identity_holds(&m, cx.identity, &cx.points));
        }
    }

    #[test]
    fn roundtrip_fixtures() {
        for (_, s) in fixtures::all() {
            assert!(roundtrip(&s).unwrap());
        }
    }

    #[test]
    fn group_table_recognition() {
        assert_eq!(is_group_table(&[vec![0, 1], vec![1, 0]]), Ok(0));
        assert_eq!(is_group_table(&[vec![0, 1], vec![0, 1]]), Err("identity"));
    }
}
