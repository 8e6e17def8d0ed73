//! Exhaustive enumeration and isomorphism classification for small `n`,
//! plus constructors for the standard families of solutions.
//!
//! Since `r² = r` forces `ρ_y(x) = q(λ_x(y))`, the search space is the set
//! of λ-tuples `(λ_0, …, λ_{n-1}) ∈ Sym(n)ⁿ`; every completed tuple is
//! verified in full before it is reported.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Discrepancy, Error, Result};
use crate::invariants::{self, Descriptor, DescriptorHypotheses, FineqReport};
use crate::perm::{Perm, Point};
use crate::solution::{canonical_form, check, RMap, Solution, VerificationReport};

/// Largest `n` accepted by [`enumerate`].
pub const MAX_ENUM_N: usize = 6;
/// Largest `n` accepted by [`classify`] and the counts built on it.
pub const MAX_CLASSIFY_N: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Prune {
    /// Reject partial tuples violating an assigned instance of
    /// `λ_xλ_y = λ_{λ_x(y)}λ_{ρ_y(x)}`.
    pub ybe1: bool,
    /// Reject partial tuples violating an assigned instance of
    /// `ρ_{ρ_y(x)}(λ_x(y)) = ρ_y(x)`.
    pub idempotency: bool,
    /// Reject `λ_x ≠ λ_y` agreeing at some point.
    pub fixedpoint: bool,
    /// Reject completed tuples with `|Λ|` not dividing `n`.
    pub divisibility: bool,
}

impl Prune {
    pub const ALL: Prune = Prune {
        ybe1: true,
        idempotency: true,
        fixedpoint: true,
        divisibility: true,
    };
    pub const NONE: Prune = Prune {
        ybe1: false,
        idempotency: false,
        fixedpoint: false,
        divisibility: false,
    };
}

#[derive(Debug, Clone)]
pub struct EnumOptions {
    pub n: usize,
    /// Emit one canonical representative per isomorphism class.
    pub up_to_iso: bool,
    pub prune: Prune,
    /// Worker threads; `0` uses the global pool.
    pub jobs: usize,
    pub budget: Option<Duration>,
}

impl EnumOptions {
    pub fn new(n: usize) -> Self {
        EnumOptions {
            n,
            up_to_iso: false,
            prune: Prune::ALL,
            jobs: 0,
            budget: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    /// Sorted by canonical table, then by the table itself.
    pub solutions: Vec<Solution>,
    /// False when the budget ran out; the list is then partial.
    pub complete: bool,
}

struct Tables {
    n: usize,
    perms: Vec<Perm>,
    compose: Vec<Vec<usize>>,
    /// `q_of[i][x] = perms[i]⁻¹(x)`.
    q_of: Vec<Vec<Point>>,
    /// Equal, or disagreeing at every point.
    compatible: Vec<Vec<bool>>,
    /// Indices `j` with `compatible[i][j]`.
    compatible_list: Vec<Vec<usize>>,
    all: Vec<usize>,
}

impl Tables {
    fn new(n: usize) -> Self {
        let perms: Vec<Perm> = Perm::all(n).collect();
        let index: BTreeMap<Vec<Point>, usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.images().to_vec(), i))
            .collect();
        let compose = perms
            .iter()
            .map(|a| perms.iter().map(|b| index[a.compose(b).images()]).collect())
            .collect();
        let q_of = perms.iter().map(|p| p.inverse().into_images()).collect();
        let compatible: Vec<Vec<bool>> = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| a == b || (0..n).all(|x| a.apply(x) != b.apply(x)))
                    .collect()
            })
            .collect();
        let compatible_list = compatible
            .iter()
            .map(|row| (0..row.len()).filter(|&j| row[j]).collect())
            .collect();
        Tables {
            n,
            all: (0..perms.len()).collect(),
            perms,
            compose,
            q_of,
            compatible,
            compatible_list,
        }
    }
}

struct Search<'a> {
    t: &'a Tables,
    prune: Prune,
    deadline: Option<Instant>,
    expired: &'a AtomicBool,
}

impl Search<'_> {
    /// Whether assigning `assign[last]` keeps the partial tuple consistent.
    fn consistent(&self, assign: &[usize]) -> bool {
        let t = self.t;
        let last = assign.len() - 1;
        if self.prune.fixedpoint && !(0..last).all(|j| t.compatible[assign[last]][assign[j]]) {
            return false;
        }
        if !(self.prune.ybe1 || self.prune.idempotency) {
            return true;
        }
        for a in 0..=last {
            for b in 0..=last {
                let z = t.perms[assign[a]].apply(b);
                if z > last {
                    continue;
                }
                // w = ρ_b(a)
                let w = t.q_of[assign[z]][z];
                if w > last {
                    continue;
                }
                let newest = a.max(b).max(z).max(w) == last;
                if self.prune.ybe1 && newest && t.compose[assign[a]][assign[b]] != t.compose[assign[z]][assign[w]] {
                    return false;
                }
                if self.prune.idempotency {
                    let v = t.perms[assign[z]].apply(w);
                    if v <= last && newest.max(v == last) && t.q_of[assign[v]][v] != w {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&self, assign: &mut Vec<usize>, out: &mut Vec<Solution>) {
        if self.expired.load(Ordering::Relaxed) {
            return;
        }
        if let Some(dl) = self.deadline {
            if Instant::now() >= dl {
                self.expired.store(true, Ordering::Relaxed);
                return;
            }
        }
        let n = self.t.n;
        if assign.len() == n {
            if let Some(s) = self.leaf(assign) {
                out.push(s);
            }
            return;
        }
        let candidates = match assign.first() {
            Some(&first) if self.prune.fixedpoint => &self.t.compatible_list[first],
            _ => &self.t.all,
        };
        for &i in candidates {
            assign.push(i);
            if self.consistent(assign) {
                self.run(assign, out);
            }
            assign.pop();
        }
    }

    fn leaf(&self, assign: &[usize]) -> Option<Solution> {
        let n = self.t.n;
        if self.prune.divisibility {
            let image: BTreeSet<Point> = (0..n).map(|x| self.t.q_of[assign[x]][x]).collect();
            if !n.is_multiple_of(image.len()) {
                return None;
            }
        }
        let lambdas: Vec<Perm> = assign.iter().map(|&i| self.t.perms[i].clone()).collect();
        Solution::from_lambdas(&lambdas).ok()
    }
}

/// All solutions on `n ≤ 6` points.
pub fn enumerate(opts: &EnumOptions) -> Result<Enumeration> {
    let n = opts.n;
    if n == 0 {
        return Err(Error::arg("n must be positive"));
    }
    if n > MAX_ENUM_N {
        return Err(Error::Size {
            what: "enumeration",
            n,
            limit: MAX_ENUM_N,
        });
    }
    let tables = Tables::new(n);
    let expired = AtomicBool::new(false);
    let search = Search {
        t: &tables,
        prune: opts.prune,
        deadline: opts.budget.map(|b| Instant::now() + b),
        expired: &expired,
    };
    let work = || -> Vec<Solution> {
        (0..tables.perms.len())
            .into_par_iter()
            .flat_map_iter(|first| {
                let mut out = Vec::new();
                search.run(&mut vec![first], &mut out);
                out
            })
            .collect()
    };
    let found = if opts.jobs == 0 {
        work()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::arg(format!("thread pool: {e}")))?
            .install(work)
    };

    let mut keyed: Vec<(Vec<Point>, Solution)> = found
        .into_iter()
        .map(|s| Ok((canonical_form(&s)?, s)))
        .collect::<Result<_>>()?;
    keyed.sort_by(|a, b| (&a.0, a.1.flat_lambda()).cmp(&(&b.0, b.1.flat_lambda())));
    let solutions = if opts.up_to_iso {
        keyed.dedup_by(|a, b| a.0 == b.0);
        keyed
            .into_iter()
            .map(|(canon, _)| solution_from_flat(n, &canon))
            .collect::<Result<_>>()?
    } else {
        keyed.into_iter().map(|(_, s)| s).collect()
    };
    Ok(Enumeration {
        solutions,
        complete: !expired.load(Ordering::Relaxed),
    })
}

/// Unpruned oracle: checks every tuple in `Sym(n)ⁿ` directly.
pub fn brute_force(n: usize) -> Result<Vec<Solution>> {
    if n == 0 || n > 4 {
        return Err(Error::Size {
            what: "brute-force enumeration",
            n,
            limit: 4,
        });
    }
    let perms: Vec<Perm> = Perm::all(n).collect();
    let total = perms.len().pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let lambda: Vec<Vec<Point>> = (0..n)
            .map(|_| {
                let p = perms[c % perms.len()].images().to_vec();
                c /= perms.len();
                p
            })
            .collect();
        // ρ forced by the first idempotency identity
        let m = RMap::from_lambda(n, lambda)?;
        if check(&m).is_valid() {
            out.push(crate::solution::promote(&m)?);
        }
    }
    Ok(out)
}

pub fn solution_from_flat(n: usize, flat: &[Point]) -> Result<Solution> {
    let lambdas: Vec<Perm> = flat
        .chunks(n)
        .map(|row| Perm::from_images(row.to_vec()))
        .collect::<Result<_>>()?;
    Solution::from_lambdas(&lambdas)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `r(x, y) = (φ(y), y)`.
    Permutation,
    /// `λ_x(y) = x·φ(y)` on a group.
    GroupAutomorphism,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ReesType {
    /// `|T(G_u)|`.
    pub torsion_order: usize,
    /// FNV-1a hash of the canonical group table of `T(G_u)`.
    pub torsion_hash: u64,
    /// `|Λ|`, the number of columns.
    pub columns: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationRecord {
    pub canonical: Vec<Point>,
    /// Number of enumerated solutions in the class.
    pub members: usize,
    pub diag_size: usize,
    pub d: usize,
    pub rees_type: ReesType,
    pub family: Option<Family>,
}

fn fnv1a(values: &[usize]) -> u64 {
    values.iter().fold(0xcbf2_9ce4_8422_2325, |h, &v| {
        v.to_le_bytes()
            .iter()
            .fold(h, |h, &b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
    })
}

pub fn rees_type(s: &Solution) -> Result<ReesType> {
    let lam = s.diagonal_image();
    let tor = invariants::torsion(s, lam[0])?;
    Ok(ReesType {
        torsion_order: tor.order(),
        torsion_hash: fnv1a(&tor.canonical_table()),
        columns: lam.len(),
    })
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k))
}

fn family_of(s: &Solution) -> Result<Option<Family>> {
    let n = s.n();
    let lam = s.diagonal_image();
    Ok(if lam.len() == n && s.lambdas().windows(2).all(|w| w[0] == w[1]) {
        Some(Family::Permutation)
    } else if is_prime(n) && is_latin(s)? {
        Some(Family::GroupAutomorphism)
    } else {
        None
    })
}

fn check_classify_n(n: usize) -> Result<()> {
    if n > MAX_CLASSIFY_N {
        return Err(Error::Size {
            what: "classification",
            n,
            limit: MAX_CLASSIFY_N,
        });
    }
    Ok(())
}

/// Isomorphism classes of solutions on `n ≤ 5` points, ordered by
/// canonical table.
pub fn classify(n: usize) -> Result<Vec<ClassificationRecord>> {
    check_classify_n(n)?;
    classify_solutions(&enumerate(&EnumOptions::new(n))?.solutions)
}

/// Groups already-enumerated solutions by canonical form.
pub fn classify_solutions(solutions: &[Solution]) -> Result<Vec<ClassificationRecord>> {
    let mut classes: BTreeMap<Vec<Point>, (usize, &Solution)> = BTreeMap::new();
    for s in solutions {
        classes.entry(canonical_form(s)?).or_insert((0, s)).0 += 1;
    }
    classes
        .into_iter()
        .map(|(canonical, (members, s))| {
            Ok(ClassificationRecord {
                members,
                diag_size: s.diagonal_image().len(),
                d: s.d(),
                rees_type: rees_type(s)?,
                family: family_of(s)?,
                canonical,
            })
        })
        .collect()
}

/// Counts classes by `|Λ|`; every key must divide `n`.
pub fn by_diag_size(n: usize) -> Result<BTreeMap<usize, usize>> {
    check_classify_n(n)?;
    diag_size_counts(n, &classify(n)?)
}

pub fn diag_size_counts(n: usize, records: &[ClassificationRecord]) -> Result<BTreeMap<usize, usize>> {
    let mut out = BTreeMap::new();
    for r in records {
        if !n.is_multiple_of(r.diag_size) {
            return Err(Discrepancy::new(
                "Lemma infotorsioncover (3): |X| = |Lambda|·|T(G_u)|",
                format!("|Lambda| = {} does not divide {n}", r.diag_size),
                r.canonical.clone(),
            )
            .into());
        }
        *out.entry(r.diag_size).or_insert(0) += 1;
    }
    Ok(out)
}

/// Number of partitions of `n`, by Euler's pentagonal-number recurrence.
pub fn partition_number(n: usize) -> Result<u64> {
    if n > 64 {
        return Err(Error::Size {
            what: "partition number",
            n,
            limit: 64,
        });
    }
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut total = 0i64;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            total += sign * p[m - g1];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                total += sign * p[m - g2];
            }
        }
        p[m] = total;
    }
    Ok(p[n] as u64)
}

/// Classes with `Λ = X` are counted by the partitions of `n`, and each has
/// the form `r(x, y) = (φ(y), y)`.
pub fn check_partition_count(n: usize) -> Result<bool> {
    check_classify_n(n)?;
    let claim = "Corollary qbijective: classes with q bijective are counted by partitions of |X|";
    let mut count = 0u64;
    for r in classify(n)?.iter().filter(|r| r.diag_size == n) {
        count += 1;
        let s = solution_from_flat(n, &r.canonical)?;
        let phi = s.lambda(0);
        let shaped = s.lambdas().iter().all(|l| l == phi)
            && s.rho_table().iter().all(|row| row.iter().enumerate().all(|(y, &v)| v == y));
        if !shaped {
            return Err(Discrepancy::new(claim, "class not of the form (phi(y), y)", r.canonical.clone()).into());
        }
    }
    let expected = partition_number(n)?;
    if count != expected {
        return Err(Discrepancy::new(claim, format!("{count} classes, p({n}) = {expected}"), vec![n]).into());
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeClassification {
    pub p: usize,
    /// Distinct classes produced by `from_permutation`.
    pub permutation_classes: usize,
    /// Distinct classes produced by `from_group_automorphism` over `Z_p`.
    pub automorphism_classes: usize,
    /// Number of enumerated classes, when the exhaustive comparison ran.
    pub enumerated_classes: Option<usize>,
}

pub fn cyclic_group_table(p: usize) -> Vec<Vec<Point>> {
    (0..p).map(|a| (0..p).map(|b| (a + b) % p).collect()).collect()
}

/// Generates both families on `p` points, checks they verify and are
/// disjoint up to isomorphism, and, when `exhaustive` is set, that they
/// cover every enumerated class.
pub fn check_prime_classification(p: usize, exhaustive: bool) -> Result<PrimeClassification> {
    if ![2, 3, 5].contains(&p) {
        return Err(Error::arg(format!("p must be 2, 3 or 5, got {p}")));
    }
    let claim = "Corollary primecase: solutions of prime cardinality are of type (1) or (2)";
    let mut perm_classes = BTreeSet::new();
    let mut aut_classes = BTreeSet::new();
    let table = cyclic_group_table(p);
    for phi in Perm::all(p) {
        perm_classes.insert(canonical_form(&from_permutation(&phi)?)?);
        match from_group_automorphism(&table, &phi) {
            Ok(s) => {
                aut_classes.insert(canonical_form(&s)?);
            }
            Err(Error::Argument(_)) => {}
            Err(e) => return Err(e),
        }
    }
    if let Some(c) = perm_classes.intersection(&aut_classes).next() {
        return Err(Discrepancy::new(claim, "families (1) and (2) overlap", c.clone()).into());
    }
    let mut enumerated_classes = None;
    if exhaustive {
        let found: BTreeSet<Vec<Point>> = classify(p)?.into_iter().map(|r| r.canonical).collect();
        let generated: BTreeSet<Vec<Point>> = perm_classes.union(&aut_classes).cloned().collect();
        if let Some(c) = found.symmetric_difference(&generated).next() {
            return Err(Discrepancy::new(claim, "class outside the two families, or family member missing", c.clone()).into());
        }
        enumerated_classes = Some(found.len());
    }
    Ok(PrimeClassification {
        p,
        permutation_classes: perm_classes.len(),
        automorphism_classes: aut_classes.len(),
        enumerated_classes,
    })
}

/// `λ_x = φ` for every `x`, so `r(x, y) = (φ(y), y)`.
pub fn from_permutation(phi: &Perm) -> Result<Solution> {
    Solution::from_lambdas(&vec![phi.clone(); phi.len()])
}

/// `λ_x(y) = x·φ(y)` for a group table and an automorphism `φ`.
pub fn from_group_automorphism(table: &[Vec<Point>], phi: &Perm) -> Result<Solution> {
    invariants::is_group_table(table)
        .map_err(|axiom| Error::arg(format!("not a group table: {axiom} fails")))?;
    let n = table.len();
    if phi.len() != n {
        return Err(Error::arg("phi must act on the group's elements"));
    }
    for a in 0..n {
        for b in 0..n {
            if phi.apply(table[a][b]) != table[phi.apply(a)][phi.apply(b)] {
                return Err(Error::arg(format!(
                    "phi is not an automorphism: phi({a}·{b}) ≠ phi({a})·phi({b})"
                )));
            }
        }
    }
    let lambdas: Vec<Perm> = (0..n)
        .map(|x| Perm::from_images((0..n).map(|y| table[x][phi.apply(y)]).collect()))
        .collect::<Result<_>>()?;
    Solution::from_lambdas(&lambdas)
}

/// For each `y`, `x ↦ λ_x(y)` is a bijection. Must agree with `|Λ| = 1`.
pub fn is_latin(s: &Solution) -> Result<bool> {
    let n = s.n();
    let latin = (0..n).all(|y| {
        let col: BTreeSet<Point> = (0..n).map(|x| s.lambda(x).apply(y)).collect();
        col.len() == n
    });
    let singleton = s.diagonal_image().len() == 1;
    if latin != singleton {
        return Err(Discrepancy::new(
            "Corollary idempotentlatin: latin iff |Lambda| = 1",
            format!("latin = {latin}, |Lambda| = 1 is {singleton}"),
            s.flat_lambda(),
        )
        .into());
    }
    Ok(latin)
}

/// Parameters of the Rees-matrix family `X = G × {0..ncols}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReesParams {
    pub group: Vec<Vec<Point>>,
    pub ncols: usize,
    /// Columns fixed by `θ`.
    pub a: Vec<Point>,
    /// `θ` on the remaining columns, as `[b, t(b)]` pairs.
    pub t: Vec<(Point, Point)>,
    /// Automorphism of the group; identity when absent.
    #[serde(default)]
    pub f: Option<Perm>,
    /// Column permutation fixing `a`; identity when absent.
    #[serde(default)]
    pub psi: Option<Perm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReesExample {
    pub descriptor: Descriptor,
    pub hypotheses: DescriptorHypotheses,
    pub fineq: FineqReport,
    pub rmap: RMap,
    pub report: VerificationReport,
}

impl ReesExample {
    /// The identity check and the direct check disagree.
    pub fn disagrees(&self) -> bool {
        self.fineq.all_hold() != self.report.is_valid()
    }
}

/// Builds the descriptor with `(g,i)·(h,j) = (gh, j)`, `q(g,i) = (e, θ(i))`
/// and `φ(g,i) = (f(g), ψ(i))`, then evaluates the identity check and the
/// converse construction independently. The point `(g, i)` is `i·|G| + g`.
pub fn from_rees_example(params: &ReesParams) -> Result<ReesExample> {
    let g = &params.group;
    let e = invariants::is_group_table(g)
        .map_err(|axiom| Error::arg(format!("not a group table: {axiom} fails")))?;
    let (order, cols) = (g.len(), params.ncols);
    if cols == 0 || cols % 2 != 0 {
        return Err(Error::arg("ncols must be a positive even number"));
    }
    let a: BTreeSet<Point> = params.a.iter().copied().collect();
    if a.len() != cols / 2 || a.len() != params.a.len() || a.iter().any(|&c| c >= cols) {
        return Err(Error::arg("a must list ncols/2 distinct columns"));
    }
    let mut theta: Vec<Option<Point>> = (0..cols).map(|c| a.contains(&c).then_some(c)).collect();
    for &(b, target) in &params.t {
        if b >= cols || a.contains(&b) || theta[b].is_some() {
            return Err(Error::arg(format!("t: column {b} is not a fresh column outside a")));
        }
        theta[b] = Some(target);
    }
    let theta: Vec<Point> = theta
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| Error::arg("t must be defined on every column outside a"))?;
    let t_image: BTreeSet<Point> = params.t.iter().map(|&(_, v)| v).collect();
    if t_image != a {
        return Err(Error::arg("t must be a bijection onto a"));
    }
    let f = params.f.clone().unwrap_or_else(|| Perm::identity(order));
    if f.len() != order
        || (0..order).any(|x| (0..order).any(|y| f.apply(g[x][y]) != g[f.apply(x)][f.apply(y)]))
    {
        return Err(Error::arg("f is not an automorphism of the group"));
    }
    let psi = params.psi.clone().unwrap_or_else(|| Perm::identity(cols));
    if psi.len() != cols || a.iter().any(|&c| psi.apply(c) != c) {
        return Err(Error::arg("psi must permute the columns and fix a pointwise"));
    }

    let n = order * cols;
    let pt = |h: Point, i: Point| i * order + h;
    let op = (0..n)
        .map(|x| (0..n).map(|y| pt(g[x % order][y % order], y / order)).collect())
        .collect();
    let q = (0..n).map(|x| pt(e, theta[x / order])).collect();
    let phi = Perm::from_images((0..n).map(|x| pt(f.apply(x % order), psi.apply(x / order))).collect())?;
    let descriptor = Descriptor::new(n, op, q, vec![phi; n])?;
    let fineq = invariants::check_fineq(&descriptor);
    let (rmap, report) = invariants::reconstruct(&descriptor);
    Ok(ReesExample {
        hypotheses: invariants::descriptor_hypotheses(&descriptor),
        descriptor,
        fineq,
        rmap,
        report,
    })
}
