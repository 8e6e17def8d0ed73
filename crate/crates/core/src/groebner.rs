//! Quadratic rewriting systems for structure algebras.
//!
//! Words are compared in degree-lexicographic order: first by length, then
//! lexicographically with respect to a chosen order on letters. Every rule
//! is quadratic and rewrites a two-letter word to a smaller one, so
//! reduction terminates.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monoid;
use crate::perm::Point;
use crate::solution::Solution;

pub type Word = Vec<Point>;

/// Default bound on completion rounds.
pub const COMPLETION_ROUNDS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "([Point; 2], [Point; 2])", into = "([Point; 2], [Point; 2])")]
pub struct Rule {
    pub lhs: [Point; 2],
    pub rhs: [Point; 2],
}

impl From<([Point; 2], [Point; 2])> for Rule {
    fn from((lhs, rhs): ([Point; 2], [Point; 2])) -> Self {
        Rule { lhs, rhs }
    }
}

impl From<Rule> for ([Point; 2], [Point; 2]) {
    fn from(r: Rule) -> Self {
        (r.lhs, r.rhs)
    }
}

#[derive(Serialize, Deserialize)]
struct SystemFile {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<Vec<Point>>,
    rules: Vec<Rule>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SystemFile", into = "SystemFile")]
pub struct RewriteSystem {
    n: usize,
    /// `rank[x]` is the position of `x` in the letter order.
    rank: Vec<usize>,
    rules: BTreeMap<[Point; 2], [Point; 2]>,
}

impl TryFrom<SystemFile> for RewriteSystem {
    type Error = Error;

    fn try_from(f: SystemFile) -> Result<Self> {
        let mut rs = match f.order {
            Some(order) => RewriteSystem::with_order(order)?,
            None => RewriteSystem::empty(f.n),
        };
        if rs.n != f.n {
            return Err(Error::Malformed(format!(
                "letter order has {} letters, expected {}",
                rs.n, f.n
            )));
        }
        for r in f.rules {
            rs.add_rule(r)?;
        }
        Ok(rs)
    }
}

impl From<RewriteSystem> for SystemFile {
    fn from(rs: RewriteSystem) -> Self {
        let order = (!rs.has_default_order()).then(|| rs.order());
        SystemFile {
            n: rs.n,
            order,
            rules: rs.rules().collect(),
        }
    }
}

impl RewriteSystem {
    pub fn empty(n: usize) -> Self {
        RewriteSystem {
            n,
            rank: (0..n).collect(),
            rules: BTreeMap::new(),
        }
    }

    /// An empty system whose letter order lists `order` from smallest to largest.
    pub fn with_order(order: Vec<Point>) -> Result<Self> {
        let n = order.len();
        let mut rank = vec![usize::MAX; n];
        for (i, &x) in order.iter().enumerate() {
            if x >= n || rank[x] != usize::MAX {
                return Err(Error::Malformed("letter order is not a permutation".into()));
            }
            rank[x] = i;
        }
        Ok(RewriteSystem {
            n,
            rank,
            rules: BTreeMap::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> Vec<Point> {
        let mut order: Vec<Point> = (0..self.n).collect();
        order.sort_by_key(|&x| self.rank[x]);
        order
    }

    fn has_default_order(&self) -> bool {
        self.rank.iter().enumerate().all(|(i, &r)| i == r)
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn rules(&self) -> impl Iterator<Item = Rule> + '_ {
        self.rules.iter().map(|(&lhs, &rhs)| Rule { lhs, rhs })
    }

    pub fn rule_for(&self, lhs: [Point; 2]) -> Option<[Point; 2]> {
        self.rules.get(&lhs).copied()
    }

    /// Deglex comparison of two words.
    pub fn cmp_words(&self, a: &[Point], b: &[Point]) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            a.iter()
                .map(|&x| self.rank[x])
                .cmp(b.iter().map(|&x| self.rank[x]))
        })
    }

    pub fn add_rule(&mut self, r: Rule) -> Result<()> {
        if r.lhs.iter().chain(&r.rhs).any(|&x| x >= self.n) {
            return Err(Error::Malformed(format!("rule {r:?} uses a letter outside 0..{}", self.n)));
        }
        if self.cmp_words(&r.rhs, &r.lhs) != Ordering::Less {
            return Err(Error::Malformed(format!("rule {r:?} does not decrease in deglex order")));
        }
        if self.rules.insert(r.lhs, r.rhs).is_some() {
            return Err(Error::Malformed(format!("two rules share the left side {:?}", r.lhs)));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// The system for constant λ: `yz → 0z` for every `y > 0` and every `z`.
pub fn constant_rules(n: usize) -> RewriteSystem {
    let mut rs = RewriteSystem::empty(n);
    for y in 1..n {
        for z in 0..n {
            rs.rules.insert([y, z], [0, z]);
        }
    }
    rs
}

/// Rewrites the leftmost reducible pair until the word is normal.
pub fn reduce(rs: &RewriteSystem, w: &[Point]) -> Word {
    let mut w = w.to_vec();
    let mut i = 0;
    while i + 1 < w.len() {
        match rs.rules.get(&[w[i], w[i + 1]]) {
            Some(rhs) => {
                w[i] = rhs[0];
                w[i + 1] = rhs[1];
                // the new left letter may now pair with its predecessor
                i = i.saturating_sub(1);
            }
            None => i += 1,
        }
    }
    w
}

pub fn is_normal(rs: &RewriteSystem, w: &[Point]) -> bool {
    w.windows(2).all(|p| !rs.rules.contains_key(&[p[0], p[1]]))
}

/// An overlap `abc` whose two one-step resolutions reduce differently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ambiguity {
    pub word: [Point; 3],
    pub via_left: Word,
    pub via_right: Word,
}

pub fn check_overlaps(rs: &RewriteSystem) -> Vec<Ambiguity> {
    let mut out = Vec::new();
    for (&[a, b], &left) in &rs.rules {
        for (&[_, c], &right) in rs.rules.range([b, 0]..[b + 1, 0]) {
            let via_left = reduce(rs, &[left[0], left[1], c]);
            let via_right = reduce(rs, &[a, right[0], right[1]]);
            if via_left != via_right {
                out.push(Ambiguity {
                    word: [a, b, c],
                    via_left,
                    via_right,
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WordCounts {
    /// Irreducible words of length `1..=L`.
    pub counts: Vec<usize>,
    /// False when the system has unresolved overlaps, in which case the
    /// counts only bound the algebra's dimensions from above.
    pub certified: bool,
}

pub fn normal_word_count(rs: &RewriteSystem, max_len: usize) -> WordCounts {
    let n = rs.n;
    let mut ending = vec![1usize; n];
    let mut counts = Vec::with_capacity(max_len);
    for len in 1..=max_len {
        if len > 1 {
            ending = (0..n)
                .map(|b| {
                    (0..n)
                        .filter(|&a| !rs.rules.contains_key(&[a, b]))
                        .map(|a| ending[a])
                        .sum()
                })
                .collect();
        }
        counts.push(ending.iter().sum());
    }
    WordCounts {
        counts,
        certified: check_overlaps(rs).is_empty(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompletionStatus {
    Confluent,
    NotQuadraticallyConfluent,
    RoundLimit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletionReport {
    pub status: CompletionStatus,
    pub rounds: usize,
    /// Overlaps left unresolved; each is a cubic consequence that no
    /// quadratic rule can express.
    pub unresolved: Vec<Ambiguity>,
}

/// Orients the defining relations `xy = λ_x(y)ρ_y(x)` of the structure
/// monoid and completes them as far as quadratic rules allow.
pub fn solution_rules(s: &Solution) -> (RewriteSystem, CompletionReport) {
    solution_rules_bounded(s, COMPLETION_ROUNDS)
}

pub fn solution_rules_bounded(s: &Solution, max_rounds: usize) -> (RewriteSystem, CompletionReport) {
    let n = s.n();
    let lam = s.lambda_table();
    let rho = s.rho_table();
    // class[w] is the deglex-smallest two-letter word equivalent to w
    let mut class: Vec<[Point; 2]> = (0..n * n).map(|w| [w / n, w % n]).collect();
    let idx = |w: [Point; 2]| w[0] * n + w[1];
    let mut rounds = 0;
    let mut changed = true;
    while changed && rounds < max_rounds {
        changed = false;
        rounds += 1;
        for a in 0..n {
            for b in 0..n {
                let (u, v) = (idx([a, b]), idx([lam[a][b], rho[a][b]]));
                let m = class[u].min(class[v]);
                for w in [u, v] {
                    if class[w] != m {
                        class[w] = m;
                        changed = true;
                    }
                }
            }
        }
        // propagate through class representatives
        for w in 0..n * n {
            let rep = class[idx(class[w])];
            if rep < class[w] {
                class[w] = rep;
                changed = true;
            }
        }
    }

    let mut rs = RewriteSystem::empty(n);
    for (w, &rep) in class.iter().enumerate() {
        let lhs = [w / n, w % n];
        if rep != lhs {
            rs.rules.insert(lhs, rep);
        }
    }
    let status_if_done = |unresolved: &Vec<Ambiguity>| {
        if unresolved.is_empty() {
            CompletionStatus::Confluent
        } else {
            CompletionStatus::NotQuadraticallyConfluent
        }
    };
    let unresolved = check_overlaps(&rs);
    let status = if changed {
        CompletionStatus::RoundLimit
    } else {
        status_if_done(&unresolved)
    };
    (
        rs,
        CompletionReport {
            status,
            rounds,
            unresolved,
        },
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthComparison {
    pub normal_words: Vec<usize>,
    pub growth: Vec<usize>,
    pub agree: bool,
}

/// Compares normal-word counts of `rs` with the monoid's growth.
pub fn compare_with_growth(s: &Solution, rs: &RewriteSystem, max_len: usize) -> Result<GrowthComparison> {
    let normal_words = normal_word_count(rs, max_len).counts;
    let growth = monoid::growth(s, max_len)?.model;
    Ok(GrowthComparison {
        agree: normal_words == growth,
        normal_words,
        growth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn rule(lhs: [Point; 2], rhs: [Point; 2]) -> Rule {
        Rule { lhs, rhs }
    }

    #[test]
    fn constant_rules_examples() {
        let two: Vec<Rule> = constant_rules(2).rules().collect();
        assert_eq!(two, vec![rule([1, 0], [0, 0]), rule([1, 1], [0, 1])]);
        assert!(constant_rules(1).is_empty());
        let three = constant_rules(3);
        assert_eq!(three.len(), 6);
        assert!(three.rules().all(|r| r.rhs == [0, r.lhs[1]]));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&constant_rules(2), &[1, 1, 0]), vec![0, 0, 0]);
        assert_eq!(reduce(&RewriteSystem::empty(3), &[2, 1, 0]), vec![2, 1, 0]);
        assert_eq!(reduce(&constant_rules(3), &[2, 1]), vec![0, 1]);
    }

    #[test]
    fn overlaps_of_small_systems() {
        assert!(check_overlaps(&constant_rules(2)).is_empty());
        assert!(check_overlaps(&constant_rules(3)).is_empty());
        let mut comm = RewriteSystem::empty(2);
        comm.add_rule(rule([1, 0], [0, 1])).unwrap();
        assert!(check_overlaps(&comm).is_empty());
    }

    #[test]
    fn overlap_failure_is_reported() {
        // 21 → 00 and 10 → 02: the overlap 210 resolves to 000 and 202
        let mut rs = RewriteSystem::empty(3);
        rs.add_rule(rule([2, 1], [0, 0])).unwrap();
        rs.add_rule(rule([1, 0], [0, 2])).unwrap();
        let amb = check_overlaps(&rs);
        assert_eq!(
            amb,
            vec![Ambiguity { word: [2, 1, 0], via_left: vec![0, 0, 0], via_right: vec![2, 0, 2] }]
        );
    }

    #[test]
    fn normal_word_count_examples() {
        assert_eq!(normal_word_count(&constant_rules(2), 4).counts, vec![2; 4]);
        assert_eq!(normal_word_count(&constant_rules(1), 3).counts, vec![1; 3]);
        let c = normal_word_count(&constant_rules(3), 3);
        assert_eq!(c.counts, vec![3; 3]);
        assert!(c.certified);
    }

    #[test]
    fn solution_rules_examples() {
        let (rs, rep) = solution_rules(&fixtures::proj3());
        assert_eq!(rs, constant_rules(3));
        assert_eq!(rep.status, CompletionStatus::Confluent);

        let (rs, rep) = solution_rules(&fixtures::triv());
        assert!(rs.is_empty());
        assert_eq!(rep.status, CompletionStatus::Confluent);

        let z2 = fixtures::z2();
        let (rs, rep) = solution_rules(&z2);
        // relation classes {00, 11} and {01, 10}
        let rules: Vec<Rule> = rs.rules().collect();
        assert_eq!(rules, vec![rule([1, 0], [0, 1]), rule([1, 1], [0, 0])]);
        assert_eq!(rep.status, CompletionStatus::Confluent);
        assert!(compare_with_growth(&z2, &rs, 6).unwrap().agree);
    }

    #[test]
    fn rejects_bad_rules() {
        let mut rs = RewriteSystem::empty(2);
        assert!(rs.add_rule(rule([0, 0], [1, 0])).is_err());
        assert!(rs.add_rule(rule([0, 2], [0, 0])).is_err());
        rs.add_rule(rule([1, 1], [0, 0])).unwrap();
        assert!(rs.add_rule(rule([1, 1], [0, 1])).is_err());
    }

    #[test]
    fn custom_order_changes_orientation() {
        let mut rs = RewriteSystem::with_order(vec![1, 0]).unwrap();
        assert!(rs.add_rule(rule([0, 0], [1, 1])).is_ok());
        assert!(RewriteSystem::with_order(vec![0, 0]).is_err());
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(constant_rules(2)).unwrap();
        assert_eq!(v, serde_json::json!({"n": 2, "rules": [[[1, 0], [0, 0]], [[1, 1], [0, 1]]]}));
        let back = RewriteSystem::from_json(&v.to_string()).unwrap();
        assert_eq!(back, constant_rules(2));
        assert!(RewriteSystem::from_json(r#"{"n":2,"rules":[[[0,0],[1,1]]]}"#).is_err());
    }
}
