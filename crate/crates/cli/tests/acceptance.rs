//! One pass/fail line per acceptance criterion; exits non-zero if any
//! criterion fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use ybx_core::groebner;
use ybx_core::invariants::{self, Descriptor};
use ybx_core::monoid::{self, MElem};
use ybx_core::search::{self, EnumOptions, Prune};
use ybx_core::solution::{identity_holds, lambda_word, Counterexample, RMap};
use ybx_core::{check, fixtures, Point, Solution};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn pool() -> Vec<Solution> {
    (1..=4)
        .flat_map(|n| search::enumerate(&EnumOptions::new(n)).unwrap().solutions)
        .collect()
}

fn flat_set(sols: &[Solution]) -> BTreeSet<Vec<Point>> {
    sols.iter().map(Solution::flat_lambda).collect()
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn fixture_values() -> Outcome {
    let id = |n: usize| -> Vec<Point> { (0..n).collect() };
    #[allow(clippy::type_complexity)]
    let expected: Vec<(&str, Vec<Point>, Vec<Point>, usize, Vec<Vec<Point>>, Vec<Point>)> = vec![
        ("triv", vec![0], vec![0], 1, vec![vec![0]], vec![0]),
        ("swap2", vec![1, 0], vec![0, 1], 2, vec![vec![0, 1], vec![0, 1]], vec![1, 0]),
        ("z2", vec![0, 0], vec![0], 2, vec![vec![0, 1], vec![1, 0]], id(2)),
        (
            "z3inv",
            vec![0, 0, 0],
            vec![0],
            6,
            vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
            vec![0, 2, 1],
        ),
        ("proj3", id(3), id(3), 1, vec![id(3); 3], id(3)),
    ];
    let fixtures = fixtures::all();
    ensure!(fixtures.len() == expected.len(), "fixture list has {} entries", fixtures.len());
    for ((name, s), (ename, q, lam, d, op, phi)) in fixtures.iter().zip(expected) {
        ensure!(*name == ename, "fixture order: {name} vs {ename}");
        let report = check(&s.to_rmap());
        ensure!(
            report.ybe1 && report.ybe2 && report.ybe3 && report.left_nondegenerate && report.idempotent,
            "{name}: {}",
            report.summary()
        );
        let diag = invariants::diagonal(s).map_err(err)?;
        ensure!(diag.q == q, "{name}: q = {:?}", diag.q);
        ensure!(diag.lambda_image == lam, "{name}: Λ = {:?}", diag.lambda_image);
        ensure!(diag.d == d, "{name}: d = {}", diag.d);
        let sg = invariants::semigroup(s).map_err(err)?;
        ensure!(sg.op == op, "{name}: x·y table {:?}", sg.op);
        let phis = invariants::phi_maps(s).map_err(err)?;
        ensure!(
            phis.iter().all(|p| p.images() == phi.as_slice()),
            "{name}: φ = {phis:?}"
        );
    }
    Ok("5 fixtures: all identities hold; q, Λ, d, x·y and φ exact".into())
}

fn enumeration_ground_truth() -> Outcome {
    let two = search::enumerate(&EnumOptions::new(2)).map_err(err)?.solutions;
    ensure!(two.len() == 4, "enumerate(2) gave {}", two.len());
    let classes = search::classify(2).map_err(err)?;
    ensure!(classes.len() == 3, "classify(2) gave {}", classes.len());
    let oracle = search::brute_force(2).map_err(err)?;
    ensure!(flat_set(&two) == flat_set(&oracle), "enumerate(2) differs from brute force");
    for n in 1..=3 {
        let pruned = search::enumerate(&EnumOptions::new(n)).map_err(err)?.solutions;
        let mut opts = EnumOptions::new(n);
        opts.prune = Prune::NONE;
        let unpruned = search::enumerate(&opts).map_err(err)?.solutions;
        let brute = search::brute_force(n).map_err(err)?;
        ensure!(
            flat_set(&pruned) == flat_set(&unpruned) && flat_set(&unpruned) == flat_set(&brute),
            "n = {n}: pruned {}, unpruned {}, brute force {}",
            pruned.len(),
            unpruned.len(),
            brute.len()
        );
    }
    Ok("n=2: 4 solutions, 3 classes = brute force; pruned = unpruned = brute force for n ≤ 3".into())
}

fn bijective_q_count() -> Outcome {
    let mut found = Vec::new();
    for n in 1..=4 {
        let full = search::classify(n)
            .map_err(err)?
            .iter()
            .filter(|r| r.diag_size == n)
            .count() as u64;
        let p = search::partition_number(n).map_err(err)?;
        ensure!(full == p, "n = {n}: {full} classes with Λ = X, p(n) = {p}");
        found.push(full);
    }
    ensure!(found == [1, 2, 3, 5], "counts {found:?}");
    Ok(format!("classes with Λ = X for n = 1..4: {found:?} = p(n)"))
}

fn prime_case() -> Outcome {
    let mut parts = Vec::new();
    for (p, exhaustive) in [(2, true), (3, true), (5, false), (5, true)] {
        let r = search::check_prime_classification(p, exhaustive).map_err(err)?;
        let total = r.permutation_classes + r.automorphism_classes;
        if let Some(e) = r.enumerated_classes {
            ensure!(e == total, "p = {p}: {e} enumerated vs {total} generated");
        }
        if exhaustive {
            parts.push(format!("p={p}: {} + {} = {total} (exhaustive)", r.permutation_classes, r.automorphism_classes));
        } else {
            parts.push(format!("p={p}: {total} distinct family classes, all verified"));
        }
    }
    Ok(parts.join("; "))
}

fn descriptor_round_trip(pool: &[Solution]) -> Outcome {
    for s in pool {
        ensure!(invariants::roundtrip(s).map_err(err)?, "round trip fails for {:?}", s.flat_lambda());
        let dsc = invariants::descriptor(s).map_err(err)?;
        let fineq = invariants::check_fineq(&dsc);
        ensure!(fineq.all_hold(), "{:?} fails {:?}", s.flat_lambda(), fineq.first_failure());
        let (m, report) = invariants::reconstruct(&dsc);
        ensure!(report.is_valid() && m == s.to_rmap(), "reconstruction differs for {:?}", s.flat_lambda());
    }
    Ok(format!("{} solutions: λ and ρ reproduced, all four identities hold", pool.len()))
}

fn structure_lemmas(pool: &[Solution]) -> Outcome {
    let mut discrepancies = Vec::new();
    let mut note = |r: Result<(), ybx_core::Error>| -> Result<(), String> {
        match r {
            Ok(()) => Ok(()),
            Err(ybx_core::Error::Discrepancy(d)) => {
                discrepancies.push(d.to_string());
                Ok(())
            }
            Err(e) => Err(e.to_string()),
        }
    };
    for s in pool {
        let (n, d) = (s.n(), s.d());
        let tag = s.flat_lambda();
        let elems: Vec<MElem> = (1..=2 * d).flat_map(|k| (0..n).map(move |x| MElem::new(k, x))).collect();
        for &a in &elems {
            let u = monoid::component(s, a).map_err(err)?;
            let c = MElem::new(d, u);
            ensure!(monoid::mul(s, c, a) == monoid::mul(s, a, c), "{tag:?}: c_{u} not central at {a:?}");
            ensure!(
                monoid::pow(s, a, d) == monoid::pow(s, c, a.k),
                "{tag:?}: a^d ≠ c_u^|a| at {a:?}"
            );
            for &b in &elems {
                ensure!(
                    monoid::component(s, monoid::mul(s, a, b)).map_err(err)? == monoid::component(s, b).map_err(err)?,
                    "{tag:?}: grading fails at {a:?}, {b:?}"
                );
            }
        }
        let parts = invariants::partition(s).map_err(err)?;
        let lam = s.diagonal_image();
        for (&u, xs) in &parts {
            ensure!(n == lam.len() * xs.len(), "{tag:?}: |X| ≠ |Λ|·|X_{u}|");
            let tor = invariants::torsion(s, u).map_err(err)?;
            let g = &tor.elements;
            for &x in g {
                ensure!(tor.mul(tor.identity, x) == x && tor.mul(x, tor.identity) == x, "{tag:?}: identity of T(G_{u})");
                ensure!(g.iter().any(|&y| tor.mul(x, y) == tor.identity), "{tag:?}: {x} has no inverse");
                for &y in g {
                    for &z in g {
                        ensure!(
                            tor.mul(tor.mul(x, y), z) == tor.mul(x, tor.mul(y, z)),
                            "{tag:?}: T(G_{u}) not associative"
                        );
                    }
                }
            }
            ensure!(tor.orders.iter().all(|&o| d % o == 0), "{tag:?}: order does not divide d");
            let lu = s.lambda(u);
            for &x in xs {
                let dx = lambda_word(s, x, d).map_err(err)?;
                ensure!(*s.lambda(x) == dx.compose(lu), "{tag:?}: λ_x ≠ λ_dx∘λ_u at x = {x}");
            }
        }
        note(invariants::fixed_point_remark(s))?;
        note(invariants::q_power_identity(s))?;
        note(monoid::lambda_du_identity(s))?;
        note(invariants::diagonal(s).map(drop))?;
        note(invariants::semigroup(s).map(drop))?;
        for &u in &lam {
            note(monoid::conjugation_action(s, u).map(drop))?;
            note(invariants::torsion_iso(s, lam[0], u).map(drop))?;
        }
    }
    ensure!(discrepancies.is_empty(), "{} discrepancies: {}", discrepancies.len(), discrepancies[0]);
    Ok(format!("{} solutions: grading, centrality, T(G_u), |X_u|, λ factorization, fixed points; 0 discrepancies", pool.len()))
}

fn growth_witness(pool: &[Solution]) -> Outcome {
    for s in pool {
        let n = s.n();
        let g = monoid::growth(s, 8).map_err(err)?;
        ensure!(g.oracle == vec![n; 8] && g.model == g.oracle, "{:?}: growth {:?}", s.flat_lambda(), g);
        for len in 1..=4u32 {
            for code in 0..n.pow(len) {
                let word: Vec<Point> = (0..len).map(|i| code / n.pow(i) % n).collect();
                for t in 0..n {
                    let nf = monoid::normal_form(s, &word, t).map_err(err)?;
                    let rebuilt = monoid::mul(s, monoid::pow(s, MElem::generator(t), word.len() - 1), MElem::generator(nf.letter));
                    ensure!(
                        rebuilt == nf.element && nf.element == monoid::word_element(s, &word),
                        "{:?}: normal form of {word:?} at t = {t}",
                        s.flat_lambda()
                    );
                }
            }
        }
    }
    Ok(format!("{} solutions: n classes in every degree 1..8; t^(k-1)∘x normal forms re-multiply", pool.len()))
}

fn algebra_equivalences(pool: &[Solution]) -> Outcome {
    let mut singletons = 0;
    for s in pool {
        let d = s.d();
        let single = s.diagonal_image().len() == 1;
        let canc = monoid::is_cancellative(s, 2 * d + 1).map_err(err)?.cancellative;
        let latin = search::is_latin(s).map_err(err)?;
        let central = !monoid::center_basis(s, d).map_err(err)?.is_empty();
        ensure!(
            canc == single && latin == single && central == single,
            "{:?}: |Λ|=1 {single}, cancellative {canc}, latin {latin}, center {central}",
            s.flat_lambda()
        );
        singletons += usize::from(single);
    }
    Ok(format!("{} solutions ({singletons} with |Λ| = 1): cancellative ⟺ |Λ|=1 ⟺ latin ⟺ nonzero center", pool.len()))
}

fn constant_groebner() -> Outcome {
    for n in 1..=8 {
        let rs = groebner::constant_rules(n);
        let amb = groebner::check_overlaps(&rs);
        ensure!(amb.is_empty(), "n = {n}: {} unresolved ambiguities", amb.len());
        let counts = groebner::normal_word_count(&rs, 8);
        ensure!(counts.counts == vec![n; 8], "n = {n}: counts {:?}", counts.counts);
    }
    Ok("n = 1..8: no unresolved overlaps, n normal words in each degree ≤ 8".into())
}

fn points(v: &Value) -> Vec<Point> {
    serde_json::from_value(v.clone()).expect("point list")
}

fn special_example() -> Outcome {
    let params = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/rees_trivial_g4.json");
    let out = Command::new(env!("CARGO_BIN_EXE_ybx"))
        .args(["construct", "--type", "rees-example", "--params"])
        .arg(&params)
        .output()
        .map_err(err)?;
    let code = out.status.code().ok_or("killed by a signal")?;
    ensure!(code == 0 || code == 3, "exit code {code}");
    let r: Value = serde_json::from_slice(&out.stdout).map_err(err)?;
    let dsc = Descriptor::from_json(&r["descriptor"].to_string()).map_err(err)?;
    let rmap: RMap = RMap::new(
        dsc.n,
        serde_json::from_value(r["rmap"]["lambda"].clone()).map_err(err)?,
        serde_json::from_value(r["rmap"]["rho"].clone()).map_err(err)?,
    )
    .map_err(err)?;

    // the emitted reports agree with fresh in-process evaluations
    let fineq = invariants::check_fineq(&dsc);
    ensure!(r["fineq"] == serde_json::to_value(&fineq).unwrap(), "fineq report differs on re-evaluation");
    let direct = check(&rmap);
    ensure!(r["verification"] == serde_json::to_value(&direct).unwrap(), "direct report differs on re-evaluation");

    // every counterexample is a genuine failure
    for (name, holds) in [
        ("fineq1", invariants::fineq1_holds as fn(&Descriptor, Point, Point, Point) -> bool),
        ("fineq2", invariants::fineq2_holds),
        ("fineq3", invariants::fineq3_holds),
    ] {
        let check = &r["fineq"][name];
        if let Some(cx) = check["counterexample"].as_array() {
            let p = points(&Value::Array(cx.clone()));
            ensure!(!holds(&dsc, p[0], p[1], p[2]), "{name} counterexample {p:?} holds");
        } else {
            ensure!(check["holds"] == true, "{name} fails without a counterexample");
        }
    }
    if let Some(cx) = r["fineq"]["fineq4"]["counterexample"].as_array() {
        let p = points(&Value::Array(cx.clone()));
        ensure!(!invariants::fineq4_holds(&dsc, p[0]), "fineq4 counterexample {p:?} holds");
    }
    if !r["verification"]["first_counterexample"].is_null() {
        let cx: Counterexample = serde_json::from_value(r["verification"]["first_counterexample"].clone()).map_err(err)?;
        ensure!(
            !identity_holds(&rmap, cx.identity, &cx.points),
            "direct counterexample {cx:?} holds"
        );
    }
    let fineq_ok = fineq.all_hold();
    ensure!(
        (code == 3) == (fineq_ok != direct.is_valid()),
        "exit {code} with identity check {fineq_ok}, direct check {}",
        direct.is_valid()
    );
    Ok(format!(
        "exit {code}: identity check {}, direct check {}{}",
        if fineq_ok { "passes" } else { "fails" },
        if direct.is_valid() { "passes" } else { "fails" },
        direct
            .first_counterexample
            .map(|c| format!(" ({} at {:?}, re-evaluated)", c.identity, c.points))
            .unwrap_or_default()
    ))
}

fn main() {
    let pool = pool();
    let criteria: Vec<Criterion> = vec![
        ("fixture verification", Box::new(fixture_values)),
        ("enumeration ground truth", Box::new(enumeration_ground_truth)),
        ("bijective-q classes = partitions", Box::new(bijective_q_count)),
        ("prime cardinality families", Box::new(prime_case)),
        ("descriptor round trip", Box::new(|| descriptor_round_trip(&pool))),
        ("structure lemmas", Box::new(|| structure_lemmas(&pool))),
        ("growth witness", Box::new(|| growth_witness(&pool))),
        ("algebra equivalences", Box::new(|| algebra_equivalences(&pool))),
        ("constant-λ Gröbner basis", Box::new(constant_groebner)),
        ("special Rees example probe", Box::new(special_example)),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
