//! The `analyze` report: every invariant of a verified solution, with the
//! claim each one checks.

use std::collections::BTreeMap;

use serde::Serialize;
use ybx_core::groebner::{self, CompletionReport, GrowthComparison};
use ybx_core::invariants::{self, DescriptorHypotheses, SimpleSemigroupTable, TorsionGroupTable};
use ybx_core::monoid::{self, CancellationReport, ConjugationAction, GrowthReport};
use ybx_core::search;
use ybx_core::{Discrepancy, Error, FineqReport, Perm, Point, Solution, SolutionFile, VerificationReport};

#[derive(Debug, Serialize)]
pub struct Verdict {
    pub statement: &'static str,
    pub value: bool,
    pub citation: &'static str,
}

#[derive(Debug, Serialize)]
pub struct CenterReport {
    pub degree: usize,
    pub dimension: usize,
    /// Coefficients of `(degree, x)`, as exact fractions.
    pub basis: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct SemigroupReport {
    #[serde(flatten)]
    pub table: SimpleSemigroupTable,
    /// `(|G|, columns)` of `M(G, 1, columns, J)`.
    pub rees_type: (usize, usize),
    pub citation: &'static str,
}

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    pub solution: SolutionFile,
    pub verification: VerificationReport,
    pub q: Vec<Point>,
    pub lambda_image: Vec<Point>,
    pub d: usize,
    pub partition: BTreeMap<Point, Vec<Point>>,
    pub semigroup: Option<SemigroupReport>,
    pub torsion: Vec<TorsionGroupTable>,
    pub conjugation: Vec<ConjugationAction>,
    pub phi: Vec<Perm>,
    pub descriptor_hypotheses: Option<DescriptorHypotheses>,
    pub fineq: Option<FineqReport>,
    pub cancellative: Option<CancellationReport>,
    pub latin: Option<bool>,
    pub growth: Option<GrowthReport>,
    pub center: CenterReport,
    pub groebner: GroebnerSummary,
    pub algebra: Vec<Verdict>,
    pub discrepancies: Vec<Discrepancy>,
}

#[derive(Debug, Serialize)]
pub struct GroebnerSummary {
    pub rules: usize,
    pub completion: CompletionReport,
    pub growth: Option<GrowthComparison>,
}

#[derive(Debug, Clone, Copy)]
pub struct AnalyzeOptions {
    pub max_len: usize,
    /// Degree for the center computation; `None` uses `d`.
    pub center: Option<usize>,
}

/// Collects discrepancies instead of aborting on the first one.
struct Collector(Vec<Discrepancy>);

impl Collector {
    fn keep<T>(&mut self, r: Result<T, Error>) -> Result<Option<T>, Error> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(Error::Discrepancy(d)) => {
                self.0.push(*d);
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }

    fn claim(&mut self, holds: bool, claim: &str, detail: impl Into<String>) {
        if !holds {
            self.0.push(Discrepancy::new(claim, detail, vec![]));
        }
    }
}

pub fn analyze(s: &Solution, opts: AnalyzeOptions) -> Result<AnalyzeReport, Error> {
    let mut c = Collector(Vec::new());
    let d = s.d();
    let lam = s.diagonal_image();
    let singleton = lam.len() == 1;

    c.keep(invariants::diagonal(s))?;
    c.keep(invariants::q_power_identity(s))?;
    c.keep(invariants::fixed_point_remark(s))?;
    c.keep(monoid::lambda_du_identity(s))?;
    let partition = c.keep(invariants::partition(s))?.unwrap_or_default();
    let semigroup = c.keep(invariants::semigroup(s))?.map(|table| SemigroupReport {
        rees_type: table.rees_type(),
        table,
        citation: "Thm descriptionsimplecover: (X,·) ≅ M(T(G_u), 1, |Lambda|, J)",
    });
    let mut torsion = Vec::new();
    let mut conjugation = Vec::new();
    for &u in &lam {
        if let Some(t) = c.keep(invariants::torsion(s, u))? {
            torsion.push(t);
        }
        if let Some(a) = c.keep(monoid::conjugation_action(s, u))? {
            conjugation.push(a);
        }
    }
    for &u in &lam {
        c.keep(invariants::torsion_iso(s, lam[0], u))?;
    }
    let phi = invariants::phi_maps(s)?;
    let dsc = c.keep(invariants::descriptor(s))?;
    let fineq = dsc.as_ref().map(invariants::check_fineq);
    if let Some(all_phi) = fineq.as_ref().and_then(|f| f.allphi.as_ref()) {
        let claim = "Cor. allphiequal: with all phi_x equal, (fineq1)-(fineq4) are equivalent to the reduced conditions";
        for (name, check) in [
            ("phi in Aut(X,·)", &all_phi.automorphism),
            ("phi q = q^2", &all_phi.phi_q_eq_q2),
            ("q = q^4", &all_phi.q_eq_q4),
            ("q(x·q^2(x)) = q(x)", &all_phi.q_x_q2x),
        ] {
            if let Some(cx) = &check.counterexample {
                c.0.push(Discrepancy::new(claim, format!("{name} fails while (fineq1)-(fineq4) hold"), cx.clone()));
            }
        }
    }
    if dsc.is_some() {
        c.keep(invariants::roundtrip(s))?;
    }

    let cancellative = c.keep(monoid::is_cancellative(s, 2 * d + 1))?;
    let latin = c.keep(search::is_latin(s))?;
    let growth = c.keep(monoid::growth(s, opts.max_len))?;
    let center_degree = opts.center.unwrap_or(d);
    let basis = monoid::center_basis(s, center_degree)?;
    if center_degree == d {
        c.claim(
            basis.is_empty() != singleton,
            "Thm algebrastructure (1)<=>(5): K[M] is not central iff |Lambda| = 1",
            format!("degree-{d} center has dimension {}", basis.len()),
        );
    }
    let center = CenterReport {
        degree: center_degree,
        dimension: basis.len(),
        basis: basis
            .iter()
            .map(|v| v.iter().map(ToString::to_string).collect())
            .collect(),
    };

    // (X,·) is a group with λ_x(y) = x·φ(y) exactly when |Λ| = 1
    let group_form = semigroup.as_ref().is_some_and(|sg| {
        let e = sg.table.left_identities.len() == 1 && sg.table.idempotents.len() == 1;
        e && dsc.as_ref().is_some_and(|d| d.all_phi_equal()) && fineq.as_ref().is_some_and(FineqReport::all_hold)
    });
    c.claim(
        group_form == singleton,
        "Thm algebrastructure (1)<=>(3): (X,·) is a group with lambda_x(y) = x·phi(y) iff |Lambda| = 1",
        format!("group form {group_form}, |Lambda| = {}", lam.len()),
    );

    let (rs, completion) = groebner::solution_rules(s);
    let groebner_growth = if completion.status == groebner::CompletionStatus::Confluent {
        let cmp = groebner::compare_with_growth(s, &rs, opts.max_len)?;
        c.claim(
            cmp.agree,
            "Prop. stralg: |M_k| = |X|, so a confluent quadratic system has |X| normal words per degree",
            format!("normal words {:?}, growth {:?}", cmp.normal_words, cmp.growth),
        );
        Some(cmp)
    } else {
        None
    };

    let algebra = vec![
        Verdict {
            statement: "left Noetherian: always",
            value: true,
            citation: "Prop. stralg",
        },
        Verdict {
            statement: "|Λ| = 1",
            value: singleton,
            citation: "Thm algebrastructure (1)",
        },
        Verdict {
            statement: "M cancellative",
            value: cancellative.as_ref().is_some_and(|r| r.cancellative),
            citation: "Thm algebrastructure (2)",
        },
        Verdict {
            statement: "(X,·) a group with λ_x(y) = x·φ(y)",
            value: group_form,
            citation: "Thm algebrastructure (3)",
        },
        Verdict {
            statement: "right Noetherian iff |Λ|=1",
            value: singleton,
            citation: "Thm algebrastructure (4)",
        },
        Verdict {
            statement: "not central",
            value: center_degree == d && !basis.is_empty(),
            citation: "Thm algebrastructure (5)",
        },
        Verdict {
            statement: "semiprime iff |Λ|=1 when the field characteristic does not divide |X|",
            value: singleton,
            citation: "Thm algebrastructure (6)",
        },
        Verdict {
            statement: "latin",
            value: latin.unwrap_or(false),
            citation: "Cor. idempotentlatin",
        },
    ];

    Ok(AnalyzeReport {
        solution: SolutionFile::from(s),
        verification: ybx_core::check(&s.to_rmap()),
        q: s.q().to_vec(),
        lambda_image: lam,
        d,
        partition,
        semigroup,
        torsion,
        conjugation,
        phi,
        descriptor_hypotheses: dsc.as_ref().map(invariants::descriptor_hypotheses),
        fineq,
        cancellative,
        latin,
        growth,
        center,
        groebner: GroebnerSummary {
            rules: rs.len(),
            completion,
            growth: groebner_growth,
        },
        algebra,
        discrepancies: c.0,
    })
}
