//! End-to-end checks of a presentation against a knot module.

use std::fmt;

use crate::constructions::KnotModuleSpec;
use crate::covers::compare_presentation;
use crate::enumerate::{weight_one_certificate, Certificate};
use crate::error::{Error, Result};
use crate::fox::alexander_polynomial;
use crate::intlinalg::AbelianGroupInvariants;
use crate::presentations::Presentation;
use crate::words::Generator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckStatus {
    Pass,
    Skip,
    Inconclusive,
    Fail,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Skip => "SKIP",
            CheckStatus::Inconclusive => "INCONCLUSIVE",
            CheckStatus::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Abelianization,
    Wirtinger,
    Cover(usize),
    WeightOne,
    AlexanderPolynomial,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckKind::Abelianization => f.write_str("abelianization"),
            CheckKind::Wirtinger => f.write_str("wirtinger-lot"),
            CheckKind::Cover(n) => write!(f, "cover N={n}"),
            CheckKind::WeightOne => f.write_str("weight-one"),
            CheckKind::AlexanderPolynomial => f.write_str("alexander"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRow {
    pub kind: CheckKind,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub rows: Vec<CheckRow>,
}

impl VerifyReport {
    /// Worst status over all rows, ignoring skips.
    pub fn overall(&self) -> CheckStatus {
        self.rows.iter().map(|r| r.status).filter(|s| *s != CheckStatus::Skip).max().unwrap_or(CheckStatus::Pass)
    }

    /// 0 all pass, 1 any failure, 2 inconclusive without failures.
    pub fn exit_code(&self) -> i32 {
        match self.overall() {
            CheckStatus::Fail => 1,
            CheckStatus::Inconclusive => 2,
            _ => 0,
        }
    }

    /// True when the abelianization, a cover or the polynomial check failed.
    pub fn flags_module_mismatch(&self) -> bool {
        self.rows.iter().any(|r| {
            r.status == CheckStatus::Fail
                && matches!(r.kind, CheckKind::Abelianization | CheckKind::Cover(_) | CheckKind::AlexanderPolynomial)
        })
    }

    pub fn to_table(&self) -> String {
        let width = self.rows.iter().map(|r| r.kind.to_string().len()).max().unwrap_or(0);
        let mut s = String::new();
        for r in &self.rows {
            s.push_str(&format!("{:<width$}  {:<12}  {}\n", r.kind.to_string(), r.status.to_string(), r.detail));
        }
        s.push_str(&format!("{:<width$}  {}\n", "overall", self.overall()));
        s
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub cover_degrees: Vec<usize>,
    pub meridian: Generator,
    pub max_cosets: usize,
}

/// Run every check; only malformed input is an error.
pub fn verify(p: &Presentation, spec: &KnotModuleSpec, opts: &VerifyOptions) -> Result<VerifyReport> {
    if p.generator_index(&opts.meridian).is_none() {
        return Err(Error::UnknownGenerator(opts.meridian.to_string()));
    }
    if opts.cover_degrees.is_empty() || opts.cover_degrees.iter().any(|n| *n < 2) {
        return Err(Error::Precondition("cover degrees must be a nonempty list of integers ≥ 2".into()));
    }
    let mut rows = Vec::new();
    let ab = p.abelianization();
    let infinite_cyclic = ab.is_infinite_cyclic();
    rows.push(abelianization_row(p, &opts.meridian, &ab));

    rows.push(wirtinger_row(p, spec));

    if infinite_cyclic {
        match compare_presentation(p, spec, &opts.cover_degrees) {
            Ok(reports) => rows.extend(reports.into_iter().map(|r| CheckRow {
                kind: CheckKind::Cover(r.n),
                status: if r.matches { CheckStatus::Pass } else { CheckStatus::Fail },
                detail: format!("presentation {} / module {}", r.from_presentation, r.from_module),
            })),
            Err(e) => rows.extend(opts.cover_degrees.iter().map(|&n| CheckRow {
                kind: CheckKind::Cover(n),
                status: CheckStatus::Fail,
                detail: e.to_string(),
            })),
        }
    } else {
        rows.extend(opts.cover_degrees.iter().map(|&n| CheckRow {
            kind: CheckKind::Cover(n),
            status: CheckStatus::Fail,
            detail: "abelianization is not Z".into(),
        }));
    }

    let cert = weight_one_certificate(p, &opts.meridian, opts.max_cosets)?;
    rows.push(CheckRow {
        kind: CheckKind::WeightOne,
        status: match cert {
            Certificate::Certified => CheckStatus::Pass,
            Certificate::Inconclusive => CheckStatus::Inconclusive,
        },
        detail: match cert {
            Certificate::Certified => format!("killing {} closes with 1 coset", opts.meridian),
            Certificate::Inconclusive => format!("no closure within {} cosets", opts.max_cosets),
        },
    });

    rows.push(alexander_row(p, spec));
    Ok(VerifyReport { rows })
}

/// The abelianization must be ℤ with the meridian mapping to a generator.
fn abelianization_row(p: &Presentation, meridian: &Generator, ab: &AbelianGroupInvariants) -> CheckRow {
    let kind = CheckKind::Abelianization;
    if !ab.is_infinite_cyclic() {
        return CheckRow { kind, status: CheckStatus::Fail, detail: ab.to_string() };
    }
    let weight = p.weight_vector().ok().and_then(|w| p.weight_of(&w, meridian));
    match weight {
        Some(1 | -1) => CheckRow { kind, status: CheckStatus::Pass, detail: format!("{ab} generated by {meridian}") },
        Some(k) => {
            CheckRow { kind, status: CheckStatus::Fail, detail: format!("{ab} but {meridian} maps to {}", k.abs()) }
        }
        None => CheckRow { kind, status: CheckStatus::Fail, detail: format!("{ab}, weight of {meridian} unavailable") },
    }
}

fn wirtinger_row(p: &Presentation, spec: &KnotModuleSpec) -> CheckRow {
    let kind = CheckKind::Wirtinger;
    if matches!(spec, KnotModuleSpec::TAction(_)) {
        return CheckRow { kind, status: CheckStatus::Skip, detail: "no Wirtinger form expected".into() };
    }
    let outcome =
        p.expand_length1().map_err(|e| e.to_string()).and_then(|q| q.is_wirtinger().map_err(|e| e.to_string()));
    match outcome {
        Ok(log) if log.is_tree => {
            CheckRow { kind, status: CheckStatus::Pass, detail: format!("tree on {} vertices", log.vertices.len()) }
        }
        Ok(_) => CheckRow { kind, status: CheckStatus::Fail, detail: "graph is not a tree".into() },
        Err(e) => CheckRow { kind, status: CheckStatus::Fail, detail: e },
    }
}

fn alexander_row(p: &Presentation, spec: &KnotModuleSpec) -> CheckRow {
    let kind = CheckKind::AlexanderPolynomial;
    let expected = match spec.order() {
        Ok(e) => e,
        Err(e) => return CheckRow { kind, status: CheckStatus::Fail, detail: e.to_string() },
    };
    match alexander_polynomial(p) {
        Ok(got) if got.eq_up_to_unit(&expected) => {
            CheckRow { kind, status: CheckStatus::Pass, detail: got.to_string() }
        }
        Ok(got) => CheckRow { kind, status: CheckStatus::Fail, detail: format!("{got} != {expected}") },
        Err(e) => CheckRow { kind, status: CheckStatus::Fail, detail: e.to_string() },
    }
}
