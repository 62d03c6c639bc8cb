//! Invariant suites run per corpus file. Each suite passes, fails with a
//! reason, or is skipped with a reason; skips never fail a run.

use std::collections::BTreeMap;

use gmpath::findim::{
    jacobson_oracle, jacobson_radical_any, largest_nilpotent_check, prime_bruteforce,
    regular_radical, semiprime_bruteforce, RadicalKind,
};
use gmpath::gm_ring::{GammaSystem, VnPolicy};
use gmpath::hopf::{
    check_hopf_axioms, negative_controls, radical_check, truncation_evidence, verify_smash_iso,
    HopfAlgebra, HopfFile,
};
use gmpath::path_algebra::{
    equivalence_report, is_prime, radical_description, vn_radical_description, GeneralizedPath,
    MaterializedAlgebra, PathAlgebra,
};
use gmpath::quiver::Quiver;
use gmpath::Error;
use serde_json::{json, Value};

use crate::analysis;
use crate::report::Status;
use crate::Options;

/// Degree of the truncations sampled by the `truncation` suite.
pub const TRUNCATION_DEGREE: u32 = 6;
pub const TRUNCATION_SAMPLES: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Pass(String),
    Fail(String),
    Skipped(String),
}

impl Check {
    fn from_bool(ok: bool, pass: impl Into<String>, fail: impl Into<String>) -> Self {
        if ok {
            Check::Pass(pass.into())
        } else {
            Check::Fail(fail.into())
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Check::Pass(_) => "pass",
            Check::Fail(_) => "fail",
            Check::Skipped(_) => "skipped",
        }
    }

    fn to_json(&self) -> Value {
        let (Check::Pass(d) | Check::Fail(d) | Check::Skipped(d)) = self;
        json!({ "status": self.label(), "detail": d })
    }
}

pub type Suites = BTreeMap<&'static str, Check>;

pub fn to_json(suites: &Suites) -> Value {
    Value::Object(
        suites
            .iter()
            .map(|(k, c)| (k.to_string(), c.to_json()))
            .collect(),
    )
}

pub fn status(suites: &Suites) -> Status {
    if suites.values().any(|c| matches!(c, Check::Fail(_))) {
        Status::Mismatch
    } else {
        Status::Pass
    }
}

fn errored(e: Error) -> Check {
    match e {
        Error::Undecided(why) => Check::Skipped(format!("undecided: {why}")),
        other => Check::Fail(other.to_string()),
    }
}

fn materialize(q: &Quiver, opts: &Options) -> Result<MaterializedAlgebra, String> {
    match analysis::path_count(q, opts.max_oracle_dim) {
        Some(_) => PathAlgebra::new(q.clone())
            .materialize(None, None)
            .map_err(|e| e.to_string()),
        None if q.is_acyclic() => Err(format!(
            "path algebra above --max-oracle-dim {}",
            opts.max_oracle_dim
        )),
        None => Err("infinite-dimensional path algebra".into()),
    }
}

pub fn quiver_suites(q: &Quiver, opts: &Options) -> Suites {
    let mut out = Suites::new();
    let (status, conn) = analysis::connectivity(q);
    out.insert(
        "connectivity",
        Check::from_bool(
            status == Status::Pass,
            "partitions consistent",
            format!("consistency checks failed: {}", conn["checks"]),
        ),
    );
    let eq = equivalence_report(q);
    let verdicts: Vec<String> = eq
        .verdicts
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    out.insert(
        "equivalence",
        Check::from_bool(
            eq.all_equal(),
            format!("all conditions {}", eq.value().unwrap_or(false)),
            format!("conditions disagree: {}", verdicts.join(" ")),
        ),
    );

    let m = match materialize(q, opts) {
        Ok(m) => m,
        Err(why) => {
            for s in ["path-radical", "vn-radical", "primeness", "semiprimeness"] {
                out.insert(s, Check::Skipped(why.clone()));
            }
            return out;
        }
    };
    let a = &m.algebra;
    let regular = radical_description(q, RadicalKind::Jacobson).expect("jacobson family");
    let predicted = m.span_of(|p: &GeneralizedPath| regular.contains_path(p));
    let path_radical = jacobson_oracle(a).and_then(|r| {
        let nil = largest_nilpotent_check(a, &predicted)?;
        Ok(Check::from_bool(
            r.verified() && r.radical == predicted && nil.equals_radical,
            format!("regular paths span the radical, dim {}", predicted.dim()),
            format!(
                "predicted dim {}, oracle dim {}, oracle self-checks {}, largest nilpotent {}",
                predicted.dim(),
                r.radical.dim(),
                r.verified(),
                nil.equals_radical
            ),
        ))
    });
    out.insert("path-radical", path_radical.unwrap_or_else(errored));

    let isolated = vn_radical_description(q);
    let vn_predicted =
        m.span_of(|p: &GeneralizedPath| p.is_trivial() && isolated.contains(&p.source()));
    let vn = regular_radical(a).map(|d| {
        Check::from_bool(
            d == vn_predicted,
            format!("isolated vertices span it, dim {}", d.dim()),
            format!(
                "predicted dim {}, direct dim {}",
                vn_predicted.dim(),
                d.dim()
            ),
        )
    });
    out.insert("vn-radical", vn.unwrap_or_else(errored));

    let prime = prime_bruteforce(a, opts.max_oracle_dim).map(|b| {
        Check::from_bool(
            b == is_prime(q),
            format!("prime = {b}"),
            format!("strongly connected = {}, brute force = {b}", is_prime(q)),
        )
    });
    out.insert("primeness", prime.unwrap_or_else(errored));

    let semiprime = semiprime_bruteforce(a, opts.max_oracle_dim).map(|b| {
        Check::from_bool(
            eq.value() == Some(b),
            format!("semiprime = {b}"),
            format!("conditions give {:?}, brute force {b}", eq.value()),
        )
    });
    out.insert("semiprimeness", semiprime.unwrap_or_else(errored));
    out
}

pub fn system_suites(s: &GammaSystem, opts: &Options) -> Suites {
    let mut out = Suites::new();
    let a = s.assemble();
    if a.dim() > opts.max_oracle_dim {
        let why = format!("dimension {} above --max-oracle-dim", a.dim());
        out.insert("gm-radical", Check::Skipped(why.clone()));
        out.insert("gm-vn", Check::Skipped(why));
        return out;
    }
    let jac = s
        .gm_radical_formula(RadicalKind::Jacobson, VnPolicy::RequireDivisors, opts.seed)
        .and_then(|ideal| {
            let direct = jacobson_radical_any(a)?;
            Ok(Check::from_bool(
                direct == ideal.total,
                format!("block sum equals the radical, dim {}", direct.dim()),
                format!(
                    "block sum dim {}, radical dim {}",
                    ideal.dim(),
                    direct.dim()
                ),
            ))
        });
    out.insert("gm-radical", jac.unwrap_or_else(errored));
    let vn = match s.gm_radical_formula(RadicalKind::Vn, VnPolicy::RequireDivisors, opts.seed) {
        Ok(ideal) => regular_radical(a).map_or_else(errored, |d| {
            Check::from_bool(
                d == ideal.total,
                format!("block sum equals the regular radical, dim {}", d.dim()),
                format!(
                    "block sum dim {}, regular radical dim {}",
                    ideal.dim(),
                    d.dim()
                ),
            )
        }),
        Err(Error::NotApplicable(why)) => Check::Skipped(format!("formula refused: {why}")),
        Err(e) => errored(e),
    };
    out.insert("gm-vn", vn);
    out
}

const HOPF_SUITES: [&str; 6] = [
    "hopf-dimension",
    "hopf-axioms",
    "hopf-radical",
    "smash-iso",
    "negative-controls",
    "truncation",
];

pub fn hopf_suites(file: &HopfFile, opts: &Options) -> Suites {
    let mut out = Suites::new();
    let violations = file.params.validate();
    if !violations.is_empty() {
        let listed: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        out.insert("hopf-validate", Check::Fail(listed.join("; ")));
        for s in HOPF_SUITES {
            out.insert(s, Check::Skipped("parameters invalid".into()));
        }
        return out;
    }
    out.insert(
        "hopf-validate",
        Check::Pass("all parameter conditions hold".into()),
    );
    let p = &file.params;
    let h = match HopfAlgebra::new(p.clone()) {
        Ok(h) => h,
        Err(e) => {
            out.insert("hopf-dimension", Check::Fail(e.to_string()));
            return out;
        }
    };
    let expected = p.group.order() * p.n.iter().map(|&n| n as usize).product::<usize>();
    out.insert(
        "hopf-dimension",
        Check::from_bool(
            h.dim() == expected,
            format!("dim {expected}"),
            format!("dim {}, expected {expected}", h.dim()),
        ),
    );
    let axioms = check_hopf_axioms(&h);
    out.insert(
        "hopf-axioms",
        Check::from_bool(
            axioms.all_pass(),
            format!("{} axioms hold exhaustively", axioms.checks.len()),
            format!("failed: {}", axioms.failed().join(", ")),
        ),
    );

    let untwisted = p.is_untwisted();
    let radical = if !untwisted {
        Check::Skipped("closed form needs a = 0 and b = 0".into())
    } else if h.dim() > opts.max_oracle_dim {
        Check::Skipped(format!("dimension {} above --max-oracle-dim", h.dim()))
    } else {
        radical_check(&h, opts.max_oracle_dim).map_or_else(errored, |c| {
            Check::from_bool(
                c.verified(),
                format!("radical dim {} of {}", c.predicted.dim(), h.dim()),
                format!(
                    "predicted dim {}, equal {:?}, nilpotent and maximal {:?}",
                    c.predicted.dim(),
                    c.equal(),
                    c.nilpotent_equals_radical
                ),
            )
        })
    };
    out.insert("hopf-radical", radical);

    let smash = if untwisted {
        verify_smash_iso(&h).map_or_else(errored, |r| {
            Check::from_bool(
                r.holds(),
                format!("{} basis pairs", r.pairs_checked),
                format!(
                    "{} of {} pairs fail, bijective {}",
                    r.failures, r.pairs_checked, r.bijective
                ),
            )
        })
    } else {
        Check::Skipped("smash decomposition needs a = 0 and b = 0".into())
    };
    out.insert("smash-iso", smash);

    let controls = negative_controls(p);
    let missed: Vec<&str> = controls
        .iter()
        .filter(|c| !c.detected)
        .map(|c| c.corruption.name())
        .collect();
    out.insert(
        "negative-controls",
        if controls.is_empty() {
            Check::Skipped("no corruption applies".into())
        } else {
            Check::from_bool(
                missed.is_empty(),
                format!("{} corruptions detected", controls.len()),
                format!("undetected: {}", missed.join(", ")),
            )
        },
    );

    let truncation = if !untwisted || p.t() == 0 {
        Check::Skipped("sampled for untwisted parameters with t ≥ 1".into())
    } else {
        truncation_evidence(p, TRUNCATION_DEGREE, TRUNCATION_SAMPLES, opts.seed).map_or_else(
            errored,
            |e| {
                Check::from_bool(
                    e.holds(),
                    format!(
                        "{} of {} samples witnessed, degree {}, seed {}",
                        e.witnessed, e.samples, e.degree, e.seed
                    ),
                    format!(
                        "{} of {} witnessed: {}",
                        e.witnessed,
                        e.samples,
                        e.failures.join("; ")
                    ),
                )
            },
        )
    };
    out.insert("truncation", truncation);
    out
}
