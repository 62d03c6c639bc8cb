//! Per-input analyses. Each returns a status and a JSON value; nothing here
//! touches the filesystem.

use std::collections::BTreeSet;
use std::path::Path;

use gmpath::findim::{
    jacobson_oracle, jacobson_radical_any, largest_nilpotent_check, regular_radical, RadicalKind,
};
use gmpath::gm_ring::{GammaSystem, VnPolicy};
use gmpath::hopf::{parse_hopf, radical_check, HopfAlgebra};
use gmpath::path_algebra::{
    equivalence_report, radical_description, regular_paths, vn_radical_description,
    GeneralizedPath, PathAlgebra,
};
use gmpath::quiver::{self, Quiver};
use gmpath::{Error, Subspace};
use serde_json::{json, Map, Value};

use crate::report::{bounded_list, Status, LIST_LIMIT};
use crate::Options;

pub type Outcome = (Status, Value);

pub fn input_error(e: impl std::fmt::Display) -> Outcome {
    (Status::InputError, json!({ "error": e.to_string() }))
}

fn partition(q: &Quiver, parts: &[Vec<usize>]) -> Value {
    bounded_list(
        parts
            .iter()
            .map(|p| json!(p.iter().map(|&v| &q.vertices()[v]).collect::<Vec<_>>()))
            .collect(),
    )
}

fn is_partition(parts: &[Vec<usize>], n: usize) -> bool {
    let mut all: Vec<usize> = parts.iter().flatten().copied().collect();
    all.sort_unstable();
    all == (0..n).collect::<Vec<_>>()
}

fn refines(fine: &[Vec<usize>], coarse: &[Vec<usize>], n: usize) -> bool {
    let mut owner = vec![usize::MAX; n];
    for (k, c) in coarse.iter().enumerate() {
        for &v in c {
            owner[v] = k;
        }
    }
    fine.iter().all(|f| {
        f.iter()
            .all(|&v| owner[v] == owner[f[0]] && owner[v] != usize::MAX)
    })
}

/// Partitions, regular pairs and cycle facts, with self-consistency checks.
pub fn connectivity(q: &Quiver) -> Outcome {
    let n = q.vertex_count();
    let r = q.connectivity();
    let pairs = quiver::regular_pairs(q);
    let facts = quiver::cycle_facts(q);

    let partitions = is_partition(&r.strong, n) && is_partition(&r.weak, n);
    let mut refinement = refines(&r.strong, &r.weak, n);
    if let Some(uni) = &r.unilateral {
        let covered: BTreeSet<usize> = uni.iter().flatten().copied().collect();
        refinement &= covered.len() == n
            && r.strong
                .iter()
                .all(|s| uni.iter().any(|u| s.iter().all(|v| u.contains(v))))
            && uni
                .iter()
                .all(|u| r.weak.iter().any(|w| u.iter().all(|v| w.contains(v))));
    }
    // one-way reachability between strong classes, counted class by class
    let expected: usize = (0..r.strong.len())
        .flat_map(|a| (0..r.strong.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| {
            let (u, v) = (r.strong[a][0], r.strong[b][0]);
            a != b && r.reaches(u, v) && !r.reaches(v, u)
        })
        .map(|(a, b)| r.strong[a].len() * r.strong[b].len())
        .sum();
    let pairs_ok = pairs.len() == expected
        && pairs
            .iter()
            .all(|&(s, t)| r.reaches(s, t) && !r.reaches(t, s));

    let unilateral = match &r.unilateral {
        Some(u) => partition(q, u),
        None => json!({ "summarized": true, "count": r.unilateral_count.to_string() }),
    };
    let names = q.vertices();
    let value = json!({
        "vertices": n,
        "arrows": q.arrow_count(),
        "strong_components": partition(q, &r.strong),
        "weak_components": partition(q, &r.weak),
        "unilateral_components": unilateral,
        "regular_pair_count": pairs.len(),
        "regular_pairs": bounded_list(
            pairs.iter().map(|&(s, t)| json!([names[s], names[t]])).collect()
        ),
        "cycles": {
            "has_cycle": facts.has_cycle,
            "same_cycle_pairs": facts.same_cycle.len(),
        },
        "checks": {
            "partitions": partitions,
            "refinement": refinement,
            "regular_pairs": pairs_ok,
        },
    });
    let status = if partitions && refinement && pairs_ok {
        Status::Pass
    } else {
        Status::Mismatch
    };
    (status, value)
}

/// The eleven conditions as a name → verdict map, and whether they agree.
pub fn equivalence(q: &Quiver) -> (bool, Value) {
    let e = equivalence_report(q);
    let verdicts: Map<String, Value> = e
        .verdicts
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    (
        e.all_equal(),
        json!({ "agree": e.all_equal(), "value": e.value(), "verdicts": verdicts }),
    )
}

/// Number of paths, including trivial ones, of an acyclic quiver; `None`
/// with a cycle or beyond `cap`.
pub fn path_count(q: &Quiver, cap: usize) -> Option<usize> {
    if !q.is_acyclic() {
        return None;
    }
    let n = q.vertex_count();
    let mut indeg = vec![0usize; n];
    for a in q.arrows() {
        indeg[a.target] += 1;
    }
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    // ending[v]: paths ending at v
    let mut ending = vec![1usize; n];
    let mut total = 0usize;
    while let Some(v) = ready.pop() {
        total = total.checked_add(ending[v]).filter(|&t| t <= cap)?;
        for (_, a) in q.out_arrows(v) {
            ending[a.target] = ending[a.target].checked_add(ending[v])?.min(cap + 1);
            indeg[a.target] -= 1;
            if indeg[a.target] == 0 {
                ready.push(a.target);
            }
        }
    }
    Some(total)
}

fn literals(basis: Vec<String>) -> Value {
    bounded_list(basis.into_iter().map(Value::String).collect())
}

fn subspace_literals(s: &Subspace, lit: impl Fn(&gmpath::SparseVec) -> String) -> Value {
    if s.dim() > LIST_LIMIT {
        return json!({ "summarized": true, "count": s.dim() });
    }
    literals(s.basis().iter().map(lit).collect())
}

pub fn quiver_radical(q: &Quiver, kind: RadicalKind, oracle: bool, opts: &Options) -> Outcome {
    let alg = PathAlgebra::new(q.clone());
    let mut value = Map::new();
    value.insert("input".into(), json!("quiver"));
    value.insert("kind".into(), json!(kind.name()));

    let isolated = vn_radical_description(q);
    let regular = radical_description(q, RadicalKind::Jacobson).expect("jacobson family");
    if kind == RadicalKind::Vn {
        let basis: Vec<String> = isolated
            .iter()
            .map(|&v| alg.path_name(&GeneralizedPath::trivial(v, 0)))
            .collect();
        let reason = if isolated.is_empty() {
            "spanned by the idempotents of isolated vertices; this quiver has none"
        } else {
            "spanned by the idempotents of isolated vertices"
        };
        value.insert(
            "closed_form".into(),
            json!({ "dim": basis.len(), "basis": literals(basis), "reason": reason }),
        );
    } else {
        let count = quiver::regular_path_count(q);
        let basis = match regular_paths(&alg, LIST_LIMIT) {
            Some(ps) => literals(ps.iter().map(|p| alg.path_name(p)).collect()),
            None => match &count {
                Some(c) => json!({ "summarized": true, "count": c.to_string() }),
                None => json!("infinite"),
            },
        };
        value.insert(
            "closed_form".into(),
            json!({
                "description": "span of regular paths",
                "dim": count.map_or_else(|| "infinite".to_string(), |c| c.to_string()),
                "regular_pair_count": regular.pairs.len(),
                "basis": basis,
            }),
        );
    }
    if !oracle {
        return (Status::Pass, Value::Object(value));
    }

    let fail = |mut value: Map<String, Value>, msg: String| {
        value.insert("error".into(), json!(msg));
        (Status::InputError, Value::Object(value))
    };
    let Some(total) = path_count(q, opts.max_oracle_dim) else {
        let msg = if q.is_acyclic() {
            format!(
                "the path algebra has dimension above --max-oracle-dim {}",
                opts.max_oracle_dim
            )
        } else {
            "the oracle needs a finite-dimensional algebra; this quiver has an oriented cycle"
                .to_string()
        };
        return fail(value, msg);
    };
    let m = match alg.materialize(None, None) {
        Ok(m) => m,
        Err(e) => return fail(value, e.to_string()),
    };
    debug_assert_eq!(m.dim(), total);
    let run = || -> gmpath::Result<(bool, Value)> {
        if kind == RadicalKind::Vn {
            let predicted =
                m.span_of(|p: &GeneralizedPath| p.is_trivial() && isolated.contains(&p.source()));
            let direct = regular_radical(&m.algebra)?;
            let equal = direct == predicted;
            return Ok((
                equal,
                json!({ "algebra_dim": m.dim(), "dim": direct.dim(), "equal": equal }),
            ));
        }
        let predicted = m.span_of(|p: &GeneralizedPath| regular.contains_path(p));
        let report = jacobson_oracle(&m.algebra)?;
        let nil = largest_nilpotent_check(&m.algebra, &predicted)?;
        let equal = report.radical == predicted;
        let ok = equal && report.verified() && nil.equals_radical;
        Ok((
            ok,
            json!({
                "algebra_dim": m.dim(),
                "dim": report.radical.dim(),
                "equal": equal,
                "self_checks": report.verified(),
                "largest_nilpotent": nil.equals_radical,
            }),
        ))
    };
    match run() {
        Ok((ok, v)) => {
            value.insert("oracle".into(), v);
            let status = if ok { Status::Pass } else { Status::Mismatch };
            (status, Value::Object(value))
        }
        Err(e) => fail(value, e.to_string()),
    }
}

fn block_label(s: &GammaSystem, i: usize, j: usize) -> String {
    format!("{},{}", s.index()[i], s.index()[j])
}

pub fn system_radical(s: &GammaSystem, kind: RadicalKind, oracle: bool, opts: &Options) -> Outcome {
    let a = s.assemble();
    let ideal = match s.gm_radical_formula(kind, VnPolicy::RequireDivisors, opts.seed) {
        Ok(i) => i,
        Err(Error::NotApplicable(why)) => {
            return (
                Status::InputError,
                json!({ "input": "system", "kind": kind.name(), "refused": why }),
            )
        }
        Err(e) => return input_error(e),
    };
    let blocks: Map<String, Value> = ideal
        .parts
        .iter()
        .map(|(&(i, j), p)| (block_label(s, i, j), json!(p.dim())))
        .collect();
    let mut value = Map::new();
    value.insert("input".into(), json!("system"));
    value.insert("kind".into(), json!(kind.name()));
    value.insert(
        "closed_form".into(),
        json!({
            "description": "sum of block radicals",
            "algebra_dim": a.dim(),
            "dim": ideal.dim(),
            "blocks": blocks,
            "basis": subspace_literals(&ideal.total, |v| a.literal(v)),
        }),
    );
    if !oracle {
        return (Status::Pass, Value::Object(value));
    }
    if a.dim() > opts.max_oracle_dim {
        value.insert(
            "error".into(),
            json!(format!(
                "dimension {} exceeds --max-oracle-dim {}",
                a.dim(),
                opts.max_oracle_dim
            )),
        );
        return (Status::InputError, Value::Object(value));
    }
    let direct = if kind == RadicalKind::Vn {
        regular_radical(a)
    } else {
        jacobson_radical_any(a)
    };
    match direct {
        Ok(d) => {
            let equal = d == ideal.total;
            value.insert("oracle".into(), json!({ "dim": d.dim(), "equal": equal }));
            let status = if equal {
                Status::Pass
            } else {
                Status::Mismatch
            };
            (status, Value::Object(value))
        }
        Err(e) => {
            value.insert("error".into(), json!(e.to_string()));
            (Status::InputError, Value::Object(value))
        }
    }
}

pub fn load_hopf(text: &str, dir: Option<&Path>) -> Result<HopfAlgebra, Outcome> {
    let f = parse_hopf(text, dir).map_err(input_error)?;
    let violations = f.params.validate();
    if !violations.is_empty() {
        return Err((
            Status::InputError,
            json!({
                "name": f.name,
                "violations": violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            }),
        ));
    }
    HopfAlgebra::new(f.params).map_err(input_error)
}

pub fn hopf_radical(h: &HopfAlgebra, kind: RadicalKind, oracle: bool, opts: &Options) -> Outcome {
    if kind == RadicalKind::Vn {
        return (
            Status::InputError,
            json!({
                "input": "hopf",
                "kind": kind.name(),
                "refused": "no closed form for the von Neumann regular radical of a pointed Hopf algebra",
            }),
        );
    }
    let bound = if oracle { opts.max_oracle_dim } else { 0 };
    let check = match radical_check(h, bound) {
        Ok(c) => c,
        Err(e) => {
            return (
                Status::InputError,
                json!({ "input": "hopf", "kind": kind.name(), "refused": e.to_string() }),
            )
        }
    };
    let mut value = Map::new();
    value.insert("input".into(), json!("hopf"));
    value.insert("kind".into(), json!(kind.name()));
    value.insert(
        "closed_form".into(),
        json!({
            "description": "ideal generated by the skew-primitive generators",
            "algebra_dim": h.dim(),
            "dim": check.predicted.dim(),
            "basis": subspace_literals(&check.predicted, |v| h.literal(v)),
        }),
    );
    if !oracle {
        return (Status::Pass, Value::Object(value));
    }
    match &check.oracle {
        None => {
            value.insert(
                "error".into(),
                json!(format!(
                    "dimension {} exceeds --max-oracle-dim {}",
                    h.dim(),
                    opts.max_oracle_dim
                )),
            );
            (Status::InputError, Value::Object(value))
        }
        Some(o) => {
            value.insert(
                "oracle".into(),
                json!({
                    "dim": o.dim(),
                    "equal": check.equal(),
                    "nilpotent_equals_radical": check.nilpotent_equals_radical,
                }),
            );
            let status = if check.verified() {
                Status::Pass
            } else {
                Status::Mismatch
            };
            (status, Value::Object(value))
        }
    }
}
