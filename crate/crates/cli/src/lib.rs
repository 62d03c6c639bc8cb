//! Batch front end for the `gmpath` library: loads quiver, system, Hopf
//! parameter and edge-list files, runs the analyses and assembles
//! deterministic reports.
//!
//! Exit codes: 0 when every check passes, 1 when a computed closed form
//! disagrees with its oracle or an invariant suite fails, 2 on input errors.

mod analysis;
pub mod ingest;
pub mod report;
pub mod suite;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use gmpath::findim::{RadicalKind, DEFAULT_MAX_ORACLE_DIM, DEFAULT_SEED};
use gmpath::gm_ring::GammaSystem;
use gmpath::hopf::parse_hopf;
use gmpath::quiver::Quiver;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

pub use report::{Report, Section, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    pub max_oracle_dim: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: DEFAULT_SEED,
            max_oracle_dim: DEFAULT_MAX_ORACLE_DIM,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputKind {
    Quiver,
    System,
    Hopf,
    Edges,
}

impl InputKind {
    pub fn name(self) -> &'static str {
        match self {
            InputKind::Quiver => "quiver",
            InputKind::System => "system",
            InputKind::Hopf => "hopf",
            InputKind::Edges => "edges",
        }
    }

    /// By extension, then by the first directive. Edge lists have no
    /// directive and need the `.edges` extension.
    pub fn detect(path: &Path, text: &str) -> Option<Self> {
        let by_ext = match path.extension().and_then(|e| e.to_str()) {
            Some("quiver") => Some(InputKind::Quiver),
            Some("gmring" | "algebra") => Some(InputKind::System),
            Some("hopf") => Some(InputKind::Hopf),
            Some("edges") => Some(InputKind::Edges),
            _ => None,
        };
        by_ext.or_else(|| {
            let first = text
                .lines()
                .map(|l| l.split('#').next().unwrap_or("").trim())
                .find(|l| !l.is_empty())?;
            match first.split_whitespace().next()? {
                "vertex" | "arrow" => Some(InputKind::Quiver),
                "gmring" | "algebra" => Some(InputKind::System),
                "hopf" => Some(InputKind::Hopf),
                _ => None,
            }
        })
    }
}

struct Input {
    label: String,
    digest: String,
    text: String,
    kind: Option<InputKind>,
    dir: Option<PathBuf>,
}

impl Input {
    fn section(&self, (status, value): analysis::Outcome) -> Section {
        Section {
            label: self.label.clone(),
            digest: Some(self.digest.clone()),
            status,
            value,
        }
    }

    fn error(&self, message: impl std::fmt::Display) -> Section {
        Section::input_error(&self.label, Some(self.digest.clone()), message.to_string())
    }
}

fn load(path: &Path) -> Result<Input, Section> {
    let label = path.display().to_string();
    let bytes = std::fs::read(path)
        .map_err(|e| Section::input_error(&label, None, format!("cannot read: {e}")))?;
    let digest = report::sha256_hex(&bytes);
    let text = String::from_utf8(bytes)
        .map_err(|_| Section::input_error(&label, Some(digest.clone()), "not UTF-8 text"))?;
    Ok(Input {
        kind: InputKind::detect(path, &text),
        dir: path.parent().map(Path::to_path_buf),
        label,
        digest,
        text,
    })
}

/// The quiver behind a quiver file or edge list, with any malformed edge lines.
fn quiver_of(input: &Input) -> Result<(Quiver, Vec<String>), Section> {
    match input.kind {
        Some(InputKind::Quiver) => Quiver::parse(&input.text)
            .map(|q| (q, Vec::new()))
            .map_err(|e| input.error(e)),
        Some(InputKind::Edges) => {
            let e = ingest::parse_edges(&input.text);
            Ok((e.quiver, e.malformed))
        }
        _ => Err(input.error("expected a quiver file or an edge list")),
    }
}

// Malformed edge lines are reported in the value and make the input an
// input error, after the analysis has run on the well-formed lines.
fn with_malformed(
    (status, mut value): analysis::Outcome,
    malformed: &[String],
) -> analysis::Outcome {
    if malformed.is_empty() {
        return (status, value);
    }
    if let Value::Object(m) = &mut value {
        m.insert("malformed_lines".into(), json!(malformed));
    }
    (status.max(Status::InputError), value)
}

fn per_file<F>(paths: &[PathBuf], f: F) -> Vec<Section>
where
    F: Fn(&Input) -> Section + Sync,
{
    paths
        .par_iter()
        .map(|p| match load(p) {
            Ok(input) => f(&input),
            Err(s) => s,
        })
        .collect()
}

fn finish(command: &str, opts: &Options, sections: Vec<Section>) -> Report {
    let warnings = sections
        .iter()
        .filter_map(|s| {
            s.value
                .get("malformed_lines")
                .and_then(Value::as_array)
                .map(|m| format!("{}: {} malformed lines skipped", s.label, m.len()))
        })
        .collect();
    Report {
        command: command.to_string(),
        seed: opts.seed,
        sections,
        warnings,
        summary: None,
    }
}

pub fn connectivity(command: &str, files: &[PathBuf], opts: &Options) -> Report {
    let sections = per_file(files, |input| match quiver_of(input) {
        Ok((q, malformed)) => input.section(with_malformed(analysis::connectivity(&q), &malformed)),
        Err(s) => s,
    });
    finish(command, opts, sections)
}

pub fn radical(
    command: &str,
    file: &Path,
    kind: RadicalKind,
    oracle: bool,
    opts: &Options,
) -> Report {
    let sections = per_file(&[file.to_path_buf()], |input| match input.kind {
        Some(InputKind::System) => match GammaSystem::parse(&input.text) {
            Ok(s) => input.section(analysis::system_radical(&s, kind, oracle, opts)),
            Err(e) => input.error(e),
        },
        Some(InputKind::Hopf) => match analysis::load_hopf(&input.text, input.dir.as_deref()) {
            Ok(h) => input.section(analysis::hopf_radical(&h, kind, oracle, opts)),
            Err(outcome) => input.section(outcome),
        },
        Some(InputKind::Quiver | InputKind::Edges) => match quiver_of(input) {
            Ok((q, malformed)) => input.section(with_malformed(
                analysis::quiver_radical(&q, kind, oracle, opts),
                &malformed,
            )),
            Err(s) => s,
        },
        None => input.error("unrecognised input; expected a quiver, system or Hopf file"),
    });
    finish(command, opts, sections)
}

pub fn net_ingest(command: &str, files: &[PathBuf], opts: &Options) -> Report {
    let sections = per_file(files, |input| {
        let e = ingest::parse_edges(&input.text);
        let (status, mut value) = analysis::connectivity(&e.quiver);
        let (agree, equivalence) = analysis::equivalence(&e.quiver);
        let (_, radical) = analysis::quiver_radical(&e.quiver, RadicalKind::Jacobson, false, opts);
        if let Value::Object(m) = &mut value {
            m.insert("semiprime".into(), equivalence["value"].clone());
            m.insert("equivalence".into(), equivalence);
            m.insert("radical".into(), radical["closed_form"].clone());
        }
        let status = if agree { status } else { Status::Mismatch };
        input.section(with_malformed((status, value), &e.malformed))
    });
    finish(command, opts, sections)
}

fn corpus_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    let mut pending = vec![dir.to_path_buf()];
    while let Some(d) = pending.pop() {
        for entry in std::fs::read_dir(&d)? {
            let path = entry?.path();
            let hidden = path
                .file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| n.starts_with('.'));
            if hidden {
                continue;
            }
            if path.is_dir() {
                pending.push(path);
            } else {
                out.push(path);
            }
        }
    }
    out.sort();
    Ok(out)
}

pub fn verify_suite(command: &str, dir: &Path, opts: &Options) -> Report {
    let files = match corpus_files(dir) {
        Ok(f) => f,
        Err(e) => {
            let label = dir.display().to_string();
            let sections = vec![Section::input_error(
                &label,
                None,
                format!("cannot read corpus: {e}"),
            )];
            return finish(command, opts, sections);
        }
    };
    let mut warnings = Vec::new();
    let mut recognised = Vec::new();
    for f in files {
        // Cayley tables are read through the Hopf files that name them.
        if f.extension().is_some_and(|e| e == "cayley") {
            continue;
        }
        let kind = std::fs::read_to_string(&f)
            .ok()
            .and_then(|t| InputKind::detect(&f, &t));
        match kind {
            Some(_) => recognised.push(f),
            None => warnings.push(format!("{}: unrecognised input, skipped", f.display())),
        }
    }
    if recognised.is_empty() {
        warnings.push("corpus contains no recognised inputs; vacuous pass".into());
    }

    let sections = per_file(&recognised, |input| {
        let suites = match input.kind {
            Some(InputKind::Quiver | InputKind::Edges) => match quiver_of(input) {
                Ok((_, m)) if !m.is_empty() => {
                    return input.section(with_malformed((Status::Pass, json!({})), &m))
                }
                Ok((q, _)) => suite::quiver_suites(&q, opts),
                Err(s) => return s,
            },
            Some(InputKind::System) => match GammaSystem::parse(&input.text) {
                Ok(s) => suite::system_suites(&s, opts),
                Err(e) => return input.error(e),
            },
            Some(InputKind::Hopf) => match parse_hopf(&input.text, input.dir.as_deref()) {
                Ok(f) => suite::hopf_suites(&f, opts),
                Err(e) => return input.error(e),
            },
            None => return input.error("unrecognised input"),
        };
        input.section((
            suite::status(&suites),
            json!({
                "kind": input.kind.map(InputKind::name),
                "suites": suite::to_json(&suites),
            }),
        ))
    });

    let mut matrix: BTreeMap<String, [usize; 3]> = BTreeMap::new();
    for s in &sections {
        let Some(Value::Object(suites)) = s.value.get("suites") else {
            continue;
        };
        for (name, outcome) in suites {
            let slot = match outcome["status"].as_str() {
                Some("pass") => 0,
                Some("fail") => 1,
                _ => 2,
            };
            matrix.entry(name.clone()).or_default()[slot] += 1;
        }
    }
    let summary: Map<String, Value> = matrix
        .into_iter()
        .map(|(k, [p, f, s])| (k, json!({ "pass": p, "fail": f, "skipped": s })))
        .collect();

    let mut report = finish(command, opts, sections);
    warnings.extend(report.warnings);
    report.warnings = warnings;
    report.summary = Some(Value::Object(summary));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_by_extension_then_header() {
        let p = Path::new;
        assert_eq!(InputKind::detect(p("a.hopf"), ""), Some(InputKind::Hopf));
        assert_eq!(
            InputKind::detect(p("a.edges"), "vertex 1"),
            Some(InputKind::Edges)
        );
        assert_eq!(
            InputKind::detect(p("a.txt"), "# c\n\nvertex 1\n"),
            Some(InputKind::Quiver)
        );
        assert_eq!(
            InputKind::detect(p("a"), "algebra k\n"),
            Some(InputKind::System)
        );
        assert_eq!(InputKind::detect(p("a"), "1 2\n"), None);
    }
}
