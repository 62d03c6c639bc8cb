//! Hopf parameter files.
//!
//! ```text
//! hopf taft9
//! group Z3            # Z2xZ4, D4xZ2, or `cayley <file>`
//! t 1
//! n 3
//! c 1                 # exponent vectors, or element names
//! cstar 1             # exponents of ζ_m per factor, or `name=value,...`
//! a 0
//! b 1 2 1             # 1-based entry in scalar syntax, repeatable
//! ```

use std::path::Path;
use std::sync::Arc;

use super::{Character, FiniteGroup, HopfParams};
use crate::error::{Error, Result};
use crate::scalar::{parse_scalar, Cyclotomic};

/// Parsed file: its name and unvalidated parameters.
#[derive(Clone, Debug)]
pub struct HopfFile {
    pub name: String,
    pub params: HopfParams,
}

fn group_spec(spec: &str, line: usize) -> Result<FiniteGroup> {
    let mut factors = Vec::new();
    for f in spec.split('x') {
        let (kind, num) = f.split_at(1.min(f.len()));
        let m: u64 = num
            .parse()
            .map_err(|_| Error::parse(line, format!("bad group factor `{f}`")))?;
        factors.push((kind.to_string(), m));
    }
    if factors.iter().all(|(k, _)| k == "Z") {
        let orders: Vec<u64> = factors.iter().map(|(_, m)| *m).collect();
        return FiniteGroup::cyclic_product(&orders).map_err(|e| Error::parse(line, e.to_string()));
    }
    let mut acc: Option<FiniteGroup> = None;
    for (kind, m) in factors {
        let g = match kind.as_str() {
            "Z" => FiniteGroup::cyclic_product(&[m]),
            "D" => FiniteGroup::dihedral(m as usize),
            _ => {
                return Err(Error::parse(
                    line,
                    format!("unknown group factor `{kind}{m}`"),
                ))
            }
        }
        .map_err(|e| Error::parse(line, e.to_string()))?;
        acc = Some(match acc {
            None => g,
            Some(a) => FiniteGroup::direct_product(&a, &g)
                .map_err(|e| Error::parse(line, e.to_string()))?,
        });
    }
    acc.ok_or_else(|| Error::parse(line, "empty group"))
}

fn cayley_file(text: &str) -> Result<FiniteGroup> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty Cayley table"))?;
    let names: Vec<String> = header
        .strip_prefix("elements")
        .ok_or_else(|| Error::parse(hl, "expected `elements <names>`"))?
        .split_whitespace()
        .map(String::from)
        .collect();
    let mut table = Vec::new();
    for (n, l) in lines {
        let row: Vec<&str> = l.split_whitespace().collect();
        if row.len() != names.len() {
            return Err(Error::parse(
                n,
                format!("row has {} entries, expected {}", row.len(), names.len()),
            ));
        }
        for x in row {
            table.push(
                names
                    .iter()
                    .position(|m| m == x)
                    .ok_or_else(|| Error::parse(n, format!("unknown element `{x}`")))?,
            );
        }
    }
    FiniteGroup::from_table(names, table)
}

/// Parses a parameter file; `cayley` paths are resolved against `base_dir`.
pub fn parse_hopf(text: &str, base_dir: Option<&Path>) -> Result<HopfFile> {
    let mut name = None;
    let mut group: Option<FiniteGroup> = None;
    let mut t: Option<usize> = None;
    let mut fields: Vec<(usize, &str, Vec<&str>)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let words: Vec<&str> = body.split_whitespace().collect();
        match (words[0], words.len()) {
            ("hopf", 2) => name = Some(words[1].to_string()),
            ("group", 2) => group = Some(group_spec(words[1], line)?),
            ("group", 3) if words[1] == "cayley" => {
                let path = base_dir
                    .map_or_else(|| Path::new(words[2]).to_path_buf(), |d| d.join(words[2]));
                let table = std::fs::read_to_string(&path).map_err(|e| {
                    Error::parse(line, format!("cannot read {}: {e}", path.display()))
                })?;
                group = Some(
                    cayley_file(&table)
                        .map_err(|e| Error::parse(line, format!("{}: {e}", path.display())))?,
                );
            }
            ("t", 2) => {
                t = Some(
                    words[1]
                        .parse()
                        .map_err(|_| Error::parse(line, "t must be a count"))?,
                )
            }
            ("n" | "c" | "cstar" | "a" | "b", _) => {
                fields.push((line, words[0], words[1..].to_vec()))
            }
            _ => {
                return Err(Error::parse(
                    line,
                    format!("unrecognised directive `{body}`"),
                ))
            }
        }
    }
    let name = name.ok_or_else(|| Error::parse(1, "missing `hopf <name>` header"))?;
    let group = group.ok_or_else(|| Error::parse(1, "missing `group` line"))?;
    let t = t.ok_or_else(|| Error::parse(1, "missing `t` line"))?;
    let mut n = None;
    let mut c = None;
    let mut cstar = None;
    let mut a = vec![0u8; t];
    let mut b = vec![vec![Cyclotomic::zero(); t]; t];
    let count = |line: usize, vals: &[&str]| {
        if vals.len() == t {
            Ok(())
        } else {
            Err(Error::parse(
                line,
                format!("expected {t} entries, found {}", vals.len()),
            ))
        }
    };
    for (line, key, vals) in fields {
        match key {
            "n" => {
                count(line, &vals)?;
                n = Some(
                    vals.iter()
                        .map(|v| {
                            v.parse::<u32>()
                                .map_err(|_| Error::parse(line, format!("bad n entry `{v}`")))
                        })
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            "c" => {
                count(line, &vals)?;
                c = Some(
                    vals.iter()
                        .map(|v| element(&group, v, line))
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            "cstar" => {
                count(line, &vals)?;
                cstar = Some(
                    vals.iter()
                        .map(|v| character(&group, v, line))
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            "a" => {
                count(line, &vals)?;
                a = vals
                    .iter()
                    .map(|v| {
                        v.parse::<u8>()
                            .map_err(|_| Error::parse(line, format!("bad a entry `{v}`")))
                    })
                    .collect::<Result<_>>()?;
            }
            "b" => {
                if vals.len() != 3 {
                    return Err(Error::parse(line, "expected `b i j <scalar>`"));
                }
                let idx = |s: &str| {
                    s.parse::<usize>()
                        .ok()
                        .filter(|&i| (1..=t).contains(&i))
                        .ok_or_else(|| Error::parse(line, format!("index `{s}` outside 1..={t}")))
                };
                let (i, j) = (idx(vals[0])?, idx(vals[1])?);
                b[i - 1][j - 1] = parse_scalar(vals[2]).map_err(|e| Error::parse(line, e))?;
            }
            _ => unreachable!(),
        }
    }
    let missing = |what: &str| Error::parse(1, format!("missing `{what}` line"));
    let n = if t == 0 {
        n.unwrap_or_default()
    } else {
        n.ok_or_else(|| missing("n"))?
    };
    let c = if t == 0 {
        c.unwrap_or_default()
    } else {
        c.ok_or_else(|| missing("c"))?
    };
    let cstar = if t == 0 {
        cstar.unwrap_or_default()
    } else {
        cstar.ok_or_else(|| missing("cstar"))?
    };
    Ok(HopfFile {
        name,
        params: HopfParams {
            group: Arc::new(group),
            n,
            c,
            cstar,
            a,
            b,
        },
    })
}

// Numeric entries are exponent vectors whenever the group is a cyclic product,
// so `1` means the generator there rather than the identity.
fn element(group: &FiniteGroup, v: &str, line: usize) -> Result<usize> {
    let exps: Option<Vec<u64>> = v.split(',').map(|e| e.parse::<u64>().ok()).collect();
    let exps = match exps {
        Some(e) if group.cyclic_orders().is_some() => e,
        _ => {
            return group
                .element(v)
                .ok_or_else(|| Error::parse(line, format!("unknown group element `{v}`")))
        }
    };
    group.from_exponents(&exps).ok_or_else(|| {
        Error::parse(
            line,
            format!("exponent vector `{v}` does not fit the group"),
        )
    })
}

fn character(group: &FiniteGroup, v: &str, line: usize) -> Result<Character> {
    if v.contains('=') {
        let mut gens = Vec::new();
        for part in v.split(',') {
            let (g, val) = part
                .split_once('=')
                .ok_or_else(|| Error::parse(line, format!("expected name=value in `{part}`")))?;
            let g = group
                .element(g)
                .ok_or_else(|| Error::parse(line, format!("unknown group element `{g}`")))?;
            gens.push((g, parse_scalar(val).map_err(|e| Error::parse(line, e))?));
        }
        return Character::from_generators(group, &gens)
            .map_err(|e| Error::parse(line, e.to_string()));
    }
    let exps: Vec<i64> = v
        .split(',')
        .map(|e| e.parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::parse(line, format!("bad character `{v}`")))?;
    Character::from_exponents(group, &exps).map_err(|e| Error::parse(line, e.to_string()))
}
