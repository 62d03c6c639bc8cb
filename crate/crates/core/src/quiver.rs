//! Finite directed multigraphs (quivers) and their connectivity structure.
//!
//! Vertices are indexed in load order and every partition is reported in
//! that order: classes sorted by their first vertex, members ascending.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::unionfind::UnionFind;
use rand::Rng;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Default)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
    report: OnceLock<ConnectivityReport>,
}

impl Clone for Quiver {
    fn clone(&self) -> Self {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self.arrows.clone(),
            vertex_index: self.vertex_index.clone(),
            arrow_index: self.arrow_index.clone(),
            report: OnceLock::new(),
        }
    }
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    /// Convenience constructor: `arrows` are `(name, source, target)`.
    pub fn from_parts(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        let mut q = Quiver::new();
        for v in vertices {
            q.add_vertex(v)?;
        }
        for (a, s, t) in arrows {
            q.add_arrow(a, s, t)?;
        }
        Ok(q)
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize> {
        if self.vertex_index.contains_key(name) {
            return Err(Error::InvalidQuiver(format!("duplicate vertex `{name}`")));
        }
        self.report = OnceLock::new();
        let i = self.vertices.len();
        self.vertices.push(name.to_string());
        self.vertex_index.insert(name.to_string(), i);
        Ok(i)
    }

    pub fn add_arrow(&mut self, name: &str, source: &str, target: &str) -> Result<usize> {
        let s = self.vertex(source)?;
        let t = self.vertex(target)?;
        self.add_arrow_by_index(name, s, t)
    }

    pub fn add_arrow_by_index(
        &mut self,
        name: &str,
        source: usize,
        target: usize,
    ) -> Result<usize> {
        if self.arrow_index.contains_key(name) {
            return Err(Error::InvalidQuiver(format!("duplicate arrow `{name}`")));
        }
        if source >= self.vertices.len() || target >= self.vertices.len() {
            return Err(Error::InvalidQuiver(format!(
                "arrow `{name}` has an endpoint out of range"
            )));
        }
        self.report = OnceLock::new();
        let k = self.arrows.len();
        self.arrows.push(Arrow {
            name: name.to_string(),
            source,
            target,
        });
        self.arrow_index.insert(name.to_string(), k);
        Ok(k)
    }

    /// Parses `vertex <name>` / `arrow <name> <src> <dst>` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut q = Quiver::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let words: Vec<&str> = body.split_whitespace().collect();
            match words.as_slice() {
                ["vertex", name] => {
                    q.add_vertex(name)
                        .map_err(|e| Error::parse(line, e.to_string()))?;
                }
                ["arrow", name, s, t] => {
                    q.add_arrow(name, s, t)
                        .map_err(|e| Error::parse(line, e.to_string()))?;
                }
                _ => {
                    return Err(Error::parse(
                        line,
                        format!("unrecognised directive `{body}`"),
                    ))
                }
            }
        }
        Ok(q)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("vertex {v}\n"));
        }
        for a in &self.arrows {
            out.push_str(&format!(
                "arrow {} {} {}\n",
                a.name, self.vertices[a.source], self.vertices[a.target]
            ));
        }
        out
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow(&self, name: &str) -> Option<usize> {
        self.arrow_index.get(name).copied()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn out_arrows(&self, v: usize) -> impl Iterator<Item = (usize, &Arrow)> {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.source == v)
    }

    /// No incident arrows at all, loops included.
    pub fn is_isolated(&self, v: usize) -> bool {
        !self.arrows.iter().any(|a| a.source == v || a.target == v)
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.arrows.iter().any(|a| a.source == v && a.target == v)
    }

    /// Subquiver on the given vertices with every arrow between them.
    pub fn induced(&self, vertices: &[usize]) -> Quiver {
        let mut q = Quiver::new();
        let mut map = HashMap::new();
        for &v in vertices {
            map.insert(
                v,
                q.add_vertex(&self.vertices[v]).expect("distinct vertices"),
            );
        }
        for a in &self.arrows {
            if let (Some(&s), Some(&t)) = (map.get(&a.source), map.get(&a.target)) {
                q.add_arrow_by_index(&a.name, s, t)
                    .expect("distinct arrows");
            }
        }
        q
    }

    fn graph(&self) -> DiGraph<(), ()> {
        let mut g = DiGraph::with_capacity(self.vertices.len(), self.arrows.len());
        for _ in &self.vertices {
            g.add_node(());
        }
        for a in &self.arrows {
            g.add_edge(NodeIndex::new(a.source), NodeIndex::new(a.target), ());
        }
        g
    }

    /// Connectivity data, computed once per quiver.
    pub fn connectivity(&self) -> &ConnectivityReport {
        self.report
            .get_or_init(|| ConnectivityReport::compute(self))
    }

    pub fn is_acyclic(&self) -> bool {
        !cycle_facts(self).has_cycle
    }
}

fn canonical_partition(mut classes: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for c in &mut classes {
        c.sort_unstable();
    }
    classes.sort();
    classes
}

pub fn strong_components(q: &Quiver) -> Vec<Vec<usize>> {
    q.connectivity().strong.clone()
}

pub fn weak_components(q: &Quiver) -> Vec<Vec<usize>> {
    q.connectivity().weak.clone()
}

/// Maximal unilaterally connected vertex sets; these may overlap.
pub fn unilateral_components(q: &Quiver) -> Vec<Vec<usize>> {
    let r = q.connectivity();
    match &r.unilateral {
        Some(sets) => sets.clone(),
        None => r
            .enumerate_unilateral(usize::MAX)
            .expect("unbounded enumeration"),
    }
}

/// True iff `i = j` or a directed path of length ≥ 1 runs from `i` to `j`.
pub fn reachable(q: &Quiver, i: &str, j: &str) -> Result<bool> {
    Ok(q.connectivity().reaches(q.vertex(i)?, q.vertex(j)?))
}

/// Pairs `(s, t)` with `t` reachable from `s` and `s` not reachable from `t`.
pub fn regular_pairs(q: &Quiver) -> BTreeSet<(usize, usize)> {
    let r = q.connectivity();
    let n = q.vertex_count();
    let mut out = BTreeSet::new();
    for s in 0..n {
        for t in 0..n {
            if r.class_of[s] != r.class_of[t] && r.reaches(s, t) {
                out.insert((s, t));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleFacts {
    pub has_cycle: bool,
    /// Unordered pairs `(s, t)`, `s < t`, lying on a common cycle.
    pub same_cycle: BTreeSet<(usize, usize)>,
}

pub fn cycle_facts(q: &Quiver) -> CycleFacts {
    let r = q.connectivity();
    let mut same_cycle = BTreeSet::new();
    for class in &r.strong {
        for (k, &s) in class.iter().enumerate() {
            for &t in &class[k + 1..] {
                same_cycle.insert((s, t));
            }
        }
    }
    let has_cycle = !same_cycle.is_empty() || q.arrows.iter().any(|a| a.source == a.target);
    CycleFacts {
        has_cycle,
        same_cycle,
    }
}

#[derive(Clone, Debug)]
pub struct ConnectivityReport {
    pub strong: Vec<Vec<usize>>,
    pub weak: Vec<Vec<usize>>,
    /// `None` when the number of maximal chains exceeds
    /// [`ConnectivityReport::UNILATERAL_LIMIT`]; see `unilateral_count`.
    pub unilateral: Option<Vec<Vec<usize>>>,
    pub unilateral_count: BigUint,
    /// `class_of[v]` indexes `strong`.
    pub class_of: Vec<usize>,
    /// Condensation reachability, reflexive: `class_reach[c]` contains `c`.
    class_reach: Vec<FixedBitSet>,
    /// Transitive reduction of the condensation.
    hasse: Vec<Vec<usize>>,
    /// Topological order of the condensation.
    topo: Vec<usize>,
}

impl ConnectivityReport {
    pub const UNILATERAL_LIMIT: usize = 10_000;

    fn compute(q: &Quiver) -> Self {
        let n = q.vertex_count();
        let g = q.graph();

        let strong = canonical_partition(
            tarjan_scc(&g)
                .into_iter()
                .map(|c| c.into_iter().map(|v| v.index()).collect())
                .collect(),
        );
        let mut class_of = vec![0; n];
        for (c, class) in strong.iter().enumerate() {
            for &v in class {
                class_of[v] = c;
            }
        }

        let mut uf = UnionFind::<usize>::new(n);
        for a in &q.arrows {
            uf.union(a.source, a.target);
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for v in 0..n {
            groups.entry(uf.find(v)).or_default().push(v);
        }
        let weak = canonical_partition(groups.into_values().collect());

        let k = strong.len();
        let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
        let mut indeg = vec![0usize; k];
        for a in &q.arrows {
            let (cs, ct) = (class_of[a.source], class_of[a.target]);
            if cs != ct && succ[cs].insert(ct) {
                indeg[ct] += 1;
            }
        }
        // Kahn order on the condensation
        let mut order = Vec::with_capacity(k);
        let mut queue: VecDeque<usize> = (0..k).filter(|&c| indeg[c] == 0).collect();
        while let Some(c) = queue.pop_front() {
            order.push(c);
            for &d in &succ[c] {
                indeg[d] -= 1;
                if indeg[d] == 0 {
                    queue.push_back(d);
                }
            }
        }
        let mut class_reach = vec![FixedBitSet::with_capacity(k); k];
        for &c in order.iter().rev() {
            let mut bits = FixedBitSet::with_capacity(k);
            bits.insert(c);
            for &d in &succ[c] {
                bits.union_with(&class_reach[d]);
            }
            class_reach[c] = bits;
        }
        let hasse: Vec<Vec<usize>> = (0..k)
            .map(|c| {
                succ[c]
                    .iter()
                    .copied()
                    .filter(|&d| {
                        !succ[c]
                            .iter()
                            .any(|&w| w != d && class_reach[w].contains(d))
                    })
                    .collect()
            })
            .collect();

        // maximal chains of the condensation poset = source-to-sink Hasse paths
        let mut has_pred = vec![false; k];
        for hs in &hasse {
            for &d in hs {
                has_pred[d] = true;
            }
        }
        let mut chains_from = vec![BigUint::zero(); k];
        for &c in order.iter().rev() {
            chains_from[c] = if hasse[c].is_empty() {
                BigUint::one()
            } else {
                hasse[c].iter().map(|&d| chains_from[d].clone()).sum()
            };
        }
        let unilateral_count = (0..k)
            .filter(|&c| !has_pred[c])
            .map(|c| chains_from[c].clone())
            .sum();

        let mut report = ConnectivityReport {
            strong,
            weak,
            unilateral: None,
            unilateral_count,
            class_of,
            class_reach,
            hasse,
            topo: order,
        };
        report.unilateral = report.enumerate_unilateral(Self::UNILATERAL_LIMIT);
        report
    }

    fn enumerate_unilateral(&self, limit: usize) -> Option<Vec<Vec<usize>>> {
        if self.unilateral_count > BigUint::from(limit) {
            return None;
        }
        let k = self.strong.len();
        let mut has_pred = vec![false; k];
        for hs in &self.hasse {
            for &d in hs {
                has_pred[d] = true;
            }
        }
        let mut sets = Vec::new();
        let mut stack: Vec<(usize, Vec<usize>)> = (0..k)
            .filter(|&c| !has_pred[c])
            .map(|c| (c, vec![c]))
            .collect();
        while let Some((c, chain)) = stack.pop() {
            if self.hasse[c].is_empty() {
                let mut vs: Vec<usize> = chain
                    .iter()
                    .flat_map(|&d| self.strong[d].iter().copied())
                    .collect();
                vs.sort_unstable();
                sets.push(vs);
                continue;
            }
            for &d in &self.hasse[c] {
                let mut next = chain.clone();
                next.push(d);
                stack.push((d, next));
            }
        }
        sets.sort();
        Some(sets)
    }

    pub fn reaches(&self, i: usize, j: usize) -> bool {
        self.class_reach[self.class_of[i]].contains(self.class_of[j])
    }

    /// Dense reachability matrix.
    pub fn reach_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.class_of.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.reaches(i, j)).collect())
            .collect()
    }
}

/// Independent reachability oracle: frontier expansion for at most `|V|` steps.
pub fn reach_by_bounded_walks(q: &Quiver) -> Vec<Vec<bool>> {
    let n = q.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for a in &q.arrows {
        adj[a.source].push(a.target);
    }
    (0..n)
        .map(|s| {
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut frontier = vec![s];
            for _ in 0..n {
                let mut next = Vec::new();
                for &v in &frontier {
                    for &w in &adj[v] {
                        if !seen[w] {
                            seen[w] = true;
                            next.push(w);
                        }
                    }
                }
                if next.is_empty() {
                    break;
                }
                frontier = next;
            }
            seen
        })
        .collect()
}

/// Number of regular paths, `None` when infinite.
///
/// Infinite exactly when a strong class carrying a cycle has an arrow to or
/// from another class: pumping the cycle yields unboundedly many paths whose
/// endpoint pair is regular. Otherwise every regular path runs through
/// acyclic singleton classes and the count is a DAG path count.
pub fn regular_path_count(q: &Quiver) -> Option<BigUint> {
    let r = q.connectivity();
    let cyclic_class =
        |c: usize| r.strong[c].len() > 1 || r.strong[c].iter().any(|&v| q.has_loop(v));
    for a in &q.arrows {
        let (cs, ct) = (r.class_of[a.source], r.class_of[a.target]);
        if cs != ct && (cyclic_class(cs) || cyclic_class(ct)) {
            return None;
        }
    }
    let n = q.vertex_count();
    let acyclic: Vec<bool> = (0..n).map(|v| !cyclic_class(r.class_of[v])).collect();
    let mut from = vec![BigUint::zero(); n];
    let mut total = BigUint::zero();
    for &c in r.topo.iter().rev() {
        for &v in &r.strong[c] {
            if !acyclic[v] {
                continue;
            }
            let mut paths = BigUint::zero();
            for (_, a) in q.out_arrows(v) {
                if acyclic[a.target] {
                    paths += BigUint::one() + &from[a.target];
                }
            }
            total += &paths;
            from[v] = paths;
        }
    }
    Some(total)
}

/// Random generators for tests and benchmarks.
pub mod random {
    use super::*;

    /// Acyclic quiver: arrows only go from lower to higher vertex index.
    pub fn acyclic<R: Rng>(rng: &mut R, max_vertices: usize, max_arrows: usize) -> Quiver {
        let n = rng.gen_range(1..=max_vertices);
        let mut q = Quiver::new();
        for v in 0..n {
            q.add_vertex(&format!("v{v}")).unwrap();
        }
        if n > 1 {
            let m = rng.gen_range(0..=max_arrows);
            for k in 0..m {
                let s = rng.gen_range(0..n - 1);
                let t = rng.gen_range(s + 1..n);
                q.add_arrow_by_index(&format!("a{k}"), s, t).unwrap();
            }
        }
        q
    }

    /// Arbitrary digraph; loops and parallel arrows allowed.
    pub fn digraph<R: Rng>(rng: &mut R, max_vertices: usize, max_arrows: usize) -> Quiver {
        let n = rng.gen_range(1..=max_vertices);
        let mut q = Quiver::new();
        for v in 0..n {
            q.add_vertex(&format!("v{v}")).unwrap();
        }
        let m = rng.gen_range(0..=max_arrows);
        for k in 0..m {
            let s = rng.gen_range(0..n);
            let t = rng.gen_range(0..n);
            q.add_arrow_by_index(&format!("a{k}"), s, t).unwrap();
        }
        q
    }
}
