//! Path algebras `kD` and generalized path algebras `k(D, Ω)`, their
//! quotients by homogeneous relations, and the closed-form radical,
//! primeness and semiprimeness descriptions in terms of the quiver.
//!
//! Ω-slots range over a fixed basis of each vertex algebra `Ω_ii`, so a
//! [`PathElement`] is a canonical finite map from basis paths to scalars.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::findim::{element_literal, jacobson_oracle, FinDimAlgebra, RadicalKind};
use crate::linalg::{SparseVec, Subspace};
use crate::quiver::{self, Quiver};
use crate::scalar::{parse_linear, Cyclotomic};

/// `a_0 x_1 a_1 … x_n a_n`: vertices `i_0..i_n`, arrows by id, one Ω-basis
/// slot per vertex. Field order gives the length-lexicographic path order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneralizedPath {
    len: usize,
    vertices: Vec<usize>,
    arrows: Vec<usize>,
    slots: Vec<usize>,
}

impl GeneralizedPath {
    pub fn trivial(vertex: usize, slot: usize) -> Self {
        GeneralizedPath {
            len: 0,
            vertices: vec![vertex],
            arrows: Vec::new(),
            slots: vec![slot],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_trivial(&self) -> bool {
        self.len == 0
    }

    pub fn source(&self) -> usize {
        self.vertices[0]
    }

    pub fn target(&self) -> usize {
        *self.vertices.last().expect("paths have a vertex")
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Arrow ids in the owning [`PathAlgebra`].
    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn slots(&self) -> &[usize] {
        &self.slots
    }
}

#[derive(Debug)]
struct Inner {
    quiver: Quiver,
    /// Quiver arrow indices sorted by arrow name; an arrow id is a position here.
    arrow_order: Vec<usize>,
    arrow_id: HashMap<String, usize>,
    omega: Vec<FinDimAlgebra>,
    /// Unit of each `Ω_ii` over its basis.
    omega_units: Vec<SparseVec>,
    plain: bool,
    warnings: Vec<String>,
}

/// Handle to `k(D, Ω)`; cheap to clone, compared by identity.
#[derive(Clone, Debug)]
pub struct PathAlgebra(Arc<Inner>);

impl PartialEq for PathAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

fn ground_field() -> FinDimAlgebra {
    FinDimAlgebra::trusted(
        vec!["e".into()],
        vec![SparseVec::unit(0)],
        Some(SparseVec::unit(0)),
    )
}

impl PathAlgebra {
    /// The plain path algebra `kD`.
    pub fn new(quiver: Quiver) -> Self {
        let n = quiver.vertex_count();
        Self::build(quiver, vec![ground_field(); n], true, Vec::new())
    }

    /// `k(D, Ω)` with one unital vertex algebra per vertex. A nonzero
    /// Jacobson radical of some `Ω_ii` is allowed but recorded as a warning.
    pub fn with_omega(quiver: Quiver, omega: Vec<FinDimAlgebra>) -> Result<Self> {
        if omega.len() != quiver.vertex_count() {
            return Err(Error::Invalid(format!(
                "{} vertex algebras for {} vertices",
                omega.len(),
                quiver.vertex_count()
            )));
        }
        let mut warnings = Vec::new();
        for (v, o) in omega.iter().enumerate() {
            let rep = jacobson_oracle(o)?;
            if !rep.radical.is_zero() {
                warnings.push(format!(
                    "vertex algebra at `{}` has a Jacobson radical of dimension {}",
                    quiver.vertices()[v],
                    rep.radical.dim()
                ));
            }
        }
        Ok(Self::build(quiver, omega, false, warnings))
    }

    fn build(
        quiver: Quiver,
        omega: Vec<FinDimAlgebra>,
        plain: bool,
        warnings: Vec<String>,
    ) -> Self {
        let mut arrow_order: Vec<usize> = (0..quiver.arrow_count()).collect();
        arrow_order.sort_by(|&a, &b| quiver.arrows()[a].name.cmp(&quiver.arrows()[b].name));
        let arrow_id = arrow_order
            .iter()
            .enumerate()
            .map(|(id, &a)| (quiver.arrows()[a].name.clone(), id))
            .collect();
        let omega_units = omega
            .iter()
            .map(|o| o.unit().expect("vertex algebras are unital").clone())
            .collect();
        PathAlgebra(Arc::new(Inner {
            quiver,
            arrow_order,
            arrow_id,
            omega,
            omega_units,
            plain,
            warnings,
        }))
    }

    pub fn quiver(&self) -> &Quiver {
        &self.0.quiver
    }

    pub fn is_plain(&self) -> bool {
        self.0.plain
    }

    pub fn omega(&self, v: usize) -> &FinDimAlgebra {
        &self.0.omega[v]
    }

    pub fn warnings(&self) -> &[String] {
        &self.0.warnings
    }

    pub fn arrow_id(&self, name: &str) -> Option<usize> {
        self.0.arrow_id.get(name).copied()
    }

    pub fn arrow_count(&self) -> usize {
        self.0.arrow_order.len()
    }

    pub fn arrow_name(&self, id: usize) -> &str {
        &self.quiver().arrows()[self.0.arrow_order[id]].name
    }

    /// `(source, target)` of an arrow id.
    pub fn arrow_ends(&self, id: usize) -> (usize, usize) {
        let a = &self.quiver().arrows()[self.0.arrow_order[id]];
        (a.source, a.target)
    }

    pub fn zero(&self) -> PathElement {
        PathElement {
            alg: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn path(&self, p: GeneralizedPath) -> PathElement {
        self.zero().with_term(p, Cyclotomic::one())
    }

    /// `e_ii`, the unit of `Ω_ii`.
    pub fn vertex_element(&self, v: usize) -> PathElement {
        let mut e = self.zero();
        for (b, c) in self.0.omega_units[v].iter() {
            e = e.with_term(GeneralizedPath::trivial(v, b), c.clone());
        }
        e
    }

    /// The basis element `b` of `Ω_vv`, as a length-0 path.
    pub fn slot_element(&self, v: usize, b: usize) -> PathElement {
        self.path(GeneralizedPath::trivial(v, b))
    }

    /// `e_ss x e_tt` for the named arrow.
    pub fn arrow_element(&self, name: &str) -> Result<PathElement> {
        let id = self
            .arrow_id(name)
            .ok_or_else(|| Error::Invalid(format!("unknown arrow `{name}`")))?;
        Ok(self.arrow_by_id(id))
    }

    pub fn arrow_by_id(&self, id: usize) -> PathElement {
        let (s, t) = self.arrow_ends(id);
        let mut out = self.zero();
        for (a, ca) in self.0.omega_units[s].iter() {
            for (b, cb) in self.0.omega_units[t].iter() {
                let p = GeneralizedPath {
                    len: 1,
                    vertices: vec![s, t],
                    arrows: vec![id],
                    slots: vec![a, b],
                };
                out = out.with_term(p, ca * cb);
            }
        }
        out
    }

    /// Product of two basis paths: concatenation with the middle slot
    /// multiplied in `Ω` and re-expanded; zero on an endpoint mismatch.
    pub fn multiply_paths(
        &self,
        x: &GeneralizedPath,
        y: &GeneralizedPath,
    ) -> Vec<(GeneralizedPath, Cyclotomic)> {
        if x.target() != y.source() {
            return Vec::new();
        }
        let v = x.target();
        let mid = self.0.omega[v].basis_product(*x.slots.last().unwrap(), y.slots[0]);
        mid.iter()
            .map(|(c, coeff)| {
                let mut vertices = x.vertices.clone();
                vertices.extend_from_slice(&y.vertices[1..]);
                let mut arrows = x.arrows.clone();
                arrows.extend_from_slice(&y.arrows);
                let mut slots = x.slots[..x.slots.len() - 1].to_vec();
                slots.push(c);
                slots.extend_from_slice(&y.slots[1..]);
                (
                    GeneralizedPath {
                        len: x.len + y.len,
                        vertices,
                        arrows,
                        slots,
                    },
                    coeff.clone(),
                )
            })
            .collect()
    }

    fn slot_suffix(&self, v: usize, slot: usize) -> String {
        if self.0.omega[v].dim() == 1 {
            String::new()
        } else {
            format!("[{}]", self.0.omega[v].names()[slot])
        }
    }

    /// Literal for a basis path: `e(v)`, `x.y`, with `[b]` slot annotations
    /// where the vertex algebra has dimension above one.
    pub fn path_name(&self, p: &GeneralizedPath) -> String {
        let names = self.quiver().vertices();
        if p.len == 0 {
            return format!(
                "e({}){}",
                names[p.vertices[0]],
                self.slot_suffix(p.vertices[0], p.slots[0])
            );
        }
        let mut out = self.slot_suffix(p.vertices[0], p.slots[0]);
        for (k, &a) in p.arrows.iter().enumerate() {
            if k > 0 {
                out.push('.');
            }
            out.push_str(self.arrow_name(a));
            out.push_str(&self.slot_suffix(p.vertices[k + 1], p.slots[k + 1]));
        }
        out
    }

    /// Parses `2*x.y - e(1) + z3*[g]X[1]`; an omitted slot stands for the
    /// unit of the vertex algebra.
    pub fn parse_element(&self, text: &str) -> Result<PathElement> {
        let prepared = rewrite_vertex_literals(text);
        let lin = parse_linear(&prepared).map_err(Error::Invalid)?;
        let mut out = self.zero();
        for (sym, c) in lin.nonzero() {
            let Some(sym) = sym else {
                return Err(Error::Invalid(format!(
                    "bare scalar term in path literal `{text}`"
                )));
            };
            out = out.add(&self.parse_path_symbol(sym)?.scale(c));
        }
        Ok(out)
    }

    fn parse_slot(&self, v: usize, text: &str) -> Result<usize> {
        self.0.omega[v].index_of(text).ok_or_else(|| {
            Error::Invalid(format!(
                "unknown slot `{text}` at vertex `{}`",
                self.quiver().vertices()[v]
            ))
        })
    }

    fn parse_path_symbol(&self, sym: &str) -> Result<PathElement> {
        fn split_slot(s: &str) -> Result<(&str, Option<&str>)> {
            match s.find('[') {
                None => Ok((s, None)),
                Some(k) if s.ends_with(']') => Ok((&s[..k], Some(&s[k + 1..s.len() - 1]))),
                Some(_) => Err(Error::Invalid(format!(
                    "malformed slot annotation in `{s}`"
                ))),
            }
        }
        if let Some(rest) = sym.strip_prefix("e@") {
            let (vname, slot) = split_slot(rest)?;
            let v = self.quiver().vertex(vname)?;
            return match slot {
                None => Ok(self.vertex_element(v)),
                Some(s) => Ok(self.slot_element(v, self.parse_slot(v, s)?)),
            };
        }
        let (lead, body) = if let Some(rest) = sym.strip_prefix('[') {
            let close = rest
                .find(']')
                .ok_or_else(|| Error::Invalid(format!("unclosed slot in `{sym}`")))?;
            (Some(&rest[..close]), &rest[close + 1..])
        } else {
            (None, sym)
        };
        let mut elem: Option<PathElement> = None;
        for (k, tok) in body.split('.').enumerate() {
            let (aname, slot) = split_slot(tok)?;
            let id = self
                .arrow_id(aname)
                .ok_or_else(|| Error::Invalid(format!("unknown arrow `{aname}`")))?;
            let (s, t) = self.arrow_ends(id);
            let mut piece = self.arrow_by_id(id);
            if k == 0 {
                if let Some(l) = lead {
                    piece = self.slot_element(s, self.parse_slot(s, l)?).mul(&piece)?;
                }
            }
            if let Some(sl) = slot {
                piece = piece.mul(&self.slot_element(t, self.parse_slot(t, sl)?))?;
            }
            elem = Some(match elem {
                None => piece,
                Some(e) => e.mul(&piece)?,
            });
        }
        elem.ok_or_else(|| Error::Invalid(format!("empty path literal `{sym}`")))
    }

    /// All basis paths of length `< bound`, ascending.
    pub fn paths_below(&self, bound: usize) -> Vec<GeneralizedPath> {
        let mut out = Vec::new();
        if bound == 0 {
            return out;
        }
        let q = self.quiver();
        let mut layer: Vec<GeneralizedPath> = (0..q.vertex_count())
            .flat_map(|v| (0..self.0.omega[v].dim()).map(move |b| GeneralizedPath::trivial(v, b)))
            .collect();
        for level in 0..bound {
            out.extend(layer.iter().cloned());
            if level + 1 == bound || layer.is_empty() {
                break;
            }
            let mut next = Vec::new();
            for p in &layer {
                for id in 0..self.arrow_count() {
                    let (s, t) = self.arrow_ends(id);
                    if s != p.target() {
                        continue;
                    }
                    for b in 0..self.0.omega[t].dim() {
                        let mut np = p.clone();
                        np.len += 1;
                        np.vertices.push(t);
                        np.arrows.push(id);
                        np.slots.push(b);
                        next.push(np);
                    }
                }
            }
            layer = next;
        }
        out.sort();
        out
    }

    /// Finite-dimensional algebra `k(D, Ω)/((ρ) + J^cap)`.
    ///
    /// Without relations and cap the quiver must be acyclic. Relations must be
    /// homogeneous in path length; with exponent `t` the check `J^t ⊆ (ρ)` is
    /// exact because `(ρ)` is then a graded ideal.
    pub fn materialize(
        &self,
        relations: Option<&RelationSet>,
        cap: Option<usize>,
    ) -> Result<MaterializedAlgebra> {
        let work_bound = match (relations, cap) {
            (Some(r), _) => r.exponent + 1,
            (None, Some(c)) => c,
            (None, None) => {
                if !self.quiver().is_acyclic() {
                    return Err(Error::InfiniteDimensional(
                        "quiver has an oriented cycle; supply relations or a length cap".into(),
                    ));
                }
                self.quiver().vertex_count().max(1)
            }
        };
        if let Some(r) = relations {
            r.check_shape()?;
            if r.generators.iter().any(|g| g.alg != *self) {
                return Err(Error::AmbientMismatch);
            }
        }
        // descending order so that RREF pivots fall on the largest paths
        let mut enumeration = self.paths_below(work_bound);
        enumeration.reverse();
        let index: HashMap<GeneralizedPath, usize> = enumeration
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let to_vec = |e: &PathElement| -> SparseVec {
            SparseVec::from_pairs(
                e.terms
                    .iter()
                    .filter_map(|(p, c)| index.get(p).map(|&i| (i, c.clone()))),
            )
        };
        let from_vec = |v: &SparseVec| -> PathElement {
            let mut e = self.zero();
            for (i, c) in v.iter() {
                e = e.with_term(enumeration[i].clone(), c.clone());
            }
            e
        };

        let mut ideal = Subspace::zero(enumeration.len());
        if let Some(r) = relations {
            let mut gens: Vec<PathElement> = (0..self.quiver().vertex_count())
                .flat_map(|v| (0..self.0.omega[v].dim()).map(move |b| (v, b)))
                .map(|(v, b)| self.slot_element(v, b))
                .collect();
            gens.extend((0..self.arrow_count()).map(|id| self.arrow_by_id(id)));
            let mut work: Vec<SparseVec> = r.generators.iter().map(&to_vec).collect();
            while let Some(v) = work.pop() {
                if !ideal.insert(v.clone()) {
                    continue;
                }
                let e = from_vec(&v);
                for g in &gens {
                    work.push(to_vec(&g.mul(&e)?));
                    work.push(to_vec(&e.mul(g)?));
                }
            }
            for (i, p) in enumeration.iter().enumerate() {
                if p.len == r.exponent && !ideal.contains(&SparseVec::unit(i)) {
                    return Err(Error::Admissibility(format!(
                        "J^{} is not contained in (ρ): path `{}` survives",
                        r.exponent,
                        self.path_name(p)
                    )));
                }
            }
        }
        if let Some(c) = cap {
            for (i, p) in enumeration.iter().enumerate() {
                if p.len >= c {
                    ideal.insert(SparseVec::unit(i));
                }
            }
        }

        let mut basis: Vec<GeneralizedPath> = ideal
            .complement_units()
            .into_iter()
            .map(|i| enumeration[i].clone())
            .collect();
        basis.sort();
        let basis_pos: HashMap<GeneralizedPath, usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let reduce = |terms: Vec<(GeneralizedPath, Cyclotomic)>| -> SparseVec {
            let v = SparseVec::from_pairs(
                terms
                    .into_iter()
                    .filter_map(|(p, c)| index.get(&p).map(|&i| (i, c))),
            );
            let r = ideal.reduce(&v);
            SparseVec::from_pairs(
                r.iter()
                    .map(|(i, c)| (basis_pos[&enumeration[i]], c.clone())),
            )
        };
        let m = basis.len();
        let mut table = Vec::with_capacity(m * m);
        for x in &basis {
            for y in &basis {
                table.push(reduce(self.multiply_paths(x, y)));
            }
        }
        let unit_terms: Vec<(GeneralizedPath, Cyclotomic)> = (0..self.quiver().vertex_count())
            .flat_map(|v| self.vertex_element(v).terms.into_iter())
            .collect();
        let unit = reduce(unit_terms);
        let names = basis.iter().map(|p| self.path_name(p)).collect();
        let algebra = FinDimAlgebra::trusted(names, table, Some(unit));
        Ok(MaterializedAlgebra {
            path_algebra: self.clone(),
            algebra,
            basis,
            enumeration,
            index,
            ideal,
            basis_pos,
        })
    }
}

/// Turns `e(v)` into the single symbol `e@v` for the linear-combination parser.
fn rewrite_vertex_literals(text: &str) -> String {
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::new();
    let mut i = 0;
    while i < chars.len() {
        let boundary = i == 0
            || !(chars[i - 1].is_alphanumeric() || matches!(chars[i - 1], '_' | '.' | ']' | '\''));
        if boundary && chars[i] == 'e' && chars.get(i + 1) == Some(&'(') {
            if let Some(close) = chars[i + 2..].iter().position(|&c| c == ')') {
                out.push_str("e@");
                out.extend(&chars[i + 2..i + 2 + close]);
                i += close + 3;
                continue;
            }
        }
        out.push(chars[i]);
        i += 1;
    }
    out
}

/// Finite linear combination of basis paths.
#[derive(Clone, Debug)]
pub struct PathElement {
    alg: PathAlgebra,
    terms: BTreeMap<GeneralizedPath, Cyclotomic>,
}

impl PartialEq for PathElement {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg && self.terms == other.terms
    }
}

impl PathElement {
    fn with_term(mut self, p: GeneralizedPath, c: Cyclotomic) -> Self {
        let slot = self.terms.entry(p.clone()).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&p);
        }
        self
    }

    pub fn algebra(&self) -> &PathAlgebra {
        &self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GeneralizedPath, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &GeneralizedPath) -> Cyclotomic {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &PathElement) -> PathElement {
        assert!(self.alg == other.alg, "elements of different path algebras");
        other.terms.iter().fold(self.clone(), |acc, (p, c)| {
            acc.with_term(p.clone(), c.clone())
        })
    }

    pub fn sub(&self, other: &PathElement) -> PathElement {
        self.add(&other.scale(&Cyclotomic::from_int(-1)))
    }

    pub fn scale(&self, s: &Cyclotomic) -> PathElement {
        let mut out = self.alg.zero();
        if s.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(p, c)| (p.clone(), c * s)).collect();
        out
    }

    /// Bilinear extension of the path product.
    pub fn mul(&self, other: &PathElement) -> Result<PathElement> {
        if self.alg != other.alg {
            return Err(Error::AmbientMismatch);
        }
        let mut acc: BTreeMap<GeneralizedPath, Cyclotomic> = BTreeMap::new();
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                let ab = a * b;
                for (p, c) in self.alg.multiply_paths(x, y) {
                    *acc.entry(p).or_default() += &(&ab * &c);
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(PathElement {
            alg: self.alg.clone(),
            terms: acc,
        })
    }

    /// Component in `A_ij`: the paths from `i` to `j`.
    pub fn block(&self, i: usize, j: usize) -> PathElement {
        let mut out = self.alg.zero();
        out.terms = self
            .terms
            .iter()
            .filter(|(p, _)| p.source() == i && p.target() == j)
            .map(|(p, c)| (p.clone(), c.clone()))
            .collect();
        out
    }

    /// Lengths of the support paths, if they all agree.
    pub fn homogeneous_length(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(|p| p.len);
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }
}

pub fn multiply(x: &PathElement, y: &PathElement) -> Result<PathElement> {
    x.mul(y)
}

impl fmt::Display for PathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.terms.keys().map(|p| self.alg.path_name(p)).collect();
        let v = SparseVec::from_pairs(self.terms.values().cloned().enumerate());
        write!(f, "{}", element_literal(&names, &v))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationMode {
    /// `(ρ) ⊆ J²`
    Admissible,
    /// `(ρ) ⊆ J`
    Weak,
}

#[derive(Clone, Debug)]
pub struct RelationSet {
    pub generators: Vec<PathElement>,
    /// `t` with `J^t ⊆ (ρ)`.
    pub exponent: usize,
    pub mode: RelationMode,
}

impl RelationSet {
    pub fn new(generators: Vec<PathElement>, exponent: usize, mode: RelationMode) -> Self {
        RelationSet {
            generators,
            exponent,
            mode,
        }
    }

    fn check_shape(&self) -> Result<()> {
        let floor = match self.mode {
            RelationMode::Admissible => 2,
            RelationMode::Weak => 1,
        };
        if self.exponent < floor {
            return Err(Error::Admissibility(format!(
                "exponent {} below {floor}",
                self.exponent
            )));
        }
        for g in self.generators.iter().filter(|g| !g.is_zero()) {
            let Some(l) = g.homogeneous_length() else {
                return Err(Error::Admissibility(format!(
                    "relation `{g}` is not homogeneous in path length"
                )));
            };
            if l < floor {
                return Err(Error::Admissibility(format!(
                    "relation `{g}` is not in J^{floor}"
                )));
            }
        }
        Ok(())
    }
}

/// A finite-dimensional quotient of a path algebra with its normal-form basis.
#[derive(Clone, Debug)]
pub struct MaterializedAlgebra {
    path_algebra: PathAlgebra,
    pub algebra: FinDimAlgebra,
    basis: Vec<GeneralizedPath>,
    enumeration: Vec<GeneralizedPath>,
    index: HashMap<GeneralizedPath, usize>,
    ideal: Subspace,
    basis_pos: HashMap<GeneralizedPath, usize>,
}

impl MaterializedAlgebra {
    pub fn path_algebra(&self) -> &PathAlgebra {
        &self.path_algebra
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_paths(&self) -> &[GeneralizedPath] {
        &self.basis
    }

    pub fn basis_index(&self, p: &GeneralizedPath) -> Option<usize> {
        self.basis_pos.get(p).copied()
    }

    /// Coordinates of the image of `e` over the normal-form basis.
    pub fn coordinates(&self, e: &PathElement) -> Result<SparseVec> {
        if e.alg != self.path_algebra {
            return Err(Error::AmbientMismatch);
        }
        let v = SparseVec::from_pairs(
            e.terms
                .iter()
                .filter_map(|(p, c)| self.index.get(p).map(|&i| (i, c.clone()))),
        );
        let r = self.ideal.reduce(&v);
        Ok(SparseVec::from_pairs(r.iter().map(|(i, c)| {
            (self.basis_pos[&self.enumeration[i]], c.clone())
        })))
    }

    pub fn element(&self, v: &SparseVec) -> PathElement {
        let mut e = self.path_algebra.zero();
        for (i, c) in v.iter() {
            e = e.with_term(self.basis[i].clone(), c.clone());
        }
        e
    }

    /// Span of the basis paths satisfying `keep`.
    pub fn span_of(&self, keep: impl Fn(&GeneralizedPath) -> bool) -> Subspace {
        Subspace::spanned_by(
            self.dim(),
            self.basis
                .iter()
                .enumerate()
                .filter(|(_, p)| keep(p))
                .map(|(i, _)| SparseVec::unit(i)),
        )
    }

    /// Basis indices of paths from `i` to `j`.
    pub fn block_indices(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&k| self.basis[k].source() == i && self.basis[k].target() == j)
            .collect()
    }
}

/// Radical of `kD` in closed form: the span of regular paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularPathRadical {
    pub pairs: BTreeSet<(usize, usize)>,
}

impl RegularPathRadical {
    pub fn contains_path(&self, p: &GeneralizedPath) -> bool {
        self.pairs.contains(&(p.source(), p.target()))
    }

    /// Membership: every support path is regular.
    pub fn contains(&self, e: &PathElement) -> bool {
        e.terms().all(|(p, _)| self.contains_path(p))
    }

    pub fn is_zero(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// `r_b = r_l = r_k = r_j` of `kD`: the span of regular paths.
pub fn radical_description(q: &Quiver, kind: RadicalKind) -> Result<RegularPathRadical> {
    if kind == RadicalKind::Vn {
        return Err(Error::NotApplicable(
            "the von Neumann regular radical is described by isolated vertices".into(),
        ));
    }
    Ok(RegularPathRadical {
        pairs: quiver::regular_pairs(q),
    })
}

/// The regular paths of a plain path algebra, ascending, when there are
/// at most `limit` of them.
///
/// A finite count forces every regular path through vertices that lie on no
/// cycle, and every path of positive length among those vertices is regular.
pub fn regular_paths(alg: &PathAlgebra, limit: usize) -> Option<Vec<GeneralizedPath>> {
    let q = alg.quiver();
    let count = quiver::regular_path_count(q)?;
    if !alg.is_plain() || count > num_bigint::BigUint::from(limit) {
        return None;
    }
    let r = q.connectivity();
    let free: Vec<bool> = (0..q.vertex_count())
        .map(|v| r.strong[r.class_of[v]].len() == 1 && !q.has_loop(v))
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<GeneralizedPath> = (0..q.vertex_count())
        .filter(|&v| free[v])
        .map(|v| GeneralizedPath::trivial(v, 0))
        .collect();
    while let Some(p) = stack.pop() {
        for id in 0..alg.arrow_count() {
            let (s, t) = alg.arrow_ends(id);
            if s != p.target() || !free[t] {
                continue;
            }
            let mut next = p.clone();
            next.len += 1;
            next.vertices.push(t);
            next.arrows.push(id);
            next.slots.push(0);
            out.push(next.clone());
            stack.push(next);
        }
    }
    out.sort();
    Some(out)
}

/// Vertices whose idempotents span `r_n(kD)`: those with no incident arrow.
pub fn vn_radical_description(q: &Quiver) -> Vec<usize> {
    (0..q.vertex_count())
        .filter(|&v| q.is_isolated(v))
        .collect()
}

/// `kD` is prime exactly when `D` is strongly connected.
pub fn is_prime(q: &Quiver) -> bool {
    q.vertex_count() > 0 && q.connectivity().strong.len() == 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockRadical {
    Zero,
    Full,
}

/// Radical of the `A_ts`-ring `A_st` of `kD`.
pub fn gamma_block_radical(
    q: &Quiver,
    s: usize,
    t: usize,
    kind: RadicalKind,
) -> Result<BlockRadical> {
    let r = q.connectivity();
    if kind == RadicalKind::Vn {
        if s == t {
            return Err(Error::NotApplicable(
                "diagonal blocks are rings, not Γ-rings over a different block".into(),
            ));
        }
        return Ok(BlockRadical::Zero);
    }
    if !r.reaches(s, t) {
        return Err(Error::Precondition(format!(
            "A_{{{},{}}} = 0",
            q.vertices()[s],
            q.vertices()[t]
        )));
    }
    Ok(if r.reaches(t, s) {
        BlockRadical::Zero
    } else {
        BlockRadical::Full
    })
}

/// The eleven equivalent conditions on `D` and `kD`, each computed by its
/// own route.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub verdicts: Vec<(&'static str, bool)>,
}

impl EquivalenceReport {
    pub fn all_equal(&self) -> bool {
        self.verdicts.windows(2).all(|w| w[0].1 == w[1].1)
    }

    pub fn value(&self) -> Option<bool> {
        self.all_equal()
            .then(|| self.verdicts.first().is_none_or(|v| v.1))
    }
}

pub fn equivalence_report(q: &Quiver) -> EquivalenceReport {
    let r = q.connectivity();
    let n = q.vertex_count();
    let strong_set: BTreeSet<&Vec<usize>> = r.strong.iter().collect();

    let weak_strong = r.weak == r.strong;
    // more maximal chains than the enumeration limit means some chain links
    // two strong classes, so neither condition can hold
    let (uni_strong, coincide) = match &r.unilateral {
        Some(unilateral) => {
            let uni_strong = unilateral.iter().all(|u| strong_set.contains(u));
            (
                uni_strong,
                weak_strong && uni_strong && unilateral.len() == r.strong.len(),
            )
        }
        None => (false, false),
    };
    let inside = q
        .arrows()
        .iter()
        .all(|a| r.class_of[a.source] == r.class_of[a.target]);
    let no_pairs = quiver::regular_pairs(q).is_empty();
    let reach = r.reach_matrix();
    let symmetric = (0..n).all(|a| (0..n).all(|b| reach[a][b] == reach[b][a]));
    let components_prime = r.weak.iter().all(|w| is_prime(&q.induced(w)));
    let no_paths =
        quiver::regular_path_count(q).is_some_and(|c| c == num_bigint::BigUint::from(0u32));
    let blocks_zero = (0..n).all(|s| {
        (0..n).all(|t| match gamma_block_radical(q, s, t, RadicalKind::Baer) {
            Ok(b) => b == BlockRadical::Zero,
            Err(_) => true,
        })
    });
    let walks = quiver::reach_by_bounded_walks(q);
    let walks_sym = (0..n).all(|s| (0..n).all(|t| !walks[s][t] || walks[t][s]));
    let rad = RegularPathRadical {
        pairs: quiver::regular_pairs(q),
    };
    let no_arrows = q
        .arrows()
        .iter()
        .all(|a| !rad.pairs.contains(&(a.source, a.target)));

    EquivalenceReport {
        verdicts: vec![
            ("weak-is-strong", weak_strong),
            ("unilateral-is-strong", uni_strong),
            ("partitions-coincide", coincide),
            ("arrows-inside-classes", inside),
            ("no-regular-pairs", no_pairs),
            ("reachability-symmetric", symmetric),
            ("weak-components-prime", components_prime),
            ("no-regular-paths", no_paths),
            ("block-radicals-zero", blocks_zero),
            ("walks-symmetric", walks_sym),
            ("no-regular-arrows", no_arrows),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::findim::{examples, largest_nilpotent_check, vn_regular_element};

    fn quiver(vs: &[&str], arrows: &[(&str, &str, &str)]) -> Quiver {
        Quiver::from_parts(vs, arrows).unwrap()
    }

    fn chain() -> Quiver {
        quiver(&["1", "2", "3"], &[("x12", "1", "2"), ("y23", "2", "3")])
    }

    fn z2_group_algebra() -> FinDimAlgebra {
        FinDimAlgebra::from_fn(vec!["1".into(), "g".into()], |i, j| {
            SparseVec::unit((i + j) % 2)
        })
        .unwrap()
    }

    #[test]
    fn products_of_paths() {
        let pa = PathAlgebra::new(chain());
        let x = pa.arrow_element("x12").unwrap();
        let y = pa.arrow_element("y23").unwrap();
        let e1 = pa.vertex_element(0);
        let e2 = pa.vertex_element(1);
        let xy = e1.mul(&x).unwrap().mul(&e2.mul(&y).unwrap()).unwrap();
        assert_eq!(xy.to_string(), "x12.y23");
        assert!(x.mul(&x).unwrap().is_zero());
        assert_eq!(e1.mul(&x).unwrap(), x);
        assert_eq!(x.mul(&e2).unwrap(), x);
    }

    #[test]
    fn omega_slot_product() {
        let q = chain();
        let omega = vec![ground_field(), z2_group_algebra(), ground_field()];
        let pa = PathAlgebra::with_omega(q, omega).unwrap();
        assert!(pa.warnings().is_empty());
        let xg = pa.parse_element("x12[g]").unwrap();
        let gy = pa.parse_element("[g]y23").unwrap();
        let prod = xg.mul(&gy).unwrap();
        assert_eq!(prod, pa.parse_element("x12[1].y23").unwrap());
        assert_eq!(prod.to_string(), "x12[1].y23");
    }

    #[test]
    fn radical_vertex_algebra_warns() {
        let q = quiver(&["1"], &[]);
        let pa = PathAlgebra::with_omega(q, vec![examples::truncated_polynomial(2)]).unwrap();
        assert_eq!(pa.warnings().len(), 1);
    }

    #[test]
    fn literal_round_trip() {
        let pa = PathAlgebra::new(chain());
        let e = pa.parse_element("2*x12.y23 - e(1) + 1/2*y23").unwrap();
        assert_eq!(e.to_string(), "-e(1) + 1/2*y23 + 2*x12.y23");
        assert_eq!(pa.parse_element(&e.to_string()).unwrap(), e);
        assert!(pa.parse_element("x12.q").is_err());
        assert!(pa.parse_element("3").is_err());
    }

    #[test]
    fn radical_descriptions() {
        let one = quiver(&["1", "2"], &[("x12", "1", "2")]);
        let r = radical_description(&one, RadicalKind::Jacobson).unwrap();
        assert_eq!(r.pairs, BTreeSet::from([(0, 1)]));
        let two = quiver(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]);
        assert!(radical_description(&two, RadicalKind::Baer)
            .unwrap()
            .is_zero());

        let m = PathAlgebra::new(chain()).materialize(None, None).unwrap();
        let oracle = jacobson_oracle(&m.algebra).unwrap();
        assert!(oracle.verified());
        let r = radical_description(&chain(), RadicalKind::Jacobson).unwrap();
        let predicted = m.span_of(|p| r.contains_path(p));
        assert_eq!(predicted.dim(), 3);
        assert_eq!(oracle.radical, predicted);
        let nil = largest_nilpotent_check(&m.algebra, &predicted).unwrap();
        assert_eq!(nil.index, Some(3));
        assert!(nil.equals_radical);
    }

    #[test]
    fn vn_descriptions() {
        assert!(vn_radical_description(&quiver(&["1", "2"], &[("x12", "1", "2")])).is_empty());
        assert_eq!(
            vn_radical_description(&quiver(&["1", "2"], &[])),
            vec![0, 1]
        );
        let mixed = quiver(&["0", "1", "2"], &[("a", "1", "2"), ("b", "2", "1")]);
        assert_eq!(vn_radical_description(&mixed), vec![0]);
        let lp = quiver(&["0"], &[("x", "0", "0")]);
        assert!(vn_radical_description(&lp).is_empty());
    }

    #[test]
    fn arrow_is_not_regular_element() {
        let one = quiver(&["1", "2"], &[("x12", "1", "2")]);
        let m = PathAlgebra::new(one).materialize(None, None).unwrap();
        let x = m
            .coordinates(&m.path_algebra().arrow_element("x12").unwrap())
            .unwrap();
        assert!(vn_regular_element(&m.algebra, &x).is_none());
    }

    #[test]
    fn primeness() {
        assert!(is_prime(&quiver(
            &["1", "2"],
            &[("a", "1", "2"), ("b", "2", "1")]
        )));
        assert!(!is_prime(&quiver(&["1", "2"], &[("x12", "1", "2")])));
        assert!(is_prime(&quiver(&["v"], &[])));
    }

    #[test]
    fn equivalence_examples() {
        let two_cycles = quiver(
            &["1", "2", "3", "4"],
            &[
                ("a", "1", "2"),
                ("b", "2", "1"),
                ("c", "3", "4"),
                ("d", "4", "3"),
            ],
        );
        assert_eq!(equivalence_report(&two_cycles).value(), Some(true));
        let one = quiver(&["1", "2"], &[("x12", "1", "2")]);
        assert_eq!(equivalence_report(&one).value(), Some(false));
        let chord = quiver(
            &["1", "2", "3"],
            &[
                ("a", "1", "2"),
                ("b", "2", "3"),
                ("c", "3", "1"),
                ("d", "1", "3"),
            ],
        );
        assert_eq!(equivalence_report(&chord).value(), Some(true));
        assert_eq!(equivalence_report(&Quiver::new()).value(), Some(true));
    }

    #[test]
    fn block_radicals() {
        let one = quiver(&["1", "2"], &[("x12", "1", "2")]);
        assert_eq!(
            gamma_block_radical(&one, 0, 1, RadicalKind::Jacobson),
            Ok(BlockRadical::Full)
        );
        assert!(matches!(
            gamma_block_radical(&one, 1, 0, RadicalKind::Jacobson),
            Err(Error::Precondition(_))
        ));
        assert_eq!(
            gamma_block_radical(&one, 1, 0, RadicalKind::Vn),
            Ok(BlockRadical::Zero)
        );
        let two = quiver(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]);
        assert_eq!(
            gamma_block_radical(&two, 0, 1, RadicalKind::Nil),
            Ok(BlockRadical::Zero)
        );
    }

    #[test]
    fn materialize_examples() {
        assert_eq!(
            PathAlgebra::new(chain())
                .materialize(None, None)
                .unwrap()
                .dim(),
            6
        );

        let lp = quiver(&["v"], &[("x", "v", "v")]);
        let pa = PathAlgebra::new(lp);
        assert!(matches!(
            pa.materialize(None, None),
            Err(Error::InfiniteDimensional(_))
        ));
        let x2 = pa.parse_element("x.x").unwrap();
        let rel = RelationSet::new(vec![x2], 2, RelationMode::Admissible);
        let m = pa.materialize(Some(&rel), None).unwrap();
        assert_eq!(m.algebra.names(), &["e(v)".to_string(), "x".into()]);

        let capped = pa.materialize(None, Some(3)).unwrap();
        assert_eq!(capped.dim(), 3);
        let rad = jacobson_oracle(&capped.algebra).unwrap().radical;
        assert_eq!(rad, capped.span_of(|p| p.len() > 0));
        assert!(radical_description(pa.quiver(), RadicalKind::Jacobson)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn relation_shape_errors() {
        let lp = quiver(&["v"], &[("x", "v", "v")]);
        let pa = PathAlgebra::new(lp);
        let in_j_only = RelationSet::new(
            vec![pa.parse_element("x").unwrap()],
            2,
            RelationMode::Admissible,
        );
        assert!(matches!(
            pa.materialize(Some(&in_j_only), None),
            Err(Error::Admissibility(_))
        ));
        let mixed = RelationSet::new(
            vec![pa.parse_element("x.x - x.x.x").unwrap()],
            2,
            RelationMode::Admissible,
        );
        assert!(matches!(
            pa.materialize(Some(&mixed), None),
            Err(Error::Admissibility(_))
        ));
        let short = RelationSet::new(
            vec![pa.parse_element("x.x.x").unwrap()],
            2,
            RelationMode::Admissible,
        );
        let err = pa.materialize(Some(&short), None).unwrap_err();
        assert_eq!(
            err,
            Error::Admissibility("J^2 is not contained in (ρ): path `x.x` survives".into())
        );
    }

    #[test]
    fn quantum_plane_quotient() {
        // X_2 X_1 = λ X_1 X_2, X_i^3 = 0 with λ a primitive cube root of unity
        let q = quiver(&["v"], &[("X1", "v", "v"), ("X2", "v", "v")]);
        let pa = PathAlgebra::new(q);
        let rel = RelationSet::new(
            vec![
                pa.parse_element("X2.X1 - z3*X1.X2").unwrap(),
                pa.parse_element("X1.X1.X1").unwrap(),
                pa.parse_element("X2.X2.X2").unwrap(),
            ],
            5,
            RelationMode::Admissible,
        );
        let m = pa.materialize(Some(&rel), None).unwrap();
        assert_eq!(m.dim(), 9);
        m.algebra.check_associative().unwrap();
    }

    #[test]
    fn taft_as_generalized_path_algebra() {
        // one vertex with Ω = kZ_2, loop X, Xg = -gX, X² = 0
        let q = quiver(&["v"], &[("X", "v", "v")]);
        let pa = PathAlgebra::with_omega(q, vec![z2_group_algebra()]).unwrap();
        let rel = RelationSet::new(
            vec![
                pa.parse_element("X.X").unwrap(),
                pa.parse_element("X[g] + [g]X").unwrap(),
            ],
            2,
            RelationMode::Weak,
        );
        let m = pa.materialize(Some(&rel), None).unwrap();
        assert_eq!(m.dim(), 4);
        m.algebra.check_associative().unwrap();
        let rad = jacobson_oracle(&m.algebra).unwrap();
        assert_eq!(rad.radical.dim(), 2);
    }

    #[test]
    fn regular_paths_enumerated() {
        let q = quiver(
            &["1", "2", "3", "4"],
            &[
                ("a", "1", "2"),
                ("b", "2", "3"),
                ("c", "1", "3"),
                ("d", "4", "4"),
            ],
        );
        let pa = PathAlgebra::new(q.clone());
        let names: Vec<String> = regular_paths(&pa, 10)
            .unwrap()
            .iter()
            .map(|p| pa.path_name(p))
            .collect();
        assert_eq!(names, ["a", "c", "b", "a.b"]);
        assert!(regular_paths(&pa, 3).is_none());
        // a loop feeding another vertex gives infinitely many
        let q = quiver(&["1", "2"], &[("x", "1", "1"), ("a", "1", "2")]);
        assert!(regular_paths(&PathAlgebra::new(q), 1000).is_none());
    }
}
