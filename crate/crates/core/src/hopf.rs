//! Pointed Hopf algebras `H(C, n, c, c*, a, b)` on the PBW basis `{X^p g}`,
//! with their coalgebra structure, axiom checks, smash-product
//! decompositions, module functor and classification families.
//!
//! Conventions: `X_j g = c*_j(g) g X_j`, `Δ(X_j) = X_j ⊗ 1 + c_j ⊗ X_j`,
//! `S(X_j) = -c_j^{-1} X_j`, and for `i < j`
//! `X_j X_i = c*_j(c_i) X_i X_j + b_ij (c_i c_j - 1)`.

mod family;
mod group;
mod modules;
mod parse;
mod smash;

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::findim::{element_literal, random_combination, FinDimAlgebra};
use crate::linalg::{SparseVec, Subspace};
use crate::scalar::Cyclotomic;

pub use family::{classify_instance, examples, family_params, Family};
pub use group::{Character, FiniteGroup};
pub use modules::{fixtures, representation_to_module, HModule, RepViolation, Representation};
pub use parse::{parse_hopf, HopfFile};
pub use smash::{
    quantum_base, radical_check, smash_product, verify_smash_iso, GroupAction, RadicalCheck,
    SmashIsoReport,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfParams {
    pub group: Arc<FiniteGroup>,
    pub n: Vec<u32>,
    pub c: Vec<usize>,
    pub cstar: Vec<Character>,
    pub a: Vec<u8>,
    pub b: Vec<Vec<Cyclotomic>>,
}

/// A violated parameter condition; indices are 0-based, displayed 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: &'static str,
    pub indices: Vec<usize>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| (i + 1).to_string()).collect();
        if idx.is_empty() {
            write!(f, "{}: {}", self.condition, self.detail)
        } else {
            write!(
                f,
                "{} at {}: {}",
                self.condition,
                idx.join(","),
                self.detail
            )
        }
    }
}

impl HopfParams {
    pub fn t(&self) -> usize {
        self.n.len()
    }

    /// `t = 0`: the group algebra `kC` with its usual Hopf structure.
    pub fn group_algebra(group: FiniteGroup) -> Self {
        HopfParams {
            group: Arc::new(group),
            n: vec![],
            c: vec![],
            cstar: vec![],
            a: vec![],
            b: vec![],
        }
    }

    /// Taft algebra of dimension `n²`: `C = Z_n = (g)`, `c = g`, `c*(g) = ζ_n`.
    pub fn taft(n: u32) -> Result<Self> {
        let group = FiniteGroup::cyclic_product(&[n as u64])?;
        let chi = Character::from_exponents(&group, &[1])?;
        let g = group.from_exponents(&[1]).unwrap();
        Ok(HopfParams {
            group: Arc::new(group),
            n: vec![n],
            c: vec![g],
            cstar: vec![chi],
            a: vec![0],
            b: vec![vec![Cyclotomic::zero()]],
        })
    }

    /// `a = 0` and `b = 0`.
    pub fn is_untwisted(&self) -> bool {
        self.a.iter().all(|&x| x == 0) && self.b.iter().flatten().all(Cyclotomic::is_zero)
    }

    /// `c*_i(c_j)`
    pub fn q(&self, i: usize, j: usize) -> &Cyclotomic {
        self.cstar[i].eval(self.c[j])
    }

    /// Every violated condition with its witnessing indices.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let t = self.n.len();
        let g = &self.group;
        let shape_ok = self.c.len() == t
            && self.cstar.len() == t
            && self.a.len() == t
            && self.b.len() == t
            && self.b.iter().all(|row| row.len() == t)
            && self.c.iter().all(|&x| x < g.order())
            && self.cstar.iter().all(|ch| ch.values().len() == g.order());
        if !shape_ok {
            out.push(Violation {
                condition: "shape",
                indices: vec![],
                detail: format!("n, c, c*, a and b must all have length t = {t}"),
            });
            return out;
        }
        if !g.is_abelian() {
            if t > 1 {
                out.push(Violation {
                    condition: "group",
                    indices: vec![],
                    detail: format!("a nonabelian group needs t = 1, got t = {t}"),
                });
            }
            for i in 0..t {
                if !g.is_central(self.c[i]) {
                    out.push(Violation {
                        condition: "group",
                        indices: vec![i],
                        detail: format!("c_i = {} is not central", g.name(self.c[i])),
                    });
                }
            }
        }
        for i in 0..t {
            if self.n[i] == 0 {
                out.push(Violation {
                    condition: "n",
                    indices: vec![i],
                    detail: "n_i must be positive".into(),
                });
            }
            if self.a[i] > 1 {
                out.push(Violation {
                    condition: "a",
                    indices: vec![i],
                    detail: format!("a_i = {} is not in {{0, 1}}", self.a[i]),
                });
            }
        }
        for i in 0..t {
            for j in 0..t {
                if i == j {
                    continue;
                }
                let b_ij = &self.b[i][j];
                if i < j {
                    let prod = self.q(i, j) * self.q(j, i);
                    if !prod.is_one() {
                        out.push(Violation {
                            condition: "braiding",
                            indices: vec![i, j],
                            detail: format!("c*_i(c_j) c*_j(c_i) = {prod}"),
                        });
                    }
                }
                if !b_ij.is_zero() && !self.cstar[i].mul(&self.cstar[j]).is_trivial() {
                    out.push(Violation {
                        condition: "linking-character",
                        indices: vec![i, j],
                        detail: format!("b_ij = {b_ij} but c*_i c*_j is not trivial"),
                    });
                }
                if !b_ij.is_zero() && g.mul(self.c[i], self.c[j]) == g.identity() {
                    out.push(Violation {
                        condition: "linking-group",
                        indices: vec![i, j],
                        detail: format!("c_i c_j = 1 but b_ij = {b_ij}"),
                    });
                }
                // the form forced by applying the commutation relation twice
                let expected = -(self.q(j, i) * &self.b[j][i]);
                if *b_ij != expected {
                    out.push(Violation {
                        condition: "linking-symmetry",
                        indices: vec![i, j],
                        detail: format!("b_ij = {b_ij} but -c*_j(c_i) b_ji = {expected}"),
                    });
                }
            }
        }
        for i in 0..t {
            let lambda = self.q(i, i);
            if self.n[i] > 0 && lambda.primitive_root_order() != Some(self.n[i] as u64) {
                out.push(Violation {
                    condition: "root-order",
                    indices: vec![i],
                    detail: format!(
                        "c*_i(c_i) = {lambda} is not a primitive {}-th root of unity",
                        self.n[i]
                    ),
                });
            }
            if self.a[i] == 1 && !self.cstar[i].pow(self.n[i] as i64).is_trivial() {
                out.push(Violation {
                    condition: "lifting-character",
                    indices: vec![i],
                    detail: format!("a_i = 1 but (c*_i)^{} is not trivial", self.n[i]),
                });
            }
            if self.a[i] != 0 && g.pow(self.c[i], self.n[i] as u64) == g.identity() {
                out.push(Violation {
                    condition: "lifting-group",
                    indices: vec![i],
                    detail: format!("c_i^{} = 1 but a_i = {}", self.n[i], self.a[i]),
                });
            }
        }
        out
    }

    fn validated(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidParams(
                v.iter().map(|x| x.to_string()).collect(),
            ))
        }
    }
}

/// Seeded defects for negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corruption {
    /// `X_j g = 2 c*_j(g) g X_j` for `g ≠ 1`.
    GroupCommutation,
    /// The commutation scalar of `X_j X_i` doubled.
    Reordering,
    /// `S(X_j) = +c_j^{-1} X_j`.
    AntipodeSign,
    /// `b_ji` replaced by `b_ji + 1` for the first pair `i < j`.
    SkewSymmetry,
}

impl Corruption {
    pub const ALL: [Corruption; 4] = [
        Corruption::GroupCommutation,
        Corruption::Reordering,
        Corruption::AntipodeSign,
        Corruption::SkewSymmetry,
    ];

    /// Whether the defect changes anything: group commutation needs a
    /// nontrivial group, reordering and skew symmetry need `t ≥ 2`.
    pub fn applies_to(self, params: &HopfParams) -> bool {
        match self {
            Corruption::GroupCommutation => params.t() >= 1 && params.group.order() > 1,
            Corruption::AntipodeSign => params.t() >= 1,
            Corruption::Reordering | Corruption::SkewSymmetry => params.t() >= 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Corruption::GroupCommutation => "group commutation",
            Corruption::Reordering => "reordering",
            Corruption::AntipodeSign => "antipode sign",
            Corruption::SkewSymmetry => "skew symmetry of b",
        }
    }
}

/// A letter of a word in the generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    X(usize),
    G(usize),
}

type Mono = (Vec<u32>, usize);
type Elem = BTreeMap<Mono, Cyclotomic>;

fn add_term(e: &mut Elem, key: Mono, c: Cyclotomic) {
    if c.is_zero() {
        return;
    }
    let slot = e.entry(key.clone()).or_default();
    *slot += &c;
    if slot.is_zero() {
        e.remove(&key);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Cap {
    /// `X_i^{n_i} = a_i (c_i^{n_i} - 1)`
    Nilpotent,
    /// No power relation; monomials above the degree are dropped.
    Degree(u32),
}

/// Rewriting to the PBW basis by right multiplication with generators.
struct Rules<'a> {
    params: &'a HopfParams,
    cap: Cap,
    corruption: Option<Corruption>,
    memo: RefCell<HashMap<(Vec<u32>, usize), Elem>>,
}

impl<'a> Rules<'a> {
    fn new(params: &'a HopfParams, cap: Cap, corruption: Option<Corruption>) -> Self {
        Rules {
            params,
            cap,
            corruption,
            memo: RefCell::new(HashMap::new()),
        }
    }

    /// Scalar `κ` with `g X_i = κ X_i g`.
    fn pass_group(&self, g: usize, i: usize) -> Cyclotomic {
        let mut chi = self.params.cstar[i].eval(g).clone();
        if self.corruption == Some(Corruption::GroupCommutation)
            && g != self.params.group.identity()
        {
            chi = chi * Cyclotomic::from_int(2);
        }
        chi.inv().expect("character values are units")
    }

    /// `X^p X_i` in normal form.
    fn x_times(&self, p: &[u32], i: usize) -> Elem {
        let key = (p.to_vec(), i);
        if let Some(e) = self.memo.borrow().get(&key) {
            return e.clone();
        }
        let grp = &self.params.group;
        let e = grp.identity();
        let mut out = Elem::new();
        match p.iter().rposition(|&x| x > 0) {
            Some(m) if m > i => {
                // X^{p'} X_m X_i = q X^{p'} X_i X_m + b_im X^{p'} (c_i c_m - 1)
                let mut p1 = p.to_vec();
                p1[m] -= 1;
                let mut q = self.params.q(m, i).clone();
                if self.corruption == Some(Corruption::Reordering) {
                    q = q * Cyclotomic::from_int(2);
                }
                let head = self.x_times(&p1, i);
                for (mono, c) in self.right_mul_x(&head, m) {
                    add_term(&mut out, mono, &q * &c);
                }
                let b = &self.params.b[i][m];
                let cc = grp.mul(self.params.c[i], self.params.c[m]);
                if !b.is_zero() && cc != e && self.within_cap(&p1) {
                    add_term(&mut out, (p1.clone(), cc), b.clone());
                    add_term(&mut out, (p1, e), -b.clone());
                }
            }
            _ => {
                let mut p1 = p.to_vec();
                p1[i] += 1;
                match self.cap {
                    Cap::Nilpotent if p1[i] == self.params.n[i] => {
                        p1[i] = 0;
                        let cn = grp.pow(self.params.c[i], self.params.n[i] as u64);
                        if self.params.a[i] == 1 && cn != e {
                            add_term(&mut out, (p1.clone(), cn), Cyclotomic::one());
                            add_term(&mut out, (p1, e), -Cyclotomic::one());
                        }
                    }
                    _ => {
                        if self.within_cap(&p1) {
                            add_term(&mut out, (p1, e), Cyclotomic::one());
                        }
                    }
                }
            }
        }
        self.memo.borrow_mut().insert(key, out.clone());
        out
    }

    fn within_cap(&self, p: &[u32]) -> bool {
        match self.cap {
            Cap::Nilpotent => true,
            Cap::Degree(d) => p.iter().sum::<u32>() <= d,
        }
    }

    fn right_mul_x(&self, x: &Elem, i: usize) -> Elem {
        let grp = &self.params.group;
        let mut out = Elem::new();
        for ((p, g), c) in x {
            let k = &self.pass_group(*g, i) * c;
            for ((p2, h), c2) in self.x_times(p, i) {
                add_term(&mut out, (p2, grp.mul(h, *g)), &k * &c2);
            }
        }
        out
    }

    fn right_mul_g(&self, x: &Elem, g: usize) -> Elem {
        let grp = &self.params.group;
        let mut out = Elem::new();
        for ((p, h), c) in x {
            add_term(&mut out, (p.clone(), grp.mul(*h, g)), c.clone());
        }
        out
    }

    fn one(&self) -> Elem {
        let mut e = Elem::new();
        e.insert(
            (vec![0; self.params.t()], self.params.group.identity()),
            Cyclotomic::one(),
        );
        e
    }

    fn mul_mono(&self, x: &Mono, y: &Mono) -> Elem {
        let mut acc = Elem::new();
        acc.insert(x.clone(), Cyclotomic::one());
        for (i, &k) in y.0.iter().enumerate() {
            for _ in 0..k {
                acc = self.right_mul_x(&acc, i);
            }
        }
        self.right_mul_g(&acc, y.1)
    }

    fn word(&self, w: &[Letter]) -> Elem {
        w.iter().fold(self.one(), |acc, l| match *l {
            Letter::X(i) => self.right_mul_x(&acc, i),
            Letter::G(g) => self.right_mul_g(&acc, g),
        })
    }
}

fn monomials(params: &HopfParams, cap: Cap) -> Vec<Mono> {
    let t = params.t();
    let mut ps: Vec<Vec<u32>> = vec![vec![]];
    for i in 0..t {
        let bound = match cap {
            Cap::Nilpotent => params.n[i],
            Cap::Degree(d) => d + 1,
        };
        ps = ps
            .into_iter()
            .flat_map(|p| {
                (0..bound).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .filter(|p| match cap {
                Cap::Nilpotent => true,
                Cap::Degree(d) => p.iter().sum::<u32>() <= d,
            })
            .collect();
    }
    ps.sort_by_key(|p| (p.iter().sum::<u32>(), p.clone()));
    ps.into_iter()
        .flat_map(|p| (0..params.group.order()).map(move |g| (p.clone(), g)))
        .collect()
}

fn mono_name(params: &HopfParams, (p, g): &Mono) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (i, &k) in p.iter().enumerate() {
        if k == 0 {
            continue;
        }
        let x = if params.t() == 1 {
            "X".to_string()
        } else {
            format!("X{}", i + 1)
        };
        parts.push(if k == 1 { x } else { format!("{x}^{k}") });
    }
    if *g != params.group.identity() {
        parts.push(params.group.name(*g).to_string());
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// A finite-dimensional algebra on PBW monomials, with their positions.
#[derive(Clone, Debug)]
struct PbwTable {
    basis: Vec<Mono>,
    index: HashMap<Mono, usize>,
    algebra: FinDimAlgebra,
}

impl PbwTable {
    fn build(rules: &Rules<'_>) -> Self {
        let basis = monomials(rules.params, rules.cap);
        let index: HashMap<Mono, usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, m)| (m, k))
            .collect();
        let names = basis.iter().map(|m| mono_name(rules.params, m)).collect();
        let mut table = Vec::with_capacity(basis.len() * basis.len());
        for x in &basis {
            for y in &basis {
                table.push(to_vec(&index, &rules.mul_mono(x, y)));
            }
        }
        let one = to_vec(&index, &rules.one());
        let algebra = FinDimAlgebra::trusted(names, table, Some(one));
        PbwTable {
            basis,
            index,
            algebra,
        }
    }
}

fn to_vec(index: &HashMap<Mono, usize>, e: &Elem) -> SparseVec {
    SparseVec::from_pairs(e.iter().map(|(m, c)| (index[m], c.clone())))
}

/// `H(C, n, c, c*, a, b)` with eagerly built product, coproduct and antipode tables.
#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    params: HopfParams,
    corruption: Option<Corruption>,
    pbw: PbwTable,
    /// `Δ(b_k)` over `H ⊗ H`, index `i * dim + j`.
    coproduct: Vec<SparseVec>,
    antipode: Vec<SparseVec>,
}

impl HopfAlgebra {
    /// Validates the parameters, then builds all tables.
    pub fn new(params: HopfParams) -> Result<Self> {
        params.validated()?;
        Ok(Self::build(params, None))
    }

    /// Builds without validating the parameters.
    pub fn new_unvalidated(params: HopfParams) -> Self {
        Self::build(params, None)
    }

    /// Builds from parameters with one seeded defect; parameters are not validated.
    pub fn corrupted(mut params: HopfParams, corruption: Corruption) -> Self {
        if corruption == Corruption::SkewSymmetry {
            if let Some((i, j)) = (0..params.t())
                .flat_map(|i| (i + 1..params.t()).map(move |j| (i, j)))
                .next()
            {
                params.b[j][i] = &params.b[j][i] + &Cyclotomic::one();
            }
        }
        Self::build(params, Some(corruption))
    }

    fn build(params: HopfParams, corruption: Option<Corruption>) -> Self {
        let rules = Rules::new(&params, Cap::Nilpotent, corruption);
        let pbw = PbwTable::build(&rules);
        let d = pbw.basis.len();
        let a = &pbw.algebra;
        let grp = &params.group;
        let g_vec = |g: usize| SparseVec::unit(pbw.index[&(vec![0; params.t()], g)]);
        let xs: Vec<SparseVec> = (0..params.t())
            .map(|i| to_vec(&pbw.index, &rules.word(&[Letter::X(i)])))
            .collect();
        let one = g_vec(grp.identity());
        let tensor = |u: &SparseVec, v: &SparseVec| {
            let mut out = SparseVec::new();
            for (i, x) in u.iter() {
                for (j, y) in v.iter() {
                    out = out.add(&SparseVec::single(i * d + j, x * y));
                }
            }
            out
        };
        let delta_x: Vec<SparseVec> = (0..params.t())
            .map(|i| tensor(&xs[i], &one).add(&tensor(&g_vec(params.c[i]), &xs[i])))
            .collect();
        let s_x: Vec<SparseVec> = (0..params.t())
            .map(|i| {
                let sign = if corruption == Some(Corruption::AntipodeSign) {
                    1
                } else {
                    -1
                };
                a.mul(&g_vec(grp.inv(params.c[i])), &xs[i])
                    .scale(&Cyclotomic::from_int(sign))
            })
            .collect();
        let mut coproduct = Vec::with_capacity(d);
        let mut antipode = Vec::with_capacity(d);
        for (p, g) in &pbw.basis {
            let mut delta = tensor(&one, &one);
            let mut s = g_vec(grp.inv(*g));
            for (i, &k) in p.iter().enumerate() {
                for _ in 0..k {
                    delta = tensor_mul(a, d, &delta, &delta_x[i]);
                }
            }
            for (i, &k) in p.iter().enumerate().rev() {
                for _ in 0..k {
                    s = a.mul(&s, &s_x[i]);
                }
            }
            coproduct.push(tensor_mul(a, d, &delta, &tensor(&g_vec(*g), &g_vec(*g))));
            antipode.push(s);
        }
        HopfAlgebra {
            params,
            corruption,
            pbw,
            coproduct,
            antipode,
        }
    }

    pub fn params(&self) -> &HopfParams {
        &self.params
    }

    pub fn corruption(&self) -> Option<Corruption> {
        self.corruption
    }

    pub fn dim(&self) -> usize {
        self.pbw.basis.len()
    }

    pub fn algebra(&self) -> &FinDimAlgebra {
        &self.pbw.algebra
    }

    /// `(p, g)` for the basis element `X^p g`.
    pub fn monomial(&self, k: usize) -> (&[u32], usize) {
        let (p, g) = &self.pbw.basis[k];
        (p, *g)
    }

    pub fn index_of(&self, p: &[u32], g: usize) -> Option<usize> {
        self.pbw.index.get(&(p.to_vec(), g)).copied()
    }

    pub fn name(&self, k: usize) -> &str {
        &self.pbw.algebra.names()[k]
    }

    pub fn literal(&self, v: &SparseVec) -> String {
        element_literal(self.pbw.algebra.names(), v)
    }

    pub fn tensor_literal(&self, v: &SparseVec) -> String {
        let d = self.dim();
        let names: Vec<String> = (0..d * d)
            .map(|k| format!("{}⊗{}", self.name(k / d), self.name(k % d)))
            .collect();
        element_literal(&names, v)
    }

    /// Normal form of a word in group elements and skew generators.
    pub fn normal_form(&self, word: &[Letter]) -> SparseVec {
        let rules = Rules::new(&self.params, Cap::Nilpotent, self.corruption);
        to_vec(&self.pbw.index, &rules.word(word))
    }

    pub fn group_element(&self, g: usize) -> SparseVec {
        SparseVec::unit(self.pbw.index[&(vec![0; self.params.t()], g)])
    }

    pub fn x(&self, i: usize) -> SparseVec {
        self.normal_form(&[Letter::X(i)])
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        self.pbw.algebra.mul(x, y)
    }

    /// `Δ` on an element, over `H ⊗ H`.
    pub fn coproduct(&self, x: &SparseVec) -> SparseVec {
        x.iter().fold(SparseVec::new(), |acc, (k, c)| {
            acc.add_scaled(&self.coproduct[k], c)
        })
    }

    pub fn counit(&self, x: &SparseVec) -> Cyclotomic {
        x.iter()
            .filter(|(k, _)| self.pbw.basis[*k].0.iter().all(|&e| e == 0))
            .fold(Cyclotomic::zero(), |acc, (_, c)| acc + c)
    }

    pub fn antipode(&self, x: &SparseVec) -> SparseVec {
        x.iter().fold(SparseVec::new(), |acc, (k, c)| {
            acc.add_scaled(&self.antipode[k], c)
        })
    }

    /// `X_j X_i - c*_j(c_i) X_i X_j - b_ij (c_i c_j - 1)` for any ordered pair `i ≠ j`.
    pub fn commutation_residual(&self, i: usize, j: usize) -> SparseVec {
        let grp = &self.params.group;
        let lhs = self.normal_form(&[Letter::X(j), Letter::X(i)]);
        let swapped = self.normal_form(&[Letter::X(i), Letter::X(j)]);
        let corr = self
            .group_element(grp.mul(self.params.c[i], self.params.c[j]))
            .sub(&self.group_element(grp.identity()));
        lhs.sub(&swapped.scale(self.params.q(j, i)))
            .sub(&corr.scale(&self.params.b[i][j]))
    }

    /// `span{X^p g : p ≠ 0}`
    pub fn augmentation_span(&self) -> Subspace {
        Subspace::spanned_by(
            self.dim(),
            (0..self.dim())
                .filter(|&k| self.pbw.basis[k].0.iter().any(|&e| e > 0))
                .map(SparseVec::unit),
        )
    }
}

fn tensor_mul(a: &FinDimAlgebra, d: usize, u: &SparseVec, v: &SparseVec) -> SparseVec {
    let mut acc: BTreeMap<usize, Cyclotomic> = BTreeMap::new();
    for (k1, c1) in u.iter() {
        for (k2, c2) in v.iter() {
            let ac = a.basis_product(k1 / d, k2 / d);
            let bd = a.basis_product(k1 % d, k2 % d);
            if ac.is_zero() || bd.is_zero() {
                continue;
            }
            let c = c1 * c2;
            for (x, cx) in ac.iter() {
                let cc = &c * cx;
                for (y, cy) in bd.iter() {
                    *acc.entry(x * d + y).or_default() += &(&cc * cy);
                }
            }
        }
    }
    SparseVec::from_map(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub checked: usize,
    pub failures: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl HopfAxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| c.failures > 0)
            .map(|c| c.name)
            .collect()
    }
}

struct Tally {
    check: AxiomCheck,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            check: AxiomCheck {
                name,
                checked: 0,
                failures: 0,
                witness: None,
            },
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.check.checked += 1;
        if !ok {
            self.check.failures += 1;
            if self.check.witness.is_none() {
                self.check.witness = Some(witness());
            }
        }
    }
}

/// Exhaustive check of the algebra, coalgebra, bialgebra and antipode laws
/// on basis elements, pairs and triples.
pub fn check_hopf_axioms(h: &HopfAlgebra) -> HopfAxiomReport {
    let d = h.dim();
    let a = h.algebra();
    let e = |k: usize| SparseVec::unit(k);
    let mut checks = Vec::new();

    let mut assoc = Tally::new("associativity");
    for x in 0..d {
        for y in 0..d {
            let xy = a.basis_product(x, y);
            for z in 0..d {
                let l = a.mul(xy, &e(z));
                let r = a.mul(&e(x), a.basis_product(y, z));
                assoc.record(l == r, || {
                    format!("({} {}) {}", h.name(x), h.name(y), h.name(z))
                });
            }
        }
    }
    checks.push(assoc.check);

    let one = h.group_element(h.params.group.identity());
    let mut unit = Tally::new("unit");
    for x in 0..d {
        unit.record(
            a.mul(&one, &e(x)) == e(x) && a.mul(&e(x), &one) == e(x),
            || h.name(x).to_string(),
        );
    }
    checks.push(unit.check);

    let mut coassoc = Tally::new("coassociativity");
    let mut counit = Tally::new("counit");
    for x in 0..d {
        let dx = &h.coproduct[x];
        let (mut l, mut r) = (
            BTreeMap::<usize, Cyclotomic>::new(),
            BTreeMap::<usize, Cyclotomic>::new(),
        );
        for (k, c) in dx.iter() {
            let (u, v) = (k / d, k % d);
            for (m, c2) in h.coproduct[u].iter() {
                *l.entry((m / d) * d * d + (m % d) * d + v).or_default() += &(c * c2);
            }
            for (m, c2) in h.coproduct[v].iter() {
                *r.entry(u * d * d + m).or_default() += &(c * c2);
            }
        }
        coassoc.record(SparseVec::from_map(l) == SparseVec::from_map(r), || {
            h.name(x).to_string()
        });
        let left = dx.iter().fold(SparseVec::new(), |acc, (k, c)| {
            acc.add_scaled(&e(k % d), &(c * &h.counit(&e(k / d))))
        });
        let right = dx.iter().fold(SparseVec::new(), |acc, (k, c)| {
            acc.add_scaled(&e(k / d), &(c * &h.counit(&e(k % d))))
        });
        counit.record(left == e(x) && right == e(x), || h.name(x).to_string());
    }
    checks.push(coassoc.check);
    checks.push(counit.check);

    let mut delta_mul = Tally::new("coproduct is multiplicative");
    let mut eps_mul = Tally::new("counit is multiplicative");
    delta_mul.record(
        h.coproduct(&one)
            == SparseVec::single(one.leading().unwrap().0 * (d + 1), Cyclotomic::one()),
        || "Δ(1)".to_string(),
    );
    for x in 0..d {
        for y in 0..d {
            let xy = a.basis_product(x, y);
            let l = h.coproduct(xy);
            let r = tensor_mul(a, d, &h.coproduct[x], &h.coproduct[y]);
            delta_mul.record(l == r, || {
                format!("Δ({} {}) = {}", h.name(x), h.name(y), h.tensor_literal(&l))
            });
            eps_mul.record(h.counit(xy) == &h.counit(&e(x)) * &h.counit(&e(y)), || {
                format!("ε({} {})", h.name(x), h.name(y))
            });
        }
    }
    checks.push(delta_mul.check);
    checks.push(eps_mul.check);

    let mut antipode = Tally::new("antipode");
    for x in 0..d {
        let (mut l, mut r) = (SparseVec::new(), SparseVec::new());
        for (k, c) in h.coproduct[x].iter() {
            let (u, v) = (k / d, k % d);
            l = l.add_scaled(&a.mul(&h.antipode[u], &e(v)), c);
            r = r.add_scaled(&a.mul(&e(u), &h.antipode[v]), c);
        }
        let target = one.scale(&h.counit(&e(x)));
        antipode.record(l == target && r == target, || {
            format!(
                "{}: m(S⊗id)Δ = {}, m(id⊗S)Δ = {}",
                h.name(x),
                h.literal(&l),
                h.literal(&r)
            )
        });
    }
    checks.push(antipode.check);
    HopfAxiomReport { checks }
}

/// Outcome of a negative control.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControlOutcome {
    pub corruption: Corruption,
    pub detected: bool,
    /// Failed axiom checks and parameter conditions.
    pub failures: Vec<String>,
}

/// Builds the corrupted algebra for every applicable seeded defect and
/// reports which checks catch it.
pub fn negative_controls(params: &HopfParams) -> Vec<ControlOutcome> {
    Corruption::ALL
        .iter()
        .filter(|c| c.applies_to(params))
        .map(|&corruption| {
            let h = HopfAlgebra::corrupted(params.clone(), corruption);
            let mut failures: Vec<String> = h
                .params()
                .validate()
                .iter()
                .map(|v| v.to_string())
                .collect();
            failures.extend(check_hopf_axioms(&h).failed().into_iter().map(String::from));
            ControlOutcome {
                corruption,
                detected: !failures.is_empty(),
                failures,
            }
        })
        .collect()
}

/// The degree-capped quotient `A_t / A_t^{> degree}` of an untwisted `A_t`.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub degree: u32,
    pbw: PbwTable,
}

impl Truncation {
    pub fn new(params: &HopfParams, degree: u32) -> Result<Self> {
        params.validated()?;
        if !params.is_untwisted() {
            return Err(Error::Precondition(
                "degree truncations need a = 0 and b = 0 to be graded".into(),
            ));
        }
        let rules = Rules::new(params, Cap::Degree(degree), None);
        Ok(Truncation {
            degree,
            pbw: PbwTable::build(&rules),
        })
    }

    pub fn algebra(&self) -> &FinDimAlgebra {
        &self.pbw.algebra
    }

    pub fn degree_of(&self, k: usize) -> u32 {
        self.pbw.basis[k].0.iter().sum()
    }

    /// Highest degree present in `x`.
    pub fn top_degree(&self, x: &SparseVec) -> Option<u32> {
        x.iter().map(|(k, _)| self.degree_of(k)).max()
    }
}

/// Sampled evidence that nonzero elements of `A_t` generate non-nilpotent ideals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationEvidence {
    pub degree: u32,
    pub seed: u64,
    pub samples: usize,
    /// Samples `x` with a witness `y` such that `(x y)^k x ≠ 0`, `k ≥ 1`,
    /// at a degree the truncation represents faithfully.
    pub witnessed: usize,
    pub failures: Vec<String>,
}

impl TruncationEvidence {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.witnessed == self.samples
    }
}

/// Samples nonzero `x` of degree at most 2 and searches `y` of degree at
/// most 1 with `(x y)^k x ≠ 0` for the largest `k ≤ 3` whose top degree fits.
pub fn truncation_evidence(
    params: &HopfParams,
    degree: u32,
    samples: usize,
    seed: u64,
) -> Result<TruncationEvidence> {
    let tr = Truncation::new(params, degree)?;
    let a = tr.algebra();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let low: Vec<SparseVec> = (0..a.dim())
        .filter(|&k| tr.degree_of(k) <= 2)
        .map(SparseVec::unit)
        .collect();
    let linear: Vec<SparseVec> = (0..a.dim())
        .filter(|&k| tr.degree_of(k) <= 1)
        .map(SparseVec::unit)
        .collect();
    let mut witnessed = 0;
    let mut failures = Vec::new();
    let mut drawn = 0;
    while drawn < samples {
        let x = random_combination(&mut rng, &low);
        if x.is_zero() {
            continue;
        }
        drawn += 1;
        let dx = tr.top_degree(&x).unwrap();
        let mut ys = linear.clone();
        ys.extend((0..4).map(|_| random_combination(&mut rng, &linear)));
        let found = ys.iter().filter(|y| !y.is_zero()).any(|y| {
            let dy = tr.top_degree(y).unwrap();
            let k = (1..=3u32)
                .take_while(|k| (k + 1) * dx + k * dy <= degree)
                .last();
            let Some(k) = k else { return false };
            let xy = a.mul(&x, y);
            let mut acc = x.clone();
            for _ in 0..k {
                acc = a.mul(&xy, &acc);
            }
            !acc.is_zero()
        });
        if found {
            witnessed += 1;
        } else {
            failures.push(a.literal(&x));
        }
    }
    Ok(TruncationEvidence {
        degree,
        seed,
        samples,
        witnessed,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    /// `C = Z_p`, `t = 2`, `c = (g, g)`, `c* = (χ, χ^{-1})` with `b_12 = b` and
    /// `b_21` in the skew-symmetric form.
    fn linked(p: u64, b: i64) -> HopfParams {
        let group = FiniteGroup::cyclic_product(&[p]).unwrap();
        let chi = Character::from_exponents(&group, &[1]).unwrap();
        let g = 1;
        let b12 = Cyclotomic::from_int(b);
        let b21 = -(&b12 * &chi.pow(-1).eval(g).inv().unwrap());
        HopfParams {
            group: Arc::new(group),
            n: vec![p as u32, p as u32],
            c: vec![g, g],
            cstar: vec![chi.clone(), chi.pow(-1)],
            a: vec![0, 0],
            b: vec![vec![Cyclotomic::zero(), b12], vec![b21, Cyclotomic::zero()]],
        }
    }

    #[test]
    fn taft_four() {
        let h = HopfAlgebra::new(HopfParams::taft(2).unwrap()).unwrap();
        assert_eq!(h.dim(), 4);
        let g = 1;
        // X g = -g X, i.e. g X = -X g
        let gx = h.normal_form(&[Letter::G(g), Letter::X(0)]);
        assert_eq!(
            gx,
            h.normal_form(&[Letter::X(0), Letter::G(g)])
                .scale(&Cyclotomic::from_int(-1))
        );
        assert!(h.normal_form(&[Letter::X(0), Letter::X(0)]).is_zero());
        let report = check_hopf_axioms(&h);
        assert!(report.all_pass(), "{report:?}");
        assert_eq!(
            report
                .checks
                .iter()
                .find(|c| c.name == "coproduct is multiplicative")
                .unwrap()
                .checked,
            17
        );
        // S(g) = g^{-1}
        assert_eq!(h.antipode(&h.group_element(g)), h.group_element(g));
    }

    #[test]
    fn coproduct_of_xg() {
        let h = HopfAlgebra::new(HopfParams::taft(3).unwrap()).unwrap();
        let (x, g) = (h.x(0), h.group_element(1));
        let xg = h.mul(&x, &g);
        let d = h.dim();
        let expected = {
            let k_xg = xg.leading().unwrap().0;
            let k_g = g.leading().unwrap().0;
            let k_cg = h
                .group_element(h.params().group.mul(1, 1))
                .leading()
                .unwrap()
                .0;
            SparseVec::from_pairs([
                (k_xg * d + k_g, Cyclotomic::one()),
                (k_cg * d + k_xg, Cyclotomic::one()),
            ])
        };
        assert_eq!(h.coproduct(&xg), expected);
        assert_eq!(h.counit(&xg), Cyclotomic::zero());
        assert_eq!(h.counit(&g), Cyclotomic::one());
    }

    #[test]
    fn validation_reports_conditions() {
        assert!(HopfParams::taft(2).unwrap().validate().is_empty());
        let mut p = HopfParams::taft(3).unwrap();
        p.cstar[0] = Character::trivial(&p.group);
        let v = p.validate();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].condition, "root-order");

        let ok = linked(3, 1);
        assert!(ok.validate().is_empty(), "{:?}", ok.validate());
        let mut bad = linked(3, 1);
        bad.cstar[1] = bad.cstar[0].clone();
        bad.cstar[1] = Character::from_exponents(&bad.group, &[1]).unwrap();
        let conds: Vec<&str> = bad.validate().iter().map(|v| v.condition).collect();
        assert!(conds.contains(&"linking-character"));

        // g^2 = 1 at p = 2 forces b_12 = 0
        let conds: Vec<&str> = linked(2, 1)
            .validate()
            .iter()
            .map(|v| v.condition)
            .collect();
        assert!(conds.contains(&"linking-group"));
    }

    #[test]
    fn skew_symmetry_form() {
        let h = HopfAlgebra::new(linked(3, 1)).unwrap();
        assert!(h.commutation_residual(0, 1).is_zero());
        assert!(h.commutation_residual(1, 0).is_zero());
        // X2 X1 = c*_2(c_1) X1 X2 + b_12 (g^2 - 1) with c*_2(c_1) = ζ^{-1}
        let x21 = h.normal_form(&[Letter::X(1), Letter::X(0)]);
        let x12 = h.normal_form(&[Letter::X(0), Letter::X(1)]);
        let corr = h.group_element(2).sub(&h.group_element(0));
        assert_eq!(x21, x12.scale(&z(3, -1)).add(&corr));

        // b_ij = -c*_i(c_j) b_ji read literally contradicts the relation for (2, 1)
        let mut literal = linked(3, 1);
        literal.b[1][0] = -literal.q(0, 1).inv().unwrap();
        assert_ne!(literal.b[1][0], linked(3, 1).b[1][0]);
        let h = HopfAlgebra::new_unvalidated(literal.clone());
        assert!(!h.commutation_residual(1, 0).is_zero());
        assert!(literal
            .validate()
            .iter()
            .any(|v| v.condition == "linking-symmetry"));
    }

    #[test]
    fn b_correction_vanishes_exactly_when_expected() {
        let h = HopfAlgebra::new(linked(3, 1)).unwrap();
        let x21 = h.normal_form(&[Letter::X(1), Letter::X(0)]);
        let x12 = h.normal_form(&[Letter::X(0), Letter::X(1)]);
        assert!(!x21.sub(&x12.scale(h.params().q(1, 0))).is_zero());
        let h0 = HopfAlgebra::new(linked(3, 0)).unwrap();
        let x21 = h0.normal_form(&[Letter::X(1), Letter::X(0)]);
        let x12 = h0.normal_form(&[Letter::X(0), Letter::X(1)]);
        assert!(x21.sub(&x12.scale(h0.params().q(1, 0))).is_zero());
    }

    #[test]
    fn linked_family_is_a_hopf_algebra() {
        let h = HopfAlgebra::new(linked(3, 1)).unwrap();
        assert_eq!(h.dim(), 27);
        let report = check_hopf_axioms(&h);
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn lifted_power_relation() {
        // Z_4, c = g, c*(g) = -1, n = 2, a = 1: X^2 = g^2 - 1
        let group = FiniteGroup::cyclic_product(&[4]).unwrap();
        let chi = Character::from_exponents(&group, &[2]).unwrap();
        let p = HopfParams {
            group: Arc::new(group),
            n: vec![2],
            c: vec![1],
            cstar: vec![chi],
            a: vec![1],
            b: vec![vec![Cyclotomic::zero()]],
        };
        let h = HopfAlgebra::new(p).unwrap();
        assert_eq!(h.dim(), 8);
        let xx = h.normal_form(&[Letter::X(0), Letter::X(0)]);
        assert_eq!(xx, h.group_element(2).sub(&h.group_element(0)));
        assert!(check_hopf_axioms(&h).all_pass());
    }

    #[test]
    fn corruptions_are_detected() {
        let taft = negative_controls(&HopfParams::taft(2).unwrap());
        assert_eq!(taft.len(), 2);
        assert!(taft.iter().all(|o| o.detected), "{taft:?}");
        let linked = negative_controls(&linked(3, 1));
        assert_eq!(linked.len(), 4);
        assert!(linked.iter().all(|o| o.detected), "{linked:?}");
        // at t = 1 the two-generator defects leave the algebra unchanged
        let h = HopfAlgebra::corrupted(HopfParams::taft(2).unwrap(), Corruption::SkewSymmetry);
        assert!(check_hopf_axioms(&h).all_pass());
    }

    #[test]
    fn truncations_see_no_nilpotent_ideal() {
        let ev = truncation_evidence(&HopfParams::taft(2).unwrap(), 6, 40, 0).unwrap();
        assert!(ev.holds(), "{ev:?}");
        let tr = Truncation::new(&HopfParams::taft(2).unwrap(), 6).unwrap();
        assert_eq!(tr.algebra().dim(), 14);
        assert!(tr.algebra().check_associative().is_ok());
        assert!(matches!(
            Truncation::new(&linked(3, 1), 6),
            Err(Error::Precondition(_))
        ));
    }
}
