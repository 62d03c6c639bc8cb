//! Finite-dimensional algebras given by structure constants, and the
//! brute-force oracles every closed-form radical formula is checked against.
//!
//! Everything here assumes characteristic zero: the Jacobson radical of a
//! unital algebra `A` is computed as the null space of the trace form
//! `(x, y) ↦ tr(L_{xy})`, `L` the left regular representation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{kernel, rank, solve, SparseVec, Subspace};
use crate::scalar::Cyclotomic;

/// Default upper bound on the dimension the brute-force checks accept.
pub const DEFAULT_MAX_ORACLE_DIM: usize = 64;

/// Seed used for sampled checks unless the caller supplies one.
pub const DEFAULT_SEED: u64 = 0;

/// Radical properties the library distinguishes. For finite-dimensional
/// algebras over a field the first four coincide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RadicalKind {
    Baer,
    Levitzki,
    Nil,
    Jacobson,
    /// Von Neumann regular radical.
    Vn,
}

impl RadicalKind {
    pub fn is_jacobson_family(self) -> bool {
        self != RadicalKind::Vn
    }

    pub fn name(self) -> &'static str {
        match self {
            RadicalKind::Baer => "baer",
            RadicalKind::Levitzki => "levitzki",
            RadicalKind::Nil => "nil",
            RadicalKind::Jacobson => "jacobson",
            RadicalKind::Vn => "vn",
        }
    }
}

impl std::str::FromStr for RadicalKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "baer" => RadicalKind::Baer,
            "levitzki" => RadicalKind::Levitzki,
            "nil" => RadicalKind::Nil,
            "jacobson" => RadicalKind::Jacobson,
            "vn" => RadicalKind::Vn,
            other => return Err(Error::Invalid(format!("unknown radical kind `{other}`"))),
        })
    }
}

#[derive(Clone, Debug)]
pub struct FinDimAlgebra {
    names: Vec<String>,
    /// `table[i * dim + j] = b_i * b_j`
    table: Vec<SparseVec>,
    unit: Option<SparseVec>,
}

impl FinDimAlgebra {
    /// Builds an algebra, verifying associativity on every basis triple and
    /// searching for a unit.
    pub fn new(names: Vec<String>, table: Vec<SparseVec>) -> Result<Self> {
        let mut a = Self::trusted(names, table, None);
        a.check_associative()?;
        a.unit = a.find_unit();
        Ok(a)
    }

    pub fn from_fn(names: Vec<String>, f: impl Fn(usize, usize) -> SparseVec) -> Result<Self> {
        let m = names.len();
        let table = (0..m * m).map(|k| f(k / m, k % m)).collect();
        Self::new(names, table)
    }

    /// Skips the associativity check. Table must already be associative.
    pub(crate) fn trusted(
        names: Vec<String>,
        table: Vec<SparseVec>,
        unit: Option<SparseVec>,
    ) -> Self {
        assert_eq!(table.len(), names.len() * names.len());
        FinDimAlgebra { names, table, unit }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub fn unit(&self) -> Option<&SparseVec> {
        self.unit.as_ref()
    }

    pub fn basis_vector(&self, i: usize) -> SparseVec {
        SparseVec::unit(i)
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = std::collections::BTreeMap::<usize, Cyclotomic>::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let p = self.basis_product(i, j);
                if p.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in p.iter() {
                    *acc.entry(k).or_default() += &(&ab * c);
                }
            }
        }
        SparseVec::from_map(acc)
    }

    pub fn check_associative(&self) -> Result<()> {
        let m = self.dim();
        for i in 0..m {
            for j in 0..m {
                let ij = self.basis_product(i, j);
                for k in 0..m {
                    let left = self.mul(ij, &SparseVec::unit(k));
                    let right = self.mul(&SparseVec::unit(i), self.basis_product(j, k));
                    if left != right {
                        return Err(Error::NotAssociative(
                            self.names[i].clone(),
                            self.names[j].clone(),
                            self.names[k].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Solves `u b_i = b_i = b_i u` for all basis elements.
    pub fn find_unit(&self) -> Option<SparseVec> {
        let m = self.dim();
        if m == 0 {
            return None;
        }
        // unknown u_k contributes b_k b_i in block i and b_i b_k in block m + i
        let cols: Vec<SparseVec> = (0..m)
            .map(|k| {
                let mut pairs = Vec::new();
                for i in 0..m {
                    for (r, c) in self.basis_product(k, i).iter() {
                        pairs.push((i * m + r, c.clone()));
                    }
                    for (r, c) in self.basis_product(i, k).iter() {
                        pairs.push(((m + i) * m + r, c.clone()));
                    }
                }
                SparseVec::from_pairs(pairs)
            })
            .collect();
        let rhs = SparseVec::from_pairs((0..m).flat_map(|i| {
            [
                (i * m + i, Cyclotomic::one()),
                ((m + i) * m + i, Cyclotomic::one()),
            ]
        }));
        solve(&cols, 2 * m * m, &rhs)
    }

    /// `A ⊕ k·1` with the new unit appended as the last basis element.
    pub fn adjoin_unit(&self) -> FinDimAlgebra {
        let m = self.dim();
        let n = m + 1;
        let mut table = vec![SparseVec::new(); n * n];
        for i in 0..m {
            for j in 0..m {
                table[i * n + j] = self.basis_product(i, j).clone();
            }
            table[i * n + m] = SparseVec::unit(i);
            table[m * n + i] = SparseVec::unit(i);
        }
        table[m * n + m] = SparseVec::unit(m);
        let mut names = self.names.clone();
        names.push("1".into());
        FinDimAlgebra::trusted(names, table, Some(SparseVec::unit(m)))
    }

    /// Columns of the left multiplication map `y ↦ x y`.
    pub fn left_mult_columns(&self, x: &SparseVec) -> Vec<SparseVec> {
        (0..self.dim())
            .map(|j| self.mul(x, &SparseVec::unit(j)))
            .collect()
    }

    fn basis_traces(&self) -> Vec<Cyclotomic> {
        let m = self.dim();
        (0..m)
            .map(|k| {
                (0..m).fold(Cyclotomic::zero(), |acc, j| {
                    match self.basis_product(k, j).get(j) {
                        Some(c) => acc + c,
                        None => acc,
                    }
                })
            })
            .collect()
    }

    /// Trace of left multiplication by `x`.
    pub fn trace(&self, x: &SparseVec) -> Cyclotomic {
        let tr = self.basis_traces();
        x.iter()
            .fold(Cyclotomic::zero(), |acc, (k, c)| acc + &(c * &tr[k]))
    }

    /// Gram matrix of the trace form, one column per basis element.
    fn trace_form_columns(&self) -> Vec<SparseVec> {
        let m = self.dim();
        let tr = self.basis_traces();
        (0..m)
            .map(|i| {
                SparseVec::from_pairs((0..m).map(|j| {
                    let p = self.basis_product(i, j);
                    let v = p
                        .iter()
                        .fold(Cyclotomic::zero(), |acc, (k, c)| acc + &(c * &tr[k]));
                    (j, v)
                }))
            })
            .collect()
    }

    /// Human-readable element literal over the basis names.
    pub fn literal(&self, v: &SparseVec) -> String {
        element_literal(&self.names, v)
    }

    pub fn is_ideal(&self, b: &Subspace) -> bool {
        self.ideal_witness(b).is_none()
    }

    fn ideal_witness(&self, b: &Subspace) -> Option<String> {
        for u in b.basis() {
            for k in 0..self.dim() {
                let e = SparseVec::unit(k);
                if !b.contains(&self.mul(&e, &u)) {
                    return Some(format!(
                        "{} * ({}) leaves the subspace",
                        self.names[k],
                        self.literal(&u)
                    ));
                }
                if !b.contains(&self.mul(&u, &e)) {
                    return Some(format!(
                        "({}) * {} leaves the subspace",
                        self.literal(&u),
                        self.names[k]
                    ));
                }
            }
        }
        None
    }

    /// `span{u v : u ∈ U, v ∈ V}`
    pub fn product_space(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let vb = v.basis();
        let mut s = Subspace::zero(self.dim());
        for x in u.basis() {
            for y in &vb {
                s.insert(self.mul(&x, y));
            }
        }
        s
    }

    /// Two-sided ideal generated by the given elements.
    pub fn ideal_generated(&self, gens: &[SparseVec]) -> Subspace {
        let mut s = Subspace::zero(self.dim());
        let mut work: Vec<SparseVec> = gens.to_vec();
        while let Some(v) = work.pop() {
            if !s.insert(v.clone()) {
                continue;
            }
            for k in 0..self.dim() {
                let e = SparseVec::unit(k);
                work.push(self.mul(&e, &v));
                work.push(self.mul(&v, &e));
            }
        }
        s
    }

    /// Index `n` with `B^n = 0`, if it exists within `dim A + 1` steps.
    pub fn nilpotency_index(&self, b: &Subspace) -> Option<usize> {
        if b.is_zero() {
            return Some(0);
        }
        // power = B^k
        let mut power = b.clone();
        for k in 1..=self.dim() + 1 {
            if power.is_zero() {
                return Some(k);
            }
            let next = self.product_space(&power, b);
            if next == power {
                return None;
            }
            power = next;
        }
        None
    }

    /// `A / I` over the non-pivot basis elements of `I`.
    pub fn quotient(&self, ideal: &Subspace) -> Result<FinDimAlgebra> {
        if let Some(w) = self.ideal_witness(ideal) {
            return Err(Error::NotAnIdeal(w));
        }
        let keep = ideal.complement_units();
        let mut pos = vec![usize::MAX; self.dim()];
        for (new, &old) in keep.iter().enumerate() {
            pos[old] = new;
        }
        let q = keep.len();
        let project = |v: &SparseVec| ideal.reduce(v).map_indices(|i| pos[i]);
        let mut table = Vec::with_capacity(q * q);
        for &i in &keep {
            for &j in &keep {
                table.push(project(self.basis_product(i, j)));
            }
        }
        let names = keep.iter().map(|&i| self.names[i].clone()).collect();
        let unit = self.unit.as_ref().map(project);
        Ok(FinDimAlgebra::trusted(names, table, unit))
    }

    /// Centre `{z : z b = b z for all b}`.
    pub fn center(&self) -> Subspace {
        let m = self.dim();
        let cols: Vec<SparseVec> = (0..m)
            .map(|k| {
                SparseVec::from_pairs((0..m).flat_map(|i| {
                    let l = self.basis_product(k, i).sub(self.basis_product(i, k));
                    l.iter()
                        .map(|(r, c)| (i * m + r, c.clone()))
                        .collect::<Vec<_>>()
                }))
            })
            .collect();
        Subspace::spanned_by(m, kernel(&cols, m * m))
    }

    /// Largest conductor appearing in the structure constants.
    fn conductor(&self) -> u32 {
        use num_integer::Integer;
        self.table
            .iter()
            .flat_map(|v| v.iter().map(|(_, c)| c.conductor()))
            .fold(1, |acc, c| acc.lcm(&c))
    }
}

pub fn element_literal(names: &[String], v: &SparseVec) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (i, c)) in v.iter().enumerate() {
        let cs = c.to_string();
        let simple = !cs[1..].contains([' ', '+']) && !cs.contains(" - ");
        let (neg, body) = if simple && cs.starts_with('-') {
            (true, cs[1..].to_string())
        } else {
            (false, cs)
        };
        if k > 0 {
            out.push_str(if neg { " - " } else { " + " });
        } else if neg {
            out.push('-');
        }
        if body == "1" {
            out.push_str(&names[i]);
        } else if simple {
            out.push_str(&format!("{body}*{}", names[i]));
        } else {
            out.push_str(&format!("({body})*{}", names[i]));
        }
    }
    out
}

/// Result of the trace-form radical computation with its self-checks.
#[derive(Clone, Debug)]
pub struct JacobsonReport {
    pub radical: Subspace,
    pub is_ideal: bool,
    pub nilpotency_index: Option<usize>,
    /// Trace form of `A / rad A` is nondegenerate.
    pub quotient_semisimple: bool,
}

impl JacobsonReport {
    pub fn verified(&self) -> bool {
        self.is_ideal && self.nilpotency_index.is_some() && self.quotient_semisimple
    }
}

fn trace_form_radical(a: &FinDimAlgebra) -> Subspace {
    Subspace::spanned_by(a.dim(), kernel(&a.trace_form_columns(), a.dim()))
}

/// Jacobson radical by the characteristic-zero trace criterion.
pub fn jacobson_oracle(a: &FinDimAlgebra) -> Result<JacobsonReport> {
    if a.unit().is_none() {
        return Err(Error::NotUnital);
    }
    let radical = trace_form_radical(a);
    let is_ideal = a.is_ideal(&radical);
    let nilpotency_index = a.nilpotency_index(&radical);
    let quotient_semisimple = is_ideal && {
        let q = a.quotient(&radical)?;
        rank(&q.trace_form_columns(), q.dim()) == q.dim()
    };
    Ok(JacobsonReport {
        radical,
        is_ideal,
        nilpotency_index,
        quotient_semisimple,
    })
}

/// Jacobson radical of a possibly non-unital algebra, through `A ⊕ k·1`.
pub fn jacobson_radical_any(a: &FinDimAlgebra) -> Result<Subspace> {
    if a.unit().is_some() {
        return Ok(jacobson_oracle(a)?.radical);
    }
    let ext = a.adjoin_unit();
    let r = jacobson_oracle(&ext)?.radical;
    let m = a.dim();
    Ok(Subspace::spanned_by(
        m,
        r.basis().into_iter().map(|v| v.filter(|i| i < m)),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotencyReport {
    pub nilpotent: bool,
    pub index: Option<usize>,
    pub contained_in_radical: bool,
    pub equals_radical: bool,
}

/// Checks `B^n = 0` by symbolic powers and compares `B` with the trace radical.
pub fn largest_nilpotent_check(a: &FinDimAlgebra, b: &Subspace) -> Result<NilpotencyReport> {
    if let Some(w) = a.ideal_witness(b) {
        return Err(Error::NotAnIdeal(w));
    }
    let index = a.nilpotency_index(b);
    let rad = jacobson_radical_any(a)?;
    let contained = rad.contains_subspace(b);
    if index.is_some() && !contained {
        return Err(Error::Invalid(
            "nilpotent ideal outside the trace radical: oracle inconsistency".into(),
        ));
    }
    Ok(NilpotencyReport {
        nilpotent: index.is_some(),
        index,
        contained_in_radical: contained,
        equals_radical: contained && rad.dim() == b.dim(),
    })
}

/// A witness `y` with `x y x = x`, found by a linear solve.
pub fn vn_regular_element(a: &FinDimAlgebra, x: &SparseVec) -> Option<SparseVec> {
    let cols: Vec<SparseVec> = (0..a.dim())
        .map(|j| a.mul(&a.mul(x, &SparseVec::unit(j)), x))
        .collect();
    solve(&cols, a.dim(), x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VnIdealCheck {
    /// Every tested element was regular. Evidence only: regular elements do
    /// not form a subspace, so untested combinations may still fail.
    Verified {
        tested: usize,
    },
    Counterexample(SparseVec),
    /// The input was not an ideal, so the check says nothing.
    Inconclusive,
}

/// Tests regularity of the basis of `B` and of `samples` random combinations.
pub fn vn_regular_ideal_check(
    a: &FinDimAlgebra,
    b: &Subspace,
    samples: usize,
    seed: u64,
) -> VnIdealCheck {
    if !a.is_ideal(b) {
        return VnIdealCheck::Inconclusive;
    }
    let basis = b.basis();
    let mut tested = 0;
    for v in &basis {
        tested += 1;
        if vn_regular_element(a, v).is_none() {
            return VnIdealCheck::Counterexample(v.clone());
        }
    }
    if basis.is_empty() {
        return VnIdealCheck::Verified { tested };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let x = random_combination(&mut rng, &basis);
        if x.is_zero() {
            continue;
        }
        tested += 1;
        if vn_regular_element(a, &x).is_none() {
            return VnIdealCheck::Counterexample(x);
        }
    }
    VnIdealCheck::Verified { tested }
}

pub(crate) fn random_combination(rng: &mut ChaCha8Rng, basis: &[SparseVec]) -> SparseVec {
    basis.iter().fold(SparseVec::new(), |acc, v| {
        let c: i64 = rng.gen_range(-3..=3);
        acc.add_scaled(v, &Cyclotomic::from_int(c))
    })
}

/// Largest von Neumann regular ideal: the stable power of the two-sided
/// annihilator of the Jacobson radical.
///
/// A regular ideal `I` satisfies `I = I²` and `I ∩ rad = 0`, hence
/// `I·rad = rad·I = 0`; conversely an idempotent ideal annihilating the
/// radical is semisimple, so regular.
pub fn regular_radical(a: &FinDimAlgebra) -> Result<Subspace> {
    let m = a.dim();
    let rad = jacobson_radical_any(a)?;
    let rb = rad.basis();
    let cols: Vec<SparseVec> = (0..m)
        .map(|k| {
            let e = SparseVec::unit(k);
            SparseVec::from_pairs(rb.iter().enumerate().flat_map(|(r, v)| {
                let left = a.mul(&e, v);
                let right = a.mul(v, &e);
                left.iter()
                    .map(|(i, c)| ((2 * r) * m + i, c.clone()))
                    .chain(right.iter().map(|(i, c)| ((2 * r + 1) * m + i, c.clone())))
                    .collect::<Vec<_>>()
            }))
        })
        .collect();
    let mut t = Subspace::spanned_by(m, kernel(&cols, 2 * rb.len().max(1) * m));
    loop {
        let next = a.product_space(&t, &t);
        if next == t {
            return Ok(t);
        }
        t = next;
    }
}

fn check_bound(a: &FinDimAlgebra, bound: usize) -> Result<()> {
    if a.dim() > bound {
        return Err(Error::DimensionBound {
            dim: a.dim(),
            bound,
        });
    }
    Ok(())
}

/// Semiprime test: the radical (largest nilpotent ideal) vanishes.
pub fn semiprime_bruteforce(a: &FinDimAlgebra, bound: usize) -> Result<bool> {
    check_bound(a, bound)?;
    let report = jacobson_oracle(a)?;
    if !report.verified() {
        return Err(Error::Invalid(
            "trace radical failed its self-checks".into(),
        ));
    }
    Ok(report.radical.is_zero())
}

/// Prime test for a unital finite-dimensional algebra.
///
/// Not prime when the radical is nonzero, when some basis element `x` has a
/// nonzero `y` with `x A y = 0`, or when the centre has a zero divisor. Prime
/// when semisimple with a one-dimensional centre. A semisimple algebra whose
/// centre is larger but shows no zero divisor among the tested candidates is
/// reported as [`Error::Undecided`].
pub fn prime_bruteforce(a: &FinDimAlgebra, bound: usize) -> Result<bool> {
    check_bound(a, bound)?;
    if a.dim() == 0 {
        return Ok(false);
    }
    if !semiprime_bruteforce(a, bound)? {
        return Ok(false);
    }
    let m = a.dim();
    for i in 0..m {
        // y ↦ (b_i b_k y)_k
        let cols: Vec<SparseVec> = (0..m)
            .map(|j| {
                let y = SparseVec::unit(j);
                SparseVec::from_pairs((0..m).flat_map(|k| {
                    let v = a.mul(a.basis_product(i, k), &y);
                    v.iter()
                        .map(|(r, c)| (k * m + r, c.clone()))
                        .collect::<Vec<_>>()
                }))
            })
            .collect();
        if !kernel(&cols, m * m).is_empty() {
            return Ok(false);
        }
    }
    let z = a.center();
    if z.dim() == 1 {
        return Ok(true);
    }
    let zb = z.basis();
    let mut candidates = zb.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..8 {
        candidates.push(random_combination(&mut rng, &zb));
    }
    let unit = a.unit().cloned().ok_or(Error::NotUnital)?;
    let n = a.conductor().max(2);
    for c in candidates.iter().filter(|c| !c.is_zero()) {
        for lambda in eigenvalue_candidates(a, c, &zb, n) {
            let shifted = c.sub(&unit.scale(&lambda));
            if shifted.is_zero() {
                continue;
            }
            let images: Vec<SparseVec> = zb.iter().map(|w| a.mul(&shifted, w)).collect();
            if rank(&images, m) < zb.len() {
                return Ok(false);
            }
        }
    }
    Err(Error::Undecided(format!(
        "semisimple algebra with {}-dimensional centre and no detected central zero divisor",
        z.dim()
    )))
}

/// Zero, the roots of unity `±ζ_n^k`, and rational roots of the minimal
/// polynomial of `z` when it has rational coefficients.
fn eigenvalue_candidates(
    a: &FinDimAlgebra,
    z: &SparseVec,
    zb: &[SparseVec],
    n: u32,
) -> Vec<Cyclotomic> {
    let mut out = vec![Cyclotomic::zero()];
    for k in 0..n as i64 {
        let w = Cyclotomic::root_of_unity(n, k);
        out.push(-&w);
        out.push(w);
    }
    if let Some(poly) = minimal_polynomial(a, z, zb.len()) {
        out.extend(rational_roots(&poly));
    }
    out
}

/// Monic minimal polynomial of `z`, low degree first.
fn minimal_polynomial(a: &FinDimAlgebra, z: &SparseVec, max_deg: usize) -> Option<Vec<Cyclotomic>> {
    let unit = a.unit()?.clone();
    let mut powers = vec![unit];
    for d in 1..=max_deg + 1 {
        let next = a.mul(powers.last().unwrap(), z);
        if let Some(x) = solve(&powers, a.dim(), &next) {
            // z^d = Σ x_i z^i
            let mut poly: Vec<Cyclotomic> = (0..d)
                .map(|i| -x.get(i).cloned().unwrap_or_default())
                .collect();
            poly.push(Cyclotomic::one());
            return Some(poly);
        }
        powers.push(next);
    }
    None
}

fn rational_roots(poly: &[Cyclotomic]) -> Vec<Cyclotomic> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{Signed, ToPrimitive, Zero};
    let Some(rats) = poly
        .iter()
        .map(|c| c.as_rational().cloned())
        .collect::<Option<Vec<_>>>()
    else {
        return Vec::new();
    };
    let den = rats
        .iter()
        .fold(BigInt::from(1), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * &den).to_integer()).collect();
    let Some(low) = ints.iter().position(|c| !c.is_zero()) else {
        return Vec::new();
    };
    let a0 = ints[low].abs().to_u64();
    let an = ints.last().unwrap().abs().to_u64();
    let (Some(a0), Some(an)) = (a0, an) else {
        return Vec::new();
    };
    if a0 > 1_000_000 || an > 1_000_000 {
        return Vec::new();
    }
    let divisors = |n: u64| (1..=n).filter(move |d| n.is_multiple_of(*d));
    let mut out = Vec::new();
    for p in divisors(a0) {
        for q in divisors(an) {
            for s in [1i64, -1] {
                let cand = Cyclotomic::from_frac(s * p as i64, q as i64);
                let val = poly
                    .iter()
                    .rev()
                    .fold(Cyclotomic::zero(), |acc, c| &(&acc * &cand) + c);
                if val.is_zero() {
                    out.push(cand);
                }
            }
        }
    }
    out
}

/// Structure-constant constructors used by tests, fixtures and the CLI.
pub mod examples {
    use super::*;

    /// `M_n(Q)` on matrix units `e<i><j>` (1-based).
    pub fn matrix_algebra(n: usize) -> FinDimAlgebra {
        let names = (0..n * n)
            .map(|k| format!("e{}{}", k / n + 1, k % n + 1))
            .collect();
        let table = (0..n.pow(4))
            .map(|t| {
                let (x, y) = (t / (n * n), t % (n * n));
                let (i, j) = (x / n, x % n);
                let (k, l) = (y / n, y % n);
                if j == k {
                    SparseVec::unit(i * n + l)
                } else {
                    SparseVec::new()
                }
            })
            .collect();
        let unit = SparseVec::from_pairs((0..n).map(|i| (i * n + i, Cyclotomic::one())));
        FinDimAlgebra::trusted(names, table, Some(unit))
    }

    /// `Q[x]/(x^n)` on `1, x, …, x^{n-1}`.
    pub fn truncated_polynomial(n: usize) -> FinDimAlgebra {
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            })
            .collect();
        let table = (0..n * n)
            .map(|t| {
                let s = t / n + t % n;
                if s < n {
                    SparseVec::unit(s)
                } else {
                    SparseVec::new()
                }
            })
            .collect();
        FinDimAlgebra::trusted(names, table, Some(SparseVec::unit(0)))
    }

    /// Direct product of algebras; basis names are prefixed by the summand index.
    pub fn direct_sum(parts: &[&FinDimAlgebra]) -> FinDimAlgebra {
        let offsets: Vec<usize> = parts
            .iter()
            .scan(0, |acc, p| {
                let o = *acc;
                *acc += p.dim();
                Some(o)
            })
            .collect();
        let m: usize = parts.iter().map(|p| p.dim()).sum();
        let mut table = vec![SparseVec::new(); m * m];
        let mut names = Vec::with_capacity(m);
        let mut unit = Some(SparseVec::new());
        for (p, part) in parts.iter().enumerate() {
            let o = offsets[p];
            names.extend(part.names().iter().map(|n| format!("{}:{n}", p + 1)));
            for i in 0..part.dim() {
                for j in 0..part.dim() {
                    table[(o + i) * m + o + j] = part.basis_product(i, j).map_indices(|k| k + o);
                }
            }
            unit = match (unit, part.unit()) {
                (Some(u), Some(pu)) => Some(u.add(&pu.map_indices(|k| k + o))),
                _ => None,
            };
        }
        FinDimAlgebra::trusted(names, table, unit)
    }

    /// Upper-triangular `n × n` matrices on `e<i><j>`, `i ≤ j`.
    pub fn upper_triangular(n: usize) -> FinDimAlgebra {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let idx = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).unwrap();
        let names = pairs
            .iter()
            .map(|(i, j)| format!("e{}{}", i + 1, j + 1))
            .collect();
        let m = pairs.len();
        let mut table = vec![SparseVec::new(); m * m];
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for (b, &(k, l)) in pairs.iter().enumerate() {
                if j == k {
                    table[a * m + b] = SparseVec::unit(idx(i, l));
                }
            }
        }
        let unit = SparseVec::from_pairs((0..n).map(|i| (idx(i, i), Cyclotomic::one())));
        FinDimAlgebra::trusted(names, table, Some(unit))
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    #[test]
    fn matrix_algebra_is_semisimple_and_prime() {
        let m2 = matrix_algebra(2);
        m2.check_associative().unwrap();
        let r = jacobson_oracle(&m2).unwrap();
        assert!(r.verified());
        assert!(r.radical.is_zero());
        assert!(prime_bruteforce(&m2, 64).unwrap());
    }

    #[test]
    fn dual_numbers_radical() {
        let a = truncated_polynomial(2);
        let r = jacobson_oracle(&a).unwrap();
        assert!(r.verified());
        assert_eq!(r.radical, Subspace::spanned_by(2, [SparseVec::unit(1)]));
        assert_eq!(r.nilpotency_index, Some(2));
    }

    #[test]
    fn nilpotent_checks() {
        let u = upper_triangular(3);
        let strict = Subspace::spanned_by(
            u.dim(),
            ["e12", "e13", "e23"]
                .iter()
                .map(|n| SparseVec::unit(u.index_of(n).unwrap())),
        );
        let rep = largest_nilpotent_check(&u, &strict).unwrap();
        assert_eq!(rep.index, Some(3));
        assert!(rep.equals_radical);

        let m = matrix_algebra(2);
        let id = Subspace::spanned_by(4, [m.unit().unwrap().clone()]);
        // span{1} is not an ideal of M_2
        assert!(matches!(
            largest_nilpotent_check(&m, &id),
            Err(Error::NotAnIdeal(_))
        ));
        let q = truncated_polynomial(1);
        let one = Subspace::full(1);
        let rep = largest_nilpotent_check(&q, &one).unwrap();
        assert!(!rep.nilpotent);
    }

    #[test]
    fn regular_elements() {
        let m = matrix_algebra(2);
        let e = SparseVec::unit(0);
        let y = vn_regular_element(&m, &e).unwrap();
        assert_eq!(m.mul(&m.mul(&e, &y), &e), e);
        let d = truncated_polynomial(2);
        assert!(vn_regular_element(&d, &SparseVec::unit(1)).is_none());
    }

    #[test]
    fn vn_ideal_checks() {
        let m3 = matrix_algebra(3);
        assert_eq!(
            vn_regular_ideal_check(&m3, &Subspace::full(9), 20, 0),
            VnIdealCheck::Verified { tested: 29 }
        );
        assert_eq!(
            vn_regular_ideal_check(&m3, &Subspace::zero(9), 20, 0),
            VnIdealCheck::Verified { tested: 0 }
        );
    }

    #[test]
    fn direct_sum_is_semiprime_not_prime() {
        let q = truncated_polynomial(1);
        let qq = direct_sum(&[&q, &q]);
        assert!(semiprime_bruteforce(&qq, 64).unwrap());
        assert!(!prime_bruteforce(&qq, 64).unwrap());
    }

    #[test]
    fn prime_rejects_split_centre_without_basis_witness() {
        // Q ⊕ Q on the basis {1, e}: no basis pair witnesses non-primeness,
        // the centre search must find e or 1 - e.
        let names = vec!["1".to_string(), "e".to_string()];
        let a = FinDimAlgebra::from_fn(names, |i, j| match (i, j) {
            (0, k) | (k, 0) => SparseVec::unit(k),
            _ => SparseVec::unit(1),
        })
        .unwrap();
        assert!(!prime_bruteforce(&a, 64).unwrap());
    }

    #[test]
    fn unit_detection_and_adjoining() {
        let names = vec!["x".to_string()];
        let a = FinDimAlgebra::from_fn(names, |_, _| SparseVec::new()).unwrap();
        assert!(a.unit().is_none());
        assert_eq!(jacobson_oracle(&a).unwrap_err(), Error::NotUnital);
        let r = jacobson_radical_any(&a).unwrap();
        assert_eq!(r.dim(), 1);
    }

    #[test]
    fn regular_radical_examples() {
        let m = matrix_algebra(2);
        assert_eq!(regular_radical(&m).unwrap().dim(), 4);
        let u = upper_triangular(2);
        assert!(regular_radical(&u).unwrap().is_zero());
        let q = truncated_polynomial(1);
        let d = truncated_polynomial(2);
        let s = direct_sum(&[&q, &d]);
        assert_eq!(
            regular_radical(&s).unwrap(),
            Subspace::spanned_by(3, [SparseVec::unit(0)])
        );
    }

    #[test]
    fn dimension_bound() {
        let m = matrix_algebra(3);
        assert_eq!(
            prime_bruteforce(&m, 4),
            Err(Error::DimensionBound { dim: 9, bound: 4 })
        );
    }

    #[test]
    fn literals() {
        let names: Vec<String> = vec!["a".into(), "b".into()];
        let v =
            SparseVec::from_pairs([(0, Cyclotomic::from_int(2)), (1, Cyclotomic::from_int(-1))]);
        assert_eq!(element_literal(&names, &v), "2*a - b");
        let w = SparseVec::from_pairs([(1, &Cyclotomic::one() + &Cyclotomic::root_of_unity(3, 1))]);
        assert_eq!(element_literal(&names, &w), "(1 + z3)*b");
    }
}
