//! Γ_I-systems: families of blocks `A_ij` with mixed products
//! `A_ij × A_jl → A_il`, kept as one flattened algebra whose basis is the
//! union of the block bases.
//!
//! The Γ-ring radical of a block `A_st` (over `Γ = A_ts`) is computed as
//! `r(C) ∩ A_st`, with `C` the corner algebra on the indices `{s, t}`.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::findim::{
    jacobson_radical_any, random_combination, regular_radical, FinDimAlgebra, RadicalKind,
};
use crate::linalg::{rank, SparseVec, Subspace};
use crate::path_algebra::MaterializedAlgebra;
use crate::scalar::{parse_linear, Cyclotomic};

#[derive(Clone, Debug)]
pub struct GammaSystem {
    name: String,
    index: Vec<String>,
    /// `block_of[k]` for every flattened basis element.
    block_of: Vec<(usize, usize)>,
    algebra: FinDimAlgebra,
}

impl GammaSystem {
    /// Builds a system from its flattened basis. `product(x, y)` returns the
    /// product of two basis elements over the flattened basis; it is only
    /// consulted for composable blocks and must land in the right block.
    pub fn from_parts(
        name: &str,
        index: Vec<String>,
        blocks: Vec<((usize, usize), Vec<String>)>,
        product: impl Fn(usize, usize) -> SparseVec,
    ) -> Result<Self> {
        let mut names = Vec::new();
        let mut block_of = Vec::new();
        for ((i, j), basis) in blocks {
            if i >= index.len() || j >= index.len() {
                return Err(Error::Invalid(format!(
                    "block ({i}, {j}) outside the index set"
                )));
            }
            for b in basis {
                if names.contains(&b) {
                    return Err(Error::Invalid(format!("basis name `{b}` used twice")));
                }
                names.push(b);
                block_of.push((i, j));
            }
        }
        let m = names.len();
        let mut table = Vec::with_capacity(m * m);
        for x in 0..m {
            for y in 0..m {
                let (i, j) = block_of[x];
                let (k, l) = block_of[y];
                if j != k {
                    table.push(SparseVec::new());
                    continue;
                }
                let p = product(x, y);
                if let Some((bad, _)) = p.iter().find(|(z, _)| block_of[*z] != (i, l)) {
                    return Err(Error::Invalid(format!(
                        "{} * {} has a component {} outside block ({}, {})",
                        names[x], names[y], names[bad], index[i], index[l]
                    )));
                }
                table.push(p);
            }
        }
        let algebra = FinDimAlgebra::new(names, table)?;
        Ok(GammaSystem {
            name: name.to_string(),
            index,
            block_of,
            algebra,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn index(&self) -> &[String] {
        &self.index
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.iter().position(|l| l == label)
    }

    /// The gm algebra `Σ A_ij`.
    pub fn assemble(&self) -> &FinDimAlgebra {
        &self.algebra
    }

    pub fn block_of(&self, k: usize) -> (usize, usize) {
        self.block_of[k]
    }

    /// Flattened indices of the basis of `A_ij`.
    pub fn block(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.block_of.len())
            .filter(|&k| self.block_of[k] == (i, j))
            .collect()
    }

    pub fn block_dim(&self, i: usize, j: usize) -> usize {
        self.block_of.iter().filter(|&&b| b == (i, j)).count()
    }

    pub fn block_subspace(&self, i: usize, j: usize) -> Subspace {
        Subspace::spanned_by(
            self.algebra.dim(),
            self.block(i, j).into_iter().map(SparseVec::unit),
        )
    }

    /// Blocks `A_ij = M_{n_i × n_j}(k)` on the given support pattern; every
    /// other block is zero. The pattern must be closed under composition.
    pub fn matrix_blocks(sizes: &[usize], pattern: &[(usize, usize)]) -> Result<Self> {
        let offsets: Vec<usize> = sizes
            .iter()
            .scan(0, |acc, &n| {
                let o = *acc;
                *acc += n;
                Some(o)
            })
            .collect();
        let mut support: Vec<(usize, usize)> = pattern.to_vec();
        support.sort_unstable();
        support.dedup();
        let index: Vec<String> = (1..=sizes.len()).map(|i| i.to_string()).collect();
        let mut blocks = Vec::new();
        // (global row, global col) of every flattened element
        let mut cells: Vec<(usize, usize)> = Vec::new();
        for &(i, j) in &support {
            let mut names = Vec::new();
            for r in 0..sizes[i] {
                for c in 0..sizes[j] {
                    names.push(format!("m{}{}_{}{}", index[i], index[j], r + 1, c + 1));
                    cells.push((offsets[i] + r, offsets[j] + c));
                }
            }
            blocks.push(((i, j), names));
        }
        let pos: BTreeMap<(usize, usize), usize> =
            cells.iter().enumerate().map(|(k, &rc)| (rc, k)).collect();
        GammaSystem::from_parts("matrix-blocks", index, blocks, |x, y| {
            let (r, c) = cells[x];
            let (r2, c2) = cells[y];
            if c != r2 {
                return SparseVec::new();
            }
            match pos.get(&(r, c2)) {
                Some(&k) => SparseVec::unit(k),
                None => SparseVec::new(),
            }
        })
    }

    /// Blocks of a materialized path algebra, graded by path endpoints.
    pub fn from_path_algebra(m: &MaterializedAlgebra) -> Result<Self> {
        let q = m.path_algebra().quiver();
        let index: Vec<String> = q.vertices().to_vec();
        let a = &m.algebra;
        let mut order: Vec<usize> = (0..m.dim()).collect();
        order.sort_by_key(|&k| (m.basis_paths()[k].source(), m.basis_paths()[k].target(), k));
        let mut blocks: Vec<((usize, usize), Vec<String>)> = Vec::new();
        for &k in &order {
            let p = &m.basis_paths()[k];
            let key = (p.source(), p.target());
            match blocks.last_mut() {
                Some((b, names)) if *b == key => names.push(a.names()[k].clone()),
                _ => blocks.push((key, vec![a.names()[k].clone()])),
            }
        }
        let mut inv = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            inv[old] = new;
        }
        GammaSystem::from_parts(
            &format!("path algebra of {} vertices", index.len()),
            index,
            blocks,
            |x, y| a.basis_product(order[x], order[y]).map_indices(|k| inv[k]),
        )
    }

    /// `M_n(R)` as the system with every block equal to `R`.
    pub fn tensor_matrix(r: &FinDimAlgebra, n: usize) -> Result<Self> {
        let d = r.dim();
        let index: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let mut blocks = Vec::new();
        for i in 0..n {
            for j in 0..n {
                blocks.push((
                    (i, j),
                    r.names()
                        .iter()
                        .map(|b| format!("{b}@{}{}", i + 1, j + 1))
                        .collect(),
                ));
            }
        }
        GammaSystem::from_parts("matrix ring", index, blocks, |x, y| {
            let (bx, by) = (x / d, y / d);
            let (i, j) = (bx / n, bx % n);
            let (k, l) = (by / n, by % n);
            if j != k {
                return SparseVec::new();
            }
            let off = (i * n + l) * d;
            r.basis_product(x % d, y % d).map_indices(|z| z + off)
        })
    }

    /// `A_ii = parts[i]`, every off-diagonal block zero.
    pub fn diagonal(parts: &[FinDimAlgebra]) -> Result<Self> {
        let index: Vec<String> = (1..=parts.len()).map(|i| i.to_string()).collect();
        let mut offsets = Vec::new();
        let mut blocks = Vec::new();
        let mut acc = 0;
        for (i, p) in parts.iter().enumerate() {
            offsets.push(acc);
            acc += p.dim();
            blocks.push((
                (i, i),
                p.names().iter().map(|b| format!("{b}@{}", i + 1)).collect(),
            ));
        }
        let owner: Vec<usize> = parts
            .iter()
            .enumerate()
            .flat_map(|(i, p)| std::iter::repeat_n(i, p.dim()))
            .collect();
        GammaSystem::from_parts("diagonal", index, blocks, |x, y| {
            let i = owner[x];
            let o = offsets[i];
            parts[i].basis_product(x - o, y - o).map_indices(|z| z + o)
        })
    }

    /// Parses the system file format:
    ///
    /// ```text
    /// gmring <name>
    /// index 1 2
    /// block 1 2 dim=2 basis=u,v
    /// mu 1 2 2 : u w -> 2*v
    /// ```
    ///
    /// Omitted products are zero. A single algebra uses the one-block variant
    /// with implicit index `1`:
    ///
    /// ```text
    /// algebra <name>
    /// basis e,x
    /// mu : e x -> x
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut name = None;
        let mut single = false;
        let mut index: Vec<String> = Vec::new();
        let mut blocks: Vec<((usize, usize), Vec<String>)> = Vec::new();
        let mut mus: Vec<(usize, usize, usize, String, String, String)> = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let words: Vec<&str> = body.split_whitespace().collect();
            let idx = |label: &str, index: &[String]| {
                index
                    .iter()
                    .position(|l| l == label)
                    .ok_or_else(|| Error::parse(line, format!("unknown index `{label}`")))
            };
            match words[0] {
                "gmring" if words.len() == 2 => name = Some(words[1].to_string()),
                "algebra" if words.len() == 2 => {
                    name = Some(words[1].to_string());
                    index = vec!["1".to_string()];
                    single = true;
                }
                "basis" if single && words.len() == 2 => {
                    if !blocks.is_empty() {
                        return Err(Error::parse(line, "basis declared twice"));
                    }
                    let basis = words[1]
                        .split(',')
                        .filter(|s| !s.is_empty())
                        .map(|s| s.to_string())
                        .collect();
                    blocks.push(((0, 0), basis));
                }
                "index" if !single => index = words[1..].iter().map(|s| s.to_string()).collect(),
                "block" if words.len() == 5 => {
                    let i = idx(words[1], &index)?;
                    let j = idx(words[2], &index)?;
                    let dim: usize = words[3]
                        .strip_prefix("dim=")
                        .and_then(|d| d.parse().ok())
                        .ok_or_else(|| Error::parse(line, "expected dim=<d>"))?;
                    let basis: Vec<String> = words[4]
                        .strip_prefix("basis=")
                        .ok_or_else(|| Error::parse(line, "expected basis=<names>"))?
                        .split(',')
                        .filter(|s| !s.is_empty())
                        .map(|s| s.to_string())
                        .collect();
                    if basis.len() != dim {
                        return Err(Error::parse(
                            line,
                            format!("dim={dim} but {} basis names", basis.len()),
                        ));
                    }
                    if blocks.iter().any(|(b, _)| *b == (i, j)) {
                        return Err(Error::parse(line, "block declared twice"));
                    }
                    blocks.push(((i, j), basis));
                }
                "mu" => {
                    let (lhs, rhs) = body
                        .split_once("->")
                        .ok_or_else(|| Error::parse(line, "expected `->` in mu line"))?;
                    let (head, factors) = lhs
                        .split_once(':')
                        .ok_or_else(|| Error::parse(line, "expected `:` in mu line"))?;
                    let mut h: Vec<&str> = head.split_whitespace().collect();
                    if single && h.len() == 1 {
                        h.extend(["1", "1", "1"]);
                    }
                    let f: Vec<&str> = factors.split_whitespace().collect();
                    if h.len() != 4 || f.len() != 2 {
                        return Err(Error::parse(
                            line,
                            "expected `mu i j l : <bi> <bj> -> <combo>`",
                        ));
                    }
                    mus.push((
                        idx(h[1], &index)?,
                        idx(h[2], &index)?,
                        idx(h[3], &index)?,
                        f[0].to_string(),
                        f[1].to_string(),
                        format!("{line}\u{0}{}", rhs.trim()),
                    ));
                }
                _ => {
                    return Err(Error::parse(
                        line,
                        format!("unrecognised directive `{body}`"),
                    ))
                }
            }
        }
        let name = name
            .ok_or_else(|| Error::parse(1, "missing `gmring <name>` or `algebra <name>` header"))?;
        let names: Vec<(String, (usize, usize))> = blocks
            .iter()
            .flat_map(|(b, ns)| ns.iter().map(move |n| (n.clone(), *b)))
            .collect();
        let lookup = |s: &str| names.iter().position(|(n, _)| n == s);
        let mut products: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for (i, j, l, x, y, rhs) in &mus {
            let (line, rhs) = rhs.split_once('\u{0}').unwrap();
            let line: usize = line.parse().unwrap();
            let xi = lookup(x)
                .ok_or_else(|| Error::parse(line, format!("unknown basis element `{x}`")))?;
            let yi = lookup(y)
                .ok_or_else(|| Error::parse(line, format!("unknown basis element `{y}`")))?;
            if names[xi].1 != (*i, *j) || names[yi].1 != (*j, *l) {
                return Err(Error::parse(
                    line,
                    format!("`{x}` and `{y}` do not lie in the declared blocks"),
                ));
            }
            let lin = parse_linear(rhs).map_err(|e| Error::parse(line, e))?;
            let mut v = SparseVec::new();
            for (sym, c) in lin.nonzero() {
                let sym = sym
                    .as_deref()
                    .ok_or_else(|| Error::parse(line, "bare scalar on the right-hand side"))?;
                let z = lookup(sym)
                    .ok_or_else(|| Error::parse(line, format!("unknown basis element `{sym}`")))?;
                if names[z].1 != (*i, *l) {
                    return Err(Error::parse(
                        line,
                        format!("`{sym}` is not in the target block"),
                    ));
                }
                v = v.add(&SparseVec::single(z, c.clone()));
            }
            products.insert((xi, yi), v);
        }
        GammaSystem::from_parts(&name, index, blocks, |x, y| {
            products.get(&(x, y)).cloned().unwrap_or_default()
        })
    }

    /// Corner algebra on the given indices, with the flattened positions of its basis.
    pub fn corner(&self, indices: &[usize]) -> (FinDimAlgebra, Vec<usize>) {
        let keep: Vec<usize> = (0..self.block_of.len())
            .filter(|&k| {
                let (i, j) = self.block_of[k];
                indices.contains(&i) && indices.contains(&j)
            })
            .collect();
        let mut pos = vec![usize::MAX; self.block_of.len()];
        for (new, &old) in keep.iter().enumerate() {
            pos[old] = new;
        }
        let m = keep.len();
        let mut table = Vec::with_capacity(m * m);
        for &x in &keep {
            for &y in &keep {
                table.push(self.algebra.basis_product(x, y).map_indices(|z| pos[z]));
            }
        }
        let names = keep
            .iter()
            .map(|&k| self.algebra.names()[k].clone())
            .collect();
        let mut c = FinDimAlgebra::trusted(names, table, None);
        if let Some(u) = c.find_unit() {
            c = FinDimAlgebra::trusted(
                c.names().to_vec(),
                (0..m * m)
                    .map(|t| c.basis_product(t / m, t % m).clone())
                    .collect(),
                Some(u),
            );
        }
        (c, keep)
    }

    /// `e_ii ∈ A_ii` acting as identity on every block row `i` and column `i`.
    pub fn find_gm_unit(&self) -> Option<Vec<SparseVec>> {
        let n = self.index.len();
        let m = self.algebra.dim();
        let mut units = Vec::with_capacity(n);
        for i in 0..n {
            let diag = self.block(i, i);
            let touching: Vec<usize> = (0..m)
                .filter(|&k| {
                    let (a, b) = self.block_of[k];
                    a == i || b == i
                })
                .collect();
            // unknown coefficients on A_ii; equations e x = x for x in row i, x e = x for x in column i
            let mut cols = Vec::with_capacity(diag.len());
            for &d in &diag {
                let mut pairs = Vec::new();
                for (t, &x) in touching.iter().enumerate() {
                    let (a, b) = self.block_of[x];
                    if a == i {
                        for (z, c) in self.algebra.basis_product(d, x).iter() {
                            pairs.push(((2 * t) * m + z, c.clone()));
                        }
                    }
                    if b == i {
                        for (z, c) in self.algebra.basis_product(x, d).iter() {
                            pairs.push(((2 * t + 1) * m + z, c.clone()));
                        }
                    }
                }
                cols.push(SparseVec::from_pairs(pairs));
            }
            let mut rhs = Vec::new();
            for (t, &x) in touching.iter().enumerate() {
                let (a, b) = self.block_of[x];
                if a == i {
                    rhs.push(((2 * t) * m + x, Cyclotomic::one()));
                }
                if b == i {
                    rhs.push(((2 * t + 1) * m + x, Cyclotomic::one()));
                }
            }
            let sol = crate::linalg::solve(
                &cols,
                2 * touching.len().max(1) * m,
                &SparseVec::from_pairs(rhs),
            )?;
            units.push(SparseVec::from_pairs(
                sol.iter().map(|(k, c)| (diag[k], c.clone())),
            ));
        }
        Some(units)
    }

    /// Whether `d ∈ A_st` satisfies both injectivity conditions: `x ↦ x d`
    /// on every `A_is` and `y ↦ d y` on every `A_tj`.
    pub fn is_gm_nonzero_divisor(&self, s: usize, t: usize, d: &SparseVec) -> bool {
        if d.is_zero() || d.iter().any(|(k, _)| self.block_of[k] != (s, t)) {
            return false;
        }
        let m = self.algebra.dim();
        for i in 0..self.index.len() {
            let cols: Vec<SparseVec> = self
                .block(i, s)
                .into_iter()
                .map(|x| self.algebra.mul(&SparseVec::unit(x), d))
                .collect();
            if rank(&cols, m) < cols.len() {
                return false;
            }
            let cols: Vec<SparseVec> = self
                .block(t, i)
                .into_iter()
                .map(|y| self.algebra.mul(d, &SparseVec::unit(y)))
                .collect();
            if rank(&cols, m) < cols.len() {
                return false;
            }
        }
        true
    }

    fn divisor_obstruction(&self, s: usize, t: usize) -> Option<String> {
        if self.block_dim(s, t) == 0 {
            return Some(format!("A_({},{}) = 0", self.index[s], self.index[t]));
        }
        for i in 0..self.index.len() {
            let (from, to) = (self.block_dim(i, s), self.block_dim(i, t));
            if from > to {
                return Some(format!(
                    "x ↦ x·d maps A_({},{}) of dimension {from} into A_({},{}) of dimension {to}",
                    self.index[i], self.index[s], self.index[i], self.index[t]
                ));
            }
            let (from, to) = (self.block_dim(t, i), self.block_dim(s, i));
            if from > to {
                return Some(format!(
                    "y ↦ d·y maps A_({},{}) of dimension {from} into A_({},{}) of dimension {to}",
                    self.index[t], self.index[i], self.index[s], self.index[i]
                ));
            }
        }
        None
    }

    /// Searches a gm non-zero divisor in every block: gm units, basis
    /// vectors and their sum first, then `budget` seeded random combinations.
    ///
    /// The defining condition is two-sided, so the left and right searches
    /// share one certificate; `side` is recorded, not used.
    pub fn gm_nonzero_divisor(&self, side: Side, budget: usize, seed: u64) -> DivisorReport {
        let n = self.index.len();
        let units = self.find_gm_unit();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut verdicts = BTreeMap::new();
        for s in 0..n {
            for t in 0..n {
                let verdict = if let Some(why) = self.divisor_obstruction(s, t) {
                    DivisorVerdict::NonePossible(why)
                } else {
                    let basis: Vec<SparseVec> =
                        self.block(s, t).into_iter().map(SparseVec::unit).collect();
                    let mut candidates = Vec::new();
                    if s == t {
                        if let Some(u) = &units {
                            candidates.push(u[s].clone());
                        }
                    }
                    candidates.extend(basis.iter().cloned());
                    candidates.push(basis.iter().fold(SparseVec::new(), |a, b| a.add(b)));
                    for _ in 0..budget {
                        candidates.push(random_combination(&mut rng, &basis));
                    }
                    candidates
                        .into_iter()
                        .find(|d| self.is_gm_nonzero_divisor(s, t, d))
                        .map_or(DivisorVerdict::Unknown, DivisorVerdict::Found)
                };
                verdicts.insert((s, t), verdict);
            }
        }
        DivisorReport { side, verdicts }
    }

    /// Block-wise radical formula `Σ r(A_ij)`, verified to be an ideal.
    ///
    /// For the von Neumann regular radical the formula needs left and right gm
    /// non-zero divisors; without them `policy` decides between refusing and
    /// accepting the sum only when it matches the direct computation.
    pub fn gm_radical_formula(
        &self,
        kind: RadicalKind,
        policy: VnPolicy,
        seed: u64,
    ) -> Result<GmIdeal> {
        let n = self.index.len();
        if kind == RadicalKind::Vn {
            let report = self.gm_nonzero_divisor(Side::Left, 16, seed);
            if !report.all_found() {
                let why = report.first_failure().unwrap_or_default();
                if policy == VnPolicy::RequireDivisors {
                    return Err(Error::NotApplicable(format!(
                        "von Neumann regular radical formula needs left and right gm non-zero divisors; {why}"
                    )));
                }
            }
        }
        let mut parts = BTreeMap::new();
        for s in 0..n {
            for t in 0..n {
                if self.block_dim(s, t) == 0 {
                    continue;
                }
                parts.insert((s, t), self.block_radical(s, t, kind)?);
            }
        }
        let total = parts
            .values()
            .fold(Subspace::zero(self.algebra.dim()), |acc, p| acc.sum(p));
        if kind == RadicalKind::Vn && policy == VnPolicy::VerifyAgainstOracle {
            let direct = regular_radical(&self.algebra)?;
            if direct != total {
                return Err(Error::NotApplicable(format!(
                    "Σ r_n(A_ij) has dimension {} but r_n(A) has dimension {}",
                    total.dim(),
                    direct.dim()
                )));
            }
        }
        if !self.algebra.is_ideal(&total) {
            return Err(Error::NotAnIdeal(format!(
                "Σ r(A_ij) for kind {}",
                kind.name()
            )));
        }
        Ok(GmIdeal { parts, total })
    }

    /// `r(A_st)` for the `A_ts`-ring `A_st`, as `r(corner{s,t}) ∩ A_st`.
    pub fn block_radical(&self, s: usize, t: usize, kind: RadicalKind) -> Result<Subspace> {
        let idx: Vec<usize> = if s == t { vec![s] } else { vec![s, t] };
        let (corner, keep) = self.corner(&idx);
        let r = if kind == RadicalKind::Vn {
            regular_radical(&corner)?
        } else {
            jacobson_radical_any(&corner)?
        };
        let lifted = Subspace::spanned_by(
            self.algebra.dim(),
            r.basis().into_iter().map(|v| v.map_indices(|k| keep[k])),
        );
        Ok(lifted.intersect(&self.block_subspace(s, t)))
    }

    /// Projection of `B` on block `(s, t)`.
    pub fn project(&self, b: &Subspace, s: usize, t: usize) -> Subspace {
        let block = self.block_of.clone();
        Subspace::spanned_by(
            self.algebra.dim(),
            b.basis()
                .into_iter()
                .map(|v| v.filter(|k| block[k] == (s, t))),
        )
    }

    /// `Σ_ij project(B, i, j)`.
    pub fn gm_closure(&self, b: &Subspace) -> Subspace {
        let n = self.index.len();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .fold(Subspace::zero(self.algebra.dim()), |acc, (i, j)| {
                acc.sum(&self.project(b, i, j))
            })
    }

    /// Whether each homogeneous component, for the grading `deg(A_ij)`, of
    /// every basis vector of `B` lies in `B`.
    pub fn is_graded<G: Ord + Clone>(&self, b: &Subspace, deg: impl Fn(usize, usize) -> G) -> bool {
        b.basis().into_iter().all(|v| {
            let mut comps: BTreeMap<G, SparseVec> = BTreeMap::new();
            for (k, c) in v.iter() {
                let (i, j) = self.block_of[k];
                let e = comps.entry(deg(i, j)).or_default();
                *e = e.add(&SparseVec::single(k, c.clone()));
            }
            comps.values().all(|c| b.contains(c))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisorVerdict {
    Found(SparseVec),
    NonePossible(String),
    Unknown,
}

#[derive(Clone, Debug)]
pub struct DivisorReport {
    pub side: Side,
    pub verdicts: BTreeMap<(usize, usize), DivisorVerdict>,
}

impl DivisorReport {
    pub fn all_found(&self) -> bool {
        self.verdicts
            .values()
            .all(|v| matches!(v, DivisorVerdict::Found(_)))
    }

    fn first_failure(&self) -> Option<String> {
        self.verdicts.iter().find_map(|((s, t), v)| match v {
            DivisorVerdict::Found(_) => None,
            DivisorVerdict::NonePossible(why) => {
                Some(format!("none possible at ({s}, {t}): {why}"))
            }
            DivisorVerdict::Unknown => Some(format!("none found at ({s}, {t})")),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VnPolicy {
    /// Refuse unless gm non-zero divisors are certified.
    RequireDivisors,
    /// Without certified divisors, accept the block sum only if it equals the
    /// largest regular ideal of the assembled algebra.
    VerifyAgainstOracle,
}

/// An ideal given by its block components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GmIdeal {
    pub parts: BTreeMap<(usize, usize), Subspace>,
    pub total: Subspace,
}

impl GmIdeal {
    pub fn dim(&self) -> usize {
        self.total.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::findim::{examples, jacobson_oracle, vn_regular_element};
    use crate::path_algebra::PathAlgebra;
    use crate::quiver::Quiver;

    fn matrix_units_1_2() -> GammaSystem {
        GammaSystem::matrix_blocks(&[1, 2], &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap()
    }

    fn one_arrow() -> GammaSystem {
        let q = Quiver::from_parts(&["1", "2"], &[("x12", "1", "2")]).unwrap();
        let m = PathAlgebra::new(q).materialize(None, None).unwrap();
        GammaSystem::from_path_algebra(&m).unwrap()
    }

    #[test]
    fn assembly() {
        let k = GammaSystem::diagonal(&[examples::truncated_polynomial(1)]).unwrap();
        assert_eq!(k.assemble().dim(), 1);
        let s = matrix_units_1_2();
        assert_eq!(s.assemble().dim(), 9);
        assert!(crate::findim::prime_bruteforce(s.assemble(), 64).unwrap());
        let upper = GammaSystem::matrix_blocks(&[1, 2], &[(0, 0), (0, 1), (1, 1)]).unwrap();
        assert_eq!(upper.assemble().dim(), 7);
    }

    #[test]
    fn pattern_must_compose() {
        // A_12 A_21 lands in the missing A_11
        let bad = GammaSystem::matrix_blocks(&[1, 1], &[(0, 1), (1, 0), (1, 1)]);
        assert!(bad.is_err());
    }

    #[test]
    fn gm_units() {
        let s = matrix_units_1_2();
        let u = s.find_gm_unit().unwrap();
        assert_eq!(
            u[1],
            SparseVec::from_pairs([
                (s.assemble().index_of("m22_11").unwrap(), Cyclotomic::one()),
                (s.assemble().index_of("m22_22").unwrap(), Cyclotomic::one())
            ])
        );
        let p = one_arrow();
        let u = p.find_gm_unit().unwrap();
        assert_eq!(p.assemble().literal(&u[0]), "e(1)");
        // x k[x]/(x^3): no unit
        let names = vec!["x".to_string(), "x2".to_string()];
        let nonunital = FinDimAlgebra::from_fn(names, |i, j| {
            if i + j == 0 {
                SparseVec::unit(1)
            } else {
                SparseVec::new()
            }
        })
        .unwrap();
        let d = GammaSystem::diagonal(&[nonunital]).unwrap();
        assert!(d.find_gm_unit().is_none());
    }

    #[test]
    fn divisors() {
        let p = one_arrow();
        let rep = p.gm_nonzero_divisor(Side::Left, 8, 0);
        assert!(matches!(
            rep.verdicts[&(1, 0)],
            DivisorVerdict::NonePossible(_)
        ));
        assert!(!rep.all_found());

        let s = matrix_units_1_2();
        let rep = s.gm_nonzero_divisor(Side::Left, 8, 0);
        assert!(matches!(
            rep.verdicts[&(0, 1)],
            DivisorVerdict::NonePossible(_)
        ));

        let sq = GammaSystem::tensor_matrix(&examples::matrix_algebra(2), 2).unwrap();
        let rep = sq.gm_nonzero_divisor(Side::Right, 8, 0);
        assert!(rep.all_found());
    }

    #[test]
    fn radical_formulas() {
        let upper = GammaSystem::matrix_blocks(&[1, 2], &[(0, 0), (0, 1), (1, 1)]).unwrap();
        let f = upper
            .gm_radical_formula(RadicalKind::Jacobson, VnPolicy::RequireDivisors, 0)
            .unwrap();
        assert_eq!(f.total, upper.block_subspace(0, 1));
        assert_eq!(jacobson_oracle(upper.assemble()).unwrap().radical, f.total);
        assert_eq!(upper.project(&f.total, 0, 1), upper.block_subspace(0, 1));

        let s = matrix_units_1_2();
        assert!(matches!(
            s.gm_radical_formula(RadicalKind::Vn, VnPolicy::RequireDivisors, 0),
            Err(Error::NotApplicable(_))
        ));
        let vn = s
            .gm_radical_formula(RadicalKind::Vn, VnPolicy::VerifyAgainstOracle, 0)
            .unwrap();
        assert_eq!(vn.dim(), 9);

        let p = one_arrow();
        assert!(matches!(
            p.gm_radical_formula(RadicalKind::Vn, VnPolicy::VerifyAgainstOracle, 0),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn diagonal_radical_is_direct_sum() {
        let d = GammaSystem::diagonal(&[
            examples::truncated_polynomial(2),
            examples::upper_triangular(2),
        ])
        .unwrap();
        let f = d
            .gm_radical_formula(RadicalKind::Jacobson, VnPolicy::RequireDivisors, 0)
            .unwrap();
        assert_eq!(f.dim(), 2);
        assert_eq!(jacobson_oracle(d.assemble()).unwrap().radical, f.total);
    }

    #[test]
    fn matrices_over_dual_numbers() {
        let r = examples::truncated_polynomial(2);
        for n in 1..=3 {
            let s = GammaSystem::tensor_matrix(&r, n).unwrap();
            let f = s
                .gm_radical_formula(RadicalKind::Jacobson, VnPolicy::RequireDivisors, 0)
                .unwrap();
            let expected = Subspace::spanned_by(
                s.assemble().dim(),
                (0..s.assemble().dim())
                    .filter(|k| s.assemble().names()[*k].starts_with("x@"))
                    .map(SparseVec::unit),
            );
            assert_eq!(f.total, expected);
            assert_eq!(jacobson_oracle(s.assemble()).unwrap().radical, expected);
        }
        let m = GammaSystem::tensor_matrix(&examples::truncated_polynomial(1), 3).unwrap();
        let vn = m
            .gm_radical_formula(RadicalKind::Vn, VnPolicy::RequireDivisors, 0)
            .unwrap();
        assert_eq!(vn.dim(), 9);
    }

    #[test]
    fn regular_inverse_can_be_taken_inside_the_ideal() {
        // x = x y x with y ambient gives y' = y x y with x = x y' x
        let s = matrix_units_1_2();
        let a = s.assemble();
        let x = SparseVec::unit(a.index_of("m12_11").unwrap());
        let y = vn_regular_element(a, &x).unwrap();
        let y2 = a.mul(&a.mul(&y, &x), &y);
        assert_eq!(a.mul(&a.mul(&x, &y2), &x), x);
        let ideal = a.ideal_generated(&[x]);
        assert!(ideal.contains(&y2));
    }

    #[test]
    fn ideals_are_gm_ideals_with_a_gm_unit() {
        let s = matrix_units_1_2();
        let a = s.assemble();
        let b = a.ideal_generated(&[SparseVec::unit(0)]);
        assert_eq!(s.gm_closure(&b), b);
        assert!(s.is_graded(&b, |i, j| (j + 2 - i) % 2));
    }

    #[test]
    fn parse_system_file() {
        let text = "\
gmring example
index 1 2
block 1 1 dim=1 basis=a
block 1 2 dim=1 basis=x
block 2 2 dim=1 basis=b
mu 1 1 1 : a a -> a
mu 1 1 2 : a x -> x
mu 1 2 2 : x b -> x
mu 2 2 2 : b b -> b
";
        let s = GammaSystem::parse(text).unwrap();
        assert_eq!(s.assemble().dim(), 3);
        let r = jacobson_oracle(s.assemble()).unwrap().radical;
        assert_eq!(r, s.block_subspace(0, 1));
        let bad = text.replace("mu 2 2 2 : b b -> b", "mu 2 2 2 : b b -> a");
        assert_eq!(
            GammaSystem::parse(&bad).unwrap_err(),
            Error::parse(9, "`a` is not in the target block")
        );
        let nonassoc = text.replace("mu 1 2 2 : x b -> x", "mu 1 2 2 : x b -> 2*x");
        assert!(matches!(
            GammaSystem::parse(&nonassoc),
            Err(Error::NotAssociative(..))
        ));
    }

    #[test]
    fn parse_single_algebra() {
        let text = "algebra dual\nbasis e,x\nmu : e e -> e\nmu : e x -> x\nmu : x e -> x\n";
        let s = GammaSystem::parse(text).unwrap();
        assert_eq!(s.index(), ["1"]);
        let r = jacobson_oracle(s.assemble()).unwrap().radical;
        assert_eq!(r.dim(), 1);
        assert!(r.contains(&SparseVec::unit(1)));
        assert!(matches!(
            GammaSystem::parse("algebra a\nindex 1 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        let twice = "algebra n\nbasis x\nmu : x x -> x\nbasis y\n";
        assert_eq!(
            GammaSystem::parse(twice).unwrap_err(),
            Error::parse(4, "basis declared twice")
        );
    }
}
