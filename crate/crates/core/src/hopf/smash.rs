//! Smash products `R # kC`, the decomposition `H = k(D, ρ) # kC` and the
//! radical of untwisted `H`.

use std::sync::Arc;

use super::{FiniteGroup, HopfAlgebra, Letter};
use crate::error::{Error, Result};
use crate::findim::{jacobson_oracle, largest_nilpotent_check, FinDimAlgebra};
use crate::linalg::{rank, SparseVec, Subspace};
use crate::path_algebra::{MaterializedAlgebra, PathAlgebra, RelationMode, RelationSet};
use crate::quiver::Quiver;
use crate::scalar::Cyclotomic;

/// A linear action of a finite group on an algebra, by images of basis vectors.
#[derive(Clone, Debug)]
pub struct GroupAction {
    group: Arc<FiniteGroup>,
    /// `images[g][u] = g·u`
    images: Vec<Vec<SparseVec>>,
}

impl GroupAction {
    pub fn new(group: Arc<FiniteGroup>, images: Vec<Vec<SparseVec>>) -> Result<Self> {
        if images.len() != group.order() {
            return Err(Error::ModuleAlgebra(format!(
                "{} images for {} group elements",
                images.len(),
                group.order()
            )));
        }
        Ok(GroupAction { group, images })
    }

    /// `g·u = w(g, u) u` on basis vectors.
    pub fn diagonal(
        group: Arc<FiniteGroup>,
        dim: usize,
        weight: impl Fn(usize, usize) -> Cyclotomic,
    ) -> Self {
        let images = (0..group.order())
            .map(|g| {
                (0..dim)
                    .map(|u| SparseVec::single(u, weight(g, u)))
                    .collect()
            })
            .collect();
        GroupAction { group, images }
    }

    pub fn trivial(group: Arc<FiniteGroup>, dim: usize) -> Self {
        Self::diagonal(group, dim, |_, _| Cyclotomic::one())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn act(&self, g: usize, v: &SparseVec) -> SparseVec {
        v.iter().fold(SparseVec::new(), |acc, (u, c)| {
            acc.add_scaled(&self.images[g][u], c)
        })
    }

    /// Group action axioms and `g·(uv) = (g·u)(g·v)`, `g·1 = 1`.
    pub fn check_module_algebra(&self, base: &FinDimAlgebra) -> Result<()> {
        let grp = &self.group;
        let d = base.dim();
        let fail = |w: String| Err(Error::ModuleAlgebra(w));
        for g in 0..grp.order() {
            if self.images[g].len() != d {
                return fail(format!(
                    "{} images for a base of dimension {d}",
                    self.images[g].len()
                ));
            }
        }
        for u in 0..d {
            let e = SparseVec::unit(u);
            if self.act(grp.identity(), &e) != e {
                return fail(format!("1·{} ≠ {}", base.names()[u], base.names()[u]));
            }
            for g in 0..grp.order() {
                for h in 0..grp.order() {
                    if self.act(grp.mul(g, h), &e) != self.act(g, &self.act(h, &e)) {
                        return fail(format!(
                            "({} {})·{}",
                            grp.name(g),
                            grp.name(h),
                            base.names()[u]
                        ));
                    }
                }
            }
        }
        for g in 0..grp.order() {
            if let Some(one) = base.unit() {
                if self.act(g, one) != *one {
                    return fail(format!("{}·1 ≠ 1", grp.name(g)));
                }
            }
            for u in 0..d {
                for v in 0..d {
                    let l = self.act(g, base.basis_product(u, v));
                    let r = base.mul(&self.images[g][u], &self.images[g][v]);
                    if l != r {
                        return fail(format!(
                            "{}·({} {}) = {} but ({}·{})({}·{}) = {}",
                            grp.name(g),
                            base.names()[u],
                            base.names()[v],
                            base.literal(&l),
                            grp.name(g),
                            base.names()[u],
                            grp.name(g),
                            base.names()[v],
                            base.literal(&r)
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `R # kC` on `R ⊗ kC` with `(u # g)(v # h) = u (g·v) # gh`; basis `u # g`
/// at position `u * |C| + g`.
pub fn smash_product(base: &FinDimAlgebra, action: &GroupAction) -> Result<FinDimAlgebra> {
    action.check_module_algebra(base)?;
    let grp = action.group();
    let n = grp.order();
    let d = base.dim();
    let names = (0..d * n)
        .map(|k| format!("{}#{}", base.names()[k / n], grp.name(k % n)))
        .collect();
    FinDimAlgebra::from_fn(names, |x, y| {
        let (u, g) = (x / n, x % n);
        let (v, h) = (y / n, y % n);
        let gv = &action.images[g][v];
        let prod = base.mul(&SparseVec::unit(u), gv);
        let gh = grp.mul(g, h);
        prod.map_indices(|w| w * n + gh)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmashIsoReport {
    pub dim: usize,
    pub pairs_checked: usize,
    pub bijective: bool,
    pub failures: usize,
    pub witness: Option<String>,
}

impl SmashIsoReport {
    pub fn holds(&self) -> bool {
        self.bijective && self.failures == 0
    }
}

/// `k(D, ρ)` for one vertex with loops `X1..Xt`, `ρ` the commutation and
/// nilpotency relations of `H`, and the diagonal `C`-action
/// `h·X^p = Π c*_k(h^{-1})^{p_k} X^p`.
pub fn quantum_base(
    h: &HopfAlgebra,
) -> Result<(MaterializedAlgebra, GroupAction, Vec<Vec<usize>>)> {
    let params = h.params();
    let t = params.t();
    let mut q = Quiver::new();
    q.add_vertex("v")?;
    for i in 0..t {
        q.add_arrow(&format!("X{}", i + 1), "v", "v")?;
    }
    let pa = PathAlgebra::new(q);
    let m = if t == 0 {
        pa.materialize(None, None)?
    } else {
        let xs: Vec<_> = (0..t)
            .map(|i| pa.arrow_element(&format!("X{}", i + 1)))
            .collect::<Result<_>>()?;
        let mut gens = Vec::new();
        for i in 0..t {
            for j in i + 1..t {
                let ji = xs[j].mul(&xs[i])?;
                let ij = xs[i].mul(&xs[j])?;
                gens.push(ji.sub(&ij.scale(params.q(j, i))));
            }
            let mut pow = xs[i].clone();
            for _ in 1..params.n[i] {
                pow = pow.mul(&xs[i])?;
            }
            gens.push(pow);
        }
        let exponent = params.n.iter().map(|&n| n as usize - 1).sum::<usize>() + 1;
        // X_i^1 is a relation of length one when n_i = 1
        let mode = if params.n.contains(&1) {
            RelationMode::Weak
        } else {
            RelationMode::Admissible
        };
        let rels = RelationSet::new(gens, exponent.max(2), mode);
        pa.materialize(Some(&rels), None)?
    };
    let words: Vec<Vec<usize>> = m
        .basis_paths()
        .iter()
        .map(|p| {
            p.arrows()
                .iter()
                .map(|&a| pa.arrow_name(a)[1..].parse::<usize>().unwrap() - 1)
                .collect()
        })
        .collect();
    let grp = params.group.clone();
    let action = GroupAction::diagonal(grp.clone(), m.dim(), |g, u| {
        let ginv = grp.inv(g);
        words[u].iter().fold(Cyclotomic::one(), |acc, &i| {
            acc * params.cstar[i].eval(ginv)
        })
    });
    Ok((m, action, words))
}

/// Checks that `Φ: X^p # g ↦ X^p g` from `k(D, ρ) # kC` is a bijective
/// algebra map, on every pair of basis elements.
pub fn verify_smash_iso(h: &HopfAlgebra) -> Result<SmashIsoReport> {
    if !h.params().is_untwisted() {
        return Err(Error::Precondition(
            "the smash decomposition needs a = 0 and b = 0".into(),
        ));
    }
    let (base, action, words) = quantum_base(h)?;
    let s = smash_product(&base.algebra, &action)?;
    let n = h.params().group.order();
    let phi: Vec<SparseVec> = (0..s.dim())
        .map(|k| {
            let mut w: Vec<Letter> = words[k / n].iter().map(|&i| Letter::X(i)).collect();
            w.push(Letter::G(k % n));
            h.normal_form(&w)
        })
        .collect();
    let map = |v: &SparseVec| {
        v.iter()
            .fold(SparseVec::new(), |acc, (k, c)| acc.add_scaled(&phi[k], c))
    };
    let bijective = s.dim() == h.dim() && rank(&phi, h.dim()) == h.dim();
    let mut failures = 0;
    let mut witness = None;
    for x in 0..s.dim() {
        for y in 0..s.dim() {
            let l = map(s.basis_product(x, y));
            let r = h.mul(&phi[x], &phi[y]);
            if l != r {
                failures += 1;
                witness.get_or_insert_with(|| format!("Φ({} {})", s.names()[x], s.names()[y]));
            }
        }
    }
    Ok(SmashIsoReport {
        dim: s.dim(),
        pairs_checked: s.dim() * s.dim(),
        bijective,
        failures,
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalCheck {
    /// `span{X^p g : p ≠ 0}`
    pub predicted: Subspace,
    /// Trace-form radical; `None` above the oracle bound.
    pub oracle: Option<Subspace>,
    /// Whether the predicted ideal is nilpotent and equals the trace radical.
    pub nilpotent_equals_radical: Option<bool>,
}

impl RadicalCheck {
    pub fn equal(&self) -> Option<bool> {
        self.oracle.as_ref().map(|o| *o == self.predicted)
    }

    pub fn verified(&self) -> bool {
        self.equal() == Some(true) && self.nilpotent_equals_radical == Some(true)
    }
}

/// The radical of untwisted `H` as the ideal generated by the `X_i`, compared
/// with the trace-form oracle when `dim H ≤ max_dim`.
pub fn radical_check(h: &HopfAlgebra, max_dim: usize) -> Result<RadicalCheck> {
    if !h.params().is_untwisted() {
        return Err(Error::Precondition(
            "the radical description needs a = 0 and b = 0".into(),
        ));
    }
    let predicted = h.augmentation_span();
    if h.dim() > max_dim {
        return Ok(RadicalCheck {
            predicted,
            oracle: None,
            nilpotent_equals_radical: None,
        });
    }
    let oracle = jacobson_oracle(h.algebra())?;
    if !oracle.verified() {
        return Err(Error::Invalid(
            "trace-form oracle failed its self-checks".into(),
        ));
    }
    let nil = largest_nilpotent_check(h.algebra(), &predicted)?;
    Ok(RadicalCheck {
        predicted,
        oracle: Some(oracle.radical),
        nilpotent_equals_radical: Some(nil.nilpotent && nil.equals_radical),
    })
}
