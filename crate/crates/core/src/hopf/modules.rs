//! Representations `(V, ρ_V, f_1..f_t)` turned into `H`-modules.

use std::collections::VecDeque;

use super::{FiniteGroup, HopfAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseVec};
use crate::scalar::Cyclotomic;

/// A `kC`-module `V` given by one matrix per group element, with linear maps `f_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub dim: usize,
    pub group: Vec<Matrix>,
    pub f: Vec<Matrix>,
}

impl Representation {
    /// Extends generator matrices to the whole group; fails on inconsistent values.
    pub fn from_generators(
        group: &FiniteGroup,
        dim: usize,
        gens: &[(usize, Matrix)],
        f: Vec<Matrix>,
    ) -> Result<Self> {
        let n = group.order();
        let mut mats: Vec<Option<Matrix>> = vec![None; n];
        mats[group.identity()] = Some(Matrix::identity(dim));
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            let mx = mats[x].clone().unwrap();
            for (s, ms) in gens {
                let y = group.mul(x, *s);
                let my = mx.mul(ms);
                match &mats[y] {
                    Some(old) if *old != my => {
                        return Err(Error::Invalid(format!(
                            "generator matrices inconsistent at {}",
                            group.name(y)
                        )))
                    }
                    Some(_) => {}
                    None => {
                        mats[y] = Some(my);
                        queue.push_back(y);
                    }
                }
            }
        }
        let group_mats = mats
            .into_iter()
            .enumerate()
            .map(|(x, m)| {
                m.ok_or_else(|| Error::Invalid(format!("{} not generated", group.name(x))))
            })
            .collect::<Result<_>>()?;
        Ok(Representation {
            dim,
            group: group_mats,
            f,
        })
    }
}

/// A failed relation, with both sides of the matrix identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepViolation {
    pub relation: String,
    pub witness: String,
}

/// The action `X^p g ↦ f^p ρ_V(g)`, verified to be a module structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HModule {
    pub dim: usize,
    action: Vec<Matrix>,
    pub pairs_checked: usize,
}

impl HModule {
    pub fn basis_action(&self, k: usize) -> &Matrix {
        &self.action[k]
    }

    pub fn act(&self, x: &SparseVec) -> Matrix {
        x.iter()
            .fold(Matrix::zeros(self.dim, self.dim), |acc, (k, c)| {
                acc.add(&self.action[k].scale(c))
            })
    }
}

fn show(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|r| {
            let cells: Vec<String> = (0..m.cols()).map(|c| m.get(r, c).to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn check(bad: &mut Vec<RepViolation>, relation: String, l: Matrix, r: Matrix) {
    if l != r {
        bad.push(RepViolation {
            relation,
            witness: format!("{} ≠ {}", show(&l), show(&r)),
        });
    }
}

fn minus(a: &Matrix, b: &Matrix) -> Matrix {
    a.add(&b.scale(&Cyclotomic::from_int(-1)))
}

/// Checks the defining relations of `H` on the matrices, then builds the
/// action and verifies `(xy)·v = x·(y·v)` on all basis pairs.
pub fn representation_to_module(
    h: &HopfAlgebra,
    rep: &Representation,
) -> std::result::Result<HModule, Vec<RepViolation>> {
    let params = h.params();
    let grp = &params.group;
    let t = params.t();
    let d = rep.dim;
    let mut bad = Vec::new();
    let shapes_ok = rep.group.len() == grp.order()
        && rep.f.len() == t
        && rep
            .group
            .iter()
            .chain(&rep.f)
            .all(|m| m.rows() == d && m.cols() == d);
    if !shapes_ok {
        return Err(vec![RepViolation {
            relation: "shape".into(),
            witness: format!(
                "need {} group matrices and {t} maps, all {d}×{d}",
                grp.order()
            ),
        }]);
    }
    let id = Matrix::identity(d);
    check(
        &mut bad,
        "ρ(1) = id".into(),
        rep.group[grp.identity()].clone(),
        id.clone(),
    );
    for g in 0..grp.order() {
        for k in 0..grp.order() {
            check(
                &mut bad,
                format!(
                    "ρ({}) ρ({}) = ρ({})",
                    grp.name(g),
                    grp.name(k),
                    grp.name(grp.mul(g, k))
                ),
                rep.group[g].mul(&rep.group[k]),
                rep.group[grp.mul(g, k)].clone(),
            );
        }
    }
    for i in 0..t {
        for g in 0..grp.order() {
            check(
                &mut bad,
                format!(
                    "f_{} ρ({}) = c*_{}({}) ρ({}) f_{}",
                    i + 1,
                    grp.name(g),
                    i + 1,
                    grp.name(g),
                    grp.name(g),
                    i + 1
                ),
                rep.f[i].mul(&rep.group[g]),
                rep.group[g].mul(&rep.f[i]).scale(params.cstar[i].eval(g)),
            );
        }
        for j in i + 1..t {
            let cc = grp.mul(params.c[i], params.c[j]);
            check(
                &mut bad,
                format!(
                    "f_{} f_{} = c*_{}(c_{}) f_{} f_{} + b_{}{} (ρ(c_{} c_{}) - id)",
                    j + 1,
                    i + 1,
                    j + 1,
                    i + 1,
                    i + 1,
                    j + 1,
                    i + 1,
                    j + 1,
                    i + 1,
                    j + 1
                ),
                rep.f[j].mul(&rep.f[i]),
                rep.f[i]
                    .mul(&rep.f[j])
                    .scale(params.q(j, i))
                    .add(&minus(&rep.group[cc], &id).scale(&params.b[i][j])),
            );
        }
        let cn = grp.pow(params.c[i], params.n[i] as u64);
        check(
            &mut bad,
            format!(
                "f_{}^{} = a_{} (ρ(c_{}^{}) - id)",
                i + 1,
                params.n[i],
                i + 1,
                i + 1,
                params.n[i]
            ),
            rep.f[i].pow(params.n[i] as u64),
            minus(&rep.group[cn], &id).scale(&Cyclotomic::from_int(params.a[i] as i64)),
        );
    }
    if !bad.is_empty() {
        return Err(bad);
    }
    let action: Vec<Matrix> = (0..h.dim())
        .map(|k| {
            let (p, g) = h.monomial(k);
            let mut m = id.clone();
            for (i, &e) in p.iter().enumerate() {
                m = m.mul(&rep.f[i].pow(e as u64));
            }
            m.mul(&rep.group[g])
        })
        .collect();
    let module = HModule {
        dim: d,
        action,
        pairs_checked: h.dim() * h.dim(),
    };
    for x in 0..h.dim() {
        for y in 0..h.dim() {
            let l = module.act(h.algebra().basis_product(x, y));
            let r = module.basis_action(x).mul(module.basis_action(y));
            check(
                &mut bad,
                format!(
                    "({} {})·v = {}·({}·v)",
                    h.name(x),
                    h.name(y),
                    h.name(x),
                    h.name(y)
                ),
                l,
                r,
            );
        }
    }
    if bad.is_empty() {
        Ok(module)
    } else {
        Err(bad)
    }
}

/// The three reference representations of the four-dimensional Taft algebra:
/// the sign character, the two-dimensional block, and `g ↦ 1, x ↦ 1`.
pub mod fixtures {
    use super::*;

    fn c(v: i64) -> Cyclotomic {
        Cyclotomic::from_int(v)
    }

    pub fn sign(group: &FiniteGroup) -> Representation {
        let g = group.from_exponents(&[1]).unwrap();
        Representation::from_generators(
            group,
            1,
            &[(g, Matrix::from_rows(vec![vec![c(-1)]]))],
            vec![Matrix::zeros(1, 1)],
        )
        .unwrap()
    }

    pub fn block(group: &FiniteGroup) -> Representation {
        let g = group.from_exponents(&[1]).unwrap();
        let shift = Matrix::from_rows(vec![vec![c(0), c(0)], vec![c(1), c(0)]]);
        Representation::from_generators(
            group,
            2,
            &[(g, Matrix::diag(vec![c(1), c(-1)]))],
            vec![shift],
        )
        .unwrap()
    }

    pub fn commuting(group: &FiniteGroup) -> Representation {
        let g = group.from_exponents(&[1]).unwrap();
        Representation::from_generators(
            group,
            1,
            &[(g, Matrix::identity(1))],
            vec![Matrix::identity(1)],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::HopfParams;

    #[test]
    fn taft_four_fixtures() {
        let h = HopfAlgebra::new(HopfParams::taft(2).unwrap()).unwrap();
        let grp = h.params().group.clone();
        let m = representation_to_module(&h, &fixtures::sign(&grp)).unwrap();
        assert_eq!(m.pairs_checked, 16);
        let m = representation_to_module(&h, &fixtures::block(&grp)).unwrap();
        assert_eq!(m.act(&h.x(0)), fixtures::block(&grp).f[0]);
        let err = representation_to_module(&h, &fixtures::commuting(&grp)).unwrap_err();
        assert!(
            err.iter()
                .any(|v| v.relation == "f_1 ρ(g) = c*_1(g) ρ(g) f_1"),
            "{err:?}"
        );
        assert!(err.iter().any(|v| v.relation.starts_with("f_1^2")));
    }

    #[test]
    fn regular_representation_is_a_module() {
        // left multiplication on H restricted to the generators
        let h = HopfAlgebra::new(HopfParams::taft(3).unwrap()).unwrap();
        let d = h.dim();
        let left = |x: &SparseVec| {
            let mut m = Matrix::zeros(d, d);
            for col in 0..d {
                for (r, v) in h.mul(x, &SparseVec::unit(col)).iter() {
                    m.set(r, col, v.clone());
                }
            }
            m
        };
        let grp = h.params().group.clone();
        let rep = Representation {
            dim: d,
            group: (0..grp.order())
                .map(|g| left(&h.group_element(g)))
                .collect(),
            f: vec![left(&h.x(0))],
        };
        assert!(representation_to_module(&h, &rep).is_ok());
    }
}
