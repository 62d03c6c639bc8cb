//! The families of pointed Hopf algebras of prime-power dimension.

use std::sync::Arc;

use super::{Character, FiniteGroup, HopfAlgebra, HopfParams};
use crate::error::{Error, Result};
use crate::scalar::Cyclotomic;

#[derive(Clone, Debug)]
pub enum Family {
    /// The group algebra `k Z_{p^m}`.
    GroupAlgebra { exponent: u32 },
    /// The Taft algebra over `Z_p`.
    Taft,
    /// Rank two: `C = (g)` of order `p`, `c = (g, g^i)`, `c* = (χ, χ^{-i})`.
    Rank2 { i: u64 },
    /// Rank two, linked: `C = (g)` of order `p`, `c = (g, g)`, `c* = (χ, χ^{-1})`, `a = 0`, `b_12 = 1`.
    Rank2Linked,
    /// `t = 1` over a nonabelian group, `c` central, `a = 0`.
    Central {
        group: FiniteGroup,
        c: usize,
        cstar: Character,
    },
    /// As [`Family::Central`] with `a = 1`.
    CentralLifted {
        group: FiniteGroup,
        c: usize,
        cstar: Character,
    },
}

impl Family {
    pub fn label(&self) -> &'static str {
        match self {
            Family::GroupAlgebra { .. } => "group algebra",
            Family::Taft => "taft",
            Family::Rank2 { .. } => "rank two",
            Family::Rank2Linked => "rank two linked",
            Family::Central { .. } => "central",
            Family::CentralLifted { .. } => "central lifted",
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

fn is_power_of(mut d: usize, p: u64) -> bool {
    let p = p as usize;
    if d == 0 {
        return false;
    }
    while d.is_multiple_of(p) {
        d /= p;
    }
    d == 1
}

fn cyclic_p(p: u64) -> Result<(FiniteGroup, Character, usize)> {
    let group = FiniteGroup::cyclic_product(&[p])?;
    let chi = Character::from_exponents(&group, &[1])?;
    let g = group.from_exponents(&[1]).unwrap();
    Ok((group, chi, g))
}

fn zeros(t: usize) -> Vec<Vec<Cyclotomic>> {
    vec![vec![Cyclotomic::zero(); t]; t]
}

/// Parameters of a family member at the prime `p`, before validation.
pub fn family_params(family: &Family, p: u64) -> Result<HopfParams> {
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    match family {
        Family::GroupAlgebra { exponent } => {
            let order = p
                .checked_pow(*exponent)
                .ok_or_else(|| Error::Invalid("group order overflows".into()))?;
            Ok(HopfParams::group_algebra(FiniteGroup::cyclic_product(&[
                order,
            ])?))
        }
        Family::Taft => HopfParams::taft(p as u32),
        Family::Rank2 { i } => {
            if *i < 1 || *i > p - 1 {
                return Err(Error::Invalid(format!("need 1 <= i <= {}, got {i}", p - 1)));
            }
            let (group, chi, g) = cyclic_p(p)?;
            let gi = group.pow(g, *i);
            Ok(HopfParams {
                group: Arc::new(group),
                n: vec![p as u32; 2],
                c: vec![g, gi],
                cstar: vec![chi.clone(), chi.pow(-(*i as i64))],
                a: vec![0, 0],
                b: zeros(2),
            })
        }
        Family::Rank2Linked => {
            let (group, chi, g) = cyclic_p(p)?;
            let chi_inv = chi.pow(-1);
            let b12 = Cyclotomic::one();
            // b_21 = -b_12 / c*_2(c_1)
            let b21 = -(&b12 * &chi_inv.eval(g).inv()?);
            Ok(HopfParams {
                group: Arc::new(group),
                n: vec![p as u32; 2],
                c: vec![g, g],
                cstar: vec![chi, chi_inv],
                a: vec![0, 0],
                b: vec![vec![Cyclotomic::zero(), b12], vec![b21, Cyclotomic::zero()]],
            })
        }
        Family::Central { group, c, cstar } | Family::CentralLifted { group, c, cstar } => {
            if group.is_abelian() {
                return Err(Error::Invalid(
                    "the central families need a nonabelian group".into(),
                ));
            }
            if !is_power_of(group.order(), p) {
                return Err(Error::Invalid(format!(
                    "|G| = {} is not a power of {p}",
                    group.order()
                )));
            }
            let a = u8::from(matches!(family, Family::CentralLifted { .. }));
            Ok(HopfParams {
                group: Arc::new(group.clone()),
                n: vec![p as u32],
                c: vec![*c],
                cstar: vec![cstar.clone()],
                a: vec![a],
                b: zeros(1),
            })
        }
    }
}

/// Builds the family member with validated parameters; its dimension must be a power of `p`.
pub fn classify_instance(family: &Family, p: u64) -> Result<HopfAlgebra> {
    let h = HopfAlgebra::new(family_params(family, p)?)?;
    if !is_power_of(h.dim(), p) {
        return Err(Error::Invalid(format!(
            "dimension {} is not a power of {p}",
            h.dim()
        )));
    }
    Ok(h)
}

/// Nonabelian members at `p = 2`.
pub mod examples {
    use super::*;

    fn d4_with_cyclic(m: u64) -> (FiniteGroup, usize, Character) {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let z = FiniteGroup::cyclic_product(&[m]).unwrap();
        let g = FiniteGroup::direct_product(&d4, &z).unwrap();
        let r = g.element("r").unwrap();
        let s = g.element("s").unwrap();
        let c = g.element("g").unwrap();
        let cstar = Character::from_generators(
            &g,
            &[
                (r, Cyclotomic::one()),
                (s, Cyclotomic::one()),
                (c, Cyclotomic::from_int(-1)),
            ],
        )
        .unwrap();
        (g, c, cstar)
    }

    /// `G = D_4 × Z_2`, `c` the generator of `Z_2`, `c*` trivial on `D_4` and `-1` on `c`.
    pub fn central() -> Family {
        let (group, c, cstar) = d4_with_cyclic(2);
        Family::Central { group, c, cstar }
    }

    /// `G = D_4 × Z_4`, `c` the generator of `Z_4`, `c*(c) = -1`, `X^2 = c^2 - 1`.
    pub fn central_lifted() -> Family {
        let (group, c, cstar) = d4_with_cyclic(4);
        Family::CentralLifted { group, c, cstar }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_members() {
        assert_eq!(
            classify_instance(&Family::GroupAlgebra { exponent: 3 }, 2)
                .unwrap()
                .dim(),
            8
        );
        assert_eq!(classify_instance(&Family::Taft, 2).unwrap().dim(), 4);
        assert_eq!(
            classify_instance(&Family::Rank2 { i: 2 }, 3).unwrap().dim(),
            27
        );
        assert_eq!(
            classify_instance(&Family::Rank2Linked, 3).unwrap().dim(),
            27
        );
        assert!(matches!(
            classify_instance(&Family::Rank2 { i: 3 }, 3),
            Err(Error::Invalid(_))
        ));
        assert!(matches!(
            classify_instance(&Family::Taft, 4),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn linked_member_at_two_violates_linking_group() {
        match classify_instance(&Family::Rank2Linked, 2) {
            Err(Error::InvalidParams(v)) => {
                assert!(v.iter().any(|s| s.starts_with("linking-group")), "{v:?}")
            }
            other => panic!("expected a parameter violation, got {other:?}"),
        }
    }

    #[test]
    fn nonabelian_members() {
        let h = classify_instance(&examples::central(), 2).unwrap();
        assert_eq!(h.dim(), 32);
        let h = classify_instance(&examples::central_lifted(), 2).unwrap();
        assert_eq!(h.dim(), 64);
    }
}
