use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use gmpath::hopf::{Character, FiniteGroup, HopfAlgebra, HopfParams, Letter};
use gmpath::path_algebra::{GeneralizedPath, PathAlgebra, PathElement};
use gmpath::quiver::{self, random, Quiver};
use gmpath::{Cyclotomic, SparseVec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

// Sums of rational multiples of roots of unity of small mixed orders, so that
// lifting between conductors is exercised.
fn scalar() -> impl Strategy<Value = Cyclotomic> {
    let term = (
        prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 8, 12]),
        0i64..12,
        -4i64..=4,
        1i64..=3,
    );
    prop::collection::vec(term, 0..4).prop_map(|terms| {
        terms
            .into_iter()
            .fold(Cyclotomic::zero(), |acc, (n, k, num, den)| {
                acc + Cyclotomic::root_of_unity(n, k) * Cyclotomic::from_frac(num, den)
            })
    })
}

proptest! {
    #[test]
    fn scalar_field_axioms(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x * &Cyclotomic::one(), x.clone());
        if x.is_zero() {
            prop_assert!(x.inv().is_err());
        } else {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn roots_of_unity_have_their_order(n in 1u32..=12, k in 0i64..24) {
        let z = Cyclotomic::root_of_unity(n, k);
        let g = num_integer::gcd(k.rem_euclid(n as i64) as u64, n as u64);
        let order = if g == 0 { 1 } else { n as u64 / g };
        prop_assert_eq!(z.primitive_root_order(), Some(order));
        prop_assert!(z.pow(order).is_one());
    }
}

fn seeded_quiver(seed: u64, acyclic: bool) -> Quiver {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if acyclic {
        random::acyclic(&mut rng, 5, 7)
    } else {
        random::digraph(&mut rng, 7, 12)
    }
}

fn combination(
    alg: &PathAlgebra,
    paths: &[GeneralizedPath],
    picks: &[(usize, i64)],
) -> PathElement {
    picks.iter().fold(alg.zero(), |acc, &(k, c)| {
        acc.add(
            &alg.path(paths[k % paths.len()].clone())
                .scale(&Cyclotomic::from_int(c)),
        )
    })
}

fn bfs_reach(q: &Quiver) -> Vec<Vec<bool>> {
    let n = q.vertex_count();
    (0..n)
        .map(|s| {
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for a in q.arrows().iter().filter(|a| a.source == v) {
                    if !seen[a.target] {
                        seen[a.target] = true;
                        queue.push_back(a.target);
                    }
                }
            }
            seen
        })
        .collect()
}

fn is_partition(parts: &[Vec<usize>], n: usize) -> bool {
    let mut all: Vec<usize> = parts.iter().flatten().copied().collect();
    all.sort();
    all == (0..n).collect::<Vec<_>>()
}

fn refines(fine: &[Vec<usize>], coarse: &[Vec<usize>]) -> bool {
    fine.iter().all(|f| {
        coarse.iter().any(|c| {
            let c: BTreeSet<_> = c.iter().collect();
            f.iter().all(|v| c.contains(v))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn path_multiplication_is_associative(
        seed in any::<u64>(),
        picks in prop::collection::vec(prop::collection::vec((0usize..64, -3i64..=3), 1..4), 3),
    ) {
        let q = seeded_quiver(seed, true);
        let bound = q.vertex_count() + 1;
        let alg = PathAlgebra::new(q);
        let paths = alg.paths_below(bound);
        let x = combination(&alg, &paths, &picks[0]);
        let y = combination(&alg, &paths, &picks[1]);
        let z = combination(&alg, &paths, &picks[2]);
        let left = x.mul(&y).unwrap().mul(&z).unwrap();
        let right = x.mul(&y.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        // distributivity over the sum
        let lhs = x.mul(&y.add(&z)).unwrap();
        let rhs = x.mul(&y).unwrap().add(&x.mul(&z).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reachability_matches_breadth_first_search(seed in any::<u64>()) {
        let q = seeded_quiver(seed, false);
        let oracle = bfs_reach(&q);
        prop_assert_eq!(q.connectivity().reach_matrix(), oracle.clone());
        prop_assert_eq!(quiver::reach_by_bounded_walks(&q), oracle);
    }

    #[test]
    fn partitions_refine(seed in any::<u64>()) {
        let q = seeded_quiver(seed, false);
        let n = q.vertex_count();
        let r = q.connectivity();
        let reach = bfs_reach(&q);
        prop_assert!(is_partition(&r.strong, n));
        prop_assert!(is_partition(&r.weak, n));
        prop_assert!(refines(&r.strong, &r.weak));
        for class in &r.strong {
            for &u in class {
                for &v in class {
                    prop_assert!(reach[u][v] && reach[v][u]);
                }
            }
        }
        // unilateral components may overlap; they cover the vertices, sit between
        // strong and weak, and are maximal sets totally ordered by reachability
        let uni = quiver::unilateral_components(&q);
        prop_assert_eq!(uni.iter().flatten().collect::<BTreeSet<_>>().len(), n);
        prop_assert!(refines(&r.strong, &uni));
        prop_assert!(refines(&uni, &r.weak));
        let comparable = |u: usize, v: usize| reach[u][v] || reach[v][u];
        for class in &uni {
            for &u in class {
                for &v in class {
                    prop_assert!(comparable(u, v));
                }
            }
            for w in (0..n).filter(|w| !class.contains(w)) {
                prop_assert!(!class.iter().all(|&u| comparable(u, w)));
            }
        }
        // regular pairs are exactly the one-way reachable pairs
        let expected: BTreeSet<(usize, usize)> = (0..n)
            .flat_map(|s| (0..n).map(move |t| (s, t)))
            .filter(|&(s, t)| reach[s][t] && !reach[t][s])
            .collect();
        prop_assert_eq!(quiver::regular_pairs(&q), expected);
    }
}

// Every parameter set over a cyclic group of order ≤ 6 with t ≤ 2, n_i ≤ 3 and
// b_12 ∈ {0, 1} that passes validation.
fn small_params() -> Vec<HopfParams> {
    let mut out = Vec::new();
    for m in 1u64..=6 {
        let group = Arc::new(FiniteGroup::cyclic_product(&[m]).unwrap());
        let chi = |e: u64| Character::from_exponents(&group, &[e as i64]).unwrap();
        let elt = |e: u64| group.from_exponents(&[e]).unwrap();
        let order = |k: u64| m / num_integer::gcd(k % m, m);
        for c1 in 0..m {
            for e1 in 0..m {
                let n1 = order(c1 * e1);
                if n1 > 3 {
                    continue;
                }
                for a1 in 0..2u8 {
                    let p = HopfParams {
                        group: group.clone(),
                        n: vec![n1 as u32],
                        c: vec![elt(c1)],
                        cstar: vec![chi(e1)],
                        a: vec![a1],
                        b: vec![vec![Cyclotomic::zero()]],
                    };
                    if p.validate().is_empty() {
                        out.push(p);
                    }
                }
                for c2 in 0..m {
                    for e2 in 0..m {
                        let n2 = order(c2 * e2);
                        if n2 > 3 {
                            continue;
                        }
                        for b12 in 0..2i64 {
                            let q21 = chi(e2).eval(elt(c1)).clone();
                            let b12 = Cyclotomic::from_int(b12);
                            let b21 = match q21.inv() {
                                Ok(inv) => -(&b12 * &inv),
                                Err(_) => continue,
                            };
                            let p = HopfParams {
                                group: group.clone(),
                                n: vec![n1 as u32, n2 as u32],
                                c: vec![elt(c1), elt(c2)],
                                cstar: vec![chi(e1), chi(e2)],
                                a: vec![0, 0],
                                b: vec![
                                    vec![Cyclotomic::zero(), b12],
                                    vec![b21, Cyclotomic::zero()],
                                ],
                            };
                            if p.validate().is_empty() {
                                out.push(p);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn word(h: &HopfAlgebra, k: usize) -> Vec<Letter> {
    let (p, g) = h.monomial(k);
    let mut w: Vec<Letter> = p
        .iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat_n(Letter::X(i), e as usize))
        .collect();
    w.push(Letter::G(g));
    w
}

#[test]
fn small_parameter_space_is_populated() {
    let all = small_params();
    assert!(all.iter().any(|p| p.t() == 2 && !p.b[0][1].is_zero()));
    assert!(all.iter().any(|p| p.a.contains(&1)));
    assert!(all.iter().any(|p| p.n.contains(&3)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hopf_normal_forms_are_associative(p in prop::sample::select(small_params())) {
        let h = HopfAlgebra::new(p.clone()).unwrap();
        let expected: usize = p.group.order() * p.n.iter().map(|&n| n as usize).product::<usize>();
        prop_assert_eq!(h.dim(), expected);
        let d = h.dim();
        let e = |k: usize| SparseVec::unit(k);
        for x in 0..d {
            for y in 0..d {
                let xy = h.mul(&e(x), &e(y));
                let mut w = word(&h, x);
                w.extend(word(&h, y));
                prop_assert_eq!(&h.normal_form(&w), &xy, "{} · {}", h.name(x), h.name(y));
                for z in 0..d {
                    let l = h.mul(&xy, &e(z));
                    let r = h.mul(&e(x), &h.mul(&e(y), &e(z)));
                    prop_assert_eq!(l, r, "({} {}) {}", h.name(x), h.name(y), h.name(z));
                }
            }
        }
    }
}
