mod common;

use std::collections::BTreeSet;

use addiso_core::kspace::{
    all_points, enumerate_invertible, enumerate_subspaces, gaussian_binomial, gl_order, hyperplanes_containing,
    point_index, span, KMatrix, KSubspace,
};
use addiso_core::{FieldK, KElem};
use common::random_subspace;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// q-Pascal recursion, independent of the product formula.
fn q_pascal(k: usize, r: usize, q: u128) -> u128 {
    if r == 0 || r == k {
        return 1;
    }
    if r > k {
        return 0;
    }
    q_pascal(k - 1, r - 1, q) + q.pow(r as u32) * q_pascal(k - 1, r, q)
}

/// Point sets of all spans of `r` vectors, collected by brute force.
fn brute_force_subspace_sets(field: &FieldK, k: usize) -> BTreeSet<Vec<usize>> {
    let points = all_points(field, k).unwrap();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    found.insert(vec![0]);
    let mut frontier = found.clone();
    while !frontier.is_empty() {
        let mut next = BTreeSet::new();
        for set in &frontier {
            for v in &points {
                let idx = point_index(field, v);
                if set.contains(&idx) {
                    continue;
                }
                let mut closed: BTreeSet<usize> = BTreeSet::new();
                for &s in set {
                    for c in field.elements().unwrap() {
                        let sv = &points[s];
                        let w: Vec<KElem> = sv.iter().zip(v).map(|(&a, &b)| field.add(a, field.mul(c, b))).collect();
                        closed.insert(point_index(field, &w));
                    }
                }
                let closed: Vec<usize> = closed.into_iter().collect();
                if found.insert(closed.clone()) {
                    next.insert(closed);
                }
            }
        }
        frontier = next;
    }
    found
}

#[test]
fn enumeration_matches_gaussian_binomials() {
    for q in [2u64, 3] {
        let f = FieldK::with_order(q).unwrap();
        for k in 0..=4 {
            for r in 0..=k {
                let subs = enumerate_subspaces(&f, k, Some(r)).unwrap();
                assert_eq!(subs.len() as u128, q_pascal(k, r, q as u128), "q={q} k={k} r={r}");
                assert_eq!(gaussian_binomial(k, r, q), q_pascal(k, r, q as u128));
                let distinct: BTreeSet<&KSubspace> = subs.iter().collect();
                assert_eq!(distinct.len(), subs.len());
                assert!(subs.iter().all(|s| s.dim() == r));
            }
        }
    }
}

#[test]
fn enumeration_matches_brute_force_closure() {
    for (q, kmax) in [(2u64, 4usize), (3, 3)] {
        let f = FieldK::with_order(q).unwrap();
        for k in 1..=kmax {
            let oracle = brute_force_subspace_sets(&f, k);
            let ours: BTreeSet<Vec<usize>> = enumerate_subspaces(&f, k, None)
                .unwrap()
                .iter()
                .map(|s| {
                    let mut pts: Vec<usize> =
                        s.enumerate_points(&f).unwrap().iter().map(|p| point_index(&f, p)).collect();
                    pts.sort();
                    pts
                })
                .collect();
            assert_eq!(ours, oracle, "q={q} k={k}");
        }
    }
}

#[test]
fn general_linear_groups() {
    for (q, n, expected) in [(2u64, 1usize, 1u128), (2, 2, 6), (3, 2, 48), (2, 3, 168)] {
        let f = FieldK::with_order(q).unwrap();
        let gl = enumerate_invertible(&f, n).unwrap();
        assert_eq!(gl.len() as u128, expected);
        assert_eq!(gl_order(n, q), expected);
        let set: BTreeSet<&KMatrix> = gl.iter().collect();
        for g in &gl {
            let inverse_present = gl.iter().any(|h| g.mul(&f, h).unwrap() == KMatrix::identity(n));
            assert!(inverse_present);
            assert!(set.contains(g));
        }
    }
}

#[test]
fn hyperplane_bundles() {
    for q in [2u64, 3] {
        let f = FieldK::with_order(q).unwrap();
        for k in 2..=4 {
            let whole = KSubspace::full(k);
            for s in enumerate_subspaces(&f, k, Some(k - 2)).unwrap() {
                let hs = hyperplanes_containing(&f, &s, &whole).unwrap();
                assert_eq!(hs.len() as u64, q + 1);
                for (i, a) in hs.iter().enumerate() {
                    assert_eq!(a.dim(), k - 1);
                    for b in &hs[i + 1..] {
                        assert_eq!(a.intersect(&f, b).unwrap(), s);
                    }
                }
            }
        }
    }
}

#[test]
fn modular_law_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for q in [2u64, 3] {
        let f = FieldK::with_order(q).unwrap();
        for _ in 0..200 {
            let a = random_subspace(&mut rng, &f, 4);
            let b = random_subspace(&mut rng, &f, 4);
            let c = a.sum(&f, &random_subspace(&mut rng, &f, 4)).unwrap();
            // A ⊆ C  ⇒  A + (B ∩ C) = (A + B) ∩ C
            let lhs = a.sum(&f, &b.intersect(&f, &c).unwrap()).unwrap();
            let rhs = a.sum(&f, &b).unwrap().intersect(&f, &c).unwrap();
            assert_eq!(lhs, rhs);
            let meet = a.intersect(&f, &b).unwrap();
            let join = a.sum(&f, &b).unwrap();
            assert_eq!(join.dim() + meet.dim(), a.dim() + b.dim());
            assert!(join.contains(&f, &a).unwrap() && a.contains(&f, &meet).unwrap());
        }
    }
}

fn arb_vectors() -> impl Strategy<Value = (u64, usize, Vec<Vec<u32>>)> {
    (prop::sample::select(vec![2u64, 3, 4, 5]), 1usize..=4).prop_flat_map(|(q, k)| {
        (Just(q), Just(k), prop::collection::vec(prop::collection::vec(0..q as u32, k), 0..5))
    })
}

proptest! {
    #[test]
    fn span_is_canonical((q, k, rows) in arb_vectors()) {
        let f = FieldK::with_order(q).unwrap();
        let rows: Vec<Vec<KElem>> = rows.iter().map(|r| r.iter().map(|&x| KElem(x)).collect()).collect();
        let s = span(&f, k, &rows).unwrap();
        let mut reversed = rows.clone();
        reversed.reverse();
        prop_assert_eq!(&span(&f, k, &reversed).unwrap(), &s);
        prop_assert_eq!(&span(&f, k, &s.basis_rows()).unwrap(), &s);
        for r in &rows {
            prop_assert!(s.contains_vector(&f, r));
        }
        prop_assert_eq!(s.enumerate_points(&f).unwrap().len() as u128, s.cardinality(&f));
    }
}
