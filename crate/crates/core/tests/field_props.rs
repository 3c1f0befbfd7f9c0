mod common;

use addiso_core::{FieldL, KElem, LElem};
use common::field;
use proptest::prelude::*;

/// Fields with |L| ≤ 256 used for the exhaustive checks.
fn grid() -> Vec<FieldL> {
    [(2, 1, 2), (2, 2, 2), (2, 1, 3), (3, 1, 2), (2, 4, 2), (2, 1, 8), (5, 1, 2), (3, 2, 2), (13, 1, 2), (7, 1, 1)]
        .iter()
        .map(|&(p, d, n)| field(p, d, n))
        .collect()
}

/// GF(2^n) multiplication with carry-less products reduced by `poly`.
fn clmul_mod(mut a: u64, mut b: u64, poly: u64, n: u32) -> u64 {
    let mut acc = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> n & 1 == 1 {
            a ^= poly;
        }
    }
    acc
}

#[test]
fn binary_fields_match_carryless_oracle() {
    // least irreducibles: x^2+x+1, x^3+x+1, x^4+x+1
    for (n, poly) in [(2usize, 0b111u64), (3, 0b1011), (4, 0b10011)] {
        let l = field(2, 1, n);
        for a in 0..l.order() {
            for b in 0..l.order() {
                let got = l.index_of(&l.mul(&l.from_index(a), &l.from_index(b)));
                assert_eq!(got, clmul_mod(a, b, poly, n as u32), "n = {n}, {a} * {b}");
            }
        }
    }
}

#[test]
fn f9_matches_gaussian_integers_mod_3() {
    // h = x^2 + 1, so α behaves as i
    let l = field(3, 1, 2);
    assert_eq!(l.modulus().iter().map(|c| c.index()).collect::<Vec<_>>(), vec![1, 0, 1]);
    for a in 0..9u64 {
        for b in 0..9u64 {
            let (ar, ai, br, bi) = (a % 3, a / 3, b % 3, b / 3);
            let re = (ar * br + 2 * ai * bi) % 3;
            let im = (ar * bi + ai * br) % 3;
            assert_eq!(l.index_of(&l.mul(&l.from_index(a), &l.from_index(b))), re + 3 * im);
        }
    }
}

#[test]
fn exhaustive_axioms_on_small_fields() {
    for l in grid() {
        let elems = l.elements().unwrap();
        let (zero, one) = (l.zero(), l.one());
        for a in &elems {
            assert_eq!(l.add(a, &zero), *a);
            assert_eq!(l.mul(a, &one), *a);
            assert!(l.add(a, &l.neg(a)).is_zero());
            match l.inv(a) {
                Ok(b) => assert_eq!(l.mul(a, &b), one),
                Err(_) => assert!(a.is_zero()),
            }
            for b in &elems {
                assert_eq!(l.add(a, b), l.add(b, a));
                assert_eq!(l.mul(a, b), l.mul(b, a));
            }
        }
    }
}

#[test]
fn frobenius_fixes_everything() {
    for l in grid() {
        let qn = l.order();
        for a in l.elements().unwrap() {
            assert_eq!(l.pow(&a, qn), a);
        }
    }
}

#[test]
fn nonzero_elements_form_a_cyclic_group() {
    for l in grid() {
        let order = l.order() - 1;
        let has_generator = l.elements().unwrap().iter().filter(|a| !a.is_zero()).any(|g| {
            let mut x = g.clone();
            (1..order).all(|_| {
                let done = x == l.one();
                x = l.mul(&x, g);
                !done
            })
        });
        assert!(has_generator, "{l:?}");
    }
}

fn arb_field() -> impl Strategy<Value = FieldL> {
    prop::sample::select(grid())
}

fn arb_triple() -> impl Strategy<Value = (FieldL, LElem, LElem, LElem)> {
    arb_field().prop_flat_map(|l| {
        let o = l.order();
        (Just(l), 0..o, 0..o, 0..o)
            .prop_map(|(l, a, b, c)| {
                let (a, b, c) = (l.from_index(a), l.from_index(b), l.from_index(c));
                (l, a, b, c)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn associative_and_distributive((l, a, b, c) in arb_triple()) {
        prop_assert_eq!(l.mul(&l.mul(&a, &b), &c), l.mul(&a, &l.mul(&b, &c)));
        prop_assert_eq!(l.add(&l.add(&a, &b), &c), l.add(&a, &l.add(&b, &c)));
        prop_assert_eq!(l.mul(&a, &l.add(&b, &c)), l.add(&l.mul(&a, &b), &l.mul(&a, &c)));
    }

    #[test]
    fn coords_are_k_linear((l, a, b, _c) in arb_triple(), s in 0u32..256) {
        let k = l.subfield();
        let s = k.from_index(s % k.order());
        let lhs = l.coords(&l.add(&l.scale(s, &a), &b));
        let rhs: Vec<KElem> = l
            .coords(&a)
            .iter()
            .zip(l.coords(&b))
            .map(|(&x, y)| k.add(k.mul(s, x), y))
            .collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn uncoords_round_trips((l, a, _b, _c) in arb_triple()) {
        prop_assert_eq!(l.uncoords(&l.coords(&a)).unwrap(), a.clone());
        prop_assert_eq!(l.from_index(l.index_of(&a)), a);
    }

    #[test]
    fn embedding_is_a_ring_map((l, _a, _b, _c) in arb_triple(), x in 0u32..256, y in 0u32..256) {
        let k = l.subfield();
        let (x, y) = (k.from_index(x % k.order()), k.from_index(y % k.order()));
        prop_assert_eq!(l.embed(k.mul(x, y)), l.mul(&l.embed(x), &l.embed(y)));
        prop_assert_eq!(l.embed(k.add(x, y)), l.add(&l.embed(x), &l.embed(y)));
        prop_assert!(l.embed(x).in_subfield());
    }
}
