mod common;

use addiso_core::codes::space_tuple;
use addiso_core::isometry::{
    factor_through_aut, is_extendible_bruteforce, is_extendible_tuples, is_isometry_criterion, is_isometry_direct,
    CodeMap,
};
use addiso_core::kspace::{enumerate_invertible, enumerate_subspaces, KMatrix};
use addiso_core::{GenMatrix, KElem, LMatrix};
use common::{ex2, ex3_image, f4, f4_matrix, field, ks, random_kvec, random_rows};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn first_example_is_an_isometry() {
    let l = f4();
    let a = GenMatrix::new(&l, 3, f4_matrix(&l, &[&[1, 1, 0], &[2, 0, 1]])).unwrap();
    let image = LMatrix::new(&l, 3, f4_matrix(&l, &[&[0, 3, 2], &[1, 0, 1]])).unwrap();
    let f = CodeMap::new(a, image).unwrap();
    assert!(is_isometry_direct(&f).unwrap());
    assert!(is_isometry_criterion(&f).unwrap());
    assert_eq!(is_extendible_tuples(&f), is_extendible_bruteforce(&f).unwrap().is_some());
}

#[test]
fn unextendible_example_reproduced() {
    let l = f4();
    let f = CodeMap::new(ex2(&l), LMatrix::new(&l, 3, ex3_image(&l)).unwrap()).unwrap();
    let v = f.source_tuple();
    let u = f.image_tuple();
    assert_eq!(v.spaces(), &[ks(3, &[&[1, 0, 1], &[0, 1, 0]]), ks(3, &[&[1, 0, 0], &[0, 1, 0]]), ks(3, &[&[0, 0, 1]])]);
    assert_eq!(u.spaces(), &[ks(3, &[&[1, 1, 0], &[0, 0, 1]]), ks(3, &[&[1, 0, 0], &[0, 0, 1]]), ks(3, &[&[0, 1, 0]])]);
    assert!(is_isometry_direct(&f).unwrap());
    assert!(is_isometry_criterion(&f).unwrap());
    assert!(!is_extendible_tuples(&f));
    assert!(is_extendible_bruteforce(&f).unwrap().is_none());
}

#[test]
fn columns_with_different_spaces_do_not_factor() {
    let l = f4();
    let a = ex2(&l);
    let image = LMatrix::new(&l, 3, ex3_image(&l)).unwrap();
    let kf = l.subfield();
    assert_eq!(factor_through_aut(kf, &image.column_map(0), &a.column_map(0)).unwrap(), None);
    assert!(factor_through_aut(kf, &a.column_map(0), &a.column_map(0)).unwrap().is_some());
}

#[test]
fn factoring_recovers_random_automorphisms() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let fields = [field(2, 1, 2), field(3, 1, 2), field(2, 1, 3), field(2, 2, 2)];
    for trial in 0..500 {
        let l = &fields[trial % fields.len()];
        let kf = l.subfield();
        let n = l.degree();
        let gl = enumerate_invertible(kf, n).unwrap();
        let k = rng.gen_range(1..=4);
        let tau_rows: Vec<Vec<KElem>> = (0..k).map(|_| random_kvec(&mut rng, kf, n)).collect();
        let tau = KMatrix::from_rows(n, &tau_rows).unwrap();
        let g = &gl[rng.gen_range(0..gl.len())];
        // σᵀ = g τᵀ
        let sigma = g.mul(kf, &tau.transpose()).unwrap().transpose();
        let h = factor_through_aut(kf, &sigma, &tau).unwrap().expect("g itself factors");
        assert!(h.is_invertible(kf));
        assert_eq!(h.mul(kf, &tau.transpose()).unwrap(), sigma.transpose());
        // the dual images agree
        let cols = |m: &KMatrix| (0..m.cols()).map(|j| m.column(j)).collect::<Vec<_>>();
        assert_eq!(
            addiso_core::kspace::span(kf, k, &cols(&sigma)).unwrap(),
            addiso_core::kspace::span(kf, k, &cols(&tau)).unwrap()
        );
    }
}

/// Every code of length ≤ 2 and dimension ≤ 2 against every image matrix,
/// plus random images at length 3.
#[test]
fn criteria_agree_with_oracles() {
    let l = f4();
    let kf = l.subfield();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0;
    for m in 1..=3usize {
        for k in 0..=2usize {
            for code in enumerate_subspaces(kf, 2 * m, Some(k)).unwrap() {
                let a = GenMatrix::try_from(LMatrix::from_flat_rows(&l, m, &code.basis_rows()).unwrap()).unwrap();
                let images: Vec<LMatrix> = if m < 3 {
                    let total = l.order().pow((k * m) as u32);
                    (0..total)
                        .map(|mut i| {
                            let rows = (0..k)
                                .map(|_| {
                                    (0..m)
                                        .map(|_| {
                                            let e = l.from_index(i % 4);
                                            i /= 4;
                                            e
                                        })
                                        .collect()
                                })
                                .collect();
                            LMatrix::new(&l, m, rows).unwrap()
                        })
                        .collect()
                } else {
                    (0..8).map(|_| LMatrix::new(&l, m, random_rows(&mut rng, &l, k, m)).unwrap()).collect()
                };
                for image in images {
                    let f = CodeMap::new(a.clone(), image).unwrap();
                    assert_eq!(is_isometry_direct(&f).unwrap(), is_isometry_criterion(&f).unwrap(), "{f:?}");
                    assert_eq!(is_extendible_tuples(&f), is_extendible_bruteforce(&f).unwrap().is_some(), "{f:?}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 10_000);
}

#[test]
fn canonical_form_keeps_the_map() {
    let l = f4();
    let f = CodeMap::new(ex2(&l), LMatrix::new(&l, 3, ex3_image(&l)).unwrap()).unwrap();
    let c = f.canonicalize().unwrap();
    assert_eq!(c.canonicalize().unwrap(), c);
    // same set of (codeword, image) pairs
    let pairs = |g: &CodeMap| {
        let mut v: Vec<_> = g
            .source()
            .messages()
            .unwrap()
            .iter()
            .map(|u| (g.source().encode(u), g.image().encode(u)))
            .collect();
        v.sort();
        v
    };
    assert_eq!(pairs(&c), pairs(&f));
    assert_eq!(space_tuple(c.source()).dims().iter().sum::<usize>(), f.source_tuple().dims().iter().sum::<usize>());
    assert!(is_isometry_direct(&c).unwrap() && !is_extendible_tuples(&c));
}

#[test]
fn identity_map_has_identity_witness() {
    let l = f4();
    let f = CodeMap::identity(ex2(&l));
    let w = is_extendible_bruteforce(&f).unwrap().unwrap();
    assert!(w.is_identity());
}
