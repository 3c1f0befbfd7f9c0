#![allow(dead_code)]

use addiso_core::kspace::{span, KSubspace};
use addiso_core::{make_field_pair, Error, FieldK, FieldL, GenMatrix, KElem, LElem};
use rand::Rng;

pub fn field(p: u64, d: usize, n: usize) -> FieldL {
    make_field_pair(p, d, n, None, None).unwrap().1
}

pub fn f4() -> FieldL {
    field(2, 1, 2)
}

pub fn kvec(xs: &[u32]) -> Vec<KElem> {
    xs.iter().map(|&x| KElem(x)).collect()
}

pub fn ks(k: usize, rows: &[&[u32]]) -> KSubspace {
    let f2 = FieldK::prime(2).unwrap();
    let rows: Vec<Vec<KElem>> = rows.iter().map(|r| kvec(r)).collect();
    span(&f2, k, &rows).unwrap()
}

/// Matrix over F_4 from element indices (0, 1, ω = 2, ω² = 3).
pub fn f4_matrix(l: &FieldL, rows: &[&[u64]]) -> Vec<Vec<LElem>> {
    rows.iter().map(|r| r.iter().map(|&i| l.from_index(i)).collect()).collect()
}

pub fn ex2(l: &FieldL) -> GenMatrix {
    GenMatrix::new(l, 3, f4_matrix(l, &[&[1, 1, 0], &[2, 2, 0], &[1, 0, 1]])).unwrap()
}

pub fn ex3_image(l: &FieldL) -> Vec<Vec<LElem>> {
    f4_matrix(l, &[&[1, 1, 0], &[1, 0, 1], &[2, 2, 0]])
}

pub fn random_lelem(rng: &mut impl Rng, l: &FieldL) -> LElem {
    l.from_index(rng.gen_range(0..l.order()))
}

pub fn random_kvec(rng: &mut impl Rng, k: &FieldK, len: usize) -> Vec<KElem> {
    (0..len).map(|_| k.from_index(rng.gen_range(0..k.order()))).collect()
}

pub fn random_rows(rng: &mut impl Rng, l: &FieldL, k: usize, m: usize) -> Vec<Vec<LElem>> {
    (0..k).map(|_| (0..m).map(|_| random_lelem(rng, l)).collect()).collect()
}

/// Random generator matrix with `k ≤ n·m` rows, redrawn until independent.
pub fn random_code(rng: &mut impl Rng, l: &FieldL, k: usize, m: usize) -> GenMatrix {
    loop {
        match GenMatrix::new(l, m, random_rows(rng, l, k, m)) {
            Ok(a) => return a,
            Err(Error::DependentRows { .. }) => continue,
            Err(e) => panic!("{e}"),
        }
    }
}

pub fn random_subspace(rng: &mut impl Rng, k: &FieldK, dim: usize) -> KSubspace {
    let gens = rng.gen_range(0..=dim + 1);
    let rows: Vec<Vec<KElem>> = (0..gens).map(|_| random_kvec(rng, k, dim)).collect();
    span(k, dim, &rows).unwrap()
}
