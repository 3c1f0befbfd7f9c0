//! K-linear maps between codes: isometry tests and extendibility tests.
//!
//! A [`CodeMap`] is given by the images of the generator rows. Isometry is
//! decided by comparing weights on every codeword or by comparing the scaled
//! indicator sums of the two column-space tuples. Extendibility is decided by
//! multiset equality of the tuples or by an explicit search for a K-monomial
//! witness.

use crate::codes::{space_tuple, weight, GenMatrix, LMatrix, SpaceTuple};
use crate::error::{Error, Result};
use crate::gf_tower::{FieldK, FieldL, KElem, LElem};
use crate::kspace::{self, KMatrix};
use crate::solutions::indicator_table;

/// Largest per-row solution set [`factor_through_aut`] will enumerate.
const FACTOR_LIMIT: u128 = 1 << 16;

/// A K-linear map on a code, fixed by `row_i(A) ↦ row_i(A′)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeMap {
    source: GenMatrix,
    image: LMatrix,
}

impl CodeMap {
    pub fn new(source: GenMatrix, image: LMatrix) -> Result<Self> {
        if source.field() != image.field() {
            return Err(Error::Invalid("source and image use different fields".into()));
        }
        if source.k() != image.k() || source.m() != image.m() {
            return Err(Error::DimensionMismatch(format!(
                "source is {}x{}, image is {}x{}",
                source.k(),
                source.m(),
                image.k(),
                image.m()
            )));
        }
        Ok(Self { source, image })
    }

    /// The identity map on the code.
    pub fn identity(source: GenMatrix) -> Self {
        let image = source.as_matrix().clone();
        Self { source, image }
    }

    pub fn source(&self) -> &GenMatrix {
        &self.source
    }

    pub fn image(&self) -> &LMatrix {
        &self.image
    }

    pub fn field(&self) -> &FieldL {
        self.source.field()
    }

    pub fn source_tuple(&self) -> SpaceTuple {
        space_tuple(&self.source)
    }

    pub fn image_tuple(&self) -> SpaceTuple {
        space_tuple(&self.image)
    }

    /// Rewrites the map over the reduced echelon basis of the source code,
    /// carrying the image rows along with the same row operations.
    pub fn canonicalize(&self) -> Result<CodeMap> {
        let kf = self.source.subfield();
        let k = self.source.k();
        let src = self.source.flattened();
        let width = src.cols();
        let mut aug = KMatrix::zeros(k, width + k);
        for r in 0..k {
            for c in 0..width {
                aug.set(r, c, src.get(r, c));
            }
            aug.set(r, width + r, KElem::ONE);
        }
        let (red, _) = kspace::rref(kf, &aug);
        let mut transform = KMatrix::zeros(k, k);
        for r in 0..k {
            for c in 0..k {
                transform.set(r, c, red.get(r, width + c));
            }
        }
        let src_rows: Vec<Vec<KElem>> = (0..k).map(|r| red.row(r)[..width].to_vec()).collect();
        let img = transform.mul(kf, &self.image.flattened())?;
        let field = self.field();
        let m = self.source.m();
        let source = GenMatrix::try_from(LMatrix::from_flat_rows(field, m, &src_rows)?)?;
        let image = LMatrix::from_flat_rows(field, m, &img.row_vecs())?;
        CodeMap::new(source, image)
    }
}

/// A K-monomial map of `L^m`: `x ↦ (g_1(x_π(1)), …, g_m(x_π(m)))` with each
/// `g_i` an invertible `n × n` matrix acting on coordinates over `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialMap {
    perm: Vec<usize>,
    maps: Vec<KMatrix>,
}

impl MonomialMap {
    pub fn new(field: &FieldK, perm: Vec<usize>, maps: Vec<KMatrix>) -> Result<Self> {
        let m = perm.len();
        let mut seen = vec![false; m];
        for &p in &perm {
            if p >= m || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Invalid(format!("{perm:?} is not a permutation")));
            }
        }
        if maps.len() != m {
            return Err(Error::DimensionMismatch(format!("{} coordinate maps for length {m}", maps.len())));
        }
        if let Some(i) = maps.iter().position(|g| !g.is_invertible(field)) {
            return Err(Error::Invalid(format!("coordinate map {i} is not invertible")));
        }
        Ok(Self { perm, maps })
    }

    pub fn identity(m: usize, n: usize) -> Self {
        Self { perm: (0..m).collect(), maps: vec![KMatrix::identity(n); m] }
    }

    /// `perm[i]` is the input coordinate feeding output coordinate `i`.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn maps(&self) -> &[KMatrix] {
        &self.maps
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
            && self.maps.iter().all(|g| *g == KMatrix::identity(g.rows()))
    }

    pub fn apply(&self, field: &FieldL, x: &[LElem]) -> Vec<LElem> {
        assert_eq!(x.len(), self.perm.len());
        let kf = field.subfield();
        self.perm
            .iter()
            .zip(&self.maps)
            .map(|(&src, g)| field.uncoords(&g.apply(kf, x[src].coords())).expect("square map"))
            .collect()
    }
}

/// Weight comparison on every codeword: `wt(Aᵀu) = wt(A′ᵀu)` for all `u`.
pub fn is_isometry_direct(fmap: &CodeMap) -> Result<bool> {
    for u in fmap.source.messages()? {
        if weight(&fmap.source.encode(&u)) != weight(&fmap.image.encode(&u)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Equality of the scaled indicator sums of both column-space tuples.
pub fn is_isometry_criterion(fmap: &CodeMap) -> Result<bool> {
    let kf = fmap.source.subfield();
    let lhs = indicator_table(kf, &fmap.source_tuple())?;
    let rhs = indicator_table(kf, &fmap.image_tuple())?;
    Ok(lhs == rhs)
}

/// Multiset equality of the two column-space tuples.
pub fn is_extendible_tuples(fmap: &CodeMap) -> bool {
    fmap.source_tuple().is_equivalent(&fmap.image_tuple())
}

/// Least invertible `g` (row-major order on entries) with `σ = g∘τ`, where
/// `σ(u) = σᵀu` and `τ(u) = τᵀu` for `k × n` matrices over `K`.
pub fn factor_through_aut(field: &FieldK, sigma: &KMatrix, tau: &KMatrix) -> Result<Option<KMatrix>> {
    if sigma.rows() != tau.rows() || sigma.cols() != tau.cols() {
        return Err(Error::DimensionMismatch("σ and τ must have equal shapes".into()));
    }
    let n = tau.cols();
    let null = kspace::kernel(field, tau);
    let span_size = (field.order() as u128).pow(null.len() as u32);
    if span_size > FACTOR_LIMIT {
        return Err(Error::TooLarge(format!("{span_size} candidate rows per coordinate map")));
    }
    // row r of g solves τ · g_r = σ[·][r]
    let mut candidates = Vec::with_capacity(n);
    for r in 0..n {
        let Some(base) = kspace::solve(field, tau, &sigma.column(r)) else {
            return Ok(None);
        };
        let mut rows: Vec<Vec<KElem>> = (0..span_size as usize)
            .map(|t| {
                let coeffs = kspace::point_from_index(field, null.len(), t);
                let mut row = base.clone();
                for (c, z) in coeffs.iter().zip(&null) {
                    kspace::axpy(field, &mut row, *c, z);
                }
                row
            })
            .collect();
        rows.sort();
        candidates.push(rows);
    }
    let mut chosen: Vec<Vec<KElem>> = Vec::with_capacity(n);
    if least_independent_rows(field, &candidates, &mut chosen) {
        let data = chosen.concat();
        return Ok(Some(KMatrix::from_data(n, n, data)?));
    }
    Ok(None)
}

fn least_independent_rows(field: &FieldK, candidates: &[Vec<Vec<KElem>>], chosen: &mut Vec<Vec<KElem>>) -> bool {
    let depth = chosen.len();
    if depth == candidates.len() {
        return true;
    }
    let width = candidates[0].first().map_or(0, Vec::len);
    for row in &candidates[depth] {
        chosen.push(row.clone());
        let independent = KMatrix::from_rows(width, chosen).expect("uniform width").rank(field) == chosen.len();
        if independent && least_independent_rows(field, candidates, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Searches for a K-monomial map whose restriction to the code is `fmap`.
///
/// For each output coordinate `i` and input coordinate `j` the coordinate map
/// solving `μ_i = g·λ_j` is computed once; permutations are then tried in
/// lexicographic order and the first complete one is returned.
pub fn is_extendible_bruteforce(fmap: &CodeMap) -> Result<Option<MonomialMap>> {
    let kf = fmap.source.subfield();
    let m = fmap.source.m();
    let lambdas: Vec<KMatrix> = (0..m).map(|j| fmap.source.column_map(j)).collect();
    let mus: Vec<KMatrix> = (0..m).map(|i| fmap.image.column_map(i)).collect();
    let mut table: Vec<Vec<Option<KMatrix>>> = Vec::with_capacity(m);
    for mu in &mus {
        table.push(
            lambdas
                .iter()
                .map(|lam| factor_through_aut(kf, mu, lam))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let mut perm = Vec::with_capacity(m);
    let mut used = vec![false; m];
    if !first_perm(&table, &mut perm, &mut used) {
        return Ok(None);
    }
    let maps = perm.iter().enumerate().map(|(i, &j)| table[i][j].clone().unwrap()).collect();
    let witness = MonomialMap::new(kf, perm, maps)?;
    let field = fmap.field();
    for r in 0..fmap.source.k() {
        if witness.apply(field, fmap.source.row(r)) != fmap.image.row(r) {
            return Err(Error::VerificationFailed(format!("witness disagrees with the map on generator {r}")));
        }
    }
    Ok(Some(witness))
}

fn first_perm(table: &[Vec<Option<KMatrix>>], perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let i = perm.len();
    if i == table.len() {
        return true;
    }
    for j in 0..table.len() {
        if used[j] || table[i][j].is_none() {
            continue;
        }
        used[j] = true;
        perm.push(j);
        if first_perm(table, perm, used) {
            return true;
        }
        perm.pop();
        used[j] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf_tower::make_field_pair;

    fn f4() -> FieldL {
        make_field_pair(2, 1, 2, None, None).unwrap().1
    }

    #[test]
    fn swap_coordinates() {
        let l = f4();
        let (o, i, w) = (l.zero(), l.one(), l.alpha());
        let h = MonomialMap { perm: vec![1, 0, 2], maps: vec![KMatrix::identity(2); 3] };
        assert_eq!(h.apply(&l, &[i.clone(), w.clone(), o.clone()]), vec![w, i, o]);
    }

    #[test]
    fn identity_monomial_is_identity() {
        let l = f4();
        let id = MonomialMap::identity(3, 2);
        for a in l.elements().unwrap() {
            let x = vec![a.clone(), l.zero(), a];
            assert_eq!(id.apply(&l, &x), x);
        }
    }

    #[test]
    fn bad_monomial_rejected() {
        let k = FieldK::prime(2).unwrap();
        assert!(MonomialMap::new(&k, vec![0, 0], vec![KMatrix::identity(2); 2]).is_err());
        assert!(MonomialMap::new(&k, vec![0, 1], vec![KMatrix::identity(2), KMatrix::zeros(2, 2)]).is_err());
    }

    #[test]
    fn weight_mismatch_is_not_isometry() {
        let l = f4();
        let (o, i) = (l.zero(), l.one());
        let src = GenMatrix::new(&l, 3, vec![vec![i.clone(), i.clone(), o.clone()]]).unwrap();
        let img = LMatrix::new(&l, 3, vec![vec![i, o.clone(), o]]).unwrap();
        let f = CodeMap::new(src, img).unwrap();
        assert!(!is_isometry_direct(&f).unwrap());
        assert!(!is_isometry_criterion(&f).unwrap());
    }

    #[test]
    fn factor_identity() {
        let k = FieldK::prime(3).unwrap();
        let s = KMatrix::from_rows(2, &[vec![KElem(1), KElem(2)], vec![KElem(0), KElem(1)]]).unwrap();
        let g = factor_through_aut(&k, &s, &s).unwrap().unwrap();
        for r in 0..2 {
            assert_eq!(g.apply(&k, s.row(r)), s.row(r));
        }
    }

    #[test]
    fn canonicalize_keeps_the_map() {
        let l = f4();
        let (o, i, w) = (l.zero(), l.one(), l.alpha());
        let src = GenMatrix::new(&l, 2, vec![vec![w.clone(), i.clone()], vec![i.clone(), o.clone()]]).unwrap();
        let img = LMatrix::new(&l, 2, vec![vec![i.clone(), w.clone()], vec![o, i]]).unwrap();
        let f = CodeMap::new(src, img).unwrap();
        let c = f.canonicalize().unwrap();
        // same graph: every (source, image) codeword pair of one appears in the other
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
        assert_eq!(pairs(&f), pairs(&c));
        assert_eq!(c.source().flattened(), kspace::rref(l.subfield(), &f.source().flattened()).0);
    }
}
