//! Solutions of the indicator-sum equation `Σ 1_{V_i}/|V_i| = Σ 1_{U_i}/|U_i|`
//! on `K^k`, subspace coverings, and the constructions of unextendible
//! isometries.

use std::collections::HashMap;

use itertools::Itertools;

use crate::codes::{GenMatrix, LMatrix, SpaceTuple};
use crate::error::{Error, Result};
use crate::gf_tower::{FieldK, FieldL, ENUMERATION_LIMIT};
use crate::isometry::CodeMap;
use crate::kspace::{enumerate_subspaces, hyperplanes_containing, point_index, KSubspace};

/// Largest number of multisets the covering and solution searches visit.
pub const MULTISET_LIMIT: u128 = 5_000_000;

/// `q^k · Σ_i 1_{V_i}/|V_i|` evaluated at every point of `K^k`, in
/// [`crate::kspace::all_points`] order. Every `|V_i|` divides `q^k`, so the entries
/// are exact integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndicatorTable {
    k: usize,
    q: u64,
    values: Vec<u64>,
}

impl IndicatorTable {
    pub fn ambient_dim(&self) -> usize {
        self.k
    }

    pub fn field_order(&self) -> u64 {
        self.q
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Value at the point with index `i`.
    pub fn at(&self, i: usize) -> u64 {
        self.values[i]
    }
}

fn point_count(field: &FieldK, k: usize) -> Result<usize> {
    let count = (field.order() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if count > ENUMERATION_LIMIT as u128 {
        return Err(Error::TooLarge(format!("K^{k} has {count} points")));
    }
    Ok(count as usize)
}

fn add_space(field: &FieldK, values: &mut [u64], space: &KSubspace) -> Result<()> {
    let weight = (field.order() as u64).pow((space.ambient_dim() - space.dim()) as u32);
    for p in space.enumerate_points(field)? {
        values[point_index(field, &p)] += weight;
    }
    Ok(())
}

/// Scaled indicator sum of a tuple of spaces.
pub fn indicator_table(field: &FieldK, tuple: &SpaceTuple) -> Result<IndicatorTable> {
    let k = tuple.ambient_dim();
    let mut values = vec![0u64; point_count(field, k)?];
    for s in tuple.spaces() {
        add_space(field, &mut values, s)?;
    }
    Ok(IndicatorTable { k, q: field.order() as u64, values })
}

/// Two tuples of spaces over the same `K^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SolutionPair {
    pub u: SpaceTuple,
    pub v: SpaceTuple,
}

impl SolutionPair {
    pub fn new(u: SpaceTuple, v: SpaceTuple) -> Result<Self> {
        if u.len() != v.len() || u.ambient_dim() != v.ambient_dim() {
            return Err(Error::DimensionMismatch("tuples differ in length or ambient space".into()));
        }
        Ok(Self { u, v })
    }

    fn sort_key(&self) -> (Vec<KSubspace>, Vec<KSubspace>) {
        (self.u.sorted(), self.v.sorted())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionClass {
    NotSolution,
    Trivial,
    Nontrivial,
}

pub fn classify_pair(field: &FieldK, pair: &SolutionPair) -> Result<SolutionClass> {
    if indicator_table(field, &pair.u)? != indicator_table(field, &pair.v)? {
        return Ok(SolutionClass::NotSolution);
    }
    Ok(if pair.u.is_equivalent(&pair.v) { SolutionClass::Trivial } else { SolutionClass::Nontrivial })
}

/// `V` repeated `q` times plus `S`, against the `q + 1` hyperplanes of `V`
/// through `S`.
pub fn family_a(field: &FieldK, v: &KSubspace, s: &KSubspace) -> Result<SolutionPair> {
    let hyperplanes = hyperplanes_containing(field, s, v)?;
    let mut vs = vec![v.clone(); field.order() as usize];
    vs.push(s.clone());
    let k = v.ambient_dim();
    SolutionPair::new(SpaceTuple::new(k, hyperplanes)?, SpaceTuple::new(k, vs)?)
}

/// If `pair` is `family_a(V, S)` up to reordering each tuple, returns `(V, S)`.
pub fn matches_family_a(field: &FieldK, pair: &SolutionPair) -> Option<(KSubspace, KSubspace)> {
    let vs = pair.v.sorted();
    let top = vs.last()?.clone();
    let rest: Vec<&KSubspace> = vs.iter().filter(|s| **s != top).collect();
    if rest.len() != 1 || top.dim() < 2 {
        return None;
    }
    let s = rest[0].clone();
    if s.dim() + 2 != top.dim() || !top.contains(field, &s).ok()? {
        return None;
    }
    let fam = family_a(field, &top, &s).ok()?;
    (fam.u.is_equivalent(&pair.u) && fam.v.is_equivalent(&pair.v)).then_some((top, s))
}

fn bitset_of(field: &FieldK, basis: &[KSubspace], words: usize) -> Result<Vec<Vec<u64>>> {
    basis
        .iter()
        .map(|s| {
            let mut bits = vec![0u64; words];
            for p in s.enumerate_points(field)? {
                let i = point_index(field, &p);
                bits[i / 64] |= 1 << (i % 64);
            }
            Ok(bits)
        })
        .collect()
}

fn covers(sets: &[&Vec<u64>], full: &[u64]) -> bool {
    full.iter().enumerate().all(|(w, &f)| sets.iter().fold(0u64, |acc, s| acc | s[w]) == f)
}

fn full_bits(count: usize) -> Vec<u64> {
    let words = count.div_ceil(64);
    let mut bits = vec![u64::MAX; words];
    if !count.is_multiple_of(64) {
        bits[words - 1] = (1u64 << (count % 64)) - 1;
    }
    bits
}

fn multiset_count(items: usize, size: usize) -> u128 {
    // C(items + size - 1, size)
    let n = (items + size).saturating_sub(1) as u128;
    let mut acc: u128 = 1;
    for i in 0..size as u128 {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Outcome of [`check_covering_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoveringBound {
    /// No multiset of `q` hyperplanes covers `K^k`.
    pub holds: bool,
    /// Multisets examined.
    pub checked: u64,
}

/// Checks exhaustively that `K^k` is not the union of `q` of its hyperplanes
/// (hence not of any `≤ q` proper subspaces).
pub fn check_covering_bound(field: &FieldK, k: usize) -> Result<CoveringBound> {
    let q = field.order() as usize;
    let count = point_count(field, k)?;
    let hyperplanes = enumerate_subspaces(field, k, k.checked_sub(1))?;
    if multiset_count(hyperplanes.len(), q) > MULTISET_LIMIT {
        return Err(Error::TooLarge(format!("multisets of {q} among {} hyperplanes", hyperplanes.len())));
    }
    let full = full_bits(count);
    let bits = bitset_of(field, &hyperplanes, full.len())?;
    let mut checked = 0;
    let mut holds = true;
    for combo in (0..bits.len()).combinations_with_replacement(q) {
        checked += 1;
        let sets: Vec<&Vec<u64>> = combo.iter().map(|&i| &bits[i]).collect();
        if covers(&sets, &full) {
            holds = false;
            break;
        }
    }
    Ok(CoveringBound { holds, checked })
}

/// A covering of `V` by `q + 1` proper subspaces and the codimension-2
/// subspace they all contain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Covering {
    pub members: Vec<KSubspace>,
    pub center: KSubspace,
}

/// Finds every multiset of `q + 1` proper subspaces of `V` whose union is `V`
/// and checks that each is the bundle of hyperplanes through some
/// codimension-2 subspace `S`.
pub fn classify_min_coverings(field: &FieldK, v: &KSubspace) -> Result<Vec<Covering>> {
    let r = v.dim();
    if r < 2 {
        return Err(Error::Invalid("covering classification needs dim V >= 2".into()));
    }
    let q = field.order() as usize;
    let count = point_count(field, r)?;
    let proper: Vec<KSubspace> = enumerate_subspaces(field, r, None)?.into_iter().filter(|s| s.dim() < r).collect();
    if multiset_count(proper.len(), q + 1) > MULTISET_LIMIT {
        return Err(Error::TooLarge(format!("multisets of {} among {} subspaces", q + 1, proper.len())));
    }
    let full = full_bits(count);
    let bits = bitset_of(field, &proper, full.len())?;
    let whole = KSubspace::full(r);
    let mut out = Vec::new();
    for combo in (0..proper.len()).combinations_with_replacement(q + 1) {
        let sets: Vec<&Vec<u64>> = combo.iter().map(|&i| &bits[i]).collect();
        if !covers(&sets, &full) {
            continue;
        }
        let members: Vec<KSubspace> = combo.iter().map(|&i| proper[i].clone()).collect();
        let mut center = members[0].clone();
        for s in &members[1..] {
            center = center.intersect(field, s)?;
        }
        let bundle = if center.dim() + 2 == r { hyperplanes_containing(field, &center, &whole).ok() } else { None };
        if bundle.as_ref() != Some(&members) {
            return Err(Error::VerificationFailed(format!(
                "covering {members:?} of K^{r} is not a hyperplane bundle"
            )));
        }
        let mut lifted = members.iter().map(|s| v.lift(field, s)).collect::<Result<Vec<_>>>()?;
        lifted.sort();
        out.push(Covering { members: lifted, center: v.lift(field, &center)? });
    }
    out.sort_by(|a, b| a.center.cmp(&b.center));
    Ok(out)
}

/// All nontrivial solutions with tuples of length `m` in `K^k`, each listed
/// once up to reordering of either tuple and swapping the two sides.
///
/// With `dim_hypothesis` only pairs whose `V` side has the strictly larger
/// maximal dimension are kept (oriented that way), and for `m = q + 1` each
/// must be a [`family_a`] instance. For `m ≤ q` the result must be empty.
pub fn search_nontrivial(field: &FieldK, k: usize, m: usize, dim_hypothesis: bool) -> Result<Vec<SolutionPair>> {
    let q = field.order() as usize;
    let count = point_count(field, k)?;
    let spaces = enumerate_subspaces(field, k, None)?;
    let total = multiset_count(spaces.len(), m);
    if total > MULTISET_LIMIT {
        return Err(Error::TooLarge(format!("{total} multisets of {m} subspaces of K^{k}")));
    }
    let tables: Vec<Vec<u64>> = spaces
        .iter()
        .map(|s| {
            let mut t = vec![0u64; count];
            add_space(field, &mut t, s).map(|_| t)
        })
        .collect::<Result<_>>()?;
    let mut groups: HashMap<Vec<u64>, Vec<Vec<usize>>> = HashMap::new();
    for combo in (0..spaces.len()).combinations_with_replacement(m) {
        let mut t = vec![0u64; count];
        for &i in &combo {
            for (acc, x) in t.iter_mut().zip(&tables[i]) {
                *acc += x;
            }
        }
        groups.entry(t).or_default().push(combo);
    }
    let to_tuple = |combo: &[usize]| SpaceTuple::new(k, combo.iter().map(|&i| spaces[i].clone()).collect());
    let mut out = Vec::new();
    for members in groups.values().filter(|g| g.len() > 1) {
        for (a, b) in members.iter().tuple_combinations() {
            let (ta, tb) = (to_tuple(a)?, to_tuple(b)?);
            let pair = if !dim_hypothesis {
                if a <= b { SolutionPair::new(ta, tb)? } else { SolutionPair::new(tb, ta)? }
            } else if tb.max_dim() > ta.max_dim() {
                SolutionPair::new(ta, tb)?
            } else if ta.max_dim() > tb.max_dim() {
                SolutionPair::new(tb, ta)?
            } else {
                continue;
            };
            out.push(pair);
        }
    }
    out.sort_by_key(SolutionPair::sort_key);
    if m <= q && !out.is_empty() {
        return Err(Error::VerificationFailed(format!(
            "nontrivial solution {:?} with m = {m} <= q = {q}",
            out[0]
        )));
    }
    if dim_hypothesis && m == q + 1 {
        if let Some(bad) = out.iter().find(|p| matches_family_a(field, p).is_none()) {
            return Err(Error::VerificationFailed(format!("solution {bad:?} is not of the (U^A, V^A) form")));
        }
    }
    Ok(out)
}

/// The two-generator unextendible isometry of length `m ≥ q + 1`:
/// `(1,…,1,0), (x_1,…,x_q,1) ↦ (1,…,1,0), (ω,…,ω,0)`, padded with zero
/// columns. `x_1, …, x_q` run over `K` and `ω` is the first element of `L`
/// outside `K`.
pub fn build_counterexample(field: &FieldL, m: usize) -> Result<CodeMap> {
    let kf = field.subfield();
    let q = kf.order() as usize;
    if m <= q {
        return Err(Error::LengthTooShort { m, q: q as u64 });
    }
    if field.degree() < 2 {
        return Err(Error::Invalid("L must properly contain K".into()));
    }
    // first element outside K in enumeration order
    let omega = field.from_index(q as u64);
    debug_assert!(!omega.in_subfield());
    let (zero, one) = (field.zero(), field.one());
    let mut v1 = vec![one.clone(); q];
    let mut v2: Vec<_> = kf.elements()?.into_iter().map(|x| field.embed(x)).collect();
    let mut u1 = vec![one; q];
    let mut u2 = vec![omega; q];
    v1.push(zero.clone());
    v2.push(field.one());
    u1.push(zero.clone());
    u2.push(zero.clone());
    for row in [&mut v1, &mut v2, &mut u1, &mut u2] {
        row.resize(m, zero.clone());
    }
    let source = GenMatrix::new(field, m, vec![v1, v2])?;
    let image = LMatrix::new(field, m, vec![u1, u2])?;
    CodeMap::new(source, image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kspace::span;

    fn f(q: u64) -> FieldK {
        FieldK::with_order(q).unwrap()
    }

    #[test]
    fn zero_tuple_table() {
        let k = f(2);
        let t = SpaceTuple::new(3, vec![KSubspace::zero(3); 4]).unwrap();
        let table = indicator_table(&k, &t).unwrap();
        assert_eq!(table.at(0), 4 * 8);
        assert!(table.values()[1..].iter().all(|&x| x == 0));
    }

    #[test]
    fn table_is_permutation_invariant() {
        let k = f(3);
        let spaces = enumerate_subspaces(&k, 2, None).unwrap();
        let a = SpaceTuple::new(2, vec![spaces[1].clone(), spaces[3].clone(), spaces[5].clone()]).unwrap();
        let b = SpaceTuple::new(2, vec![spaces[5].clone(), spaces[1].clone(), spaces[3].clone()]).unwrap();
        assert_eq!(indicator_table(&k, &a).unwrap(), indicator_table(&k, &b).unwrap());
        assert_eq!(classify_pair(&k, &SolutionPair::new(a.clone(), a).unwrap()).unwrap(), SolutionClass::Trivial);
    }

    #[test]
    fn family_a_on_the_plane() {
        let k = f(2);
        let pair = family_a(&k, &KSubspace::full(2), &KSubspace::zero(2)).unwrap();
        assert_eq!(pair.u.spaces(), enumerate_subspaces(&k, 2, Some(1)).unwrap().as_slice());
        assert_eq!(classify_pair(&k, &pair).unwrap(), SolutionClass::Nontrivial);
        let k3 = f(3);
        let pair3 = family_a(&k3, &KSubspace::full(2), &KSubspace::zero(2)).unwrap();
        assert_eq!(pair3.u.len(), 4);
        assert_eq!(pair3.v.len(), 4);
    }

    #[test]
    fn family_a_errors() {
        let k = f(2);
        let line = span(&k, 2, &[vec![crate::KElem(1), crate::KElem(0)]]).unwrap();
        assert_eq!(family_a(&k, &line, &KSubspace::zero(2)).unwrap_err(), Error::BadCodimension(1));
    }

    #[test]
    fn counterexample_needs_length() {
        let l = crate::make_field_pair(2, 1, 2, None, None).unwrap().1;
        assert_eq!(build_counterexample(&l, 2).unwrap_err(), Error::LengthTooShort { m: 2, q: 2 });
        let l1 = crate::make_field_pair(2, 1, 1, None, None).unwrap().1;
        assert!(build_counterexample(&l1, 3).is_err());
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multiset_count(3, 2), 6);
        assert_eq!(multiset_count(16, 3), 816);
        assert_eq!(multiset_count(5, 0), 1);
    }
}
