//! Linear algebra over `K`: matrices, canonical subspaces of `K^k` and the
//! enumerations the exhaustive searches are built on.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::gf_tower::{FieldK, KElem, ENUMERATION_LIMIT};

/// Largest number of subspaces [`enumerate_subspaces`] will produce.
pub const SUBSPACE_LIMIT: u128 = 10_000_000;

/// Largest `|GL_n(K)|` [`enumerate_invertible`] will produce.
pub const GL_LIMIT: u128 = 1_000_000;

/// Dense row-major matrix over `K`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KMatrix {
    rows: usize,
    cols: usize,
    data: Vec<KElem>,
}

impl KMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![KElem::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, KElem::ONE);
        }
        m
    }

    pub fn from_data(rows: usize, cols: usize, data: Vec<KElem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<KElem>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!("row of length {} (expected {cols})", r.len())));
            }
            data.extend_from_slice(r);
        }
        Ok(Self { rows: rows.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[KElem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> KElem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: KElem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[KElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<KElem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<KElem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, field: &FieldK, other: &KMatrix) -> Result<KMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = KElem::ZERO;
                for t in 0..self.cols {
                    acc = field.add(acc, field.mul(self.get(i, t), other.get(t, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// `M · v` for a column vector `v`.
    pub fn apply(&self, field: &FieldK, v: &[KElem]) -> Vec<KElem> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| dot(field, self.row(r), v))
            .collect()
    }

    pub fn rank(&self, field: &FieldK) -> usize {
        rref(field, self).1
    }

    pub fn is_invertible(&self, field: &FieldK) -> bool {
        self.rows == self.cols && self.rank(field) == self.rows
    }
}

pub fn dot(field: &FieldK, a: &[KElem], b: &[KElem]) -> KElem {
    a.iter()
        .zip(b)
        .fold(KElem::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

pub fn add_vec(field: &FieldK, a: &[KElem], b: &[KElem]) -> Vec<KElem> {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
}

pub fn scale_vec(field: &FieldK, c: KElem, a: &[KElem]) -> Vec<KElem> {
    a.iter().map(|&x| field.mul(c, x)).collect()
}

/// `acc += c · v` in place.
pub fn axpy(field: &FieldK, acc: &mut [KElem], c: KElem, v: &[KElem]) {
    if c.is_zero() {
        return;
    }
    for (a, &x) in acc.iter_mut().zip(v) {
        *a = field.add(*a, field.mul(c, x));
    }
}

/// Gauss–Jordan reduced row echelon form; returns the reduced matrix (zero rows
/// last) and the rank.
pub fn rref(field: &FieldK, m: &KMatrix) -> (KMatrix, usize) {
    let (_, reduced, rank) = rref_with_pivots(field, m);
    (reduced, rank)
}

fn rref_with_pivots(field: &FieldK, m: &KMatrix) -> (Vec<usize>, KMatrix, usize) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(sel) = (row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        if sel != row {
            for c in 0..a.cols {
                let t = a.get(sel, c);
                a.set(sel, c, a.get(row, c));
                a.set(row, c, t);
            }
        }
        let inv = field.inv(a.get(row, col)).expect("pivot is nonzero");
        for c in 0..a.cols {
            a.set(row, c, field.mul(inv, a.get(row, c)));
        }
        let pivot_row = a.row(row).to_vec();
        for r in 0..a.rows {
            if r == row {
                continue;
            }
            let f = a.get(r, col);
            if f.is_zero() {
                continue;
            }
            let f = field.neg(f);
            for (c, &pv) in pivot_row.iter().enumerate() {
                let v = field.add(a.get(r, c), field.mul(f, pv));
                a.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (pivots, a, row)
}

/// Basis of the right kernel `{x : M x = 0}`.
pub fn kernel(field: &FieldK, m: &KMatrix) -> Vec<Vec<KElem>> {
    let (pivots, r, rank) = rref_with_pivots(field, m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![KElem::ZERO; m.cols];
            x[f] = KElem::ONE;
            for (i, &pc) in pivots.iter().enumerate().take(rank) {
                x[pc] = field.neg(r.get(i, f));
            }
            x
        })
        .collect()
}

/// One solution of `M x = b`, if any; free variables are set to zero.
pub fn solve(field: &FieldK, m: &KMatrix, b: &[KElem]) -> Option<Vec<KElem>> {
    assert_eq!(b.len(), m.rows);
    let mut aug = KMatrix::zeros(m.rows, m.cols + 1);
    for (r, &br) in b.iter().enumerate() {
        for c in 0..m.cols {
            aug.set(r, c, m.get(r, c));
        }
        aug.set(r, m.cols, br);
    }
    let (pivots, red, rank) = rref_with_pivots(field, &aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![KElem::ZERO; m.cols];
    for (i, &pc) in pivots.iter().enumerate().take(rank) {
        x[pc] = red.get(i, m.cols);
    }
    Some(x)
}

/// A subspace of `K^k`, stored as its reduced row echelon basis.
///
/// The representation is canonical, so structural equality is subspace
/// equality. Ordering is by dimension, then lexicographic on the basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KSubspace {
    ambient: usize,
    basis: KMatrix,
}

impl KSubspace {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: KMatrix::zeros(0, ambient) }
    }

    pub fn full(ambient: usize) -> Self {
        Self { ambient, basis: KMatrix::identity(ambient) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &KMatrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<KElem>> {
        self.basis.row_vecs()
    }

    /// `|V| = q^dim`.
    pub fn cardinality(&self, field: &FieldK) -> u128 {
        (field.order() as u128).pow(self.dim() as u32)
    }

    pub fn contains_vector(&self, field: &FieldK, v: &[KElem]) -> bool {
        let mut rows = self.basis_rows();
        rows.push(v.to_vec());
        let m = KMatrix::from_rows(self.ambient, &rows).expect("lengths checked");
        m.rank(field) == self.dim()
    }

    /// `other ⊆ self`.
    pub fn contains(&self, field: &FieldK, other: &KSubspace) -> Result<bool> {
        check_ambient(self, other)?;
        Ok(self.sum(field, other)?.dim() == self.dim())
    }

    pub fn sum(&self, field: &FieldK, other: &KSubspace) -> Result<KSubspace> {
        check_ambient(self, other)?;
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        span(field, self.ambient, &rows)
    }

    /// Intersection through the left kernel of the stacked bases.
    pub fn intersect(&self, field: &FieldK, other: &KSubspace) -> Result<KSubspace> {
        check_ambient(self, other)?;
        let r = self.dim();
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        if rows.is_empty() {
            return Ok(KSubspace::zero(self.ambient));
        }
        let stacked = KMatrix::from_rows(self.ambient, &rows)?;
        let combos = kernel(field, &stacked.transpose());
        let vecs: Vec<Vec<KElem>> = combos
            .iter()
            .map(|c| {
                let mut v = vec![KElem::ZERO; self.ambient];
                for (i, &ci) in c.iter().enumerate().take(r) {
                    axpy(field, &mut v, ci, self.basis.row(i));
                }
                v
            })
            .collect();
        span(field, self.ambient, &vecs)
    }

    /// All `q^dim` points, in order of their coefficient vectors over the
    /// basis (first coefficient least significant).
    pub fn enumerate_points(&self, field: &FieldK) -> Result<Vec<Vec<KElem>>> {
        let count = self.cardinality(field);
        if count > ENUMERATION_LIMIT as u128 {
            return Err(Error::TooLarge(format!("subspace with {count} points")));
        }
        let q = field.order() as u64;
        let dim = self.dim();
        Ok((0..count as u64)
            .map(|mut t| {
                let mut v = vec![KElem::ZERO; self.ambient];
                for i in 0..dim {
                    let c = KElem((t % q) as u32);
                    t /= q;
                    axpy(field, &mut v, c, self.basis.row(i));
                }
                v
            })
            .collect())
    }

    /// Maps a subspace of `K^dim(self)` (coordinates over this basis) into the
    /// ambient space.
    pub fn lift(&self, field: &FieldK, inner: &KSubspace) -> Result<KSubspace> {
        if inner.ambient != self.dim() {
            return Err(Error::DimensionMismatch("inner subspace must live in K^dim".into()));
        }
        let vecs: Vec<Vec<KElem>> = inner
            .basis_rows()
            .iter()
            .map(|c| {
                let mut v = vec![KElem::ZERO; self.ambient];
                for (i, &ci) in c.iter().enumerate() {
                    axpy(field, &mut v, ci, self.basis.row(i));
                }
                v
            })
            .collect();
        span(field, self.ambient, &vecs)
    }
}

fn check_ambient(a: &KSubspace, b: &KSubspace) -> Result<()> {
    if a.ambient != b.ambient {
        return Err(Error::DimensionMismatch(format!(
            "subspaces of K^{} and K^{}",
            a.ambient, b.ambient
        )));
    }
    Ok(())
}

/// Canonical span of `vectors` in `K^k`.
pub fn span(field: &FieldK, k: usize, vectors: &[Vec<KElem>]) -> Result<KSubspace> {
    let m = KMatrix::from_rows(k, vectors)?;
    let (red, rank) = rref(field, &m);
    let data = red.data()[..rank * k].to_vec();
    Ok(KSubspace { ambient: k, basis: KMatrix::from_data(rank, k, data)? })
}

/// Index of a point of `K^k`: coordinates as base-`q` digits, first least
/// significant.
pub fn point_index(field: &FieldK, v: &[KElem]) -> usize {
    let q = field.order() as usize;
    v.iter().rev().fold(0, |acc, c| acc * q + c.0 as usize)
}

pub fn point_from_index(field: &FieldK, k: usize, mut i: usize) -> Vec<KElem> {
    let q = field.order() as usize;
    (0..k)
        .map(|_| {
            let c = KElem((i % q) as u32);
            i /= q;
            c
        })
        .collect()
}

/// All points of `K^k` in index order.
pub fn all_points(field: &FieldK, k: usize) -> Result<Vec<Vec<KElem>>> {
    let count = (field.order() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if count > ENUMERATION_LIMIT as u128 {
        return Err(Error::TooLarge(format!("K^{k} has {count} points")));
    }
    Ok((0..count as usize).map(|i| point_from_index(field, k, i)).collect())
}

/// Number of `r`-dimensional subspaces of a `k`-dimensional space over a
/// `q`-element field.
pub fn gaussian_binomial(k: usize, r: usize, q: u64) -> u128 {
    if r > k {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..r {
        num *= q.pow((k - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// `|GL_n(F_q)| = ∏ (q^n - q^i)`.
pub fn gl_order(n: usize, q: u64) -> u128 {
    let q = q as u128;
    (0..n).map(|i| q.pow(n as u32) - q.pow(i as u32)).product()
}

/// Every subspace of `K^k` exactly once (optionally only those of one
/// dimension), generated from reduced echelon profiles: pivot columns first,
/// then the free entries. Sorted by dimension, then basis.
pub fn enumerate_subspaces(field: &FieldK, k: usize, dim_filter: Option<usize>) -> Result<Vec<KSubspace>> {
    let q = field.order() as u64;
    let dims: Vec<usize> = match dim_filter {
        Some(r) if r > k => return Ok(Vec::new()),
        Some(r) => vec![r],
        None => (0..=k).collect(),
    };
    let total: u128 = dims.iter().map(|&r| gaussian_binomial(k, r, q)).sum();
    if total > SUBSPACE_LIMIT {
        return Err(Error::TooLarge(format!("{total} subspaces of K^{k}")));
    }
    let mut out = Vec::with_capacity(total as usize);
    for &r in &dims {
        let start = out.len();
        for pivots in (0..k).combinations(r) {
            let free: Vec<(usize, usize)> = (0..r)
                .flat_map(|i| {
                    let pivots = &pivots;
                    (pivots[i] + 1..k).filter(move |c| !pivots.contains(c)).map(move |c| (i, c))
                })
                .collect();
            let combos = (q as u128).pow(free.len() as u32) as u64;
            for mut t in 0..combos {
                let mut m = KMatrix::zeros(r, k);
                for (i, &pc) in pivots.iter().enumerate() {
                    m.set(i, pc, KElem::ONE);
                }
                for &(i, c) in &free {
                    m.set(i, c, KElem((t % q) as u32));
                    t /= q;
                }
                out.push(KSubspace { ambient: k, basis: m });
            }
        }
        out[start..].sort();
    }
    Ok(out)
}

/// The `q + 1` subspaces `W` with `S ⊂ W ⊂ V` and `dim W = dim V - 1`.
pub fn hyperplanes_containing(field: &FieldK, s: &KSubspace, v: &KSubspace) -> Result<Vec<KSubspace>> {
    check_ambient(s, v)?;
    let codim = v.dim() as isize - s.dim() as isize;
    if codim != 2 {
        return Err(Error::BadCodimension(codim));
    }
    if !v.contains(field, s)? {
        return Err(Error::NotContained);
    }
    // complete a basis of S to one of V with two vectors taken from V's basis
    let mut extra = Vec::new();
    let mut acc = s.clone();
    for row in v.basis_rows() {
        if !acc.contains_vector(field, &row) {
            acc = acc.sum(field, &span(field, v.ambient, std::slice::from_ref(&row))?)?;
            extra.push(row);
        }
    }
    debug_assert_eq!(extra.len(), 2);
    let (w1, w2) = (&extra[0], &extra[1]);
    let mut directions = vec![w2.clone()];
    for t in field.elements()? {
        let mut d = w1.clone();
        axpy(field, &mut d, t, w2);
        directions.push(d);
    }
    let mut out = directions
        .into_iter()
        .map(|d| {
            let mut rows = s.basis_rows();
            rows.push(d);
            span(field, v.ambient, &rows)
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// All of `GL_n(K)` in row-major index order.
pub fn enumerate_invertible(field: &FieldK, n: usize) -> Result<Vec<KMatrix>> {
    let q = field.order() as u64;
    let order = gl_order(n, q);
    if order > GL_LIMIT {
        return Err(Error::TooLarge(format!("|GL_{n}(F_{q})| = {order}")));
    }
    let total = (q as u128).pow((n * n) as u32) as u64;
    let mut out = Vec::with_capacity(order as usize);
    for t in 0..total {
        let mut rem = t;
        let mut data = vec![KElem::ZERO; n * n];
        // last entry least significant, so the listing is lexicographic in row-major order
        for e in data.iter_mut().rev() {
            *e = KElem((rem % q) as u32);
            rem /= q;
        }
        let m = KMatrix { rows: n, cols: n, data };
        if m.is_invertible(field) {
            out.push(m);
        }
    }
    Ok(out)
}
