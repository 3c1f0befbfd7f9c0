//! K-linear codes in `L^m`: generator matrices, codewords, weights and
//! column-space tuples.

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::gf_tower::{FieldK, FieldL, KElem, LElem, ENUMERATION_LIMIT};
use crate::kspace::{self, point_from_index, KMatrix, KSubspace};

/// A `k × m` matrix over `L`. Rows need not be independent; see
/// [`GenMatrix`] for the validated form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LMatrix {
    field: FieldL,
    k: usize,
    m: usize,
    entries: Vec<LElem>,
}

impl LMatrix {
    pub fn new(field: &FieldL, m: usize, rows: Vec<Vec<LElem>>) -> Result<Self> {
        let k = rows.len();
        let mut entries = Vec::with_capacity(k * m);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != m {
                return Err(Error::DimensionMismatch(format!("row {i} has {} entries, expected {m}", r.len())));
            }
            if r.iter().any(|e| e.coords().len() != field.degree()) {
                return Err(Error::DimensionMismatch(format!("row {i} holds an element of the wrong field")));
            }
            entries.extend(r);
        }
        Ok(Self { field: field.clone(), k, m, entries })
    }

    /// Builds the matrix from rows of `K^(nm)`: each run of `n` coordinates is
    /// one element of `L`.
    pub fn from_flat_rows(field: &FieldL, m: usize, rows: &[Vec<KElem>]) -> Result<Self> {
        let n = field.degree();
        let rows = rows
            .iter()
            .map(|r| {
                if r.len() != n * m {
                    return Err(Error::DimensionMismatch(format!("flat row of length {}", r.len())));
                }
                r.chunks(n).map(|c| field.uncoords(c)).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, m, rows)
    }

    pub fn field(&self) -> &FieldL {
        &self.field
    }

    pub fn subfield(&self) -> &FieldK {
        self.field.subfield()
    }

    /// Number of rows.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Code length.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, r: usize, c: usize) -> &LElem {
        &self.entries[r * self.m + c]
    }

    pub fn row(&self, r: usize) -> &[LElem] {
        &self.entries[r * self.m..(r + 1) * self.m]
    }

    pub fn rows(&self) -> Vec<Vec<LElem>> {
        (0..self.k).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<LElem> {
        (0..self.k).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[LElem] {
        &self.entries
    }

    /// The `k × nm` matrix over `K` obtained by expanding every entry.
    pub fn flattened(&self) -> KMatrix {
        let rows: Vec<Vec<KElem>> = (0..self.k)
            .map(|r| self.row(r).iter().flat_map(|e| e.coords().to_vec()).collect())
            .collect();
        KMatrix::from_rows(self.field.degree() * self.m, &rows).expect("consistent shape")
    }

    /// Rank over `K` of the rows.
    pub fn k_rank(&self) -> usize {
        self.flattened().rank(self.subfield())
    }

    /// The matrix `M ∈ K^(k×n)` of the coordinate map `λ_c(u) = Mᵀu`.
    pub fn column_map(&self, c: usize) -> KMatrix {
        let rows: Vec<Vec<KElem>> = (0..self.k).map(|r| self.get(r, c).coords().to_vec()).collect();
        KMatrix::from_rows(self.field.degree(), &rows).expect("consistent shape")
    }

    /// `Aᵀu`.
    pub fn encode(&self, u: &[KElem]) -> Vec<LElem> {
        assert_eq!(u.len(), self.k);
        let mut out = vec![self.field.zero(); self.m];
        for (r, &ur) in u.iter().enumerate() {
            if ur.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = self.field.add(o, &self.field.scale(ur, self.get(r, c)));
            }
        }
        out
    }

    /// Same as [`LMatrix::encode`] but returns the codeword flattened to `K^(nm)`.
    pub fn encode_flat(&self, u: &[KElem]) -> Vec<KElem> {
        self.encode(u).iter().flat_map(|e| e.coords().to_vec()).collect()
    }

    fn check_codeword_count(&self) -> Result<usize> {
        let count = (self.subfield().order() as u128).checked_pow(self.k as u32).unwrap_or(u128::MAX);
        if count > ENUMERATION_LIMIT as u128 {
            return Err(Error::TooLarge(format!("q^k = {count} codewords")));
        }
        Ok(count as usize)
    }

    /// All messages `u ∈ K^k` in index order.
    pub fn messages(&self) -> Result<Vec<Vec<KElem>>> {
        let count = self.check_codeword_count()?;
        Ok((0..count).map(|i| point_from_index(self.subfield(), self.k, i)).collect())
    }
}

/// A generator matrix: an [`LMatrix`] whose rows are independent over `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenMatrix(LMatrix);

impl GenMatrix {
    pub fn new(field: &FieldL, m: usize, rows: Vec<Vec<LElem>>) -> Result<Self> {
        Self::try_from(LMatrix::new(field, m, rows)?)
    }

    pub fn as_matrix(&self) -> &LMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> LMatrix {
        self.0
    }
}

impl TryFrom<LMatrix> for GenMatrix {
    type Error = Error;

    fn try_from(m: LMatrix) -> Result<Self> {
        let rank = m.k_rank();
        if rank != m.k {
            return Err(Error::DependentRows { rank, rows: m.k });
        }
        Ok(GenMatrix(m))
    }
}

impl Deref for GenMatrix {
    type Target = LMatrix;

    fn deref(&self) -> &LMatrix {
        &self.0
    }
}

/// Ordered tuple `(V_1, …, V_m)` of subspaces of `K^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpaceTuple {
    ambient: usize,
    spaces: Vec<KSubspace>,
}

impl SpaceTuple {
    pub fn new(ambient: usize, spaces: Vec<KSubspace>) -> Result<Self> {
        if let Some(s) = spaces.iter().find(|s| s.ambient_dim() != ambient) {
            return Err(Error::DimensionMismatch(format!(
                "space in K^{} inside a tuple over K^{ambient}",
                s.ambient_dim()
            )));
        }
        Ok(Self { ambient, spaces })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty()
    }

    pub fn spaces(&self) -> &[KSubspace] {
        &self.spaces
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(KSubspace::dim).collect()
    }

    pub fn max_dim(&self) -> usize {
        self.spaces.iter().map(KSubspace::dim).max().unwrap_or(0)
    }

    /// The tuple as a sorted multiset.
    pub fn sorted(&self) -> Vec<KSubspace> {
        let mut s = self.spaces.clone();
        s.sort();
        s
    }

    /// Equal as multisets: some permutation matches the entries one to one.
    pub fn is_equivalent(&self, other: &SpaceTuple) -> bool {
        self.ambient == other.ambient && self.len() == other.len() && self.sorted() == other.sorted()
    }

    /// Lattice sum of all entries.
    pub fn total_span(&self, field: &FieldK) -> KSubspace {
        let rows: Vec<Vec<KElem>> = self.spaces.iter().flat_map(|s| s.basis_rows()).collect();
        kspace::span(field, self.ambient, &rows).expect("consistent ambient")
    }
}

/// The K-span of the `n` expansion components of a column `v ∈ L^k`.
pub fn column_space(field: &FieldL, col: &[LElem]) -> KSubspace {
    let k = col.len();
    let components: Vec<Vec<KElem>> = (0..field.degree())
        .map(|j| col.iter().map(|e| e.coords()[j]).collect())
        .collect();
    kspace::span(field.subfield(), k, &components).expect("consistent shape")
}

/// Image of the dual map `λ*: L → K^k` of `λ(u) = Σ u_r col_r`.
///
/// `λ` is evaluated with field arithmetic on the unit vectors of `K^k` to get
/// its matrix `M`, and the image `{M b : b ∈ K^n}` is spanned.
pub fn column_space_dual(field: &FieldL, col: &[LElem]) -> KSubspace {
    let k = col.len();
    let kf = field.subfield();
    let n = field.degree();
    let lambda_rows: Vec<Vec<KElem>> = (0..k)
        .map(|r| {
            let mut acc = field.zero();
            for (s, c) in col.iter().enumerate() {
                let unit = if s == r { KElem::ONE } else { KElem::ZERO };
                acc = field.add(&acc, &field.mul(&field.embed(unit), c));
            }
            field.coords(&acc)
        })
        .collect();
    let m = KMatrix::from_rows(n, &lambda_rows).expect("consistent shape");
    let images: Vec<Vec<KElem>> = match kspace::all_points(kf, n) {
        Ok(points) => points.iter().map(|b| m.apply(kf, b)).collect(),
        Err(_) => (0..n).map(|j| m.column(j)).collect(),
    };
    kspace::span(kf, k, &images).expect("consistent shape")
}

/// Tuple of column spaces of a matrix.
pub fn space_tuple(a: &LMatrix) -> SpaceTuple {
    let spaces = (0..a.m()).map(|c| column_space(a.field(), &a.column(c))).collect();
    SpaceTuple::new(a.k(), spaces).expect("consistent ambient")
}

/// All `q^k` codewords `Aᵀu`, in message index order.
pub fn codewords(a: &GenMatrix) -> Result<Vec<Vec<LElem>>> {
    Ok(a.messages()?.iter().map(|u| a.encode(u)).collect())
}

/// Hamming weight.
pub fn weight(x: &[LElem]) -> usize {
    x.iter().filter(|e| !e.is_zero()).count()
}

/// Number of codewords of each weight `0..=m`.
pub fn weight_distribution(a: &GenMatrix) -> Result<Vec<u64>> {
    let mut dist = vec![0u64; a.m() + 1];
    for u in a.messages()? {
        dist[weight(&a.encode(&u))] += 1;
    }
    Ok(dist)
}

/// Compares `dim_K C` (rank of the expanded generator) with the dimension of
/// the lattice sum of the column spaces.
pub fn check_dim_sum(a: &GenMatrix) -> bool {
    let lhs = a.k_rank();
    let rhs = space_tuple(a).total_span(a.subfield()).dim();
    lhs == rhs
}
