//! Exact arithmetic for a field pair `K ⊂ L`.
//!
//! `K = GF(p^d)` is stored as residues of `F_p[x]` modulo a monic irreducible
//! `g`, each element packed into a single index whose base-`p` digits are the
//! coefficients (lowest degree first). `L` is a degree-`n` extension of `K`
//! stored as coefficient vectors over `K` in the basis `1, α, …, α^(n-1)`, so
//! expanding an element of `L` over `K` is a plain coordinate read.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order for which `K` keeps full addition/multiplication tables.
const TABLE_LIMIT: u64 = 256;

/// Largest cardinality any enumeration may materialise.
pub const ENUMERATION_LIMIT: u64 = 1 << 20;

/// The prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..=251).contains(&p) || !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        Ok(Self { p: p as u32 })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Element of `K`; the base-`p` digits of the index are the polynomial
/// coefficients, lowest degree first.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KElem(pub u32);

impl KElem {
    pub const ZERO: KElem = KElem(0);
    pub const ONE: KElem = KElem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug)]
struct KInner {
    base: PrimeField,
    d: usize,
    q: u32,
    modulus: Vec<u32>,
    add: Option<Vec<u32>>,
    mul: Option<Vec<u32>>,
    neg: Option<Vec<u32>>,
    inv: Option<Vec<u32>>,
}

/// The field `K = GF(p^d) = F_p[x]/(g)`.
///
/// Cloning is cheap; the descriptor is shared.
#[derive(Debug, Clone)]
pub struct FieldK {
    inner: Arc<KInner>,
}

impl PartialEq for FieldK {
    fn eq(&self, other: &Self) -> bool {
        self.inner.base == other.inner.base && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FieldK {}

impl FieldK {
    /// `F_p` itself, represented with modulus `x`.
    pub fn prime(p: u64) -> Result<Self> {
        let base = PrimeField::new(p)?;
        Ok(Self::build(base, 1, vec![0, 1]))
    }

    /// `GF(p^d)`; when `modulus` is absent the lexicographically least monic
    /// irreducible of degree `d` is used.
    pub fn new(p: u64, d: usize, modulus: Option<Vec<u32>>) -> Result<Self> {
        let base = PrimeField::new(p)?;
        if d == 0 {
            return Err(Error::DegreeMismatch("extension degree d must be >= 1".into()));
        }
        let q = (p as u128).pow(d as u32);
        if q > u32::MAX as u128 {
            return Err(Error::TooLarge(format!("|K| = {p}^{d} does not fit the element index")));
        }
        let prime = Self::prime(p)?;
        let modulus = match modulus {
            Some(g) => {
                if g.len() != d + 1 || *g.last().unwrap() != 1 {
                    return Err(Error::DegreeMismatch(format!(
                        "modulus for K must be monic of degree {d}, got {g:?}"
                    )));
                }
                if g.iter().any(|&c| c >= p as u32) {
                    return Err(Error::Invalid(format!("modulus coefficients must be < {p}")));
                }
                let as_k: Vec<KElem> = g.iter().map(|&c| KElem(c)).collect();
                if !is_irreducible(&as_k, &prime) {
                    return Err(Error::Reducible(g));
                }
                g
            }
            None => least_irreducible(&prime, d)?.into_iter().map(|c| c.0).collect(),
        };
        Ok(Self::build(base, d, modulus))
    }

    /// The field with `q` elements (default modulus).
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, d) = prime_power(q).ok_or_else(|| Error::Invalid(format!("{q} is not a prime power")))?;
        Self::new(p, d, None)
    }

    fn build(base: PrimeField, d: usize, modulus: Vec<u32>) -> Self {
        let q = (base.p as u64).pow(d as u32) as u32;
        let mut inner = KInner { base, d, q, modulus, add: None, mul: None, neg: None, inv: None };
        if (q as u64) <= TABLE_LIMIT {
            let qs = q as usize;
            let mut add = vec![0; qs * qs];
            let mut mul = vec![0; qs * qs];
            for a in 0..q {
                for b in 0..q {
                    add[a as usize * qs + b as usize] = raw_add(&inner, a, b);
                    mul[a as usize * qs + b as usize] = raw_mul(&inner, a, b);
                }
            }
            let neg = (0..q).map(|a| raw_neg(&inner, a)).collect();
            let mut inv = vec![0; qs];
            for a in 1..q {
                inv[a as usize] = (1..q).find(|&b| mul[a as usize * qs + b as usize] == 1).unwrap();
            }
            inner.add = Some(add);
            inner.mul = Some(mul);
            inner.neg = Some(neg);
            inner.inv = Some(inv);
        }
        Self { inner: Arc::new(inner) }
    }

    pub fn base(&self) -> PrimeField {
        self.inner.base
    }

    pub fn p(&self) -> u32 {
        self.inner.base.p
    }

    pub fn degree(&self) -> usize {
        self.inner.d
    }

    /// Field order `q = p^d`.
    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Coefficients of `g`, low to high, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn from_index(&self, i: u32) -> KElem {
        debug_assert!(i < self.inner.q);
        KElem(i)
    }

    /// Image of an integer under `Z → F_p ⊂ K`.
    pub fn from_int(&self, v: i64) -> KElem {
        KElem(v.rem_euclid(self.p() as i64) as u32)
    }

    pub fn coeffs(&self, a: KElem) -> Vec<u32> {
        digits(a.0, self.p(), self.inner.d)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> KElem {
        KElem(undigits(c, self.p()))
    }

    #[inline]
    pub fn add(&self, a: KElem, b: KElem) -> KElem {
        match &self.inner.add {
            Some(t) => KElem(t[a.0 as usize * self.inner.q as usize + b.0 as usize]),
            None => KElem(raw_add(&self.inner, a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: KElem) -> KElem {
        match &self.inner.neg {
            Some(t) => KElem(t[a.0 as usize]),
            None => KElem(raw_neg(&self.inner, a.0)),
        }
    }

    #[inline]
    pub fn sub(&self, a: KElem, b: KElem) -> KElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: KElem, b: KElem) -> KElem {
        match &self.inner.mul {
            Some(t) => KElem(t[a.0 as usize * self.inner.q as usize + b.0 as usize]),
            None => KElem(raw_mul(&self.inner, a.0, b.0)),
        }
    }

    pub fn pow(&self, a: KElem, mut e: u64) -> KElem {
        let mut base = a;
        let mut acc = KElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: KElem) -> Result<KElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.inner.inv {
            Some(t) => KElem(t[a.0 as usize]),
            None => self.pow(a, self.inner.q as u64 - 2),
        })
    }

    /// Absolute trace `K → F_p`, returned as an integer in `0..p`.
    pub fn trace(&self, a: KElem) -> u32 {
        let p = self.p() as u64;
        let mut acc = KElem::ZERO;
        let mut conj = a;
        for _ in 0..self.inner.d {
            acc = self.add(acc, conj);
            conj = self.pow(conj, p);
        }
        debug_assert!(acc.0 < self.p(), "trace must land in the prime field");
        acc.0
    }

    /// All elements in index order.
    pub fn elements(&self) -> Result<Vec<KElem>> {
        if self.inner.q as u64 > ENUMERATION_LIMIT {
            return Err(Error::TooLarge(format!("|K| = {}", self.inner.q)));
        }
        Ok((0..self.inner.q).map(KElem).collect())
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = KElem> {
        (1..self.inner.q).map(KElem)
    }
}

fn digits(mut v: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(v % p);
        v /= p;
    }
    out
}

fn undigits(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn raw_add(k: &KInner, a: u32, b: u32) -> u32 {
    let p = k.base.p;
    let (da, db) = (digits(a, p, k.d), digits(b, p, k.d));
    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
    undigits(&s, p)
}

fn raw_neg(k: &KInner, a: u32) -> u32 {
    let p = k.base.p;
    let s: Vec<u32> = digits(a, p, k.d).iter().map(|&x| (p - x) % p).collect();
    undigits(&s, p)
}

fn raw_mul(k: &KInner, a: u32, b: u32) -> u32 {
    let p = k.base.p as u64;
    let d = k.d;
    let (da, db) = (digits(a, k.base.p, d), digits(b, k.base.p, d));
    let mut prod = vec![0u64; 2 * d - 1];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
        }
    }
    // reduce by the monic modulus, top degree down
    for top in (d..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (j, &g) in k.modulus.iter().enumerate().take(d) {
            let idx = top - d + j;
            prod[idx] = (prod[idx] + (p - c) * g as u64) % p;
        }
        prod[top] = 0;
    }
    let out: Vec<u32> = prod[..d].iter().map(|&x| x as u32).collect();
    undigits(&out, k.base.p)
}

fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut d = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        d += 1;
    }
    (rest == 1).then_some((p, d))
}

/// Remainder of `a` modulo the monic polynomial `b` over `K`.
fn poly_rem(field: &FieldK, a: &[KElem], b: &[KElem]) -> Vec<KElem> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    while r.len() > db {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if !c.is_zero() {
            for (j, &bj) in b.iter().enumerate() {
                let t = field.mul(c, bj);
                r[shift + j] = field.sub(r[shift + j], t);
            }
        }
        r.pop();
    }
    r
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`q`
/// digits of `t`.
fn monic_from_index(field: &FieldK, deg: usize, mut t: u64) -> Vec<KElem> {
    let q = field.order() as u64;
    let mut f = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        f.push(KElem((t % q) as u32));
        t /= q;
    }
    f.push(KElem::ONE);
    f
}

/// Decides irreducibility of a monic `f` over `base` by trial division with
/// every monic polynomial of degree `1..=deg(f)/2`.
pub fn is_irreducible(f: &[KElem], base: &FieldK) -> bool {
    assert!(f.len() >= 2, "polynomial must have degree >= 1");
    assert_eq!(*f.last().unwrap(), KElem::ONE, "polynomial must be monic");
    let deg = f.len() - 1;
    let q = base.order() as u64;
    for j in 1..=deg / 2 {
        for t in 0..q.pow(j as u32) {
            let div = monic_from_index(base, j, t);
            if poly_rem(base, f, &div).iter().all(|c| c.is_zero()) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least monic irreducible of degree `deg` over `base`
/// (coefficients compared from the top down).
pub fn least_irreducible(base: &FieldK, deg: usize) -> Result<Vec<KElem>> {
    let q = base.order() as u128;
    let total = q.pow(deg as u32);
    if total > ENUMERATION_LIMIT as u128 * 16 {
        return Err(Error::TooLarge(format!("search for degree-{deg} irreducible over GF({q})")));
    }
    (0..total as u64)
        .map(|t| monic_from_index(base, deg, t))
        .find(|f| is_irreducible(f, base))
        .ok_or_else(|| Error::Invalid("no irreducible polynomial found".into()))
}

/// Element of `L`: coordinates over `K` in the basis `1, α, …, α^(n-1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LElem(Vec<KElem>);

impl LElem {
    pub fn coords(&self) -> &[KElem] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// True when the element lies in the subfield `K`.
    pub fn in_subfield(&self) -> bool {
        self.0[1..].iter().all(|c| c.is_zero())
    }
}

/// The extension `L = K[y]/(h)` of degree `n` over `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldL {
    k: FieldK,
    n: usize,
    modulus: Vec<KElem>,
}

impl FieldL {
    pub fn new(k: FieldK, n: usize, modulus: Option<Vec<KElem>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::DegreeMismatch("extension degree n must be >= 1".into()));
        }
        let size = (k.order() as u128).checked_pow(n as u32);
        if size.is_none_or(|s| s > (1u128 << 62)) {
            return Err(Error::TooLarge(format!("|L| = {}^{n}", k.order())));
        }
        let modulus = match modulus {
            Some(h) => {
                if h.len() != n + 1 || *h.last().unwrap() != KElem::ONE {
                    return Err(Error::DegreeMismatch(format!(
                        "modulus for L must be monic of degree {n} over K"
                    )));
                }
                if h.iter().any(|c| c.0 >= k.order()) {
                    return Err(Error::Invalid(format!("modulus coefficients must be < {}", k.order())));
                }
                if !is_irreducible(&h, &k) {
                    return Err(Error::Reducible(h.iter().map(|c| c.0).collect()));
                }
                h
            }
            None => least_irreducible(&k, n)?,
        };
        Ok(Self { k, n, modulus })
    }

    pub fn subfield(&self) -> &FieldK {
        &self.k
    }

    /// `[L : K]`.
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> &[KElem] {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        (self.k.order() as u64).pow(self.n as u32)
    }

    pub fn zero(&self) -> LElem {
        LElem(vec![KElem::ZERO; self.n])
    }

    pub fn one(&self) -> LElem {
        self.embed(KElem::ONE)
    }

    /// The residue `α` of the extension variable (equals `1` when `n = 1`
    /// only up to reduction: for `n = 1`, `α = -h_0`).
    pub fn alpha(&self) -> LElem {
        if self.n == 1 {
            return self.embed(self.k.neg(self.modulus[0]));
        }
        let mut c = vec![KElem::ZERO; self.n];
        c[1] = KElem::ONE;
        LElem(c)
    }

    /// Inclusion `K → L`.
    pub fn embed(&self, c: KElem) -> LElem {
        let mut v = vec![KElem::ZERO; self.n];
        v[0] = c;
        LElem(v)
    }

    /// Coordinates over `K` in the basis `1, α, …`.
    pub fn coords(&self, a: &LElem) -> Vec<KElem> {
        a.0.clone()
    }

    pub fn uncoords(&self, v: &[KElem]) -> Result<LElem> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch(format!("expected {} coordinates, got {}", self.n, v.len())));
        }
        Ok(LElem(v.to_vec()))
    }

    pub fn add(&self, a: &LElem, b: &LElem) -> LElem {
        LElem(a.0.iter().zip(&b.0).map(|(&x, &y)| self.k.add(x, y)).collect())
    }

    pub fn sub(&self, a: &LElem, b: &LElem) -> LElem {
        LElem(a.0.iter().zip(&b.0).map(|(&x, &y)| self.k.sub(x, y)).collect())
    }

    pub fn neg(&self, a: &LElem) -> LElem {
        LElem(a.0.iter().map(|&x| self.k.neg(x)).collect())
    }

    /// Multiplication by a scalar of `K`.
    pub fn scale(&self, c: KElem, a: &LElem) -> LElem {
        LElem(a.0.iter().map(|&x| self.k.mul(c, x)).collect())
    }

    pub fn mul(&self, a: &LElem, b: &LElem) -> LElem {
        let n = self.n;
        let k = &self.k;
        let mut prod = vec![KElem::ZERO; 2 * n - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = k.add(prod[i + j], k.mul(x, y));
            }
        }
        let mut r = poly_rem(k, &prod, &self.modulus);
        r.resize(n, KElem::ZERO);
        LElem(r)
    }

    pub fn pow(&self, a: &LElem, mut e: u64) -> LElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &LElem) -> Result<LElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    /// Position of `a` in [`FieldL::elements`].
    pub fn index_of(&self, a: &LElem) -> u64 {
        let q = self.k.order() as u64;
        a.0.iter().rev().fold(0, |acc, c| acc * q + c.0 as u64)
    }

    pub fn from_index(&self, mut i: u64) -> LElem {
        let q = self.k.order() as u64;
        let mut c = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            c.push(KElem((i % q) as u32));
            i /= q;
        }
        LElem(c)
    }

    /// All elements, ordered lexicographically on coordinates with the first
    /// coordinate least significant.
    pub fn elements(&self) -> Result<Vec<LElem>> {
        let size = self.order();
        if size > ENUMERATION_LIMIT {
            return Err(Error::TooLarge(format!("|L| = {size}")));
        }
        Ok((0..size).map(|i| self.from_index(i)).collect())
    }
}

/// Builds the pair `K = GF(p^d) ⊂ L = GF(p^(dn))`.
pub fn make_field_pair(
    p: u64,
    d: usize,
    n: usize,
    modulus_g: Option<Vec<u32>>,
    modulus_h: Option<Vec<u32>>,
) -> Result<(FieldK, FieldL)> {
    let k = FieldK::new(p, d, modulus_g)?;
    let h = modulus_h.map(|h| h.into_iter().map(KElem).collect());
    let l = FieldL::new(k.clone(), n, h)?;
    Ok((k, l))
}
