//! Additive characters evaluated exactly in `Q(ζ_p)`.
//!
//! Values are kept as rational combinations of `1, ζ, …, ζ^(p-2)`; the
//! relation `Σ ζ^j = 0` is used to clear the top coefficient, which makes the
//! representation canonical.

use std::ops::{Add, Mul, Sub};

use num_rational::Rational64;

use crate::codes::{space_tuple, weight, LMatrix};
use crate::error::{Error, Result};
use crate::gf_tower::{FieldK, FieldL, KElem, LElem};
use crate::isometry::CodeMap;
use crate::kspace::{self, dot, KMatrix};
use crate::solutions::indicator_table;

/// Largest characteristic supported by [`CycloRat`].
pub const MAX_P: u32 = 13;

/// `Σ c_j ζ_p^j` with rational `c_j` and `c_(p-1) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloRat {
    p: u32,
    coeffs: Vec<Rational64>,
}

impl CycloRat {
    pub fn zero(p: u32) -> Self {
        Self { p, coeffs: vec![Rational64::from_integer(0); p as usize] }
    }

    pub fn from_rational(p: u32, r: Rational64) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = r;
        z
    }

    pub fn one(p: u32) -> Self {
        Self::from_rational(p, Rational64::from_integer(1))
    }

    /// `ζ_p^j`.
    pub fn zeta_pow(p: u32, j: u32) -> Self {
        Self::from_exponent_counts(p, &{
            let mut c = vec![0i64; p as usize];
            c[(j % p) as usize] = 1;
            c
        })
    }

    /// `Σ_j counts[j] ζ^j`.
    pub fn from_exponent_counts(p: u32, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), p as usize);
        let mut z = Self { p, coeffs: counts.iter().map(|&c| Rational64::from_integer(c)).collect() };
        z.normalize();
        z
    }

    fn normalize(&mut self) {
        let top = self.coeffs[self.p as usize - 1];
        if top != Rational64::from_integer(0) {
            for c in &mut self.coeffs {
                *c -= top;
            }
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[Rational64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == Rational64::from_integer(0))
    }

    /// The value as a rational number, when it is one.
    pub fn as_rational(&self) -> Option<Rational64> {
        self.coeffs[1..].iter().all(|c| *c == Rational64::from_integer(0)).then_some(self.coeffs[0])
    }

    pub fn scale(&self, r: Rational64) -> Self {
        Self { p: self.p, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }
}

impl Add for CycloRat {
    type Output = CycloRat;

    fn add(self, rhs: CycloRat) -> CycloRat {
        assert_eq!(self.p, rhs.p);
        let mut z = CycloRat { p: self.p, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() };
        z.normalize();
        z
    }
}

impl Sub for CycloRat {
    type Output = CycloRat;

    fn sub(self, rhs: CycloRat) -> CycloRat {
        self + rhs.scale(Rational64::from_integer(-1))
    }
}

impl Mul for CycloRat {
    type Output = CycloRat;

    fn mul(self, rhs: CycloRat) -> CycloRat {
        assert_eq!(self.p, rhs.p);
        let p = self.p as usize;
        let mut coeffs = vec![Rational64::from_integer(0); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[(i + j) % p] += a * b;
            }
        }
        let mut z = CycloRat { p: self.p, coeffs };
        z.normalize();
        z
    }
}

/// A nontrivial additive character `π: K → C^*`, written as `ζ_p^e(x)` for an
/// `F_p`-linear functional `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KCharacter {
    /// `e = absolute trace`.
    #[default]
    Trace,
    /// `e = coefficient of x^0` in the polynomial representation of `K`.
    ConstantCoefficient,
}

impl KCharacter {
    pub fn exponent(self, field: &FieldK, x: KElem) -> u32 {
        match self {
            KCharacter::Trace => field.trace(x),
            KCharacter::ConstantCoefficient => x.index() % field.p(),
        }
    }
}

fn check_p(field: &FieldK) -> Result<u32> {
    let p = field.p();
    if p > MAX_P {
        return Err(Error::Invalid(format!("characteristic {p} exceeds the supported maximum {MAX_P}")));
    }
    Ok(p)
}

/// Exponent of `χ_v(u) = π((v, u))`.
fn char_exponent(field: &FieldK, choice: KCharacter, v: &[KElem], u: &[KElem]) -> u32 {
    choice.exponent(field, dot(field, v, u))
}

/// `χ_v(u) = π((v, u))` with the trace character.
pub fn char_value(field: &FieldK, v: &[KElem], u: &[KElem]) -> Result<CycloRat> {
    char_value_with(field, KCharacter::Trace, v, u)
}

pub fn char_value_with(field: &FieldK, choice: KCharacter, v: &[KElem], u: &[KElem]) -> Result<CycloRat> {
    if v.len() != u.len() {
        return Err(Error::DimensionMismatch("character index and argument differ in length".into()));
    }
    let p = check_p(field)?;
    Ok(CycloRat::zeta_pow(p, char_exponent(field, choice, v, u)))
}

/// `(1/|L|) Σ_{b ∈ L} χ_b(a)`, with `L` viewed as `K^n`.
pub fn coordinate_character_mean(field: &FieldL, choice: KCharacter, a: &LElem) -> Result<CycloRat> {
    let kf = field.subfield();
    let p = check_p(kf)?;
    let mut counts = vec![0i64; p as usize];
    for b in field.elements()? {
        counts[char_exponent(kf, choice, b.coords(), a.coords()) as usize] += 1;
    }
    Ok(CycloRat::from_exponent_counts(p, &counts).scale(Rational64::new(1, field.order() as i64)))
}

/// Checks `(1/|L|) Σ_b χ_b(a) = 1 - wt(a)`.
pub fn coordinate_weight_identity(field: &FieldL, a: &LElem) -> Result<bool> {
    coordinate_weight_identity_with(field, KCharacter::Trace, a)
}

pub fn coordinate_weight_identity_with(field: &FieldL, choice: KCharacter, a: &LElem) -> Result<bool> {
    let mean = coordinate_character_mean(field, choice, a)?;
    let expected = if a.is_zero() { 1 } else { 0 };
    Ok(mean.as_rational() == Some(Rational64::from_integer(expected)))
}

/// `Σ_{v ∈ K^k} (Σ_i 1_{V_i}(v)/|V_i|) χ_v(u)` for the column spaces of `a`.
pub fn character_sum(a: &LMatrix, choice: KCharacter, u: &[KElem]) -> Result<CycloRat> {
    let kf = a.subfield();
    let p = check_p(kf)?;
    let table = indicator_table(kf, &space_tuple(a))?;
    let points = kspace::all_points(kf, a.k())?;
    // entries are scaled by q^k; gather them per exponent, then divide once
    let mut counts = vec![0i64; p as usize];
    for (v, &w) in points.iter().zip(table.values()) {
        if w != 0 {
            counts[char_exponent(kf, choice, v, u) as usize] += w as i64;
        }
    }
    let scale = (kf.order() as i64).pow(a.k() as u32);
    Ok(CycloRat::from_exponent_counts(p, &counts).scale(Rational64::new(1, scale)))
}

/// `m - Σ_v (Σ_i 1_{V_i}(v)/|V_i|) χ_v(u)`.
pub fn weight_via_characters(a: &LMatrix, choice: KCharacter, u: &[KElem]) -> Result<CycloRat> {
    let p = check_p(a.subfield())?;
    let m = CycloRat::from_rational(p, Rational64::from_integer(a.m() as i64));
    Ok(m - character_sum(a, choice, u)?)
}

/// Checks that the character expression reproduces `wt(Aᵀu)` exactly.
pub fn weight_representation_check(a: &LMatrix, u: &[KElem]) -> Result<bool> {
    weight_representation_check_with(a, KCharacter::Trace, u)
}

pub fn weight_representation_check_with(a: &LMatrix, choice: KCharacter, u: &[KElem]) -> Result<bool> {
    if u.len() != a.k() {
        return Err(Error::DimensionMismatch(format!("message of length {} for k = {}", u.len(), a.k())));
    }
    let lhs = weight_via_characters(a, choice, u)?;
    Ok(lhs.as_rational() == Some(Rational64::from_integer(weight(&a.encode(u)) as i64)))
}

/// For `σ(u) = Mᵀu` with `M ∈ K^(k×n)`, checks `χ_b(σ(u)) = χ_{Mb}(u)` for
/// every `b ∈ K^n` and `u ∈ K^k`.
pub fn dual_map_diagram_commutes(field: &FieldK, choice: KCharacter, m: &KMatrix) -> Result<bool> {
    let mt = m.transpose();
    for b in kspace::all_points(field, m.cols())? {
        let mb = m.apply(field, &b);
        for u in kspace::all_points(field, m.rows())? {
            let sigma_u = mt.apply(field, &u);
            if char_exponent(field, choice, &b, &sigma_u) != char_exponent(field, choice, &mb, &u) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A message on which the character sums of source and image differ, if any.
pub fn distinguishing_message(fmap: &CodeMap, choice: KCharacter) -> Result<Option<Vec<KElem>>> {
    for u in fmap.source().messages()? {
        if character_sum(fmap.source(), choice, &u)? != character_sum(fmap.image(), choice, &u)? {
            return Ok(Some(u));
        }
    }
    Ok(None)
}
