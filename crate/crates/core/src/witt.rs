//! Diagonal quadratic forms and their Witt and Grothendieck-Witt classes.
//!
//! Over each implemented field the Witt ring is small enough to classify by
//! invariants:
//!
//! * quadratically closed: `W = Z/2`, the rank mod 2;
//! * real closed: `W = Z`, the signature;
//! * finite: four classes `0, <1>, <u>, <1,-u>`, determined by the rank mod 2
//!   and the signed discriminant `(-1)^(r(r-1)/2) Π a_i`.
//!
//! A Grothendieck-Witt class is a Witt class together with an integer rank
//! of the same parity.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::dyadic::binomial;
use crate::fields::{Field, FieldElement, FieldError, SquareClass};
use crate::milnor::{MilnorElement, SWClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WittError {
    #[error("forms or classes live over different fields")]
    FieldMismatch,
    #[error("diagonal entries must be nonzero")]
    ZeroEntry,
    #[error("rank {rank} has the wrong parity for the Witt class")]
    ParityMismatch { rank: i64 },
    #[error("cannot parse form {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("the form has a nontrivial discriminant")]
    NontrivialDiscriminant,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A nondegenerate diagonal form `<a_1, …, a_n>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalForm {
    field: Field,
    entries: Vec<FieldElement>,
}

impl DiagonalForm {
    pub fn new(field: &Field, entries: Vec<FieldElement>) -> Result<Self, WittError> {
        if entries.iter().any(|a| field.is_zero(a)) {
            return Err(WittError::ZeroEntry);
        }
        Ok(DiagonalForm { field: field.clone(), entries })
    }

    pub fn from_ints(field: &Field, entries: &[i64]) -> Result<Self, WittError> {
        Self::new(field, entries.iter().map(|&a| field.from_int(a)).collect())
    }

    /// `n<1>`.
    pub fn unit(field: &Field, n: usize) -> Self {
        DiagonalForm { field: field.clone(), entries: vec![field.one(); n] }
    }

    /// Forms with entries the canonical representatives of the given classes.
    pub fn from_classes(field: &Field, classes: &[SquareClass]) -> Self {
        let entries = classes.iter().map(|&c| field.class_representative(c)).collect();
        DiagonalForm { field: field.clone(), entries }
    }

    /// Parse `<1,-1,u>`; `u` (optionally negated) stands for the field's
    /// canonical non-square, other entries use the field's element syntax.
    pub fn parse(field: &Field, text: &str) -> Result<Self, WittError> {
        let err = |reason: &str| WittError::Parse { text: text.to_string(), reason: reason.to_string() };
        let inner = text
            .trim()
            .strip_prefix('<')
            .and_then(|s| s.strip_suffix('>'))
            .ok_or_else(|| err("expected <a,b,...>"))?;
        if inner.trim().is_empty() {
            return Ok(DiagonalForm { field: field.clone(), entries: Vec::new() });
        }
        let mut entries = Vec::new();
        for part in inner.split(',') {
            let part = part.trim();
            let (negative, body) = match part.strip_prefix('-') {
                Some(rest) if rest.trim() == "u" => (true, "u"),
                _ => (false, part),
            };
            let a = if body == "u" {
                let u = field.non_square().ok_or_else(|| err("the field has no non-square"))?;
                if negative {
                    field.neg(&u)
                } else {
                    u
                }
            } else {
                field.parse_element(body)?
            };
            entries.push(a);
        }
        Self::new(field, entries)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn square_classes(&self) -> Vec<SquareClass> {
        self.entries
            .iter()
            .map(|a| self.field.square_class(a).expect("entries are nonzero"))
            .collect()
    }

    /// Class of `Π a_i` in `k^×/k^×2`.
    pub fn discriminant(&self) -> SquareClass {
        self.square_classes().into_iter().fold(SquareClass::TRIVIAL, SquareClass::mul)
    }

    /// Class of `(-1)^(r(r-1)/2) Π a_i`.
    pub fn signed_discriminant(&self) -> SquareClass {
        let r = self.rank() as u64;
        let d = self.discriminant();
        if (r * r.saturating_sub(1) / 2) % 2 == 1 {
            d.mul(self.field.square_class(&self.field.from_int(-1)).expect("-1 is nonzero"))
        } else {
            d
        }
    }

    /// Orthogonal sum.
    pub fn orthogonal_sum(&self, other: &DiagonalForm) -> Result<DiagonalForm, WittError> {
        self.check_field(&other.field)?;
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(DiagonalForm { field: self.field.clone(), entries })
    }

    /// Tensor product, entries ordered `a_i b_j` with `i` outermost.
    pub fn tensor(&self, other: &DiagonalForm) -> Result<DiagonalForm, WittError> {
        self.check_field(&other.field)?;
        let entries = self
            .entries
            .iter()
            .flat_map(|a| other.entries.iter().map(move |b| (a, b)))
            .map(|(a, b)| self.field.mul(a, b))
            .collect();
        Ok(DiagonalForm { field: self.field.clone(), entries })
    }

    /// `<-a_1, …, -a_n>`.
    pub fn negated(&self) -> DiagonalForm {
        let entries = self.entries.iter().map(|a| self.field.neg(a)).collect();
        DiagonalForm { field: self.field.clone(), entries }
    }

    /// `<c a_1, …, c a_n>`.
    pub fn scaled(&self, c: &FieldElement) -> Result<DiagonalForm, WittError> {
        Self::new(&self.field, self.entries.iter().map(|a| self.field.mul(a, c)).collect())
    }

    /// Value `Σ a_i v_i²`.
    pub fn evaluate(&self, v: &[FieldElement]) -> FieldElement {
        self.entries.iter().zip(v).fold(self.field.zero(), |acc, (a, x)| {
            self.field.add(&acc, &self.field.mul(a, &self.field.mul(x, x)))
        })
    }

    pub fn witt_class(&self) -> WittClass {
        WittClass::of_form(self)
    }

    pub fn gw_class(&self) -> GWClass {
        GWClass { witt: self.witt_class(), rank: self.rank() as i64 }
    }

    /// `w(q) = Π (1 + (a_i))` for fields whose mod-2 cohomology is modelled by
    /// `F_2[e]`: over a real closed field `(a) = e` for negative `a`, over a
    /// quadratically closed field every class vanishes. `None` over finite
    /// fields.
    pub fn stiefel_whitney(&self) -> Option<SWClass> {
        if self.field.is_finite() {
            return None;
        }
        let alphas: Vec<MilnorElement> = self
            .square_classes()
            .into_iter()
            .map(|c| if c.is_trivial() { MilnorElement::zero(0) } else { MilnorElement::e(0) })
            .collect();
        Some(SWClass::from_classes(0, &alphas).expect("degree-one classes"))
    }

    fn check_field(&self, other: &Field) -> Result<(), WittError> {
        if self.field != *other {
            return Err(WittError::FieldMismatch);
        }
        Ok(())
    }
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|a| self.field.format_element(a)).collect();
        write!(f, "<{}>", parts.join(","))
    }
}

/// Canonical datum of a Witt class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WittDatum {
    /// Quadratically closed: rank mod 2.
    Parity(bool),
    /// Real closed: signature.
    Signature(i64),
    /// Finite: rank mod 2 and signed discriminant.
    Finite { odd: bool, disc: SquareClass },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WittClass {
    field: Field,
    datum: WittDatum,
}

impl WittClass {
    pub fn zero(field: &Field) -> Self {
        Self::of_form(&DiagonalForm::unit(field, 0))
    }

    pub fn one(field: &Field) -> Self {
        Self::of_form(&DiagonalForm::unit(field, 1))
    }

    fn of_form(q: &DiagonalForm) -> Self {
        let field = q.field.clone();
        let classes = q.square_classes();
        let datum = if field.is_quadratically_closed() {
            WittDatum::Parity(classes.len() % 2 == 1)
        } else if field.is_real_closed() {
            let neg = classes.iter().filter(|c| !c.is_trivial()).count() as i64;
            WittDatum::Signature(classes.len() as i64 - 2 * neg)
        } else {
            WittDatum::Finite { odd: classes.len() % 2 == 1, disc: q.signed_discriminant() }
        };
        WittClass { field, datum }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn datum(&self) -> WittDatum {
        self.datum
    }

    pub fn is_zero(&self) -> bool {
        match self.datum {
            WittDatum::Parity(odd) => !odd,
            WittDatum::Signature(s) => s == 0,
            WittDatum::Finite { odd, disc } => !odd && disc.is_trivial(),
        }
    }

    /// Rank mod 2 of any form in the class.
    pub fn rank_parity(&self) -> bool {
        match self.datum {
            WittDatum::Parity(odd) | WittDatum::Finite { odd, .. } => odd,
            WittDatum::Signature(s) => s % 2 != 0,
        }
    }

    /// The anisotropic representative: `0`, `<c>` or `<1,-u>` over a finite
    /// field, `|s|<±1>` over a real closed field.
    pub fn representative(&self) -> DiagonalForm {
        let f = &self.field;
        match self.datum {
            WittDatum::Parity(odd) => DiagonalForm::unit(f, odd as usize),
            WittDatum::Signature(s) => {
                let entry = f.from_int(s.signum());
                DiagonalForm { field: f.clone(), entries: vec![entry; s.unsigned_abs() as usize] }
            }
            WittDatum::Finite { odd: true, disc } => DiagonalForm::from_classes(f, &[disc]),
            WittDatum::Finite { odd: false, disc } if disc.is_trivial() => DiagonalForm::unit(f, 0),
            WittDatum::Finite { odd: false, .. } => {
                let u = f.non_square().expect("finite fields have non-squares");
                DiagonalForm { field: f.clone(), entries: vec![f.one(), f.neg(&u)] }
            }
        }
    }

    fn check_field(&self, other: &WittClass) -> Result<(), WittError> {
        if self.field != other.field {
            return Err(WittError::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &WittClass) -> Result<WittClass, WittError> {
        self.check_field(other)?;
        if let (WittDatum::Signature(a), WittDatum::Signature(b)) = (self.datum, other.datum) {
            return Ok(WittClass { field: self.field.clone(), datum: WittDatum::Signature(a + b) });
        }
        Ok(self.representative().orthogonal_sum(&other.representative())?.witt_class())
    }

    pub fn mul(&self, other: &WittClass) -> Result<WittClass, WittError> {
        self.check_field(other)?;
        if let (WittDatum::Signature(a), WittDatum::Signature(b)) = (self.datum, other.datum) {
            return Ok(WittClass { field: self.field.clone(), datum: WittDatum::Signature(a * b) });
        }
        Ok(self.representative().tensor(&other.representative())?.witt_class())
    }

    pub fn neg(&self) -> WittClass {
        self.representative().negated().witt_class()
    }

    /// `n · self`.
    pub fn scale(&self, n: i64) -> WittClass {
        if let WittDatum::Signature(s) = self.datum {
            return WittClass { field: self.field.clone(), datum: WittDatum::Signature(s * n) };
        }
        let base = if n < 0 { self.neg() } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = WittClass::zero(&self.field);
        let mut pow = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.add(&pow).expect("same field");
            }
            pow = pow.add(&pow).expect("same field");
            k >>= 1;
        }
        acc
    }

    /// Largest `n` with the class in `I^n`, `I` the ideal of even-rank forms.
    pub fn filtration(&self) -> Filtration {
        if self.is_zero() {
            return Filtration::Infinite;
        }
        match self.datum {
            WittDatum::Parity(_) => Filtration::Finite(0),
            WittDatum::Signature(s) => Filtration::Finite(s.trailing_zeros()),
            WittDatum::Finite { odd, .. } => Filtration::Finite(if odd { 0 } else { 1 }),
        }
    }
}

impl fmt::Display for WittClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        match self.datum {
            WittDatum::Signature(1) => write!(f, "<1>"),
            WittDatum::Signature(-1) => write!(f, "<-1>"),
            WittDatum::Signature(s) if s > 0 => write!(f, "{s}<1>"),
            WittDatum::Signature(s) => write!(f, "{}<-1>", -s),
            _ => write!(f, "{}", self.representative()),
        }
    }
}

/// Value of the filtration: a natural number or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Filtration {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Filtration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Filtration::Finite(n) => write!(f, "{n}"),
            Filtration::Infinite => write!(f, "∞"),
        }
    }
}

/// A Grothendieck-Witt class: Witt class plus rank of the same parity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GWClass {
    witt: WittClass,
    rank: i64,
}

impl GWClass {
    pub fn new(witt: WittClass, rank: i64) -> Result<Self, WittError> {
        if witt.rank_parity() != (rank.rem_euclid(2) == 1) {
            return Err(WittError::ParityMismatch { rank });
        }
        Ok(GWClass { witt, rank })
    }

    pub fn zero(field: &Field) -> Self {
        GWClass { witt: WittClass::zero(field), rank: 0 }
    }

    pub fn one(field: &Field) -> Self {
        GWClass { witt: WittClass::one(field), rank: 1 }
    }

    /// `n<1>`.
    pub fn from_int(field: &Field, n: i64) -> Self {
        Self::one(field).scale(n)
    }

    pub fn from_bigint(field: &Field, n: &BigInt) -> Self {
        Self::from_int(field, n.to_i64().expect("coefficient fits in i64"))
    }

    pub fn witt(&self) -> &WittClass {
        &self.witt
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn field(&self) -> &Field {
        self.witt.field()
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.witt.is_zero()
    }

    pub fn add(&self, other: &GWClass) -> Result<GWClass, WittError> {
        Ok(GWClass { witt: self.witt.add(&other.witt)?, rank: self.rank + other.rank })
    }

    pub fn mul(&self, other: &GWClass) -> Result<GWClass, WittError> {
        Ok(GWClass { witt: self.witt.mul(&other.witt)?, rank: self.rank * other.rank })
    }

    pub fn neg(&self) -> GWClass {
        GWClass { witt: self.witt.neg(), rank: -self.rank }
    }

    pub fn sub(&self, other: &GWClass) -> Result<GWClass, WittError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, n: i64) -> GWClass {
        GWClass { witt: self.witt.scale(n), rank: self.rank * n }
    }

    /// Number of hyperbolic planes to add to the anisotropic representative
    /// to reach this class; negative for virtual classes.
    pub fn hyperbolic_count(&self) -> i64 {
        (self.rank - self.witt.representative().rank() as i64) / 2
    }
}

impl fmt::Display for GWClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = self.hyperbolic_count();
        let w = self.witt.to_string();
        let planes = |k: i64| if k == 1 { "H".to_string() } else { format!("{k}H") };
        match (self.witt.is_zero(), h) {
            (true, 0) => write!(f, "0"),
            (true, h) if h > 0 => write!(f, "{}", planes(h)),
            (true, h) => write!(f, "-{}", planes(-h)),
            (false, 0) => write!(f, "{w}"),
            (false, h) if h > 0 => write!(f, "{w} + {}", planes(h)),
            (false, h) => write!(f, "{w} - {}", planes(-h)),
        }
    }
}

/// `(1+t)`-adic polynomial algebra over the Grothendieck-Witt ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GWPolynomial {
    field: Field,
    coeffs: Vec<GWClass>,
}

impl GWPolynomial {
    pub fn new(field: &Field, coeffs: Vec<GWClass>) -> Result<Self, WittError> {
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(WittError::FieldMismatch);
        }
        let mut p = GWPolynomial { field: field.clone(), coeffs };
        p.trim();
        Ok(p)
    }

    /// Polynomial with integer coefficients `n_i<1>`.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        let coeffs = coeffs.iter().map(|&n| GWClass::from_int(field, n)).collect();
        GWPolynomial::new(field, coeffs).expect("same field")
    }

    /// `(1+t)^n`.
    pub fn one_plus_t_power(field: &Field, n: u64) -> Self {
        let coeffs = (0..=n).map(|k| GWClass::from_bigint(field, &binomial(n, k))).collect();
        GWPolynomial::new(field, coeffs).expect("same field")
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(GWClass::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[GWClass] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> GWClass {
        self.coeffs.get(i).cloned().unwrap_or_else(|| GWClass::zero(&self.field))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &GWPolynomial) -> Result<GWPolynomial, WittError> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect::<Result<_, _>>()?;
        GWPolynomial::new(&self.field, coeffs)
    }

    pub fn mul(&self, other: &GWPolynomial) -> Result<GWPolynomial, WittError> {
        if self.field != other.field {
            return Err(WittError::FieldMismatch);
        }
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Ok(GWPolynomial { field: self.field.clone(), coeffs: Vec::new() });
        }
        let mut coeffs = vec![GWClass::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b)?)?;
            }
        }
        GWPolynomial::new(&self.field, coeffs)
    }

    /// `Δ^j f(-1) = Σ_i C(i, j) (-1)^(i-j) a_i`, the `j`-th coefficient of
    /// `f` expanded in powers of `(1+t)`.
    pub fn divided_derivative_at_minus_one(&self, j: usize) -> GWClass {
        let mut acc = GWClass::zero(&self.field);
        for (i, a) in self.coeffs.iter().enumerate().skip(j) {
            let c = binomial(i as u64, j as u64).to_i64().expect("binomial fits in i64");
            let c = if (i - j) % 2 == 1 { -c } else { c };
            acc = acc.add(&a.scale(c)).expect("same field");
        }
        acc
    }

    /// Whether `(1+t)^n` divides the polynomial.
    pub fn divisible_by_one_plus_t(&self, n: usize) -> bool {
        (0..n).all(|j| self.divided_derivative_at_minus_one(j).is_zero())
    }
}

impl fmt::Display for GWPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})t"),
                _ => format!("({c})t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `λ^i(q) = Σ_{|S| = i} <Π_{s∈S} a_s>`. With `n₀` square entries and `n₁`
/// non-square entries the sum has `Σ_{j even} C(n₀,i-j)C(n₁,j)` copies of
/// `<1>` and the remaining terms equal to `<u>`.
pub fn lambda_power(q: &DiagonalForm, i: usize) -> GWClass {
    let field = q.field();
    let n1 = q.square_classes().iter().filter(|c| !c.is_trivial()).count() as u64;
    let n0 = q.rank() as u64 - n1;
    let i = i as u64;
    let mut even = BigInt::zero();
    let mut odd = BigInt::zero();
    for j in 0..=i.min(n1) {
        let term = binomial(n0, i - j) * binomial(n1, j);
        if j % 2 == 0 {
            even += term;
        } else {
            odd += term;
        }
    }
    let ones = GWClass::from_bigint(field, &even);
    if odd.is_zero() {
        return ones;
    }
    let u = DiagonalForm::from_classes(field, &[SquareClass::NONTRIVIAL]).gw_class();
    ones.add(&u.scale(odd.to_i64().expect("coefficient fits in i64"))).expect("same field")
}

/// `λ_t(q) = Σ λ^i(q) t^i`.
pub fn lambda_poly(q: &DiagonalForm) -> GWPolynomial {
    let coeffs = (0..=q.rank()).map(|i| lambda_power(q, i)).collect();
    GWPolynomial::new(q.field(), coeffs).expect("same field")
}

/// The 2-fold Pfister form `<1,x><1,y> = <1,x,y,xy>`.
pub fn pfister2(field: &Field, x: &FieldElement, y: &FieldElement) -> Result<DiagonalForm, WittError> {
    if field.is_zero(x) || field.is_zero(y) {
        return Err(WittError::ZeroEntry);
    }
    DiagonalForm::new(field, vec![field.one(), x.clone(), y.clone(), field.mul(x, y)])
}

/// `(1+t)²(1+(q-2)t+t²)` for a GW class `q`.
pub fn pfister_lambda_shape(q: &GWClass) -> GWPolynomial {
    let field = q.field();
    let inner = GWPolynomial::new(
        field,
        vec![GWClass::one(field), q.sub(&GWClass::from_int(field, 2)).expect("same field"), GWClass::one(field)],
    )
    .expect("same field");
    GWPolynomial::one_plus_t_power(field, 2).mul(&inner).expect("same field")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeMap;

    fn form(field: &Field, text: &str) -> DiagonalForm {
        DiagonalForm::parse(field, text).unwrap()
    }

    fn all_vectors(field: &Field, r: usize) -> Vec<Vec<FieldElement>> {
        let q = field.order().unwrap();
        (0..q.pow(r as u32))
            .map(|mut n| {
                (0..r)
                    .map(|_| {
                        let a = field.element_from_index(n % q);
                        n /= q;
                        a
                    })
                    .collect()
            })
            .collect()
    }

    // Counts of representations of each value; over a finite field these
    // determine the isometry class of a nondegenerate form of given rank.
    fn representation_counts(q: &DiagonalForm) -> BTreeMap<u64, usize> {
        let f = q.field();
        let mut counts = BTreeMap::new();
        for v in all_vectors(f, q.rank()) {
            *counts.entry(f.index_of(&q.evaluate(&v))).or_insert(0) += 1;
        }
        counts
    }

    fn witt_equal_oracle(a: &DiagonalForm, b: &DiagonalForm) -> bool {
        if a.rank() % 2 != b.rank() % 2 {
            return false;
        }
        let field = a.field();
        let h = form(field, "<1,-1>");
        let (mut a, mut b) = (a.clone(), b.clone());
        while a.rank() < b.rank() {
            a = a.orthogonal_sum(&h).unwrap();
        }
        while b.rank() < a.rank() {
            b = b.orthogonal_sum(&h).unwrap();
        }
        representation_counts(&a) == representation_counts(&b)
    }

    fn random_form(field: &Field, rank: usize, rng: &mut impl Rng) -> DiagonalForm {
        let entries = (0..rank)
            .map(|_| match field.order() {
                Some(q) => field.element_from_index(rng.gen_range(1..q)),
                None => field.rational(rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(1..=5)).unwrap(),
            })
            .collect();
        DiagonalForm::new(field, entries).unwrap()
    }

    #[test]
    fn witt_class_examples() {
        let f5 = Field::prime(5).unwrap();
        assert!(form(&f5, "<1,-1>").witt_class().is_zero());
        let real = Field::real_closed();
        assert_eq!(form(&real, "<1,1,-1>").witt_class().datum(), WittDatum::Signature(1));
        let f3 = Field::prime(3).unwrap();
        let q = form(&f3, "<1,1>");
        assert!(!q.witt_class().is_zero());
        assert_eq!(q.witt_class().representative().rank(), 2);
        // no nonzero zero of X² + Y² over F_3
        assert!(all_vectors(&f3, 2).iter().skip(1).all(|v| !f3.is_zero(&q.evaluate(v))));
    }

    #[test]
    fn hyperbolic_planes_vanish() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for spec in ["qc", "real", "f:3", "f:5", "f:7", "f:3^2"] {
            let f = Field::parse(spec).unwrap();
            for _ in 0..100 {
                let q = random_form(&f, rng.gen_range(0..6), &mut rng);
                let a = random_form(&f, 1, &mut rng).entries()[0].clone();
                let h = DiagonalForm::new(&f, vec![a.clone(), f.neg(&a)]).unwrap();
                assert!(h.witt_class().is_zero());
                assert_eq!(q.orthogonal_sum(&h).unwrap().witt_class(), q.witt_class());
                let rep = q.witt_class().representative();
                assert_eq!(rep.witt_class(), q.witt_class());
            }
        }
    }

    #[test]
    fn finite_classes_match_representation_counts() {
        for spec in ["f:3", "f:5", "f:7"] {
            let f = Field::parse(spec).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(4);
            let forms: Vec<DiagonalForm> = (0..40).map(|_| random_form(&f, rng.gen_range(0..=3), &mut rng)).collect();
            for a in &forms {
                for b in &forms {
                    if a.rank() + b.rank() > 5 {
                        continue;
                    }
                    assert_eq!(a.witt_class() == b.witt_class(), witt_equal_oracle(a, b), "{a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn witt_ring_has_four_elements_over_finite_fields() {
        for spec in ["f:3", "f:5", "f:7", "f:3^2"] {
            let f = Field::parse(spec).unwrap();
            let mut seen = std::collections::HashSet::new();
            for r in 0..=3 {
                for classes in 0..(1u32 << r) {
                    let cls: Vec<SquareClass> = (0..r).map(|i| SquareClass(classes >> i & 1 == 1)).collect();
                    seen.insert(DiagonalForm::from_classes(&f, &cls).witt_class());
                }
            }
            assert_eq!(seen.len(), 4, "{spec}");
        }
    }

    #[test]
    fn gw_examples() {
        let real = Field::real_closed();
        let sum = form(&real, "<1>").gw_class().add(&form(&real, "<-1>").gw_class()).unwrap();
        assert!(sum.witt().is_zero());
        assert_eq!(sum.rank(), 2);
        let x = form(&real, "<-1>").gw_class();
        assert_eq!(x.mul(&x).unwrap(), GWClass::one(&real));
        let f7 = Field::prime(7).unwrap();
        let a = form(&f7, "<3,5>").gw_class();
        assert_eq!(a.mul(&GWClass::one(&f7)).unwrap(), a);
        assert!(GWClass::new(WittClass::one(&f7), 2).is_err());
    }

    #[test]
    fn gw_ring_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for spec in ["qc", "real", "f:3", "f:5", "f:7", "f:3^2"] {
            let f = Field::parse(spec).unwrap();
            for _ in 0..1000 {
                let gw = |rng: &mut ChaCha8Rng| {
                    let q = random_form(&f, rng.gen_range(0..4), rng).gw_class();
                    if rng.gen_bool(0.3) {
                        q.neg()
                    } else {
                        q
                    }
                };
                let (a, b, c) = (gw(&mut rng), gw(&mut rng), gw(&mut rng));
                assert_eq!(a.mul(&b.mul(&c).unwrap()).unwrap(), a.mul(&b).unwrap().mul(&c).unwrap());
                assert_eq!(a.add(&b.add(&c).unwrap()).unwrap(), a.add(&b).unwrap().add(&c).unwrap());
                assert_eq!(
                    a.mul(&b.add(&c).unwrap()).unwrap(),
                    a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
                );
                assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
                assert!(a.add(&a.neg()).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn gw_product_matches_tensor_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for spec in ["real", "f:3", "f:5", "f:7^2"] {
            let f = Field::parse(spec).unwrap();
            for _ in 0..200 {
                let a = random_form(&f, rng.gen_range(0..4), &mut rng);
                let b = random_form(&f, rng.gen_range(0..4), &mut rng);
                assert_eq!(a.gw_class().mul(&b.gw_class()).unwrap(), a.tensor(&b).unwrap().gw_class());
                assert_eq!(a.gw_class().add(&b.gw_class()).unwrap(), a.orthogonal_sum(&b).unwrap().gw_class());
            }
        }
    }

    fn lambda_by_subsets(q: &DiagonalForm, i: usize) -> GWClass {
        let f = q.field();
        let mut acc = GWClass::zero(f);
        for mask in 0u32..(1 << q.rank()) {
            if mask.count_ones() as usize != i {
                continue;
            }
            let prod = (0..q.rank())
                .filter(|&s| mask >> s & 1 == 1)
                .fold(f.one(), |p, s| f.mul(&p, &q.entries()[s]));
            acc = acc.add(&DiagonalForm::new(f, vec![prod]).unwrap().gw_class()).unwrap();
        }
        acc
    }

    #[test]
    fn lambda_examples() {
        let f7 = Field::prime(7).unwrap();
        let q = pfister2(&f7, &f7.from_int(3), &f7.from_int(5)).unwrap();
        let gq = q.gw_class();
        let two = GWClass::from_int(&f7, 2);
        assert_eq!(lambda_power(&q, 2), gq.scale(2).sub(&two).unwrap());
        assert_eq!(lambda_power(&q, 3), gq);
        assert_eq!(lambda_power(&q, 4), GWClass::one(&f7));
        assert_eq!(lambda_power(&q, 0), GWClass::one(&f7));
        assert!(lambda_power(&q, 5).is_zero());
        assert_eq!(lambda_poly(&form(&f7, "<1>")), GWPolynomial::from_ints(&f7, &[1, 1]));
        let real = Field::real_closed();
        assert_eq!(lambda_poly(&form(&real, "<1,1>")), GWPolynomial::from_ints(&real, &[1, 2, 1]));
    }

    #[test]
    fn lambda_matches_subset_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for spec in ["qc", "real", "f:3", "f:5", "f:3^2"] {
            let f = Field::parse(spec).unwrap();
            for _ in 0..30 {
                let q = random_form(&f, rng.gen_range(0..8), &mut rng);
                for i in 0..=q.rank() + 1 {
                    assert_eq!(lambda_power(&q, i), lambda_by_subsets(&q, i));
                }
            }
        }
    }

    #[test]
    fn lambda_sum_rule() {
        for spec in ["f:3", "f:5", "real"] {
            let f = Field::parse(spec).unwrap();
            let classes = f.square_classes();
            // every form of rank ≤ 5 up to entry order, split in every way
            for r in 0..=5usize {
                for mask in 0u32..(1 << r) {
                    let cls: Vec<SquareClass> = (0..r).map(|i| classes[(mask >> i & 1) as usize % classes.len()]).collect();
                    for split in 0..=r {
                        let u = DiagonalForm::from_classes(&f, &cls[..split]);
                        let v = DiagonalForm::from_classes(&f, &cls[split..]);
                        let uv = u.orthogonal_sum(&v).unwrap();
                        for n in 0..=r {
                            let mut rhs = GWClass::zero(&f);
                            for i in 0..=n {
                                rhs = rhs.add(&lambda_power(&u, i).mul(&lambda_power(&v, n - i)).unwrap()).unwrap();
                            }
                            assert_eq!(lambda_power(&uv, n), rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pfister_examples() {
        let real = Field::real_closed();
        assert_eq!(pfister2(&real, &real.one(), &real.one()).unwrap(), DiagonalForm::unit(&real, 4));
        let q = pfister2(&real, &real.from_int(-1), &real.from_int(-1)).unwrap();
        assert_eq!(q.witt_class().datum(), WittDatum::Signature(0));
        let f7 = Field::prime(7).unwrap();
        for x in 1..7 {
            for y in 1..7 {
                let q = pfister2(&f7, &f7.from_int(x), &f7.from_int(y)).unwrap();
                assert!(q.discriminant().is_trivial());
                assert_eq!(lambda_poly(&q), pfister_lambda_shape(&q.gw_class()));
            }
        }
        assert_eq!(pfister2(&f7, &f7.zero(), &f7.one()), Err(WittError::ZeroEntry));
    }

    #[test]
    fn filtration_values() {
        let real = Field::real_closed();
        assert_eq!(form(&real, "<1,1>").witt_class().filtration(), Filtration::Finite(1));
        assert_eq!(form(&real, "<1,1,1,1,-1,-1,-1,-1,1,1,1,1,1,1,1,1>").witt_class().filtration(), Filtration::Finite(3));
        assert_eq!(WittClass::zero(&real).filtration(), Filtration::Infinite);
        assert_eq!(Filtration::Infinite.to_string(), "∞");
        for spec in ["qc", "real", "f:5"] {
            let f = Field::parse(spec).unwrap();
            assert_eq!(form(&f, "<1>").witt_class().filtration(), Filtration::Finite(0));
        }
        let f5 = Field::prime(5).unwrap();
        assert_eq!(form(&f5, "<1,-u>").witt_class().filtration(), Filtration::Finite(1));
        assert_eq!(form(&f5, "<1,u,u,1>").witt_class().filtration(), Filtration::Infinite);
    }

    #[test]
    fn divisibility_examples() {
        let f5 = Field::prime(5).unwrap();
        let q = pfister2(&f5, &f5.from_int(2), &f5.from_int(3)).unwrap();
        assert!(lambda_poly(&q).divisible_by_one_plus_t(2));
        assert!(GWPolynomial::one_plus_t_power(&f5, 3).divisible_by_one_plus_t(3));
        assert!(!GWPolynomial::one_plus_t_power(&f5, 3).divisible_by_one_plus_t(4));
        let real = Field::real_closed();
        let f = GWPolynomial::from_ints(&real, &[1, 0, 1]);
        assert!(!f.divisible_by_one_plus_t(2));
        assert_eq!(f.divided_derivative_at_minus_one(1), GWClass::from_int(&real, -2));
    }

    // repeated synthetic division by 1+t over the GW ring
    fn divisibility_oracle(f: &GWPolynomial, n: usize) -> bool {
        let mut cur = f.coeffs().to_vec();
        for _ in 0..n {
            if cur.is_empty() {
                return true;
            }
            // f = (1+t) g + r with g_top = f_top, g_{i-1} = f_i - g_i
            let d = cur.len() - 1;
            let mut g = vec![GWClass::zero(f.field()); d];
            let mut carry = GWClass::zero(f.field());
            for i in (1..=d).rev() {
                let gi = cur[i].sub(&carry).unwrap();
                g[i - 1] = gi.clone();
                carry = gi;
            }
            if !cur[0].sub(&carry).unwrap().is_zero() {
                return false;
            }
            cur = g;
        }
        true
    }

    #[test]
    fn divisibility_matches_synthetic_division() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for spec in ["real", "f:3", "f:5"] {
            let f = Field::parse(spec).unwrap();
            for _ in 0..200 {
                let base = lambda_poly(&random_form(&f, rng.gen_range(0..5), &mut rng));
                let k = rng.gen_range(0..3);
                let poly = base.mul(&GWPolynomial::one_plus_t_power(&f, k)).unwrap();
                for n in 0..6 {
                    assert_eq!(poly.divisible_by_one_plus_t(n), divisibility_oracle(&poly, n));
                }
            }
        }
    }

    #[test]
    fn form_syntax() {
        let f7 = Field::prime(7).unwrap();
        let q = form(&f7, "<1,-1,u>");
        assert_eq!(q.to_string(), "<1,6,3>");
        assert_eq!(form(&f7, &q.to_string()), q);
        assert_eq!(form(&f7, "<-u>").entries()[0], f7.from_int(4));
        assert!(DiagonalForm::parse(&f7, "<1,0>").is_err());
        assert!(DiagonalForm::parse(&f7, "1,2").is_err());
        assert!(DiagonalForm::parse(&Field::quadratically_closed(), "<u>").is_err());
        let real = Field::real_closed();
        let q = form(&real, "<2,-1/3,u>");
        assert_eq!(form(&real, &q.to_string()), q);
    }

    #[test]
    fn real_sw_classes() {
        let real = Field::real_closed();
        let w = form(&real, "<1,-1,-2>").stiefel_whitney().unwrap();
        assert_eq!(w.total().to_string(), "1 + e^2");
        assert!(form(&Field::prime(3).unwrap(), "<1>").stiefel_whitney().is_none());
        let qc = Field::quadratically_closed();
        assert!(form(&qc, "<-1,-1,5>").stiefel_whitney().unwrap().total().is_one());
    }
}
