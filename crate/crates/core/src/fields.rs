//! Concrete base fields of characteristic different from 2.
//!
//! Three kinds of field are supported:
//!
//! * a quadratically closed field, where every element is a square;
//! * a real closed field, where the square class of an element is its sign;
//! * finite fields `F_q`, `q = p^k` with `p` odd, presented as
//!   `F_p[T]/(modulus)` for a monic irreducible `modulus` of degree `k`.
//!
//! Elements of the first two kinds are carried as exact rationals.
//! Finite field elements are coefficient vectors of length `k`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("unrecognised field spec {0:?} (expected qc, real, f:p or f:p^k)")]
    BadSpec(String),
    #[error("characteristic {0} is not an odd prime")]
    BadCharacteristic(u64),
    #[error("field of order {0} is too large")]
    TooLarge(u128),
    #[error("modulus is not irreducible")]
    ReducibleModulus,
    #[error("zero has no square class")]
    ZeroSquareClass,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("operation needs a finite field")]
    NotFinite,
    #[error("elements belong to different fields")]
    FieldMismatch,
}

/// Largest supported finite field order; keeps all products inside `u128`
/// and exhaustive searches affordable.
pub const MAX_FINITE_ORDER: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteField {
    p: u64,
    degree: usize,
    /// Monic modulus, low degree first, length `degree + 1`.
    modulus: Vec<u64>,
    order: u64,
    /// Coefficient vector of the least non-square in enumeration order.
    non_square: Vec<u64>,
}

impl FiniteField {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        self.order
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    QuadraticallyClosed,
    RealClosed,
    Finite(FiniteField),
}

/// A field descriptor. Cheap to clone; equality compares the presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Field(Arc<FieldKind>);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Finite(Vec<u64>),
}

/// An element of `k^× / k^×2`. Every implemented field has at most two square
/// classes, so the class is a single bit: `false` for squares.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass(pub bool);

impl serde::Serialize for SquareClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl SquareClass {
    pub const TRIVIAL: SquareClass = SquareClass(false);
    pub const NONTRIVIAL: SquareClass = SquareClass(true);

    pub fn is_trivial(self) -> bool {
        !self.0
    }

    /// Group law of `k^×/k^×2`.
    pub fn mul(self, other: SquareClass) -> SquareClass {
        SquareClass(self.0 ^ other.0)
    }
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl Field {
    pub fn quadratically_closed() -> Self {
        Field(Arc::new(FieldKind::QuadraticallyClosed))
    }

    pub fn real_closed() -> Self {
        Field(Arc::new(FieldKind::RealClosed))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Self::finite_with_modulus(p, vec![0, 1])
    }

    /// `F_(p^k)` presented by the lexicographically first monic irreducible
    /// polynomial of degree `k` over `F_p`.
    pub fn finite(p: u64, k: usize) -> Result<Self, FieldError> {
        if !is_odd_prime(p) {
            return Err(FieldError::BadCharacteristic(p));
        }
        if k == 0 {
            return Err(FieldError::BadSpec(format!("f:{p}^0")));
        }
        if k == 1 {
            return Self::prime(p);
        }
        let base = Self::prime(p)?;
        check_order(p, k)?;
        let modulus = base.find_irreducible(k)?;
        let coeffs = modulus.coeffs().iter().map(|c| base.to_u64(c)).collect();
        Self::finite_with_modulus(p, coeffs)
    }

    /// `F_p[T]/(modulus)` for a monic modulus given low degree first.
    pub fn finite_with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self, FieldError> {
        if !is_odd_prime(p) {
            return Err(FieldError::BadCharacteristic(p));
        }
        let mut modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        while modulus.len() > 1 && *modulus.last().unwrap() == 0 {
            modulus.pop();
        }
        let degree = modulus.len() - 1;
        if degree == 0 || modulus[degree] != 1 {
            return Err(FieldError::ReducibleModulus);
        }
        let order = check_order(p, degree)?;
        if degree > 1 {
            let base = Self::prime(p)?;
            let poly = Poly::new(&base, modulus.iter().map(|&c| base.from_u64(c)).collect());
            if !poly.is_irreducible(&base)? {
                return Err(FieldError::ReducibleModulus);
            }
        }
        let mut ff = FiniteField { p, degree, modulus, order, non_square: vec![0; degree] };
        let field = Field(Arc::new(FieldKind::Finite(ff.clone())));
        ff.non_square = (1..order)
            .map(|i| field.element_from_index(i))
            .find(|a| !field.is_square(a))
            .map(|a| match a {
                FieldElement::Finite(v) => v,
                FieldElement::Rational(_) => unreachable!(),
            })
            .expect("a finite field of odd order has non-squares");
        Ok(Field(Arc::new(FieldKind::Finite(ff))))
    }

    /// Parse `qc`, `real`, `f:p` or `f:p^k`.
    pub fn parse(spec: &str) -> Result<Self, FieldError> {
        let spec = spec.trim();
        match spec {
            "qc" => return Ok(Self::quadratically_closed()),
            "real" => return Ok(Self::real_closed()),
            _ => {}
        }
        let bad = || FieldError::BadSpec(spec.to_string());
        let rest = spec.strip_prefix("f:").ok_or_else(bad)?;
        let (p, k) = match rest.split_once('^') {
            Some((p, k)) => (p.parse::<u64>().map_err(|_| bad())?, k.parse::<usize>().map_err(|_| bad())?),
            None => (rest.parse::<u64>().map_err(|_| bad())?, 1),
        };
        Self::finite(p, k)
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0
    }

    pub fn as_finite(&self) -> Option<&FiniteField> {
        match &*self.0 {
            FieldKind::Finite(ff) => Some(ff),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_finite().is_some()
    }

    pub fn is_real_closed(&self) -> bool {
        matches!(*self.0, FieldKind::RealClosed)
    }

    pub fn is_quadratically_closed(&self) -> bool {
        matches!(*self.0, FieldKind::QuadraticallyClosed)
    }

    /// Number of elements for a finite field.
    pub fn order(&self) -> Option<u64> {
        self.as_finite().map(|ff| ff.order)
    }

    /// Spec string accepted by [`Field::parse`].
    pub fn spec(&self) -> String {
        match &*self.0 {
            FieldKind::QuadraticallyClosed => "qc".into(),
            FieldKind::RealClosed => "real".into(),
            FieldKind::Finite(ff) if ff.degree == 1 => format!("f:{}", ff.p),
            FieldKind::Finite(ff) => format!("f:{}^{}", ff.p, ff.degree),
        }
    }

    pub fn zero(&self) -> FieldElement {
        match &*self.0 {
            FieldKind::Finite(ff) => FieldElement::Finite(vec![0; ff.degree]),
            _ => FieldElement::Rational(BigRational::zero()),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        match &*self.0 {
            FieldKind::Finite(ff) => {
                let mut v = vec![0; ff.degree];
                v[0] = n.rem_euclid(ff.p as i64) as u64;
                FieldElement::Finite(v)
            }
            _ => FieldElement::Rational(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match &*self.0 {
            FieldKind::Finite(ff) => {
                let r: BigInt = ((n % ff.p) + ff.p) % ff.p;
                let mut v = vec![0; ff.degree];
                v[0] = u64::try_from(r).expect("reduced residue fits");
                FieldElement::Finite(v)
            }
            _ => FieldElement::Rational(BigRational::from_integer(n.clone())),
        }
    }

    pub fn rational(&self, num: i64, den: i64) -> Result<FieldElement, FieldError> {
        if den == 0 {
            return Err(FieldError::DivisionByZero);
        }
        self.div(&self.from_int(num), &self.from_int(den))
    }

    fn from_u64(&self, n: u64) -> FieldElement {
        match &*self.0 {
            FieldKind::Finite(ff) => {
                let mut v = vec![0; ff.degree];
                v[0] = n % ff.p;
                FieldElement::Finite(v)
            }
            _ => FieldElement::Rational(BigRational::from_integer(BigInt::from(n))),
        }
    }

    /// Prime-field residue of an element of `F_p` (the constant coefficient).
    fn to_u64(&self, a: &FieldElement) -> u64 {
        match a {
            FieldElement::Finite(v) => v[0],
            FieldElement::Rational(_) => panic!("not a finite field element"),
        }
    }

    /// The `i`-th element of a finite field, reading `i` in base `p` as the
    /// coefficient vector (low degree first). Index 0 is zero, 1 is one.
    pub fn element_from_index(&self, i: u64) -> FieldElement {
        let ff = self.as_finite().expect("finite field");
        let mut v = vec![0; ff.degree];
        let mut i = i;
        for c in v.iter_mut() {
            *c = i % ff.p;
            i /= ff.p;
        }
        FieldElement::Finite(v)
    }

    pub fn index_of(&self, a: &FieldElement) -> u64 {
        let ff = self.as_finite().expect("finite field");
        match a {
            FieldElement::Finite(v) => v.iter().rev().fold(0, |acc, &c| acc * ff.p + c),
            FieldElement::Rational(_) => panic!("not a finite field element"),
        }
    }

    /// All elements of a finite field in index order.
    pub fn elements(&self) -> Result<impl Iterator<Item = FieldElement> + '_, FieldError> {
        let q = self.order().ok_or(FieldError::NotFinite)?;
        Ok((0..q).map(move |i| self.element_from_index(i)))
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Finite(v) => v.iter().all(|&c| c == 0),
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (&*self.0, a, b) {
            (FieldKind::Finite(ff), FieldElement::Finite(x), FieldElement::Finite(y)) => {
                FieldElement::Finite(x.iter().zip(y).map(|(&s, &t)| (s + t) % ff.p).collect())
            }
            (_, FieldElement::Rational(x), FieldElement::Rational(y)) => FieldElement::Rational(x + y),
            _ => panic!("{}", FieldError::FieldMismatch),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        match (&*self.0, a) {
            (FieldKind::Finite(ff), FieldElement::Finite(x)) => {
                FieldElement::Finite(x.iter().map(|&s| (ff.p - s) % ff.p).collect())
            }
            (_, FieldElement::Rational(x)) => FieldElement::Rational(-x),
            _ => panic!("{}", FieldError::FieldMismatch),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (&*self.0, a, b) {
            (FieldKind::Finite(ff), FieldElement::Finite(x), FieldElement::Finite(y)) => {
                FieldElement::Finite(finite_mul(ff, x, y))
            }
            (_, FieldElement::Rational(x), FieldElement::Rational(y)) => FieldElement::Rational(x * y),
            _ => panic!("{}", FieldError::FieldMismatch),
        }
    }

    pub fn pow(&self, a: &FieldElement, k: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match (&*self.0, a) {
            (FieldKind::Finite(ff), _) => self.pow(a, ff.order - 2),
            (_, FieldElement::Rational(x)) => FieldElement::Rational(x.recip()),
            _ => panic!("{}", FieldError::FieldMismatch),
        })
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn is_square(&self, a: &FieldElement) -> bool {
        match (&*self.0, a) {
            (_, a) if self.is_zero(a) => true,
            (FieldKind::QuadraticallyClosed, _) => true,
            (FieldKind::RealClosed, FieldElement::Rational(x)) => x.is_positive(),
            (FieldKind::Finite(ff), _) => {
                // Euler's criterion
                self.pow(a, (ff.order - 1) / 2) == self.one()
            }
            _ => panic!("{}", FieldError::FieldMismatch),
        }
    }

    /// Class of a nonzero element in `k^×/k^×2`.
    pub fn square_class(&self, a: &FieldElement) -> Result<SquareClass, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::ZeroSquareClass);
        }
        Ok(SquareClass(!self.is_square(a)))
    }

    /// The fixed non-square `u` (`-1` for a real closed field); `None` for a
    /// quadratically closed field.
    pub fn non_square(&self) -> Option<FieldElement> {
        match &*self.0 {
            FieldKind::QuadraticallyClosed => None,
            FieldKind::RealClosed => Some(self.from_int(-1)),
            FieldKind::Finite(ff) => Some(FieldElement::Finite(ff.non_square.clone())),
        }
    }

    /// Canonical representative of a square class: `1` or the fixed non-square.
    pub fn class_representative(&self, c: SquareClass) -> FieldElement {
        if c.is_trivial() {
            self.one()
        } else {
            self.non_square().expect("quadratically closed fields have one square class")
        }
    }

    /// The square classes of the field, trivial first.
    pub fn square_classes(&self) -> Vec<SquareClass> {
        if self.is_quadratically_closed() {
            vec![SquareClass::TRIVIAL]
        } else {
            vec![SquareClass::TRIVIAL, SquareClass::NONTRIVIAL]
        }
    }

    /// Parse an element: an integer or fraction for the rational kinds, an
    /// integer for `F_p`, and a polynomial in `T` for extensions
    /// (`2*T^2 + T - 1`).
    pub fn parse_element(&self, text: &str) -> Result<FieldElement, FieldError> {
        let err = |reason: &str| FieldError::Parse { text: text.to_string(), reason: reason.to_string() };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty"));
        }
        match &*self.0 {
            FieldKind::Finite(ff) if ff.degree > 1 => {
                let terms = parse_integer_polynomial(&compact, 'T').map_err(|r| err(&r))?;
                let mut acc = self.zero();
                let t = self.element_from_index(ff.p);
                for (coeff, exp) in terms {
                    acc = self.add(&acc, &self.mul(&self.from_bigint(&coeff), &self.pow(&t, exp)));
                }
                Ok(acc)
            }
            _ => {
                let (num, den) = match compact.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (compact.as_str(), "1"),
                };
                let num: BigInt = num.parse().map_err(|_| err("not an integer"))?;
                let den: BigInt = den.parse().map_err(|_| err("not an integer"))?;
                if den.is_zero() {
                    return Err(FieldError::DivisionByZero);
                }
                self.div(&self.from_bigint(&num), &self.from_bigint(&den))
            }
        }
    }

    /// Textual form accepted by [`Field::parse_element`]. Prime field elements
    /// are printed as residues in `[0, p)`.
    pub fn format_element(&self, a: &FieldElement) -> String {
        match a {
            FieldElement::Rational(r) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            FieldElement::Finite(v) if v.len() == 1 => v[0].to_string(),
            FieldElement::Finite(v) => {
                let mut parts = Vec::new();
                for (i, &c) in v.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    let mono = match i {
                        0 => String::new(),
                        1 => "T".to_string(),
                        _ => format!("T^{i}"),
                    };
                    parts.push(match (c, i) {
                        (_, 0) => c.to_string(),
                        (1, _) => mono,
                        _ => format!("{c}*{mono}"),
                    });
                }
                if parts.is_empty() {
                    "0".into()
                } else {
                    parts.join("+")
                }
            }
        }
    }

    /// Lexicographically first monic irreducible polynomial of degree `d` over
    /// a finite field: candidates are enumerated by the index of their
    /// coefficient vector, constant term least significant.
    pub fn find_irreducible(&self, d: usize) -> Result<Poly, FieldError> {
        let q = self.order().ok_or(FieldError::NotFinite)?;
        if d == 0 {
            return Err(FieldError::BadSpec("degree 0".into()));
        }
        let count = (q as u128).checked_pow(d as u32).ok_or(FieldError::TooLarge(u128::MAX))?;
        for n in 0..count {
            let mut coeffs = Vec::with_capacity(d + 1);
            let mut r = n;
            for _ in 0..d {
                coeffs.push(self.element_from_index((r % q as u128) as u64));
                r /= q as u128;
            }
            coeffs.push(self.one());
            let f = Poly::new(self, coeffs);
            if f.is_irreducible(self)? {
                return Ok(f);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }
}

fn check_order(p: u64, k: usize) -> Result<u64, FieldError> {
    let order = (p as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if order > MAX_FINITE_ORDER as u128 {
        return Err(FieldError::TooLarge(order));
    }
    Ok(order as u64)
}

fn finite_mul(ff: &FiniteField, x: &[u64], y: &[u64]) -> Vec<u64> {
    let p = ff.p;
    let k = ff.degree;
    if k == 1 {
        return vec![mulmod(x[0], y[0], p)];
    }
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, &a) in x.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in y.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mulmod(a, b, p)) % p;
        }
    }
    // reduce by the monic modulus from the top down
    for top in (k..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for i in 0..k {
            let sub = mulmod(c, ff.modulus[i], p);
            let idx = top - k + i;
            prod[idx] = (prod[idx] + p - sub) % p;
        }
        prod[top] = 0;
    }
    prod.truncate(k);
    prod
}

/// Parse `c*V^k ± …` with integer coefficients into `(coefficient, exponent)`
/// terms. Coefficients may be omitted.
pub(crate) fn parse_integer_polynomial(text: &str, var: char) -> Result<Vec<(BigInt, u64)>, String> {
    let mut terms = Vec::new();
    for (sign, body) in split_signed_terms(text)? {
        let (coeff, exp) = parse_monomial(body, var, |s| s.parse::<BigInt>().map_err(|_| format!("bad coefficient {s:?}")))?;
        let coeff = coeff.unwrap_or_else(BigInt::one);
        terms.push((if sign { -coeff } else { coeff }, exp));
    }
    Ok(terms)
}

/// Split at top-level `+`/`-` signs (outside parentheses). Returns
/// `(negative, body)` pairs.
pub(crate) fn split_signed_terms(text: &str) -> Result<Vec<(bool, &str)>, String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    let mut negative = false;
    let bytes = text.as_bytes();
    let mut i = 0;
    if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
        negative = bytes[i] == b'-';
        i += 1;
        start = i;
    }
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth < 0 {
                    return Err("unbalanced parentheses".into());
                }
            }
            // a sign right after '/' or '^' belongs to the number
            b'+' | b'-' if depth == 0 && i > start && !matches!(bytes[i - 1], b'/' | b'^') => {
                out.push((negative, &text[start..i]));
                negative = bytes[i] == b'-';
                start = i + 1;
            }
            _ => {}
        }
        i += 1;
    }
    if depth != 0 {
        return Err("unbalanced parentheses".into());
    }
    out.push((negative, &text[start..]));
    if out.iter().any(|(_, b)| b.is_empty()) {
        return Err("empty term".into());
    }
    Ok(out)
}

/// Parse `coef*V^k`, `coef*V`, `V^k`, `V`, or `coef`; a coefficient in
/// parentheses is passed to `coef` without the parentheses.
pub(crate) fn parse_monomial<C>(
    body: &str,
    var: char,
    coef: impl Fn(&str) -> Result<C, String>,
) -> Result<(Option<C>, u64), String> {
    let (coeff_part, var_part) = match body.rfind(var) {
        Some(pos) if !body[pos..].contains(')') => {
            let head = &body[..pos];
            let head = head.strip_suffix('*').unwrap_or(head);
            (head, Some(&body[pos + var.len_utf8()..]))
        }
        _ => (body, None),
    };
    let exp = match var_part {
        None => 0,
        Some("") => 1,
        Some(rest) => rest
            .strip_prefix('^')
            .ok_or_else(|| format!("unexpected {rest:?} after {var}"))?
            .parse::<u64>()
            .map_err(|_| format!("bad exponent in {body:?}"))?,
    };
    let coeff = if coeff_part.is_empty() {
        if var_part.is_none() {
            return Err("empty term".into());
        }
        None
    } else {
        let inner = coeff_part
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .unwrap_or(coeff_part);
        Some(coef(inner)?)
    };
    Ok((coeff, exp))
}

/// A univariate polynomial over a [`Field`], low degree first, with no
/// trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(field: &Field, coeffs: Vec<FieldElement>) -> Self {
        let mut p = Poly { coeffs };
        p.trim(field);
        p
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(field: &Field, c: FieldElement) -> Self {
        Self::new(field, vec![c])
    }

    /// `X`.
    pub fn x(field: &Field) -> Self {
        Poly { coeffs: vec![field.zero(), field.one()] }
    }

    /// Parse `X^2 - 3`, `X^3 + (T+1)*X + 2`: coefficients are field elements,
    /// parenthesised when they are not plain integers.
    pub fn parse(field: &Field, text: &str) -> Result<Self, FieldError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason: String| FieldError::Parse { text: text.to_string(), reason };
        let mut coeffs: Vec<FieldElement> = Vec::new();
        for (negative, body) in split_signed_terms(&compact).map_err(err)? {
            let (c, exp) = parse_monomial(body, 'X', |s| field.parse_element(s).map_err(|e| e.to_string())).map_err(err)?;
            let c = c.unwrap_or_else(|| field.one());
            let c = if negative { field.neg(&c) } else { c };
            let exp = exp as usize;
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, field.zero());
            }
            coeffs[exp] = field.add(&coeffs[exp], &c);
        }
        Ok(Self::new(field, coeffs))
    }

    pub fn format(&self, field: &Field) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if field.is_zero(c) {
                continue;
            }
            let text = field.format_element(c);
            let needs_parens = text.contains(['+', '-', '/']) && i > 0;
            let coeff = if needs_parens { format!("({text})") } else { text };
            let term = match i {
                0 => coeff,
                _ => {
                    let mono = if i == 1 { "X".to_string() } else { format!("X^{i}") };
                    if *c == field.one() {
                        mono
                    } else {
                        format!("{coeff}*{mono}")
                    }
                }
            };
            if !out.is_empty() {
                out.push_str(" + ");
            }
            out.push_str(&term);
        }
        out
    }

    fn trim(&mut self, field: &Field) {
        while self.coeffs.last().is_some_and(|c| field.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self, field: &Field) -> bool {
        self.leading().is_some_and(|c| *c == field.one())
    }

    pub fn coeff(&self, field: &Field, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn add(&self, field: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| field.add(&self.coeff(field, i), &other.coeff(field, i))).collect();
        Poly::new(field, coeffs)
    }

    pub fn sub(&self, field: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| field.sub(&self.coeff(field, i), &other.coeff(field, i))).collect();
        Poly::new(field, coeffs)
    }

    pub fn mul(&self, field: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = field.add(&coeffs[i + j], &field.mul(a, b));
            }
        }
        Poly::new(field, coeffs)
    }

    pub fn scale(&self, field: &Field, c: &FieldElement) -> Poly {
        Poly::new(field, self.coeffs.iter().map(|a| field.mul(a, c)).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, field: &Field, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = field.inv(divisor.leading().unwrap()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![field.zero(); rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = field.mul(&rem[top], &lead_inv);
            if field.is_zero(&c) {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                rem[idx] = field.sub(&rem[idx], &field.mul(&c, d));
            }
            quot[top - dd] = c;
        }
        rem.truncate(dd);
        (Poly::new(field, quot), Poly::new(field, rem))
    }

    pub fn rem(&self, field: &Field, divisor: &Poly) -> Poly {
        self.div_rem(field, divisor).1
    }

    pub fn monic(&self, field: &Field) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(c) => self.scale(field, &field.inv(c).expect("nonzero")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, field: &Field, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(field, &b);
            a = b;
            b = r;
        }
        a.monic(field)
    }

    pub fn derivative(&self, field: &Field) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| field.mul(&field.from_int(i as i64), c))
            .collect();
        Poly::new(field, coeffs)
    }

    /// `self^k mod modulus`.
    pub fn pow_mod(&self, field: &Field, k: u128, modulus: &Poly) -> Poly {
        let mut acc = Poly::constant(field, field.one()).rem(field, modulus);
        let mut base = self.rem(field, modulus);
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(field, &base).rem(field, modulus);
            }
            base = base.mul(field, &base).rem(field, modulus);
            k >>= 1;
        }
        acc
    }

    pub fn eval(&self, field: &Field, x: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
    }

    /// Squarefree test `gcd(f, f') = 1`.
    pub fn is_separable(&self, field: &Field) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(field, &self.derivative(field)).degree() == Some(0),
        }
    }

    /// Irreducibility over the given field. Finite fields use Ben-Or's test
    /// (`gcd(X^(q^i) - X, f) = 1` for `i ≤ deg/2`); over a real closed field
    /// the irreducibles are the linear polynomials and the quadratics with
    /// negative discriminant; over a quadratically closed field only linear
    /// polynomials are irreducible.
    pub fn is_irreducible(&self, field: &Field) -> Result<bool, FieldError> {
        let d = match self.degree() {
            None | Some(0) => return Ok(false),
            Some(d) => d,
        };
        if d == 1 {
            return Ok(true);
        }
        match field.kind() {
            FieldKind::QuadraticallyClosed => Ok(false),
            FieldKind::RealClosed => {
                if d != 2 {
                    return Ok(false);
                }
                let (a, b, c) = (&self.coeffs[2], &self.coeffs[1], &self.coeffs[0]);
                let disc = field.sub(&field.mul(b, b), &field.mul(&field.from_int(4), &field.mul(a, c)));
                Ok(field.square_class(&disc).is_ok_and(|c| !c.is_trivial()))
            }
            FieldKind::Finite(ff) => {
                let f = self.monic(field);
                let x = Poly::x(field);
                let mut h = x.clone();
                for _ in 1..=d / 2 {
                    h = h.pow_mod(field, ff.order as u128, &f);
                    let g = h.sub(field, &x).gcd(field, &f);
                    if g.degree() != Some(0) {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.0 { "nonsquare" } else { "square" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn el(f: &Field, s: &str) -> FieldElement {
        f.parse_element(s).unwrap()
    }

    // irreducible iff no monic factor of degree 1..=d/2, by trial division
    fn irreducible_by_trial_division(field: &Field, f: &Poly) -> bool {
        let d = f.degree().unwrap();
        let q = field.order().unwrap();
        for k in 1..=d / 2 {
            for n in 0..q.pow(k as u32) {
                let mut coeffs = Vec::new();
                let mut r = n;
                for _ in 0..k {
                    coeffs.push(field.element_from_index(r % q));
                    r /= q;
                }
                coeffs.push(field.one());
                let g = Poly::new(field, coeffs);
                if f.rem(field, &g).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn field_specs() {
        let f7 = Field::parse("f:7").unwrap();
        assert_eq!(f7.order(), Some(7));
        let f9 = Field::parse("f:3^2").unwrap();
        assert_eq!(f9.as_finite().unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(Field::parse("f:2"), Err(FieldError::BadCharacteristic(2)));
        assert_eq!(Field::parse("f:9"), Err(FieldError::BadCharacteristic(9)));
        assert!(matches!(Field::parse("f:x"), Err(FieldError::BadSpec(_))));
        assert!(matches!(Field::parse("rational"), Err(FieldError::BadSpec(_))));
        assert_eq!(Field::finite_with_modulus(3, vec![2, 0, 1]), Err(FieldError::ReducibleModulus));
        for spec in ["qc", "real", "f:5", "f:5^3"] {
            assert_eq!(Field::parse(spec).unwrap().spec(), spec);
        }
    }

    #[test]
    fn square_classes() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.square_class(&el(&f7, "3")), Ok(SquareClass::NONTRIVIAL));
        assert_eq!(f7.square_class(&el(&f7, "2")), Ok(SquareClass::TRIVIAL));
        assert_eq!(f7.non_square(), Some(el(&f7, "3")));
        let real = Field::real_closed();
        assert_eq!(real.square_class(&el(&real, "-5")), Ok(SquareClass::NONTRIVIAL));
        assert_eq!(real.square_class(&el(&real, "1/3")), Ok(SquareClass::TRIVIAL));
        let qc = Field::quadratically_closed();
        assert_eq!(qc.square_class(&el(&qc, "-7/2")), Ok(SquareClass::TRIVIAL));
        assert_eq!(f7.square_class(&f7.zero()), Err(FieldError::ZeroSquareClass));
    }

    #[test]
    fn half_the_units_are_squares() {
        for spec in ["f:3", "f:5", "f:7", "f:3^2", "f:5^2", "f:3^3", "f:11"] {
            let f = Field::parse(spec).unwrap();
            let q = f.order().unwrap();
            let squares = f
                .elements()
                .unwrap()
                .skip(1)
                .filter(|a| f.square_class(a).unwrap().is_trivial())
                .count() as u64;
            assert_eq!(squares, (q - 1) / 2, "{spec}");
            // the squares are exactly the set {a² : a ≠ 0}
            let mut sq: Vec<u64> = f.elements().unwrap().skip(1).map(|a| f.index_of(&f.mul(&a, &a))).collect();
            sq.sort();
            sq.dedup();
            assert_eq!(sq.len() as u64, (q - 1) / 2);
        }
    }

    #[test]
    fn square_class_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for spec in ["f:3", "f:7", "f:5^2", "real"] {
            let f = Field::parse(spec).unwrap();
            for _ in 0..200 {
                let a = random_nonzero(&f, &mut rng);
                let b = random_nonzero(&f, &mut rng);
                let ab = f.square_class(&f.mul(&a, &b)).unwrap();
                assert_eq!(ab, f.square_class(&a).unwrap().mul(f.square_class(&b).unwrap()));
                let a2b = f.mul(&f.mul(&a, &a), &b);
                assert_eq!(f.square_class(&a2b).unwrap(), f.square_class(&b).unwrap());
            }
        }
    }

    fn random_nonzero(f: &Field, rng: &mut impl Rng) -> FieldElement {
        loop {
            let a = match f.order() {
                Some(q) => f.element_from_index(rng.gen_range(0..q)),
                None => f.rational(rng.gen_range(-20..=20), rng.gen_range(1..=9)).unwrap(),
            };
            if !f.is_zero(&a) {
                return a;
            }
        }
    }

    #[test]
    fn field_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for spec in ["f:3", "f:5", "f:7", "f:3^2", "f:7^2", "f:3^3", "real", "qc"] {
            let f = Field::parse(spec).unwrap();
            for _ in 0..1000 {
                let a = random_nonzero(&f, &mut rng);
                let b = random_nonzero(&f, &mut rng);
                let c = random_nonzero(&f, &mut rng);
                assert_eq!(f.mul(&a, &f.mul(&b, &c)), f.mul(&f.mul(&a, &b), &c));
                assert_eq!(f.add(&a, &f.add(&b, &c)), f.add(&f.add(&a, &b), &c));
                assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
                assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
                assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
                assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
            }
        }
    }

    #[test]
    fn element_syntax_roundtrip() {
        for spec in ["f:7", "f:3^2", "f:5^3", "real", "qc"] {
            let f = Field::parse(spec).unwrap();
            let samples: Vec<FieldElement> = match f.order() {
                Some(q) => f.elements().unwrap().take(q.min(60) as usize).collect(),
                None => vec![el(&f, "0"), el(&f, "-3/4"), el(&f, "12"), el(&f, "5/-10")],
            };
            for a in samples {
                let text = f.format_element(&a);
                assert_eq!(f.parse_element(&text).unwrap(), a, "{spec}: {text}");
            }
        }
    }

    #[test]
    fn extension_arithmetic() {
        // T² = -1 in F_3[T]/(T²+1)
        let f9 = Field::parse("f:3^2").unwrap();
        let t = f9.parse_element("T").unwrap();
        assert_eq!(f9.mul(&t, &t), f9.from_int(-1));
        assert_eq!(f9.parse_element("2*T^2+T").unwrap(), f9.parse_element("T+1").unwrap());
    }

    #[test]
    fn irreducible_search() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.find_irreducible(2).unwrap().format(&f3), "X^2 + 1");
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.find_irreducible(1).unwrap().format(&f5), "X");
        let cubic = f5.find_irreducible(3).unwrap();
        assert_eq!(cubic.degree(), Some(3));
        assert!(irreducible_by_trial_division(&f5, &cubic));
        // every earlier candidate is reducible
        let idx = |p: &Poly| p.coeffs()[..3].iter().rev().fold(0, |acc, c| acc * 5 + f5.index_of(c));
        for n in 0..idx(&cubic) {
            let coeffs = vec![
                f5.element_from_index(n % 5),
                f5.element_from_index(n / 5 % 5),
                f5.element_from_index(n / 25),
                f5.one(),
            ];
            assert!(!irreducible_by_trial_division(&f5, &Poly::new(&f5, coeffs)));
        }
    }

    #[test]
    fn irreducibility_matches_trial_division() {
        for spec in ["f:3", "f:5", "f:3^2"] {
            let f = Field::parse(spec).unwrap();
            let q = f.order().unwrap();
            for d in 1..=4usize {
                let limit = q.pow(d as u32).min(400);
                for n in 0..limit {
                    let mut coeffs = Vec::new();
                    let mut r = n;
                    for _ in 0..d {
                        coeffs.push(f.element_from_index(r % q));
                        r /= q;
                    }
                    coeffs.push(f.one());
                    let poly = Poly::new(&f, coeffs);
                    assert_eq!(poly.is_irreducible(&f).unwrap(), irreducible_by_trial_division(&f, &poly));
                }
            }
        }
    }

    #[test]
    fn frobenius_oracle_for_found_irreducibles() {
        for p in [3u64, 5, 7] {
            let fp = Field::prime(p).unwrap();
            for d in 1..=5usize {
                let poly = fp.find_irreducible(d).unwrap();
                let x = Poly::x(&fp);
                for i in 1..d {
                    let h = x.pow_mod(&fp, (p as u128).pow(i as u32), &poly).sub(&fp, &x);
                    assert_eq!(h.gcd(&fp, &poly).degree(), Some(0));
                }
                let full = x.pow_mod(&fp, (p as u128).pow(d as u32), &poly).sub(&fp, &x);
                assert!(full.rem(&fp, &poly).is_zero());
            }
        }
    }

    #[test]
    fn polynomial_syntax() {
        let f7 = Field::prime(7).unwrap();
        let poly = Poly::parse(&f7, "X^2-3").unwrap();
        assert_eq!(poly.coeffs(), &[el(&f7, "4"), f7.zero(), f7.one()]);
        assert_eq!(poly.format(&f7), "X^2 + 4");
        let real = Field::real_closed();
        let poly = Poly::parse(&real, "2*X^3 - X + 1/2").unwrap();
        assert_eq!(Poly::parse(&real, &poly.format(&real)).unwrap(), poly);
        let f9 = Field::parse("f:3^2").unwrap();
        let poly = Poly::parse(&f9, "X^2 + (T+1)*X - T").unwrap();
        assert_eq!(poly.coeff(&f9, 1), el(&f9, "T+1"));
        assert_eq!(Poly::parse(&f9, &poly.format(&f9)).unwrap(), poly);
        assert!(Poly::parse(&f7, "X^").is_err());
        assert!(Poly::parse(&f7, "X^2 +").is_err());
    }

    #[test]
    fn real_and_qc_irreducibles() {
        let real = Field::real_closed();
        assert!(Poly::parse(&real, "X^2+1").unwrap().is_irreducible(&real).unwrap());
        assert!(!Poly::parse(&real, "X^2-2").unwrap().is_irreducible(&real).unwrap());
        assert!(!Poly::parse(&real, "X^3+1").unwrap().is_irreducible(&real).unwrap());
        let qc = Field::quadratically_closed();
        assert!(!Poly::parse(&qc, "X^2+1").unwrap().is_irreducible(&qc).unwrap());
        assert!(Poly::parse(&qc, "X-4").unwrap().is_irreducible(&qc).unwrap());
    }
}
