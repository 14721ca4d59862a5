//! The graded algebra `M(g) = F₂[e, x₁…x_g] / (xᵢ² = e·xᵢ)`.
//!
//! `M(g)` is a finitely generated model of the mod-2 Galois cohomology ring
//! of a field: `e` plays the class of `-1` and the `xᵢ` are independent
//! square classes. Every degree-1 element `z` satisfies `z² = e·z`, hence
//! every homogeneous `z` of degree `d` satisfies `z² = e^d·z`, and this single
//! rule drives the product formulas for symmetric functions and
//! Stiefel-Whitney classes.
//!
//! A basis is given by the monomials `e^a·x_S` with `S` a subset of the
//! generators. The product of two basis monomials is
//! `e^a x_S · e^b x_T = e^(a+b+|S∩T|) · x_(S∪T)`.
//!
//! ```
//! use alt_invariants::milnor::MilnorElement;
//!
//! let x1 = MilnorElement::generator(2, 1);
//! assert_eq!((&x1 * &x1).to_string(), "e*x1");
//! let w = MilnorElement::parse("e*x1 + e*x2 + x1*x2", 2).unwrap();
//! assert_eq!(w.to_string(), "e*x1 + e*x2 + x1*x2");
//! ```

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use thiserror::Error;

use crate::dyadic::{diminished_sum, overlap_value, trinomial_parity};

/// Upper bound on the number of degree-1 generators.
pub const MAX_GENERATORS: u32 = 64;

/// Default truncation order of [`TruncatedSeries`].
pub const DEFAULT_SERIES_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MilnorError {
    #[error("generator counts differ: {0} vs {1}")]
    GeneratorMismatch(u32, u32),
    #[error("at most {MAX_GENERATORS} generators are supported, got {0}")]
    TooManyGenerators(u32),
    #[error("generator index {index} out of range 1..={count}")]
    GeneratorOutOfRange { index: u32, count: u32 },
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("elements do not share a common degree")]
    MixedDegrees,
    #[error("expected a homogeneous element of degree {expected}, got {found}")]
    WrongDegree { expected: u32, found: u32 },
    #[error("constant term is not 1")]
    ConstantTermNotOne,
    #[error("element is not a product of factors (1 + a_j) with deg a_j = {unit}·2^j")]
    NotInP { unit: u32 },
    #[error("cannot parse element: {0}")]
    Parse(String),
}

/// A basis monomial `e^e · x_S`, with `S` stored as a bitmask (bit `i-1`
/// stands for `xᵢ`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub e: u32,
    pub gens: u64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { e: 0, gens: 0 };

    pub fn degree(&self) -> u32 {
        self.e + self.gens.count_ones()
    }

    /// The reduced product `e^(a+b+|S∩T|) x_(S∪T)`.
    pub fn mul(self, other: Monomial) -> Monomial {
        Monomial {
            e: self.e + other.e + (self.gens & other.gens).count_ones(),
            gens: self.gens | other.gens,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.e.cmp(&self.e))
            .then_with(|| self.gens.reverse_bits().cmp(&other.gens.reverse_bits()).reverse())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        match self.e {
            0 => {}
            1 => factors.push("e".to_string()),
            k => factors.push(format!("e^{k}")),
        }
        for i in 0..64 {
            if self.gens >> i & 1 == 1 {
                factors.push(format!("x{}", i + 1));
            }
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

/// How an element sits with respect to the grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero element, homogeneous of every degree.
    Zero,
    Degree(u32),
    Mixed,
}

/// An element of `M(g)`: a finite set of basis monomials with coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MilnorElement {
    generators: u32,
    terms: BTreeSet<Monomial>,
}

impl MilnorElement {
    pub fn zero(generators: u32) -> Self {
        assert!(generators <= MAX_GENERATORS, "too many generators");
        MilnorElement { generators, terms: BTreeSet::new() }
    }

    pub fn one(generators: u32) -> Self {
        Self::from_monomial(generators, Monomial::ONE)
    }

    /// The class `e` of `-1`.
    pub fn e(generators: u32) -> Self {
        Self::e_power(generators, 1)
    }

    pub fn e_power(generators: u32, k: u32) -> Self {
        Self::from_monomial(generators, Monomial { e: k, gens: 0 })
    }

    /// The generator `xᵢ`, `1 ≤ i ≤ generators`.
    pub fn generator(generators: u32, i: u32) -> Self {
        assert!(i >= 1 && i <= generators, "generator x{i} not in M({generators})");
        Self::from_monomial(generators, Monomial { e: 0, gens: 1 << (i - 1) })
    }

    pub fn from_monomial(generators: u32, m: Monomial) -> Self {
        assert!(generators <= MAX_GENERATORS, "too many generators");
        debug_assert!(generators == 64 || m.gens >> generators == 0);
        let mut terms = BTreeSet::new();
        terms.insert(m);
        MilnorElement { generators, terms }
    }

    /// Sum of the given monomials; repeated monomials cancel in pairs.
    pub fn from_monomials<I>(generators: u32, monomials: I) -> Self
    where
        I: IntoIterator<Item = Monomial>,
    {
        let mut out = Self::zero(generators);
        for m in monomials {
            out.toggle(m);
        }
        out
    }

    pub fn generators(&self) -> u32 {
        self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.contains(&Monomial::ONE)
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    pub fn constant_term(&self) -> bool {
        self.terms.contains(&Monomial::ONE)
    }

    fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degrees = self.terms.iter().map(Monomial::degree);
        match degrees.next() {
            None => Homogeneity::Zero,
            Some(d) if degrees.all(|x| x == d) => Homogeneity::Degree(d),
            Some(_) => Homogeneity::Mixed,
        }
    }

    /// Largest degree of a term, `None` for zero.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.iter().map(Monomial::degree).max()
    }

    /// Degree-`d` homogeneous component.
    pub fn component(&self, d: u32) -> MilnorElement {
        MilnorElement {
            generators: self.generators,
            terms: self.terms.iter().filter(|m| m.degree() == d).copied().collect(),
        }
    }

    /// Drop all components of degree greater than `d`.
    pub fn truncate(&self, d: u32) -> MilnorElement {
        MilnorElement {
            generators: self.generators,
            terms: self.terms.iter().filter(|m| m.degree() <= d).copied().collect(),
        }
    }

    fn check_same_ring(&self, other: &Self) -> Result<(), MilnorError> {
        if self.generators == other.generators {
            Ok(())
        } else {
            Err(MilnorError::GeneratorMismatch(self.generators, other.generators))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, MilnorError> {
        self.check_same_ring(other)?;
        let terms = self.terms.symmetric_difference(&other.terms).copied().collect();
        Ok(MilnorElement { generators: self.generators, terms })
    }

    /// Fully reduced product.
    pub fn multiply(&self, other: &Self) -> Result<Self, MilnorError> {
        self.check_same_ring(other)?;
        let mut out = Self::zero(self.generators);
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.mul(*b));
            }
        }
        Ok(out)
    }

    /// Multiply by `e^k`.
    pub fn times_e_power(&self, k: u32) -> Self {
        MilnorElement {
            generators: self.generators,
            terms: self.terms.iter().map(|m| Monomial { e: m.e + k, gens: m.gens }).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.generators);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Total Steenrod square `Sq(z) = (1+e)^d · z` of a homogeneous element of
    /// degree `d`.
    pub fn steenrod_total(&self) -> Result<Self, MilnorError> {
        let d = match self.homogeneity() {
            Homogeneity::Zero => return Ok(self.clone()),
            Homogeneity::Degree(d) => d,
            Homogeneity::Mixed => return Err(MilnorError::NotHomogeneous),
        };
        let mut out = Self::zero(self.generators);
        // C(d, i) is odd iff the binary digits of i are among those of d
        for i in 0..=d {
            if i & !d == 0 {
                out += &self.times_e_power(i);
            }
        }
        Ok(out)
    }

    /// `Sq^i(z)`, the degree `d+i` component of the total square.
    pub fn steenrod_square(&self, i: u32) -> Result<Self, MilnorError> {
        let total = self.steenrod_total()?;
        Ok(match self.homogeneity() {
            Homogeneity::Degree(d) => total.component(d + i),
            _ => total,
        })
    }

    /// Apply the algebra endomorphism fixing `e` and sending `xᵢ` to
    /// `images[i-1]`, landing in `M(target_generators)`. Each image must be
    /// zero or homogeneous of degree 1, which is exactly what is needed for
    /// the relation `xᵢ² = e·xᵢ` to be respected.
    pub fn substitute(&self, target_generators: u32, images: &[MilnorElement]) -> Result<Self, MilnorError> {
        if images.len() != self.generators as usize {
            return Err(MilnorError::GeneratorMismatch(images.len() as u32, self.generators));
        }
        for img in images {
            if img.generators != target_generators {
                return Err(MilnorError::GeneratorMismatch(img.generators, target_generators));
            }
            match img.homogeneity() {
                Homogeneity::Zero | Homogeneity::Degree(1) => {}
                Homogeneity::Degree(d) => return Err(MilnorError::WrongDegree { expected: 1, found: d }),
                Homogeneity::Mixed => return Err(MilnorError::NotHomogeneous),
            }
        }
        let mut out = Self::zero(target_generators);
        for m in &self.terms {
            let mut prod = Self::e_power(target_generators, m.e);
            for (i, img) in images.iter().enumerate() {
                if m.gens >> i & 1 == 1 {
                    prod = &prod * img;
                }
            }
            out += &prod;
        }
        Ok(out)
    }

    /// Parse the textual syntax `e^2*x1*x3 + x2 + 1`. Generators may appear at
    /// most once per term; powers of generators are rejected.
    pub fn parse(text: &str, generators: u32) -> Result<Self, MilnorError> {
        if generators > MAX_GENERATORS {
            return Err(MilnorError::TooManyGenerators(generators));
        }
        let err = |msg: &str| MilnorError::Parse(format!("{msg} in {text:?}"));
        let mut out = Self::zero(generators);
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        for term in compact.split('+') {
            if term.is_empty() {
                return Err(err("empty term"));
            }
            let mut mono = Monomial::ONE;
            let mut zero = false;
            for factor in term.split('*') {
                match factor {
                    "1" => {}
                    "0" => zero = true,
                    "e" => mono.e += 1,
                    f if f.starts_with("e^") => {
                        let k: u32 = f[2..].parse().map_err(|_| err("bad exponent of e"))?;
                        mono.e += k;
                    }
                    f if f.starts_with('x') => {
                        if f.contains('^') {
                            return Err(err("powers of generators are not accepted"));
                        }
                        let i: u32 = f[1..].parse().map_err(|_| err("bad generator index"))?;
                        if i == 0 || i > generators {
                            return Err(MilnorError::GeneratorOutOfRange { index: i, count: generators });
                        }
                        let bit = 1u64 << (i - 1);
                        if mono.gens & bit != 0 {
                            return Err(err("squared generator"));
                        }
                        mono.gens |= bit;
                    }
                    _ => return Err(err(&format!("unknown factor {factor:?}"))),
                }
            }
            if !zero {
                out.toggle(mono);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for MilnorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &MilnorElement {
    type Output = MilnorElement;

    /// Panics when the generator counts differ; see
    /// [`MilnorElement::checked_add`].
    fn add(self, rhs: &MilnorElement) -> MilnorElement {
        self.checked_add(rhs).expect("adding elements of different rings")
    }
}

impl AddAssign<&MilnorElement> for MilnorElement {
    fn add_assign(&mut self, rhs: &MilnorElement) {
        assert_eq!(self.generators, rhs.generators, "adding elements of different rings");
        for m in &rhs.terms {
            self.toggle(*m);
        }
    }
}

impl Mul for &MilnorElement {
    type Output = MilnorElement;

    /// Panics when the generator counts differ; see
    /// [`MilnorElement::multiply`].
    fn mul(self, rhs: &MilnorElement) -> MilnorElement {
        self.multiply(rhs).expect("multiplying elements of different rings")
    }
}

fn common_degree(ys: &[MilnorElement]) -> Result<Option<u32>, MilnorError> {
    let mut degree = None;
    for y in ys {
        match y.homogeneity() {
            Homogeneity::Zero => {}
            Homogeneity::Mixed => return Err(MilnorError::NotHomogeneous),
            Homogeneity::Degree(d) => match degree {
                None => degree = Some(d),
                Some(d0) if d0 == d => {}
                Some(_) => return Err(MilnorError::MixedDegrees),
            },
        }
    }
    Ok(degree)
}

/// All elementary symmetric functions `s_0 = 1, s_1, …, s_n` of homogeneous
/// elements of one common degree.
pub fn elementary_symmetric_all(generators: u32, ys: &[MilnorElement]) -> Result<Vec<MilnorElement>, MilnorError> {
    common_degree(ys)?;
    let mut s = vec![MilnorElement::one(generators)];
    for y in ys {
        if y.generators != generators {
            return Err(MilnorError::GeneratorMismatch(y.generators, generators));
        }
        s.push(MilnorElement::zero(generators));
        for j in (1..s.len()).rev() {
            let term = &s[j - 1] * y;
            s[j] += &term;
        }
    }
    Ok(s)
}

/// The `m`-th elementary symmetric function; zero when `m > ys.len()`.
pub fn elementary_symmetric(generators: u32, ys: &[MilnorElement], m: usize) -> Result<MilnorElement, MilnorError> {
    let all = elementary_symmetric_all(generators, ys)?;
    Ok(all.get(m).cloned().unwrap_or_else(|| MilnorElement::zero(generators)))
}

/// Factorization `x = ∏_j (1 + a_j)` with `a_j` homogeneous of degree
/// `unit · 2^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PNormalForm {
    unit: u32,
    factors: Vec<MilnorElement>,
}

impl PNormalForm {
    pub fn factors(&self) -> &[MilnorElement] {
        &self.factors
    }

    /// Degree unit of the grading (1 for the ordinary grading).
    pub fn unit(&self) -> u32 {
        self.unit
    }

    /// The factor `a_j`, zero past the end.
    pub fn factor(&self, j: usize, generators: u32) -> MilnorElement {
        self.factors.get(j).cloned().unwrap_or_else(|| MilnorElement::zero(generators))
    }

    /// Multiply the factors back together.
    pub fn product(&self, generators: u32) -> MilnorElement {
        self.factors.iter().fold(MilnorElement::one(generators), |acc, a| {
            &acc * &(&MilnorElement::one(generators) + a)
        })
    }
}

/// Decide membership in `P`, the set of products `∏(1 + a_j)` with
/// `deg a_j = 2^j`, and return the factors.
///
/// The factors of such a product are forced: `a_j` must be the degree-`2^j`
/// component of `x`. So the candidate factors are read off and membership is
/// decided by multiplying them back together.
pub fn p_factorize(x: &MilnorElement) -> Result<PNormalForm, MilnorError> {
    p_factorize_graded(x, 1)
}

/// [`p_factorize`] in the regraded ring where degree `unit·n` counts as `n`.
pub fn p_factorize_graded(x: &MilnorElement, unit: u32) -> Result<PNormalForm, MilnorError> {
    assert!(unit >= 1, "grading unit must be positive");
    if !x.constant_term() {
        return Err(MilnorError::ConstantTermNotOne);
    }
    let g = x.generators;
    let top = x.max_degree().unwrap_or(0);
    let mut factors = Vec::new();
    let mut j = 0u32;
    while unit as u64 * (1u64 << j) <= top as u64 {
        factors.push(x.component(unit << j));
        j += 1;
    }
    while factors.last().is_some_and(MilnorElement::is_zero) {
        factors.pop();
    }
    let form = PNormalForm { unit, factors };
    if form.product(g) == *x {
        Ok(form)
    } else {
        Err(MilnorError::NotInP { unit })
    }
}

/// A total Stiefel-Whitney class `w = 1 + w_1 + w_2 + …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SWClass(MilnorElement);

impl SWClass {
    pub fn new(w: MilnorElement) -> Result<Self, MilnorError> {
        if w.constant_term() {
            Ok(SWClass(w))
        } else {
            Err(MilnorError::ConstantTermNotOne)
        }
    }

    /// `∏ (1 + αᵢ)` for degree-1 classes `αᵢ` (zero entries are trivial
    /// square classes).
    pub fn from_classes(generators: u32, alphas: &[MilnorElement]) -> Result<Self, MilnorError> {
        let one = MilnorElement::one(generators);
        let mut w = one.clone();
        for a in alphas {
            match a.homogeneity() {
                Homogeneity::Zero | Homogeneity::Degree(1) => {}
                Homogeneity::Degree(d) => return Err(MilnorError::WrongDegree { expected: 1, found: d }),
                Homogeneity::Mixed => return Err(MilnorError::NotHomogeneous),
            }
            w = w.multiply(&(&one + a))?;
        }
        Ok(SWClass(w))
    }

    pub fn total(&self) -> &MilnorElement {
        &self.0
    }

    pub fn into_total(self) -> MilnorElement {
        self.0
    }

    pub fn generators(&self) -> u32 {
        self.0.generators
    }

    /// `w_i`.
    pub fn component(&self, i: u32) -> MilnorElement {
        self.0.component(i)
    }

    pub fn top_degree(&self) -> u32 {
        self.0.max_degree().unwrap_or(0)
    }

    /// Galois Stiefel-Whitney class `w · (1 + two·w_1)`, where `two` is the
    /// degree-1 class of 2.
    pub fn to_galois(&self, two: &MilnorElement) -> Result<SWClass, MilnorError> {
        match two.homogeneity() {
            Homogeneity::Zero | Homogeneity::Degree(1) => {}
            Homogeneity::Degree(d) => return Err(MilnorError::WrongDegree { expected: 1, found: d }),
            Homogeneity::Mixed => return Err(MilnorError::NotHomogeneous),
        }
        let factor = &MilnorElement::one(self.generators()) + &two.multiply(&self.component(1))?;
        Ok(SWClass(self.0.multiply(&factor)?))
    }

    /// Check both the closed form `w_m w_m' = e^(m+m'-m•m') w_(m•m')` and the
    /// trinomial expansion `Σ_i (i, m-i, m'-i) e^i w_(m+m'-i)` against the
    /// direct product.
    pub fn product_rule_holds(&self, m: u32, m_prime: u32) -> bool {
        let lhs = &self.component(m) * &self.component(m_prime);
        let shift = overlap_value(m as u64, m_prime as u64) as u32;
        let closed = self
            .component(diminished_sum(m as u64, m_prime as u64) as u32)
            .times_e_power(shift);
        let mut expanded = MilnorElement::zero(self.generators());
        for i in 0..=m.min(m_prime) {
            if trinomial_parity(i as u64, (m - i) as u64, (m_prime - i) as u64) {
                expanded += &self.component(m + m_prime - i).times_e_power(i);
            }
        }
        lhs == closed && lhs == expanded
    }
}

impl fmt::Display for SWClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A power series `Σ a_n t^n` with `a_0 = 1` and `a_n` of degree `n`,
/// truncated after `t^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    generators: u32,
    coeffs: Vec<MilnorElement>,
}

impl TruncatedSeries {
    pub fn new(generators: u32, order: usize, coeffs: Vec<MilnorElement>) -> Result<Self, MilnorError> {
        let mut coeffs = coeffs;
        coeffs.resize(order + 1, MilnorElement::zero(generators));
        coeffs.truncate(order + 1);
        if !coeffs[0].is_one() {
            return Err(MilnorError::ConstantTermNotOne);
        }
        for (n, a) in coeffs.iter().enumerate() {
            if a.generators != generators {
                return Err(MilnorError::GeneratorMismatch(a.generators, generators));
            }
            match a.homogeneity() {
                Homogeneity::Zero => {}
                Homogeneity::Degree(d) if d as usize == n => {}
                Homogeneity::Degree(d) => return Err(MilnorError::WrongDegree { expected: n as u32, found: d }),
                Homogeneity::Mixed => return Err(MilnorError::NotHomogeneous),
            }
        }
        Ok(TruncatedSeries { generators, coeffs })
    }

    pub fn one(generators: u32, order: usize) -> Self {
        let mut coeffs = vec![MilnorElement::zero(generators); order + 1];
        coeffs[0] = MilnorElement::one(generators);
        TruncatedSeries { generators, coeffs }
    }

    /// The series `a_t = Σ x_n t^n` attached to an element with constant
    /// term 1.
    pub fn from_element(x: &MilnorElement, order: usize) -> Result<Self, MilnorError> {
        let coeffs = (0..=order as u32).map(|n| x.component(n)).collect();
        Self::new(x.generators, order, coeffs)
    }

    /// `∏_j (1 + a_j t^(2^j))`, truncated.
    pub fn from_p_factors(generators: u32, factors: &[MilnorElement], order: usize) -> Result<Self, MilnorError> {
        let mut acc = Self::one(generators, order);
        for (j, a) in factors.iter().enumerate() {
            let pos = 1usize << j;
            if pos > order {
                break;
            }
            let mut coeffs = vec![MilnorElement::zero(generators); order + 1];
            coeffs[0] = MilnorElement::one(generators);
            coeffs[pos] = a.clone();
            acc = acc.mul(&Self::new(generators, order, coeffs)?)?;
        }
        Ok(acc)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn generators(&self) -> u32 {
        self.generators
    }

    pub fn coeff(&self, n: usize) -> &MilnorElement {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[MilnorElement] {
        &self.coeffs
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(MilnorElement::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MilnorError> {
        if self.generators != other.generators {
            return Err(MilnorError::GeneratorMismatch(self.generators, other.generators));
        }
        let order = self.order().min(other.order());
        let mut coeffs = vec![MilnorElement::zero(self.generators); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        Ok(TruncatedSeries { generators: self.generators, coeffs })
    }

    /// Multiplicative inverse up to the truncation order. Over `F₂` the
    /// recursion is `b_n = Σ_{k=1..n} a_k b_(n-k)`.
    pub fn inverse(&self) -> Self {
        let order = self.order();
        let mut b = vec![MilnorElement::one(self.generators)];
        for n in 1..=order {
            let mut acc = MilnorElement::zero(self.generators);
            for k in 1..=n {
                if !self.coeffs[k].is_zero() && !b[n - k].is_zero() {
                    acc += &(&self.coeffs[k] * &b[n - k]);
                }
            }
            b.push(acc);
        }
        TruncatedSeries { generators: self.generators, coeffs: b }
    }

    /// The factors `a_j = coeff(2^j)` when the series lies in the subgroup of
    /// products `∏ (1 + a_j t^(2^j))` (up to the truncation order).
    pub fn p_factors(&self) -> Option<Vec<MilnorElement>> {
        let order = self.order();
        let mut factors = Vec::new();
        let mut pos = 1usize;
        while pos <= order {
            factors.push(self.coeffs[pos].clone());
            pos <<= 1;
        }
        let rebuilt = Self::from_p_factors(self.generators, &factors, order).ok()?;
        (rebuilt == *self).then_some(factors)
    }
}
