//! Fixed points of group actions on invariant modules.
//!
//! On the cohomology side, a group acts on `M(r)` by linear substitutions of
//! the degree-one generators; the fixed subalgebra is computed degree by
//! degree as the kernel of `g - 1` over `F_2`, and minimal generators as an
//! `F_2[e]`-module are extracted greedily.
//!
//! On the Witt side, a group permutes a basis of a free module and the fixed
//! module has the orbit sums as basis. The symbolic ring on 2-fold Pfister
//! symbols `q_1, …, q_m` supports the λ-identities for sums of such forms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::dyadic::signed_binomial;
use crate::groups::Permutation;
use crate::milnor::{MilnorElement, MilnorError, Monomial, SWClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixedModuleError {
    #[error("matrix {0} is not invertible over F_2")]
    NotInvertible(usize),
    #[error("matrix {index} has the wrong size for rank {rank}")]
    BadShape { index: usize, rank: u32 },
    #[error("permutation {0} does not act on the basis")]
    BadPermutation(String),
    #[error("unknown action {0:?} (expected trivial, a3, s3 or n)")]
    UnknownAction(String),
    #[error("{0}")]
    OutOfRange(String),
    #[error(transparent)]
    Milnor(#[from] MilnorError),
}

/// A group acting on `M(r)` through substitutions `x_i ↦ Σ_j a_ji x_j`.
/// Each generator is stored as the list of images of `x_1, …, x_r`, an image
/// being a bitmask of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearAction {
    rank: u32,
    generators: Vec<Vec<u64>>,
}

impl LinearAction {
    /// Generators given as images of `x_1, …, x_r` (bitmask of generators).
    pub fn new(rank: u32, generators: Vec<Vec<u64>>) -> Result<Self, FixedModuleError> {
        for (index, g) in generators.iter().enumerate() {
            if g.len() != rank as usize || g.iter().any(|&m| rank < 64 && m >> rank != 0) {
                return Err(FixedModuleError::BadShape { index, rank });
            }
            if f2_rank(g.clone()) != rank as usize {
                return Err(FixedModuleError::NotInvertible(index));
            }
        }
        Ok(LinearAction { rank, generators })
    }

    pub fn trivial(rank: u32) -> Self {
        LinearAction { rank, generators: Vec::new() }
    }

    /// Cyclic action `x ↦ y ↦ x + y ↦ x` on `M(2)`.
    pub fn a3() -> Self {
        LinearAction { rank: 2, generators: vec![vec![0b10, 0b11]] }
    }

    /// The cyclic action together with the swap `x ↔ y`.
    pub fn s3() -> Self {
        LinearAction { rank: 2, generators: vec![vec![0b10, 0b11], vec![0b10, 0b01]] }
    }

    /// Action on `M(2m)` with generator pairs `(x_i, y_i)`: the cyclic
    /// substitution on each pair and the exchange of adjacent pairs.
    pub fn normalizer(m: u32) -> Self {
        let r = 2 * m;
        let mut generators = Vec::new();
        for i in 0..m {
            let mut g: Vec<u64> = (0..r).map(|j| 1u64 << j).collect();
            let (x, y) = (2 * i, 2 * i + 1);
            g[x as usize] = 1 << y;
            g[y as usize] = (1 << x) | (1 << y);
            generators.push(g);
        }
        for i in 0..m.saturating_sub(1) {
            let mut g: Vec<u64> = (0..r).map(|j| 1u64 << j).collect();
            for k in 0..2 {
                let (a, b) = (2 * i + k, 2 * i + 2 + k);
                g[a as usize] = 1 << b;
                g[b as usize] = 1 << a;
            }
            generators.push(g);
        }
        LinearAction { rank: r, generators }
    }

    /// `trivial`, `a3`, `s3` or `n` (the pairwise action on `M(rank)`).
    pub fn by_name(name: &str, rank: u32) -> Result<Self, FixedModuleError> {
        let need = |r: u32| {
            if rank == r {
                Ok(())
            } else {
                Err(FixedModuleError::OutOfRange(format!("action {name} needs rank {r}")))
            }
        };
        match name {
            "trivial" => Ok(Self::trivial(rank)),
            "a3" => need(2).map(|_| Self::a3()),
            "s3" => need(2).map(|_| Self::s3()),
            "n" if rank.is_multiple_of(2) => Ok(Self::normalizer(rank / 2)),
            "n" => Err(FixedModuleError::OutOfRange("action n needs even rank".into())),
            other => Err(FixedModuleError::UnknownAction(other.to_string())),
        }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    /// Apply the `index`-th generator.
    pub fn apply(&self, index: usize, u: &MilnorElement) -> Result<MilnorElement, FixedModuleError> {
        let images: Vec<MilnorElement> = self.generators[index]
            .iter()
            .map(|&mask| {
                MilnorElement::from_monomials(self.rank, (0..self.rank).filter(|j| mask >> j & 1 == 1).map(|j| Monomial { e: 0, gens: 1 << j }))
            })
            .collect();
        Ok(u.substitute(self.rank, &images)?)
    }

    /// Whether every generator fixes `u`.
    pub fn fixes(&self, u: &MilnorElement) -> Result<bool, FixedModuleError> {
        for i in 0..self.generators.len() {
            if self.apply(i, u)? != *u {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn f2_rank(rows: Vec<u64>) -> usize {
    let mut basis = F2Span::default();
    rows.into_iter().filter(|&r| basis.insert(vec![r])).count()
}

/// A subspace of `F_2^n` kept in reduced echelon form; vectors are bit
/// words, column `c` at bit `c % 64` of word `c / 64`.
#[derive(Clone, Debug, Default)]
struct F2Span {
    rows: Vec<(usize, Vec<u64>)>,
}

fn lowest_bit(v: &[u64]) -> Option<usize> {
    v.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| 64 * i + w.trailing_zeros() as usize)
}

fn has_bit(v: &[u64], c: usize) -> bool {
    v.get(c / 64).is_some_and(|w| w >> (c % 64) & 1 == 1)
}

fn xor_into(a: &mut Vec<u64>, b: &[u64]) {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= y;
    }
}

impl F2Span {
    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if has_bit(&v, *pivot) {
                xor_into(&mut v, row);
            }
        }
        v
    }

    /// Add a vector; returns whether it was independent.
    fn insert(&mut self, v: Vec<u64>) -> bool {
        let v = self.reduce(&v);
        let Some(pivot) = lowest_bit(&v) else {
            return false;
        };
        for (_, row) in self.rows.iter_mut() {
            if has_bit(row, pivot) {
                xor_into(row, &v);
            }
        }
        self.rows.push((pivot, v));
        self.rows.sort_by_key(|(p, _)| *p);
        true
    }
}

/// Kernel of a linear map `F_2^n → F_2^k` given by the images of basis
/// vectors, as a basis in reduced echelon form (free columns ascending).
fn f2_kernel(n: usize, images: &[Vec<u64>]) -> Vec<Vec<u64>> {
    // Gaussian elimination on the augmented rows [image | identity]
    let width = images.iter().map(Vec::len).max().unwrap_or(0);
    let mut rows: Vec<(Vec<u64>, Vec<u64>)> = images
        .iter()
        .enumerate()
        .map(|(i, img)| {
            let mut img = img.clone();
            img.resize(width, 0);
            let mut id = vec![0u64; n.div_ceil(64)];
            id[i / 64] |= 1 << (i % 64);
            (img, id)
        })
        .collect();
    let mut kernel = F2Span::default();
    let mut used = vec![false; n];
    for col in 0..width * 64 {
        let Some(p) = (0..n).find(|&r| !used[r] && has_bit(&rows[r].0, col)) else {
            continue;
        };
        used[p] = true;
        let (pi, pid) = rows[p].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != p && has_bit(&row.0, col) {
                xor_into(&mut row.0, &pi);
                xor_into(&mut row.1, &pid);
            }
        }
    }
    for (img, id) in rows {
        if img.iter().all(|&w| w == 0) {
            kernel.insert(id);
        }
    }
    kernel.rows.into_iter().map(|(_, v)| v).collect()
}

/// Monomials `e^a x_S` of degree `d` in `M(r)`, in monomial order.
pub fn degree_basis(r: u32, d: u32) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = (0u64..1 << r)
        .filter(|s| s.count_ones() <= d)
        .map(|s| Monomial { e: d - s.count_ones(), gens: s })
        .collect();
    out.sort();
    out
}

fn encode(basis: &[Monomial], u: &MilnorElement) -> Vec<u64> {
    let mut v = vec![0u64; basis.len().div_ceil(64).max(1)];
    for m in u.terms() {
        let i = basis.binary_search(m).expect("monomial of the right degree");
        v[i / 64] ^= 1 << (i % 64);
    }
    v
}

fn decode(r: u32, basis: &[Monomial], v: &[u64]) -> MilnorElement {
    MilnorElement::from_monomials(r, basis.iter().enumerate().filter(|(i, _)| has_bit(v, *i)).map(|(_, m)| *m))
}

/// Graded fixed subalgebra `M(r)^G` up to a degree cutoff.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleBasisReport {
    pub rank: u32,
    pub cutoff: u32,
    /// `F_2`-dimension of the fixed space in each degree `0..=cutoff`.
    pub dimensions: Vec<usize>,
    /// Minimal homogeneous generators over `F_2[e]`, as strings.
    pub generators: Vec<String>,
    #[serde(skip)]
    pub generator_elements: Vec<MilnorElement>,
    /// Per-degree `F_2`-bases of the fixed spaces.
    #[serde(skip)]
    pub fixed_bases: Vec<Vec<MilnorElement>>,
}

/// Largest degree cutoff accepted by [`fixed_submodule_h`].
pub const MAX_CUTOFF: u32 = 12;

/// Fixed points of the action on `M(r)` in degrees `0..=cutoff`, with
/// minimal `F_2[e]`-generators chosen greedily by degree: a fixed element
/// becomes a generator when it is not in the span of `e`-multiples of earlier
/// generators (and of generators already chosen in its degree), and it is
/// recorded reduced modulo that span.
pub fn fixed_submodule_h(action: &LinearAction, cutoff: u32) -> Result<ModuleBasisReport, FixedModuleError> {
    if cutoff > MAX_CUTOFF {
        return Err(FixedModuleError::OutOfRange(format!("cutoff {cutoff} exceeds {MAX_CUTOFF}")));
    }
    let r = action.rank;
    let mut dimensions = Vec::new();
    let mut fixed_bases = Vec::new();
    let mut generators: Vec<MilnorElement> = Vec::new();
    for d in 0..=cutoff {
        let basis = degree_basis(r, d);
        // map v ↦ (g_1 v - v, g_2 v - v, …) stacked
        let blocks = action.generators.len().max(1);
        let stride = basis.len().div_ceil(64).max(1);
        let images: Vec<Vec<u64>> = basis
            .iter()
            .map(|m| {
                let u = MilnorElement::from_monomial(r, *m);
                let mut img = vec![0u64; stride * blocks];
                for gi in 0..action.generators.len() {
                    let moved = &action.apply(gi, &u)? + &u;
                    let enc = encode(&basis, &moved);
                    img[gi * stride..gi * stride + enc.len()].copy_from_slice(&enc);
                }
                Ok(img)
            })
            .collect::<Result<_, FixedModuleError>>()?;
        let kernel = f2_kernel(basis.len(), &images);
        dimensions.push(kernel.len());
        let mut span = F2Span::default();
        for g in &generators {
            let gd = g.max_degree().unwrap_or(0);
            span.insert(encode(&basis, &g.times_e_power(d - gd)));
        }
        for v in &kernel {
            let reduced = span.reduce(v);
            if lowest_bit(&reduced).is_some() {
                span.insert(reduced.clone());
                generators.push(decode(r, &basis, &reduced));
            }
        }
        fixed_bases.push(kernel.iter().map(|v| decode(r, &basis, v)).collect());
    }
    Ok(ModuleBasisReport {
        rank: r,
        cutoff,
        dimensions,
        generators: generators.iter().map(ToString::to_string).collect(),
        generator_elements: generators,
        fixed_bases,
    })
}

/// Orbits of a permutation group on `{0, …, basis_size-1}`; the orbit sums
/// form a basis of the fixed part of the permutation module. Orbits are
/// listed by least element.
pub fn fixed_permutation_module_w(
    basis_size: usize,
    generators: &[Permutation],
) -> Result<Vec<Vec<usize>>, FixedModuleError> {
    if let Some(g) = generators.iter().find(|g| g.degree() != basis_size) {
        return Err(FixedModuleError::BadPermutation(g.to_string()));
    }
    let mut orbit_of = vec![usize::MAX; basis_size];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..basis_size {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orbit = vec![start];
        orbit_of[start] = id;
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in generators {
                let y = g.apply(x);
                if orbit_of[y] == usize::MAX {
                    orbit_of[y] = id;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// The permutation of the subsets of `{1, …, m}` (indexed by bitmask)
/// induced by a permutation of `{1, …, m}`.
pub fn subset_permutation(sigma: &Permutation) -> Permutation {
    let m = sigma.degree();
    let images = (0..1usize << m)
        .map(|set| (0..m).filter(|&i| set >> i & 1 == 1).fold(0, |acc, i| acc | 1 << sigma.apply(i)))
        .collect();
    Permutation::from_images(images).expect("a bijection on subsets")
}

/// Integer combinations of the products `q_I = Π_{i∈I} q_i` of Pfister
/// symbols. Products use `q_i² = 4 q_i`, valid for 2-fold Pfister forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolicGW {
    symbols: u32,
    terms: BTreeMap<u64, BigInt>,
}

impl SymbolicGW {
    pub fn zero(symbols: u32) -> Self {
        SymbolicGW { symbols, terms: BTreeMap::new() }
    }

    pub fn from_int(symbols: u32, n: impl Into<BigInt>) -> Self {
        Self::monomial(symbols, 0, n.into())
    }

    pub fn one(symbols: u32) -> Self {
        Self::from_int(symbols, 1)
    }

    /// `q_i`, `1 ≤ i ≤ symbols`.
    pub fn symbol(symbols: u32, i: u32) -> Self {
        assert!(i >= 1 && i <= symbols);
        Self::monomial(symbols, 1 << (i - 1), BigInt::one())
    }

    /// `c · q_I`.
    pub fn monomial(symbols: u32, set: u64, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(set, c);
        }
        SymbolicGW { symbols, terms }
    }

    /// `q(d) = Σ_{|I| = d} q_I`.
    pub fn elementary(symbols: u32, d: u32) -> Self {
        let terms = (0u64..1 << symbols)
            .filter(|s| s.count_ones() == d)
            .map(|s| (s, BigInt::one()))
            .collect();
        SymbolicGW { symbols, terms }
    }

    pub fn coeff(&self, set: u64) -> BigInt {
        self.terms.get(&set).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &SymbolicGW) -> SymbolicGW {
        let mut out = self.clone();
        for (set, c) in &other.terms {
            out.add_term(*set, c.clone());
        }
        out
    }

    pub fn neg(&self) -> SymbolicGW {
        SymbolicGW { symbols: self.symbols, terms: self.terms.iter().map(|(s, c)| (*s, -c)).collect() }
    }

    pub fn sub(&self, other: &SymbolicGW) -> SymbolicGW {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> SymbolicGW {
        let mut out = SymbolicGW::zero(self.symbols);
        for (set, c) in &self.terms {
            out.add_term(*set, c * k);
        }
        out
    }

    pub fn mul(&self, other: &SymbolicGW) -> SymbolicGW {
        let mut out = SymbolicGW::zero(self.symbols);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let four_power = BigInt::from(4).pow((a & b).count_ones());
                out.add_term(a | b, x * y * four_power);
            }
        }
        out
    }

    fn add_term(&mut self, set: u64, c: BigInt) {
        let entry = self.terms.entry(set).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&set);
        }
    }

    /// Whether the coefficient of `q_I` depends only on `|I|`; if so,
    /// returns the coefficients of `q(0), q(1), …, q(symbols)`.
    pub fn symmetric_coefficients(&self) -> Option<Vec<BigInt>> {
        let mut out = vec![None::<BigInt>; self.symbols as usize + 1];
        for set in 0u64..1 << self.symbols {
            let c = self.coeff(set);
            let slot = &mut out[set.count_ones() as usize];
            match slot {
                None => *slot = Some(c),
                Some(prev) if *prev == c => {}
                Some(_) => return None,
            }
        }
        Some(out.into_iter().map(Option::unwrap_or_default).collect())
    }
}

impl fmt::Display for SymbolicGW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (set, c) in &self.terms {
            let mono: Vec<String> = (0..self.symbols).filter(|i| set >> i & 1 == 1).map(|i| format!("q{}", i + 1)).collect();
            let mag = c.abs();
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => mono.join("*"),
                (false, false) => format!("{mag}*{}", mono.join("*")),
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                write!(f, "{}{body}", if c.is_negative() { "-" } else { "" })?;
            } else {
                write!(f, " {sign} {body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Polynomials in `t` over [`SymbolicGW`], low degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicPoly {
    symbols: u32,
    coeffs: Vec<SymbolicGW>,
}

impl SymbolicPoly {
    pub fn new(symbols: u32, mut coeffs: Vec<SymbolicGW>) -> Self {
        while coeffs.last().is_some_and(SymbolicGW::is_zero) {
            coeffs.pop();
        }
        SymbolicPoly { symbols, coeffs }
    }

    pub fn from_ints(symbols: u32, coeffs: &[BigInt]) -> Self {
        Self::new(symbols, coeffs.iter().map(|c| SymbolicGW::from_int(symbols, c.clone())).collect())
    }

    /// `(1 + s t)^n` for `s = ±1`.
    pub fn binomial_power(symbols: u32, sign: i64, n: u64) -> Self {
        let coeffs: Vec<BigInt> = (0..=n)
            .map(|k| signed_binomial(n as i64, k) * BigInt::from(sign).pow(k as u32))
            .collect();
        Self::from_ints(symbols, &coeffs)
    }

    pub fn coeff(&self, i: usize) -> SymbolicGW {
        self.coeffs.get(i).cloned().unwrap_or_else(|| SymbolicGW::zero(self.symbols))
    }

    pub fn coeffs(&self) -> &[SymbolicGW] {
        &self.coeffs
    }

    pub fn add(&self, other: &SymbolicPoly) -> SymbolicPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.symbols, (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect())
    }

    pub fn mul(&self, other: &SymbolicPoly) -> SymbolicPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(self.symbols, Vec::new());
        }
        let mut out = vec![SymbolicGW::zero(self.symbols); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(self.symbols, out)
    }

    /// Multiply every coefficient by a ring element.
    pub fn scale(&self, c: &SymbolicGW) -> SymbolicPoly {
        Self::new(self.symbols, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> SymbolicPoly {
        let mut coeffs = vec![SymbolicGW::zero(self.symbols); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(self.symbols, coeffs)
    }
}

/// Largest number of Pfister symbols handled by the identities below.
pub const MAX_SYMBOLS: u32 = 4;

fn check_symbols(m: u32) -> Result<(), FixedModuleError> {
    if m > MAX_SYMBOLS {
        return Err(FixedModuleError::OutOfRange(format!("m = {m} exceeds {MAX_SYMBOLS}")));
    }
    Ok(())
}

/// `Π_i (1+t)²(1+(q_i-2)t+t²)`, the λ-polynomial of `q_1 + … + q_m`.
pub fn pfister_sum_lambda(m: u32) -> SymbolicPoly {
    let mut acc = SymbolicPoly::from_ints(m, &[BigInt::one()]);
    for i in 1..=m {
        let q = SymbolicGW::symbol(m, i);
        let inner = SymbolicPoly::new(
            m,
            vec![SymbolicGW::one(m), q.sub(&SymbolicGW::from_int(m, 2)), SymbolicGW::one(m)],
        );
        acc = acc.mul(&SymbolicPoly::binomial_power(m, 1, 2)).mul(&inner);
    }
    acc
}

/// `(1+t)^(2m) Σ_{d ≤ m} t^d (1-t)^(2m-2d) q(d)`.
pub fn pfister_sum_lambda_closed_form(m: u32) -> SymbolicPoly {
    let mut sum = SymbolicPoly::new(m, Vec::new());
    for d in 0..=m {
        let term = SymbolicPoly::binomial_power(m, -1, (2 * m - 2 * d) as u64)
            .shift(d as usize)
            .scale(&SymbolicGW::elementary(m, d));
        sum = sum.add(&term);
    }
    SymbolicPoly::binomial_power(m, 1, 2 * m as u64).mul(&sum)
}

/// Whether the λ-polynomial of a sum of `m` Pfister symbols agrees with its
/// closed form.
pub fn pfister_lambda_product_identity(m: u32) -> Result<bool, FixedModuleError> {
    check_symbols(m)?;
    Ok(pfister_sum_lambda(m) == pfister_sum_lambda_closed_form(m))
}

/// Matrix `M` with `λ^d(q_1 + … + q_m) = Σ_{d'} M[d][d'] q(d')` for
/// `0 ≤ d, d' ≤ m`, read off the expansion. Fails if some coefficient is
/// not symmetric in the symbols.
pub fn triangular_expansion(m: u32) -> Result<Vec<Vec<BigInt>>, FixedModuleError> {
    check_symbols(m)?;
    let lambda = pfister_sum_lambda(m);
    (0..=m as usize)
        .map(|d| {
            lambda
                .coeff(d)
                .symmetric_coefficients()
                .ok_or_else(|| FixedModuleError::OutOfRange(format!("λ^{d} is not symmetric")))
        })
        .collect()
}

pub fn is_unitriangular(matrix: &[Vec<BigInt>]) -> bool {
    matrix.iter().enumerate().all(|(d, row)| {
        row.iter().enumerate().all(|(j, c)| match j.cmp(&d) {
            std::cmp::Ordering::Equal => c.is_one(),
            std::cmp::Ordering::Greater => c.is_zero(),
            std::cmp::Ordering::Less => true,
        })
    })
}

/// `w_2` of the Pfister form on the `i`-th generator pair of `M(2m)`:
/// `e x_i + e y_i + x_i y_i`.
pub fn pfister_w2(m: u32, i: u32) -> MilnorElement {
    let (x, y) = (2 * i - 1, 2 * i);
    let gx = MilnorElement::generator(2 * m, x);
    let gy = MilnorElement::generator(2 * m, y);
    &(&gx.times_e_power(1) + &gy.times_e_power(1)) + &(&gx * &gy)
}

/// Whether the total Stiefel-Whitney class of the sum of `m` Pfister forms
/// `<1, x_i, y_i, x_i y_i>` in `M(2m)` equals `Π (1 + w_2(q_i))`.
pub fn sw_restriction_identity(m: u32) -> Result<bool, FixedModuleError> {
    check_symbols(m)?;
    let g = 2 * m;
    let mut classes = Vec::new();
    let mut expected = MilnorElement::one(g);
    for i in 1..=m {
        let x = MilnorElement::generator(g, 2 * i - 1);
        let y = MilnorElement::generator(g, 2 * i);
        classes.extend([MilnorElement::zero(g), x.clone(), y.clone(), &x + &y]);
        expected = &expected * &(&MilnorElement::one(g) + &pfister_w2(m, i));
    }
    let w = SWClass::from_classes(g, &classes)?;
    Ok(*w.total() == expected)
}

/// `w(d) = Σ_{|I| = d} Π_{i∈I} w_2(q_i)` in `M(2m)`.
pub fn w_of_d(m: u32, d: u32) -> MilnorElement {
    let w2: Vec<MilnorElement> = (1..=m).map(|i| pfister_w2(m, i)).collect();
    crate::milnor::elementary_symmetric(2 * m, &w2, d as usize).expect("same generator count")
}
