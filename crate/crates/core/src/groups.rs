//! Permutations, generated subgroups of `S_n`, and conjugacy classes of the
//! alternating groups.
//!
//! Permutations act on `{1, …, n}` in notation but are stored 0-based.
//! Composition follows function notation: `p.compose(q)` applies `q` first.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a permutation of 1..={0}")]
    NotBijective(usize),
    #[error("cannot parse permutation {0:?}")]
    Parse(String),
    #[error("subgroup exceeds the enumeration cap of {0} elements")]
    TooLarge(usize),
    #[error("{0}")]
    BadDegree(String),
}

/// Largest subgroup enumerated element by element.
pub const ENUMERATION_CAP: usize = 10_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= u8::MAX as usize, "degree too large");
        Permutation { images: (0..n as u8).collect() }
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(GroupError::NotBijective(n));
            }
            seen[i] = true;
        }
        Ok(Permutation { images: images.into_iter().map(|i| i as u8).collect() })
    }

    /// From disjoint or overlapping 1-based cycles, composed right to left.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, GroupError> {
        let mut acc = Self::identity(n);
        for cycle in cycles.iter().rev() {
            let mut images: Vec<usize> = (0..n).collect();
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a == 0 || a > n || b == 0 || b > n {
                    return Err(GroupError::NotBijective(n));
                }
                images[a - 1] = b - 1;
            }
            acc = Self::from_images(images)?.compose(&acc);
        }
        Ok(acc)
    }

    /// Parse cycle notation such as `(1 2)(3 4)` or `()`.
    pub fn parse(n: usize, text: &str) -> Result<Self, GroupError> {
        let err = || GroupError::Parse(text.to_string());
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(err)?;
            let close = body.find(')').ok_or_else(err)?;
            let points = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| err()))
                .collect::<Result<Vec<_>, _>>()?;
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = body[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Self::from_cycles(n, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation { images: other.images.iter().map(|&j| self.images[j as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u8;
        }
        Permutation { images }
    }

    /// `g self g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.compose(self).compose(&g.inverse())
    }

    /// Cycles of length ≥ 2, 0-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.apply(start);
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.apply(j);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut parts: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        parts.extend(std::iter::repeat_n(1, self.fixed_points()));
        CycleType::new(parts)
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &j)| *i == j as usize).count()
    }

    pub fn sign(&self) -> i8 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        self.sign() == 1
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// Same permutation on `{1, …, n}` for `n ≥ degree`, fixing the new points.
    pub fn extend(&self, n: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.degree() as u8..n as u8);
        Permutation { images }
    }

    /// Position of the permutation in lexicographic order of image arrays.
    pub fn lehmer_rank(&self) -> u64 {
        let n = self.degree();
        let mut rank = 0u64;
        let mut used = 0u32;
        for i in 0..n {
            let v = self.images[i] as u32;
            let smaller_unused = v - (used & ((1 << v) - 1)).count_ones();
            rank = rank * (n - i) as u64 + smaller_unused as u64;
            used |= 1 << v;
        }
        rank
    }

    pub fn from_lehmer_rank(n: usize, rank: u64) -> Permutation {
        let mut digits = vec![0u64; n];
        let mut r = rank;
        for i in (0..n).rev() {
            let base = (n - i) as u64;
            digits[i] = r % base;
            r /= base;
        }
        let mut free: Vec<u8> = (0..n as u8).collect();
        let images = digits.iter().map(|&d| free.remove(d as usize)).collect();
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A partition of `n`, parts in weakly decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Permutations of this type are even.
    pub fn is_even(&self) -> bool {
        (self.size() - self.0.len()).is_multiple_of(2)
    }

    /// The `S_n`-class of an even type splits into two `A_n`-classes exactly
    /// when all parts are odd and pairwise distinct (and `n ≥ 2`, since
    /// `A_n = S_n` below that).
    pub fn splits_in_alternating(&self) -> bool {
        self.size() >= 2
            && self.is_even()
            && self.0.iter().all(|p| p % 2 == 1) && self.0.windows(2).all(|w| w[0] != w[1])
    }

    /// A permutation of this type with consecutive cycles `(1 … p₁)(…)`.
    pub fn representative(&self) -> Permutation {
        let n = self.size();
        let mut images: Vec<usize> = (0..n).collect();
        let mut start = 0;
        for &p in &self.0 {
            for k in 0..p {
                images[start + k] = start + (k + 1) % p;
            }
            start += p;
        }
        Permutation::from_images(images).expect("valid cycles")
    }

    /// All partitions of `n`, in reverse lexicographic order (`n` first).
    pub fn all(n: usize) -> Vec<CycleType> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<CycleType>) {
            if rest == 0 {
                out.push(CycleType(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A subgroup of `S_n` given by generators; elements are enumerated by
/// breadth-first closure on first use.
#[derive(Debug)]
pub struct GeneratedSubgroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: OnceLock<Result<HashSet<Permutation>, GroupError>>,
}

impl Clone for GeneratedSubgroup {
    fn clone(&self) -> Self {
        GeneratedSubgroup { degree: self.degree, generators: self.generators.clone(), elements: OnceLock::new() }
    }
}

impl GeneratedSubgroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, GroupError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch(degree, g.degree()));
        }
        Ok(GeneratedSubgroup { degree, generators, elements: OnceLock::new() })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> Result<&HashSet<Permutation>, GroupError> {
        self.elements
            .get_or_init(|| {
                let id = Permutation::identity(self.degree);
                let mut seen = HashSet::from([id.clone()]);
                let mut queue = VecDeque::from([id]);
                while let Some(x) = queue.pop_front() {
                    for g in &self.generators {
                        let y = g.compose(&x);
                        if !seen.contains(&y) {
                            if seen.len() >= ENUMERATION_CAP {
                                return Err(GroupError::TooLarge(ENUMERATION_CAP));
                            }
                            seen.insert(y.clone());
                            queue.push_back(y);
                        }
                    }
                }
                Ok(seen)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn order(&self) -> Result<u64, GroupError> {
        Ok(self.elements()?.len() as u64)
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool, GroupError> {
        Ok(self.elements()?.contains(p))
    }

    /// Points fixed by every generator (hence by the whole subgroup).
    pub fn common_fixed_points(&self) -> usize {
        (0..self.degree).filter(|&i| self.generators.iter().all(|g| g.apply(i) == i)).count()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// Abelian with every element of order at most 2.
    pub fn is_elementary_abelian(&self) -> bool {
        self.is_abelian() && self.generators.iter().all(|g| g.compose(g).is_identity())
    }
}

/// `n!` for `n ≤ 20`.
pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// `|A_n|`.
pub fn alternating_order(n: u64) -> u64 {
    if n < 2 {
        1
    } else {
        factorial(n) / 2
    }
}

/// The elementary abelian subgroup `E` of `A_n`: on each block
/// `{4i-3, …, 4i}` the bitranspositions `(4i-3 4i-2)(4i-1 4i)` and
/// `(4i-3 4i-1)(4i-2 4i)`; points past the last full block are fixed.
#[allow(non_snake_case)]
pub fn build_E(n: usize) -> Result<GeneratedSubgroup, GroupError> {
    if n < 4 {
        return Err(GroupError::BadDegree(format!("E needs n ≥ 4, got {n}")));
    }
    let mut gens = Vec::new();
    for i in 1..=n / 4 {
        let b = 4 * i - 3;
        gens.push(Permutation::from_cycles(n, &[&[b, b + 1], &[b + 2, b + 3]])?);
        gens.push(Permutation::from_cycles(n, &[&[b, b + 2], &[b + 1, b + 3]])?);
    }
    GeneratedSubgroup::new(n, gens)
}

/// The centralizer `D` in `A_n` of `s = (1 2)(3 4)⋯(n-1 n)`, generated by
/// products of two adjacent pair flips and by swaps of adjacent pairs.
#[allow(non_snake_case)]
pub fn build_D(n: usize) -> Result<GeneratedSubgroup, GroupError> {
    if n < 4 || n % 2 == 1 {
        return Err(GroupError::BadDegree(format!("D needs even n ≥ 4, got {n}")));
    }
    let r = n / 2;
    let mut gens = Vec::new();
    for j in 1..r {
        let (a, b) = (2 * j - 1, 2 * j + 1);
        gens.push(Permutation::from_cycles(n, &[&[a, a + 1], &[b, b + 1]])?);
        gens.push(Permutation::from_cycles(n, &[&[a, b], &[a + 1, b + 1]])?);
    }
    GeneratedSubgroup::new(n, gens)
}

/// The fixed-point-free involution `(1 2)(3 4)⋯` of even degree.
pub fn standard_involution(n: usize) -> Permutation {
    let cycles: Vec<[usize; 2]> = (1..=n / 2).map(|j| [2 * j - 1, 2 * j]).collect();
    let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
    Permutation::from_cycles(n, &refs).expect("valid cycles")
}

/// `|D| = 2^(n/2 - 1) (n/2)!`.
pub fn d_order_formula(n: u64) -> u64 {
    let r = n / 2;
    (1u64 << (r - 1)) * factorial(r)
}

/// `Π_{i odd, i ≤ n} i`.
pub fn odd_double_factorial(n: u64) -> u64 {
    (1..=n).filter(|i| i % 2 == 1).product()
}

/// The embedding `ι′: S_(n-2) → A_n` sending odd `σ` to `σ·(n-1 n)`.
#[derive(Debug, Clone)]
pub struct IotaPrime {
    n: usize,
    image: GeneratedSubgroup,
    c_prime: GeneratedSubgroup,
}

impl IotaPrime {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Image of a permutation of `{1, …, n-2}`.
    pub fn embed(&self, sigma: &Permutation) -> Permutation {
        assert_eq!(sigma.degree(), self.n - 2, "expects a permutation of degree n-2");
        let lifted = sigma.extend(self.n);
        if sigma.is_even() {
            lifted
        } else {
            let tail = Permutation::from_cycles(self.n, &[&[self.n - 1, self.n]]).expect("valid");
            lifted.compose(&tail)
        }
    }

    /// `ι′(S_(n-2))`.
    pub fn image(&self) -> &GeneratedSubgroup {
        &self.image
    }

    /// `ι′` of the subgroup generated by `(1 2), (3 4), …`: generated by the
    /// bitranspositions `(2i-1 2i)(n-1 n)`.
    pub fn c_prime(&self) -> &GeneratedSubgroup {
        &self.c_prime
    }

    /// `(A_n : ι′(S_(n-2))) = n(n-1)/2`.
    pub fn index_formula(&self) -> u64 {
        (self.n * (self.n - 1) / 2) as u64
    }
}

pub fn build_iota_prime(n: usize) -> Result<IotaPrime, GroupError> {
    if n % 4 != 2 && n % 4 != 3 {
        return Err(GroupError::BadDegree(format!("ι′ needs n ≡ 2, 3 mod 4, got {n}")));
    }
    let k = n - 2;
    let mut proto = IotaPrime {
        n,
        image: GeneratedSubgroup::new(n, Vec::new())?,
        c_prime: GeneratedSubgroup::new(n, Vec::new())?,
    };
    let long_cycle: Vec<usize> = (1..=k).collect();
    let sn_gens = [Permutation::from_cycles(k, &[&[1, 2]])?, Permutation::from_cycles(k, &[&long_cycle])?];
    let image_gens = sn_gens.iter().map(|g| proto.embed(g)).collect();
    let mut c_gens = Vec::new();
    for i in 1..=k / 2 {
        c_gens.push(proto.embed(&Permutation::from_cycles(k, &[&[2 * i - 1, 2 * i]])?));
    }
    proto.image = GeneratedSubgroup::new(n, image_gens)?;
    proto.c_prime = GeneratedSubgroup::new(n, c_gens)?;
    Ok(proto)
}

/// Generators of the centralizer in `S_n` of a permutation: each of its
/// cycles, and for two cycles of equal length the involution exchanging them
/// pointwise.
pub fn centralizer_generators(p: &Permutation) -> Vec<Permutation> {
    let n = p.degree();
    let mut cycles = p.cycles();
    for i in 0..n {
        if p.apply(i) == i {
            cycles.push(vec![i]);
        }
    }
    let mut gens = Vec::new();
    for c in &cycles {
        if c.len() > 1 {
            let mut images: Vec<usize> = (0..n).collect();
            for (k, &a) in c.iter().enumerate() {
                images[a] = c[(k + 1) % c.len()];
            }
            gens.push(Permutation::from_images(images).expect("valid"));
        }
    }
    for (i, a) in cycles.iter().enumerate() {
        for b in cycles.iter().skip(i + 1) {
            if a.len() == b.len() {
                let mut images: Vec<usize> = (0..n).collect();
                for (&x, &y) in a.iter().zip(b) {
                    images[x] = y;
                    images[y] = x;
                }
                gens.push(Permutation::from_images(images).expect("valid"));
            }
        }
    }
    gens
}

/// Conjugacy classes grouped by cycle type. For `S_n` every partition gives
/// one class. For `A_n` only even types occur, and a type counts twice when
/// its centralizer in `S_n` has no odd element.
pub fn conjugacy_classes(n: usize, alternating: bool) -> Vec<(CycleType, u8)> {
    CycleType::all(n)
        .into_iter()
        .filter(|ct| !alternating || ct.is_even())
        .map(|ct| {
            let count = if alternating {
                let rep = ct.representative();
                let has_odd = centralizer_generators(&rep).iter().any(|g| !g.is_even());
                if has_odd || n < 2 {
                    1
                } else {
                    2
                }
            } else {
                1
            };
            (ct, count)
        })
        .collect()
}

/// Generators of `A_n`: `(1 2 3)` together with `(1 2 … n)` for odd `n` or
/// `(2 3 … n)` for even `n`.
pub fn alternating_generators(n: usize) -> Vec<Permutation> {
    if n < 3 {
        return Vec::new();
    }
    let three = Permutation::from_cycles(n, &[&[1, 2, 3]]).expect("valid");
    let long: Vec<usize> = if n % 2 == 1 { (1..=n).collect() } else { (2..=n).collect() };
    vec![three, Permutation::from_cycles(n, &[&long]).expect("valid")]
}

/// Number of `A_n`-conjugacy classes by enumerating every orbit of `A_n` on
/// itself under conjugation. Intended for `n ≤ 10`.
pub fn count_classes_by_orbits(n: usize) -> usize {
    let total = factorial(n as u64);
    let gens = alternating_generators(n);
    let inverses: Vec<Permutation> = gens.iter().map(Permutation::inverse).collect();
    let mut seen = vec![false; total as usize];
    let mut classes = 0;
    let mut stack = Vec::new();
    for rank in 0..total {
        if seen[rank as usize] {
            continue;
        }
        let p = Permutation::from_lehmer_rank(n, rank);
        if !p.is_even() {
            continue;
        }
        classes += 1;
        seen[rank as usize] = true;
        stack.push(p);
        while let Some(x) = stack.pop() {
            for (g, gi) in gens.iter().zip(&inverses) {
                let y = g.compose(&x).compose(gi);
                let r = y.lehmer_rank() as usize;
                if !seen[r] {
                    seen[r] = true;
                    stack.push(y);
                }
            }
        }
    }
    classes
}
