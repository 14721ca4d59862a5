//! Étale algebras, their trace forms, and `A_n`-torsors over finite fields.
//!
//! A factor `k[X]/(f)` contributes the Gram block `(Tr β^(i+j))`, `β` the
//! class of `X`, whose entries are the power sums of the roots of `f`.
//! A biquadratic factor `k[X]/(f) ⊗ k[Y]/(g)` contributes the Kronecker
//! product of the two quadratic blocks.

use thiserror::Error;

use crate::fields::{Field, FieldElement, FieldError, Poly, SquareClass};
use crate::groups::CycleType;
use crate::witt::{DiagonalForm, WittError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EtaleError {
    #[error("factor {0} is not monic")]
    NotMonic(String),
    #[error("factor {0} is not irreducible")]
    Reducible(String),
    #[error("factor {0} is not separable")]
    Inseparable(String),
    #[error("parameters must be nonzero")]
    ZeroParameter,
    #[error("the matrix is degenerate")]
    Degenerate,
    #[error("the matrix is not symmetric")]
    NotSymmetric,
    #[error("operation needs a finite field")]
    NotFinite,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Witt(#[from] WittError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EtaleFactor {
    /// `k[X]/(f)`.
    Simple(Poly),
    /// `k[X]/(f) ⊗ k[Y]/(g)` for quadratics `f`, `g`.
    Biquadratic(Poly, Poly),
}

impl EtaleFactor {
    pub fn degree(&self) -> usize {
        match self {
            EtaleFactor::Simple(f) => f.degree().unwrap_or(0),
            EtaleFactor::Biquadratic(..) => 4,
        }
    }
}

/// A finite product of étale algebras over one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaleAlgebra {
    field: Field,
    factors: Vec<EtaleFactor>,
}

/// A symmetric matrix, row-major.
pub type Matrix = Vec<Vec<FieldElement>>;

impl EtaleAlgebra {
    /// Product of fields `k[X]/(f_j)`; each `f_j` must be monic irreducible.
    pub fn new(field: &Field, factors: Vec<Poly>) -> Result<Self, EtaleError> {
        for f in &factors {
            check_monic(field, f)?;
            if !f.is_irreducible(field)? {
                return Err(EtaleError::Reducible(f.format(field)));
            }
        }
        Ok(EtaleAlgebra { field: field.clone(), factors: factors.into_iter().map(EtaleFactor::Simple).collect() })
    }

    /// Product of `k[X]/(f_j)` for monic separable `f_j`; factors may split.
    pub fn from_quotients(field: &Field, factors: Vec<Poly>) -> Result<Self, EtaleError> {
        for f in &factors {
            check_monic(field, f)?;
            if !f.is_separable(field) {
                return Err(EtaleError::Inseparable(f.format(field)));
            }
        }
        Ok(EtaleAlgebra { field: field.clone(), factors: factors.into_iter().map(EtaleFactor::Simple).collect() })
    }

    /// `k^n`.
    pub fn split(field: &Field, n: usize) -> Self {
        EtaleAlgebra { field: field.clone(), factors: vec![EtaleFactor::Simple(Poly::x(field)); n] }
    }

    /// `R^a × C^b` over a real closed field.
    pub fn real(field: &Field, a: usize, b: usize) -> Result<Self, EtaleError> {
        if !field.is_real_closed() {
            return Err(EtaleError::Field(FieldError::BadSpec(field.spec())));
        }
        let x = Poly::x(field);
        let x2 = x.mul(field, &x).add(field, &Poly::constant(field, field.one()));
        let mut factors = vec![EtaleFactor::Simple(x); a];
        factors.extend(std::iter::repeat_n(EtaleFactor::Simple(x2), b));
        Ok(EtaleAlgebra { field: field.clone(), factors })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn factors(&self) -> &[EtaleFactor] {
        &self.factors
    }

    pub fn dimension(&self) -> usize {
        self.factors.iter().map(EtaleFactor::degree).sum()
    }

    /// `L × k`.
    pub fn with_split_factor(&self) -> Self {
        let mut factors = self.factors.clone();
        factors.push(EtaleFactor::Simple(Poly::x(&self.field)));
        EtaleAlgebra { field: self.field.clone(), factors }
    }

    /// `L × L'`.
    pub fn product(&self, other: &EtaleAlgebra) -> Result<Self, EtaleError> {
        if self.field != other.field {
            return Err(EtaleError::Witt(WittError::FieldMismatch));
        }
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Ok(EtaleAlgebra { field: self.field.clone(), factors })
    }

    /// Block-diagonal Gram matrix of `x ↦ Tr(x²)` in the power bases.
    pub fn trace_gram(&self) -> Matrix {
        let blocks: Vec<Matrix> = self
            .factors
            .iter()
            .map(|factor| match factor {
                EtaleFactor::Simple(f) => power_sum_gram(&self.field, f),
                EtaleFactor::Biquadratic(f, g) => {
                    kronecker(&self.field, &power_sum_gram(&self.field, f), &power_sum_gram(&self.field, g))
                }
            })
            .collect();
        block_diagonal(&self.field, &blocks)
    }

    pub fn trace_form(&self) -> Result<DiagonalForm, EtaleError> {
        diagonalize_symmetric(&self.field, &self.trace_gram())
    }

    /// Product of the factor discriminants, as a square class. For a simple
    /// factor this is the determinant of its Gram block.
    pub fn discriminant(&self) -> Result<SquareClass, EtaleError> {
        let mut acc = SquareClass::TRIVIAL;
        for factor in &self.factors {
            let gram = match factor {
                EtaleFactor::Simple(f) => power_sum_gram(&self.field, f),
                EtaleFactor::Biquadratic(f, g) => {
                    kronecker(&self.field, &power_sum_gram(&self.field, f), &power_sum_gram(&self.field, g))
                }
            };
            let det = determinant(&self.field, &gram);
            acc = acc.mul(self.field.square_class(&det).map_err(|_| EtaleError::Degenerate)?);
        }
        Ok(acc)
    }
}

fn check_monic(field: &Field, f: &Poly) -> Result<(), EtaleError> {
    if !f.is_monic(field) || f.degree() == Some(0) {
        return Err(EtaleError::NotMonic(f.format(field)));
    }
    Ok(())
}

/// Power sums `p_0, …, p_len-1` of the roots of a monic `f`, by Newton's
/// identities up to the degree and the linear recurrence beyond.
pub fn power_sums(field: &Field, f: &Poly, len: usize) -> Vec<FieldElement> {
    let d = f.degree().expect("nonzero polynomial");
    // f = X^d + c_(d-1) X^(d-1) + … + c_0
    let c = |i: usize| f.coeff(field, i);
    let mut p = Vec::with_capacity(len);
    for k in 0..len {
        let value = if k == 0 {
            field.from_int(d as i64)
        } else {
            let mut acc = field.zero();
            let last = if k <= d { k - 1 } else { d };
            for i in 1..=last {
                acc = field.add(&acc, &field.mul(&c(d - i), &p[k - i]));
            }
            if k <= d {
                acc = field.add(&acc, &field.mul(&field.from_int(k as i64), &c(d - k)));
            }
            field.neg(&acc)
        };
        p.push(value);
    }
    p
}

fn power_sum_gram(field: &Field, f: &Poly) -> Matrix {
    let d = f.degree().expect("nonzero polynomial");
    let p = power_sums(field, f, 2 * d);
    (0..d).map(|i| (0..d).map(|j| p[i + j].clone()).collect()).collect()
}

fn kronecker(field: &Field, a: &Matrix, b: &Matrix) -> Matrix {
    let (n, m) = (a.len(), b.len());
    (0..n * m)
        .map(|r| (0..n * m).map(|s| field.mul(&a[r / m][s / m], &b[r % m][s % m])).collect())
        .collect()
}

fn block_diagonal(field: &Field, blocks: &[Matrix]) -> Matrix {
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut out = vec![vec![field.zero(); n]; n];
    let mut start = 0;
    for block in blocks {
        for (i, row) in block.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                out[start + i][start + j] = a.clone();
            }
        }
        start += block.len();
    }
    out
}

/// Determinant by Gaussian elimination.
pub fn determinant(field: &Field, m: &Matrix) -> FieldElement {
    let n = m.len();
    let mut a = m.clone();
    let mut det = field.one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !field.is_zero(&a[r][col])) else {
            return field.zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = field.neg(&det);
        }
        let inv = field.inv(&a[col][col]).expect("nonzero pivot");
        det = field.mul(&det, &a[col][col]);
        for r in col + 1..n {
            let factor = field.mul(&a[r][col], &inv);
            if field.is_zero(&factor) {
                continue;
            }
            for c in col..n {
                let sub = field.mul(&factor, &a[col][c]);
                a[r][c] = field.sub(&a[r][c], &sub);
            }
        }
    }
    det
}

/// Congruence diagonalization `PᵀMP = D` of a nondegenerate symmetric matrix.
/// A zero pivot is repaired from a nonzero diagonal entry further down, or
/// else by adding a row and column with a nonzero off-diagonal entry, which
/// creates the pivot `2 m_jk`.
pub fn diagonalize_symmetric(field: &Field, m: &Matrix) -> Result<DiagonalForm, EtaleError> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(EtaleError::NotSymmetric);
    }
    for i in 0..n {
        for j in 0..i {
            if m[i][j] != m[j][i] {
                return Err(EtaleError::NotSymmetric);
            }
        }
    }
    let mut a = m.clone();
    let mut diag = Vec::with_capacity(n);
    for j in 0..n {
        if field.is_zero(&a[j][j]) {
            if let Some(k) = (j + 1..n).find(|&k| !field.is_zero(&a[k][k])) {
                a.swap(j, k);
                for row in a.iter_mut() {
                    row.swap(j, k);
                }
            } else if let Some(k) = (j + 1..n).find(|&k| !field.is_zero(&a[j][k])) {
                for c in 0..n {
                    a[j][c] = field.add(&a[j][c], &a[k][c]);
                }
                for row in a.iter_mut() {
                    row[j] = field.add(&row[j], &row[k]);
                }
            } else {
                return Err(EtaleError::Degenerate);
            }
        }
        let pivot = a[j][j].clone();
        let inv = field.inv(&pivot)?;
        for r in j + 1..n {
            let factor = field.mul(&a[r][j], &inv);
            if field.is_zero(&factor) {
                continue;
            }
            for c in j..n {
                let sub = field.mul(&factor, &a[j][c]);
                a[r][c] = field.sub(&a[r][c], &sub);
            }
            for row in a.iter_mut().skip(j) {
                let sub = field.mul(&factor, &row[j]);
                row[r] = field.sub(&row[r], &sub);
            }
        }
        diag.push(pivot);
    }
    Ok(DiagonalForm::new(field, diag)?)
}

/// `k^c × Π k(√x_i, √y_i)`, each biquadratic factor presented as
/// `k[X]/(X²-x) ⊗ k[Y]/(Y²-y)`.
pub fn type_t_algebra(
    field: &Field,
    c: usize,
    pairs: &[(FieldElement, FieldElement)],
) -> Result<EtaleAlgebra, EtaleError> {
    let mut factors = vec![EtaleFactor::Simple(Poly::x(field)); c];
    for (x, y) in pairs {
        if field.is_zero(x) || field.is_zero(y) {
            return Err(EtaleError::ZeroParameter);
        }
        factors.push(EtaleFactor::Biquadratic(sqrt_quotient(field, x), sqrt_quotient(field, y)));
    }
    Ok(EtaleAlgebra { field: field.clone(), factors })
}

/// `X² - x`.
pub fn sqrt_quotient(field: &Field, x: &FieldElement) -> Poly {
    Poly::new(field, vec![field.neg(x), field.zero(), field.one()])
}

/// Cycle types of even permutations of `S_n`, each with the number of
/// `A_n`-conjugacy classes it carries (1 or 2). Over a finite field these
/// index the `A_n`-torsors up to isomorphism.
pub fn enumerate_an_torsors(field: &Field, n: usize) -> Result<Vec<(CycleType, u8)>, EtaleError> {
    if !field.is_finite() {
        return Err(EtaleError::NotFinite);
    }
    Ok(CycleType::all(n)
        .into_iter()
        .filter(CycleType::is_even)
        .map(|ct| {
            let split = if ct.splits_in_alternating() { 2 } else { 1 };
            (ct, split)
        })
        .collect())
}

/// The étale algebra with one field factor of degree `d` per cycle of
/// length `d`: the algebra whose Frobenius acts with the given cycle type.
pub fn algebra_from_cycle_type(field: &Field, ct: &CycleType) -> Result<EtaleAlgebra, EtaleError> {
    if !field.is_finite() {
        return Err(EtaleError::NotFinite);
    }
    let mut factors = Vec::new();
    for &d in ct.parts() {
        factors.push(field.find_irreducible(d)?);
    }
    EtaleAlgebra::new(field, factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witt::pfister2;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ints(field: &Field, m: &[&[i64]]) -> Matrix {
        m.iter().map(|row| row.iter().map(|&a| field.from_int(a)).collect()).collect()
    }

    fn poly(field: &Field, s: &str) -> Poly {
        Poly::parse(field, s).unwrap()
    }

    // Tr(β^k) as the trace of the k-th power of the companion matrix
    fn companion_power_sums(field: &Field, f: &Poly, len: usize) -> Vec<FieldElement> {
        let d = f.degree().unwrap();
        let mut comp = vec![vec![field.zero(); d]; d];
        for i in 1..d {
            comp[i][i - 1] = field.one();
        }
        for (i, row) in comp.iter_mut().enumerate() {
            row[d - 1] = field.neg(&f.coeff(field, i));
        }
        let mut power: Matrix = (0..d).map(|i| (0..d).map(|j| if i == j { field.one() } else { field.zero() }).collect()).collect();
        let mut out = Vec::new();
        for _ in 0..len {
            out.push((0..d).fold(field.zero(), |acc, i| field.add(&acc, &power[i][i])));
            power = (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| (0..d).fold(field.zero(), |acc, k| field.add(&acc, &field.mul(&power[i][k], &comp[k][j]))))
                        .collect()
                })
                .collect();
        }
        out
    }

    #[test]
    fn gram_examples() {
        let f7 = Field::prime(7).unwrap();
        let l = EtaleAlgebra::from_quotients(&f7, vec![poly(&f7, "X^2-3")]).unwrap();
        assert_eq!(l.trace_gram(), ints(&f7, &[&[2, 0], &[0, 6]]));
        assert_eq!(l.trace_form().unwrap().to_string(), "<2,6>");
        let split = EtaleAlgebra::split(&f7, 3);
        assert_eq!(split.trace_gram(), ints(&f7, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        let f5 = Field::prime(5).unwrap();
        let l = EtaleAlgebra::new(&f5, vec![poly(&f5, "X^2+2")]).unwrap();
        assert_eq!(l.trace_gram(), ints(&f5, &[&[2, 0], &[0, -4]]));
    }

    #[test]
    fn newton_matches_companion_traces() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for spec in ["f:3", "f:7", "f:3^2", "real"] {
            let f = Field::parse(spec).unwrap();
            for _ in 0..40 {
                let d = rng.gen_range(1..=5);
                let mut coeffs: Vec<FieldElement> = (0..d)
                    .map(|_| match f.order() {
                        Some(q) => f.element_from_index(rng.gen_range(0..q)),
                        None => f.from_int(rng.gen_range(-5..=5)),
                    })
                    .collect();
                coeffs.push(f.one());
                let p = Poly::new(&f, coeffs);
                assert_eq!(power_sums(&f, &p, 12), companion_power_sums(&f, &p, 12));
            }
        }
    }

    #[test]
    fn diagonalization_examples() {
        let f5 = Field::prime(5).unwrap();
        let h = diagonalize_symmetric(&f5, &ints(&f5, &[&[0, 1], &[1, 0]])).unwrap();
        assert!(h.witt_class().is_zero());
        assert_eq!(h.witt_class(), DiagonalForm::from_ints(&f5, &[2, -2]).unwrap().witt_class());
        let id = diagonalize_symmetric(&f5, &ints(&f5, &[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(id, DiagonalForm::unit(&f5, 2));
        let f7 = Field::prime(7).unwrap();
        let d = diagonalize_symmetric(&f7, &ints(&f7, &[&[2, 0], &[0, 6]])).unwrap();
        assert_eq!(d, DiagonalForm::from_ints(&f7, &[2, 6]).unwrap());
        assert_eq!(diagonalize_symmetric(&f7, &ints(&f7, &[&[1, 1], &[1, 1]])), Err(EtaleError::Degenerate));
        assert_eq!(diagonalize_symmetric(&f7, &ints(&f7, &[&[1, 2], &[1, 1]])), Err(EtaleError::NotSymmetric));
    }

    #[test]
    fn diagonalization_preserves_invariants() {
        // same rank, same determinant class, and the same number of
        // representations of each value as the original matrix
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let f = Field::prime(5).unwrap();
        for _ in 0..200 {
            let n = rng.gen_range(1..=4);
            let mut m = vec![vec![f.zero(); n]; n];
            for i in 0..n {
                for j in 0..=i {
                    let a = f.from_int(rng.gen_range(0..5));
                    m[i][j] = a.clone();
                    m[j][i] = a;
                }
            }
            let det = determinant(&f, &m);
            let Ok(d) = diagonalize_symmetric(&f, &m) else {
                assert!(f.is_zero(&det));
                continue;
            };
            assert_eq!(f.square_class(&det).unwrap(), d.discriminant());
            let count = |value: u64, eval: &dyn Fn(&[FieldElement]) -> FieldElement| {
                (0..5u64.pow(n as u32))
                    .filter(|&code| {
                        let v: Vec<FieldElement> = (0..n).map(|i| f.from_int((code / 5u64.pow(i as u32) % 5) as i64)).collect();
                        f.index_of(&eval(&v)) == value
                    })
                    .count()
            };
            let quad = |v: &[FieldElement]| {
                let mut acc = f.zero();
                for i in 0..n {
                    for j in 0..n {
                        acc = f.add(&acc, &f.mul(&m[i][j], &f.mul(&v[i], &v[j])));
                    }
                }
                acc
            };
            for value in 0..5 {
                assert_eq!(count(value, &quad), count(value, &|v| d.evaluate(v)));
            }
        }
    }

    #[test]
    fn trace_form_examples() {
        let f7 = Field::prime(7).unwrap();
        for x in 1..7 {
            for y in 1..7 {
                let (x, y) = (f7.from_int(x), f7.from_int(y));
                let l = type_t_algebra(&f7, 0, &[(x.clone(), y.clone())]).unwrap();
                assert_eq!(l.trace_form().unwrap().gw_class(), pfister2(&f7, &x, &y).unwrap().gw_class());
                let l3 = type_t_algebra(&f7, 3, &[(x, y)]).unwrap();
                let q = l3.trace_form().unwrap();
                assert_eq!(q.rank(), 7);
                assert!(q.discriminant().is_trivial());
            }
        }
        let split = type_t_algebra(&f7, 4, &[]).unwrap();
        assert_eq!(split.trace_form().unwrap(), DiagonalForm::unit(&f7, 4));
        let f5 = Field::prime(5).unwrap();
        let l = EtaleAlgebra::new(&f5, vec![Poly::x(&f5), poly(&f5, "X^2+2")]).unwrap();
        let q = l.trace_form().unwrap();
        assert_eq!(q.rank(), 3);
        let quad = EtaleAlgebra::new(&f5, vec![poly(&f5, "X^2+2")]).unwrap();
        assert_eq!(q.discriminant(), quad.discriminant().unwrap());
        assert!(matches!(type_t_algebra(&f5, 0, &[(f5.zero(), f5.one())]), Err(EtaleError::ZeroParameter)));
    }

    #[test]
    fn quadratic_trace_forms() {
        for p in [3u64, 5, 7] {
            let f = Field::prime(p).unwrap();
            for x in 1..p as i64 {
                let x = f.from_int(x);
                let l = EtaleAlgebra::from_quotients(&f, vec![sqrt_quotient(&f, &x)]).unwrap();
                let expected = DiagonalForm::new(&f, vec![f.from_int(2), f.mul(&f.from_int(2), &x)]).unwrap();
                assert_eq!(l.trace_form().unwrap(), expected);
            }
        }
    }

    #[test]
    fn adding_a_split_factor_adds_one() {
        for spec in ["f:3", "f:5", "f:7"] {
            let f = Field::parse(spec).unwrap();
            for n in 1..=7 {
                for (ct, _) in enumerate_an_torsors(&f, n).unwrap() {
                    let l = algebra_from_cycle_type(&f, &ct).unwrap();
                    let lhs = l.with_split_factor().trace_form().unwrap().gw_class();
                    let rhs = l.trace_form().unwrap().orthogonal_sum(&DiagonalForm::unit(&f, 1)).unwrap().gw_class();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn torsor_examples() {
        let f3 = Field::prime(3).unwrap();
        let t4 = enumerate_an_torsors(&f3, 4).unwrap();
        let expected = vec![
            (CycleType::new(vec![3, 1]), 2),
            (CycleType::new(vec![2, 2]), 1),
            (CycleType::new(vec![1, 1, 1, 1]), 1),
        ];
        assert_eq!(t4, expected);
        assert_eq!(enumerate_an_torsors(&f3, 1).unwrap(), vec![(CycleType::new(vec![1]), 1)]);
        assert!(enumerate_an_torsors(&f3, 5).unwrap().contains(&(CycleType::new(vec![5]), 2)));
        assert!(enumerate_an_torsors(&Field::real_closed(), 3).is_err());
    }

    #[test]
    fn algebras_from_cycle_types() {
        let f5 = Field::prime(5).unwrap();
        let l = algebra_from_cycle_type(&f5, &CycleType::new(vec![3, 1])).unwrap();
        assert_eq!(l.dimension(), 4);
        match l.factors() {
            [EtaleFactor::Simple(c), EtaleFactor::Simple(x)] => {
                assert_eq!(c.degree(), Some(3));
                assert!(c.is_irreducible(&f5).unwrap());
                assert_eq!(*x, Poly::x(&f5));
            }
            other => panic!("unexpected factors {other:?}"),
        }
        let f3 = Field::prime(3).unwrap();
        let l = algebra_from_cycle_type(&f3, &CycleType::new(vec![2, 2])).unwrap();
        assert_eq!(l.factors().len(), 2);
        assert!(l.trace_form().unwrap().discriminant().is_trivial());
        assert_eq!(algebra_from_cycle_type(&f3, &CycleType::new(vec![1; 4])).unwrap(), EtaleAlgebra::split(&f3, 4));
    }

    #[test]
    fn discriminant_detects_parity() {
        for spec in ["f:3", "f:5", "f:7", "f:3^2"] {
            let f = Field::parse(spec).unwrap();
            for n in 1..=8 {
                for ct in CycleType::all(n) {
                    let l = algebra_from_cycle_type(&f, &ct).unwrap();
                    let q = l.trace_form().unwrap();
                    assert_eq!(q.discriminant(), l.discriminant().unwrap());
                    assert_eq!(q.discriminant().is_trivial(), ct.is_even(), "{spec} {ct}");
                }
            }
        }
    }

    #[test]
    fn real_algebras() {
        let real = Field::real_closed();
        let l = EtaleAlgebra::real(&real, 2, 1).unwrap();
        let q = l.trace_form().unwrap();
        let expected = DiagonalForm::from_ints(&real, &[1, 1, 2, -2]).unwrap();
        assert_eq!(q.gw_class(), expected.gw_class());
        assert!(EtaleAlgebra::new(&real, vec![poly(&real, "X^2-1")]).is_err());
    }
}
