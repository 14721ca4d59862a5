//! Linear relations among the λ-powers of trace forms of `A_n`-torsors.
//!
//! Write `n = 4m + c` with `0 ≤ c < 4`. The λ-polynomial of such a trace
//! form factors as `(1+t)^(2m+c) P(t)` with `P` palindromic of degree `2m`,
//! so every `λ^j` is an integer combination of `λ^0, …, λ^m`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::dyadic::{binomial, signed_binomial};
use crate::etale::{algebra_from_cycle_type, enumerate_an_torsors, type_t_algebra, EtaleAlgebra, EtaleError};
use crate::fields::{Field, SquareClass};
use crate::witt::{lambda_poly, lambda_power, DiagonalForm, GWClass, WittError};

/// Largest `n` accepted by [`compute_z_table`].
pub const MAX_TABLE_N: usize = 64;
/// Largest `n` accepted by [`sweep_verify`].
pub const MAX_SWEEP_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LambdaError {
    #[error("n = {0} is out of range (1..={MAX_TABLE_N})")]
    TableSize(usize),
    #[error("sweep bound {0} exceeds {MAX_SWEEP_N}")]
    SweepSize(usize),
    #[error("field {0} has characteristic 2")]
    EvenCharacteristic(String),
    #[error("form has rank {rank}, expected {n}")]
    RankMismatch { rank: usize, n: usize },
    #[error("form has nontrivial discriminant")]
    NontrivialDiscriminant,
    #[error("relation check failed on {}", .0.instance)]
    Counterexample(Box<SweepRow>),
    #[error(transparent)]
    Witt(#[from] WittError),
    #[error(transparent)]
    Etale(#[from] EtaleError),
}

/// `z(i, j, n)`: `λ^j = Σ_{i ≤ m} z(i, j, n) λ^i` for trace forms of rank `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTable {
    n: usize,
    m: usize,
    c: usize,
    rows: Vec<Vec<BigInt>>,
}

impl RelationTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn c(&self) -> usize {
        self.c
    }

    /// Power of `1+t` dividing the λ-polynomial: `2m + c`.
    pub fn divisibility_order(&self) -> usize {
        2 * self.m + self.c
    }

    /// Rows `j = 0..=n`, columns `i = 0..=m`.
    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn z(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[j][i]
    }

    /// Row `j` as text, e.g. `lambda2 = 5*lambda1 - 14`.
    pub fn relation(&self, j: usize) -> String {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for i in (0..=self.m).rev() {
            let c = &self.rows[j][i];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match (i, mag.is_one()) {
                (0, _) => mag.to_string(),
                (_, true) => format!("lambda{i}"),
                (_, false) => format!("{mag}*lambda{i}"),
            };
            parts.push((c.is_negative(), body));
        }
        let mut out = format!("lambda{j} = ");
        if parts.is_empty() {
            out.push('0');
        }
        for (k, (neg, body)) in parts.iter().enumerate() {
            match (k, neg) {
                (0, true) => out.push_str(&format!("-{body}")),
                (0, false) => out.push_str(body),
                (_, true) => out.push_str(&format!(" - {body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
            }
        }
        out
    }

    pub fn relations(&self) -> Vec<String> {
        (0..=self.n).map(|j| self.relation(j)).collect()
    }
}

impl fmt::Display for RelationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {} (m = {}, c = {})", self.n, self.m, self.c)?;
        for line in self.relations() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl Serialize for RelationTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        let mut st = s.serialize_struct("RelationTable", 5)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("c", &self.c)?;
        st.serialize_field("z", &rows)?;
        st.serialize_field("relations", &self.relations())?;
        st.end()
    }
}

/// Build the relation table: recover `p_0, …, p_m` from `λ^0, …, λ^m`
/// through `(1+t)^-(2m+c)`, extend by `p_i = p_(2m-i)`, and multiply back.
pub fn compute_z_table(n: usize) -> Result<RelationTable, LambdaError> {
    if n == 0 || n > MAX_TABLE_N {
        return Err(LambdaError::TableSize(n));
    }
    let m = n / 4;
    let c = n % 4;
    let big_n = 2 * m + c;
    // p[k] as a vector over λ^0..λ^m
    let mut p: Vec<Vec<BigInt>> = (0..=m)
        .map(|j| {
            (0..=m)
                .map(|k| if k <= j { signed_binomial(-(big_n as i64), (j - k) as u64) } else { BigInt::zero() })
                .collect()
        })
        .collect();
    for i in m + 1..=2 * m {
        p.push(p[2 * m - i].clone());
    }
    let rows = (0..=n)
        .map(|j| {
            let mut row = vec![BigInt::zero(); m + 1];
            for (k, pk) in p.iter().enumerate().take(j.min(2 * m) + 1) {
                let coeff = binomial(big_n as u64, (j - k) as u64);
                for (r, x) in row.iter_mut().zip(pk) {
                    *r += &coeff * x;
                }
            }
            row
        })
        .collect();
    Ok(RelationTable { n, m, c, rows })
}

/// `Σ_{i ≥ j} (-1)^i C(i, j) λ^i(q)`.
pub fn taylor_sum(q: &DiagonalForm, j: usize) -> GWClass {
    let field = q.field();
    let mut acc = GWClass::zero(field);
    for i in j..=q.rank() {
        let mut c = binomial(i as u64, j as u64);
        if i % 2 == 1 {
            c = -c;
        }
        acc = acc.add(&GWClass::from_bigint(field, &c).mul(&lambda_power(q, i)).expect("same field")).expect("same field");
    }
    acc
}

/// Whether the alternating sums vanish for every `j < 2m + c`, where
/// `n = rank(q) = 4m + c`. Requires a square discriminant.
pub fn taylor_vanishing_check(q: &DiagonalForm, n: usize) -> Result<bool, LambdaError> {
    if q.rank() != n {
        return Err(LambdaError::RankMismatch { rank: q.rank(), n });
    }
    if !q.discriminant().is_trivial() {
        return Err(LambdaError::NontrivialDiscriminant);
    }
    let order = 2 * (n / 4) + n % 4;
    Ok((0..order).all(|j| taylor_sum(q, j).is_zero()))
}

/// Whether `λ^j(q) = Σ_i z(i, j, n) λ^i(q)` in the GW ring for all `j`.
pub fn relations_hold(q: &DiagonalForm, table: &RelationTable) -> bool {
    let field = q.field();
    let lambdas: Vec<GWClass> = (0..=table.n).map(|i| lambda_power(q, i)).collect();
    (0..=table.n).all(|j| {
        let mut rhs = GWClass::zero(field);
        for i in 0..=table.m {
            let term = GWClass::from_bigint(field, table.z(i, j)).mul(&lambdas[i]).expect("same field");
            rhs = rhs.add(&term).expect("same field");
        }
        rhs == lambdas[j]
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceKind {
    /// Torsor over a finite field, labelled by its cycle type.
    Torsor,
    /// Product of copies of `k` and biquadratic algebras.
    TypeT,
    /// `R^a × C^b` over a real closed field.
    Real,
    /// The split algebra `k^n`.
    Split,
}

/// One checked instance of a sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub kind: InstanceKind,
    pub instance: String,
    /// Number of `A_n`-classes with this cycle type (torsors only).
    pub split_count: Option<u8>,
    pub trace_form: String,
    pub discriminant: SquareClass,
    pub witt: String,
    pub lambdas: Vec<String>,
    /// `(1+t)^(2m+c)` divides the λ-polynomial.
    pub divisible: bool,
    /// The alternating sums vanish.
    pub taylor: bool,
    /// The relation table holds.
    pub relations: bool,
}

impl SweepRow {
    pub fn passed(&self) -> bool {
        self.divisible && self.taylor && self.relations && self.discriminant.is_trivial()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub field: String,
    pub n_max: usize,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn split_total(&self, n: usize) -> u64 {
        self.rows.iter().filter(|r| r.n == n).filter_map(|r| r.split_count).map(u64::from).sum()
    }
}

/// Check a single algebra of dimension `n`.
pub fn check_algebra(kind: InstanceKind, instance: String, split_count: Option<u8>, algebra: &EtaleAlgebra) -> Result<SweepRow, LambdaError> {
    let n = algebra.dimension();
    let q = algebra.trace_form()?;
    let table = compute_z_table(n)?;
    let poly = lambda_poly(&q);
    let discriminant = q.discriminant();
    let divisible = poly.divisible_by_one_plus_t(table.divisibility_order());
    let taylor = discriminant.is_trivial() && taylor_vanishing_check(&q, n)?;
    Ok(SweepRow {
        n,
        kind,
        instance,
        split_count,
        trace_form: q.to_string(),
        discriminant,
        witt: q.witt_class().to_string(),
        lambdas: poly.coeffs().iter().map(ToString::to_string).collect(),
        divisible,
        taylor,
        relations: relations_hold(&q, &table),
    })
}

fn type_t_grid(field: &Field, n: usize) -> Result<Vec<(String, EtaleAlgebra)>, LambdaError> {
    let classes = field.square_classes();
    let mut pairs = Vec::new();
    for &x in &classes {
        for &y in &classes {
            pairs.push((x, y));
        }
    }
    let mut out = Vec::new();
    for k in 1..=n / 4 {
        let c = n - 4 * k;
        // multisets of k pairs, as non-decreasing index sequences
        let mut idx = vec![0usize; k];
        loop {
            let chosen: Vec<_> = idx
                .iter()
                .map(|&i| (field.class_representative(pairs[i].0), field.class_representative(pairs[i].1)))
                .collect();
            let label = format!(
                "T(c={c}; {})",
                idx.iter().map(|&i| format!("({},{})", pairs[i].0, pairs[i].1)).collect::<Vec<_>>().join(" ")
            );
            out.push((label, type_t_algebra(field, c, &chosen)?));
            let Some(pos) = (0..k).rev().find(|&p| idx[p] + 1 < pairs.len()) else {
                break;
            };
            idx[pos] += 1;
            for q in pos + 1..k {
                idx[q] = idx[pos];
            }
        }
    }
    Ok(out)
}

/// Run every check on all instances up to `n_max`, ordered by `n`:
/// torsors by cycle type and type-(T) algebras over a finite field,
/// `R^a × C^b` with `b` even over a real closed field, and `k^n` over a
/// quadratically closed field. Stops at the first failing instance.
pub fn sweep_verify(field: &Field, n_max: usize) -> Result<SweepReport, LambdaError> {
    if n_max > MAX_SWEEP_N {
        return Err(LambdaError::SweepSize(n_max));
    }
    if field.as_finite().is_some_and(|f| f.characteristic() == 2) {
        return Err(LambdaError::EvenCharacteristic(field.spec()));
    }
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let mut instances: Vec<(InstanceKind, String, Option<u8>, EtaleAlgebra)> = Vec::new();
        if field.is_finite() {
            for (ct, split) in enumerate_an_torsors(field, n)? {
                instances.push((InstanceKind::Torsor, ct.to_string(), Some(split), algebra_from_cycle_type(field, &ct)?));
            }
            for (label, algebra) in type_t_grid(field, n)? {
                instances.push((InstanceKind::TypeT, label, None, algebra));
            }
        } else if field.is_real_closed() {
            for b in (0..=n / 2).step_by(2) {
                let a = n - 2 * b;
                instances.push((InstanceKind::Real, format!("R^{a} x C^{b}"), None, EtaleAlgebra::real(field, a, b)?));
            }
        } else {
            instances.push((InstanceKind::Split, format!("k^{n}"), None, EtaleAlgebra::split(field, n)));
        }
        for (kind, label, split, algebra) in instances {
            let row = check_algebra(kind, label, split, &algebra)?;
            if !row.passed() {
                return Err(LambdaError::Counterexample(Box::new(row)));
            }
            rows.push(row);
        }
    }
    Ok(SweepReport { field: field.spec(), n_max, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn row(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    // Numeric oracle: λ_t = (1+t)^(2m+c) P(t) for a palindromic P with
    // p_0 = 1 and the given p_1..p_m, expanded directly.
    fn series_lambdas(n: usize, free: &[BigInt]) -> Vec<BigInt> {
        let (m, c) = (n / 4, n % 4);
        let mut p = vec![BigInt::one()];
        p.extend(free.iter().cloned());
        for i in m + 1..=2 * m {
            p.push(p[2 * m - i].clone());
        }
        let mut lam = p;
        for _ in 0..2 * m + c {
            lam = poly_mul(&lam, &[BigInt::one(), BigInt::one()]);
        }
        lam
    }

    #[test]
    fn table_n7() {
        let t = compute_z_table(7).unwrap();
        assert_eq!(t.m(), 1);
        assert_eq!(t.c(), 3);
        let lines = t.relations();
        assert_eq!(lines[2], "lambda2 = 5*lambda1 - 14");
        assert_eq!(lines[5], "lambda5 = 5*lambda1 - 14");
        assert_eq!(lines[3], "lambda3 = 10*lambda1 - 35");
        assert_eq!(lines[4], "lambda4 = 10*lambda1 - 35");
        assert_eq!(lines[6], "lambda6 = lambda1");
        assert_eq!(lines[7], "lambda7 = 1");
        assert_eq!(lines[0], "lambda0 = 1");
    }

    #[test]
    fn table_small() {
        assert_eq!(compute_z_table(4).unwrap().rows()[2], row(&[-2, 2]));
        let t5 = compute_z_table(5).unwrap();
        assert_eq!(t5.rows()[2], row(&[-5, 3]));
        assert_eq!(t5.rows()[3], row(&[-5, 3]));
        assert_eq!(t5.rows()[4], row(&[0, 1]));
        assert_eq!(t5.rows()[5], row(&[1, 0]));
        // m = 0: the form is determined by its rank
        let t3 = compute_z_table(3).unwrap();
        assert_eq!(t3.relations(), vec!["lambda0 = 1", "lambda1 = 3", "lambda2 = 3", "lambda3 = 1"]);
        assert!(compute_z_table(0).is_err());
        assert!(compute_z_table(65).is_err());
        assert!(compute_z_table(64).is_ok());
    }

    #[test]
    fn palindromy_and_identity_rows() {
        for n in 1..=32 {
            let t = compute_z_table(n).unwrap();
            for j in 0..=n {
                assert_eq!(t.rows()[j], t.rows()[n - j], "n={n} j={j}");
            }
            for i in 0..=t.m() {
                let mut e = vec![BigInt::zero(); t.m() + 1];
                e[i] = BigInt::one();
                assert_eq!(t.rows()[i], e);
            }
        }
    }

    #[test]
    fn series_oracle_reproduces_table() {
        for n in 1..=32 {
            let t = compute_z_table(n).unwrap();
            let m = t.m();
            for seed in 0..(m as i64 + 2) {
                let free: Vec<BigInt> = (1..=m as i64).map(|k| BigInt::from((seed * 7 + k * k * 3) % 23 - 11)).collect();
                let lam = series_lambdas(n, &free);
                assert_eq!(lam.len(), n + 1);
                for j in 0..=n {
                    let rhs: BigInt = (0..=m).map(|i| t.z(i, j) * &lam[i]).sum();
                    assert_eq!(rhs, lam[j], "n={n} j={j}");
                }
            }
        }
    }

    #[test]
    fn taylor_unit_forms() {
        let real = Field::real_closed();
        for n in 1..=9 {
            assert!(taylor_vanishing_check(&DiagonalForm::unit(&real, n), n).unwrap());
        }
        let f = Field::prime(5).unwrap();
        assert_eq!(
            taylor_vanishing_check(&DiagonalForm::from_ints(&f, &[1, 2]).unwrap(), 2),
            Err(LambdaError::NontrivialDiscriminant)
        );
        assert!(matches!(taylor_vanishing_check(&DiagonalForm::unit(&f, 3), 4), Err(LambdaError::RankMismatch { .. })));
    }

    #[test]
    fn taylor_sum_matches_divided_derivative() {
        let f = Field::prime(7).unwrap();
        let q = DiagonalForm::from_ints(&f, &[1, 3, 3, 5, 2]).unwrap();
        let poly = lambda_poly(&q);
        for j in 0..=5 {
            let dd = poly.divided_derivative_at_minus_one(j);
            let sign = if j % 2 == 1 { dd.neg() } else { dd };
            assert_eq!(taylor_sum(&q, j), sign);
        }
    }

    #[test]
    fn real_forms() {
        let real = Field::real_closed();
        for a in 0..=8usize {
            for b in (0..=4usize).step_by(2) {
                let n = a + 2 * b;
                if n == 0 || n > 12 {
                    continue;
                }
                let q = EtaleAlgebra::real(&real, a, b).unwrap().trace_form().unwrap();
                assert!(taylor_vanishing_check(&q, n).unwrap());
                assert!(relations_hold(&q, &compute_z_table(n).unwrap()));
            }
        }
    }

    #[test]
    fn f3_three_cycle() {
        let f = Field::prime(3).unwrap();
        let ct = crate::groups::CycleType::new(vec![3, 1]);
        let q = algebra_from_cycle_type(&f, &ct).unwrap().trace_form().unwrap();
        let l1 = lambda_power(&q, 1);
        let expected = l1.scale(2).sub(&GWClass::from_int(&f, 2)).unwrap();
        assert_eq!(lambda_power(&q, 2), expected);
    }

    #[test]
    fn sweep_f5() {
        let f = Field::prime(5).unwrap();
        let report = sweep_verify(&f, 8).unwrap();
        assert!(report.rows.iter().all(SweepRow::passed));
        let n1: Vec<_> = report.rows.iter().filter(|r| r.n == 1).collect();
        assert_eq!(n1.len(), 1);
        assert_eq!(report.split_total(4), 4);
        assert_eq!(report.split_total(5), 5);
        assert!(report.rows.iter().any(|r| r.kind == InstanceKind::TypeT && r.n == 8));
    }

    #[test]
    fn sweep_other_fields() {
        assert!(sweep_verify(&Field::real_closed(), 12).unwrap().rows.iter().all(SweepRow::passed));
        assert!(sweep_verify(&Field::quadratically_closed(), 6).is_ok());
        assert_eq!(sweep_verify(&Field::real_closed(), 13), Err(LambdaError::SweepSize(13)));
    }

    #[test]
    fn sweep_reports_counterexample() {
        // a non-square discriminant is reported, not silently accepted
        let f = Field::prime(3).unwrap();
        let algebra = EtaleAlgebra::new(&f, vec![crate::fields::Poly::parse(&f, "X^2 + 1").unwrap()]).unwrap();
        let row = check_algebra(InstanceKind::Torsor, "[2]".into(), None, &algebra).unwrap();
        assert!(!row.passed());
    }

    proptest! {
        #[test]
        fn table_row_sums(n in 1usize..=40) {
            // the split algebra has λ^j = C(n, j)
            let t = compute_z_table(n).unwrap();
            for j in 0..=n {
                let rhs: BigInt = (0..=t.m()).map(|i| t.z(i, j) * binomial(n as u64, i as u64)).sum();
                prop_assert_eq!(rhs, binomial(n as u64, j as u64));
            }
        }
    }
}
