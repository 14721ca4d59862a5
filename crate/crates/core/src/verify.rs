//! Self-checking suites. Each suite recomputes a family of identities with
//! the library and reports one line per check.
//!
//! Random inputs come from a fixed-seed generator, so reports are
//! reproducible.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::dyadic::{binomial, diminished_sum, overlap_value, trinomial_parity};
use crate::etale::{algebra_from_cycle_type, enumerate_an_torsors, sqrt_quotient, type_t_algebra, EtaleAlgebra};
use crate::fields::{Field, Poly};
use crate::fixed_modules::{
    fixed_permutation_module_w, fixed_submodule_h, is_unitriangular, pfister_lambda_product_identity,
    sw_restriction_identity, triangular_expansion, LinearAction,
};
use crate::groups::{
    alternating_order, build_D, build_E, build_iota_prime, conjugacy_classes, count_classes_by_orbits,
    d_order_formula, odd_double_factorial, standard_involution, Permutation,
};
use crate::lambda_relations::{compute_z_table, sweep_verify};
use crate::milnor::{elementary_symmetric_all, p_factorize_graded, MilnorElement, Monomial, SWClass};
use crate::witt::{lambda_poly, pfister2, pfister_lambda_shape, DiagonalForm};

/// Suite names in criterion order.
pub const SUITES: [&str; 10] = [
    "ztable",
    "appendixA",
    "product-rule",
    "pfister",
    "trace",
    "groups",
    "fixed",
    "sweep",
    "torsors",
    "odd-vanishing",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport { name: name.to_string(), checks: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    /// Record the outcome of a fallible computation; errors count as failures.
    fn check_result<E: fmt::Display>(&mut self, name: impl Into<String>, r: Result<(bool, String), E>) {
        match r {
            Ok((passed, detail)) => self.check(name, passed, detail),
            Err(e) => self.check(name, false, format!("error: {e}")),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            writeln!(f, "{mark} {}: {}", c.name, c.detail)?;
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        write!(f, "{}: {passed}/{} checks passed", self.name, self.checks.len())
    }
}

pub fn run_suite(name: &str) -> Result<SuiteReport, VerifyError> {
    Ok(match name {
        "ztable" => ztable_suite(),
        "appendixA" => unit_factorization_suite(),
        "product-rule" => product_rule_suite(),
        "pfister" => pfister_suite(),
        "trace" => trace_suite(),
        "groups" => groups_suite(),
        "fixed" => fixed_suite(),
        "sweep" => sweep_suite(),
        "torsors" => torsor_suite(),
        "odd-vanishing" => odd_vanishing_suite(),
        other => return Err(VerifyError::UnknownSuite(other.to_string())),
    })
}

pub fn run_all() -> Vec<SuiteReport> {
    SUITES.iter().map(|s| run_suite(s).expect("known suite")).collect()
}

/// A random homogeneous element of degree `d` in `M(g)`.
pub fn random_homogeneous(rng: &mut impl Rng, g: u32, d: u32) -> MilnorElement {
    MilnorElement::from_monomials(
        g,
        (0u64..1 << g)
            .filter(|s| s.count_ones() <= d)
            .filter(|_| rng.gen_bool(0.5))
            .map(|gens| Monomial { e: d - gens.count_ones(), gens }),
    )
}

fn product_of_units(g: u32, ys: &[MilnorElement]) -> MilnorElement {
    let one = MilnorElement::one(g);
    ys.iter().fold(one.clone(), |acc, y| &acc * &(&one + y))
}

pub fn ztable_suite() -> SuiteReport {
    let mut r = SuiteReport::new("ztable");
    let expected7 = [
        (2, "lambda2 = 5*lambda1 - 14"),
        (5, "lambda5 = 5*lambda1 - 14"),
        (3, "lambda3 = 10*lambda1 - 35"),
        (4, "lambda4 = 10*lambda1 - 35"),
        (6, "lambda6 = lambda1"),
        (7, "lambda7 = 1"),
    ];
    match compute_z_table(7) {
        Ok(t) => {
            for (j, line) in expected7 {
                let got = t.relation(j);
                r.check(format!("n=7 row {j}"), got == line, got);
            }
        }
        Err(e) => r.check("n=7", false, e.to_string()),
    }
    r.check_result("n=4 row 2", compute_z_table(4).map(|t| {
        let got = t.relation(2);
        (got == "lambda2 = 2*lambda1 - 2", got)
    }));
    r
}

pub fn unit_factorization_suite() -> SuiteReport {
    let mut r = SuiteReport::new("appendixA");
    let mut rng = ChaCha8Rng::seed_from_u64(0xA1);
    for g in 1..=5u32 {
        for d in 1..=3u32 {
            let mut ok = true;
            let mut cases = 0;
            for count in 0..=(g as usize + 1) {
                for _ in 0..4 {
                    let ys: Vec<MilnorElement> = (0..count).map(|_| random_homogeneous(&mut rng, g, d)).collect();
                    let direct = product_of_units(g, &ys);
                    let s = elementary_symmetric_all(g, &ys).expect("common degree");
                    let dyadic: Vec<MilnorElement> =
                        (0..).map(|j| 1usize << j).take_while(|&k| k < s.len()).map(|k| s[k].clone()).collect();
                    let via_dyadic = product_of_units(g, &dyadic);
                    let factored = p_factorize_graded(&direct, d).map(|f| f.product(g) == direct).unwrap_or(false);
                    ok &= direct == via_dyadic && factored;
                    cases += 1;
                }
            }
            r.check(format!("unit product factors dyadically g={g} d={d}"), ok, format!("{cases} cases"));
        }
    }
    for d in [2u32, 3] {
        let mut ok = true;
        for i in 0..100 {
            let g = 1 + (i % 4) as u32;
            let make = |rng: &mut ChaCha8Rng| {
                let factors: Vec<MilnorElement> = (0..3).map(|j| random_homogeneous(rng, g, d << j)).collect();
                product_of_units(g, &factors)
            };
            let a = make(&mut rng);
            let b = make(&mut rng);
            ok &= p_factorize_graded(&(&a * &b), d).is_ok();
        }
        r.check(format!("closure of P_{d} under products"), ok, "100 random pairs");
    }
    let g = 6;
    let one = MilnorElement::one(g);
    let x = |i| MilnorElement::generator(g, i);
    let (a0, b0) = (x(1), x(2));
    let (a1, b1) = (&x(3) * &x(4), &x(5) * &x(6));
    let prod = &(&(&one + &a0) * &(&one + &a1)) * &(&(&one + &b0) * &(&one + &b1));
    let c = [
        &a0 + &b0,
        &(&a1 + &(&a0 * &b0)) + &b1,
        &(&(&(&a0 * &a1) * &b0) + &(&a1 * &b1)) + &(&(&a0 * &b0) * &b1),
    ];
    r.check_result("coefficients c0 c1 c2 of a product of two factorizations", p_factorize_graded(&prod, 1).map(|f| {
        let ok = (0..3).all(|j| f.factor(j, g) == c[j]);
        (ok, format!("c2 = {}", f.factor(2, g)))
    }));
    r
}

/// `(a+b+c)! / (a! b! c!)` exactly.
fn trinomial(a: u64, b: u64, c: u64) -> BigInt {
    binomial(a + b + c, a) * binomial(b + c, b)
}

pub fn product_rule_suite() -> SuiteReport {
    let mut r = SuiteReport::new("product-rule");
    let mut rng = ChaCha8Rng::seed_from_u64(0x12);
    for trial in 0..3 {
        let classes: Vec<MilnorElement> = (0..12).map(|_| random_homogeneous(&mut rng, 6, 1)).collect();
        let w = SWClass::from_classes(6, &classes).expect("degree-one classes");
        let ok = (0..=12).all(|m| (0..=12).all(|mp| w.product_rule_holds(m, mp)));
        r.check(format!("closed and trinomial forms in M(6), sample {trial}"), ok, "all m, m' <= 12");
    }
    let mut ok = true;
    for m in 0..=64u64 {
        for mp in 0..=64u64 {
            let odd: Vec<u64> = (0..=m.min(mp)).filter(|&i| trinomial(i, m - i, mp - i).is_odd()).collect();
            let parity_agrees = (0..=m.min(mp)).all(|i| trinomial_parity(i, m - i, mp - i) == trinomial(i, m - i, mp - i).is_odd());
            let shift = overlap_value(m, mp);
            ok &= parity_agrees && odd == vec![shift] && m + mp - shift == diminished_sum(m, mp);
        }
    }
    r.check("parity-filtered expansion has the single term of the closed form", ok, "all m, m' <= 64");
    r
}

fn test_fields() -> Vec<Field> {
    let mut out = vec![Field::quadratically_closed(), Field::real_closed()];
    out.extend([3, 5, 7].iter().map(|&p| Field::prime(p).expect("odd prime")));
    out
}

pub fn pfister_suite() -> SuiteReport {
    let mut r = SuiteReport::new("pfister");
    for field in test_fields() {
        let reps: Vec<_> = field.square_classes().into_iter().map(|c| field.class_representative(c)).collect();
        let mut ok = true;
        let mut cases = 0;
        for x in &reps {
            for y in &reps {
                let q = pfister2(&field, x, y).expect("nonzero entries");
                ok &= lambda_poly(&q) == pfister_lambda_shape(&q.gw_class());
                cases += 1;
            }
        }
        r.check(format!("lambda polynomial of <<x,y>> over {}", field.spec()), ok, format!("{cases} class pairs"));
    }
    let x = MilnorElement::generator(2, 1);
    let y = MilnorElement::generator(2, 2);
    let w = SWClass::from_classes(2, &[MilnorElement::zero(2), x.clone(), y.clone(), &x + &y]).expect("degree one");
    let expected = MilnorElement::parse("e*x1 + e*x2 + x1*x2", 2).expect("valid");
    r.check("w2 of <1,x,y,xy>", w.component(2) == expected, w.component(2).to_string());
    r
}

pub fn trace_suite() -> SuiteReport {
    let mut r = SuiteReport::new("trace");
    for p in [3u64, 5, 7] {
        let field = Field::prime(p).expect("odd prime");
        let nonzero: Vec<_> = (1..p as i64).map(|a| field.from_int(a)).collect();
        let mut ok = true;
        for x in &nonzero {
            let algebra = EtaleAlgebra::from_quotients(&field, vec![sqrt_quotient(&field, x)]);
            let expected = DiagonalForm::new(&field, vec![field.from_int(2), field.mul(&field.from_int(2), x)]).expect("nonzero");
            ok &= algebra.and_then(|a| a.trace_form()).is_ok_and(|q| q.gw_class() == expected.gw_class());
        }
        r.check(format!("quadratic trace forms over F_{p}"), ok, format!("{} values", nonzero.len()));
        let mut ok = true;
        for x in &nonzero {
            for y in &nonzero {
                let q = type_t_algebra(&field, 0, &[(x.clone(), y.clone())]).and_then(|a| a.trace_form());
                let pf = pfister2(&field, x, y).expect("nonzero");
                ok &= q.is_ok_and(|q| q.gw_class() == pf.gw_class());
            }
        }
        r.check(format!("biquadratic trace forms over F_{p}"), ok, format!("{} pairs", nonzero.len().pow(2)));
        let mut ok = true;
        let mut cases = 0;
        for n in 1..=8 {
            for (ct, _) in enumerate_an_torsors(&field, n).expect("finite field") {
                let a = algebra_from_cycle_type(&field, &ct).expect("valid cycle type");
                let lhs = a.with_split_factor().trace_form().map(|q| q.gw_class());
                let rhs = a.trace_form().and_then(|q| Ok(q.orthogonal_sum(&DiagonalForm::unit(&field, 1))?));
                ok &= matches!((lhs, rhs), (Ok(l), Ok(q)) if l == q.gw_class());
                cases += 1;
            }
        }
        r.check(format!("adding a split factor adds <1> over F_{p}"), ok, format!("{cases} algebras"));
    }
    let f7 = Field::prime(7).expect("prime");
    r.check_result("trace form of F_7[X]/(X^2-3)", Poly::parse(&f7, "X^2-3").map_err(|e| e.to_string()).and_then(|f| {
        let q = EtaleAlgebra::from_quotients(&f7, vec![f]).and_then(|a| a.trace_form()).map_err(|e| e.to_string())?;
        Ok((q.to_string() == "<2,6>", q.to_string()))
    }));
    r
}

fn all_perms(n: usize) -> impl Iterator<Item = Permutation> {
    (0..factorial_u64(n)).map(move |k| Permutation::from_lehmer_rank(n, k))
}

fn factorial_u64(n: usize) -> u64 {
    (1..=n as u64).product()
}

pub fn groups_suite() -> SuiteReport {
    let mut r = SuiteReport::new("groups");
    let mut ok = true;
    for n in 4..=12u64 {
        // for odd n the centralizer fixes the last point
        let d = d_order_formula(n - n % 2);
        ok &= alternating_order(n).is_multiple_of(d) && alternating_order(n) / d == odd_double_factorial(n);
    }
    r.check("index of D is the odd double factorial", ok, "n = 4..12 by formula");
    for n in [4usize, 6, 8] {
        let s = standard_involution(n);
        let brute: HashSet<Permutation> = all_perms(n).filter(|p| p.is_even() && p.compose(&s) == s.compose(p)).collect();
        let built = build_D(n).ok().and_then(|d| d.elements().ok().cloned());
        let index = alternating_order(n as u64) / brute.len() as u64;
        r.check(
            format!("D by enumeration, n={n}"),
            built.as_ref() == Some(&brute) && index == odd_double_factorial(n as u64),
            format!("|D| = {}, index {index}", brute.len()),
        );
    }
    for n in [6usize, 7, 10, 11] {
        r.check_result(format!("index of S'_(n-2), n={n}"), build_iota_prime(n).and_then(|iota| {
            let order = iota.image().order()?;
            let index = alternating_order(n as u64) / order;
            Ok((index == iota.index_formula() && index % 2 == 1, format!("index {index}")))
        }));
    }
    r.check_result("generators of E for n=10", build_E(10).map(|e| {
        let expected = ["(1 2)(3 4)", "(1 3)(2 4)", "(5 6)(7 8)", "(5 7)(6 8)"];
        let got: Vec<String> = e.generators().iter().map(ToString::to_string).collect();
        (got == expected, got.join(", "))
    }));
    r.check_result("fixed points of C' and E, n=6", build_iota_prime(6).and_then(|iota| {
        let c = iota.c_prime().common_fixed_points();
        let e = build_E(6)?.common_fixed_points();
        Ok((e == c + 2, format!("C' fixes {c}, E fixes {e}")))
    }));
    r
}

pub fn fixed_suite() -> SuiteReport {
    let mut r = SuiteReport::new("fixed");
    for (name, action) in [("A3", LinearAction::a3()), ("S3", LinearAction::s3())] {
        r.check_result(format!("fixed submodule of M(2) under {name}"), fixed_submodule_h(&action, 8).map(|rep| {
            (rep.generators == ["1", "e*x1 + e*x2 + x1*x2"], rep.generators.join(", "))
        }));
    }
    r.check_result("fixed permutation module on {1,a_x,a_y,a_xy}", (|| {
        let cycle = Permutation::from_cycles(4, &[&[2, 3, 4]]).map_err(|e| e.to_string())?;
        let orbits = fixed_permutation_module_w(4, &[cycle]).map_err(|e| e.to_string())?;
        Ok::<_, String>((orbits == vec![vec![0], vec![1, 2, 3]], format!("{orbits:?}")))
    })());
    for m in 0..=3 {
        r.check_result(format!("lambda product identity m={m}"), pfister_lambda_product_identity(m).map(|b| (b, String::new())));
        r.check_result(format!("restricted Stiefel-Whitney identity m={m}"), sw_restriction_identity(m).map(|b| (b, String::new())));
    }
    for m in 0..=4 {
        r.check_result(format!("triangular expansion m={m}"), triangular_expansion(m).map(|t| {
            let last = t.last().map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")).unwrap_or_default();
            (is_unitriangular(&t), format!("last row ({last})"))
        }));
    }
    r
}

pub fn sweep_suite() -> SuiteReport {
    let mut r = SuiteReport::new("sweep");
    let mut runs: Vec<(Field, usize)> = [3u64, 5, 7].iter().map(|&p| (Field::prime(p).expect("odd prime"), 10)).collect();
    runs.push((Field::real_closed(), 12));
    for (field, n_max) in runs {
        r.check_result(format!("sweep over {} up to n={n_max}", field.spec()), sweep_verify(&field, n_max).map(|rep| {
            let ok = rep.rows.iter().all(|row| row.passed());
            (ok, format!("{} instances", rep.rows.len()))
        }));
    }
    r
}

/// `A_n` class counts for `n = 0, …, 10`.
pub const KNOWN_CLASS_COUNTS: [usize; 11] = [1, 1, 1, 3, 4, 5, 7, 9, 14, 18, 24];

pub fn torsor_suite() -> SuiteReport {
    let mut r = SuiteReport::new("torsors");
    let field = Field::prime(3).expect("prime");
    for n in 0..=10usize {
        let split_total: usize = enumerate_an_torsors(&field, n)
            .map(|v| v.iter().map(|(_, s)| *s as usize).sum())
            .unwrap_or(usize::MAX);
        let by_centralizers: usize = conjugacy_classes(n, true).iter().map(|(_, s)| *s as usize).sum();
        let orbits = count_classes_by_orbits(n);
        r.check(
            format!("A_{n} classes"),
            split_total == orbits && by_centralizers == orbits && orbits == KNOWN_CLASS_COUNTS[n],
            format!("split rule {split_total}, orbits {orbits}"),
        );
    }
    r
}

pub fn odd_vanishing_suite() -> SuiteReport {
    let mut r = SuiteReport::new("odd-vanishing");
    let field = Field::real_closed();
    for rank in 0..=10usize {
        let mut ok = true;
        let mut cases = 0;
        for signs in 0u32..1 << rank {
            let entries: Vec<i64> = (0..rank).map(|i| if signs >> i & 1 == 1 { -1 } else { 1 }).collect();
            let q = DiagonalForm::from_ints(&field, &entries).expect("nonzero");
            if !q.discriminant().is_trivial() {
                continue;
            }
            let vanishes = q.stiefel_whitney().is_some_and(|w| (1..=rank as u32).step_by(2).all(|i| w.component(i).is_zero()));
            ok &= vanishes;
            cases += 1;
        }
        r.check(format!("rank {rank}"), ok, format!("{cases} forms"));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert_eq!(run_suite("nope"), Err(VerifyError::UnknownSuite("nope".into())));
    }

    #[test]
    fn cheap_suites_pass() {
        for name in ["ztable", "pfister", "fixed", "odd-vanishing"] {
            let rep = run_suite(name).unwrap();
            assert!(rep.passed(), "{rep}");
            assert!(!rep.checks.is_empty());
        }
    }

    #[test]
    fn report_format() {
        let mut rep = SuiteReport::new("demo");
        rep.check("a", true, "fine");
        rep.check("b", false, "broken");
        assert_eq!(rep.to_string(), "ok   a: fine\nFAIL b: broken\ndemo: 1/2 checks passed");
        assert_eq!(rep.failures().count(), 1);
    }
}
