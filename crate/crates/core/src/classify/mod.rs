//! Existence of Verma modules and the Drinfeld-polynomial classification of
//! finite-dimensional highest weight B(n,l)-modules.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poly::Polynomial;
use crate::ratfunc::RationalFunction;
use crate::rational::Rational;
use crate::reflection::Signature;
use crate::repr::HighestWeight;

pub const DEFAULT_MAX_DEG: usize = 20;

fn two_u_minus(c: i64) -> RationalFunction {
    RationalFunction::from_poly(Polynomial::from_ints(&[-c, 2]))
}

/// `mu~_i(u) = (2u-n+i) mu_i(u) + mu_{i+1}(u) + ... + mu_n(u)`, one-based `i`;
/// at `i = n` this is `2u mu_n(u)`.
pub fn mu_tilde(mu: &HighestWeight, sig: Signature) -> Result<Vec<RationalFunction>> {
    let n = sig.n();
    if mu.n() != n {
        return Err(Error::DimensionMismatch(format!("weight has {} components, n = {n}", mu.n())));
    }
    let mut out = vec![RationalFunction::zero(); n];
    let mut tail = RationalFunction::zero();
    for i in (0..n).rev() {
        out[i] = &(&two_u_minus(n as i64 - i as i64 - 1) * mu.component(i)) + &tail;
        tail = &tail + mu.component(i);
    }
    Ok(out)
}

/// Which existence condition fails first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum VermaViolation {
    /// `mu_n(u) mu_n(-u) = 1`.
    LastComponentUnitary,
    /// `mu~_i(u) mu~_i(-u+n-i) = mu~_{i+1}(u) mu~_{i+1}(-u+n-i)` at one-based `index`.
    TildeSymmetry { index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VermaReport {
    pub exists: bool,
    pub violation: Option<VermaViolation>,
}

pub fn verma_exists(mu: &HighestWeight, sig: Signature) -> Result<VermaReport> {
    let n = sig.n();
    let zero = Rational::zero();
    let last = mu.component(n - 1);
    let fail = |v| VermaReport {
        exists: false,
        violation: Some(v),
    };
    if !(last * &last.reflect(&zero)).is_one() {
        return Ok(fail(VermaViolation::LastComponentUnitary));
    }
    let tilde = mu_tilde(mu, sig)?;
    for i in 0..n - 1 {
        let c = Rational::from_int((n - i - 1) as i64);
        let lhs = &tilde[i] * &tilde[i].reflect(&c);
        let rhs = &tilde[i + 1] * &tilde[i + 1].reflect(&c);
        if lhs != rhs {
            return Ok(fail(VermaViolation::TildeSymmetry { index: i + 1 }));
        }
    }
    Ok(VermaReport {
        exists: true,
        violation: None,
    })
}

/// The monic `P` of degree `d` with `P(u+1) den(R) = P(u) num(R)`, if any.
fn solve_at_degree(r: &RationalFunction, d: usize) -> Option<Polynomial> {
    let one = Rational::one();
    let column = |k: usize| {
        let uk = Polynomial::new((0..=k).map(|m| if m == k { one.clone() } else { Rational::zero() }).collect());
        &(&uk.shift(&one) * r.den()) - &(&uk * r.num())
    };
    let cols: Vec<Polynomial> = (0..=d).map(column).collect();
    let height = cols.iter().filter_map(Polynomial::degree).max().map_or(0, |h| h + 1);
    if height == 0 {
        return Some(Polynomial::new((0..=d).map(|m| if m == d { one.clone() } else { Rational::zero() }).collect()));
    }
    let aug = QMatrix::from_rows(
        (0..height)
            .map(|row| {
                let mut v: Vec<Rational> = (0..d).map(|k| cols[k].coeff(row)).collect();
                v.push(-cols[d].coeff(row));
                v
            })
            .collect(),
    );
    let (rref, pivots) = aug.rref();
    if pivots.contains(&d) {
        return None;
    }
    let mut p = vec![Rational::zero(); d + 1];
    p[d] = one;
    for (row, &col) in pivots.iter().enumerate() {
        p[col] = rref[(row, d)].clone();
    }
    let p = Polynomial::new(p);
    (&p.shift(&Rational::one()) * r.den() == &p * r.num()).then_some(p)
}

/// Every monic `P` with `deg P <= max_deg` and `P(u+1)/P(u) = R(u)`.
pub fn drinfeld_solutions(r: &RationalFunction, max_deg: usize) -> Vec<Polynomial> {
    if r.is_zero() {
        return Vec::new();
    }
    (0..=max_deg).filter_map(|d| solve_at_degree(r, d)).collect()
}

/// The monic `P` with `P(u+1)/P(u) = R(u)` and `deg P <= max_deg`.
pub fn drinfeld_solve(r: &RationalFunction, max_deg: usize) -> Option<Polynomial> {
    if r.is_zero() || r.limit_at_infinity() != Some(Rational::one()) {
        return None;
    }
    (0..=max_deg).find_map(|d| solve_at_degree(r, d))
}

/// `P(u) = (-1)^{deg Q} Q(u) Q(-u+n-i+1)`.
pub fn symmetric_factor_check(p: &Polynomial, q: &Polynomial, i: usize, n: usize) -> bool {
    symmetric_from_factor(q, i, n) == *p
}

/// `(-1)^{deg Q} Q(u) Q(-u+n-i+1)`.
pub fn symmetric_from_factor(q: &Polynomial, i: usize, n: usize) -> Polynomial {
    let deg = q.degree().unwrap_or(0);
    let c = Rational::from_int(n as i64 - i as i64 + 1);
    (q * &q.reflect(&c)).scale(&Rational::sign_pow(deg))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassifyStatus {
    FiniteDimensional,
    InfiniteDimensional,
    NoVermaModule,
    UndecidedAtBound,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassifyIssue {
    /// One-based index `i` of the ratio `mu~_i / mu~_{i+1}`.
    pub index: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DrinfeldData {
    pub polys: Vec<Polynomial>,
    pub gamma: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassifyReport {
    pub status: ClassifyStatus,
    pub data: Option<DrinfeldData>,
    pub issues: Vec<ClassifyIssue>,
    pub verma: VermaReport,
}

fn is_symmetric(p: &Polynomial, i: usize, n: usize) -> bool {
    p.reflect(&Rational::from_int(n as i64 - i as i64 + 1)) == *p
}

/// `(gamma - u) / (gamma + u - l)`.
fn gamma_factor(gamma: &Rational, l: &Rational) -> Result<RationalFunction> {
    RationalFunction::new(
        Polynomial::linear(-Rational::one(), gamma.clone()),
        Polynomial::linear(Rational::one(), gamma - l),
    )
}

/// Candidates for `gamma`: roots of the numerator of `R`, `l` minus roots of
/// its denominator, and `l/2`, where the factor collapses to `-1`.
fn gamma_candidates(r: &RationalFunction, l: &Rational) -> Vec<Rational> {
    let mut c: Vec<Rational> = r.num().rational_roots();
    c.extend(r.den().rational_roots().iter().map(|x| l - x));
    c.push(l / &Rational::from_int(2));
    c.sort();
    c.dedup();
    c
}

pub fn classify_finite_dim(mu: &HighestWeight, sig: Signature, max_deg: usize) -> Result<ClassifyReport> {
    let n = sig.n();
    let verma = verma_exists(mu, sig)?;
    let mut report = ClassifyReport {
        status: ClassifyStatus::FiniteDimensional,
        data: None,
        issues: Vec::new(),
        verma: verma.clone(),
    };
    if !verma.exists {
        report.status = ClassifyStatus::NoVermaModule;
        return Ok(report);
    }
    let tilde = mu_tilde(mu, sig)?;
    let mut polys = Vec::with_capacity(n - 1);
    let mut gamma = None;
    let mut worst = ClassifyStatus::FiniteDimensional;
    let mut note = |report: &mut ClassifyReport, index: usize, status: ClassifyStatus, reason: String| {
        report.issues.push(ClassifyIssue { index, reason });
        if worst == ClassifyStatus::FiniteDimensional || status == ClassifyStatus::InfiniteDimensional {
            worst = status;
        }
    };
    for i in 1..n {
        let r = tilde[i - 1].div(&tilde[i])?;
        if sig.l() > 0 && i == sig.k() {
            let l = Rational::from_int(sig.l() as i64);
            let mut found = Vec::new();
            let mut undecided = false;
            for g in gamma_candidates(&r, &l) {
                let reduced = r.div(&gamma_factor(&g, &l)?)?;
                if reduced.limit_at_infinity() != Some(Rational::one()) {
                    continue;
                }
                match drinfeld_solve(&reduced, max_deg) {
                    Some(p) if is_symmetric(&p, i, n) && !p.eval(&g).is_zero() => found.push((p, g)),
                    Some(_) => {}
                    None => undecided = true,
                }
            }
            match found.len() {
                1 => {
                    let (p, g) = found.pop().unwrap();
                    polys.push(p);
                    gamma = Some(g);
                }
                0 if undecided => note(
                    &mut report,
                    i,
                    ClassifyStatus::UndecidedAtBound,
                    format!("no admissible (P, gamma) with deg P <= {max_deg}"),
                ),
                0 => note(
                    &mut report,
                    i,
                    ClassifyStatus::InfiniteDimensional,
                    "no rational gamma with a symmetric P, P(gamma) != 0".into(),
                ),
                _ => note(
                    &mut report,
                    i,
                    ClassifyStatus::InfiniteDimensional,
                    format!("{} admissible (P, gamma) pairs; expected at most one", found.len()),
                ),
            }
            continue;
        }
        if r.limit_at_infinity() != Some(Rational::one()) || r.num().degree() != r.den().degree() {
            note(&mut report, i, ClassifyStatus::InfiniteDimensional, format!("ratio {r} is not P(u+1)/P(u)"));
            continue;
        }
        match drinfeld_solve(&r, max_deg) {
            Some(p) if is_symmetric(&p, i, n) => polys.push(p),
            Some(p) => note(
                &mut report,
                i,
                ClassifyStatus::InfiniteDimensional,
                format!("P = {p} fails P(-u+{}) = P(u)", n - i + 1),
            ),
            None => note(
                &mut report,
                i,
                ClassifyStatus::UndecidedAtBound,
                format!("no P with deg P <= {max_deg}"),
            ),
        }
    }
    report.status = worst;
    if report.status == ClassifyStatus::FiniteDimensional {
        report.data = Some(DrinfeldData { polys, gamma });
    }
    Ok(report)
}
