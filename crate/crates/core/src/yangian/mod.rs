//! The Yangian side: `T(u)`, quantum determinant, comatrix, coproduct and
//! centrality.

mod coproduct;

pub use coproduct::{coproduct, coproduct_gen, TensorNCPolynomial};

use serde::Serialize;

use crate::bivariate::{operator_difference, residual, BivariateResidual, SymExpr, SymbolTable, Var};
use crate::coeff::Coefficient;
use crate::error::Result;
use crate::ncpoly::{GenIndex, NCPolynomial};
use crate::operator::{apply_in_slot, flatten, permutations, Operator};
use crate::rational::Rational;
use crate::series::{MatrixSeries, TruncatedSeries};

/// `T(u)` with entries `delta_ij + sum_{r=1}^D t_ij^(r) u^{-r}`.
pub fn t_matrix(n: usize, order: usize) -> MatrixSeries<NCPolynomial> {
    MatrixSeries::from_fn(n, |i, j| {
        TruncatedSeries::new((0..=order).map(|r| NCPolynomial::t(i + 1, j + 1, r)).collect())
    })
}

/// `T^{-1}(u)`, entries `t'_ij(u)`.
pub fn t_inverse(n: usize, order: usize) -> Result<MatrixSeries<NCPolynomial>> {
    t_matrix(n, order).inverse()
}

/// `sum_p sgn p * t_{a_p(1) b_1}(u) ... t_{a_p(m) b_m}(u-m+1)` over the rows
/// `a` and columns `b`; `shifted[k]` must hold `T(u-k)`.
pub fn qdet_minor(
    shifted: &[MatrixSeries<NCPolynomial>],
    rows: &[usize],
    cols: &[usize],
) -> Result<TruncatedSeries<NCPolynomial>> {
    assert_eq!(rows.len(), cols.len());
    let order = shifted[0].order();
    let m = rows.len();
    let mut total = TruncatedSeries::zero(order);
    for (p, sign) in permutations(m) {
        let mut term = TruncatedSeries::one(order);
        for k in 0..m {
            term = term.mul(shifted[k].get(rows[p[k]], cols[k]))?;
            if term.is_zero() {
                break;
            }
        }
        total = total.add(&term.scale(&Rational::from_int(sign)))?;
    }
    Ok(total)
}

fn shifted_t(n: usize, order: usize) -> Vec<MatrixSeries<NCPolynomial>> {
    let t = t_matrix(n, order);
    (0..n).map(|k| t.shift(&Rational::from_int(-(k as i64)))).collect()
}

/// `qdet T(u) = sum_p sgn p * t_{p(1)1}(u) ... t_{p(n)n}(u-n+1)`.
pub fn qdet(n: usize, order: usize) -> Result<TruncatedSeries<NCPolynomial>> {
    let all: Vec<usize> = (0..n).collect();
    qdet_minor(&shifted_t(n, order), &all, &all)
}

/// Column `col` of `T_1(u) T_2(u-1) ... T_n(u-n+1)` on `(C^n)^{⊗n}`.
fn fused_t_column(
    shifted: &[MatrixSeries<NCPolynomial>],
    col: usize,
) -> Result<Vec<TruncatedSeries<NCPolynomial>>> {
    let n = shifted[0].n();
    let order = shifted[0].order();
    let mut v = vec![TruncatedSeries::zero(order); n.pow(n as u32)];
    v[col] = TruncatedSeries::one(order);
    for slot in (0..n).rev() {
        v = apply_in_slot(n, n, slot, &shifted[slot], &v)?;
    }
    Ok(v)
}

fn apply_rational<C: Coefficient>(
    a: &Operator<Rational>,
    v: &[TruncatedSeries<C>],
) -> Result<Vec<TruncatedSeries<C>>> {
    let order = v[0].order();
    let mut out = vec![TruncatedSeries::zero(order); v.len()];
    for ((r, c), x) in a.entries() {
        if !v[*c].is_zero() {
            out[*r] = out[*r].add(&v[*c].scale(x))?;
        }
    }
    Ok(out)
}

/// The basis vector `e_1 ⊗ ... ⊗ e_n` used for extraction.
pub fn reference_index(n: usize) -> usize {
    flatten(n, &(0..n).collect::<Vec<_>>())
}

/// Reads the scalar series `s` off `A_n X = A_n s` at the reference diagonal
/// entry, given the column of `X` at the reference vector.
pub(crate) fn extract_at_reference<C: Coefficient>(
    n: usize,
    column: &[TruncatedSeries<C>],
) -> Result<TruncatedSeries<C>> {
    let a: Operator<Rational> = Operator::antisymmetrizer(n, n);
    let e = reference_index(n);
    let scale = a.get(e, e);
    let mut acc = TruncatedSeries::zero(column[0].order());
    for ((r, c), x) in a.entries() {
        if *r == e {
            acc = acc.add(&column[*c].scale(x))?;
        }
    }
    Ok(acc.scale(&scale.recip()?))
}

/// qdet read off the relation `A_n T_1(u) ... T_n(u-n+1) = A_n qdet T(u)`.
pub fn qdet_via_antisymmetrizer(n: usize, order: usize) -> Result<TruncatedSeries<NCPolynomial>> {
    let shifted = shifted_t(n, order);
    extract_at_reference(n, &fused_t_column(&shifted, reference_index(n))?)
}

/// Checks `A_n T_1(u) ... T_n(u-n+1) = A_n q(u)` on every column.
pub fn antisymmetrizer_relation_holds(n: usize, q: &TruncatedSeries<NCPolynomial>) -> Result<bool> {
    let order = q.order();
    let shifted = shifted_t(n, order);
    let a: Operator<Rational> = Operator::antisymmetrizer(n, n);
    for col in 0..n.pow(n as u32) {
        let lhs = apply_rational(&a, &fused_t_column(&shifted, col)?)?;
        for (r, x) in lhs.iter().enumerate() {
            let expected = q.scale(&a.get(r, col));
            if *x != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `x R(x) = x - P_st` on `(C^n)^{⊗m}`.
pub fn r_cleared(n: usize, m: usize, s: usize, t: usize, x: &Rational) -> Operator<Rational> {
    Operator::scalar(n, m, x.clone()).sub(&Operator::swap(n, m, s, t))
}

/// `R(u_1, ..., u_n) = (R_{n-1,n})(R_{n-2,n} R_{n-2,n-1}) ... (R_{1n} ... R_{12})`
/// at `u_i = u - i + 1`, where `R_ij = R(u_i - u_j) = 1 - P_ij / (j - i)`.
pub fn fused_r_at_special_point(n: usize) -> Operator<Rational> {
    let mut op = Operator::identity(n, n);
    for i in (0..n.saturating_sub(1)).rev() {
        for j in (i + 1..n).rev() {
            let x = Rational::from_int((j - i) as i64);
            let r = r_cleared(n, n, i, j, &x).scale(&x.recip().expect("nonzero"));
            op = op.mul(&r);
        }
    }
    op
}

/// Whether `fused_r_at_special_point(n)` is a nonzero multiple of
/// `sum_p sgn(p) P_p`, and the multiple.
pub fn fused_r_scale(n: usize) -> Option<Rational> {
    let r = fused_r_at_special_point(n);
    let a: Operator<Rational> = Operator::antisymmetrizer(n, n);
    let e = reference_index(n);
    let scale = r.get(e, e) / a.get(e, e);
    (!scale.is_zero() && r == a.scale(&scale)).then_some(scale)
}

/// The quantum comatrix: `t^_ij(u)` is `(-1)^{i+j}` times the quantum
/// determinant of `T(u)` with column `i` and row `j` removed.
pub fn quantum_comatrix(n: usize, order: usize) -> Result<MatrixSeries<NCPolynomial>> {
    let shifted = shifted_t(n, order);
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&a| a != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&b| b != i).collect();
            let minor = if n == 1 {
                TruncatedSeries::one(order)
            } else {
                qdet_minor(&shifted, &rows, &cols)?
            };
            entries.push(if (i + j) % 2 == 0 { minor } else { minor.neg() });
        }
    }
    let mut it = entries.into_iter();
    Ok(MatrixSeries::from_fn(n, |_, _| it.next().unwrap()))
}

/// Checks `qdet T(u) = T^(u) T(u-n+1)`.
pub fn comatrix_relation_holds(n: usize, order: usize) -> Result<bool> {
    let hat = quantum_comatrix(n, order)?;
    let q = qdet(n, order)?;
    let t = t_matrix(n, order).shift(&Rational::from_int(1 - n as i64));
    let prod = hat.mul(&t)?;
    let expected = MatrixSeries::from_fn(n, |i, j| {
        if i == j {
            q.clone()
        } else {
            TruncatedSeries::zero(order)
        }
    });
    Ok(prod == expected)
}

/// Checks `t'_ij(u) = qdet T(u+n-1)^{-1} t^_ij(u+n-1)` against the series
/// inverse of `T(u)`.
pub fn inverse_via_comatrix_holds(n: usize, order: usize) -> Result<bool> {
    let c = Rational::from_int(n as i64 - 1);
    let hat = quantum_comatrix(n, order)?.shift(&c);
    let qinv = qdet(n, order)?.shift(&c).invert()?;
    let tinv = t_inverse(n, order)?;
    for i in 0..n {
        for j in 0..n {
            if qinv.mul(hat.get(i, j))? != *tinv.get(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommutatorFailure {
    pub generator: GenIndex,
    pub commutator: NCPolynomial,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CentralityReport {
    pub checked: usize,
    pub failures: Vec<CommutatorFailure>,
}

impl CentralityReport {
    pub fn is_central(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Commutators of `x` with every `t_ij^(r)`, `r <= modes_bound`.
pub fn is_central(x: &NCPolynomial, n: usize, modes_bound: usize) -> CentralityReport {
    let mut report = CentralityReport {
        checked: 0,
        failures: Vec::new(),
    };
    for r in 1..=modes_bound {
        for i in 1..=n {
            for j in 1..=n {
                let g = GenIndex::new(i, j, r);
                let c = x.commutator(&NCPolynomial::gen(g));
                report.checked += 1;
                if !c.is_zero() {
                    report.failures.push(CommutatorFailure {
                        generator: g,
                        commutator: c,
                    });
                }
            }
        }
    }
    report
}

/// Centrality of `d_1, d_2, ...` against all generators keeping the total
/// filtration degree at most `max_degree`.
pub fn qdet_centrality(n: usize, max_degree: usize) -> Result<Vec<(usize, CentralityReport)>> {
    let q = qdet(n, max_degree.saturating_sub(1).max(1))?;
    Ok((1..max_degree)
        .filter(|&m| m <= q.order())
        .map(|m| (m, is_central(q.coeff(m), n, max_degree - m)))
        .collect())
}

/// `((u-v) - P) T_1(u) T_2(v) - T_2(v) T_1(u) ((u-v) - P)`.
pub fn rtt_residual_of(t: &MatrixSeries<NCPolynomial>) -> Result<BivariateResidual> {
    let n = t.n();
    let mut table = SymbolTable::new();
    let tu = table.register(Var::U, t);
    let tv = table.register(Var::V, t);
    let r = Operator::scalar(n, 2, SymExpr::linear(1, -1, 0)).sub(&Operator::swap(n, 2, 0, 1));
    let t1 = table.operator(tu, 2, 0);
    let t2 = table.operator(tv, 2, 1);
    let lhs = r.mul(&t1).mul(&t2);
    let rhs = t2.mul(&t1).mul(&r);
    residual(&operator_difference(&lhs, &rhs), &table)
}

pub fn rtt_residual(n: usize, order: usize) -> Result<BivariateResidual> {
    rtt_residual_of(&t_matrix(n, order))
}

/// `(u-v)[t_ij(u), t'_rs(v)] - (delta_rj sum_a t_ia(u) t'_as(v) - delta_is sum_a t'_ra(v) t_aj(u))`
/// for all index quadruples; entries are keyed by `(i*n + j, r*n + s)`.
pub fn ttprime_residual_of(
    t: &MatrixSeries<NCPolynomial>,
    tprime: &MatrixSeries<NCPolynomial>,
) -> Result<BivariateResidual> {
    let n = t.n();
    let mut table = SymbolTable::new();
    let tu = table.register(Var::U, t);
    let pv = table.register(Var::V, tprime);
    let sym = |mat: u8, a: usize, b: usize| {
        let src = if mat == tu { t } else { tprime };
        if src.get(a, b).is_zero() {
            SymExpr::zero()
        } else {
            SymExpr::symbol(crate::bivariate::Sym {
                mat,
                i: a as u8,
                j: b as u8,
            })
        }
    };
    let mut diffs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let x = sym(tu, i, j);
                    let y = sym(pv, r, s);
                    let mut e = x.mul(&y).sub(&y.mul(&x)).mul(&SymExpr::linear(1, -1, 0));
                    if r == j {
                        for a in 0..n {
                            e = e.sub(&sym(tu, i, a).mul(&sym(pv, a, s)));
                        }
                    }
                    if i == s {
                        for a in 0..n {
                            e = e.add(&sym(pv, r, a).mul(&sym(tu, a, j)));
                        }
                    }
                    diffs.push(((i * n + j, r * n + s), e));
                }
            }
        }
    }
    residual(&diffs, &table)
}

pub fn ttprime_residual(n: usize, order: usize) -> Result<BivariateResidual> {
    ttprime_residual_of(&t_matrix(n, order), &t_inverse(n, order)?)
}

/// `R_12 R_13 R_23 = R_23 R_13 R_12` with `R_ij = (u_i - u_j) - P_ij`, at
/// each triple of spectral parameters.
pub fn ybe_holds(n: usize, points: &[[Rational; 3]]) -> bool {
    ybe_holds_offset(n, points, &Rational::zero())
}

/// As [`ybe_holds`] with `offset` added to the argument of `R_13`.
pub fn ybe_holds_offset(n: usize, points: &[[Rational; 3]], offset: &Rational) -> bool {
    points.iter().all(|u| {
        let r = |i: usize, j: usize| {
            let x = &u[i] - &u[j];
            let x = if (i, j) == (0, 2) { &x + offset } else { x };
            r_cleared(n, 3, i, j, &x)
        };
        r(0, 1).mul(&r(0, 2)).mul(&r(1, 2)) == r(1, 2).mul(&r(0, 2)).mul(&r(0, 1))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_matrix_shape() {
        let t = t_matrix(1, 2);
        assert_eq!(t.get(0, 0).coeffs(), &[NCPolynomial::one(), NCPolynomial::t(1, 1, 1), NCPolynomial::t(1, 1, 2)]);
        let t = t_matrix(2, 3);
        assert!(t.get(0, 1).coeff(0).is_zero());
        assert_eq!(t.get(1, 0).order(), 3);
    }

    #[test]
    fn qdet_first_coefficient_is_the_trace() {
        let q = qdet(2, 3).unwrap();
        assert!(q.coeff(0).scalar_part().unwrap().is_one());
        assert_eq!(q.coeff(1), &NCPolynomial::t(1, 1, 1).add(&NCPolynomial::t(2, 2, 1)));
        assert_eq!(qdet(1, 3).unwrap(), t_matrix(1, 3).get(0, 0).clone());
    }

    #[test]
    fn inverse_first_mode() {
        let tinv = t_inverse(3, 2).unwrap();
        assert_eq!(tinv.get(0, 2).coeff(1), &NCPolynomial::t(1, 3, 1).neg());
    }

    #[test]
    fn fused_r_small_cases() {
        assert_eq!(fused_r_scale(2), Some(Rational::one()));
        assert!(fused_r_scale(3).is_some());
    }

    #[test]
    fn comatrix_for_n2() {
        let hat = quantum_comatrix(2, 3).unwrap();
        assert_eq!(hat.get(0, 0), t_matrix(2, 3).get(1, 1));
        assert!(comatrix_relation_holds(2, 3).unwrap());
    }

    #[test]
    fn centrality_small() {
        let q = qdet(2, 2).unwrap();
        assert!(is_central(q.coeff(1), 2, 4).is_central());
        assert!(!is_central(&NCPolynomial::t(1, 2, 1), 2, 1).is_central());
    }

    #[test]
    fn rtt_small() {
        assert!(rtt_residual(2, 3).unwrap().is_zero());
    }
}
