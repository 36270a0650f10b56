//! The Sklyanin determinant and its relation to the quantum determinant.

use serde::Serialize;

use super::Signature;
use crate::error::Result;
use crate::ncpoly::NCPolynomial;
use crate::operator::{apply_in_slot, apply_r_factor, Operator};
use crate::poly::Polynomial;
use crate::ratfunc::RationalFunction;
use crate::rational::Rational;
use crate::series::{MatrixSeries, TruncatedSeries};
use crate::yangian::{extract_at_reference, qdet, reference_index};

/// `theta(u) = (-1)^l prod_{i<=k}(2u-2n+2i) prod_{i<=l}(2u-2n+2i) / prod_{i<=n}(2u-2n+i+1)`.
pub fn theta(sig: Signature) -> RationalFunction {
    let n = sig.n() as i64;
    let factor = |c: i64| Polynomial::from_ints(&[c, 2]);
    let mut num = Polynomial::constant(Rational::sign_pow(sig.l()));
    for i in 1..=sig.k() as i64 {
        num = &num * &factor(2 * i - 2 * n);
    }
    for i in 1..=sig.l() as i64 {
        num = &num * &factor(2 * i - 2 * n);
    }
    let mut den = Polynomial::one();
    for i in 1..=n {
        den = &den * &factor(i + 1 - 2 * n);
    }
    RationalFunction::new(num, den).expect("nonzero denominator")
}

/// `1 - P_ab / (2u - a - b)` for zero-based slots, the value of
/// `R(u_a + u_b)` at `u_i = u - i`.
fn r_tilde_coeff(a: usize, b: usize) -> RationalFunction {
    RationalFunction::mobius(0, 1, 2, -((a + b) as i64)).expect("nonzero denominator")
}

/// Reads `theta` off the trivial representation `B(u) = G`: the operator
/// `A_n G_1 R~_12 ... R~_1n G_2 ... G_n` is compared with `theta(u) A_n` at each
/// point where no factor has a pole.
pub fn theta_matches_trivial_representation(sig: Signature, points: &[Rational]) -> bool {
    let n = sig.n();
    let a: Operator<Rational> = Operator::antisymmetrizer(n, n);
    let th = theta(sig);
    points.iter().all(|u| {
        let Ok(expected) = th.eval(u) else {
            return true;
        };
        let mut op = Operator::identity(n, n);
        for i in 0..n {
            op = op.mul(&Operator::in_slot(n, n, i, |x, y| {
                if x == y {
                    Rational::from_int(sig.epsilon(x))
                } else {
                    Rational::zero()
                }
            }));
            for j in i + 1..n {
                let Ok(f) = r_tilde_coeff(i, j).eval(u) else {
                    return true;
                };
                op = op.mul(&Operator::identity(n, n).sub(&Operator::swap(n, n, i, j).scale(&f)));
            }
        }
        a.mul(&op) == a.scale(&expected)
    })
}

/// `sdet B(u)` from `A_n B_1(u) R~_12 ... R~_1n B_2(u-1) ... B_n(u-n+1) = A_n sdet B(u)`,
/// read off at the reference diagonal entry.
pub fn sklyanin_det(b: &MatrixSeries<NCPolynomial>) -> Result<TruncatedSeries<NCPolynomial>> {
    let n = b.n();
    let order = b.order();
    let shifted: Vec<_> = (0..n).map(|k| b.shift(&Rational::from_int(-(k as i64)))).collect();
    let e = reference_index(n);
    let mut v = vec![TruncatedSeries::zero(order); n.pow(n as u32)];
    v[e] = TruncatedSeries::one(order);
    for i in (0..n).rev() {
        for j in (i + 1..n).rev() {
            let f = TruncatedSeries::from_rational_function(&r_tilde_coeff(i, j), order)?;
            v = apply_r_factor(n, n, i, j, &f, &v)?;
        }
        v = apply_in_slot(n, n, i, &shifted[i], &v)?;
    }
    extract_at_reference(n, &v)
}

#[derive(Clone, Debug, Serialize)]
pub struct SdetIdentityReport {
    /// Constant term equals `(-1)^l`.
    pub constant_term: bool,
    /// `sdet B(u) = theta(u) qdet T(u) qdet T(-u+n-1)^{-1}`.
    pub identity: bool,
    /// `c(u) c(-u) = 1`.
    pub c_unitary: bool,
    /// `c(u) = d(u) d(-u)^{-1}`.
    pub c_matches_d: bool,
}

impl SdetIdentityReport {
    pub fn passed(&self) -> bool {
        self.constant_term && self.identity && self.c_unitary && self.c_matches_d
    }
}

pub fn sdet_identity_check(sig: Signature, sdet: &TruncatedSeries<NCPolynomial>) -> Result<SdetIdentityReport> {
    let n = sig.n();
    let order = sdet.order();
    let q = qdet(n, order)?;
    let shift = Rational::new(n as i64 - 1, 2);
    let th = theta(sig);
    let th_series = TruncatedSeries::<Rational>::from_rational_function(&th, order)?;
    let rhs = q
        .mul(&q.reflect(&Rational::from_int(n as i64 - 1)).invert()?)?
        .mul_scalar_series(&th_series)?;
    let th_shifted_inv =
        TruncatedSeries::<Rational>::from_rational_function(&th.shift(&shift).invert()?, order)?;
    let c = sdet.shift(&shift).mul_scalar_series(&th_shifted_inv)?;
    let d = q.shift(&shift);
    Ok(SdetIdentityReport {
        constant_term: sdet.coeff(0).scalar_part() == Some(Rational::sign_pow(sig.l())),
        identity: *sdet == rhs,
        c_unitary: c.mul(&c.neg_u())?.is_one(),
        c_matches_d: c == d.mul(&d.neg_u().invert()?)?,
    })
}
