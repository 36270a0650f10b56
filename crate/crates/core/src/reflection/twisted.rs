//! B(2,0) and B(2,1) against the extended twisted Yangians of rank 2.

use serde::Serialize;

use super::EmbeddedB;
use crate::bivariate::{operator_difference, residual, BivariateResidual, SymExpr, SymbolTable, Var};
use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::ncpoly::NCPolynomial;
use crate::operator::Operator;
use crate::ratfunc::RationalFunction;
use crate::rational::Rational;
use crate::series::{MatrixSeries, TruncatedSeries};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TwistSign {
    Plus,
    Minus,
}

impl TwistSign {
    pub fn as_char(self) -> char {
        match self {
            TwistSign::Plus => '+',
            TwistSign::Minus => '-',
        }
    }

    /// `B(2,1)` goes with the `+` transposition and `B(2,0)` with `-`.
    pub fn expected_l(self) -> usize {
        match self {
            TwistSign::Plus => 1,
            TwistSign::Minus => 0,
        }
    }

    fn theta(self, i: usize) -> i64 {
        match (self, i) {
            (TwistSign::Minus, 1) => -1,
            _ => 1,
        }
    }
}

/// Coefficient of `E_ab ⊗ E_cd` in `Q = sum_ij E_ij^t ⊗ E_ji`, where
/// `E_ij^t = theta_i theta_j E_{j'i'}` and `i' = 3 - i`.
fn q_entry(sign: TwistSign, a: usize, b: usize, c: usize, d: usize) -> Rational {
    if a == 1 - c && b == 1 - d {
        Rational::from_int(sign.theta(c) * sign.theta(d))
    } else {
        Rational::zero()
    }
}

fn q_operator<E: Coefficient>(sign: TwistSign) -> Operator<E> {
    Operator::in_two_slots(2, 2, 0, 1, |a, b, c, d| E::from_rational(q_entry(sign, a, b, c, d)))
}

/// `S(u) = B(u + 1/2)` for `-` and `B(u + 1/2) G` for `+`.
pub fn twisted_s(eb: &EmbeddedB, sign: TwistSign) -> Result<MatrixSeries<NCPolynomial>> {
    let sig = eb.sig;
    if sig.n() != 2 || sig.l() != sign.expected_l() {
        return Err(Error::InvalidTwistPairing {
            sign: sign.as_char(),
            expected_l: sign.expected_l(),
            l: sig.l(),
        });
    }
    let s = eb.b.shift(&Rational::new(1, 2));
    Ok(match sign {
        TwistSign::Minus => s,
        TwistSign::Plus => s.mul_constant_right(&sig.g()),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistedReport {
    pub sign: TwistSign,
    pub relation: BivariateResidual,
    /// `Q S_1(u) R(2u) S_2^{-1}(-u)` is a scalar series times `Q`.
    pub proportional_to_q: bool,
    pub delta: TruncatedSeries<NCPolynomial>,
    /// `delta(u) delta(-u) = 1`.
    pub delta_unitary: bool,
}

impl TwistedReport {
    pub fn passed(&self) -> bool {
        self.relation.is_zero() && self.proportional_to_q && self.delta_unitary
    }
}

/// `((u-v) - P) S_1(u) ((-u-v) - Q) S_2(v) - S_2(v) ((-u-v) - Q) S_1(u) ((u-v) - P)`.
pub fn twisted_relation_residual(s: &MatrixSeries<NCPolynomial>, sign: TwistSign) -> Result<BivariateResidual> {
    let mut table = SymbolTable::new();
    let su = table.register(Var::U, s);
    let sv = table.register(Var::V, s);
    let r = Operator::scalar(2, 2, SymExpr::linear(1, -1, 0)).sub(&Operator::swap(2, 2, 0, 1));
    let rt = Operator::scalar(2, 2, SymExpr::linear(-1, -1, 0)).sub(&q_operator(sign));
    let s1 = table.operator(su, 2, 0);
    let s2 = table.operator(sv, 2, 1);
    let lhs = r.mul(&s1).mul(&rt).mul(&s2);
    let rhs = s2.mul(&rt).mul(&s1).mul(&r);
    residual(&operator_difference(&lhs, &rhs), &table)
}

fn in_slot_series(s: &MatrixSeries<NCPolynomial>, slot: usize) -> MatrixSeries<NCPolynomial> {
    let order = s.order();
    MatrixSeries::from_fn(4, |row, col| {
        let (a, c) = (row / 2, row % 2);
        let (b, d) = (col / 2, col % 2);
        match slot {
            0 if c == d => s.get(a, b).clone(),
            1 if a == b => s.get(c, d).clone(),
            _ => TruncatedSeries::zero(order),
        }
    })
}

/// `delta(u)` from `(1 ∓ 1/(2u)) delta(u) Q = Q S_1(u) R(2u) S_2^{-1}(-u)`.
fn delta_series(s: &MatrixSeries<NCPolynomial>, sign: TwistSign) -> Result<(bool, TruncatedSeries<NCPolynomial>)> {
    let order = s.order();
    let q = QMatrix::from_rows(
        (0..4)
            .map(|row| (0..4).map(|col| q_entry(sign, row / 2, col / 2, row % 2, col % 2)).collect())
            .collect(),
    );
    let r2u = MatrixSeries::from_fn(4, |row, col| {
        let mut coeffs = vec![NCPolynomial::zero(); order + 1];
        if row == col {
            coeffs[0] = NCPolynomial::one();
        }
        let swapped = (row % 2) * 2 + row / 2;
        if swapped == col && order >= 1 {
            coeffs[1] = NCPolynomial::scalar(Rational::new(-1, 2));
        }
        TruncatedSeries::new(coeffs)
    });
    let s_inv_neg = s.neg_u().inverse()?;
    let rhs = MatrixSeries::constant(&q, order)
        .mul(&in_slot_series(s, 0))?
        .mul(&r2u)?
        .mul(&in_slot_series(&s_inv_neg, 1))?;
    // Q is nonzero at row (1,2), column (1,2) for both signs.
    let (r0, c0) = (1, 1);
    let f = rhs.get(r0, c0).scale(&q[(r0, c0)].recip()?);
    let proportional = (0..4).all(|r| (0..4).all(|c| *rhs.get(r, c) == f.scale(&q[(r, c)])));
    let prefactor = match sign {
        TwistSign::Plus => RationalFunction::mobius(2, 0, 2, -1)?,
        TwistSign::Minus => RationalFunction::mobius(2, 0, 2, 1)?,
    };
    let delta = f.mul_scalar_series(&TruncatedSeries::from_rational_function(&prefactor, order)?)?;
    Ok((proportional, delta))
}

pub fn twisted_map_check(eb: &EmbeddedB, sign: TwistSign) -> Result<TwistedReport> {
    let s = twisted_s(eb, sign)?;
    let relation = twisted_relation_residual(&s, sign)?;
    let (proportional_to_q, delta) = delta_series(&s, sign)?;
    let delta_unitary = delta.mul(&delta.neg_u())?.is_one();
    Ok(TwistedReport {
        sign,
        relation,
        proportional_to_q,
        delta,
        delta_unitary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reflection::{embed_b, Signature};

    #[test]
    fn q_for_minus_sign_complements_p() {
        let q: Operator<Rational> = q_operator(TwistSign::Minus);
        let p = Operator::swap(2, 2, 0, 1);
        assert_eq!(q.add(&p), Operator::identity(2, 2));
        let qp: Operator<Rational> = q_operator(TwistSign::Plus);
        assert_eq!(qp.mul(&qp), qp.scale(&Rational::from_int(2)));
    }

    #[test]
    fn pairing_is_enforced() {
        let eb = embed_b(Signature::new(2, 1).unwrap(), 2).unwrap();
        assert!(matches!(twisted_s(&eb, TwistSign::Minus), Err(Error::InvalidTwistPairing { .. })));
    }

    #[test]
    fn both_signs_small() {
        for sign in [TwistSign::Plus, TwistSign::Minus] {
            let eb = embed_b(Signature::new(2, sign.expected_l()).unwrap(), 3).unwrap();
            let rep = twisted_map_check(&eb, sign).unwrap();
            assert!(rep.relation.is_zero(), "{sign:?}");
            assert!(rep.proportional_to_q, "{sign:?}");
            assert!(rep.delta_unitary, "{sign:?}");
        }
    }
}
