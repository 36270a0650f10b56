//! The reflection algebra B(n,l) realized inside Y(n).

mod sdet;
mod twisted;

pub use sdet::{sdet_identity_check, sklyanin_det, theta, theta_matches_trivial_representation, SdetIdentityReport};
pub use twisted::{twisted_map_check, twisted_relation_residual, twisted_s, TwistSign, TwistedReport};

use serde::Serialize;

use crate::bivariate::{operator_difference, residual, BivariateResidual, SymExpr, SymbolTable, Var};
use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::ncpoly::NCPolynomial;
use crate::operator::Operator;
use crate::rational::Rational;
use crate::series::{MatrixSeries, TruncatedSeries};
use crate::yangian::{coproduct, t_matrix, TensorNCPolynomial};

/// `(n, l)` with `G = diag(1,...,1,-1,...,-1)` having `l` entries `-1`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    n: usize,
    l: usize,
}

impl Signature {
    pub fn new(n: usize, l: usize) -> Result<Self> {
        if n == 0 || 2 * l > n {
            return Err(Error::InvalidSignature { n, l });
        }
        Ok(Signature { n, l })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn k(&self) -> usize {
        self.n - self.l
    }

    /// `epsilon_i` for a zero-based index.
    pub fn epsilon(&self, i: usize) -> i64 {
        if i < self.k() {
            1
        } else {
            -1
        }
    }

    pub fn g(&self) -> QMatrix {
        QMatrix::diagonal(&(0..self.n).map(|i| Rational::from_int(self.epsilon(i))).collect::<Vec<_>>())
    }
}

/// `B(u) = T(u) G T^{-1}(-u)` inside Y(n).
#[derive(Clone, Debug)]
pub struct EmbeddedB {
    pub sig: Signature,
    pub b: MatrixSeries<NCPolynomial>,
}

pub fn embed_b(sig: Signature, order: usize) -> Result<EmbeddedB> {
    let t = t_matrix(sig.n(), order);
    let tinv_neg = t.inverse()?.neg_u();
    let b = t.mul_constant_right(&sig.g()).mul(&tinv_neg)?;
    Ok(EmbeddedB { sig, b })
}

/// The constant matrix `G` as a series, the image of `B(u)` in the trivial
/// representation.
pub fn constant_b(sig: Signature, order: usize) -> MatrixSeries<NCPolynomial> {
    MatrixSeries::constant(&sig.g(), order)
}

/// `m` with `by` added to the coefficient of `u^{-r}` in entry `(i, j)`.
pub fn bump(m: &MatrixSeries<NCPolynomial>, i: usize, j: usize, r: usize, by: &NCPolynomial) -> MatrixSeries<NCPolynomial> {
    let mut out = m.clone();
    let mut s = out.get(i, j).clone();
    s.set_coeff(r, s.coeff(r).add(by));
    out.set(i, j, s);
    out
}

/// `(x - P)` with `x` linear in `u, v`.
fn cleared_r(n: usize, x: SymExpr) -> Operator<SymExpr> {
    Operator::scalar(n, 2, x).sub(&Operator::swap(n, 2, 0, 1))
}

/// `((u-v) - P) B_1(u) ((u+v) - P) B_2(v) - B_2(v) ((u+v) - P) B_1(u) ((u-v) - P)`.
pub fn reflection_residual_of(b: &MatrixSeries<NCPolynomial>) -> Result<BivariateResidual> {
    let n = b.n();
    let mut table = SymbolTable::new();
    let bu = table.register(Var::U, b);
    let bv = table.register(Var::V, b);
    let r_minus = cleared_r(n, SymExpr::linear(1, -1, 0));
    let r_plus = cleared_r(n, SymExpr::linear(1, 1, 0));
    let b1 = table.operator(bu, 2, 0);
    let b2 = table.operator(bv, 2, 1);
    let lhs = r_minus.mul(&b1).mul(&r_plus).mul(&b2);
    let rhs = b2.mul(&r_plus).mul(&b1).mul(&r_minus);
    residual(&operator_difference(&lhs, &rhs), &table)
}

pub fn reflection_residual(eb: &EmbeddedB) -> Result<BivariateResidual> {
    reflection_residual_of(&eb.b)
}

/// `B(u) B(-u) - 1`.
pub fn unitarity_residual_of(b: &MatrixSeries<NCPolynomial>) -> Result<MatrixSeries<NCPolynomial>> {
    b.mul(&b.neg_u())?.sub(&MatrixSeries::identity(b.n(), b.order()))
}

pub fn unitarity_residual(eb: &EmbeddedB) -> Result<MatrixSeries<NCPolynomial>> {
    unitarity_residual_of(&eb.b)
}

/// `g(u) B(u)`.
pub fn twist_b(b: &MatrixSeries<NCPolynomial>, g: &TruncatedSeries<Rational>) -> Result<MatrixSeries<NCPolynomial>> {
    if !g.coeff(0).is_one() {
        return Err(Error::InvalidArgument("the twisting series must have constant term 1".into()));
    }
    b.mul_scalar_series(g)
}

/// `((u-v) - P) G_1 ((u+v) - P) G_2 = G_2 ((u+v) - P) G_1 ((u-v) - P)` at
/// each point `(u, v)`.
pub fn g_braid_check(g: &QMatrix, points: &[(Rational, Rational)]) -> bool {
    let n = g.rows();
    let g1: Operator<Rational> = Operator::in_slot(n, 2, 0, |a, b| g[(a, b)].clone());
    let g2: Operator<Rational> = Operator::in_slot(n, 2, 1, |a, b| g[(a, b)].clone());
    points.iter().all(|(u, v)| {
        let rm = Operator::scalar(n, 2, u - v).sub(&Operator::swap(n, 2, 0, 1));
        let rp = Operator::scalar(n, 2, u + v).sub(&Operator::swap(n, 2, 0, 1));
        rm.mul(&g1).mul(&rp).mul(&g2) == g2.mul(&rp).mul(&g1).mul(&rm)
    })
}

/// One entry `(i, j)` where the two sides of the coideal identity differ.
#[derive(Clone, Debug, Serialize)]
pub struct CoidealFailure {
    pub i: usize,
    pub j: usize,
    pub mode: usize,
}

/// `Δ(b_ij(u)) = sum_{a,c} t_ia(u) t'_cj(-u) ⊗ b_ac(u)` for every entry and
/// every coefficient up to the truncation order.
pub fn coideal_check(eb: &EmbeddedB) -> Result<Vec<CoidealFailure>> {
    let n = eb.sig.n();
    let order = eb.b.order();
    let t = t_matrix(n, order);
    let tinv_neg = t.inverse()?.neg_u();
    let left_leg = |x: &NCPolynomial| TensorNCPolynomial::tensor(x, &NCPolynomial::one());
    let right_leg = |x: &NCPolynomial| TensorNCPolynomial::tensor(&NCPolynomial::one(), x);
    let mut failures = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut rhs: TruncatedSeries<TensorNCPolynomial> = TruncatedSeries::zero(order);
            for a in 0..n {
                for c in 0..n {
                    let b_ac = eb.b.get(a, c);
                    if b_ac.is_zero() {
                        continue;
                    }
                    let tt = t.get(i, a).mul(tinv_neg.get(c, j))?;
                    rhs = rhs.add(&tt.map(left_leg).mul(&b_ac.map(right_leg))?)?;
                }
            }
            for m in 0..=order {
                if coproduct(eb.b.get(i, j).coeff(m), n) != *rhs.coeff(m) {
                    failures.push(CoidealFailure { i, j, mode: m });
                }
            }
        }
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_bounds() {
        assert!(Signature::new(2, 1).is_ok());
        assert_eq!(Signature::new(3, 2), Err(Error::InvalidSignature { n: 3, l: 2 }));
        assert_eq!(Signature::new(0, 0), Err(Error::InvalidSignature { n: 0, l: 0 }));
        let s = Signature::new(3, 1).unwrap();
        assert_eq!((s.epsilon(0), s.epsilon(1), s.epsilon(2)), (1, 1, -1));
    }

    #[test]
    fn embedded_b_first_modes() {
        let sig = Signature::new(2, 1).unwrap();
        let eb = embed_b(sig, 2).unwrap();
        assert_eq!(eb.b.coeff_matrix(0), vec![
            NCPolynomial::one(),
            NCPolynomial::zero(),
            NCPolynomial::zero(),
            NCPolynomial::one().neg(),
        ]);
        for i in 0..2 {
            for j in 0..2 {
                let e = sig.epsilon(i) + sig.epsilon(j);
                assert_eq!(
                    eb.b.get(i, j).coeff(1),
                    &NCPolynomial::t(i + 1, j + 1, 1).scale(&Rational::from_int(e))
                );
            }
        }
    }

    #[test]
    fn scalar_case() {
        let eb = embed_b(Signature::new(1, 0).unwrap(), 3).unwrap();
        let t = t_matrix(1, 3);
        let expected = t.get(0, 0).mul(&t.get(0, 0).neg_u().invert().unwrap()).unwrap();
        assert_eq!(eb.b.get(0, 0), &expected);
    }

    #[test]
    fn reflection_and_unitarity_small() {
        let eb = embed_b(Signature::new(2, 1).unwrap(), 3).unwrap();
        assert!(reflection_residual(&eb).unwrap().is_zero());
        assert!(unitarity_residual(&eb).unwrap().is_zero());
        let g = constant_b(eb.sig, 3);
        assert!(reflection_residual_of(&g).unwrap().is_zero());
        let bad = bump(&eb.b, 0, 1, 2, &NCPolynomial::one());
        assert!(!reflection_residual_of(&bad).unwrap().is_zero());
    }

    #[test]
    fn g_braid() {
        let pts = crate::sampling::rational_points(1, 5, 2);
        let pts: Vec<_> = pts.into_iter().map(|p| (p[0].clone(), p[1].clone())).collect();
        assert!(g_braid_check(&Signature::new(2, 1).unwrap().g(), &pts));
        let bad = QMatrix::diagonal(&[Rational::one(), Rational::from_int(2)]);
        assert!(!g_braid_check(&bad, &pts));
    }

    #[test]
    fn coideal_small() {
        let eb = embed_b(Signature::new(2, 1).unwrap(), 2).unwrap();
        assert!(coideal_check(&eb).unwrap().is_empty());
    }
}
