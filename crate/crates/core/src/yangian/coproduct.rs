//! The coproduct `Δ(t_ij(u)) = sum_k t_ik(u) ⊗ t_kj(u)` into `Y(n) ⊗ Y(n)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::Coefficient;
use crate::ncpoly::{GenIndex, NCMonomial, NCPolynomial};
use crate::rational::Rational;

/// An element of `Y(n) ⊗ Y(n)`, each leg in PBW normal form.
#[derive(Clone, Default, PartialEq)]
pub struct TensorNCPolynomial {
    terms: BTreeMap<(NCMonomial, NCMonomial), Rational>,
}

impl TensorNCPolynomial {
    pub fn tensor(a: &NCPolynomial, b: &NCPolynomial) -> Self {
        let mut out = TensorNCPolynomial::default();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                out.add_term((ma.clone(), mb.clone()), ca * cb);
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NCMonomial, &NCMonomial, &Rational)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: (NCMonomial, NCMonomial), c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }
}

impl fmt::Debug for TensorNCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| format!("{c} ({a:?}) ⊗ ({b:?})"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Coefficient for TensorNCPolynomial {
    fn zero() -> Self {
        TensorNCPolynomial::default()
    }
    fn one() -> Self {
        TensorNCPolynomial::tensor(&NCPolynomial::one(), &NCPolynomial::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }
    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }
    fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = TensorNCPolynomial::default();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                let left = NCPolynomial::word(a1.concat(a2).letters());
                let right = NCPolynomial::word(b1.concat(b2).letters());
                out.add_scaled(&TensorNCPolynomial::tensor(&left, &right), &(c1 * c2));
            }
        }
        out
    }
    fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return TensorNCPolynomial::default();
        }
        TensorNCPolynomial {
            terms: self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect(),
        }
    }
    fn from_rational(c: Rational) -> Self {
        TensorNCPolynomial::one().scale(&c)
    }
    fn as_scalar(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let ((a, b), c) = self.terms.iter().next().unwrap();
                (a.is_empty() && b.is_empty()).then(|| c.clone())
            }
            _ => None,
        }
    }
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        for (k, x) in &other.terms {
            self.add_term(k.clone(), x * c);
        }
    }
}

/// `Δ(t_ij^(r)) = sum_{s=0}^r sum_k t_ik^(s) ⊗ t_kj^(r-s)`.
pub fn coproduct_gen(g: GenIndex, n: usize) -> TensorNCPolynomial {
    let (i, j, r) = (g.i(), g.j(), g.r());
    let mut out = TensorNCPolynomial::default();
    for s in 0..=r {
        for k in 1..=n {
            let a = NCPolynomial::t(i, k, s);
            let b = NCPolynomial::t(k, j, r - s);
            if !a.is_zero() && !b.is_zero() {
                out.add_scaled(&TensorNCPolynomial::tensor(&a, &b), &Rational::one());
            }
        }
    }
    out
}

/// The algebra map `Δ` applied to a normal-form element.
pub fn coproduct(x: &NCPolynomial, n: usize) -> TensorNCPolynomial {
    let mut out = TensorNCPolynomial::default();
    for (m, c) in x.terms() {
        let mut acc = TensorNCPolynomial::one();
        for &g in m.letters() {
            acc = acc.mul(&coproduct_gen(g, n));
        }
        out.add_scaled(&acc, c);
    }
    out
}
