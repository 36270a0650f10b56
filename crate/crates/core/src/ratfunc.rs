//! Reduced rational functions in one variable `u` over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// `num / den` with `gcd(num, den) = 1` and `den` monic. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRatFunc", into = "RawRatFunc")]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

#[derive(Serialize, Deserialize)]
struct RawRatFunc {
    num: Polynomial,
    den: Polynomial,
}

impl TryFrom<RawRatFunc> for RationalFunction {
    type Error = Error;
    fn try_from(r: RawRatFunc) -> Result<Self> {
        RationalFunction::new(r.num, r.den)
    }
}

impl From<RationalFunction> for RawRatFunc {
    fn from(r: RationalFunction) -> Self {
        RawRatFunc { num: r.num, den: r.den }
    }
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunction::zero());
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g);
        let den = den.div_exact(&g);
        let lc = den.leading().unwrap().recip()?;
        Ok(RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction::from_poly(Polynomial::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        RationalFunction::constant(Rational::from_int(c))
    }

    pub fn zero() -> Self {
        RationalFunction::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(Polynomial::one())
    }

    /// `(a*u + b) / (c*u + d)`.
    pub fn mobius(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        RationalFunction::new(
            Polynomial::from_ints(&[b, a]),
            Polynomial::from_ints(&[d, c]),
        )
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RationalFunction) -> Result<Self> {
        Ok(self * &other.invert()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(RationalFunction::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::EvaluationAtPole(x.to_string()));
        }
        Ok(self.num.eval(x) / d)
    }

    /// `f(a*u + b)`.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> Self {
        RationalFunction::new(self.num.compose_affine(a, b), self.den.compose_affine(a, b))
            .expect("affine substitution keeps the denominator nonzero")
    }

    /// `f(u + c)`.
    pub fn shift(&self, c: &Rational) -> Self {
        self.compose_affine(&Rational::one(), c)
    }

    /// `f(-u + c)`.
    pub fn reflect(&self, c: &Rational) -> Self {
        self.compose_affine(&-Rational::one(), c)
    }

    /// The value at `u = infinity` when `f` is proper (no pole there).
    pub fn limit_at_infinity(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        match dn.cmp(&dd) {
            std::cmp::Ordering::Less => Some(Rational::zero()),
            std::cmp::Ordering::Equal => Some(self.num.leading().unwrap().clone()),
            std::cmp::Ordering::Greater => None,
        }
    }

    /// Coefficients `c_0..c_order` of the expansion `f = sum c_m u^{-m}` at
    /// `u = infinity`. Fails if `f` has a pole at infinity.
    pub fn expand_at_infinity(&self, order: usize) -> Result<Vec<Rational>> {
        if self.is_zero() {
            return Ok(vec![Rational::zero(); order + 1]);
        }
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        if dn > dd {
            return Err(Error::InvalidArgument(format!(
                "{self} has a pole at infinity"
            )));
        }
        // With x = 1/u: num = u^dn * N(x), den = u^dd * D(x), D(0) = 1.
        let rev = |p: &Polynomial, deg: usize| -> Vec<Rational> {
            (0..=order).map(|m| if m <= deg { p.coeff(deg - m) } else { Rational::zero() }).collect()
        };
        let nx = rev(&self.num, dn);
        let dx = rev(&self.den, dd);
        let shift = dd - dn;
        let mut q = vec![Rational::zero(); order + 1];
        // q = N / D as power series in x; D(0) = 1 since den is monic.
        for m in 0..=order {
            let mut acc = nx[m].clone();
            for k in 1..=m {
                if !dx[k].is_zero() {
                    acc -= &(&dx[k] * &q[m - k]);
                }
            }
            q[m] = acc;
        }
        let mut out = vec![Rational::zero(); order + 1];
        if shift <= order {
            out[shift..].clone_from_slice(&q[..=order - shift]);
        }
        Ok(out)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .unwrap()
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Polynomial::from_ints(num), Polynomial::from_ints(den)).unwrap()
    }

    #[test]
    fn canonical_form_is_reduced_and_monic() {
        // (2u^2 - 2) / (4u - 4) = (u + 1) / 2
        let f = rf(&[-2, 0, 2], &[-4, 4]);
        assert_eq!(f.den(), &Polynomial::one());
        assert_eq!(f.num(), &Polynomial::new(vec![Rational::new(1, 2), Rational::new(1, 2)]));
    }

    #[test]
    fn reflection_of_gamma_factor() {
        // (u + g)/(u - g) at u -> -u is (u - g)/(u + g)
        let g = 3;
        let f = rf(&[g, 1], &[-g, 1]);
        assert_eq!(f.reflect(&Rational::zero()), rf(&[-g, 1], &[g, 1]));
    }

    #[test]
    fn evaluation_and_poles() {
        let f = rf(&[0, 2], &[-1, 2]);
        assert_eq!(f.eval(&Rational::one()).unwrap(), Rational::from_int(2));
        assert!(matches!(f.eval(&Rational::new(1, 2)), Err(Error::EvaluationAtPole(_))));
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        assert_eq!(RationalFunction::zero().invert(), Err(Error::DivisionByZero));
        assert!(RationalFunction::new(Polynomial::one(), Polynomial::zero()).is_err());
    }

    #[test]
    fn expansion_at_infinity() {
        // 1/(u - 1) = u^-1 + u^-2 + ...
        let f = rf(&[1], &[-1, 1]);
        let c = f.expand_at_infinity(4).unwrap();
        assert_eq!(c[0], Rational::zero());
        assert!(c[1..].iter().all(Rational::is_one));
        // 2u/(2u - 1) = 1 + (1/2)u^-1 + (1/4)u^-2 + ...
        let g = rf(&[0, 2], &[-1, 2]);
        let c = g.expand_at_infinity(3).unwrap();
        assert_eq!(c, vec![Rational::one(), Rational::new(1, 2), Rational::new(1, 4), Rational::new(1, 8)]);
        assert!(rf(&[0, 0, 1], &[1]).expand_at_infinity(2).is_err());
    }

    #[test]
    fn json_shape() {
        let f = rf(&[3, 1], &[-3, 1]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"num":["3","1"],"den":["-3","1"]}"#);
        let back: RationalFunction = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
