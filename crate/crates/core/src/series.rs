//! Formal series in `u^{-1}` truncated at a fixed order, with scalar or
//! matrix values.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rational::Rational;
use crate::ratfunc::RationalFunction;

/// `c_0 + c_1 u^{-1} + ... + c_D u^{-D}`.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries<C> {
    coeffs: Vec<C>,
}

fn same_order(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::OrderMismatch(a, b))
    }
}

impl<C: Coefficient> TruncatedSeries<C> {
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least c_0");
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries::new(vec![C::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        TruncatedSeries::constant(C::one(), order)
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut coeffs = vec![C::zero(); order + 1];
        coeffs[0] = c;
        TruncatedSeries { coeffs }
    }

    /// The expansion of a rational function with no pole at infinity.
    pub fn from_rational_function(f: &RationalFunction, order: usize) -> Result<Self> {
        Ok(TruncatedSeries::new(
            f.expand_at_infinity(order)?
                .into_iter()
                .map(C::from_rational)
                .collect(),
        ))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, m: usize) -> &C {
        &self.coeffs[m]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn set_coeff(&mut self, m: usize, c: C) {
        self.coeffs[m] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].as_scalar().is_some_and(|c| c.is_one())
            && self.coeffs[1..].iter().all(C::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        TruncatedSeries::new(self.coeffs[..=order].to_vec())
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries::new(self.coeffs.iter().map(f).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_order(self.order(), other.order())?;
        Ok(TruncatedSeries::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_order(self.order(), other.order())?;
        Ok(TruncatedSeries::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        ))
    }

    pub fn neg(&self) -> Self {
        self.map(C::neg)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|x| x.scale(c))
    }

    /// Cauchy product, keeping the order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        same_order(self.order(), other.order())?;
        let d = self.order();
        let mut out = vec![C::zero(); d + 1];
        for (p, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (q, b) in other.coeffs[..=d - p].iter().enumerate() {
                if !b.is_zero() {
                    out[p + q].add_assign(&a.mul(b));
                }
            }
        }
        Ok(TruncatedSeries::new(out))
    }

    /// Product with a series of scalars, which commute with everything.
    pub fn mul_scalar_series(&self, s: &TruncatedSeries<Rational>) -> Result<Self> {
        same_order(self.order(), s.order())?;
        let d = self.order();
        let mut out = vec![C::zero(); d + 1];
        for (p, a) in s.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (q, b) in self.coeffs[..=d - p].iter().enumerate() {
                out[p + q].add_scaled(b, a);
            }
        }
        Ok(TruncatedSeries::new(out))
    }

    /// `s(-u)`: the coefficient of `u^{-m}` picks up `(-1)^m`.
    pub fn neg_u(&self) -> Self {
        TruncatedSeries::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(m, c)| if m % 2 == 1 { c.neg() } else { c.clone() })
                .collect(),
        )
    }

    /// `s(u + c)`, using `(u+c)^{-r} = sum_{m>=r} C(m-1, r-1) (-c)^{m-r} u^{-m}`.
    pub fn shift(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let d = self.order();
        let minus_c = -c;
        let powers: Vec<Rational> = (0..=d).map(|k| minus_c.pow(k as u32)).collect();
        let mut out = vec![C::zero(); d + 1];
        out[0] = self.coeffs[0].clone();
        for r in 1..=d {
            let src = &self.coeffs[r];
            if src.is_zero() {
                continue;
            }
            for m in r..=d {
                let k = Rational::binomial(m - 1, r - 1) * &powers[m - r];
                out[m].add_scaled(src, &k);
            }
        }
        TruncatedSeries::new(out)
    }

    /// `s(-u + c)`.
    pub fn reflect(&self, c: &Rational) -> Self {
        self.neg_u().shift(&-c)
    }

    /// The two-sided inverse; needs `c_0` to be an invertible scalar.
    pub fn invert(&self) -> Result<Self> {
        let a = self.coeffs[0]
            .as_scalar()
            .ok_or(Error::NotInvertible)?
            .recip()
            .map_err(|_| Error::NotInvertible)?;
        let d = self.order();
        let mut out: Vec<C> = Vec::with_capacity(d + 1);
        out.push(C::from_rational(a.clone()));
        let minus_a = -&a;
        for m in 1..=d {
            let mut acc = C::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() && !out[m - k].is_zero() {
                    acc.add_assign(&self.coeffs[k].mul(&out[m - k]));
                }
            }
            out.push(acc.scale(&minus_a));
        }
        Ok(TruncatedSeries::new(out))
    }
}

impl<C: Coefficient + Serialize> Serialize for TruncatedSeries<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TruncatedSeries", 2)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("coeffs", &self.coeffs)?;
        st.end()
    }
}

/// An `n x n` matrix of series sharing one truncation order. Indices are
/// zero-based.
#[derive(Clone, PartialEq, Debug)]
pub struct MatrixSeries<C> {
    n: usize,
    entries: Vec<TruncatedSeries<C>>,
}

impl<C: Coefficient> MatrixSeries<C> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> TruncatedSeries<C>) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        let order = entries.first().map_or(0, TruncatedSeries::order);
        assert!(
            entries.iter().all(|e| e.order() == order),
            "entries must share the truncation order"
        );
        MatrixSeries { n, entries }
    }

    pub fn zero(n: usize, order: usize) -> Self {
        MatrixSeries::from_fn(n, |_, _| TruncatedSeries::zero(order))
    }

    pub fn identity(n: usize, order: usize) -> Self {
        MatrixSeries::from_fn(n, |i, j| {
            if i == j {
                TruncatedSeries::one(order)
            } else {
                TruncatedSeries::zero(order)
            }
        })
    }

    /// The constant matrix `g`.
    pub fn constant(g: &QMatrix, order: usize) -> Self {
        MatrixSeries::from_fn(g.rows(), |i, j| {
            TruncatedSeries::constant(C::from_rational(g[(i, j)].clone()), order)
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.entries.first().map_or(0, TruncatedSeries::order)
    }

    pub fn get(&self, i: usize, j: usize) -> &TruncatedSeries<C> {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: TruncatedSeries<C>) {
        assert_eq!(s.order(), self.order());
        self.entries[i * self.n + j] = s;
    }

    pub fn entries(&self) -> &[TruncatedSeries<C>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(TruncatedSeries::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    /// The coefficient matrix of `u^{-m}`.
    pub fn coeff_matrix(&self, m: usize) -> Vec<C> {
        self.entries.iter().map(|e| e.coeff(m).clone()).collect()
    }

    pub fn map(&self, f: impl Fn(&TruncatedSeries<C>) -> TruncatedSeries<C>) -> Self {
        MatrixSeries {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(MatrixSeries { n: self.n, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<_>>()?;
        Ok(MatrixSeries { n: self.n, entries })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = TruncatedSeries::zero(self.order());
                for a in 0..n {
                    let (x, y) = (self.get(i, a), other.get(a, j));
                    if x.is_zero() || y.is_zero() {
                        continue;
                    }
                    acc = acc.add(&x.mul(y)?)?;
                }
                entries.push(acc);
            }
        }
        Ok(MatrixSeries { n, entries })
    }

    pub fn neg_u(&self) -> Self {
        self.map(TruncatedSeries::neg_u)
    }

    pub fn shift(&self, c: &Rational) -> Self {
        self.map(|e| e.shift(c))
    }

    /// Every entry multiplied by the scalar series `g`.
    pub fn mul_scalar_series(&self, g: &TruncatedSeries<Rational>) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.mul_scalar_series(g))
            .collect::<Result<_>>()?;
        Ok(MatrixSeries { n: self.n, entries })
    }

    /// Multiplication on the right by a constant rational matrix.
    pub fn mul_constant_right(&self, g: &QMatrix) -> Self {
        MatrixSeries::from_fn(self.n, |i, j| {
            let mut acc = TruncatedSeries::zero(self.order());
            for a in 0..self.n {
                let k = &g[(a, j)];
                if !k.is_zero() {
                    acc = acc.add(&self.get(i, a).scale(k)).expect("same order");
                }
            }
            acc
        })
    }

    /// Inverse by `R_0 = M_0^{-1}`, `R_m = -M_0^{-1} sum_{k=1}^m M_k R_{m-k}`.
    /// The constant term must be an invertible matrix of scalars.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let d = self.order();
        let m0 = QMatrix::from_rows(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| self.get(i, j).coeff(0).as_scalar().ok_or(Error::NotInvertible))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?,
        );
        let m0inv = m0.inverse()?;
        let coeff = |m: usize| self.coeff_matrix(m);
        let mut r: Vec<Vec<C>> = Vec::with_capacity(d + 1);
        r.push(
            (0..n * n)
                .map(|k| C::from_rational(m0inv[(k / n, k % n)].clone()))
                .collect(),
        );
        for m in 1..=d {
            // s = sum_k M_k R_{m-k}
            let mut s = vec![C::zero(); n * n];
            for k in 1..=m {
                let mk = coeff(k);
                let rk = &r[m - k];
                for i in 0..n {
                    for a in 0..n {
                        let x = &mk[i * n + a];
                        if x.is_zero() {
                            continue;
                        }
                        for j in 0..n {
                            let y = &rk[a * n + j];
                            if !y.is_zero() {
                                s[i * n + j].add_assign(&x.mul(y));
                            }
                        }
                    }
                }
            }
            let mut next = vec![C::zero(); n * n];
            for i in 0..n {
                for a in 0..n {
                    let k = -&m0inv[(i, a)];
                    if k.is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        next[i * n + j].add_scaled(&s[a * n + j], &k);
                    }
                }
            }
            r.push(next);
        }
        Ok(MatrixSeries::from_fn(n, |i, j| {
            TruncatedSeries::new(r.iter().map(|rm| rm[i * n + j].clone()).collect())
        }))
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "{0}x{0} vs {1}x{1}",
                self.n, other.n
            )));
        }
        same_order(self.order(), other.order())
    }
}

impl<C: Coefficient + Serialize> Serialize for MatrixSeries<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[TruncatedSeries<C>]> = self.entries.chunks(self.n.max(1)).collect();
        rows.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qs(v: &[i64]) -> TruncatedSeries<Rational> {
        TruncatedSeries::new(v.iter().map(|&x| Rational::from_int(x)).collect())
    }

    #[test]
    fn neg_u_flips_odd_coefficients() {
        assert_eq!(qs(&[1, 3, 5, 7]).neg_u(), qs(&[1, -3, 5, -7]));
    }

    #[test]
    fn shift_of_inverse_u_is_geometric() {
        // u^{-1} at u - 1 is 1/(u-1) = u^{-1} + u^{-2} + ...
        assert_eq!(qs(&[0, 1, 0, 0, 0]).shift(&-Rational::one()), qs(&[0, 1, 1, 1, 1]));
    }

    #[test]
    fn shift_matches_rational_expansion() {
        // (u+2)/(u-3) shifted by 1/2 against direct expansion of (u+5/2)/(u-5/2)
        let f = RationalFunction::mobius(1, 2, 1, -3).unwrap();
        let c = Rational::new(1, 2);
        let s = TruncatedSeries::<Rational>::from_rational_function(&f, 6).unwrap();
        let direct = TruncatedSeries::from_rational_function(&f.shift(&c), 6).unwrap();
        assert_eq!(s.shift(&c), direct);
        assert_eq!(s.reflect(&c), TruncatedSeries::from_rational_function(&f.reflect(&c), 6).unwrap());
    }

    #[test]
    fn inverse_of_geometric() {
        let s = qs(&[1, -1, 0, 0]);
        assert_eq!(s.invert().unwrap(), qs(&[1, 1, 1, 1]));
        assert_eq!(qs(&[0, 1]).invert(), Err(Error::NotInvertible));
    }

    #[test]
    fn order_mismatch_is_reported() {
        assert_eq!(qs(&[1, 2]).mul(&qs(&[1, 2, 3])), Err(Error::OrderMismatch(1, 2)));
    }

    #[test]
    fn matrix_inverse_with_nonidentity_constant() {
        let g = QMatrix::diagonal(&[Rational::one(), -Rational::one()]);
        let m = MatrixSeries::from_fn(2, |i, j| {
            let c0 = g[(i, j)].to_i64().unwrap();
            qs(&[c0, (i + 2 * j) as i64 + 1, i as i64 - j as i64, 3])
        });
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());
    }
}
