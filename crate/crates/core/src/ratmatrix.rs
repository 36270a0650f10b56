//! Dense matrices over the field of rational functions in `u`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poly::Polynomial;
use crate::ratfunc::RationalFunction;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RationalFunction>,
}

impl RMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMatrix {
            rows,
            cols,
            data: vec![RationalFunction::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        RMatrix::from_fn(n, n, |i, j| if i == j { RationalFunction::one() } else { RationalFunction::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RationalFunction) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RMatrix { rows, cols, data }
    }

    pub fn from_constant(m: &QMatrix) -> Self {
        RMatrix::from_fn(m.rows(), m.cols(), |i, j| RationalFunction::constant(m[(i, j)].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalFunction {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: RationalFunction) {
        self.data[i * self.cols + j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RationalFunction::is_zero)
    }

    pub fn map(&self, f: impl Fn(&RationalFunction) -> RationalFunction) -> Self {
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Every entry with `u` replaced by `-u + c`.
    pub fn reflect(&self, c: &Rational) -> Self {
        self.map(|x| x.reflect(c))
    }

    pub fn scale(&self, x: &RationalFunction) -> Self {
        self.map(|e| e * x)
    }

    pub fn add(&self, other: &RMatrix) -> RMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &RMatrix) -> RMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &RMatrix) -> RMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = RMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[RationalFunction]) -> Vec<RationalFunction> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = RationalFunction::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// `self ⊗ other` with the first factor's index most significant.
    pub fn kron(&self, other: &RMatrix) -> RMatrix {
        RMatrix::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            let a = self.get(r / other.rows, c / other.cols);
            if a.is_zero() {
                return RationalFunction::zero();
            }
            a * other.get(r % other.rows, c % other.cols)
        })
    }

    /// Gauss-Jordan elimination over the function field, every entry kept
    /// reduced.
    pub fn inverse(&self) -> Result<RMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotInvertible);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a.get(r, col).is_zero())
                .min_by_key(|&r| complexity(a.get(r, col)))
                .ok_or(Error::NotInvertible)?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a.get(col, col).invert()?;
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                a.sub_row_multiple(r, col, &f);
                inv.sub_row_multiple(r, col, &f);
            }
        }
        Ok(inv)
    }

    /// Common denominator `D` of all entries and the coefficient matrices
    /// `N_0, N_1, ...` of the polynomial matrix `D * self`.
    pub fn numerator_coefficients(&self) -> (Polynomial, Vec<QMatrix>) {
        let mut den = Polynomial::one();
        for x in &self.data {
            if !x.is_zero() {
                let g = den.gcd(x.den());
                den = (&den * x.den()).div_exact(&g);
            }
        }
        let nums: Vec<Polynomial> = self
            .data
            .iter()
            .map(|x| {
                if x.is_zero() {
                    Polynomial::zero()
                } else {
                    &den.div_exact(x.den()) * x.num()
                }
            })
            .collect();
        let top = nums.iter().filter_map(Polynomial::degree).max();
        let coeffs = match top {
            None => Vec::new(),
            Some(t) => (0..=t)
                .map(|k| {
                    QMatrix::from_rows(
                        (0..self.rows)
                            .map(|i| (0..self.cols).map(|j| nums[i * self.cols + j].coeff(k)).collect())
                            .collect(),
                    )
                })
                .collect(),
        };
        (den, coeffs)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn scale_row(&mut self, r: usize, x: &RationalFunction) {
        for c in 0..self.cols {
            let v = self.get(r, c) * x;
            self.set(r, c, v);
        }
    }

    fn sub_row_multiple(&mut self, target: usize, src: usize, f: &RationalFunction) {
        for c in 0..self.cols {
            let s = self.get(src, c);
            if s.is_zero() {
                continue;
            }
            let v = self.get(target, c) - &(s * f);
            self.set(target, c, v);
        }
    }
}

fn complexity(x: &RationalFunction) -> usize {
    x.num().degree().unwrap_or(0) + x.den().degree().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(a: i64, b: i64, c: i64, d: i64) -> RationalFunction {
        RationalFunction::mobius(a, b, c, d).unwrap()
    }

    #[test]
    fn inverse_round_trip() {
        let m = RMatrix::from_fn(3, 3, |i, j| rf(1, (i + 2 * j) as i64, 1, -(i as i64) - 1));
        let m = m.add(&RMatrix::identity(3));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RMatrix::identity(3));
        assert_eq!(inv.mul(&m), RMatrix::identity(3));
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let x = rf(1, 1, 1, -1);
        let m = RMatrix::from_fn(2, 2, |_, _| x.clone());
        assert_eq!(m.inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn numerator_coefficients_reassemble() {
        let m = RMatrix::from_fn(2, 2, |i, j| rf(1, i as i64, 1, j as i64 + 1));
        let (den, coeffs) = m.numerator_coefficients();
        assert_eq!(den, Polynomial::from_ints(&[2, 3, 1]));
        assert_eq!(coeffs.len(), 3);
        // entry (0,0) = u/(u+1), so D * entry = u (u+2) = u^2 + 2u
        assert_eq!(coeffs[1][(0, 0)], Rational::from_int(2));
        assert_eq!(coeffs[2][(0, 0)], Rational::one());
    }

    #[test]
    fn kron_shape() {
        let a = RMatrix::identity(2);
        let b = RMatrix::from_fn(3, 3, |i, j| RationalFunction::from_int((i * 3 + j) as i64));
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (6, 6));
        assert_eq!(k.get(4, 5), b.get(1, 2));
        assert!(k.get(1, 4).is_zero());
    }
}
