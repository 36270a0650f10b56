//! Sparse operators on `(C^n)^{⊗m}` with entries in any coefficient ring.
//!
//! Basis vectors are multi-indices `(k_1, ..., k_m)`, zero-based, flattened
//! with the first tensor slot most significant.

use std::collections::BTreeMap;

use crate::coeff::Coefficient;
use crate::error::Result;
use crate::rational::Rational;
use crate::series::{MatrixSeries, TruncatedSeries};

#[derive(Clone, Debug, PartialEq)]
pub struct Operator<E> {
    n: usize,
    m: usize,
    entries: BTreeMap<(usize, usize), E>,
}

pub fn flatten(n: usize, idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &k| acc * n + k)
}

pub fn unflatten(n: usize, m: usize, mut x: usize) -> Vec<usize> {
    let mut idx = vec![0; m];
    for s in (0..m).rev() {
        idx[s] = x % n;
        x /= n;
    }
    idx
}

/// All permutations of `0..m` with their signs, in lexicographic order.
pub fn permutations(m: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i64)>) {
        let m = used.len();
        if prefix.len() == m {
            let mut inversions = 0;
            for a in 0..m {
                for b in a + 1..m {
                    if prefix[a] > prefix[b] {
                        inversions += 1;
                    }
                }
            }
            out.push((prefix.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for k in 0..m {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                rec(prefix, used, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

impl<E: Coefficient> Operator<E> {
    pub fn zero(n: usize, m: usize) -> Self {
        Operator {
            n,
            m,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize, m: usize) -> Self {
        Operator::scalar(n, m, E::one())
    }

    pub fn scalar(n: usize, m: usize, c: E) -> Self {
        let mut op = Operator::zero(n, m);
        if !c.is_zero() {
            for x in 0..n.pow(m as u32) {
                op.entries.insert((x, x), c.clone());
            }
        }
        op
    }

    /// The matrix `a` (given entrywise) acting in tensor slot `slot`.
    pub fn in_slot(n: usize, m: usize, slot: usize, a: impl Fn(usize, usize) -> E) -> Self {
        let mut op = Operator::zero(n, m);
        let dim = n.pow(m as u32);
        for col in 0..dim {
            let idx = unflatten(n, m, col);
            for k in 0..n {
                let e = a(k, idx[slot]);
                if e.is_zero() {
                    continue;
                }
                let mut ridx = idx.clone();
                ridx[slot] = k;
                op.entries.insert((flatten(n, &ridx), col), e);
            }
        }
        op
    }

    /// `sum_{a,b,c,d} x(a,b,c,d) E_ab ⊗ E_cd` acting in slots `s` and `t`.
    pub fn in_two_slots(
        n: usize,
        m: usize,
        s: usize,
        t: usize,
        x: impl Fn(usize, usize, usize, usize) -> E,
    ) -> Self {
        assert_ne!(s, t);
        let mut op = Operator::zero(n, m);
        let dim = n.pow(m as u32);
        for col in 0..dim {
            let idx = unflatten(n, m, col);
            for a in 0..n {
                for c in 0..n {
                    let e = x(a, idx[s], c, idx[t]);
                    if e.is_zero() {
                        continue;
                    }
                    let mut ridx = idx.clone();
                    ridx[s] = a;
                    ridx[t] = c;
                    op.entries.insert((flatten(n, &ridx), col), e);
                }
            }
        }
        op
    }

    /// The flip of slots `s` and `t`.
    pub fn swap(n: usize, m: usize, s: usize, t: usize) -> Self {
        Operator::in_two_slots(n, m, s, t, |a, b, c, d| {
            if a == d && b == c {
                E::one()
            } else {
                E::zero()
            }
        })
    }

    /// The operator moving the factor in slot `k` to slot `p[k]`.
    pub fn permutation(n: usize, p: &[usize]) -> Self {
        let m = p.len();
        let mut op = Operator::zero(n, m);
        for col in 0..n.pow(m as u32) {
            let idx = unflatten(n, m, col);
            let mut ridx = vec![0; m];
            for k in 0..m {
                ridx[p[k]] = idx[k];
            }
            op.entries.insert((flatten(n, &ridx), col), E::one());
        }
        op
    }

    /// `sum_p sgn(p) P_p` without normalization.
    pub fn antisymmetrizer(n: usize, m: usize) -> Self {
        let mut op = Operator::zero(n, m);
        for (p, sign) in permutations(m) {
            op = op.add(&Operator::permutation(n, &p).scale(&Rational::from_int(sign)));
        }
        op
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n.pow(self.m as u32)
    }

    pub fn get(&self, row: usize, col: usize) -> E {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(E::zero)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), E> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(E::is_zero)
    }

    pub fn map<F: Coefficient>(&self, f: impl Fn(&E) -> F) -> Operator<F> {
        Operator {
            n: self.n,
            m: self.m,
            entries: self
                .entries
                .iter()
                .map(|(k, e)| (*k, f(e)))
                .filter(|(_, e)| !e.is_zero())
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|e| e.scale(c))
    }

    fn combine(&self, other: &Self, c: &Rational) -> Self {
        assert_eq!((self.n, self.m), (other.n, other.m), "operator shape mismatch");
        let mut entries = self.entries.clone();
        for (k, e) in &other.entries {
            let slot = entries.entry(*k).or_insert_with(E::zero);
            slot.add_scaled(e, c);
            if slot.is_zero() {
                entries.remove(k);
            }
        }
        Operator {
            n: self.n,
            m: self.m,
            entries,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, &Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, &-Rational::one())
    }

    /// `self * other`, keeping entry products in that order.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!((self.n, self.m), (other.n, other.m), "operator shape mismatch");
        let mut by_row: BTreeMap<usize, Vec<(usize, &E)>> = BTreeMap::new();
        for ((r, c), e) in &other.entries {
            by_row.entry(*r).or_default().push((*c, e));
        }
        let mut entries: BTreeMap<(usize, usize), E> = BTreeMap::new();
        for ((r, k), x) in &self.entries {
            if let Some(row) = by_row.get(k) {
                for (c, y) in row {
                    let p = x.mul(y);
                    if p.is_zero() {
                        continue;
                    }
                    entries.entry((*r, *c)).or_insert_with(E::zero).add_assign(&p);
                }
            }
        }
        entries.retain(|_, e| !e.is_zero());
        Operator {
            n: self.n,
            m: self.m,
            entries,
        }
    }

    /// `self * v` for a column vector, with entry products `self_rc * v_c`.
    pub fn apply(&self, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.dim());
        let mut out = vec![E::zero(); v.len()];
        for ((r, c), e) in &self.entries {
            if !v[*c].is_zero() {
                out[*r].add_assign(&e.mul(&v[*c]));
            }
        }
        out
    }
}

/// `M` acting in tensor slot `slot` on a vector of series.
pub fn apply_in_slot<C: Coefficient>(
    n: usize,
    m: usize,
    slot: usize,
    mat: &MatrixSeries<C>,
    v: &[TruncatedSeries<C>],
) -> Result<Vec<TruncatedSeries<C>>> {
    let order = mat.order();
    let mut out = vec![TruncatedSeries::zero(order); v.len()];
    for (col, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let idx = unflatten(n, m, col);
        for k in 0..n {
            let e = mat.get(k, idx[slot]);
            if e.is_zero() {
                continue;
            }
            let mut ridx = idx.clone();
            ridx[slot] = k;
            let r = flatten(n, &ridx);
            out[r] = out[r].add(&e.mul(x)?)?;
        }
    }
    Ok(out)
}

/// The entries of `v` permuted by the flip of slots `s` and `t`.
pub fn swap_slots<T: Clone>(n: usize, m: usize, s: usize, t: usize, v: &[T]) -> Vec<T> {
    (0..v.len())
        .map(|x| {
            let mut idx = unflatten(n, m, x);
            idx.swap(s, t);
            v[flatten(n, &idx)].clone()
        })
        .collect()
}

/// `v - f * P_st v` for a scalar series `f`.
pub fn apply_r_factor<C: Coefficient>(
    n: usize,
    m: usize,
    s: usize,
    t: usize,
    f: &TruncatedSeries<Rational>,
    v: &[TruncatedSeries<C>],
) -> Result<Vec<TruncatedSeries<C>>> {
    let swapped = swap_slots(n, m, s, t, v);
    v.iter()
        .zip(&swapped)
        .map(|(x, y)| x.sub(&y.mul_scalar_series(f)?))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flatten_round_trip() {
        for x in 0..27 {
            assert_eq!(flatten(3, &unflatten(3, 3, x)), x);
        }
        assert_eq!(flatten(3, &[1, 0, 2]), 11);
    }

    #[test]
    fn permutation_signs() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.iter().map(|x| x.1).sum::<i64>(), 0);
        assert_eq!(p[1], (vec![0, 2, 1], -1));
    }

    #[test]
    fn swaps_generate_permutations() {
        let p12: Operator<Rational> = Operator::swap(2, 3, 0, 1);
        let p23 = Operator::swap(2, 3, 1, 2);
        assert_eq!(p12.mul(&p12), Operator::identity(2, 3));
        // braid relation
        assert_eq!(p12.mul(&p23).mul(&p12), p23.mul(&p12).mul(&p23));
        assert_eq!(Operator::<Rational>::permutation(2, &[1, 0, 2]), p12);
    }

    #[test]
    fn antisymmetrizer_is_a_quasi_idempotent() {
        let a: Operator<Rational> = Operator::antisymmetrizer(3, 3);
        assert_eq!(a.mul(&a), a.scale(&Rational::from_int(6)));
        // one-dimensional image for m = n
        let ones: Vec<Rational> = (0..27).map(|k| Rational::from_int(k as i64 % 5)).collect();
        let img = a.apply(&ones);
        let e = flatten(3, &[0, 1, 2]);
        for x in 0..27 {
            let idx = unflatten(3, 3, x);
            let mut sorted = idx.clone();
            sorted.sort();
            if sorted != vec![0, 1, 2] {
                assert!(img[x].is_zero());
            } else {
                assert_eq!(img[x].abs(), img[e].abs());
            }
        }
    }
}
