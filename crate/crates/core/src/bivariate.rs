//! Two-parameter identities after clearing denominators.
//!
//! Both sides of a relation such as `R(u-v) T_1(u) T_2(v) = T_2(v) T_1(u) R(u-v)`
//! are first built as operators whose entries are [`SymExpr`]s: polynomials in
//! `u, v` times ordered words in matrix-entry symbols like `T(u)_{ab}`. The
//! difference is then expanded coefficient by coefficient over the window of
//! exponents `(e_u, e_v)` that the truncated series determine exactly, each
//! product of series coefficients being computed once and normalized in Y(n).

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;
use serde::Serialize;
use smallvec::SmallVec;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::ncpoly::NCPolynomial;
use crate::operator::Operator;
use crate::rational::Rational;
use crate::series::MatrixSeries;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    U,
    V,
}

/// Entry `(i, j)` of the matrix series registered under `mat`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym {
    pub mat: u8,
    pub i: u8,
    pub j: u8,
}

/// A polynomial in `u` and `v`: exponent pairs to coefficients.
pub type BiPoly = BTreeMap<(u32, u32), Rational>;

type Word = SmallVec<[Sym; 2]>;

/// A sum of `p(u, v) * s_1 s_2 ... s_k`, the symbols kept in order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SymExpr {
    terms: BTreeMap<Word, BiPoly>,
}

fn bipoly_add_scaled(target: &mut BiPoly, p: &BiPoly, c: &Rational) {
    for (e, x) in p {
        let slot = target.entry(*e).or_insert_with(Rational::zero);
        *slot += &(x * c);
        if slot.is_zero() {
            target.remove(e);
        }
    }
}

fn bipoly_mul(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let mut out = BiPoly::new();
    for ((au, av), x) in a {
        for ((bu, bv), y) in b {
            let slot = out.entry((au + bu, av + bv)).or_insert_with(Rational::zero);
            *slot += &(x * y);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

impl SymExpr {
    /// `x u^a v^b` with no symbols.
    pub fn monomial(x: Rational, a: u32, b: u32) -> Self {
        let mut p = BiPoly::new();
        if !x.is_zero() {
            p.insert((a, b), x);
        }
        SymExpr::from_parts(Word::new(), p)
    }

    /// `x_u u + x_v v + x_1`.
    pub fn linear(x_u: i64, x_v: i64, x_1: i64) -> Self {
        SymExpr::monomial(Rational::from_int(x_u), 1, 0)
            .add(&SymExpr::monomial(Rational::from_int(x_v), 0, 1))
            .add(&SymExpr::monomial(Rational::from_int(x_1), 0, 0))
    }

    pub fn symbol(s: Sym) -> Self {
        let mut p = BiPoly::new();
        p.insert((0, 0), Rational::one());
        let mut w = Word::new();
        w.push(s);
        SymExpr::from_parts(w, p)
    }

    fn from_parts(w: Word, p: BiPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_empty() {
            terms.insert(w, p);
        }
        SymExpr { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Sym], &BiPoly)> {
        self.terms.iter().map(|(w, p)| (w.as_slice(), p))
    }
}

impl Coefficient for SymExpr {
    fn zero() -> Self {
        SymExpr::default()
    }
    fn one() -> Self {
        SymExpr::monomial(Rational::one(), 0, 0)
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
        let mut out = SymExpr::default();
        for (wa, pa) in &self.terms {
            for (wb, pb) in &other.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                let p = bipoly_mul(pa, pb);
                let mut single = BTreeMap::new();
                single.insert(w, p);
                out.add_scaled(&SymExpr { terms: single }, &Rational::one());
            }
        }
        out
    }
    fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return SymExpr::default();
        }
        SymExpr {
            terms: self
                .terms
                .iter()
                .map(|(w, p)| (w.clone(), p.iter().map(|(e, x)| (*e, x * c)).collect()))
                .collect(),
        }
    }
    fn from_rational(c: Rational) -> Self {
        SymExpr::monomial(c, 0, 0)
    }
    fn as_scalar(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (w, p) = self.terms.iter().next().unwrap();
                if !w.is_empty() || p.len() != 1 {
                    return None;
                }
                let ((a, b), x) = p.iter().next().unwrap();
                (*a == 0 && *b == 0).then(|| x.clone())
            }
            _ => None,
        }
    }
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (w, p) in &other.terms {
            let slot = self.terms.entry(w.clone()).or_default();
            bipoly_add_scaled(slot, p, c);
            if slot.is_empty() {
                self.terms.remove(w);
            }
        }
    }
}

/// The matrix series that symbols refer to, each tied to one variable.
#[derive(Default)]
pub struct SymbolTable<'a> {
    mats: Vec<(Var, &'a MatrixSeries<NCPolynomial>)>,
}

impl<'a> SymbolTable<'a> {
    pub fn new() -> Self {
        SymbolTable { mats: Vec::new() }
    }

    /// Registers `m` as a function of `var` and returns its handle.
    pub fn register(&mut self, var: Var, m: &'a MatrixSeries<NCPolynomial>) -> u8 {
        if let Some((_, first)) = self.mats.first() {
            assert_eq!(first.order(), m.order(), "symbols must share the truncation order");
        }
        self.mats.push((var, m));
        (self.mats.len() - 1) as u8
    }

    /// Operator in `slot` of `(C^n)^{⊗m}` whose entries are the symbols of `mat`.
    pub fn operator(&self, mat: u8, m: usize, slot: usize) -> Operator<SymExpr> {
        let n = self.mats[mat as usize].1.n();
        let src = self.mats[mat as usize].1;
        Operator::in_slot(n, m, slot, |a, b| {
            if src.get(a, b).is_zero() {
                SymExpr::default()
            } else {
                SymExpr::symbol(Sym {
                    mat,
                    i: a as u8,
                    j: b as u8,
                })
            }
        })
    }

    fn order(&self) -> usize {
        self.mats.first().map_or(0, |m| m.1.order())
    }

    fn var(&self, s: Sym) -> Var {
        self.mats[s.mat as usize].0
    }

    fn coeff(&self, s: Sym, r: usize) -> &NCPolynomial {
        self.mats[s.mat as usize].1.get(s.i as usize, s.j as usize).coeff(r)
    }
}

/// The nonzero coefficients of `LHS - RHS` on the exact window.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct BivariateResidual {
    /// Inclusive exponent ranges `[lo, hi]` for `u` and `v`.
    pub window_u: (i64, i64),
    pub window_v: (i64, i64),
    /// Number of `(entry, e_u, e_v)` coefficients compared.
    pub checked: usize,
    /// `(row, col, e_u, e_v)` to the nonzero coefficient.
    #[serde(serialize_with = "serialize_residual_map")]
    pub nonzero: BTreeMap<(usize, usize, i64, i64), NCPolynomial>,
}

fn serialize_residual_map<S: serde::Serializer>(
    m: &BTreeMap<(usize, usize, i64, i64), NCPolynomial>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Rec<'a> {
        row: usize,
        col: usize,
        e_u: i64,
        e_v: i64,
        coeff: &'a NCPolynomial,
    }
    let recs: Vec<Rec> = m
        .iter()
        .map(|(&(row, col, e_u, e_v), coeff)| Rec {
            row,
            col,
            e_u,
            e_v,
            coeff,
        })
        .collect();
    recs.serialize(s)
}

impl BivariateResidual {
    pub fn is_zero(&self) -> bool {
        self.nonzero.is_empty()
    }
}

/// Largest total exponent allowed in the cleared scalar factors.
pub const MAX_CLEARED_DEGREE: u32 = 2;

type ProductKey = SmallVec<[(Sym, u8); 3]>;

/// Expands `sum_entries (lhs - rhs)` coefficient-wise and normalizes.
pub fn residual(
    diffs: &[((usize, usize), SymExpr)],
    table: &SymbolTable<'_>,
) -> Result<BivariateResidual> {
    let d = table.order() as i64;
    let (mut eu, mut ev) = (0u32, 0u32);
    for (_, e) in diffs {
        for (_, p) in e.terms() {
            for &(a, b) in p.keys() {
                eu = eu.max(a);
                ev = ev.max(b);
            }
        }
    }
    if eu > MAX_CLEARED_DEGREE || ev > MAX_CLEARED_DEGREE {
        return Err(Error::InvalidArgument(format!(
            "cleared factors of degree ({eu}, {ev}) exceed the window bound {MAX_CLEARED_DEGREE}"
        )));
    }
    let window_u = (eu as i64 - d, eu as i64);
    let window_v = (ev as i64 - d, ev as i64);
    let mut out = BivariateResidual {
        window_u,
        window_v,
        ..Default::default()
    };
    let mut cache: FxHashMap<ProductKey, NCPolynomial> = FxHashMap::default();
    for ((row, col), e) in diffs {
        for e_u in window_u.0..=window_u.1 {
            for e_v in window_v.0..=window_v.1 {
                out.checked += 1;
                let mut acc = NCPolynomial::zero();
                for (word, p) in e.terms() {
                    for (&(a, b), x) in p {
                        let need_u = a as i64 - e_u;
                        let need_v = b as i64 - e_v;
                        if need_u < 0 || need_v < 0 {
                            continue;
                        }
                        for key in distribute(word, table, need_u as usize, need_v as usize) {
                            let prod = cache
                                .entry(key.clone())
                                .or_insert_with(|| product(&key, table));
                            acc.add_scaled(prod, x);
                        }
                    }
                }
                if !acc.is_zero() {
                    out.nonzero.insert((*row, *col, e_u, e_v), acc);
                }
            }
        }
    }
    Ok(out)
}

/// All ways of assigning series indices to the symbols of `word` so that the
/// `u`-symbols sum to `need_u` and the `v`-symbols to `need_v`.
fn distribute(word: &[Sym], table: &SymbolTable<'_>, need_u: usize, need_v: usize) -> Vec<ProductKey> {
    let d = table.order();
    let mut out = Vec::new();
    let mut cur = ProductKey::new();
    fn rec(
        word: &[Sym],
        table: &SymbolTable<'_>,
        d: usize,
        left: [usize; 2],
        cur: &mut ProductKey,
        out: &mut Vec<ProductKey>,
    ) {
        let Some((&s, rest)) = word.split_first() else {
            if left == [0, 0] {
                out.push(cur.clone());
            }
            return;
        };
        let slot = match table.var(s) {
            Var::U => 0,
            Var::V => 1,
        };
        let later = rest.iter().any(|&t| table.var(t) == table.var(s));
        let range: Vec<usize> = if later {
            (0..=left[slot].min(d)).collect()
        } else if left[slot] <= d {
            vec![left[slot]]
        } else {
            vec![]
        };
        for r in range {
            if table.coeff(s, r).is_zero() {
                continue;
            }
            let mut l = left;
            l[slot] -= r;
            cur.push((s, r as u8));
            rec(rest, table, d, l, cur, out);
            cur.pop();
        }
    }
    rec(word, table, d, [need_u, need_v], &mut cur, &mut out);
    out
}

fn product(key: &ProductKey, table: &SymbolTable<'_>) -> NCPolynomial {
    let mut acc = NCPolynomial::one();
    for &(s, r) in key {
        acc = acc.mul(table.coeff(s, r as usize));
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// Pairs up the entries of two operators as `lhs - rhs` differences.
pub fn operator_difference(lhs: &Operator<SymExpr>, rhs: &Operator<SymExpr>) -> Vec<((usize, usize), SymExpr)> {
    lhs.sub(rhs)
        .entries()
        .iter()
        .map(|(k, e)| (*k, e.clone()))
        .collect()
}
