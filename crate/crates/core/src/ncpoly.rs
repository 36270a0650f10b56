//! Elements of Y(n) in PBW normal form.
//!
//! A generator `t_ij^(r)` is packed into a `u16` as `r << 8 | i << 4 | j`, so
//! the derived order is the lexicographic order on `(r, i, j)`. A word is in
//! normal form when its letters are non-decreasing in that order.

use std::cell::RefCell;
use std::fmt;
use std::rc::Rc;

use rustc_hash::FxHashMap;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::coeff::Coefficient;
use crate::rational::Rational;

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenIndex(u16);

impl GenIndex {
    pub const MAX_INDEX: usize = 15;
    pub const MAX_MODE: usize = 255;

    pub fn new(i: usize, j: usize, r: usize) -> Self {
        assert!(
            (1..=Self::MAX_INDEX).contains(&i)
                && (1..=Self::MAX_INDEX).contains(&j)
                && (1..=Self::MAX_MODE).contains(&r),
            "generator index out of range: t_{i}{j}^({r})"
        );
        GenIndex(((r << 8) | (i << 4) | j) as u16)
    }

    pub fn i(self) -> usize {
        ((self.0 >> 4) & 0xf) as usize
    }

    pub fn j(self) -> usize {
        (self.0 & 0xf) as usize
    }

    pub fn r(self) -> usize {
        (self.0 >> 8) as usize
    }
}

impl fmt::Display for GenIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}{}^({})", self.i(), self.j(), self.r())
    }
}

impl fmt::Debug for GenIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for GenIndex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.i(), self.j(), self.r()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for GenIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [i, j, r] = <[usize; 3]>::deserialize(d)?;
        if !(1..=Self::MAX_INDEX).contains(&i)
            || !(1..=Self::MAX_INDEX).contains(&j)
            || !(1..=Self::MAX_MODE).contains(&r)
        {
            return Err(D::Error::custom(format!("bad generator [{i},{j},{r}]")));
        }
        Ok(GenIndex::new(i, j, r))
    }
}

pub type Letters = SmallVec<[GenIndex; 8]>;

/// A word in the generators. The empty word is the unit.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NCMonomial(Letters);

impl NCMonomial {
    pub fn unit() -> Self {
        NCMonomial(Letters::new())
    }

    pub fn new(letters: &[GenIndex]) -> Self {
        NCMonomial(Letters::from_slice(letters))
    }

    pub fn gen(g: GenIndex) -> Self {
        let mut l = Letters::new();
        l.push(g);
        NCMonomial(l)
    }

    pub fn letters(&self) -> &[GenIndex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Filtration degree: the sum of the modes.
    pub fn degree(&self) -> usize {
        self.0.iter().map(|g| g.r()).sum()
    }

    pub fn is_ordered(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn concat(&self, other: &NCMonomial) -> NCMonomial {
        let mut l = self.0.clone();
        l.extend_from_slice(&other.0);
        NCMonomial(l)
    }

    fn prepend(g: GenIndex, rest: &[GenIndex]) -> NCMonomial {
        let mut l = Letters::with_capacity(rest.len() + 1);
        l.push(g);
        l.extend_from_slice(rest);
        NCMonomial(l)
    }
}

impl fmt::Display for NCMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for NCMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

type Terms = Vec<(NCMonomial, Rational)>;
type Acc = FxHashMap<NCMonomial, Rational>;

/// An element of Y(n): ordered words with nonzero rational coefficients,
/// sorted by word.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct NCPolynomial {
    terms: Terms,
}

fn acc_add(acc: &mut Acc, m: NCMonomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match acc.entry(m) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

fn acc_into_terms(acc: Acc) -> Terms {
    let mut terms: Terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    terms
}

/// `[t_ij^(r), t_kl^(s)]` as raw (possibly unordered) words of length at most 2.
fn raw_bracket(a: GenIndex, b: GenIndex) -> SmallVec<[(Letters, Rational); 8]> {
    let (i, j, r) = (a.i(), a.j(), a.r());
    let (k, l, s) = (b.i(), b.j(), b.r());
    let mut out: SmallVec<[(Letters, Rational); 8]> = SmallVec::new();
    // t^(0)_xy = delta_xy
    let mut push = |x: (usize, usize, usize), y: (usize, usize, usize), sign: i64| {
        let mut w = Letters::new();
        for (p, q, m) in [x, y] {
            if m == 0 {
                if p != q {
                    return;
                }
            } else {
                w.push(GenIndex::new(p, q, m));
            }
        }
        out.push((w, Rational::from_int(sign)));
    };
    for p in 1..=r.min(s) {
        push((k, j, p - 1), (i, l, r + s - p), 1);
        push((k, j, r + s - p), (i, l, p - 1), -1);
    }
    out
}

thread_local! {
    static LEFT_MUL: RefCell<FxHashMap<(GenIndex, NCMonomial), Rc<Terms>>> =
        RefCell::new(FxHashMap::default());
}

/// Drops the memo table used by the straightening routine.
pub fn clear_normal_form_cache() {
    LEFT_MUL.with(|c| c.borrow_mut().clear());
}

/// Number of entries in the memo table of this thread.
pub fn normal_form_cache_len() -> usize {
    LEFT_MUL.with(|c| c.borrow().len())
}

/// Normal form of `g * w` for an ordered word `w`, accumulated into `acc`
/// with weight `c`.
fn left_mul_gen_into(g: GenIndex, w: &NCMonomial, c: &Rational, acc: &mut Acc) {
    if w.0.first().is_none_or(|&w0| g <= w0) {
        acc_add(acc, NCMonomial::prepend(g, &w.0), c.clone());
        return;
    }
    let terms = left_mul_gen(g, w);
    for (m, d) in terms.iter() {
        acc_add(acc, m.clone(), d * c);
    }
}

fn left_mul_gen(g: GenIndex, w: &NCMonomial) -> Rc<Terms> {
    let key = (g, w.clone());
    if let Some(hit) = LEFT_MUL.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let w0 = w.0[0];
    let rest = NCMonomial(Letters::from_slice(&w.0[1..]));
    let mut acc = Acc::default();
    // g w0 rest = w0 (g rest) + [g, w0] rest
    let mut inner = Acc::default();
    left_mul_gen_into(g, &rest, &Rational::one(), &mut inner);
    for (m, d) in inner {
        left_mul_gen_into(w0, &m, &d, &mut acc);
    }
    for (word, k) in raw_bracket(g, w0) {
        let mut cur = Acc::default();
        cur.insert(rest.clone(), k);
        for &x in word.iter().rev() {
            let mut next = Acc::default();
            for (m, d) in cur {
                left_mul_gen_into(x, &m, &d, &mut next);
            }
            cur = next;
        }
        for (m, d) in cur {
            acc_add(&mut acc, m, d);
        }
    }
    let out = Rc::new(acc_into_terms(acc));
    LEFT_MUL.with(|c| c.borrow_mut().insert(key, out.clone()));
    out
}

/// Left-multiplies every term of `acc` (ordered words) by the raw word `word`.
fn left_mul_word(word: &[GenIndex], mut cur: Acc) -> Acc {
    for &x in word.iter().rev() {
        let mut next = Acc::default();
        for (m, d) in cur {
            left_mul_gen_into(x, &m, &d, &mut next);
        }
        cur = next;
    }
    cur
}

/// Rewrites an arbitrary linear combination of words into normal form.
pub fn pbw_normalize(raw: impl IntoIterator<Item = (NCMonomial, Rational)>) -> NCPolynomial {
    let mut acc = Acc::default();
    for (m, c) in raw {
        if c.is_zero() {
            continue;
        }
        if m.is_ordered() {
            acc_add(&mut acc, m, c);
            continue;
        }
        // Straighten from the right: the longest ordered suffix seeds the fold.
        let letters = m.letters();
        let mut split = letters.len() - 1;
        while split > 0 && letters[split - 1] <= letters[split] {
            split -= 1;
        }
        let mut seed = Acc::default();
        seed.insert(NCMonomial::new(&letters[split..]), c);
        for (w, d) in left_mul_word(&letters[..split], seed) {
            acc_add(&mut acc, w, d);
        }
    }
    NCPolynomial {
        terms: acc_into_terms(acc),
    }
}

/// `[a, b]` in normal form.
pub fn mode_bracket(a: GenIndex, b: GenIndex) -> NCPolynomial {
    pbw_normalize(raw_bracket(a, b).into_iter().map(|(w, c)| (NCMonomial(w), c)))
}

impl NCPolynomial {
    pub fn zero() -> Self {
        NCPolynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        NCPolynomial::scalar(Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        if c.is_zero() {
            return NCPolynomial::zero();
        }
        NCPolynomial {
            terms: vec![(NCMonomial::unit(), c)],
        }
    }

    pub fn gen(g: GenIndex) -> Self {
        NCPolynomial {
            terms: vec![(NCMonomial::gen(g), Rational::one())],
        }
    }

    /// `t_ij^(r)`, with `t_ij^(0) = delta_ij`.
    pub fn t(i: usize, j: usize, r: usize) -> Self {
        if r == 0 {
            return if i == j {
                NCPolynomial::one()
            } else {
                NCPolynomial::zero()
            };
        }
        NCPolynomial::gen(GenIndex::new(i, j, r))
    }

    /// The normal form of a single (possibly unordered) word.
    pub fn word(letters: &[GenIndex]) -> Self {
        pbw_normalize([(NCMonomial::new(letters), Rational::one())])
    }

    pub fn terms(&self) -> &[(NCMonomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Filtration degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// The part of filtration degree exactly `d`.
    pub fn homogeneous_part(&self, d: usize) -> NCPolynomial {
        NCPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .cloned()
                .collect(),
        }
    }

    pub fn coeff(&self, m: &NCMonomial) -> Rational {
        self.terms
            .binary_search_by(|(w, _)| w.cmp(m))
            .map(|k| self.terms[k].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn scalar_part(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_empty() => Some(c.clone()),
            _ => None,
        }
    }

    fn merge(&self, other: &NCPolynomial, sign: &Rational) -> NCPolynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ma, ca)), Some((mb, cb))) => match ma.cmp(mb) {
                    std::cmp::Ordering::Less => {
                        out.push((ma.clone(), ca.clone()));
                        a.next();
                    }
                    std::cmp::Ordering::Greater => {
                        out.push((mb.clone(), cb * sign));
                        b.next();
                    }
                    std::cmp::Ordering::Equal => {
                        let c = ca + &(cb * sign);
                        if !c.is_zero() {
                            out.push((ma.clone(), c));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some((m, c)), None) => {
                    out.push((m.clone(), c.clone()));
                    a.next();
                }
                (None, Some((m, c))) => {
                    out.push((m.clone(), c * sign));
                    b.next();
                }
                (None, None) => break,
            }
        }
        NCPolynomial { terms: out }
    }

    pub fn scale(&self, c: &Rational) -> NCPolynomial {
        if c.is_zero() {
            return NCPolynomial::zero();
        }
        NCPolynomial {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    /// `self * other` in normal form.
    pub fn mul(&self, other: &NCPolynomial) -> NCPolynomial {
        if let Some(c) = self.scalar_part() {
            return other.scale(&c);
        }
        if let Some(c) = other.scalar_part() {
            return self.scale(&c);
        }
        let mut acc = Acc::default();
        for (wa, ca) in &self.terms {
            let seed: Acc = other
                .terms
                .iter()
                .map(|(m, d)| (m.clone(), d * ca))
                .collect();
            for (m, d) in left_mul_word(wa.letters(), seed) {
                acc_add(&mut acc, m, d);
            }
        }
        NCPolynomial {
            terms: acc_into_terms(acc),
        }
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &NCPolynomial) -> NCPolynomial {
        self.mul(other).merge(&other.mul(self), &-Rational::one())
    }

    /// The product of the letters of each word taken in a commutative
    /// polynomial ring, i.e. the image in the associated graded algebra.
    pub fn sorted_words(&self) -> FxHashMap<NCMonomial, Rational> {
        let mut acc = Acc::default();
        for (m, c) in &self.terms {
            let mut l = m.0.clone();
            l.sort_unstable();
            acc_add(&mut acc, NCMonomial(l), c.clone());
        }
        acc
    }
}

impl Coefficient for NCPolynomial {
    fn zero() -> Self {
        NCPolynomial::zero()
    }
    fn one() -> Self {
        NCPolynomial::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        if self.terms.is_empty() {
            return other.clone();
        }
        self.merge(other, &Rational::one())
    }
    fn sub(&self, other: &Self) -> Self {
        self.merge(other, &-Rational::one())
    }
    fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }
    fn mul(&self, other: &Self) -> Self {
        NCPolynomial::mul(self, other)
    }
    fn scale(&self, c: &Rational) -> Self {
        NCPolynomial::scale(self, c)
    }
    fn from_rational(c: Rational) -> Self {
        NCPolynomial::scalar(c)
    }
    fn as_scalar(&self) -> Option<Rational> {
        self.scalar_part()
    }
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if !c.is_zero() && !other.terms.is_empty() {
            *self = self.merge(other, c);
        }
    }
}

impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, abs) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs} {m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPolynomial({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    monomial: NCMonomial,
    coeff: Rational,
}

impl Serialize for NCPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let records: Vec<TermRecord> = self
            .terms
            .iter()
            .map(|(m, c)| TermRecord {
                monomial: m.clone(),
                coeff: c.clone(),
            })
            .collect();
        records.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NCPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(d)?;
        Ok(pbw_normalize(records.into_iter().map(|r| (r.monomial, r.coeff))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(i: usize, j: usize, r: usize) -> GenIndex {
        GenIndex::new(i, j, r)
    }

    #[test]
    fn packing_orders_by_mode_then_indices() {
        assert!(g(2, 2, 1) < g(1, 1, 2));
        assert!(g(1, 2, 1) < g(2, 1, 1));
        assert!(g(1, 1, 1) < g(1, 2, 1));
        let x = g(3, 2, 7);
        assert_eq!((x.i(), x.j(), x.r()), (3, 2, 7));
    }

    #[test]
    fn gl_bracket_in_low_modes() {
        assert!(mode_bracket(g(1, 1, 1), g(2, 2, 1)).is_zero());
        let expected = NCPolynomial::gen(g(1, 1, 1)).sub(&NCPolynomial::gen(g(2, 2, 1)));
        assert_eq!(mode_bracket(g(1, 2, 1), g(2, 1, 1)), expected);
        assert!(mode_bracket(g(1, 2, 3), g(1, 2, 3)).is_zero());
    }

    #[test]
    fn single_swap() {
        let lhs = NCPolynomial::word(&[g(2, 1, 1), g(1, 2, 1)]);
        let expected = NCPolynomial::word(&[g(1, 2, 1), g(2, 1, 1)])
            .sub(&NCPolynomial::gen(g(1, 1, 1)))
            .add(&NCPolynomial::gen(g(2, 2, 1)));
        assert_eq!(lhs, expected);
    }

    #[test]
    fn ordered_word_is_fixed() {
        let w = [g(1, 1, 1), g(2, 1, 1), g(1, 2, 2)];
        let p = NCPolynomial::word(&w);
        assert_eq!(p.terms(), &[(NCMonomial::new(&w), Rational::one())]);
    }

    #[test]
    fn display_and_json() {
        let p = NCPolynomial::word(&[g(2, 1, 1), g(1, 2, 1)]);
        assert_eq!(p.to_string(), "-t11^(1) + t12^(1) t21^(1) + t22^(1)");
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"[{"monomial":[[1,1,1]],"coeff":"-1"},{"monomial":[[1,2,1],[2,1,1]],"coeff":"1"},{"monomial":[[2,2,1]],"coeff":"1"}]"#
        );
        let back: NCPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
