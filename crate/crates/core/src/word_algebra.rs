//! Words over `{x, y}`, compositions, exact rational linear combinations, and
//! the shuffle and harmonic (stuffle) products.
//!
//! A composition `(l1, ..., ln)` corresponds to the word
//! `x^(l1-1) y ... x^(ln-1) y`; the two products live on different bases and
//! callers convert explicitly with [`word_from_composition`] and
//! [`composition_from_word`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{MzvError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn swapped(self) -> Letter {
        match self {
            Letter::X => Letter::Y,
            Letter::Y => Letter::X,
        }
    }
}

/// A monomial of the Hoffman algebra. Ordered lexicographically with `x < y`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn depth(&self) -> usize {
        self.0.iter().filter(|&&l| l == Letter::Y).count()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Member of H^0: empty, or starts with `x` and ends with `y`.
    pub fn is_convergent(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (None, _) => true,
            (Some(&Letter::X), Some(&Letter::Y)) => true,
            _ => false,
        }
    }

    /// Member of H^1: empty, or ends with `y`.
    pub fn is_in_h1(&self) -> bool {
        matches!(self.0.last(), None | Some(&Letter::Y))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prefixed(&self, letter: Letter) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(letter);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    /// Reverse the word and exchange `x <-> y` (the involution behind duality
    /// and the Hölder convolution).
    pub fn dual(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.swapped()).collect())
    }

    /// `y^k`.
    pub fn y_power(k: usize) -> Word {
        Word(vec![Letter::Y; k])
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            f.write_str(match l {
                Letter::X => "x",
                Letter::Y => "y",
            })?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = MzvError;

    fn from_str(s: &str) -> Result<Word> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::empty());
        }
        s.chars()
            .map(|c| match c {
                'x' | 'X' => Ok(Letter::X),
                'y' | 'Y' => Ok(Letter::Y),
                _ => Err(MzvError::Parse(format!("invalid letter `{c}` in word `{s}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// A nonempty tuple of positive integers indexing an MZV or polylogarithm.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Composition> {
        if parts.is_empty() || parts.iter().any(|&p| p == 0) {
            return Err(MzvError::Parse(format!(
                "composition parts must be a nonempty list of positive integers, got {parts:?}"
            )));
        }
        Ok(Composition(parts))
    }

    /// Panics on empty input or zero parts; for internal construction from
    /// enumerations that guarantee positivity.
    pub fn from_slice(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).expect("valid composition")
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_convergent(&self) -> bool {
        self.0[0] >= 2
    }

    fn tail(&self) -> Option<Composition> {
        (self.0.len() > 1).then(|| Composition(self.0[1..].to_vec()))
    }

    fn cons(head: u32, tail: &Composition) -> Composition {
        let mut v = Vec::with_capacity(tail.0.len() + 1);
        v.push(head);
        v.extend_from_slice(&tail.0);
        Composition(v)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Composition {
    type Err = MzvError;

    fn from_str(s: &str) -> Result<Composition> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| MzvError::Parse(format!("invalid composition part `{p}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

/// All compositions of `weight` into exactly `depth` positive parts, with
/// the first part at least `min_first`. Lexicographic order.
pub fn compositions(weight: u32, depth: usize, min_first: u32) -> Vec<Composition> {
    fn rec(remaining: u32, slots: usize, min: u32, acc: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if slots == 1 {
            if remaining >= min {
                acc.push(remaining);
                out.push(Composition(acc.clone()));
                acc.pop();
            }
            return;
        }
        let max_here = remaining.saturating_sub(slots as u32 - 1);
        for v in min..=max_here {
            acc.push(v);
            rec(remaining - v, slots - 1, 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if depth == 0 {
        return out;
    }
    rec(weight, depth, min_first.max(1), &mut Vec::new(), &mut out);
    out
}

/// `(l1, ..., ln) -> x^(l1-1) y ... x^(ln-1) y`.
pub fn word_from_composition(c: &Composition) -> Word {
    let mut v = Vec::with_capacity(c.weight() as usize);
    for &p in c.parts() {
        v.extend(std::iter::repeat(Letter::X).take(p as usize - 1));
        v.push(Letter::Y);
    }
    Word(v)
}

pub fn composition_from_word(w: &Word) -> Result<Composition> {
    if w.is_empty() || !w.is_in_h1() {
        return Err(MzvError::WordNotInH1(w.to_string()));
    }
    let mut parts = Vec::with_capacity(w.depth());
    let mut run = 1u32;
    for l in w.letters() {
        match l {
            Letter::X => run += 1,
            Letter::Y => {
                parts.push(run);
                run = 1;
            }
        }
    }
    Ok(Composition(parts))
}

/// A finite formal sum of basis elements with nonzero exact rational
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinComb<B: Ord> {
    terms: BTreeMap<B, BigRational>,
}

impl<B: Ord> Default for LinComb<B> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<B: Ord + Clone> LinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_basis(b: B) -> Self {
        Self::from_term(b, BigRational::one())
    }

    pub fn from_term(b: B, c: BigRational) -> Self {
        let mut out = Self::zero();
        out.add_term(b, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, b: &B) -> BigRational {
        self.terms.get(b).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, b: B, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, scale: &BigRational) {
        if scale.is_zero() {
            return;
        }
        for (b, c) in &other.terms {
            self.add_term(b.clone(), c * scale);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (b, c) in &other.terms {
            self.add_term(b.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (b, c) in &other.terms {
            self.add_term(b.clone(), -c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn scaled(&self, scale: &BigRational) -> Self {
        if scale.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self.terms.iter().map(|(b, c)| (b.clone(), c * scale)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scaled(&-BigRational::one())
    }

    /// Re-express in another basis; images may collide and cancel.
    pub fn map_basis<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> C) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            out.add_term(f(b), c.clone());
        }
        out
    }

    /// Linear extension of `f : B -> LinComb<C>`.
    pub fn flat_map<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> LinComb<C>) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b), c);
        }
        out
    }

    /// Sum of absolute values of the coefficients.
    pub fn mass(&self) -> BigRational {
        self.terms.values().map(|c| c.abs()).fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn into_terms(self) -> BTreeMap<B, BigRational> {
        self.terms
    }
}

impl<B: Ord + Clone> std::ops::Add for &LinComb<B> {
    type Output = LinComb<B>;
    fn add(self, rhs: &LinComb<B>) -> LinComb<B> {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl<B: Ord + Clone> std::ops::Sub for &LinComb<B> {
    type Output = LinComb<B>;
    fn sub(self, rhs: &LinComb<B>) -> LinComb<B> {
        let mut out = self.clone();
        out.sub_assign(rhs);
        out
    }
}

impl<B: Ord + Clone> FromIterator<(B, BigRational)> for LinComb<B> {
    fn from_iter<I: IntoIterator<Item = (B, BigRational)>>(iter: I) -> Self {
        let mut out = LinComb::zero();
        for (b, c) in iter {
            out.add_term(b, c);
        }
        out
    }
}

pub fn fmt_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| MzvError::Parse(format!("bad rational `{s}`")))?;
            let d: BigInt = d.trim().parse().map_err(|_| MzvError::Parse(format!("bad rational `{s}`")))?;
            if d.is_zero() {
                return Err(MzvError::Parse(format!("zero denominator in `{s}`")));
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(
            s.parse().map_err(|_| MzvError::Parse(format!("bad rational `{s}`")))?,
        ),
    };
    Ok(parsed)
}

impl<B: Ord + Clone + fmt::Display> fmt::Display for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(b, c)| format!("{}·{}", fmt_rational(c), b)).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<B: Ord + Clone + FromStr<Err = MzvError>> FromStr for LinComb<B> {
    type Err = MzvError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(LinComb::zero());
        }
        let mut out = LinComb::zero();
        for term in s.split(" + ") {
            // `c·b`, `c*b`, or a bare basis element with coefficient 1
            match term.split_once('·').or_else(|| term.split_once('*')) {
                Some((c, b)) => out.add_term(b.trim().parse()?, parse_rational(c)?),
                None => out.add_term(term.trim().parse()?, BigRational::one()),
            }
        }
        Ok(out)
    }
}

fn shuffle_words(u: &Word, v: &Word) -> HashMap<Vec<Letter>, u64> {
    // Each interleaving is a choice of positions for the letters of `u`.
    let (p, q) = (u.weight(), v.weight());
    let mut out: HashMap<Vec<Letter>, u64> = HashMap::new();
    let mut buf = Vec::with_capacity(p + q);
    fn rec(
        u: &[Letter],
        v: &[Letter],
        buf: &mut Vec<Letter>,
        out: &mut HashMap<Vec<Letter>, u64>,
    ) {
        if u.is_empty() || v.is_empty() {
            let mut w = buf.clone();
            w.extend_from_slice(u);
            w.extend_from_slice(v);
            *out.entry(w).or_insert(0) += 1;
            return;
        }
        buf.push(u[0]);
        rec(&u[1..], v, buf, out);
        buf.pop();
        buf.push(v[0]);
        rec(u, &v[1..], buf, out);
        buf.pop();
    }
    rec(u.letters(), v.letters(), &mut buf, &mut out);
    out
}

/// Shuffle product of two words.
pub fn shuffle_word(u: &Word, v: &Word) -> LinComb<Word> {
    shuffle_words(u, v)
        .into_iter()
        .map(|(w, n)| (Word(w), BigRational::from_integer(BigInt::from(n))))
        .collect()
}

/// Bilinear shuffle product.
pub fn shuffle(a: &LinComb<Word>, b: &LinComb<Word>) -> LinComb<Word> {
    let mut out = LinComb::zero();
    for (u, cu) in a.iter() {
        for (v, cv) in b.iter() {
            out.add_scaled(&shuffle_word(u, v), &(cu * cv));
        }
    }
    out
}

/// Harmonic (quasi-shuffle) product of two compositions.
pub fn stuffle_composition(a: &Composition, b: &Composition) -> LinComb<Composition> {
    // (a,A)*(b,B) = (a, A*(b,B)) + (b, (a,A)*B) + (a+b, A*B), with 1 as unit.
    fn rec(a: Option<&Composition>, b: Option<&Composition>) -> LinComb<Option<Composition>> {
        match (a, b) {
            (None, None) => LinComb::from_basis(None),
            (Some(x), None) | (None, Some(x)) => LinComb::from_basis(Some(x.clone())),
            (Some(x), Some(y)) => {
                let (hx, tx) = (x.parts()[0], x.tail());
                let (hy, ty) = (y.parts()[0], y.tail());
                let mut out = LinComb::zero();
                let prepend = |h: u32, lc: LinComb<Option<Composition>>| {
                    lc.map_basis(|t| match t {
                        None => Some(Composition(vec![h])),
                        Some(c) => Some(Composition::cons(h, c)),
                    })
                };
                out.add_assign(&prepend(hx, rec(tx.as_ref(), Some(y))));
                out.add_assign(&prepend(hy, rec(Some(x), ty.as_ref())));
                out.add_assign(&prepend(hx + hy, rec(tx.as_ref(), ty.as_ref())));
                out
            }
        }
    }
    rec(Some(a), Some(b)).map_basis(|c| c.clone().expect("nonempty product"))
}

/// Bilinear stuffle product.
pub fn stuffle(a: &LinComb<Composition>, b: &LinComb<Composition>) -> LinComb<Composition> {
    let mut out = LinComb::zero();
    for (u, cu) in a.iter() {
        for (v, cv) in b.iter() {
            out.add_scaled(&stuffle_composition(u, v), &(cu * cv));
        }
    }
    out
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn word_composition_bijection() {
        assert_eq!(word_from_composition(&c("2")), w("xy"));
        assert_eq!(word_from_composition(&c("2,1,1")), w("xyyy"));
        assert_eq!(word_from_composition(&c("1,2")), w("yxy"));
        assert_eq!(composition_from_word(&w("xyy")).unwrap(), c("2,1"));
        assert_eq!(composition_from_word(&w("yxy")).unwrap(), c("1,2"));
        assert!(matches!(composition_from_word(&w("xx")), Err(MzvError::WordNotInH1(_))));
        assert!(matches!(composition_from_word(&Word::empty()), Err(MzvError::WordNotInH1(_))));
    }

    #[test]
    fn shuffle_examples() {
        let x = LinComb::from_basis(w("x"));
        let y = LinComb::from_basis(w("y"));
        assert_eq!(shuffle(&x, &y).to_string(), "1·xy + 1·yx");
        assert_eq!(shuffle(&y, &y).to_string(), "2·yy");
        let xy = LinComb::from_basis(w("xy"));
        assert_eq!(shuffle(&xy, &y).to_string(), "2·xyy + 1·yxy");
    }

    #[test]
    fn stuffle_examples() {
        let s = |a: &str, b: &str| stuffle_composition(&c(a), &c(b)).to_string();
        assert_eq!(s("2", "2"), "2·2,2 + 1·4");
        assert_eq!(s("2", "3"), "1·2,3 + 1·3,2 + 1·5");
        assert_eq!(s("2,1", "2"), "1·2,1,2 + 2·2,2,1 + 1·2,3 + 1·4,1");
    }

    #[test]
    fn shuffle_mass_is_binomial() {
        for p in 1..6u32 {
            for q in 1..6u32 {
                let a = word_from_composition(&Composition::from_slice(&[p]));
                let b = word_from_composition(&Composition::from_slice(&[q]));
                let mass = shuffle_word(&a, &b).mass();
                let binom = num_integer::binomial(BigInt::from(p + q), BigInt::from(p));
                assert_eq!(mass, BigRational::from_integer(binom));
            }
        }
    }

    #[test]
    fn compositions_enumeration() {
        assert_eq!(compositions(5, 3, 1).len(), 6);
        assert_eq!(compositions(4, 3, 2), vec![c("2,1,1")]);
        assert_eq!(compositions(6, 2, 2).len(), 4);
        assert!(compositions(3, 3, 2).is_empty());
    }

    #[test]
    fn text_round_trip() {
        let lc: LinComb<Word> = "3/2·xyy + -1·yxy".parse().unwrap();
        assert_eq!(lc.to_string(), "3/2·xyy + -1·yxy");
        let lc: LinComb<Composition> = "1·2,1 + -5/7·3".parse().unwrap();
        assert_eq!(lc.to_string().parse::<LinComb<Composition>>().unwrap(), lc);
        assert_eq!("0".parse::<LinComb<Word>>().unwrap(), LinComb::zero());
        let lc: LinComb<Word> = "xy + 2*yy".parse().unwrap();
        assert_eq!(lc.to_string(), "1·xy + 2·yy");
    }

    #[test]
    fn lincomb_cancels_to_zero() {
        let mut a = LinComb::from_basis(w("xy"));
        a.add_term(w("xy"), int(-1));
        assert!(a.is_zero());
        assert_eq!(a.to_string(), "0");
    }
}
