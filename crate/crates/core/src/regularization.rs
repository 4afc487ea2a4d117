//! Shuffle regularization `reg_T : H^1 -> H^0[T]`, regularized zeta symbols
//! and products of zeta symbols.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{MzvError, Result};
use crate::word_algebra::{
    composition_from_word, shuffle, shuffle_word, Composition, Letter, LinComb, Word,
};

/// A polynomial in `T` with coefficients in the shuffle algebra.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TPoly {
    coeffs: BTreeMap<u32, LinComb<Word>>,
}

impl TPoly {
    pub fn zero() -> TPoly {
        TPoly::default()
    }

    pub fn constant(w: LinComb<Word>) -> TPoly {
        let mut p = TPoly::zero();
        p.add_at(0, &w);
        p
    }

    pub fn add_at(&mut self, degree: u32, w: &LinComb<Word>) {
        let slot = self.coeffs.entry(degree).or_default();
        slot.add_assign(w);
        if slot.is_zero() {
            self.coeffs.remove(&degree);
        }
    }

    pub fn coefficient(&self, degree: u32) -> LinComb<Word> {
        self.coeffs.get(&degree).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &LinComb<Word>)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scaled(&self, s: &BigRational) -> TPoly {
        let mut out = TPoly::zero();
        for (d, c) in &self.coeffs {
            out.add_at(*d, &c.scaled(s));
        }
        out
    }

    pub fn add(&self, other: &TPoly) -> TPoly {
        let mut out = self.clone();
        for (d, c) in &other.coeffs {
            out.add_at(*d, c);
        }
        out
    }

    /// Shuffle product extended coefficient-wise, `T` central.
    pub fn shuffle(&self, other: &TPoly) -> TPoly {
        let mut out = TPoly::zero();
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                out.add_at(i + j, &shuffle(a, b));
            }
        }
        out
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(d, c)| match d {
                0 => format!("({c})"),
                1 => format!("({c})·T"),
                _ => format!("({c})·T^{d}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `reg_T(w)` for `w` in H^1.
pub fn reg_t(w: &Word) -> Result<TPoly> {
    if !w.is_in_h1() {
        return Err(MzvError::WordNotInH1(w.to_string()));
    }
    let m = w.letters().iter().take_while(|&&l| l == Letter::Y).count();
    if m == 0 {
        return Ok(TPoly::constant(LinComb::from_basis(w.clone())));
    }
    let mut out = TPoly::zero();
    if m == w.weight() {
        let inv = BigRational::new(BigInt::one(), factorial(m as u32));
        out.add_at(m as u32, &LinComb::from_term(Word::empty(), inv));
        return Ok(out);
    }
    // w = y^m x w0'
    let w0_tail = w.slice(m + 1..w.weight());
    for j in 0..=m {
        let sh = shuffle_word(&Word::y_power(j), &w0_tail).map_basis(|u| u.prefixed(Letter::X));
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let c = BigRational::new(BigInt::from(sign), factorial((m - j) as u32));
        out.add_at((m - j) as u32, &sh.scaled(&c));
    }
    Ok(out)
}

/// Constant term `reg(w) = reg_T(w)|_{T=0}`.
pub fn reg0(w: &Word) -> Result<LinComb<Word>> {
    Ok(reg_t(w)?.coefficient(0))
}

/// Linear extension of [`reg_t`].
pub fn reg_t_lin(a: &LinComb<Word>) -> Result<TPoly> {
    let mut out = TPoly::zero();
    for (w, c) in a.iter() {
        out = out.add(&reg_t(w)?.scaled(c));
    }
    Ok(out)
}

/// A single zeta symbol: either a convergent MZV or a shuffle-regularized
/// value with first index 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ZetaSymbol {
    Convergent(Composition),
    RegularizedStar(Composition),
}

fn supported_star_shape(c: &Composition) -> bool {
    let p = c.parts();
    p[0] == 1 && (p.len() == 2 || p.len() == 3)
}

impl ZetaSymbol {
    pub fn zeta(parts: &[u32]) -> ZetaSymbol {
        let c = Composition::from_slice(parts);
        assert!(c.is_convergent(), "ζ({c}) is divergent");
        ZetaSymbol::Convergent(c)
    }

    /// The symbol for `c`: convergent when `l1 >= 2`, regularized otherwise.
    pub fn for_composition(c: &Composition) -> Result<ZetaSymbol> {
        if c.is_convergent() {
            Ok(ZetaSymbol::Convergent(c.clone()))
        } else if supported_star_shape(c) {
            Ok(ZetaSymbol::RegularizedStar(c.clone()))
        } else {
            Err(MzvError::UnsupportedShape(format!("z*({c})")))
        }
    }

    pub fn composition(&self) -> &Composition {
        match self {
            ZetaSymbol::Convergent(c) | ZetaSymbol::RegularizedStar(c) => c,
        }
    }

    pub fn weight(&self) -> u32 {
        self.composition().weight()
    }
}

impl fmt::Display for ZetaSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZetaSymbol::Convergent(c) => write!(f, "z({c})"),
            ZetaSymbol::RegularizedStar(c) => write!(f, "z*({c})"),
        }
    }
}

impl FromStr for ZetaSymbol {
    type Err = MzvError;

    fn from_str(s: &str) -> Result<ZetaSymbol> {
        let s = s.trim();
        let bad = || MzvError::Parse(format!("invalid zeta symbol `{s}`"));
        if let Some(rest) = s.strip_prefix("z*(") {
            let c: Composition = rest.strip_suffix(')').ok_or_else(bad)?.parse()?;
            if c.is_convergent() || !supported_star_shape(&c) {
                return Err(MzvError::UnsupportedShape(format!("z*({c})")));
            }
            Ok(ZetaSymbol::RegularizedStar(c))
        } else if let Some(rest) = s.strip_prefix("z(") {
            let c: Composition = rest.strip_suffix(')').ok_or_else(bad)?.parse()?;
            if !c.is_convergent() {
                return Err(MzvError::DivergentIndex(c.to_string()));
            }
            Ok(ZetaSymbol::Convergent(c))
        } else {
            Err(bad())
        }
    }
}

/// A commutative product of zeta symbols; the empty product is `1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ZetaMonomial {
    // sorted descending so that printing puts heavier factors first
    factors: Vec<ZetaSymbol>,
}

impl ZetaMonomial {
    pub fn one() -> ZetaMonomial {
        ZetaMonomial::default()
    }

    pub fn new(mut factors: Vec<ZetaSymbol>) -> ZetaMonomial {
        factors.sort_by(|a, b| b.cmp(a));
        ZetaMonomial { factors }
    }

    pub fn single(s: ZetaSymbol) -> ZetaMonomial {
        ZetaMonomial { factors: vec![s] }
    }

    pub fn factors(&self) -> &[ZetaSymbol] {
        &self.factors
    }

    pub fn weight(&self) -> u32 {
        self.factors.iter().map(|s| s.weight()).sum()
    }

    pub fn mul(&self, other: &ZetaMonomial) -> ZetaMonomial {
        let mut f = self.factors.clone();
        f.extend_from_slice(&other.factors);
        ZetaMonomial::new(f)
    }

    pub fn has_star(&self) -> bool {
        self.factors.iter().any(|s| matches!(s, ZetaSymbol::RegularizedStar(_)))
    }
}

impl fmt::Display for ZetaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join("·"))
    }
}

impl FromStr for ZetaMonomial {
    type Err = MzvError;

    fn from_str(s: &str) -> Result<ZetaMonomial> {
        let s = s.trim();
        if s == "1" {
            return Ok(ZetaMonomial::one());
        }
        s.split('·').map(str::parse).collect::<Result<Vec<_>>>().map(ZetaMonomial::new)
    }
}

/// Formal zeta expression: a rational combination of zeta monomials.
pub type ZetaExpr = LinComb<ZetaMonomial>;

pub fn zeta_expr(parts: &[u32]) -> ZetaExpr {
    LinComb::from_basis(ZetaMonomial::single(ZetaSymbol::zeta(parts)))
}

pub fn constant_expr(c: BigRational) -> ZetaExpr {
    LinComb::from_term(ZetaMonomial::one(), c)
}

/// Bilinear product of zeta expressions.
pub fn expr_mul(a: &ZetaExpr, b: &ZetaExpr) -> ZetaExpr {
    let mut out = ZetaExpr::zero();
    for (ma, ca) in a.iter() {
        for (mb, cb) in b.iter() {
            out.add_term(ma.mul(mb), ca * cb);
        }
    }
    out
}

/// Symbol for a composition that may start with 1 (regularized when it does).
pub fn symbol_expr(c: &Composition) -> Result<ZetaExpr> {
    Ok(LinComb::from_basis(ZetaMonomial::single(ZetaSymbol::for_composition(c)?)))
}

/// Closed form of the symbol for `c` in terms of convergent MZVs.
pub fn regularized_symbol(c: &Composition) -> Result<ZetaExpr> {
    if c.is_convergent() {
        return Ok(zeta_expr(c.parts()));
    }
    let p = c.parts();
    let one = BigRational::one;
    let neg = || -BigRational::one();
    let mut out = ZetaExpr::zero();
    let mut put = |parts: &[u32], coeff: BigRational| {
        out.add_term(ZetaMonomial::single(ZetaSymbol::zeta(parts)), coeff)
    };
    match p {
        [1, 1] | [1, 1, 1] => {}
        [1, k] => {
            let m = k + 1;
            put(&[m - 1, 1], neg());
            put(&[m], neg());
        }
        [1, 1, k] => {
            let n = k + 2;
            put(&[n - 2, 1, 1], one());
            put(&[n - 1, 1], one());
            put(&[n - 2, 2], one());
            put(&[n], one());
        }
        [1, n1, n2] => {
            let (n1, n2) = (*n1, *n2);
            put(&[n1, n2, 1], neg());
            put(&[n1, 1, n2], neg());
            put(&[n1 + 1, n2], neg());
            put(&[n1, n2 + 1], neg());
        }
        _ => return Err(MzvError::UnsupportedShape(format!("z*({c})"))),
    }
    Ok(out)
}

/// The defining long-form sums for the regularized symbols, used to
/// cross-check the closed forms.
pub fn regularized_symbol_definitional(c: &Composition) -> Result<ZetaExpr> {
    if c.is_convergent() {
        return Ok(zeta_expr(c.parts()));
    }
    let p = c.parts();
    let mut out = ZetaExpr::zero();
    let mut put = |parts: &[u32], s: i64| {
        out.add_term(ZetaMonomial::single(ZetaSymbol::zeta(parts)), BigRational::from_integer(s.into()))
    };
    match p {
        [1, 1] | [1, 1, 1] => {}
        [1, k] => {
            let m = k + 1;
            for j1 in 2..m {
                put(&[j1, m - j1], -1);
            }
            put(&[m - 1, 1], -1);
        }
        [1, 1, k] => {
            let n = k + 2;
            for j1 in 2..n {
                for j2 in 1..n - j1 {
                    put(&[j1, j2, n - j1 - j2], 1);
                }
            }
            for j1 in 2..n - 1 {
                put(&[j1, n - 1 - j1, 1], 1);
            }
            put(&[n - 2, 1, 1], 1);
        }
        [1, n1, n2] => {
            let (n1, n2) = (*n1, *n2);
            for j1 in 2..=n1 {
                put(&[j1, n1 + 1 - j1, n2], -1);
            }
            for j2 in 1..=n2 {
                put(&[n1, j2, n2 + 1 - j2], -1);
            }
            put(&[n1, n2, 1], -1);
        }
        _ => return Err(MzvError::UnsupportedShape(format!("z*({c})"))),
    }
    Ok(out)
}

/// Replace every regularized symbol by its closed form, multiplying out.
pub fn expand_stars(e: &ZetaExpr) -> Result<ZetaExpr> {
    let mut out = ZetaExpr::zero();
    for (m, coeff) in e.iter() {
        let mut prod = constant_expr(coeff.clone());
        for s in m.factors() {
            let f = match s {
                ZetaSymbol::Convergent(c) => zeta_expr(c.parts()),
                ZetaSymbol::RegularizedStar(c) => regularized_symbol(c)?,
            };
            prod = expr_mul(&prod, &f);
        }
        out.add_assign(&prod);
    }
    Ok(out)
}

/// Formal map from convergent words to zeta symbols (empty word -> 1).
pub fn words_to_expr(a: &LinComb<Word>) -> Result<ZetaExpr> {
    let mut out = ZetaExpr::zero();
    for (w, c) in a.iter() {
        if w.is_empty() {
            out.add_term(ZetaMonomial::one(), c.clone());
            continue;
        }
        if !w.is_convergent() {
            return Err(MzvError::DivergentIndex(w.to_string()));
        }
        let comp = composition_from_word(w)?;
        out.add_term(ZetaMonomial::single(ZetaSymbol::Convergent(comp)), c.clone());
    }
    Ok(out)
}

/// `reg0` of the word of `c`, as a formal zeta expression.
pub fn reg0_expr(c: &Composition) -> Result<ZetaExpr> {
    words_to_expr(&reg0(&crate::word_algebra::word_from_composition(c))?)
}

pub fn is_zero_expr(e: &ZetaExpr) -> bool {
    e.is_zero() || e.iter().all(|(_, c)| c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word_algebra::int;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn reg_examples() {
        let p = reg_t(&w("y")).unwrap();
        assert_eq!(p.coefficient(1), LinComb::from_basis(Word::empty()));
        assert_eq!(reg_t(&w("xy")).unwrap(), TPoly::constant(LinComb::from_basis(w("xy"))));
        let p = reg_t(&w("yxy")).unwrap();
        assert_eq!(p.coefficient(1).to_string(), "1·xy");
        assert_eq!(p.coefficient(0).to_string(), "-2·xyy");
        assert!(reg0(&w("yy")).unwrap().is_zero());
        assert!(matches!(reg_t(&w("yx")), Err(MzvError::WordNotInH1(_))));
    }

    #[test]
    fn star_shapes() {
        let c = |s: &str| s.parse::<Composition>().unwrap();
        assert!(regularized_symbol(&c("1,1")).unwrap().is_zero());
        assert_eq!(regularized_symbol(&c("1,2")).unwrap().to_string(), "-1·z(2,1) + -1·z(3)");
        assert_eq!(
            regularized_symbol_definitional(&c("1,2")).unwrap().to_string(),
            "-2·z(2,1)"
        );
        assert!(matches!(regularized_symbol(&c("1")), Err(MzvError::UnsupportedShape(_))));
        assert!(matches!(regularized_symbol(&c("1,1,1,2")), Err(MzvError::UnsupportedShape(_))));
    }

    #[test]
    fn definitional_form_is_reg0() {
        for n in 3..=9u32 {
            for c in crate::word_algebra::compositions(n, 2, 1)
                .into_iter()
                .chain(crate::word_algebra::compositions(n, 3, 1))
                .filter(|c| c.parts()[0] == 1)
            {
                assert_eq!(reg0_expr(&c).unwrap(), regularized_symbol_definitional(&c).unwrap(), "{c}");
            }
        }
    }

    #[test]
    fn monomial_text() {
        let m: ZetaMonomial = "z(2)·z(4)".parse().unwrap();
        assert_eq!(m.to_string(), "z(4)·z(2)");
        let e: ZetaExpr = "5/8·1 + -1/4·z(4)·z(2) + 1·z*(1,2)".parse().unwrap();
        assert_eq!(e.to_string().parse::<ZetaExpr>().unwrap(), e);
        assert_eq!(e.coefficient(&ZetaMonomial::one()), BigRational::new(5.into(), 8.into()));
        let x = expand_stars(&e).unwrap();
        assert!(!x.iter().any(|(m, _)| m.has_star()));
        assert_eq!(x.coefficient(&ZetaMonomial::single(ZetaSymbol::zeta(&[3]))), int(-1));
    }
}
