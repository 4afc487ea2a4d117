//! Arbitrary-precision evaluation of multiple zeta values, multiple
//! polylogarithms and zeta expressions.

mod bigreal;
mod polylog;

use std::collections::HashMap;
use std::sync::RwLock;

use num_rational::BigRational;

pub use bigreal::{format_sci, BigReal, PrecisionContext, DEFAULT_GUARD_DIGITS};
pub use polylog::{li, ArgTuple, Base, MAX_TERMS};

use crate::error::{MzvError, Result};
use crate::genfun::{LiExpr, LiSymbol};
use crate::regularization::{expand_stars, ZetaExpr, ZetaSymbol};
use crate::word_algebra::{composition_from_word, rat, word_from_composition, Composition, Word};

/// `Li_w(1/2, ..., 1/2)` for a word in H^1; the empty word gives 1.
fn li_half_word(w: &Word, ctx: &PrecisionContext) -> Result<BigReal> {
    if w.is_empty() {
        return Ok(BigReal::one(ctx.bits()));
    }
    let c = composition_from_word(w)?;
    li(&c, &ArgTuple::diagonal(c.depth(), rat(1, 2)), ctx)
}

/// `ζ(c)` by the Hölder convolution at 1/2: every term is a product of two
/// polylogarithms at 1/2.
pub fn zeta(c: &Composition, ctx: &PrecisionContext) -> Result<BigReal> {
    Evaluator::uncached(*ctx).zeta(c)
}

/// Evaluates zeta expressions under a fixed precision, memoizing zeta and
/// polylog values. Shareable across threads.
pub struct Evaluator {
    ctx: PrecisionContext,
    cache: Option<RwLock<Caches>>,
}

#[derive(Default)]
struct Caches {
    zeta: HashMap<Composition, BigReal>,
    half: HashMap<Word, BigReal>,
    li: HashMap<(LiSymbol, BigRational), BigReal>,
}

impl Evaluator {
    pub fn new(ctx: PrecisionContext) -> Evaluator {
        Evaluator { ctx, cache: Some(RwLock::new(Caches::default())) }
    }

    pub fn uncached(ctx: PrecisionContext) -> Evaluator {
        Evaluator { ctx, cache: None }
    }

    pub fn context(&self) -> &PrecisionContext {
        &self.ctx
    }

    fn half(&self, w: &Word) -> Result<BigReal> {
        if let Some(cache) = &self.cache {
            if let Some(v) = cache.read().expect("cache lock").half.get(w) {
                return Ok(v.clone());
            }
        }
        let v = li_half_word(w, &self.ctx)?;
        if let Some(cache) = &self.cache {
            cache.write().expect("cache lock").half.insert(w.clone(), v.clone());
        }
        Ok(v)
    }

    pub fn zeta(&self, c: &Composition) -> Result<BigReal> {
        if !c.is_convergent() {
            return Err(MzvError::DivergentIndex(c.to_string()));
        }
        if let Some(cache) = &self.cache {
            if let Some(v) = cache.read().expect("cache lock").zeta.get(c) {
                return Ok(v.clone());
            }
        }
        let w = word_from_composition(c);
        let len = w.weight();
        let mut acc = BigReal::zero(self.ctx.bits());
        for j in 0..=len {
            let left = self.half(&w.slice(0..j).dual())?;
            let right = self.half(&w.slice(j..len))?;
            acc = acc.add(&left.mul(&right));
        }
        if let Some(cache) = &self.cache {
            cache.write().expect("cache lock").zeta.insert(c.clone(), acc.clone());
        }
        Ok(acc)
    }

    pub fn li(&self, c: &Composition, args: &ArgTuple) -> Result<BigReal> {
        li(c, args, &self.ctx)
    }

    /// `Li_index(z^e1, ...)` at a rational base point, memoized.
    pub fn li_symbol(&self, s: &LiSymbol, z: &BigRational) -> Result<BigReal> {
        let key = (s.clone(), z.clone());
        if let Some(cache) = &self.cache {
            if let Some(v) = cache.read().expect("cache lock").li.get(&key) {
                return Ok(v.clone());
            }
        }
        let v = li(&s.index, &ArgTuple::new(s.exponents.clone(), z.clone()), &self.ctx)?;
        if let Some(cache) = &self.cache {
            cache.write().expect("cache lock").li.insert(key, v.clone());
        }
        Ok(v)
    }

    /// Value of a polylogarithm expression at base point `z`.
    pub fn li_expr(&self, e: &LiExpr, z: &BigRational) -> Result<BigReal> {
        let mut acc = BigReal::zero(self.ctx.bits());
        for (m, coeff) in e.iter() {
            let mut prod = BigReal::one(self.ctx.bits());
            for s in m.factors() {
                prod = prod.mul(&self.li_symbol(s, z)?);
            }
            acc = acc.add(&prod.mul_rational(coeff));
        }
        Ok(acc)
    }

    pub fn symbol(&self, s: &ZetaSymbol) -> Result<BigReal> {
        match s {
            ZetaSymbol::Convergent(c) => self.zeta(c),
            ZetaSymbol::RegularizedStar(_) => self.expr(&ZetaExpr::from_basis(
                crate::regularization::ZetaMonomial::single(s.clone()),
            )),
        }
    }

    /// Value of a zeta expression; regularized symbols are expanded first.
    pub fn expr(&self, e: &ZetaExpr) -> Result<BigReal> {
        let expanded = expand_stars(e)?;
        let mut acc = BigReal::zero(self.ctx.bits());
        for (m, coeff) in expanded.iter() {
            let mut prod = BigReal::one(self.ctx.bits());
            for s in m.factors() {
                prod = prod.mul(&self.symbol(s)?);
            }
            acc = acc.add(&prod.mul_rational(coeff));
        }
        Ok(acc)
    }

    /// Value of `sum c_i x_i` for already evaluated reals.
    pub fn combine(&self, terms: &[(BigRational, BigReal)]) -> BigReal {
        terms.iter().fold(BigReal::zero(self.ctx.bits()), |acc, (c, v)| acc.add(&v.mul_rational(c)))
    }
}

pub fn eval_expr(e: &ZetaExpr, ctx: &PrecisionContext) -> Result<BigReal> {
    Evaluator::new(*ctx).expr(e)
}
