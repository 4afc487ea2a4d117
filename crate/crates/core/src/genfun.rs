//! Sparse polynomials in `x1, x2, x3` with coefficients in a commutative
//! ring of formal symbols, and the generating functions built from them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{MzvError, Result};
use crate::regularization::{symbol_expr, zeta_expr, ZetaExpr, ZetaMonomial};
use crate::word_algebra::{compositions, int, Composition, LinComb};

fn rzero() -> BigRational {
    <BigRational as Zero>::zero()
}

fn rone() -> BigRational {
    <BigRational as One>::one()
}

/// Coefficient domain of a [`Poly3`]: a rational vector space.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_scaled(&mut self, other: &Self, s: &BigRational);
}

/// Coefficient domains that are also commutative rings.
pub trait Ring: Coeff {
    fn one() -> Self;
    fn mul(&self, other: &Self) -> Self;
}

/// Commutative monomials over a symbol alphabet.
pub trait Monomial: Ord + Clone + fmt::Debug + fmt::Display {
    fn one() -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl Coeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_scaled(&mut self, other: &Self, s: &BigRational) {
        *self += other * s;
    }
}

impl Ring for BigRational {
    fn one() -> Self {
        One::one()
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl<B: Ord + Clone + fmt::Debug + fmt::Display> Coeff for LinComb<B> {
    fn zero() -> Self {
        LinComb::zero()
    }
    fn is_zero(&self) -> bool {
        LinComb::is_zero(self)
    }
    fn add_scaled(&mut self, other: &Self, s: &BigRational) {
        LinComb::add_scaled(self, other, s)
    }
}

impl<M: Monomial> Ring for LinComb<M> {
    fn one() -> Self {
        LinComb::from_basis(M::one())
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = LinComb::zero();
        for (a, ca) in self.iter() {
            for (b, cb) in other.iter() {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl Monomial for ZetaMonomial {
    fn one() -> Self {
        ZetaMonomial::one()
    }
    fn mul(&self, other: &Self) -> Self {
        ZetaMonomial::mul(self, other)
    }
}

/// Exponents of `x1, x2, x3`.
pub type Exp = [u32; 3];

/// Variable index 0, 1, 2 for `x1, x2, x3`.
pub type Var = usize;

/// `sum_i c_i x_i`.
pub type LinearForm = [BigRational; 3];

pub fn var(i: Var) -> LinearForm {
    let mut f = [rzero(), rzero(), rzero()];
    f[i] = rone();
    f
}

/// `x_{i} + x_{j} + ...` (the `x_{ij}`, `x_{ijk}` shorthands).
pub fn var_sum(vars: &[Var]) -> LinearForm {
    let mut f = [rzero(), rzero(), rzero()];
    for &i in vars {
        f[i] += rone();
    }
    f
}

pub fn zero_form() -> LinearForm {
    [rzero(), rzero(), rzero()]
}

#[derive(Debug, Clone, PartialEq)]
pub struct Poly3<C> {
    terms: BTreeMap<Exp, C>,
}

pub type RatPoly = Poly3<BigRational>;
pub type GenFunPoly = Poly3<ZetaExpr>;

impl<C: Coeff> Default for Poly3<C> {
    fn default() -> Self {
        Poly3 { terms: BTreeMap::new() }
    }
}

fn var_name(i: Var) -> &'static str {
    ["x1", "x2", "x3"][i]
}

impl<C: Coeff> Poly3<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(e: Exp, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(e, &c, &rone());
        p
    }

    pub fn constant(c: C) -> Self {
        Self::monomial([0, 0, 0], c)
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

    pub fn iter(&self) -> impl Iterator<Item = (&Exp, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Exp) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    /// `self += s * c * x^e`.
    pub fn add_term(&mut self, e: Exp, c: &C, s: &BigRational) {
        if Zero::is_zero(s) || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(C::zero);
        slot.add_scaled(c, s);
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, s: &BigRational) {
        for (e, c) in &other.terms {
            self.add_term(*e, c, s);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &rone());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-rone());
        out
    }

    pub fn scaled(&self, s: &BigRational) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, s);
        out
    }

    /// Total degree, if nonzero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// `Some(d)` when every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn map_coeffs<D: Coeff>(&self, mut f: impl FnMut(&C) -> D) -> Poly3<D> {
        let mut out = Poly3::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, &f(c), &rone());
        }
        out
    }

    /// Product with a rational polynomial.
    pub fn mul_rat(&self, r: &RatPoly) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &r.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca, cb);
            }
        }
        out
    }

    /// `p(f1, f2, f3)` for linear forms `f_i`.
    pub fn substitute(&self, forms: &[LinearForm; 3]) -> Self {
        let mut powers: [HashMap<u32, RatPoly>; 3] = Default::default();
        let mut power = |i: usize, k: u32| -> RatPoly {
            powers[i]
                .entry(k)
                .or_insert_with(|| {
                    let base = RatPoly::linear(&forms[i]);
                    (0..k).fold(RatPoly::one(), |acc, _| acc.mul(&base))
                })
                .clone()
        };
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let m = power(0, e[0]).mul(&power(1, e[1])).mul(&power(2, e[2]));
            out.add_scaled(&Self::constant(c.clone()).mul_rat(&m), &rone());
        }
        out
    }

    /// Rename variables: `x_i -> x_{perm(i)}`.
    pub fn permute(&self, perm: &Perm3) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut ne = [0u32; 3];
            for (i, &k) in e.iter().enumerate() {
                ne[perm.image(i)] += k;
            }
            out.add_term(ne, c, &rone());
        }
        out
    }

    /// Exact quotient by `x_i - x_j`; errors when the remainder is nonzero.
    pub fn divide_by_difference(&self, i: Var, j: Var) -> Result<Self> {
        assert_ne!(i, j, "dividing by x_i - x_i");
        let mut rem = self.clone();
        let mut quot = Self::zero();
        loop {
            // leading term in x_i
            let lead = rem.terms.iter().filter(|(e, _)| e[i] > 0).max_by_key(|(e, _)| e[i]).map(|(e, c)| (*e, c.clone()));
            let Some((e, c)) = lead else { break };
            let mut q = e;
            q[i] -= 1;
            quot.add_term(q, &c, &rone());
            // rem -= c x^q (x_i - x_j)
            rem.add_term(e, &c, &-rone());
            let mut f = q;
            f[j] += 1;
            rem.add_term(f, &c, &rone());
        }
        if !rem.is_zero() {
            return Err(MzvError::InternalDivisionError(format!("{} - {}", var_name(i), var_name(j))));
        }
        Ok(quot)
    }

    /// `(p - p|_{x_i -> x_j}) / (x_i - x_j)`.
    pub fn divided_difference(&self, i: Var, j: Var) -> Result<Self> {
        let mut forms = [var(0), var(1), var(2)];
        forms[i] = var(j);
        self.sub(&self.substitute(&forms)).divide_by_difference(i, j)
    }

    pub fn exact_divide_by_var(&self, i: Var) -> Result<Self> {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                return Err(MzvError::NotDivisible(var_name(i).to_string()));
            }
            let mut ne = *e;
            ne[i] -= 1;
            out.add_term(ne, c, &rone());
        }
        Ok(out)
    }

    /// Value at a rational point, as a coefficient.
    pub fn eval(&self, point: &[BigRational; 3]) -> C {
        let mut out = C::zero();
        for (e, c) in &self.terms {
            let mut w = rone();
            for (k, x) in e.iter().zip(point) {
                w *= num_traits::pow(x.clone(), *k as usize);
            }
            out.add_scaled(c, &w);
        }
        out
    }
}

impl<C: Ring> Poly3<C> {
    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], &ca.mul(cb), &rone());
            }
        }
        out
    }

    /// `x^e` with unit coefficient.
    pub fn x_pow(e: Exp) -> Self {
        Self::monomial(e, C::one())
    }
}

impl RatPoly {
    pub fn linear(f: &LinearForm) -> RatPoly {
        let mut p = RatPoly::zero();
        for i in 0..3 {
            let mut e = [0; 3];
            e[i] = 1;
            p.add_term(e, &f[i], &rone());
        }
        p
    }

    /// Embed as a polynomial with coefficients `c * 1` in any ring.
    pub fn lift<C: Ring>(&self) -> Poly3<C> {
        self.map_coeffs(|c| {
            let mut x = C::zero();
            x.add_scaled(&C::one(), c);
            x
        })
    }
}

fn fmt_monomial(e: &Exp) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { var_name(i).to_string() } else { format!("{}^{k}", var_name(i)) })
        .collect();
    parts.join("·")
}

impl<C: Coeff> fmt::Display for Poly3<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let m = fmt_monomial(e);
                if m.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})·{m}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl GenFunPoly {
    /// `{"(a,b,c)": {"z(2,2)": "1", ...}, ...}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        for (e, c) in &self.terms {
            let mut inner = serde_json::Map::new();
            for (m, q) in c.iter() {
                inner.insert(m.to_string(), serde_json::Value::String(crate::word_algebra::fmt_rational(q)));
            }
            obj.insert(format!("({},{},{})", e[0], e[1], e[2]), serde_json::Value::Object(inner));
        }
        serde_json::Value::Object(obj)
    }
}

/// A permutation of `{1, 2, 3}` (stored 0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm3([usize; 3]);

impl Perm3 {
    pub fn identity() -> Perm3 {
        Perm3([0, 1, 2])
    }

    /// From 1-based images `[σ(1), σ(2), σ(3)]`.
    pub fn from_images(images: [usize; 3]) -> Perm3 {
        let p = Perm3([images[0] - 1, images[1] - 1, images[2] - 1]);
        let mut seen = [false; 3];
        for &i in &p.0 {
            seen[i] = true;
        }
        assert!(seen.iter().all(|&s| s), "not a permutation: {images:?}");
        p
    }

    /// Transposition `(ij)`, 1-based.
    pub fn transposition(i: usize, j: usize) -> Perm3 {
        let mut p = [0, 1, 2];
        p.swap(i - 1, j - 1);
        Perm3(p)
    }

    /// Cycle `(ijk)`: `i -> j -> k -> i`, 1-based.
    pub fn cycle(i: usize, j: usize, k: usize) -> Perm3 {
        let mut p = [0, 1, 2];
        p[i - 1] = j - 1;
        p[j - 1] = k - 1;
        p[k - 1] = i - 1;
        Perm3(p)
    }

    /// `σ(i)` for 0-based `i`, 0-based result.
    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm3) -> Perm3 {
        Perm3([self.0[other.0[0]], self.0[other.0[1]], self.0[other.0[2]]])
    }

    pub fn inverse(&self) -> Perm3 {
        let mut inv = [0; 3];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm3(inv)
    }

    pub fn is_even(&self) -> bool {
        let mut inversions = 0;
        for a in 0..3 {
            for b in a + 1..3 {
                if self.0[a] > self.0[b] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }

    /// `x_{σ(i)}` as a linear form.
    pub fn x(&self, i: usize) -> LinearForm {
        var(self.0[i - 1])
    }

    /// `x_{σ(i)} + x_{σ(j)} + ...`, 1-based positions.
    pub fn xs(&self, positions: &[usize]) -> LinearForm {
        let vars: Vec<Var> = positions.iter().map(|&i| self.0[i - 1]).collect();
        var_sum(&vars)
    }

    /// 0-based variable `σ(i)` for 1-based `i`.
    pub fn v(&self, i: usize) -> Var {
        self.0[i - 1]
    }

    pub fn all() -> Vec<Perm3> {
        vec![
            Perm3([0, 1, 2]),
            Perm3([0, 2, 1]),
            Perm3([1, 0, 2]),
            Perm3([1, 2, 0]),
            Perm3([2, 0, 1]),
            Perm3([2, 1, 0]),
        ]
    }

    /// `A3 = {e, (123), (132)}`.
    pub fn alternating() -> Vec<Perm3> {
        vec![Perm3::identity(), Perm3::cycle(1, 2, 3), Perm3::cycle(1, 3, 2)]
    }

    /// `S_ij = {e, (ij)}`.
    pub fn s_pair(i: usize, j: usize) -> Vec<Perm3> {
        vec![Perm3::identity(), Perm3::transposition(i, j)]
    }

    /// `S_ijk = {e, (ij), (ijk)}`.
    pub fn s_triple(i: usize, j: usize, k: usize) -> Vec<Perm3> {
        vec![Perm3::identity(), Perm3::transposition(i, j), Perm3::cycle(i, j, k)]
    }
}

impl fmt::Display for Perm3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {} {}]", self.0[0] + 1, self.0[1] + 1, self.0[2] + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenFunKind {
    D,
    T,
    Dstar,
    Tstar,
}

/// The weight-`l` generating functions `D_l(x1,x2)`, `T_l(x1,x2,x3)` and their
/// regularized variants.
pub fn build(kind: GenFunKind, l: u32) -> Result<GenFunPoly> {
    let min = match kind {
        GenFunKind::D | GenFunKind::Dstar => 2,
        GenFunKind::T | GenFunKind::Tstar => 3,
    };
    if l < min {
        return Err(MzvError::WeightTooSmall { weight: l, min });
    }
    let mut p = GenFunPoly::zero();
    let one = rone();
    match kind {
        GenFunKind::D | GenFunKind::Dstar => {
            for c in compositions(l, 2, 2) {
                let k = c.parts();
                p.add_term([k[0] - 1, k[1] - 1, 0], &zeta_expr(k), &one);
            }
            if kind == GenFunKind::Dstar && l >= 3 {
                let star = Composition::from_slice(&[1, l - 1]);
                p.add_term([0, l - 2, 0], &symbol_expr(&star)?, &one);
            }
        }
        GenFunKind::T | GenFunKind::Tstar => {
            for c in compositions(l, 3, 2) {
                let k = c.parts();
                p.add_term([k[0] - 1, k[1] - 1, k[2] - 1], &zeta_expr(k), &one);
            }
            if kind == GenFunKind::Tstar {
                for c in compositions(l - 1, 2, 1) {
                    let k = c.parts();
                    let star = Composition::from_slice(&[1, k[0], k[1]]);
                    p.add_term([0, k[0] - 1, k[1] - 1], &symbol_expr(&star)?, &one);
                }
            }
        }
    }
    Ok(p)
}

/// `sum_{k1+k2+k3=l, ki>=1} x1^(k1-1) x2^(k2-1) x3^(k3-1)`, the polynomial form
/// of `sum_{τ∈A3} x_{τ(1)}^(l-1) / prod_{i=2,3} (x_{τ(1)} - x_{τ(i)})`.
pub fn homog_power_sum(l: u32) -> Result<RatPoly> {
    if l < 3 {
        return Err(MzvError::WeightTooSmall { weight: l, min: 3 });
    }
    let mut p = RatPoly::zero();
    for c in compositions(l, 3, 1) {
        let k = c.parts();
        p.add_term([k[0] - 1, k[1] - 1, k[2] - 1], &int(1), &rone());
    }
    Ok(p)
}

/// `sum_pairs N/(x_i - x_j)` for numerators whose antisymmetrized pair sums
/// are divisible; each entry `(N, i, j)` stands for `N / (x_i - x_j)`.
pub fn pair_fraction_sum<C: Coeff>(terms: &[(Poly3<C>, Var, Var)]) -> Result<Poly3<C>> {
    let mut grouped: BTreeMap<(Var, Var), Poly3<C>> = BTreeMap::new();
    for (n, i, j) in terms {
        let (key, s) = if i < j { ((*i, *j), rone()) } else { ((*j, *i), -rone()) };
        grouped.entry(key).or_default().add_scaled(n, &s);
    }
    let mut out = Poly3::zero();
    for ((i, j), n) in grouped {
        out = out.add(&n.divide_by_difference(i, j)?);
    }
    Ok(out)
}

/// `Li_index(z^e1, ..., z^en)` as a formal symbol in the base point `z`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LiSymbol {
    pub index: Composition,
    pub exponents: Vec<u32>,
}

impl LiSymbol {
    pub fn new(index: &[u32], exponents: &[u32]) -> LiSymbol {
        assert_eq!(index.len(), exponents.len(), "depth mismatch in polylog symbol");
        LiSymbol { index: Composition::from_slice(index), exponents: exponents.to_vec() }
    }
}

impl fmt::Display for LiSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> =
            self.exponents.iter().map(|&e| if e == 1 { "z".to_string() } else { format!("z^{e}") }).collect();
        write!(f, "Li[{}]({})", self.index, args.join(","))
    }
}

/// Commutative product of polylogarithm symbols.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LiMonomial {
    factors: Vec<LiSymbol>,
}

impl LiMonomial {
    pub fn new(mut factors: Vec<LiSymbol>) -> LiMonomial {
        factors.sort();
        LiMonomial { factors }
    }

    pub fn factors(&self) -> &[LiSymbol] {
        &self.factors
    }
}

impl fmt::Display for LiMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join("·"))
    }
}

impl Monomial for LiMonomial {
    fn one() -> Self {
        LiMonomial::default()
    }
    fn mul(&self, other: &Self) -> Self {
        let mut f = self.factors.clone();
        f.extend_from_slice(&other.factors);
        LiMonomial::new(f)
    }
}

pub type LiExpr = LinComb<LiMonomial>;
pub type LiPoly = Poly3<LiExpr>;

pub fn li_expr(index: &[u32], exponents: &[u32]) -> LiExpr {
    LinComb::from_basis(LiMonomial::new(vec![LiSymbol::new(index, exponents)]))
}

/// Double polylogarithm generating function
/// `sum_{l1,l2>=1} x1^(l1-1) x2^(l2-1) Li_{l1,l2}(z^a, z^b)`.
pub fn dpl(l: u32, exps: [u32; 2]) -> LiPoly {
    let mut p = LiPoly::zero();
    for c in compositions(l, 2, 1) {
        let k = c.parts();
        p.add_term([k[0] - 1, k[1] - 1, 0], &li_expr(k, &exps), &rone());
    }
    p
}

/// Triple polylogarithm generating function.
pub fn tpl(l: u32, exps: [u32; 3]) -> LiPoly {
    let mut p = LiPoly::zero();
    for c in compositions(l, 3, 1) {
        let k = c.parts();
        p.add_term([k[0] - 1, k[1] - 1, k[2] - 1], &li_expr(k, &exps), &rone());
    }
    p
}
