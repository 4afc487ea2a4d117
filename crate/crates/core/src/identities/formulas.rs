//! Residual constructors for every tag.

use num_rational::BigRational;

use super::{BoundaryLimit, Equation, IdentityId, Residual, Tag};
use crate::error::Result;
use crate::genfun::{
    build as genfun, dpl, homog_power_sum, li_expr, pair_fraction_sum, tpl, var, var_sum, zero_form, Coeff,
    GenFunKind, GenFunPoly, LiExpr, LiPoly, LinearForm, Perm3, Poly3, RatPoly, Ring,
};
use crate::regularization::{
    reg_t, regularized_symbol, regularized_symbol_definitional, words_to_expr, zeta_expr, ZetaExpr, ZetaMonomial,
    ZetaSymbol,
};
use crate::word_algebra::{compositions, int, rat, word_from_composition, Composition};

pub(super) fn build(id: IdentityId) -> Result<Vec<Equation>> {
    let l = id.l;
    let eqs = match id.tag {
        Tag::EulerSum => single(id, scalar(psum2(l, |_, _| true).sub(&z(&[l])))),
        Tag::GkzParam => single(id, Residual::NumericPoly(gkz_param(l)?)),
        Tag::DzvWeighted => {
            let lhs = wsum2(l, |a, _| int(2).pow(a as i32));
            single(id, scalar(lhs.sub(&z(&[l]).scaled(&int(l as i64 + 1)))))
        }
        Tag::DzvRestricted => numbered(
            id,
            vec![
                scalar(psum2(l, |a, b| even(a) && even(b)).sub(&z(&[l]).scaled(&rat(3, 4)))),
                scalar(psum2(l, |a, b| !even(a) && !even(b)).sub(&z(&[l]).scaled(&rat(1, 4)))),
            ],
        ),
        Tag::TzvSum => single(id, scalar(psum3(l, |_, _, _| true).sub(&z(&[l])))),
        Tag::Thm1I => single(id, Residual::NumericPoly(thm1_i(l)?)),
        Tag::Thm1Ii => single(id, Residual::NumericPoly(thm1_ii(l)?)),
        Tag::Thm2 => numbered(id, vec![Residual::NumericPoly(thm2_eq1(l)?), Residual::NumericPoly(thm2_eq2(l)?)]),
        Tag::Thm2Coeff => single(id, Residual::ExactPoly(thm2_eq1(l)?.sub(&thm2_eq2(l)?))),
        Tag::Thm3I => numbered(id, differences(thm3_i_sides(l))),
        Tag::Thm3Ii => numbered(id, differences(thm3_ii_sides(l))),
        Tag::Cor41 => numbered(id, cor41(l)),
        Tag::Parity => numbered(id, parity(l)?),
        Tag::Lem51I => numbered(id, lem51_i(l)?),
        Tag::Lem51Ii => numbered(id, lem51_ii(l)?),
        Tag::Lem52I => numbered(id, lem52_i(l)?),
        Tag::Lem52Ii => numbered(id, lem52_ii(l)?),
        Tag::Prop51I => numbered(id, prop51_i(l)),
        Tag::Prop51Ii => numbered(id, prop51_ii(l)),
        Tag::Granville1 => {
            let t = genfun(GenFunKind::T, l)?.eval(&point(1, 0, 1));
            single(id, scalar(t.sub(&z(&[l - 1, 1])).sub(&z(&[2, l - 2]))))
        }
        Tag::Granville2 => {
            let t = genfun(GenFunKind::T, l)?.eval(&point(1, 1, 0));
            single(id, scalar(t.sub(&z(&[l - 1, 1])).sub(&z(&[l - 2, 2]))))
        }
        Tag::HoffmanD2 => hoffman(id),
        Tag::ZstarConsistency => zstar(id)?,
        Tag::Prop31I => {
            let (s2, line1, line2) = prop31_i(l)?;
            numbered(id, vec![Residual::NumericPoly(s2.sub(&line1)), Residual::NumericPoly(s2.sub(&line2))])
        }
        Tag::Prop31Ii => {
            let (s3, line1, line2) = prop31_ii(l)?;
            numbered(id, vec![Residual::NumericPoly(s3.sub(&line1)), Residual::NumericPoly(s3.sub(&line2))])
        }
        Tag::Lem21Eq1 => per_triple(id, lem21_eq1),
        Tag::Lem21Eq2 => per_triple(id, lem21_eq2),
        Tag::Prop21I => {
            let (a, b) = prop21_i(l)?;
            numbered(id, vec![Residual::PolylogPointwise(a), Residual::PolylogPointwise(b)])
        }
        Tag::Prop21Ii => {
            let (a, b) = prop21_ii(l)?;
            numbered(id, vec![Residual::PolylogPointwise(a), Residual::PolylogPointwise(b)])
        }
        Tag::Rem21Binom => per_triple(id, rem21_binom),
        Tag::Rem21Dpl => single(id, Residual::PolylogPointwise(rem21_dpl(l))),
        Tag::Lem22 => lem22(id)?,
        Tag::Prop22 => prop22(id)?,
    };
    Ok(eqs)
}

fn single(id: IdentityId, r: Residual) -> Vec<Equation> {
    vec![Equation { label: id.tag.name().to_string(), residual: r }]
}

fn numbered(id: IdentityId, rs: Vec<Residual>) -> Vec<Equation> {
    rs.into_iter()
        .enumerate()
        .map(|(i, r)| Equation { label: format!("{}.eq{}", id.tag, i + 1), residual: r })
        .collect()
}

fn labelled(id: IdentityId, suffix: impl std::fmt::Display, r: Residual) -> Equation {
    Equation { label: format!("{}.{}", id.tag, suffix), residual: r }
}

fn scalar(e: ZetaExpr) -> Residual {
    Residual::NumericScalar(e)
}

fn even(n: u32) -> bool {
    n % 2 == 0
}

fn z(parts: &[u32]) -> ZetaExpr {
    zeta_expr(parts)
}

/// Product of single zeta values `ζ(a)ζ(b)...`.
fn zprod(args: &[u32]) -> ZetaExpr {
    let m = ZetaMonomial::new(args.iter().map(|&a| ZetaSymbol::zeta(&[a])).collect());
    ZetaExpr::from_basis(m)
}

fn point(a: i64, b: i64, c: i64) -> [BigRational; 3] {
    [int(a), int(b), int(c)]
}

/// Sum of `ζ(l1,l2)` over admissible indices of weight `l` satisfying `pred`.
fn psum2(l: u32, pred: impl Fn(u32, u32) -> bool) -> ZetaExpr {
    wsum2(l, |a, b| if pred(a, b) { int(1) } else { int(0) })
}

fn wsum2(l: u32, w: impl Fn(u32, u32) -> BigRational) -> ZetaExpr {
    let mut out = ZetaExpr::zero();
    for c in compositions(l, 2, 2) {
        let k = c.parts();
        out.add_scaled(&z(k), &w(k[0], k[1]));
    }
    out
}

fn psum3(l: u32, pred: impl Fn(u32, u32, u32) -> bool) -> ZetaExpr {
    wsum3(l, |a, b, c| if pred(a, b, c) { int(1) } else { int(0) })
}

fn wsum3(l: u32, w: impl Fn(u32, u32, u32) -> BigRational) -> ZetaExpr {
    let mut out = ZetaExpr::zero();
    for c in compositions(l, 3, 2) {
        let k = c.parts();
        out.add_scaled(&z(k), &w(k[0], k[1], k[2]));
    }
    out
}

/// `x_i` (1-based) as a linear form.
fn x(i: usize) -> LinearForm {
    var(i - 1)
}

/// `x_{ij..}` (1-based).
fn xs(v: &[usize]) -> LinearForm {
    let vars: Vec<usize> = v.iter().map(|i| i - 1).collect();
    var_sum(&vars)
}

fn at3<C: Coeff>(p: &Poly3<C>, a: LinearForm, b: LinearForm, c: LinearForm) -> Poly3<C> {
    p.substitute(&[a, b, c])
}

fn at2<C: Coeff>(p: &Poly3<C>, a: LinearForm, b: LinearForm) -> Poly3<C> {
    p.substitute(&[a, b, zero_form()])
}

fn sum<C: Coeff>(ps: impl IntoIterator<Item = Poly3<C>>) -> Poly3<C> {
    ps.into_iter().fold(Poly3::zero(), |acc, p| acc.add(&p))
}

/// `p * e` for a rational polynomial `p`.
fn rat_times(p: &RatPoly, e: &ZetaExpr) -> GenFunPoly {
    p.map_coeffs(|c| e.scaled(c))
}

fn rat_times_li(p: &RatPoly, e: &LiExpr) -> LiPoly {
    p.map_coeffs(|c| e.scaled(c))
}

/// `sum_{σ∈S321} t(x_{σ(1)σ(2)σ(3)}, x_{σ(2)σ(3)}, x_{σ(3)})`.
fn shuffle21<C: Coeff>(t: &Poly3<C>) -> Poly3<C> {
    sum(Perm3::s_triple(3, 2, 1).iter().map(|s| at3(t, s.xs(&[1, 2, 3]), s.xs(&[2, 3]), s.x(3))))
}

/// `sum_{σ∈S3} t(x_{σ(1)σ(2)σ(3)}, x_{σ(2)σ(3)}, x_{σ(3)})`.
fn shuffle111<C: Coeff>(t: &Poly3<C>) -> Poly3<C> {
    sum(Perm3::all().iter().map(|s| at3(t, s.xs(&[1, 2, 3]), s.xs(&[2, 3]), s.x(3))))
}

/// `sum_{σ∈S321} t(x_σ) + sum_{σ∈S31} d31(x_{σ(1)}, x2)/(x_{σ(1)} - x_{σ(3)})
///  + sum_{σ∈S32} d32(x1, x_{σ(2)})/(x_{σ(2)} - x_{σ(3)})`.
fn harmonic21<C: Coeff>(t: &Poly3<C>, d31: &Poly3<C>, d32: &Poly3<C>) -> Result<Poly3<C>> {
    let perms = sum(Perm3::s_triple(3, 2, 1).iter().map(|s| at3(t, s.x(1), s.x(2), s.x(3))));
    let mut fracs = Vec::new();
    for s in Perm3::s_pair(3, 1) {
        fracs.push((at2(d31, s.x(1), x(2)), s.v(1), s.v(3)));
    }
    for s in Perm3::s_pair(3, 2) {
        fracs.push((at2(d32, x(1), s.x(2)), s.v(2), s.v(3)));
    }
    Ok(perms.add(&pair_fraction_sum(&fracs)?))
}

/// `sum_{σ∈S3} [t(x_σ) + da(x_{σ(1)}, x_{σ(2)})/(x_{σ(1)} - x_{σ(3)})
///  + db(x_{σ(1)}, x_{σ(2)})/(x_{σ(2)} - x_{σ(3)})]`.
fn harmonic111<C: Coeff>(t: &Poly3<C>, da: &Poly3<C>, db: &Poly3<C>) -> Result<Poly3<C>> {
    let mut perms = Poly3::zero();
    let mut fracs = Vec::new();
    for s in Perm3::all() {
        perms = perms.add(&at3(t, s.x(1), s.x(2), s.x(3)));
        fracs.push((at2(da, s.x(1), s.x(2)), s.v(1), s.v(3)));
        fracs.push((at2(db, s.x(1), s.x(2)), s.v(2), s.v(3)));
    }
    Ok(perms.add(&pair_fraction_sum(&fracs)?))
}

fn h_zeta(l: u32) -> Result<GenFunPoly> {
    Ok(rat_times(&homog_power_sum(l)?, &z(&[l])))
}

fn gkz_param(l: u32) -> Result<GenFunPoly> {
    let d = genfun(GenFunKind::D, l)?;
    let lhs = at2(&d, xs(&[1, 2]), x(2)).add(&at2(&d, xs(&[2, 1]), x(1)));
    let dd = RatPoly::monomial([l - 1, 0, 0], int(1)).divided_difference(0, 1)?;
    let rhs = at2(&d, x(1), x(2)).add(&at2(&d, x(2), x(1))).add(&rat_times(&dd, &z(&[l])));
    Ok(lhs.sub(&rhs))
}

fn thm1_i(l: u32) -> Result<GenFunPoly> {
    let t = genfun(GenFunKind::T, l)?;
    let d = genfun(GenFunKind::D, l)?;
    let lhs = sum([
        at3(&t, xs(&[1, 3]), xs(&[2, 3]), x(3)),
        at3(&t, xs(&[1, 3]), xs(&[3, 2]), x(2)),
        at3(&t, xs(&[3, 1]), x(1), x(2)),
        at2(&d, x(3), x(2)).exact_divide_by_var(2)?,
    ]);
    let rhs = harmonic21(&t, &d, &d)?
        .add(&at3(&t, x(3), xs(&[2, 3]), x(3)))
        .add(&at3(&t, x(3), xs(&[3, 2]), x(2)));
    Ok(lhs.sub(&rhs))
}

fn thm1_ii(l: u32) -> Result<GenFunPoly> {
    let t = genfun(GenFunKind::T, l)?;
    let d = genfun(GenFunKind::D, l)?;
    let mut lhs = shuffle111(&t);
    let mut rhs = harmonic111(&t, &d, &d)?.add(&h_zeta(l)?);
    for s in Perm3::alternating() {
        lhs = lhs.add(&at2(&d, s.x(3), s.x(2)).exact_divide_by_var(s.v(3))?);
        rhs = rhs.add(&at3(&t, s.x(3), s.xs(&[2, 3]), s.x(3))).add(&at3(&t, s.x(3), s.xs(&[3, 2]), s.x(2)));
    }
    Ok(lhs.sub(&rhs))
}

fn thm2_eq1(l: u32) -> Result<GenFunPoly> {
    let t = genfun(GenFunKind::T, l)?;
    let mut rhs = h_zeta(l)?;
    for s in Perm3::alternating() {
        rhs = rhs
            .add(&at3(&t, s.xs(&[1, 3]), s.xs(&[2, 3]), s.x(3)))
            .add(&at3(&t, s.xs(&[1, 3]), s.xs(&[3, 2]), s.x(2)))
            .add(&at3(&t, s.xs(&[3, 1]), s.x(1), s.x(2)))
            .sub(&at3(&t, s.x(1), s.x(2), s.x(3)));
    }
    Ok(shuffle111(&t).sub(&rhs))
}

/// The coefficient form: every `ζ(l1,l2,l3)` multiplied by its explicit
/// polynomial weight.
fn thm2_eq2(l: u32) -> Result<GenFunPoly> {
    let mut lhs = GenFunPoly::zero();
    for c in compositions(l, 3, 2) {
        let k = c.parts();
        let m = RatPoly::monomial([k[0] - 1, k[1] - 1, k[2] - 1], int(1));
        let mut w = shuffle111(&m);
        for s in Perm3::alternating() {
            w = w
                .add(&at3(&m, s.x(1), s.x(2), s.x(3)))
                .sub(&at3(&m, s.xs(&[1, 3]), s.xs(&[2, 3]), s.x(3)))
                .sub(&at3(&m, s.xs(&[1, 3]), s.xs(&[3, 2]), s.x(2)))
                .sub(&at3(&m, s.xs(&[3, 1]), s.x(1), s.x(2)));
        }
        lhs = lhs.add(&rat_times(&w, &z(k)));
    }
    Ok(lhs.sub(&h_zeta(l)?))
}

/// `(lhs, rhs)` of the restricted triple sums at even weight.
pub(crate) fn thm3_i_sides(l: u32) -> Vec<(ZetaExpr, ZetaExpr)> {
    let zl = z(&[l]);
    let z22 = zprod(&[l - 2, 2]);
    let rhs = |a: BigRational, b: BigRational| zl.scaled(&a).add(&z22.scaled(&b));
    let e1 = psum3(l, |a, b, c| even(a) && even(b) && even(c));
    let p1 = psum3(l, |a, b, c| even(a) && !even(b) && !even(c));
    let p2 = psum3(l, |a, b, c| even(b) && !even(a) && !even(c));
    let p3 = psum3(l, |a, b, c| even(c) && !even(a) && !even(b));
    vec![
        (e1, rhs(rat(5, 8), rat(-1, 4))),
        (p1.add(&p2).add(&p3), rhs(rat(3, 8), rat(1, 4))),
        (p1.sub(&p3), rhs(rat(-1, 4), rat(1, 2))),
    ]
}

/// `(lhs, rhs)` of the restricted triple sums at odd weight.
pub(crate) fn thm3_ii_sides(l: u32) -> Vec<(ZetaExpr, ZetaExpr)> {
    let zl = z(&[l]);
    let z2 = z(&[2, l - 2]);
    let half_d = psum2(l, |a, b| !even(a) && even(b)).scaled(&rat(1, 2));
    let o = psum3(l, |a, b, c| !even(a) && !even(b) && !even(c));
    let e13 = psum3(l, |a, b, c| even(a) && !even(b) && even(c));
    let e12 = psum3(l, |a, b, c| even(a) && even(b) && !even(c));
    let e23 = psum3(l, |a, b, c| !even(a) && even(b) && even(c));
    let d_eo = psum2(l, |a, b| even(a) && !even(b));
    vec![
        (o.add(&half_d), zl.scaled(&rat(3, 8)).sub(&z2.scaled(&rat(1, 4)))),
        (e13.add(&half_d), zl.scaled(&rat(5, 8)).add(&z2.scaled(&rat(1, 4)))),
        (e12.add(&e23).add(&d_eo), zl),
    ]
}

fn differences(sides: Vec<(ZetaExpr, ZetaExpr)>) -> Vec<Residual> {
    sides.into_iter().map(|(lhs, rhs)| scalar(lhs.sub(&rhs))).collect()
}

fn cor41(l: u32) -> Vec<Residual> {
    let p2 = |k: u32| int(2).pow(k as i32);
    let p3 = |k: u32| int(3).pow(k as i32);
    let zl = z(&[l]);
    let li = l as i64;
    vec![
        scalar(
            wsum3(l, |a, b, _| p3(a - 1) * p2(b) - p2(a + b - 1) - p2(a - 1))
                .sub(&zl.scaled(&rat((li - 4) * (li + 1), 6))),
        ),
        scalar(wsum3(l, |a, b, _| p2(a + b - 1) + p2(a - 1) - p2(b)).sub(&zl.scaled(&int(li)))),
        scalar(wsum3(l, |a, b, _| (p3(a - 1) - int(1)) * p2(b)).sub(&zl.scaled(&rat((li - 1) * (li + 4), 6)))),
    ]
}

fn parity(l: u32) -> Result<Vec<Residual>> {
    let neg = [var(0).map(|c| -c), var(1).map(|c| -c), var(2).map(|c| -c)];
    let sign = |k: u32| if even(k) { int(1) } else { int(-1) };
    let d = genfun(GenFunKind::D, l)?;
    let t = genfun(GenFunKind::T, l)?;
    Ok(vec![
        Residual::ExactPoly(d.substitute(&neg).sub(&d.scaled(&sign(l)))),
        Residual::ExactPoly(t.substitute(&neg).sub(&t.scaled(&sign(l - 1)))),
    ])
}

fn exact(e: ZetaExpr) -> Residual {
    Residual::ExactPoly(GenFunPoly::constant(e))
}

fn lem51_i(l: u32) -> Result<Vec<Residual>> {
    let t = genfun(GenFunKind::T, l)?;
    let tv = |b: i64, c: i64| t.eval(&point(1, b, c));
    let s = |a: [i64; 4]| {
        tv(1, 1)
            .scaled(&int(a[0]))
            .add(&tv(1, -1).scaled(&int(a[1])))
            .add(&tv(-1, 1).scaled(&int(a[2])))
            .add(&tv(-1, -1).scaled(&int(a[3])))
            .scaled(&rat(1, 4))
    };
    let sums: [ZetaExpr; 4] = if even(l) {
        [
            psum3(l, |a, b, c| even(a) && even(b) && even(c)),
            psum3(l, |a, b, c| even(c) && !even(a) && !even(b)),
            psum3(l, |a, b, c| even(b) && !even(a) && !even(c)),
            psum3(l, |a, b, c| even(a) && !even(b) && !even(c)),
        ]
    } else {
        [
            psum3(l, |a, b, c| even(b) && even(c) && !even(a)),
            psum3(l, |a, b, c| even(a) && even(c) && !even(b)),
            psum3(l, |a, b, c| even(a) && even(b) && !even(c)),
            psum3(l, |a, b, c| !even(a) && !even(b) && !even(c)),
        ]
    };
    let alphas = [[1, -1, -1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, 1, 1, 1]];
    Ok(alphas.iter().zip(sums).map(|(a, rhs)| exact(s(*a).sub(&rhs))).collect())
}

fn lem51_ii(l: u32) -> Result<Vec<Residual>> {
    let t = genfun(GenFunKind::T, l)?;
    let t101 = t.eval(&point(1, 0, 1));
    let tm101 = t.eval(&point(-1, 0, 1));
    let t110 = t.eval(&point(1, 1, 0));
    let tm110 = t.eval(&point(-1, 1, 0));
    let half = rat(1, 2);
    let mid_one = |first_even: bool| psum3(l, move |a, b, _| b == 1 && even(a) == first_even);
    let last_one = |first_even: bool| psum3(l, move |a, _, c| c == 1 && even(a) == first_even);
    Ok(vec![
        exact(t101.sub(&tm101).scaled(&half).sub(&mid_one(true))),
        exact(t101.add(&tm101).scaled(&half).sub(&mid_one(false))),
        exact(t110.sub(&tm110).scaled(&half).sub(&last_one(true))),
        exact(t110.add(&tm110).scaled(&half).sub(&last_one(false))),
    ])
}

fn lem52_i(l: u32) -> Result<Vec<Residual>> {
    let t = genfun(GenFunKind::T, l)?;
    let tv = |a, b, c| t.eval(&point(a, b, c));
    let zl = z(&[l]);
    let z22 = zprod(&[l - 2, 2]);
    Ok(vec![
        scalar(tv(1, 1, -1).add(&tv(1, -1, 1)).add(&tv(-1, 1, 1)).add(&zl.scaled(&rat(3, 2))).sub(&z22)),
        scalar(tv(1, 1, -1).sub(&tv(-1, 1, 1)).add(&zl.scaled(&rat(1, 2))).sub(&z22)),
        scalar(tv(-1, 0, 1).add(&zl.scaled(&rat(1, 2))).sub(&z(&[l - 1, 1])).add(&z(&[l - 2, 2]))),
    ])
}

fn lem52_ii(l: u32) -> Result<Vec<Residual>> {
    let t = genfun(GenFunKind::T, l)?;
    let d = genfun(GenFunKind::D, l)?;
    let tv = |a, b, c| t.eval(&point(a, b, c));
    let dm = d.eval(&point(-1, 1, 0));
    let zl = z(&[l]);
    let half = rat(1, 2);
    let z2 = z(&[2, l - 2]);
    Ok(vec![
        scalar(tv(1, 1, -1).add(&tv(1, -1, 1)).add(&tv(-1, 1, 1)).add(&dm).add(&zl.scaled(&half)).add(&z2)),
        scalar(tv(1, 1, -1).add(&tv(-1, 1, 1)).add(&zl.scaled(&half)).add(&z2)),
        scalar(tv(-1, 0, 1).add(&zl.scaled(&half)).add(&z(&[l - 1, 1]))),
        scalar(
            tv(-1, 1, 0)
                .add(&dm.scaled(&half))
                .add(&zl.scaled(&rat(1, 4)))
                .add(&z(&[l - 1, 1]).scaled(&half))
                .add(&z(&[l - 2, 2]).scaled(&half)),
        ),
    ])
}

fn prop51_i(l: u32) -> Vec<Residual> {
    let zl = z(&[l]);
    let (za, zb, zc) = (z(&[l - 1, 1]), z(&[l - 2, 2]), z(&[2, l - 2]));
    let s1 = psum3(l, |a, b, c| b == 1 && even(a) && !even(c));
    let s2 = psum3(l, |a, b, c| b == 1 && !even(a) && even(c));
    let half = rat(1, 2);
    vec![
        scalar(s1.sub(&zl.scaled(&rat(1, 4))).sub(&zb.scaled(&half)).sub(&zc.scaled(&half))),
        scalar(s2.add(&zl.scaled(&rat(1, 4))).sub(&za).add(&zb.scaled(&half)).sub(&zc.scaled(&half))),
    ]
}

fn prop51_ii(l: u32) -> Vec<Residual> {
    let zl = z(&[l]);
    let (za, zb, zc) = (z(&[l - 1, 1]), z(&[l - 2, 2]), z(&[2, l - 2]));
    let half = rat(1, 2);
    let s1 = psum3(l, |a, b, c| b == 1 && even(a) && even(c));
    let s2 = psum3(l, |a, b, c| b == 1 && !even(a) && !even(c));
    let s3 = psum3(l, |a, b, c| c == 1 && even(a) && even(b)).add(&psum2(l, |a, b| even(a) && !even(b)).scaled(&half));
    let s4 = psum3(l, |a, b, c| c == 1 && !even(a) && !even(b)).add(&psum2(l, |a, b| !even(a) && even(b)).scaled(&half));
    vec![
        scalar(s1.sub(&zl.scaled(&rat(1, 4))).sub(&za).sub(&zc.scaled(&half))),
        scalar(s2.add(&zl.scaled(&rat(1, 4))).sub(&zc.scaled(&half))),
        scalar(s3.sub(&zl.scaled(&rat(3, 8))).sub(&za.scaled(&rat(3, 4))).sub(&zb.scaled(&rat(3, 4)))),
        scalar(s4.sub(&zl.scaled(&rat(1, 8))).sub(&za.scaled(&rat(1, 4))).sub(&zb.scaled(&rat(1, 4)))),
    ]
}

fn hoffman(id: IdentityId) -> Vec<Equation> {
    let l = id.l;
    let mut out = Vec::new();
    for l1 in 2..=l - 2 {
        let l2 = l - 1 - l1;
        let mut e = z(&[l1 + 1, l2]).add(&z(&[l1, l2 + 1]));
        for j1 in 2..=l1 {
            e = e.sub(&z(&[j1, l1 + 1 - j1, l2]));
        }
        for j2 in 2..=l2 {
            e = e.sub(&z(&[l1, j2, l2 + 1 - j2]));
        }
        out.push(labelled(id, format!("({l1},{l2})"), scalar(e)));
    }
    out
}

/// Regularized shapes of weight `l` with a closed form.
pub(crate) fn star_shapes(l: u32) -> Vec<Composition> {
    let mut out = Vec::new();
    if l >= 3 {
        out.push(Composition::from_slice(&[1, l - 1]));
    }
    if l >= 4 {
        out.push(Composition::from_slice(&[1, 1, l - 2]));
        for n1 in 2..l - 1 {
            out.push(Composition::from_slice(&[1, n1, l - 1 - n1]));
        }
    }
    out
}

fn zstar(id: IdentityId) -> Result<Vec<Equation>> {
    let mut out = Vec::new();
    for c in star_shapes(id.l) {
        let e = regularized_symbol(&c)?.sub(&regularized_symbol_definitional(&c)?);
        out.push(labelled(id, format!("({c})"), scalar(e)));
    }
    Ok(out)
}

/// `(S2, line1, line2)` for the two-fold product class.
pub(crate) fn prop31_i(l: u32) -> Result<(GenFunPoly, GenFunPoly, GenFunPoly)> {
    let ts = genfun(GenFunKind::Tstar, l)?;
    let ds = genfun(GenFunKind::Dstar, l)?;
    let mut s2 = GenFunPoly::zero();
    for l1 in 3..=l.saturating_sub(2) {
        let l2 = l - l1;
        let p = genfun(GenFunKind::Dstar, l1)?;
        s2 = s2.add(&p.mul(&GenFunPoly::monomial([0, 0, l2 - 1], z(&[l2]))));
    }
    let line1 = sum([
        at3(&ts, xs(&[1, 3]), xs(&[2, 3]), x(3)),
        at3(&ts, xs(&[1, 3]), xs(&[3, 2]), x(2)),
        at3(&ts, xs(&[3, 1]), x(1), x(2)),
    ]);
    let line2 = harmonic21(&ts, &ds, &ds)?.sub(&GenFunPoly::monomial([0, l - 3, 0], zprod(&[l - 2, 2])));
    Ok((s2, line1, line2))
}

/// `(S3, line1, line2)` for the three-fold product class.
pub(crate) fn prop31_ii(l: u32) -> Result<(GenFunPoly, GenFunPoly, GenFunPoly)> {
    let ts = genfun(GenFunKind::Tstar, l)?;
    let ds = genfun(GenFunKind::Dstar, l)?;
    let mut s3 = GenFunPoly::zero();
    for c in compositions(l, 3, 1) {
        let k = c.parts();
        if k.iter().all(|&ki| ki >= 2) {
            s3.add_term([k[0] - 1, k[1] - 1, k[2] - 1], &zprod(k), &int(1));
        }
    }
    let line1 = shuffle111(&ts);
    let z22 = zprod(&[l - 2, 2]);
    let mut line2 = harmonic111(&ts, &ds, &ds)?.add(&h_zeta(l)?);
    for i in 0..3 {
        let mut e = [0; 3];
        e[i] = l - 3;
        line2.add_term(e, &z22, &int(-1));
    }
    Ok((s3, line1, line2))
}

fn li_mul(a: &LiExpr, b: &LiExpr) -> LiExpr {
    <LiExpr as Ring>::mul(a, b)
}

fn li1(k: u32, e: u32) -> LiExpr {
    li_expr(&[k], &[e])
}

fn per_triple(id: IdentityId, f: fn([u32; 3]) -> LiExpr) -> Vec<Equation> {
    compositions(id.l, 3, 1)
        .iter()
        .map(|c| {
            let k = c.parts();
            let e = f([k[0], k[1], k[2]]);
            labelled(id, format!("({c})"), Residual::PolylogPointwise(LiPoly::constant(e)))
        })
        .collect()
}

fn lem21_eq1(k: [u32; 3]) -> LiExpr {
    let [k1, k2, k3] = k;
    let lhs = li_mul(&li_expr(&[k1, k2], &[1, 2]), &li1(k3, 1));
    let mut rhs = LiExpr::zero();
    for s in Perm3::s_triple(3, 2, 1) {
        let idx = [k[s.v(1)], k[s.v(2)], k[s.v(3)]];
        rhs.add_assign(&li_expr(&idx, &[1, 2, 3]));
    }
    rhs.add_assign(&li_expr(&[k1 + k3, k2], &[2, 3]));
    rhs.add_assign(&li_expr(&[k1, k2 + k3], &[1, 3]));
    lhs.sub(&rhs)
}

fn lem21_eq2(k: [u32; 3]) -> LiExpr {
    let lhs = li_mul(&li_mul(&li1(k[0], 1), &li1(k[1], 1)), &li1(k[2], 1));
    let mut rhs = LiExpr::zero();
    for s in Perm3::all() {
        rhs.add_assign(&li_expr(&[k[s.v(1)], k[s.v(2)], k[s.v(3)]], &[1, 2, 3]));
    }
    for t in Perm3::alternating() {
        let (a, b, c) = (k[t.v(1)], k[t.v(2)], k[t.v(3)]);
        rhs.add_assign(&li_expr(&[a + b, c], &[2, 3]));
        rhs.add_assign(&li_expr(&[a, b + c], &[1, 3]));
    }
    rhs.add_assign(&li1(k[0] + k[1] + k[2], 3));
    lhs.sub(&rhs)
}

/// `S2(x1,x2,x3; z^a, z^b) = sum_{l1>=2} DPL_{l1}(x1,x2; z^a,z^b) x3^(l2-1) Li_{l2}(z^a)`.
fn s2_poly(l: u32, exps: [u32; 2]) -> LiPoly {
    let mut out = LiPoly::zero();
    for l1 in 2..l {
        let l2 = l - l1;
        let tail = LiPoly::monomial([0, 0, l2 - 1], li1(l2, exps[0]));
        out = out.add(&dpl(l1, exps).mul(&tail));
    }
    out
}

fn s3_poly(l: u32) -> LiPoly {
    let mut out = LiPoly::zero();
    for c in compositions(l, 3, 1) {
        let k = c.parts();
        let e = li_mul(&li_mul(&li1(k[0], 1), &li1(k[1], 1)), &li1(k[2], 1));
        out.add_term([k[0] - 1, k[1] - 1, k[2] - 1], &e, &int(1));
    }
    out
}

fn prop21_i(l: u32) -> Result<(LiPoly, LiPoly)> {
    let eq1 = at3(&s2_poly(l, [1, 1]), xs(&[1, 2]), x(2), x(3)).sub(&shuffle21(&tpl(l, [1, 1, 1])));
    let rhs = harmonic21(&tpl(l, [1, 2, 3]), &dpl(l, [2, 3]), &dpl(l, [1, 3]))?;
    Ok((eq1, s2_poly(l, [1, 2]).sub(&rhs)))
}

fn prop21_ii(l: u32) -> Result<(LiPoly, LiPoly)> {
    let s3 = s3_poly(l);
    let eq1 = s3.sub(&shuffle111(&tpl(l, [1, 1, 1])));
    let rhs = harmonic111(&tpl(l, [1, 2, 3]), &dpl(l, [2, 3]), &dpl(l, [1, 3]))?
        .add(&rat_times_li(&homog_power_sum(l)?, &li1(l, 3)));
    Ok((eq1, s3.sub(&rhs)))
}

fn binom(m: i64, n: i64) -> BigRational {
    if n < 0 || m < n {
        return int(0);
    }
    let mut b = int(1);
    for i in 0..n {
        b = b * int(m - i) / int(i + 1);
    }
    b
}

/// Shuffle relation for `Li_{r,q}(z,z) Li_p(z)`; the triple is `(r, q, p)`.
fn rem21_binom(k: [u32; 3]) -> LiExpr {
    let [r, q, p] = k;
    let l = r + q + p;
    let lhs = li_mul(&li_expr(&[r, q], &[1, 1]), &li1(p, 1));
    let mut rhs = LiExpr::zero();
    for c in compositions(l - q, 2, 1) {
        let m = c.parts();
        rhs.add_scaled(&li_expr(&[m[0], m[1], q], &[1, 1, 1]), &binom(m[0] as i64 - 1, p as i64 - 1));
    }
    let (r, q) = (r as i64, q as i64);
    for c in compositions(l, 3, 1) {
        let m = c.parts();
        let (l1, l2, l3) = (m[0] as i64, m[1] as i64, m[2] as i64);
        let w = binom(l1 - 1, r - 1) * (binom(l2 - 1, q - 1) + binom(l2 - 1, q - l3));
        rhs.add_scaled(&li_expr(m, &[1, 1, 1]), &w);
    }
    lhs.sub(&rhs)
}

fn rem21_dpl(l: u32) -> LiPoly {
    let mut lhs = LiPoly::zero();
    for c in compositions(l, 2, 1) {
        let k = c.parts();
        lhs.add_term([k[0] - 1, k[1] - 1, 0], &li_mul(&li1(k[0], 1), &li1(k[1], 1)), &int(1));
    }
    let d = dpl(l, [1, 1]);
    lhs.sub(&at2(&d, xs(&[1, 2]), x(2))).sub(&at2(&d, xs(&[2, 1]), x(1)))
}

/// Coefficients of the regularization polynomial of `Li_c(z,...,z)`.
fn reg_poly(c: &[u32]) -> Result<Vec<ZetaExpr>> {
    let p = reg_t(&word_from_composition(&Composition::from_slice(c)))?;
    let top = p.degree().unwrap_or(0);
    (0..=top).map(|d| words_to_expr(&p.coefficient(d))).collect()
}

fn same_arg(c: &[u32]) -> Result<Residual> {
    let ones = vec![1; c.len()];
    Ok(Residual::BoundaryLimit(BoundaryLimit { f: li_expr(c, &ones), t_poly: reg_poly(c)? }))
}

/// `Li_c(z,..,z) - Li_c(z^e1, ..)` tends to `limit`.
fn paired(c: &[u32], exps: &[u32], limit: ZetaExpr) -> Residual {
    let ones = vec![1; c.len()];
    let f = li_expr(c, &ones).sub(&li_expr(c, exps));
    Residual::BoundaryLimit(BoundaryLimit { f, t_poly: vec![limit] })
}

fn converges_to_zeta(c: &[u32], exps: &[u32]) -> Residual {
    Residual::BoundaryLimit(BoundaryLimit { f: li_expr(c, exps), t_poly: vec![z(c)] })
}

fn lem22(id: IdentityId) -> Result<Vec<Equation>> {
    let l = id.l;
    let mut out = Vec::new();
    if l == 2 {
        out.push(labelled(id, "i.same", same_arg(&[1, 1])?));
        out.push(labelled(id, "i.(1,2)", paired(&[1, 1], &[1, 2], z(&[2]).scaled(&rat(1, 2)))));
        return Ok(out);
    }
    let c = [1, l - 1];
    out.push(labelled(id, "ii.same", same_arg(&c)?));
    for (m, n) in [(1, 2), (1, 3), (2, 3)] {
        let limit = if m == 2 { z(&[l - 1]) } else { ZetaExpr::zero() };
        out.push(labelled(id, format!("ii.({m},{n})"), paired(&c, &[m, n], limit)));
    }
    if l >= 4 {
        let c = [1, 1, l - 2];
        out.push(labelled(id, "iii.same", same_arg(&c)?));
        out.push(labelled(id, "iii.(1,2,3)", paired(&c, &[1, 2, 3], zprod(&[l - 2, 2]).scaled(&rat(1, 2)))));
        for k1 in 2..=l - 2 {
            let c = [1, k1, l - 1 - k1];
            let name = format!("iv.({},{},{})", c[0], c[1], c[2]);
            out.push(labelled(id, format!("{name}.same"), same_arg(&c)?));
            out.push(labelled(id, format!("{name}.(1,2,3)"), paired(&c, &[1, 2, 3], ZetaExpr::zero())));
        }
    }
    Ok(out)
}

fn prop22(id: IdentityId) -> Result<Vec<Equation>> {
    let l = id.l;
    let mut out = Vec::new();
    if l == 2 {
        out.push(labelled(id, "i.(1,1)", same_arg(&[1, 1])?));
        out.push(labelled(id, "i.(1,2)", paired(&[1, 1], &[1, 2], z(&[2]).scaled(&rat(1, 2)))));
        return Ok(out);
    }
    for (m, n) in [(1, 1), (1, 2), (1, 3), (2, 3)] {
        for c in compositions(l, 2, 1) {
            let k = c.parts();
            let r = if k[0] >= 2 {
                converges_to_zeta(k, &[m, n])
            } else if m == 1 && n == 1 {
                same_arg(k)?
            } else {
                let limit = if m == 2 { z(&[l - 1]) } else { ZetaExpr::zero() };
                paired(k, &[m, n], limit)
            };
            out.push(labelled(id, format!("ii.({m},{n}).({c})"), r));
        }
    }
    if l >= 4 {
        for exps in [[1, 1, 1], [1, 2, 3]] {
            for c in compositions(l, 3, 1) {
                let k = c.parts();
                let r = if k[0] >= 2 {
                    converges_to_zeta(k, &exps)
                } else if exps == [1, 1, 1] {
                    same_arg(k)?
                } else if k[1] == 1 {
                    paired(k, &exps, zprod(&[l - 2, 2]).scaled(&rat(1, 2)))
                } else {
                    paired(k, &exps, ZetaExpr::zero())
                };
                let tag = if exps == [1, 1, 1] { "(1,1,1)" } else { "(1,2,3)" };
                out.push(labelled(id, format!("iii.{tag}.({c})"), r));
            }
        }
    }
    Ok(out)
}
