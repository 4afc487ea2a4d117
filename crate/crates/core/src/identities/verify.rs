//! Numeric and exact verification drivers.

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{build_residual, catalog, BoundaryLimit, IdentityId, Residual};
use crate::error::{MzvError, Result};
use crate::genfun::{li_expr, LiPoly};
use crate::numerics::{format_sci, BigReal, Evaluator, PrecisionContext};
use crate::word_algebra::{fmt_rational, int, rat};

/// Points `(x1, x2, x3)` at which polynomial residuals are evaluated. The
/// last one is a tie point for the divided differences.
pub const POINT_BATTERY: [(i64, i64, i64, i64); 5] =
    [(1, 1, 1, 1), (1, 1, 0, 1), (1, 0, 0, 1), (2, 1, 3, 7), (1, 1, 2, 1)];

/// Base points `z` for pointwise polylogarithm identities, as `(num, den)`.
pub const Z_BATTERY: [(i64, i64); 3] = [(3, 10), (1, 2), (7, 10)];

/// Boundary checks use `z = 1 - 2^-k` for these `k`.
pub const BOUNDARY_STEPS: std::ops::RangeInclusive<u32> = 8..=16;

/// Gaps below this are treated as numerically zero when checking the trend.
const BOUNDARY_NOISE: f64 = 1e-9;
const BOUNDARY_TOL: f64 = 1e-3;
const SLACK_DIGITS: u32 = 5;

/// Working precision of boundary checks, independent of the requested one:
/// the claimed limits are only approached at rate `(1-z) log^J(1-z)`.
pub fn boundary_context() -> PrecisionContext {
    PrecisionContext::with_guard(10, 4)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointResidual {
    pub at: String,
    pub residual: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub id: String,
    pub l: u32,
    pub digits: u32,
    pub kind: String,
    pub points: Vec<PointResidual>,
    pub max_residual: String,
    pub pass: bool,
}

fn point(p: (i64, i64, i64, i64)) -> [BigRational; 3] {
    [rat(p.0, p.3), rat(p.1, p.3), rat(p.2, p.3)]
}

fn point_label(x: &[BigRational; 3]) -> String {
    format!("({},{},{})", fmt_rational(&x[0]), fmt_rational(&x[1]), fmt_rational(&x[2]))
}

/// Numeric residual bookkeeping shared by scalar-style checks.
struct Scalars {
    tol: f64,
    points: Vec<PointResidual>,
    max: f64,
}

impl Scalars {
    fn new(digits: u32) -> Scalars {
        let tol = 10f64.powi(-(digits.saturating_sub(SLACK_DIGITS) as i32));
        Scalars { tol, points: Vec::new(), max: 0.0 }
    }

    fn push(&mut self, at: String, v: &BigReal) {
        let r = v.abs_upper_f64();
        self.max = self.max.max(r);
        self.points.push(PointResidual { at, residual: format_sci(r) });
    }

    fn finish(self, id: &str, l: u32, digits: u32, kind: &str) -> Report {
        Report {
            id: id.to_string(),
            l,
            digits,
            kind: kind.to_string(),
            points: self.points,
            max_residual: format_sci(self.max),
            pass: self.max < self.tol,
        }
    }
}

/// Verifies a single residual. `boundary` evaluates boundary limits.
pub fn verify_residual(
    label: &str,
    l: u32,
    residual: &Residual,
    ev: &Evaluator,
    boundary: &Evaluator,
) -> Result<Report> {
    let digits = ev.context().decimal_digits;
    let kind = residual.kind();
    let mut acc = Scalars::new(digits);
    match residual {
        Residual::ExactPoly(p) => {
            let pass = p.is_zero();
            return Ok(Report {
                id: label.to_string(),
                l,
                digits,
                kind: kind.to_string(),
                points: Vec::new(),
                max_residual: if pass { "0".to_string() } else { format!("{} nonzero terms", p.len()) },
                pass,
            });
        }
        Residual::NumericScalar(e) => acc.push("scalar".to_string(), &ev.expr(e)?),
        Residual::NumericPoly(p) => {
            for pt in POINT_BATTERY {
                let x = point(pt);
                acc.push(point_label(&x), &ev.expr(&p.eval(&x))?);
            }
        }
        Residual::PolylogPointwise(p) => polylog_points(p, ev, &mut acc)?,
        Residual::BoundaryLimit(b) => return boundary_report(label, l, b, boundary),
    }
    Ok(acc.finish(label, l, digits, kind))
}

fn polylog_points(p: &LiPoly, ev: &Evaluator, acc: &mut Scalars) -> Result<()> {
    let constant = p.degree().is_none_or(|d| d == 0);
    let xs: Vec<[BigRational; 3]> =
        if constant { vec![[int(0), int(0), int(0)]] } else { POINT_BATTERY.iter().map(|&q| point(q)).collect() };
    for x in &xs {
        let e = p.eval(x);
        for (n, d) in Z_BATTERY {
            let z = rat(n, d);
            let at = if constant {
                format!("z={}", fmt_rational(&z))
            } else {
                format!("x={} z={}", point_label(x), fmt_rational(&z))
            };
            acc.push(at, &ev.li_expr(&e, &z)?);
        }
    }
    Ok(())
}

/// `-log(1 - z)` at `z = 1 - 2^-k`, which is `k log 2`.
fn t_at_step(k: u32, ev: &Evaluator) -> Result<BigReal> {
    let ln2 = ev.li_expr(&li_expr(&[1], &[1]), &rat(1, 2))?;
    Ok(ln2.mul_rational(&int(k as i64)))
}

fn boundary_report(label: &str, l: u32, b: &BoundaryLimit, ev: &Evaluator) -> Result<Report> {
    let coeffs: Vec<BigReal> = b.t_poly.iter().map(|c| ev.expr(c)).collect::<Result<_>>()?;
    let mut gaps = Vec::new();
    let mut points = Vec::new();
    for k in BOUNDARY_STEPS {
        let z = int(1) - rat(1, 1i64 << k);
        let f = ev.li_expr(&b.f, &z)?;
        let t = t_at_step(k, ev)?;
        let mut poly = BigReal::zero(ev.context().bits());
        for c in coeffs.iter().rev() {
            poly = poly.mul(&t).add(c);
        }
        let gap = f.sub(&poly).abs_upper_f64();
        points.push(PointResidual { at: format!("k={k}"), residual: format_sci(gap) });
        gaps.push(gap);
    }
    let last = *gaps.last().ok_or_else(|| MzvError::PreconditionViolated("no boundary steps".into()))?;
    let trend = gaps.windows(2).all(|w| w[1] <= w[0] || w[1] < BOUNDARY_NOISE);
    Ok(Report {
        id: label.to_string(),
        l,
        digits: ev.context().decimal_digits,
        kind: "boundary_limit".to_string(),
        points,
        max_residual: format_sci(last),
        pass: trend && last < BOUNDARY_TOL,
    })
}

fn verify_with(id: IdentityId, ev: &Evaluator, boundary: &Evaluator) -> Result<Vec<Report>> {
    build_residual(id)?
        .iter()
        .map(|eq| verify_residual(&eq.label, id.l, &eq.residual, ev, boundary))
        .collect()
}

/// One report per displayed equation of `id`.
pub fn verify(id: IdentityId, ctx: PrecisionContext) -> Result<Vec<Report>> {
    let ev = Evaluator::new(ctx);
    let boundary = Evaluator::new(boundary_context());
    verify_with(id, &ev, &boundary)
}

/// Runs the whole catalog up to `max_weight` on `jobs` threads (0 picks the
/// default). Reports come back in catalog order.
pub fn verify_all(max_weight: u32, ctx: PrecisionContext, jobs: usize) -> Result<Vec<Report>> {
    let ids = catalog(max_weight);
    let ev = Evaluator::new(ctx);
    let boundary = Evaluator::new(boundary_context());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| MzvError::PreconditionViolated(format!("thread pool: {e}")))?;
    let per_id: Vec<Result<Vec<Report>>> =
        pool.install(|| ids.par_iter().map(|&id| verify_with(id, &ev, &boundary)).collect());
    let mut out = Vec::new();
    for r in per_id {
        out.extend(r?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::Tag;

    fn run(tag: Tag, l: u32) -> Vec<Report> {
        verify(IdentityId::new(tag, l).unwrap(), PrecisionContext::new(30)).unwrap()
    }

    #[test]
    fn euler_and_tzv() {
        for r in run(Tag::EulerSum, 6).into_iter().chain(run(Tag::TzvSum, 6)) {
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn exact_report() {
        let r = run(Tag::Thm2Coeff, 5);
        assert!(r[0].pass && r[0].max_residual == "0");
    }

    #[test]
    fn thm3_and_thm1() {
        for r in run(Tag::Thm3I, 6).into_iter().chain(run(Tag::Thm3Ii, 7)).chain(run(Tag::Thm1I, 5)) {
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn json_shape() {
        let r = &run(Tag::EulerSum, 4)[0];
        let v = serde_json::to_value(r).unwrap();
        for key in ["id", "l", "digits", "points", "max_residual", "pass"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }
}
