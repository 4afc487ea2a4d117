//! Extended double shuffle relations of the two- and three-fold product
//! classes, read off coefficientwise.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::formulas::{prop31_i, prop31_ii};
use super::verify::{boundary_context, verify_residual, Report};
use super::Residual;
use crate::error::{MzvError, Result};
use crate::numerics::{Evaluator, PrecisionContext};
use crate::regularization::{expand_stars, ZetaExpr, ZetaMonomial};
use crate::word_algebra::{compositions, fmt_rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RelationClass {
    /// Double times single.
    R21,
    /// Single times single times single.
    R111,
}

impl fmt::Display for RelationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationClass::R21 => "r21",
            RelationClass::R111 => "r111",
        })
    }
}

impl FromStr for RelationClass {
    type Err = MzvError;

    fn from_str(s: &str) -> Result<RelationClass> {
        match s.to_ascii_lowercase().as_str() {
            "r21" => Ok(RelationClass::R21),
            "r111" => Ok(RelationClass::R111),
            _ => Err(MzvError::Parse(format!("unknown relation class `{s}` (expected r21 or r111)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationVector {
    pub l: u32,
    pub class: RelationClass,
    /// `(p, q, r)`: the coefficient of `x1^(p-1) x2^(q-1) x3^(r-1)`.
    pub index: [u32; 3],
    /// Vanishing combination; regularized symbols are expanded.
    pub coefficients: ZetaExpr,
    /// Set on the `(1, l-2, 1)` vector of the two-fold class, which carries
    /// an extra `ζ(l-2)ζ(2)` term.
    pub extra_zeta2_term: bool,
}

impl RelationVector {
    pub fn label(&self) -> String {
        let [p, q, r] = self.index;
        format!("{}.({p},{q},{r})", self.class)
    }
}

/// One relation per `(p, q, r)` with `p + q + r = l`.
pub fn mine_relations(l: u32, class: RelationClass) -> Result<Vec<RelationVector>> {
    if l < 4 {
        return Err(MzvError::WeightTooSmall { weight: l, min: 4 });
    }
    let (_, line1, line2) = match class {
        RelationClass::R21 => prop31_i(l)?,
        RelationClass::R111 => prop31_ii(l)?,
    };
    let diff = line1.sub(&line2);
    compositions(l, 3, 1)
        .iter()
        .map(|c| {
            let k = c.parts();
            let index = [k[0], k[1], k[2]];
            Ok(RelationVector {
                l,
                class,
                index,
                coefficients: expand_stars(&diff.coefficient(&[k[0] - 1, k[1] - 1, k[2] - 1]))?,
                extra_zeta2_term: class == RelationClass::R21 && k[0] == 1 && k[2] == 1,
            })
        })
        .collect()
}

/// Numerically checks every mined relation.
pub fn verify_relations(l: u32, class: RelationClass, ctx: PrecisionContext) -> Result<Vec<Report>> {
    let ev = Evaluator::new(ctx);
    let boundary = Evaluator::new(boundary_context());
    mine_relations(l, class)?
        .into_iter()
        .map(|v| verify_residual(&v.label(), l, &Residual::NumericScalar(v.coefficients), &ev, &boundary))
        .collect()
}

/// Relation matrix as CSV: one row per vector, one column per ζ-monomial.
pub fn relations_csv(vectors: &[RelationVector]) -> Result<String> {
    let basis: BTreeSet<&ZetaMonomial> = vectors.iter().flat_map(|v| v.coefficients.iter().map(|(m, _)| m)).collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["class".to_string(), "p".into(), "q".into(), "r".into(), "extra_zeta2_term".into()];
    header.extend(basis.iter().map(|m| m.to_string()));
    w.write_record(&header).map_err(csv_err)?;
    for v in vectors {
        let mut row = vec![v.class.to_string()];
        row.extend(v.index.iter().map(|i| i.to_string()));
        row.push(v.extra_zeta2_term.to_string());
        row.extend(basis.iter().map(|m| fmt_rational(&v.coefficients.coefficient(m))));
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| MzvError::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| MzvError::Parse(e.to_string()))
}

fn csv_err(e: csv::Error) -> MzvError {
    MzvError::Parse(format!("csv: {e}"))
}
