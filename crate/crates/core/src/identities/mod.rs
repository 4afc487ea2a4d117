//! Catalog of the identities checked by this crate. Every identity is
//! compiled to one or more residuals that must vanish, either exactly or
//! numerically.

mod formulas;
mod relations;
mod verify;

use std::fmt;
use std::str::FromStr;

use crate::error::{MzvError, Result};
use crate::genfun::{GenFunPoly, LiPoly};
use crate::genfun::LiExpr;
use crate::regularization::ZetaExpr;

pub use relations::{mine_relations, relations_csv, verify_relations, RelationClass, RelationVector};
pub use verify::{
    boundary_context, verify, verify_all, verify_residual, PointResidual, Report, BOUNDARY_STEPS, POINT_BATTERY,
    Z_BATTERY,
};

/// Identity families, in canonical report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    EulerSum,
    GkzParam,
    DzvWeighted,
    DzvRestricted,
    TzvSum,
    Thm1I,
    Thm1Ii,
    Thm2,
    Thm2Coeff,
    Thm3I,
    Thm3Ii,
    Cor41,
    Parity,
    Lem51I,
    Lem51Ii,
    Lem52I,
    Lem52Ii,
    Prop51I,
    Prop51Ii,
    Granville1,
    Granville2,
    HoffmanD2,
    ZstarConsistency,
    Prop31I,
    Prop31Ii,
    Lem21Eq1,
    Lem21Eq2,
    Prop21I,
    Prop21Ii,
    Rem21Binom,
    Rem21Dpl,
    Lem22,
    Prop22,
}

/// Weight parity a tag requires.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Any,
    Even,
    Odd,
}

impl Tag {
    pub const ALL: [Tag; 33] = [
        Tag::EulerSum,
        Tag::GkzParam,
        Tag::DzvWeighted,
        Tag::DzvRestricted,
        Tag::TzvSum,
        Tag::Thm1I,
        Tag::Thm1Ii,
        Tag::Thm2,
        Tag::Thm2Coeff,
        Tag::Thm3I,
        Tag::Thm3Ii,
        Tag::Cor41,
        Tag::Parity,
        Tag::Lem51I,
        Tag::Lem51Ii,
        Tag::Lem52I,
        Tag::Lem52Ii,
        Tag::Prop51I,
        Tag::Prop51Ii,
        Tag::Granville1,
        Tag::Granville2,
        Tag::HoffmanD2,
        Tag::ZstarConsistency,
        Tag::Prop31I,
        Tag::Prop31Ii,
        Tag::Lem21Eq1,
        Tag::Lem21Eq2,
        Tag::Prop21I,
        Tag::Prop21Ii,
        Tag::Rem21Binom,
        Tag::Rem21Dpl,
        Tag::Lem22,
        Tag::Prop22,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Tag::EulerSum => "euler_sum",
            Tag::GkzParam => "gkz_param",
            Tag::DzvWeighted => "dzv_weighted",
            Tag::DzvRestricted => "dzv_restricted",
            Tag::TzvSum => "tzv_sum",
            Tag::Thm1I => "thm1_i",
            Tag::Thm1Ii => "thm1_ii",
            Tag::Thm2 => "thm2",
            Tag::Thm2Coeff => "thm2_coeff",
            Tag::Thm3I => "thm3_i",
            Tag::Thm3Ii => "thm3_ii",
            Tag::Cor41 => "cor41",
            Tag::Parity => "parity",
            Tag::Lem51I => "lem51_i",
            Tag::Lem51Ii => "lem51_ii",
            Tag::Lem52I => "lem52_i",
            Tag::Lem52Ii => "lem52_ii",
            Tag::Prop51I => "prop51_i",
            Tag::Prop51Ii => "prop51_ii",
            Tag::Granville1 => "granville1",
            Tag::Granville2 => "granville2",
            Tag::HoffmanD2 => "hoffman_d2",
            Tag::ZstarConsistency => "zstar_consistency",
            Tag::Prop31I => "prop31_i",
            Tag::Prop31Ii => "prop31_ii",
            Tag::Lem21Eq1 => "lem21_eq1",
            Tag::Lem21Eq2 => "lem21_eq2",
            Tag::Prop21I => "prop21_i",
            Tag::Prop21Ii => "prop21_ii",
            Tag::Rem21Binom => "rem21_binom",
            Tag::Rem21Dpl => "rem21_dpl",
            Tag::Lem22 => "lem22",
            Tag::Prop22 => "prop22",
        }
    }

    pub fn min_weight(self) -> u32 {
        match self {
            Tag::Lem22 | Tag::Prop22 | Tag::Rem21Dpl => 2,
            Tag::EulerSum
            | Tag::GkzParam
            | Tag::DzvWeighted
            | Tag::ZstarConsistency
            | Tag::Parity
            | Tag::Lem21Eq1
            | Tag::Lem21Eq2
            | Tag::Prop21I
            | Tag::Prop21Ii
            | Tag::Rem21Binom => 3,
            Tag::Thm3Ii | Tag::Lem52Ii | Tag::Prop51Ii => 5,
            _ => 4,
        }
    }

    pub fn parity(self) -> Parity {
        match self {
            Tag::DzvRestricted | Tag::Thm3I | Tag::Lem52I | Tag::Prop51I => Parity::Even,
            Tag::Thm3Ii | Tag::Lem52Ii | Tag::Prop51Ii => Parity::Odd,
            _ => Parity::Any,
        }
    }

    /// Boundary-limit tags evaluate polylogarithms very close to 1 and are
    /// only swept up to this weight by [`verify_all`].
    pub fn sweep_cap(self) -> Option<u32> {
        match self {
            Tag::Lem22 | Tag::Prop22 => Some(6),
            _ => None,
        }
    }

    pub fn accepts(self, l: u32) -> bool {
        l >= self.min_weight()
            && match self.parity() {
                Parity::Any => true,
                Parity::Even => l % 2 == 0,
                Parity::Odd => l % 2 == 1,
            }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Tag {
    type Err = MzvError;

    fn from_str(s: &str) -> Result<Tag> {
        Tag::ALL
            .iter()
            .copied()
            .find(|t| t.name() == s)
            .ok_or_else(|| MzvError::Parse(format!("unknown identity `{s}`")))
    }
}

/// An identity family at a fixed weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdentityId {
    pub tag: Tag,
    pub l: u32,
}

impl IdentityId {
    pub fn new(tag: Tag, l: u32) -> Result<IdentityId> {
        if l < tag.min_weight() {
            return Err(MzvError::WeightTooSmall { weight: l, min: tag.min_weight() });
        }
        if !tag.accepts(l) {
            let need = if tag.parity() == Parity::Even { "even" } else { "odd" };
            return Err(MzvError::PreconditionViolated(format!(
                "weight parity violated: {tag} needs {need} weight, got {l}"
            )));
        }
        Ok(IdentityId { tag, l })
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.tag, self.l)
    }
}

/// `f(z) - sum_k c_k T^k` with `T = -log(1-z)`, expected to tend to 0 as
/// `z -> 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryLimit {
    pub f: LiExpr,
    pub t_poly: Vec<ZetaExpr>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Residual {
    /// Must be the zero polynomial, symbol by symbol.
    ExactPoly(GenFunPoly),
    /// Must vanish numerically at every point of the battery.
    NumericPoly(GenFunPoly),
    NumericScalar(ZetaExpr),
    /// Polylogarithm expression in `z` (and possibly `x1, x2, x3`).
    PolylogPointwise(LiPoly),
    BoundaryLimit(BoundaryLimit),
}

impl Residual {
    pub fn kind(&self) -> &'static str {
        match self {
            Residual::ExactPoly(_) => "exact_poly",
            Residual::NumericPoly(_) => "numeric_poly",
            Residual::NumericScalar(_) => "numeric_scalar",
            Residual::PolylogPointwise(_) => "polylog_pointwise",
            Residual::BoundaryLimit(_) => "boundary_limit",
        }
    }
}

/// One displayed equation of an identity family.
#[derive(Debug, Clone, PartialEq)]
pub struct Equation {
    /// Report id such as `thm3_i.eq1`.
    pub label: String,
    pub residual: Residual,
}

/// Residuals of every equation of `id`.
pub fn build_residual(id: IdentityId) -> Result<Vec<Equation>> {
    let id = IdentityId::new(id.tag, id.l)?;
    formulas::build(id)
}

/// All identities of weight at most `max_weight`, in canonical order.
pub fn catalog(max_weight: u32) -> Vec<IdentityId> {
    let mut out = Vec::new();
    for tag in Tag::ALL {
        let top = tag.sweep_cap().map_or(max_weight, |c| c.min(max_weight));
        for l in tag.min_weight()..=top {
            if tag.accepts(l) {
                out.push(IdentityId { tag, l });
            }
        }
    }
    out
}

/// Left and right sides of the restricted triple sum formulas at weight
/// `l >= 4`, labelled like the corresponding report ids.
pub fn restricted_sum_sides(l: u32) -> Result<Vec<(String, ZetaExpr, ZetaExpr)>> {
    let tag = if l % 2 == 0 { Tag::Thm3I } else { Tag::Thm3Ii };
    let id = IdentityId::new(tag, l)?;
    let sides = if tag == Tag::Thm3I { formulas::thm3_i_sides(l) } else { formulas::thm3_ii_sides(l) };
    Ok(sides.into_iter().enumerate().map(|(i, (a, b))| (format!("{}.eq{}", id.tag, i + 1), a, b)).collect())
}
