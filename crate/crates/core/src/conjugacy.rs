//! Scale equivalence, affine smooth conjugacy and smooth semiconjugacy
//! between two flows, with exact witness matrices. Only the linear parts of
//! (semi)conjugacies are computed; translation parts act trivially on
//! constant vector fields and are reported abstractly.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::exactmath::matrix::IntMatrix;
use crate::multiplier::{
    multiplier_group, IndexInUnitGroup, MultiplierGroup, ValidatedFlow,
};
use crate::numberfield::FieldElement;
use crate::units::UnitGroup;
use crate::Rational;

/// Scalar relating two scale-equivalent flows: a field element in the
/// algebraic model, a rational in the formal model.
#[derive(Clone, Debug, PartialEq)]
pub enum ScaleFactor {
    Field(FieldElement),
    Rational(Rational),
}

fn check_compatible(a: &ValidatedFlow, b: &ValidatedFlow) -> Result<(), Error> {
    if a.dimension() != b.dimension() {
        return Err(Error::DimensionMismatch {
            expected: a.dimension(),
            got: b.dimension(),
        });
    }
    match (a.field(), b.field()) {
        (Some(fa), Some(fb)) if fa.same_field(fb) => Ok(()),
        (None, None) => Ok(()),
        _ => Err(Error::FieldMismatch),
    }
}

/// The scalar theta with theta * a_i = b_i for all i, when one exists.
pub fn scale_equivalence(
    a: &ValidatedFlow,
    b: &ValidatedFlow,
) -> Result<Option<ScaleFactor>, Error> {
    check_compatible(a, b)?;
    if a.is_formal() {
        let ca = a.spec().freq_coords();
        let cb = b.spec().freq_coords();
        let n = a.dimension();
        let pos = (0..n * n)
            .map(|k| (k / n, k % n))
            .find(|&(i, j)| !ca.at(i, j).is_zero())
            .expect("validated coordinate matrix is nonzero");
        let theta = cb.at(pos.0, pos.1) / ca.at(pos.0, pos.1);
        if cb == &ca.scale(&theta) && !theta.is_zero() {
            return Ok(Some(ScaleFactor::Rational(theta)));
        }
        return Ok(None);
    }
    let theta = b.frequencies()[0].try_div(&a.frequencies()[0])?;
    for (ai, bi) in a.frequencies().iter().zip(b.frequencies()) {
        if &(ai * &theta) != bi {
            return Ok(None);
        }
    }
    Ok(Some(ScaleFactor::Field(theta)))
}

/// The unique rational solution V of V * (a frequencies) = (b frequencies),
/// accepted when all entries are integers and the determinant is nonzero.
pub fn semiconjugacy_witness(a: &ValidatedFlow, b: &ValidatedFlow) -> Result<IntMatrix, Error> {
    check_compatible(a, b)?;
    let ca = a.spec().freq_coords();
    let cb = b.spec().freq_coords();
    let v_rat = cb.mul(&ca.inverse().expect("validated frequency matrix is invertible"));
    let v = v_rat.to_int().ok_or(Error::NotSemiconjugate)?;
    if v.det().is_zero() {
        return Err(Error::NotSemiconjugate);
    }
    Ok(v)
}

/// Semiconjugacy witness restricted to GL(n,Z).
pub fn conjugacy_witness(a: &ValidatedFlow, b: &ValidatedFlow) -> Result<IntMatrix, Error> {
    let v = semiconjugacy_witness(a, b).map_err(|e| match e {
        Error::NotSemiconjugate => Error::NotConjugate,
        other => other,
    })?;
    if !v.det().abs().is_one() {
        return Err(Error::NotConjugate);
    }
    Ok(v)
}

/// Containment verdict for one multiplier group inside another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Containment {
    Contained { relative_index: u64 },
    NotContained,
    /// Unit rank >= 2: per-generator membership evidence only.
    Evidence { contained: bool },
}

#[derive(Clone, Debug)]
pub struct SemiconjugacyReport {
    pub witness: IntMatrix,
    pub det: BigInt,
    pub scale: Option<ScaleFactor>,
    pub conjugacy: Option<IntMatrix>,
    pub group_a: MultiplierGroup,
    pub group_b: MultiplierGroup,
    pub b_in_a: Containment,
    pub a_in_b: Containment,
}

/// Full comparison of two semiconjugate flows over the same field: witnesses,
/// both multiplier groups against the shared unit group, and containment
/// decided by membership of each group's generator in the other group's
/// lattice (equivalently, divisibility of the minimal exponents in unit
/// rank 1).
pub fn semiconjugacy_report(
    a: &ValidatedFlow,
    b: &ValidatedFlow,
    units: &UnitGroup,
    max_index: u64,
) -> Result<SemiconjugacyReport, Error> {
    let witness = semiconjugacy_witness(a, b)?;
    let det = witness.det();
    let scale = scale_equivalence(a, b)?;
    let conjugacy = if det.clone().abs().is_one() {
        Some(witness.clone())
    } else {
        None
    };
    let group_a = multiplier_group(a, units, max_index)?;
    let group_b = multiplier_group(b, units, max_index)?;
    let b_in_a = containment(&group_b, &group_a, a)?;
    let a_in_b = containment(&group_a, &group_b, b)?;
    Ok(SemiconjugacyReport {
        witness,
        det,
        scale,
        conjugacy,
        group_a,
        group_b,
        b_in_a,
        a_in_b,
    })
}

/// Is `inner` a subgroup of `outer`? Tested by lattice membership of the
/// inner generators against the outer flow's frequency lattice, and
/// cross-checked in rank 1 by exponent divisibility.
fn containment(
    inner: &MultiplierGroup,
    outer: &MultiplierGroup,
    outer_flow: &ValidatedFlow,
) -> Result<Containment, Error> {
    let lat = crate::multiplier::frequency_lattice(outer_flow)?;
    let mut all_in = true;
    for m in &inner.infinite_generators {
        let x = m
            .value
            .as_field()
            .expect("algebraic flows carry field-valued multipliers");
        if !(lat.mul_preserves(x)? && lat.mul_preserves(&x.inv()?)?) {
            all_in = false;
        }
    }
    match (&inner.index, &outer.index) {
        (
            IndexInUnitGroup::Exact(ki) | IndexInUnitGroup::RelativeToSupplied(ki),
            IndexInUnitGroup::Exact(ko) | IndexInUnitGroup::RelativeToSupplied(ko),
        ) => {
            // rank 1: both groups are {+- eps^(k Z)}; containment is
            // divisibility of the exponents
            debug_assert_eq!(all_in, ki % ko == 0);
            if all_in {
                Ok(Containment::Contained {
                    relative_index: ki / ko,
                })
            } else {
                Ok(Containment::NotContained)
            }
        }
        _ => Ok(Containment::Evidence { contained: all_in }),
    }
}
