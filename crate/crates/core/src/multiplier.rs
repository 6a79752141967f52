//! Multiplier groups of quasiperiodic flows: from a frequency specification,
//! compute the group of scalars alpha admitting a GL(n,Z) matrix B with
//! B a = alpha a, the index of that group in the unit group, explicit witness
//! matrices, a brute-force oracle over bounded first rows, and the symmetry
//! structure report.
//!
//! The central reduction: alpha is a multiplier iff multiplication by alpha
//! maps the frequency lattice into itself in both directions, so the index is
//! the least exponent k for which eps^k and eps^(-k) both stabilize the
//! lattice.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::exactmath::matrix::{row_times_matrix, IntMatrix, RationalMatrix};
use crate::exactmath::poly::IntPolynomial;
use crate::lattice::FLattice;
use crate::numberfield::{FieldElement, NumberField};
use crate::units::{unit_group, Provenance, UnitGroup};
use crate::Rational;

/// Frequency data for a flow on the n-torus. In the algebraic model, row i of
/// `freq_coords` holds the power-basis coordinates of the i-th frequency; in
/// the formal model the same rows are read over the formal basis
/// {1, gamma, ..., gamma^(n-1)} with gamma a formal transcendental.
#[derive(Clone, Debug)]
pub struct FlowSpec {
    kind: FlowKind,
}

#[derive(Clone, Debug)]
pub enum FlowKind {
    Algebraic {
        field: NumberField,
        freq_coords: RationalMatrix,
        supplied_units: Vec<FieldElement>,
    },
    Formal {
        freq_coords: RationalMatrix,
    },
}

impl FlowSpec {
    pub fn algebraic(
        field: NumberField,
        freq_coords: RationalMatrix,
        supplied_units: Vec<FieldElement>,
    ) -> Result<FlowSpec, Error> {
        let n = field.degree();
        if freq_coords.rows() != n || freq_coords.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: freq_coords.rows().max(freq_coords.cols()),
            });
        }
        for u in &supplied_units {
            if !u.field().same_field(&field) {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(FlowSpec {
            kind: FlowKind::Algebraic {
                field,
                freq_coords,
                supplied_units,
            },
        })
    }

    pub fn formal(freq_coords: RationalMatrix) -> Result<FlowSpec, Error> {
        if freq_coords.rows() != freq_coords.cols() {
            return Err(Error::DimensionMismatch {
                expected: freq_coords.rows(),
                got: freq_coords.cols(),
            });
        }
        Ok(FlowSpec {
            kind: FlowKind::Formal { freq_coords },
        })
    }

    pub fn kind(&self) -> &FlowKind {
        &self.kind
    }

    pub fn dimension(&self) -> usize {
        self.freq_coords().rows()
    }

    pub fn freq_coords(&self) -> &RationalMatrix {
        match &self.kind {
            FlowKind::Algebraic { freq_coords, .. } => freq_coords,
            FlowKind::Formal { freq_coords } => freq_coords,
        }
    }

    pub fn field(&self) -> Option<&NumberField> {
        match &self.kind {
            FlowKind::Algebraic { field, .. } => Some(field),
            FlowKind::Formal { .. } => None,
        }
    }

    pub fn supplied_units(&self) -> &[FieldElement] {
        match &self.kind {
            FlowKind::Algebraic { supplied_units, .. } => supplied_units,
            FlowKind::Formal { .. } => &[],
        }
    }

    pub fn is_formal(&self) -> bool {
        matches!(self.kind, FlowKind::Formal { .. })
    }
}

/// A flow whose frequency matrix has been checked invertible over Q. For the
/// algebraic model the frequencies are also normalized by the scaling
/// theta = 1/a_1, which is recorded; multiplier data is scale invariant, so
/// results for the scaled flow are canonical.
#[derive(Clone, Debug)]
pub struct ValidatedFlow {
    spec: FlowSpec,
    frequencies: Vec<FieldElement>,
    scaled: Vec<FieldElement>,
    scaled_coords: Option<RationalMatrix>,
    scaling: Option<FieldElement>,
}

pub fn validate_flow(spec: FlowSpec) -> Result<ValidatedFlow, Error> {
    if spec.freq_coords().det().is_zero() {
        return Err(Error::NotQuasiperiodic);
    }
    match &spec.kind {
        FlowKind::Formal { .. } => Ok(ValidatedFlow {
            spec,
            frequencies: Vec::new(),
            scaled: Vec::new(),
            scaled_coords: None,
            scaling: None,
        }),
        FlowKind::Algebraic {
            field, freq_coords, ..
        } => {
            let n = field.degree();
            let frequencies: Vec<FieldElement> = (0..n)
                .map(|i| field.element(freq_coords.row(i).to_vec()))
                .collect();
            // theta = 1/a_1; a_1 is nonzero because the matrix is invertible
            let scaling = frequencies[0].inv()?;
            let scaled: Vec<FieldElement> =
                frequencies.iter().map(|a| a * &scaling).collect();
            let mut entries = Vec::with_capacity(n * n);
            for s in &scaled {
                entries.extend(s.coords().iter().cloned());
            }
            let scaled_coords = RationalMatrix::new(n, n, entries);
            Ok(ValidatedFlow {
                spec,
                frequencies,
                scaled,
                scaled_coords: Some(scaled_coords),
                scaling: Some(scaling),
            })
        }
    }
}

impl ValidatedFlow {
    pub fn spec(&self) -> &FlowSpec {
        &self.spec
    }

    pub fn dimension(&self) -> usize {
        self.spec.dimension()
    }

    pub fn is_formal(&self) -> bool {
        self.spec.is_formal()
    }

    pub fn field(&self) -> Option<&NumberField> {
        self.spec.field()
    }

    /// Original frequencies (algebraic model).
    pub fn frequencies(&self) -> &[FieldElement] {
        &self.frequencies
    }

    /// Frequencies divided by a_1, so the first is 1.
    pub fn scaled_frequencies(&self) -> &[FieldElement] {
        &self.scaled
    }

    /// The recorded scaling theta = 1/a_1.
    pub fn scaling(&self) -> Option<&FieldElement> {
        self.scaling.as_ref()
    }

    pub fn scaled_coords(&self) -> Option<&RationalMatrix> {
        self.scaled_coords.as_ref()
    }
}

/// Z-span of the scaled frequencies inside F.
pub fn frequency_lattice(flow: &ValidatedFlow) -> Result<FLattice, Error> {
    let field = flow
        .field()
        .expect("frequency lattice exists only in the algebraic model");
    FLattice::from_generators(field, flow.scaled_frequencies())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiplierValue {
    Field(FieldElement),
    Rational(Rational),
}

impl MultiplierValue {
    pub fn as_field(&self) -> Option<&FieldElement> {
        match self {
            MultiplierValue::Field(x) => Some(x),
            MultiplierValue::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            MultiplierValue::Rational(r) => Some(r),
            MultiplierValue::Field(_) => None,
        }
    }
}

/// A multiplier alpha together with its unique GL(n,Z) witness B a = alpha a.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplier {
    pub value: MultiplierValue,
    pub witness: IntMatrix,
}

/// How the reported index is to be read.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexInUnitGroup {
    /// Generator computed from scratch; the index is proven.
    Exact(u64),
    /// Relative to a supplied generator assumed fundamental.
    RelativeToSupplied(u64),
    /// Unit rank >= 2: per-generator minimal exponents from independent
    /// sub-searches; evidence, not a certified group index.
    PerGeneratorEvidence(Vec<u64>),
}

impl IndexInUnitGroup {
    pub fn value(&self) -> Option<u64> {
        match self {
            IndexInUnitGroup::Exact(k) | IndexInUnitGroup::RelativeToSupplied(k) => Some(*k),
            IndexInUnitGroup::PerGeneratorEvidence(_) => None,
        }
    }
}

impl fmt::Display for IndexInUnitGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexInUnitGroup::Exact(k) => write!(f, "{}", k),
            IndexInUnitGroup::RelativeToSupplied(k) => {
                write!(f, "{} (relative to the supplied generator)", k)
            }
            IndexInUnitGroup::PerGeneratorEvidence(ks) => {
                let s: Vec<String> = ks.iter().map(|k| k.to_string()).collect();
                write!(f, "per-generator exponents [{}] (evidence only)", s.join(", "))
            }
        }
    }
}

/// The multiplier group: torsion {1, -1} (always present; -1 preserves every
/// lattice with witness -I) plus one infinite-order generator per unit-group
/// generator.
#[derive(Clone, Debug)]
pub struct MultiplierGroup {
    pub infinite_generators: Vec<Multiplier>,
    pub index: IndexInUnitGroup,
    pub unit_group: UnitGroup,
}

impl MultiplierGroup {
    pub fn torsion_values() -> [i64; 2] {
        [1, -1]
    }

    pub fn torsion_witnesses(n: usize) -> (IntMatrix, IntMatrix) {
        let id = IntMatrix::identity(n);
        let neg = id.neg();
        (id, neg)
    }
}

/// The unique integer matrix B with B a = alpha a, rows solved over the
/// frequency basis; requires alpha to stabilize the lattice both ways.
pub fn witness_matrix(flow: &ValidatedFlow, alpha: &FieldElement) -> Result<IntMatrix, Error> {
    let field = flow
        .field()
        .expect("witness matrices exist only in the algebraic model");
    if !alpha.field().same_field(field) {
        return Err(Error::FieldMismatch);
    }
    let c = flow.spec().freq_coords();
    let cinv = c.inverse().expect("validated frequency matrix is invertible");
    let b_rat = c.mul(&alpha.mult_matrix()).mul(&cinv);
    let b = b_rat.to_int().ok_or(Error::NotAMultiplier)?;
    let det = b.det();
    if !det.clone().abs().is_one() {
        return Err(Error::NotAMultiplier);
    }
    Ok(b)
}

/// Evaluate the multiplier of a candidate symmetry matrix: the scalar alpha
/// with B a = alpha a, if B is unimodular and such a scalar exists.
pub fn multiplier_of_matrix(
    flow: &ValidatedFlow,
    b: &IntMatrix,
) -> Result<MultiplierValue, Error> {
    let n = flow.dimension();
    if b.rows() != n || b.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: b.rows().max(b.cols()),
        });
    }
    if !b.det().abs().is_one() {
        return Err(Error::NotUnimodular);
    }
    let c = flow.spec().freq_coords();
    let image = b.to_rational().mul(c);
    if flow.is_formal() {
        // proportionality over the formal basis forces a rational scalar
        let j0 = (0..n)
            .find(|&j| !c.at(0, j).is_zero())
            .expect("invertible matrix has a nonzero first row");
        let lambda = image.at(0, j0) / c.at(0, j0);
        let scaled = c.scale(&lambda);
        if image != scaled {
            return Err(Error::NotASymmetry);
        }
        Ok(MultiplierValue::Rational(lambda))
    } else {
        let field = flow.field().unwrap();
        let a0 = &flow.frequencies()[0];
        let v0 = field.element(image.row(0).to_vec());
        let alpha = v0.try_div(a0)?;
        // every row must transform by the same scalar
        for i in 0..n {
            let vi = field.element(image.row(i).to_vec());
            if vi != &alpha * &flow.frequencies()[i] {
                return Err(Error::NotASymmetry);
            }
        }
        Ok(MultiplierValue::Field(alpha))
    }
}

/// Minimal-exponent search: the least k >= 1 with eps^k and eps^(-k) both
/// stabilizing the lattice, together with eps^k itself.
fn minimal_exponent(
    lat: &FLattice,
    eps: &FieldElement,
    max_index: u64,
) -> Result<(u64, FieldElement), Error> {
    let field = eps.field().clone();
    let inv = eps.inv()?;
    let mut pow = field.one();
    let mut pow_inv = field.one();
    for k in 1..=max_index {
        pow = &pow * eps;
        pow_inv = &pow_inv * &inv;
        if lat.mul_preserves(&pow)? && lat.mul_preserves(&pow_inv)? {
            return Ok((k, pow));
        }
    }
    Err(Error::IndexBoundExceeded(max_index))
}

/// Orientation of a generator before the exponent search: computed units are
/// already > 1; supplied generators keep their magnitude but get a positive
/// sign (torsion absorbs the sign, and reported generators stay in the form
/// the caller supplied).
fn oriented_generator(element: &FieldElement, provenance: Provenance) -> FieldElement {
    match provenance {
        Provenance::Computed => element.clone(),
        Provenance::SuppliedAssumedFundamental => {
            if element.sign() < 0 {
                -element
            } else {
                element.clone()
            }
        }
    }
}

/// Compute the multiplier group of a validated algebraic flow against a unit
/// group of its field.
pub fn multiplier_group(
    flow: &ValidatedFlow,
    units: &UnitGroup,
    max_index: u64,
) -> Result<MultiplierGroup, Error> {
    let field = flow
        .field()
        .expect("multiplier groups of formal flows are {1, -1}; no search is run");
    if !units.field().same_field(field) {
        return Err(Error::FieldMismatch);
    }
    let lat = frequency_lattice(flow)?;
    let mut generators = Vec::with_capacity(units.rank());
    let mut exponents = Vec::with_capacity(units.rank());
    for g in units.generators() {
        let eps = oriented_generator(&g.element, g.provenance);
        let (k, power) = minimal_exponent(&lat, &eps, max_index)?;
        let witness = witness_matrix(flow, &power)?;
        generators.push(Multiplier {
            value: MultiplierValue::Field(power),
            witness,
        });
        exponents.push(k);
    }
    let index = if units.rank() == 1 {
        if units.fully_computed() {
            IndexInUnitGroup::Exact(exponents[0])
        } else {
            IndexInUnitGroup::RelativeToSupplied(exponents[0])
        }
    } else {
        IndexInUnitGroup::PerGeneratorEvidence(exponents)
    };
    Ok(MultiplierGroup {
        infinite_generators: generators,
        index,
        unit_group: units.clone(),
    })
}

/// Independent oracle: enumerate candidate witness first rows with entries
/// bounded by `row_bound` and keep every completion that is integral with
/// determinant +-1. Uses only rational linear algebra, no unit group and no
/// coefficient ring.
pub fn brute_force_multipliers(flow: &ValidatedFlow, row_bound: u32) -> Vec<Multiplier> {
    assert!(row_bound > 0, "row bound must be positive");
    let n = flow.dimension();
    let bound = row_bound as i64;
    let mut out = Vec::new();

    if flow.is_formal() {
        let c = flow.spec().freq_coords();
        let j0 = (0..n)
            .find(|&j| !c.at(0, j).is_zero())
            .expect("invertible matrix has a nonzero first row");
        for_each_row(n, bound, |row| {
            let rats: Vec<Rational> = row
                .iter()
                .map(|&x| Rational::from_integer(BigInt::from(x)))
                .collect();
            let w = row_times_matrix(&rats, c);
            let lambda = &w[j0] / c.at(0, j0);
            for (j, wj) in w.iter().enumerate() {
                if *wj != &lambda * c.at(0, j) {
                    return;
                }
            }
            // B = lambda I must be integral and unimodular
            if !lambda.is_integer() {
                return;
            }
            let li = lambda.to_integer();
            if !li.clone().abs().is_one() {
                return;
            }
            let id = IntMatrix::identity(n);
            let witness = if li.is_one() { id } else { id.neg() };
            out.push(Multiplier {
                value: MultiplierValue::Rational(lambda),
                witness,
            });
        });
        return out;
    }

    let field = flow.field().unwrap().clone();
    let cs = flow.scaled_coords().unwrap().clone();
    let cs_inv = cs.inverse().expect("validated frequency matrix is invertible");
    for_each_row(n, bound, |row| {
        let rats: Vec<Rational> = row
            .iter()
            .map(|&x| Rational::from_integer(BigInt::from(x)))
            .collect();
        // alpha = sum_j c_j a_j over the scaled frequencies (a_1 = 1)
        let alpha = field.element(row_times_matrix(&rats, &cs));
        if alpha.is_zero() {
            return;
        }
        let b_rat = cs.mul(&alpha.mult_matrix()).mul(&cs_inv);
        let Some(b) = b_rat.to_int() else { return };
        if !b.det().abs().is_one() {
            return;
        }
        debug_assert!(b
            .row(0)
            .iter()
            .zip(row)
            .all(|(x, &y)| *x == BigInt::from(y)));
        out.push(Multiplier {
            value: MultiplierValue::Field(alpha),
            witness: b,
        });
    });
    out
}

/// Cross-check the oracle output against the computed group: every
/// brute-force multiplier must be a signed power of the computed generator
/// (membership by exact exponent matching), torsion must be present, and the
/// generator itself must appear once its witness first row fits the bound.
/// For unit rank >= 2 the generator set is evidence only, so each oracle
/// value is instead verified to stabilize the frequency lattice both ways.
pub fn oracle_agreement(
    flow: &ValidatedFlow,
    group: Option<&MultiplierGroup>,
    found: &[Multiplier],
    row_bound: u32,
) -> Result<bool, Error> {
    let n = flow.dimension();
    if flow.is_formal() {
        let (id, neg) = MultiplierGroup::torsion_witnesses(n);
        let expect = [
            (MultiplierValue::Rational(-Rational::one()), neg),
            (MultiplierValue::Rational(Rational::one()), id),
        ];
        return Ok(found.len() == 2
            && found[0].value == expect[0].0
            && found[0].witness == expect[0].1
            && found[1].value == expect[1].0
            && found[1].witness == expect[1].1);
    }

    let field = flow.field().unwrap();
    let group = group.expect("algebraic agreement needs the computed group");
    let one = field.one();
    let minus_one = -&one;
    let mut saw_plus = false;
    let mut saw_minus = false;
    if group.infinite_generators.len() == 1 {
        let gen = group.infinite_generators[0]
            .value
            .as_field()
            .expect("algebraic generator");
        for m in found {
            let x = m.value.as_field().expect("algebraic oracle value");
            if *x == one {
                saw_plus = true;
            }
            if *x == minus_one {
                saw_minus = true;
            }
            if !is_signed_power(x, gen, 64)? {
                return Ok(false);
            }
        }
        // the generator must be visible once the bound covers its first row
        let first_row_max = group.infinite_generators[0]
            .witness
            .row(0)
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap();
        if first_row_max <= BigInt::from(row_bound) {
            let seen = found
                .iter()
                .any(|m| m.value.as_field() == Some(gen));
            if !seen {
                return Ok(false);
            }
        }
        return Ok(saw_plus && saw_minus);
    }

    // rank >= 2: membership evidence via lattice stabilization
    let lat = frequency_lattice(flow)?;
    for m in found {
        let x = m.value.as_field().expect("algebraic oracle value");
        if *x == one {
            saw_plus = true;
        }
        if *x == minus_one {
            saw_minus = true;
        }
        if !(lat.mul_preserves(x)? && lat.mul_preserves(&x.inv()?)?) {
            return Ok(false);
        }
    }
    Ok(saw_plus && saw_minus)
}

/// Does x equal +- g^j for some |j| <= cap?
fn is_signed_power(x: &FieldElement, g: &FieldElement, cap: i64) -> Result<bool, Error> {
    for j in 0..=cap {
        for e in [j, -j] {
            let p = g.pow(e)?;
            if &p == x || &(-&p) == x {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Lexicographic odometer over [-bound, bound]^n, skipping the zero row.
fn for_each_row(n: usize, bound: i64, mut f: impl FnMut(&[i64])) {
    let mut row = vec![-bound; n];
    loop {
        if row.iter().any(|&x| x != 0) {
            f(&row);
        }
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if row[i] < bound {
                row[i] += 1;
                for slot in row.iter_mut().skip(i + 1) {
                    *slot = -bound;
                }
                break;
            }
        }
    }
}

/// Necessary-condition results for every produced infinite-order generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checklist {
    /// The only rational multipliers are +-1 (generators are irrational).
    pub rational_multipliers_only_pm1: bool,
    /// Each generator is a real algebraic integer of degree at most n.
    pub generators_algebraic_integers_degree_at_most_n: bool,
    /// Every witness determinant is +-1.
    pub witness_determinants_pm1: bool,
}

impl Checklist {
    pub fn all_pass(&self) -> bool {
        self.rational_multipliers_only_pm1
            && self.generators_algebraic_integers_degree_at_most_n
            && self.witness_determinants_pm1
    }
}

#[derive(Clone, Debug)]
pub enum Classification {
    FAlgebraic(Box<AlgebraicClassification>),
    TranscendentalFormal,
}

#[derive(Clone, Debug)]
pub struct AlgebraicClassification {
    pub group: MultiplierGroup,
    /// For n = 2: the minimal polynomial of the frequency ratio d2/d1, whose
    /// degree is 2 exactly when multipliers beyond +-1 exist.
    pub ratio_min_poly: Option<IntPolynomial>,
}

#[derive(Clone, Debug)]
pub struct SymmetryReport {
    pub dimension: usize,
    pub structure: String,
    pub checklist: Checklist,
    pub classification: Classification,
}

pub fn structure_string(n: usize, rank: Option<usize>) -> String {
    match rank {
        None => format!("T^{} \u{22ca} Z_2", n),
        Some(1) => format!("T^{} \u{22ca} (Z_2 \u{d7} Z)", n),
        Some(r) => format!("T^{} \u{22ca} (Z_2 \u{d7} Z^{})", n, r),
    }
}

/// Full analysis of a validated flow. For the algebraic model the unit group
/// is assembled from the flow's supplied units (or computed for quadratics);
/// for the formal model the multiplier group is {1, -1} by the matrix
/// identity B C = alpha C over formally independent basis monomials.
pub fn classify(flow: &ValidatedFlow, max_index: u64) -> Result<SymmetryReport, Error> {
    let n = flow.dimension();
    if flow.is_formal() {
        let (id, neg) = MultiplierGroup::torsion_witnesses(n);
        let plus = multiplier_of_matrix(flow, &id)?;
        let minus = multiplier_of_matrix(flow, &neg)?;
        debug_assert_eq!(plus, MultiplierValue::Rational(Rational::one()));
        debug_assert_eq!(minus, MultiplierValue::Rational(-Rational::one()));
        return Ok(SymmetryReport {
            dimension: n,
            structure: structure_string(n, None),
            checklist: Checklist {
                rational_multipliers_only_pm1: true,
                generators_algebraic_integers_degree_at_most_n: true,
                witness_determinants_pm1: id.det().abs().is_one() && neg.det().abs().is_one(),
            },
            classification: Classification::TranscendentalFormal,
        });
    }

    let field = flow.field().unwrap();
    let units = unit_group(field, flow.spec().supplied_units())?;
    let group = multiplier_group(flow, &units, max_index)?;
    let checklist = checklist_for(&group, n);
    let ratio_min_poly = if n == 2 {
        Some(flow.scaled_frequencies()[1].minimal_polynomial())
    } else {
        None
    };
    Ok(SymmetryReport {
        dimension: n,
        structure: structure_string(n, Some(group.infinite_generators.len())),
        checklist,
        classification: Classification::FAlgebraic(Box::new(AlgebraicClassification {
            group,
            ratio_min_poly,
        })),
    })
}

fn checklist_for(group: &MultiplierGroup, n: usize) -> Checklist {
    let mut irrational = true;
    let mut integral = true;
    let mut dets = true;
    for m in &group.infinite_generators {
        let Some(x) = m.value.as_field() else {
            continue;
        };
        if x.is_rational() {
            irrational = false;
        }
        let mp = x.minimal_polynomial();
        let c = mp.constant_term();
        if !(mp.is_monic()
            && (c.clone().abs().is_one())
            && mp.degree().is_some_and(|d| d <= n))
        {
            integral = false;
        }
        if !m.witness.det().abs().is_one() {
            dets = false;
        }
    }
    Checklist {
        rational_multipliers_only_pm1: irrational,
        generators_algebraic_integers_degree_at_most_n: integral,
        witness_determinants_pm1: dets,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{cbrt2_field, rat, sqrt3_field};
    use crate::units;

    fn flow_sqrt3_phi() -> ValidatedFlow {
        // frequencies (1, 4 sqrt3)
        let f = sqrt3_field();
        let coords = RationalMatrix::new(
            2,
            2,
            vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(4, 1)],
        );
        validate_flow(FlowSpec::algebraic(f, coords, vec![]).unwrap()).unwrap()
    }

    fn flow_sqrt3_psi() -> ValidatedFlow {
        // frequencies (4, 60 sqrt3)
        let f = sqrt3_field();
        let coords = RationalMatrix::new(
            2,
            2,
            vec![rat(4, 1), rat(0, 1), rat(0, 1), rat(60, 1)],
        );
        validate_flow(FlowSpec::algebraic(f, coords, vec![]).unwrap()).unwrap()
    }

    fn flow_cubic() -> ValidatedFlow {
        // frequencies (1, 3 delta, -3 delta^2) with supplied unit -1 + delta
        let f = cbrt2_field();
        let coords = RationalMatrix::new(
            3,
            3,
            vec![
                rat(1, 1),
                rat(0, 1),
                rat(0, 1),
                rat(0, 1),
                rat(3, 1),
                rat(0, 1),
                rat(0, 1),
                rat(0, 1),
                rat(-3, 1),
            ],
        );
        let supplied = vec![f.element_from_i64(&[-1, 1, 0])];
        validate_flow(FlowSpec::algebraic(f, coords, supplied).unwrap()).unwrap()
    }

    fn flow_formal(n: usize) -> ValidatedFlow {
        validate_flow(FlowSpec::formal(RationalMatrix::identity(n)).unwrap()).unwrap()
    }

    #[test]
    fn validation_rejects_dependent_frequencies() {
        let f = sqrt3_field();
        let coords = RationalMatrix::new(
            2,
            2,
            vec![rat(1, 1), rat(0, 1), rat(2, 1), rat(0, 1)],
        );
        let err = validate_flow(FlowSpec::algebraic(f, coords, vec![]).unwrap()).unwrap_err();
        assert_eq!(err, Error::NotQuasiperiodic);
    }

    #[test]
    fn validation_scales_by_first_frequency() {
        let flow = flow_sqrt3_psi();
        assert!(flow.scaled_frequencies()[0].is_one());
        // theta = 1/4
        assert_eq!(
            flow.scaling().unwrap(),
            &flow.field().unwrap().from_rational(rat(1, 4))
        );
    }

    #[test]
    fn frequency_lattice_absorbs_signs() {
        let flow = flow_cubic();
        let lat = frequency_lattice(&flow).unwrap();
        assert_eq!(
            lat.basis_matrix(),
            &IntMatrix::from_i64(&[&[1, 0, 0], &[0, 3, 0], &[0, 0, 3]])
        );
    }

    #[test]
    fn sqrt3_phi_flow_has_index_two() {
        let flow = flow_sqrt3_phi();
        let units = units::unit_group(flow.field().unwrap(), &[]).unwrap();
        let g = multiplier_group(&flow, &units, 1000).unwrap();
        assert_eq!(g.index, IndexInUnitGroup::Exact(2));
        let gen = &g.infinite_generators[0];
        assert_eq!(
            gen.value.as_field().unwrap(),
            &flow.field().unwrap().element_from_i64(&[7, 4])
        );
        assert_eq!(gen.witness, IntMatrix::from_i64(&[&[7, 1], &[48, 7]]));
    }

    #[test]
    fn sqrt3_psi_flow_has_index_three() {
        let flow = flow_sqrt3_psi();
        let units = units::unit_group(flow.field().unwrap(), &[]).unwrap();
        let g = multiplier_group(&flow, &units, 1000).unwrap();
        assert_eq!(g.index, IndexInUnitGroup::Exact(3));
        let gen = &g.infinite_generators[0];
        assert_eq!(
            gen.value.as_field().unwrap(),
            &flow.field().unwrap().element_from_i64(&[26, 15])
        );
        assert_eq!(gen.witness, IntMatrix::from_i64(&[&[26, 1], &[675, 26]]));
    }

    #[test]
    fn cubic_flow_reference_values() {
        let flow = flow_cubic();
        let field = flow.field().unwrap();
        let units = units::unit_group(field, flow.spec().supplied_units()).unwrap();
        let g = multiplier_group(&flow, &units, 1000).unwrap();
        assert_eq!(g.index, IndexInUnitGroup::RelativeToSupplied(3));
        let gen = &g.infinite_generators[0];
        assert_eq!(
            gen.value.as_field().unwrap(),
            &field.element_from_i64(&[1, 3, -3])
        );
        assert_eq!(
            gen.witness,
            IntMatrix::from_i64(&[&[1, 1, 1], &[-18, 1, -3], &[-18, 6, 1]])
        );
    }

    #[test]
    fn power_basis_flow_has_index_one() {
        let f = sqrt3_field();
        let flow =
            validate_flow(FlowSpec::algebraic(f, RationalMatrix::identity(2), vec![]).unwrap())
                .unwrap();
        let units = units::unit_group(flow.field().unwrap(), &[]).unwrap();
        let g = multiplier_group(&flow, &units, 1000).unwrap();
        assert_eq!(g.index, IndexInUnitGroup::Exact(1));
        assert_eq!(
            g.infinite_generators[0].value.as_field().unwrap(),
            &flow.field().unwrap().element_from_i64(&[2, 1])
        );
    }

    #[test]
    fn witness_of_identity_multiplier() {
        let flow = flow_sqrt3_phi();
        let one = flow.field().unwrap().one();
        assert_eq!(witness_matrix(&flow, &one).unwrap(), IntMatrix::identity(2));
    }

    #[test]
    fn witness_rejects_non_multiplier() {
        let flow = flow_sqrt3_phi();
        let eps = flow.field().unwrap().element_from_i64(&[2, 1]);
        assert_eq!(witness_matrix(&flow, &eps).unwrap_err(), Error::NotAMultiplier);
    }

    #[test]
    fn multiplier_of_matrix_round_trip() {
        let flow = flow_sqrt3_phi();
        let b = IntMatrix::from_i64(&[&[7, 1], &[48, 7]]);
        let v = multiplier_of_matrix(&flow, &b).unwrap();
        assert_eq!(
            v.as_field().unwrap(),
            &flow.field().unwrap().element_from_i64(&[7, 4])
        );
        let id = IntMatrix::identity(2);
        assert!(multiplier_of_matrix(&flow, &id)
            .unwrap()
            .as_field()
            .unwrap()
            .is_one());
    }

    #[test]
    fn multiplier_of_matrix_rejections() {
        let flow = flow_sqrt3_phi();
        let shear = IntMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert_eq!(
            multiplier_of_matrix(&flow, &shear).unwrap_err(),
            Error::NotASymmetry
        );
        let scale = IntMatrix::from_i64(&[&[2, 0], &[0, 2]]);
        assert_eq!(
            multiplier_of_matrix(&flow, &scale).unwrap_err(),
            Error::NotUnimodular
        );
    }

    #[test]
    fn brute_force_finds_exactly_the_group_slice() {
        let flow = flow_sqrt3_phi();
        let found = brute_force_multipliers(&flow, 10);
        let field = flow.field().unwrap();
        // +-1, +-(7 + 4 sqrt3)^{+-1}: first rows (±1, 0), (±7, ±1)
        assert_eq!(found.len(), 6);
        let values: Vec<&FieldElement> =
            found.iter().map(|m| m.value.as_field().unwrap()).collect();
        assert!(values.contains(&&field.one()));
        assert!(values.contains(&&(-&field.one())));
        assert!(values.contains(&&field.element_from_i64(&[7, 4])));
        assert!(values.contains(&&field.element_from_i64(&[7, -4])));
        assert!(values.contains(&&field.element_from_i64(&[-7, -4])));
        assert!(values.contains(&&field.element_from_i64(&[-7, 4])));
    }

    #[test]
    fn brute_force_formal_is_pm_identity() {
        let flow = flow_formal(3);
        let found = brute_force_multipliers(&flow, 5);
        assert_eq!(found.len(), 2);
        assert_eq!(found[0].value, MultiplierValue::Rational(-Rational::one()));
        assert_eq!(found[0].witness, IntMatrix::identity(3).neg());
        assert_eq!(found[1].value, MultiplierValue::Rational(Rational::one()));
        assert_eq!(found[1].witness, IntMatrix::identity(3));
    }

    #[test]
    fn classify_algebraic_t2() {
        let flow = flow_sqrt3_phi();
        let report = classify(&flow, 1000).unwrap();
        assert_eq!(report.structure, "T^2 \u{22ca} (Z_2 \u{d7} Z)");
        assert!(report.checklist.all_pass());
        let Classification::FAlgebraic(alg) = &report.classification else {
            panic!("expected algebraic classification");
        };
        // ratio 4 sqrt3 has minimal polynomial z^2 - 48, degree 2
        assert_eq!(
            alg.ratio_min_poly.as_ref().unwrap(),
            &IntPolynomial::from_i64(&[-48, 0, 1])
        );
    }

    #[test]
    fn classify_formal_t3() {
        let flow = flow_formal(3);
        let report = classify(&flow, 1000).unwrap();
        assert_eq!(report.structure, "T^3 \u{22ca} Z_2");
        assert!(matches!(
            report.classification,
            Classification::TranscendentalFormal
        ));
        assert!(report.checklist.all_pass());
    }

    #[test]
    fn too_small_bound_is_a_clean_error() {
        let flow = flow_sqrt3_psi();
        let units = units::unit_group(flow.field().unwrap(), &[]).unwrap();
        assert_eq!(
            multiplier_group(&flow, &units, 2).unwrap_err(),
            Error::IndexBoundExceeded(2)
        );
    }

    #[test]
    fn classify_cubic_power_basis_flow() {
        let f = cbrt2_field();
        let supplied = vec![f.element_from_i64(&[-1, 1, 0])];
        let flow = validate_flow(
            FlowSpec::algebraic(f, RationalMatrix::identity(3), supplied).unwrap(),
        )
        .unwrap();
        let report = classify(&flow, 1000).unwrap();
        assert_eq!(report.structure, "T^3 \u{22ca} (Z_2 \u{d7} Z)");
        let Classification::FAlgebraic(alg) = &report.classification else {
            panic!("expected algebraic classification");
        };
        assert_eq!(alg.group.index, IndexInUnitGroup::RelativeToSupplied(1));
        assert!(alg.ratio_min_poly.is_none());
    }

    #[test]
    fn multiplier_group_is_closed_under_products_and_inverses() {
        let flow = flow_sqrt3_psi();
        let units = units::unit_group(flow.field().unwrap(), &[]).unwrap();
        let g = multiplier_group(&flow, &units, 1000).unwrap();
        let lat = frequency_lattice(&flow).unwrap();
        let gen = g.infinite_generators[0].value.as_field().unwrap();
        for a in -5i64..=5 {
            let x = gen.pow(a).unwrap();
            assert!(lat.mul_preserves(&x).unwrap(), "exponent {}", a);
            assert!(lat.mul_preserves(&(-&x)).unwrap(), "exponent -({})", a);
        }
    }

    #[test]
    fn classify_needs_generators_for_cubics() {
        let f = cbrt2_field();
        let flow =
            validate_flow(FlowSpec::algebraic(f, RationalMatrix::identity(3), vec![]).unwrap())
                .unwrap();
        assert_eq!(classify(&flow, 1000).unwrap_err(), Error::GeneratorsRequired(1));
    }

    #[test]
    fn oracle_agreement_on_the_reference_flow() {
        let flow = flow_sqrt3_phi();
        let units = units::unit_group(flow.field().unwrap(), &[]).unwrap();
        let group = multiplier_group(&flow, &units, 1000).unwrap();
        let found = brute_force_multipliers(&flow, 10);
        assert!(oracle_agreement(&flow, Some(&group), &found, 10).unwrap());

        let formal = flow_formal(2);
        let found = brute_force_multipliers(&formal, 3);
        assert!(oracle_agreement(&formal, None, &found, 3).unwrap());
    }

    #[test]
    fn index_minimality_is_independent_of_orientation() {
        // searching with the inverse generator finds the same exponent
        let flow = flow_sqrt3_psi();
        let field = flow.field().unwrap();
        let lat = frequency_lattice(&flow).unwrap();
        let eps = field.element_from_i64(&[2, 1]);
        let inv = eps.inv().unwrap();
        let (k1, _) = minimal_exponent(&lat, &eps, 1000).unwrap();
        let (k2, _) = minimal_exponent(&lat, &inv, 1000).unwrap();
        assert_eq!(k1, 3);
        assert_eq!(k2, 3);
    }
}
