//! Report documents. The machine (JSON) form serializes every exact value as
//! a canonical string ("p/q" with positive denominator, "/q" omitted when
//! q = 1) so that identical inputs produce byte-identical output and a parsed
//! report reproduces all exact values bit for bit. Decimal approximations
//! appear only in fields named `approx`.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use qpsym_core::conjugacy::{Containment, ScaleFactor, SemiconjugacyReport};
use qpsym_core::exactmath::{IntMatrix, IntPolynomial};
use qpsym_core::multiplier::{
    Classification, IndexInUnitGroup, Multiplier, MultiplierGroup, MultiplierValue,
    SymmetryReport, ValidatedFlow,
};
use qpsym_core::numberfield::{FieldElement, NumberField};
use qpsym_core::units::UnitGroup;
use qpsym_core::Rational;

pub const APPROX_PLACES: usize = 6;

pub fn rational_string(x: &Rational) -> String {
    x.to_string()
}

pub fn coords_strings(coords: &[Rational]) -> Vec<String> {
    coords.iter().map(rational_string).collect()
}

pub fn matrix_strings(m: &IntMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
        .collect()
}

pub fn poly_strings(p: &IntPolynomial) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

/// Fixed-point decimal string for the real value of a field element,
/// correct to the last printed digit up to rounding of the midpoint.
pub fn decimal_approx(x: &FieldElement, places: usize) -> String {
    let scale = BigInt::from(10u32).pow(places as u32);
    let width = Rational::new(BigInt::from(1), &scale * BigInt::from(4u32));
    let (lo, hi) = x.approximate(&width);
    let mid = (lo + hi) / Rational::from_integer(BigInt::from(2u32));
    let scaled = (mid * Rational::from_integer(scale.clone())).round();
    let units = scaled.to_integer();
    let neg = units.is_negative();
    let digits = units.abs().to_string();
    let padded = if digits.len() <= places {
        format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
    } else {
        digits
    };
    let split = padded.len() - places;
    format!(
        "{}{}.{}",
        if neg { "-" } else { "" },
        &padded[..split],
        &padded[split..]
    )
}

/// Pretty form of an element, e.g. "7 + 4d" over the power basis in `gen`.
pub fn element_pretty(coords: &[Rational], gen: &str) -> String {
    use num_traits::{One, Zero};
    let mut terms: Vec<String> = Vec::new();
    for (k, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let body = match k {
            0 => rational_string(&mag),
            _ => {
                let var = if k == 1 {
                    gen.to_string()
                } else {
                    format!("{}^{}", gen, k)
                };
                if mag.is_one() {
                    var
                } else {
                    format!("{}*{}", rational_string(&mag), var)
                }
            }
        };
        if terms.is_empty() {
            terms.push(if c.is_negative() {
                format!("-{}", body)
            } else {
                body
            });
        } else if c.is_negative() {
            terms.push(format!("- {}", body));
        } else {
            terms.push(format!("+ {}", body));
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignatureReport {
    pub r1: usize,
    pub r2: usize,
    pub unit_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldReport {
    pub min_poly: Vec<String>,
    pub min_poly_display: String,
    pub root_interval: [String; 2],
    pub degree: usize,
    pub signature: SignatureReport,
}

impl FieldReport {
    pub fn new(field: &NumberField) -> Self {
        let sig = field.signature();
        let (lo, hi) = field.root_interval();
        FieldReport {
            min_poly: poly_strings(field.min_poly()),
            min_poly_display: field.min_poly().to_string(),
            root_interval: [rational_string(lo), rational_string(hi)],
            degree: field.degree(),
            signature: SignatureReport {
                r1: sig.r1,
                r2: sig.r2,
                unit_rank: sig.unit_rank(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowReport {
    pub frequencies: Vec<Vec<String>>,
    pub scaling: Option<Vec<String>>,
    pub scaled_frequencies: Option<Vec<Vec<String>>>,
}

impl FlowReport {
    pub fn new(flow: &ValidatedFlow) -> Self {
        let coords = flow.spec().freq_coords();
        let frequencies = (0..coords.rows())
            .map(|i| coords.row(i).iter().map(rational_string).collect())
            .collect();
        FlowReport {
            frequencies,
            scaling: flow.scaling().map(|s| coords_strings(s.coords())),
            scaled_frequencies: if flow.is_formal() {
                None
            } else {
                Some(
                    flow.scaled_frequencies()
                        .iter()
                        .map(|a| coords_strings(a.coords()))
                        .collect(),
                )
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitGeneratorReport {
    pub coords: Vec<String>,
    pub provenance: String,
    pub min_poly: Vec<String>,
    pub norm: String,
    pub approx: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitGroupReport {
    pub torsion_order: u32,
    pub rank: usize,
    pub generators: Vec<UnitGeneratorReport>,
}

impl UnitGroupReport {
    pub fn new(units: &UnitGroup) -> Self {
        UnitGroupReport {
            torsion_order: units.torsion_order(),
            rank: units.rank(),
            generators: units
                .generators()
                .iter()
                .map(|g| UnitGeneratorReport {
                    coords: coords_strings(g.element.coords()),
                    provenance: g.provenance.to_string(),
                    min_poly: poly_strings(&g.element.minimal_polynomial()),
                    norm: rational_string(&g.element.norm()),
                    approx: decimal_approx(&g.element, APPROX_PLACES),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplierReport {
    pub value: Vec<String>,
    pub approx: Option<String>,
    pub min_poly: Option<Vec<String>>,
    pub norm: Option<String>,
    pub witness: Vec<Vec<String>>,
    pub witness_det: String,
}

impl MultiplierReport {
    pub fn new(m: &Multiplier) -> Self {
        match &m.value {
            MultiplierValue::Field(x) => MultiplierReport {
                value: coords_strings(x.coords()),
                approx: Some(decimal_approx(x, APPROX_PLACES)),
                min_poly: Some(poly_strings(&x.minimal_polynomial())),
                norm: Some(rational_string(&x.norm())),
                witness: matrix_strings(&m.witness),
                witness_det: m.witness.det().to_string(),
            },
            MultiplierValue::Rational(r) => MultiplierReport {
                value: vec![rational_string(r)],
                approx: None,
                min_poly: None,
                norm: None,
                witness: matrix_strings(&m.witness),
                witness_det: m.witness.det().to_string(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexReport {
    pub kind: String,
    pub value: Option<u64>,
    pub per_generator: Option<Vec<u64>>,
}

impl IndexReport {
    pub fn new(idx: &IndexInUnitGroup) -> Self {
        match idx {
            IndexInUnitGroup::Exact(k) => IndexReport {
                kind: "exact".into(),
                value: Some(*k),
                per_generator: None,
            },
            IndexInUnitGroup::RelativeToSupplied(k) => IndexReport {
                kind: "relative-to-supplied".into(),
                value: Some(*k),
                per_generator: None,
            },
            IndexInUnitGroup::PerGeneratorEvidence(ks) => IndexReport {
                kind: "per-generator-evidence".into(),
                value: None,
                per_generator: Some(ks.clone()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplierGroupReport {
    pub torsion: [String; 2],
    pub torsion_witnesses: [Vec<Vec<String>>; 2],
    pub generators: Vec<MultiplierReport>,
    pub index_in_unit_group: Option<IndexReport>,
}

impl MultiplierGroupReport {
    pub fn new(group: &MultiplierGroup, n: usize) -> Self {
        let (id, neg) = MultiplierGroup::torsion_witnesses(n);
        MultiplierGroupReport {
            torsion: ["1".into(), "-1".into()],
            torsion_witnesses: [matrix_strings(&id), matrix_strings(&neg)],
            generators: group
                .infinite_generators
                .iter()
                .map(MultiplierReport::new)
                .collect(),
            index_in_unit_group: Some(IndexReport::new(&group.index)),
        }
    }

    /// The torsion-only group {1, -1} of a formal flow.
    pub fn torsion_only(n: usize) -> Self {
        let (id, neg) = MultiplierGroup::torsion_witnesses(n);
        MultiplierGroupReport {
            torsion: ["1".into(), "-1".into()],
            torsion_witnesses: [matrix_strings(&id), matrix_strings(&neg)],
            generators: Vec::new(),
            index_in_unit_group: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub kind: String,
    pub field_degree: Option<usize>,
    pub ratio_min_poly: Option<Vec<String>>,
    pub ratio_min_poly_degree: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChecklistReport {
    pub rational_multipliers_only_pm1: bool,
    pub generators_algebraic_integers_degree_at_most_n: bool,
    pub witness_determinants_pm1: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub row_bound: u32,
    pub count: usize,
    pub multipliers: Vec<MultiplierReport>,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub model: String,
    pub description: Option<String>,
    pub dimension: usize,
    pub field: Option<FieldReport>,
    pub flow: FlowReport,
    pub unit_group: Option<UnitGroupReport>,
    pub multiplier_group: MultiplierGroupReport,
    pub classification: ClassificationReport,
    pub structure: String,
    pub checklist: ChecklistReport,
    pub oracle: Option<OracleReport>,
}

pub fn build_analyze_report(
    flow: &ValidatedFlow,
    symmetry: &SymmetryReport,
    description: Option<String>,
    oracle: Option<OracleReport>,
) -> AnalyzeReport {
    let n = flow.dimension();
    let (model, field, unit_group, multiplier_group, classification) =
        match &symmetry.classification {
            Classification::TranscendentalFormal => (
                "formal".to_string(),
                None,
                None,
                MultiplierGroupReport::torsion_only(n),
                ClassificationReport {
                    kind: "transcendental-formal".into(),
                    field_degree: None,
                    ratio_min_poly: None,
                    ratio_min_poly_degree: None,
                },
            ),
            Classification::FAlgebraic(alg) => {
                let field = flow.field().unwrap();
                (
                    "algebraic".to_string(),
                    Some(FieldReport::new(field)),
                    Some(UnitGroupReport::new(&alg.group.unit_group)),
                    MultiplierGroupReport::new(&alg.group, n),
                    ClassificationReport {
                        kind: "F-algebraic".into(),
                        field_degree: Some(field.degree()),
                        ratio_min_poly: alg.ratio_min_poly.as_ref().map(poly_strings),
                        ratio_min_poly_degree: alg
                            .ratio_min_poly
                            .as_ref()
                            .and_then(|p| p.degree()),
                    },
                )
            }
        };
    AnalyzeReport {
        model,
        description,
        dimension: n,
        field,
        flow: FlowReport::new(flow),
        unit_group,
        multiplier_group,
        classification,
        structure: symmetry.structure.clone(),
        checklist: ChecklistReport {
            rational_multipliers_only_pm1: symmetry.checklist.rational_multipliers_only_pm1,
            generators_algebraic_integers_degree_at_most_n: symmetry
                .checklist
                .generators_algebraic_integers_degree_at_most_n,
            witness_determinants_pm1: symmetry.checklist.witness_determinants_pm1,
        },
        oracle,
    }
}

pub fn oracle_report(found: &[Multiplier], row_bound: u32, agrees: bool) -> OracleReport {
    OracleReport {
        row_bound,
        count: found.len(),
        multipliers: found.iter().map(MultiplierReport::new).collect(),
        agrees,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContainmentReport {
    pub kind: String,
    pub relative_index: Option<u64>,
}

impl ContainmentReport {
    pub fn new(c: &Containment) -> Self {
        match c {
            Containment::Contained { relative_index } => ContainmentReport {
                kind: "contained".into(),
                relative_index: Some(*relative_index),
            },
            Containment::NotContained => ContainmentReport {
                kind: "not-contained".into(),
                relative_index: None,
            },
            Containment::Evidence { contained } => ContainmentReport {
                kind: if *contained {
                    "evidence-contained".into()
                } else {
                    "evidence-not-contained".into()
                },
                relative_index: None,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemiconjReportDoc {
    pub model: String,
    pub dimension: usize,
    pub field: Option<FieldReport>,
    pub flow_a: FlowReport,
    pub flow_b: FlowReport,
    pub scale_equivalence: Option<Vec<String>>,
    pub semiconjugacy_witness: Vec<Vec<String>>,
    pub semiconjugacy_det: String,
    pub conjugacy_witness: Option<Vec<Vec<String>>>,
    pub multiplier_group_a: MultiplierGroupReport,
    pub multiplier_group_b: MultiplierGroupReport,
    pub b_in_a: ContainmentReport,
    pub a_in_b: ContainmentReport,
}

fn scale_strings(s: &ScaleFactor) -> Vec<String> {
    match s {
        ScaleFactor::Field(x) => coords_strings(x.coords()),
        ScaleFactor::Rational(r) => vec![rational_string(r)],
    }
}

pub fn build_semiconj_report(
    a: &ValidatedFlow,
    b: &ValidatedFlow,
    rep: &SemiconjugacyReport,
) -> SemiconjReportDoc {
    let n = a.dimension();
    SemiconjReportDoc {
        model: "algebraic".into(),
        dimension: n,
        field: a.field().map(FieldReport::new),
        flow_a: FlowReport::new(a),
        flow_b: FlowReport::new(b),
        scale_equivalence: rep.scale.as_ref().map(scale_strings),
        semiconjugacy_witness: matrix_strings(&rep.witness),
        semiconjugacy_det: rep.det.to_string(),
        conjugacy_witness: rep.conjugacy.as_ref().map(matrix_strings),
        multiplier_group_a: MultiplierGroupReport::new(&rep.group_a, n),
        multiplier_group_b: MultiplierGroupReport::new(&rep.group_b, n),
        b_in_a: ContainmentReport::new(&rep.b_in_a),
        a_in_b: ContainmentReport::new(&rep.a_in_b),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitReportDoc {
    pub discriminant: Option<u32>,
    pub field: FieldReport,
    pub unit_group: UnitGroupReport,
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report serialization cannot fail");
    s.push('\n');
    s
}

// ---- human-readable rendering ----

fn push_kv(out: &mut String, key: &str, value: &str) {
    out.push_str(&format!("{:<22}{}\n", key, value));
}

fn matrix_lines(rows: &[Vec<String>]) -> Vec<String> {
    let width = rows
        .iter()
        .flat_map(|r| r.iter().map(|e| e.len()))
        .max()
        .unwrap_or(1);
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|e| format!("{:>width$}", e)).collect();
            format!("  [ {} ]", cells.join("  "))
        })
        .collect()
}

fn push_matrix(out: &mut String, label: &str, rows: &[Vec<String>]) {
    out.push_str(label);
    out.push('\n');
    for line in matrix_lines(rows) {
        out.push_str(&line);
        out.push('\n');
    }
}

fn rationals(coords: &[String]) -> Vec<Rational> {
    use std::str::FromStr;
    coords
        .iter()
        .map(|s| Rational::from_str(s).expect("report strings are canonical rationals"))
        .collect()
}

fn pretty_from_strings(coords: &[String], gen: &str) -> String {
    element_pretty(&rationals(coords), gen)
}

pub fn render_analyze_text(r: &AnalyzeReport) -> String {
    let gen_sym = if r.model == "formal" { "g" } else { "d" };
    let mut out = String::new();
    push_kv(&mut out, "model", &r.model);
    if let Some(d) = &r.description {
        push_kv(&mut out, "description", d);
    }
    push_kv(&mut out, "dimension", &r.dimension.to_string());
    if let Some(f) = &r.field {
        push_kv(
            &mut out,
            "field",
            &format!(
                "Q(d), d the root of {} in [{}, {}]",
                f.min_poly_display, f.root_interval[0], f.root_interval[1]
            ),
        );
        push_kv(
            &mut out,
            "signature",
            &format!(
                "r1 = {}, r2 = {}, unit rank {}",
                f.signature.r1, f.signature.r2, f.signature.unit_rank
            ),
        );
    }
    for (i, row) in r.flow.frequencies.iter().enumerate() {
        push_kv(
            &mut out,
            &format!("frequency a_{}", i + 1),
            &pretty_from_strings(row, gen_sym),
        );
    }
    if let Some(s) = &r.flow.scaling {
        push_kv(&mut out, "scaling theta", &pretty_from_strings(s, gen_sym));
    }
    if let Some(u) = &r.unit_group {
        for g in &u.generators {
            push_kv(
                &mut out,
                "unit group",
                &format!(
                    "{{+-eps^k}}, eps = {} ({}), eps ~ {}",
                    pretty_from_strings(&g.coords, gen_sym),
                    g.provenance,
                    g.approx
                ),
            );
        }
    }
    if r.multiplier_group.generators.is_empty() {
        push_kv(&mut out, "multiplier group", "{1, -1}");
    } else {
        for m in &r.multiplier_group.generators {
            push_kv(
                &mut out,
                "multiplier generator",
                &format!(
                    "{}{}",
                    pretty_from_strings(&m.value, gen_sym),
                    m.approx
                        .as_ref()
                        .map(|a| format!(" ~ {}", a))
                        .unwrap_or_default()
                ),
            );
            push_matrix(&mut out, "witness matrix", &m.witness);
        }
    }
    if let Some(idx) = &r.multiplier_group.index_in_unit_group {
        let desc = match (idx.kind.as_str(), idx.value, &idx.per_generator) {
            ("exact", Some(k), _) => format!("{}", k),
            ("relative-to-supplied", Some(k), _) => {
                format!("{} (relative to the supplied generator, assumed fundamental)", k)
            }
            (_, _, Some(ks)) => format!(
                "per-generator exponents {:?} (evidence only, not a certified index)",
                ks
            ),
            _ => "?".into(),
        };
        push_kv(&mut out, "index [o*:M]", &desc);
    }
    push_kv(&mut out, "classification", &r.classification.kind);
    if let Some(p) = &r.classification.ratio_min_poly {
        push_kv(
            &mut out,
            "ratio min poly",
            &format!(
                "{} (degree {})",
                IntPolynomialDisplay(p),
                r.classification.ratio_min_poly_degree.unwrap_or(0)
            ),
        );
    }
    push_kv(&mut out, "structure", &r.structure);
    push_kv(
        &mut out,
        "checklist",
        &format!(
            "rational multipliers only +-1: {}; algebraic integers of degree <= n: {}; witness dets +-1: {}",
            yesno(r.checklist.rational_multipliers_only_pm1),
            yesno(r.checklist.generators_algebraic_integers_degree_at_most_n),
            yesno(r.checklist.witness_determinants_pm1)
        ),
    );
    if let Some(o) = &r.oracle {
        push_kv(
            &mut out,
            "oracle",
            &format!(
                "row bound {}: {} multiplier(s) found, {}",
                o.row_bound,
                o.count,
                if o.agrees { "agrees with the computed group" } else { "DISAGREES" }
            ),
        );
    }
    out
}

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Render an ascending coefficient string list like an integer polynomial.
struct IntPolynomialDisplay<'a>(&'a [String]);

impl std::fmt::Display for IntPolynomialDisplay<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let coeffs: Vec<BigInt> = self
            .0
            .iter()
            .map(|s| s.parse().expect("report strings are canonical integers"))
            .collect();
        write!(f, "{}", IntPolynomial::new(coeffs))
    }
}

pub fn render_semiconj_text(r: &SemiconjReportDoc) -> String {
    let mut out = String::new();
    push_kv(&mut out, "model", &r.model);
    push_kv(&mut out, "dimension", &r.dimension.to_string());
    if let Some(f) = &r.field {
        push_kv(
            &mut out,
            "field",
            &format!(
                "Q(d), d the root of {} in [{}, {}]",
                f.min_poly_display, f.root_interval[0], f.root_interval[1]
            ),
        );
    }
    match &r.scale_equivalence {
        Some(theta) => push_kv(
            &mut out,
            "scale equivalence",
            &format!("theta = {}", pretty_from_strings(theta, "d")),
        ),
        None => push_kv(&mut out, "scale equivalence", "none"),
    }
    push_matrix(
        &mut out,
        &format!("semiconjugacy witness (det {})", r.semiconjugacy_det),
        &r.semiconjugacy_witness,
    );
    match &r.conjugacy_witness {
        Some(_) => push_kv(&mut out, "conjugacy", "yes (witness above, det +-1)"),
        None => push_kv(&mut out, "conjugacy", "no (determinant is not +-1)"),
    }
    for (label, g) in [("M_a", &r.multiplier_group_a), ("M_b", &r.multiplier_group_b)] {
        if let Some(idx) = &g.index_in_unit_group {
            push_kv(
                &mut out,
                &format!("{} index", label),
                &idx.value
                    .map(|k| k.to_string())
                    .unwrap_or_else(|| format!("{:?}", idx.per_generator)),
            );
        }
        for m in &g.generators {
            push_kv(
                &mut out,
                &format!("{} generator", label),
                &pretty_from_strings(&m.value, "d"),
            );
        }
    }
    let verdict = |c: &ContainmentReport| match (c.kind.as_str(), c.relative_index) {
        ("contained", Some(k)) => format!("contained, relative index {}", k),
        ("not-contained", _) => "NOT contained".into(),
        (other, _) => other.to_string(),
    };
    push_kv(&mut out, "M_b inside M_a", &verdict(&r.b_in_a));
    push_kv(&mut out, "M_a inside M_b", &verdict(&r.a_in_b));
    out.push_str("note: witnesses are linear parts; any translation may be added\n");
    out
}

pub fn render_unit_text(r: &UnitReportDoc) -> String {
    let mut out = String::new();
    if let Some(d) = r.discriminant {
        push_kv(&mut out, "d", &d.to_string());
    }
    push_kv(
        &mut out,
        "field",
        &format!(
            "Q(d), d the root of {} in [{}, {}]",
            r.field.min_poly_display, r.field.root_interval[0], r.field.root_interval[1]
        ),
    );
    push_kv(
        &mut out,
        "unit group",
        &format!("Z_2 x Z^{} (torsion {{1, -1}})", r.unit_group.rank),
    );
    for g in &r.unit_group.generators {
        push_kv(
            &mut out,
            "generator",
            &pretty_from_strings(&g.coords, "d"),
        );
        push_kv(&mut out, "  coordinates", &format!("({})", g.coords.join(", ")));
        push_kv(
            &mut out,
            "  minimal polynomial",
            &IntPolynomialDisplay(&g.min_poly).to_string(),
        );
        push_kv(&mut out, "  norm", &g.norm);
        push_kv(&mut out, "  approx", &g.approx);
        push_kv(&mut out, "  provenance", &g.provenance);
    }
    out
}
