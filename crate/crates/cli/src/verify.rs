//! Built-in regression suite over the worked reference examples shipped with
//! the tool. Every expected value is pinned exactly; `verify-paper` reruns
//! the full pipeline on the embedded flow files and reports one line per
//! claim.

use num_bigint::BigInt;

use qpsym_core::exactmath::{IntMatrix, RationalMatrix};
use qpsym_core::multiplier::{
    brute_force_multipliers, classify, multiplier_of_matrix, oracle_agreement, validate_flow,
    Classification, FlowSpec, IndexInUnitGroup, MultiplierValue, ValidatedFlow,
};
use qpsym_core::numberfield::Signature;
use qpsym_core::units::quadratic_fundamental_unit;
use qpsym_core::conjugacy::{semiconjugacy_report, Containment};
use qpsym_core::Rational;

use crate::flowfile::parse_flow_file;

pub const EX_CUBIC: &str = include_str!("../examples/ex_cubic.flow");
pub const EX_SQRT3_PHI: &str = include_str!("../examples/ex_sqrt3_phi.flow");
pub const EX_SQRT3_PSI: &str = include_str!("../examples/ex_sqrt3_psi.flow");
pub const EX_FORMAL: &str = include_str!("../examples/ex_formal.flow");

pub struct ClaimResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn claim(
    results: &mut Vec<ClaimResult>,
    name: &'static str,
    run: impl FnOnce() -> Result<(), String>,
) {
    match run() {
        Ok(()) => results.push(ClaimResult {
            name,
            pass: true,
            detail: String::new(),
        }),
        Err(detail) => results.push(ClaimResult {
            name,
            pass: false,
            detail,
        }),
    }
}

fn need(cond: bool, detail: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(detail.to_string())
    }
}

fn load(text: &str) -> Result<ValidatedFlow, String> {
    let spec = parse_flow_file(text)
        .map_err(|e| e.to_string())?
        .spec
        .ok_or("missing frequencies")?;
    validate_flow(spec).map_err(|e| e.to_string())
}

fn analyzed(text: &str) -> Result<(ValidatedFlow, qpsym_core::multiplier::SymmetryReport), String> {
    let flow = load(text)?;
    let report = classify(&flow, 100_000).map_err(|e| e.to_string())?;
    Ok((flow, report))
}

fn algebraic_group(
    report: &qpsym_core::multiplier::SymmetryReport,
) -> Result<&qpsym_core::multiplier::MultiplierGroup, String> {
    match &report.classification {
        Classification::FAlgebraic(alg) => Ok(&alg.group),
        Classification::TranscendentalFormal => Err("expected an algebraic flow".into()),
    }
}

pub fn run_claims() -> Vec<ClaimResult> {
    let mut r = Vec::new();

    claim(&mut r, "fundamental unit of Q(sqrt3) is 2 + sqrt3", || {
        let u = quadratic_fundamental_unit(3).map_err(|e| e.to_string())?;
        need(
            u.coords() == [rat(2), rat(1)],
            &format!("got {:?}", u.coords()),
        )
    });

    claim(
        &mut r,
        "fundamental units: d = 2 gives 1 + sqrt2; d = 5 gives (1 + sqrt5)/2",
        || {
            let u2 = quadratic_fundamental_unit(2).map_err(|e| e.to_string())?;
            need(u2.coords() == [rat(1), rat(1)], "wrong unit for d = 2")?;
            let u5 = quadratic_fundamental_unit(5).map_err(|e| e.to_string())?;
            need(
                u5.coords() == [half(), half()],
                "wrong unit for d = 5 (half-integer coordinates expected)",
            )
        },
    );

    claim(&mut r, "T^2 flow (1, 4*sqrt3): index [o*:M] = 2", || {
        let (_, report) = analyzed(EX_SQRT3_PHI)?;
        let g = algebraic_group(&report)?;
        need(
            g.index == IndexInUnitGroup::Exact(2),
            &format!("got {:?}", g.index),
        )
    });

    claim(
        &mut r,
        "T^2 flow (1, 4*sqrt3): generator 7 + 4*sqrt3 with witness [[7,1],[48,7]]",
        || {
            let (flow, report) = analyzed(EX_SQRT3_PHI)?;
            let g = algebraic_group(&report)?;
            let m = &g.infinite_generators[0];
            let field = flow.field().unwrap();
            need(
                m.value == MultiplierValue::Field(field.element_from_i64(&[7, 4])),
                "wrong generator value",
            )?;
            need(
                m.witness == IntMatrix::from_i64(&[&[7, 1], &[48, 7]]),
                &format!("wrong witness {:?}", m.witness),
            )
        },
    );

    claim(&mut r, "T^2 flow (4, 60*sqrt3): index [o*:M] = 3", || {
        let (_, report) = analyzed(EX_SQRT3_PSI)?;
        let g = algebraic_group(&report)?;
        need(
            g.index == IndexInUnitGroup::Exact(3),
            &format!("got {:?}", g.index),
        )
    });

    claim(
        &mut r,
        "T^2 flow (4, 60*sqrt3): generator 26 + 15*sqrt3 with witness [[26,1],[675,26]]",
        || {
            let (flow, report) = analyzed(EX_SQRT3_PSI)?;
            let g = algebraic_group(&report)?;
            let m = &g.infinite_generators[0];
            let field = flow.field().unwrap();
            need(
                m.value == MultiplierValue::Field(field.element_from_i64(&[26, 15])),
                "wrong generator value",
            )?;
            need(
                m.witness == IntMatrix::from_i64(&[&[26, 1], &[675, 26]]),
                &format!("wrong witness {:?}", m.witness),
            )
        },
    );

    claim(
        &mut r,
        "semiconjugacy (1,4*sqrt3) -> (4,60*sqrt3): witness diag(4, 15), not conjugate",
        || {
            let a = load(EX_SQRT3_PHI)?;
            let b = load(EX_SQRT3_PSI)?;
            let units = qpsym_core::units::unit_group(a.field().unwrap(), &[])
                .map_err(|e| e.to_string())?;
            let rep = semiconjugacy_report(&a, &b, &units, 100_000).map_err(|e| e.to_string())?;
            need(
                rep.witness == IntMatrix::from_i64(&[&[4, 0], &[0, 15]]),
                &format!("wrong witness {:?}", rep.witness),
            )?;
            need(rep.det == BigInt::from(60), "wrong determinant")?;
            need(rep.conjugacy.is_none(), "must not be conjugate")
        },
    );

    claim(
        &mut r,
        "semiconjugate pair: neither multiplier group contains the other",
        || {
            let a = load(EX_SQRT3_PHI)?;
            let b = load(EX_SQRT3_PSI)?;
            let units = qpsym_core::units::unit_group(a.field().unwrap(), &[])
                .map_err(|e| e.to_string())?;
            let rep = semiconjugacy_report(&a, &b, &units, 100_000).map_err(|e| e.to_string())?;
            need(rep.b_in_a == Containment::NotContained, "M_b inside M_a")?;
            need(rep.a_in_b == Containment::NotContained, "M_a inside M_b")
        },
    );

    claim(
        &mut r,
        "T^3 cubic flow: index 3 relative to the supplied unit -1 + 2^(1/3)",
        || {
            let (_, report) = analyzed(EX_CUBIC)?;
            let g = algebraic_group(&report)?;
            need(
                g.index == IndexInUnitGroup::RelativeToSupplied(3),
                &format!("got {:?}", g.index),
            )
        },
    );

    claim(
        &mut r,
        "T^3 cubic flow: generator 1 + 3*2^(1/3) - 3*2^(2/3)",
        || {
            let (flow, report) = analyzed(EX_CUBIC)?;
            let g = algebraic_group(&report)?;
            let field = flow.field().unwrap();
            need(
                g.infinite_generators[0].value
                    == MultiplierValue::Field(field.element_from_i64(&[1, 3, -3])),
                "wrong generator value",
            )
        },
    );

    claim(
        &mut r,
        "T^3 cubic flow: witness [[1,1,1],[-18,1,-3],[-18,6,1]]",
        || {
            let (_, report) = analyzed(EX_CUBIC)?;
            let g = algebraic_group(&report)?;
            need(
                g.infinite_generators[0].witness
                    == IntMatrix::from_i64(&[&[1, 1, 1], &[-18, 1, -3], &[-18, 6, 1]]),
                &format!("wrong witness {:?}", g.infinite_generators[0].witness),
            )
        },
    );

    claim(
        &mut r,
        "T^3 cubic flow: the witness multiplier equals (-1 + 2^(1/3))^3",
        || {
            let flow = load(EX_CUBIC)?;
            let field = flow.field().unwrap();
            let b = IntMatrix::from_i64(&[&[1, 1, 1], &[-18, 1, -3], &[-18, 6, 1]]);
            let alpha = multiplier_of_matrix(&flow, &b).map_err(|e| e.to_string())?;
            let cube = field
                .element_from_i64(&[-1, 1, 0])
                .pow(3)
                .map_err(|e| e.to_string())?;
            need(alpha == MultiplierValue::Field(cube), "cube mismatch")
        },
    );

    claim(
        &mut r,
        "formal flow (1, g, g^2): M = {1, -1} with witnesses +-identity, structure T^3 \u{22ca} Z_2",
        || {
            let (flow, report) = analyzed(EX_FORMAL)?;
            need(
                matches!(report.classification, Classification::TranscendentalFormal),
                "expected formal classification",
            )?;
            need(
                report.structure == "T^3 \u{22ca} Z_2",
                &format!("got structure {}", report.structure),
            )?;
            let found = brute_force_multipliers(&flow, 5);
            need(
                oracle_agreement(&flow, None, &found, 5).map_err(|e| e.to_string())?,
                "formal oracle mismatch",
            )
        },
    );

    claim(
        &mut r,
        "formal flow (1, g) on T^2: M = {1, -1}, structure T^2 \u{22ca} Z_2",
        || {
            let spec = FlowSpec::formal(RationalMatrix::identity(2)).map_err(|e| e.to_string())?;
            let flow = validate_flow(spec).map_err(|e| e.to_string())?;
            let report = classify(&flow, 100_000).map_err(|e| e.to_string())?;
            need(
                report.structure == "T^2 \u{22ca} Z_2",
                &format!("got structure {}", report.structure),
            )?;
            let found = brute_force_multipliers(&flow, 5);
            need(found.len() == 2, "formal T^2 must have exactly +-1")
        },
    );

    claim(
        &mut r,
        "power-basis flow over Q(sqrt3): index 1 with generator 2 + sqrt3",
        || {
            let field = qpsym_core::units::canonical_sqrt_field(3);
            let spec = FlowSpec::algebraic(field.clone(), RationalMatrix::identity(2), vec![])
                .map_err(|e| e.to_string())?;
            let flow = validate_flow(spec).map_err(|e| e.to_string())?;
            let report = classify(&flow, 100_000).map_err(|e| e.to_string())?;
            let g = algebraic_group(&report)?;
            need(g.index == IndexInUnitGroup::Exact(1), "index must be 1")?;
            need(
                g.infinite_generators[0].value
                    == MultiplierValue::Field(field.element_from_i64(&[2, 1])),
                "generator must be 2 + sqrt3",
            )
        },
    );

    claim(
        &mut r,
        "signatures: z^2 - 3 has (r1, r2) = (2, 0); z^3 - 2 has (1, 1); both unit rank 1",
        || {
            let quad = load(EX_SQRT3_PHI)?;
            let sig2 = quad.field().unwrap().signature();
            need(
                sig2 == Signature { r1: 2, r2: 0 } && sig2.unit_rank() == 1,
                &format!("quadratic signature {:?}", sig2),
            )?;
            let cubic = load(EX_CUBIC)?;
            let sig3 = cubic.field().unwrap().signature();
            need(
                sig3 == Signature { r1: 1, r2: 1 } && sig3.unit_rank() == 1,
                &format!("cubic signature {:?}", sig3),
            )
        },
    );

    claim(
        &mut r,
        "oracle (row bound 30) finds exactly {+-1, +-g^(+-1)} for both T^2 flows",
        || {
            for text in [EX_SQRT3_PHI, EX_SQRT3_PSI] {
                let flow = load(text)?;
                let units = qpsym_core::units::unit_group(flow.field().unwrap(), &[])
                    .map_err(|e| e.to_string())?;
                let group = qpsym_core::multiplier::multiplier_group(&flow, &units, 100_000)
                    .map_err(|e| e.to_string())?;
                let found = brute_force_multipliers(&flow, 30);
                need(found.len() == 6, &format!("expected 6, found {}", found.len()))?;
                need(
                    oracle_agreement(&flow, Some(&group), &found, 30)
                        .map_err(|e| e.to_string())?,
                    "oracle disagreement",
                )?;
            }
            Ok(())
        },
    );

    r
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn half() -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_claims_pass() {
        let results = run_claims();
        for c in &results {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
        assert!(results.len() >= 14);
    }
}
