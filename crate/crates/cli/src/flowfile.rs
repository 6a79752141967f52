//! The .flow file format: a TOML document describing a flow by its model,
//! field presentation, frequency rows and optional supplied units. Rationals
//! are strings "p/q" (or "p"), minimal polynomials are ascending integer
//! coefficient lists.

use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;

use qpsym_core::exactmath::{IntPolynomial, RationalMatrix};
use qpsym_core::multiplier::FlowSpec;
use qpsym_core::numberfield::{FieldElement, NumberField};
use qpsym_core::Rational;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFlowFile {
    model: String,
    description: Option<String>,
    frequencies: Option<Vec<Vec<String>>>,
    units: Option<Vec<Vec<String>>>,
    field: Option<RawField>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawField {
    min_poly: Vec<i64>,
    root_interval: [String; 2],
}

/// A parsed flow file. `spec` is None for field-only files (the `unit`
/// command accepts those).
#[derive(Debug)]
pub struct LoadedFlow {
    pub spec: Option<FlowSpec>,
    pub field: Option<NumberField>,
    pub supplied_units: Vec<FieldElement>,
    pub description: Option<String>,
}

pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    Rational::from_str(s.trim())
        .map_err(|e| CliError::Input(format!("invalid rational '{}': {}", s, e)))
}

fn parse_row(row: &[String], what: &str, idx: usize) -> Result<Vec<Rational>, CliError> {
    row.iter()
        .map(|s| {
            parse_rational(s)
                .map_err(|e| CliError::Input(format!("{} row {}: {}", what, idx + 1, e)))
        })
        .collect()
}

pub fn parse_flow_file(text: &str) -> Result<LoadedFlow, CliError> {
    let raw: RawFlowFile = toml::from_str(text)
        .map_err(|e| CliError::Input(format!("flow file parse error: {}", e)))?;

    let field = match &raw.field {
        None => None,
        Some(rf) => {
            let poly = IntPolynomial::from_i64(&rf.min_poly);
            let lo = parse_rational(&rf.root_interval[0])?;
            let hi = parse_rational(&rf.root_interval[1])?;
            Some(NumberField::new(poly, (lo, hi)).map_err(CliError::from)?)
        }
    };

    let (spec, supplied_units) = match raw.model.as_str() {
        "algebraic" => {
            let field = field.clone().ok_or_else(|| {
                CliError::Input("algebraic model requires a [field] section".into())
            })?;
            let units = parse_units(&raw, &field)?;
            let spec = match &raw.frequencies {
                None => None,
                Some(rows) => Some(build_algebraic_spec(&field, rows, units.clone())?),
            };
            (spec, units)
        }
        "formal" => {
            if raw.field.is_some() {
                return Err(CliError::Input(
                    "formal model must not carry a [field] section".into(),
                ));
            }
            if raw.units.is_some() {
                return Err(CliError::Input(
                    "formal model must not carry supplied units".into(),
                ));
            }
            let rows = raw.frequencies.as_ref().ok_or_else(|| {
                CliError::Input("formal model requires frequency rows".into())
            })?;
            let coords = build_matrix(rows)?;
            let spec = FlowSpec::formal(coords).map_err(CliError::from)?;
            (Some(spec), Vec::new())
        }
        other => {
            return Err(CliError::Input(format!(
                "model must be 'algebraic' or 'formal', got '{}'",
                other
            )));
        }
    };

    Ok(LoadedFlow {
        spec,
        field,
        supplied_units,
        description: raw.description,
    })
}

fn parse_units(raw: &RawFlowFile, field: &NumberField) -> Result<Vec<FieldElement>, CliError> {
    let n = field.degree();
    let mut out = Vec::new();
    if let Some(rows) = &raw.units {
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(CliError::Input(format!(
                    "units row {}: expected {} coordinates, got {}",
                    i + 1,
                    n,
                    row.len()
                )));
            }
            out.push(field.element(parse_row(row, "units", i)?));
        }
    }
    Ok(out)
}

fn build_matrix(rows: &[Vec<String>]) -> Result<RationalMatrix, CliError> {
    let n = rows.len();
    if n == 0 {
        return Err(CliError::Input("frequencies must not be empty".into()));
    }
    let mut entries = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(CliError::Input(format!(
                "frequencies row {}: expected {} entries, got {}",
                i + 1,
                n,
                row.len()
            )));
        }
        entries.extend(parse_row(row, "frequencies", i)?);
    }
    Ok(RationalMatrix::new(n, n, entries))
}

fn build_algebraic_spec(
    field: &NumberField,
    rows: &[Vec<String>],
    units: Vec<FieldElement>,
) -> Result<FlowSpec, CliError> {
    let coords = build_matrix(rows)?;
    if coords.rows() != field.degree() {
        return Err(CliError::Input(format!(
            "expected {} frequencies for a degree-{} field, got {}",
            field.degree(),
            field.degree(),
            coords.rows()
        )));
    }
    FlowSpec::algebraic(field.clone(), coords, units).map_err(CliError::from)
}

pub fn load_flow_file(path: &Path) -> Result<LoadedFlow, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {}", path.display(), e)))?;
    parse_flow_file(&text).map_err(|e| match e {
        CliError::Input(msg) => CliError::Input(format!("{}: {}", path.display(), msg)),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const PHI: &str = include_str!("../examples/ex_sqrt3_phi.flow");
    const FORMAL: &str = include_str!("../examples/ex_formal.flow");

    #[test]
    fn parses_the_shipped_algebraic_file() {
        let loaded = parse_flow_file(PHI).unwrap();
        let spec = loaded.spec.unwrap();
        assert_eq!(spec.dimension(), 2);
        assert!(!spec.is_formal());
    }

    #[test]
    fn parses_the_shipped_formal_file() {
        let loaded = parse_flow_file(FORMAL).unwrap();
        let spec = loaded.spec.unwrap();
        assert!(spec.is_formal());
        assert_eq!(spec.dimension(), 3);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let bad = "model = \"algebraic\"\nfrequencies = [[\"1\"]\n";
        let err = parse_flow_file(bad).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line"), "{}", msg);
    }

    #[test]
    fn rejects_unknown_model() {
        let bad = "model = \"numeric\"\nfrequencies = [[\"1\"]]\n";
        let err = parse_flow_file(bad).unwrap_err();
        assert!(err.to_string().contains("model"));
    }

    #[test]
    fn rejects_bad_rational() {
        let bad = "model = \"formal\"\nfrequencies = [[\"1/0\"]]\n";
        assert!(parse_flow_file(bad).is_err());
    }

    #[test]
    fn rejects_numeric_decimal_frequencies() {
        // only exact rationals are representable; decimal approximations of
        // transcendental frequencies are undecidable from finite data
        let bad = "model = \"formal\"\nfrequencies = [[\"3.14159\", \"0\"], [\"0\", \"1\"]]\n";
        let err = parse_flow_file(bad).unwrap_err();
        assert!(err.to_string().contains("invalid rational"));
    }

    #[test]
    fn rejects_ragged_rows() {
        let bad = "model = \"formal\"\nfrequencies = [[\"1\", \"0\"], [\"1\"]]\n";
        let err = parse_flow_file(bad).unwrap_err();
        assert!(err.to_string().contains("row 2"));
    }
}
