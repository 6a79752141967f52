//! qpsym: exact symmetry analysis for quasiperiodic torus flows.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qpsym::flowfile::{load_flow_file, LoadedFlow};
use qpsym::report::{
    self, build_analyze_report, build_semiconj_report, render_analyze_text, render_semiconj_text,
    render_unit_text, to_json, FieldReport, UnitGroupReport, UnitReportDoc,
};
use qpsym::verify::run_claims;
use qpsym::CliError;
use qpsym_core::conjugacy as conj;
use qpsym_core::multiplier::{
    brute_force_multipliers, classify, oracle_agreement, validate_flow,
    Classification, ValidatedFlow,
};
use qpsym_core::units::{unit_group, UnitGroup};

#[derive(Parser)]
#[command(
    name = "qpsym",
    version,
    about = "Exact multiplier groups, GL(n,Z) witnesses and conjugacy analysis for quasiperiodic torus flows"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze a flow file: classification, multiplier group, witnesses.
    Analyze {
        /// Path to a .flow file
        file: PathBuf,
        /// Exponent search bound for the multiplier index
        #[arg(long, default_value_t = 100_000)]
        max_index: u64,
        /// When positive, run the brute-force first-row oracle with this
        /// bound and report agreement
        #[arg(long, default_value_t = 0)]
        oracle_bound: u32,
        /// Emit the machine-readable JSON report
        #[arg(long)]
        json: bool,
    },
    /// Print the fundamental unit of a real quadratic field.
    Unit {
        /// Squarefree d > 1 for Q(sqrt d)
        #[arg(long)]
        disc: Option<u32>,
        /// Alternatively, a flow/field file whose [field] section names the field
        field_file: Option<PathBuf>,
        /// Emit the machine-readable JSON report
        #[arg(long)]
        json: bool,
    },
    /// Compare two flows: scale equivalence, (semi)conjugacy, containment.
    Semiconj {
        file_a: PathBuf,
        file_b: PathBuf,
        /// Emit the machine-readable JSON report
        #[arg(long)]
        json: bool,
    },
    /// Run the built-in worked-example regression suite.
    VerifyPaper,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.cmd {
        Cmd::Analyze {
            file,
            max_index,
            oracle_bound,
            json,
        } => cmd_analyze(&file, max_index, oracle_bound, json),
        Cmd::Unit {
            disc,
            field_file,
            json,
        } => cmd_unit(disc, field_file.as_deref(), json),
        Cmd::Semiconj {
            file_a,
            file_b,
            json,
        } => cmd_semiconj(&file_a, &file_b, json),
        Cmd::VerifyPaper => Ok(cmd_verify_paper()),
    }
}

fn cmd_analyze(
    path: &std::path::Path,
    max_index: u64,
    oracle_bound: u32,
    json: bool,
) -> Result<ExitCode, CliError> {
    let loaded = load_flow_file(path)?;
    let spec = loaded
        .spec
        .ok_or_else(|| CliError::Input("flow file has no frequencies".into()))?;
    let flow = validate_flow(spec)?;
    let symmetry = classify(&flow, max_index)?;

    let mut inconsistent = false;
    let oracle = if oracle_bound > 0 {
        let found = brute_force_multipliers(&flow, oracle_bound);
        let group = match &symmetry.classification {
            Classification::FAlgebraic(alg) => Some(&alg.group),
            Classification::TranscendentalFormal => None,
        };
        let agrees = oracle_agreement(&flow, group, &found, oracle_bound)?;
        inconsistent = !agrees;
        Some(report::oracle_report(&found, oracle_bound, agrees))
    } else {
        None
    };

    let doc = build_analyze_report(&flow, &symmetry, loaded.description, oracle);
    if json {
        print!("{}", to_json(&doc));
    } else {
        print!("{}", render_analyze_text(&doc));
    }
    if inconsistent {
        eprintln!("error: Internal: brute-force oracle disagrees with the computed multiplier group");
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_unit(
    disc: Option<u32>,
    field_file: Option<&std::path::Path>,
    json: bool,
) -> Result<ExitCode, CliError> {
    let (discriminant, field, supplied) = match (disc, field_file) {
        (Some(d), None) => {
            // validates d > 1 and squarefree
            let unit = qpsym_core::units::quadratic_fundamental_unit(d)?;
            (Some(d), unit.field().clone(), Vec::new())
        }
        (None, Some(path)) => {
            let loaded: LoadedFlow = load_flow_file(path)?;
            let field = loaded
                .field
                .ok_or_else(|| CliError::Input("field file has no [field] section".into()))?;
            (None, field, loaded.supplied_units)
        }
        _ => {
            return Err(CliError::Input(
                "unit requires exactly one of --disc or a field file".into(),
            ));
        }
    };
    let units = unit_group(&field, &supplied)?;
    let doc = UnitReportDoc {
        discriminant,
        field: FieldReport::new(&field),
        unit_group: UnitGroupReport::new(&units),
    };
    if json {
        print!("{}", to_json(&doc));
    } else {
        print!("{}", render_unit_text(&doc));
    }
    Ok(ExitCode::SUCCESS)
}

fn shared_unit_group(a: &ValidatedFlow, b: &ValidatedFlow) -> Result<UnitGroup, CliError> {
    let field = a
        .field()
        .expect("semiconjugacy reports need the algebraic model");
    let supplied = if !a.spec().supplied_units().is_empty() {
        a.spec().supplied_units()
    } else {
        b.spec().supplied_units()
    };
    Ok(unit_group(field, supplied)?)
}

fn cmd_semiconj(
    path_a: &std::path::Path,
    path_b: &std::path::Path,
    json: bool,
) -> Result<ExitCode, CliError> {
    let a = load_flow_file(path_a)?
        .spec
        .ok_or_else(|| CliError::Input("first flow file has no frequencies".into()))?;
    let b = load_flow_file(path_b)?
        .spec
        .ok_or_else(|| CliError::Input("second flow file has no frequencies".into()))?;
    let a = validate_flow(a)?;
    let b = validate_flow(b)?;

    if a.is_formal() || b.is_formal() {
        if !(a.is_formal() && b.is_formal()) {
            return Err(CliError::Domain(qpsym_core::Error::FieldMismatch));
        }
        return cmd_semiconj_formal(&a, &b, json);
    }

    let units = shared_unit_group(&a, &b)?;
    let rep = conj::semiconjugacy_report(&a, &b, &units, 100_000)?;
    let doc = build_semiconj_report(&a, &b, &rep);
    if json {
        print!("{}", to_json(&doc));
    } else {
        print!("{}", render_semiconj_text(&doc));
    }
    Ok(ExitCode::SUCCESS)
}

/// Two formal flows: witnesses are plain rational linear algebra and both
/// multiplier groups are {1, -1}.
fn cmd_semiconj_formal(
    a: &ValidatedFlow,
    b: &ValidatedFlow,
    json: bool,
) -> Result<ExitCode, CliError> {
    use qpsym::report::{ContainmentReport, FlowReport, MultiplierGroupReport, SemiconjReportDoc};
    let witness = conj::semiconjugacy_witness(a, b)?;
    let det = witness.det();
    let scale = conj::scale_equivalence(a, b)?;
    let n = a.dimension();
    let conjugate = {
        use num_traits::Signed;
        num_traits::One::is_one(&det.abs())
    };
    let doc = SemiconjReportDoc {
        model: "formal".into(),
        dimension: n,
        field: None,
        flow_a: FlowReport::new(a),
        flow_b: FlowReport::new(b),
        scale_equivalence: scale.map(|s| match s {
            conj::ScaleFactor::Rational(r) => vec![r.to_string()],
            conj::ScaleFactor::Field(x) => report::coords_strings(x.coords()),
        }),
        semiconjugacy_witness: report::matrix_strings(&witness),
        semiconjugacy_det: det.to_string(),
        conjugacy_witness: conjugate.then(|| report::matrix_strings(&witness)),
        multiplier_group_a: MultiplierGroupReport::torsion_only(n),
        multiplier_group_b: MultiplierGroupReport::torsion_only(n),
        b_in_a: ContainmentReport {
            kind: "contained".into(),
            relative_index: Some(1),
        },
        a_in_b: ContainmentReport {
            kind: "contained".into(),
            relative_index: Some(1),
        },
    };
    if json {
        print!("{}", to_json(&doc));
    } else {
        print!("{}", render_semiconj_text(&doc));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify_paper() -> ExitCode {
    let results = run_claims();
    let total = results.len();
    let passed = results.iter().filter(|c| c.pass).count();
    println!("verify-paper: worked-example regression suite");
    for c in &results {
        if c.pass {
            println!("  [PASS] {}", c.name);
        } else {
            println!("  [FAIL] {} -- {}", c.name, c.detail);
        }
    }
    println!("result: {}/{} claims passed", passed, total);
    if passed == total {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}
