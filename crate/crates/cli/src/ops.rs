//! Command implementations. Each one loads its inputs, runs the library
//! pipeline and emits a deterministic report.

use crate::errors::{CliError, EXIT_RESIDUAL};
use crate::{enumeration_cap, Format};
use kg2_core::fock::{Example33Report, StructureCheck};
use kg2_core::wandering::WanderingSearch;
use kg2_core::{
    classify, dilate, export_dot, find_period, matrix_rep, normal_form, validate, AtomicGraph,
    CheckReport, DilationResult, Letter, Periodicity, Theta2Graph,
};
use serde::Serialize;
use std::fs;
use std::path::Path;

fn require_positive_bound(bound: usize) -> Result<(), CliError> {
    if bound == 0 {
        return Err(CliError::parse("the word bound must be positive"));
    }
    Ok(())
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            fs::write(path, format!("{content}\n"))?;
            Ok(())
        }
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(out: Option<&Path>, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::parse(format!("serialization: {e}")))?;
    emit(out, &text)
}

fn load_theta(path: &Path) -> Result<Theta2Graph, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

fn load_rep(path: &Path) -> Result<AtomicGraph, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// normalize
// ---------------------------------------------------------------------------

fn parse_word(raw: &str) -> Result<Vec<Letter>, CliError> {
    let mut out = Vec::new();
    if raw.is_empty() {
        return Ok(out);
    }
    for token in raw.split('.') {
        let (color, digits) = token.split_at(1.min(token.len()));
        let index: u32 = digits
            .parse()
            .map_err(|_| CliError::parse(format!("bad letter {token:?}; expected e<k> or f<k>")))?;
        if index == 0 {
            return Err(CliError::index_range(format!("letter {token:?} is 1-based")));
        }
        match color {
            "e" => out.push(Letter::Blue(index)),
            "f" => out.push(Letter::Red(index)),
            _ => {
                return Err(CliError::parse(format!(
                    "bad letter {token:?}; expected e<k> or f<k>"
                )))
            }
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct NormalizeReport {
    blue: Vec<u32>,
    red: Vec<u32>,
    degree: (usize, usize),
    length: usize,
}

pub fn normalize(
    raw: &str,
    theta_path: &Path,
    format: Format,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let theta = load_theta(theta_path)?;
    let word = parse_word(raw)?;
    let w = normal_form(&word, &theta).map_err(|e| CliError::index_range(e.to_string()))?;
    let (k, l) = w.degree();
    match format {
        Format::Json => emit_json(
            out,
            &NormalizeReport {
                blue: w.blue().to_vec(),
                red: w.red().to_vec(),
                degree: (k, l),
                length: w.len(),
            },
        ),
        _ => emit(out, &format!("{w} d=({k},{l})")),
    }
}

// ---------------------------------------------------------------------------
// period
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct PeriodReport {
    periodic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<kg2_core::PeriodWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    degenerate: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<kg2_core::AperiodicityCertificate>,
}

pub fn period(theta_path: &Path, max_a: u32, max_b: u32, out: Option<&Path>) -> Result<(), CliError> {
    let theta = load_theta(theta_path)?;
    let report = match find_period(&theta, max_a, max_b, enumeration_cap()?)? {
        Periodicity::Periodic(witness) => PeriodReport {
            periodic: true,
            witness: Some(witness),
            degenerate: None,
            certificate: None,
        },
        Periodicity::PeriodicDegenerate { m, n } => PeriodReport {
            periodic: true,
            witness: None,
            degenerate: Some(format!("m={m}, n={n}: a single generator on one side")),
            certificate: None,
        },
        Periodicity::AperiodicUpTo(certificate) => PeriodReport {
            periodic: false,
            witness: None,
            degenerate: None,
            certificate: Some(certificate),
        },
    };
    emit_json(out, &report)
}

// ---------------------------------------------------------------------------
// rep
// ---------------------------------------------------------------------------

pub fn rep_validate(rep_path: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let rep = load_rep(rep_path)?;
    emit_json(out, &validate(&rep))
}

#[derive(Serialize)]
struct DilationReport<'a> {
    depth: u32,
    vertex_count: usize,
    graph: &'a AtomicGraph,
    distance: Vec<u32>,
    frontier: Vec<String>,
}

fn dilation_report<'a>(d: &'a DilationResult) -> DilationReport<'a> {
    DilationReport {
        depth: d.depth(),
        vertex_count: d.vertex_count(),
        graph: d.graph(),
        distance: (0..d.vertex_count()).map(|v| d.distance(v)).collect(),
        frontier: d
            .frontier()
            .into_iter()
            .map(|v| d.graph().name(v).to_string())
            .collect(),
    }
}

pub fn rep_dilate(
    rep_path: &Path,
    depth: u32,
    format: Format,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let rep = load_rep(rep_path)?;
    let d = dilate(&rep, depth)?;
    match format {
        Format::Dot => emit(out, export_dot(d.graph()).trim_end()),
        _ => emit_json(out, &dilation_report(&d)),
    }
}

pub fn rep_classify(
    rep_path: &Path,
    depth: u32,
    bound: usize,
    out: Option<&Path>,
) -> Result<(), CliError> {
    require_positive_bound(bound)?;
    let rep = load_rep(rep_path)?;
    let d = dilate(&rep, depth)?;
    let class = classify(&d, bound).map_err(|e| CliError::parse(e.to_string()))?;
    emit_json(out, &class)
}

#[derive(Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
enum WanderVerdict {
    Found { certificate: kg2_core::wandering::WanderingCertificate },
    NoneByPeriodicity { witness: kg2_core::PeriodWitness, verified: bool },
    Inconclusive { message: String },
}

pub fn rep_wander(
    rep_path: &Path,
    depth: u32,
    bound: usize,
    out: Option<&Path>,
) -> Result<(), CliError> {
    require_positive_bound(bound)?;
    let rep = load_rep(rep_path)?;
    let d = dilate(&rep, depth)?;
    let class = classify(&d, bound).map_err(|e| CliError::parse(e.to_string()))?;

    let mut lines = Vec::new();
    for v in 0..d.vertex_count() {
        if d.is_frontier(v) {
            continue;
        }
        let room = (d.depth() - d.distance(v)) as usize;
        let report = kg2_core::check_conditions(&d, v, bound.min(room))?;
        lines.push(
            serde_json::to_string(&report)
                .map_err(|e| CliError::parse(format!("serialization: {e}")))?,
        );
    }

    let verdict = match kg2_core::find_wandering(&d, &class, bound) {
        Ok(WanderingSearch::Found { certificate }) => WanderVerdict::Found { certificate },
        Ok(WanderingSearch::NoneByPeriodicity { witness, verified }) => {
            WanderVerdict::NoneByPeriodicity { witness, verified }
        }
        Err(kg2_core::wandering::WanderingError::Inconclusive(message)) => {
            WanderVerdict::Inconclusive { message }
        }
        Err(e) => return Err(e.into()),
    };
    lines.push(
        serde_json::to_string(&verdict)
            .map_err(|e| CliError::parse(format!("serialization: {e}")))?,
    );
    emit(out, &lines.join("\n"))
}

// ---------------------------------------------------------------------------
// fock
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct VerifyReport {
    checks: Vec<CheckReport>,
    pass: bool,
}

fn finish_checks(checks: Vec<CheckReport>, out: Option<&Path>) -> Result<(), CliError> {
    let pass = checks.iter().all(|c| c.pass);
    let report = VerifyReport { checks, pass };
    emit_json(out, &report)?;
    if !pass {
        return Err(CliError::new(
            EXIT_RESIDUAL,
            "residual_failure",
            "one or more residuals exceeded tolerance (report printed above)",
        ));
    }
    Ok(())
}

pub fn fock_verify(
    theta_path: &Path,
    trunc: u32,
    tol: f64,
    dump: Option<&Path>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let theta = load_theta(theta_path)?;
    if trunc < 1 {
        return Err(CliError::parse("the truncation length must be at least 1"));
    }
    if tol <= 0.0 {
        return Err(CliError::parse("the tolerance must be positive"));
    }
    let fock = kg2_core::build_left_regular(&theta, trunc, enumeration_cap()?)?;
    if let Some(dir) = dump {
        use kg2_core::RepModel;
        fs::create_dir_all(dir)?;
        for (k, m) in fock.blue().iter().enumerate() {
            fs::write(dir.join(format!("E{}.txt", k + 1)), m.to_coordinate_text())?;
        }
        for (k, m) in fock.red().iter().enumerate() {
            fs::write(dir.join(format!("F{}.txt", k + 1)), m.to_coordinate_text())?;
        }
    }
    let checks = vec![
        CheckReport::new(
            "cuntz_interior",
            kg2_core::verify_cuntz_interior(&fock),
            trunc as usize,
            tol,
        ),
        CheckReport::new(
            "commutation_interior",
            kg2_core::verify_commutation_numeric(&fock),
            trunc as usize,
            tol,
        ),
    ];
    finish_checks(checks, out)
}

pub fn fock_example33(n: u32, trunc: u32, out: Option<&Path>) -> Result<(), CliError> {
    if n < 2 || trunc < 2 {
        return Err(CliError::parse("the walk needs --n >= 2 and --L >= 2"));
    }
    let report: Example33Report = kg2_core::example_3_3_check(n, trunc);
    let pass = report.pass;
    emit_json(out, &report)?;
    if !pass {
        return Err(CliError::new(
            EXIT_RESIDUAL,
            "residual_failure",
            "the walk did not return to the vacuum exactly",
        ));
    }
    Ok(())
}

pub fn fock_structure(
    rep_path: &Path,
    depth: u32,
    bound: usize,
    tol: f64,
    core: Option<&str>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    if tol <= 0.0 {
        return Err(CliError::parse("the tolerance must be positive"));
    }
    require_positive_bound(bound)?;
    let rep = load_rep(rep_path)?;
    let d = dilate(&rep, depth)?;
    let m = matrix_rep(&d);
    let check: StructureCheck = match core {
        None => kg2_core::structure_check(&m, bound, tol),
        Some(csv) => {
            let mut mask = vec![false; m.names().len()];
            for name in csv.split(',') {
                let pos = m
                    .names()
                    .iter()
                    .position(|n| n == name.trim())
                    .ok_or_else(|| CliError::parse(format!("unknown core vertex {name:?}")))?;
                mask[pos] = true;
            }
            kg2_core::structure_check_with_core(&m, &mask, bound, tol)
        }
    };
    let pass = check.pass;
    emit_json(out, &check)?;
    if !pass {
        return Err(CliError::new(
            EXIT_RESIDUAL,
            "residual_failure",
            "structure residuals exceeded tolerance (report printed above)",
        ));
    }
    Ok(())
}
