//! Command implementations behind the `sheafilt` binary.
//!
//! Exit codes are a stable contract: 0 success, 1 verification failure or
//! tolerance breach, 2 parse error, 3 shape or precondition error.

pub mod formats;

use std::fs;
use std::path::Path;

use crate::engine::{self, Signal};
use crate::error::{Error, Result};
use crate::filters::FilterCoefficients;
use crate::sheaf::{self, SheafDiagram};
use crate::simplicial::LineComplex;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SHAPE: i32 = 3;

/// Which reference implementation `compare` runs against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CompareTarget {
    /// Direct form I difference-equation oracle.
    Oracle,
    /// Canonical controllability state-space iteration (order >= 1 only).
    Statespace,
    /// Both of the above.
    Both,
}

/// Maps an error to the exit-code contract.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::Io { .. } => EXIT_PARSE,
        _ => EXIT_SHAPE,
    }
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path.display().to_string(), e))
}

fn load_filter(path: &Path) -> Result<(FilterCoefficients, SheafDiagram)> {
    let text = read_file(path)?;
    let coeffs = formats::parse_coefficients(&path.display().to_string(), &text)?;
    let diagram = coeffs.polezero_maps();
    Ok((coeffs, diagram))
}

fn load_signal(path: &Path) -> Result<Signal> {
    let text = read_file(path)?;
    formats::parse_signal(&path.display().to_string(), &text)
}

fn report_err(err: &Error) -> i32 {
    eprintln!("error: {err}");
    exit_code_for(err)
}

/// Runs a filter over a signal file, writing the output signal and
/// optionally the traced section. `tol` is the self-check tolerance for the
/// produced section (engine sections are exact, so the default is 0).
pub fn cmd_run(
    filter_path: &Path,
    input_path: &Path,
    output_path: &Path,
    init_path: Option<&Path>,
    emit_section: Option<&Path>,
    tol: f64,
) -> i32 {
    match run_inner(filter_path, input_path, output_path, init_path, emit_section, tol) {
        Ok(code) => code,
        Err(e) => report_err(&e),
    }
}

fn run_inner(
    filter_path: &Path,
    input_path: &Path,
    output_path: &Path,
    init_path: Option<&Path>,
    emit_section: Option<&Path>,
    tol: f64,
) -> Result<i32> {
    let (_, diagram) = load_filter(filter_path)?;
    let input = load_signal(input_path)?;
    let init = match init_path {
        Some(p) => Some(load_signal(p)?.into_samples()),
        None => None,
    };
    let result = engine::run_filter(&diagram, &input, init.as_deref())?;
    write_file(output_path, &formats::write_signal(&result.output))?;
    if let Some(section_path) = emit_section {
        write_file(
            section_path,
            &formats::write_section(result.diagram_order, &result.section),
        )?;
    }
    if !input.is_empty() {
        let complex = LineComplex::new(input.len(), None)?;
        let report = sheaf::verify_section(&complex, &diagram, &result.section, tol)?;
        if !report.is_consistent() {
            print_violations(&report);
            return Ok(EXIT_VERIFICATION);
        }
    }
    Ok(EXIT_OK)
}

/// Writes the impulse response of the filter to a signal file.
pub fn cmd_impulse(filter_path: &Path, length: usize, output_path: &Path) -> i32 {
    let inner = || -> Result<i32> {
        let (_, diagram) = load_filter(filter_path)?;
        let response = engine::impulse_response(&diagram, length)?;
        write_file(output_path, &formats::write_signal(&response))?;
        Ok(EXIT_OK)
    };
    inner().unwrap_or_else(|e| report_err(&e))
}

/// Verifies a section file against the filter's gluing conditions.
pub fn cmd_verify(filter_path: &Path, section_path: &Path, tol: f64) -> i32 {
    let inner = || -> Result<i32> {
        let (coeffs, diagram) = load_filter(filter_path)?;
        let text = read_file(section_path)?;
        let (order, section) =
            formats::parse_section(&section_path.display().to_string(), &text)?;
        if order != coeffs.order() {
            return Err(Error::shape(format!(
                "section is for order {order}, filter has order {}",
                coeffs.order()
            )));
        }
        if section.vertex_count() == 0 {
            println!("consistent");
            return Ok(EXIT_OK);
        }
        let complex = LineComplex::new(section.vertex_count(), None)?;
        let report = sheaf::verify_section(&complex, &diagram, &section, tol)?;
        if report.is_consistent() {
            println!("consistent");
            Ok(EXIT_OK)
        } else {
            print_violations(&report);
            Ok(EXIT_VERIFICATION)
        }
    };
    inner().unwrap_or_else(|e| report_err(&e))
}

fn print_violations(report: &sheaf::ViolationReport) {
    for v in report.violations() {
        println!(
            "violation: edge {} ({} gluing) max residual {:e}",
            v.edge, v.side, v.max_abs_residual
        );
    }
}

/// Runs the sheaf path and the requested classical reference(s), printing
/// the deviations; exits 0 iff every comparison is within tolerance.
pub fn cmd_compare(
    filter_path: &Path,
    input_path: &Path,
    against: CompareTarget,
    rel_tol: f64,
    abs_tol: f64,
) -> i32 {
    let inner = || -> Result<i32> {
        let (coeffs, diagram) = load_filter(filter_path)?;
        let input = load_signal(input_path)?;
        let sheaf_out = engine::run_filter(&diagram, &input, None)?.output;
        let mut all_within = true;

        if matches!(against, CompareTarget::Oracle | CompareTarget::Both) {
            let oracle_out = engine::direct_form_oracle(&coeffs, &input)?;
            let report = engine::compare(&sheaf_out, &oracle_out, rel_tol, abs_tol)?;
            print_deviation("oracle", &report);
            all_within &= report.within_tolerance;
        }
        if matches!(against, CompareTarget::Statespace | CompareTarget::Both) {
            let model = coeffs.state_space()?;
            let ss_out = engine::run_state_space(&model, &input)?;
            let report = engine::compare(&sheaf_out, &ss_out, rel_tol, abs_tol)?;
            print_deviation("statespace", &report);
            all_within &= report.within_tolerance;
        }
        Ok(if all_within { EXIT_OK } else { EXIT_VERIFICATION })
    };
    inner().unwrap_or_else(|e| report_err(&e))
}

fn print_deviation(name: &str, report: &engine::DeviationReport) {
    println!(
        "{name}: max_abs_deviation {:e} max_rel_deviation {:e} -> {}",
        report.max_abs_deviation,
        report.max_rel_deviation,
        if report.within_tolerance { "PASS" } else { "FAIL" }
    );
}

/// Prints the filter order, stalk dimensions and the four diagram maps.
pub fn cmd_info(filter_path: &Path) -> i32 {
    let inner = || -> Result<i32> {
        let (coeffs, diagram) = load_filter(filter_path)?;
        println!("order: {}", coeffs.order());
        println!("state_dim: {}", diagram.state_dim());
        println!("consistency_dim: {}", diagram.consistency_dim());
        println!("input_dim: {}", diagram.input_dim());
        println!("output_dim: {}", diagram.output_dim());
        for (name, map) in [
            ("s", diagram.map_s()),
            ("r", diagram.map_r()),
            ("i", diagram.map_i()),
            ("o", diagram.map_o()),
        ] {
            println!("map {name} ({}x{}):", map.rows(), map.cols());
            for r in 0..map.rows() {
                let row = map
                    .row(r)
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                println!("  {row}");
            }
        }
        Ok(EXIT_OK)
    };
    inner().unwrap_or_else(|e| report_err(&e))
}
