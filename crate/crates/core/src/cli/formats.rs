//! Plain-text file formats used by the command-line surface.
//!
//! All three formats are line oriented and human inspectable:
//!
//! * coefficient file — `b: <floats>` line, optional `a: <floats>` line
//!   (a1..aN, no leading a0);
//! * signal CSV — one float per line, optional single `sample` header;
//! * section file — `order:`/`vertices:`/`edges:` headers, then one
//!   `v <i>: <floats>` line per vertex and one `e <i>: <floats>` line per
//!   edge.
//!
//! Floats are written with 17 significant digits, which round-trips every
//! finite f64 bit-exactly.

use crate::engine::Signal;
use crate::error::{Error, Result};
use crate::filters::FilterCoefficients;
use crate::sheaf::StateSection;

/// Serializes a float with 17 significant decimal digits.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_float(context: &str, line_no: usize, token: &str) -> Result<f64> {
    let value: f64 = token
        .parse()
        .map_err(|_| Error::parse(context, line_no, format!("not a number: {token:?}")))?;
    if !value.is_finite() {
        return Err(Error::parse(
            context,
            line_no,
            format!("not a finite number: {token:?}"),
        ));
    }
    Ok(value)
}

fn parse_float_list(context: &str, line_no: usize, text: &str) -> Result<Vec<f64>> {
    text.split_whitespace()
        .map(|tok| parse_float(context, line_no, tok))
        .collect()
}

/// Parses a coefficient file. `context` names the source in error messages.
pub fn parse_coefficients(context: &str, text: &str) -> Result<FilterCoefficients> {
    let mut b: Option<Vec<f64>> = None;
    let mut a: Option<Vec<f64>> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("b:") {
            if b.is_some() {
                return Err(Error::parse(context, line_no, "duplicate b line"));
            }
            b = Some(parse_float_list(context, line_no, rest)?);
        } else if let Some(rest) = line.strip_prefix("a:") {
            if a.is_some() {
                return Err(Error::parse(context, line_no, "duplicate a line"));
            }
            a = Some(parse_float_list(context, line_no, rest)?);
        } else {
            return Err(Error::parse(
                context,
                line_no,
                format!("expected a `b:` or `a:` line, got {line:?}"),
            ));
        }
    }
    let b = b.ok_or_else(|| Error::parse(context, 1, "missing b line"))?;
    FilterCoefficients::new(&b, &a.unwrap_or_default())
}

/// Renders a coefficient file.
pub fn write_coefficients(coeffs: &FilterCoefficients) -> String {
    let join = |xs: &[f64]| {
        xs.iter()
            .map(|&x| format_float(x))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut out = format!("b: {}\n", join(coeffs.b()));
    if !coeffs.a().is_empty() {
        out.push_str(&format!("a: {}\n", join(coeffs.a())));
    }
    out
}

/// Parses a signal CSV (one float per line, optional `sample` header).
pub fn parse_signal(context: &str, text: &str) -> Result<Signal> {
    let mut samples = Vec::new();
    let mut first_content_line = true;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if first_content_line && line == "sample" {
            first_content_line = false;
            continue;
        }
        first_content_line = false;
        samples.push(parse_float(context, line_no, line)?);
    }
    Signal::new(samples)
}

/// Renders a signal CSV (no header).
pub fn write_signal(signal: &Signal) -> String {
    let mut out = String::new();
    for &x in signal.samples() {
        out.push_str(&format_float(x));
        out.push('\n');
    }
    out
}

/// Renders a section file for a diagram of the given order.
pub fn write_section(order: usize, section: &StateSection) -> String {
    let mut out = String::new();
    out.push_str(&format!("order: {order}\n"));
    out.push_str(&format!("vertices: {}\n", section.vertex_count()));
    out.push_str(&format!("edges: {}\n", section.edge_count()));
    let join = |xs: &[f64]| {
        xs.iter()
            .map(|&x| format_float(x))
            .collect::<Vec<_>>()
            .join(" ")
    };
    for (i, state) in section.vertex_states().iter().enumerate() {
        out.push_str(&format!("v {i}: {}\n", join(state)));
    }
    for (t, value) in section.edge_values().iter().enumerate() {
        out.push_str(&format!("e {t}: {}\n", join(value)));
    }
    out
}

/// Parses a section file, returning the declared order and the section.
/// Vector lengths are checked against the declared order.
pub fn parse_section(context: &str, text: &str) -> Result<(usize, StateSection)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(idx, raw)| (idx + 1, raw.trim()))
        .filter(|(_, line)| !line.is_empty());

    let mut header = |name: &str| -> Result<usize> {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| Error::parse(context, 0, format!("missing `{name}:` header")))?;
        let rest = line
            .strip_prefix(name)
            .and_then(|r| r.strip_prefix(':'))
            .ok_or_else(|| {
                Error::parse(context, line_no, format!("expected `{name}:` header, got {line:?}"))
            })?;
        rest.trim()
            .parse()
            .map_err(|_| Error::parse(context, line_no, format!("bad `{name}:` value")))
    };

    let order = header("order")?;
    let vertices = header("vertices")?;
    let edges = header("edges")?;
    if vertices == 0 && edges != 0 || vertices > 0 && edges != vertices - 1 {
        return Err(Error::parse(
            context,
            0,
            format!("{vertices} vertices cannot have {edges} edges"),
        ));
    }

    let mut read_vectors = |tag: &str, count: usize, dim: usize| -> Result<Vec<Vec<f64>>> {
        let mut out = Vec::with_capacity(count);
        for expect in 0..count {
            let (line_no, line) = lines.next().ok_or_else(|| {
                Error::parse(context, 0, format!("missing `{tag} {expect}:` line"))
            })?;
            let rest = line
                .strip_prefix(tag)
                .and_then(|r| r.trim_start().strip_prefix(&expect.to_string()))
                .and_then(|r| r.trim_start().strip_prefix(':'))
                .ok_or_else(|| {
                    Error::parse(
                        context,
                        line_no,
                        format!("expected `{tag} {expect}: ...`, got {line:?}"),
                    )
                })?;
            let values = parse_float_list(context, line_no, rest)?;
            if values.len() != dim {
                return Err(Error::parse(
                    context,
                    line_no,
                    format!("expected {dim} values, got {}", values.len()),
                ));
            }
            out.push(values);
        }
        Ok(out)
    };

    let vertex_states = read_vectors("v", vertices, order + 1)?;
    let edge_values = read_vectors("e", edges, order)?;
    if let Some((line_no, line)) = lines.next() {
        return Err(Error::parse(
            context,
            line_no,
            format!("unexpected trailing line {line:?}"),
        ));
    }
    Ok((order, StateSection::new(vertex_states, edge_values)?))
}
