//! Vector-space stalks and linear consistency maps over a line complex.
//!
//! A filter diagram attaches to every vertex a state stalk of dimension
//! `N + 1`, to every edge a consistency stalk of dimension `N`, and carries
//! four linear maps: `s` (state to right edge), `r` (state to left edge),
//! `i` (state to input stalk) and `o` (state to output stalk). The input
//! and output stalks over vertices are one-dimensional; over edges they are
//! the 0 sheaf and are kept implicit. A candidate section is a global
//! section exactly when every edge glues: `s(state_t) = edge_t =
//! r(state_{t+1})`.

use crate::error::{Error, Result};
use crate::simplicial::LineComplex;

/// Default absolute tolerance (on the max-norm residual) when verifying
/// externally supplied sections. Engine-produced sections are exact and are
/// checked at 0.
pub const DEFAULT_SECTION_TOL: f64 = 1e-9;

/// A dense real matrix acting on column vectors. Rows or columns may be
/// zero (the 0 sheaf is a legal source or target).
///
/// Application sums in increasing column order, so results are fully
/// deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    rows: usize,
    cols: usize,
    entries: Vec<f64>, // row-major
}

impl LinearMap {
    /// Wraps `entries` (row-major, length `rows * cols`) as a map.
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::shape(format!(
                "a {rows}x{cols} map needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    /// The all-zero map of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![0.0; rows * cols],
        }
    }

    /// The identity on an `n`-dimensional stalk.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.entries[k * n + k] = 1.0;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        assert!(row < self.rows && col < self.cols, "entry out of range");
        self.entries[row * self.cols + col]
    }

    /// One row as a slice.
    pub fn row(&self, row: usize) -> &[f64] {
        assert!(row < self.rows, "row out of range");
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    /// Matrix-vector product; summation runs in increasing column order.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.cols {
            return Err(Error::shape(format!(
                "map takes vectors of length {}, got {}",
                self.cols,
                v.len()
            )));
        }
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let row = &self.entries[r * self.cols..(r + 1) * self.cols];
            let mut acc = 0.0;
            for (coeff, x) in row.iter().zip(v) {
                acc += coeff * x;
            }
            out.push(acc);
        }
        Ok(out)
    }
}

/// The four maps of a translation-invariant filter diagram, shared by every
/// vertex and edge of whatever complex it is run over.
///
/// State stalks have dimension `N + 1` and consistency stalks dimension
/// `N`: during a temporal update one component of the state shifts out of
/// range and is not needed for consistency with the next state.
#[derive(Debug, Clone, PartialEq)]
pub struct SheafDiagram {
    map_s: LinearMap,
    map_r: LinearMap,
    map_i: LinearMap,
    map_o: LinearMap,
}

impl SheafDiagram {
    /// Assembles a diagram, checking that all four maps act on the same
    /// state stalk, that `s` and `r` share the consistency stalk as target,
    /// that `i` and `o` target one-dimensional stalks, and that the
    /// consistency stalk is one dimension short of the state stalk.
    pub fn new(map_s: LinearMap, map_r: LinearMap, map_i: LinearMap, map_o: LinearMap) -> Result<Self> {
        let state_dim = map_s.cols();
        if map_s.rows() + 1 != state_dim {
            return Err(Error::shape(format!(
                "map s must target a stalk one dimension below the state ({}x{} given)",
                map_s.rows(),
                state_dim
            )));
        }
        if map_r.rows() != map_s.rows() || map_r.cols() != state_dim {
            return Err(Error::shape("maps s and r must have identical shapes".to_string()));
        }
        for (name, m) in [("i", &map_i), ("o", &map_o)] {
            if m.rows() != 1 || m.cols() != state_dim {
                return Err(Error::shape(format!(
                    "map {name} must be 1x{state_dim}, got {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Self {
            map_s,
            map_r,
            map_i,
            map_o,
        })
    }

    /// Dimension of the state stalk over each vertex (`N + 1`).
    pub fn state_dim(&self) -> usize {
        self.map_s.cols()
    }

    /// Dimension of the consistency stalk over each edge (`N`).
    pub fn consistency_dim(&self) -> usize {
        self.map_s.rows()
    }

    /// Dimension of the input stalk over each vertex.
    pub fn input_dim(&self) -> usize {
        1
    }

    /// Dimension of the output stalk over each vertex.
    pub fn output_dim(&self) -> usize {
        1
    }

    /// Filter order `N`.
    pub fn order(&self) -> usize {
        self.consistency_dim()
    }

    pub fn map_s(&self) -> &LinearMap {
        &self.map_s
    }

    pub fn map_r(&self) -> &LinearMap {
        &self.map_r
    }

    pub fn map_i(&self) -> &LinearMap {
        &self.map_i
    }

    pub fn map_o(&self) -> &LinearMap {
        &self.map_o
    }
}

/// A candidate global section: one state vector per vertex and one
/// consistency vector per edge.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSection {
    vertex_states: Vec<Vec<f64>>,
    edge_values: Vec<Vec<f64>>,
}

impl StateSection {
    /// Bundles per-vertex and per-edge data. The edge list must be one
    /// shorter than the vertex list (both may be empty for the empty run).
    pub fn new(vertex_states: Vec<Vec<f64>>, edge_values: Vec<Vec<f64>>) -> Result<Self> {
        let ok = if vertex_states.is_empty() {
            edge_values.is_empty()
        } else {
            edge_values.len() == vertex_states.len() - 1
        };
        if !ok {
            return Err(Error::shape(format!(
                "{} vertex states need {} edge values, got {}",
                vertex_states.len(),
                vertex_states.len().saturating_sub(1),
                edge_values.len()
            )));
        }
        Ok(Self {
            vertex_states,
            edge_values,
        })
    }

    pub fn vertex_states(&self) -> &[Vec<f64>] {
        &self.vertex_states
    }

    pub fn edge_values(&self) -> &[Vec<f64>] {
        &self.edge_values
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_states.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_values.len()
    }

    /// Mutable access, for perturbation-style experiments.
    pub fn vertex_states_mut(&mut self) -> &mut [Vec<f64>] {
        &mut self.vertex_states
    }
}

/// Which side of an edge failed to glue.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GluingSide {
    /// `s(state_t)` disagreed with the edge value (left vertex).
    Left,
    /// `r(state_{t+1})` disagreed with the edge value (right vertex).
    Right,
}

impl std::fmt::Display for GluingSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GluingSide::Left => write!(f, "left"),
            GluingSide::Right => write!(f, "right"),
        }
    }
}

/// One failed gluing equation.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    /// Edge index along the chain.
    pub edge: usize,
    pub side: GluingSide,
    /// Map output minus edge value, componentwise.
    pub residual: Vec<f64>,
    /// Max-norm of the residual.
    pub max_abs_residual: f64,
}

/// All gluing failures of a candidate section; empty iff the section is a
/// global section within the tolerance used.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ViolationReport {
    violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_section_shapes(c: &LineComplex, d: &SheafDiagram, sec: &StateSection) -> Result<()> {
    if sec.vertex_count() != c.vertex_count() || sec.edge_count() != c.edge_count() {
        return Err(Error::shape(format!(
            "section has {} vertices / {} edges, complex has {} / {}",
            sec.vertex_count(),
            sec.edge_count(),
            c.vertex_count(),
            c.edge_count()
        )));
    }
    for (i, state) in sec.vertex_states().iter().enumerate() {
        if state.len() != d.state_dim() {
            return Err(Error::shape(format!(
                "vertex {i} state has length {}, expected {}",
                state.len(),
                d.state_dim()
            )));
        }
    }
    for (t, value) in sec.edge_values().iter().enumerate() {
        if value.len() != d.consistency_dim() {
            return Err(Error::shape(format!(
                "edge {t} value has length {}, expected {}",
                value.len(),
                d.consistency_dim()
            )));
        }
    }
    Ok(())
}

/// Checks every gluing equation of `sec` over `c` and reports each side
/// whose max-norm residual exceeds `tol`.
///
/// For edge `t` between vertices `t` and `t + 1` the two equations are
/// `s(state_t) = edge_t` (left) and `r(state_{t+1}) = edge_t` (right). An
/// empty report means `sec` is a global section within `tol`; a one-vertex
/// complex glues vacuously.
pub fn verify_section(
    c: &LineComplex,
    d: &SheafDiagram,
    sec: &StateSection,
    tol: f64,
) -> Result<ViolationReport> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::shape("tolerance must be nonnegative".to_string()));
    }
    check_section_shapes(c, d, sec)?;
    let mut violations = Vec::new();
    for t in 0..c.edge_count() {
        let edge_value = &sec.edge_values()[t];
        let left = d.map_s().apply(&sec.vertex_states()[t])?;
        push_if_violated(&mut violations, t, GluingSide::Left, &left, edge_value, tol);
        let right = d.map_r().apply(&sec.vertex_states()[t + 1])?;
        push_if_violated(&mut violations, t, GluingSide::Right, &right, edge_value, tol);
    }
    Ok(ViolationReport { violations })
}

fn push_if_violated(
    violations: &mut Vec<Violation>,
    edge: usize,
    side: GluingSide,
    mapped: &[f64],
    edge_value: &[f64],
    tol: f64,
) {
    let residual: Vec<f64> = mapped.iter().zip(edge_value).map(|(m, e)| m - e).collect();
    let max_abs = residual.iter().fold(0.0_f64, |acc, r| acc.max(r.abs()));
    if max_abs > tol || max_abs.is_nan() {
        violations.push(Violation {
            edge,
            side,
            residual,
            max_abs_residual: max_abs,
        });
    }
}

/// Completes per-vertex states to a full section by setting every edge
/// value to `s(state_t)`, the canonical choice that satisfies the left
/// gluing exactly.
pub fn section_from_states(
    c: &LineComplex,
    d: &SheafDiagram,
    vertex_states: Vec<Vec<f64>>,
) -> Result<StateSection> {
    if vertex_states.len() != c.vertex_count() {
        return Err(Error::shape(format!(
            "{} states for a complex with {} vertices",
            vertex_states.len(),
            c.vertex_count()
        )));
    }
    for (i, state) in vertex_states.iter().enumerate() {
        if state.len() != d.state_dim() {
            return Err(Error::shape(format!(
                "vertex {i} state has length {}, expected {}",
                state.len(),
                d.state_dim()
            )));
        }
    }
    let mut edge_values = Vec::with_capacity(c.edge_count());
    for state in vertex_states.iter().take(c.edge_count()) {
        edge_values.push(d.map_s().apply(state)?);
    }
    StateSection::new(vertex_states, edge_values)
}
