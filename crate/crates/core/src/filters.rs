//! Translation of classical filter coefficients into sheaf diagrams and
//! state-space models.
//!
//! Sign convention: `a` holds the feedback coefficients a1..aN of
//!
//! ```text
//! y[t] = b0*x[t] + sum_i b_i*x[t-i] - sum_j a_j*y[t-j]
//! ```
//!
//! i.e. the feedback contribution is `-a_j * y[t-j]`. This follows the
//! recurrence form of the filter equation; users coming from the usual DSP
//! "denominator" convention pass the same numbers (1 + a1 z^-1 + ... is the
//! denominator).
//!
//! The realized diagrams all share one state layout (the split direct
//! form II): the state over vertex `t` is `(w[t-N], ..., w[t-1], x[t])`
//! where `w` is the internal (post-feedback) sequence and `x[t]` the raw
//! input, kept as the last component so that every map stays strictly
//! linear — the homogeneous-coordinate device, realized without an extra
//! dimension.

use crate::error::{Error, Result};
use crate::sheaf::{LinearMap, SheafDiagram};

/// Feedforward weights b0..bN and feedback weights a1..aN, zero-padded to a
/// common order `N = max(len(b) - 1, len(a))`.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterCoefficients {
    b: Vec<f64>, // length order + 1
    a: Vec<f64>, // length order
    order: usize,
}

impl FilterCoefficients {
    /// Builds coefficients from `b = b0..bN` and the past-only feedback
    /// list `a = a1..aN` (no leading a0). The shorter list is zero-padded.
    pub fn new(b: &[f64], a: &[f64]) -> Result<Self> {
        Self::normalized(b, a, false)
    }

    /// Like [`FilterCoefficients::new`], but `a` carries a leading a0 by
    /// which every coefficient is divided before a0 is dropped.
    pub fn with_leading_a0(b: &[f64], a: &[f64]) -> Result<Self> {
        Self::normalized(b, a, true)
    }

    fn normalized(b_raw: &[f64], a_raw: &[f64], a0_present: bool) -> Result<Self> {
        if b_raw.is_empty() && a_raw.is_empty() {
            return Err(Error::EmptyFilter);
        }
        for (index, x) in b_raw.iter().enumerate() {
            if !x.is_finite() {
                return Err(Error::InvalidCoefficient { which: 'b', index });
            }
        }
        for (index, x) in a_raw.iter().enumerate() {
            if !x.is_finite() {
                return Err(Error::InvalidCoefficient { which: 'a', index });
            }
        }
        let (scale, a_past) = if a0_present && !a_raw.is_empty() {
            if a_raw[0] == 0.0 {
                return Err(Error::DegenerateFilter);
            }
            (a_raw[0], &a_raw[1..])
        } else {
            (1.0, a_raw)
        };
        let order = b_raw.len().saturating_sub(1).max(a_past.len());
        let mut b: Vec<f64> = b_raw.iter().map(|x| x / scale).collect();
        b.resize(order + 1, 0.0);
        let mut a: Vec<f64> = a_past.iter().map(|x| x / scale).collect();
        a.resize(order, 0.0);
        // Division by a0 can overflow to infinity for subnormal a0.
        if let Some(index) = b.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidCoefficient { which: 'b', index });
        }
        if let Some(index) = a.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidCoefficient { which: 'a', index });
        }
        Ok(Self { b, a, order })
    }

    /// Filter order N.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Feedforward weights b0..bN (length N + 1).
    pub fn b(&self) -> &[f64] {
        &self.b
    }

    /// Feedback weights a1..aN (length N).
    pub fn a(&self) -> &[f64] {
        &self.a
    }

    /// Dimension of the state stalk: N + 1.
    pub fn state_dim(&self) -> usize {
        self.order + 1
    }

    /// True iff every feedback coefficient is zero.
    pub fn is_fir(&self) -> bool {
        self.a.iter().all(|&x| x == 0.0)
    }

    /// True iff b = (1, 0, ..., 0) and the order is at least 1.
    pub fn is_allpole(&self) -> bool {
        self.order >= 1 && self.b[0] == 1.0 && self.b[1..].iter().all(|&x| x == 0.0)
    }

    /// The diagram of a pure feedforward filter: `s` is the plain shift
    /// matrix, `r` drops the input slot, `i` extracts it, and `o` applies
    /// the taps `(bN, ..., b1, b0)`.
    pub fn fir_maps(&self) -> Result<SheafDiagram> {
        if !self.is_fir() {
            return Err(Error::NotFir);
        }
        let n = self.order;
        let mut o_row = Vec::with_capacity(n + 1);
        for m in 0..n {
            o_row.push(self.b[n - m]);
        }
        o_row.push(self.b[0]);
        SheafDiagram::new(
            shift_matrix(n),
            drop_last(n),
            take_last(n),
            LinearMap::new(1, n + 1, o_row)?,
        )
    }

    /// The diagram of a pure feedback filter (b = unit impulse): the
    /// transition map folds the feedback sum into the shifted-in component,
    /// and the output is that same component, `w[t] = x[t] - sum_j a_j
    /// w[t-j]`.
    ///
    /// With all `a_j = 0` the transition map degenerates to the FIR shift
    /// matrix.
    pub fn allpole_maps(&self) -> Result<SheafDiagram> {
        if !self.is_allpole() {
            return Err(Error::NotAllPole);
        }
        let n = self.order;
        SheafDiagram::new(
            transition_map(&self.a),
            drop_last(n),
            take_last(n),
            LinearMap::new(1, n + 1, feedback_row(&self.a))?,
        )
    }

    /// The diagram of the general pole-zero filter in direct form II: the
    /// all-pole transition map combined with the feedforward taps applied
    /// to the shared internal state.
    ///
    /// The output row works out to `(b_{N-m} - b0*a_{N-m})` on the memory
    /// components and `b0` on the input slot, so that `o(state_t) =
    /// b0*w[t] + sum_i b_i*w[t-i]` with `w[t]` expanded through the
    /// feedback sum. Setting `a = 0` recovers [`fir_maps`], setting
    /// `b = (1, 0, ...)` recovers [`allpole_maps`], entry for entry.
    ///
    /// [`fir_maps`]: FilterCoefficients::fir_maps
    /// [`allpole_maps`]: FilterCoefficients::allpole_maps
    pub fn polezero_maps(&self) -> SheafDiagram {
        let n = self.order;
        let d = SheafDiagram::new(
            transition_map(&self.a),
            drop_last(n),
            take_last(n),
            LinearMap::new(1, n + 1, output_row(&self.b, &self.a))
                .expect("output row has state_dim entries"),
        );
        d.expect("construction yields consistent shapes")
    }

    /// The canonical controllability realization: `A` has superdiagonal
    /// ones and `(-aN, ..., -a1)` in the last row, `B = (0, ..., 0, 1)^T`,
    /// `C_k = b_{N-k+1} - b0*a_{N-k+1}`, `D = (b0)`.
    ///
    /// The memory half of the sheaf state update agrees with the action of
    /// `A` (plus `B` injecting the input); `C` and `D` reproduce the output
    /// row of [`polezero_maps`](FilterCoefficients::polezero_maps).
    pub fn state_space(&self) -> Result<StateSpaceModel> {
        let n = self.order;
        if n == 0 {
            return Err(Error::NoState);
        }
        let mut a = LinearMap::zeros(n, n).entries().to_vec();
        for k in 0..n - 1 {
            a[k * n + k + 1] = 1.0;
        }
        let fb = feedback_row(&self.a);
        a[(n - 1) * n..n * n].copy_from_slice(&fb[..n]);

        let mut b_col = vec![0.0; n];
        b_col[n - 1] = 1.0;

        let out = output_row(&self.b, &self.a);
        let c_row = out[..n].to_vec();
        let d = vec![out[n]];

        StateSpaceModel::new(
            LinearMap::new(n, n, a)?,
            LinearMap::new(n, 1, b_col)?,
            LinearMap::new(1, n, c_row)?,
            LinearMap::new(1, 1, d)?,
        )
    }
}

/// The N x (N+1) shift matrix: drops the oldest component and keeps the
/// rest in order.
fn shift_matrix(n: usize) -> LinearMap {
    let mut m = LinearMap::zeros(n, n + 1).entries().to_vec();
    for k in 0..n {
        m[k * (n + 1) + k + 1] = 1.0;
    }
    LinearMap::new(n, n + 1, m).expect("shift matrix entries")
}

/// The N x (N+1) projection onto the memory components (drops the input
/// slot).
fn drop_last(n: usize) -> LinearMap {
    let mut m = LinearMap::zeros(n, n + 1).entries().to_vec();
    for k in 0..n {
        m[k * (n + 1) + k] = 1.0;
    }
    LinearMap::new(n, n + 1, m).expect("projection entries")
}

/// The 1 x (N+1) extraction of the input slot.
fn take_last(n: usize) -> LinearMap {
    let mut row = vec![0.0; n + 1];
    row[n] = 1.0;
    LinearMap::new(1, n + 1, row).expect("extraction entries")
}

/// `(-aN, ..., -a1, 1)`: the row computing the next internal value
/// `w[t] = x[t] - sum_j a_j * w[t-j]` from `(w[t-N..t-1], x[t])`.
fn feedback_row(a: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut row = Vec::with_capacity(n + 1);
    for m in 0..n {
        row.push(-a[n - 1 - m]);
    }
    row.push(1.0);
    row
}

/// The N x (N+1) transition map: shift rows on top, the feedback row last.
fn transition_map(a: &[f64]) -> LinearMap {
    let n = a.len();
    if n == 0 {
        return shift_matrix(0);
    }
    let mut m = LinearMap::zeros(n, n + 1).entries().to_vec();
    for k in 0..n - 1 {
        m[k * (n + 1) + k + 1] = 1.0;
    }
    m[(n - 1) * (n + 1)..n * (n + 1)].copy_from_slice(&feedback_row(a));
    LinearMap::new(n, n + 1, m).expect("transition entries")
}

/// `(b_{N-m} - b0*a_{N-m})` on the memory components, `b0` on the input
/// slot: the direct form II output on `(w[t-N..t-1], x[t])`.
fn output_row(b: &[f64], a: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut row = Vec::with_capacity(n + 1);
    for m in 0..n {
        row.push(b[n - m] - b[0] * a[n - 1 - m]);
    }
    row.push(b[0]);
    row
}

/// Matrices A, B, C, D of a discrete single-input single-output state-space
/// model `x[t+1] = A x[t] + B u[t]`, `y[t] = C x[t] + D u[t]`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSpaceModel {
    a: LinearMap,
    b: LinearMap,
    c: LinearMap,
    d: LinearMap,
}

impl StateSpaceModel {
    pub fn new(a: LinearMap, b: LinearMap, c: LinearMap, d: LinearMap) -> Result<Self> {
        let n = a.rows();
        if a.cols() != n {
            return Err(Error::shape("A must be square".to_string()));
        }
        if b.rows() != n || b.cols() != 1 {
            return Err(Error::shape(format!("B must be {n}x1")));
        }
        if c.rows() != 1 || c.cols() != n {
            return Err(Error::shape(format!("C must be 1x{n}")));
        }
        if d.rows() != 1 || d.cols() != 1 {
            return Err(Error::shape("D must be 1x1".to_string()));
        }
        Ok(Self { a, b, c, d })
    }

    /// Number of states N.
    pub fn order(&self) -> usize {
        self.a.rows()
    }

    pub fn a(&self) -> &LinearMap {
        &self.a
    }

    pub fn b(&self) -> &LinearMap {
        &self.b
    }

    pub fn c(&self) -> &LinearMap {
        &self.c
    }

    pub fn d(&self) -> &LinearMap {
        &self.d
    }
}
