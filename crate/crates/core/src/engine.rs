//! Causal filter execution over line complexes, classical oracles, and run
//! comparison.
//!
//! A run computes the unique global section induced by the input signal and
//! the initial state: the first vertex's memory components are free (the
//! diagram has no left neighbor there) and come from `init_state`;
//! afterwards each state is forced by the right gluing `r(state_t) =
//! s(state_{t-1})` together with the input constraint `i(state_t) =
//! input[t]`. The maps `r` and `i` thus run against their arrow direction
//! in practice: the state is assembled so that applying them recovers the
//! gluing value and the input.

use crate::error::{Error, Result};
use crate::filters::{FilterCoefficients, StateSpaceModel};
use crate::sheaf::{SheafDiagram, StateSection};
use crate::simplicial::LineComplex;

/// A finite real-valued sample sequence; one sample per vertex when bound
/// to a complex.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    samples: Vec<f64>,
}

impl Signal {
    /// Wraps samples, rejecting NaN and infinities.
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        if let Some(idx) = samples.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidSignal(idx));
        }
        Ok(Self { samples })
    }

    /// The unit impulse (1, 0, ..., 0) of the given length.
    pub fn impulse(len: usize) -> Self {
        let mut samples = vec![0.0; len];
        if len > 0 {
            samples[0] = 1.0;
        }
        Self { samples }
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            samples: vec![0.0; len],
        }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    /// True iff both signals hold bit-identical samples (distinguishes
    /// -0.0 from 0.0).
    pub fn bitwise_eq(&self, other: &Signal) -> bool {
        self.samples.len() == other.samples.len()
            && self
                .samples
                .iter()
                .zip(&other.samples)
                .all(|(x, y)| x.to_bits() == y.to_bits())
    }
}

/// Output of a filter run: the output signal, the global section it traces
/// out, and the diagram order (which is a property of the filter alone,
/// never of the signal length).
#[derive(Debug, Clone)]
pub struct RunResult {
    pub output: Signal,
    pub section: StateSection,
    pub diagram_order: usize,
}

/// Runs `d` causally over a fresh line complex with one vertex per input
/// sample. `init_state`, if given, must have length `state_dim`; its memory
/// components seed the first state (the last slot is superseded by
/// `input[0]`). Defaults to zero initial conditions.
///
/// Errors with [`Error::InvalidSignal`] if an output sample overflows to a
/// non-finite value (possible for unstable filters).
pub fn run_filter(d: &SheafDiagram, input: &Signal, init_state: Option<&[f64]>) -> Result<RunResult> {
    if input.is_empty() {
        check_init(d, init_state)?;
        return Ok(RunResult {
            output: Signal::zeros(0),
            section: StateSection::new(Vec::new(), Vec::new())?,
            diagram_order: d.order(),
        });
    }
    let complex = LineComplex::new(input.len(), None)?;
    run_over_complex(d, &complex, input, init_state)
}

/// Runs `d` over an existing complex; `input` must have one sample per
/// vertex. Metric labels on the complex, if any, take no part in the
/// computation.
pub fn run_over_complex(
    d: &SheafDiagram,
    complex: &LineComplex,
    input: &Signal,
    init_state: Option<&[f64]>,
) -> Result<RunResult> {
    if input.len() != complex.vertex_count() {
        return Err(Error::shape(format!(
            "signal of length {} over a complex with {} vertices",
            input.len(),
            complex.vertex_count()
        )));
    }
    let init_mem = check_init(d, init_state)?;
    let len = input.len();
    let samples = input.samples();
    let memory = d.consistency_dim();

    let mut vertex_states: Vec<Vec<f64>> = Vec::with_capacity(len);
    let mut edge_values: Vec<Vec<f64>> = Vec::with_capacity(len.saturating_sub(1));
    let mut output = Vec::with_capacity(len);

    let mut state = Vec::with_capacity(d.state_dim());
    match init_mem {
        Some(mem) => state.extend_from_slice(&mem[..memory]),
        None => state.resize(memory, 0.0),
    }
    state.push(samples[0]);

    for t in 0..len {
        if t > 0 {
            // The right gluing pins the memory components to the previous
            // edge value; the input constraint pins the last slot.
            let mut next = edge_values[t - 1].clone();
            next.push(samples[t]);
            state = next;
        }
        output.push(d.map_o().apply(&state)?[0]);
        if t + 1 < len {
            edge_values.push(d.map_s().apply(&state)?);
        }
        vertex_states.push(state.clone());
    }

    Ok(RunResult {
        output: Signal::new(output)?,
        section: StateSection::new(vertex_states, edge_values)?,
        diagram_order: d.order(),
    })
}

fn check_init<'a>(d: &SheafDiagram, init_state: Option<&'a [f64]>) -> Result<Option<&'a [f64]>> {
    if let Some(init) = init_state {
        if init.len() != d.state_dim() {
            return Err(Error::shape(format!(
                "initial state has length {}, expected {}",
                init.len(),
                d.state_dim()
            )));
        }
    }
    Ok(init_state)
}

/// Evaluates the classical difference equation directly (direct form I,
/// explicit past-input and past-output histories, zero initial history).
///
/// This is the independent oracle for filter runs: it shares no code with
/// the sheaf path. Feedforward terms accumulate in ascending tap order,
/// then feedback terms in ascending lag order.
pub fn direct_form_oracle(coeffs: &FilterCoefficients, input: &Signal) -> Result<Signal> {
    let n = coeffs.order();
    let b = coeffs.b();
    let a = coeffs.a();
    let x = input.samples();
    let mut y = vec![0.0; x.len()];
    for t in 0..x.len() {
        let mut acc = 0.0;
        for (i, bi) in b.iter().enumerate().take(n + 1) {
            if t >= i {
                acc += bi * x[t - i];
            }
        }
        for j in 1..=n {
            if t >= j {
                acc += -a[j - 1] * y[t - j];
            }
        }
        y[t] = acc;
    }
    Signal::new(y)
}

/// Iterates `y[t] = C x[t] + D u[t]`, `x[t+1] = A x[t] + B u[t]` from the
/// zero state (the state updates after the output is read).
pub fn run_state_space(model: &StateSpaceModel, input: &Signal) -> Result<Signal> {
    let n = model.order();
    let b_col = model.b().entries();
    let d_entry = model.d().entries()[0];
    let mut x = vec![0.0; n];
    let mut y = Vec::with_capacity(input.len());
    for &u in input.samples() {
        let cx = model.c().apply(&x)?;
        y.push(cx[0] + d_entry * u);
        let ax = model.a().apply(&x)?;
        for (k, xk) in x.iter_mut().enumerate() {
            *xk = ax[k] + b_col[k] * u;
        }
    }
    Signal::new(y)
}

/// The filter output for a unit impulse of the given length.
pub fn impulse_response(d: &SheafDiagram, length: usize) -> Result<Signal> {
    run_filter(d, &Signal::impulse(length), None).map(|r| r.output)
}

/// Deviation between two equally long signals.
///
/// The relative deviation is peak-normalized: the max-norm of the
/// difference divided by the larger of the two signal peaks (pointwise
/// ratios blow up at zero crossings and would not measure anything useful).
/// `within_tolerance` holds when either tolerance is met.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviationReport {
    pub max_abs_deviation: f64,
    pub max_rel_deviation: f64,
    pub within_tolerance: bool,
}

/// Compares two signals of equal length against absolute and relative
/// tolerances.
pub fn compare(x: &Signal, y: &Signal, rel_tol: f64, abs_tol: f64) -> Result<DeviationReport> {
    if x.len() != y.len() {
        return Err(Error::shape(format!(
            "cannot compare signals of lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    let mut max_abs = 0.0_f64;
    let mut peak = 0.0_f64;
    for (xi, yi) in x.samples().iter().zip(y.samples()) {
        max_abs = max_abs.max((xi - yi).abs());
        peak = peak.max(xi.abs()).max(yi.abs());
    }
    let max_rel = if peak > 0.0 { max_abs / peak } else { 0.0 };
    Ok(DeviationReport {
        max_abs_deviation: max_abs,
        max_rel_deviation: max_rel,
        within_tolerance: max_abs <= abs_tol || max_rel <= rel_tol,
    })
}

/// Runs `d` over two copies of the same chain carrying different metric
/// labels and reports whether the outputs are bit-identical. They always
/// are — labels never enter the computation — which is exactly what this
/// check makes observable.
pub fn metric_invariance_check(
    d: &SheafDiagram,
    input: &Signal,
    labels_a: &[f64],
    labels_b: &[f64],
) -> Result<bool> {
    if input.is_empty() {
        return Ok(true);
    }
    let ca = LineComplex::new(input.len(), Some(labels_a.to_vec()))?;
    let cb = LineComplex::new(input.len(), Some(labels_b.to_vec()))?;
    let ra = run_over_complex(d, &ca, input, None)?;
    let rb = run_over_complex(d, &cb, input, None)?;
    Ok(ra.output.bitwise_eq(&rb.output))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sheaf::verify_section;

    fn coeffs(b: &[f64], a: &[f64]) -> FilterCoefficients {
        FilterCoefficients::new(b, a).unwrap()
    }

    #[test]
    fn identity_filter_passes_signal_through() {
        let d = coeffs(&[1.0], &[]).polezero_maps();
        let input = Signal::new(vec![1.0, 2.0, 3.0]).unwrap();
        let r = run_filter(&d, &input, None).unwrap();
        assert_eq!(r.output.samples(), &[1.0, 2.0, 3.0]);
        assert_eq!(r.diagram_order, 0);
    }

    #[test]
    fn one_pole_impulse_is_geometric() {
        // y[t] = 0.5*y[t-1] + x[t], frozen from the hand recurrence.
        let d = coeffs(&[1.0, 0.0], &[-0.5]).polezero_maps();
        let r = run_filter(&d, &Signal::impulse(4), None).unwrap();
        assert_eq!(r.output.samples(), &[1.0, 0.5, 0.25, 0.125]);
    }

    #[test]
    fn fir_two_tap_impulse() {
        // Direct convolution of (1, 1) with the impulse, frozen by hand.
        let d = coeffs(&[1.0, 1.0], &[]).fir_maps().unwrap();
        let r = run_filter(&d, &Signal::impulse(3), None).unwrap();
        assert_eq!(r.output.samples(), &[1.0, 1.0, 0.0]);
    }

    #[test]
    fn run_sections_glue_exactly() {
        let d = coeffs(&[0.3, -0.4, 0.2], &[-0.6, 0.25]).polezero_maps();
        let input = Signal::new((0..32).map(|k| ((k * 7 % 5) as f64) - 2.0).collect()).unwrap();
        let r = run_filter(&d, &input, None).unwrap();
        let c = LineComplex::new(input.len(), None).unwrap();
        assert!(verify_section(&c, &d, &r.section, 0.0).unwrap().is_consistent());
    }

    #[test]
    fn empty_input_gives_empty_run() {
        let d = coeffs(&[1.0, 0.5], &[]).polezero_maps();
        let r = run_filter(&d, &Signal::zeros(0), None).unwrap();
        assert!(r.output.is_empty());
        assert_eq!(r.section.vertex_count(), 0);
    }

    #[test]
    fn init_state_seeds_memory_components() {
        let d = coeffs(&[1.0, 0.0], &[-0.5]).polezero_maps();
        // Memory w[-1] = 8 with zero input: output decays from the seed.
        let input = Signal::zeros(3);
        let r = run_filter(&d, &input, Some(&[8.0, 123.0])).unwrap();
        // o(state) = 0.5*w[t-1] + x[t]; the 123 in the input slot is
        // superseded by input[0] = 0.
        assert_eq!(r.output.samples(), &[4.0, 2.0, 1.0]);
        assert!(matches!(
            run_filter(&d, &input, Some(&[8.0])),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn oracle_identity_and_convolution() {
        let c = coeffs(&[1.0], &[]);
        let sig = Signal::new(vec![3.0, -1.0, 2.0]).unwrap();
        assert_eq!(direct_form_oracle(&c, &sig).unwrap().samples(), sig.samples());

        // Hand convolution of (0.5, 0.5) with all-ones.
        let c = coeffs(&[0.5, 0.5], &[0.0]);
        let ones = Signal::new(vec![1.0; 4]).unwrap();
        assert_eq!(
            direct_form_oracle(&c, &ones).unwrap().samples(),
            &[0.5, 1.0, 1.0, 1.0]
        );

        // Hand recurrence for the one-pole.
        let c = coeffs(&[1.0, 0.0], &[-0.5]);
        assert_eq!(
            direct_form_oracle(&c, &Signal::impulse(4)).unwrap().samples(),
            &[1.0, 0.5, 0.25, 0.125]
        );
    }

    #[test]
    fn state_space_one_pole_matches_hand_recurrence() {
        let m = coeffs(&[1.0, 0.0], &[-0.5]).state_space().unwrap();
        let y = run_state_space(&m, &Signal::impulse(4)).unwrap();
        assert_eq!(y.samples(), &[1.0, 0.5, 0.25, 0.125]);
    }

    #[test]
    fn state_space_allpole_with_zero_feedback_is_identity() {
        // With a = 0 the all-pole recurrence y[t] = x[t] - sum a_j y[t-j]
        // degenerates to the identity; hand iteration of the update
        // equations gives the impulse back unchanged.
        let c = coeffs(&[1.0, 0.0], &[0.0]);
        let m = c.state_space().unwrap();
        let y = run_state_space(&m, &Signal::impulse(4)).unwrap();
        assert_eq!(y.samples(), &[1.0, 0.0, 0.0, 0.0]);
        // The sheaf path agrees.
        let r = run_filter(&c.allpole_maps().unwrap(), &Signal::impulse(4), None).unwrap();
        assert_eq!(r.output.samples(), &[1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn state_space_zero_input_gives_zero_output() {
        let m = coeffs(&[1.0, 0.0, 0.0], &[-0.9, 0.2]).state_space().unwrap();
        let y = run_state_space(&m, &Signal::zeros(16)).unwrap();
        assert!(y.samples().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn impulse_response_reproduces_fir_taps() {
        let d = coeffs(&[3.0, 2.0, 1.0], &[]).fir_maps().unwrap();
        let h = impulse_response(&d, 5).unwrap();
        assert_eq!(h.samples(), &[3.0, 2.0, 1.0, 0.0, 0.0]);

        let d = coeffs(&[1.0], &[]).fir_maps().unwrap();
        assert_eq!(impulse_response(&d, 3).unwrap().samples(), &[1.0, 0.0, 0.0]);
    }

    #[test]
    fn compare_reports_deviation() {
        let x = Signal::new(vec![1.0]).unwrap();
        let same = compare(&x, &x, 0.0, 0.0).unwrap();
        assert_eq!(same.max_abs_deviation, 0.0);
        assert!(same.within_tolerance);

        let y = Signal::new(vec![1.0 + 1e-12]).unwrap();
        let close = compare(&x, &y, 0.0, 1e-9).unwrap();
        assert!(close.within_tolerance);

        let z = Signal::new(vec![1.1]).unwrap();
        let off = compare(&x, &z, 1e-9, 1e-9).unwrap();
        assert!(!off.within_tolerance);
        assert!((off.max_abs_deviation - 0.1).abs() < 1e-12);

        let w = Signal::new(vec![1.0, 2.0]).unwrap();
        assert!(compare(&x, &w, 0.0, 0.0).is_err());
    }

    #[test]
    fn metric_labels_do_not_change_outputs() {
        let d = coeffs(&[0.2, 0.3], &[-0.7]).polezero_maps();
        let input = Signal::new(vec![1.0, -0.5, 0.25, 2.0]).unwrap();
        let uniform = [0.0, 1.0, 2.0, 3.0];
        let stretched = [0.0, 0.1, 10.0, 1000.0];
        assert!(metric_invariance_check(&d, &input, &uniform, &stretched).unwrap());
        assert!(metric_invariance_check(&d, &input, &uniform, &uniform).unwrap());
        assert!(matches!(
            metric_invariance_check(&d, &input, &uniform, &[3.0, 2.0, 1.0, 0.0]),
            Err(Error::InvalidMetric(_))
        ));
    }

    #[test]
    fn non_finite_inputs_rejected() {
        assert!(matches!(
            Signal::new(vec![1.0, f64::NAN]),
            Err(Error::InvalidSignal(1))
        ));
    }
}
