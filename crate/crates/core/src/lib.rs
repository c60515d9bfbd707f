//! Classical linear translation-invariant digital filters realized as
//! sheaves over simplicial line complexes.
//!
//! An LTI filter (FIR, all-pole, or general pole-zero) becomes a diagram of
//! finite-dimensional vector-space stalks and four linear maps attached to
//! every vertex and edge of a chain of simplices. Running the filter is
//! computing the unique global section the input induces; the gluing
//! conditions on the edges are exactly the state consistency of the
//! classical recurrence. The [`engine`] module also carries independent
//! classical references (a direct form I evaluator and a state-space
//! iteration) so the sheaf realization can be checked against them.
//!
//! ```
//! use sheafilt::{engine, FilterCoefficients, Signal};
//!
//! // y[t] = 0.5*y[t-1] + x[t]
//! let coeffs = FilterCoefficients::new(&[1.0], &[-0.5]).unwrap();
//! let diagram = coeffs.polezero_maps();
//! let run = engine::run_filter(&diagram, &Signal::impulse(4), None).unwrap();
//! assert_eq!(run.output.samples(), &[1.0, 0.5, 0.25, 0.125]);
//!
//! // The classical oracle agrees sample for sample here.
//! let oracle = engine::direct_form_oracle(&coeffs, &Signal::impulse(4)).unwrap();
//! assert_eq!(run.output.samples(), oracle.samples());
//! ```

pub mod cli;
pub mod engine;
mod error;
pub mod filters;
pub mod sheaf;
pub mod simplicial;

pub use engine::{RunResult, Signal};
pub use error::{Error, Result};
pub use filters::{FilterCoefficients, StateSpaceModel};
pub use sheaf::{LinearMap, SheafDiagram, StateSection, ViolationReport};
pub use simplicial::{LineComplex, SimplexId};
