//! Executable versions of three constructions on function spaces: dense
//! positive cones among polynomials, a Cauchy sequence leaving a C^1
//! completion's cone non-semisimple, and the piecewise-linear envelope
//! that defeats every monotone norm on an algebra of unbounded functions.

pub mod completion;
pub mod envelope;
pub mod piecewise;
pub mod polynomial;

pub use completion::{completion_cauchy_demo, CompletionReport, CompletionRow};
pub use envelope::{envelope_demo, make_gn, normalizing_alphas, EnvelopeReport, EnvelopeRow};
pub use piecewise::{pl_max, PiecewiseLinear};
pub use polynomial::{density_witness, DensityWitness, QPolynomial};
