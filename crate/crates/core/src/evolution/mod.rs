//! Discretized chordal Loewner evolution in the upper half-plane.

pub mod driving;
pub mod forward;
pub mod slit;
pub mod trace;
pub mod zipper;

pub use driving::DrivingFunction;
pub use forward::{chain_from_driving, exact_chain, solve_forward, solve_forward_with, trace_of_chain};
pub use slit::{Direction, Jet, SlitKind, SlitMapChain, SlitStep};
pub use trace::HalfPlaneTrace;
pub use zipper::{extract_driving, unzip, Unzipped};

use num_complex::Complex64;

use crate::error::Result;

/// Value of the composed uniformizing map (or its inverse) at `z`.
pub fn evaluate_chain(chain: &SlitMapChain, z: Complex64, direction: Direction) -> Result<Complex64> {
    chain.evaluate(z, direction)
}
