// Negated float comparisons reject NaN alongside out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::excessive_precision, clippy::needless_range_loop)]

pub mod energy;
pub mod curve;
pub mod error;
pub mod evolution;
pub mod grunsky;
pub mod io;
pub mod liouville;
pub mod numerics;
pub mod sle;
pub mod wp;

pub use error::{LoewnerError, Result};
pub use evolution::{
    evaluate_chain, extract_driving, solve_forward, Direction, DrivingFunction, HalfPlaneTrace,
    SlitKind, SlitMapChain,
};
