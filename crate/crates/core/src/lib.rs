//! Exact calculus of information flow in deterministic computation.
//!
//! Information in a natural number is `log n`. The crate measures how
//! arithmetic, pairing, set coding and polynomial functions create or
//! discard that information, and builds the cardinality, sum and product
//! grids over the finite sets of naturals.

pub mod arith;
pub mod combinadic;
pub mod density;
pub mod efficiency;
pub mod error;
pub mod grids;
pub mod pairing;
pub mod set;

pub use arith::{binomial, delta_info, info, info_ratio, tuple_info, BigNat, InfoValue, LogBase};
pub use error::{Error, Result};
pub use set::FiniteSet;
