//! Exact computer algebra for relatively free nil-algebras.
//!
//! The crate works in the free associative algebra over `F_p` or the
//! rationals modulo the identity `x^n = 0`. It computes graded components of
//! the ideal by sparse exact elimination, decides membership, finds
//! nilpotency degrees, evaluates known upper and lower bounds, canonicalizes
//! words for `n = 4`, and checks generating sets of matrix invariants.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod field;
pub mod formal_sum;
pub mod invariants;
mod linalg;
pub mod nil_ideal;
pub mod order;
mod parse;
pub mod polarization;
pub mod rewrite4;
pub mod word;

pub use error::{Error, Result};
pub use field::{Coeff, FieldTag};
pub use formal_sum::FormalSum;
pub use nil_ideal::{EngineConfig, NilIdeal, NilpotencyResult};
pub use order::WordOrder;
pub use word::{MultiDegree, PartialOrderKind, PowerVector, Word};
