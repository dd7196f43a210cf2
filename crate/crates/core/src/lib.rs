//! Hall bases of free Lie rings and the Hilton-Milnor splitting of
//! `Omega S (X_1 v .. v X_n)`, made computable.
//!
//! * [`hall_words`] enumerates Hall bases with their rank function and runs the
//!   elimination recursion that produces them one word at a time.
//! * [`free_lie`] does exact integer arithmetic in the free Lie ring, checked
//!   against the tensor-algebra embedding, and computes Witt dimensions.
//! * [`homotopy_series`] models pointed connected objects by a connectivity
//!   bound and a reduced power series with integer coefficients.
//! * [`hilton_milnor`] lists the factors of the splitting and verifies the
//!   splitting identities on series.
//!
//! Only the numerical shadow of the splitting is checked: series identities
//! and connectivity bounds. Equivalences of objects are out of reach of any
//! finite computation.

pub mod cli;
pub mod error;
pub mod free_lie;
pub mod hall_words;
pub mod hilton_milnor;
pub mod homotopy_series;
mod json;
pub mod linalg;

pub use error::{Error, Result};
pub use free_lie::{
    embed_tensor, verify_hall_basis, witt_dimension, BracketExpr, FreeLieRing, LieElement, TensorElement,
};
pub use hall_words::{
    enumerate_hall_basis, format_word, parse_word, split_step, Alphabet, HallBasisTable, HallWord, OrderPolicy,
    RankedWord, SplitTower,
};
pub use hilton_milnor::{decompose, Bound, Decomposition, Verdict};
pub use homotopy_series::{geom_sum, FormalObject, MultiSeries};
