//! Exact computation in the descent, cyclic-descent and augmented-descent
//! subalgebras of the group algebras of `S_n` and `B_n`.
//!
//! Composition is `(σ∘τ)(i) = σ(τ(i))` throughout.

pub mod algebra;
pub mod cli;
pub mod descent;
pub mod error;
pub mod perm;
pub mod poset;
pub mod shuffle;

pub use error::{Error, Result};
