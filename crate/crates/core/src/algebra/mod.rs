//! Exact coefficient rings and the group algebras over them.

pub mod binomial;
mod element;
pub mod json;
mod kernel;
pub mod qpoly;
pub mod rational;

pub use element::{Coefficient, GroupAlgebraElement};
pub use qpoly::QPolynomial;
pub use rational::Rational;
