//! Exact rational and cyclotomic arithmetic.

pub mod cyclotomic;
pub mod rational;
pub mod render;

pub use cyclotomic::{cyclo_field_ops, CycloOp, CycloValue, CyclotomicField, CyclotomicNumber};
pub use rational::Rational;
