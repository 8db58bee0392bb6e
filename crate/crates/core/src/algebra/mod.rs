//! Exact scalars, sparse polynomials, Laurent polynomials, partitions and
//! polynomial matrices.

pub mod laurent;
pub mod matrix;
pub mod monomial;
pub mod partition;
pub mod poly;
pub mod rational;

pub use laurent::LaurentPoly;
pub use matrix::PolyMatrix;
pub use monomial::{Monomial, Var};
pub use partition::{Partition, StrictPartition};
pub use poly::Poly;
pub use rational::{format_rational, parse_rational, Rational};
