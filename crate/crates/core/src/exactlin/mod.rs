//! Exact scalars and the small amount of linear algebra the rest of the
//! crate needs: rationals, quadratic surds, linear solves, definiteness
//! tests and cone LPs.

pub mod lp;
pub mod matrix;
pub mod quadratic;
pub mod rational;

pub use lp::{cone_exit_threshold, cone_member, cone_membership, ConeMembership, LpOutcome, StandardLp};
pub use matrix::{is_negative_definite, solve_linear, solve_linear_multi, RationalMatrix};
pub use quadratic::{is_perfect_square, QuadraticNumber};
pub use rational::{format_rational, int, parse_rational, ratio, Rational};
