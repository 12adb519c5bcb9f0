//! Exact computation of Okounkov bodies, Zariski decompositions and
//! Seshadri constants on the blow-up `Xₙ` of the projective plane in
//! `n ≤ 9` very general points.
//!
//! Everything in the core is exact: scalars are arbitrary-precision
//! rationals, with quadratic surds only where square roots are forced.

pub mod cones;
pub mod error;
pub mod exactlin;
pub mod figure;
pub mod lattice;
pub mod okounkov;
pub mod parallel;
pub mod sampling;
pub mod verify;
pub mod weyl;
pub mod zariski;

pub use error::{Error, Result};
pub use exactlin::{QuadraticNumber, Rational, RationalMatrix};
pub use lattice::{canonical_class, expected_genus, intersect, CurveClass, DivisorClass};
pub use okounkov::{Point, Polygon};
pub use zariski::{zariski_decompose, ZariskiDecomposition};
