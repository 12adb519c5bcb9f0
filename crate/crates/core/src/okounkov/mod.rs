//! Okounkov bodies of divisors on `Xₙ` for the line-and-point flag: the
//! chamber walk, Seshadri triangles, rescaling, vertical strips and the
//! iterative dissection.

pub mod body;
pub mod dissect;
pub mod nagata;
pub mod pl;
pub mod polygon;

pub use body::{body_data, body_l, line_body, okounkov_body, rescale, seshadri_body, BodyData, BodyRequest, Chamber};
pub use dissect::dissection;
pub use nagata::{nagata_strip, NagataStrip, QuadPoint};
pub use pl::PiecewiseLinearFn;
pub use polygon::{Point, Polygon, PolygonRecord};
