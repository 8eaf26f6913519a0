//! Fenchel–Nielsen coordinates, holonomy, length functions and twist actions.

pub mod fn_point;
pub mod holonomy;
pub mod presentation;

pub use fn_point::{length_from_u, twist_flow, u_coordinate, FNPoint, FnCoordinate, FnPointFile, MarkedSurface};
pub use holonomy::{build_holonomy, geodesic_length, length_from_matrix, Holonomy};
pub use presentation::{dehn_twist_action, GeneratorKind, Gluing, Presentation, TwistDirection};

/// Collar constant `2 arcsinh(1)`: curves shorter than this are pairwise disjoint.
pub const COLLAR_CONSTANT: f64 = 1.762_747_174_039_086;

/// Half-width of the embedded collar about a geodesic of length `l`.
pub fn collar_half_width(l: f64) -> f64 {
    (1.0 / (0.5 * l).sinh()).asinh()
}
