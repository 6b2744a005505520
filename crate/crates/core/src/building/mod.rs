//! The Bruhat-Tits building of GL_d over Q_p: simplices, balls, apartments, norms, metrics.

pub mod apartment;
pub mod ball;
pub mod metric;
pub mod norm;
pub mod simplex;

pub use apartment::{common_apartment, common_apartment_simplices, Apartment, BuildingPoint};
pub use ball::{ball, vertex_neighbors, BallGraph};
pub use metric::{distance, distance_points, DistanceMode};
pub use norm::{norm_distance, norm_from_embedding, norm_to_simplex, weakly_admissible_line_test, DiagonalNorm};
pub use simplex::{is_simplex, Simplex, SimplexDefect};

use crate::error::Result;
use crate::rat::Q;

/// Distance of the building points of two norms, computed only from their lattice chains,
/// barycentric weights and a common apartment of the chains.
pub fn point_distance_of_norms(a: &DiagonalNorm, b: &DiagonalNorm) -> Result<Q> {
    let sa = norm_to_simplex(a);
    let sb = norm_to_simplex(b);
    let (ap, _, _) = common_apartment_simplices(&sa, &sb)?;
    let xa = apartment::point_of_norm_in(a, &ap)?;
    let xb = apartment::point_of_norm_in(b, &ap)?;
    distance_points(&xa, &xb, DistanceMode::Brv)
}
