//! Quotient curve complexes as all-right spherical complexes, and the Euclidean cone over them.

pub mod catalog;
pub mod cone;
pub mod geometry;
pub mod oracle;

use std::path::Path;

pub use catalog::{CanonicalSimplex, Catalog, CatalogSimplex, CatalogSurface, Simplex, SphericalComplex};
pub use cone::{cone_law, BoundedDistance, ConePoint, Direction, LatticeGraph};
pub use geometry::{Geodesic, Located, OctantGluing};
pub use oracle::{generate_catalog, pants_graph_types};

use crate::assets;
use crate::error::Result;

pub fn load_complex(path: &Path) -> Result<SphericalComplex> {
    SphericalComplex::load(path)
}

/// The shipped catalog for `key` (e.g. `s2_0`).
pub fn shipped_complex(key: &str) -> Result<SphericalComplex> {
    SphericalComplex::from_json(assets::catalog_json(key)?)
}

pub fn octant_gluing(complex: &SphericalComplex) -> Result<OctantGluing> {
    OctantGluing::new(complex)
}

/// Upper bound for the complex distance from the lattice of denominator `refinement`.
pub fn complex_distance(gluing: &OctantGluing, p: &Direction, q: &Direction, refinement: usize) -> Result<BoundedDistance> {
    LatticeGraph::new(gluing, refinement)?.distance(p, q)
}
