//! Surface combinatorics: pants decompositions, sub-multicurves, cut surfaces and type labels.

pub mod graph;
pub mod pants;

pub use graph::{MulticurveGraph, VertexLabel};
pub use pants::{
    complexity, cut_surface, multicurve_type, multicurve_type_with, validate_pants_decomposition, CurveSpec,
    CutComponent, CutSurface, DecompositionSimplex, PantsDecomposition, PantsFile, PunctureLabels, SlotRef,
    SlotUse, Surface, TypeLabel, Violation,
};
pub(crate) use pants::UnionFind;

#[cfg(test)]
mod tests;
