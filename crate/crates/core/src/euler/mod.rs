//! Euler squares and the sparse user-to-resource mapping built from them.

pub mod export;
pub mod geometry;
pub mod graph;
pub mod mapping;
pub mod protograph;
pub mod square;

pub use geometry::{check_partial_geometry, GeometryCheck};
pub use graph::{
    connectivity, connectivity_from, count_cycles, girth, graph_stats, is_forest, GraphStats,
    DEFAULT_CYCLE_BUDGET,
};
pub use mapping::{build_mapping_matrix, verify_properties, PropertyReport, SparseMapping};
pub use protograph::{extract_protograph, Protograph};
pub use square::{construct_euler_square, euler_square_exists, ConstructionMethod, EulerSquare};

use crate::error::Result;

/// Constructs `E(gamma, rho)` with the prime method and builds its mapping.
pub fn prime_mapping(gamma: usize, rho: usize) -> Result<SparseMapping> {
    let sq = construct_euler_square(gamma, rho, ConstructionMethod::PrimeModular)?;
    Ok(build_mapping_matrix(&sq))
}
