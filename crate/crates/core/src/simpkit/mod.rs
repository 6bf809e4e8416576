//! Finite ordered simplicial complexes, subdivision, dual cells, fundamental
//! cycles and diagonals.

mod complex;
mod diag;
mod orient;
mod subdiv;

pub use complex::{
    parse_simplex_key, simplex_key, ChainBasis, ComplexFile, SimpComplex, SimplexChain, SimplexId,
    SimplicialMap, StarOpen,
};
pub use diag::{aw_diagonal, higher_diagonal, to_local};
pub use orient::{fundamental_cycle, relative_fundamental_cycle};
pub use subdiv::{barycentric, Subdivision};
