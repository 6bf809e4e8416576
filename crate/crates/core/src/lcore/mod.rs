//! Symmetric and quadratic structures, the symmetric construction,
//! nondegeneracy and signatures.

mod construction;
mod nondeg;
mod signature;
mod structure;

pub use construction::{
    dual_cell_orientations, relative_construction, subdivide_chain, symmetric_construction,
    symmetric_construction_from_cycle, NaturalDiagonal, Pair, Sapc,
};
pub use nondeg::{
    global_adjoint, is_nondegenerate, local_nondegeneracy, pair_adjoint, push_chain, validate_pair,
    Mode,
};
pub use signature::{inertia, signature};
pub use structure::{
    form_chain, hom_w_differential, symmetrize, transpose, validate_quadratic, validate_symmetric,
    Check, QuadStructure, StructureFile, SymStructure,
};

#[cfg(test)]
mod tests;
