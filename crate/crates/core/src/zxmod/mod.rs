mod duality;
mod product;
mod xcomplex;

pub use duality::{coherence_holds, dual_t, dual_t_map, hom_complex, unit_e};
pub use product::{
    coend_via_engine, colim_model, colim_via_engine, comparison, local_projection, weighted_model,
    GenRef, LocalProjection, Model, ProductContext, WChain, WTerm, XCycle,
};
pub use xcomplex::{dual_cell_complex, ComponentFile, Gen, XComplex, XComplexFile, XMap};
