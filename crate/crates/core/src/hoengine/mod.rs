//! Finite poset-shaped diagrams of free complexes: colimits, homotopy
//! (co)limits by normalized replacement, twisted arrows, coends and Reedy
//! cofibrancy.

mod colim;
mod diagram;
mod hocolim;
mod twisted;

pub use colim::{colim, is_reedy_cofibrant, Colimit};
pub use diagram::{ArrowFile, DiagramFile, FiniteDiagram, Poset};
pub use hocolim::{
    hocolim, hocolim_map, hocolim_to_colim, hocolim_total, holim, holim_total, Part, Total,
};
pub use twisted::{coend, hocoend, twisted_arrow, twisted_diagram, Bifunctor, TwistedArrows};
