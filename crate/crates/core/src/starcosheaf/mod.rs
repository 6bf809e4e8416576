//! Evaluation of X-based complexes on unions of open stars.

mod costalk;
mod eval;
mod subdivide;

pub use costalk::{costalk, naturality_eta, Costalk, NaturalityReport};
pub use eval::{evaluate, mv_check, restriction_map, MvReport, StarEvaluation, StarOpenFile};
pub use subdivide::{subdivide, Subdivided};

#[cfg(test)]
mod tests;
