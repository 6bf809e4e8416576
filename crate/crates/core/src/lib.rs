#![allow(clippy::needless_range_loop)]

pub mod chainkit;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod hoengine;
pub mod intlin;
pub mod lcore;
pub mod simpkit;
pub mod starcosheaf;
pub mod zxmod;

pub use error::{Error, Result};

/// Guide chapters, compiled as doc-tests.
pub mod guide {
    #[doc = include_str!("../../../README.md")]
    pub mod readme {}
    #[doc = include_str!("../../../book/src/overview.md")]
    pub mod overview {}
    #[doc = include_str!("../../../book/src/integers.md")]
    pub mod integers {}
    #[doc = include_str!("../../../book/src/chains.md")]
    pub mod chains {}
    #[doc = include_str!("../../../book/src/simplicial.md")]
    pub mod simplicial {}
    #[doc = include_str!("../../../book/src/xmodules.md")]
    pub mod xmodules {}
    #[doc = include_str!("../../../book/src/duality.md")]
    pub mod duality {}
    #[doc = include_str!("../../../book/src/hocolim.md")]
    pub mod hocolim {}
    #[doc = include_str!("../../../book/src/cosheaf.md")]
    pub mod cosheaf {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
