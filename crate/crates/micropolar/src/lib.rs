pub mod config;
pub mod error;
pub mod material;
pub mod numeig;
pub mod plate;
pub mod solid3d;
pub mod trigbasis;

pub use error::{Error, Result};

// The book's listings run as doctests of this crate.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/material.md")]
    mod material {}
    #[doc = include_str!("../../../book/src/plate.md")]
    mod plate {}
    #[doc = include_str!("../../../book/src/solid.md")]
    mod solid {}
    #[doc = include_str!("../../../book/src/eigen.md")]
    mod eigen {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/deviations.md")]
    mod deviations {}
}
