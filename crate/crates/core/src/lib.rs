pub mod bounded_rom;
pub mod classifier;
mod error;
pub mod geometry;
pub mod greedy;
pub mod harness;
pub mod online;
pub mod oracle;
pub mod rescale;
pub mod rng;
pub mod structures;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/coordinates.md")]
    mod coordinates {}
    #[doc = include_str!("../../../book/src/objects.md")]
    mod objects {}
    #[doc = include_str!("../../../book/src/greedy.md")]
    mod greedy {}
    #[doc = include_str!("../../../book/src/classes.md")]
    mod classes {}
    #[doc = include_str!("../../../book/src/bounded.md")]
    mod bounded {}
    #[doc = include_str!("../../../book/src/rescaling.md")]
    mod rescaling {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/harness.md")]
    mod harness {}
}
