//! The guide in `book/src`, one module per chapter, so that `cargo test`
//! runs every snippet in it.

#[doc = include_str!("../../../book/src/intro.md")]
pub mod intro {}
#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}
#[doc = include_str!("../../../book/src/descent.md")]
pub mod descent {}
#[doc = include_str!("../../../book/src/learning.md")]
pub mod learning {}
#[doc = include_str!("../../../book/src/smoothing.md")]
pub mod smoothing {}
#[doc = include_str!("../../../book/src/search.md")]
pub mod search {}
#[doc = include_str!("../../../book/src/experiments.md")]
pub mod experiments {}
#[doc = include_str!("../../../book/src/benchmarks.md")]
pub mod benchmarks {}
