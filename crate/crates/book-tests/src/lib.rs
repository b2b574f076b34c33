//! Compiles every Rust snippet in the guide as a doctest, one module per
//! chapter so failures point at the chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/colouring.md")]
pub mod colouring {}
#[doc = include_str!("../../../book/src/full-group.md")]
pub mod full_group {}
#[doc = include_str!("../../../book/src/witnesses.md")]
pub mod witnesses {}
#[doc = include_str!("../../../book/src/aperiodicity.md")]
pub mod aperiodicity {}
#[doc = include_str!("../../../book/src/homogeneity.md")]
pub mod homogeneity {}
#[doc = include_str!("../../../book/src/free-subgroup.md")]
pub mod free_subgroup {}
#[doc = include_str!("../../../book/src/odometer.md")]
pub mod odometer {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
