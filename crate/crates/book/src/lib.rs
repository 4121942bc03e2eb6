//! The guide in `book/` runs its code samples through rustdoc: each chapter is
//! included below as a module's docs, so `cargo test --doc` keeps them honest.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/rank-tables.md")]
pub mod rank_tables {}
#[doc = include_str!("../../../book/src/connectivity.md")]
pub mod connectivity {}
#[doc = include_str!("../../../book/src/structures.md")]
pub mod structures {}
#[doc = include_str!("../../../book/src/detachable-pairs.md")]
pub mod detachable_pairs {}
#[doc = include_str!("../../../book/src/families.md")]
pub mod families {}
#[doc = include_str!("../../../book/src/classification.md")]
pub mod classification {}
#[doc = include_str!("../../../book/src/formats.md")]
pub mod formats {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
