//! Equitable colourings of graphs with maximum degree `Δ` when
//! `|G|/3 < Δ < |G|/2`.
//!
//! The pipeline runs a lexicographic local search over colourings whose
//! classes have at most three vertices, then splits and rebalances the
//! result into an equitable `Δ`-colouring.

mod bitset;
pub mod coloring;
mod exact;
pub mod graph;
pub mod hs;
pub mod oracle;
pub mod reduce;
pub mod search;
pub mod solver;
pub mod sweep;

pub use bitset::VertexSet;
pub use coloring::{verify, Coloring, Profile};
pub use graph::Graph;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/colorings.md")]
    mod colorings {}
    #[doc = include_str!("../../../book/src/local-search.md")]
    mod local_search {}
    #[doc = include_str!("../../../book/src/reduction.md")]
    mod reduction {}
    #[doc = include_str!("../../../book/src/many-classes.md")]
    mod many_classes {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/sweeps.md")]
    mod sweeps {}
}
