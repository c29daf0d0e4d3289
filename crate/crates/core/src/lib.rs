//! Exact computation with finite simplicial sets, bisimplicial sets and finite
//! categories.
//!
//! Complexes are stored in Eilenberg–Zilber normal form: a simplex is a
//! nondegenerate cell together with the surjection that degenerates it.
//! Infinite objects (nerves of categories with loops, `k_!`, `t^!`) are
//! computed up to a truncation bound and say whether the bound cut anything
//! off. Checkers return a [`Verdict`] that is either decisive or reported as
//! unknown at the bound, never a silent guess.

pub mod ops;
pub mod error;
pub mod complex;
pub mod model;
pub mod map;
pub mod standard;
pub mod hom;
pub mod colimit;
pub mod limit;
pub mod category;
pub mod nerve;
pub mod bisimplicial;
pub mod adjunction;
pub mod homotopy;
pub mod homology;
pub mod lifting;
pub mod weq;
pub mod segal;
pub mod presheaf;
pub mod corpus;
pub mod suites;

pub use category::{FiniteCategory, FunctorData};
pub use complex::{BisimplicialSet, CellId, Complex, Simplex, SimplicialSet};
pub use error::{Error, Result};
pub use lifting::{Certificate, Status, Verdict};
pub use map::{BisimplicialMap, Morphism, SimplicialMap};
pub use nerve::Nerve;
pub use presheaf::{CategoryPresheaf, Presheaf, SimplicialPresheaf};
pub use weq::Strategy;

/// A value computed up to a truncation bound, flagged exact when nothing was cut off.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncated<T> {
    pub value: T,
    pub bound: usize,
    pub exact: bool,
}
