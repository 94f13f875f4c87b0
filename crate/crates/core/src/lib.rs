//! Exact combinatorics of Dyck partitions for Grassmannian Schubert varieties.
//!
//! The crate computes parabolic Kazhdan-Lusztig polynomials and their inverses for the
//! maximal parabolic `S_i x S_{n-i}` of `S_n`, both from the Hecke algebra and from Dyck
//! partitions, together with small-resolution schedules, character-level Rouquier
//! complexes, Demazure operators and equivariant Pieri rules.

pub mod demazure;
pub mod dyck;
pub mod equivariant;
pub mod error;
pub mod fixtures;
pub mod hecke;
pub mod homology;
pub mod laurent;
pub mod mpoly;
pub mod paths;
pub mod perm;
pub mod selftest;
pub mod zelevinsky;

pub use dyck::{DyckPartition, DyckStrip, StripOrdering};
pub use error::{Error, Result};
pub use hecke::{HeckeElement, KlTables, ParabolicHeckeElement, PolyTable};
pub use homology::{DiffGraph, RouquierTerms};
pub use laurent::LaurentPolynomial;
pub use mpoly::MultivariatePolynomial;
pub use paths::{
    enumerate_paths, region_boxes, LatticeBox, Path, PathSpace, Position, Region, Step,
};
pub use perm::{Permutation, SymmetricGroup};
pub use zelevinsky::TranslationPair;
