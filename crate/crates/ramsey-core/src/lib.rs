//! Lower-bound machinery for multicolored Ramsey numbers.
//!
//! A lower bound `R(k_1, ..., k_r) >= L` is witnessed by an edge coloring of
//! the complete graph on `L - 1` vertices in which color `i` contains no
//! monochromatic `K_{k_i}`. This crate materializes such witnesses, checks
//! them exactly, and derives numeric bounds from tables of known ones:
//!
//! - [`coloring`] — edge colorings of complete graphs, per-color graph
//!   views, circulant generators.
//! - [`constructions`] — two witness-enlarging constructions: the copy
//!   blowup `R(k_1,...,k_r) > (k_1-1)(R(k_2,...,k_r)-1)` and the block
//!   stretch `R(k_1,...,k_r) > (k_1+1)(R(k_2-k_1+1,k_3,...,k_r)-1)`.
//! - [`verifier`] — exact monochromatic-clique search (branch and bound
//!   over bitset adjacency) plus a naive enumeration oracle.
//! - [`bounds`] — closes a table of known bounds under the two formulas
//!   and trivial reductions, with full derivation provenance.
//! - [`catalog`] — the text file format for colorings and the built-in
//!   seed witnesses.

mod bitset;

pub mod bounds;
pub mod catalog;
pub mod coloring;
pub mod constructions;
pub mod verifier;

pub use coloring::{CliqueBoundVector, Color, ColorGraphView, ColoringError, EdgeColoring};
pub use constructions::{BlockRecipe, BlockRole, ConstructionError, ConstructionResult};
pub use verifier::{VerificationReport, VerifierError};
