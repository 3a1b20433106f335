//! Exact combinatorial diagonals on the permutahedra, multiplihedra and
//! associahedra.
//!
//! The crate works entirely over the integers: faces of `P_n` are
//! ordered partitions of `{1..n}`, the permutahedral diagonal is a sum
//! of configuration-matrix terms with `±1` signs, and the diagonals on
//! the associahedra `K` and multiplihedra `J` arise by cellular
//! projection.  On top of these sit the permutahedral-set calculus
//! (coface/codegeneracy operators and their structure relations) and
//! the symbolic tensor-product operations for A∞-(co)algebras.
//!
//! Start with [`partition::OrderedPartition`] and
//! [`diagonal::diagonal_top`], or run the examples:
//!
//! ```text
//! cargo run --example perm_diagonal 3
//! ```

pub mod ainfty;
pub mod cli;
pub mod diagonal;
pub mod matrices;
pub mod partition;
pub mod permcalc;
pub mod render;
pub mod trees;
pub mod verify;

pub use partition::{Chain, Coeff, OrderedPartition, TensorChain};
