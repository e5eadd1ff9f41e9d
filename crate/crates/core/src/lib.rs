//! Exact strength, fractional arboricity, spanning-tree modulus and
//! minimum-cost homogenizing adjustments for weighted graphs, all in exact
//! rational arithmetic.
//!
//! The fast paths run on min-cut networks ([`oracles`], [`ratio`]); the
//! [`bruteforce`] module holds exhaustive counterparts used to check them,
//! and [`polymatroid`] works with arbitrary polymatroid functions on small
//! ground sets.

pub mod adjust;
pub mod backend;
pub mod bruteforce;
pub mod corpus;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod mincut;
pub mod modulus;
pub mod oracles;
pub mod polymatroid;
pub mod ratio;
pub mod rational;
pub mod verify;

pub use adjust::{reinforce, sparsify, AdjustmentPlan};
pub use backend::{Backend, ExhaustiveBackend, NetworkBackend, Registry};
pub use error::{Error, Result};
pub use graph::{EdgeIdx, EdgeSet, Graph, VertexIdx, VertexSet};
pub use modulus::{spanning_tree_modulus, ModulusProfile};
pub use ratio::{arboricity, is_homogeneous, strength, Homogeneity, RatioWitness, Witness};
pub use rational::Rational;
