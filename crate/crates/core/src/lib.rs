//! Strong symmetric genus of the finite Coxeter groups.
//!
//! Groups are realized as exact permutation groups (`B_n` and `D_n` through
//! their signed-permutation action, the exceptional types through their
//! root systems) and a minimal `(p,q,r)` generating pair is found by
//! exhaustive search, which then gives the genus through Riemann–Hurwitz.

pub mod catalog;
pub mod error;
pub mod genus;
pub mod golden;
pub mod group;
pub mod lift;
pub mod perm;
pub mod report;
pub mod roots;
pub mod signed;
pub mod tables;

pub use catalog::{realize, GroupSpec};
pub use error::{Error, Result};
pub use genus::{GenusResult, PairWitness, TripleSignature};
pub use group::GroupHandle;
pub use perm::{CycleType, Permutation};
pub use signed::{SignVector, SignedPermutation};
