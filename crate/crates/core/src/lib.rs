//! Additive (K-linear) codes in `L^m` over a finite field pair `K ⊂ L`.
//!
//! The crate computes column-space tuples of generator matrices, decides
//! whether a K-linear map between codes is a Hamming isometry (directly and
//! through the indicator-sum identity on column spaces), decides whether such
//! an isometry extends to a K-monomial map of the whole space (through tuple
//! equivalence and through a constructive witness search), and runs
//! exhaustive searches over small parameters.

pub mod characters;
pub mod codes;
pub mod error;
pub mod gf_tower;
pub mod isometry;
pub mod kspace;
pub mod solutions;
pub mod sweep;
pub mod text;

pub use codes::{GenMatrix, LMatrix, SpaceTuple};
pub use error::{Error, Result};
pub use gf_tower::{make_field_pair, FieldK, FieldL, KElem, LElem, PrimeField};
pub use isometry::{CodeMap, MonomialMap};
pub use kspace::{KMatrix, KSubspace};
pub use solutions::{IndicatorTable, SolutionClass, SolutionPair};
pub use sweep::{SweepParams, SweepReport};
