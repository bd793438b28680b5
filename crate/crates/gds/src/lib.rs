//! Tensor product decompositions for simple algebraic groups and quantum
//! groups of types A1 and A2 at ℓ ≥ h: Krull-Schmidt decompositions, regular
//! parts and generic direct summands of tensor products of simple modules,
//! Weyl modules and dual Weyl modules, with the supporting alcove
//! combinatorics, exact character arithmetic and Verlinde fusion rules.
//!
//! Everything is exact integer arithmetic; there is no floating point and no
//! tolerance anywhere.
//!
//! - [`roots`]: root systems, weights, pairings, the finite Weyl group.
//! - [`alcove`]: the extended affine Weyl group, ℓ-dilated dot action, length
//!   by hyperplane counting, the fundamental group Ω, alcove localization and
//!   Steinberg digit factorization.
//! - [`character`]: Weyl characters, products, χ-basis decomposition, simple
//!   characters via Steinberg/Lusztig, SL2 tilting characters, the Jantzen
//!   sum formula oracle.
//! - [`label`]: symbolic module labels, decompositions, characters and
//!   filtration dimensions of labelled modules, translation and duality.
//! - [`sl2`], [`sl3`]: the type-A1 and type-A2 decomposition engines.
//! - [`verlinde`]: fusion coefficients and translated regular parts.
//! - [`selftest`]: the acceptance suite behind `gds selftest`.
//!
//! The book under `book/` walks through the same material with runnable
//! examples; its code blocks are compiled as doc-tests (see [`guide`]).

pub mod alcove;
pub mod character;
pub mod error;
pub mod guide;
pub mod label;
pub mod roots;
pub mod selftest;
pub mod sl2;
pub mod sl3;
pub mod verlinde;

pub use alcove::{Case, EllContext, ExtAffine};
pub use character::{weyl_character, weyl_dimension, Character};
pub use error::{Error, Result};
pub use label::{
    character_of, dual_label, gfd_of, translate_label, translate_to, wfd_of, Decomposition,
    ModuleLabel,
};
pub use roots::{FiniteWeyl, Kind, RootSystem, Weight};
