//! Interrogation-based combinatory algebras on function spaces.
//!
//! The crate models partial functions on the naturals as observable
//! objects ([`partialfn::PartialFn`]), applies them to one another through
//! query/answer dialogues ([`dialogue`]), and builds the combinatory
//! algebras `K2`, `K2^p` and Kleene's original second model on top
//! ([`k2`]). A computable base algebra of coded combinator terms
//! ([`basepca`]) supplies realizers; [`oracle`] relativizes it to an oracle
//! and [`morphisms`] checks applicative morphisms between the models on
//! finite samples.

pub mod basepca;
pub mod cli;
pub mod coding;
pub mod dialogue;
pub mod error;
pub mod k2;
pub mod morphisms;
pub mod oracle;
pub mod par;
pub mod partialfn;
pub mod report;
pub mod suites;

pub use coding::{nat, CantorScheme, CodingScheme, CompactScheme, Nat, Tagged};
pub use error::Error;
pub use par::Exec;
pub use partialfn::{Fuel, Outcome, PartialFn};
pub use report::{CheckReport, Verdict};
