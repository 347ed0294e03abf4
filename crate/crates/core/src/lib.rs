//! Exact classification of unramified tori, unramified twisted Levi
//! subgroups, and unramified twisted generalized Levi subgroups of
//! reductive p-adic groups — and their finite-field analogues — by
//! enumerating pairs (θ, w) and triples (F, θ, w) up to the relevant
//! equivalence relations.
//!
//! Everything is exact: roots live in integer simple-root coordinates,
//! alcove geometry in rational arithmetic, and Weyl groups as explicit
//! permutation groups. The classifiers are pure functions of a
//! [`catalog::GroupSpec`]; build an [`engine::Engine`] once and query it.

pub mod affine;
pub mod catalog;
pub mod engine;
pub mod error;
pub mod finite;
pub mod genlevi;
pub mod linalg;
pub mod notation;
pub mod records;
pub mod roots;
pub mod stable;
pub mod tables;
pub mod tori;
pub mod weyl;

pub use catalog::{preset, GroupSpec};
pub use engine::Engine;
pub use error::EngineError;
