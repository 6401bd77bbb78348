//! Storage versus repair-bandwidth trade-off for caches whose nodes fail
//! partially and are repaired by broadcast.
//!
//! The crate is split into the closed-form threshold machinery
//! ([`tradeoff`]), an independent graph oracle ([`flowgraph`] and
//! [`mincut`]), and a finite-field codec with a repair simulator
//! ([`galois`], [`mds`], [`repair_sim`]).

pub mod flowgraph;
pub mod galois;
pub mod mds;
pub mod mincut;
pub mod params;
pub mod rational;
pub mod repair_sim;
pub mod sweep;
pub mod tradeoff;

pub use params::{ParamsError, SystemParams};
pub use rational::ExtendedRational;
