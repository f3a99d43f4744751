//! Base exchange in finite matroids.
//!
//! The crate is organized around an independence-oracle core
//! ([`matroid::MatroidView`]) with concrete families in [`models`]. On top
//! of that sit the exchange algorithms: matroid-union augmentation
//! ([`union`]), symmetric subset exchange and partition exchange
//! ([`exchange`]), subset bijections between bases ([`bijection`]), and the
//! figure-graph verification of how far serial exchange can be pushed
//! ([`counterexample`]). Every algorithm has a deliberately naive
//! counterpart in [`oracle`] for cross-checking.

pub mod bijection;
pub mod counterexample;
mod dsu;
pub mod element;
pub mod error;
pub mod exchange;
pub mod matroid;
pub mod models;
pub mod oracle;
pub mod union;

pub use element::{ElementId, ElementSet};
pub use error::{Error, Result};
pub use matroid::{Basis, IndependenceOracle, MatroidView};
