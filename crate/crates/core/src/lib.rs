//! Exact and sampled distributions of correct guesses when a deck that went
//! through riffle shuffles is guessed one card at a time without feedback.

pub mod arith;
pub mod closedform;
pub mod decimal;
pub mod error;
pub mod gf_fast;
pub mod gfpoly;
pub mod kshuffle;
pub mod linsolve;
pub mod moments;
pub mod ratpoly;
pub mod series;
pub mod shuffle;
pub mod verify;

pub use arith::{Quarter, Rat, ShuffleSpec};
pub use error::{Error, Result};
pub use gf_fast::Tier;
pub use gfpoly::GFPoly;
