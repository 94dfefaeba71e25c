//! Exact-arithmetic engine for the classical geometry of the Igusa quartic
//! and its companions: the Segre cubic primal, the degree-2 congruence of
//! planes in P^4, determinantal conic bundles, Igusa pencils of quartic
//! threefolds and the 27-lines/double-six combinatorics.
//!
//! Everything is computed over Q (or a quadratic extension Q(sqrt d)) with
//! no rounding anywhere; every claim is certified by an exact witness:
//! a polynomial identity, a Groebner normal form, a staircase count or an
//! exhaustive enumeration.

pub mod congruence;
pub mod conic_bundle;
pub mod groebner;
pub mod igusa;
pub mod matrix;
pub mod pencil;
pub mod poly;
pub mod projective;
pub mod quadext;
pub mod rational;
pub mod report;
pub mod ring;
pub mod schlaefli;
pub mod suites;

pub use poly::MultiPoly;
pub use quadext::QuadExt;
pub use rational::Rational;
pub use ring::Ring;

use thiserror::Error;

/// Errors shared across the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("resampling budget exhausted after {0} attempts")]
    ResamplingExhausted(u32),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
