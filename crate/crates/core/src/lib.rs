//! Exact spectra of iterated lexicographic graph products.
//!
//! A lexicographic power `H^k[G]` of a small base graph can have far more
//! vertices than could ever be materialized (`10^100` and beyond), yet its
//! adjacency spectrum (for regular factors) and Laplacian spectrum (for
//! arbitrary factors) are determined by closed-form recursions over the
//! base spectra. This crate implements those recursions symbolically —
//! every eigenvalue of the power graph is an affine form
//! `scale * (base eigenvalue) + offset` with arbitrary-precision integer
//! scale and offset — together with the brute-force oracle (explicit
//! product construction plus a dense symmetric eigensolver) that verifies
//! the closed forms on instances small enough to build.
//!
//! The crate is `no_std` with `alloc`; IO, JSON rendering and the command
//! line live in the companion `lexspectra` crate.
//!
//! ```
//! use lexspectra_core::eigen::{exact_spectrum, MatrixKind};
//! use lexspectra_core::graph::{named, Generator};
//! use lexspectra_core::lexpower::{power_adjacency_spectrum, PowerParams};
//!
//! // all 10^100 eigenvalues of the hundredth power of the Petersen graph
//! let spectrum = exact_spectrum(&Generator::Petersen, MatrixKind::Adjacency)?;
//! let params = PowerParams::new(named("petersen"), spectrum, None, 100)?;
//! let descriptor = power_adjacency_spectrum(&params)?.normalize();
//! assert_eq!(descriptor.entries().len(), 201);
//! # Ok::<(), lexspectra_core::Error>(())
//! ```
//!
//! Module map:
//!
//! * [`graph`] — base-graph representation, generators, explicit products
//! * [`search`] — exact NP-hard invariants on small graphs (independence,
//!   clique, vertex connectivity, colorability)
//! * [`eigen`] — dense symmetric eigensolver and exact spectrum registry
//! * [`model`] — symbolic spectra: affine eigenvalues, big multiplicities,
//!   compressed degree-sum distributions
//! * [`lexpower`] — the closed-form engine for joins, products and powers
//! * [`invariants`] — closed-form combinatorial invariants of powers

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod eigen;
pub mod graph;
pub mod invariants;
pub mod lexpower;
pub mod model;
pub mod search;

use alloc::string::String;
use core::fmt;

/// Size caps that keep the brute-force oracle tractable.
///
/// The closed forms never construct product graphs, so they are unaffected
/// by these limits; the caps only guard explicit construction, dense
/// eigendecomposition, exponential-time invariants and offset-distribution
/// expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest product graph the oracle will construct explicitly.
    pub construction: usize,
    /// Largest matrix the dense eigensolver accepts.
    pub dense: usize,
    /// Largest order for exact NP-hard searches (bitset-based, <= 64).
    pub search: usize,
    /// Most distinct offsets an offset distribution may hold before it is
    /// demoted to summary form.
    pub expansion: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            construction: 20_000,
            dense: 2_048,
            search: 64,
            expansion: 1_000_000,
        }
    }
}

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed graph specification; the message names the offending entry.
    Parse(String),
    /// An oracle-side operation would exceed its size cap.
    Size { order: u128, cap: usize },
    /// The dense eigensolver failed to converge.
    Numeric(&'static str),
    /// A closed form was invoked outside its hypotheses; the message names
    /// the violated hypothesis.
    Hypothesis(&'static str),
    /// An offset distribution exceeded the expansion cap; `distinct` is the
    /// exact distinct-offset count reached, so callers can fall back to
    /// summary queries.
    Capacity { distinct: usize, cap: usize },
    /// The requested decimal precision is not attainable from the base
    /// eigenvalue's error bound; `achievable` is what can be guaranteed.
    Precision { requested: usize, achievable: i64 },
    /// The exact-spectrum registry has no entry for this graph and matrix
    /// kind; callers fall back to the floating-point solver.
    Unsupported(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Size { order, cap } => {
                write!(f, "size error: order {order} exceeds cap {cap}")
            }
            Error::Numeric(msg) => write!(f, "numeric error: {msg}"),
            Error::Hypothesis(msg) => write!(f, "hypothesis violated: {msg}"),
            Error::Capacity { distinct, cap } => write!(
                f,
                "capacity error: {distinct} distinct offsets exceed the expansion cap {cap}"
            ),
            Error::Precision {
                requested,
                achievable,
            } => write!(
                f,
                "precision error: {requested} fractional digits requested but only {achievable} attainable from the base error bound"
            ),
            Error::Unsupported(msg) => write!(f, "no exact spectrum registered for {msg}"),
        }
    }
}

#[cfg(any(test, feature = "std"))]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
