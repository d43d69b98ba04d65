//! Uninorms, fuzzy negations and (U,N)-implications on the unit interval.
//!
//! The crate provides:
//!
//! - constructors for the classical uninorm families (representable,
//!   min/max-filled, drastic band) and for several uninorms with
//!   non-continuous underlying functions built from power sequences and
//!   ordinal sums of semigroups,
//! - fuzzy negations together with the modified pseudo-inverse used to
//!   reconstruct a uninorm from an implication,
//! - (U,N)-implications `I(x,y) = U(N(x), y)` and a battery of numeric
//!   property checks (I1-I3, NP, EP, IP, OP, contrapositions),
//! - horizontal-cut scanning and extraction of alternative (U*, N*)
//!   representations of a given implication, with uniqueness verdicts,
//! - a catalog of named worked instances wired up as a regression corpus.
//!
//! All checks are numeric: operators are sampled on finite grids of
//! `[0,1]`, continuity is decided by an adaptive bisection probe, and
//! inverses of monotone functions are computed by bisection. Everything
//! is pure and deterministic; no global state.

pub mod catalog;
mod error;
pub mod implications;
pub mod negations;
pub mod numerics;
pub mod representations;
pub mod uninorms;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
