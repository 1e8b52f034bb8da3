//! Exact solvers for fixing single-elimination tournaments.
//!
//! Three problems are covered, all asking whether a favorite player can be
//! made the overall winner by choosing the initial seeding of a perfect
//! binary bracket:
//!
//! * **TF** — one tournament digraph, perfect information.
//! * **STF** — several tournament digraphs over the same players; one seeding
//!   must win in all of them simultaneously.
//! * **PTF** — a matrix of exact pairwise win probabilities and a target
//!   probability the favorite must reach.
//!
//! The STF solver runs a fixed-parameter pipeline (feedback arc set of the
//! shared digraph → player types → blueprint enumeration → integral
//! assignment feasibility → witness seeding); PTF reduces to STF over
//! completions of the certainty digraph. Brute-force oracles provide ground
//! truth at small scale.
//!
//! Probability arithmetic is generic over [`scalar::Scalar`]; the solvers and
//! parsers are pinned to the exact rational alias [`Rat`] so that yes/no
//! verdicts at probability boundaries are well defined.

pub mod assignment;
pub mod blueprint;
pub mod bracket;
pub mod error;
pub mod fas;
pub mod gen;
pub mod instance;
pub mod oracle;
pub mod ptf;
pub mod scalar;
pub mod stf;
pub mod typesys;

pub use error::Error;
pub use scalar::{parse_rational, Rat, Scalar};

/// A probability instance over exact rationals, as produced by the parser.
pub type PtfInstance = instance::ProbabilityInstance<Rat>;

/// Convenience result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
