//! Simulation and analysis of the phase transition for high-order connected
//! components in random uniform hypergraphs.
//!
//! A `k`-uniform hypergraph on `n` vertices is explored at the level of
//! `j`-sets (sets of `j` vertices, `1 <= j <= k-1`): two `j`-sets belong to
//! the same component when a chain of edges joins them with consecutive
//! edges sharing at least `j` vertices. The crate provides
//!
//! * exact combinatorial primitives and colexicographic set ranking
//!   ([`combinat`]),
//! * seeded sampling of random hypergraphs and a memoized edge oracle
//!   ([`randsrc`]),
//! * an exact component census via union-find ([`census`]),
//! * the breadth-first exploration process with its stopping rules and
//!   degree ledger ([`explorer`]),
//! * Galton-Watson offspring laws coupled to the exploration
//!   ([`branching`]),
//! * closed-form and numeric predictions: critical probability, degree
//!   constants, extinction fixed point ([`theory`]),
//! * an experiment harness with deterministic seeding and CSV/JSON
//!   reports ([`harness`]).

pub mod branching;
pub mod census;
pub mod combinat;
pub mod explorer;
pub mod harness;
pub mod randsrc;
pub mod stats;
pub mod theory;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("binomial C({n}, {r}) overflows 128-bit arithmetic")]
    BinomOverflow { n: u64, r: u64 },
    #[error("rank space C({n}, {r}) does not fit in 64 bits; this instance is too large to address")]
    RankSpaceTooLarge { n: u64, r: u8 },
    #[error("invalid vertex set: {0}")]
    InvalidSet(String),
    #[error("rank {rank} out of range for C({n}, {r})")]
    RankOutOfRange { rank: u64, n: u32, r: u8 },
    #[error("probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error("expected edge count {expected:.3e} exceeds cap {cap:.3e} at n={n}, k={k}; use the lazy-oracle exploration mode instead of materializing the edge set")]
    EdgeBudget { expected: f64, cap: f64, n: u32, k: u8 },
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("fixed-point iteration stalled: residual {residual:.3e} after {iterations} iterations")]
    NoConvergence { residual: f64, iterations: u64 },
    #[error("trace unsuitable for this check: {0}")]
    BadTrace(String),
    #[error("total progeny exceeded the safety cap {0} for a law declared subcritical")]
    ProgenyGuard(u64),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse: {0}")]
    Parse(String),
    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
