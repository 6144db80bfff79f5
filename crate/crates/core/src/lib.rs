//! Exact group inverses of real square matrices whose digraph is simple
//! symmetric with every non-pendant vertex adjacent to a pendant vertex
//! (class D).
//!
//! Three independent routes produce the group inverse `A#`:
//!
//! * [`graph_group_inverse`]: `α_ij = μ_ij / Δ_A` from maximum matchings and
//!   alternating cycle chains of `D(A)`;
//! * [`blockwise_group_inverse`]: the closed form of the hub/pendant block
//!   decomposition;
//! * [`group_inverse_oracle`]: full-rank factorization, valid for any square
//!   matrix with `rank(A) = rank(A²)`.
//!
//! All arithmetic is exact over arbitrary-precision rationals.

pub mod chain;
pub mod classify;
pub mod digraph;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod identities;
pub mod matching;
pub mod matrix;
pub mod oracle;
pub mod rational;
pub mod sweep;

pub use chain::{
    alternating_chain, blockwise_group_inverse, graph_group_inverse, mu_table, ChainSearch, CycleChain,
    MuTable,
};
pub use classify::{check_symmetric_closure, classify_closure, ClosureVerdict, DigraphClass};
pub use digraph::{analyze_structure, build_digraph, pendant_neighbors, Digraph, StructureReport};
pub use error::{ClassViolation, Error, Result};
pub use matching::{
    enumerate_two_cycles, matchings_covering, maximum_matchings, Matching, MatchingFamily, TwoCycle,
};
pub use matrix::{mat_mul, rank, RMatrix};
pub use oracle::{group_inverse_oracle, verify_group_axioms, AxiomVerdict};
pub use rational::{format_rational, parse_rational, Rational};
