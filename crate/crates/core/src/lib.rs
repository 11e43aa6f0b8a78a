//! Probabilistic zero forcing on finite simple connected graphs.
//!
//! Exact engines work in arbitrary-precision rationals on graphs of up to
//! [`EXACT_CAP`] vertices; the Monte Carlo estimators have no such cap.
//!
//! - [`graph`]: graph type, builders, edge-list and graph6 I/O.
//! - [`forcing`]: classical color change rule and `Z(G)`.
//! - [`pccr`]: the probabilistic rule and one-round distributions.
//! - [`state_space`]: layered sample spaces and the absorbing chain.
//! - [`metrics`]: `k0`, `P_A(G)` and `P_(j)(G)`.
//! - [`monte_carlo`]: seeded estimators.

pub mod cli;
pub mod error;
pub mod forcing;
pub mod graph;
pub mod linalg;
pub mod metrics;
pub mod monte_carlo;
pub mod pccr;
pub mod rational;
pub mod state_space;
pub mod vertex_set;

pub use error::{Error, Result, EXACT_CAP};
pub use graph::Graph;
pub use rational::Rational;
pub use vertex_set::{ColorState, VertexSet};
