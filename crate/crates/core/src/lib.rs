//! Local graph clustering with the network Lasso.
//!
//! Given a weighted graph and a few seed nodes, the crate learns a node
//! signal that approximates the indicator of the cluster around the seeds by
//! minimising
//!
//! ```text
//! Σ_{i∈S} (x_i − 1)²/2 + Σ_{i∉S} α x_i²/2 + λ Σ_{{i,j}∈E} W_ij |x_i − x_j|
//! ```
//!
//! with a primal-dual message-passing iteration ([`solver`]). The dual is a
//! minimum-cost flow on the graph augmented with a sink node; [`objectives`]
//! evaluates both sides and the duality gap, and [`certificates`] checks the
//! optimality conditions and the boundary conditions a delivered cluster has
//! to satisfy. [`baselines`] provides the spectral (Fiedler vector)
//! comparison and [`generators`] the chain, block-model and image graphs.

pub mod baselines;
pub mod certificates;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod io;
pub mod objectives;
pub mod signal;
pub mod solver;

pub use error::{Error, Result};
pub use graph::{AugmentedGraph, Graph, NodeSet};
pub use objectives::NLassoProblem;
pub use signal::{EdgeFlow, NodeSignal};
pub use solver::{run, SolverConfig, SolverResult, SolverState};
