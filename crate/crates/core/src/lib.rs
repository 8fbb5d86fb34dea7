//! Lossy kernels and round-limited adaptive protocols for d-Hitting Set and
//! two hitting-set-like problems: Cluster Vertex Deletion and Feedback Vertex
//! Set in Tournaments.
//!
//! Everything is exact: linear programs are solved over the rationals and all
//! bound checks compare rationals. The only floating-point values are sampling
//! probabilities and the fractional-power thresholds of the protocols.

pub mod cvd_kernel;
pub mod element_kernel;
pub mod error;
pub mod fvst_kernel;
pub mod harness;
pub mod instances;
pub mod lp;
pub mod marking;
pub mod protocols;
pub mod rational;
pub mod solvers;

pub use instances::{Graph, HypergraphInstance, Id, ProblemKind, Solution, Tournament};
pub use rational::Q;
