//! Large-scale multiobjective optimization by Monte Carlo tree search over
//! populations.
//!
//! Each tree node holds a population. Expanding a node samples a subset of the
//! decision variables, runs NSGA-II on that subset starting from the node's
//! population, and stores the result as a child. Children are scored by an
//! estimated hypervolume and selected with UCB. The best-scored node is kept
//! as the archive and its population is the output.
//!
//! The crate also provides the LSMOP1–9 benchmarks, IGD and hypervolume
//! indicators, run-dispersion metrics, and an experiment harness.

pub mod dvso;
pub mod error;
pub mod harness;
pub mod indicators;
pub mod mcts;
pub mod nsga2;
pub mod problem;
pub mod problems;
pub mod rng;
pub mod solution;

pub use error::{Error, Result};
pub use problem::{Evaluator, Problem};
pub use rng::RandomStream;
pub use solution::{dominates, Population, Solution};
