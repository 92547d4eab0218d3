//! Bus-factor analysis for bipartite person-task networks.
//!
//! A project is a bipartite graph between people and the tasks they can
//! work on. This crate measures how exposed such a project is to people
//! leaving:
//!
//! - [`measures::mrs_greedy`] finds a largest set of people whose combined
//!   departure still leaves the project covered (the redundancy margin).
//! - [`measures::mcs_percolation`] finds how few departures, taken in a
//!   given order, push the project past a failure threshold (the bus
//!   factor under that removal strategy).
//! - [`measures::robustness_curve`] tracks the largest still-staffed
//!   component across a full removal sequence and normalizes the area
//!   under that curve into a 0-to-1 robustness score.
//!
//! Removal orders come from [`strategies`], synthetic graphs and fixtures
//! from [`generators`], brute-force ground truth for small graphs from
//! [`oracle`], and batch sensitivity sweeps from [`experiments`].

pub mod edgelist;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod measures;
pub mod oracle;
pub mod strategies;
mod union_find;

pub use edgelist::{EdgeList, EdgeListError};
pub use graph::{BipartiteGraph, GraphError, RemovalMask, Threshold, ThresholdError};
pub use measures::{BusFactorReport, MeasureError, NormVariant, RobustnessCurve};
pub use strategies::{RemovalOrder, Strategy, StrategyError};
