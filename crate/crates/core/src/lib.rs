//! Simulation and numerical verification toolkit for the offended voter
//! model, a voter model on a graph whose disagreeing edges are either
//! resolved by a vote or deleted.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod checks;
pub mod delayed;
pub mod dynamics;
pub mod experiments;
pub mod format;
pub mod graph;
pub mod rng;
pub mod stats;
