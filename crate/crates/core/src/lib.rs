//! Exact circular flow numbers for small cubic graphs, with certificates on both sides
//! (flows and balanced valuations), and mechanical checks of the block-type / discharging
//! case analysis for Goldberg snarks.

pub mod error;
pub mod families;
pub mod flows;
pub mod graph;
pub mod graph6;
pub mod maxflow;
pub mod proofcheck;
pub mod rational;
pub mod cli;
pub mod valuations;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use rational::Rational;
