//! Extended formulations for spanning tree polytopes.
//!
//! The crate builds explicit linear systems `A·x + B·y ≤ b, C·x + D·y = c`
//! whose projection onto `x` is the spanning tree polytope of a graph, using
//! a pipeline that is small for graphs of bounded genus and for k-apex graphs,
//! and certifies every construction with exact rational LP oracles.

pub mod cli;
pub mod exactq;
pub mod formulations;
pub mod graph;
pub mod planar;
pub mod polyhedra;
pub mod surface;
pub mod verify;
