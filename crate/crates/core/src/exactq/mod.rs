//! Exact rational arithmetic and the certified simplex solver that backs
//! every polyhedral check in this crate.

mod factor;
mod lp;
mod rational;

pub use lp::{
    lp_feasible, lp_solve, LinearRow, LpError, LpProblem, LpSolution, LpStatus, Sense, Simplex,
};
pub use rational::{ParseRationalError, Rational};
