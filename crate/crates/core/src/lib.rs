//! Rational second-kind Chebyshev collocation for Lane–Emden type equations.

// `!(x > 0.0)` style guards are used on purpose so NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod basis;
pub mod cli;
pub mod collocation;
pub mod error;
pub mod format;
pub mod newton;
pub mod problem;
pub mod reference;
pub mod trial;

pub use basis::{
    eval_classical, eval_rcs, gauss_chebyshev2, inner_product_rcs, BasisEval, MappedPoint,
    QuadratureRule,
};
pub use collocation::{make_nodes, make_nodes_with, CollocationSystem, NodeDistribution, NodeSet};
pub use error::{Error, Result};
pub use newton::{newton_solve, solve, NewtonConfig, SolveReport};
pub use problem::{builtin, by_name, standard_lane_emden, LaneEmdenProblem};
pub use trial::{eval_trial, SpectralSolution, TrialEval};
