//! q-pebbling on d-dimensional grids.
//!
//! A pebbling move removes `q_i` pebbles from a vertex and places a single
//! pebble on a neighbor along axis i; a configuration is solvable when every
//! vertex can be reached by some sequence of moves. This crate provides:
//!
//! - [`grid`]: grid geometry, pebbling distance, distance neighborhoods, and
//!   centrality classification;
//! - [`config`]: configurations, the exactly-uniform random configuration
//!   model, exact pin probabilities, and move application;
//! - [`solver`]: exact, greedy, and weight-criteria solvability deciders plus
//!   brute-force pebbling numbers;
//! - [`counting`]: lattice-point counts of rational simplices, low-weight
//!   distribution counts, distance products and tails, partitions into
//!   powers of q;
//! - [`threshold`]: exact and Monte Carlo solvability probabilities, Wilson
//!   intervals, bisection for the half-probability pebble count, and
//!   closed-form threshold shapes.
//!
//! Everything randomized is seeded and reproducible: results depend only on
//! the seed, never on thread count or schedule.

pub mod config;
pub mod counting;
pub mod error;
pub mod grid;
pub mod numeric;
pub mod rng;
pub mod solver;
pub mod threshold;

pub use config::{
    apply_move, config_count, exact_event_probability, for_each_configuration, legal_moves,
    prob_bound_approx, sample_uniform, ConfigFile, Configuration, Move,
};
pub use counting::{
    count_low_weight_distributions, mahler_asymptotic, mahler_h, simplex_bounds,
    simplex_lattice_count, tail_weight_sum, weight_product, weight_product_log_estimate,
    SimplexBounds,
};
pub use error::{Error, Result};
pub use grid::{
    central_class, central_class_counts, lambda_set, lambda_size_estimate, pebbling_distance,
    vector_distance, CentralityClass, GridSpec, Vertex,
};
pub use solver::{
    fractional_necessary_check, greedy_solve, greedy_threshold_sum, is_solvable_exact,
    is_v_solvable_exact, path_solvable, path_solvable_all, pebbling_number, weight_sufficient_check,
    GridSolveReport, PebblingNumber, SolveResult, Verdict, WeightReport, DEFAULT_STATE_BUDGET,
};
pub use threshold::{
    exact_solvable_prob, graham_table, mc_solvable_prob, phalf_bisect, theorem1_value,
    theorem2_value, wilson_interval, GrahamRow, McEstimate, PerKStats, ThresholdEstimate,
    TrialReport, TRIAL_CAP, WILSON_Z_95,
};
