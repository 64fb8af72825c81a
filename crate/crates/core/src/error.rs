use thiserror::Error;

use crate::oracle::StationaryGrid;

/// Errors raised by the analysis, oracle and simulation layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("simplex violation: {0}")]
    SimplexViolation(String),

    #[error("unstable parameters: rho = {rho} >= 1")]
    Unstable { rho: f64 },

    #[error("unsupported regime: tail asymptotics require mu_l <= mu_h (got mu_l = {mu_l}, mu_h = {mu_h})")]
    UnsupportedRegime { mu_l: f64, mu_h: f64 },

    #[error("kernel coefficient a(y) vanishes at y = {y} (pole at y = -(1-q)/q)")]
    PoleAtY { y: f64 },

    #[error("evaluation point x = {x} coincides with the pole x1(0) = {pole}")]
    PoleAtX { x: f64, pole: f64 },

    #[error("kernel vanishes at a non-removable point (x = {x}, y = {y})")]
    KernelZero { x: f64, y: f64 },

    #[error("argument {value} outside the domain {domain}")]
    Domain { value: f64, domain: &'static str },

    #[error("grid {nh}x{nl} is smaller than the balance stencil (need at least 3x3)")]
    DimensionMismatch { nh: usize, nl: usize },

    #[error("contour radius {radius} is not positive")]
    RadiusConflict { radius: f64 },

    #[error("coefficient {index} is negative beyond quadrature noise ({value:e})")]
    NegativeCoefficient { index: usize, value: f64 },

    #[error("F(y0) has the same sign at both ends of the scan ({lo:e}, {hi:e})")]
    NoBracket { lo: f64, hi: f64 },

    #[error("scan path leaves the admissible region at {parameter} = {value}: {reason}")]
    InstabilityOnPath {
        parameter: &'static str,
        value: f64,
        reason: String,
    },

    #[error("solver did not converge within {sweeps} sweeps (last change {last_change:e})")]
    BudgetExceeded {
        sweeps: usize,
        last_change: f64,
        grid: Box<StationaryGrid>,
    },

    #[error("state space too large for {method}: {states} states (limit {limit})")]
    TooLarge {
        method: &'static str,
        states: usize,
        limit: usize,
    },

    #[error("fit window too small: {usable} usable indices, need {needed}")]
    WindowTooSmall { usable: usize, needed: usize },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
