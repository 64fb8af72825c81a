//! Tail asymptotics of the stationary distribution of a discrete-time
//! two-class preemptive priority queue (early arrival system), computed by
//! the kernel method and refereed by a truncated-chain solver and a
//! slot-level simulator.

pub mod asymptotics;
pub mod error;
pub mod gf;
pub mod kernel;
pub mod model;
pub mod oracle;
pub mod report;
pub mod sim;

pub use error::{Error, Result};
pub use model::{ModelParams, Region, TransitionTable};
