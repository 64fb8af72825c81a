//! Slot-level simulation of the early arrival system.
//!
//! Each slot: Bernoulli arrivals join first; then, if any high-priority
//! customer is present it completes with probability `mu_h`, otherwise a
//! present low-priority customer completes with probability `mu_l`. The state
//! after service is the observation for that slot.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{transition_table, ModelParams, Region, SIMPLEX_TOL};
use crate::oracle::StationaryGrid;

/// Parameters for simulation; unlike [`ModelParams`] the boundary values
/// 0 and 1 are allowed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimParams {
    pub p: f64,
    pub q: f64,
    pub mu_h: f64,
    pub mu_l: f64,
}

impl SimParams {
    pub fn new(p: f64, q: f64, mu_h: f64, mu_l: f64) -> Result<Self> {
        for (name, v) in [("p", p), ("q", q), ("mu_h", mu_h), ("mu_l", mu_l)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::SimplexViolation(format!("{name} = {v} is not in [0, 1]")));
            }
        }
        if (p + q + mu_h + mu_l - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::SimplexViolation(format!(
                "p + q + mu_h + mu_l = {} (must equal 1)",
                p + q + mu_h + mu_l
            )));
        }
        Ok(Self { p, q, mu_h, mu_l })
    }

    pub fn rho(&self) -> f64 {
        let part = |a: f64, m: f64| if a == 0.0 { 0.0 } else { a / m };
        part(self.p, self.mu_h) + part(self.q, self.mu_l)
    }
}

impl From<ModelParams> for SimParams {
    fn from(m: ModelParams) -> Self {
        Self {
            p: m.p(),
            q: m.q(),
            mu_h: m.mu_h(),
            mu_l: m.mu_l(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub params: SimParams,
    pub n_slots: u64,
    pub seed: u64,
    pub warmup_slots: u64,
    /// Tally window `0..=nh` x `0..=nl`; other states go to the overflow bucket.
    pub nh: usize,
    pub nl: usize,
}

pub const BATCHES: usize = 30;

impl SimConfig {
    /// Default warmup `max(1e5, 100 / (1 - rho))` and a 60 x 60 tally window.
    pub fn new(params: SimParams, n_slots: u64, seed: u64) -> Self {
        Self {
            params,
            n_slots,
            seed,
            warmup_slots: default_warmup(&params),
            nh: 60,
            nl: 60,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_slots <= self.warmup_slots {
            return Err(Error::InvalidConfig(format!(
                "n_slots = {} must exceed warmup_slots = {}",
                self.n_slots, self.warmup_slots
            )));
        }
        if self.n_slots - self.warmup_slots < BATCHES as u64 {
            return Err(Error::InvalidConfig(format!(
                "need at least {BATCHES} post-warmup slots"
            )));
        }
        Ok(())
    }
}

pub fn default_warmup(params: &SimParams) -> u64 {
    let rho = params.rho();
    let relax = if rho < 1.0 { 100.0 / (1.0 - rho) } else { 0.0 };
    relax.max(1e5).ceil() as u64
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimEstimate {
    pub nh: usize,
    pub nl: usize,
    /// Occupation frequencies, row-major as in [`StationaryGrid`].
    pub freq: Vec<f64>,
    /// Batch-means standard error of each frequency.
    pub std_err: Vec<f64>,
    pub overflow: f64,
    /// Post-warmup slots observed.
    pub slots: u64,
    pub warmup: u64,
    pub seed: u64,
}

impl SimEstimate {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.freq[i * (self.nl + 1) + j]
    }

    pub fn std_err_at(&self, i: usize, j: usize) -> f64 {
        self.std_err[i * (self.nl + 1) + j]
    }

    /// `sum_j` of the tallied frequencies at each `i`.
    pub fn high_marginal(&self) -> Vec<f64> {
        self.freq.chunks(self.nl + 1).map(|r| r.iter().sum()).collect()
    }

    /// The tally as a grid (overflow dropped).
    pub fn to_grid(&self) -> Result<StationaryGrid> {
        StationaryGrid::from_values(self.nh, self.nl, self.freq.clone())
    }
}

/// The three independent draw streams.
struct Streams {
    high: ChaCha8Rng,
    low: ChaCha8Rng,
    service: ChaCha8Rng,
}

impl Streams {
    fn new(seed: u64) -> Self {
        let stream = |k: u64| {
            let mut r = ChaCha8Rng::seed_from_u64(seed);
            r.set_stream(k);
            r
        };
        Self {
            high: stream(1),
            low: stream(2),
            service: stream(3),
        }
    }

    /// One slot's draws: arrival flags and the service uniform.
    fn draw(&mut self, p: &SimParams) -> (bool, bool, f64) {
        let h = self.high.gen::<f64>() < p.p;
        let l = self.low.gen::<f64>() < p.q;
        (h, l, self.service.gen::<f64>())
    }
}

/// One slot of the dynamics from `(i, j)`.
pub fn advance(
    params: &SimParams,
    state: (usize, usize),
    high_arrival: bool,
    low_arrival: bool,
    service_u: f64,
) -> (usize, usize) {
    let (mut i, mut j) = state;
    i += high_arrival as usize;
    j += low_arrival as usize;
    if i >= 1 {
        if service_u < params.mu_h {
            i -= 1;
        }
    } else if j >= 1 && service_u < params.mu_l {
        j -= 1;
    }
    (i, j)
}

pub fn simulate(config: &SimConfig) -> Result<SimEstimate> {
    config.validate()?;
    let p = &config.params;
    let (nh, nl) = (config.nh, config.nl);
    let cells = (nh + 1) * (nl + 1);
    let mut rng = Streams::new(config.seed);
    let mut state = (0usize, 0usize);
    for _ in 0..config.warmup_slots {
        let (h, l, u) = rng.draw(p);
        state = advance(p, state, h, l, u);
    }
    let observed = config.n_slots - config.warmup_slots;
    let per_batch = observed / BATCHES as u64;
    // Counts per batch; the last batch absorbs the remainder.
    let mut counts = vec![0u64; BATCHES * (cells + 1)];
    for t in 0..observed {
        let (h, l, u) = rng.draw(p);
        state = advance(p, state, h, l, u);
        let batch = ((t / per_batch) as usize).min(BATCHES - 1);
        let cell = if state.0 <= nh && state.1 <= nl {
            state.0 * (nl + 1) + state.1
        } else {
            cells
        };
        counts[batch * (cells + 1) + cell] += 1;
    }
    let total = observed as f64;
    let batch_len = |b: usize| {
        if b + 1 < BATCHES {
            per_batch as f64
        } else {
            (observed - per_batch * (BATCHES as u64 - 1)) as f64
        }
    };
    let mut freq = vec![0.0; cells + 1];
    let mut std_err = vec![0.0; cells + 1];
    for c in 0..=cells {
        let n: u64 = (0..BATCHES).map(|b| counts[b * (cells + 1) + c]).sum();
        freq[c] = n as f64 / total;
        let means: Vec<f64> = (0..BATCHES)
            .map(|b| counts[b * (cells + 1) + c] as f64 / batch_len(b))
            .collect();
        let mean = means.iter().sum::<f64>() / BATCHES as f64;
        let var = means.iter().map(|m| (m - mean) * (m - mean)).sum::<f64>() / (BATCHES - 1) as f64;
        std_err[c] = (var / BATCHES as f64).sqrt();
    }
    let overflow = freq.pop().unwrap_or(0.0);
    std_err.pop();
    Ok(SimEstimate {
        nh,
        nl,
        freq,
        std_err,
        overflow,
        slots: observed,
        warmup: config.warmup_slots,
        seed: config.seed,
    })
}

/// Total-variation distance between a simulation tally and an oracle grid on
/// the common window, with everything outside it lumped into one cell.
pub fn tv_distance(est: &SimEstimate, grid: &StationaryGrid) -> f64 {
    let (nh, nl) = (est.nh.min(grid.nh()), est.nl.min(grid.nl()));
    let mut l1 = 0.0;
    let (mut sim_in, mut grid_in) = (0.0, 0.0);
    for i in 0..=nh {
        for j in 0..=nl {
            let (a, b) = (est.get(i, j), grid.get(i, j));
            l1 += (a - b).abs();
            sim_in += a;
            grid_in += b;
        }
    }
    let sim_out = (1.0 - sim_in).max(0.0);
    let grid_out = (grid.total_mass() - grid_in).max(0.0);
    0.5 * (l1 + (sim_out - grid_out).abs())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransitionCheck {
    /// Largest `|empirical - table|` over the nine displacements.
    pub max_abs_dev: f64,
    /// Largest deviation in binomial standard errors.
    pub max_z: f64,
    pub trials: u64,
}

/// Monte-Carlo one-step frequencies from a representative state of `region`
/// against the transition table.
pub fn empirical_transition_check(
    params: &ModelParams,
    region: Region,
    n_trials: u64,
    seed: u64,
) -> TransitionCheck {
    let sp = SimParams::from(*params);
    let table = transition_table(params, region);
    let from = region.representative();
    let mut rng = Streams::new(seed);
    let mut counts = [[0u64; 3]; 3];
    for _ in 0..n_trials {
        let (h, l, u) = rng.draw(&sp);
        let to = advance(&sp, from, h, l, u);
        let di = to.0 as i64 - from.0 as i64;
        let dj = to.1 as i64 - from.1 as i64;
        counts[(di + 1) as usize][(dj + 1) as usize] += 1;
    }
    let n = n_trials as f64;
    let (mut max_abs_dev, mut max_z) = (0.0f64, 0.0f64);
    for di in -1i8..=1 {
        for dj in -1i8..=1 {
            let want = table.prob(di, dj);
            let got = counts[(di + 1) as usize][(dj + 1) as usize] as f64 / n;
            let dev = (got - want).abs();
            let se = (want * (1.0 - want) / n).sqrt();
            let z = if dev == 0.0 {
                0.0
            } else if se == 0.0 {
                f64::INFINITY
            } else {
                dev / se
            };
            max_abs_dev = max_abs_dev.max(dev);
            max_z = max_z.max(z);
        }
    }
    TransitionCheck {
        max_abs_dev,
        max_z,
        trials: n_trials,
    }
}
