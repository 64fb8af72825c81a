//! Stationary distribution of the chain truncated to `0..=nh` x `0..=nl`.
//!
//! Moves that would leave the box are redirected to the departing state, so
//! the truncated operator stays stochastic.

use std::io::{self, BufRead, Read, Write};

use crate::asymptotics::{Direction, FitResult, FixedIndex};
use crate::error::{Error, Result};
use crate::model::{balance_residual, transition_table, ModelParams, Region};

/// Truncated joint distribution `pi_{i,j}`, `0 <= i <= nh`, `0 <= j <= nl`.
#[derive(Clone, Debug, PartialEq)]
pub struct StationaryGrid {
    nh: usize,
    nl: usize,
    values: Vec<f64>,
    residual: Option<f64>,
    converged: bool,
    sweeps: usize,
}

impl StationaryGrid {
    /// Wraps row-major values (`index = i * (nl + 1) + j`).
    pub fn from_values(nh: usize, nl: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != (nh + 1) * (nl + 1) {
            return Err(Error::InvalidConfig(format!(
                "{} values for a {}x{} grid",
                values.len(),
                nh + 1,
                nl + 1
            )));
        }
        if let Some(v) = values.iter().find(|v| !(**v >= 0.0) || !v.is_finite()) {
            return Err(Error::InvalidConfig(format!("grid value {v} is not a probability")));
        }
        Ok(Self {
            nh,
            nl,
            values,
            residual: None,
            converged: true,
            sweeps: 0,
        })
    }

    /// Largest high-priority index.
    pub fn nh(&self) -> usize {
        self.nh
    }

    /// Largest low-priority index.
    pub fn nl(&self) -> usize {
        self.nl
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * (self.nl + 1) + j]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Balance residual recorded by the solver, if any.
    pub fn residual(&self) -> Option<f64> {
        self.residual
    }

    pub fn converged(&self) -> bool {
        self.converged
    }

    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    pub fn total_mass(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Mass on the far edges `i = nh` or `j = nl`.
    pub fn edge_mass(&self) -> f64 {
        let mut s: f64 = (0..=self.nl).map(|j| self.get(self.nh, j)).sum();
        s += (0..self.nh).map(|i| self.get(i, self.nl)).sum::<f64>();
        s
    }

    /// `pi_{i,j}` for fixed `i`, `j = 0..=nl`.
    pub fn row(&self, i: usize) -> Vec<f64> {
        self.values[i * (self.nl + 1)..(i + 1) * (self.nl + 1)].to_vec()
    }

    /// `pi_{i,j}` for fixed `j`, `i = 0..=nh`.
    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..=self.nh).map(|i| self.get(i, j)).collect()
    }

    /// `sum_j pi_{i,j}` for each `i`.
    pub fn high_marginal(&self) -> Vec<f64> {
        (0..=self.nh).map(|i| self.row(i).iter().sum()).collect()
    }

    /// `sum_i pi_{i,j}` for each `j`.
    pub fn low_marginal(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.nl + 1];
        for i in 0..=self.nh {
            for (o, v) in out.iter_mut().zip(self.row(i)) {
                *o += v;
            }
        }
        out
    }

    /// Sequence along `direction` at `fixed`: rows, columns or marginals.
    pub fn sequence(&self, direction: Direction, fixed: FixedIndex) -> Result<Vec<f64>> {
        match (direction, fixed) {
            (Direction::LowPriority, FixedIndex::Index(i)) if i <= self.nh => Ok(self.row(i)),
            (Direction::HighPriority, FixedIndex::Index(j)) if j <= self.nl => Ok(self.column(j)),
            (Direction::LowPriority, FixedIndex::Marginal) => Ok(self.low_marginal()),
            (Direction::HighPriority, FixedIndex::Marginal) => Ok(self.high_marginal()),
            (_, FixedIndex::Index(k)) => Err(Error::InvalidConfig(format!(
                "fixed index {k} outside the grid"
            ))),
        }
    }

    /// CSV with header `i,j,pi`, LF line endings, 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "i,j,pi")?;
        for i in 0..=self.nh {
            for j in 0..=self.nl {
                writeln!(w, "{i},{j},{:.16e}", self.get(i, j))?;
            }
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let bad = |msg: String| Error::InvalidConfig(format!("grid csv: {msg}"));
        let mut cells = Vec::new();
        let (mut nh, mut nl) = (0usize, 0usize);
        for (k, line) in r.lines().enumerate() {
            let line = line.map_err(|e| bad(e.to_string()))?;
            if k == 0 {
                if line.trim() != "i,j,pi" {
                    return Err(bad("missing header `i,j,pi`".into()));
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split(',');
            let mut next = || parts.next().ok_or_else(|| bad(format!("line {}: short row", k + 1)));
            let i: usize = next()?.trim().parse().map_err(|e| bad(format!("{e}")))?;
            let j: usize = next()?.trim().parse().map_err(|e| bad(format!("{e}")))?;
            let v: f64 = next()?.trim().parse().map_err(|e| bad(format!("{e}")))?;
            nh = nh.max(i);
            nl = nl.max(j);
            cells.push((i, j, v));
        }
        let mut values = vec![0.0; (nh + 1) * (nl + 1)];
        for (i, j, v) in cells {
            values[i * (nl + 1) + j] = v;
        }
        Self::from_values(nh, nl, values)
    }

    /// Little-endian binary: `nh` and `nl` as `u32`, then row-major `f64`.
    pub fn write_binary<W: Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(&(self.nh as u32).to_le_bytes())?;
        w.write_all(&(self.nl as u32).to_le_bytes())?;
        for v in &self.values {
            w.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(mut r: R) -> Result<Self> {
        let io_err = |e: io::Error| Error::InvalidConfig(format!("grid binary: {e}"));
        let mut b4 = [0u8; 4];
        r.read_exact(&mut b4).map_err(io_err)?;
        let nh = u32::from_le_bytes(b4) as usize;
        r.read_exact(&mut b4).map_err(io_err)?;
        let nl = u32::from_le_bytes(b4) as usize;
        let mut values = Vec::with_capacity((nh + 1) * (nl + 1));
        let mut b8 = [0u8; 8];
        for _ in 0..(nh + 1) * (nl + 1) {
            r.read_exact(&mut b8).map_err(io_err)?;
            values.push(f64::from_le_bytes(b8));
        }
        Self::from_values(nh, nl, values)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMethod {
    /// Banded GTH state reduction (no subtractions).
    Direct,
    /// Power iteration of the transition operator.
    Iterative,
}

pub const DIRECT_LIMIT: usize = 40_000;
pub const ITERATIVE_LIMIT: usize = 4_000_000;

#[derive(Clone, Debug)]
pub struct SolverOptions {
    pub method: SolveMethod,
    /// Stop when successive iterates differ by less than this in max norm...
    pub tol: f64,
    /// ...and, if set, by less than this relative to each non-negligible
    /// cell. The absolute test alone leaves deep tail cells unconverged.
    pub rel_tol: Option<f64>,
    pub max_sweeps: usize,
    pub threads: usize,
}

impl SolverOptions {
    pub fn new(method: SolveMethod) -> Self {
        Self {
            method,
            tol: 1e-13,
            rel_tol: None,
            max_sweeps: 1_000_000,
            threads: threads_from_env(),
        }
    }
}

impl SolverOptions {
    /// Iterative settings for tail work: every cell above the flush level
    /// is converged in relative terms.
    pub fn for_tails() -> Self {
        Self {
            rel_tol: Some(1e-11),
            ..Self::new(SolveMethod::Iterative)
        }
    }
}

/// Thread cap from `PRIOQ_THREADS` (default 1 for bit-stable output).
pub fn threads_from_env() -> usize {
    std::env::var("PRIOQ_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(1)
}

pub fn solve_truncated(
    params: &ModelParams,
    nh: usize,
    nl: usize,
    method: SolveMethod,
) -> Result<StationaryGrid> {
    solve_truncated_with(params, nh, nl, &SolverOptions::new(method))
}

pub fn solve_truncated_with(
    params: &ModelParams,
    nh: usize,
    nl: usize,
    opts: &SolverOptions,
) -> Result<StationaryGrid> {
    params.require_stable()?;
    if nh < 2 || nl < 2 {
        return Err(Error::DimensionMismatch { nh: nh + 1, nl: nl + 1 });
    }
    let states = (nh + 1) * (nl + 1);
    let ops = Operator::new(params, nh, nl);
    let mut grid = match opts.method {
        SolveMethod::Direct => {
            if states > DIRECT_LIMIT {
                return Err(Error::TooLarge {
                    method: "direct",
                    states,
                    limit: DIRECT_LIMIT,
                });
            }
            StationaryGrid::from_values(nh, nl, ops.gth())?
        }
        SolveMethod::Iterative => {
            if states > ITERATIVE_LIMIT {
                return Err(Error::TooLarge {
                    method: "iterative",
                    states,
                    limit: ITERATIVE_LIMIT,
                });
            }
            ops.power_iteration(opts)?
        }
    };
    grid.residual = Some(balance_residual(&grid, params)?);
    if !grid.converged {
        return Err(Error::BudgetExceeded {
            sweeps: grid.sweeps,
            last_change: f64::NAN,
            grid: Box::new(grid),
        });
    }
    Ok(grid)
}

/// Moves indexed consistently across regions; the self-loop is separate.
const MOVES: [(i64, i64); 6] = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (0, -1)];

/// Values below this are flushed to zero to keep the sweep out of subnormals.
const FLUSH: f64 = 1e-290;

struct Operator {
    nh: usize,
    nl: usize,
    /// `prob[region][k]` for move `MOVES[k]`; region order as `Region::ALL`.
    prob: [[f64; 6]; 4],
    self_loop: [f64; 4],
}

fn region_index(i: usize, j: usize) -> usize {
    match Region::of(i, j) {
        Region::Origin => 0,
        Region::HBoundary => 1,
        Region::VBoundary => 2,
        Region::Interior => 3,
    }
}

impl Operator {
    fn new(params: &ModelParams, nh: usize, nl: usize) -> Self {
        let mut prob = [[0.0; 6]; 4];
        let mut self_loop = [0.0; 4];
        for (r, region) in Region::ALL.iter().enumerate() {
            let t = transition_table(params, *region);
            for (k, &(di, dj)) in MOVES.iter().enumerate() {
                prob[r][k] = t.prob(di as i8, dj as i8);
            }
            self_loop[r] = t.prob(0, 0);
        }
        Self {
            nh,
            nl,
            prob,
            self_loop,
        }
    }

    fn inside(&self, i: i64, j: i64) -> bool {
        i >= 0 && j >= 0 && i <= self.nh as i64 && j <= self.nl as i64
    }

    /// Self-loop of state `(i, j)` including redirected out-of-box moves.
    fn stay(&self, i: usize, j: usize) -> f64 {
        let r = region_index(i, j);
        let mut s = self.self_loop[r];
        for (k, &(di, dj)) in MOVES.iter().enumerate() {
            if !self.inside(i as i64 + di, j as i64 + dj) {
                s += self.prob[r][k];
            }
        }
        s
    }

    /// Gathers `(x P)` at `(i, j)` with full bounds and region checks.
    fn gather_generic(&self, x: &[f64], stay: &[f64], i: usize, j: usize) -> f64 {
        let w = self.nl + 1;
        let t = i * w + j;
        let mut v = stay[t] * x[t];
        for (k, &(di, dj)) in MOVES.iter().enumerate() {
            let (si, sj) = (i as i64 - di, j as i64 - dj);
            if self.inside(si, sj) {
                let (si, sj) = (si as usize, sj as usize);
                v += x[si * w + sj] * self.prob[region_index(si, sj)][k];
            }
        }
        v
    }

    /// Computes rows starting at `i_lo` of `x P` into `out`; returns the max
    /// absolute change and whether any live cell moved by more than
    /// `rel_tol` of its value.
    fn sweep_rows(
        &self,
        x: &[f64],
        out: &mut [f64],
        i_lo: usize,
        stay: &[f64],
        rel_tol: f64,
    ) -> (f64, bool) {
        let (nh, nl) = (self.nh, self.nl);
        let w = nl + 1;
        let pi = &self.prob[3];
        let st = self.self_loop[3];
        let mut diff = 0.0f64;
        let mut moving = false;
        for (local, chunk) in out.chunks_mut(w).enumerate() {
            let i = i_lo + local;
            let fast = i >= 2 && i < nh;
            for (j, slot) in chunk.iter_mut().enumerate() {
                let t = i * w + j;
                // Away from every boundary all sources are interior states.
                let mut v = if fast && j >= 2 && j < nl {
                    st * x[t]
                        + x[t - w] * pi[0]
                        + x[t - w - 1] * pi[1]
                        + x[t - 1] * pi[2]
                        + x[t + w - 1] * pi[3]
                        + x[t + w] * pi[4]
                        + x[t + 1] * pi[5]
                } else {
                    self.gather_generic(x, stay, i, j)
                };
                if v < FLUSH {
                    v = 0.0;
                }
                let d = (v - x[t]).abs();
                diff = diff.max(d);
                moving |= d > rel_tol * v && v > FLUSH * 1e10;
                *slot = v;
            }
        }
        (diff, moving)
    }

    fn power_iteration(&self, opts: &SolverOptions) -> Result<StationaryGrid> {
        let (nh, nl) = (self.nh, self.nl);
        let w = nl + 1;
        let n = (nh + 1) * w;
        let stay: Vec<f64> = (0..n).map(|t| self.stay(t / w, t % w)).collect();
        // Formula-free start: a product of geometric profiles.
        let mut x: Vec<f64> = (0..n)
            .map(|t| 0.5f64.powi(((t / w) + (t % w)) as i32).max(0.0))
            .map(|v| if v < FLUSH { 0.0 } else { v })
            .collect();
        normalize(&mut x);
        let mut y = vec![0.0; n];
        let threads = opts.threads.clamp(1, nh + 1);
        let rows_per = (nh + 1).div_ceil(threads);
        let mut sweeps = 0;
        let mut converged = false;
        let rel_tol = opts.rel_tol.unwrap_or(f64::INFINITY);
        while sweeps < opts.max_sweeps {
            sweeps += 1;
            let (diff, moving) = if threads == 1 {
                self.sweep_rows(&x, &mut y, 0, &stay, rel_tol)
            } else {
                let xs = &x;
                let st = &stay;
                std::thread::scope(|s| {
                    let handles: Vec<_> = y
                        .chunks_mut(rows_per * w)
                        .enumerate()
                        .map(|(c, out)| {
                            s.spawn(move || self.sweep_rows(xs, out, c * rows_per, st, rel_tol))
                        })
                        .collect();
                    handles
                        .into_iter()
                        .map(|h| h.join().expect("sweep thread panicked"))
                        .fold((0.0f64, false), |a, b| (a.0.max(b.0), a.1 || b.1))
                })
            };
            std::mem::swap(&mut x, &mut y);
            if sweeps % 100 == 0 {
                normalize(&mut x);
            }
            if diff < opts.tol && !moving {
                converged = true;
                break;
            }
        }
        normalize(&mut x);
        let mut g = StationaryGrid::from_values(nh, nl, x)?;
        g.converged = converged;
        g.sweeps = sweeps;
        Ok(g)
    }

    /// GTH state reduction on the banded transition matrix; the state order
    /// puts the smaller extent inside so the bandwidth is minimal.
    fn gth(&self) -> Vec<f64> {
        let (nh, nl) = (self.nh, self.nl);
        let by_rows = nl <= nh;
        let inner = if by_rows { nl + 1 } else { nh + 1 };
        let n = (nh + 1) * (nl + 1);
        let index = |i: usize, j: usize| {
            if by_rows {
                i * (nl + 1) + j
            } else {
                j * (nh + 1) + i
            }
        };
        let bw = inner + 1;
        let width = 2 * bw + 1;
        let mut band = vec![0.0f64; n * width];
        let at = |r: usize, c: usize| r * width + (c + bw - r);
        for i in 0..=nh {
            for j in 0..=nl {
                let r = region_index(i, j);
                let s = index(i, j);
                for (k, &(di, dj)) in MOVES.iter().enumerate() {
                    let (ti, tj) = (i as i64 + di, j as i64 + dj);
                    if self.inside(ti, tj) && self.prob[r][k] > 0.0 {
                        band[at(s, index(ti as usize, tj as usize))] += self.prob[r][k];
                    }
                }
            }
        }
        // Eliminate states from last to first; `out[m]` keeps the total
        // probability from state m to lower-numbered states.
        let mut out = vec![0.0f64; n];
        for m in (1..n).rev() {
            let lo = m.saturating_sub(bw);
            let s: f64 = (lo..m).map(|c| band[at(m, c)]).sum();
            out[m] = s;
            if s <= 0.0 {
                continue;
            }
            for r in lo..m {
                let prm = band[at(r, m)];
                if prm == 0.0 {
                    continue;
                }
                let f = prm / s;
                for c in lo..m {
                    let pmc = band[at(m, c)];
                    if pmc != 0.0 && r != c {
                        band[at(r, c)] += f * pmc;
                    }
                }
            }
        }
        let mut pi = vec![0.0f64; n];
        pi[0] = 1.0;
        for m in 1..n {
            let lo = m.saturating_sub(bw);
            let inflow: f64 = (lo..m).map(|r| pi[r] * band[at(r, m)]).sum();
            pi[m] = if out[m] > 0.0 { inflow / out[m] } else { 0.0 };
        }
        normalize(&mut pi);
        let mut values = vec![0.0; n];
        for i in 0..=nh {
            for j in 0..=nl {
                values[i * (nl + 1) + j] = pi[index(i, j)];
            }
        }
        values
    }
}

fn normalize(x: &mut [f64]) {
    let s: f64 = x.iter().sum();
    if s > 0.0 {
        for v in x.iter_mut() {
            *v /= s;
        }
    }
}

/// Smallest value treated as usable by the tail fit.
pub const FIT_FLOOR: f64 = 1e3 * f64::MIN_POSITIVE;

/// Fits `value ~ constant * n^power * rate^n` along a grid sequence.
///
/// `window` defaults to all usable indices; indices beyond 80 % of the
/// extent are never used.
pub fn tail_fit(
    grid: &StationaryGrid,
    direction: Direction,
    fixed: FixedIndex,
    assumed_power: f64,
    window: Option<(usize, usize)>,
) -> Result<FitResult> {
    let seq = grid.sequence(direction, fixed)?;
    fit_sequence(&seq, assumed_power, window)
}

pub fn fit_sequence(seq: &[f64], assumed_power: f64, window: Option<(usize, usize)>) -> Result<FitResult> {
    const NEEDED: usize = 20;
    let extent = seq.len().saturating_sub(1);
    let edge = (0.8 * extent as f64).floor() as usize;
    let (lo, hi) = window.unwrap_or((1, edge));
    let hi = hi.min(edge);
    // Power fits need n >= 1.
    let lo = if assumed_power != 0.0 { lo.max(1) } else { lo };
    let usable: Vec<usize> = (lo..=hi)
        .filter(|&n| n < seq.len() && seq[n] > FIT_FLOOR)
        .collect();
    if usable.len() < NEEDED || lo > hi {
        return Err(Error::WindowTooSmall {
            usable: usable.len(),
            needed: NEEDED,
        });
    }
    let (lo, hi) = (usable[0], *usable.last().unwrap());
    let mut ratios: Vec<f64> = (lo..hi)
        .filter(|&n| seq[n] > FIT_FLOOR && seq[n + 1] > FIT_FLOOR)
        .map(|n| {
            let corr = if assumed_power == 0.0 {
                1.0
            } else {
                (n as f64 / (n + 1) as f64).powf(assumed_power)
            };
            seq[n + 1] / seq[n] * corr
        })
        .collect();
    let rate = median(&mut ratios);
    let model_ln = |n: usize| assumed_power * (n as f64).ln() + (n as f64) * rate.ln();
    let mut consts: Vec<f64> = usable
        .iter()
        .map(|&n| (seq[n].ln() - model_ln(n)).exp())
        .collect();
    let constant = median(&mut consts);
    let max_deviation = usable
        .iter()
        .map(|&n| ((seq[n].ln() - model_ln(n)).exp() / constant - 1.0).abs())
        .fold(0.0f64, f64::max);
    let power = if lo >= 1 {
        let (a, b) = (lo as f64, hi as f64);
        ((seq[hi].ln() - b * rate.ln()) - (seq[lo].ln() - a * rate.ln())) / (b / a).ln()
    } else {
        f64::NAN
    };
    Ok(FitResult {
        rate,
        power,
        assumed_power,
        constant,
        window: (lo, hi),
        max_deviation,
    })
}

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(|a, b| a.total_cmp(b));
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference() -> ModelParams {
        ModelParams::new(0.1, 0.1, 0.45, 0.35).unwrap()
    }

    #[test]
    fn from_values_checks_shape() {
        assert!(StationaryGrid::from_values(2, 2, vec![0.0; 8]).is_err());
        assert!(StationaryGrid::from_values(2, 2, vec![-0.1; 9]).is_err());
        let g = StationaryGrid::from_values(1, 2, (0..6).map(f64::from).collect()).unwrap();
        assert_eq!(g.get(1, 0), 3.0);
        assert_eq!(g.row(1), vec![3.0, 4.0, 5.0]);
        assert_eq!(g.column(2), vec![2.0, 5.0]);
        assert_eq!(g.edge_mass(), 2.0 + 3.0 + 4.0 + 5.0);
    }

    #[test]
    fn direct_and_iterative_agree() {
        let m = reference();
        let d = solve_truncated(&m, 40, 30, SolveMethod::Direct).unwrap();
        let it = solve_truncated(&m, 40, 30, SolveMethod::Iterative).unwrap();
        let gap = d
            .values()
            .iter()
            .zip(it.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(gap < 1e-9, "gap {gap}");
        assert!(d.residual().unwrap() < 1e-12);
        assert!(it.residual().unwrap() < 1e-10);
        assert!((d.total_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn direct_orientation_does_not_matter() {
        let m = reference();
        let a = solve_truncated(&m, 12, 25, SolveMethod::Direct).unwrap();
        let b = solve_truncated(&m, 25, 12, SolveMethod::Direct).unwrap();
        assert!((a.get(0, 0) - b.get(0, 0)).abs() < 1e-6);
        assert!(a.residual().unwrap() < 1e-12 && b.residual().unwrap() < 1e-12);
    }

    #[test]
    fn rejects_bad_requests() {
        let m = reference();
        let un = ModelParams::new(0.25, 0.25, 0.25, 0.25).unwrap();
        assert!(matches!(
            solve_truncated(&un, 10, 10, SolveMethod::Direct),
            Err(Error::Unstable { .. })
        ));
        assert!(matches!(
            solve_truncated(&m, 300, 300, SolveMethod::Direct),
            Err(Error::TooLarge { .. })
        ));
        assert!(matches!(
            solve_truncated(&m, 1, 10, SolveMethod::Direct),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn budget_exceeded_returns_best_effort_grid() {
        let m = reference();
        let mut o = SolverOptions::new(SolveMethod::Iterative);
        o.max_sweeps = 3;
        match solve_truncated_with(&m, 20, 20, &o) {
            Err(Error::BudgetExceeded { sweeps, grid, .. }) => {
                assert_eq!(sweeps, 3);
                assert!(!grid.converged());
                assert!((grid.total_mass() - 1.0).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn threads_do_not_change_the_result() {
        let m = reference();
        let mut o = SolverOptions::new(SolveMethod::Iterative);
        o.threads = 1;
        let a = solve_truncated_with(&m, 30, 30, &o).unwrap();
        o.threads = 3;
        let b = solve_truncated_with(&m, 30, 30, &o).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn csv_and_binary_round_trip() {
        let m = reference();
        let g = solve_truncated(&m, 6, 5, SolveMethod::Direct).unwrap();
        let mut buf = Vec::new();
        g.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("i,j,pi\n0,0,"));
        let back = StationaryGrid::read_csv(&buf[..]).unwrap();
        assert_eq!(back.values(), g.values());

        let mut bin = Vec::new();
        g.write_binary(&mut bin).unwrap();
        assert_eq!(bin.len(), 8 + 8 * 42);
        assert_eq!(&bin[..4], &6u32.to_le_bytes());
        let back = StationaryGrid::read_binary(&bin[..]).unwrap();
        assert_eq!(back.values(), g.values());
    }

    #[test]
    fn fit_on_exact_geometric() {
        let seq: Vec<f64> = (0..100).map(|j| 0.3 * 0.6f64.powi(j)).collect();
        let f = fit_sequence(&seq, 0.0, Some((10, 60))).unwrap();
        assert!((f.rate - 0.6).abs() < 1e-13);
        assert!((f.constant - 0.3).abs() < 1e-12);
        assert!(f.max_deviation < 1e-12);
        assert!(f.power.abs() < 1e-10);
    }

    #[test]
    fn fit_with_power() {
        let seq: Vec<f64> = (0..200)
            .map(|j| 2.0 * (j as f64).powf(-1.5) * 0.8f64.powi(j))
            .collect();
        let f = fit_sequence(&seq, -1.5, Some((20, 120))).unwrap();
        assert!((f.rate - 0.8).abs() < 1e-12);
        assert!((f.constant - 2.0).abs() < 1e-10);
        assert!((f.power + 1.5).abs() < 1e-9);
    }

    #[test]
    fn fit_rejects_empty_rows() {
        let g = StationaryGrid::from_values(10, 100, vec![0.0; 11 * 101]).unwrap();
        assert!(matches!(
            tail_fit(&g, Direction::LowPriority, FixedIndex::Index(0), 0.0, None),
            Err(Error::WindowTooSmall { .. })
        ));
    }
}
