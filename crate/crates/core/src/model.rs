//! Model parameters, the region-dependent one-step transition tables and
//! balance-equation residuals.
//!
//! The chain lives on the quarter plane: `i` counts high-priority customers,
//! `j` low-priority ones. Arrivals are Bernoulli(`p`) and Bernoulli(`q`) per
//! slot, service completions are geometric with parameters `mu_h`, `mu_l`,
//! and an arrival may depart in the slot it arrived (early arrival system).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::oracle::StationaryGrid;

/// Absolute tolerance on `p + q + mu_h + mu_l = 1`.
pub const SIMPLEX_TOL: f64 = 1e-12;

/// Validated model parameters with their derived rates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    p: f64,
    q: f64,
    mu_h: f64,
    mu_l: f64,
}

impl ModelParams {
    /// Validates a simplex point. Instability is recorded, not rejected.
    pub fn new(p: f64, q: f64, mu_h: f64, mu_l: f64) -> Result<Self> {
        for (name, v) in [("p", p), ("q", q), ("mu_h", mu_h), ("mu_l", mu_l)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::SimplexViolation(format!(
                    "{name} = {v} is not strictly inside (0, 1)"
                )));
            }
        }
        let sum = p + q + mu_h + mu_l;
        if (sum - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::SimplexViolation(format!(
                "p + q + mu_h + mu_l = {sum} (must equal 1)"
            )));
        }
        Ok(Self { p, q, mu_h, mu_l })
    }

    pub fn p(&self) -> f64 {
        self.p
    }
    pub fn q(&self) -> f64 {
        self.q
    }
    pub fn mu_h(&self) -> f64 {
        self.mu_h
    }
    pub fn mu_l(&self) -> f64 {
        self.mu_l
    }
    pub fn pbar(&self) -> f64 {
        1.0 - self.p
    }
    pub fn qbar(&self) -> f64 {
        1.0 - self.q
    }
    pub fn mubar_h(&self) -> f64 {
        1.0 - self.mu_h
    }
    pub fn mubar_l(&self) -> f64 {
        1.0 - self.mu_l
    }
    pub fn rho_h(&self) -> f64 {
        self.p / self.mu_h
    }
    pub fn rho_l(&self) -> f64 {
        self.q / self.mu_l
    }
    pub fn rho(&self) -> f64 {
        self.rho_h() + self.rho_l()
    }

    pub fn is_stable(&self) -> bool {
        self.rho() < 1.0
    }

    /// Low-direction asymptotics are only characterised for `mu_l <= mu_h`.
    pub fn asymptotics_supported(&self) -> bool {
        self.mu_l <= self.mu_h
    }

    pub fn require_stable(&self) -> Result<()> {
        if self.is_stable() {
            Ok(())
        } else {
            Err(Error::Unstable { rho: self.rho() })
        }
    }

    pub fn require_supported(&self) -> Result<()> {
        self.require_stable()?;
        if self.asymptotics_supported() {
            Ok(())
        } else {
            Err(Error::UnsupportedRegime {
                mu_l: self.mu_l,
                mu_h: self.mu_h,
            })
        }
    }

    /// Parses the flat `key = value` config format (`p`, `q`, `mu_h`, `mu_l`).
    ///
    /// Blank lines and `#` comments are ignored; `:` is accepted as separator.
    pub fn from_config_str(text: &str) -> Result<Self> {
        let mut vals: [Option<f64>; 4] = [None; 4];
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .or_else(|| line.split_once(':'))
                .ok_or_else(|| {
                    Error::InvalidConfig(format!("line {}: expected `key = value`", lineno + 1))
                })?;
            let slot = match key.trim() {
                "p" => 0,
                "q" => 1,
                "mu_h" => 2,
                "mu_l" => 3,
                other => {
                    return Err(Error::InvalidConfig(format!(
                        "line {}: unknown key `{other}`",
                        lineno + 1
                    )))
                }
            };
            let v = f64::from_str(value.trim()).map_err(|e| {
                Error::InvalidConfig(format!("line {}: {e}", lineno + 1))
            })?;
            if vals[slot].replace(v).is_some() {
                return Err(Error::InvalidConfig(format!(
                    "line {}: duplicate key `{}`",
                    lineno + 1,
                    key.trim()
                )));
            }
        }
        let names = ["p", "q", "mu_h", "mu_l"];
        let mut out = [0.0; 4];
        for k in 0..4 {
            out[k] = vals[k]
                .ok_or_else(|| Error::InvalidConfig(format!("missing key `{}`", names[k])))?;
        }
        Self::new(out[0], out[1], out[2], out[3])
    }

    /// Inverse of [`ModelParams::from_config_str`]; values round-trip exactly.
    pub fn to_config_string(&self) -> String {
        format!(
            "p = {:?}\nq = {:?}\nmu_h = {:?}\nmu_l = {:?}\n",
            self.p, self.q, self.mu_h, self.mu_l
        )
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(p={}, q={}, mu_h={}, mu_l={})",
            self.p, self.q, self.mu_h, self.mu_l
        )
    }
}

/// The four parts of the state space with distinct one-step behaviour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    /// State (0,0).
    Origin,
    /// `i >= 1`, `j = 0`.
    HBoundary,
    /// `i = 0`, `j >= 1`.
    VBoundary,
    /// `i >= 1`, `j >= 1`.
    Interior,
}

impl Region {
    pub const ALL: [Region; 4] = [
        Region::Origin,
        Region::HBoundary,
        Region::VBoundary,
        Region::Interior,
    ];

    pub fn of(i: usize, j: usize) -> Region {
        match (i, j) {
            (0, 0) => Region::Origin,
            (_, 0) => Region::HBoundary,
            (0, _) => Region::VBoundary,
            _ => Region::Interior,
        }
    }

    /// A state inside the region away from the other boundaries.
    pub fn representative(self) -> (usize, usize) {
        match self {
            Region::Origin => (0, 0),
            Region::HBoundary => (3, 0),
            Region::VBoundary => (0, 3),
            Region::Interior => (3, 3),
        }
    }
}

/// One-step displacement probabilities out of a region.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionTable {
    pub region: Region,
    /// `(di, dj, probability)`, zero entries omitted.
    pub entries: Vec<(i8, i8, f64)>,
}

impl TransitionTable {
    pub fn prob(&self, di: i8, dj: i8) -> f64 {
        self.entries
            .iter()
            .find(|e| e.0 == di && e.1 == dj)
            .map_or(0.0, |e| e.2)
    }

    pub fn total(&self) -> f64 {
        self.entries.iter().map(|e| e.2).sum()
    }
}

pub fn transition_table(params: &ModelParams, region: Region) -> TransitionTable {
    let (p, q, mh, ml) = (params.p, params.q, params.mu_h, params.mu_l);
    let (pb, qb, mhb, mlb) = (1.0 - p, 1.0 - q, 1.0 - mh, 1.0 - ml);

    // Moves shared by every region: a high arrival that is not served.
    let up = p * qb * mhb;
    let up_diag = p * q * mhb;
    let entries = match region {
        Region::Interior | Region::HBoundary => vec![
            (1, 0, up),
            (1, 1, up_diag),
            (0, 1, p * q * mh + pb * q * mhb),
            (-1, 1, pb * q * mh),
            (-1, 0, pb * qb * mh),
            (0, 0, pb * qb * mhb + p * qb * mh),
        ],
        Region::VBoundary => vec![
            (1, 0, up),
            (1, 1, up_diag),
            (0, 1, p * q * mh + pb * q * mlb),
            (0, 0, pb * qb * mlb + p * qb * mh + pb * q * ml),
            (0, -1, pb * qb * ml),
        ],
        Region::Origin => vec![
            (1, 0, up),
            (1, 1, up_diag),
            (0, 1, p * q * mh + pb * q * mlb),
            (0, 0, pb * qb + p * qb * mh + pb * q * ml),
        ],
    };
    TransitionTable { region, entries }
}

/// Maximum violation of the global balance equations over the cells whose
/// whole stencil lies inside the grid (`i < nh`, `j < nl`).
pub fn balance_residual(grid: &StationaryGrid, params: &ModelParams) -> Result<f64> {
    let (nh, nl) = (grid.nh(), grid.nl());
    if nh < 2 || nl < 2 {
        return Err(Error::DimensionMismatch { nh: nh + 1, nl: nl + 1 });
    }
    let origin = transition_table(params, Region::Origin);
    let hb = transition_table(params, Region::HBoundary);
    let vb = transition_table(params, Region::VBoundary);
    let it = transition_table(params, Region::Interior);
    let pi = |i: usize, j: usize| grid.get(i, j);

    let mut worst = 0.0f64;
    for i in 0..nh {
        for j in 0..nl {
            let r = match (i, j) {
                (0, 0) => {
                    (1.0 - origin.prob(0, 0)) * pi(0, 0)
                        - hb.prob(-1, 0) * pi(1, 0)
                        - vb.prob(0, -1) * pi(0, 1)
                }
                (i, 0) => {
                    (1.0 - hb.prob(0, 0)) * pi(i, 0)
                        - hb.prob(1, 0) * pi(i - 1, 0)
                        - hb.prob(-1, 0) * pi(i + 1, 0)
                }
                (0, j) => {
                    (1.0 - vb.prob(0, 0)) * pi(0, j)
                        - vb.prob(0, 1) * pi(0, j - 1)
                        - vb.prob(0, -1) * pi(0, j + 1)
                        - it.prob(-1, 1) * pi(1, j - 1)
                        - it.prob(-1, 0) * pi(1, j)
                }
                (i, j) => {
                    (1.0 - it.prob(0, 0)) * pi(i, j)
                        - it.prob(1, 0) * pi(i - 1, j)
                        - it.prob(-1, 0) * pi(i + 1, j)
                        - it.prob(-1, 1) * pi(i + 1, j - 1)
                        - it.prob(0, 1) * pi(i, j - 1)
                        - it.prob(1, 1) * pi(i - 1, j - 1)
                }
            };
            worst = worst.max(r.abs());
        }
    }
    Ok(worst)
}
