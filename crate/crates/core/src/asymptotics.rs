//! Regime classification and the decay rates, powers and prefactors of every
//! tail: boundary, joint rows, joint columns and both marginals.
//!
//! Every record reads `pi ~ constant * n^power * decay_rate^n`; gamma-function
//! factors from the singularity transfer are folded into `constant`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{boundary_gf, BoundaryGF};
use crate::kernel::{kernel_coeffs, kernel_roots, spectral_data};
use crate::model::{transition_table, ModelParams, Region};

/// Default half-width of the boundary case, relative to `max(1, |F(0)|)`.
pub const DEFAULT_ZERO_TOL: f64 = 1e-10;

#[inline]
fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `j -> infinity`.
    LowPriority,
    /// `i -> infinity`.
    HighPriority,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixedIndex {
    Index(usize),
    Marginal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeTag {
    /// `F(y0) > 0`: simple pole at `1/eta1`.
    ExactGeometric,
    /// `F(y0) = 0`: the pole sits on the branch point.
    GeometricHalfPower,
    /// `F(y0) < 0`: the branch point alone.
    GeometricThreeHalvesPower,
}

impl RegimeTag {
    pub fn power(self) -> f64 {
        match self {
            RegimeTag::ExactGeometric => 0.0,
            RegimeTag::GeometricHalfPower => -0.5,
            RegimeTag::GeometricThreeHalvesPower => -1.5,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RegimeTag::ExactGeometric => "exact_geometric",
            RegimeTag::GeometricHalfPower => "geometric_half_power",
            RegimeTag::GeometricThreeHalvesPower => "geometric_three_halves_power",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Regime {
    pub tag: RegimeTag,
    pub f_at_y0: f64,
    /// `1/eta1` in the first two cases, `y0` in the third.
    pub dominant_singularity: f64,
    pub y0: f64,
    pub inv_eta1: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailAsymptotics {
    pub direction: Direction,
    pub fixed: FixedIndex,
    pub decay_rate: f64,
    pub power: f64,
    pub constant: f64,
}

impl TailAsymptotics {
    /// `constant * n^power * decay_rate^n`, evaluated in log space.
    pub fn predict(&self, n: usize) -> f64 {
        let n = n as f64;
        let lp = if self.power == 0.0 { 0.0 } else { self.power * n.ln() };
        (self.constant.ln() + lp + n * self.decay_rate.ln()).exp()
    }
}

/// Empirical tail parameters from a numeric sequence.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub rate: f64,
    /// Two-point log-slope estimate of the power.
    pub power: f64,
    /// Power assumed when correcting ratios and computing `constant`.
    pub assumed_power: f64,
    pub constant: f64,
    pub window: (usize, usize),
    pub max_deviation: f64,
}

pub fn classify_regime(params: &ModelParams, zero_tol: f64) -> Result<Regime> {
    let g = boundary_gf(params)?;
    classify_with(&g, zero_tol)
}

fn classify_with(g: &BoundaryGF, zero_tol: f64) -> Result<Regime> {
    let y0 = g.spectral.y0;
    let inv_eta1 = 1.0 / g.eta1;
    let f_at_y0 = g.big_f_real(y0);
    let scale = g.f_big[0].abs().max(1.0);
    let tag = if f_at_y0.abs() <= zero_tol * scale {
        RegimeTag::GeometricHalfPower
    } else if f_at_y0 > 0.0 {
        RegimeTag::ExactGeometric
    } else {
        RegimeTag::GeometricThreeHalvesPower
    };
    let slack = 1e-6 * y0;
    let ordered = match tag {
        RegimeTag::GeometricHalfPower => (inv_eta1 - y0).abs() <= slack,
        _ => 1.0 < inv_eta1 && inv_eta1 < y0 + slack,
    };
    if !ordered {
        return Err(Error::Inconsistent(format!(
            "singularity ordering violated: 1/eta1 = {inv_eta1}, y0 = {y0}, F(y0) = {f_at_y0:e}"
        )));
    }
    let dominant_singularity = match tag {
        RegimeTag::GeometricThreeHalvesPower => y0,
        _ => inv_eta1,
    };
    Ok(Regime {
        tag,
        f_at_y0,
        dominant_singularity,
        y0,
        inv_eta1,
    })
}

/// `b2(y) = pbar qbar mu_l + (p_{00} - 1) y + p_{01} y^2` from the vertical-boundary table.
fn b2(m: &ModelParams, y: f64) -> f64 {
    let t = transition_table(m, Region::VBoundary);
    m.pbar() * m.qbar() * m.mu_l() + (t.prob(0, 0) - 1.0) * y + t.prob(0, 1) * y * y
}

struct LowData {
    g: BoundaryGF,
    regime: Regime,
    rate: f64,
    power: f64,
    c_boundary: f64,
}

fn low_data(params: &ModelParams) -> Result<LowData> {
    let g = boundary_gf(params)?;
    let regime = classify_with(&g, DEFAULT_ZERO_TOL)?;
    let (q, qb) = (params.q(), params.qbar());
    let s = g.spectral;
    let branch_factor = (s.y0 * (s.y1 - s.y0)).sqrt();
    let (rate, c_boundary) = match regime.tag {
        RegimeTag::ExactGeometric => {
            let z = 1.0 / g.eta1;
            (g.eta1, 2.0 * g.pf_a * g.big_f_real(z) / (q * z + qb))
        }
        RegimeTag::GeometricHalfPower => {
            let y0 = s.y0;
            let c = g.pf_a * (params.pbar() - params.mu_h()) * q * y0 * branch_factor
                / ((q * y0 + qb) * PI.sqrt());
            (1.0 / y0, c)
        }
        RegimeTag::GeometricThreeHalvesPower => {
            let y0 = s.y0;
            let u = q * y0 + qb;
            let bracket = g.pf_a / (u * (1.0 - g.eta1 * y0)) + g.pf_b / (u * (1.0 - g.eta2 * y0));
            let local = bracket * (params.mu_h() - params.pbar()) * q / 2.0 * branch_factor;
            (1.0 / y0, y0 * local / PI.sqrt())
        }
    };
    if !(c_boundary > 0.0) || !(rate > 0.0 && rate < 1.0) {
        return Err(Error::Inconsistent(format!(
            "non-physical boundary tail: rate {rate}, constant {c_boundary}"
        )));
    }
    Ok(LowData {
        g,
        regime,
        rate,
        power: regime.tag.power(),
        c_boundary,
    })
}

pub fn low_boundary_asym(params: &ModelParams) -> Result<TailAsymptotics> {
    let d = low_data(params)?;
    Ok(TailAsymptotics {
        direction: Direction::LowPriority,
        fixed: FixedIndex::Index(0),
        decay_rate: d.rate,
        power: d.power,
        constant: d.c_boundary,
    })
}

/// Joint-row prefactor for fixed `i >= 1`.
///
/// With `ys` the dominant singularity, the leading coefficient is
/// `A = -b2(ys) / (ys c(ys)) * C_boundary`, carried geometrically by `1/x1(ys)`;
/// at the bare branch point an affine term `B (i - 1)` joins it.
fn joint_constant(params: &ModelParams, d: &LowData, i: usize) -> Result<f64> {
    let ys = d.regime.dominant_singularity;
    let (_, b, c) = kernel_coeffs(params, re(ys));
    let c = c.re;
    let k = (i - 1) as i32;
    let base = -b2(params, ys) / (ys * c);
    let constant = match d.regime.tag {
        RegimeTag::ExactGeometric => {
            // x1 at the pole, with sqrt(Delta(1/eta1)) = eta1 F(1/eta1).
            let (a, b, _) = kernel_coeffs(params, re(ys));
            let sq = d.g.eta1 * d.g.big_f_real(ys);
            let x1 = (-b.re + sq) / (2.0 * a.re);
            let a1 = base * d.c_boundary;
            a1 * (1.0 / x1).powi(k)
        }
        RegimeTag::GeometricHalfPower => {
            let kp = kernel_roots(params, re(ys))?;
            let x = 0.5 * (kp.x0.re + kp.x1.re);
            base * d.c_boundary * (1.0 / x).powi(k)
        }
        RegimeTag::GeometricThreeHalvesPower => {
            let (a, _, _) = kernel_coeffs(params, re(ys));
            let x0 = -b.re / (2.0 * a.re);
            let h2 = ys * a.re * x0 + b2(params, ys);
            let a3 = base;
            let b3 = -h2 / (ys * c);
            (a3 + b3 * k as f64) * (1.0 / x0).powi(k) * d.c_boundary
        }
    };
    Ok(constant)
}

pub fn low_joint_asym(params: &ModelParams, i: usize) -> Result<TailAsymptotics> {
    if i == 0 {
        return low_boundary_asym(params);
    }
    let d = low_data(params)?;
    Ok(TailAsymptotics {
        direction: Direction::LowPriority,
        fixed: FixedIndex::Index(i),
        decay_rate: d.rate,
        power: d.power,
        constant: joint_constant(params, &d, i)?,
    })
}

/// The high-direction constant `C`, in its short closed form.
pub fn high_constant(params: &ModelParams) -> Result<f64> {
    let r0 = spectral_data(params)?.r0;
    let m = params;
    let num = m.pbar() * m.mu_h() * r0 * r0
        + (m.p() * m.mu_h() + m.pbar() * m.mubar_h()) * r0
        + m.p() * m.mubar_h();
    let den = m.p() * m.mubar_h() - m.pbar() * m.mu_h() * r0 * r0;
    Ok(m.q() / m.qbar() * num / den)
}

/// `C` from the limit of the row recursion as `x -> x1(0)`.
pub fn high_constant_limit(params: &ModelParams) -> Result<f64> {
    let s = spectral_data(params)?;
    let m = params;
    let (x0, x1) = (s.x0_at0, s.x1_at0);
    Ok(m.q() * (m.p() * x1 + m.pbar()) * (m.mubar_h() * x1 + m.mu_h())
        / (m.p() * m.qbar() * m.mubar_h() * (x1 - x0) * x1))
}

/// `pi_{i,j} ~ (C^j pi00 / j!) i^j r0^i` as `i -> infinity`.
pub fn high_joint_asym(params: &ModelParams, j: usize) -> Result<TailAsymptotics> {
    params.require_stable()?;
    let s = spectral_data(params)?;
    let c = high_constant(params)?;
    let pi00 = (1.0 - params.rho()) / (params.pbar() * params.qbar());
    let log_fact: f64 = (1..=j).map(|k| (k as f64).ln()).sum();
    let constant = (j as f64 * c.ln() + pi00.ln() - log_fact).exp();
    Ok(TailAsymptotics {
        direction: Direction::HighPriority,
        fixed: FixedIndex::Index(j),
        decay_rate: s.r0,
        power: j as f64,
        constant,
    })
}

pub fn marginal_asym(params: &ModelParams, direction: Direction) -> Result<TailAsymptotics> {
    match direction {
        Direction::HighPriority => {
            params.require_stable()?;
            let s = spectral_data(params)?;
            Ok(TailAsymptotics {
                direction,
                fixed: FixedIndex::Marginal,
                decay_rate: s.w,
                power: 0.0,
                constant: (1.0 - params.rho_h()) / params.pbar(),
            })
        }
        Direction::LowPriority => {
            let d = low_data(params)?;
            let m = params;
            let constant = m.pbar() * m.mu_l() * (m.qbar() / m.q() * d.rate + 1.0) * d.c_boundary;
            Ok(TailAsymptotics {
                direction,
                fixed: FixedIndex::Marginal,
                decay_rate: d.rate,
                power: d.power,
                constant,
            })
        }
    }
}

/// Residue of `psi0` at `1/eta1` by extrapolating `(1 - eta1 y) psi0(y)`
/// from `y = (1 - h)/eta1`, `h = 1e-4 .. 1e-8`, to `h = 0`.
pub fn pole_residue_by_limit(params: &ModelParams) -> Result<f64> {
    let g = boundary_gf(params)?;
    let hs: Vec<f64> = (4..=8).map(|k| 10f64.powi(-k)).collect();
    let vals = hs
        .iter()
        .map(|&h| Ok(h * g.psi0_root(re((1.0 - h) / g.eta1))?.re))
        .collect::<Result<Vec<f64>>>()?;
    Ok(neville_at_zero(&hs, &vals))
}

/// Polynomial extrapolation of `(x_k, v_k)` to `x = 0`.
fn neville_at_zero(xs: &[f64], vs: &[f64]) -> f64 {
    let mut p = vs.to_vec();
    let n = xs.len();
    for level in 1..n {
        for k in 0..n - level {
            let (xa, xb) = (xs[k], xs[k + level]);
            p[k] = (xb * p[k] - xa * p[k + 1]) / (xb - xa);
        }
    }
    p[0]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanParam {
    /// Vary `q`, keeping `p`, `mu_h` and setting `mu_l = 1 - p - q - mu_h`.
    Q,
    /// Vary `p`, keeping `q`, `mu_h` and setting `mu_l = 1 - p - q - mu_h`.
    P,
}

impl ScanParam {
    pub fn name(self) -> &'static str {
        match self {
            ScanParam::Q => "q",
            ScanParam::P => "p",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanPath {
    pub param: ScanParam,
    pub lo: f64,
    pub hi: f64,
}

impl ScanPath {
    pub fn point(&self, anchor: &ModelParams, v: f64) -> Result<ModelParams> {
        let (p, q) = match self.param {
            ScanParam::Q => (anchor.p(), v),
            ScanParam::P => (v, anchor.q()),
        };
        let mu_l = 1.0 - p - q - anchor.mu_h();
        let fail = |reason: String| Error::InstabilityOnPath {
            parameter: self.param.name(),
            value: v,
            reason,
        };
        let m = ModelParams::new(p, q, anchor.mu_h(), mu_l).map_err(|e| fail(e.to_string()))?;
        m.require_supported().map_err(|e| fail(e.to_string()))?;
        Ok(m)
    }
}

pub const CRITICAL_TOL: f64 = 1e-12;
pub const CRITICAL_MAX_ITER: usize = 200;

/// Bisects `F(y0)` along `scan` to a boundary-case parameter set.
pub fn find_critical_params(anchor: &ModelParams, scan: &ScanPath) -> Result<ModelParams> {
    let f = |v: f64| -> Result<(ModelParams, f64)> {
        let m = scan.point(anchor, v)?;
        let g = boundary_gf(&m)?;
        Ok((m, g.big_f_real(g.spectral.y0)))
    };
    let (mut lo, mut hi) = (scan.lo.min(scan.hi), scan.lo.max(scan.hi));
    let (m_lo, f_lo) = f(lo)?;
    let (m_hi, f_hi) = f(hi)?;
    if f_lo.abs() < CRITICAL_TOL {
        return Ok(m_lo);
    }
    if f_hi.abs() < CRITICAL_TOL {
        return Ok(m_hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoBracket { lo: f_lo, hi: f_hi });
    }
    let lo_sign = f_lo.signum();
    let mut best = (m_lo, f_lo);
    for _ in 0..CRITICAL_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        let (m, fm) = f(mid)?;
        if fm.abs() < best.1.abs() {
            best = (m, fm);
        }
        if fm.abs() < CRITICAL_TOL || mid == lo || mid == hi {
            break;
        }
        if fm.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(best.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference() -> ModelParams {
        ModelParams::new(0.1, 0.1, 0.45, 0.35).unwrap()
    }

    fn critical() -> ModelParams {
        let scan = ScanPath {
            param: ScanParam::Q,
            lo: 0.05,
            hi: 0.1,
        };
        find_critical_params(&reference(), &scan).unwrap()
    }

    fn three_halves() -> ModelParams {
        ModelParams::new(0.1, 0.03, 0.45, 0.42).unwrap()
    }

    #[test]
    fn reference_is_exact_geometric() {
        let r = classify_regime(&reference(), DEFAULT_ZERO_TOL).unwrap();
        assert_eq!(r.tag, RegimeTag::ExactGeometric);
        assert!((r.f_at_y0 - 0.337_827_101_104_77).abs() < 1e-12);
        assert!((r.dominant_singularity - 2.704_807_279_527_764_2).abs() < 1e-12);
        assert!(r.dominant_singularity < r.y0);
    }

    #[test]
    fn unsupported_and_unstable_are_rejected() {
        let m = ModelParams::new(0.1, 0.1, 0.35, 0.45).unwrap();
        assert!(matches!(
            classify_regime(&m, DEFAULT_ZERO_TOL),
            Err(Error::UnsupportedRegime { .. })
        ));
        let u = ModelParams::new(0.25, 0.25, 0.25, 0.25).unwrap();
        assert!(matches!(
            classify_regime(&u, DEFAULT_ZERO_TOL),
            Err(Error::Unstable { .. })
        ));
    }

    #[test]
    fn boundary_constants_in_each_regime() {
        let a = low_boundary_asym(&reference()).unwrap();
        assert!((a.decay_rate - 0.369_712_107_612_558_35).abs() < 1e-14);
        assert_eq!(a.power, 0.0);
        assert!((a.constant - 0.312_183_542_006_067_3).abs() < 1e-12);

        let c = critical();
        let b = low_boundary_asym(&c).unwrap();
        assert_eq!(b.power, -0.5);
        assert!((b.decay_rate - 1.0 / 3.875_091_364_903_099).abs() < 1e-9);
        assert!((b.constant - 0.491_032_927_751_385_2).abs() < 1e-7);

        let t = low_boundary_asym(&three_halves()).unwrap();
        assert_eq!(t.power, -1.5);
        assert!((t.constant - 1.82499).abs() < 1e-4);
    }

    #[test]
    fn joint_constants_reference() {
        let m = reference();
        let want = [
            0.083_164_544_559_225_41,
            0.022_154_728_040_112_336,
            0.005_901_937_864_660_524,
        ];
        for (k, w) in want.iter().enumerate() {
            let c = low_joint_asym(&m, k + 1).unwrap().constant;
            assert!((c - w).abs() < 1e-12 * w.max(1.0), "i = {}: {c}", k + 1);
        }
    }

    #[test]
    fn joint_constant_matches_direct_closed_form() {
        // C_i = [1 - (p mu_h + pbar mubar_l) u - pbar mu_l (q + qbar eta)] / (pbar mu_h u)
        //       * [p mubar_h / (pbar mu_h - pbar mu_l (1 - eta))]^(i-1) * C_boundary
        for m in [reference(), critical()] {
            let g = boundary_gf(&m).unwrap();
            let reg = classify_regime(&m, DEFAULT_ZERO_TOL).unwrap();
            let eta = 1.0 / reg.dominant_singularity;
            let u = m.q() / eta + m.qbar();
            let lead = (1.0
                - (m.p() * m.mu_h() + m.pbar() * m.mubar_l()) * u
                - m.pbar() * m.mu_l() * (m.q() + m.qbar() * eta))
                / (m.pbar() * m.mu_h() * u);
            let s = m.p() * m.mubar_h() / (m.pbar() * m.mu_h() - m.pbar() * m.mu_l() * (1.0 - eta));
            let cb = low_boundary_asym(&m).unwrap().constant;
            for i in 1..=5 {
                let want = lead * s.powi(i as i32 - 1) * cb;
                let got = low_joint_asym(&m, i).unwrap().constant;
                assert!((got - want).abs() < 1e-6 * want, "i = {i}: {got} vs {want}");
            }
            let _ = g;
        }
    }

    #[test]
    fn joint_dependence_on_i() {
        let m = reference();
        let c: Vec<f64> = (1..=6).map(|i| low_joint_asym(&m, i).unwrap().constant).collect();
        let r0 = c[1] / c[0];
        for w in c.windows(2) {
            assert!((w[1] / w[0] - r0).abs() < 1e-12);
        }
        let t = three_halves();
        let c: Vec<f64> = (1..=4).map(|i| low_joint_asym(&t, i).unwrap().constant).collect();
        let (r1, r2) = (c[1] / c[0], c[2] / c[1]);
        assert!((r1 - r2).abs() > 1e-3 * r1.abs());
        assert!(c.iter().all(|v| *v > 0.0));
    }

    #[test]
    fn high_constant_both_forms() {
        let m = reference();
        let a = high_constant(&m).unwrap();
        let b = high_constant_limit(&m).unwrap();
        assert!((a - 0.253_558_750_910_390_6).abs() < 1e-12);
        assert!((a - b).abs() < 1e-10 * a);
        let h = high_joint_asym(&m, 0).unwrap();
        assert!((h.constant - 0.607_485_792_670_977_7).abs() < 1e-14);
        assert!((h.decay_rate - 0.103_969_036_636_337_83).abs() < 1e-14);
        let h2 = high_joint_asym(&m, 2).unwrap();
        assert!((h2.constant - a * a * 0.607_485_792_670_977_7 / 2.0).abs() < 1e-14);
        assert_eq!(h2.power, 2.0);
    }

    #[test]
    fn marginal_constants() {
        let m = reference();
        let h = marginal_asym(&m, Direction::HighPriority).unwrap();
        assert!((h.constant - 0.864_197_530_864_197_5).abs() < 1e-14);
        assert!((h.decay_rate - 0.135_802_469_135_802_5).abs() < 1e-15);
        let l = marginal_asym(&m, Direction::LowPriority).unwrap();
        let cb = 0.312_183_542_006_067_3;
        let want = 0.9 * 0.35 * (9.0 * 0.369_712_107_612_558_35 + 1.0) * cb;
        assert!((l.constant - want).abs() < 1e-12);
    }

    #[test]
    fn residue_by_limit_matches_closed_form() {
        let m = reference();
        let lim = pole_residue_by_limit(&m).unwrap();
        let c = low_boundary_asym(&m).unwrap().constant;
        assert!((lim - c).abs() < 1e-6 * c, "{lim} vs {c}");
    }

    #[test]
    fn critical_search() {
        let c = critical();
        assert!((c.q() - 0.066_993_072_511_620_93).abs() < 1e-9);
        assert!((c.p() + c.q() + c.mu_h() + c.mu_l() - 1.0).abs() < 1e-12);
        let r = classify_regime(&c, DEFAULT_ZERO_TOL).unwrap();
        assert_eq!(r.tag, RegimeTag::GeometricHalfPower);
        assert!(r.f_at_y0.abs() < 1e-12);
        assert!((r.inv_eta1 - r.y0).abs() < 1e-8);
    }

    #[test]
    fn critical_search_errors() {
        let scan = ScanPath {
            param: ScanParam::Q,
            lo: 0.08,
            hi: 0.1,
        };
        assert!(matches!(
            find_critical_params(&reference(), &scan),
            Err(Error::NoBracket { .. })
        ));
        let scan = ScanPath {
            param: ScanParam::Q,
            lo: 0.05,
            hi: 0.3,
        };
        assert!(matches!(
            find_critical_params(&reference(), &scan),
            Err(Error::InstabilityOnPath { .. })
        ));
    }

    #[test]
    fn three_halves_regime() {
        let r = classify_regime(&three_halves(), DEFAULT_ZERO_TOL).unwrap();
        assert_eq!(r.tag, RegimeTag::GeometricThreeHalvesPower);
        assert!(r.f_at_y0 < 0.0);
        assert_eq!(r.dominant_singularity, r.y0);
        assert!(r.inv_eta1 < r.y0);
        assert!((r.y0 - 7.4204).abs() < 1e-3);
    }

    #[test]
    fn predict_is_the_model() {
        let t = TailAsymptotics {
            direction: Direction::LowPriority,
            fixed: FixedIndex::Index(0),
            decay_rate: 0.5,
            power: -1.5,
            constant: 2.0,
        };
        assert!((t.predict(4) - 2.0 * 4f64.powf(-1.5) * 0.0625).abs() < 1e-15);
    }
}
