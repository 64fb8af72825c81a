//! Generating functions: the boundary function `psi0(y) = sum_j pi_{0,j} y^j`,
//! the row functions `phi_j(x) = sum_i pi_{i,j} x^i`, the bivariate
//! `P(x, y)` and contour-based coefficient extraction.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::kernel::{kernel_coeffs, kernel_roots, spectral_data, sqrt_discriminant, SpectralData};
use crate::model::ModelParams;

#[inline]
fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Everything that defines the boundary function `psi0`.
#[derive(Clone, Copy, Debug)]
pub struct BoundaryGF {
    pub params: ModelParams,
    /// `F(y) = f_big[0] + f_big[1] y + f_big[2] y^2`.
    pub f_big: [f64; 3],
    /// `f(y) = f_small[0] + f_small[1] y + f_small[2] y^2`.
    pub f_small: [f64; 3],
    pub eta1: f64,
    pub eta2: f64,
    pub pf_a: f64,
    pub pf_b: f64,
    pub pi00: f64,
    pub spectral: SpectralData,
}

/// `T(y) = F(y) - y sqrt(Delta(y))` and `T*(y) = F(y) + y sqrt(Delta(y))`.
#[derive(Clone, Copy, Debug)]
pub struct TTStarValues {
    pub y: Complex64,
    pub t: Complex64,
    pub t_star: Complex64,
}

pub fn boundary_gf(params: &ModelParams) -> Result<BoundaryGF> {
    params.require_supported()?;
    let m = params;
    let (q, mh, ml) = (m.q(), m.mu_h(), m.mu_l());
    let (pb, qb, mlb) = (m.pbar(), m.qbar(), m.mubar_l());

    let big_a = pb + mh - 2.0 * pb * ml;
    let f_big = [
        2.0 * pb * qb * ml,
        big_a * qb + 2.0 * pb * q * ml - 1.0,
        big_a * q,
    ];
    let k = 1.0 - mh * qb - pb * qb * mlb - pb * q * ml;
    let f_small = [-pb * qb * ml * ml, ml * k, (mh - pb * ml) * mlb * q];

    // eta solve f0 t^2 + f1 t + f2 = 0, i.e. 1/eta are the zeros of f.
    let [f0, f1, f2] = f_small;
    let disc = (f1 * f1 - 4.0 * f0 * f2).sqrt();
    let big = -0.5 * (f1 + f1.signum() * disc);
    let (r1, r2) = (big / f0, f2 / big);
    let (eta1, eta2) = if r1 > r2 { (r1, r2) } else { (r2, r1) };

    let pi00 = (1.0 - m.rho()) / (pb * qb);
    let scale = pi00 / (2.0 * pb * ml);
    let pf_a = scale * eta1 / (eta1 - eta2);
    let pf_b = scale * eta2 / (eta2 - eta1);
    Ok(BoundaryGF {
        params: *m,
        f_big,
        f_small,
        eta1,
        eta2,
        pf_a,
        pf_b,
        pi00,
        spectral: spectral_data(m)?,
    })
}

impl BoundaryGF {
    pub fn big_f(&self, y: Complex64) -> Complex64 {
        let [c0, c1, c2] = self.f_big;
        (y * c2 + c1) * y + c0
    }

    pub fn big_f_real(&self, y: f64) -> f64 {
        self.big_f(re(y)).re
    }

    pub fn small_f(&self, y: Complex64) -> Complex64 {
        let [c0, c1, c2] = self.f_small;
        (y * c2 + c1) * y + c0
    }

    pub fn tt_star(&self, y: Complex64) -> TTStarValues {
        let f = self.big_f(y);
        let s = y * sqrt_discriminant(&self.params, y);
        TTStarValues {
            y,
            t: f - s,
            t_star: f + s,
        }
    }

    /// `T'(1)` evaluated from `F' - sqrt(Delta) - y Delta' / (2 sqrt(Delta))`.
    pub fn t_prime_at_one(&self) -> f64 {
        let m = &self.params;
        let (a, b, c) = kernel_coeffs(m, re(1.0));
        let (a, b, c) = (a.re, b.re, c.re);
        let q = m.q();
        let (da, db, dc) = (
            m.p() * m.mubar_h() * q,
            crate::kernel::diag_sum(m) * q,
            m.pbar() * m.mu_h() * q,
        );
        let s = sqrt_discriminant(m, re(1.0)).re;
        let d_delta = 2.0 * b * db - 4.0 * (da * c + a * dc);
        let df = self.f_big[1] + 2.0 * self.f_big[2];
        df - s - d_delta / (2.0 * s)
    }

    /// The quartic `4 pbar^2 qbar mu_l^2 (q y + qbar)(1 - y)(1 - eta1 y)(1 - eta2 y)`.
    pub fn tt_star_product(&self, y: Complex64) -> Complex64 {
        let m = &self.params;
        let k = 4.0 * m.pbar() * m.pbar() * m.qbar() * m.mu_l() * m.mu_l();
        (y * m.q() + m.qbar()) * (-y + 1.0) * (-y * self.eta1 + 1.0) * (-y * self.eta2 + 1.0) * k
    }

    /// Partial-fraction form of `psi0`, valid on the cut plane.
    pub(crate) fn psi0_pf(&self, y: Complex64) -> Complex64 {
        let m = &self.params;
        let u = y * m.q() + m.qbar();
        let ts = self.tt_star(y).t_star;
        ts * (self.pf_a / (u * (-y * self.eta1 + 1.0)) + self.pf_b / (u * (-y * self.eta2 + 1.0)))
    }

    /// Root form of `psi0` with the `(1 - y)` factor cancelled analytically
    /// through `1 - x0 = q (y - 1) / (a (1 - x1))`.
    pub(crate) fn psi0_root(&self, y: Complex64) -> Result<Complex64> {
        let m = &self.params;
        let kp = kernel_roots(m, y)?;
        let u = y * m.q() + m.qbar();
        let lin = y * (m.mu_h() - m.mu_l()) + m.mu_l();
        let denom = u * (lin * m.q() / (kp.a * (-kp.x1 + 1.0)) + m.mu_l());
        Ok(kp.x0 * (m.qbar() * m.mu_l() * self.pi00) / denom)
    }

    fn check_unit(y: f64) -> Result<()> {
        if (-1.0..=1.0).contains(&y) {
            Ok(())
        } else {
            Err(Error::Domain {
                value: y,
                domain: "[-1, 1]",
            })
        }
    }

    pub fn psi0_partial_fraction(&self, y: f64) -> Result<f64> {
        Self::check_unit(y)?;
        Ok(self.psi0_pf(re(y)).re)
    }

    pub fn psi0_root_form(&self, y: f64) -> Result<f64> {
        Self::check_unit(y)?;
        Ok(self.psi0_root(re(y))?.re)
    }

    /// `psi0(1) = (1 - rho_h) / pbar`, forced by `P(1, 1) = 1`.
    pub fn psi0_at_one(&self) -> f64 {
        (1.0 - self.params.rho_h()) / self.params.pbar()
    }

    /// Contour radius for Taylor extraction: inside both `1/eta1` and `y0`.
    pub fn series_radius(&self) -> f64 {
        (0.9 / self.eta1).min(0.99 * self.spectral.y0)
    }
}

pub fn psi0(params: &ModelParams, y: f64) -> Result<f64> {
    boundary_gf(params)?.psi0_root_form(y)
}

/// Taylor coefficients `0..=n` of an analytic `f` by the trapezoid rule on
/// the circle `|z - center| = radius` with `m` nodes.
pub fn contour_taylor<F>(f: F, center: Complex64, radius: f64, m: usize, n: usize) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if !(radius > 0.0) {
        return Err(Error::RadiusConflict { radius });
    }
    let m = m.max(n + 1);
    let mut buf = (0..m)
        .map(|k| {
            let z = Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / m as f64);
            f(center + z)
        })
        .collect::<Result<Vec<_>>>()?;
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let mut scale = 1.0 / m as f64;
    Ok(buf
        .into_iter()
        .take(n + 1)
        .map(|c| {
            let v = c * scale;
            scale /= radius;
            v
        })
        .collect())
}

/// `pi_{0,j}` for `j = 0..=n_max`, extracted from the closed form of `psi0`.
pub fn psi0_series(params: &ModelParams, n_max: usize) -> Result<Vec<f64>> {
    let g = boundary_gf(params)?;
    psi0_series_from(&g, n_max)
}

pub fn psi0_series_from(g: &BoundaryGF, n_max: usize) -> Result<Vec<f64>> {
    if n_max > 10_000 {
        return Err(Error::InvalidConfig(format!(
            "series length {n_max} exceeds 10000"
        )));
    }
    let radius = g.series_radius();
    let m = (8 * n_max).max(4096);
    let coeffs = contour_taylor(|y| g.psi0_root(y), re(0.0), radius, m, n_max)?;
    // Sup of |psi0| on the circle bounds the quadrature noise of each coefficient.
    let sup = (0..64)
        .map(|k| {
            let z = Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / 64.0);
            g.psi0_root(z).map(|v| v.norm())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0f64, f64::max);
    let mut out = Vec::with_capacity(n_max + 1);
    for (j, c) in coeffs.into_iter().enumerate() {
        let v = c.re;
        if v < 0.0 {
            let noise = 64.0 * f64::EPSILON * sup * radius.powi(-(j as i32));
            if -v > noise {
                return Err(Error::NegativeCoefficient { index: j, value: v });
            }
            out.push(0.0);
        } else {
            out.push(v);
        }
    }
    out[0] = g.pi00;
    Ok(out)
}

/// Cached data for the row functions `phi_0 .. phi_{j_max}`.
#[derive(Clone, Debug)]
pub struct HorizontalGF {
    params: ModelParams,
    pi00: f64,
    r0: f64,
    x0: f64,
    x1: f64,
    /// `pi_{0,j}` for `j = 0..=j_max + 1`.
    boundary: Vec<f64>,
    /// Recursion constants `a_j`; entry 0 unused.
    a: Vec<f64>,
    /// Taylor coefficients of each `phi_k` at `x0`.
    taylor: Vec<Vec<f64>>,
    /// Inside `|x - x0| < taylor_radius` the difference quotient is summed
    /// from the cached expansion.
    taylor_radius: f64,
}

/// Cached Taylor terms per row. The expansion converges on a disk four times
/// the switch radius, so the truncation error is far below rounding.
const TAYLOR_TERMS: usize = 32;
/// Nodes of the circle on which the Taylor terms are extracted.
const TAYLOR_NODES: usize = 64;

impl HorizontalGF {
    pub fn new(params: &ModelParams, j_max: usize) -> Result<Self> {
        let g = boundary_gf(params)?;
        let boundary = psi0_series_from(&g, j_max + 1)?;
        Self::with_boundary(&g, boundary, j_max)
    }

    /// Builds the recursion from caller-supplied boundary probabilities
    /// (`boundary.len() >= j_max + 2`).
    pub fn with_boundary(g: &BoundaryGF, boundary: Vec<f64>, j_max: usize) -> Result<Self> {
        if boundary.len() < j_max + 2 {
            return Err(Error::InvalidConfig(format!(
                "need {} boundary coefficients, got {}",
                j_max + 2,
                boundary.len()
            )));
        }
        let s = g.spectral;
        let (x0, r0) = (s.x0_at0, s.r0);
        let t0: Vec<f64> = (0..TAYLOR_TERMS)
            .map(|k| g.pi00 * r0.powi(k as i32) / (1.0 - r0 * x0).powi(k as i32 + 1))
            .collect();
        // The nearest singularity of every row is the pole at x1(0).
        let eps = 0.25 * (s.x1_at0 - x0);
        let mut h = HorizontalGF {
            params: g.params,
            pi00: g.pi00,
            r0,
            x0,
            x1: s.x1_at0,
            boundary,
            a: vec![0.0],
            taylor: vec![t0],
            taylor_radius: 0.75 * eps,
        };
        for j in 1..=j_max {
            h.a.push(h.a_constant(j));
            let row = contour_taylor(
                |x| h.eval_unchecked(j, x),
                re(x0),
                eps,
                TAYLOR_NODES,
                TAYLOR_TERMS - 1,
            )?;
            h.taylor.push(row.into_iter().map(|c| c.re).collect());
        }
        Ok(h)
    }

    pub fn j_max(&self) -> usize {
        self.taylor.len() - 1
    }

    fn a_constant(&self, j: usize) -> f64 {
        let m = &self.params;
        let (p, q, mh, ml) = (m.p(), m.q(), m.mu_h(), m.mu_l());
        let (pb, qb, mhb) = (m.pbar(), m.qbar(), m.mubar_h());
        let b = &self.boundary;
        let prev_at_x0 = self.taylor[j - 1][0];
        ((pb * qb * (ml - mh) - pb * q * ml) * b[j] - pb * qb * ml * b[j + 1]
            + pb * q * (ml - mh) * b[j - 1]
            - q * (pb * mhb + p * mh) * prev_at_x0)
            / (p * qb * mhb)
    }

    /// The recursion constant `a_j` (`j >= 1`).
    pub fn a_j(&self, j: usize) -> Option<f64> {
        self.a.get(j).copied().filter(|_| j >= 1)
    }

    /// `phi_j(x0(0))`.
    pub fn value_at_x0(&self, j: usize) -> Option<f64> {
        self.taylor.get(j).map(|t| t[0])
    }

    fn eval_unchecked(&self, j: usize, x: Complex64) -> Result<Complex64> {
        if j == 0 {
            return Ok(re(self.pi00) / (-x * self.r0 + 1.0));
        }
        let m = &self.params;
        let (p, q, mh) = (m.p(), m.q(), m.mu_h());
        let (pb, qb, mhb) = (m.pbar(), m.qbar(), m.mubar_h());
        let t = &self.taylor[j - 1];
        let dx = x - self.x0;
        let dq = if dx.norm() < self.taylor_radius {
            t[1..].iter().rev().fold(re(0.0), |acc, &c| acc * dx + c)
        } else {
            (self.eval_unchecked(j - 1, x)? - t[0]) / dx
        };
        let xm = x - self.x1;
        let lead = re(self.a[j]) - (x + self.x0) * (q * t[0] / qb);
        let tail = (x * p + pb) * (x * mhb + mh) * (q / (p * qb * mhb)) * dq;
        Ok((lead - tail) / xm)
    }

    /// `phi_j(x)` for complex `x` with `|x| < x1(0)`.
    pub fn eval(&self, j: usize, x: Complex64) -> Result<Complex64> {
        if j > self.j_max() {
            return Err(Error::InvalidConfig(format!(
                "row {j} beyond cached range 0..={}",
                self.j_max()
            )));
        }
        if (x - self.x1).norm() < 1e-12 {
            return Err(Error::PoleAtX {
                x: x.re,
                pole: self.x1,
            });
        }
        if x.norm() >= self.x1 {
            return Err(Error::Domain {
                value: x.norm(),
                domain: "|x| < x1(0)",
            });
        }
        self.eval_unchecked(j, x)
    }

    /// Taylor coefficients `pi_{i,j}`, `i = 0..=n`, of `phi_j` on the circle of `radius`.
    pub fn row_coefficients(&self, j: usize, n: usize, radius: f64) -> Result<Vec<f64>> {
        let m = (8 * n).max(256);
        Ok(contour_taylor(|x| self.eval(j, x), re(0.0), radius, m, n)?
            .into_iter()
            .map(|c| c.re)
            .collect())
    }
}

/// `phi_j(x)` for real `x`; builds the recursion up to row `j`.
pub fn phi_j(params: &ModelParams, j: usize, x: f64) -> Result<f64> {
    Ok(HorizontalGF::new(params, j)?.eval(j, re(x))?.re)
}

/// The bivariate generating function `P(x, y)` on `|x| <= 1`, `y in [-1, 1]`.
#[derive(Clone, Debug)]
pub struct BivariateGF {
    g: BoundaryGF,
    /// Leading `pi_{0,j}`, used to resolve `0/0` near `y = 0`.
    head: Vec<f64>,
}

const SMALL_Y: f64 = 1e-3;

impl BivariateGF {
    pub fn new(params: &ModelParams) -> Result<Self> {
        let g = boundary_gf(params)?;
        let head = psi0_series_from(&g, 12)?;
        Ok(Self { g, head })
    }

    pub fn eval(&self, x: Complex64, y: f64) -> Result<Complex64> {
        BoundaryGF::check_unit(y)?;
        if x.norm() > 1.0 + 1e-12 {
            return Err(Error::Domain {
                value: x.norm(),
                domain: "|x| <= 1",
            });
        }
        let m = &self.g.params;
        let pi00 = self.g.pi00;
        let s = self.g.spectral;
        if y == 0.0 {
            return Ok(re(pi00) / (-x * s.r0 + 1.0));
        }
        let kp = kernel_roots(m, re(y))?;
        let (a, x1) = (kp.a.re, kp.x1.re);
        if (x - x1).norm() < 1e-12 {
            return Err(Error::KernelZero { x: x.re, y });
        }
        let (q, qb, ml) = (m.q(), m.qbar(), m.mu_l());
        let lin_l = m.mu_h() - ml;
        let u = q * y + qb;
        // alpha(y) / y, with the numerator of the fundamental form reduced by
        // its zero at x = x0(y).
        let alpha_over_y = if y.abs() < SMALL_Y {
            let tail = self.head[1..]
                .iter()
                .rev()
                .fold(0.0, |acc, &c| acc * y + c);
            pi00 * ((q * ml + qb * lin_l + qb * ml) + y * q * lin_l) + tail * u * (lin_l * y + ml)
        } else {
            let psi = self.g.psi0_root(re(y))?.re;
            (u * (lin_l * y + ml) * psi + qb * ml * (y - 1.0) * pi00) / y
        };
        Ok(re(m.pbar() * alpha_over_y) / ((x - x1) * (-a)))
    }
}

pub fn eval_p(params: &ModelParams, x: Complex64, y: f64) -> Result<Complex64> {
    BivariateGF::new(params)?.eval(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference() -> ModelParams {
        ModelParams::new(0.1, 0.1, 0.45, 0.35).unwrap()
    }

    #[test]
    fn reference_boundary_values() {
        let g = boundary_gf(&reference()).unwrap();
        assert!((g.pi00 - 0.607_485_792_670_977_7).abs() < 1e-15);
        assert!((g.eta1 - 0.369_712_107_612_558_35).abs() < 1e-14);
        assert!((g.eta2 + 0.239_200_643_767_761_54).abs() < 1e-14);
        assert!((g.pf_a - 0.585_469_372_199_192_3).abs() < 1e-13);
        assert!((g.pf_b - 0.378_793_790_770_613_6).abs() < 1e-13);
        assert!((g.big_f_real(1.0) - 0.35).abs() < 1e-15);
        assert!((g.big_f_real(g.spectral.y0) - 0.337_827_101_104_77).abs() < 1e-12);
    }

    #[test]
    fn boundary_identities() {
        let m = reference();
        let g = boundary_gf(&m).unwrap();
        assert!((g.pf_a + g.pf_b - g.pi00 / (2.0 * m.pbar() * m.mu_l())).abs() < 1e-12);
        assert!(g.small_f(re(1.0 / g.eta1)).norm() < 1e-10);
        assert!(g.small_f(re(1.0 / g.eta2)).norm() < 1e-10);
        assert!(g.eta2 < 0.0 && 0.0 < g.eta1 && g.eta1 < 1.0);
        let tt = g.tt_star(re(1.0));
        assert!(tt.t.norm() < 1e-12);
        assert!(g.tt_star(re(-m.qbar() / m.q())).t_star.norm() < 1e-10);
        let want = -2.0 * m.pbar() * m.mu_l() * (1.0 - m.rho()) / (1.0 - m.rho_h());
        assert!((g.t_prime_at_one() - want).abs() < 1e-12);
    }

    #[test]
    fn psi0_values() {
        let m = reference();
        let g = boundary_gf(&m).unwrap();
        assert!((g.psi0_root_form(0.0).unwrap() - g.pi00).abs() < 1e-15);
        assert!((g.psi0_partial_fraction(0.0).unwrap() - g.pi00).abs() < 1e-14);
        let at_one = g.psi0_root_form(1.0).unwrap();
        assert!((at_one - 0.864_197_530_864_197_5).abs() < 1e-14);
        assert!((at_one - g.psi0_at_one()).abs() < 1e-14);
        let alt = m.q() / (m.pbar() * m.mu_l()) + m.qbar() * g.pi00;
        assert!((at_one - alt).abs() < 1e-14);
        assert!(psi0(&m, 1.5).is_err());
    }

    #[test]
    fn series_head_and_monotone_partial_sums() {
        let m = reference();
        let s = psi0_series(&m, 200).unwrap();
        assert_eq!(s[0], boundary_gf(&m).unwrap().pi00);
        let mut acc = 0.0;
        for &c in &s {
            assert!(c >= 0.0);
            acc += c;
        }
        assert!(acc <= 0.864_197_530_864_197_5 + 1e-12);
        assert!(acc > 0.864_197_530_864_197_5 - 1e-12);
    }

    #[test]
    fn contour_recovers_geometric() {
        let c = contour_taylor(|z| Ok(re(1.0) / (-z * 0.5 + 1.0)), re(0.0), 1.0, 64, 10).unwrap();
        for (k, v) in c.iter().enumerate() {
            assert!((v.re - 0.5f64.powi(k as i32)).abs() < 1e-14);
        }
        assert!(matches!(
            contour_taylor(Ok, re(0.0), 0.0, 8, 2),
            Err(Error::RadiusConflict { .. })
        ));
    }

    #[test]
    fn phi0_closed_form() {
        let m = reference();
        let v = phi_j(&m, 0, 0.5).unwrap();
        let r0 = 0.103_969_036_636_337_83;
        assert!((v - 0.607_485_792_670_977_7 / (1.0 - 0.5 * r0)).abs() < 1e-14);
        assert!((v - 0.640_797_333_386_649_8).abs() < 1e-14);
    }

    #[test]
    fn phi_at_zero_is_boundary_coefficient() {
        let m = reference();
        let h = HorizontalGF::new(&m, 6).unwrap();
        let s = psi0_series(&m, 8).unwrap();
        for j in 0..=6 {
            let v = h.eval(j, re(0.0)).unwrap().re;
            assert!((v - s[j]).abs() < 1e-13, "j = {j}: {v} vs {}", s[j]);
        }
    }

    #[test]
    fn phi_difference_quotient_is_continuous_at_x0() {
        let m = reference();
        let h = HorizontalGF::new(&m, 3).unwrap();
        let x0 = h.x0;
        for j in 1..=3 {
            let t = &h.taylor[j];
            let at = h.eval(j, re(x0)).unwrap().re;
            assert!((at - t[0]).abs() < 1e-14);
            for dx in [1e-7, 2e-6, -3e-6, 1e-3, 1.0, 1.7] {
                let v = h.eval(j, re(x0 + dx)).unwrap().re;
                let local = t.iter().rev().fold(0.0, |acc, &c| acc * dx + c);
                assert!((v - local).abs() < 1e-13, "j = {j}, dx = {dx}: {v} vs {local}");
            }
        }
        assert!(matches!(
            h.eval(1, re(h.x1)),
            Err(Error::PoleAtX { .. })
        ));
    }

    #[test]
    fn bivariate_normalisation_and_sections() {
        let m = reference();
        let bg = BivariateGF::new(&m).unwrap();
        assert!((bg.eval(re(1.0), 1.0).unwrap().re - 1.0).abs() < 1e-12);
        assert!((bg.eval(re(0.0), 0.0).unwrap().re - 0.607_485_792_670_977_7).abs() < 1e-15);
        let w = 0.135_802_469_135_802_5;
        for x in [0.2, 0.5, 0.9] {
            let v = bg.eval(re(x), 1.0).unwrap().re;
            assert!((v - 0.864_197_530_864_197_5 / (1.0 - w * x)).abs() < 1e-12);
        }
        // Continuity across the small-y switch.
        let a = bg.eval(re(0.3), 0.999e-3).unwrap();
        let b = bg.eval(re(0.3), 1.001e-3).unwrap();
        assert!((a - b).norm() < 1e-6);
        // P(x, y) at y near 0 tends to phi_0(x).
        let c = bg.eval(re(0.3), 1e-9).unwrap().re;
        assert!((c - phi_j(&m, 0, 0.3).unwrap()).abs() < 1e-8);
    }
}
