//! The kernel `K(x, y) = a(y) x^2 + b(y) x + c(y)`, its discriminant, the two
//! algebraic branches `x0(y)`, `x1(y)`, the branch points and the
//! coefficient functions of the fundamental form.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{transition_table, ModelParams, Region};

const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[inline]
fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `q y + (1 - q)`, the low-arrival factor shared by every coefficient.
#[inline]
fn arrival_factor(m: &ModelParams, y: Complex64) -> Complex64 {
    y * m.q() + m.qbar()
}

/// `p mu_h + (1-p)(1-mu_h)`.
#[inline]
pub(crate) fn diag_sum(m: &ModelParams) -> f64 {
    m.p() * m.mu_h() + m.pbar() * m.mubar_h()
}

pub fn kernel_coeffs(m: &ModelParams, y: Complex64) -> (Complex64, Complex64, Complex64) {
    let u = arrival_factor(m, y);
    (
        u * (m.p() * m.mubar_h()),
        u * diag_sum(m) - 1.0,
        u * (m.pbar() * m.mu_h()),
    )
}

pub fn kernel_value(m: &ModelParams, x: Complex64, y: Complex64) -> Complex64 {
    let (a, b, c) = kernel_coeffs(m, y);
    (a * x + b) * x + c
}

/// `Delta(y) = b(y)^2 - 4 a(y) c(y)`.
pub fn discriminant(m: &ModelParams, y: Complex64) -> Complex64 {
    let (a, b, c) = kernel_coeffs(m, y);
    b * b - a * c * 4.0
}

/// `Delta(y)` in the factored form `(1 - (s + t)^2 u)(1 - (s - t)^2 u)` with
/// `s = sqrt(p mu_h)`, `t = sqrt(pbar mubar_h)`, `u = q y + qbar`; equal to
/// `[(p mu_h - pbar mubar_h) q]^2 (y - y0)(y - y1)`.
pub fn discriminant_factored(m: &ModelParams, y: Complex64) -> Complex64 {
    let (lo, hi) = branch_factors(m, y);
    lo * hi
}

/// The two linear factors of `Delta` in `u`; they vanish at `y0` and `y1`.
fn branch_factors(m: &ModelParams, y: Complex64) -> (Complex64, Complex64) {
    let (s, t) = ((m.p() * m.mu_h()).sqrt(), (m.pbar() * m.mubar_h()).sqrt());
    let u = arrival_factor(m, y);
    (-u * ((s + t) * (s + t)) + 1.0, -u * ((s - t) * (s - t)) + 1.0)
}

/// Closed-form branch points `y0 < y1` (zeros of `Delta`).
///
/// Uses `s -+ 2 sqrt(p mu_h pbar mubar_h) = (sqrt(p mu_h) -+ sqrt(pbar mubar_h))^2`
/// so the smaller root is free of cancellation.
pub fn branch_points(m: &ModelParams) -> (f64, f64) {
    let d = m.p() * m.mu_h() - m.pbar() * m.mubar_h();
    let (u, v) = ((m.p() * m.mu_h()).sqrt(), (m.pbar() * m.mubar_h()).sqrt());
    let lo = (u - v) * (u - v) / (d * d);
    let hi = (u + v) * (u + v) / (d * d);
    let shift = m.qbar() / m.q();
    (lo / m.q() - shift, hi / m.q() - shift)
}

/// `sqrt(Delta(y))` on the plane cut along `[y0, y1]`.
///
/// Product of the principal roots of the two factors of `Delta`: their cuts
/// `[y0, inf)` and `[y1, inf)` cancel beyond `y1`, leaving the single cut
/// `[y0, y1]` and the nonnegative root for real `y <= y0`. Neither factor
/// divides by `q`, which keeps the root accurate for small `q`.
pub fn sqrt_discriminant(m: &ModelParams, y: Complex64) -> Complex64 {
    let (lo, hi) = branch_factors(m, y);
    lo.sqrt() * hi.sqrt()
}

/// Kernel data at one `y`.
#[derive(Clone, Copy, Debug)]
pub struct KernelPoint {
    pub y: Complex64,
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub delta: Complex64,
    /// The `-sqrt(Delta)` branch.
    pub x0: Complex64,
    /// The `+sqrt(Delta)` branch.
    pub x1: Complex64,
}

pub fn kernel_roots(m: &ModelParams, y: Complex64) -> Result<KernelPoint> {
    let (a, b, c) = kernel_coeffs(m, y);
    if a.norm() == 0.0 || arrival_factor(m, y).norm() <= 1e-15 {
        return Err(Error::PoleAtY { y: y.re });
    }
    let delta = b * b - a * c * 4.0;
    let scale = b.norm_sqr() + (a * c).norm() * 4.0;
    let (x0, x1) = if delta.norm() < 1e-14 * scale {
        let r = -b / (a * 2.0);
        (r, r)
    } else {
        let s = sqrt_discriminant(m, y);
        let minus = -b - s;
        let plus = -b + s;
        // Take the larger-magnitude root directly, the other from x0 x1 = c / a.
        if plus.norm() >= minus.norm() {
            let x1 = plus / (a * 2.0);
            (c / (a * x1), x1)
        } else {
            let x0 = minus / (a * 2.0);
            (x0, c / (a * x0))
        }
    };
    Ok(KernelPoint {
        y,
        a,
        b,
        c,
        delta,
        x0,
        x1,
    })
}

pub fn kernel_roots_real(m: &ModelParams, y: f64) -> Result<(f64, f64)> {
    let kp = kernel_roots(m, re(y))?;
    Ok((kp.x0.re, kp.x1.re))
}

/// Branch points, the zero of `b(y)` and the `y = 0` constants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralData {
    pub y0: f64,
    pub y1: f64,
    pub y_b: f64,
    pub x0_at0: f64,
    pub x1_at0: f64,
    /// `1 / x1(0)`: geometric rate of `pi_{i,0}`.
    pub r0: f64,
    /// `p mubar_h / (pbar mu_h)`: geometric rate of the high marginal.
    pub w: f64,
}

pub fn spectral_data(m: &ModelParams) -> Result<SpectralData> {
    m.require_stable()?;
    let (y0, y1) = branch_points(m);
    let y_b = (1.0 / diag_sum(m) - m.qbar()) / m.q();
    let (x0_at0, x1_at0) = kernel_roots_real(m, 0.0)?;
    Ok(SpectralData {
        y0,
        y1,
        y_b,
        x0_at0,
        x1_at0,
        r0: 1.0 / x1_at0,
        w: m.p() * m.mubar_h() / (m.pbar() * m.mu_h()),
    })
}

/// Coefficient functions of the fundamental form
/// `H P = H1 P1 + H2 P2 + H0 pi00` at one point, built from the raw
/// region polynomials `h`, `h1`, `h2`, `h0`.
#[derive(Clone, Copy, Debug)]
pub struct FundamentalCoeffs {
    pub h: Complex64,
    pub h1: Complex64,
    pub h2: Complex64,
    pub h0: Complex64,
    pub big_h: Complex64,
    pub big_h1: Complex64,
    pub big_h2: Complex64,
    pub big_h0: Complex64,
}

/// `sum p_{di,dj} x^(di+sx) y^(dj+sy)` for a transition table, with shifts
/// that make every power nonnegative.
fn table_poly(
    m: &ModelParams,
    region: Region,
    x: Complex64,
    y: Complex64,
    sx: i32,
    sy: i32,
) -> Complex64 {
    transition_table(m, region)
        .entries
        .iter()
        .fold(C_ZERO, |acc, &(di, dj, prob)| {
            acc + x.powi(di as i32 + sx) * y.powi(dj as i32 + sy) * prob
        })
}

pub fn fundamental_coeffs(m: &ModelParams, x: Complex64, y: Complex64) -> FundamentalCoeffs {
    let one = re(1.0);
    let h = table_poly(m, Region::Interior, x, y, 1, 1) - x * y;
    let h1 = table_poly(m, Region::HBoundary, x, y, 1, 0) - x;
    let h2 = table_poly(m, Region::VBoundary, x, y, 0, 1) - y;
    let h0 = table_poly(m, Region::Origin, x, y, 0, 0) - one;
    FundamentalCoeffs {
        h,
        h1,
        h2,
        h0,
        big_h: -h,
        big_h1: -h + h1 * y,
        big_h2: -h + h2 * x,
        big_h0: h0 * x * y + h - h1 * y - h2 * x,
    }
}

/// Simplified closed forms of `(H, H2, H0)`; `H1` vanishes identically.
pub fn fundamental_closed_form(
    m: &ModelParams,
    x: Complex64,
    y: Complex64,
) -> (Complex64, Complex64, Complex64) {
    let u = arrival_factor(m, y);
    let big_h = -y * kernel_value(m, x, y);
    let big_h2 = u * ((x * y) * (m.mu_h() - m.mu_l()) - y * m.mu_h() + x * m.mu_l()) * m.pbar();
    let big_h0 = (y - 1.0) * x * (m.pbar() * m.qbar() * m.mu_l());
    (big_h, big_h2, big_h0)
}
