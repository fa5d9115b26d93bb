//! Brute-force evaluations of the defining Wigner integrals, marginals and
//! overlap integrals. These never touch the closed forms in [`crate::wigner`];
//! they are what the closed forms are checked against.

use std::f64::consts::PI;

use log::warn;

use crate::eigenbasis::{u, EigenIndex};
use crate::error::{Error, Result};
use crate::model::{ComplexScalar, WellConfig, WignerField};
use crate::quadrature::{simpson, simpson_richardson, simpson_samples};
use crate::special::sin_ratio;

/// Simpson settings for a defining-integral evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Coarse panel count; the certificate also evaluates twice as many.
    pub panels: usize,
    /// Integration half-width: `Y` for position-space integrals, the
    /// momentum cutoff `Q` in momentum space. Zero means an empty interval.
    pub halfwidth: f64,
    /// Largest accepted difference between the two Simpson estimates.
    pub tolerance: f64,
}

impl QuadratureSpec {
    pub const DEFAULT_PANELS: usize = 2048;

    pub fn new(panels: usize, halfwidth: f64, tolerance: f64) -> Result<Self> {
        if panels < 8 || panels % 2 == 1 {
            return Err(Error::Grid(format!("quadrature panels must be even and >= 8, got {panels}")));
        }
        if !(halfwidth.is_finite() && halfwidth >= 0.0) {
            return Err(Error::Grid(format!("quadrature half-width must be finite and >= 0, got {halfwidth}")));
        }
        if !(tolerance > 0.0) {
            return Err(Error::Grid(format!("quadrature tolerance must be > 0, got {tolerance}")));
        }
        Ok(Self { panels, halfwidth, tolerance })
    }

    /// Exact `y`-range for states confined to the well: both `x + y` and
    /// `x - y` must stay inside `[0, L]`.
    pub fn for_well(well: &WellConfig, x: f64, panels: usize, tolerance: f64) -> Result<Self> {
        let l = well.length();
        let half = if (0.0..=l).contains(&x) { x.min(l - x) } else { 0.0 };
        Self::new(panels, half, tolerance)
    }
}

/// `(1/pi hbar) int_{-Y}^{Y} left*(x+y) right(x-y) e^{2ipy/hbar} dy`.
pub fn wigner_quadrature_x_pair(
    left: impl Fn(f64) -> ComplexScalar,
    right: impl Fn(f64) -> ComplexScalar,
    x: f64,
    p: f64,
    hbar: f64,
    spec: &QuadratureSpec,
) -> Result<ComplexScalar> {
    if spec.halfwidth == 0.0 {
        return Ok(ComplexScalar::new(0.0, 0.0));
    }
    let integrand =
        |y: f64| left(x + y).conj() * right(x - y) * ComplexScalar::from_polar(1.0, 2.0 * p * y / hbar);
    let v = simpson_richardson(integrand, -spec.halfwidth, spec.halfwidth, spec.panels, spec.tolerance)?;
    Ok(v / (PI * hbar))
}

/// Position-space Wigner integral of a single state.
pub fn wigner_quadrature_x(
    state: impl Fn(f64) -> ComplexScalar,
    x: f64,
    p: f64,
    hbar: f64,
    spec: &QuadratureSpec,
) -> Result<ComplexScalar> {
    wigner_quadrature_x_pair(&state, &state, x, p, hbar, spec)
}

/// Defining integral of the `(m, n)` eigenstate cross term.
pub fn eigen_cross_quadrature(
    well: &WellConfig,
    m: EigenIndex,
    n: EigenIndex,
    x: f64,
    p: f64,
    panels: usize,
) -> Result<ComplexScalar> {
    let spec = QuadratureSpec::for_well(well, x, panels, 1e-6)?;
    let real = |k: EigenIndex| move |s: f64| ComplexScalar::new(u(well, k, s), 0.0);
    wigner_quadrature_x_pair(real(m), real(n), x, p, well.hbar(), &spec)
}

/// Momentum-space Wigner integral
/// `(1/pi hbar) int_{-Q}^{Q} phi*(p+q) phi(p-q) e^{-2iqx/hbar} dq`.
///
/// Logs a warning when `|phi|^2` at `p +- Q` is not below `1e-10` of its
/// sampled peak; the truncated tails then dominate the error.
pub fn wigner_quadrature_p(
    state: impl Fn(f64) -> ComplexScalar,
    x: f64,
    p: f64,
    hbar: f64,
    spec: &QuadratureSpec,
) -> Result<ComplexScalar> {
    let q_max = spec.halfwidth;
    if !tails_decayed(&state, p, q_max) {
        warn!("momentum sampler has not decayed at cutoff {q_max} around p = {p}; expect slow-tail error");
    }
    if q_max == 0.0 {
        return Ok(ComplexScalar::new(0.0, 0.0));
    }
    let integrand = |q: f64| {
        state(p + q).conj() * state(p - q) * ComplexScalar::from_polar(1.0, -2.0 * q * x / hbar)
    };
    let v = simpson_richardson(integrand, -q_max, q_max, spec.panels, spec.tolerance)?;
    Ok(v / (PI * hbar))
}

/// Whether `|state|^2` at `center +- cutoff` is below `1e-10` of the largest
/// value seen on 513 samples across the window.
pub fn tails_decayed(state: impl Fn(f64) -> ComplexScalar, center: f64, cutoff: f64) -> bool {
    let samples = 512;
    let peak = (0..=samples)
        .map(|i| state(center - cutoff + 2.0 * cutoff * i as f64 / samples as f64).norm_sqr())
        .fold(0.0, f64::max);
    let edge = state(center - cutoff).norm_sqr().max(state(center + cutoff).norm_sqr());
    edge <= 1e-10 * peak
}

/// Integrates the field over `p` at every grid `x`.
pub fn marginal_x(field: &WignerField) -> Vec<f64> {
    let h = field.grid().dp();
    (0..field.grid().nx()).map(|i| simpson_samples(field.row(i), h)).collect()
}

/// Integrates the field over `x` at every grid `p`.
pub fn marginal_p(field: &WignerField) -> Vec<f64> {
    let h = field.grid().dx();
    (0..field.grid().np()).map(|j| simpson_samples(&field.column(j), h)).collect()
}

/// `int int A(x, p) B(x, p) dx dp` over the common grid.
pub fn overlap_functional(a: &WignerField, b: &WignerField) -> Result<f64> {
    if a.grid() != b.grid() {
        return Err(Error::Shape(format!("grids differ: {:?} vs {:?}", a.grid(), b.grid())));
    }
    let grid = a.grid();
    let rows: Vec<f64> = (0..grid.nx())
        .map(|i| {
            let product: Vec<f64> = a.row(i).iter().zip(b.row(i)).map(|(u, v)| u * v).collect();
            simpson_samples(&product, grid.dp())
        })
        .collect();
    Ok(simpson_samples(&rows, grid.dx()))
}

const TRIG_CUTOFF: f64 = 1e4;

/// `int_{-Z}^{Z} sin(z) cos(m z) / z dz` with `Z = 1e4`, averaged over one
/// period of the slowest oscillating tail so that the `O(1/Z)` truncation
/// ripple cancels. Converges to pi, pi/2 or 0 for `|m| < 1`, `|m| = 1`,
/// `|m| > 1`.
pub fn sinc_cos_integral(m: f64) -> f64 {
    // sin z cos mz = [sin((1+m)z) + sin((1-m)z)] / 2
    let rates: Vec<f64> = [(1.0 + m).abs(), (1.0 - m).abs()].into_iter().filter(|r| *r > 0.0).collect();
    let slowest = rates.iter().copied().fold(f64::INFINITY, f64::min);
    let fastest = rates.iter().copied().fold(0.0, f64::max);
    let window = 2.0 * PI / slowest;
    let f = |z: f64| sin_ratio(z, 1.0) * (m * z).cos();
    let panels = |len: f64| (((len * fastest.max(1.0) * 8.0) as usize) / 2 + 1) * 2;

    let body = simpson(f, 0.0, TRIG_CUTOFF, panels(TRIG_CUTOFF));
    let end = TRIG_CUTOFF + window;
    let tail = simpson(|z| (end - z) * f(z), TRIG_CUTOFF, end, panels(window).max(64)) / window;
    2.0 * (body + tail)
}

/// `int_{-Z}^{Z} sin^2(z) / z^2 dz` with `Z = 1e4`; the truncation deficit is
/// about `1/Z`.
pub fn sinc_squared_integral() -> f64 {
    let f = |z: f64| {
        let s = sin_ratio(z, 1.0);
        s * s
    };
    2.0 * simpson(f, 0.0, TRIG_CUTOFF, 160_000)
}
