//! Closed-form Wigner functions of infinite-well eigenstates and the
//! bilinear cross terms between pairs of them.
//!
//! Both are evaluated on the left half of the well and extended to the right
//! half by reflecting only the integration half-width `chi = min(x, L - x)`:
//! the sine factors come from the `y`-integral and see `chi`, while the phase
//! factors of the cross term keep the true `x`.

use std::f64::consts::PI;

use crate::eigenbasis::EigenIndex;
use crate::model::{ComplexScalar, PhaseSpaceGrid, Timestamp, WellConfig, WignerField};
use crate::special::sin_ratio;

/// Cross term `P_W^{(m,n)}(x, p)` together with the indices it belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossTermValue {
    pub value: ComplexScalar,
    pub m: EigenIndex,
    pub n: EigenIndex,
}

/// Half-width of the `y` integration interval at `x`, or `None` outside the
/// well. `x = L/2` takes the left branch.
pub fn half_width(well: &WellConfig, x: f64) -> Option<f64> {
    let l = well.length();
    if !(0.0..=l).contains(&x) {
        None
    } else if x <= 0.5 * l {
        Some(x)
    } else {
        Some(l - x)
    }
}

/// Wigner function of the `n`-th eigenstate.
pub fn wigner_eigen(well: &WellConfig, n: EigenIndex, x: f64, p: f64) -> f64 {
    let Some(chi) = half_width(well, x) else {
        return 0.0;
    };
    let (l, hbar) = (well.length(), well.hbar());
    let k = p / hbar;
    let kn = n.as_f64() * PI / l;
    // sin(2F chi) / (4F) for F = k -+ kn, and sin(2k chi) / (2k)
    let minus = 0.5 * sin_ratio(2.0 * (k - kn), chi);
    let plus = 0.5 * sin_ratio(2.0 * (k + kn), chi);
    let spine = (2.0 * n.as_f64() * PI * x / l).cos() * sin_ratio(2.0 * k, chi);
    2.0 / (PI * hbar * l) * (minus + plus - spine)
}

/// `sin[(2p/hbar + j pi/L) chi] / (2pL/hbar + j pi)`.
fn shifted_sine(k: f64, j: i64, chi: f64, l: f64) -> f64 {
    sin_ratio(2.0 * k + j as f64 * PI / l, chi) / l
}

/// Off-diagonal Wigner term `(1/pi hbar) int u_m(x+y) u_n(x-y) e^{2ipy/hbar} dy`.
pub fn wigner_cross(well: &WellConfig, m: EigenIndex, n: EigenIndex, x: f64, p: f64) -> CrossTermValue {
    let zero = CrossTermValue { value: ComplexScalar::new(0.0, 0.0), m, n };
    let Some(chi) = half_width(well, x) else {
        return zero;
    };
    let (l, hbar) = (well.length(), well.hbar());
    let k = p / hbar;
    let (mi, ni) = (i64::from(m.get()), i64::from(n.get()));
    let (sum, diff) = (mi + ni, mi - ni);
    let phase = |j: i64| ComplexScalar::from_polar(1.0, j as f64 * PI * x / l);
    let value = phase(diff) * shifted_sine(k, sum, chi, l)
        + phase(-diff) * shifted_sine(k, -sum, chi, l)
        - phase(sum) * shifted_sine(k, diff, chi, l)
        - phase(-sum) * shifted_sine(k, -diff, chi, l);
    CrossTermValue { value: value / (PI * hbar), m, n }
}

/// Samples [`wigner_eigen`] on `grid`.
pub fn wigner_field_eigen(well: &WellConfig, n: EigenIndex, grid: PhaseSpaceGrid) -> WignerField {
    WignerField::from_fn(grid, Timestamp::Stationary, |x, p| wigner_eigen(well, n, x, p))
}

/// Every shifted sine and phase factor needed for the cross terms among
/// indices `1..=n_max` at a single phase-space point. Building it costs
/// `O(n_max)` trigonometric calls; each cross term is then four complex
/// multiplications.
#[derive(Debug, Clone)]
pub(crate) struct CrossTable {
    span: i64,
    sines: Vec<f64>,
    phases: Vec<ComplexScalar>,
    scale: f64,
}

impl CrossTable {
    /// Returns `None` outside the well, where every cross term vanishes.
    pub(crate) fn new(well: &WellConfig, n_max: u32, x: f64, p: f64) -> Option<Self> {
        let chi = half_width(well, x)?;
        let (l, hbar) = (well.length(), well.hbar());
        let k = p / hbar;
        let span = 2 * i64::from(n_max);
        let (sines, phases) = (-span..=span)
            .map(|j| {
                (shifted_sine(k, j, chi, l), ComplexScalar::from_polar(1.0, j as f64 * PI * x / l))
            })
            .unzip();
        Some(Self { span, sines, phases, scale: 1.0 / (PI * hbar) })
    }

    fn sine(&self, j: i64) -> f64 {
        self.sines[(j + self.span) as usize]
    }

    fn phase(&self, j: i64) -> ComplexScalar {
        self.phases[(j + self.span) as usize]
    }

    pub(crate) fn cross(&self, m: u32, n: u32) -> ComplexScalar {
        let (mi, ni) = (i64::from(m), i64::from(n));
        let (sum, diff) = (mi + ni, mi - ni);
        (self.phase(diff) * self.sine(sum) + self.phase(-diff) * self.sine(-sum)
            - self.phase(sum) * self.sine(diff)
            - self.phase(-sum) * self.sine(-diff))
            * self.scale
    }
}
