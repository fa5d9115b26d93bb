//! Energy eigenstates of the infinite square well in position and momentum
//! space.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{ComplexScalar, WellConfig};
use crate::quadrature::{simpson, simpson_richardson};
use crate::special::sinc_half;

/// Quantum number `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EigenIndex(pub(crate) u32);

impl EigenIndex {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            Err(Error::Index(n))
        } else {
            Ok(Self(n))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub(crate) fn as_f64(self) -> f64 {
        f64::from(self.0)
    }
}

impl TryFrom<u32> for EigenIndex {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        Self::new(n)
    }
}

/// Support indicator on `[a, b]`: 1 inside, 1/2 on either endpoint, 0 outside.
pub fn support(x: f64, a: f64, b: f64) -> f64 {
    if x < a || x > b {
        0.0
    } else if x == a || x == b {
        0.5
    } else {
        1.0
    }
}

/// `i^k`, exact.
pub(crate) fn i_pow(k: i64) -> ComplexScalar {
    match k.rem_euclid(4) {
        0 => ComplexScalar::new(1.0, 0.0),
        1 => ComplexScalar::new(0.0, 1.0),
        2 => ComplexScalar::new(-1.0, 0.0),
        _ => ComplexScalar::new(0.0, -1.0),
    }
}

/// `E_n = hbar^2 pi^2 n^2 / (2 m L^2)`.
pub fn energy(well: &WellConfig, n: EigenIndex) -> f64 {
    let pn = well.momentum_quantum(n.get());
    pn * pn / (2.0 * well.mass())
}

/// Position eigenfunction `sqrt(2/L) sin(n pi x / L)`, zero outside the well.
pub fn u(well: &WellConfig, n: EigenIndex, x: f64) -> f64 {
    let l = well.length();
    let r = support(x, 0.0, l);
    if r == 0.0 {
        return 0.0;
    }
    (2.0 / l).sqrt() * (n.as_f64() * PI * x / l).sin() * r
}

/// Momentum eigenfunction, the Fourier transform of [`u`], including its
/// overall `-i e^{-ipL/2hbar}` phase.
pub fn phi(well: &WellConfig, n: EigenIndex, p: f64) -> ComplexScalar {
    let (l, hbar) = (well.length(), well.hbar());
    let z = p * l / hbar;
    let npi = n.as_f64() * PI;
    let k = i64::from(n.get());
    let bracket = i_pow(k) * sinc_half(z - npi) - i_pow(-k) * sinc_half(z + npi);
    let global = ComplexScalar::new(0.0, -1.0) * ComplexScalar::from_polar(1.0, -0.5 * z);
    global * bracket * (l / (PI * hbar)).sqrt()
}

/// `|phi_n(p)|^2` in its expanded three-term form.
pub fn momentum_density(well: &WellConfig, n: EigenIndex, p: f64) -> f64 {
    let (l, hbar) = (well.length(), well.hbar());
    let z = p * l / hbar;
    let npi = n.as_f64() * PI;
    let minus = sinc_half(z - npi);
    let plus = sinc_half(z + npi);
    let parity = if n.get().is_multiple_of(2) { 1.0 } else { -1.0 };
    (l / (hbar * PI)) * (minus * minus + plus * plus - 2.0 * parity * minus * plus)
}

/// `<u_m | u_n>` by composite Simpson with `128 max(m, n)` panels, certified
/// by one halving to within `1e-9`.
pub fn overlap_x(well: &WellConfig, m: EigenIndex, n: EigenIndex) -> Result<f64> {
    let panels = 4 * m.get().max(n.get()) as usize * 32;
    simpson_richardson(|x| u(well, m, x) * u(well, n, x), 0.0, well.length(), panels, 1e-9)
}

/// `<phi_m | phi_n>` integrated over `|p| <= cutoff`.
pub fn overlap_p(
    well: &WellConfig,
    m: EigenIndex,
    n: EigenIndex,
    cutoff: f64,
    panels: usize,
) -> ComplexScalar {
    simpson(|p| phi(well, m, p).conj() * phi(well, n, p), -cutoff, cutoff, panels)
}
