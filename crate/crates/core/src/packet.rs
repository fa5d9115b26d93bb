//! Gaussian wave packets in the well: expansion in eigenstates, time
//! evolution in position and momentum space and the time-dependent Wigner
//! function.
//!
//! Every eigenphase is `E_n t / hbar = 2 pi n^2 t / T_rev`. Phases are
//! evaluated from the fractional part of `n^2 t / T_rev`, so whole revival
//! periods drop out exactly.

use std::f64::consts::PI;

use crate::eigenbasis::{phi, u, EigenIndex};
use crate::error::{Error, Result};
use crate::model::{ComplexScalar, PhaseSpaceGrid, TimeScales, Timestamp, WellConfig, WignerField};
use crate::wigner::CrossTable;

/// Default truncation of the eigenstate expansion.
pub const DEFAULT_N_MAX: u32 = 256;

/// Largest accepted norm lost to truncation.
pub const TRUNCATION_LIMIT: f64 = 1e-10;

/// Coefficients at or below this magnitude are left out of sums.
pub const NEGLIGIBLE_COEFFICIENT: f64 = 1e-14;

/// Required distance from each wall, in units of the position spread.
pub const CONTAINMENT_SPREADS: f64 = 5.0;

/// `psi(x, 0) = (b sqrt(pi))^{-1/2} exp(-(x - x0)^2 / 2b^2) exp(i p0 (x - x0) / hbar)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPacketSpec {
    pub x0: f64,
    pub p0: f64,
    pub b: f64,
}

impl GaussianPacketSpec {
    pub fn new(x0: f64, p0: f64, b: f64) -> Result<Self> {
        if !(x0.is_finite() && p0.is_finite()) {
            return Err(Error::Packet(format!("x0 and p0 must be finite, got x0 = {x0}, p0 = {p0}")));
        }
        if !(b.is_finite() && b > 0.0) {
            return Err(Error::Packet(format!("width b must be finite and > 0, got {b}")));
        }
        Ok(Self { x0, p0, b })
    }

    /// Builds the packet from its position spread `dx0 = b / sqrt(2)`.
    pub fn from_position_spread(x0: f64, p0: f64, dx0: f64) -> Result<Self> {
        Self::new(x0, p0, dx0 * 2f64.sqrt())
    }

    /// `x0 = L/2`, `p0 = 40 pi hbar / L`, `b = sqrt(2) L / 20`: a packet
    /// centred on `n0 = 40` with position spread `L / 20`.
    pub fn reference(well: &WellConfig) -> Self {
        let l = well.length();
        Self { x0: 0.5 * l, p0: well.momentum_quantum(40), b: 2f64.sqrt() * l / 20.0 }
    }

    pub fn position_spread(&self) -> f64 {
        self.b / 2f64.sqrt()
    }

    /// Initial wavefunction on the whole line.
    pub fn initial(&self, hbar: f64, x: f64) -> ComplexScalar {
        let d = x - self.x0;
        let amp = (self.b * PI.sqrt()).powf(-0.5) * (-d * d / (2.0 * self.b * self.b)).exp();
        ComplexScalar::from_polar(amp, self.p0 * d / hbar)
    }

    /// Errors unless the centre is at least five position spreads from
    /// both walls.
    pub fn check_placement(&self, well: &WellConfig) -> Result<()> {
        let distance = self.x0.min(well.length() - self.x0);
        let required = CONTAINMENT_SPREADS * self.position_spread();
        if distance >= required {
            Ok(())
        } else {
            Err(Error::PacketPlacement { distance, required })
        }
    }
}

/// Normalized expansion coefficients `a_1 ..= a_{n_max}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSet {
    coefficients: Vec<ComplexScalar>,
    n0: u32,
    residual: f64,
}

impl CoefficientSet {
    /// Normalizes arbitrary amplitudes for `n = 1, 2, ...`. The recorded
    /// residual is `1 - sum |a_n|^2` of the input.
    pub fn from_amplitudes(amplitudes: Vec<ComplexScalar>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::Packet("no amplitudes given".into()));
        }
        if amplitudes.iter().any(|a| !a.is_finite()) {
            return Err(Error::Packet("non-finite amplitude".into()));
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm == 0.0 {
            return Err(Error::Packet("all amplitudes are zero".into()));
        }
        let scale = norm.sqrt().recip();
        let coefficients: Vec<ComplexScalar> = amplitudes.iter().map(|a| a * scale).collect();
        let mut best = 0;
        for (k, a) in coefficients.iter().enumerate() {
            if a.norm() > coefficients[best].norm() {
                best = k;
            }
        }
        Ok(Self { coefficients, n0: best as u32 + 1, residual: 1.0 - norm })
    }

    pub fn coefficients(&self) -> &[ComplexScalar] {
        &self.coefficients
    }

    /// `a_n`, zero beyond the truncation.
    pub fn get(&self, n: EigenIndex) -> ComplexScalar {
        self.coefficients.get(n.get() as usize - 1).copied().unwrap_or_default()
    }

    pub fn n_max(&self) -> u32 {
        self.coefficients.len() as u32
    }

    /// Index of the largest `|a_n|`.
    pub fn n0(&self) -> u32 {
        self.n0
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// `(n, a_n)` for every `|a_n| > 1e-14`, ascending in `n`.
    pub fn retained(&self) -> Vec<(EigenIndex, ComplexScalar)> {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > NEGLIGIBLE_COEFFICIENT)
            .map(|(k, a)| (EigenIndex(k as u32 + 1), *a))
            .collect()
    }
}

/// Expansion coefficients of a contained packet, with the integral over the
/// well extended to the whole line.
pub fn expansion_coefficients(
    well: &WellConfig,
    packet: &GaussianPacketSpec,
    n_max: u32,
) -> Result<CoefficientSet> {
    if n_max == 0 {
        return Err(Error::Index(0));
    }
    packet.check_placement(well)?;
    let (l, hbar, b) = (well.length(), well.hbar(), packet.b);
    let prefactor = (4.0 * b * PI / (l * PI.sqrt())).sqrt();
    let k0 = packet.p0 / hbar;
    let amplitudes = (1..=n_max)
        .map(|n| {
            let kn = f64::from(n) * PI / l;
            let theta = kn * packet.x0;
            let plus = ComplexScalar::from_polar((-0.5 * b * b * (k0 + kn).powi(2)).exp(), theta);
            let minus = ComplexScalar::from_polar((-0.5 * b * b * (k0 - kn).powi(2)).exp(), -theta);
            // 1/(2i) = -i/2
            (plus - minus) * ComplexScalar::new(0.0, -0.5 * prefactor)
        })
        .collect();
    let set = CoefficientSet::from_amplitudes(amplitudes)?;
    if set.residual.abs() >= TRUNCATION_LIMIT {
        return Err(Error::Truncation { n_max, residual: set.residual, limit: TRUNCATION_LIMIT });
    }
    Ok(set)
}

/// Classical period at the dominant index, revival time and free spreading
/// time `m b^2 / hbar`.
pub fn time_scales(well: &WellConfig, packet: &GaussianPacketSpec, coeffs: &CoefficientSet) -> TimeScales {
    let t_revival = well.revival_time();
    TimeScales {
        t_classical: t_revival / (2.0 * f64::from(coeffs.n0())),
        t_revival,
        t_spreading: well.mass() * packet.b * packet.b / well.hbar(),
    }
}

/// `exp(-i E_n t / hbar)` with `t` given in revival periods.
fn evolution_phase(n: EigenIndex, revivals: f64) -> ComplexScalar {
    let turns = f64::from(n.get()).powi(2) * revivals.fract();
    ComplexScalar::from_polar(1.0, -2.0 * PI * turns.fract())
}

fn evolved(coeffs: &CoefficientSet, revivals: f64) -> Vec<(EigenIndex, ComplexScalar)> {
    coeffs
        .retained()
        .into_iter()
        .map(|(n, a)| (n, a * evolution_phase(n, revivals)))
        .collect()
}

fn revivals(well: &WellConfig, t: f64) -> f64 {
    t / well.revival_time()
}

/// `psi(x, t) = sum a_n u_n(x) exp(-i E_n t / hbar)`.
pub fn psi(well: &WellConfig, coeffs: &CoefficientSet, x: f64, t: f64) -> ComplexScalar {
    evolved(coeffs, revivals(well, t)).iter().map(|(n, c)| c * u(well, *n, x)).sum()
}

/// `phi(p, t) = sum a_n phi_n(p) exp(-i E_n t / hbar)`.
pub fn phi_t(well: &WellConfig, coeffs: &CoefficientSet, p: f64, t: f64) -> ComplexScalar {
    evolved(coeffs, revivals(well, t)).iter().map(|(n, c)| c * phi(well, *n, p)).sum()
}

/// Time-dependent Wigner function as the double sum over retained indices of
/// `a_m* a_n exp(i (E_m - E_n) t / hbar) P^{(m,n)}(x, p)`.
pub fn wigner_packet(well: &WellConfig, coeffs: &CoefficientSet, x: f64, p: f64, t: f64) -> f64 {
    wigner_from_evolved(well, &evolved(coeffs, revivals(well, t)), x, p)
}

fn wigner_from_evolved(well: &WellConfig, terms: &[(EigenIndex, ComplexScalar)], x: f64, p: f64) -> f64 {
    let Some(top) = terms.last().map(|(n, _)| n.get()) else {
        return 0.0;
    };
    let Some(table) = CrossTable::new(well, top, x, p) else {
        return 0.0;
    };
    let mut sum = ComplexScalar::new(0.0, 0.0);
    for (m, cm) in terms {
        let cm = cm.conj();
        for (n, cn) in terms {
            sum += cm * cn * table.cross(m.get(), n.get());
        }
    }
    debug_assert!(sum.im.abs() < 1e-10, "imaginary residue {} at ({x}, {p})", sum.im);
    sum.re
}

/// Samples [`wigner_packet`] at time `t` on `grid`.
pub fn wigner_field_packet(
    well: &WellConfig,
    coeffs: &CoefficientSet,
    grid: PhaseSpaceGrid,
    t: f64,
) -> WignerField {
    let terms = evolved(coeffs, revivals(well, t));
    WignerField::from_fn(grid, Timestamp::At(t), |x, p| wigner_from_evolved(well, &terms, x, p))
}

/// Return probability `|<psi(0)|psi(t)>|^2`.
pub fn fidelity(well: &WellConfig, coeffs: &CoefficientSet, t: f64) -> f64 {
    fidelity_in_revivals(coeffs, revivals(well, t))
}

/// [`fidelity`] with time measured in revival periods. Integer parts of
/// `revivals` drop out exactly.
pub fn fidelity_in_revivals(coeffs: &CoefficientSet, revivals: f64) -> f64 {
    coeffs
        .retained()
        .iter()
        .map(|(n, a)| a.norm_sqr() * evolution_phase(*n, revivals))
        .sum::<ComplexScalar>()
        .norm_sqr()
}
