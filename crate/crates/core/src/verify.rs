//! Named verification suites. Every check reports the residual it measured
//! next to the tolerance it was held to.

use std::f64::consts::PI;
use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::eigenbasis::{momentum_density, overlap_p, overlap_x, u, EigenIndex};
use crate::error::Result;
use crate::model::{PhaseSpaceGrid, WellConfig};
use crate::oracle::{
    eigen_cross_quadrature, marginal_p, marginal_x, overlap_functional, sinc_cos_integral,
    sinc_squared_integral, wigner_quadrature_p, wigner_quadrature_x, QuadratureSpec,
};
use crate::packet::{
    expansion_coefficients, fidelity, phi_t, psi, time_scales, CoefficientSet, GaussianPacketSpec, DEFAULT_N_MAX,
};
use crate::reference::{free_gaussian_wigner, FreeGaussianSpec};
use crate::wigner::{wigner_cross, wigner_eigen, wigner_field_eigen};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed_1d0c;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Marginals,
    Orthonormality,
    OracleEquivalence,
    Revival,
    AppendixA,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] =
        ["marginals", "orthonormality", "oracle-equivalence", "revival", "appendix-a", "all"];

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "marginals" => Suite::Marginals,
            "orthonormality" => Suite::Orthonormality,
            "oracle-equivalence" => Suite::OracleEquivalence,
            "revival" => Suite::Revival,
            "appendix-a" => Suite::AppendixA,
            "all" => Suite::All,
            _ => return None,
        })
    }
}

/// Outcome of one check: the measured residual must not exceed the tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self { name: name.into(), residual, tolerance }
    }

    pub fn passed(&self) -> bool {
        self.residual <= self.tolerance
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: residual {:.3e} (tolerance {:.1e})", self.name, self.residual, self.tolerance)
    }
}

fn idx(n: u32) -> EigenIndex {
    EigenIndex(n)
}

fn max_abs_diff(a: impl IntoIterator<Item = f64>, b: impl IntoIterator<Item = f64>) -> f64 {
    a.into_iter().zip(b).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max)
}

/// Reference packet of the unit well and its expansion.
pub fn reference_packet() -> Result<(WellConfig, GaussianPacketSpec, CoefficientSet)> {
    let well = WellConfig::unit_well();
    let packet = GaussianPacketSpec::reference(&well);
    let coeffs = expansion_coefficients(&well, &packet, DEFAULT_N_MAX)?;
    Ok((well, packet, coeffs))
}

/// p-integral of the eigenstate field against `|u_n(x)|^2` on 201 x-nodes.
/// The field tails fall off as `1/p^2`, so the window is `|p| <= 128 p_n`
/// sampled at `dp <= hbar / 4L`.
pub fn check_position_marginal(well: &WellConfig, n: u32) -> Result<CheckResult> {
    let p_max = 128.0 * well.momentum_quantum(n);
    let step = 0.25 * well.hbar() / well.length();
    let np = 2 * ((2.0 * p_max / step / 2.0).ceil() as usize) + 1;
    let grid = PhaseSpaceGrid::new(0.0, well.length(), 201, -p_max, p_max, np)?;
    let field = wigner_field_eigen(well, idx(n), grid);
    let exact = grid.xs().into_iter().map(|x| u(well, idx(n), x).powi(2));
    let err = max_abs_diff(marginal_x(&field), exact);
    Ok(CheckResult::new(format!("position marginal n={n}"), err, 1e-4))
}

/// x-integral of the eigenstate field against `|phi_n(p)|^2` over
/// `[-8 p_n, 8 p_n]` (801 momenta, 401 positions).
pub fn check_momentum_marginal(well: &WellConfig, n: u32) -> Result<CheckResult> {
    let p_max = 8.0 * well.momentum_quantum(n);
    let grid = PhaseSpaceGrid::new(0.0, well.length(), 401, -p_max, p_max, 801)?;
    let field = wigner_field_eigen(well, idx(n), grid);
    let exact = grid.ps().into_iter().map(|p| momentum_density(well, idx(n), p));
    let err = max_abs_diff(marginal_p(&field), exact);
    Ok(CheckResult::new(format!("momentum marginal n={n}"), err, 1e-6))
}

pub fn marginals() -> Result<Vec<CheckResult>> {
    let well = WellConfig::unit_well();
    let mut out = Vec::new();
    for n in [1, 10] {
        out.push(check_position_marginal(&well, n)?);
        out.push(check_momentum_marginal(&well, n)?);
    }
    Ok(out)
}

pub fn orthonormality() -> Result<Vec<CheckResult>> {
    let well = WellConfig::unit_well();
    let delta = |m: u32, n: u32| if m == n { 1.0 } else { 0.0 };
    let mut x_err: f64 = 0.0;
    let mut p_err: f64 = 0.0;
    for m in 1..=10 {
        for n in m..=10 {
            x_err = x_err.max((overlap_x(&well, idx(m), idx(n))? - delta(m, n)).abs());
            let v = overlap_p(&well, idx(m), idx(n), 400.0 * PI, 25_200);
            p_err = p_err.max((v - delta(m, n)).norm());
        }
    }
    let grid = PhaseSpaceGrid::new(0.0, 1.0, 401, -60.0 * PI, 60.0 * PI, 2401)?;
    let w1 = wigner_field_eigen(&well, idx(1), grid);
    let w2 = wigner_field_eigen(&well, idx(2), grid);
    let cross = overlap_functional(&w1, &w2)?;
    Ok(vec![
        CheckResult::new("position orthonormality m,n <= 10", x_err, 1e-10),
        CheckResult::new("momentum orthonormality m,n <= 10 (|p| <= 400 pi)", p_err, 1e-6),
        CheckResult::new("Wigner overlap of n=1 and n=2", cross.abs(), 1e-6),
    ])
}

/// Closed-form eigenstate and cross terms against the defining integral at
/// `samples` random points with `m, n <= 10`.
pub fn check_oracle_equivalence(rng: &mut StdRng, samples: usize) -> Result<CheckResult> {
    let well = WellConfig::unit_well();
    let p_max = 3.0 * well.momentum_quantum(10);
    let mut err: f64 = 0.0;
    for _ in 0..samples {
        let (m, n) = (rng.gen_range(1..=10), rng.gen_range(1..=10));
        let x = rng.gen_range(0.0..=well.length());
        let p = rng.gen_range(-p_max..=p_max);
        let oracle = eigen_cross_quadrature(&well, idx(m), idx(n), x, p, 8192)?;
        let closed = wigner_cross(&well, idx(m), idx(n), x, p).value;
        err = err.max((oracle - closed).norm());
        if m == n {
            err = err.max((oracle.re - wigner_eigen(&well, idx(n), x, p)).abs());
        }
    }
    Ok(CheckResult::new(format!("closed form vs defining integral, {samples} points"), err, 1e-8))
}

/// Position- and momentum-space oracles against the free-Gaussian closed form.
pub fn check_gaussian_oracles(rng: &mut StdRng, samples: usize) -> Result<CheckResult> {
    let g = FreeGaussianSpec::new(0.5, 6.0, 0.8, 1.0, 1.0)?;
    let x_spec = QuadratureSpec::new(2048, 12.0 * g.beta(), 1e-8)?;
    let p_spec = QuadratureSpec::new(2048, 12.0 / g.alpha, 1e-8)?;
    let momentum = |p: f64| {
        let amp = (g.alpha / PI.sqrt()).sqrt() * (-0.5 * (g.alpha * (p - g.p0)).powi(2)).exp();
        crate::model::ComplexScalar::from_polar(amp, -p * g.x0 / g.hbar)
    };
    let mut err: f64 = 0.0;
    for _ in 0..samples {
        let x = rng.gen_range(-1.0..2.0);
        let p = rng.gen_range(3.0..9.0);
        let exact = free_gaussian_wigner(&g, x, p, 0.0);
        let vx = wigner_quadrature_x(|s| g.psi(s, 0.0), x, p, g.hbar, &x_spec)?;
        let vp = wigner_quadrature_p(momentum, x, p, g.hbar, &p_spec)?;
        err = err.max((vx.re - exact).abs()).max((vp.re - exact).abs()).max((vx - vp).norm());
    }
    Ok(CheckResult::new(format!("Gaussian x- and p-space oracles, {samples} points"), err, 1e-8))
}

pub fn oracle_equivalence(seed: u64) -> Result<Vec<CheckResult>> {
    let mut rng = StdRng::seed_from_u64(seed);
    Ok(vec![check_oracle_equivalence(&mut rng, 100)?, check_gaussian_oracles(&mut rng, 20)?])
}

pub fn revival(seed: u64) -> Result<Vec<CheckResult>> {
    let mut rng = StdRng::seed_from_u64(seed);
    let (well, packet, coeffs) = reference_packet()?;
    let scales = time_scales(&well, &packet, &coeffs);
    let (t_rev, l) = (scales.t_revival, well.length());

    let psi_err = (0..50)
        .map(|_| rng.gen_range(0.0..l))
        .map(|x| (psi(&well, &coeffs, x, t_rev) - psi(&well, &coeffs, x, 0.0)).norm())
        .fold(0.0, f64::max);
    let mirror_err = (0..100)
        .map(|_| rng.gen_range(0.0..l))
        .map(|x| (psi(&well, &coeffs, x, 0.5 * t_rev).norm_sqr() - psi(&well, &coeffs, l - x, 0.0).norm_sqr()).abs())
        .fold(0.0, f64::max);
    let p_range = 3.0 * packet.p0.abs();
    let p_mirror_err = (0..100)
        .map(|_| rng.gen_range(-p_range..p_range))
        .map(|p| (phi_t(&well, &coeffs, p, 0.5 * t_rev).norm_sqr() - phi_t(&well, &coeffs, -p, 0.0).norm_sqr()).abs())
        .fold(0.0, f64::max);
    Ok(vec![
        CheckResult::new("T_rev / T_cl = 80", (scales.t_revival / scales.t_classical - 80.0).abs(), 0.0),
        CheckResult::new("T_cl / t0 = 10/pi", (scales.t_classical / scales.t_spreading - 10.0 / PI).abs(), 1e-12),
        CheckResult::new("fidelity(T_rev) = 1", (fidelity(&well, &coeffs, t_rev) - 1.0).abs(), 1e-10),
        CheckResult::new("psi(x, T_rev) = psi(x, 0), 50 points", psi_err, 1e-8),
        CheckResult::new("|psi(x, T_rev/2)|^2 = |psi(L-x, 0)|^2, 100 points", mirror_err, 1e-8),
        CheckResult::new("|phi(p, T_rev/2)|^2 = |phi(-p, 0)|^2, 100 points", p_mirror_err, 1e-8),
    ])
}

pub fn appendix_a() -> Vec<CheckResult> {
    vec![
        CheckResult::new("int sin z cos(0 z)/z = pi", (sinc_cos_integral(0.0) - PI).abs(), 1e-3),
        CheckResult::new("int sin z cos(z)/z = pi/2", (sinc_cos_integral(1.0) - 0.5 * PI).abs(), 1e-3),
        CheckResult::new("int sin z cos(2z)/z = 0", sinc_cos_integral(2.0).abs(), 1e-3),
        CheckResult::new("int sin^2 z / z^2 = pi", (sinc_squared_integral() - PI).abs(), 1e-3),
    ]
}

/// Runs one suite (or every suite) and returns its checks in order.
pub fn run(suite: Suite, seed: u64) -> Result<Vec<CheckResult>> {
    Ok(match suite {
        Suite::Marginals => marginals()?,
        Suite::Orthonormality => orthonormality()?,
        Suite::OracleEquivalence => oracle_equivalence(seed)?,
        Suite::Revival => revival(seed)?,
        Suite::AppendixA => appendix_a(),
        Suite::All => {
            let mut all = marginals()?;
            all.extend(orthonormality()?);
            all.extend(oracle_equivalence(seed)?);
            all.extend(revival(seed)?);
            all.extend(appendix_a());
            all
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert!(Suite::from_name(name).is_some());
        }
        assert_eq!(Suite::from_name("bogus"), None);
    }

    #[test]
    fn check_formatting() {
        let ok = CheckResult::new("a", 1e-12, 1e-10);
        assert!(ok.passed());
        assert!(ok.to_string().starts_with("PASS a: residual 1.000e-12"));
        let bad = CheckResult::new("b", 2.0, 1.0);
        assert!(!bad.passed());
        assert!(bad.to_string().starts_with("FAIL b"));
        assert!(!CheckResult::new("nan", f64::NAN, 1.0).passed());
    }

    #[test]
    fn appendix_suite_passes() {
        assert!(appendix_a().iter().all(CheckResult::passed));
    }

    #[test]
    fn revival_suite_passes() {
        let r = revival(DEFAULT_SEED).unwrap();
        for c in &r {
            assert!(c.passed(), "{c}");
        }
    }
}
