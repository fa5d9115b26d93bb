//! Closed-form benchmarks: free Gaussian packets, two-Gaussian
//! superpositions, oscillator eigenstates and classical densities.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::ComplexScalar;
use crate::quadrature::simpson_richardson;
use crate::special::{hermite_function, laguerre};

/// Free Gaussian packet with momentum width parameter `alpha`
/// (`beta = hbar alpha` in position).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeGaussianSpec {
    pub x0: f64,
    pub p0: f64,
    pub alpha: f64,
    pub mass: f64,
    pub hbar: f64,
}

impl FreeGaussianSpec {
    pub fn new(x0: f64, p0: f64, alpha: f64, mass: f64, hbar: f64) -> Result<Self> {
        if !(x0.is_finite() && p0.is_finite()) {
            return Err(Error::Packet(format!("x0 and p0 must be finite, got {x0}, {p0}")));
        }
        for (name, value) in [("alpha", alpha), ("mass", mass), ("hbar", hbar)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::Config { name, value });
            }
        }
        Ok(Self { x0, p0, alpha, mass, hbar })
    }

    pub fn beta(&self) -> f64 {
        self.hbar * self.alpha
    }

    /// Spreading time `m hbar alpha^2`.
    pub fn spreading_time(&self) -> f64 {
        self.mass * self.hbar * self.alpha * self.alpha
    }

    /// Position-space wavefunction at time `t`.
    pub fn psi(&self, x: f64, t: f64) -> ComplexScalar {
        let (m, hbar, beta) = (self.mass, self.hbar, self.beta());
        let spread = ComplexScalar::new(1.0, t / self.spreading_time());
        let prefactor = (spread * PI.sqrt() * beta).sqrt().inv();
        let d = x - self.x0 - self.p0 * t / m;
        let phase = self.p0 * (x - self.x0) / hbar - self.p0 * self.p0 * t / (2.0 * m * hbar);
        let gauss = (-d * d / (2.0 * beta * beta * spread)).exp();
        prefactor * gauss * ComplexScalar::from_polar(1.0, phase)
    }
}

/// `(1/pi hbar) exp(-alpha^2 (p - p0)^2) exp(-(x - x0 - p t / m)^2 / beta^2)`.
pub fn free_gaussian_wigner(spec: &FreeGaussianSpec, x: f64, p: f64, t: f64) -> f64 {
    let dp = p - spec.p0;
    let dx = (x - spec.x0 - p * t / spec.mass) / spec.beta();
    (-(spec.alpha * spec.alpha * dp * dp) - dx * dx).exp() / (PI * spec.hbar)
}

/// `gamma G(x; x_A, p_A) + delta G(x; x_B, p_B)` with
/// `G(x; x_j, p_j) = (beta sqrt(pi))^{-1/2} exp(-(x - x_j)^2 / 2beta^2) exp(i p_j (x - x_j) / hbar)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoGaussianSpec {
    pub a: (f64, f64),
    pub b: (f64, f64),
    pub gamma: ComplexScalar,
    pub delta: ComplexScalar,
    pub beta: f64,
    pub hbar: f64,
}

impl TwoGaussianSpec {
    /// Rescales the amplitudes so that `|gamma|^2 + |delta|^2 = 1`.
    pub fn normalized(
        a: (f64, f64),
        b: (f64, f64),
        gamma: ComplexScalar,
        delta: ComplexScalar,
        beta: f64,
        hbar: f64,
    ) -> Result<Self> {
        for (name, value) in [("beta", beta), ("hbar", hbar)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::Config { name, value });
            }
        }
        let norm = (gamma.norm_sqr() + delta.norm_sqr()).sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Packet("amplitudes must be finite and not both zero".into()));
        }
        Ok(Self { a, b, gamma: gamma / norm, delta: delta / norm, beta, hbar })
    }

    fn lump(&self, centre: (f64, f64), x: f64) -> ComplexScalar {
        let d = x - centre.0;
        let amp = (self.beta * PI.sqrt()).powf(-0.5) * (-d * d / (2.0 * self.beta * self.beta)).exp();
        ComplexScalar::from_polar(amp, centre.1 * d / self.hbar)
    }

    pub fn psi(&self, x: f64) -> ComplexScalar {
        self.gamma * self.lump(self.a, x) + self.delta * self.lump(self.b, x)
    }

    /// `<psi|psi>`, which differs from `|gamma|^2 + |delta|^2` by the
    /// overlap of the two lumps.
    pub fn state_norm(&self) -> f64 {
        let ((xa, pa), (xb, pb)) = (self.a, self.b);
        let d = xa - xb;
        let q = (pb - pa) * self.beta / self.hbar;
        let overlap = ComplexScalar::from_polar(
            (-d * d / (4.0 * self.beta * self.beta) - q * q / 4.0).exp(),
            d * (pa + pb) / (2.0 * self.hbar),
        );
        self.gamma.norm_sqr() + self.delta.norm_sqr() + 2.0 * (self.gamma.conj() * self.delta * overlap).re
    }
}

/// Two positive lumps plus their interference term centred at the midpoint
/// of the two phase-space centres.
pub fn two_gaussian_wigner(spec: &TwoGaussianSpec, x: f64, p: f64) -> f64 {
    let ((xa, pa), (xb, pb)) = (spec.a, spec.b);
    let (beta, hbar) = (spec.beta, spec.hbar);
    let alpha = beta / hbar;
    let envelope = |xc: f64, pc: f64| {
        let (u, v) = ((x - xc) / beta, alpha * (p - pc));
        (-u * u - v * v).exp()
    };
    let (xm, pm) = (0.5 * (xa + xb), 0.5 * (pa + pb));
    let phase = (xb * pb - xa * pa) / hbar - (xa - xb) * (p - pm) / hbar + (pa - pb) * x / hbar;
    let cross = (spec.gamma * spec.delta.conj() * ComplexScalar::from_polar(1.0, phase)).re;
    (spec.gamma.norm_sqr() * envelope(xa, pa)
        + spec.delta.norm_sqr() * envelope(xb, pb)
        + 2.0 * envelope(xm, pm) * cross)
        / (PI * hbar)
}

/// Oscillator eigenfunction `b^{-1/2} h_n(x / b)` with length scale `b`.
pub fn sho_eigenfunction(n: u32, x: f64, b: f64) -> f64 {
    hermite_function(n, x / b) / b.sqrt()
}

/// `((-1)^n / pi hbar) exp(-rho^2) L_n(2 rho^2)`, `rho^2 = x^2/b^2 + b^2 p^2 / hbar^2`.
pub fn sho_wigner(n: u32, x: f64, p: f64, b: f64, hbar: f64) -> f64 {
    let (u, v) = (x / b, b * p / hbar);
    let rho2 = u * u + v * v;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * (-rho2).exp() * laguerre(n, 2.0 * rho2) / (PI * hbar)
}

/// Classical probability densities of a particle with fixed energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClassicalDensity {
    /// Uniform position density `1/L` in a well of width `L`.
    UniformX { length: f64 },
    /// Equal weights at `+-p0` in a well.
    DiracPairP { p0: f64 },
    /// Oscillator position density `1 / (pi sqrt(x_A^2 - x^2))`.
    ShoX { amplitude: f64 },
    /// Oscillator momentum density `1 / (pi sqrt(p_A^2 - p^2))`.
    ShoP { amplitude: f64 },
}

/// A density value, or the atoms of a discrete distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClassicalValue {
    Density(f64),
    /// `(location, weight)` pairs.
    Atoms([(f64, f64); 2]),
}

impl ClassicalDensity {
    /// Evaluates the density at `point`; the momentum atoms ignore `point`.
    pub fn evaluate(&self, point: f64) -> Result<ClassicalValue> {
        match *self {
            ClassicalDensity::UniformX { length } => {
                let inside = (0.0..=length).contains(&point);
                Ok(ClassicalValue::Density(if inside { 1.0 / length } else { 0.0 }))
            }
            ClassicalDensity::DiracPairP { p0 } => {
                Ok(ClassicalValue::Atoms([(-p0.abs(), 0.5), (p0.abs(), 0.5)]))
            }
            ClassicalDensity::ShoX { amplitude } | ClassicalDensity::ShoP { amplitude } => {
                if point.abs() >= amplitude {
                    return Err(Error::Domain { point, bound: amplitude });
                }
                Ok(ClassicalValue::Density(1.0 / (PI * (amplitude * amplitude - point * point).sqrt())))
            }
        }
    }

    /// Classical average of `g`. The oscillator densities are integrated
    /// after substituting `x = A sin(theta)`, which absorbs the inverse
    /// square-root endpoint singularities.
    pub fn expectation(&self, g: impl Fn(f64) -> f64) -> Result<f64> {
        match *self {
            ClassicalDensity::UniformX { length } => {
                Ok(simpson_richardson(&g, 0.0, length, 1024, 1e-12)? / length)
            }
            ClassicalDensity::DiracPairP { p0 } => Ok(0.5 * (g(-p0) + g(p0))),
            ClassicalDensity::ShoX { amplitude } | ClassicalDensity::ShoP { amplitude } => {
                let v = simpson_richardson(|th: f64| g(amplitude * th.sin()), -0.5 * PI, 0.5 * PI, 1024, 1e-12)?;
                Ok(v / PI)
            }
        }
    }
}

/// Free function form of [`ClassicalDensity::evaluate`].
pub fn classical_density(kind: &ClassicalDensity, point: f64) -> Result<ClassicalValue> {
    kind.evaluate(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{wigner_quadrature_x, QuadratureSpec};
    use crate::quadrature::simpson;
    use proptest::prelude::*;

    fn gaussian() -> FreeGaussianSpec {
        FreeGaussianSpec::new(0.3, 2.0, 0.7, 1.3, 1.0).unwrap()
    }

    /// 2-D Simpson over a box.
    fn integrate_2d(f: impl Fn(f64, f64) -> f64, x: (f64, f64), p: (f64, f64), panels: usize) -> f64 {
        simpson(|xv| simpson(|pv| f(xv, pv), p.0, p.1, panels), x.0, x.1, panels)
    }

    fn density(v: ClassicalValue) -> f64 {
        match v {
            ClassicalValue::Density(d) => d,
            ClassicalValue::Atoms(_) => panic!("expected a density"),
        }
    }

    #[test]
    fn free_gaussian_values() {
        let g = FreeGaussianSpec::new(0.5, 3.0, 1.0, 1.0, 1.0).unwrap();
        assert!((free_gaussian_wigner(&g, 0.5, 3.0, 0.0) - 1.0 / PI).abs() < 1e-16);
        let t = 0.8;
        assert!((free_gaussian_wigner(&g, 0.5 + 3.0 * t, 3.0, t) - 1.0 / PI).abs() < 1e-16);
        assert!(FreeGaussianSpec::new(0.0, 0.0, 0.0, 1.0, 1.0).is_err());
        assert!(FreeGaussianSpec::new(0.0, 0.0, 1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn free_gaussian_normalization() {
        let g = gaussian();
        for t in [0.0, 0.4, 1.7] {
            let (xc, pc) = (g.x0 + g.p0 * t / g.mass, g.p0);
            // the shear makes the x-extent grow with |p| t / m
            let total = integrate_2d(
                |x, p| free_gaussian_wigner(&g, x, p, t),
                (xc - 14.0 - 12.0 * t, xc + 14.0 + 12.0 * t),
                (pc - 12.0, pc + 12.0),
                1200,
            );
            assert!((total - 1.0).abs() < 1e-10, "t={t}: {total}");
        }
    }

    #[test]
    fn free_gaussian_matches_wavefunction_quadrature() {
        let g = gaussian();
        let spec = QuadratureSpec::new(2048, 12.0 * g.beta(), 1e-11).unwrap();
        for t in [0.0, 0.3, 1.1] {
            for (x, p) in [(0.3, 2.0), (1.0, 1.4), (-0.2, 2.9), (2.5, 2.3)] {
                let q = wigner_quadrature_x(|s| g.psi(s, t), x, p, g.hbar, &spec).unwrap();
                let closed = free_gaussian_wigner(&g, x, p, t);
                assert!(q.im.abs() < 1e-12);
                assert!((q.re - closed).abs() < 1e-10, "t={t} ({x},{p}): {} vs {closed}", q.re);
            }
        }
    }

    #[test]
    fn free_wavefunction_is_normalized() {
        let g = gaussian();
        let n = simpson(|x| g.psi(x, 0.9).norm_sqr(), -20.0, 20.0, 4000);
        assert!((n - 1.0).abs() < 1e-12);
    }

    fn pair(a: (f64, f64), b: (f64, f64), gamma: f64, delta: f64) -> TwoGaussianSpec {
        let c = |v: f64| ComplexScalar::new(v, 0.0);
        TwoGaussianSpec::normalized(a, b, c(gamma), c(delta), 0.4, 1.0).unwrap()
    }

    #[test]
    fn two_gaussian_reduces_to_single() {
        let s = pair((0.2, 1.5), (3.0, -2.0), 1.0, 0.0);
        let g = FreeGaussianSpec::new(0.2, 1.5, 0.4, 1.0, 1.0).unwrap();
        for (x, p) in [(0.2, 1.5), (0.0, 0.0), (1.6, -0.25), (-0.7, 3.0)] {
            assert!((two_gaussian_wigner(&s, x, p) - free_gaussian_wigner(&g, x, p, 0.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn normalizing_constructor() {
        let c = ComplexScalar::new;
        let s = TwoGaussianSpec::normalized((0.0, 0.0), (1.0, 0.0), c(3.0, 1.0), c(0.0, -2.0), 0.3, 1.0).unwrap();
        assert!((s.gamma.norm_sqr() + s.delta.norm_sqr() - 1.0).abs() < 1e-12);
        assert!(TwoGaussianSpec::normalized((0.0, 0.0), (1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), 0.3, 1.0).is_err());
        assert!(TwoGaussianSpec::normalized((0.0, 0.0), (1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), 0.0, 1.0).is_err());
    }

    #[test]
    fn two_gaussian_matches_wavefunction_quadrature() {
        let c = ComplexScalar::new;
        let specs = [
            TwoGaussianSpec::normalized((-0.4, 2.0), (0.9, -1.0), c(0.6, 0.2), c(-0.3, 0.7), 0.35, 1.0).unwrap(),
            TwoGaussianSpec::normalized((0.5, 10.0), (0.5, -10.0), c(1.0, 0.0), c(1.0, 0.0), 0.2, 1.0).unwrap(),
            TwoGaussianSpec::normalized((0.1, 3.0), (1.2, 3.0), c(0.0, 1.0), c(1.0, 0.0), 0.25, 0.7).unwrap(),
        ];
        for s in &specs {
            let spec = QuadratureSpec::new(4096, 3.0, 1e-11).unwrap();
            for (x, p) in [(0.0, 0.0), (0.25, 0.5), (0.5, 1.0), (0.8, -2.2), (1.1, 3.3)] {
                let q = wigner_quadrature_x(|y| s.psi(y), x, p, s.hbar, &spec).unwrap();
                let closed = two_gaussian_wigner(s, x, p);
                assert!((q.re - closed).abs() < 1e-10, "{s:?} ({x},{p}): {} vs {closed}", q.re);
            }
        }
    }

    #[test]
    fn two_gaussian_integral() {
        // well separated: the cross term integrates to the lump overlap, ~e^{-56}
        let s = pair((-3.0, 2.0), (3.0, -1.0), 0.6, 0.8);
        assert!((s.state_norm() - 1.0).abs() < 1e-15);
        let total = integrate_2d(|x, p| two_gaussian_wigner(&s, x, p), (-8.0, 8.0), (-25.0, 25.0), 1400);
        assert!((total - 1.0).abs() < 1e-8, "{total}");
        // overlapping: the total is the state norm
        let c = ComplexScalar::new;
        let s = TwoGaussianSpec::normalized((0.1, 1.0), (0.4, 0.5), c(0.6, 0.3), c(0.2, -0.7), 0.4, 1.0).unwrap();
        let total = integrate_2d(|x, p| two_gaussian_wigner(&s, x, p), (-5.0, 5.0), (-25.0, 25.0), 1400);
        let direct = simpson(|x| s.psi(x).norm_sqr(), -5.0, 5.0, 4000);
        assert!((s.state_norm() - direct).abs() < 1e-12);
        assert!((total - s.state_norm()).abs() < 1e-8, "{total} vs {}", s.state_norm());
    }

    #[test]
    fn counter_propagating_cross_term() {
        // equal positions, opposite momenta: interference along x at p = 0
        let p0 = 10.0;
        let s = pair((0.5, p0), (0.5, -p0), 1.0, 1.0);
        let cross = |x: f64| {
            two_gaussian_wigner(&s, x, 0.0) - {
                let e = |pc: f64| (-(x - 0.5f64).powi(2) / 0.16 - (0.4 * (0.0 - pc)).powi(2)).exp();
                0.5 * (e(p0) + e(-p0)) / PI
            }
        };
        // envelope 2 |gamma delta| / (pi hbar) = 1/pi
        assert!((cross(0.5) - 1.0 / PI).abs() < 1e-15);
        // cos(2 p0 x) carrier: zero one quarter period from the centre
        let quarter = PI / (4.0 * p0);
        assert!(cross(0.5 + quarter).abs() < 1e-15);
        let period = PI / p0;
        let ratio = cross(0.5 + period) / cross(0.5);
        let envelope = (-(period * period) / 0.16f64).exp();
        assert!((ratio - envelope).abs() < 1e-12);
    }

    #[test]
    fn separated_in_position_oscillates_in_momentum() {
        let (xa, xb) = (-0.6, 0.6);
        let s = pair((xa, 1.0), (xb, 1.0), 1.0, 1.0);
        let period = 2.0 * PI / (xa - xb).abs();
        let lumps = |p: f64| {
            let e = |xc: f64| (-(0.0f64 - xc).powi(2) / 0.16 - (0.4 * (p - 1.0)).powi(2)).exp();
            0.5 * (e(xa) + e(xb)) / PI
        };
        let cross = |p: f64| two_gaussian_wigner(&s, 0.0, p) - lumps(p);
        let env = |p: f64| (-(0.4 * (p - 1.0f64)).powi(2)).exp() / PI;
        for p in [0.3, 1.0, 1.7] {
            let a = cross(p) / env(p);
            let b = cross(p + period) / env(p + period);
            assert!((a - b).abs() < 1e-12);
            let half = cross(p + 0.5 * period) / env(p + 0.5 * period);
            assert!((a + half).abs() < 1e-12);
        }
    }

    #[test]
    fn oscillator_values() {
        assert!((sho_wigner(0, 0.0, 0.0, 1.0, 1.0) - 1.0 / PI).abs() < 1e-16);
        assert_eq!(sho_wigner(1, 0.0, 0.0, 1.0, 1.0), -1.0 / PI);
        // explicit n = 1 form (2 rho^2 - 1) e^{-rho^2} / pi
        let (x, p, b): (f64, f64, f64) = (0.4, -0.9, 1.3);
        let rho2 = (x / b).powi(2) + (b * p).powi(2);
        assert!((sho_wigner(1, x, p, b, 1.0) - (2.0 * rho2 - 1.0) * (-rho2).exp() / PI).abs() < 1e-15);
    }

    #[test]
    fn oscillator_marginals() {
        let (b, hbar) = (0.8, 1.0);
        for n in [0, 1] {
            for x in [-1.5, -0.3, 0.0, 0.45, 1.2] {
                let m = simpson(|p| sho_wigner(n, x, p, b, hbar), -12.0, 12.0, 2000);
                let exact = sho_eigenfunction(n, x, b).powi(2);
                assert!((m - exact).abs() < 1e-8, "n={n} x={x}: {m} vs {exact}");
            }
        }
    }

    #[test]
    fn oscillator_normalization() {
        let total = integrate_2d(|x, p| sho_wigner(3, x, p, 1.0, 1.0), (-9.0, 9.0), (-9.0, 9.0), 900);
        assert!((total - 1.0).abs() < 1e-8, "{total}");
    }

    #[test]
    fn classical_values() {
        let w = ClassicalDensity::UniformX { length: 1.0 };
        assert_eq!(density(w.evaluate(0.37).unwrap()), 1.0);
        assert_eq!(density(w.evaluate(1.37).unwrap()), 0.0);
        let atoms = ClassicalDensity::DiracPairP { p0: 10.0 * PI }.evaluate(0.0).unwrap();
        assert_eq!(atoms, ClassicalValue::Atoms([(-10.0 * PI, 0.5), (10.0 * PI, 0.5)]));
        let sho = ClassicalDensity::ShoX { amplitude: 1.0 };
        assert!((density(classical_density(&sho, 0.0).unwrap()) - 1.0 / PI).abs() < 1e-16);
        assert!(matches!(sho.evaluate(1.0), Err(Error::Domain { .. })));
        assert!(matches!(sho.evaluate(-1.5), Err(Error::Domain { .. })));
        let shop = ClassicalDensity::ShoP { amplitude: 2.0 };
        assert!((density(shop.evaluate(0.0).unwrap()) - 0.5 / PI).abs() < 1e-16);
    }

    #[test]
    fn classical_normalization() {
        for kind in [
            ClassicalDensity::UniformX { length: 2.5 },
            ClassicalDensity::DiracPairP { p0: 3.0 },
            ClassicalDensity::ShoX { amplitude: 1.7 },
            ClassicalDensity::ShoP { amplitude: 0.4 },
        ] {
            assert!((kind.expectation(|_| 1.0).unwrap() - 1.0).abs() < 1e-10, "{kind:?}");
        }
        // <x^2> = A^2 / 2 for the oscillator
        let a = 1.7;
        let m2 = ClassicalDensity::ShoX { amplitude: a }.expectation(|x| x * x).unwrap();
        assert!((m2 - 0.5 * a * a).abs() < 1e-12);
        // the substituted integrand is exactly the density times dx/dtheta
        let sho = ClassicalDensity::ShoX { amplitude: a };
        let th: f64 = 0.7;
        let jac = density(sho.evaluate(a * th.sin()).unwrap()) * a * th.cos();
        assert!((jac - 1.0 / PI).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn free_gaussian_is_positive(x in -3.0f64..3.0, p in -5.0f64..5.0, t in 0.0f64..2.0) {
            let g = FreeGaussianSpec::new(0.0, 1.0, 0.5, 1.0, 1.0).unwrap();
            prop_assert!(free_gaussian_wigner(&g, x, p, t) > 0.0);
        }

        #[test]
        fn oscillator_is_bounded(n in 0u32..=50, x in -6.0f64..6.0, p in -6.0f64..6.0) {
            let v = sho_wigner(n, x, p, 1.0, 1.0);
            prop_assert!(v.is_finite());
            prop_assert!(v.abs() <= 1.0 / PI + 1e-12);
        }
    }
}
