//! Quotients with removable singularities and the orthogonal polynomials
//! needed by the oscillator reference model.

use std::f64::consts::PI;

const SERIES_CUTOFF: f64 = 1e-4;

/// `sin(z/2) / z`, finite at `z = 0` where it tends to `1/2`.
///
/// Below `|z| = 1e-4` the two-term series is used; the dropped `z^4/3840`
/// term is under `3e-20`.
pub fn sinc_half(z: f64) -> f64 {
    if z.abs() < SERIES_CUTOFF {
        0.5 - z * z / 48.0
    } else {
        (0.5 * z).sin() / z
    }
}

/// `sin(a * chi) / a`, which tends to `chi` as `a -> 0`.
pub fn sin_ratio(a: f64, chi: f64) -> f64 {
    let z = a * chi;
    if z.abs() < SERIES_CUTOFF {
        chi * (1.0 - z * z / 6.0)
    } else {
        z.sin() / a
    }
}

/// Laguerre polynomial `L_n(x)` by the three-term recurrence.
pub fn laguerre(n: u32, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut curr = 1.0 - x;
    for k in 1..n {
        let k = f64::from(k);
        let next = ((2.0 * k + 1.0 - x) * curr - k * prev) / (k + 1.0);
        prev = curr;
        curr = next;
    }
    curr
}

/// Normalized Hermite function `H_n(z) e^{-z^2/2} / sqrt(2^n n! sqrt(pi))`,
/// built by the recurrence on the normalized functions so nothing overflows.
pub fn hermite_function(n: u32, z: f64) -> f64 {
    let mut prev = PI.powf(-0.25) * (-0.5 * z * z).exp();
    if n == 0 {
        return prev;
    }
    let mut curr = 2f64.sqrt() * z * prev;
    for k in 1..n {
        let k = f64::from(k);
        let next = (2.0 / (k + 1.0)).sqrt() * z * curr - (k / (k + 1.0)).sqrt() * prev;
        prev = curr;
        curr = next;
    }
    curr
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sinc_half_limit() {
        assert_eq!(sinc_half(0.0), 0.5);
        // just inside the series branch
        let z = 0.99e-4;
        assert!((sinc_half(z) - (z / 2.0).sin() / z).abs() < 1e-17);
        assert!((sinc_half(PI) - 1.0 / PI).abs() < 1e-16);
    }

    #[test]
    fn sin_ratio_limit() {
        assert_eq!(sin_ratio(0.0, 0.3), 0.3);
        assert_eq!(sin_ratio(0.0, 0.0), 0.0);
        assert!((sin_ratio(2.0, 0.25) - 0.5f64.sin() / 2.0).abs() < 1e-16);
    }

    #[test]
    fn laguerre_low_orders() {
        let x: f64 = 0.7;
        assert_eq!(laguerre(0, x), 1.0);
        assert!((laguerre(1, x) - (1.0 - x)).abs() < 1e-15);
        assert!((laguerre(2, x) - (x * x - 4.0 * x + 2.0) / 2.0).abs() < 1e-15);
        let l3 = (-x.powi(3) + 9.0 * x * x - 18.0 * x + 6.0) / 6.0;
        assert!((laguerre(3, x) - l3).abs() < 1e-14);
        assert_eq!(laguerre(50, 0.0), 1.0);
    }

    #[test]
    fn hermite_low_orders() {
        let z: f64 = 0.4;
        let g = PI.powf(-0.25) * (-z * z / 2.0).exp();
        assert!((hermite_function(0, z) - g).abs() < 1e-15);
        assert!((hermite_function(1, z) - g * 2.0 * z / 2f64.sqrt()).abs() < 1e-15);
        let h2 = (4.0 * z * z - 2.0) / (8.0f64).sqrt();
        assert!((hermite_function(2, z) - g * h2).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn sinc_half_matches_direct_away_from_zero(z in 1e-3f64..100.0) {
            prop_assert!((sinc_half(z) - (z / 2.0).sin() / z).abs() < 1e-16);
            prop_assert_eq!(sinc_half(z), sinc_half(-z));
        }

        #[test]
        fn sin_ratio_series_branch_is_accurate(a in -1e-3f64..1e-3, chi in 0.0f64..0.09) {
            let direct = if a == 0.0 { chi } else { (a * chi).sin() / a };
            prop_assert!((sin_ratio(a, chi) - direct).abs() < 1e-15);
        }
    }
}
