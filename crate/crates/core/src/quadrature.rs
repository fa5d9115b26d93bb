//! Composite Simpson quadrature, with a one-step Richardson halving used as
//! the convergence certificate.

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::model::ComplexScalar;

/// Values that Simpson's rule can accumulate.
pub trait Quantity:
    Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn magnitude(&self) -> f64;
}

impl Quantity for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Quantity for ComplexScalar {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

fn simpson_weight(i: usize, last: usize) -> f64 {
    if i == 0 || i == last {
        1.0
    } else if i % 2 == 1 {
        4.0
    } else {
        2.0
    }
}

/// Composite Simpson over `[a, b]` with `panels` subintervals.
///
/// # Panics
/// If `panels` is zero or odd.
pub fn simpson<T: Quantity>(f: impl Fn(f64) -> T, a: f64, b: f64, panels: usize) -> T {
    assert!(panels >= 2 && panels.is_multiple_of(2), "Simpson needs an even panel count, got {panels}");
    let h = (b - a) / panels as f64;
    let mut acc = T::default();
    for i in 0..=panels {
        let x = if i == panels { b } else { a + i as f64 * h };
        acc = acc + f(x) * simpson_weight(i, panels);
    }
    acc * (h / 3.0)
}

/// Simpson with `panels` and `2 * panels` subintervals evaluated in one sweep.
/// Fails when the two estimates differ by more than `tolerance`; otherwise
/// returns the Richardson-extrapolated value `S_2N + (S_2N - S_N) / 15`.
pub fn simpson_richardson<T: Quantity>(
    f: impl Fn(f64) -> T,
    a: f64,
    b: f64,
    panels: usize,
    tolerance: f64,
) -> Result<T> {
    assert!(panels >= 2 && panels.is_multiple_of(2), "Simpson needs an even panel count, got {panels}");
    let fine_panels = 2 * panels;
    let h = (b - a) / fine_panels as f64;
    let mut fine = T::default();
    let mut coarse = T::default();
    for i in 0..=fine_panels {
        let x = if i == fine_panels { b } else { a + i as f64 * h };
        let v = f(x);
        fine = fine + v * simpson_weight(i, fine_panels);
        if i % 2 == 0 {
            coarse = coarse + v * simpson_weight(i / 2, panels);
        }
    }
    let fine = fine * (h / 3.0);
    let coarse = coarse * (2.0 * h / 3.0);
    let difference = (fine - coarse).magnitude();
    if !(difference <= tolerance) {
        return Err(Error::NonConvergence { difference, tolerance });
    }
    Ok(fine + (fine - coarse) * (1.0 / 15.0))
}

/// Integrates equally spaced samples. An odd sample count uses plain
/// composite Simpson; an even count closes with Simpson's 3/8 rule on the
/// last three intervals; two samples fall back to the trapezoid.
pub fn simpson_samples(values: &[f64], h: f64) -> f64 {
    match values.len() {
        0 | 1 => 0.0,
        2 => 0.5 * h * (values[0] + values[1]),
        3 => h / 3.0 * (values[0] + 4.0 * values[1] + values[2]),
        4 => 3.0 * h / 8.0 * (values[0] + 3.0 * values[1] + 3.0 * values[2] + values[3]),
        n if n % 2 == 1 => {
            let last = n - 1;
            let s: f64 = values.iter().enumerate().map(|(i, v)| v * simpson_weight(i, last)).sum();
            s * h / 3.0
        }
        n => {
            let head = &values[..n - 3];
            let tail = &values[n - 4..];
            simpson_samples(head, h)
                + 3.0 * h / 8.0 * (tail[0] + 3.0 * tail[1] + 3.0 * tail[2] + tail[3])
        }
    }
}
