//! Physical configuration, phase-space grids and field containers.
//!
//! Everything here is an immutable value type. Quantities are carried in
//! whatever unit system the caller picks; nothing is rescaled internally.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Complex amplitudes (wavefunctions, expansion coefficients, cross terms).
pub type ComplexScalar = num_complex::Complex64;

/// Mass, well width and reduced Planck constant of an infinite square well
/// occupying `0 <= x <= length`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellConfig {
    mass: f64,
    length: f64,
    hbar: f64,
}

impl WellConfig {
    pub fn new(mass: f64, length: f64, hbar: f64) -> Result<Self> {
        for (name, value) in [("mass", mass), ("length", length), ("hbar", hbar)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::Config { name, value });
            }
        }
        Ok(Self { mass, length, hbar })
    }

    /// The `2m = L = hbar = 1` unit system used for the reference packet.
    pub fn unit_well() -> Self {
        Self { mass: 0.5, length: 1.0, hbar: 1.0 }
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Momentum quantum `p_n = n pi hbar / L`.
    pub fn momentum_quantum(&self, n: u32) -> f64 {
        f64::from(n) * PI * self.hbar / self.length
    }

    /// Revival time `4 m L^2 / (hbar pi)`. Every eigenphase `E_n t / hbar`
    /// equals `2 pi n^2 t / T_rev`, so this is a property of the well alone.
    pub fn revival_time(&self) -> f64 {
        4.0 * self.mass * self.length * self.length / (self.hbar * PI)
    }

    /// Classical round-trip period `2 m L^2 / (hbar pi n0)` at central index `n0`.
    pub fn classical_period(&self, n0: u32) -> f64 {
        2.0 * self.mass * self.length * self.length / (self.hbar * PI * f64::from(n0))
    }

    /// Whether `x` lies in the closed interval `[0, L]`.
    pub fn contains(&self, x: f64) -> bool {
        (0.0..=self.length).contains(&x)
    }
}

/// Rectangular (x, p) sampling with closed-interval, evenly spaced nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSpaceGrid {
    x_min: f64,
    x_max: f64,
    nx: usize,
    p_min: f64,
    p_max: f64,
    np: usize,
}

impl PhaseSpaceGrid {
    pub fn new(x_min: f64, x_max: f64, nx: usize, p_min: f64, p_max: f64, np: usize) -> Result<Self> {
        if ![x_min, x_max, p_min, p_max].iter().all(|v| v.is_finite()) {
            return Err(Error::Grid("bounds must be finite".into()));
        }
        if x_min >= x_max {
            return Err(Error::Grid(format!("x_min ({x_min}) must be < x_max ({x_max})")));
        }
        if p_min >= p_max {
            return Err(Error::Grid(format!("p_min ({p_min}) must be < p_max ({p_max})")));
        }
        if nx < 2 || np < 2 {
            return Err(Error::Grid(format!("need at least 2 nodes per axis, got {nx} x {np}")));
        }
        Ok(Self { x_min, x_max, nx, p_min, p_max, np })
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn np(&self) -> usize {
        self.np
    }

    pub fn x_range(&self) -> (f64, f64) {
        (self.x_min, self.x_max)
    }

    pub fn p_range(&self) -> (f64, f64) {
        (self.p_min, self.p_max)
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.nx - 1) as f64
    }

    pub fn dp(&self) -> f64 {
        (self.p_max - self.p_min) / (self.np - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        node(self.x_min, self.x_max, self.nx, i)
    }

    pub fn p(&self, j: usize) -> f64 {
        node(self.p_min, self.p_max, self.np, j)
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.nx).map(|i| self.x(i)).collect()
    }

    pub fn ps(&self) -> Vec<f64> {
        (0..self.np).map(|j| self.p(j)).collect()
    }
}

fn node(lo: f64, hi: f64, count: usize, i: usize) -> f64 {
    if i + 1 == count {
        hi
    } else {
        lo + i as f64 * (hi - lo) / (count - 1) as f64
    }
}

/// When a field was sampled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Timestamp {
    Stationary,
    At(f64),
}

/// Real field sampled on a [`PhaseSpaceGrid`], stored row-major with
/// row `i` holding every `p_j` at `x_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerField {
    grid: PhaseSpaceGrid,
    values: Vec<f64>,
    timestamp: Timestamp,
}

impl WignerField {
    /// Evaluates `f(x, p)` at every node. Rows are filled in parallel on the
    /// current rayon pool; each value depends only on its own node, so the
    /// result does not depend on the thread count.
    pub fn from_fn<F>(grid: PhaseSpaceGrid, timestamp: Timestamp, f: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Sync,
    {
        let xs = grid.xs();
        let ps = grid.ps();
        let values: Vec<f64> = (0..grid.nx * grid.np)
            .into_par_iter()
            .map(|k| f(xs[k / grid.np], ps[k % grid.np]))
            .collect();
        debug_assert!(values.iter().all(|v| v.is_finite()), "non-finite field value");
        Self { grid, values, timestamp }
    }

    pub fn from_values(grid: PhaseSpaceGrid, timestamp: Timestamp, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.nx * grid.np {
            return Err(Error::Shape(format!(
                "expected {} x {} = {} values, got {}",
                grid.nx,
                grid.np,
                grid.nx * grid.np,
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Shape(format!("non-finite field value {bad}")));
        }
        Ok(Self { grid, values, timestamp })
    }

    pub fn grid(&self) -> &PhaseSpaceGrid {
        &self.grid
    }

    pub fn timestamp(&self) -> Timestamp {
        self.timestamp
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.grid.np + j]
    }

    /// All samples at fixed `x_i`.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.grid.np..(i + 1) * self.grid.np]
    }

    /// All samples at fixed `p_j`.
    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.grid.nx).map(|i| self.get(i, j)).collect()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Node indices of the largest value (first occurrence).
    pub fn argmax(&self) -> (usize, usize) {
        let mut best = 0;
        for (k, v) in self.values.iter().enumerate() {
            if *v > self.values[best] {
                best = k;
            }
        }
        (best / self.grid.np, best % self.grid.np)
    }
}

/// Characteristic times of a packet: classical period, revival time and
/// free-spreading time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeScales {
    pub t_classical: f64,
    pub t_revival: f64,
    pub t_spreading: f64,
}
