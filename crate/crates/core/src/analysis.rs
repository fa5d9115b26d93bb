//! Shape measurements on sampled curves: lump counting by peak prominence
//! and oscillation wavenumbers from zero crossings.

use std::f64::consts::PI;

/// Fraction of the global maximum a peak must stand out by to count as a lump.
pub const DEFAULT_PROMINENCE: f64 = 0.1;

/// Indices of interior local maxima. A flat top counts once, at its
/// leftmost sample.
pub fn local_maxima(values: &[f64]) -> Vec<usize> {
    let mut peaks = Vec::new();
    let mut i = 1;
    while i + 1 < values.len() {
        if values[i] > values[i - 1] {
            let mut j = i;
            while j + 1 < values.len() && values[j + 1] == values[i] {
                j += 1;
            }
            if j + 1 < values.len() && values[j + 1] < values[i] {
                peaks.push(i);
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }
    peaks
}

/// Topographic prominence of the peak at `i`: its height above the higher
/// of the two lowest points reached before climbing to something taller
/// (or hitting an end of the array).
pub fn prominence(values: &[f64], i: usize) -> f64 {
    let peak = values[i];
    let mut left_min = peak;
    for &v in values[..i].iter().rev() {
        if v > peak {
            break;
        }
        left_min = left_min.min(v);
    }
    let mut right_min = peak;
    for &v in &values[i + 1..] {
        if v > peak {
            break;
        }
        right_min = right_min.min(v);
    }
    peak - left_min.max(right_min)
}

/// Peaks whose prominence is at least `fraction` of the largest sample.
pub fn lumps(values: &[f64], fraction: f64) -> Vec<usize> {
    let top = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(top > 0.0) {
        return Vec::new();
    }
    local_maxima(values)
        .into_iter()
        .filter(|&i| prominence(values, i) >= fraction * top)
        .collect()
}

/// Number of [`lumps`] at the default 10 % prominence threshold.
pub fn count_lumps(values: &[f64]) -> usize {
    lumps(values, DEFAULT_PROMINENCE).len()
}

/// Number of strict sign changes, skipping exact zeros.
pub fn sign_changes(values: &[f64]) -> usize {
    let mut last = 0.0f64;
    let mut count = 0;
    for &v in values {
        if v == 0.0 {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            count += 1;
        }
        last = v;
    }
    count
}

/// Wavenumber `pi * crossings / span` of a sampled oscillation. A carrier
/// `cos(k s)` crosses zero every `pi / k`.
pub fn zero_crossing_wavenumber(values: &[f64], span: f64) -> f64 {
    PI * sign_changes(values) as f64 / span
}
