//! Discrete Fourier transform, circular correlation, and peak search for
//! arbitrary (typically prime) lengths.
//!
//! Two transform routes are provided: a direct `O(N^2)` evaluation used as
//! the always-correct reference, and a fast path backed by `rustfft` (which
//! handles prime lengths internally via Bluestein/Rader). The correlation
//! operations run on the fast path; tests pin both routes to each other.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::error::{Error, Result};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(len: usize, direction: FftDirection) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft(len, direction))
}

/// Unnormalized forward DFT, direct `O(N^2)` reference:
/// `X[k] = sum_n x[n] * exp(-2*pi*i*k*n/N)`.
///
/// Twiddle exponents are reduced modulo `N` before any trigonometry, so the
/// result is accurate to roundoff for any length, prime or not.
pub fn dft_direct(x: &[Complex64]) -> Vec<Complex64> {
    transform_direct(x, -1.0)
}

/// Inverse of [`dft_direct`]: `x[n] = (1/N) sum_k X[k] * exp(2*pi*i*k*n/N)`.
pub fn idft_direct(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    let mut out = transform_direct(x, 1.0);
    let scale = 1.0 / n as f64;
    for v in &mut out {
        *v *= scale;
    }
    out
}

fn transform_direct(x: &[Complex64], sign: f64) -> Vec<Complex64> {
    let n = x.len();
    if n == 0 {
        return Vec::new();
    }
    let step = sign * std::f64::consts::TAU / n as f64;
    let twiddle: Vec<Complex64> = (0..n)
        .map(|j| Complex64::from_polar(1.0, step * j as f64))
        .collect();
    (0..n)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, &v) in x.iter().enumerate() {
                acc += v * twiddle[(k * i) % n];
            }
            acc
        })
        .collect()
}

/// Unnormalized forward DFT, fast path. Same convention as [`dft_direct`].
pub fn dft(x: &[Complex64]) -> Vec<Complex64> {
    if x.len() <= 1 {
        return x.to_vec();
    }
    let mut buf = x.to_vec();
    plan(buf.len(), FftDirection::Forward).process(&mut buf);
    buf
}

/// Inverse DFT, fast path, normalized by `1/N`.
pub fn idft(x: &[Complex64]) -> Vec<Complex64> {
    if x.len() <= 1 {
        return x.to_vec();
    }
    let mut buf = x.to_vec();
    plan(buf.len(), FftDirection::Inverse).process(&mut buf);
    let scale = 1.0 / buf.len() as f64;
    for v in &mut buf {
        *v *= scale;
    }
    buf
}

/// Frequency-domain correlation: DFT of the elementwise product
/// `rx .* conj(reference)`. The peak bin gives the cyclic frequency shift
/// between `rx` and the reference.
pub fn freq_correlation(rx: &[Complex64], reference: &[Complex64]) -> Result<Vec<Complex64>> {
    check_len(rx, reference)?;
    let dotted: Vec<Complex64> = rx
        .iter()
        .zip(reference)
        .map(|(a, b)| a * b.conj())
        .collect();
    Ok(dft(&dotted))
}

/// Circular cross-correlation `c[tau] = sum_n x[n] * conj(y[(n - tau) mod N])`,
/// computed in the transform domain. The peak lag gives the cyclic time shift
/// of `x` relative to `y`.
pub fn circular_cross_correlation(x: &[Complex64], y: &[Complex64]) -> Result<Vec<Complex64>> {
    check_len(x, y)?;
    let fx = dft(x);
    let fy = dft(y);
    let prod: Vec<Complex64> = fx.iter().zip(&fy).map(|(a, b)| a * b.conj()).collect();
    Ok(idft(&prod))
}

fn check_len(a: &[Complex64], b: &[Complex64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

/// Index and magnitude of the largest-magnitude element. Ties break toward
/// the lowest index.
pub fn peak_search(v: &[Complex64]) -> (usize, f64) {
    let mut best_idx = 0;
    let mut best_mag = f64::NEG_INFINITY;
    for (i, c) in v.iter().enumerate() {
        let mag = c.norm();
        if mag > best_mag {
            best_mag = mag;
            best_idx = i;
        }
    }
    (best_idx, if v.is_empty() { 0.0 } else { best_mag })
}

/// [`peak_search`] plus the peak-to-mean detection statistic: peak magnitude
/// divided by the mean magnitude of the remaining bins.
pub fn peak_stats(v: &[Complex64]) -> PeakStats {
    let (index, magnitude) = peak_search(v);
    let n = v.len();
    let ratio = if n <= 1 {
        f64::INFINITY
    } else {
        let total: f64 = v.iter().map(|c| c.norm()).sum();
        let mean_rest = (total - magnitude) / (n - 1) as f64;
        if mean_rest > 0.0 {
            magnitude / mean_rest
        } else {
            f64::INFINITY
        }
    };
    PeakStats {
        index,
        magnitude,
        peak_to_mean: ratio,
    }
}

/// Peak location with its detection statistic.
#[derive(Debug, Clone, Copy)]
pub struct PeakStats {
    pub index: usize,
    pub magnitude: f64,
    pub peak_to_mean: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_vec(n: usize, seed: u64) -> Vec<Complex64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect()
    }

    fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn dft_of_ones_is_dc_only() {
        let p = 17;
        let x = vec![Complex64::new(1.0, 0.0); p];
        let spec = dft_direct(&x);
        assert!((spec[0].norm() - p as f64).abs() < 1e-9);
        for bin in &spec[1..] {
            assert!(bin.norm() < 1e-9);
        }
    }

    #[test]
    fn inversion_and_parseval_across_lengths() {
        for n in 1..=1024 {
            let x = random_vec(n, n as u64);
            let spec = dft(&x);
            let back = idft(&spec);
            let energy_t: f64 = x.iter().map(|c| c.norm_sqr()).sum();
            let energy_f: f64 = spec.iter().map(|c| c.norm_sqr()).sum();
            assert!(
                max_abs_diff(&back, &x) < 1e-9 * (energy_t.sqrt() + 1.0),
                "inversion failed at N={n}"
            );
            assert!(
                (energy_f - n as f64 * energy_t).abs() < 1e-9 * (1.0 + energy_f),
                "Parseval failed at N={n}"
            );
        }
    }

    #[test]
    fn fast_path_matches_direct_reference() {
        for n in [1usize, 2, 3, 8, 17, 31, 131, 257, 521] {
            let x = random_vec(n, 1000 + n as u64);
            assert!(max_abs_diff(&dft(&x), &dft_direct(&x)) < 1e-9, "dft N={n}");
            assert!(
                max_abs_diff(&idft(&x), &idft_direct(&x)) < 1e-9,
                "idft N={n}"
            );
        }
    }

    #[test]
    fn circular_correlation_matches_quadratic_definition() {
        for n in [3usize, 8, 17, 64, 131, 257] {
            let x = random_vec(n, 7 + n as u64);
            let y = random_vec(n, 9 + n as u64);
            let fast = circular_cross_correlation(&x, &y).unwrap();
            let mut direct = vec![Complex64::new(0.0, 0.0); n];
            for (tau, out) in direct.iter_mut().enumerate() {
                for (i, &xi) in x.iter().enumerate() {
                    *out += xi * y[(i + n - tau) % n].conj();
                }
            }
            assert!(max_abs_diff(&fast, &direct) < 1e-9, "N={n}");
        }
    }

    #[test]
    fn correlation_finds_circular_delay() {
        let n = 31;
        let y = random_vec(n, 5);
        for delay in 0..n {
            let x: Vec<Complex64> = (0..n).map(|i| y[(i + n - delay) % n]).collect();
            let c = circular_cross_correlation(&x, &y).unwrap();
            let (lag, _) = peak_search(&c);
            assert_eq!(lag, delay);
        }
    }

    #[test]
    fn freq_correlation_rejects_mismatched_lengths() {
        let a = random_vec(8, 1);
        let b = random_vec(9, 2);
        assert_eq!(
            freq_correlation(&a, &b),
            Err(Error::SizeMismatch { left: 8, right: 9 })
        );
    }

    #[test]
    fn peak_search_tie_breaks_to_lowest_index() {
        let v = vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(5.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        assert_eq!(peak_search(&v), (2, 5.0));
        let flat = vec![Complex64::new(1.0, 0.0); 6];
        assert_eq!(peak_search(&flat).0, 0);
    }

    #[test]
    fn peak_stats_ratio() {
        let mut v = vec![Complex64::new(1.0, 0.0); 5];
        v[3] = Complex64::new(8.0, 0.0);
        let stats = peak_stats(&v);
        assert_eq!(stats.index, 3);
        assert!((stats.magnitude - 8.0).abs() < 1e-12);
        assert!((stats.peak_to_mean - 8.0).abs() < 1e-12);
    }
}
