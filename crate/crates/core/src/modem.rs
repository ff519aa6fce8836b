//! Spread-spectrum modulation and demodulation.
//!
//! Cyclic frequency shift (CFS) adds the data value to every frequency point
//! of the primary pattern; the receiver recovers it as the peak bin of a
//! frequency-domain correlation. Cyclic time shift (CTS) delays the waveform
//! circularly; the receiver recovers the lag of a circular correlation.
//! Secondary hopping adds a private random pattern before phase
//! accumulation, which scrambles the symbol so that only a receiver holding
//! the same key pattern can form a correlation peak.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hopping::{
    linear_pattern, phase_accumulate, sum_pattern, synthesize, HoppingPattern, PatternKind, Symbol,
};
use crate::spectral::{circular_cross_correlation, freq_correlation, peak_stats};

/// Default peak-to-mean ratio above which a correlation peak counts as a
/// detection.
pub const DETECTION_THRESHOLD: f64 = 4.0;

/// Outcome of a correlation demodulation.
#[derive(Debug, Clone, Copy)]
pub struct DemodResult {
    /// Recovered data value (peak bin or peak lag).
    pub data: usize,
    /// Magnitude of the winning correlation peak.
    pub peak_magnitude: f64,
    /// Peak magnitude over the mean magnitude of the remaining bins.
    pub peak_to_mean_ratio: f64,
}

impl DemodResult {
    /// Whether the peak clears [`DETECTION_THRESHOLD`].
    pub fn is_detected(&self) -> bool {
        self.peak_to_mean_ratio >= DETECTION_THRESHOLD
    }
}

fn check_data(data: i64, m: i64) -> Result<()> {
    if !(0..m).contains(&data) {
        return Err(Error::DataOutOfRange { data, m });
    }
    Ok(())
}

/// Cyclic frequency shift modulation: every frequency point of `pattern` is
/// raised by `data` (modulo the pattern size, absorbed by the periodicity of
/// the complex exponential) before phase accumulation.
pub fn modulate_cfs(pattern: &HoppingPattern, data: i64) -> Result<Symbol> {
    let m = pattern.m();
    check_data(data, m)?;
    let shifted: Vec<i64> = pattern
        .points()
        .iter()
        .map(|&p| (p + data).rem_euclid(m))
        .collect();
    let shifted = HoppingPattern::from_points(m, shifted, pattern.kind())?;
    Ok(synthesize(&phase_accumulate(&shifted)))
}

/// Cyclic time shift modulation: the primary symbol delayed circularly by
/// `data` samples.
///
/// For odd pattern sizes this equals synthesizing the time-shifted pattern
/// up to a constant phase; shifting the waveform keeps the correlation peak
/// at full magnitude for even sizes as well.
pub fn modulate_cts(pattern: &HoppingPattern, data: i64) -> Result<Symbol> {
    check_data(data, pattern.m())?;
    Ok(pattern.to_symbol().cyclic_time_shift(data))
}

/// Frequency-domain correlation demodulation: the recovered data is the
/// peak bin of `fft(rx .* conj(reference))`. Assumes delay and frequency
/// offset are already compensated.
pub fn demodulate_cfs(rx: &[Complex64], reference: &Symbol) -> Result<DemodResult> {
    let corr = freq_correlation(rx, reference.samples())?;
    let stats = peak_stats(&corr);
    Ok(DemodResult {
        data: stats.index,
        peak_magnitude: stats.magnitude,
        peak_to_mean_ratio: stats.peak_to_mean,
    })
}

/// Time-domain circular correlation demodulation: the recovered data is the
/// peak lag of the circular cross-correlation with the reference symbol.
pub fn demodulate_cts(rx: &[Complex64], reference: &Symbol) -> Result<DemodResult> {
    let corr = circular_cross_correlation(rx, reference.samples())?;
    let stats = peak_stats(&corr);
    Ok(DemodResult {
        data: stats.index,
        peak_magnitude: stats.magnitude,
        peak_to_mean_ratio: stats.peak_to_mean,
    })
}

/// Phase-scrambles a baseband signal by pointwise multiplication with a
/// unit-modulus hopping symbol.
pub fn scramble(x: &[Complex64], key: &Symbol) -> Result<Vec<Complex64>> {
    if x.len() != key.len() {
        return Err(Error::SizeMismatch {
            left: x.len(),
            right: key.len(),
        });
    }
    Ok(x.iter().zip(key.samples()).map(|(a, k)| a * k).collect())
}

/// Inverse of [`scramble`]: multiplication with the conjugate key symbol.
pub fn descramble(x: &[Complex64], key: &Symbol) -> Result<Vec<Complex64>> {
    if x.len() != key.len() {
        return Err(Error::SizeMismatch {
            left: x.len(),
            right: key.len(),
        });
    }
    Ok(x.iter()
        .zip(key.samples())
        .map(|(a, k)| a * k.conj())
        .collect())
}

/// CFS modulation on top of a linear pattern summed with a secret key
/// pattern: the accumulated phase is
/// `cumsum(root*n + data + key[n]) / p` cycles.
pub fn modulate_secure(p: i64, root: i64, data: i64, key: &HoppingPattern) -> Result<Symbol> {
    let base = linear_pattern(p, root)?;
    if key.m() != p {
        return Err(Error::SizeMismatch {
            left: key.len(),
            right: p as usize,
        });
    }
    let combined = sum_pattern(&base, key)?;
    modulate_cfs(&combined, data)
}

/// Receiver reference for [`modulate_secure`]: the symbol of the summed
/// linear-plus-key pattern. Multiplying a secure symbol by the conjugate of
/// this reference cancels both the chirp and the key, leaving a single tone
/// at the data frequency.
pub fn make_sum_reference(p: i64, root: i64, key: &HoppingPattern) -> Result<Symbol> {
    let base = linear_pattern(p, root)?;
    if key.m() != p {
        return Err(Error::SizeMismatch {
            left: key.len(),
            right: p as usize,
        });
    }
    let combined = sum_pattern(&base, key)?;
    Ok(Symbol::from_parts(
        p,
        PatternKind::Derived,
        combined.to_symbol().into_samples(),
    ))
}

/// Spread-spectrum processing gain `10*log10(m / bits_per_symbol)` in dB.
pub fn spreading_gain_db(m: i64, bits_per_symbol: f64) -> f64 {
    10.0 * (m as f64 / bits_per_symbol).log10()
}
