//! Pilot construction and joint time-delay / frequency-offset estimation.
//!
//! The preamble is a pair of linear hopping (Zadoff-Chu) symbols with roots
//! `R` and `P1 - R`. A circularly delayed and frequency-shifted copy of a
//! root-`R` symbol produces a frequency-domain correlation peak at bin
//! `Fo - R*To (mod P1)`, so the two roots give two linear equations whose
//! exact modular solution recovers the integer delay and offset.
//!
//! The stream search keeps a two-window sum cache: adding the current
//! `P1`-sample window to the previous one guarantees that some summed window
//! contains a complete circular copy of each pilot symbol regardless of
//! where the frame starts. Candidate frame starts derived from the summed
//! correlations are then verified against the raw (un-summed) stream, which
//! pins the window anchor and rejects false peaks: a misalignment of `d`
//! samples moves the two verification peaks to bins `Fo - R*d` and
//! `Fo - (P1-R)*d`, which only coincide when `d = 0`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hopping::{zc_closed_form, Symbol};
use crate::modem::DETECTION_THRESHOLD;
use crate::ntheory::{center_signed, inv_mod, mod_reduce, Modulus};
use crate::spectral::{freq_correlation, peak_stats};

/// Pilot parameters: symbol size `p1` (an odd prime) and the first root.
/// The second pilot symbol uses root `p1 - root`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PilotConfig {
    p1: i64,
    root: i64,
}

impl PilotConfig {
    pub fn new(p1: i64, root: i64) -> Result<Self> {
        Modulus::new_prime(p1)?;
        if p1 == 2 {
            return Err(Error::NotPrime(2));
        }
        if !(1..p1).contains(&root) {
            return Err(Error::BadRoot { root, m: p1 });
        }
        Ok(Self { p1, root })
    }

    pub fn p1(&self) -> i64 {
        self.p1
    }

    pub fn rx_root(&self) -> i64 {
        self.root
    }

    pub fn ry_root(&self) -> i64 {
        self.p1 - self.root
    }
}

/// Recovered channel estimate: integer sample delay within one pilot symbol
/// and signed integer frequency offset in pilot DFT bins, plus the two
/// verification peak magnitudes as diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    /// Delay in samples, in `[0, p1)`.
    pub time_delay: i64,
    /// Frequency offset in bins of the pilot symbol length, centered into
    /// `[-(p1-1)/2, (p1-1)/2]`.
    pub freq_offset_bins: i64,
    /// Root-`R` correlation peak magnitude (0 until measured on a stream).
    pub rx_peak: f64,
    /// Root-`P1-R` correlation peak magnitude.
    pub ry_peak: f64,
}

/// A verified detection: the channel estimate plus the resolved index of the
/// first pilot sample in the stream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Detection {
    pub estimate: Estimate,
    pub frame_start: usize,
}

/// Peak bins and detection statistics of the two pilot correlations over one
/// summed window.
#[derive(Debug, Clone, Copy)]
pub struct DualPeaks {
    pub px: usize,
    pub py: usize,
    pub px_magnitude: f64,
    pub py_magnitude: f64,
    pub px_ratio: f64,
    pub py_ratio: f64,
}

/// The two pilot symbols: roots `R` and `P1 - R`.
pub fn build_pilot(cfg: &PilotConfig) -> (Symbol, Symbol) {
    let rx = zc_closed_form(cfg.p1, cfg.rx_root()).expect("validated config");
    let ry = zc_closed_form(cfg.p1, cfg.ry_root()).expect("validated config");
    (rx, ry)
}

/// Symbol cache update: elementwise sum of the previous and current window.
pub fn sum_cache_update(prev: &[Complex64], cur: &[Complex64]) -> Result<Vec<Complex64>> {
    if prev.len() != cur.len() {
        return Err(Error::SizeMismatch {
            left: prev.len(),
            right: cur.len(),
        });
    }
    Ok(prev.iter().zip(cur).map(|(a, b)| a + b).collect())
}

/// Correlates one summed window against both pilot references and returns
/// the two peak bins with their statistics.
pub fn dual_root_correlate(summed: &[Complex64], cfg: &PilotConfig) -> Result<DualPeaks> {
    if summed.len() != cfg.p1 as usize {
        return Err(Error::SizeMismatch {
            left: summed.len(),
            right: cfg.p1 as usize,
        });
    }
    let (zx, zy) = build_pilot(cfg);
    let sx = peak_stats(&freq_correlation(summed, zx.samples())?);
    let sy = peak_stats(&freq_correlation(summed, zy.samples())?);
    Ok(DualPeaks {
        px: sx.index,
        py: sy.index,
        px_magnitude: sx.magnitude,
        py_magnitude: sy.magnitude,
        px_ratio: sx.peak_to_mean,
        py_ratio: sy.peak_to_mean,
    })
}

/// Solves the dual-root peak equations
/// `Px = Fo - Rx*To (mod P1)` and `Py = Fo - Ry*To (mod P1)` for the delay
/// and the centered frequency offset:
/// `To = (Py - Px) * inv(Rx - Ry)` and `Fo = Px + Rx*To`, all modulo `P1`.
pub fn solve_time_freq(px: i64, py: i64, cfg: &PilotConfig) -> Result<Estimate> {
    let m = Modulus::new(cfg.p1)?;
    assert!(
        (0..cfg.p1).contains(&px) && (0..cfg.p1).contains(&py),
        "peak bins out of range"
    );
    let irxy = inv_mod(cfg.rx_root() - cfg.ry_root(), m)?;
    let eto = mod_reduce((py - px) * irxy, m);
    let efo_x = mod_reduce(px + cfg.rx_root() * eto, m);
    let efo_y = mod_reduce(py + cfg.ry_root() * eto, m);
    if efo_x != efo_y {
        return Err(Error::InconsistentPeaks { efo_x, efo_y });
    }
    Ok(Estimate {
        time_delay: eto,
        freq_offset_bins: center_signed(efo_x, m),
        rx_peak: 0.0,
        ry_peak: 0.0,
    })
}

/// Scans a stream for the pilot pair and returns the verified channel
/// estimate and frame start.
///
/// The stream is walked in `P1`-sample windows while the sum cache is
/// maintained. Whenever either pilot correlation of a summed window clears
/// `threshold`, the solved delay yields up to three frame-start hypotheses
/// (the full pilot copy may straddle either window pair); each hypothesis is
/// verified directly on the raw stream and the strongest verified one wins.
pub fn estimate_stream(
    samples: &[Complex64],
    cfg: &PilotConfig,
    threshold: f64,
) -> Result<Detection> {
    let p1 = cfg.p1 as usize;
    if samples.len() < 2 * p1 {
        return Err(Error::NotDetected);
    }
    let (zx, zy) = build_pilot(cfg);
    let num_windows = samples.len().div_ceil(p1);

    let window = |w: usize| -> Vec<Complex64> {
        let start = w * p1;
        let end = ((w + 1) * p1).min(samples.len());
        let mut out = samples[start..end].to_vec();
        out.resize(p1, Complex64::new(0.0, 0.0));
        out
    };

    let mut tried = std::collections::HashSet::new();
    let mut best: Option<(f64, Detection)> = None;
    let mut prev = vec![Complex64::new(0.0, 0.0); p1];

    // The summed window carries the noise of two raw windows, so gating
    // candidates at the full detection threshold would cost ~3 dB; the
    // actual detection decision is made by the verified dual-segment test
    // at `threshold`, and candidates are merely cheap hypotheses.
    let candidate_gate = (threshold / 2.0).max(1.5);

    let mut prev_top_x: Vec<usize> = Vec::new();
    let mut prev_fired = false;

    for w in 0..num_windows {
        let cur = window(w);
        let summed = sum_cache_update(&prev, &cur)?;
        prev = cur;

        let corr_x = freq_correlation(&summed, zx.samples())?;
        let corr_y = freq_correlation(&summed, zy.samples())?;
        let sx = peak_stats(&corr_x);
        let sy = peak_stats(&corr_y);
        let fired = sx.peak_to_mean >= candidate_gate || sy.peak_to_mean >= candidate_gate;
        let top_x = top_bins(&corr_x, CANDIDATE_BINS);
        let top_y = top_bins(&corr_y, CANDIDATE_BINS);

        if fired || prev_fired {
            // Noise can displace a summed-window argmax, so pair the few
            // strongest bins of each channel instead of trusting single
            // peaks. The full first-root copy appears one summed window
            // before the full second-root copy, so bins of the previous
            // window's first-root channel are also paired with the current
            // second-root bins; raw-stream verification filters the wrong
            // pairings.
            let mut pairs: Vec<(usize, usize)> = Vec::new();
            for &px in &top_x {
                for &py in &top_y {
                    pairs.push((px, py));
                }
            }
            for &px in &prev_top_x {
                for &py in &top_y {
                    pairs.push((px, py));
                }
            }
            for (px, py) in pairs {
                let est = solve_time_freq(px as i64, py as i64, cfg)?;
                let eto = est.time_delay as usize;
                // The measured rotation fixes the start modulo P1; the full
                // pilot copy may have been assembled from windows (w-2,w-1),
                // (w-1,w), or sit entirely in window w, so try all three
                // anchors.
                for anchor in [w as isize - 2, w as isize - 1, w as isize] {
                    let h = anchor * p1 as isize + eto as isize;
                    if h < 0 || (h as usize) + 2 * p1 > samples.len() {
                        continue;
                    }
                    let h = h as usize;
                    if !tried.insert(h) {
                        continue;
                    }
                    if let Some((score, det)) = verify_start(samples, h, cfg, &zx, &zy, threshold) {
                        let better = match &best {
                            None => true,
                            Some((s, d)) => score > *s || (score == *s && h < d.frame_start),
                        };
                        if better {
                            best = Some((score, det));
                        }
                    }
                }
            }
        }
        prev_top_x = top_x;
        prev_fired = fired;
    }

    best.map(|(_, det)| det).ok_or(Error::NotDetected)
}

/// Verifies a pilot-pair hypothesis at `start` directly on the raw stream:
/// both pilot segments must clear `threshold` at the same frequency bin.
/// Returns the measured estimate on success.
pub fn verify_pilot_pair(
    samples: &[Complex64],
    start: usize,
    cfg: &PilotConfig,
    threshold: f64,
) -> Option<Estimate> {
    if start + 2 * cfg.p1 as usize > samples.len() {
        return None;
    }
    let (zx, zy) = build_pilot(cfg);
    verify_start(samples, start, cfg, &zx, &zy, threshold).map(|(_, det)| det.estimate)
}

/// How many bins per correlation channel feed candidate (Px, Py) pairings.
const CANDIDATE_BINS: usize = 4;

/// Indices of the `k` largest-magnitude bins, strongest first.
fn top_bins(v: &[Complex64], k: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| v[b].norm().total_cmp(&v[a].norm()));
    order.truncate(k);
    order
}

/// Checks one frame-start hypothesis against the raw stream: both pilot
/// segments must produce detections at the same frequency bin.
fn verify_start(
    samples: &[Complex64],
    start: usize,
    cfg: &PilotConfig,
    zx: &Symbol,
    zy: &Symbol,
    threshold: f64,
) -> Option<(f64, Detection)> {
    let p1 = cfg.p1 as usize;
    let seg_x = &samples[start..start + p1];
    let seg_y = &samples[start + p1..start + 2 * p1];
    let sx = peak_stats(&freq_correlation(seg_x, zx.samples()).ok()?);
    let sy = peak_stats(&freq_correlation(seg_y, zy.samples()).ok()?);
    if sx.index != sy.index || sx.peak_to_mean < threshold || sy.peak_to_mean < threshold {
        return None;
    }
    let m = Modulus::new(cfg.p1).ok()?;
    let estimate = Estimate {
        time_delay: (start % p1) as i64,
        freq_offset_bins: center_signed(sx.index as i64, m),
        rx_peak: sx.magnitude,
        ry_peak: sy.magnitude,
    };
    Some((
        sx.magnitude + sy.magnitude,
        Detection {
            estimate,
            frame_start: start,
        },
    ))
}

/// Undoes the estimated channel relative to the stream origin: drops the
/// first `est.time_delay` samples and derotates by
/// `exp(-2*pi*i * (freq_offset_bins/p1) * n)` with `n` indexed from the
/// original stream start.
pub fn compensate(samples: &[Complex64], est: &Estimate, p1: i64) -> Vec<Complex64> {
    compensate_at(samples, est.time_delay as usize, est.freq_offset_bins, p1)
}

/// [`compensate`] from an arbitrary stream position (used when the frame
/// starts more than one pilot length into the stream).
pub fn compensate_at(
    samples: &[Complex64],
    start: usize,
    freq_offset_bins: i64,
    p1: i64,
) -> Vec<Complex64> {
    let nu = freq_offset_bins as f64 / p1 as f64;
    samples[start.min(samples.len())..]
        .iter()
        .enumerate()
        .map(|(offset, &v)| {
            let n = (start + offset) as f64;
            v * Complex64::from_polar(1.0, -std::f64::consts::TAU * nu * n)
        })
        .collect()
}

/// Default detection threshold, re-exported for stream scanning.
pub const DEFAULT_THRESHOLD: f64 = DETECTION_THRESHOLD;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{apply_cfo, apply_delay, derive_trial_seed, DelayMode};
    use crate::hopping::linear_pattern;
    use crate::modem::{demodulate_cfs, modulate_cfs};
    use crate::spectral::circular_cross_correlation;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cfg17() -> PilotConfig {
        PilotConfig::new(17, 3).unwrap()
    }

    /// pilot pair followed by root-R modulated symbols, as a frame head
    fn preamble_stream(cfg: &PilotConfig, tail_symbols: usize) -> Vec<Complex64> {
        let (zx, zy) = build_pilot(cfg);
        let mut stream = zx.samples().to_vec();
        stream.extend_from_slice(zy.samples());
        for j in 0..tail_symbols {
            let pat = linear_pattern(cfg.p1(), cfg.rx_root()).unwrap();
            let sym = modulate_cfs(&pat, (5 + j as i64) % cfg.p1()).unwrap();
            stream.extend_from_slice(sym.samples());
        }
        stream
    }

    #[test]
    fn pilot_roots_and_cross_correlation() {
        let cfg = cfg17();
        assert_eq!(cfg.rx_root(), 3);
        assert_eq!(cfg.ry_root(), 14);
        let (zx, zy) = build_pilot(&cfg);
        assert_eq!(zx.len(), 17);
        assert_eq!(zy.len(), 17);
        for s in zx.samples().iter().chain(zy.samples()) {
            assert!((s.norm() - 1.0).abs() < 1e-12);
        }
        let cross = circular_cross_correlation(zx.samples(), zy.samples()).unwrap();
        let sqrt17 = 17f64.sqrt();
        for c in &cross {
            assert!((c.norm() - sqrt17).abs() < 1e-6);
        }
    }

    #[test]
    fn pilot_config_validation() {
        assert!(PilotConfig::new(16, 3).is_err());
        assert!(PilotConfig::new(17, 0).is_err());
        assert!(PilotConfig::new(17, 17).is_err());
        assert!(PilotConfig::new(2, 1).is_err());
    }

    #[test]
    fn sum_cache_examples() {
        let cfg = cfg17();
        let (zx, zy) = build_pilot(&cfg);
        let zeros = vec![Complex64::new(0.0, 0.0); 17];
        assert_eq!(
            sum_cache_update(&zeros, zx.samples()).unwrap(),
            zx.samples()
        );
        let both = sum_cache_update(zx.samples(), zy.samples()).unwrap();
        for (i, v) in both.iter().enumerate() {
            assert!((v - (zx.samples()[i] + zy.samples()[i])).norm() < 1e-15);
        }
        assert!(sum_cache_update(&zeros[..5], zx.samples()).is_err());
    }

    /// Brute-force oracle for the peak-position model: a circularly delayed,
    /// frequency-shifted root-R symbol peaks at `mod(Fo - R*To, P1)`.
    #[test]
    fn peak_position_sign_convention_oracle() {
        let p1 = 31i64;
        for root in [3i64, 7, 28] {
            let cfg = PilotConfig::new(p1, root).unwrap();
            let (zx, _) = build_pilot(&cfg);
            for to in 0..p1 {
                for fo in [0i64, 1, 9, 15, 16, 30] {
                    let delayed = apply_delay(
                        zx.samples(),
                        to as usize,
                        DelayMode::Circular {
                            window: p1 as usize,
                        },
                    );
                    let shifted = apply_cfo(&delayed, fo as f64 / p1 as f64);
                    let peaks = dual_root_correlate(&shifted, &cfg).unwrap();
                    let expected = (fo - root * to).rem_euclid(p1);
                    assert_eq!(peaks.px as i64, expected, "root={root} to={to} fo={fo}");
                }
            }
        }
    }

    #[test]
    fn dual_root_peaks_for_pure_offset() {
        let cfg = cfg17();
        let (zx, zy) = build_pilot(&cfg);
        let aligned = sum_cache_update(zx.samples(), zy.samples()).unwrap();
        // no delay, no offset
        let peaks = dual_root_correlate(&aligned, &cfg).unwrap();
        assert_eq!((peaks.px, peaks.py), (0, 0));
        // pure offset moves both peaks to Fo
        for fo in 1..17i64 {
            let shifted = apply_cfo(&aligned, fo as f64 / 17.0);
            let peaks = dual_root_correlate(&shifted, &cfg).unwrap();
            assert_eq!((peaks.px as i64, peaks.py as i64), (fo, fo));
        }
    }

    #[test]
    fn solve_worked_example() {
        // P1=17, Rx=3, Ry=14, true To=5, Fo=2:
        // Px = mod(2 - 3*5, 17) = 4, Py = mod(2 - 14*5, 17) = 0
        let cfg = cfg17();
        let est = solve_time_freq(4, 0, &cfg).unwrap();
        assert_eq!(est.time_delay, 5);
        assert_eq!(est.freq_offset_bins, 2);

        let zero = solve_time_freq(0, 0, &cfg).unwrap();
        assert_eq!((zero.time_delay, zero.freq_offset_bins), (0, 0));

        // raw eFo of 16 at P1=17 centers to -1: To=0, Fo=-1 gives Px=Py=16
        let neg = solve_time_freq(16, 16, &cfg).unwrap();
        assert_eq!((neg.time_delay, neg.freq_offset_bins), (0, -1));
    }

    #[test]
    fn solve_round_trips_the_full_grid() {
        let p1 = 31i64;
        let cfg = PilotConfig::new(p1, 3).unwrap();
        for to in 0..p1 {
            for fo in -(p1 - 1) / 2..=(p1 - 1) / 2 {
                let px = (fo - cfg.rx_root() * to).rem_euclid(p1);
                let py = (fo - cfg.ry_root() * to).rem_euclid(p1);
                let est = solve_time_freq(px, py, &cfg).unwrap();
                assert_eq!((est.time_delay, est.freq_offset_bins), (to, fo));
            }
        }
    }

    #[test]
    fn estimate_stream_zero_channel() {
        let cfg = cfg17();
        let stream = preamble_stream(&cfg, 1);
        let det = estimate_stream(&stream, &cfg, DEFAULT_THRESHOLD).unwrap();
        assert_eq!(det.frame_start, 0);
        assert_eq!(det.estimate.time_delay, 0);
        assert_eq!(det.estimate.freq_offset_bins, 0);
        assert!(det.estimate.rx_peak > 16.9 && det.estimate.ry_peak > 16.9);
    }

    #[test]
    fn estimate_stream_exhaustive_grid_p1_17() {
        let cfg = cfg17();
        let p1 = cfg.p1();
        let base = preamble_stream(&cfg, 2);
        for to in 0..p1 {
            for fo in -(p1 - 1) / 2..=(p1 - 1) / 2 {
                let delayed = apply_delay(&base, to as usize, DelayMode::Linear);
                let rx = apply_cfo(&delayed, fo as f64 / p1 as f64);
                let det = estimate_stream(&rx, &cfg, DEFAULT_THRESHOLD)
                    .unwrap_or_else(|e| panic!("to={to} fo={fo}: {e}"));
                assert_eq!(det.frame_start as i64, to, "to={to} fo={fo}");
                assert_eq!(det.estimate.time_delay, to, "to={to} fo={fo}");
                assert_eq!(det.estimate.freq_offset_bins, fo, "to={to} fo={fo}");
            }
        }
    }

    #[test]
    fn estimate_stream_with_multi_window_delay() {
        let cfg = cfg17();
        let p1 = cfg.p1() as usize;
        let base = preamble_stream(&cfg, 1);
        for delay in [p1 + 3, 2 * p1, 3 * p1 + 11] {
            let rx = apply_delay(&base, delay, DelayMode::Linear);
            let det = estimate_stream(&rx, &cfg, DEFAULT_THRESHOLD).unwrap();
            assert_eq!(det.frame_start, delay);
            assert_eq!(det.estimate.time_delay as usize, delay % p1);
        }
    }

    #[test]
    fn estimate_stream_noisy_monte_carlo_p1_257() {
        let p1 = 257i64;
        let cfg = PilotConfig::new(p1, 3).unwrap();
        let base = preamble_stream(&cfg, 1);
        let trials = 1000;
        let mut exact = 0;
        for t in 0..trials {
            let seed = derive_trial_seed(0xC0FFEE, t);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let to = rng.random_range(0..p1);
            let fo = rng.random_range(-(p1 - 1) / 2..=(p1 - 1) / 2);
            let delayed = apply_delay(&base, to as usize, DelayMode::Linear);
            let shifted = apply_cfo(&delayed, fo as f64 / p1 as f64);
            // noise over the whole stream, including the silent prefix,
            // at Es/N0 = 0 dB relative to the unit-power symbols
            let sigma = 1.0 / std::f64::consts::SQRT_2;
            let noisy: Vec<Complex64> = shifted
                .iter()
                .map(|&v| {
                    v + Complex64::new(
                        sigma * rng.sample::<f64, _>(rand_distr::StandardNormal),
                        sigma * rng.sample::<f64, _>(rand_distr::StandardNormal),
                    )
                })
                .collect();
            if let Ok(det) = estimate_stream(&noisy, &cfg, DEFAULT_THRESHOLD) {
                if det.frame_start as i64 == to && det.estimate.freq_offset_bins == fo {
                    exact += 1;
                }
            }
        }
        assert!(
            exact as f64 >= 0.99 * trials as f64,
            "only {exact}/{trials} exact at 0 dB"
        );
    }

    #[test]
    fn compensate_identity_and_round_trip() {
        let cfg = cfg17();
        let p1 = cfg.p1();
        let stream = preamble_stream(&cfg, 2);
        let zero = Estimate {
            time_delay: 0,
            freq_offset_bins: 0,
            rx_peak: 0.0,
            ry_peak: 0.0,
        };
        assert_eq!(compensate(&stream, &zero, p1), stream);

        // impair, estimate, compensate, then demodulate the tail symbol
        let (to, fo) = (6i64, -5i64);
        let delayed = apply_delay(&stream, to as usize, DelayMode::Linear);
        let rx = apply_cfo(&delayed, fo as f64 / p1 as f64);
        let det = estimate_stream(&rx, &cfg, DEFAULT_THRESHOLD).unwrap();
        let clean = compensate_at(&rx, det.frame_start, det.estimate.freq_offset_bins, p1);
        let reference = linear_pattern(p1, cfg.rx_root()).unwrap().to_symbol();
        let seg = &clean[2 * p1 as usize..3 * p1 as usize];
        let res = demodulate_cfs(seg, &reference).unwrap();
        assert_eq!(res.data as i64, 5);
        assert!((res.peak_magnitude - p1 as f64).abs() < 1e-6);

        // compensating from a start half a symbol off halves the correlation
        // peak and lands it on the wrong bin: the window straddles two
        // symbols, so each contributes only a partial chirp
        let wrong = compensate_at(
            &rx,
            det.frame_start + p1 as usize / 2,
            det.estimate.freq_offset_bins,
            p1,
        );
        let seg = &wrong[2 * p1 as usize..3 * p1 as usize];
        let res = demodulate_cfs(seg, &reference).unwrap();
        assert_ne!(res.data as i64, 5);
        assert!(
            res.peak_magnitude < 0.65 * p1 as f64,
            "peak = {}",
            res.peak_magnitude
        );
    }

    #[test]
    fn no_detection_in_structureless_stream() {
        let cfg = cfg17();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let noise: Vec<Complex64> = (0..6 * 17)
            .map(|_| {
                Complex64::new(
                    rng.sample::<f64, _>(rand_distr::StandardNormal),
                    rng.sample::<f64, _>(rand_distr::StandardNormal),
                )
            })
            .collect();
        assert_eq!(
            estimate_stream(&noise, &cfg, DEFAULT_THRESHOLD),
            Err(Error::NotDetected)
        );
    }
}
