//! Reproducible channel impairments: delay, carrier frequency offset,
//! additive white Gaussian noise, gain, and multi-user superposition.
//!
//! Impairments are applied in the fixed order delay -> CFO -> gain -> noise
//! so that a given [`ChannelSpec`] always produces the same samples. All
//! randomness comes from ChaCha8 streams seeded explicitly.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

/// Channel impairment description for one user / one stream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelSpec {
    /// Integer delay in samples (zeros are prepended).
    #[serde(default)]
    pub delay_samples: usize,
    /// Carrier frequency offset in cycles per sample.
    #[serde(default)]
    pub cfo_cycles_per_sample: f64,
    /// Per-sample Es/N0 in dB; `None` means noiseless.
    #[serde(default)]
    pub esn0_db: Option<f64>,
    /// Amplitude gain in dB.
    #[serde(default)]
    pub gain_db: f64,
    /// Seed for the noise stream.
    #[serde(default)]
    pub seed: u64,
}

impl Default for ChannelSpec {
    fn default() -> Self {
        Self {
            delay_samples: 0,
            cfo_cycles_per_sample: 0.0,
            esn0_db: None,
            gain_db: 0.0,
            seed: 0,
        }
    }
}

/// Delay realization mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DelayMode {
    /// Prepend zeros; the stream gets longer.
    Linear,
    /// Rotate every `window`-sized chunk in place (stream length preserved).
    Circular { window: usize },
}

/// Delays `x` by `d` samples in the requested mode.
pub fn apply_delay(x: &[Complex64], d: usize, mode: DelayMode) -> Vec<Complex64> {
    match mode {
        DelayMode::Linear => {
            let mut out = vec![Complex64::new(0.0, 0.0); d];
            out.extend_from_slice(x);
            out
        }
        DelayMode::Circular { window } => {
            assert!(window > 0, "circular delay requires a nonzero window");
            let mut out = Vec::with_capacity(x.len());
            for chunk in x.chunks(window) {
                let n = chunk.len();
                for i in 0..n {
                    out.push(chunk[(i + n - d % n) % n]);
                }
            }
            out
        }
    }
}

/// Applies a carrier frequency offset of `nu` cycles per sample:
/// `y[n] = x[n] * exp(2*pi*i*nu*n)` with phase reference at the stream start.
pub fn apply_cfo(x: &[Complex64], nu: f64) -> Vec<Complex64> {
    x.iter()
        .enumerate()
        .map(|(n, &v)| v * Complex64::from_polar(1.0, std::f64::consts::TAU * nu * n as f64))
        .collect()
}

/// Adds circular complex Gaussian noise with per-sample variance
/// `sigma^2 = 10^(-esn0_db/10)`, assuming the signal is unit power per
/// sample (asserted to within 1% over the nonzero samples).
pub fn add_awgn(x: &[Complex64], esn0_db: f64, seed: u64) -> Vec<Complex64> {
    debug_assert!(
        unit_power_within(x, 0.01),
        "add_awgn expects a unit-power signal"
    );
    let sigma = 10f64.powf(-esn0_db / 20.0);
    let per_quad = sigma / std::f64::consts::SQRT_2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    x.iter()
        .map(|&v| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            v + Complex64::new(re * per_quad, im * per_quad)
        })
        .collect()
}

fn unit_power_within(x: &[Complex64], tol: f64) -> bool {
    let (sum, count) = x
        .iter()
        .filter(|v| v.norm_sqr() > 0.0)
        .fold((0.0f64, 0usize), |(s, c), v| (s + v.norm_sqr(), c + 1));
    if count == 0 {
        return true;
    }
    (sum / count as f64 - 1.0).abs() <= tol
}

/// Applies the full impairment chain of `spec` to `x`
/// (delay, then CFO, then gain, then noise).
pub fn apply(x: &[Complex64], spec: &ChannelSpec) -> Vec<Complex64> {
    let mut y = apply_delay(x, spec.delay_samples, DelayMode::Linear);
    if spec.cfo_cycles_per_sample != 0.0 {
        y = apply_cfo(&y, spec.cfo_cycles_per_sample);
    }
    if spec.gain_db != 0.0 {
        let g = 10f64.powf(spec.gain_db / 20.0);
        for v in &mut y {
            *v *= g;
        }
    }
    if let Some(esn0) = spec.esn0_db {
        y = add_awgn(&y, esn0, spec.seed);
    }
    y
}

/// Superimposes several users on one received stream: each user's samples
/// are impaired by its own [`ChannelSpec`], padded to the common length,
/// and summed.
pub fn mix(users: &[(Vec<Complex64>, ChannelSpec)]) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::new();
    for (samples, spec) in users {
        let impaired = apply(samples, spec);
        if impaired.len() > out.len() {
            out.resize(impaired.len(), Complex64::new(0.0, 0.0));
        }
        for (o, v) in out.iter_mut().zip(&impaired) {
            *o += v;
        }
    }
    out
}

/// Derives a per-trial seed from a base seed, SplitMix64 style, so parallel
/// Monte-Carlo trials are reproducible and mutually decorrelated.
pub fn derive_trial_seed(base: u64, trial: u64) -> u64 {
    let mut z = base ^ (trial.wrapping_add(1)).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Converts per-sample Es/N0 to Eb/N0 for a symbol of `p` samples carrying
/// `sf` bits: `Eb/N0 = Es/N0 + 10*log10(p/sf)`.
pub fn ebn0_db_from_esn0(esn0_db: f64, p: i64, sf: u32) -> f64 {
    esn0_db + 10.0 * (p as f64 / sf as f64).log10()
}
