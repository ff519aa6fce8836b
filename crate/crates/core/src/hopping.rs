//! Hopping pattern generation and symbol synthesis.
//!
//! A hopping pattern assigns one baseband frequency point to every sampling
//! point of a symbol. Accumulating the frequency values over time yields a
//! phase sequence, and the complex exponential of that phase is the
//! transmitted unit-modulus symbol. Linear patterns over a prime size are
//! exactly Zadoff-Chu sequences, which is what gives the modem its
//! correlation properties.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ntheory::{inv_mod, Modulus};

/// How a pattern was produced. Carried along into symbols so experiment
/// output can identify waveforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PatternKind {
    /// Seeded random permutation of `0..m`.
    Random { seed: u64 },
    /// `points[n] = (root * n) mod m` for prime `m`.
    Linear { root: i64 },
    /// Sum, permutation, or other derived pattern.
    Derived,
}

/// A frequency-point sequence: `points[n]` is the subcarrier occupied at
/// sampling point `n`. All values lie in `[0, m)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPattern")]
pub struct HoppingPattern {
    m: i64,
    #[serde(flatten)]
    kind: PatternKind,
    points: Vec<i64>,
}

/// Unvalidated wire form of [`HoppingPattern`].
#[derive(Deserialize)]
struct RawPattern {
    m: i64,
    #[serde(flatten)]
    kind: PatternKind,
    points: Vec<i64>,
}

impl TryFrom<RawPattern> for HoppingPattern {
    type Error = Error;
    fn try_from(raw: RawPattern) -> Result<Self> {
        HoppingPattern::from_points(raw.m, raw.points, raw.kind)
    }
}

impl HoppingPattern {
    /// Builds a pattern from explicit frequency points, validating that every
    /// value lies in `[0, m)` and that the length equals `m`.
    pub fn from_points(m: i64, points: Vec<i64>, kind: PatternKind) -> Result<Self> {
        Modulus::new(m)?;
        if points.len() as i64 != m {
            return Err(Error::SizeMismatch {
                left: points.len(),
                right: m as usize,
            });
        }
        if let Some(&bad) = points.iter().find(|&&p| !(0..m).contains(&p)) {
            return Err(Error::DataOutOfRange { data: bad, m });
        }
        Ok(Self { m, kind, points })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[i64] {
        &self.points
    }

    pub fn kind(&self) -> PatternKind {
        self.kind
    }

    /// Shorthand for accumulate-then-synthesize.
    pub fn to_symbol(&self) -> Symbol {
        synthesize(&phase_accumulate(self))
    }
}

/// Exact accumulated phase in cycles: `numerators[n] / m` where
/// `numerators[n]` is the inclusive running sum of the pattern's frequency
/// points. Kept as integers so no float drift enters before synthesis.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSeq {
    m: i64,
    kind: PatternKind,
    numerators: Vec<i64>,
}

impl PhaseSeq {
    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn numerators(&self) -> &[i64] {
        &self.numerators
    }

    /// Phase at sample `n` in cycles.
    pub fn cycles(&self, n: usize) -> f64 {
        self.numerators[n] as f64 / self.m as f64
    }
}

/// One synthesized hopping symbol: unit-modulus complex samples plus the
/// metadata of the pattern it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Symbol {
    m: i64,
    kind: PatternKind,
    samples: Vec<Complex64>,
}

impl Symbol {
    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn kind(&self) -> PatternKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    /// Circularly delays the waveform by `shift` samples:
    /// `out[n] = self[(n - shift) mod len]`.
    pub fn cyclic_time_shift(&self, shift: i64) -> Symbol {
        let n = self.samples.len() as i64;
        let samples = (0..n)
            .map(|i| self.samples[(i - shift).rem_euclid(n) as usize])
            .collect();
        Symbol {
            m: self.m,
            kind: PatternKind::Derived,
            samples,
        }
    }

    pub(crate) fn from_parts(m: i64, kind: PatternKind, samples: Vec<Complex64>) -> Symbol {
        debug_assert!(samples.iter().all(|s| (s.norm() - 1.0).abs() < 1e-12));
        Symbol { m, kind, samples }
    }
}

/// Random permutation of the frequency points `0..m`, Fisher-Yates over a
/// ChaCha8 stream seeded with `seed`. Deterministic for a fixed seed.
pub fn random_pattern(m: i64, seed: u64) -> Result<HoppingPattern> {
    Modulus::new(m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<i64> = (0..m).collect();
    for i in (1..points.len()).rev() {
        let j = rng.random_range(0..=i);
        points.swap(i, j);
    }
    Ok(HoppingPattern {
        m,
        kind: PatternKind::Random { seed },
        points,
    })
}

/// Linear pattern `points[n] = (root * n) mod p` over prime `p`. This is the
/// hopping-pattern form of a Zadoff-Chu sequence of root `root`.
pub fn linear_pattern(p: i64, root: i64) -> Result<HoppingPattern> {
    Modulus::new_prime(p)?;
    check_root(root, p)?;
    let points = (0..p).map(|n| (root * n).rem_euclid(p)).collect();
    Ok(HoppingPattern {
        m: p,
        kind: PatternKind::Linear { root },
        points,
    })
}

fn check_root(root: i64, m: i64) -> Result<()> {
    if !(1..m).contains(&root) {
        return Err(Error::BadRoot { root, m });
    }
    Ok(())
}

/// Inclusive cumulative sum of the frequency points, divided by `m` (kept in
/// exact integer form).
pub fn phase_accumulate(pattern: &HoppingPattern) -> PhaseSeq {
    let mut acc = 0i64;
    let numerators = pattern
        .points
        .iter()
        .map(|&p| {
            acc += p;
            acc
        })
        .collect();
    PhaseSeq {
        m: pattern.m,
        kind: pattern.kind,
        numerators,
    }
}

/// Evaluates `exp(2*pi*i * phase)` at every sample. The numerator is reduced
/// modulo `m` before the trig call so accumulated sums never inflate the
/// argument.
pub fn synthesize(phases: &PhaseSeq) -> Symbol {
    let m = phases.m;
    let samples = phases
        .numerators
        .iter()
        .map(|&num| {
            Complex64::from_polar(
                1.0,
                std::f64::consts::TAU * (num.rem_euclid(m)) as f64 / m as f64,
            )
        })
        .collect();
    Symbol::from_parts(m, phases.kind, samples)
}

/// Zadoff-Chu closed form `samples[n] = exp(i*pi*root*n*(n+1)/p)`, equal to
/// synthesizing the linear pattern of the same root.
pub fn zc_closed_form(p: i64, root: i64) -> Result<Symbol> {
    Modulus::new_prime(p)?;
    check_root(root, p)?;
    let two_p = 2 * p;
    let samples = (0..p)
        .map(|n| {
            // reduce n*(n+1) mod 2p first: exp(i*pi*t/p) has period 2p in t
            let t = (root * ((n * (n + 1)).rem_euclid(two_p))).rem_euclid(two_p);
            Complex64::from_polar(1.0, std::f64::consts::PI * t as f64 / p as f64)
        })
        .collect();
    Ok(Symbol::from_parts(p, PatternKind::Linear { root }, samples))
}

/// Pointwise modular sum of two equal-size patterns.
pub fn sum_pattern(a: &HoppingPattern, b: &HoppingPattern) -> Result<HoppingPattern> {
    if a.m != b.m {
        return Err(Error::SizeMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let points = a
        .points
        .iter()
        .zip(&b.points)
        .map(|(&x, &y)| (x + y).rem_euclid(a.m))
        .collect();
    Ok(HoppingPattern {
        m: a.m,
        kind: PatternKind::Derived,
        points,
    })
}

/// Reads a stored key pattern in the order `addr -> inv(k * addr) mod p`.
///
/// Address 0 has no modular inverse, so it maps to itself; addresses
/// `1..p-1` follow the keyed permutation. Applying the same root twice
/// restores the original order (the read map is an involution).
pub fn key_permuted_pattern(key: &HoppingPattern, k: i64) -> Result<HoppingPattern> {
    let p = key.m;
    let modulus = Modulus::new_prime(p)?;
    check_root(k, p)?;
    let mut points = Vec::with_capacity(key.len());
    points.push(key.points[0]);
    for addr in 1..p {
        let xaddr = inv_mod(k * addr, modulus)?;
        points.push(key.points[xaddr as usize]);
    }
    Ok(HoppingPattern {
        m: p,
        kind: PatternKind::Derived,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntheory::is_prime;
    use proptest::prelude::*;

    #[test]
    fn random_pattern_is_permutation_and_deterministic() {
        for m in [2i64, 8, 17, 131] {
            let a = random_pattern(m, 42).unwrap();
            let b = random_pattern(m, 42).unwrap();
            assert_eq!(a, b);
            let mut sorted = a.points().to_vec();
            sorted.sort_unstable();
            assert_eq!(sorted, (0..m).collect::<Vec<_>>());
        }
        let c = random_pattern(8, 1).unwrap();
        let d = random_pattern(8, 2).unwrap();
        assert_ne!(c.points(), d.points());
    }

    #[test]
    fn size_two_pattern_is_one_of_two_permutations() {
        let p = random_pattern(2, 3).unwrap();
        assert!(p.points() == [0, 1] || p.points() == [1, 0]);
    }

    #[test]
    fn linear_pattern_fig4_values() {
        // size 17, slope 3: mod(3n, 17)
        let p = linear_pattern(17, 3).unwrap();
        assert_eq!(
            p.points(),
            [0, 3, 6, 9, 12, 15, 1, 4, 7, 10, 13, 16, 2, 5, 8, 11, 14]
        );
        let identity = linear_pattern(17, 1).unwrap();
        assert_eq!(identity.points(), (0..17).collect::<Vec<_>>().as_slice());
    }

    #[test]
    fn linear_pattern_is_bijection_for_every_root() {
        for p in [5i64, 17, 31] {
            for root in 1..p {
                let pat = linear_pattern(p, root).unwrap();
                let mut sorted = pat.points().to_vec();
                sorted.sort_unstable();
                assert_eq!(sorted, (0..p).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn linear_pattern_rejects_bad_inputs() {
        assert_eq!(linear_pattern(16, 3), Err(Error::NotPrime(16)));
        assert_eq!(
            linear_pattern(17, 0),
            Err(Error::BadRoot { root: 0, m: 17 })
        );
        assert_eq!(
            linear_pattern(17, 17),
            Err(Error::BadRoot { root: 17, m: 17 })
        );
    }

    #[test]
    fn phase_accumulate_zero_and_linear() {
        let zeros = HoppingPattern::from_points(4, vec![0; 4], PatternKind::Derived).unwrap();
        assert_eq!(phase_accumulate(&zeros).numerators(), [0, 0, 0, 0]);

        // linear root-3 size-17: numerators are partial sums of mod(3n,17);
        // reduced mod 17 they match 3n(n+1)/2 mod 17 (arithmetic series)
        let pat = linear_pattern(17, 3).unwrap();
        let ph = phase_accumulate(&pat);
        for n in 0..17i64 {
            let closed = (3 * n * (n + 1) / 2).rem_euclid(17);
            assert_eq!(ph.numerators()[n as usize].rem_euclid(17), closed);
        }
    }

    #[test]
    fn synthesize_all_zero_phases_gives_ones() {
        let zeros = HoppingPattern::from_points(8, vec![0; 8], PatternKind::Derived).unwrap();
        let sym = zeros.to_symbol();
        for s in sym.samples() {
            assert!((s - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn symbols_are_unit_modulus() {
        for (m, seed) in [(8i64, 1u64), (17, 2), (131, 3)] {
            let sym = random_pattern(m, seed).unwrap().to_symbol();
            for s in sym.samples() {
                assert!((s.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn cumsum_symbol_matches_zc_closed_form() {
        // sampled roots over every odd prime up to 257
        for p in (3..=257i64).filter(|&n| is_prime(n)) {
            for root in [1, 2, (p - 1) / 2, p - 1] {
                if !(1..p).contains(&root) {
                    continue;
                }
                let via_cumsum = linear_pattern(p, root).unwrap().to_symbol();
                let closed = zc_closed_form(p, root).unwrap();
                let worst = via_cumsum
                    .samples()
                    .iter()
                    .zip(closed.samples())
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max);
                assert!(worst < 1e-9, "p={p} root={root} worst={worst}");
            }
        }
    }

    #[test]
    fn zc_closed_form_point_values() {
        let sym = zc_closed_form(17, 3).unwrap();
        assert!((sym.samples()[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let expected = Complex64::from_polar(1.0, std::f64::consts::PI * 6.0 / 17.0);
        assert!((sym.samples()[1] - expected).norm() < 1e-12);
    }

    #[test]
    fn sum_pattern_linearity() {
        let a = linear_pattern(17, 3).unwrap();
        let b = linear_pattern(17, 5).unwrap();
        let sum = sum_pattern(&a, &b).unwrap();
        assert_eq!(sum.points(), linear_pattern(17, 8).unwrap().points());
        let zeros = HoppingPattern::from_points(17, vec![0; 17], PatternKind::Derived).unwrap();
        assert_eq!(sum_pattern(&a, &zeros).unwrap().points(), a.points());
        assert_eq!(
            sum_pattern(&a, &b).unwrap().points(),
            sum_pattern(&b, &a).unwrap().points()
        );
    }

    #[test]
    fn sum_pattern_size_mismatch() {
        let a = linear_pattern(17, 3).unwrap();
        let b = linear_pattern(19, 3).unwrap();
        assert!(matches!(
            sum_pattern(&a, &b),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn key_permutation_reads_expected_addresses() {
        let key = random_pattern(17, 9).unwrap();
        let out = key_permuted_pattern(&key, 3).unwrap();
        // addr 1: inv(3) = 6; addr 2: inv(6) = 3
        assert_eq!(out.points()[0], key.points()[0]);
        assert_eq!(out.points()[1], key.points()[6]);
        assert_eq!(out.points()[2], key.points()[3]);
        // k = 1, addr 1 reads address 1
        let identity_at_one = key_permuted_pattern(&key, 1).unwrap();
        assert_eq!(identity_at_one.points()[1], key.points()[1]);
    }

    #[test]
    fn key_permutation_is_involution_and_permutation() {
        for k in 1..17i64 {
            let key = random_pattern(17, 100 + k as u64).unwrap();
            let once = key_permuted_pattern(&key, k).unwrap();
            let twice = key_permuted_pattern(&once, k).unwrap();
            assert_eq!(twice.points(), key.points(), "k={k}");

            let mut sorted_tail: Vec<i64> = once.points()[1..].to_vec();
            sorted_tail.sort_unstable();
            let mut expected: Vec<i64> = key.points()[1..].to_vec();
            expected.sort_unstable();
            assert_eq!(sorted_tail, expected);
        }
    }

    #[test]
    fn pattern_json_round_trip_and_validation() {
        let p = linear_pattern(17, 3).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert!(json.contains("\"kind\":\"linear\""));
        assert!(json.contains("\"root\":3"));
        let back: HoppingPattern = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);

        // out-of-range point rejected on deserialization
        let bad = r#"{"m":4,"kind":"derived","points":[0,1,2,9]}"#;
        assert!(serde_json::from_str::<HoppingPattern>(bad).is_err());
        // length mismatch rejected
        let short = r#"{"m":4,"kind":"derived","points":[0,1]}"#;
        assert!(serde_json::from_str::<HoppingPattern>(short).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn random_patterns_sort_to_identity(m in 2i64..200, seed in any::<u64>()) {
            let pat = random_pattern(m, seed).unwrap();
            let mut sorted = pat.points().to_vec();
            sorted.sort_unstable();
            prop_assert_eq!(sorted, (0..m).collect::<Vec<_>>());
        }

        #[test]
        fn synthesized_symbols_stay_unit_modulus(m in 2i64..200, seed in any::<u64>()) {
            let sym = random_pattern(m, seed).unwrap().to_symbol();
            for s in sym.samples() {
                prop_assert!((s.norm() - 1.0).abs() < 1e-12);
            }
        }
    }
}
