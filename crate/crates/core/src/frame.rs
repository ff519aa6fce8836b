//! Wireless frame assembly and parsing, plus link-budget arithmetic.
//!
//! A frame is `pilot(R) || pilot(P1-R) || sync || data...`. The preamble
//! symbols have size `P1` (the smallest prime above `2^(SF+1)`) so they
//! carry one extra spreading factor compared to the size-`P` data symbols;
//! that is what lets the receiver lock time and frequency at input levels
//! where data demodulation alone would already fail. The sync symbol is
//! CFS-modulated with the payload symbol count; data symbols are
//! CFS-modulated over the linear pattern, optionally summed with a secret
//! key pattern (re-ordered per symbol by keyed address permutation).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hopping::{key_permuted_pattern, linear_pattern, HoppingPattern, Symbol};
use crate::modem::{
    demodulate_cfs, make_sum_reference, modulate_cfs, modulate_secure, DemodResult,
};
use crate::ntheory::smallest_prime_above;
use crate::sync::{compensate_at, estimate_stream, Detection, PilotConfig, DEFAULT_THRESHOLD};

/// Frame parameters. `p` and `p1` are derived from the spreading factor as
/// the smallest primes above `2^sf` and `2^(sf+1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawFrameConfig")]
pub struct FrameConfig {
    sf: u32,
    p: i64,
    p1: i64,
    root: i64,
    key: Option<HoppingPattern>,
    key_roots: Vec<i64>,
    pilot_repeats: usize,
}

#[derive(Deserialize)]
struct RawFrameConfig {
    sf: u32,
    root: i64,
    #[serde(default)]
    key: Option<HoppingPattern>,
    #[serde(default)]
    key_roots: Vec<i64>,
    #[serde(default = "one")]
    pilot_repeats: usize,
}

fn one() -> usize {
    1
}

impl TryFrom<RawFrameConfig> for FrameConfig {
    type Error = Error;
    fn try_from(raw: RawFrameConfig) -> Result<Self> {
        let mut cfg = FrameConfig::new(raw.sf, raw.root)?;
        if let Some(key) = raw.key {
            cfg = cfg.with_key(key)?;
        }
        if !raw.key_roots.is_empty() {
            cfg = cfg.with_key_roots(raw.key_roots)?;
        }
        cfg.with_pilot_repeats(raw.pilot_repeats)
    }
}

impl FrameConfig {
    /// Derives `p = smallest_prime_above(2^sf)` and
    /// `p1 = smallest_prime_above(2^(sf+1))` and validates the root against
    /// both symbol sizes.
    pub fn new(sf: u32, root: i64) -> Result<Self> {
        if !(2..=16).contains(&sf) {
            return Err(Error::DataOutOfRange {
                data: sf as i64,
                m: 17,
            });
        }
        let p = smallest_prime_above(1i64 << sf);
        let p1 = smallest_prime_above(1i64 << (sf + 1));
        if !(1..p.min(p1)).contains(&root) {
            return Err(Error::BadRoot { root, m: p.min(p1) });
        }
        Ok(Self {
            sf,
            p,
            p1,
            root,
            key: None,
            key_roots: Vec::new(),
            pilot_repeats: 1,
        })
    }

    /// Attaches a secondary (secret) hopping pattern of length `p`.
    pub fn with_key(mut self, key: HoppingPattern) -> Result<Self> {
        if key.m() != self.p {
            return Err(Error::SizeMismatch {
                left: key.len(),
                right: self.p as usize,
            });
        }
        self.key = Some(key);
        Ok(self)
    }

    /// Attaches per-symbol key read-order roots; symbol `j` reads the key
    /// pattern through the address permutation of root
    /// `key_roots[j % key_roots.len()]`.
    pub fn with_key_roots(mut self, roots: Vec<i64>) -> Result<Self> {
        for &k in &roots {
            if !(1..self.p).contains(&k) {
                return Err(Error::BadRoot { root: k, m: self.p });
            }
        }
        self.key_roots = roots;
        Ok(self)
    }

    /// Number of times the pilot pair is transmitted (default 1).
    pub fn with_pilot_repeats(mut self, repeats: usize) -> Result<Self> {
        if !(1..=16).contains(&repeats) {
            return Err(Error::DataOutOfRange {
                data: repeats as i64,
                m: 17,
            });
        }
        self.pilot_repeats = repeats;
        Ok(self)
    }

    pub fn sf(&self) -> u32 {
        self.sf
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn p1(&self) -> i64 {
        self.p1
    }

    pub fn root(&self) -> i64 {
        self.root
    }

    pub fn key(&self) -> Option<&HoppingPattern> {
        self.key.as_ref()
    }

    pub fn key_roots(&self) -> &[i64] {
        &self.key_roots
    }

    pub fn pilot_repeats(&self) -> usize {
        self.pilot_repeats
    }

    pub fn pilot_config(&self) -> PilotConfig {
        PilotConfig::new(self.p1, self.root).expect("validated at construction")
    }

    /// Highest payload symbol count the sync field can signal
    /// (`2^(sf+1) - 1`).
    pub fn max_payload_symbols(&self) -> usize {
        (1usize << (self.sf + 1)) - 1
    }

    /// Samples in a frame carrying `payload_symbols` data symbols.
    pub fn frame_len(&self, payload_symbols: usize) -> usize {
        (2 * self.pilot_repeats + 1) * self.p1 as usize + payload_symbols * self.p as usize
    }

    fn key_for_symbol(&self, j: usize) -> Result<Option<HoppingPattern>> {
        match &self.key {
            None => Ok(None),
            Some(key) => {
                if self.key_roots.is_empty() {
                    Ok(Some(key.clone()))
                } else {
                    let k = self.key_roots[j % self.key_roots.len()];
                    Ok(Some(key_permuted_pattern(key, k)?))
                }
            }
        }
    }

    fn data_symbol(&self, j: usize, value: i64) -> Result<Symbol> {
        match self.key_for_symbol(j)? {
            None => modulate_cfs(&linear_pattern(self.p, self.root)?, value),
            Some(key) => modulate_secure(self.p, self.root, value, &key),
        }
    }

    fn data_reference(&self, j: usize) -> Result<Symbol> {
        match self.key_for_symbol(j)? {
            None => Ok(linear_pattern(self.p, self.root)?.to_symbol()),
            Some(key) => make_sum_reference(self.p, self.root, &key),
        }
    }
}

/// An assembled frame: pilot pair (possibly repeated), sync symbol, data
/// symbols.
#[derive(Debug, Clone)]
pub struct Frame {
    pilot: (Symbol, Symbol),
    pilot_repeats: usize,
    sync: Symbol,
    data: Vec<Symbol>,
}

impl Frame {
    pub fn payload_symbols(&self) -> usize {
        self.data.len()
    }

    pub fn len(&self) -> usize {
        self.pilot_repeats * (self.pilot.0.len() + self.pilot.1.len())
            + self.sync.len()
            + self.data.iter().map(Symbol::len).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Concatenated baseband samples in transmission order.
    pub fn samples(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.len());
        for _ in 0..self.pilot_repeats {
            out.extend_from_slice(self.pilot.0.samples());
            out.extend_from_slice(self.pilot.1.samples());
        }
        out.extend_from_slice(self.sync.samples());
        for sym in &self.data {
            out.extend_from_slice(sym.samples());
        }
        out
    }
}

/// Groups a bit sequence into `sf`-bit big-endian data values, zero-padding
/// the tail.
pub fn pack_bits(bits: &[bool], sf: u32) -> Vec<i64> {
    bits.chunks(sf as usize)
        .map(|chunk| {
            let mut v = 0i64;
            for i in 0..sf as usize {
                v <<= 1;
                if *chunk.get(i).unwrap_or(&false) {
                    v |= 1;
                }
            }
            v
        })
        .collect()
}

/// Inverse of [`pack_bits`]: expands each value's low `sf` bits, MSB first.
pub fn unpack_bits(values: &[i64], sf: u32) -> Vec<bool> {
    let mut out = Vec::with_capacity(values.len() * sf as usize);
    for &v in values {
        for i in (0..sf).rev() {
            out.push((v >> i) & 1 == 1);
        }
    }
    out
}

/// Builds the sample stream for one frame carrying `payload` bits.
pub fn build_frame(cfg: &FrameConfig, payload: &[bool]) -> Result<Frame> {
    let values = pack_bits(payload, cfg.sf);
    if values.len() > cfg.max_payload_symbols() {
        return Err(Error::PayloadTooLarge {
            symbols: values.len(),
            max: cfg.max_payload_symbols(),
        });
    }
    let pcfg = cfg.pilot_config();
    let pilot = crate::sync::build_pilot(&pcfg);
    let sync = modulate_cfs(&linear_pattern(cfg.p1, cfg.root)?, values.len() as i64)?;
    let data = values
        .iter()
        .enumerate()
        .map(|(j, &v)| cfg.data_symbol(j, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(Frame {
        pilot,
        pilot_repeats: cfg.pilot_repeats,
        sync,
        data,
    })
}

/// Parse result: recovered bits plus per-stage diagnostics.
#[derive(Debug, Clone)]
pub struct ParsedFrame {
    /// Payload bits (padded to a whole number of symbols).
    pub bits: Vec<bool>,
    /// Raw demodulated data values before masking to `sf` bits; values at or
    /// above `2^sf` necessarily indicate symbol errors.
    pub values: Vec<i64>,
    /// Channel estimate and frame-start index from the preamble.
    pub detection: Detection,
    /// Sync symbol demodulation diagnostics.
    pub sync_result: DemodResult,
    /// Per-data-symbol demodulation diagnostics.
    pub data_results: Vec<DemodResult>,
}

/// Locates a frame in `stream`, compensates delay and frequency offset, and
/// demodulates the sync field and payload.
pub fn parse_frame(stream: &[Complex64], cfg: &FrameConfig) -> Result<ParsedFrame> {
    let pcfg = cfg.pilot_config();
    let mut detection = estimate_stream(stream, &pcfg, DEFAULT_THRESHOLD)?;

    let p1 = cfg.p1 as usize;
    let p = cfg.p as usize;

    // With repeated pilots the detector may have locked onto a later copy
    // of the pair; walk back while an earlier pair also verifies.
    for _ in 1..cfg.pilot_repeats {
        let Some(earlier) = detection.frame_start.checked_sub(2 * p1) else {
            break;
        };
        match crate::sync::verify_pilot_pair(stream, earlier, &pcfg, DEFAULT_THRESHOLD) {
            Some(estimate) => {
                detection = Detection {
                    estimate,
                    frame_start: earlier,
                };
            }
            None => break,
        }
    }

    let clean = compensate_at(
        stream,
        detection.frame_start,
        detection.estimate.freq_offset_bins,
        cfg.p1,
    );
    let preamble = 2 * cfg.pilot_repeats * p1;
    if clean.len() < preamble + p1 {
        return Err(Error::SyncFieldInvalid(
            "stream ends before the sync symbol".into(),
        ));
    }
    let sync_ref = linear_pattern(cfg.p1, cfg.root)?.to_symbol();
    let sync_result = demodulate_cfs(&clean[preamble..preamble + p1], &sync_ref)?;
    let count = sync_result.data;
    if count > cfg.max_payload_symbols() {
        return Err(Error::SyncFieldInvalid(format!(
            "signaled payload of {count} symbols exceeds capacity {}",
            cfg.max_payload_symbols()
        )));
    }
    let data_base = preamble + p1;
    if clean.len() < data_base + count * p {
        return Err(Error::SyncFieldInvalid(format!(
            "stream ends inside the signaled payload of {count} symbols"
        )));
    }

    let mask = (1i64 << cfg.sf) - 1;
    let mut values = Vec::with_capacity(count);
    let mut data_results = Vec::with_capacity(count);
    for j in 0..count {
        let seg = &clean[data_base + j * p..data_base + (j + 1) * p];
        let reference = cfg.data_reference(j)?;
        let res = demodulate_cfs(seg, &reference)?;
        values.push(res.data as i64);
        data_results.push(res);
    }
    let bits = unpack_bits(
        &values.iter().map(|&v| v & mask).collect::<Vec<_>>(),
        cfg.sf,
    );
    Ok(ParsedFrame {
        bits,
        values,
        detection,
        sync_result,
        data_results,
    })
}

/// Receiver sensitivity in dBm:
/// `-174 + NF + 10*log10(BW) + EbNo + 10*log10(SF/P)`.
pub fn sensitivity_dbm(nf_db: f64, bw_hz: f64, ebno_db: f64, sf: u32, p: i64) -> f64 {
    assert!(bw_hz > 0.0, "bandwidth must be positive");
    -174.0 + nf_db + 10.0 * bw_hz.log10() + ebno_db + 10.0 * (sf as f64 / p as f64).log10()
}
