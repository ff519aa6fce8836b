//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by modem, sync, and frame operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A modulus smaller than 2 was supplied.
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(i64),
    /// Attempted to invert a residue that has no inverse (zero, or not
    /// coprime to the modulus). Usually a sign of a misconfigured root or key.
    #[error("{value} is not invertible modulo {modulus}")]
    ZeroOrNonInvertible { value: i64, modulus: i64 },
    /// Two sequences that must have equal length did not.
    #[error("length mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    /// Root outside the valid range `[1, m-1]`.
    #[error("root {root} out of range [1, {m} - 1]")]
    BadRoot { root: i64, m: i64 },
    /// A prime modulus was required.
    #[error("{0} is not prime")]
    NotPrime(i64),
    /// Modulated data outside `[0, m)`.
    #[error("data value {data} out of range [0, {m})")]
    DataOutOfRange { data: i64, m: i64 },
    /// No preamble cleared the detection threshold.
    #[error("no preamble detected above threshold")]
    NotDetected,
    /// The two frequency-offset equations disagreed, indicating a false
    /// detection.
    #[error("dual-root peak equations disagree: {efo_x} vs {efo_y}")]
    InconsistentPeaks { efo_x: i64, efo_y: i64 },
    /// The demodulated sync field does not describe a parsable frame.
    #[error("sync field invalid: {0}")]
    SyncFieldInvalid(String),
    /// Payload needs more symbols than the sync length field can signal.
    #[error("payload of {symbols} symbols exceeds sync field capacity {max}")]
    PayloadTooLarge { symbols: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
