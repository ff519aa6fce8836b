//! Baseband micro frequency-hopping spread-spectrum modem.
//!
//! The waveform assigns one subcarrier frequency point to every sampling
//! point of a symbol ("micro" frequency hopping: the hop dwell is a single
//! baseband sample). Data rides on cyclic frequency or time shifts of a
//! primary pattern; linear patterns over a prime size are Zadoff-Chu
//! chirps, giving flat cross-correlation between roots, exact correlation
//! demodulation, dual-root time/frequency estimation, and a physical-layer
//! scrambling mode keyed by a secret secondary pattern.
//!
//! Modules:
//! - [`ntheory`]: exact modular arithmetic and prime scanning
//! - [`hopping`]: pattern generation and symbol synthesis
//! - [`spectral`]: prime-length DFT, circular correlation, peak search
//! - [`modem`]: CFS/CTS modulation, correlation demodulation, scrambling
//! - [`sync`]: dual-root pilot construction and time/frequency estimation
//! - [`channel`]: reproducible delay/CFO/AWGN/multi-user impairments
//! - [`frame`]: wireless frame assembly and parsing, link budget
//! - [`theory`]: reference detection-theory curves for Monte-Carlo checks

pub mod channel;
pub mod error;
pub mod frame;
pub mod hopping;
pub mod modem;
pub mod ntheory;
pub mod spectral;
pub mod sync;
pub mod theory;

pub use error::{Error, Result};
pub use num_complex::Complex64;
