//! Raw IQ file I/O: little-endian interleaved 32-bit floats (`cf32le`, the
//! de-facto SDR capture format) plus a JSON sidecar carrying the waveform
//! parameters. The sidecar lives next to the payload as `<file>.json`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const IQ_FORMAT: &str = "cf32le";

/// Sidecar metadata for an IQ capture.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IqMeta {
    pub format: String,
    pub sample_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sf: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p1: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Error)]
pub enum IqError {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("missing sidecar {0}")]
    MissingSidecar(PathBuf),
    #[error("malformed sidecar {path}: {message}")]
    MalformedSidecar { path: PathBuf, message: String },
    #[error("unsupported format {0:?} (expected {IQ_FORMAT:?})")]
    UnsupportedFormat(String),
    #[error("payload of {actual} samples does not match sidecar sample_count {expected}")]
    CountMismatch { actual: usize, expected: usize },
    #[error("payload size {0} bytes is not a whole number of cf32 samples")]
    TruncatedPayload(u64),
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_os_string();
    s.push(".json");
    PathBuf::from(s)
}

/// Writes interleaved `f32` I/Q samples and the JSON sidecar.
pub fn write_iq(path: &Path, samples: &[Complex64], meta: &IqMeta) -> Result<(), IqError> {
    let meta = IqMeta {
        format: IQ_FORMAT.to_string(),
        sample_count: samples.len(),
        ..meta.clone()
    };
    let io_err = |source| IqError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut buf = Vec::with_capacity(samples.len() * 8);
    for s in samples {
        buf.extend_from_slice(&(s.re as f32).to_le_bytes());
        buf.extend_from_slice(&(s.im as f32).to_le_bytes());
    }
    let mut file = fs::File::create(path).map_err(io_err)?;
    file.write_all(&buf).map_err(io_err)?;

    let side = sidecar_path(path);
    let json = serde_json::to_string_pretty(&meta).expect("meta serializes");
    fs::write(&side, json).map_err(|source| IqError::Io { path: side, source })?;
    Ok(())
}

/// Reads an IQ capture and its sidecar, validating format and sample count.
pub fn read_iq(path: &Path) -> Result<(Vec<Complex64>, IqMeta), IqError> {
    let side = sidecar_path(path);
    let meta_text = fs::read_to_string(&side).map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            IqError::MissingSidecar(side.clone())
        } else {
            IqError::Io {
                path: side.clone(),
                source: e,
            }
        }
    })?;
    let meta: IqMeta = serde_json::from_str(&meta_text).map_err(|e| IqError::MalformedSidecar {
        path: side.clone(),
        message: e.to_string(),
    })?;
    if meta.format != IQ_FORMAT {
        return Err(IqError::UnsupportedFormat(meta.format));
    }

    let bytes = fs::read(path).map_err(|source| IqError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    if bytes.len() % 8 != 0 {
        return Err(IqError::TruncatedPayload(bytes.len() as u64));
    }
    let samples: Vec<Complex64> = bytes
        .chunks_exact(8)
        .map(|c| {
            let re = f32::from_le_bytes([c[0], c[1], c[2], c[3]]);
            let im = f32::from_le_bytes([c[4], c[5], c[6], c[7]]);
            Complex64::new(re as f64, im as f64)
        })
        .collect();
    if samples.len() != meta.sample_count {
        return Err(IqError::CountMismatch {
            actual: samples.len(),
            expected: meta.sample_count,
        });
    }
    Ok((samples, meta))
}
