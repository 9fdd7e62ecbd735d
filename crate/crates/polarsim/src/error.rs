//! Crate-wide error type.

use std::path::PathBuf;
use thiserror::Error;

/// Errors reported by construction, codec, decoding, and simulation routines.
#[derive(Debug, Error)]
pub enum PolarError {
    /// Block length is not a power of two, or is smaller than 2.
    #[error("block length {0} must be a power of two and at least 2")]
    BlockLength(usize),

    /// Requested non-frozen count cannot be satisfied for the block length.
    #[error("k_nonfrozen {k} out of range for block length {n} (need 0 < k <= n)")]
    KOutOfRange { k: usize, n: usize },

    /// A bit vector had the wrong length for the operation.
    #[error("expected {expected} bits, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    /// A bit vector contained a symbol other than 0 or 1.
    #[error("non-binary symbol {value} at position {pos}")]
    NonBinary { value: u8, pos: usize },

    /// CRC width outside the supported 1..=64 range, or a degree mismatch.
    #[error("CRC width {0} must be in 1..=64")]
    CrcWidth(usize),

    /// CRC polynomial has bits at or above the stated width.
    #[error("CRC polynomial {poly:#x} does not have degree {width} (with the implicit leading term)")]
    CrcPolynomial { poly: u64, width: usize },

    /// `crc_append` requires a non-empty payload.
    #[error("CRC payload must be non-empty")]
    EmptyPayload,

    /// `crc_check` requires strictly more bits than the CRC width.
    #[error("frame of {len} bits is too short for a {width}-bit CRC")]
    FrameTooShort { len: usize, width: usize },

    /// Channel observation contained a NaN.
    #[error("channel LLR at position {0} is NaN")]
    NanLlr(usize),

    /// List size must be at least 1 (and a power of two for the adaptive decoder).
    #[error("list size {0} invalid: {1}")]
    ListSize(usize, &'static str),

    /// Flip directive names a frozen or out-of-range bit.
    #[error("flip index {0} is frozen or out of range")]
    FlipIndex(usize),

    /// Flip directive names a bit where the unflipped attempt never pruned,
    /// so the complement candidate set is empty and the attempt is a no-op.
    #[error("no pruning event at bit {0}: flip attempt is a no-op")]
    FlipNoPruneEvent(usize),

    /// Simulation or CLI configuration rejected before any frame ran.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// `emit_results` called with nothing to write.
    #[error("no results to emit")]
    EmptyResults,

    /// Frozen-set file did not parse or violated its own header.
    #[error("malformed frozen-set file {path}: {reason}")]
    FrozenFile { path: PathBuf, reason: String },

    /// I/O failure, with the offending path.
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, PolarError>;
