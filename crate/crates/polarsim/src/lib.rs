//! Polar-code construction, encoding, list decoding, flip decoding and a
//! reproducible Monte Carlo simulation harness.
//!
//! The crate covers the full experimental loop for CRC-aided polar coding
//! on the BPSK-AWGN channel:
//!
//! * [`construction`] — Gaussian-approximation density evolution, frozen-set
//!   selection and the frozen-set file format.
//! * [`codec`] — bit-level CRCs, frame assembly and the `u · B_N · F^{⊗n}`
//!   butterfly encoder.
//! * [`list_kernel`] — the SCL engine: LLR recursions, path metrics, 2L→L
//!   pruning with optional metric capture, and CRC-aided selection.
//! * [`flip`] — critical-set scoring of pruning events, single-bit flip
//!   re-decodes, the fixed-list SCL-Flip decoder and the adaptive AD-SCLF
//!   decoder that escalates the list size before spending any flips.
//! * [`sim`] — seeded frame-error-rate and complexity experiments plus
//!   CSV/JSON-lines emission, bit-reproducible for any worker count.
//!
//! # Where to start
//!
//! Each major capability has a runnable example:
//!
//! * `construct_code` — build PC(N,K), inspect channel reliabilities, round
//!   trip a frozen-set file.
//! * `encode_roundtrip` — assemble a CRC frame, encode it, decode it
//!   noiselessly.
//! * `ca_scl_basics` — list decoding on noisy frames, path metrics, CRC
//!   selection.
//! * `critical_set_flips` — what the flip machinery sees when CA-SCL fails.
//! * `ad_sclf_walkthrough` — attempt logs and per-frame complexity of the
//!   adaptive decoder.
//! * `fer_sweep` — a small end-to-end decoder comparison over an Eb/N0
//!   grid.
//!
//! Run one with `cargo run --release --example ca_scl_basics`.
//!
//! The `polarsim` binary wraps [`sim::run_experiment`] behind a flag-based
//! CLI for batch experiments.

pub mod codec;
pub mod construction;
pub mod error;
pub mod flip;
pub mod list_kernel;
pub mod sim;

pub use codec::{assemble_u, crc_append, crc_check, encode, CrcSpec, MessageFrame};
pub use construction::{
    bit_reversal_permutation, ga_construct, read_frozen_file, write_frozen_file, CodeSpec,
};
pub use error::{PolarError, Result};
pub use flip::{
    ad_sclf_decode, build_critical_set, compute_e, flip_redecode, sclf_decode, Attempt,
    AttemptLog, CriticalSet, FlipDirective,
};
pub use list_kernel::{
    ca_scl_decode, llr_f, llr_f_min_sum, llr_g, pm_update, scl_decode, scl_decode_with,
    ChannelObservation, DecoderPath, ListState, PruneRecord, LLR_CLAMP,
};
pub use sim::{
    bpsk_awgn_observe, emit_results, run_experiment, ChannelConfig, DecoderKind, OutputFormat,
    SimConfig, SimResult,
};
