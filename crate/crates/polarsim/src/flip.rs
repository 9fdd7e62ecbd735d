//! Bit-flip re-decoding on top of the SCL kernel.
//!
//! When CRC-aided SCL fails, the first wrong path decision usually happened
//! at one of a handful of unreliable non-frozen bits. Each pruning event's
//! captured metrics score how plausible the discarded half of the list was
//! ([`compute_e`]); the lowest-scoring bits form a critical set, and a flip
//! re-decode repeats the pass keeping the discarded candidates at exactly
//! one such bit.
//!
//! Two full decoders are built from these pieces:
//!
//! * [`sclf_decode`] — SCL-Flip at a fixed list size: one CRC-aided pass,
//!   then up to `t_max` single-bit flip re-decodes.
//! * [`ad_sclf_decode`] — the adaptive variant: escalate the list size
//!   through 1, 2, …, L_max/2 first, and only run the flip stage at L_max
//!   when every cheap pass has failed. The attempt log's `total_cs` (the
//!   summed list sizes) is the per-frame normalized complexity.

use std::f64::consts::LN_10;

use crate::codec::CrcSpec;
use crate::construction::CodeSpec;
use crate::error::{PolarError, Result};
use crate::list_kernel::{
    ca_scl_decode, scl_decode, select_by_crc, ChannelObservation, ListState, PruneRecord,
};

/// Instruction to invert the pruning selection at one non-frozen bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlipDirective {
    /// The bit-channel index whose pruned candidate set should survive.
    pub flip_index: usize,
}

/// Error-prone bits of one decoding attempt, most suspicious first.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalSet {
    /// `(bit_index, e_value)` pairs sorted by `e_value` ascending, ties by
    /// lower bit index; at most `capacity` of them.
    pub entries: Vec<(usize, f64)>,
    /// The configured maximum size `T_max`.
    pub capacity: usize,
}

impl CriticalSet {
    /// The bit indices in flip order.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|&(bit, _)| bit)
    }
}

/// One decoding attempt within a flip decoder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Attempt {
    /// List size used by this attempt.
    pub list_size: usize,
    /// The flipped bit, if this was a flip re-decode.
    pub flip_index: Option<usize>,
    /// Whether the attempt ended with a CRC pass.
    pub crc_pass: bool,
}

/// The attempts a flip decoder spent on one frame.
///
/// `total_cs` is the summed list sizes Σ L_i — the frame's decoding
/// complexity normalized to SC passes. At most the final attempt can have
/// `crc_pass = true` because decoding stops at the first pass.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AttemptLog {
    /// Every attempt in execution order.
    pub attempts: Vec<Attempt>,
    /// Σ list_size over `attempts`.
    pub total_cs: u64,
}

impl AttemptLog {
    fn record(&mut self, list_size: usize, flip_index: Option<usize>, crc_pass: bool) {
        self.attempts.push(Attempt {
            list_size,
            flip_index,
            crc_pass,
        });
        self.total_cs += list_size as u64;
    }

    /// Number of attempts spent.
    pub fn len(&self) -> usize {
        self.attempts.len()
    }

    /// True when no attempt has been logged yet.
    pub fn is_empty(&self) -> bool {
        self.attempts.is_empty()
    }
}

/// Base-10 log of `Σ exp(−pm)`, max-shifted so the largest term is exp(0).
fn log10_sum_exp_neg(pms: &[f64]) -> f64 {
    let smallest = pms.iter().copied().fold(f64::INFINITY, f64::min);
    let sum: f64 = pms.iter().map(|&pm| (smallest - pm).exp()).sum();
    (sum.ln() - smallest) / LN_10
}

/// The error-proneness score of one pruning event:
/// `E = log10(Σ exp(−survivor pm)) − α · log10(Σ exp(−pruned pm))`.
///
/// Small values mean the discarded paths carried nearly as much likelihood
/// mass as the survivors — a likely place for the correct path to have been
/// lost. An empty pruned set yields `+∞`, excluding the bit from any
/// critical set.
pub fn compute_e(record: &PruneRecord, alpha: f64) -> f64 {
    debug_assert!(!record.survivor_pms.is_empty());
    if record.pruned_pms.is_empty() {
        return f64::INFINITY;
    }
    log10_sum_exp_neg(&record.survivor_pms) - alpha * log10_sum_exp_neg(&record.pruned_pms)
}

/// Ranks the captured pruning events by [`compute_e`] and keeps the `t_max`
/// most error-prone bits.
///
/// Entries are ordered ascending by score with ties broken toward the lower
/// bit index; bits without a usable score (no pruning) are excluded, so the
/// result may be shorter than `t_max`.
pub fn build_critical_set(
    records: &[PruneRecord],
    code: &CodeSpec,
    t_max: usize,
    alpha: f64,
) -> CriticalSet {
    let mut scored: Vec<(usize, f64)> = records
        .iter()
        .filter(|r| !code.is_frozen(r.bit_index))
        .map(|r| (r.bit_index, compute_e(r, alpha)))
        .filter(|&(_, e)| e.is_finite())
        .collect();
    scored.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    scored.truncate(t_max);
    CriticalSet {
        entries: scored,
        capacity: t_max,
    }
}

/// One flip re-decode: CRC-aided SCL that keeps the complement candidate set
/// at `flip.flip_index`, then applies the usual CRC selection.
///
/// Flipping a bit where the unflipped pass never pruned is a no-op failure
/// and surfaces as [`PolarError::FlipNoPruneEvent`].
pub fn flip_redecode(
    obs: &ChannelObservation,
    code: &CodeSpec,
    crc: &CrcSpec,
    list_size: usize,
    flip: &FlipDirective,
    capture_prunes: bool,
) -> Result<(Vec<u8>, bool, ListState)> {
    let state = scl_decode(obs, code, list_size, capture_prunes, Some(flip))?;
    select_by_crc(&state, code, crc).map(|(u_hat, pass)| (u_hat, pass, state))
}

/// The fixed-list stage shared by [`sclf_decode`] and [`ad_sclf_decode`]:
/// one CRC-aided pass at `list_size` with prune capture, then flip
/// re-decodes along the critical set until a pass or `t_max` attempts.
///
/// Returns the first passing result, or the final attempt's result when
/// everything fails. Using one helper for both decoders makes them
/// bit-identical on frames where the adaptive stage-1 passes all fail.
fn casl_then_flips(
    obs: &ChannelObservation,
    code: &CodeSpec,
    crc: &CrcSpec,
    list_size: usize,
    t_max: usize,
    alpha: f64,
    log: &mut AttemptLog,
) -> Result<(Vec<u8>, bool)> {
    let (u_hat, pass, state) = ca_scl_decode(obs, code, crc, list_size, true)?;
    log.record(list_size, None, pass);
    if pass {
        return Ok((u_hat, true));
    }
    let critical = build_critical_set(&state.prune_records, code, t_max, alpha);
    let mut last = (u_hat, false);
    for bit in critical.indices() {
        let directive = FlipDirective { flip_index: bit };
        let (u_hat, pass, _) = flip_redecode(obs, code, crc, list_size, &directive, false)?;
        log.record(list_size, Some(bit), pass);
        if pass {
            return Ok((u_hat, true));
        }
        last = (u_hat, false);
    }
    Ok(last)
}

/// SCL-Flip at a fixed list size: a CRC-aided pass, then up to `t_max`
/// single-bit flip re-decodes along the critical set.
///
/// The output is the first CRC-passing attempt's estimate, or the final
/// attempt's estimate with `crc_pass = false` when every attempt fails.
pub fn sclf_decode(
    obs: &ChannelObservation,
    code: &CodeSpec,
    crc: &CrcSpec,
    list_size: usize,
    t_max: usize,
    alpha: f64,
) -> Result<(Vec<u8>, bool, AttemptLog)> {
    validate_alpha(alpha)?;
    let mut log = AttemptLog::default();
    let (u_hat, pass) = casl_then_flips(obs, code, crc, list_size, t_max, alpha, &mut log)?;
    Ok((u_hat, pass, log))
}

/// Adaptive SCL-Flip: CRC-aided passes at L = 1, 2, 4, …, L_max/2, stopping
/// at the first CRC success; only when all of those fail does the flip stage
/// of [`sclf_decode`] run at L_max.
///
/// Most frames at reasonable SNR pass at a small list size, so the average
/// `total_cs` drops far below the fixed-list decoder's while the worst case
/// stays bounded by `(L_max − 1) + (1 + t_max)·L_max`.
pub fn ad_sclf_decode(
    obs: &ChannelObservation,
    code: &CodeSpec,
    crc: &CrcSpec,
    l_max: usize,
    t_max: usize,
    alpha: f64,
) -> Result<(Vec<u8>, bool, AttemptLog)> {
    if l_max < 1 || !l_max.is_power_of_two() {
        return Err(PolarError::ListSize(l_max, "must be a power of two"));
    }
    validate_alpha(alpha)?;
    let mut log = AttemptLog::default();
    let mut list_size = 1;
    while list_size < l_max {
        let (u_hat, pass, _) = ca_scl_decode(obs, code, crc, list_size, false)?;
        log.record(list_size, None, pass);
        if pass {
            return Ok((u_hat, true, log));
        }
        list_size *= 2;
    }
    let (u_hat, pass) = casl_then_flips(obs, code, crc, l_max, t_max, alpha, &mut log)?;
    Ok((u_hat, pass, log))
}

fn validate_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() {
        Ok(())
    } else {
        Err(PolarError::Config(format!(
            "critical-set exponent alpha must be finite, got {alpha}"
        )))
    }
}
