//! Successive-cancellation list (SCL) decoding.
//!
//! The engine follows the LLR-domain formulation of Balatsoukas-Stimming,
//! Parizi and Burg (IEEE Trans. Signal Process., 2015): each path carries a
//! cumulative path metric that grows by |LLR| whenever a decision goes
//! against the channel evidence, and at every non-frozen bit the list doubles
//! and is pruned back to the `L` best metrics. SC decoding is the `L = 1`
//! special case; CRC-aided selection ([`ca_scl_decode`]) picks the best path
//! that passes an outer CRC.
//!
//! # Indexing convention
//!
//! The encoder computes `x = u · B_N · F^{⊗n}`. Because `B_N` commutes with
//! `F^{⊗n}`, the decoder applies the bit-reversal permutation once to the
//! channel LLR vector and then runs a natural-order `F^{⊗n}` schedule: stage
//! arrays halve in length per level, pairing element `i` of a level with
//! element `i + len/2`. Decisions come out in natural `u` order.
//!
//! Per-path stage arrays are held behind [`Arc`]s and copied lazily on
//! write, so cloning a path at a doubling step is O(log N) until one of the
//! clones actually diverges.

use std::sync::Arc;

use crate::codec::{crc_check, CrcSpec};
use crate::construction::{bit_reversal_permutation, CodeSpec};
use crate::error::{PolarError, Result};
use crate::flip::FlipDirective;

/// Magnitude bound applied to channel LLRs before decoding.
///
/// 50 nats corresponds to a bit-error probability below 2e-22 — far beyond
/// any operating point of interest — while keeping the exact f-function
/// arithmetic comfortably inside f64 range.
pub const LLR_CLAMP: f64 = 50.0;

/// A received frame in LLR form, `llr_i = ln P(y_i|x_i=0) − ln P(y_i|x_i=1)`.
///
/// Construction clamps every value to `[-LLR_CLAMP, LLR_CLAMP]` (infinities
/// included) and rejects NaN, so decoders can assume finite inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelObservation {
    llrs: Vec<f64>,
}

impl ChannelObservation {
    /// Wraps and clamps a length-N LLR vector; N must be a power of two ≥ 2.
    pub fn new(mut llrs: Vec<f64>) -> Result<Self> {
        if llrs.len() < 2 || !llrs.len().is_power_of_two() {
            return Err(PolarError::BlockLength(llrs.len()));
        }
        for (pos, v) in llrs.iter_mut().enumerate() {
            if v.is_nan() {
                return Err(PolarError::NanLlr(pos));
            }
            *v = v.clamp(-LLR_CLAMP, LLR_CLAMP);
        }
        Ok(Self { llrs })
    }

    /// The clamped LLR values.
    pub fn llrs(&self) -> &[f64] {
        &self.llrs
    }

    /// Block length N.
    pub fn len(&self) -> usize {
        self.llrs.len()
    }

    /// Never true: construction requires N ≥ 2.
    pub fn is_empty(&self) -> bool {
        self.llrs.is_empty()
    }
}

/// The check-node LLR combination `f(a,b) = ln((1 + e^{a+b})/(e^a + e^b))`,
/// evaluated in the numerically stable form
/// `sign(a)·sign(b)·min(|a|,|b|) + log1p(e^{−|a+b|}) − log1p(e^{−|a−b|})`.
#[inline]
pub fn llr_f(a: f64, b: f64) -> f64 {
    let magnitude = a.abs().min(b.abs());
    let signed = if (a < 0.0) != (b < 0.0) {
        -magnitude
    } else {
        magnitude
    };
    signed + (-(a + b).abs()).exp().ln_1p() - (-(a - b).abs()).exp().ln_1p()
}

/// The min-sum approximation to [`llr_f`]: `sign(a)·sign(b)·min(|a|,|b|)`.
///
/// Faster but lossy; the simulation defaults and all reported results use
/// the exact form.
#[inline]
pub fn llr_f_min_sum(a: f64, b: f64) -> f64 {
    let magnitude = a.abs().min(b.abs());
    if (a < 0.0) != (b < 0.0) {
        -magnitude
    } else {
        magnitude
    }
}

/// The variable-node combination `g(a,b,c) = (−1)^c·a + b` for a decided
/// partial sum `c ∈ {0,1}`.
#[inline]
pub fn llr_g(a: f64, b: f64, c: u8) -> f64 {
    debug_assert!(c <= 1);
    if c == 1 {
        b - a
    } else {
        a + b
    }
}

/// Path-metric update: unchanged when `u_hat` agrees with the hard decision
/// `δ(llr) = (1 − sign(llr))/2`, otherwise penalized by `|llr|`.
///
/// At `llr = 0` the hard decision is δ(0) = ½, matching neither bit, but the
/// penalty |0| vanishes, so both extensions leave the metric unchanged.
#[inline]
pub fn pm_update(pm: f64, llr: f64, u_hat: u8) -> f64 {
    debug_assert!(u_hat <= 1);
    let disagrees = (llr > 0.0 && u_hat == 1) || (llr < 0.0 && u_hat == 0);
    if disagrees {
        pm + llr.abs()
    } else {
        pm
    }
}

/// A finished candidate path: its full input-vector estimate and metric.
#[derive(Debug, Clone, PartialEq)]
pub struct DecoderPath {
    /// Cumulative path metric; nonnegative, smaller is more likely.
    pub pm: f64,
    /// Length-N estimate of `u`, zeros at frozen positions.
    pub u_hat: Vec<u8>,
}

/// Metrics captured at one 2L→L pruning event.
///
/// `survivor_pms` are the metrics the attempt kept and `pruned_pms` the ones
/// it discarded, each sorted ascending. In an unflipped attempt survivors
/// are ranks 1..L, so `max(survivor_pms) ≤ min(pruned_pms)`; at the flipped
/// bit of a flip re-decode the two sets trade places and the inequality
/// reverses. Critical-set construction only ever consumes records from
/// unflipped attempts.
#[derive(Debug, Clone, PartialEq)]
pub struct PruneRecord {
    /// The non-frozen bit-channel index where the pruning occurred.
    pub bit_index: usize,
    /// Metrics of the paths kept at this bit, ascending.
    pub survivor_pms: Vec<f64>,
    /// Metrics of the paths discarded at this bit, ascending.
    pub pruned_pms: Vec<f64>,
}

/// Final decoder state: surviving paths plus any captured pruning events.
#[derive(Debug, Clone)]
pub struct ListState {
    /// Surviving paths sorted by metric ascending (ties keep creation order).
    pub paths: Vec<DecoderPath>,
    /// The configured list size L.
    pub list_size: usize,
    /// One record per pruning event, in bit order; empty unless capture was
    /// requested. Bits where the doubled list still fit in L produce no
    /// record and are ineligible for the critical set.
    pub prune_records: Vec<PruneRecord>,
}

impl ListState {
    /// The rank-1 (smallest-metric) path.
    pub fn best(&self) -> &DecoderPath {
        &self.paths[0]
    }
}

/// Per-path working state: stage LLRs and partial sums, level `t` at index
/// `t−1` with length `N >> t`. Arcs make cloning cheap; `Arc::make_mut`
/// copies a stage only when a shared one is written.
#[derive(Clone)]
struct PathState {
    pm: f64,
    llrs: Vec<Arc<Vec<f64>>>,
    sums: Vec<Arc<Vec<u8>>>,
}

impl PathState {
    fn new(n: usize, stages: usize) -> Self {
        Self {
            pm: 0.0,
            llrs: (1..=stages).map(|t| Arc::new(vec![0.0; n >> t])).collect(),
            sums: (1..=stages).map(|t| Arc::new(vec![0u8; n >> t])).collect(),
        }
    }

    /// Recomputes the stage LLRs needed before deciding bit `phi`: the
    /// shallowest stale stage is `stages − trailing_zeros(phi)` (all of them
    /// at phi = 0), refreshed with `g` against the stored partial sums, and
    /// every deeper stage is refreshed with `f`.
    fn refresh(&mut self, phi: usize, level0: &[f64], stages: usize, min_sum: bool) {
        let first = if phi == 0 {
            1
        } else {
            stages - phi.trailing_zeros() as usize
        };
        if phi == 0 {
            self.apply_f(1, level0, min_sum);
        } else {
            self.apply_g(first, level0);
        }
        for t in first + 1..=stages {
            self.apply_f(t, level0, min_sum);
        }
    }

    fn apply_f(&mut self, t: usize, level0: &[f64], min_sum: bool) {
        let (below, rest) = self.llrs.split_at_mut(t - 1);
        let src: &[f64] = if t == 1 { level0 } else { &below[t - 2] };
        let dst = Arc::make_mut(&mut rest[0]);
        let h = dst.len();
        if min_sum {
            for i in 0..h {
                dst[i] = llr_f_min_sum(src[i], src[i + h]);
            }
        } else {
            for i in 0..h {
                dst[i] = llr_f(src[i], src[i + h]);
            }
        }
    }

    fn apply_g(&mut self, t: usize, level0: &[f64]) {
        let (below, rest) = self.llrs.split_at_mut(t - 1);
        let src: &[f64] = if t == 1 { level0 } else { &below[t - 2] };
        let dst = Arc::make_mut(&mut rest[0]);
        let c = &self.sums[t - 1];
        let h = dst.len();
        for i in 0..h {
            dst[i] = llr_g(src[i], src[i + h], c[i]);
        }
    }

    fn decision_llr(&self, stages: usize) -> f64 {
        self.llrs[stages - 1][0]
    }

    /// Folds the decided bit back into the partial-sum stages. Walking up
    /// from the decision level, a 1 in the corresponding bit of `phi` means
    /// that level already holds sums awaiting a right sibling: combine as
    /// `(stored ⊕ vals) ‖ vals` and continue; a 0 means store and stop.
    fn propagate(
        &mut self,
        phi: usize,
        bit: u8,
        stages: usize,
        vals: &mut Vec<u8>,
        merged: &mut Vec<u8>,
    ) {
        vals.clear();
        vals.push(bit);
        let mut t = stages;
        loop {
            if t == 0 {
                return; // phi = N−1: nothing left to feed back
            }
            if (phi >> (stages - t)) & 1 == 0 {
                Arc::make_mut(&mut self.sums[t - 1]).copy_from_slice(vals);
                return;
            }
            let stored = &self.sums[t - 1];
            merged.clear();
            merged.extend(stored.iter().zip(vals.iter()).map(|(a, b)| a ^ b));
            merged.extend_from_slice(vals);
            std::mem::swap(vals, merged);
            t -= 1;
        }
    }
}

/// A doubled-list candidate before selection.
struct Candidate {
    pm: f64,
    parent: u32,
    bit: u8,
}

/// SCL decoding with exact `f`; see [`scl_decode_with`] for the min-sum
/// variant.
///
/// Frozen bits extend every path with 0; each non-frozen bit doubles the
/// list and, once the doubled list exceeds `list_size`, keeps the L
/// smallest-metric candidates under a stable ordering (metric, then parent
/// index, then extension bit). With `capture_prunes`, every pruning event is
/// logged. A [`FlipDirective`] inverts the selection at exactly its bit:
/// the complement set — the candidates an unflipped attempt would have
/// pruned — survives instead.
///
/// Returns the final paths sorted by metric.
pub fn scl_decode(
    obs: &ChannelObservation,
    code: &CodeSpec,
    list_size: usize,
    capture_prunes: bool,
    flip: Option<&FlipDirective>,
) -> Result<ListState> {
    scl_decode_with(obs, code, list_size, capture_prunes, flip, false)
}

/// [`scl_decode`] with a choice of check-node function: exact `f` or the
/// min-sum approximation.
pub fn scl_decode_with(
    obs: &ChannelObservation,
    code: &CodeSpec,
    list_size: usize,
    capture_prunes: bool,
    flip: Option<&FlipDirective>,
    min_sum: bool,
) -> Result<ListState> {
    if list_size < 1 {
        return Err(PolarError::ListSize(list_size, "must be at least 1"));
    }
    let n = code.n_block();
    if obs.len() != n {
        return Err(PolarError::LengthMismatch {
            expected: n,
            got: obs.len(),
        });
    }
    if let Some(directive) = flip {
        if directive.flip_index >= n || code.is_frozen(directive.flip_index) {
            return Err(PolarError::FlipIndex(directive.flip_index));
        }
    }
    let stages = code.stages();
    let perm = bit_reversal_permutation(n)?;
    let level0: Vec<f64> = perm.iter().map(|&j| obs.llrs()[j]).collect();

    let mut paths = vec![PathState::new(n, stages)];
    // One (parent, bit) row per non-frozen phase, for backtracking u_hat.
    let mut genealogy: Vec<Vec<(u32, u8)>> = Vec::with_capacity(code.k_nonfrozen());
    let mut prune_records = Vec::new();
    let (mut vals_buf, mut merge_buf) = (Vec::with_capacity(n), Vec::with_capacity(n));

    for phi in 0..n {
        for path in &mut paths {
            path.refresh(phi, &level0, stages, min_sum);
        }
        if code.is_frozen(phi) {
            for path in &mut paths {
                let llr = path.decision_llr(stages);
                path.pm = pm_update(path.pm, llr, 0);
                path.propagate(phi, 0, stages, &mut vals_buf, &mut merge_buf);
            }
            continue;
        }

        let mut candidates = Vec::with_capacity(paths.len() * 2);
        for (idx, path) in paths.iter().enumerate() {
            let llr = path.decision_llr(stages);
            for bit in [0u8, 1u8] {
                candidates.push(Candidate {
                    pm: pm_update(path.pm, llr, bit),
                    parent: idx as u32,
                    bit,
                });
            }
        }
        let flip_here = flip.is_some_and(|d| d.flip_index == phi);

        let kept: Vec<Candidate> = if candidates.len() <= list_size {
            if flip_here {
                // Nothing was pruned here, so the complement is empty.
                return Err(PolarError::FlipNoPruneEvent(phi));
            }
            candidates
        } else {
            candidates.sort_unstable_by(|a, b| {
                a.pm
                    .total_cmp(&b.pm)
                    .then(a.parent.cmp(&b.parent))
                    .then(a.bit.cmp(&b.bit))
            });
            let discarded = candidates.split_off(list_size);
            let (kept, dropped) = if flip_here {
                (discarded, candidates)
            } else {
                (candidates, discarded)
            };
            if capture_prunes {
                prune_records.push(PruneRecord {
                    bit_index: phi,
                    survivor_pms: kept.iter().map(|c| c.pm).collect(),
                    pruned_pms: dropped.iter().map(|c| c.pm).collect(),
                });
            }
            kept
        };

        let mut next_paths = Vec::with_capacity(kept.len());
        let mut row = Vec::with_capacity(kept.len());
        for cand in &kept {
            let mut path = paths[cand.parent as usize].clone();
            path.pm = cand.pm;
            path.propagate(phi, cand.bit, stages, &mut vals_buf, &mut merge_buf);
            next_paths.push(path);
            row.push((cand.parent, cand.bit));
        }
        paths = next_paths;
        genealogy.push(row);
    }

    // Backtrack each survivor through the genealogy to materialize u_hat.
    let non_frozen: Vec<usize> = code.non_frozen_indices().collect();
    let mut finished: Vec<DecoderPath> = paths
        .iter()
        .enumerate()
        .map(|(leaf, path)| {
            let mut u_hat = vec![0u8; n];
            let mut cursor = leaf;
            for (row, &phi) in genealogy.iter().zip(&non_frozen).rev() {
                let (parent, bit) = row[cursor];
                u_hat[phi] = bit;
                cursor = parent as usize;
            }
            DecoderPath {
                pm: path.pm,
                u_hat,
            }
        })
        .collect();
    finished.sort_by(|a, b| a.pm.total_cmp(&b.pm)); // stable: ties keep order

    Ok(ListState {
        paths: finished,
        list_size,
        prune_records,
    })
}

/// CRC-aided SCL: decodes with [`scl_decode`], then returns the
/// smallest-metric path that passes the CRC, or the rank-1 path with
/// `crc_pass = false` if none does.
pub fn ca_scl_decode(
    obs: &ChannelObservation,
    code: &CodeSpec,
    crc: &CrcSpec,
    list_size: usize,
    capture_prunes: bool,
) -> Result<(Vec<u8>, bool, ListState)> {
    let state = scl_decode(obs, code, list_size, capture_prunes, None)?;
    select_by_crc(&state, code, crc).map(|(u_hat, pass)| (u_hat, pass, state))
}

/// CRC-based selection shared by the plain and flipped decoders.
pub(crate) fn select_by_crc(
    state: &ListState,
    code: &CodeSpec,
    crc: &CrcSpec,
) -> Result<(Vec<u8>, bool)> {
    for path in &state.paths {
        let payload: Vec<u8> = code.non_frozen_indices().map(|i| path.u_hat[i]).collect();
        if crc_check(&payload, crc)? {
            return Ok((path.u_hat.clone(), true));
        }
    }
    Ok((state.best().u_hat.clone(), false))
}
