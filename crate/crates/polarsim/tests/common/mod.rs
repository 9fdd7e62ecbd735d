//! Independent oracles for the integration suites.
//!
//! Everything here is deliberately written from first principles — dense
//! matrices, polynomial long division, the naive recursive LLR definition —
//! sharing no code path with the library internals it checks.

#![allow(dead_code)]

use polarsim::{bpsk_awgn_observe, ChannelConfig, ChannelObservation, CodeSpec, CrcSpec, MessageFrame};
use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

pub fn rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

pub fn random_bits(rng: &mut ChaCha12Rng, len: usize) -> Vec<u8> {
    (0..len).map(|_| (rng.next_u64() & 1) as u8).collect()
}

/// A random CRC frame for `code`, assembled and ready to encode.
pub fn random_frame(code: &CodeSpec, crc: &CrcSpec, rng: &mut ChaCha12Rng) -> MessageFrame {
    let info = random_bits(rng, code.k_nonfrozen() - crc.width());
    MessageFrame::assemble(&info, crc, code).unwrap()
}

/// Transmits `codeword` at the given operating point.
pub fn observe(
    codeword: &[u8],
    ebno_db: f64,
    rate: f64,
    rng: &mut ChaCha12Rng,
) -> ChannelObservation {
    let chan = ChannelConfig::new(ebno_db, rate).unwrap();
    bpsk_awgn_observe(codeword, &chan, rng).unwrap()
}

/// Reverses the low `bits` bits of `index`, one bit at a time.
pub fn bit_rev(index: usize, bits: u32) -> usize {
    let mut out = 0;
    for b in 0..bits {
        if (index >> b) & 1 == 1 {
            out |= 1 << (bits - 1 - b);
        }
    }
    out
}

/// The dense generator rows: row `i` of `B_N · F^{⊗n}` is row
/// `bit_rev(i)` of the Kronecker power, built block by block from
/// `F^{⊗m} = [[G, 0], [G, G]]`.
pub fn dense_generator(n: usize) -> Vec<Vec<u8>> {
    assert!(n.is_power_of_two());
    let mut kron = vec![vec![1u8]];
    while kron.len() < n {
        let m = kron.len();
        let mut next = vec![vec![0u8; 2 * m]; 2 * m];
        for i in 0..m {
            for j in 0..m {
                if kron[i][j] == 1 {
                    next[i][j] = 1;
                    next[m + i][j] = 1;
                    next[m + i][m + j] = 1;
                }
            }
        }
        kron = next;
    }
    let bits = n.trailing_zeros();
    (0..n).map(|i| kron[bit_rev(i, bits)].clone()).collect()
}

/// GF(2) vector-matrix product against [`dense_generator`] rows.
pub fn dense_encode(u: &[u8], generator: &[Vec<u8>]) -> Vec<u8> {
    let n = u.len();
    let mut x = vec![0u8; n];
    for (i, row) in generator.iter().enumerate() {
        if u[i] == 1 {
            for (xj, &gj) in x.iter_mut().zip(row) {
                *xj ^= gj;
            }
        }
    }
    x
}

/// The generator polynomial's coefficient bits below the leading term,
/// MSB first.
pub fn poly_bits(poly: u64, width: usize) -> Vec<u8> {
    (0..width).rev().map(|s| ((poly >> s) & 1) as u8).collect()
}

/// CRC remainder by schoolbook polynomial long division of
/// `payload · x^width` by `x^width + poly`.
pub fn crc_long_division(payload: &[u8], poly: u64, width: usize) -> Vec<u8> {
    let divisor_tail = poly_bits(poly, width);
    let mut work = payload.to_vec();
    work.extend(std::iter::repeat_n(0u8, width));
    for i in 0..payload.len() {
        if work[i] == 1 {
            work[i] = 0; // leading term of the divisor
            for (j, &p) in divisor_tail.iter().enumerate() {
                work[i + 1 + j] ^= p;
            }
        }
    }
    work.split_off(payload.len())
}

/// Exact check-node combination via softplus identities:
/// `f(a,b) = softplus(a+b) − max(a,b) − log1p(e^{−|a−b|})`.
/// Same mathematics as the library's sign/min form, different derivation.
pub fn f_exact(a: f64, b: f64) -> f64 {
    let softplus = |x: f64| x.max(0.0) + (-x.abs()).exp().ln_1p();
    softplus(a + b) - (a.max(b) + (-(a - b).abs()).exp().ln_1p())
}

/// The naive recursive decision LLR `L(i | y, û_0^{i−1})`: split the
/// observation in half, fold the decided prefix into the even/odd partial
/// sums, recurse, and combine with f (even i) or g (odd i).
pub fn oracle_llr(i: usize, llrs: &[f64], prefix: &[u8]) -> f64 {
    let n = llrs.len();
    assert_eq!(prefix.len(), i);
    if n == 1 {
        return llrs[0];
    }
    let half = n / 2;
    let pairs = i / 2;
    let mut left_prefix = Vec::with_capacity(pairs);
    let mut right_prefix = Vec::with_capacity(pairs);
    for t in 0..pairs {
        left_prefix.push(prefix[2 * t] ^ prefix[2 * t + 1]);
        right_prefix.push(prefix[2 * t + 1]);
    }
    let left = oracle_llr(pairs, &llrs[..half], &left_prefix);
    let right = oracle_llr(pairs, &llrs[half..], &right_prefix);
    if i.is_multiple_of(2) {
        f_exact(left, right)
    } else if prefix[i - 1] == 1 {
        right - left
    } else {
        left + right
    }
}

/// Textbook SC decoding via [`oracle_llr`]: frozen bits are 0, non-frozen
/// bits take the hard decision (0 at exactly zero LLR).
pub fn oracle_sc_decode(obs: &ChannelObservation, code: &CodeSpec) -> Vec<u8> {
    let mut u = Vec::with_capacity(code.n_block());
    for i in 0..code.n_block() {
        if code.is_frozen(i) {
            u.push(0);
        } else {
            let llr = oracle_llr(i, obs.llrs(), &u);
            u.push(if llr < 0.0 { 1 } else { 0 });
        }
    }
    u
}

/// Path metric of a forced decision sequence: the |LLR| penalty wherever a
/// decision disagrees with its oracle LLR's sign.
pub fn oracle_pm_of_sequence(obs: &ChannelObservation, u: &[u8]) -> f64 {
    let mut pm = 0.0;
    for i in 0..u.len() {
        let llr = oracle_llr(i, obs.llrs(), &u[..i]);
        let disagrees = (llr > 0.0 && u[i] == 1) || (llr < 0.0 && u[i] == 0);
        if disagrees {
            pm += llr.abs();
        }
    }
    pm
}

/// Exhaustively enumerates all 2^K valid input vectors and returns the one
/// whose codeword maximizes the BPSK correlation `Σ (1−2x_i)·llr_i`, plus a
/// flag marking an effective tie with the runner-up.
pub fn oracle_ml_codeword(obs: &ChannelObservation, code: &CodeSpec) -> (Vec<u8>, bool) {
    let n = code.n_block();
    let k = code.k_nonfrozen();
    assert!(k <= 20, "enumeration only sane for small K");
    let generator = dense_generator(n);
    let non_frozen: Vec<usize> = code.non_frozen_indices().collect();
    let mut best_u = Vec::new();
    let mut best = f64::NEG_INFINITY;
    let mut second = f64::NEG_INFINITY;
    for assignment in 0u64..(1 << k) {
        let mut u = vec![0u8; n];
        for (b, &pos) in non_frozen.iter().enumerate() {
            u[pos] = ((assignment >> b) & 1) as u8;
        }
        let x = dense_encode(&u, &generator);
        let corr: f64 = x
            .iter()
            .zip(obs.llrs())
            .map(|(&xi, &li)| (1.0 - 2.0 * xi as f64) * li)
            .sum();
        if corr > best {
            second = best;
            best = corr;
            best_u = u;
        } else if corr > second {
            second = corr;
        }
    }
    (best_u, best - second < 1e-9)
}

/// Genie-aided decision LLR of bit-channel `i` for the all-zero input: all
/// partial sums vanish, so odd steps degenerate to plain sums.
pub fn genie_channel_llr(i: usize, leaves: &[f64]) -> f64 {
    let n = leaves.len();
    if n == 1 {
        return leaves[0];
    }
    let half = n / 2;
    let left = genie_channel_llr(i >> 1, &leaves[..half]);
    let right = genie_channel_llr(i >> 1, &leaves[half..]);
    if i & 1 == 0 {
        f_exact(left, right)
    } else {
        left + right
    }
}

/// Normal deviate by Marsaglia's polar method: deliberately a different
/// sampler from the library's Box-Muller transform so channel statistics
/// are checked against an independent draw.
pub fn gauss(rng: &mut ChaCha12Rng) -> f64 {
    loop {
        let u = 2.0 * unit_open(rng) - 1.0;
        let v = 2.0 * unit_open(rng) - 1.0;
        let s = u * u + v * v;
        if s > 0.0 && s < 1.0 {
            return u * (-2.0 * s.ln() / s).sqrt();
        }
    }
}

fn unit_open(rng: &mut ChaCha12Rng) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) / (1u64 << 53) as f64
}

/// Channel LLR for one leaf under the all-zero codeword (BPSK symbol +1)
/// at noise variance `sigma2`.
pub fn awgn_llr_all_zero(rng: &mut ChaCha12Rng, sigma2: f64) -> f64 {
    let y = 1.0 + sigma2.sqrt() * gauss(rng);
    2.0 * y / sigma2
}
