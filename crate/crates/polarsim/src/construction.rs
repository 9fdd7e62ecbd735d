//! Polar code construction.
//!
//! Builds the frozen set by Gaussian-approximation (GA) density evolution and
//! provides the bit-reversal permutation used by the generator matrix
//! `G_N = B_N F^{⊗n}`.
//!
//! References:
//! - S.-Y. Chung, T. J. Richardson, R. L. Urbanke, "Analysis of sum-product
//!   decoding of low-density parity-check codes using a Gaussian
//!   approximation", IEEE Trans. Inf. Theory, 2001 (the φ function).
//! - P. Trifonov, "Efficient design and decoding of polar codes",
//!   IEEE Trans. Commun., 2012 (GA applied to polar construction).

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{PolarError, Result};

/// Static definition of a polar code: block length, frozen mask, and the
/// design SNR it was built for.
///
/// Invariants enforced at construction:
/// - `n_block` is a power of two, at least 2;
/// - exactly `n_block - k_nonfrozen` mask entries are frozen;
/// - `0 < k_nonfrozen <= n_block`.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeSpec {
    n_block: usize,
    k_nonfrozen: usize,
    frozen_mask: Vec<bool>,
    design_snr_db: f64,
}

impl CodeSpec {
    /// Builds a `CodeSpec` from an explicit frozen mask (`true` = frozen).
    pub fn new(frozen_mask: Vec<bool>, design_snr_db: f64) -> Result<Self> {
        let n_block = frozen_mask.len();
        if !is_power_of_two_ge2(n_block) {
            return Err(PolarError::BlockLength(n_block));
        }
        let frozen_count = frozen_mask.iter().filter(|&&f| f).count();
        let k_nonfrozen = n_block - frozen_count;
        if k_nonfrozen == 0 {
            return Err(PolarError::KOutOfRange { k: 0, n: n_block });
        }
        Ok(Self {
            n_block,
            k_nonfrozen,
            frozen_mask,
            design_snr_db,
        })
    }

    /// Block length N.
    pub fn n_block(&self) -> usize {
        self.n_block
    }

    /// Number of non-frozen bit-channels K (information bits plus CRC bits).
    pub fn k_nonfrozen(&self) -> usize {
        self.k_nonfrozen
    }

    /// Design SNR (dB) the frozen set was constructed for.
    pub fn design_snr_db(&self) -> f64 {
        self.design_snr_db
    }

    /// log2(N), the number of butterfly stages.
    pub fn stages(&self) -> usize {
        self.n_block.trailing_zeros() as usize
    }

    /// Whether bit-channel `index` (0-based) is frozen.
    pub fn is_frozen(&self, index: usize) -> bool {
        self.frozen_mask[index]
    }

    /// The full frozen mask (`true` = frozen), length N.
    pub fn frozen_mask(&self) -> &[bool] {
        &self.frozen_mask
    }

    /// Non-frozen bit-channel indices in ascending order.
    pub fn non_frozen_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.frozen_mask
            .iter()
            .enumerate()
            .filter(|(_, &f)| !f)
            .map(|(i, _)| i)
    }

    /// Frozen bit-channel indices in ascending order.
    pub fn frozen_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.frozen_mask
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(i, _)| i)
    }
}

fn is_power_of_two_ge2(n: usize) -> bool {
    n >= 2 && n.is_power_of_two()
}

/// Bit-reversal permutation of `{0, .., N-1}`: `perm[i]` is the index whose
/// log2(N)-bit binary representation reverses that of `i`.
///
/// The permutation is an involution: applying it twice is the identity.
pub fn bit_reversal_permutation(n_block: usize) -> Result<Vec<usize>> {
    if !is_power_of_two_ge2(n_block) {
        return Err(PolarError::BlockLength(n_block));
    }
    let bits = n_block.trailing_zeros();
    Ok((0..n_block)
        .map(|i| i.reverse_bits() >> (usize::BITS - bits))
        .collect())
}

// --- Gaussian approximation ---------------------------------------------

/// Seam between the two branches of Chung et al.'s φ approximation.
///
/// The classic polynomial-exponential branch `exp(-0.4527 m^0.86 + 0.0218)`
/// and the asymptotic branch `sqrt(π/m) e^{-m/4} (1 - 10/(7m))` do not meet
/// at the textbook switch point m = 10 (0.038476 vs 0.039436): φ would jump
/// upward there and stop being monotone, which breaks both the bisection
/// inverse and the monotonicity of the construction in the design SNR. The
/// seam is therefore placed at the branch crossing, where the two formulas
/// are equal and φ is continuous and strictly decreasing.
const PHI_SEAM: f64 = 14.394352942168468;

/// φ(m): expected value of `1 - E[tanh(x/2)]` for `x ~ N(m, 2m)`, in the
/// standard two-piece analytic approximation.
fn phi(m: f64) -> f64 {
    debug_assert!(m >= 0.0);
    if m <= PHI_SEAM {
        (-0.4527 * m.powf(0.86) + 0.0218).exp()
    } else {
        (std::f64::consts::PI / m).sqrt() * (-m / 4.0).exp() * (1.0 - 10.0 / (7.0 * m))
    }
}

/// φ⁻¹(y) by bisection to a relative tolerance of 1e-9.
///
/// φ is strictly decreasing from φ(0)=e^0.0218 toward 0, so the root is
/// bracketed by expanding the upper bound until φ falls below `y`.
fn phi_inv(y: f64) -> f64 {
    debug_assert!(y > 0.0 && y < 1.03);
    let mut lo = 0.0_f64;
    let mut hi = 1.0_f64;
    while phi(hi) > y {
        hi *= 2.0;
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if phi(mid) > y {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-9 * hi {
            return 0.5 * (lo + hi);
        }
    }
}

/// GA mean LLRs of all N bit-channels for a BPSK-AWGN channel with design
/// noise variance `σ² = (2 · rate_for_sigma · 10^(design_snr_db/10))⁻¹`.
///
/// The recursion per stage maps a channel mean `m` to the pair
/// `(m_f, m_g) = (φ⁻¹(1 - (1 - φ(m))²), 2m)`, starting from `2/σ²`.
/// Index `i`'s value corresponds to bit-channel `u_i` in natural order.
pub fn ga_mean_llrs(n_block: usize, design_snr_db: f64, rate_for_sigma: f64) -> Result<Vec<f64>> {
    if !is_power_of_two_ge2(n_block) {
        return Err(PolarError::BlockLength(n_block));
    }
    if !(rate_for_sigma > 0.0 && rate_for_sigma <= 1.0) {
        return Err(PolarError::Config(format!(
            "rate_for_sigma {rate_for_sigma} must lie in (0, 1]"
        )));
    }
    let sigma2 = 1.0 / (2.0 * rate_for_sigma * 10f64.powf(design_snr_db / 10.0));
    let mut means = vec![2.0 / sigma2];
    while means.len() < n_block {
        let mut next = Vec::with_capacity(2 * means.len());
        for &m in &means {
            let p = phi(m);
            // 1 - (1 - p)^2 expanded as p(2 - p) to avoid cancellation for
            // the tiny φ values reached after a few g-stages.
            next.push(phi_inv(p * (2.0 - p)));
            next.push(2.0 * m);
        }
        means = next;
    }
    Ok(means)
}

/// Builds a polar code by GA density evolution: the non-frozen set is the
/// `k_nonfrozen` bit-channels with the largest GA mean LLR.
///
/// Reliability ties are broken by freezing the lower index.
pub fn ga_construct(
    n_block: usize,
    k_nonfrozen: usize,
    design_snr_db: f64,
    rate_for_sigma: f64,
) -> Result<CodeSpec> {
    if k_nonfrozen == 0 || k_nonfrozen > n_block {
        return Err(PolarError::KOutOfRange {
            k: k_nonfrozen,
            n: n_block,
        });
    }
    let means = ga_mean_llrs(n_block, design_snr_db, rate_for_sigma)?;
    let mut order: Vec<usize> = (0..n_block).collect();
    // Ascending mean; equal means resolve to the lower index, which lands in
    // the frozen prefix first.
    order.sort_by(|&a, &b| means[a].partial_cmp(&means[b]).unwrap().then(a.cmp(&b)));
    let mut frozen_mask = vec![false; n_block];
    for &i in order.iter().take(n_block - k_nonfrozen) {
        frozen_mask[i] = true;
    }
    CodeSpec::new(frozen_mask, design_snr_db)
}

// --- Frozen-set file format ----------------------------------------------

/// Writes a frozen set as plain text: a `# N=<n> K=<k> design_snr_db=<v>`
/// header followed by one 1-based frozen index per line, ascending.
pub fn write_frozen_file(code: &CodeSpec, path: &Path) -> Result<()> {
    let mut text = format!(
        "# N={} K={} design_snr_db={}\n",
        code.n_block(),
        code.k_nonfrozen(),
        code.design_snr_db()
    );
    for idx in code.frozen_indices() {
        writeln!(text, "{}", idx + 1).expect("string write cannot fail");
    }
    fs::write(path, text).map_err(|source| PolarError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads a frozen-set file written by [`write_frozen_file`] (or by hand in
/// the same format) back into a [`CodeSpec`].
pub fn read_frozen_file(path: &Path) -> Result<CodeSpec> {
    let text = fs::read_to_string(path).map_err(|source| PolarError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let bad = |reason: String| PolarError::FrozenFile {
        path: path.to_path_buf(),
        reason,
    };

    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad("empty file".into()))?;
    let header = header
        .strip_prefix('#')
        .ok_or_else(|| bad("first line must be a '#' header".into()))?;
    let mut n_block = None;
    let mut k_nonfrozen = None;
    let mut design_snr_db = None;
    for field in header.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| bad(format!("malformed header field '{field}'")))?;
        match key {
            "N" => n_block = Some(value.parse::<usize>().map_err(|e| bad(format!("N: {e}")))?),
            "K" => {
                k_nonfrozen = Some(value.parse::<usize>().map_err(|e| bad(format!("K: {e}")))?)
            }
            "design_snr_db" => {
                design_snr_db = Some(
                    value
                        .parse::<f64>()
                        .map_err(|e| bad(format!("design_snr_db: {e}")))?,
                )
            }
            other => return Err(bad(format!("unknown header field '{other}'"))),
        }
    }
    let n_block = n_block.ok_or_else(|| bad("header missing N".into()))?;
    let k_nonfrozen = k_nonfrozen.ok_or_else(|| bad("header missing K".into()))?;
    let design_snr_db = design_snr_db.ok_or_else(|| bad("header missing design_snr_db".into()))?;
    if !is_power_of_two_ge2(n_block) {
        return Err(PolarError::BlockLength(n_block));
    }
    if k_nonfrozen == 0 || k_nonfrozen > n_block {
        return Err(PolarError::KOutOfRange {
            k: k_nonfrozen,
            n: n_block,
        });
    }

    let mut frozen_mask = vec![false; n_block];
    let mut previous = 0usize;
    let mut count = 0usize;
    for line in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let idx: usize = line
            .parse()
            .map_err(|e| bad(format!("frozen index '{line}': {e}")))?;
        if idx < 1 || idx > n_block {
            return Err(bad(format!("frozen index {idx} out of range 1..={n_block}")));
        }
        if idx <= previous {
            return Err(bad(format!(
                "frozen indices must be strictly ascending (saw {idx} after {previous})"
            )));
        }
        previous = idx;
        frozen_mask[idx - 1] = true;
        count += 1;
    }
    let expected = n_block - k_nonfrozen;
    if count != expected {
        return Err(bad(format!(
            "header promises {expected} frozen indices, file lists {count}"
        )));
    }
    CodeSpec::new(frozen_mask, design_snr_db)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_reversal_small_blocks() {
        assert_eq!(bit_reversal_permutation(2).unwrap(), vec![0, 1]);
        assert_eq!(bit_reversal_permutation(4).unwrap(), vec![0, 2, 1, 3]);
        assert_eq!(
            bit_reversal_permutation(8).unwrap(),
            vec![0, 4, 2, 6, 1, 5, 3, 7]
        );
    }

    #[test]
    fn bit_reversal_is_involution() {
        for n in [2usize, 4, 8, 16, 64, 256, 1024] {
            let perm = bit_reversal_permutation(n).unwrap();
            for i in 0..n {
                assert_eq!(perm[perm[i]], i, "N={n}, i={i}");
            }
        }
    }

    #[test]
    fn bit_reversal_rejects_non_power_of_two() {
        assert!(bit_reversal_permutation(0).is_err());
        assert!(bit_reversal_permutation(1).is_err());
        assert!(bit_reversal_permutation(3).is_err());
        assert!(bit_reversal_permutation(48).is_err());
    }

    #[test]
    fn phi_is_continuous_and_decreasing_across_seam() {
        let below = phi(PHI_SEAM * (1.0 - 1e-9));
        let above = phi(PHI_SEAM * (1.0 + 1e-9));
        assert!((below - above).abs() < 1e-8 * below);
        let mut prev = phi(1e-6);
        let mut m = 1e-6;
        while m < 100.0 {
            m *= 1.07;
            let cur = phi(m);
            assert!(cur < prev, "phi not decreasing at m={m}");
            prev = cur;
        }
    }

    #[test]
    fn phi_inv_inverts_phi() {
        for &m in &[0.01, 0.5, 2.0, 9.9, 10.1, PHI_SEAM, 20.0, 60.0] {
            let back = phi_inv(phi(m));
            assert!(
                (back - m).abs() <= 2e-8 * m.max(1.0),
                "phi_inv(phi({m})) = {back}"
            );
        }
    }

    #[test]
    fn smallest_code_freezes_the_f_branch() {
        // g-branch mean 2m always exceeds the f-branch mean, so for N=2, k=1
        // the frozen channel is index 0.
        let code = ga_construct(2, 1, 0.0, 0.5).unwrap();
        assert_eq!(code.frozen_mask(), &[true, false]);
    }

    #[test]
    fn g_branch_doubles_and_means_stay_positive() {
        let means = ga_mean_llrs(64, 3.0, 0.5).unwrap();
        let half = ga_mean_llrs(32, 3.0, 0.5).unwrap();
        for (j, &m) in half.iter().enumerate() {
            assert!(m > 0.0);
            assert!((means[2 * j + 1] - 2.0 * m).abs() <= 1e-12 * m);
        }
    }

    #[test]
    fn construction_is_deterministic() {
        let a = ga_construct(256, 144, 4.0, 144.0 / 256.0).unwrap();
        let b = ga_construct(256, 144, 4.0, 144.0 / 256.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn paper_scale_code_has_240_frozen_channels() {
        let code = ga_construct(512, 272, 4.0, 272.0 / 512.0).unwrap();
        assert_eq!(code.n_block() - code.k_nonfrozen(), 240);
        assert_eq!(code.frozen_indices().count(), 240);
    }

    #[test]
    fn raising_design_snr_never_lowers_a_channel_mean() {
        for n in [16usize, 128] {
            for (lo, hi) in [(0.0, 0.5), (2.9, 3.0), (3.0, 3.01), (4.0, 6.0)] {
                let a = ga_mean_llrs(n, lo, 0.5).unwrap();
                let b = ga_mean_llrs(n, hi, 0.5).unwrap();
                for i in 0..n {
                    assert!(
                        b[i] >= a[i] * (1.0 - 1e-9),
                        "N={n}: channel {i} mean fell from {} to {} raising {lo}->{hi} dB",
                        a[i],
                        b[i]
                    );
                }
            }
        }
    }

    #[test]
    fn code_spec_rejects_bad_masks() {
        assert!(CodeSpec::new(vec![true; 4], 0.0).is_err()); // k = 0
        assert!(CodeSpec::new(vec![false; 3], 0.0).is_err()); // not a power of two
        assert!(ga_construct(8, 9, 4.0, 0.5).is_err());
        assert!(ga_construct(12, 6, 4.0, 0.5).is_err());
    }

    #[test]
    fn frozen_file_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("frozen.txt");
        let code = ga_construct(64, 32, 4.0, 0.5).unwrap();
        write_frozen_file(&code, &path).unwrap();
        let back = read_frozen_file(&path).unwrap();
        assert_eq!(back, code);

        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "# N=64 K=32 design_snr_db=4");
        // 1-based, ascending, lowest channel is always frozen at this rate.
        assert_eq!(lines.next().unwrap(), "1");
    }

    #[test]
    fn frozen_file_rejects_inconsistencies() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("frozen.txt");

        std::fs::write(&path, "# N=4 K=2 design_snr_db=0\n1\n1\n").unwrap();
        assert!(read_frozen_file(&path).is_err()); // not ascending

        std::fs::write(&path, "# N=4 K=2 design_snr_db=0\n1\n").unwrap();
        assert!(read_frozen_file(&path).is_err()); // count mismatch

        std::fs::write(&path, "# N=4 K=2 design_snr_db=0\n1\n5\n").unwrap();
        assert!(read_frozen_file(&path).is_err()); // out of range

        std::fs::write(&path, "1\n2\n").unwrap();
        assert!(read_frozen_file(&path).is_err()); // missing header
    }
}
