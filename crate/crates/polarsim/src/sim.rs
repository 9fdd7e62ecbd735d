//! BPSK-AWGN Monte Carlo harness: frame-error-rate and decoding-complexity
//! experiments over an Eb/N0 grid.
//!
//! Reproducibility is the design center. The noise stream of frame `j` at
//! grid point `g` is a ChaCha12 stream seeded from `(master_seed, g, j)`
//! alone, and early stopping happens only at fixed chunk boundaries, so
//! results are bit-identical for any worker count. Gaussian samples come
//! from the Box–Muller transform (pair per two uniforms, cosine branch
//! first); all accumulators are integer counters, so summation order cannot
//! perturb the statistics.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::iter::{IntoParallelIterator, ParallelIterator};

use crate::codec::{encode, CrcSpec, MessageFrame};
use crate::construction::CodeSpec;
use crate::error::{PolarError, Result};
use crate::flip::{ad_sclf_decode, sclf_decode};
use crate::list_kernel::{ca_scl_decode, scl_decode, ChannelObservation};

/// Frames processed between early-stop checks; fixed so that stopping
/// decisions depend only on frame indices, never on worker scheduling.
const CHUNK_FRAMES: u64 = 512;

/// One Eb/N0 operating point of the BPSK-AWGN channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelConfig {
    ebno_db: f64,
    rate_for_sigma: f64,
    sigma2: f64,
}

impl ChannelConfig {
    /// Derives the noise variance `σ² = 1/(2·R·10^(EbN0/10))` for code rate
    /// `rate_for_sigma` (typically K/N counting CRC bits as payload).
    pub fn new(ebno_db: f64, rate_for_sigma: f64) -> Result<Self> {
        if !ebno_db.is_finite() {
            return Err(PolarError::Config(format!(
                "Eb/N0 must be finite, got {ebno_db}"
            )));
        }
        if !(rate_for_sigma.is_finite() && rate_for_sigma > 0.0) {
            return Err(PolarError::Config(format!(
                "code rate must be positive, got {rate_for_sigma}"
            )));
        }
        let sigma2 = 1.0 / (2.0 * rate_for_sigma * 10f64.powf(ebno_db / 10.0));
        Ok(Self {
            ebno_db,
            rate_for_sigma,
            sigma2,
        })
    }

    /// The operating point in dB.
    pub fn ebno_db(&self) -> f64 {
        self.ebno_db
    }

    /// The rate used in the Eb/N0-to-σ² conversion.
    pub fn rate_for_sigma(&self) -> f64 {
        self.rate_for_sigma
    }

    /// Per-dimension noise variance.
    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }
}

/// Which decoder the harness runs on each frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoderKind {
    /// Successive cancellation (list size forced to 1).
    Sc,
    /// Plain SCL: rank-1 path metric wins, CRC unused for selection.
    Scl,
    /// CRC-aided SCL.
    CaScl,
    /// SCL-Flip at a fixed list size.
    Sclf,
    /// Adaptive SCL-Flip: list escalation, then flips at L_max.
    AdSclf,
}

impl DecoderKind {
    /// All kinds, in CLI presentation order.
    pub const ALL: [DecoderKind; 5] = [
        DecoderKind::Sc,
        DecoderKind::Scl,
        DecoderKind::CaScl,
        DecoderKind::Sclf,
        DecoderKind::AdSclf,
    ];

    /// The CLI/CSV token for this decoder.
    pub fn token(&self) -> &'static str {
        match self {
            DecoderKind::Sc => "sc",
            DecoderKind::Scl => "scl",
            DecoderKind::CaScl => "ca-scl",
            DecoderKind::Sclf => "sclf",
            DecoderKind::AdSclf => "ad-sclf",
        }
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for DecoderKind {
    type Err = PolarError;

    fn from_str(s: &str) -> Result<Self> {
        DecoderKind::ALL
            .iter()
            .copied()
            .find(|kind| kind.token() == s)
            .ok_or_else(|| {
                PolarError::Config(format!(
                    "unknown decoder '{s}' (expected sc, scl, ca-scl, sclf or ad-sclf)"
                ))
            })
    }
}

/// A full experiment description: code, decoder, channel grid and budget.
#[derive(Debug, Clone)]
pub struct SimConfig {
    /// The polar code under test.
    pub code: CodeSpec,
    /// Outer CRC (appended to every transmitted frame, whichever decoder
    /// runs, so all decoders see the same code rate).
    pub crc: CrcSpec,
    /// Decoder to run.
    pub decoder: DecoderKind,
    /// List size L (L_max for `ad-sclf`; ignored by `sc`).
    pub list_size: usize,
    /// Maximum flip attempts for the flip decoders.
    pub t_max: usize,
    /// Critical-set exponent α.
    pub alpha: f64,
    /// Eb/N0 grid in dB, one result row per entry.
    pub ebno_grid_db: Vec<f64>,
    /// Frame budget per grid point.
    pub frames_per_point: u64,
    /// Optional early stop once this many frame errors accumulate (checked
    /// at fixed chunk boundaries).
    pub max_errors: Option<u64>,
    /// Master seed; with the grid index and frame index it fully determines
    /// every random draw.
    pub master_seed: u64,
    /// Worker threads; must not (and cannot) affect the results.
    pub workers: usize,
    /// Override for the rate in the Eb/N0 conversion; defaults to K/N.
    pub rate_for_sigma: Option<f64>,
}

impl SimConfig {
    /// The rate used for the σ² conversion: the override, or K/N.
    pub fn effective_rate(&self) -> f64 {
        self.rate_for_sigma
            .unwrap_or(self.code.k_nonfrozen() as f64 / self.code.n_block() as f64)
    }

    fn validate(&self) -> Result<()> {
        if self.ebno_grid_db.is_empty() {
            return Err(PolarError::Config("empty Eb/N0 grid".into()));
        }
        if self.frames_per_point == 0 {
            return Err(PolarError::Config("frame budget must be at least 1".into()));
        }
        if self.list_size < 1 {
            return Err(PolarError::ListSize(self.list_size, "must be at least 1"));
        }
        if self.decoder == DecoderKind::AdSclf && !self.list_size.is_power_of_two() {
            return Err(PolarError::ListSize(
                self.list_size,
                "must be a power of two for ad-sclf",
            ));
        }
        if !self.alpha.is_finite() {
            return Err(PolarError::Config(format!(
                "alpha must be finite, got {}",
                self.alpha
            )));
        }
        if self.crc.width() >= self.code.k_nonfrozen() {
            return Err(PolarError::Config(format!(
                "CRC width {} leaves no information bits in K = {}",
                self.crc.width(),
                self.code.k_nonfrozen()
            )));
        }
        if self.max_errors == Some(0) {
            return Err(PolarError::Config(
                "error target must be at least 1".into(),
            ));
        }
        if self.workers == 0 {
            return Err(PolarError::Config("workers must be at least 1".into()));
        }
        if let Some(rate) = self.rate_for_sigma {
            if !(rate.is_finite() && rate > 0.0) {
                return Err(PolarError::Config(format!(
                    "rate override must be positive, got {rate}"
                )));
            }
        }
        for &ebno in &self.ebno_grid_db {
            if !ebno.is_finite() {
                return Err(PolarError::Config(format!(
                    "Eb/N0 grid entry must be finite, got {ebno}"
                )));
            }
        }
        Ok(())
    }
}

/// Aggregated outcome of one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    /// Operating point in dB.
    pub ebno_db: f64,
    /// Frames actually simulated (≤ budget under early stopping).
    pub frames: u64,
    /// Frames whose decoded information bits mismatched the transmitted
    /// ones.
    pub frame_errors: u64,
    /// `frame_errors / frames`.
    pub fer: f64,
    /// Mean per-frame normalized complexity Σ L_i.
    pub mean_cs: f64,
    /// Mean decoding attempts per frame.
    pub mean_attempts: f64,
    /// Wall-clock seconds spent on this point (not emitted; wall time is
    /// not reproducible).
    pub elapsed: f64,
    /// Decoder echo for the output row.
    pub decoder: DecoderKind,
    /// List size echo (L or L_max).
    pub list_size: usize,
    /// Flip budget echo.
    pub t_max: usize,
    /// Master seed echo.
    pub seed: u64,
}

/// Output encodings for [`emit_results`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    /// One header line plus one comma-separated row per grid point.
    Csv,
    /// One JSON object per line, mirroring the CSV columns.
    JsonLines,
}

impl FromStr for OutputFormat {
    type Err = PolarError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "jsonl" => Ok(OutputFormat::JsonLines),
            other => Err(PolarError::Config(format!(
                "unknown output format '{other}' (expected csv or jsonl)"
            ))),
        }
    }
}

/// The ChaCha12 stream that drives every random draw of one frame.
fn frame_rng(master_seed: u64, grid_index: u64, frame_index: u64) -> ChaCha12Rng {
    let mut seed = [0u8; 32];
    seed[0..8].copy_from_slice(&master_seed.to_le_bytes());
    seed[8..16].copy_from_slice(&grid_index.to_le_bytes());
    seed[16..24].copy_from_slice(&frame_index.to_le_bytes());
    seed[24..32].copy_from_slice(b"polarsim");
    ChaCha12Rng::from_seed(seed)
}

/// Uniform in [0, 1) from the top 53 bits of a u64.
fn unit_f64(raw: u64) -> f64 {
    (raw >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// One standard-normal pair via Box–Muller; the cosine branch is drawn
/// first. Fixed here once and for all: changing this changes every seeded
/// result.
fn standard_normal_pair(rng: &mut ChaCha12Rng) -> (f64, f64) {
    let u1 = 1.0 - unit_f64(rng.next_u64()); // (0, 1]: ln stays finite
    let u2 = unit_f64(rng.next_u64());
    let radius = (-2.0 * u1.ln()).sqrt();
    let theta = std::f64::consts::TAU * u2;
    (radius * theta.cos(), radius * theta.sin())
}

/// Transmits a codeword over BPSK-AWGN: `s = 1 − 2x`, `y = s + n` with
/// `n ~ N(0, σ²)`, and returns the clamped LLRs `2y/σ²`.
pub fn bpsk_awgn_observe(
    codeword: &[u8],
    chan: &ChannelConfig,
    rng: &mut ChaCha12Rng,
) -> Result<ChannelObservation> {
    let mut llrs = Vec::with_capacity(codeword.len());
    let scale = 2.0 / chan.sigma2;
    let sigma = chan.sigma2.sqrt();
    let mut pending: Option<f64> = None;
    for (pos, &bit) in codeword.iter().enumerate() {
        if bit > 1 {
            return Err(PolarError::NonBinary { value: bit, pos });
        }
        let noise = match pending.take() {
            Some(second) => second,
            None => {
                let (first, second) = standard_normal_pair(rng);
                pending = Some(second);
                first
            }
        };
        let symbol = 1.0 - 2.0 * bit as f64;
        llrs.push(scale * (symbol + sigma * noise));
    }
    ChannelObservation::new(llrs)
}

/// Decoded estimate plus the complexity this frame cost.
struct FrameOutcome {
    info_error: bool,
    cs: u64,
    attempts: u64,
}

/// Generates, transmits and decodes frame `frame_index` of grid point
/// `grid_index`. Draw order per frame: information bits first, then channel
/// noise.
fn simulate_frame(
    cfg: &SimConfig,
    chan: &ChannelConfig,
    grid_index: u64,
    frame_index: u64,
) -> Result<FrameOutcome> {
    let mut rng = frame_rng(cfg.master_seed, grid_index, frame_index);
    let k_info = cfg.code.k_nonfrozen() - cfg.crc.width();
    let info: Vec<u8> = (0..k_info).map(|_| (rng.next_u64() & 1) as u8).collect();
    let frame = MessageFrame::assemble(&info, &cfg.crc, &cfg.code)?;
    let codeword = encode(&frame.u_vector)?;
    let obs = bpsk_awgn_observe(&codeword, chan, &mut rng)?;

    let (u_hat, cs, attempts) = match cfg.decoder {
        DecoderKind::Sc => {
            let state = scl_decode(&obs, &cfg.code, 1, false, None)?;
            (state.best().u_hat.clone(), 1, 1)
        }
        DecoderKind::Scl => {
            let state = scl_decode(&obs, &cfg.code, cfg.list_size, false, None)?;
            (state.best().u_hat.clone(), cfg.list_size as u64, 1)
        }
        DecoderKind::CaScl => {
            let (u_hat, _, _) = ca_scl_decode(&obs, &cfg.code, &cfg.crc, cfg.list_size, false)?;
            (u_hat, cfg.list_size as u64, 1)
        }
        DecoderKind::Sclf => {
            let (u_hat, _, log) =
                sclf_decode(&obs, &cfg.code, &cfg.crc, cfg.list_size, cfg.t_max, cfg.alpha)?;
            (u_hat, log.total_cs, log.len() as u64)
        }
        DecoderKind::AdSclf => {
            let (u_hat, _, log) =
                ad_sclf_decode(&obs, &cfg.code, &cfg.crc, cfg.list_size, cfg.t_max, cfg.alpha)?;
            (u_hat, log.total_cs, log.len() as u64)
        }
    };

    let info_error = cfg
        .code
        .non_frozen_indices()
        .take(k_info)
        .zip(&info)
        .any(|(i, &sent)| u_hat[i] != sent);
    Ok(FrameOutcome {
        info_error,
        cs,
        attempts,
    })
}

/// Runs the experiment over the whole grid and returns one [`SimResult`]
/// per point.
///
/// Deterministic: the returned statistics depend only on the configuration
/// (including the seed), never on `workers` or timing.
pub fn run_experiment(cfg: &SimConfig) -> Result<Vec<SimResult>> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| PolarError::Config(format!("thread pool: {e}")))?;

    let mut results = Vec::with_capacity(cfg.ebno_grid_db.len());
    for (grid_index, &ebno_db) in cfg.ebno_grid_db.iter().enumerate() {
        let chan = ChannelConfig::new(ebno_db, cfg.effective_rate())?;
        let start = Instant::now();
        let mut frames = 0u64;
        let mut frame_errors = 0u64;
        let mut cs_sum = 0u64;
        let mut attempts_sum = 0u64;
        while frames < cfg.frames_per_point {
            let take = CHUNK_FRAMES.min(cfg.frames_per_point - frames);
            let outcomes: Result<Vec<FrameOutcome>> = pool.install(|| {
                (frames..frames + take)
                    .into_par_iter()
                    .map(|j| simulate_frame(cfg, &chan, grid_index as u64, j))
                    .collect()
            });
            for outcome in outcomes? {
                frame_errors += outcome.info_error as u64;
                cs_sum += outcome.cs;
                attempts_sum += outcome.attempts;
            }
            frames += take;
            if cfg.max_errors.is_some_and(|cap| frame_errors >= cap) {
                break;
            }
        }
        results.push(SimResult {
            ebno_db,
            frames,
            frame_errors,
            fer: frame_errors as f64 / frames as f64,
            mean_cs: cs_sum as f64 / frames as f64,
            mean_attempts: attempts_sum as f64 / frames as f64,
            elapsed: start.elapsed().as_secs_f64(),
            decoder: cfg.decoder,
            list_size: cfg.list_size,
            t_max: cfg.t_max,
            seed: cfg.master_seed,
        });
    }
    Ok(results)
}

/// Formats a float with 6 significant digits, trimming trailing zeros;
/// magnitudes outside [1e−4, 1e6) switch to scientific notation. Both
/// output formats share this, so CSV and JSON lines agree digit for digit.
pub(crate) fn fmt_sig6(value: f64) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    if !value.is_finite() {
        return value.to_string();
    }
    let exponent = value.abs().log10().floor() as i32;
    let mut text = if (-4..6).contains(&exponent) {
        let decimals = (5 - exponent).max(0) as usize;
        format!("{value:.decimals$}")
    } else {
        format!("{value:.5e}")
    };
    if let Some(e_pos) = text.find('e') {
        let exponent_part = text.split_off(e_pos);
        trim_fraction(&mut text);
        text.push_str(&exponent_part);
    } else {
        trim_fraction(&mut text);
    }
    text
}

fn trim_fraction(text: &mut String) {
    if text.contains('.') {
        while text.ends_with('0') {
            text.pop();
        }
        if text.ends_with('.') {
            text.pop();
        }
    }
}

/// Column order shared by both output formats.
const COLUMNS: &str = "ebno_db,frames,frame_errors,fer,mean_cs,mean_attempts,decoder,L,t_max,seed";

/// Writes results as CSV or JSON lines to `destination`.
///
/// Refuses empty result sets before touching the filesystem.
pub fn emit_results(
    results: &[SimResult],
    format: OutputFormat,
    destination: &Path,
) -> Result<()> {
    if results.is_empty() {
        return Err(PolarError::EmptyResults);
    }
    let io_err = |source: std::io::Error| PolarError::Io {
        path: destination.to_path_buf(),
        source,
    };
    let file = File::create(destination).map_err(io_err)?;
    let mut out = BufWriter::new(file);
    match format {
        OutputFormat::Csv => {
            writeln!(out, "{COLUMNS}").map_err(io_err)?;
            for r in results {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{}",
                    fmt_sig6(r.ebno_db),
                    r.frames,
                    r.frame_errors,
                    fmt_sig6(r.fer),
                    fmt_sig6(r.mean_cs),
                    fmt_sig6(r.mean_attempts),
                    r.decoder,
                    r.list_size,
                    r.t_max,
                    r.seed
                )
                .map_err(io_err)?;
            }
        }
        OutputFormat::JsonLines => {
            for r in results {
                writeln!(
                    out,
                    "{{\"ebno_db\":{},\"frames\":{},\"frame_errors\":{},\"fer\":{},\
                     \"mean_cs\":{},\"mean_attempts\":{},\"decoder\":\"{}\",\"L\":{},\
                     \"t_max\":{},\"seed\":{}}}",
                    fmt_sig6(r.ebno_db),
                    r.frames,
                    r.frame_errors,
                    fmt_sig6(r.fer),
                    fmt_sig6(r.mean_cs),
                    fmt_sig6(r.mean_attempts),
                    r.decoder,
                    r.list_size,
                    r.t_max,
                    r.seed
                )
                .map_err(io_err)?;
            }
        }
    }
    out.flush().map_err(io_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::ga_construct;

    fn small_config(decoder: DecoderKind, list_size: usize) -> SimConfig {
        SimConfig {
            code: ga_construct(16, 8, 3.0, 0.5).unwrap(),
            crc: CrcSpec::new(4, 0x3).unwrap(),
            decoder,
            list_size,
            t_max: 4,
            alpha: 1.2,
            ebno_grid_db: vec![2.0],
            frames_per_point: 200,
            max_errors: None,
            master_seed: 7,
            workers: 1,
            rate_for_sigma: None,
        }
    }

    #[test]
    fn channel_config_variance_formula() {
        let chan = ChannelConfig::new(0.0, 0.5).unwrap();
        assert!((chan.sigma2() - 1.0).abs() < 1e-15);
        let chan = ChannelConfig::new(10.0, 0.5).unwrap();
        assert!((chan.sigma2() - 0.1).abs() < 1e-15);
        assert!(ChannelConfig::new(2.0, 0.0).is_err());
        assert!(ChannelConfig::new(f64::NAN, 0.5).is_err());
    }

    #[test]
    fn decoder_kind_round_trips_through_tokens() {
        for kind in DecoderKind::ALL {
            assert_eq!(kind.token().parse::<DecoderKind>().unwrap(), kind);
        }
        assert!("turbo".parse::<DecoderKind>().is_err());
    }

    #[test]
    fn llr_sample_mean_matches_analytic_value() {
        // x = 0 transmitted: E[llr] = 2/σ², Var[llr] = 4/σ².
        let chan = ChannelConfig::new(0.0, 0.5).unwrap(); // σ² = 1
        let mut rng = frame_rng(99, 0, 0);
        let draws = 10_000;
        let mut sum = 0.0;
        for _ in 0..draws / 16 {
            let obs = bpsk_awgn_observe(&[0u8; 16], &chan, &mut rng).unwrap();
            sum += obs.llrs().iter().sum::<f64>();
        }
        let mean = sum / draws as f64;
        let std_err = (4.0f64 / 1.0).sqrt() / (draws as f64).sqrt();
        assert!(
            (mean - 2.0).abs() < 3.0 * std_err,
            "mean {mean}, expected 2.0 ± {}",
            3.0 * std_err
        );
    }

    #[test]
    fn noiseless_limit_gives_zero_fer_and_unit_cs() {
        let mut cfg = small_config(DecoderKind::AdSclf, 8);
        cfg.ebno_grid_db = vec![14.0];
        let results = run_experiment(&cfg).unwrap();
        assert_eq!(results[0].frame_errors, 0);
        assert_eq!(results[0].fer, 0.0);
        assert_eq!(results[0].mean_cs, 1.0, "every frame passes at L = 1");
        assert_eq!(results[0].mean_attempts, 1.0);
    }

    #[test]
    fn single_attempt_decoders_have_constant_cs() {
        let results = run_experiment(&small_config(DecoderKind::CaScl, 4)).unwrap();
        assert_eq!(results[0].mean_cs, 4.0);
        assert_eq!(results[0].mean_attempts, 1.0);
        let results = run_experiment(&small_config(DecoderKind::Sc, 4)).unwrap();
        assert_eq!(results[0].mean_cs, 1.0);
    }

    /// Everything but the wall-clock field, which is never reproducible.
    fn stats(results: &[SimResult]) -> Vec<SimResult> {
        results
            .iter()
            .map(|r| SimResult {
                elapsed: 0.0,
                ..r.clone()
            })
            .collect()
    }

    #[test]
    fn results_are_reproducible_and_worker_independent() {
        let cfg = small_config(DecoderKind::Sclf, 2);
        let first = run_experiment(&cfg).unwrap();
        let second = run_experiment(&cfg).unwrap();
        assert_eq!(stats(&first), stats(&second));
        let mut threaded_cfg = cfg.clone();
        threaded_cfg.workers = 3;
        let threaded = run_experiment(&threaded_cfg).unwrap();
        assert_eq!(stats(&first), stats(&threaded));
    }

    #[test]
    fn early_stop_truncates_at_chunk_boundaries() {
        let mut cfg = small_config(DecoderKind::Sc, 1);
        cfg.ebno_grid_db = vec![-2.0]; // heavy noise: plenty of errors
        cfg.frames_per_point = 10 * CHUNK_FRAMES;
        cfg.max_errors = Some(5);
        let results = run_experiment(&cfg).unwrap();
        assert!(results[0].frames >= CHUNK_FRAMES);
        assert!(results[0].frames < 10 * CHUNK_FRAMES);
        assert_eq!(results[0].frames % CHUNK_FRAMES, 0);
        assert!(results[0].frame_errors >= 5);
    }

    #[test]
    fn validation_rejects_bad_configs() {
        let mut cfg = small_config(DecoderKind::AdSclf, 3);
        assert!(matches!(
            run_experiment(&cfg),
            Err(PolarError::ListSize(3, _))
        ));
        cfg.list_size = 4;
        cfg.ebno_grid_db.clear();
        assert!(run_experiment(&cfg).is_err());
        let mut cfg = small_config(DecoderKind::Sc, 1);
        cfg.crc = CrcSpec::new(16, 0x8005).unwrap(); // width 16 ≥ K = 8
        assert!(run_experiment(&cfg).is_err());
        let mut cfg = small_config(DecoderKind::Sc, 1);
        cfg.workers = 0;
        assert!(run_experiment(&cfg).is_err());
    }

    #[test]
    fn formatter_keeps_six_significant_digits() {
        assert_eq!(fmt_sig6(0.0), "0");
        assert_eq!(fmt_sig6(2.75), "2.75");
        assert_eq!(fmt_sig6(1.0), "1");
        assert_eq!(fmt_sig6(-0.5), "-0.5");
        assert_eq!(fmt_sig6(0.000123456789), "0.000123457");
        assert_eq!(fmt_sig6(1.25e-7), "1.25e-7");
        assert_eq!(fmt_sig6(123456.7), "123457");
        assert_eq!(fmt_sig6(1234567.0), "1.23457e6");
        assert_eq!(fmt_sig6(0.1 + 0.2), "0.3");
    }

    #[test]
    fn emission_rejects_empty_results_without_creating_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("never.csv");
        assert!(matches!(
            emit_results(&[], OutputFormat::Csv, &path),
            Err(PolarError::EmptyResults)
        ));
        assert!(!path.exists());
    }

    #[test]
    fn csv_layout_is_stable() {
        let result = SimResult {
            ebno_db: 2.0,
            frames: 200,
            frame_errors: 13,
            fer: 0.065,
            mean_cs: 3.204,
            mean_attempts: 1.31,
            elapsed: 0.5,
            decoder: DecoderKind::AdSclf,
            list_size: 8,
            t_max: 4,
            seed: 7,
        };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        emit_results(&[result], OutputFormat::Csv, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "ebno_db,frames,frame_errors,fer,mean_cs,mean_attempts,decoder,L,t_max,seed"
        );
        assert_eq!(
            lines.next().unwrap(),
            "2,200,13,0.065,3.204,1.31,ad-sclf,8,4,7"
        );
        assert_eq!(lines.next(), None);
    }
}
