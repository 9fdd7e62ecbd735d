//! Command-line front end for the Monte Carlo harness.
//!
//! Exit codes: 0 on success, 2 for configuration problems (including bad
//! flags), 1 for I/O failures while writing results.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::Parser;

use polarsim::{
    emit_results, ga_construct, read_frozen_file, run_experiment, CrcSpec, DecoderKind,
    OutputFormat, PolarError, SimConfig,
};

#[derive(Parser)]
#[command(
    name = "polarsim",
    about = "Frame-error-rate and complexity experiments for polar-code decoders \
             on the BPSK-AWGN channel",
    after_help = "Example:\n  polarsim --n 256 --k 144 --decoder ad-sclf --list 8 --tmax 20 \
                  \\\n           --ebno 1.5:0.5:2.5 --frames 20000 --seed 42 --out fer.csv"
)]
struct Cli {
    /// Block length N (power of two); required unless --frozen-file is given
    #[arg(long)]
    n: Option<usize>,

    /// Non-frozen bit count K, information plus CRC bits; required unless
    /// --frozen-file is given
    #[arg(long)]
    k: Option<usize>,

    /// CRC generator polynomial below the leading term (hex or decimal)
    #[arg(long, default_value = "0x8005")]
    crc_poly: String,

    /// CRC width in bits
    #[arg(long, default_value_t = 16)]
    crc_len: usize,

    /// Design Eb/N0 in dB for the Gaussian-approximation construction
    #[arg(long, default_value_t = 4.0)]
    design_snr: f64,

    /// Decoder: sc, scl, ca-scl, sclf or ad-sclf
    #[arg(long)]
    decoder: String,

    /// List size L (L_max for ad-sclf; ignored by sc)
    #[arg(long, default_value_t = 1)]
    list: usize,

    /// Maximum flip re-decode attempts for sclf/ad-sclf
    #[arg(long, default_value_t = 0)]
    tmax: usize,

    /// Critical-set exponent
    #[arg(long, default_value_t = 1.2)]
    alpha: f64,

    /// Eb/N0 grid in dB: start:step:stop (inclusive), or a single value
    #[arg(long)]
    ebno: String,

    /// Frame budget per grid point
    #[arg(long)]
    frames: u64,

    /// Stop a grid point early once this many frame errors accumulate
    #[arg(long)]
    max_errors: Option<u64>,

    /// Master seed for all random draws
    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Output format: csv or jsonl
    #[arg(long, default_value = "csv")]
    format: String,

    /// Output file path
    #[arg(long)]
    out: PathBuf,

    /// Load the frozen set from a file instead of running the construction
    #[arg(long)]
    frozen_file: Option<PathBuf>,

    /// Worker threads (never affects the results, only the wall time)
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

fn parse_poly(text: &str) -> Result<u64, PolarError> {
    let parsed = if let Some(hex) = text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
        u64::from_str_radix(hex, 16)
    } else {
        text.parse()
    };
    parsed.map_err(|_| PolarError::Config(format!("invalid CRC polynomial '{text}'")))
}

/// Parses `start:step:stop` (inclusive, step > 0) or a bare value.
fn parse_ebno_grid(text: &str) -> Result<Vec<f64>, PolarError> {
    let bad = || PolarError::Config(format!("invalid Eb/N0 grid '{text}'"));
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [single] => {
            let value: f64 = single.parse().map_err(|_| bad())?;
            if !value.is_finite() {
                return Err(bad());
            }
            Ok(vec![value])
        }
        [start, step, stop] => {
            let start: f64 = start.parse().map_err(|_| bad())?;
            let step: f64 = step.parse().map_err(|_| bad())?;
            let stop: f64 = stop.parse().map_err(|_| bad())?;
            if !(start.is_finite() && step.is_finite() && stop.is_finite())
                || step <= 0.0
                || stop < start
            {
                return Err(bad());
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            Ok((0..count).map(|i| start + i as f64 * step).collect())
        }
        _ => Err(bad()),
    }
}

fn run(cli: Cli) -> Result<(), PolarError> {
    let crc = CrcSpec::new(cli.crc_len, parse_poly(&cli.crc_poly)?)?;
    let code = match &cli.frozen_file {
        Some(path) => {
            let code = read_frozen_file(path)?;
            if cli.n.is_some_and(|n| n != code.n_block()) {
                return Err(PolarError::Config(format!(
                    "--n {} contradicts frozen file N = {}",
                    cli.n.unwrap(),
                    code.n_block()
                )));
            }
            if cli.k.is_some_and(|k| k != code.k_nonfrozen()) {
                return Err(PolarError::Config(format!(
                    "--k {} contradicts frozen file K = {}",
                    cli.k.unwrap(),
                    code.k_nonfrozen()
                )));
            }
            code
        }
        None => {
            let (n, k) = match (cli.n, cli.k) {
                (Some(n), Some(k)) => (n, k),
                _ => {
                    return Err(PolarError::Config(
                        "--n and --k are required without --frozen-file".into(),
                    ))
                }
            };
            ga_construct(n, k, cli.design_snr, k as f64 / n as f64)?
        }
    };
    let decoder = DecoderKind::from_str(&cli.decoder)?;
    let format = OutputFormat::from_str(&cli.format)?;
    let cfg = SimConfig {
        code,
        crc,
        decoder,
        list_size: cli.list,
        t_max: cli.tmax,
        alpha: cli.alpha,
        ebno_grid_db: parse_ebno_grid(&cli.ebno)?,
        frames_per_point: cli.frames,
        max_errors: cli.max_errors,
        master_seed: cli.seed,
        workers: cli.workers,
        rate_for_sigma: None,
    };
    let results = run_experiment(&cfg)?;
    for r in &results {
        eprintln!(
            "{} @ {:.2} dB: fer {:.3e} ({}/{}), mean_cs {:.3}, mean_attempts {:.3}, {:.1}s",
            r.decoder, r.ebno_db, r.fer, r.frame_errors, r.frames, r.mean_cs, r.mean_attempts,
            r.elapsed
        );
    }
    emit_results(&results, format, &cli.out)?;
    eprintln!("wrote {}", cli.out.display());
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err @ PolarError::Io { .. }) => {
            eprintln!("polarsim: {err}");
            ExitCode::from(1)
        }
        Err(err) => {
            eprintln!("polarsim: {err}");
            ExitCode::from(2)
        }
    }
}
