//! Run a small reproducible Monte Carlo sweep through the same machinery
//! the `polarsim` binary uses, and print the CSV. Identical seeds give
//! identical rows, whatever the worker count.
//!
//! ```text
//! cargo run --release --example fer_sweep
//! ```

use polarsim::{
    emit_results, ga_construct, run_experiment, CrcSpec, DecoderKind, OutputFormat, Result,
    SimConfig,
};

fn main() -> Result<()> {
    let code = ga_construct(128, 72, 3.0, 72.0 / 128.0)?;
    let crc = CrcSpec::crc16();
    let grid: Vec<f64> = (0..5).map(|i| 1.0 + 0.5 * i as f64).collect();

    let mut config = SimConfig {
        code,
        crc,
        decoder: DecoderKind::AdSclf,
        list_size: 8,
        t_max: 12,
        alpha: 1.2,
        ebno_grid_db: grid,
        frames_per_point: 4000,
        max_errors: Some(400),
        master_seed: 2026,
        workers: 1,
        rate_for_sigma: None,
    };

    println!("PC(128,72), CRC-16, ad-sclf vs ca-scl at L = 8\n");
    let mut all = Vec::new();
    for decoder in [DecoderKind::CaScl, DecoderKind::AdSclf] {
        config.decoder = decoder;
        for r in run_experiment(&config)? {
            println!(
                "  {:<7} {:>4.1} dB: fer {:.3e} ({:>4}/{:>5} frames), mean_cs {:>6.3}",
                r.decoder.to_string(),
                r.ebno_db,
                r.fer,
                r.frame_errors,
                r.frames,
                r.mean_cs
            );
            all.push(r);
        }
        println!();
    }

    let path = std::env::temp_dir().join("fer_sweep.csv");
    emit_results(&all, OutputFormat::Csv, &path)?;
    println!("full CSV written to {}", path.display());
    Ok(())
}
