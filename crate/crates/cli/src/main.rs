use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use microhop_cli::experiments::{run_experiment, to_csv, ExperimentConfig};
use microhop_cli::iq::{read_iq, write_iq, IqMeta, IQ_FORMAT};
use microhop_cli::{bits_to_hex, hex_to_bits};
use microhop_core::channel::{apply, ChannelSpec};
use microhop_core::frame::{build_frame, parse_frame, sensitivity_dbm, FrameConfig};
use microhop_core::hopping::random_pattern;
use microhop_core::modem::spreading_gain_db;

/// Micro frequency-hopping spread-spectrum modem simulator.
#[derive(Parser)]
#[command(name = "microhop", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the derived primes, gains, and an example link budget for a
    /// spreading factor.
    Info {
        /// Spreading factor (bits per data symbol)
        #[arg(long)]
        sf: u32,
        /// Linear pattern root
        #[arg(long, default_value_t = 3)]
        root: i64,
    },
    /// Build one frame and write it as a cf32le IQ file with a JSON sidecar.
    Gen {
        #[arg(long)]
        sf: u32,
        #[arg(long, default_value_t = 3)]
        root: i64,
        /// Number of random payload bits (ignored when --payload-hex is set)
        #[arg(long, default_value_t = 0)]
        bits: usize,
        /// Explicit payload as hex bytes
        #[arg(long)]
        payload_hex: Option<String>,
        /// Attach a secondary scrambling key generated from this seed
        #[arg(long)]
        key_seed: Option<u64>,
        /// Seed for the random payload
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Prepend this many zero samples before the frame
        #[arg(long, default_value_t = 0)]
        delay: usize,
        /// Carrier frequency offset in pilot bins
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        cfo_bins: i64,
        /// Add AWGN at this per-sample Es/N0 (dB)
        #[arg(long, allow_negative_numbers = true)]
        esn0_db: Option<f64>,
        /// Output IQ file path
        #[arg(long)]
        out: PathBuf,
    },
    /// Read an IQ file, locate the frame, and demodulate the payload.
    Parse {
        /// Input IQ file (sidecar <file>.json must exist)
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
        /// Secondary key seed, when the sender used one
        #[arg(long)]
        key_seed: Option<u64>,
    },
    /// Run an experiment config (JSON) and write its CSV results.
    Run {
        /// Experiment config path
        #[arg(long)]
        config: PathBuf,
        /// Output directory for <experiment>.csv
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Override the config's seed
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads for Monte-Carlo trials (default: all cores)
        #[arg(long)]
        threads: Option<usize>,
    },
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("{}", json!({ "error": message }));
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Info { sf, root } => info(sf, root),
        Command::Gen {
            sf,
            root,
            bits,
            payload_hex,
            key_seed,
            seed,
            delay,
            cfo_bins,
            esn0_db,
            out,
        } => gen(
            sf,
            root,
            bits,
            payload_hex,
            key_seed,
            seed,
            delay,
            cfo_bins,
            esn0_db,
            &out,
        ),
        Command::Parse { input, key_seed } => parse(&input, key_seed),
        Command::Run {
            config,
            out,
            seed,
            threads,
        } => run(&config, &out, seed, threads),
    }
}

fn info(sf: u32, root: i64) -> Result<(), String> {
    let cfg = FrameConfig::new(sf, root).map_err(|e| e.to_string())?;
    let p = cfg.p();
    let p1 = cfg.p1();
    println!("spreading factor    SF = {sf} bits/symbol");
    println!("data symbol size    P  = {p} (smallest prime above 2^{sf})");
    println!(
        "preamble size       P1 = {p1} (smallest prime above 2^{})",
        sf + 1
    );
    println!(
        "root                R  = {root} (pilot pair roots {root} and {})",
        p1 - root
    );
    println!(
        "spreading gain      {:.2} dB data, {:.2} dB preamble",
        spreading_gain_db(p, sf as f64),
        spreading_gain_db(p1, (sf + 1) as f64)
    );
    println!(
        "frame overhead      {} preamble samples + {} per data symbol",
        3 * p1,
        p
    );
    println!(
        "sensitivity example {:.2} dBm (NF 6 dB, BW 125 kHz, Eb/No 10 dB)",
        sensitivity_dbm(6.0, 125_000.0, 10.0, sf, p)
    );
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn gen(
    sf: u32,
    root: i64,
    bits: usize,
    payload_hex: Option<String>,
    key_seed: Option<u64>,
    seed: u64,
    delay: usize,
    cfo_bins: i64,
    esn0_db: Option<f64>,
    out: &PathBuf,
) -> Result<(), String> {
    let mut cfg = FrameConfig::new(sf, root).map_err(|e| e.to_string())?;
    if let Some(ks) = key_seed {
        let key = random_pattern(cfg.p(), ks).map_err(|e| e.to_string())?;
        cfg = cfg.with_key(key).map_err(|e| e.to_string())?;
    }
    let payload: Vec<bool> = match payload_hex {
        Some(hex) => hex_to_bits(&hex)?,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..bits).map(|_| rng.random::<bool>()).collect()
        }
    };
    let frame = build_frame(&cfg, &payload).map_err(|e| e.to_string())?;
    let samples = apply(
        &frame.samples(),
        &ChannelSpec {
            delay_samples: delay,
            cfo_cycles_per_sample: cfo_bins as f64 / cfg.p1() as f64,
            esn0_db,
            seed,
            ..Default::default()
        },
    );
    let meta = IqMeta {
        format: IQ_FORMAT.into(),
        sample_count: samples.len(),
        sf: Some(sf),
        p: Some(cfg.p()),
        p1: Some(cfg.p1()),
        root: Some(root),
        seed: Some(seed),
    };
    write_iq(out, &samples, &meta).map_err(|e| e.to_string())?;
    println!(
        "{}",
        json!({
            "file": out,
            "samples": samples.len(),
            "payload_bits": payload.len(),
            "payload_hex": bits_to_hex(&payload),
            "sf": sf, "p": cfg.p(), "p1": cfg.p1(), "root": root,
            "keyed": key_seed.is_some(),
        })
    );
    Ok(())
}

fn parse(input: &std::path::Path, key_seed: Option<u64>) -> Result<(), String> {
    let (samples, meta) = read_iq(input).map_err(|e| e.to_string())?;
    let sf = meta.sf.ok_or("sidecar is missing the sf field")?;
    let root = meta.root.ok_or("sidecar is missing the root field")?;
    let mut cfg = FrameConfig::new(sf, root).map_err(|e| e.to_string())?;
    if let Some(ks) = key_seed {
        let key = random_pattern(cfg.p(), ks).map_err(|e| e.to_string())?;
        cfg = cfg.with_key(key).map_err(|e| e.to_string())?;
    }
    let parsed = parse_frame(&samples, &cfg).map_err(|e| e.to_string())?;
    let min_data_ratio = parsed
        .data_results
        .iter()
        .map(|r| r.peak_to_mean_ratio)
        .fold(f64::INFINITY, f64::min);
    println!(
        "{}",
        json!({
            "payload_bits": parsed.bits.len(),
            "payload_hex": bits_to_hex(&parsed.bits),
            "frame_start": parsed.detection.frame_start,
            "time_delay": parsed.detection.estimate.time_delay,
            "freq_offset_bins": parsed.detection.estimate.freq_offset_bins,
            "sync_peak_ratio": parsed.sync_result.peak_to_mean_ratio,
            "min_data_peak_ratio": if min_data_ratio.is_finite() { min_data_ratio } else { 0.0 },
        })
    );
    Ok(())
}

fn run(
    config: &PathBuf,
    out: &PathBuf,
    seed: Option<u64>,
    threads: Option<usize>,
) -> Result<(), String> {
    if let Some(n) = threads {
        // ignore failure when a pool already exists (e.g. repeated runs)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let text = std::fs::read_to_string(config)
        .map_err(|e| format!("cannot read config {}: {e}", config.display()))?;
    let mut experiment: ExperimentConfig =
        serde_json::from_str(&text).map_err(|e| format!("config {}: {e}", config.display()))?;
    if let Some(s) = seed {
        experiment.set_seed(s);
    }
    let rows = run_experiment(&experiment)?;
    let csv = to_csv(experiment.name(), &rows);
    std::fs::create_dir_all(out).map_err(|e| format!("cannot create {}: {e}", out.display()))?;
    let path = out.join(format!("{}.csv", experiment.name()));
    std::fs::write(&path, csv).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    println!(
        "{}",
        json!({ "experiment": experiment.name(), "rows": rows.len(), "csv": path })
    );
    Ok(())
}
