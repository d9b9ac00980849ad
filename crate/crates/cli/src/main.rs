use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use edo_cli::{read_features_csv, run_experiment, RunConfig};
use edo_core::tsp::io::{read_instance, InstanceFormat};
use edo_core::tsp::{self, OptimumSource, TspFeature, EXACT_OPT_MAX_CITIES};
use edo_core::{Error, PlaneEmbedding, ReferenceSet, Transform};

/// Evolve maximally diverse sets of high-quality solutions, driven by
/// multi-objective quality indicators.
#[derive(Parser)]
#[command(name = "edo", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute the experiment described by a JSON config file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Cross-evaluate a CSV of normalized feature vectors under all
    /// applicable measures and print one JSON object.
    Evaluate {
        #[arg(long)]
        features: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        dim: u8,
    },
    /// Compute the four TSP features of an instance file (plus the
    /// approximation ratio when an optimum is available).
    Features {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum)]
        format: FormatArg,
        /// Seed for the three 2-OPT runs behind the quality ratio.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write a regular reference grid as CSV.
    Grid {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        dim: u8,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = TransformArg::Identity)]
        transform: TransformArg,
    },
    /// Aggregate summary JSON files (glob pattern) into a ranking table.
    Stats {
        #[arg(long)]
        inputs: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Tsplib,
    Csv,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum TransformArg {
    Identity,
    PlaneEmbed,
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(exit_code(&error))
        }
    }
}

/// 0 success, 2 configuration error, 3 initialization failure, 1 otherwise.
fn exit_code(error: &Error) -> u8 {
    match error {
        Error::Config(_) => 2,
        Error::InitializationFailure { .. } => 3,
        _ => 1,
    }
}

fn dispatch(command: Command) -> Result<(), Error> {
    match command {
        Command::Run { config } => {
            let config = RunConfig::load(&config)?;
            let summary = run_experiment(&config)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&summary)
                    .map_err(|e| Error::Config(e.to_string()))?
            );
            Ok(())
        }
        Command::Evaluate { features, dim } => {
            let vectors = read_features_csv(&features, dim as usize)?;
            let scores = edo_cli::cross_evaluate(&vectors)?;
            println!(
                "{}",
                serde_json::to_string(&scores).map_err(|e| Error::Config(e.to_string()))?
            );
            Ok(())
        }
        Command::Features {
            instance,
            format,
            seed,
        } => {
            let format = match format {
                FormatArg::Tsplib => InstanceFormat::Tsplib,
                FormatArg::Csv => InstanceFormat::Csv,
            };
            let imported = read_instance(&instance, format)?;
            let report = feature_report(&imported, seed)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report)
                    .map_err(|e| Error::Config(e.to_string()))?
            );
            Ok(())
        }
        Command::Grid {
            dim,
            k,
            out,
            transform,
        } => {
            let grid = ReferenceSet::grid(dim as usize, k)?;
            let grid = match transform {
                TransformArg::Identity => grid,
                TransformArg::PlaneEmbed => {
                    grid.transformed(&Transform::PlaneEmbed(PlaneEmbedding::standard()))?
                }
            };
            let mut buf = Vec::new();
            grid.write_csv(&mut buf)?;
            std::fs::write(&out, buf)?;
            println!("wrote {} points to {}", grid.len(), out.display());
            Ok(())
        }
        Command::Stats { inputs } => {
            let summaries = edo_cli::load_summaries(&inputs)?;
            let rows = edo_cli::stats_aggregate(&summaries)?;
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            edo_cli::write_stats_csv(&rows, &mut lock)?;
            lock.flush()?;
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct FeatureReport {
    n_cities: usize,
    raw: std::collections::BTreeMap<String, f64>,
    normalized: std::collections::BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rescaled: Option<edo_core::tsp::io::ImportScale>,
    #[serde(skip_serializing_if = "Option::is_none")]
    quality: Option<QualityReport>,
}

#[derive(Serialize)]
struct QualityReport {
    two_opt_best: f64,
    opt_length: f64,
    ratio: f64,
}

fn feature_report(
    imported: &edo_core::tsp::io::ImportedInstance,
    seed: u64,
) -> Result<FeatureReport, Error> {
    let instance = &imported.instance;
    let mut raw = std::collections::BTreeMap::new();
    let mut normalized = std::collections::BTreeMap::new();
    for feature in TspFeature::ALL {
        let value = feature.compute(instance);
        let (lo, hi) = feature.bounds();
        raw.insert(feature.id().to_string(), value);
        normalized.insert(
            feature.id().to_string(),
            ((value - lo) / (hi - lo)).clamp(0.0, 1.0),
        );
    }
    let optimum = match imported.opt_length {
        Some(length) => Some(OptimumSource::External(length)),
        None if instance.n_cities() <= EXACT_OPT_MAX_CITIES => Some(OptimumSource::ExactDp),
        None => None,
    };
    let quality = optimum
        .map(|source| -> Result<QualityReport, Error> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ratio = tsp::quality(instance, source, &mut rng)?;
            let opt_length = match source {
                OptimumSource::External(length) => length,
                OptimumSource::ExactDp => tsp::exact_opt(instance)?.length(),
            };
            Ok(QualityReport {
                two_opt_best: ratio * opt_length,
                opt_length,
                ratio,
            })
        })
        .transpose()?;
    Ok(FeatureReport {
        n_cities: instance.n_cities(),
        raw,
        normalized,
        rescaled: imported.scale,
        quality,
    })
}
