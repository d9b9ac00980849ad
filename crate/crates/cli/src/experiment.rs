//! Experiment runner: repeated seeded runs, artifact emission, and the
//! summary aggregate.
//!
//! Each repetition `i` runs with seed `base_seed + i` and emits
//! `pop_<seed>.csv` (one row per individual: raw and normalized features
//! plus quality) and `traj_<seed>.csv` (per-generation driving-indicator
//! value). The TSP domain additionally emits the evolved instances under
//! `instances_<seed>/`, the vector domain its genotypes as
//! `genotypes_<seed>.csv`. A `summary.json` collects the config echo,
//! per-run cross-indicator scores, and their mean and sample standard
//! deviation.
//!
//! Artifacts are deterministic: a rerun with the identical config produces
//! byte-identical files. Wall-clock timings are logged, never emitted.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use edo_core::ea::{run, DiversityDomain, EvolutionConfig, EvolutionReport, Individual};
use edo_core::tsp::io::{write_instance, InstanceFormat};
use edo_core::tsp::TspInstance;
use edo_core::vector::{write_points_csv, VectorGenotype};
use edo_core::{Error, FeatureVector, Result};

use crate::config::{Experiment, RunConfig};
use crate::crosseval::{CrossEvaluator, CrossScores};

/// Cross-indicator scores of one repetition.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunRecord {
    pub seed: u64,
    pub scores: CrossScores,
    /// Logged, not serialized: timings are not reproducible artifacts.
    #[serde(skip)]
    pub wall_clock: Duration,
}

/// The emitted `summary.json`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Summary {
    pub config: RunConfig,
    pub per_run: Vec<RunRecord>,
    pub mean: CrossScores,
    pub std: CrossScores,
}

/// Executes all repetitions of a configured experiment and writes the
/// artifacts into `config.output_dir`.
pub fn run_experiment(config: &RunConfig) -> Result<Summary> {
    config.validate()?;
    fs::create_dir_all(&config.output_dir)?;
    let evaluator = CrossEvaluator::new(config.feature_dim())?;
    let records: Vec<RunRecord> = match config.build()? {
        Experiment::Tsp {
            domain,
            config: ea_config,
        } => execute_repetitions(config, &domain, &ea_config, &evaluator, persist_tsp)?,
        Experiment::Vector {
            domain,
            config: ea_config,
        } => execute_repetitions(config, &domain, &ea_config, &evaluator, persist_vector)?,
    };

    let mean = aggregate(&records, |values| {
        values.iter().sum::<f64>() / values.len() as f64
    });
    let std = aggregate(&records, sample_std);
    let summary = Summary {
        config: config.clone(),
        per_run: records,
        mean,
        std,
    };
    let json = serde_json::to_string_pretty(&summary)
        .map_err(|e| Error::Config(format!("cannot serialize summary: {e}")))?;
    write_atomically(&config.output_dir.join("summary.json"), json.as_bytes())?;
    Ok(summary)
}

fn execute_repetitions<D: DiversityDomain>(
    config: &RunConfig,
    domain: &D,
    ea_config: &EvolutionConfig<D::Genotype>,
    evaluator: &CrossEvaluator,
    persist: fn(&Path, u64, &[Individual<D::Genotype>]) -> Result<()>,
) -> Result<Vec<RunRecord>>
where
    D::Genotype: Clone,
    EvolutionConfig<D::Genotype>: Clone,
{
    (0..config.repetitions as u64)
        .into_par_iter()
        .map(|rep| {
            let mut rep_config = ea_config.clone();
            rep_config.seed = ea_config.seed + rep;
            let started = Instant::now();
            let report = run(&rep_config, domain)?;
            let scores = evaluator.evaluate(&final_features(&report))?;
            emit_run_files(&config.output_dir, &report)?;
            persist(&config.output_dir, report.seed, &report.final_population)?;
            let wall_clock = started.elapsed();
            log::info!(
                "seed {} finished in {:.2?} ({} generations)",
                report.seed,
                wall_clock,
                report.trajectory.len() - 1
            );
            Ok(RunRecord {
                seed: report.seed,
                scores,
                wall_clock,
            })
        })
        .collect()
}

fn final_features<G>(report: &EvolutionReport<G>) -> Vec<FeatureVector> {
    report
        .final_population
        .iter()
        .map(|m| m.features.clone())
        .collect()
}

fn emit_run_files<G>(out_dir: &Path, report: &EvolutionReport<G>) -> Result<()> {
    let dim = report
        .final_population
        .first()
        .map_or(0, |m| m.features.dim());

    let mut pop = Vec::new();
    {
        let mut header = vec!["id".to_string()];
        header.extend((1..=dim).map(|i| format!("raw_f{i}")));
        header.extend((1..=dim).map(|i| format!("norm_f{i}")));
        header.push("quality".to_string());
        pop.push(header.join(","));
        for (id, member) in report.final_population.iter().enumerate() {
            let mut row = vec![id.to_string()];
            row.extend(member.raw_features.iter().map(|v| v.to_string()));
            row.extend(member.features.values().iter().map(|v| v.to_string()));
            row.push(member.quality.to_string());
            pop.push(row.join(","));
        }
    }
    write_atomically(
        &out_dir.join(format!("pop_{}.csv", report.seed)),
        (pop.join("\n") + "\n").as_bytes(),
    )?;

    let mut traj = vec!["generation,indicator_value".to_string()];
    for (generation, value) in report.trajectory.iter().enumerate() {
        traj.push(format!("{generation},{value}"));
    }
    write_atomically(
        &out_dir.join(format!("traj_{}.csv", report.seed)),
        (traj.join("\n") + "\n").as_bytes(),
    )?;
    Ok(())
}

fn persist_tsp(out_dir: &Path, seed: u64, population: &[Individual<TspInstance>]) -> Result<()> {
    let dir = out_dir.join(format!("instances_{seed}"));
    fs::create_dir_all(&dir)?;
    for (id, member) in population.iter().enumerate() {
        write_instance(
            &dir.join(format!("inst_{id}.csv")),
            &member.genotype,
            InstanceFormat::Csv,
        )?;
    }
    Ok(())
}

fn persist_vector(
    out_dir: &Path,
    seed: u64,
    population: &[Individual<VectorGenotype>],
) -> Result<()> {
    let genotypes: Vec<VectorGenotype> =
        population.iter().map(|m| m.genotype.clone()).collect();
    let mut buf = Vec::new();
    write_points_csv(&genotypes, &mut buf)?;
    write_atomically(&out_dir.join(format!("genotypes_{seed}.csv")), &buf)
}

/// Per-measure aggregation over the runs; a measure aggregates to `None` if
/// any run lacks it.
fn aggregate(records: &[RunRecord], combine: fn(&[f64]) -> f64) -> CrossScores {
    let collect = |get: fn(&CrossScores) -> Option<f64>| -> Option<f64> {
        let values: Option<Vec<f64>> = records.iter().map(|r| get(&r.scores)).collect();
        values.map(|v| combine(&v))
    };
    CrossScores {
        hyp2d: collect(|s| s.hyp2d),
        hyp: collect(|s| s.hyp),
        igd: collect(|s| s.igd),
        eps: collect(|s| s.eps),
        dis: collect(|s| s.dis),
    }
}

/// Sample standard deviation (n−1 denominator); 0 for a single value.
pub fn sample_std(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let var = values
        .iter()
        .map(|v| (v - mean) * (v - mean))
        .sum::<f64>()
        / (values.len() - 1) as f64;
    var.sqrt()
}

/// Writes through a temporary file in the same directory, then renames.
fn write_atomically(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = PathBuf::from(path);
    tmp.set_extension("tmp");
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}
