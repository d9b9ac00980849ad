//! Aggregation of summary files into a per-measure ranking table, the input
//! for external statistics tooling.

use std::io::Write;
use std::path::Path;

use edo_core::{Error, Result};

use crate::crosseval::{CrossScores, MEASURES};
use crate::experiment::{sample_std, Summary};

/// One aggregated input (typically one algorithm/indicator).
#[derive(Debug, Clone)]
pub struct StatsRow {
    pub label: String,
    pub indicator: String,
    /// Per-measure mean over the per-run scores.
    pub mean: CrossScores,
    /// Per-measure sample standard deviation over the per-run scores.
    pub std: CrossScores,
    /// Per-measure rank among the inputs (1 = best, orientation-aware).
    pub ranks: Vec<(String, usize)>,
}

/// Recomputes mean and sample standard deviation per measure from each
/// summary's per-run scores and ranks the inputs per measure. All summaries
/// must expose the same measure set.
pub fn stats_aggregate(summaries: &[(String, Summary)]) -> Result<Vec<StatsRow>> {
    if summaries.is_empty() {
        return Err(Error::Config("no summaries to aggregate".into()));
    }
    let schema: Vec<&str> = MEASURES
        .iter()
        .copied()
        .filter(|m| summaries[0].1.mean.get(m).is_some())
        .collect();
    for (label, summary) in summaries {
        let this: Vec<&str> = MEASURES
            .iter()
            .copied()
            .filter(|m| summary.mean.get(m).is_some())
            .collect();
        if this != schema {
            return Err(Error::Config(format!(
                "summary {label} exposes measures {this:?}, expected {schema:?}"
            )));
        }
    }

    let mut rows: Vec<StatsRow> = summaries
        .iter()
        .map(|(label, summary)| {
            let stat = |combine: fn(&[f64]) -> f64| -> CrossScores {
                let per = |get: fn(&CrossScores) -> Option<f64>| -> Option<f64> {
                    let values: Option<Vec<f64>> =
                        summary.per_run.iter().map(|r| get(&r.scores)).collect();
                    values.map(|v| combine(&v))
                };
                CrossScores {
                    hyp2d: per(|s| s.hyp2d),
                    hyp: per(|s| s.hyp),
                    igd: per(|s| s.igd),
                    eps: per(|s| s.eps),
                    dis: per(|s| s.dis),
                }
            };
            StatsRow {
                label: label.clone(),
                indicator: summary.config.indicator.kind().to_string(),
                mean: stat(|v| v.iter().sum::<f64>() / v.len() as f64),
                std: stat(sample_std),
                ranks: Vec::new(),
            }
        })
        .collect();

    for measure in &schema {
        let mut order: Vec<(usize, f64)> = rows
            .iter()
            .enumerate()
            .map(|(i, row)| (i, row.mean.get(measure).expect("schema-checked")))
            .collect();
        order.sort_by(|a, b| {
            if CrossScores::maximizing(measure) {
                b.1.total_cmp(&a.1)
            } else {
                a.1.total_cmp(&b.1)
            }
        });
        for (rank, (index, _)) in order.into_iter().enumerate() {
            rows[index].ranks.push((measure.to_string(), rank + 1));
        }
    }
    Ok(rows)
}

/// Reads summary JSON files matching a glob pattern, sorted by path for
/// reproducible output.
pub fn load_summaries(pattern: &str) -> Result<Vec<(String, Summary)>> {
    let paths = glob::glob(pattern)
        .map_err(|e| Error::Config(format!("invalid glob pattern {pattern:?}: {e}")))?;
    let mut found: Vec<std::path::PathBuf> = Vec::new();
    for entry in paths {
        found.push(entry.map_err(|e| Error::Config(format!("glob error: {e}")))?);
    }
    found.sort();
    if found.is_empty() {
        return Err(Error::Config(format!("no files match {pattern:?}")));
    }
    found
        .into_iter()
        .map(|path| {
            let summary = load_summary(&path)?;
            Ok((path.display().to_string(), summary))
        })
        .collect()
}

pub fn load_summary(path: &Path) -> Result<Summary> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Config(format!("invalid summary {}: {e}", path.display())))
}

/// Writes the table as CSV: one row per input, mean/std/rank per measure.
pub fn write_stats_csv<W: Write>(rows: &[StatsRow], mut writer: W) -> Result<()> {
    let schema: Vec<&str> = rows
        .first()
        .map(|row| row.ranks.iter().map(|(m, _)| m.as_str()).collect())
        .unwrap_or_default();
    let mut header = vec!["input".to_string(), "indicator".to_string()];
    for measure in &schema {
        header.push(format!("{measure}_mean"));
        header.push(format!("{measure}_std"));
        header.push(format!("{measure}_rank"));
    }
    writeln!(writer, "{}", header.join(","))?;
    for row in rows {
        let mut fields = vec![row.label.clone(), row.indicator.clone()];
        for measure in &schema {
            fields.push(row.mean.get(measure).expect("schema-checked").to_string());
            fields.push(row.std.get(measure).expect("schema-checked").to_string());
            let rank = row
                .ranks
                .iter()
                .find(|(m, _)| m == measure)
                .map(|(_, r)| *r)
                .expect("ranked above");
            fields.push(rank.to_string());
        }
        writeln!(writer, "{}", fields.join(","))?;
    }
    Ok(())
}
