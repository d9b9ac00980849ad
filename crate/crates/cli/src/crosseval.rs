//! Cross-indicator evaluation of final populations.
//!
//! Every emitted score is recomputable from the emitted feature CSVs:
//! features are written in shortest round-trip notation, so re-reading and
//! re-evaluating reproduces the stored scores bit for bit.

use std::path::Path;

use serde::{Deserialize, Serialize};

use edo_core::{Error, FeatureVector, IndicatorKind, IndicatorSpec, Result};

/// Scores of one population under every measure applicable at its
/// dimensionality. `HYP2D`/`EPS` exist for pairs only; a measure degrades to
/// `None` when the input exceeds its exactness budget (e.g. DIS beyond 64
/// points).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossScores {
    #[serde(rename = "HYP2D", default, skip_serializing_if = "Option::is_none")]
    pub hyp2d: Option<f64>,
    #[serde(rename = "HYP", default, skip_serializing_if = "Option::is_none")]
    pub hyp: Option<f64>,
    #[serde(rename = "IGD", default, skip_serializing_if = "Option::is_none")]
    pub igd: Option<f64>,
    #[serde(rename = "EPS", default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(rename = "DIS", default, skip_serializing_if = "Option::is_none")]
    pub dis: Option<f64>,
}

/// Measure names in emission order.
pub const MEASURES: [&str; 5] = ["HYP2D", "HYP", "IGD", "EPS", "DIS"];

impl CrossScores {
    pub fn get(&self, measure: &str) -> Option<f64> {
        match measure {
            "HYP2D" => self.hyp2d,
            "HYP" => self.hyp,
            "IGD" => self.igd,
            "EPS" => self.eps,
            "DIS" => self.dis,
            _ => None,
        }
    }

    /// Whether larger values of a measure are better.
    pub fn maximizing(measure: &str) -> bool {
        matches!(measure, "HYP2D" | "HYP")
    }
}

/// Pre-built indicator specs for repeated cross-evaluation (the reference
/// grids are costly to rebuild per call).
pub struct CrossEvaluator {
    dim: usize,
    hyp2d: Option<IndicatorSpec>,
    hyp: IndicatorSpec,
    igd: IndicatorSpec,
    eps: Option<IndicatorSpec>,
    dis: IndicatorSpec,
}

impl CrossEvaluator {
    pub fn new(dim: usize) -> Result<Self> {
        let pairs_only = dim == 2;
        Ok(Self {
            dim,
            hyp2d: pairs_only
                .then(|| IndicatorSpec::standard(IndicatorKind::Hyp2d, dim))
                .transpose()?,
            hyp: IndicatorSpec::standard(IndicatorKind::Hyp, dim)?,
            igd: IndicatorSpec::standard(IndicatorKind::Igd, dim)?,
            eps: pairs_only
                .then(|| IndicatorSpec::standard(IndicatorKind::Eps, dim))
                .transpose()?,
            dis: IndicatorSpec::standard(IndicatorKind::Dis, dim)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Evaluates every applicable measure; EPS reports the first (worst)
    /// sequence element, matching the scalar α(R,S).
    pub fn evaluate(&self, features: &[FeatureVector]) -> Result<CrossScores> {
        for f in features {
            if f.dim() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    actual: f.dim(),
                });
            }
        }
        Ok(CrossScores {
            hyp2d: self
                .hyp2d
                .as_ref()
                .map(|spec| budgeted(spec, features))
                .transpose()?
                .flatten(),
            hyp: budgeted(&self.hyp, features)?,
            igd: budgeted(&self.igd, features)?,
            eps: self
                .eps
                .as_ref()
                .map(|spec| budgeted(spec, features))
                .transpose()?
                .flatten(),
            dis: budgeted(&self.dis, features)?,
        })
    }
}

/// Evaluates one measure, degrading to `None` when the input exceeds the
/// measure's exactness budget.
fn budgeted(spec: &IndicatorSpec, features: &[FeatureVector]) -> Result<Option<f64>> {
    match spec.evaluate(features) {
        Ok(value) => Ok(Some(value.scalar())),
        Err(Error::Capacity(reason)) => {
            log::warn!("skipping {}: {reason}", spec.kind());
            Ok(None)
        }
        Err(other) => Err(other),
    }
}

/// Cross-evaluates a set of normalized feature vectors.
pub fn cross_evaluate(features: &[FeatureVector]) -> Result<CrossScores> {
    let dim = features
        .first()
        .ok_or_else(|| Error::Domain("cannot evaluate an empty feature set".into()))?
        .dim();
    CrossEvaluator::new(dim)?.evaluate(features)
}

/// Reads normalized feature vectors from a CSV file.
///
/// Two layouts are accepted: population CSVs (columns `norm_f1..norm_fd`
/// among others) and plain CSVs with exactly `dim` columns.
pub fn read_features_csv(path: &Path, dim: usize) -> Result<Vec<FeatureVector>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Error::Config(format!("cannot open {}: {e}", path.display())))?;
    let headers = reader
        .headers()
        .map_err(|e| Error::Config(format!("cannot read CSV header: {e}")))?
        .clone();
    let columns: Vec<usize> = if headers.iter().any(|h| h == "norm_f1") {
        (1..=dim)
            .map(|i| {
                let name = format!("norm_f{i}");
                headers
                    .iter()
                    .position(|h| h == name)
                    .ok_or_else(|| Error::Config(format!("missing column {name}")))
            })
            .collect::<Result<_>>()?
    } else if headers.len() == dim {
        (0..dim).collect()
    } else {
        return Err(Error::Config(format!(
            "expected norm_f1..norm_f{dim} columns or exactly {dim} columns, found {}",
            headers.len()
        )));
    };

    let mut features = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse {
            line: row + 2,
            message: e.to_string(),
        })?;
        let mut values = Vec::with_capacity(dim);
        for &column in &columns {
            let field = record.get(column).ok_or_else(|| Error::Parse {
                line: row + 2,
                message: format!("missing column {column}"),
            })?;
            let value: f64 = field.parse().map_err(|_| Error::Parse {
                line: row + 2,
                message: format!("invalid number {field:?}"),
            })?;
            values.push(value);
        }
        features.push(FeatureVector::from_unit(values).map_err(|e| Error::Parse {
            line: row + 2,
            message: e.to_string(),
        })?);
    }
    if features.is_empty() {
        return Err(Error::Domain(format!(
            "no feature rows in {}",
            path.display()
        )));
    }
    Ok(features)
}
