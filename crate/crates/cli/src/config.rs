//! Run configuration: JSON schema, validation, and translation into a
//! concrete domain plus EA configuration.
//!
//! Unknown keys are rejected so typos fail fast instead of silently falling
//! back to defaults.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use edo_core::ea::{EvolutionConfig, InitStrategy, QualityDirection, QualityGate};
use edo_core::tsp::io::{read_instance, InstanceFormat};
use edo_core::tsp::{MutationParams, TspDomain, TspFeature, TspInstance};
use edo_core::vector::{read_points_csv, VectorDomain, VectorGenotype};
use edo_core::{Error, FeatureBounds, IndicatorKind, IndicatorSpec, Result};

/// One experiment description, as stored in a JSON config file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub domain: DomainConfig,
    /// Feature identifiers; their count fixes the feature-space dimension.
    pub feature_selection: Vec<String>,
    /// Per-feature normalization ranges `[min, max]`; defaults to the TSP
    /// feature table or the unit ranges of the vector domain.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Vec<(f64, f64)>>,
    pub indicator: IndicatorName,
    pub mu: usize,
    pub lambda: usize,
    pub generations: usize,
    pub seed: u64,
    pub repetitions: usize,
    pub quality: QualityConfig,
    pub output_dir: PathBuf,
    /// Population initialization; defaults to random-accept.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub init_strategy: Option<InitConfig>,
}

/// Either a bare domain name with defaults or a detailed block.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DomainConfig {
    Name(DomainKind),
    Detailed(DomainOptions),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainKind {
    Tsp,
    Vector,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainOptions {
    pub kind: DomainKind,
    /// Instance size for the TSP domain (required there; gated evolution
    /// needs exact optima, capping it at 15).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_cities: Option<usize>,
    /// Gaussian mutation scale for the vector domain.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    /// Per-city displacement probability for the TSP domain.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mutation_rate: Option<f64>,
    /// Displacement scale for the TSP domain.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mutation_sigma: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndicatorName {
    #[serde(rename = "HYP2D")]
    Hyp2d,
    #[serde(rename = "HYP")]
    Hyp,
    #[serde(rename = "IGD")]
    Igd,
    #[serde(rename = "EPS")]
    Eps,
    #[serde(rename = "DIS")]
    Dis,
}

impl IndicatorName {
    pub fn kind(self) -> IndicatorKind {
        match self {
            IndicatorName::Hyp2d => IndicatorKind::Hyp2d,
            IndicatorName::Hyp => IndicatorKind::Hyp,
            IndicatorName::Igd => IndicatorKind::Igd,
            IndicatorName::Eps => IndicatorKind::Eps,
            IndicatorName::Dis => IndicatorKind::Dis,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QualityConfig {
    pub threshold: f64,
    pub direction: DirectionName,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DirectionName {
    AtLeast,
    AtMost,
    Unconstrained,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitConfig {
    RandomAccept,
    QualityFirst,
    /// Start from existing genotypes: instance files for the TSP domain, a
    /// single points CSV (μ rows) for the vector domain.
    WarmStart {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        instances: Option<Vec<PathBuf>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        points_csv: Option<PathBuf>,
    },
}

/// A validated experiment, ready to run.
pub enum Experiment {
    Tsp {
        domain: TspDomain,
        config: EvolutionConfig<TspInstance>,
    },
    Vector {
        domain: VectorDomain,
        config: EvolutionConfig<VectorGenotype>,
    },
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let config: RunConfig = serde_json::from_str(text)
            .map_err(|e| Error::Config(format!("invalid run config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn domain_kind(&self) -> DomainKind {
        match &self.domain {
            DomainConfig::Name(kind) => *kind,
            DomainConfig::Detailed(options) => options.kind,
        }
    }

    fn domain_options(&self) -> DomainOptions {
        match &self.domain {
            DomainConfig::Name(kind) => DomainOptions {
                kind: *kind,
                n_cities: None,
                sigma: None,
                mutation_rate: None,
                mutation_sigma: None,
            },
            DomainConfig::Detailed(options) => options.clone(),
        }
    }

    pub fn feature_dim(&self) -> usize {
        self.feature_selection.len()
    }

    pub fn validate(&self) -> Result<()> {
        let dim = self.feature_dim();
        if !(2..=3).contains(&dim) {
            return Err(Error::Config(format!(
                "feature_selection must name 2 or 3 features, got {dim}"
            )));
        }
        let mut distinct = self.feature_selection.clone();
        distinct.sort();
        distinct.dedup();
        if distinct.len() != dim {
            return Err(Error::Config(
                "feature_selection contains duplicates".into(),
            ));
        }
        if matches!(self.indicator, IndicatorName::Hyp2d | IndicatorName::Eps) && dim != 2 {
            return Err(Error::Config(format!(
                "indicator {:?} drives feature pairs only, got {dim} features",
                self.indicator
            )));
        }
        if self.mu < 2 {
            return Err(Error::Config(format!("mu = {} must be at least 2", self.mu)));
        }
        if self.lambda < 1 || self.lambda > self.mu {
            return Err(Error::Config(format!(
                "lambda = {} must lie in 1..=mu ({})",
                self.lambda, self.mu
            )));
        }
        if self.repetitions < 1 {
            return Err(Error::Config("repetitions must be at least 1".into()));
        }
        if !self.quality.threshold.is_finite() {
            return Err(Error::Config("quality threshold must be finite".into()));
        }
        if let Some(bounds) = &self.bounds {
            if bounds.len() != dim {
                return Err(Error::Config(format!(
                    "bounds list {} features, feature_selection has {dim}",
                    bounds.len()
                )));
            }
            FeatureBounds::new(bounds.clone())?;
        }
        let options = self.domain_options();
        match options.kind {
            DomainKind::Tsp => {
                for id in &self.feature_selection {
                    if TspFeature::from_id(id).is_none() {
                        return Err(Error::Config(format!(
                            "unknown TSP feature {id:?} (expected f1..f4)"
                        )));
                    }
                }
                if options.n_cities.is_none() {
                    return Err(Error::Config(
                        "the tsp domain requires n_cities (3..=15)".into(),
                    ));
                }
                if options.sigma.is_some() {
                    return Err(Error::Config(
                        "sigma belongs to the vector domain; use mutation_sigma for tsp".into(),
                    ));
                }
            }
            DomainKind::Vector => {
                if self.bounds.is_some() {
                    return Err(Error::Config(
                        "the vector domain always uses unit bounds".into(),
                    ));
                }
                if options.n_cities.is_some()
                    || options.mutation_rate.is_some()
                    || options.mutation_sigma.is_some()
                {
                    return Err(Error::Config(
                        "n_cities/mutation_rate/mutation_sigma belong to the tsp domain".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn gate(&self) -> QualityGate {
        QualityGate {
            threshold: self.quality.threshold,
            direction: match self.quality.direction {
                DirectionName::AtLeast => QualityDirection::AtLeast,
                DirectionName::AtMost => QualityDirection::AtMost,
                DirectionName::Unconstrained => QualityDirection::Unconstrained,
            },
        }
    }

    /// Builds the domain and EA configuration (loading warm-start genotypes
    /// if any). The embedded seed is the base seed; repetitions derive
    /// theirs as `seed + i`.
    pub fn build(&self) -> Result<Experiment> {
        self.validate()?;
        let dim = self.feature_dim();
        let indicator = IndicatorSpec::standard(self.indicator.kind(), dim)?;
        let gate = self.gate();
        let options = self.domain_options();
        match options.kind {
            DomainKind::Tsp => {
                let features: Vec<TspFeature> = self
                    .feature_selection
                    .iter()
                    .map(|id| TspFeature::from_id(id).expect("validated above"))
                    .collect();
                let mut domain = TspDomain::new(options.n_cities.unwrap(), features)?;
                if options.mutation_rate.is_some() || options.mutation_sigma.is_some() {
                    let defaults = MutationParams::default();
                    domain = domain.with_mutation(MutationParams {
                        per_city_rate: options.mutation_rate.unwrap_or(defaults.per_city_rate),
                        sigma: options.mutation_sigma.unwrap_or(defaults.sigma),
                    });
                }
                if let Some(bounds) = &self.bounds {
                    domain = domain.with_bounds(FeatureBounds::new(bounds.clone())?)?;
                }
                let init = self.tsp_init()?;
                let config = EvolutionConfig {
                    mu: self.mu,
                    lambda: self.lambda,
                    generations: self.generations,
                    seed: self.seed,
                    indicator,
                    gate,
                    init,
                };
                config.validate()?;
                Ok(Experiment::Tsp { domain, config })
            }
            DomainKind::Vector => {
                let domain = match options.sigma {
                    Some(sigma) => VectorDomain::with_sigma(dim, sigma)?,
                    None => VectorDomain::new(dim)?,
                };
                let init = self.vector_init()?;
                let config = EvolutionConfig {
                    mu: self.mu,
                    lambda: self.lambda,
                    generations: self.generations,
                    seed: self.seed,
                    indicator,
                    gate,
                    init,
                };
                config.validate()?;
                Ok(Experiment::Vector { domain, config })
            }
        }
    }

    fn tsp_init(&self) -> Result<InitStrategy<TspInstance>> {
        match &self.init_strategy {
            None | Some(InitConfig::RandomAccept) => Ok(InitStrategy::random_accept()),
            Some(InitConfig::QualityFirst) => Ok(InitStrategy::quality_first()),
            Some(InitConfig::WarmStart {
                instances,
                points_csv,
            }) => {
                if points_csv.is_some() {
                    return Err(Error::Config(
                        "tsp warm start takes instance files, not points_csv".into(),
                    ));
                }
                let paths = instances.as_ref().ok_or_else(|| {
                    Error::Config("tsp warm start requires instance paths".into())
                })?;
                let genotypes = paths
                    .iter()
                    .map(|p| {
                        let format = match p.extension().and_then(|e| e.to_str()) {
                            Some("tsp") | Some("tsplib") => InstanceFormat::Tsplib,
                            _ => InstanceFormat::Csv,
                        };
                        read_instance(p, format).map(|imported| imported.instance)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(InitStrategy::WarmStart { genotypes })
            }
        }
    }

    fn vector_init(&self) -> Result<InitStrategy<VectorGenotype>> {
        match &self.init_strategy {
            None | Some(InitConfig::RandomAccept) => Ok(InitStrategy::random_accept()),
            Some(InitConfig::QualityFirst) => Ok(InitStrategy::quality_first()),
            Some(InitConfig::WarmStart {
                instances,
                points_csv,
            }) => {
                if instances.is_some() {
                    return Err(Error::Config(
                        "vector warm start takes points_csv, not instance files".into(),
                    ));
                }
                let path = points_csv.as_ref().ok_or_else(|| {
                    Error::Config("vector warm start requires points_csv".into())
                })?;
                let reader = std::io::BufReader::new(fs::File::open(path)?);
                let genotypes = read_points_csv(reader, self.feature_dim())?;
                Ok(InitStrategy::WarmStart { genotypes })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_config() -> String {
        r#"{
            "domain": "vector",
            "feature_selection": ["f1", "f2"],
            "indicator": "IGD",
            "mu": 4, "lambda": 1, "generations": 10,
            "seed": 1, "repetitions": 2,
            "quality": {"threshold": 0.0, "direction": "unconstrained"},
            "output_dir": "out"
        }"#
        .to_string()
    }

    #[test]
    fn minimal_vector_config_parses() {
        let config = RunConfig::parse(&base_config()).unwrap();
        assert_eq!(config.domain_kind(), DomainKind::Vector);
        assert!(matches!(config.build().unwrap(), Experiment::Vector { .. }));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = base_config().replace("\"mu\": 4", "\"mu\": 4, \"muu\": 4");
        let err = RunConfig::parse(&text).unwrap_err();
        assert!(matches!(err, Error::Config(_)), "{err}");
        assert!(err.to_string().contains("muu"), "{err}");
    }

    #[test]
    fn detailed_tsp_domain_parses() {
        let text = r#"{
            "domain": {"kind": "tsp", "n_cities": 10},
            "feature_selection": ["f1", "f4"],
            "indicator": "HYP",
            "mu": 4, "lambda": 1, "generations": 5,
            "seed": 7, "repetitions": 1,
            "quality": {"threshold": 1.0, "direction": "at-least"},
            "output_dir": "out"
        }"#;
        let config = RunConfig::parse(text).unwrap();
        assert!(matches!(config.build().unwrap(), Experiment::Tsp { .. }));
    }

    #[test]
    fn tsp_requires_n_cities() {
        let text = base_config()
            .replace("\"vector\"", "\"tsp\"")
            .replace("[\"f1\", \"f2\"]", "[\"f1\", \"f4\"]");
        let err = RunConfig::parse(&text).unwrap_err();
        assert!(err.to_string().contains("n_cities"), "{err}");
    }

    #[test]
    fn pair_only_indicators_reject_triples() {
        let text = base_config()
            .replace("[\"f1\", \"f2\"]", "[\"a\", \"b\", \"c\"]")
            .replace("\"IGD\"", "\"HYP2D\"");
        assert!(RunConfig::parse(&text).is_err());
    }

    #[test]
    fn unknown_tsp_features_are_rejected() {
        let text = r#"{
            "domain": {"kind": "tsp", "n_cities": 8},
            "feature_selection": ["f1", "f9"],
            "indicator": "IGD",
            "mu": 4, "lambda": 1, "generations": 5,
            "seed": 7, "repetitions": 1,
            "quality": {"threshold": 1.0, "direction": "at-least"},
            "output_dir": "out"
        }"#;
        let err = RunConfig::parse(text).unwrap_err();
        assert!(err.to_string().contains("f9"), "{err}");
    }

    #[test]
    fn bounds_must_match_the_selection_length() {
        let text = base_config().replace(
            "\"indicator\"",
            "\"bounds\": [[0.0, 1.0]], \"indicator\"",
        );
        assert!(RunConfig::parse(&text).is_err());
    }

    #[test]
    fn config_echo_round_trips_through_json() {
        let config = RunConfig::parse(&base_config()).unwrap();
        let echoed = serde_json::to_string(&config).unwrap();
        let back = RunConfig::parse(&echoed).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), echoed);
    }
}
