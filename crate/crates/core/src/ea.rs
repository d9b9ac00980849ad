//! The (μ+λ) evolutionary algorithm for diversity optimization.
//!
//! Each generation mutates λ uniformly chosen parents, discards offspring
//! failing the quality gate, and while the population exceeds μ removes the
//! individual whose absence leaves the best remaining indicator value. With
//! λ = 1 the recorded indicator trajectory never worsens: removing the fresh
//! offspring reproduces the previous population, so the minimal-loss choice
//! cannot do worse.
//!
//! Runs are pure functions of `(config, seed, domain)`. The leave-one-out
//! indicator evaluations inside one removal round execute in parallel and
//! are reduced in index order, so tie-breaking stays deterministic; the
//! seeded random stream is consumed only on the sequential path.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::feature_space::{FeatureBounds, FeatureVector};
use crate::indicators::{IndicatorSpec, IndicatorValue};

/// Sample budget for random-accept initialization.
pub const DEFAULT_RETRY_BUDGET: usize = 1_000_000;
/// Mutation budget per individual for quality-first initialization.
pub const DEFAULT_CLIMB_BUDGET: usize = 100_000;

/// A problem domain the EA can evolve: genotypes, mutation, features, and a
/// quality score.
pub trait DiversityDomain: Sync {
    type Genotype: Clone + Send + Sync;

    /// Dimensionality of the feature descriptor.
    fn feature_dim(&self) -> usize;

    /// Normalization bounds for the raw features.
    fn bounds(&self) -> &FeatureBounds;

    /// Draws a fresh random genotype.
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Genotype;

    /// Produces a mutated copy of `genotype`.
    fn mutate(&self, genotype: &Self::Genotype, rng: &mut ChaCha8Rng) -> Self::Genotype;

    /// Raw (unnormalized) feature values of a genotype.
    fn raw_features(&self, genotype: &Self::Genotype) -> Vec<f64>;

    /// Quality score of a genotype.
    fn quality(&self, genotype: &Self::Genotype, rng: &mut ChaCha8Rng) -> f64;
}

/// Which side of the threshold counts as acceptable quality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum QualityDirection {
    /// `quality ≥ threshold` (e.g. hard TSP instances).
    AtLeast,
    /// `quality ≤ threshold` (e.g. bounded error).
    AtMost,
    /// Every candidate passes.
    Unconstrained,
}

/// The per-individual quality predicate every population member must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QualityGate {
    pub threshold: f64,
    pub direction: QualityDirection,
}

impl QualityGate {
    pub fn at_least(threshold: f64) -> Self {
        Self {
            threshold,
            direction: QualityDirection::AtLeast,
        }
    }

    pub fn at_most(threshold: f64) -> Self {
        Self {
            threshold,
            direction: QualityDirection::AtMost,
        }
    }

    pub fn unconstrained() -> Self {
        Self {
            threshold: 0.0,
            direction: QualityDirection::Unconstrained,
        }
    }

    pub fn accepts(&self, quality: f64) -> bool {
        match self.direction {
            QualityDirection::AtLeast => quality >= self.threshold,
            QualityDirection::AtMost => quality <= self.threshold,
            QualityDirection::Unconstrained => true,
        }
    }

    /// Whether `candidate` is strictly closer to passing than `incumbent`;
    /// drives quality-first hill climbing.
    fn improves(&self, candidate: f64, incumbent: f64) -> bool {
        match self.direction {
            QualityDirection::AtLeast => candidate > incumbent,
            QualityDirection::AtMost => candidate < incumbent,
            QualityDirection::Unconstrained => false,
        }
    }
}

/// How the initial population is produced.
#[derive(Debug, Clone)]
pub enum InitStrategy<G> {
    /// Sample and test until μ candidates pass the gate or the budget is
    /// exhausted.
    RandomAccept { retry_budget: usize },
    /// Start from caller-provided genotypes (exactly μ; quality re-verified).
    WarmStart { genotypes: Vec<G> },
    /// Hill-climb each random sample on quality until the gate passes.
    QualityFirst { climb_budget: usize },
}

impl<G> InitStrategy<G> {
    pub fn random_accept() -> Self {
        InitStrategy::RandomAccept {
            retry_budget: DEFAULT_RETRY_BUDGET,
        }
    }

    pub fn quality_first() -> Self {
        InitStrategy::QualityFirst {
            climb_budget: DEFAULT_CLIMB_BUDGET,
        }
    }
}

/// Full description of one evolutionary run.
#[derive(Debug, Clone)]
pub struct EvolutionConfig<G> {
    pub mu: usize,
    pub lambda: usize,
    pub generations: usize,
    pub seed: u64,
    pub indicator: IndicatorSpec,
    pub gate: QualityGate,
    pub init: InitStrategy<G>,
}

impl<G> EvolutionConfig<G> {
    pub fn validate(&self) -> Result<()> {
        if self.mu < 2 {
            return Err(Error::Config(format!("mu = {} must be at least 2", self.mu)));
        }
        if self.lambda < 1 || self.lambda > self.mu {
            return Err(Error::Config(format!(
                "lambda = {} must lie in 1..=mu ({})",
                self.lambda, self.mu
            )));
        }
        Ok(())
    }
}

/// One population member with its cached descriptors. `features` is always
/// `bounds.normalize(raw_features)` of the owning domain.
#[derive(Debug, Clone, Serialize)]
pub struct Individual<G> {
    pub genotype: G,
    pub raw_features: Vec<f64>,
    pub features: FeatureVector,
    pub quality: f64,
    pub birth_generation: usize,
}

/// The evolving set; exactly μ members between generations, μ+λ at most
/// transiently.
#[derive(Debug, Clone)]
pub struct Population<G> {
    members: Vec<Individual<G>>,
    capacity: usize,
}

impl<G> Population<G> {
    fn new(capacity: usize) -> Self {
        Self {
            members: Vec::with_capacity(capacity + 1),
            capacity,
        }
    }

    pub fn members(&self) -> &[Individual<G>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn feature_vectors(&self) -> Vec<FeatureVector> {
        self.members.iter().map(|m| m.features.clone()).collect()
    }

    pub fn into_members(self) -> Vec<Individual<G>> {
        self.members
    }

    fn push(&mut self, individual: Individual<G>) {
        self.members.push(individual);
    }

    fn remove(&mut self, index: usize) -> Individual<G> {
        self.members.remove(index)
    }
}

fn make_individual<D: DiversityDomain>(
    domain: &D,
    genotype: D::Genotype,
    quality: f64,
    birth_generation: usize,
) -> Result<Individual<D::Genotype>> {
    let raw_features = domain.raw_features(&genotype);
    let features = domain.bounds().normalize(&raw_features)?;
    Ok(Individual {
        genotype,
        raw_features,
        features,
        quality,
        birth_generation,
    })
}

/// Builds the initial population of μ gate-passing individuals.
pub fn initialize<D: DiversityDomain>(
    config: &EvolutionConfig<D::Genotype>,
    domain: &D,
    rng: &mut ChaCha8Rng,
) -> Result<Population<D::Genotype>> {
    config.validate()?;
    let mut population = Population::new(config.mu);
    match &config.init {
        InitStrategy::RandomAccept { retry_budget } => {
            let mut attempts = 0usize;
            while population.len() < config.mu {
                if attempts >= *retry_budget {
                    return Err(Error::InitializationFailure {
                        accepted: population.len(),
                        mu: config.mu,
                        attempts,
                        rate: population.len() as f64 / attempts.max(1) as f64,
                    });
                }
                attempts += 1;
                let genotype = domain.sample(rng);
                let quality = domain.quality(&genotype, rng);
                if config.gate.accepts(quality) {
                    population.push(make_individual(domain, genotype, quality, 0)?);
                }
            }
        }
        InitStrategy::WarmStart { genotypes } => {
            if genotypes.len() != config.mu {
                return Err(Error::Config(format!(
                    "warm start provides {} genotypes, expected mu = {}",
                    genotypes.len(),
                    config.mu
                )));
            }
            for (attempts, genotype) in genotypes.iter().enumerate() {
                let quality = domain.quality(genotype, rng);
                if !config.gate.accepts(quality) {
                    return Err(Error::InitializationFailure {
                        accepted: population.len(),
                        mu: config.mu,
                        attempts: attempts + 1,
                        rate: population.len() as f64 / (attempts + 1) as f64,
                    });
                }
                population.push(make_individual(domain, genotype.clone(), quality, 0)?);
            }
        }
        InitStrategy::QualityFirst { climb_budget } => {
            for _ in 0..config.mu {
                let mut genotype = domain.sample(rng);
                let mut quality = domain.quality(&genotype, rng);
                let mut steps = 0usize;
                while !config.gate.accepts(quality) {
                    if steps >= *climb_budget {
                        return Err(Error::InitializationFailure {
                            accepted: population.len(),
                            mu: config.mu,
                            attempts: steps,
                            rate: 0.0,
                        });
                    }
                    steps += 1;
                    let candidate = domain.mutate(&genotype, rng);
                    let candidate_quality = domain.quality(&candidate, rng);
                    if config.gate.improves(candidate_quality, quality) {
                        genotype = candidate;
                        quality = candidate_quality;
                    }
                }
                population.push(make_individual(domain, genotype, quality, 0)?);
            }
        }
    }
    Ok(population)
}

/// One generation: mutate λ uniformly chosen parents, admit gate-passing
/// offspring, then shrink back to μ by minimal-loss removal.
///
/// Returns the driving-indicator value of the resulting population, or
/// `None` when every offspring was rejected (population unchanged).
pub fn step<D: DiversityDomain>(
    population: &mut Population<D::Genotype>,
    config: &EvolutionConfig<D::Genotype>,
    domain: &D,
    rng: &mut ChaCha8Rng,
    generation: usize,
) -> Result<Option<IndicatorValue>> {
    debug_assert_eq!(population.len(), config.mu);
    let parents = rand::seq::index::sample(rng, population.len(), config.lambda).into_vec();
    let mut accepted = 0usize;
    for parent in parents {
        let child = domain.mutate(&population.members()[parent].genotype, rng);
        let quality = domain.quality(&child, rng);
        if config.gate.accepts(quality) {
            population.push(make_individual(domain, child, quality, generation)?);
            accepted += 1;
        }
    }
    if accepted == 0 {
        return Ok(None);
    }
    let mut last = None;
    while population.len() > config.mu {
        let (index, value) = best_removal(population, &config.indicator)?;
        population.remove(index);
        last = Some(value);
    }
    Ok(last)
}

/// Evaluates the indicator on every leave-one-out subset and picks the
/// removal that leaves the best value. Equal-loss ties remove the newest
/// member (largest birth generation), which keeps λ=1 runs monotone and
/// reproducible.
fn best_removal<G: Clone + Send + Sync>(
    population: &Population<G>,
    indicator: &IndicatorSpec,
) -> Result<(usize, IndicatorValue)> {
    let features = population.feature_vectors();
    let candidates: Vec<Result<IndicatorValue>> = (0..population.len())
        .into_par_iter()
        .map(|skip| {
            let subset: Vec<FeatureVector> = features
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != skip)
                .map(|(_, f)| f.clone())
                .collect();
            indicator.evaluate(&subset)
        })
        .collect();

    let mut best: Option<(usize, IndicatorValue)> = None;
    for (index, candidate) in candidates.into_iter().enumerate() {
        let value = candidate?;
        best = Some(match best {
            None => (index, value),
            Some((best_index, best_value)) => match indicator.compare(&value, &best_value)? {
                Ordering::Greater => (index, value),
                Ordering::Equal
                    if population.members()[index].birth_generation
                        > population.members()[best_index].birth_generation =>
                {
                    (index, value)
                }
                _ => (best_index, best_value),
            },
        });
    }
    Ok(best.expect("population is non-empty"))
}

/// Everything a finished run reports: the per-generation driving-indicator
/// trajectory (entry 0 is the initial population; EPS records the first
/// sequence element) and the final population.
#[derive(Debug, Clone, Serialize)]
pub struct EvolutionReport<G> {
    pub seed: u64,
    pub trajectory: Vec<f64>,
    pub final_population: Vec<Individual<G>>,
}

/// Initializes and evolves for `config.generations` generations.
/// Deterministic: identical `(config, seed)` produce identical reports.
pub fn run<D: DiversityDomain>(
    config: &EvolutionConfig<D::Genotype>,
    domain: &D,
) -> Result<EvolutionReport<D::Genotype>> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut population = initialize(config, domain, &mut rng)?;
    let mut current = config.indicator.evaluate(&population.feature_vectors())?;
    let mut trajectory = Vec::with_capacity(config.generations + 1);
    trajectory.push(current.scalar());
    for generation in 1..=config.generations {
        if let Some(value) = step(&mut population, config, domain, &mut rng, generation)? {
            current = value;
        }
        trajectory.push(current.scalar());
        debug_assert_eq!(population.len(), config.mu);
    }
    Ok(EvolutionReport {
        seed: config.seed,
        trajectory,
        final_population: population.into_members(),
    })
}
