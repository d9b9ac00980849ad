//! The Euclidean TSP instance domain: instances in the unit square, the four
//! summary features, 2-OPT and exact tour solvers, the approximation-ratio
//! quality score, city-displacement mutation, and instance I/O.

pub mod features;
pub mod io;
pub mod solver;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::ea::DiversityDomain;
use crate::error::{Error, Result};
use crate::feature_space::FeatureBounds;

pub use features::TspFeature;
pub use solver::{exact_opt, two_opt, EXACT_OPT_MAX_CITIES};

/// A TSP instance: `n ≥ 3` cities in `[0,1]²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TspInstance {
    cities: Vec<[f64; 2]>,
}

impl TspInstance {
    pub fn new(cities: Vec<[f64; 2]>) -> Result<Self> {
        if cities.len() < 3 {
            return Err(Error::Config(format!(
                "a TSP instance needs at least 3 cities, got {}",
                cities.len()
            )));
        }
        for (i, c) in cities.iter().enumerate() {
            for &x in c {
                if !x.is_finite() || !(0.0..=1.0).contains(&x) {
                    return Err(Error::Domain(format!(
                        "city {i} coordinate {x} is outside [0,1]"
                    )));
                }
            }
        }
        Ok(Self { cities })
    }

    pub fn cities(&self) -> &[[f64; 2]] {
        &self.cities
    }

    pub fn n_cities(&self) -> usize {
        self.cities.len()
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        let a = self.cities[i];
        let b = self.cities[j];
        ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
    }
}

/// A cyclic tour: a visiting order and its total Euclidean length.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tour {
    order: Vec<usize>,
    length: f64,
}

impl Tour {
    /// Builds a tour, canonicalizing the cycle (start at city 0, lower-index
    /// neighbor second) so equal cycles always sum to bit-identical lengths.
    pub fn new(order: Vec<usize>, instance: &TspInstance) -> Result<Self> {
        let n = instance.n_cities();
        if order.len() != n {
            return Err(Error::Domain(format!(
                "tour visits {} cities, instance has {n}",
                order.len()
            )));
        }
        let mut seen = vec![false; n];
        for &c in &order {
            if c >= n || seen[c] {
                return Err(Error::Domain(format!("order is not a permutation: {c}")));
            }
            seen[c] = true;
        }
        let order = canonical_cycle(order);
        let length = cycle_length(&order, instance);
        Ok(Self { order, length })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn length(&self) -> f64 {
        self.length
    }
}

fn canonical_cycle(order: Vec<usize>) -> Vec<usize> {
    let n = order.len();
    let zero = order
        .iter()
        .position(|&c| c == 0)
        .expect("permutation contains city 0");
    let next = order[(zero + 1) % n];
    let prev = order[(zero + n - 1) % n];
    let mut out = Vec::with_capacity(n);
    if next <= prev {
        for k in 0..n {
            out.push(order[(zero + k) % n]);
        }
    } else {
        for k in 0..n {
            out.push(order[(zero + n - k) % n]);
        }
    }
    out
}

fn cycle_length(order: &[usize], instance: &TspInstance) -> f64 {
    let n = order.len();
    (0..n)
        .map(|k| instance.distance(order[k], order[(k + 1) % n]))
        .sum()
}

/// City-displacement mutation parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MutationParams {
    /// Probability that each city is displaced.
    pub per_city_rate: f64,
    /// Standard deviation of the isotropic Gaussian offset per coordinate.
    pub sigma: f64,
}

impl Default for MutationParams {
    fn default() -> Self {
        Self {
            per_city_rate: 0.1,
            sigma: 0.025,
        }
    }
}

/// Displaces each city independently with probability `per_city_rate` by a
/// Gaussian offset, reflecting coordinates back into `[0,1]`. If no city was
/// selected, one chosen uniformly at random is displaced.
pub fn mutate(
    instance: &TspInstance,
    rng: &mut ChaCha8Rng,
    params: &MutationParams,
) -> TspInstance {
    let noise = Normal::new(0.0, params.sigma).expect("sigma must be non-negative");
    let mut cities = instance.cities().to_vec();
    let mut moved = false;
    for city in cities.iter_mut() {
        if rng.gen::<f64>() < params.per_city_rate {
            displace(city, &noise, rng);
            moved = true;
        }
    }
    if !moved {
        let pick = rng.gen_range(0..cities.len());
        displace(&mut cities[pick], &noise, rng);
    }
    TspInstance { cities }
}

fn displace(city: &mut [f64; 2], noise: &Normal<f64>, rng: &mut ChaCha8Rng) {
    for x in city.iter_mut() {
        *x = reflect_unit(*x + noise.sample(rng));
    }
}

fn reflect_unit(mut x: f64) -> f64 {
    while !(0.0..=1.0).contains(&x) {
        if x < 0.0 {
            x = -x;
        }
        if x > 1.0 {
            x = 2.0 - x;
        }
    }
    x
}

/// Where the optimal tour length comes from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum OptimumSource {
    /// Solve exactly with the Held–Karp dynamic program (n ≤ 15).
    ExactDp,
    /// An externally computed optimal tour length.
    External(f64),
}

/// Number of independent 2-OPT restarts whose best tour is the quality
/// numerator.
pub const TWO_OPT_RUNS: usize = 3;

/// Approximation ratio `A(I)/OPT(I)`: the best of three independent 2-OPT
/// runs over the optimal tour length. Always ≥ 1. The three restarts draw
/// from streams pre-split off `rng`, so they may run in any order.
pub fn quality(instance: &TspInstance, opt: OptimumSource, rng: &mut ChaCha8Rng) -> Result<f64> {
    let optimum = match opt {
        OptimumSource::ExactDp => solver::exact_opt(instance)?.length(),
        OptimumSource::External(length) => {
            if !length.is_finite() || length <= 0.0 {
                return Err(Error::Config(format!(
                    "external optimum {length} must be positive"
                )));
            }
            length
        }
    };
    let seeds: Vec<u64> = (0..TWO_OPT_RUNS).map(|_| rng.gen()).collect();
    let best = seeds
        .into_iter()
        .map(|seed| {
            let mut stream = ChaCha8Rng::seed_from_u64(seed);
            solver::two_opt(instance, &mut stream).length()
        })
        .fold(f64::INFINITY, f64::min);
    Ok(best / optimum)
}

/// TSP instances as an EA domain: uniform random instances, city
/// displacement, a selected feature subset, and the approximation ratio as
/// quality. Evolution relies on the exact dynamic program for optima, which
/// caps the instance size.
#[derive(Debug, Clone)]
pub struct TspDomain {
    n_cities: usize,
    features: Vec<TspFeature>,
    bounds: FeatureBounds,
    mutation: MutationParams,
}

impl TspDomain {
    pub fn new(n_cities: usize, features: Vec<TspFeature>) -> Result<Self> {
        if n_cities < 3 {
            return Err(Error::Config(format!(
                "n_cities = {n_cities} must be at least 3"
            )));
        }
        if n_cities > EXACT_OPT_MAX_CITIES {
            return Err(Error::Capacity(format!(
                "evolving gated instances needs exact optima; the dynamic program \
                 supports up to {EXACT_OPT_MAX_CITIES} cities, got {n_cities}"
            )));
        }
        if !(2..=3).contains(&features.len()) {
            return Err(Error::Config(format!(
                "select 2 or 3 features, got {}",
                features.len()
            )));
        }
        let mut distinct = features.clone();
        distinct.dedup();
        distinct.sort_by_key(|f| f.id());
        distinct.dedup();
        if distinct.len() != features.len() {
            return Err(Error::Config("feature selection contains duplicates".into()));
        }
        let bounds = FeatureBounds::new(features.iter().map(|f| f.bounds()).collect())?;
        Ok(Self {
            n_cities,
            features,
            bounds,
            mutation: MutationParams::default(),
        })
    }

    pub fn with_mutation(mut self, params: MutationParams) -> Self {
        self.mutation = params;
        self
    }

    /// Replaces the per-feature normalization ranges.
    pub fn with_bounds(mut self, bounds: FeatureBounds) -> Result<Self> {
        if bounds.dim() != self.features.len() {
            return Err(Error::DimensionMismatch {
                expected: self.features.len(),
                actual: bounds.dim(),
            });
        }
        self.bounds = bounds;
        Ok(self)
    }

    pub fn n_cities(&self) -> usize {
        self.n_cities
    }

    pub fn features(&self) -> &[TspFeature] {
        &self.features
    }
}

impl DiversityDomain for TspDomain {
    type Genotype = TspInstance;

    fn feature_dim(&self) -> usize {
        self.features.len()
    }

    fn bounds(&self) -> &FeatureBounds {
        &self.bounds
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> TspInstance {
        let cities = (0..self.n_cities)
            .map(|_| [rng.gen::<f64>(), rng.gen::<f64>()])
            .collect();
        TspInstance { cities }
    }

    fn mutate(&self, genotype: &TspInstance, rng: &mut ChaCha8Rng) -> TspInstance {
        mutate(genotype, rng, &self.mutation)
    }

    fn raw_features(&self, genotype: &TspInstance) -> Vec<f64> {
        self.features.iter().map(|f| f.compute(genotype)).collect()
    }

    fn quality(&self, genotype: &TspInstance, rng: &mut ChaCha8Rng) -> f64 {
        quality(genotype, OptimumSource::ExactDp, rng)
            .expect("instance size is validated at domain construction")
    }
}
