//! A synthetic domain whose genotype is the feature vector itself.
//!
//! With identity features and an unconstrained gate, the EA over this domain
//! exercises every indicator path without domain noise. A spherical quality
//! score (distance from the cube center) is available to exercise
//! gate-rejection paths.

use std::io::{BufRead, Write};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::ea::DiversityDomain;
use crate::error::{Error, Result};
use crate::feature_space::FeatureBounds;

/// Default Gaussian mutation scale.
pub const DEFAULT_SIGMA: f64 = 0.05;

/// A point genotype in `[0,1]^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorGenotype {
    pub point: Vec<f64>,
}

impl VectorGenotype {
    pub fn new(point: Vec<f64>) -> Result<Self> {
        for (i, &x) in point.iter().enumerate() {
            if !x.is_finite() || !(0.0..=1.0).contains(&x) {
                return Err(Error::Domain(format!(
                    "vector coordinate {i} = {x} is outside [0,1]"
                )));
            }
        }
        Ok(Self { point })
    }
}

/// The genotype is its own raw feature vector.
pub fn identity_features(genotype: &VectorGenotype) -> Vec<f64> {
    genotype.point.clone()
}

/// Adds independent Gaussian noise per coordinate and reflects the result
/// back into `[0,1]`.
pub fn gaussian_mutate(
    genotype: &VectorGenotype,
    rng: &mut ChaCha8Rng,
    sigma: f64,
) -> VectorGenotype {
    let noise = Normal::new(0.0, sigma).expect("sigma must be non-negative");
    VectorGenotype {
        point: genotype
            .point
            .iter()
            .map(|&x| reflect_unit(x + noise.sample(rng)))
            .collect(),
    }
}

/// Euclidean distance from the center of the unit cube; the quality score
/// behind the optional spherical gate `‖p − ½·𝟙‖ ≤ radius`.
pub fn center_distance(genotype: &VectorGenotype) -> f64 {
    genotype
        .point
        .iter()
        .map(|&x| (x - 0.5) * (x - 0.5))
        .sum::<f64>()
        .sqrt()
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

/// Vector genotypes as an EA domain with uniform sampling and Gaussian
/// mutation.
#[derive(Debug, Clone)]
pub struct VectorDomain {
    dim: usize,
    sigma: f64,
    bounds: FeatureBounds,
}

impl VectorDomain {
    pub fn new(dim: usize) -> Result<Self> {
        Self::with_sigma(dim, DEFAULT_SIGMA)
    }

    pub fn with_sigma(dim: usize, sigma: f64) -> Result<Self> {
        if !(2..=3).contains(&dim) {
            return Err(Error::UnsupportedDimension {
                dim,
                context: "the vector domain drives feature pairs and triples",
            });
        }
        if !sigma.is_finite() || sigma < 0.0 {
            return Err(Error::Config(format!(
                "mutation sigma {sigma} must be non-negative"
            )));
        }
        Ok(Self {
            dim,
            sigma,
            bounds: FeatureBounds::unit(dim),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

impl DiversityDomain for VectorDomain {
    type Genotype = VectorGenotype;

    fn feature_dim(&self) -> usize {
        self.dim
    }

    fn bounds(&self) -> &FeatureBounds {
        &self.bounds
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> VectorGenotype {
        VectorGenotype {
            point: (0..self.dim).map(|_| rng.gen::<f64>()).collect(),
        }
    }

    fn mutate(&self, genotype: &VectorGenotype, rng: &mut ChaCha8Rng) -> VectorGenotype {
        gaussian_mutate(genotype, rng, self.sigma)
    }

    fn raw_features(&self, genotype: &VectorGenotype) -> Vec<f64> {
        identity_features(genotype)
    }

    fn quality(&self, genotype: &VectorGenotype, _rng: &mut ChaCha8Rng) -> f64 {
        center_distance(genotype)
    }
}

/// Writes genotypes one point per row (`x1,…,xd` header).
pub fn write_points_csv<W: Write>(points: &[VectorGenotype], mut writer: W) -> Result<()> {
    let dim = points.first().map_or(0, |p| p.point.len());
    let header: Vec<String> = (1..=dim).map(|i| format!("x{i}")).collect();
    writeln!(writer, "{}", header.join(","))?;
    for p in points {
        let row: Vec<String> = p.point.iter().map(|v| v.to_string()).collect();
        writeln!(writer, "{}", row.join(","))?;
    }
    Ok(())
}

/// Reads genotypes written by [`write_points_csv`]; every row must have
/// exactly `dim` coordinates inside `[0,1]`.
pub fn read_points_csv<R: BufRead>(reader: R, dim: usize) -> Result<Vec<VectorGenotype>> {
    let mut points = Vec::new();
    for (number, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if number == 0 || line.is_empty() {
            continue; // header
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != dim {
            return Err(Error::Parse {
                line: number + 1,
                message: format!("expected {dim} coordinates, found {}", fields.len()),
            });
        }
        let mut point = Vec::with_capacity(dim);
        for field in fields {
            let value: f64 = field.trim().parse().map_err(|_| Error::Parse {
                line: number + 1,
                message: format!("invalid coordinate {field:?}"),
            })?;
            point.push(value);
        }
        points.push(VectorGenotype::new(point).map_err(|e| Error::Parse {
            line: number + 1,
            message: e.to_string(),
        })?);
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn identity_features_return_the_point() {
        let g = VectorGenotype::new(vec![0.3, 0.7]).unwrap();
        assert_eq!(identity_features(&g), vec![0.3, 0.7]);
        let g = VectorGenotype::new(vec![0.0, 1.0]).unwrap();
        assert_eq!(identity_features(&g), vec![0.0, 1.0]);
    }

    #[test]
    fn unit_bounds_normalization_is_identity_on_genotypes() {
        let domain = VectorDomain::new(2).unwrap();
        let g = VectorGenotype::new(vec![0.25, 0.5]).unwrap();
        let normalized = domain.bounds().normalize(&domain.raw_features(&g)).unwrap();
        assert_eq!(normalized.values(), &[0.25, 0.5]);
    }

    #[test]
    fn zero_sigma_mutation_is_the_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = VectorGenotype::new(vec![0.2, 0.9]).unwrap();
        let m = gaussian_mutate(&g, &mut rng, 0.0);
        assert_eq!(m, g);
    }

    #[test]
    fn mutation_stays_inside_the_unit_cube() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut g = VectorGenotype::new(vec![0.01, 0.99]).unwrap();
        for _ in 0..10_000 {
            g = gaussian_mutate(&g, &mut rng, 0.3);
            assert!(g.point.iter().all(|&x| (0.0..=1.0).contains(&x)));
        }
    }

    #[test]
    fn mean_displacement_matches_folded_normal_statistics() {
        // away from the walls reflection never fires, so |Δ| is folded normal
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = VectorGenotype::new(vec![0.5, 0.5]).unwrap();
        let sigma = 0.05;
        let draws = 10_000usize;
        let mut sum = 0.0;
        for _ in 0..draws {
            let m = gaussian_mutate(&g, &mut rng, sigma);
            for (a, b) in m.point.iter().zip(&g.point) {
                sum += (a - b).abs();
            }
        }
        let mean = sum / (draws * 2) as f64;
        let expected = sigma * (2.0 / std::f64::consts::PI).sqrt();
        let std_err = sigma * (1.0 - 2.0 / std::f64::consts::PI).sqrt()
            / ((draws * 2) as f64).sqrt();
        assert!(
            (mean - expected).abs() < 3.0 * std_err,
            "mean {mean} vs expected {expected} (3se = {})",
            3.0 * std_err
        );
    }

    #[test]
    fn center_distance_is_zero_at_the_center() {
        let g = VectorGenotype::new(vec![0.5, 0.5, 0.5]).unwrap();
        assert_eq!(center_distance(&g), 0.0);
        let corner = VectorGenotype::new(vec![1.0, 1.0]).unwrap();
        assert!((center_distance(&corner) - 2f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn points_csv_round_trips() {
        let points = vec![
            VectorGenotype::new(vec![0.1, 0.9]).unwrap(),
            VectorGenotype::new(vec![0.5, 0.25]).unwrap(),
        ];
        let mut buf = Vec::new();
        write_points_csv(&points, &mut buf).unwrap();
        let back = read_points_csv(buf.as_slice(), 2).unwrap();
        assert_eq!(back, points);
    }

    #[test]
    fn points_csv_reports_bad_rows_with_line_numbers() {
        let text = "x1,x2\n0.5,0.5\n0.5\n";
        let err = read_points_csv(text.as_bytes(), 2).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }
}
