//! Normalized feature vectors and the transforms that lift them into
//! indicator-ready objective vectors.
//!
//! Multi-objective indicators cannot act on plain feature vectors: inside the
//! unit square some vectors dominate others, so volume- and dominance-based
//! indicators would prefer regions instead of spreading points. The two
//! transforms here — [`PlaneEmbedding`] and [`dimension_double`] — map the
//! unit feature space onto sets of mutually non-dominated objective vectors,
//! turning any indicator into a pure diversity measure.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in the normalized feature space `[0,1]^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    values: Vec<f64>,
}

impl FeatureVector {
    /// Wraps coordinates that are already inside the unit hypercube.
    pub fn from_unit(values: Vec<f64>) -> Result<Self> {
        for (i, &x) in values.iter().enumerate() {
            if !x.is_finite() || !(0.0..=1.0).contains(&x) {
                return Err(Error::Domain(format!(
                    "feature coordinate {i} = {x} is outside [0,1]"
                )));
            }
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }
}

/// Per-feature normalization ranges, strictly `min < max` for every feature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureBounds {
    ranges: Vec<(f64, f64)>,
}

impl FeatureBounds {
    pub fn new(ranges: Vec<(f64, f64)>) -> Result<Self> {
        if ranges.is_empty() {
            return Err(Error::Config("feature bounds must not be empty".into()));
        }
        for (i, &(lo, hi)) in ranges.iter().enumerate() {
            if !lo.is_finite() || !hi.is_finite() || lo >= hi {
                return Err(Error::Config(format!(
                    "feature {i} bounds [{lo}, {hi}] must satisfy min < max"
                )));
            }
        }
        Ok(Self { ranges })
    }

    /// `[0,1]` per feature; normalization becomes the identity.
    pub fn unit(dim: usize) -> Self {
        Self {
            ranges: vec![(0.0, 1.0); dim],
        }
    }

    pub fn ranges(&self) -> &[(f64, f64)] {
        &self.ranges
    }

    pub fn dim(&self) -> usize {
        self.ranges.len()
    }

    /// Scales raw feature values into `[0,1]`, clamping out-of-range values
    /// to 0 or 1 so the algorithm keeps working on non-anticipated inputs.
    pub fn normalize(&self, raw: &[f64]) -> Result<FeatureVector> {
        if raw.len() != self.ranges.len() {
            return Err(Error::DimensionMismatch {
                expected: self.ranges.len(),
                actual: raw.len(),
            });
        }
        let mut values = Vec::with_capacity(raw.len());
        for (i, (&x, &(lo, hi))) in raw.iter().zip(&self.ranges).enumerate() {
            if !x.is_finite() {
                return Err(Error::Domain(format!("raw feature {i} is not finite")));
            }
            values.push(((x - lo) / (hi - lo)).clamp(0.0, 1.0));
        }
        Ok(FeatureVector { values })
    }
}

/// A point in objective space. Its dimensionality depends on the transform
/// that produced it: `d` for identity, `d+1` for plane-embedded, `2d` for
/// doubled vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveVector {
    values: Vec<f64>,
}

impl ObjectiveVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }
}

const BASIS_TOL: f64 = 1e-12;

/// Isometric placement of the unit feature square onto the plane in 3-space
/// orthogonal to `(1,1,1)`, centred at `(√2/4, √2/4, √2/4)`.
///
/// The normal of the image plane passes through the origin, so coordinate
/// differences of any two embedded points sum to zero: no image weakly
/// dominates another, and every indicator sees the square as a Pareto front.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaneEmbedding {
    center: [f64; 3],
    basis_u: [f64; 3],
    basis_v: [f64; 3],
}

impl PlaneEmbedding {
    /// The fixed embedding used throughout: `u = (1,−1,0)/√2`,
    /// `v = (1,1,−2)/√6`.
    pub fn standard() -> Self {
        let s2 = 2f64.sqrt();
        let s6 = 6f64.sqrt();
        Self {
            center: [s2 / 4.0; 3],
            basis_u: [1.0 / s2, -1.0 / s2, 0.0],
            basis_v: [1.0 / s6, 1.0 / s6, -2.0 / s6],
        }
    }

    /// Builds an embedding from an explicit center and basis, validating that
    /// the basis is orthonormal and orthogonal to `(1,1,1)` and that the line
    /// through the center in direction `(1,1,1)` passes through the origin.
    pub fn new(center: [f64; 3], basis_u: [f64; 3], basis_v: [f64; 3]) -> Result<Self> {
        let dot = |a: &[f64; 3], b: &[f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        let ones = [1.0; 3];
        let checks = [
            (dot(&basis_u, &basis_u) - 1.0, "basis_u is not unit length"),
            (dot(&basis_v, &basis_v) - 1.0, "basis_v is not unit length"),
            (dot(&basis_u, &basis_v), "basis vectors are not orthogonal"),
            (dot(&basis_u, &ones), "basis_u is not orthogonal to (1,1,1)"),
            (dot(&basis_v, &ones), "basis_v is not orthogonal to (1,1,1)"),
            (center[0] - center[1], "center is not on the (1,1,1) line"),
            (center[1] - center[2], "center is not on the (1,1,1) line"),
        ];
        for (residual, message) in checks {
            if residual.abs() > BASIS_TOL {
                return Err(Error::Config(format!(
                    "invalid plane embedding: {message} (residual {residual:.3e})"
                )));
            }
        }
        Ok(Self {
            center,
            basis_u,
            basis_v,
        })
    }

    pub fn center(&self) -> [f64; 3] {
        self.center
    }

    pub fn basis_u(&self) -> [f64; 3] {
        self.basis_u
    }

    pub fn basis_v(&self) -> [f64; 3] {
        self.basis_v
    }

    /// Maps a feature pair onto the plane: `center + (p₁−½)·u + (p₂−½)·v`.
    /// Defined for feature pairs only.
    pub fn embed(&self, p: &FeatureVector) -> Result<ObjectiveVector> {
        if p.dim() != 2 {
            return Err(Error::UnsupportedDimension {
                dim: p.dim(),
                context: "the plane embedding is defined for feature pairs",
            });
        }
        let a = p.values()[0] - 0.5;
        let b = p.values()[1] - 0.5;
        let values = (0..3)
            .map(|i| self.center[i] + a * self.basis_u[i] + b * self.basis_v[i])
            .collect();
        Ok(ObjectiveVector::new(values))
    }
}

/// Projects `p` to `(p₁,…,p_d, −p₁,…,−p_d)`. No two distinct images weakly
/// dominate each other under the minimization order: a coordinate difference
/// that favors one vector in the first half favors the other in the second.
pub fn dimension_double(p: &FeatureVector) -> ObjectiveVector {
    let mut values = Vec::with_capacity(p.dim() * 2);
    values.extend_from_slice(p.values());
    values.extend(p.values().iter().map(|&x| -x));
    ObjectiveVector::new(values)
}

/// Default margin below the extreme values of a transformed reference set,
/// keeping boundary populations strictly dominant over the reference point.
pub const DEFAULT_REFERENCE_MARGIN: f64 = 1e-6;

/// Componentwise minimum over a transformed reference set, lowered by
/// `margin` in every coordinate: the maximization-oriented hypervolume
/// reference point. Every transformed population point weakly dominates it.
pub fn derive_reference_point(refset: &[ObjectiveVector], margin: f64) -> Result<ObjectiveVector> {
    let first = refset
        .first()
        .ok_or_else(|| Error::Config("cannot derive a reference point from an empty set".into()))?;
    if !margin.is_finite() || margin < 0.0 {
        return Err(Error::Config(format!(
            "reference point margin {margin} must be non-negative"
        )));
    }
    let mut mins = first.values().to_vec();
    for p in &refset[1..] {
        if p.dim() != mins.len() {
            return Err(Error::DimensionMismatch {
                expected: mins.len(),
                actual: p.dim(),
            });
        }
        for (m, &x) in mins.iter_mut().zip(p.values()) {
            if x < *m {
                *m = x;
            }
        }
    }
    for m in &mut mins {
        *m -= margin;
    }
    Ok(ObjectiveVector::new(mins))
}

/// Objective-space lift applied to feature vectors ahead of indicator
/// evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Transform {
    /// Use normalized features as objective vectors unchanged.
    Identity,
    /// Lift feature pairs onto the 3-space plane.
    PlaneEmbed(PlaneEmbedding),
    /// Mirror features into twice the dimensions via [`dimension_double`].
    DimensionDouble,
}

impl Transform {
    pub fn apply(&self, p: &FeatureVector) -> Result<ObjectiveVector> {
        match self {
            Transform::Identity => Ok(ObjectiveVector::new(p.values().to_vec())),
            Transform::PlaneEmbed(embedding) => embedding.embed(p),
            Transform::DimensionDouble => Ok(dimension_double(p)),
        }
    }

    pub fn apply_all(&self, points: &[FeatureVector]) -> Result<Vec<ObjectiveVector>> {
        points.iter().map(|p| self.apply(p)).collect()
    }
}
