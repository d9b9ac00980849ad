//! The five diversity measures and their dispatch.
//!
//! Each measure scores a set of normalized feature vectors after an
//! objective-space transform:
//!
//! * `HYP2D` — hypervolume of plane-embedded feature pairs against a
//!   reference point below the embedded grid's extremes (maximize),
//! * `HYP` — hypervolume of dimension-doubled features against the point
//!   `(2,…,2, 1,…,1)`, emphasizing extreme points (maximize),
//! * `IGD` — inverted generational distance to a regular grid (minimize),
//! * `EPS` — lexicographic additive-epsilon sequence against the embedded
//!   grid, feature pairs only (minimize),
//! * `DIS` — exact star discrepancy of the raw normalized features
//!   (minimize).

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feature_space::{
    derive_reference_point, FeatureVector, ObjectiveVector, PlaneEmbedding, Transform,
    DEFAULT_REFERENCE_MARGIN,
};
use crate::refsets::{RefSpace, ReferenceSet};

mod discrepancy;
mod epsilon;
mod hypervolume;
mod igd;
pub mod oracles;

pub use discrepancy::star_discrepancy;
pub use epsilon::{eps_compare, eps_sequence, EpsSequence};
pub use hypervolume::hypervolume;
pub use igd::igd;

/// Which diversity measure drives selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IndicatorKind {
    Hyp2d,
    Hyp,
    Igd,
    Eps,
    Dis,
}

impl fmt::Display for IndicatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            IndicatorKind::Hyp2d => "HYP2D",
            IndicatorKind::Hyp => "HYP",
            IndicatorKind::Igd => "IGD",
            IndicatorKind::Eps => "EPS",
            IndicatorKind::Dis => "DIS",
        };
        f.write_str(name)
    }
}

/// Whether larger or smaller values are better. For [`hypervolume`] this
/// doubles as the dominance side of the reference point: maximization
/// expects points strictly above it, minimization strictly below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    Maximize,
    Minimize,
}

/// Reference data an indicator needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Reference {
    Point(ObjectiveVector),
    Set(Vec<ObjectiveVector>),
    None,
}

/// A fully wired diversity measure: kind, transform, and reference data.
/// Constructors enforce the valid combinations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndicatorSpec {
    kind: IndicatorKind,
    transform: Transform,
    reference: Reference,
}

impl IndicatorSpec {
    /// HYP-2D: plane-embedded pairs, maximization hypervolume against the
    /// reference point derived from the embedded grid's extreme values.
    pub fn hyp2d(grid: &ReferenceSet, margin: f64) -> Result<Self> {
        if grid.space() != RefSpace::UnitSquare {
            return Err(Error::Config(
                "HYP2D needs a unit-square reference grid (feature pairs only)".into(),
            ));
        }
        let transform = Transform::PlaneEmbed(PlaneEmbedding::standard());
        let embedded = grid.transformed(&transform)?;
        let point = derive_reference_point(embedded.points(), margin)?;
        Ok(Self {
            kind: IndicatorKind::Hyp2d,
            transform,
            reference: Reference::Point(point),
        })
    }

    /// HYP: dimension-doubled features against the reference point
    /// `(2^d, 1^d)` — first `d` coordinates 2, last `d` coordinates 1,
    /// minimization side.
    pub fn hyp(dim: usize) -> Result<Self> {
        if !(2..=3).contains(&dim) {
            return Err(Error::UnsupportedDimension {
                dim,
                context: "HYP drives feature pairs and triples",
            });
        }
        let mut point = vec![2.0; dim];
        point.extend(std::iter::repeat(1.0).take(dim));
        Ok(Self {
            kind: IndicatorKind::Hyp,
            transform: Transform::DimensionDouble,
            reference: Reference::Point(ObjectiveVector::new(point)),
        })
    }

    /// IGD against a regular grid on the raw normalized features.
    pub fn igd(grid: ReferenceSet) -> Result<Self> {
        if grid.space() == RefSpace::PlaneEmbedded {
            return Err(Error::Config(
                "IGD uses the untransformed unit-space grid".into(),
            ));
        }
        Ok(Self {
            kind: IndicatorKind::Igd,
            transform: Transform::Identity,
            reference: Reference::Set(grid.points().to_vec()),
        })
    }

    /// IGD against an explicit reference point set (for non-grid targets).
    pub fn igd_with_reference(points: Vec<ObjectiveVector>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Config("IGD reference set must not be empty".into()));
        }
        Ok(Self {
            kind: IndicatorKind::Igd,
            transform: Transform::Identity,
            reference: Reference::Set(points),
        })
    }

    /// EPS: plane-embedded pairs against the embedded grid.
    pub fn eps(grid: &ReferenceSet) -> Result<Self> {
        if grid.space() != RefSpace::UnitSquare {
            return Err(Error::Config(
                "EPS needs a unit-square reference grid (feature pairs only)".into(),
            ));
        }
        let transform = Transform::PlaneEmbed(PlaneEmbedding::standard());
        let embedded = grid.transformed(&transform)?;
        Ok(Self {
            kind: IndicatorKind::Eps,
            transform,
            reference: Reference::Set(embedded.points().to_vec()),
        })
    }

    /// DIS: star discrepancy of the raw normalized features.
    pub fn dis(dim: usize) -> Result<Self> {
        if !(2..=3).contains(&dim) {
            return Err(Error::UnsupportedDimension {
                dim,
                context: "DIS drives feature pairs and triples",
            });
        }
        Ok(Self {
            kind: IndicatorKind::Dis,
            transform: Transform::Identity,
            reference: Reference::None,
        })
    }

    /// The standard wiring at a given feature dimensionality: grids of 101²
    /// for pairs and 11³ for triples, the default reference-point margin.
    pub fn standard(kind: IndicatorKind, dim: usize) -> Result<Self> {
        match kind {
            IndicatorKind::Hyp2d => {
                if dim != 2 {
                    return Err(Error::UnsupportedDimension {
                        dim,
                        context: "HYP2D drives feature pairs only",
                    });
                }
                Self::hyp2d(&ReferenceSet::standard(2)?, DEFAULT_REFERENCE_MARGIN)
            }
            IndicatorKind::Hyp => Self::hyp(dim),
            IndicatorKind::Igd => Self::igd(ReferenceSet::standard(dim)?),
            IndicatorKind::Eps => {
                if dim != 2 {
                    return Err(Error::UnsupportedDimension {
                        dim,
                        context: "EPS drives feature pairs only",
                    });
                }
                Self::eps(&ReferenceSet::standard(2)?)
            }
            IndicatorKind::Dis => Self::dis(dim),
        }
    }

    pub fn kind(&self) -> IndicatorKind {
        self.kind
    }

    /// The selection orientation: hypervolume variants are maximized, the
    /// distance- and discrepancy-based measures minimized.
    pub fn orientation(&self) -> Orientation {
        match self.kind {
            IndicatorKind::Hyp2d | IndicatorKind::Hyp => Orientation::Maximize,
            IndicatorKind::Igd | IndicatorKind::Eps | IndicatorKind::Dis => Orientation::Minimize,
        }
    }

    pub fn transform(&self) -> &Transform {
        &self.transform
    }

    pub fn reference(&self) -> &Reference {
        &self.reference
    }

    /// Applies the transform to the population features and computes the
    /// measure.
    pub fn evaluate(&self, population: &[FeatureVector]) -> Result<IndicatorValue> {
        if population.is_empty() {
            return Err(Error::Domain(
                "cannot evaluate an indicator on an empty population".into(),
            ));
        }
        match (&self.kind, &self.reference) {
            (IndicatorKind::Hyp2d, Reference::Point(r)) => {
                let objectives = self.transform.apply_all(population)?;
                hypervolume(&objectives, r, Orientation::Maximize).map(IndicatorValue::Scalar)
            }
            (IndicatorKind::Hyp, Reference::Point(r)) => {
                let objectives = self.transform.apply_all(population)?;
                hypervolume(&objectives, r, Orientation::Minimize).map(IndicatorValue::Scalar)
            }
            (IndicatorKind::Igd, Reference::Set(reference)) => {
                let objectives = self.transform.apply_all(population)?;
                igd(reference, &objectives).map(IndicatorValue::Scalar)
            }
            (IndicatorKind::Eps, Reference::Set(reference)) => {
                let objectives = self.transform.apply_all(population)?;
                eps_sequence(reference, &objectives).map(IndicatorValue::Sequence)
            }
            (IndicatorKind::Dis, _) => {
                star_discrepancy(population).map(IndicatorValue::Scalar)
            }
            _ => Err(Error::Config(
                "indicator reference data does not match its kind".into(),
            )),
        }
    }

    /// Compares two values of this indicator; `Ordering::Greater` means `a`
    /// is the better value for selection.
    pub fn compare(&self, a: &IndicatorValue, b: &IndicatorValue) -> Result<Ordering> {
        match (a, b) {
            (IndicatorValue::Sequence(sa), IndicatorValue::Sequence(sb)) => {
                // lexicographically smaller sequences are better
                Ok(eps_compare(sa, sb)?.reverse())
            }
            (IndicatorValue::Scalar(xa), IndicatorValue::Scalar(xb)) => {
                Ok(match self.orientation() {
                    Orientation::Maximize => xa.total_cmp(xb),
                    Orientation::Minimize => xb.total_cmp(xa),
                })
            }
            _ => Err(Error::Domain(
                "cannot compare a scalar indicator value with a sequence".into(),
            )),
        }
    }
}

/// Result of an indicator evaluation: a scalar for HYP/IGD/DIS, the full
/// sorted sequence for EPS.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum IndicatorValue {
    Scalar(f64),
    Sequence(EpsSequence),
}

impl IndicatorValue {
    /// Scalar view: the value itself, or the first (worst) element of an
    /// epsilon sequence.
    pub fn scalar(&self) -> f64 {
        match self {
            IndicatorValue::Scalar(x) => *x,
            IndicatorValue::Sequence(s) => s.first(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(values: &[f64]) -> FeatureVector {
        FeatureVector::from_unit(values.to_vec()).unwrap()
    }

    #[test]
    fn igd_of_the_grid_against_itself_is_zero() {
        let grid = ReferenceSet::grid(2, 101).unwrap();
        let spec = IndicatorSpec::igd(grid.clone()).unwrap();
        let population: Vec<FeatureVector> = grid
            .points()
            .iter()
            .map(|p| FeatureVector::from_unit(p.values().to_vec()).unwrap())
            .collect();
        let value = spec.evaluate(&population).unwrap();
        assert_eq!(value.scalar(), 0.0);
    }

    #[test]
    fn hyp_on_a_singleton_matches_the_box_product() {
        let spec = IndicatorSpec::hyp(2).unwrap();
        let value = spec.evaluate(&[fv(&[0.25, 0.75])]).unwrap();
        assert_eq!(value.scalar(), 4.785_156_25);
    }

    #[test]
    fn dis_matches_the_raw_star_discrepancy() {
        let spec = IndicatorSpec::dis(2).unwrap();
        let population = [fv(&[0.5, 0.5])];
        assert_eq!(spec.evaluate(&population).unwrap().scalar(), 0.75);
    }

    #[test]
    fn hyp2d_reference_point_sits_below_the_embedded_extremes() {
        let grid = ReferenceSet::grid(2, 11).unwrap();
        let spec = IndicatorSpec::hyp2d(&grid, 1e-6).unwrap();
        let Reference::Point(r) = spec.reference() else {
            panic!("HYP2D stores a reference point");
        };
        // exhaustive minimum over the embedded grid, recomputed here
        let embedded = grid
            .transformed(&Transform::PlaneEmbed(PlaneEmbedding::standard()))
            .unwrap();
        for axis in 0..3 {
            let min = embedded
                .points()
                .iter()
                .map(|p| p.values()[axis])
                .fold(f64::INFINITY, f64::min);
            assert!((r.values()[axis] - (min - 1e-6)).abs() < 1e-15);
        }
        // every embedded population point strictly dominates it
        let population = [fv(&[0.0, 0.0]), fv(&[1.0, 1.0]), fv(&[0.3, 0.8])];
        assert!(spec.evaluate(&population).unwrap().scalar() > 0.0);
    }

    #[test]
    fn eps_value_on_matching_population_is_all_zeros() {
        let grid = ReferenceSet::grid(2, 3).unwrap();
        let spec = IndicatorSpec::eps(&grid).unwrap();
        let population: Vec<FeatureVector> = grid
            .points()
            .iter()
            .map(|p| FeatureVector::from_unit(p.values().to_vec()).unwrap())
            .collect();
        let value = spec.evaluate(&population).unwrap();
        let IndicatorValue::Sequence(seq) = &value else {
            panic!("EPS yields a sequence");
        };
        assert_eq!(seq.len(), 9);
        assert!(seq.values().iter().all(|&x| x.abs() < 1e-12));
    }

    #[test]
    fn comparison_respects_orientation() {
        let hyp = IndicatorSpec::hyp(2).unwrap();
        let a = IndicatorValue::Scalar(2.0);
        let b = IndicatorValue::Scalar(1.0);
        assert_eq!(hyp.compare(&a, &b).unwrap(), Ordering::Greater);
        let dis = IndicatorSpec::dis(2).unwrap();
        assert_eq!(dis.compare(&a, &b).unwrap(), Ordering::Less);
    }

    #[test]
    fn pair_only_indicators_reject_triples() {
        assert!(IndicatorSpec::standard(IndicatorKind::Hyp2d, 3).is_err());
        assert!(IndicatorSpec::standard(IndicatorKind::Eps, 3).is_err());
        assert!(IndicatorSpec::standard(IndicatorKind::Igd, 3).is_ok());
    }

    #[test]
    fn empty_population_is_rejected() {
        let spec = IndicatorSpec::dis(2).unwrap();
        assert!(spec.evaluate(&[]).is_err());
    }
}
