//! Regular grid reference sets in the unit square and cube.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feature_space::{FeatureVector, ObjectiveVector, Transform};

/// Grid resolution per axis for feature pairs.
pub const GRID_RESOLUTION_2D: usize = 101;
/// Grid resolution per axis for feature triples.
pub const GRID_RESOLUTION_3D: usize = 11;

/// Which space a reference set lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RefSpace {
    UnitSquare,
    UnitCube,
    PlaneEmbedded,
}

/// Finite target set in objective space: the IGD/EPS reference set and the
/// source of the HYP-2D reference point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceSet {
    points: Vec<ObjectiveVector>,
    resolution: usize,
    space: RefSpace,
}

impl ReferenceSet {
    /// Regular grid with `k` values per axis including both endpoints:
    /// coordinates are exactly `i/(k−1)` for `i ∈ {0,…,k−1}`.
    pub fn grid(dim: usize, k: usize) -> Result<Self> {
        if !(2..=3).contains(&dim) {
            return Err(Error::UnsupportedDimension {
                dim,
                context: "reference grids exist for the unit square and cube",
            });
        }
        if k < 2 {
            return Err(Error::Config(format!(
                "grid resolution k = {k} must be at least 2"
            )));
        }
        let axis: Vec<f64> = (0..k).map(|i| i as f64 / (k - 1) as f64).collect();
        let mut points = Vec::with_capacity(k.pow(dim as u32));
        match dim {
            2 => {
                for &x in &axis {
                    for &y in &axis {
                        points.push(ObjectiveVector::new(vec![x, y]));
                    }
                }
            }
            3 => {
                for &x in &axis {
                    for &y in &axis {
                        for &z in &axis {
                            points.push(ObjectiveVector::new(vec![x, y, z]));
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
        let space = if dim == 2 {
            RefSpace::UnitSquare
        } else {
            RefSpace::UnitCube
        };
        Ok(Self {
            points,
            resolution: k,
            space,
        })
    }

    /// The grid resolution used in the experiments: `101²` for pairs, `11³`
    /// for triples.
    pub fn standard(dim: usize) -> Result<Self> {
        match dim {
            2 => Self::grid(2, GRID_RESOLUTION_2D),
            3 => Self::grid(3, GRID_RESOLUTION_3D),
            _ => Err(Error::UnsupportedDimension {
                dim,
                context: "standard grids exist for d = 2 and d = 3",
            }),
        }
    }

    /// Pointwise transform of the set; cardinality is preserved.
    ///
    /// Doubled reference sets are rejected: hypervolume in the doubled space
    /// takes a reference point, and no evenly spread doubled reference set is
    /// defined.
    pub fn transformed(&self, transform: &Transform) -> Result<ReferenceSet> {
        if matches!(transform, Transform::DimensionDouble) {
            return Err(Error::Config(
                "reference sets are not dimension-doubled; use a reference point instead".into(),
            ));
        }
        let space = match transform {
            Transform::Identity => self.space,
            Transform::PlaneEmbed(_) => RefSpace::PlaneEmbedded,
            Transform::DimensionDouble => unreachable!(),
        };
        let points = self
            .points
            .iter()
            .map(|p| {
                let f = FeatureVector::from_unit(p.values().to_vec())?;
                transform.apply(&f)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ReferenceSet {
            points,
            resolution: self.resolution,
            space,
        })
    }

    pub fn points(&self) -> &[ObjectiveVector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn space(&self) -> RefSpace {
        self.space
    }

    /// One point per row, for external plotting.
    pub fn write_csv<W: Write>(&self, mut writer: W) -> Result<()> {
        let dim = self.points.first().map_or(0, |p| p.dim());
        let header: Vec<String> = (1..=dim).map(|i| format!("x{i}")).collect();
        writeln!(writer, "{}", header.join(","))?;
        for p in &self.points {
            let row: Vec<String> = p.values().iter().map(|v| v.to_string()).collect();
            writeln!(writer, "{}", row.join(","))?;
        }
        Ok(())
    }
}
