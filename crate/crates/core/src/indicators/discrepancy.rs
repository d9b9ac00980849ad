//! Exact star discrepancy of small point sets.
//!
//! `D*(P)` is the worst absolute difference between the fraction of points
//! inside an origin-anchored box and the box volume, over all such boxes.
//! The supremum is attained at critical boxes whose upper corners combine
//! point coordinates and 1 per axis; each corner is scored with both the
//! closed (boundary included) and open (boundary excluded) point counts, so
//! the result upper-bounds either single convention.

use crate::error::{Error, Result};
use crate::feature_space::FeatureVector;

/// Exactness budget: `(n+1)^d` critical corners are enumerated.
pub const MAX_POINTS: usize = 64;

/// Exact star discrepancy of points inside `[0,1]^d`, `d ≤ 3`. The value
/// lies in `[0,1]`; lower means more uniform.
pub fn star_discrepancy(points: &[FeatureVector]) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::Domain(
            "star discrepancy of an empty point set".into(),
        ));
    }
    let dim = points[0].dim();
    if !(1..=3).contains(&dim) {
        return Err(Error::UnsupportedDimension {
            dim,
            context: "star discrepancy is computed exactly for d ≤ 3",
        });
    }
    if points.len() > MAX_POINTS {
        return Err(Error::Capacity(format!(
            "exact star discrepancy supports up to {MAX_POINTS} points, got {}",
            points.len()
        )));
    }
    for p in points {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: p.dim(),
            });
        }
    }

    let axes: Vec<Vec<f64>> = (0..dim)
        .map(|j| {
            let mut values: Vec<f64> = points.iter().map(|p| p.values()[j]).collect();
            values.push(1.0);
            values.sort_unstable_by(f64::total_cmp);
            values.dedup();
            values
        })
        .collect();

    let n = points.len() as f64;
    let mut worst = 0.0f64;
    let mut score = |corner: &[f64]| {
        let volume: f64 = corner.iter().product();
        let mut closed = 0u32;
        let mut open = 0u32;
        for p in points {
            let mut inside_closed = true;
            let mut inside_open = true;
            for (&x, &q) in p.values().iter().zip(corner) {
                if x > q {
                    inside_closed = false;
                    inside_open = false;
                    break;
                }
                if x >= q {
                    inside_open = false;
                }
            }
            closed += inside_closed as u32;
            open += inside_open as u32;
        }
        worst = worst
            .max(closed as f64 / n - volume)
            .max(volume - open as f64 / n);
    };

    match dim {
        1 => {
            for &a in &axes[0] {
                score(&[a]);
            }
        }
        2 => {
            for &a in &axes[0] {
                for &b in &axes[1] {
                    score(&[a, b]);
                }
            }
        }
        3 => {
            for &a in &axes[0] {
                for &b in &axes[1] {
                    for &c in &axes[2] {
                        score(&[a, b, c]);
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    Ok(worst)
}
