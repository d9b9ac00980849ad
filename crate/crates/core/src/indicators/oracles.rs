//! Independent reference implementations used to cross-check the indicator
//! algorithms. These deliberately share no code with the main paths: each is
//! the most literal evaluation of its defining formula that fits in memory.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::feature_space::{FeatureVector, ObjectiveVector};

use super::epsilon::EpsSequence;
use super::Orientation;

/// Subset budget for the inclusion–exclusion oracle.
pub const MAX_IE_POINTS: usize = 12;
/// Minimum sample count for a meaningful Monte-Carlo estimate.
pub const MIN_MC_SAMPLES: usize = 100_000;

/// Exact union volume by inclusion–exclusion over all non-empty point
/// subsets. Exponential in the point count, hence the budget.
pub fn hypervolume_inclusion_exclusion(
    points: &[ObjectiveVector],
    reference: &ObjectiveVector,
    orientation: Orientation,
) -> Result<f64> {
    if points.len() > MAX_IE_POINTS {
        return Err(Error::Capacity(format!(
            "inclusion-exclusion oracle supports up to {MAX_IE_POINTS} points, got {}",
            points.len()
        )));
    }
    let offsets = oracle_offsets(points, reference, orientation)?;
    let dim = reference.dim();
    let n = offsets.len();
    let mut total = 0.0;
    for mask in 1u32..(1 << n) {
        let mut corner = vec![f64::INFINITY; dim];
        for (i, offset) in offsets.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for (c, &w) in corner.iter_mut().zip(offset) {
                    if w < *c {
                        *c = w;
                    }
                }
            }
        }
        let volume: f64 = corner.iter().product();
        if mask.count_ones() % 2 == 1 {
            total += volume;
        } else {
            total -= volume;
        }
    }
    Ok(total)
}

/// Unbiased union-volume estimate: uniform samples in the bounding box
/// between the reference point and the extreme corner of the point set,
/// scaled by the covered fraction. Deterministic for a fixed seed.
pub fn hypervolume_monte_carlo(
    points: &[ObjectiveVector],
    reference: &ObjectiveVector,
    orientation: Orientation,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    if samples < MIN_MC_SAMPLES {
        return Err(Error::Config(format!(
            "Monte-Carlo oracle needs at least {MIN_MC_SAMPLES} samples, got {samples}"
        )));
    }
    let offsets = oracle_offsets(points, reference, orientation)?;
    if offsets.is_empty() {
        return Ok(0.0);
    }
    let dim = reference.dim();
    let mut extreme = vec![0.0f64; dim];
    for offset in &offsets {
        for (e, &w) in extreme.iter_mut().zip(offset) {
            if w > *e {
                *e = w;
            }
        }
    }
    let box_volume: f64 = extreme.iter().product();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut covered = 0usize;
    let mut draw = vec![0.0f64; dim];
    for _ in 0..samples {
        for (x, &e) in draw.iter_mut().zip(&extreme) {
            *x = rng.gen::<f64>() * e;
        }
        if offsets
            .iter()
            .any(|w| draw.iter().zip(w).all(|(&x, &wc)| x < wc))
        {
            covered += 1;
        }
    }
    Ok(box_volume * covered as f64 / samples as f64)
}

fn oracle_offsets(
    points: &[ObjectiveVector],
    reference: &ObjectiveVector,
    orientation: Orientation,
) -> Result<Vec<Vec<f64>>> {
    let dim = reference.dim();
    let mut offsets = Vec::with_capacity(points.len());
    for (index, p) in points.iter().enumerate() {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: p.dim(),
            });
        }
        let mut w = Vec::with_capacity(dim);
        for (coordinate, (&s, &r)) in p.values().iter().zip(reference.values()).enumerate() {
            let offset = match orientation {
                Orientation::Maximize => s - r,
                Orientation::Minimize => r - s,
            };
            if !(offset > 0.0) {
                return Err(Error::ReferenceViolation {
                    index,
                    coordinate,
                    value: s,
                    reference: r,
                });
            }
            w.push(offset);
        }
        offsets.push(w);
    }
    Ok(offsets)
}

/// IGD by the literal double loop over the defining formula.
pub fn igd_naive(reference: &[ObjectiveVector], solutions: &[ObjectiveVector]) -> Result<f64> {
    if reference.is_empty() || solutions.is_empty() {
        return Err(Error::Domain("IGD oracle needs non-empty sets".into()));
    }
    let mut sum = 0.0;
    for r in reference {
        let mut nearest = f64::INFINITY;
        for s in solutions {
            let d = r
                .values()
                .iter()
                .zip(s.values())
                .map(|(&a, &b)| (a - b).powi(2))
                .sum::<f64>()
                .sqrt();
            if d < nearest {
                nearest = d;
            }
        }
        sum += nearest;
    }
    Ok(sum / reference.len() as f64)
}

/// Epsilon sequence by the literal triple loop over r, s, and coordinates.
pub fn eps_sequence_naive(
    reference: &[ObjectiveVector],
    solutions: &[ObjectiveVector],
) -> Result<EpsSequence> {
    if reference.is_empty() || solutions.is_empty() {
        return Err(Error::Domain("EPS oracle needs non-empty sets".into()));
    }
    let mut alphas = Vec::with_capacity(reference.len());
    for r in reference {
        let mut alpha = f64::INFINITY;
        for s in solutions {
            let mut excess = f64::NEG_INFINITY;
            for i in 0..r.dim() {
                excess = excess.max(s.values()[i] - r.values()[i]);
            }
            alpha = alpha.min(excess);
        }
        alphas.push(alpha);
    }
    alphas.sort_unstable_by(|a, b| b.total_cmp(a));
    Ok(EpsSequence::from_sorted(alphas))
}

/// Star-discrepancy lower bound by a dense corner scan: corners `(i+1)/m`
/// per axis. The exact value exceeds the scan by at most `d/m`.
pub fn star_discrepancy_scan(points: &[FeatureVector], resolution: usize) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::Domain("scan oracle needs a non-empty set".into()));
    }
    let dim = points[0].dim();
    if !(1..=3).contains(&dim) {
        return Err(Error::UnsupportedDimension {
            dim,
            context: "scan oracle supports d ≤ 3",
        });
    }
    let axis: Vec<f64> = (0..resolution)
        .map(|i| (i + 1) as f64 / resolution as f64)
        .collect();
    let n = points.len() as f64;
    let mut worst = 0.0f64;
    let mut score = |corner: &[f64]| {
        let volume: f64 = corner.iter().product();
        let mut closed = 0u32;
        let mut open = 0u32;
        for p in points {
            let le = p.values().iter().zip(corner).all(|(&x, &q)| x <= q);
            let lt = p.values().iter().zip(corner).all(|(&x, &q)| x < q);
            closed += le as u32;
            open += lt as u32;
        }
        worst = worst
            .max(closed as f64 / n - volume)
            .max(volume - open as f64 / n);
    };
    match dim {
        1 => {
            for &a in &axis {
                score(&[a]);
            }
        }
        2 => {
            for &a in &axis {
                for &b in &axis {
                    score(&[a, b]);
                }
            }
        }
        3 => {
            for &a in &axis {
                for &b in &axis {
                    for &c in &axis {
                        score(&[a, b, c]);
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    Ok(worst)
}
