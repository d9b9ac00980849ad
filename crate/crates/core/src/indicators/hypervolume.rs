//! Exact hypervolume via a dimension-general exclusive-contribution
//! recursion (WFG style): the union volume is the sum over points of the box
//! volume to the reference point minus the hypervolume of the point's
//! limited set. Works for any dimension up to the cap, which the doubled
//! feature space needs (d up to 6).

use crate::error::{Error, Result};
use crate::feature_space::ObjectiveVector;

use super::Orientation;

/// Dimension cap for the exact recursion.
pub const MAX_OBJECTIVES: usize = 6;
/// Point-count cap.
pub const MAX_POINTS: usize = 10_000;

/// Lebesgue measure of the union of axis-aligned boxes spanned between each
/// point and `reference`.
///
/// With `Orientation::Maximize` every point must lie strictly above the
/// reference point in all coordinates; with `Orientation::Minimize` strictly
/// below. The result is independent of point order and duplicates contribute
/// once.
pub fn hypervolume(
    points: &[ObjectiveVector],
    reference: &ObjectiveVector,
    orientation: Orientation,
) -> Result<f64> {
    let dim = reference.dim();
    if dim > MAX_OBJECTIVES {
        return Err(Error::Capacity(format!(
            "hypervolume supports up to {MAX_OBJECTIVES} objectives, got {dim}"
        )));
    }
    if points.len() > MAX_POINTS {
        return Err(Error::Capacity(format!(
            "hypervolume supports up to {MAX_POINTS} points, got {}",
            points.len()
        )));
    }
    let offsets = to_offsets(points, reference, orientation)?;
    Ok(union_volume(offsets))
}

/// Canonical form: strictly positive offsets from the reference point, so the
/// volume is that of `∪ [0, w]` regardless of orientation.
fn to_offsets(
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
            if !(offset > 0.0) || !offset.is_finite() {
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

/// Volume of `∪ [0, w]` over strictly positive corners `w`.
fn union_volume(mut corners: Vec<Vec<f64>>) -> f64 {
    retain_maxima(&mut corners);
    match corners.len() {
        0 => 0.0,
        1 => box_volume(&corners[0]),
        2 => {
            let overlap: Vec<f64> = corners[0]
                .iter()
                .zip(&corners[1])
                .map(|(&a, &b)| a.min(b))
                .collect();
            box_volume(&corners[0]) + box_volume(&corners[1]) - box_volume(&overlap)
        }
        _ => {
            // Largest boxes first keeps the limited sets shallow.
            corners.sort_unstable_by(|a, b| b[0].total_cmp(&a[0]));
            (0..corners.len())
                .map(|i| exclusive_volume(&corners[i], &corners[i + 1..]))
                .sum()
        }
    }
}

/// Volume covered by `corner` and no later point: its box minus the union of
/// the boxes clipped to it.
fn exclusive_volume(corner: &[f64], rest: &[Vec<f64>]) -> f64 {
    let limited: Vec<Vec<f64>> = rest
        .iter()
        .map(|q| q.iter().zip(corner).map(|(&qc, &pc)| qc.min(pc)).collect())
        .collect();
    box_volume(corner) - union_volume(limited)
}

fn box_volume(corner: &[f64]) -> f64 {
    corner.iter().product()
}

/// Drops corners whose box is contained in another corner's box; exactly one
/// copy of each duplicate survives.
fn retain_maxima(corners: &mut Vec<Vec<f64>>) {
    let n = corners.len();
    let mut keep = vec![true; n];
    for j in 0..n {
        for i in 0..n {
            if i == j || !keep[i] {
                continue;
            }
            let contained = corners[j]
                .iter()
                .zip(&corners[i])
                .all(|(&a, &b)| a <= b);
            if contained && (corners[i] != corners[j] || i < j) {
                keep[j] = false;
                break;
            }
        }
    }
    let mut it = keep.iter();
    corners.retain(|_| *it.next().unwrap());
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ov(values: &[f64]) -> ObjectiveVector {
        ObjectiveVector::new(values.to_vec())
    }

    #[test]
    fn two_boxes_overlap_by_inclusion_exclusion() {
        let points = [ov(&[1.0, 2.0]), ov(&[2.0, 1.0])];
        let reference = ov(&[0.0, 0.0]);
        let hv = hypervolume(&points, &reference, Orientation::Maximize).unwrap();
        assert_eq!(hv, 3.0);
    }

    #[test]
    fn single_doubled_point_is_a_box_product() {
        // (0.25, 0.75) doubled, reference (2,2,1,1), minimization side.
        let points = [ov(&[0.25, 0.75, -0.25, -0.75])];
        let reference = ov(&[2.0, 2.0, 1.0, 1.0]);
        let hv = hypervolume(&points, &reference, Orientation::Minimize).unwrap();
        assert_eq!(hv, 4.785_156_25);
    }

    #[test]
    fn doubled_antipodal_pair_covers_seven() {
        let points = [ov(&[0.0, 1.0, 0.0, -1.0]), ov(&[1.0, 0.0, -1.0, 0.0])];
        let reference = ov(&[2.0, 2.0, 1.0, 1.0]);
        let hv = hypervolume(&points, &reference, Orientation::Minimize).unwrap();
        assert_eq!(hv, 7.0);
    }

    #[test]
    fn duplicates_and_order_do_not_change_the_value() {
        let a = ov(&[1.0, 2.0]);
        let b = ov(&[2.0, 1.0]);
        let reference = ov(&[0.0, 0.0]);
        let forward = hypervolume(
            &[a.clone(), b.clone()],
            &reference,
            Orientation::Maximize,
        )
        .unwrap();
        let shuffled = hypervolume(
            &[b.clone(), a.clone(), b.clone(), a.clone()],
            &reference,
            Orientation::Maximize,
        )
        .unwrap();
        assert_eq!(forward, shuffled);
    }

    #[test]
    fn dominated_points_contribute_nothing() {
        let reference = ov(&[0.0, 0.0]);
        let base = hypervolume(&[ov(&[2.0, 2.0])], &reference, Orientation::Maximize).unwrap();
        let with_inner = hypervolume(
            &[ov(&[2.0, 2.0]), ov(&[1.0, 1.0])],
            &reference,
            Orientation::Maximize,
        )
        .unwrap();
        assert_eq!(base, with_inner);
    }

    #[test]
    fn point_on_the_wrong_side_is_identified() {
        let points = [ov(&[1.0, 2.0]), ov(&[2.0, -1.0])];
        let reference = ov(&[0.0, 0.0]);
        let err = hypervolume(&points, &reference, Orientation::Maximize).unwrap_err();
        match err {
            Error::ReferenceViolation {
                index, coordinate, ..
            } => {
                assert_eq!((index, coordinate), (1, 1));
            }
            other => panic!("unexpected error {other:?}"),
        }
        // a point exactly on the reference boundary also violates strictness
        let touching = [ov(&[0.0, 1.0])];
        assert!(hypervolume(&touching, &reference, Orientation::Maximize).is_err());
    }

    #[test]
    fn dimension_cap_is_enforced() {
        let points = [ov(&[1.0; 7])];
        let reference = ov(&[0.0; 7]);
        assert!(matches!(
            hypervolume(&points, &reference, Orientation::Maximize),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn empty_set_covers_nothing() {
        let reference = ov(&[0.0, 0.0]);
        let hv = hypervolume(&[], &reference, Orientation::Maximize).unwrap();
        assert_eq!(hv, 0.0);
    }
}
