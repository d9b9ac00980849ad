//! Inverted generational distance.

use crate::error::{Error, Result};
use crate::feature_space::ObjectiveVector;

/// Mean Euclidean distance from each reference point to its nearest solution.
/// Zero exactly when every reference point has an exact match in `solutions`.
pub fn igd(reference: &[ObjectiveVector], solutions: &[ObjectiveVector]) -> Result<f64> {
    if reference.is_empty() {
        return Err(Error::Domain("IGD reference set is empty".into()));
    }
    if solutions.is_empty() {
        return Err(Error::Domain("IGD solution set is empty".into()));
    }
    let dim = reference[0].dim();
    for p in reference.iter().chain(solutions) {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: p.dim(),
            });
        }
    }
    let mut total = 0.0;
    for r in reference {
        let mut best = f64::INFINITY;
        for s in solutions {
            let mut d2 = 0.0;
            for (&a, &b) in r.values().iter().zip(s.values()) {
                let diff = a - b;
                d2 += diff * diff;
            }
            if d2 < best {
                best = d2;
            }
        }
        total += best.sqrt();
    }
    Ok(total / reference.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ov(values: &[f64]) -> ObjectiveVector {
        ObjectiveVector::new(values.to_vec())
    }

    #[test]
    fn identical_sets_have_zero_distance() {
        let set = [ov(&[0.1, 0.9]), ov(&[0.4, 0.2]), ov(&[0.8, 0.8])];
        assert_eq!(igd(&set, &set).unwrap(), 0.0);
    }

    #[test]
    fn single_solution_against_two_references() {
        let reference = [ov(&[0.0, 0.0]), ov(&[1.0, 1.0])];
        let solutions = [ov(&[0.0, 0.0])];
        let v = igd(&reference, &solutions).unwrap();
        assert!((v - 2f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn three_by_three_grid_against_its_center() {
        let mut reference = Vec::new();
        for &x in &[0.0, 0.5, 1.0] {
            for &y in &[0.0, 0.5, 1.0] {
                reference.push(ov(&[x, y]));
            }
        }
        let solutions = [ov(&[0.5, 0.5])];
        let v = igd(&reference, &solutions).unwrap();
        let expected = (2.0 * 2f64.sqrt() + 2.0) / 9.0;
        assert!((v - expected).abs() < 1e-12);
    }

    #[test]
    fn empty_inputs_are_rejected() {
        let set = [ov(&[0.0, 0.0])];
        assert!(igd(&[], &set).is_err());
        assert!(igd(&set, &[]).is_err());
    }

    #[test]
    fn adding_a_solution_never_increases_the_value() {
        let reference = [ov(&[0.0, 0.0]), ov(&[0.5, 0.5]), ov(&[1.0, 1.0])];
        let base = [ov(&[0.2, 0.3])];
        let before = igd(&reference, &base).unwrap();
        let extended = [ov(&[0.2, 0.3]), ov(&[0.9, 0.9])];
        let after = igd(&reference, &extended).unwrap();
        assert!(after <= before);
    }
}
