//! Additive epsilon approximation as a sorted per-reference sequence.
//!
//! The scalar indicator α(R,S) only reflects the single worst-approximated
//! reference point, which is too coarse to guide a search. Instead the
//! sequence of all per-reference approximations, sorted non-increasingly, is
//! compared lexicographically; its first element is the scalar α(R,S).

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feature_space::ObjectiveVector;

/// Per-reference additive approximations `α({r},S)` sorted non-increasingly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsSequence {
    values: Vec<f64>,
}

impl EpsSequence {
    pub(crate) fn from_sorted(values: Vec<f64>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] >= w[1]));
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The worst approximation: the scalar α(R,S).
    pub fn first(&self) -> f64 {
        self.values[0]
    }
}

/// For each `r ∈ R` the smallest worst-coordinate excess over all solutions,
/// `α({r},S) = min_{s∈S} max_i (s_i − r_i)` under the minimization
/// convention, returned sorted non-increasingly.
pub fn eps_sequence(
    reference: &[ObjectiveVector],
    solutions: &[ObjectiveVector],
) -> Result<EpsSequence> {
    if reference.is_empty() {
        return Err(Error::Domain("EPS reference set is empty".into()));
    }
    if solutions.is_empty() {
        return Err(Error::Domain("EPS solution set is empty".into()));
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
    let mut values: Vec<f64> = reference
        .iter()
        .map(|r| point_approximation(r, solutions))
        .collect();
    values.sort_unstable_by(|a, b| b.total_cmp(a));
    Ok(EpsSequence { values })
}

fn point_approximation(r: &ObjectiveVector, solutions: &[ObjectiveVector]) -> f64 {
    let mut best = f64::INFINITY;
    for s in solutions {
        let mut worst = f64::NEG_INFINITY;
        for (&sv, &rv) in s.values().iter().zip(r.values()) {
            let excess = sv - rv;
            if excess > worst {
                worst = excess;
            }
        }
        if worst < best {
            best = worst;
        }
    }
    best
}

/// Lexicographic comparison of two sequences; `Ordering::Less` means `a` is
/// the better (smaller) sequence for selection.
pub fn eps_compare(a: &EpsSequence, b: &EpsSequence) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::Domain(format!(
            "epsilon sequences have different lengths: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    for (x, y) in a.values.iter().zip(&b.values) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            other => return Ok(other),
        }
    }
    Ok(Ordering::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ov(values: &[f64]) -> ObjectiveVector {
        ObjectiveVector::new(values.to_vec())
    }

    fn seq(values: &[f64]) -> EpsSequence {
        let mut values = values.to_vec();
        values.sort_unstable_by(|a, b| b.total_cmp(a));
        EpsSequence { values }
    }

    #[test]
    fn non_dominated_set_approximates_itself_exactly() {
        // mutually non-dominated: every coordinate trade-off
        let set = [ov(&[0.0, 1.0]), ov(&[0.5, 0.5]), ov(&[1.0, 0.0])];
        let s = eps_sequence(&set, &set).unwrap();
        assert_eq!(s.values(), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn center_solution_against_diagonal_references() {
        let reference = [ov(&[0.0, 0.0]), ov(&[1.0, 1.0])];
        let solutions = [ov(&[0.5, 0.5])];
        let s = eps_sequence(&reference, &solutions).unwrap();
        assert_eq!(s.values(), &[0.5, -0.5]);
        assert_eq!(s.first(), 0.5);
    }

    #[test]
    fn comparison_is_lexicographic() {
        let a = seq(&[0.5, -0.5]);
        let b = seq(&[0.5, -0.4]);
        assert_eq!(eps_compare(&a, &b).unwrap(), Ordering::Less);
        assert_eq!(eps_compare(&a, &a).unwrap(), Ordering::Equal);
        let c = seq(&[0.4, 0.3]);
        let d = seq(&[0.5, -1.0]);
        assert_eq!(eps_compare(&c, &d).unwrap(), Ordering::Less);
    }

    #[test]
    fn comparison_rejects_length_mismatch() {
        let a = seq(&[0.1]);
        let b = seq(&[0.1, 0.0]);
        assert!(eps_compare(&a, &b).is_err());
    }

    #[test]
    fn empty_inputs_are_rejected() {
        let set = [ov(&[0.0, 0.0])];
        assert!(eps_sequence(&[], &set).is_err());
        assert!(eps_sequence(&set, &[]).is_err());
    }
}
