//! Property tests for the transforms and indicators.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use edo_core::indicators::oracles;
use edo_core::{
    dimension_double, hypervolume, igd, star_discrepancy, FeatureBounds, FeatureVector,
    ObjectiveVector, Orientation, PlaneEmbedding, ReferenceSet,
};

fn fv(values: &[f64]) -> FeatureVector {
    FeatureVector::from_unit(values.to_vec()).unwrap()
}

fn ov(values: &[f64]) -> ObjectiveVector {
    ObjectiveVector::new(values.to_vec())
}

/// Neither of two vectors is componentwise ≤ with a strict improvement
/// somewhere (minimization order).
fn mutually_non_dominated(a: &[f64], b: &[f64]) -> bool {
    let a_wins = a.iter().zip(b).any(|(x, y)| x < y);
    let b_wins = a.iter().zip(b).any(|(x, y)| x > y);
    a_wins && b_wins
}

#[test]
fn plane_embedding_invariants_over_random_pairs() {
    let emb = PlaneEmbedding::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(0xB001);
    let target_sum = 3.0 * 2f64.sqrt() / 4.0;
    for _ in 0..1_000 {
        let a = fv(&[rng.gen(), rng.gen()]);
        let b = fv(&[rng.gen(), rng.gen()]);
        let ia = emb.embed(&a).unwrap();
        let ib = emb.embed(&b).unwrap();
        if a != b {
            assert!(mutually_non_dominated(ia.values(), ib.values()));
        }
        let feature_dist = a
            .values()
            .iter()
            .zip(b.values())
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt();
        let image_dist = ia
            .values()
            .iter()
            .zip(ib.values())
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt();
        assert!((feature_dist - image_dist).abs() < 1e-9);
        for image in [&ia, &ib] {
            let sum: f64 = image.values().iter().sum();
            assert!((sum - target_sum).abs() < 1e-9);
        }
    }
}

#[test]
fn dimension_doubling_is_injective_and_non_dominating() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xB002);
    for _ in 0..1_000 {
        let a = fv(&[rng.gen(), rng.gen(), rng.gen()]);
        let b = fv(&[rng.gen(), rng.gen(), rng.gen()]);
        let da = dimension_double(&a);
        let db = dimension_double(&b);
        if a != b {
            assert_ne!(da, db);
            assert!(mutually_non_dominated(da.values(), db.values()));
        }
    }
}

proptest! {
    #[test]
    fn normalization_is_idempotent_on_unit_bounds(values in prop::collection::vec(0.0f64..=1.0, 1..4)) {
        let bounds = FeatureBounds::unit(values.len());
        let once = bounds.normalize(&values).unwrap();
        let twice = bounds.normalize(once.values()).unwrap();
        prop_assert_eq!(once.values(), twice.values());
    }

    #[test]
    fn doubled_vectors_mirror_their_negation(values in prop::collection::vec(0.0f64..=1.0, 2..4)) {
        let doubled = dimension_double(&fv(&values));
        let d = values.len();
        for i in 0..d {
            prop_assert_eq!(doubled.values()[d + i], -doubled.values()[i]);
        }
    }
}

fn random_point_set(
    rng: &mut ChaCha8Rng,
    n: usize,
    dim: usize,
    orientation: Orientation,
    reference: &[f64],
) -> Vec<ObjectiveVector> {
    (0..n)
        .map(|_| {
            let values = reference
                .iter()
                .map(|&r| {
                    let offset = 0.05 + rng.gen::<f64>();
                    match orientation {
                        Orientation::Maximize => r + offset,
                        Orientation::Minimize => r - offset,
                    }
                })
                .take(dim)
                .collect();
            ObjectiveVector::new(values)
        })
        .collect()
}

#[test]
fn hypervolume_matches_inclusion_exclusion_on_random_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xB003);
    for &dim in &[2usize, 3, 4, 6] {
        for &orientation in &[Orientation::Maximize, Orientation::Minimize] {
            for _ in 0..15 {
                let reference: Vec<f64> =
                    (0..dim).map(|_| rng.gen::<f64>() - 0.5).collect();
                let reference = ObjectiveVector::new(reference);
                let n = rng.gen_range(1..=8);
                let points =
                    random_point_set(&mut rng, n, dim, orientation, reference.values());
                let fast = hypervolume(&points, &reference, orientation).unwrap();
                let exact =
                    oracles::hypervolume_inclusion_exclusion(&points, &reference, orientation)
                        .unwrap();
                assert!(
                    (fast - exact).abs() <= 1e-9,
                    "dim {dim}: {fast} vs oracle {exact}"
                );
            }
        }
    }
}

#[test]
fn hypervolume_is_monotone_under_insertion() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xB004);
    let reference = ObjectiveVector::new(vec![0.0; 3]);
    for _ in 0..50 {
        let mut points =
            random_point_set(&mut rng, 5, 3, Orientation::Maximize, reference.values());
        let before = hypervolume(&points, &reference, Orientation::Maximize).unwrap();
        points.extend(random_point_set(
            &mut rng,
            1,
            3,
            Orientation::Maximize,
            reference.values(),
        ));
        let after = hypervolume(&points, &reference, Orientation::Maximize).unwrap();
        assert!(after >= before - 1e-12);
    }
}

#[test]
fn igd_detects_exact_coverage_and_insertion_monotonicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xB005);
    for _ in 0..50 {
        let reference: Vec<ObjectiveVector> = (0..rng.gen_range(1..20))
            .map(|_| ov(&[rng.gen(), rng.gen()]))
            .collect();
        // covering set: the reference itself plus extras → IGD is exactly 0
        let mut covering = reference.clone();
        covering.push(ov(&[rng.gen(), rng.gen()]));
        assert_eq!(igd(&reference, &covering).unwrap(), 0.0);

        let mut partial = vec![ov(&[rng.gen(), rng.gen()])];
        let before = igd(&reference, &partial).unwrap();
        assert!(before > 0.0 || reference.iter().any(|r| r == &partial[0]));
        partial.push(ov(&[rng.gen(), rng.gen()]));
        let after = igd(&reference, &partial).unwrap();
        assert!(after <= before + 1e-15);
    }
}

#[test]
fn eps_first_element_is_the_scalar_alpha() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xB006);
    for _ in 0..100 {
        let reference: Vec<ObjectiveVector> = (0..rng.gen_range(1..6))
            .map(|_| ov(&[rng.gen(), rng.gen(), rng.gen()]))
            .collect();
        let solutions: Vec<ObjectiveVector> = (0..rng.gen_range(1..6))
            .map(|_| ov(&[rng.gen(), rng.gen(), rng.gen()]))
            .collect();
        let sequence = edo_core::eps_sequence(&reference, &solutions).unwrap();
        // α(R,S) = max over r of min over s of max-coordinate excess
        let alpha = reference
            .iter()
            .map(|r| {
                solutions
                    .iter()
                    .map(|s| {
                        s.values()
                            .iter()
                            .zip(r.values())
                            .map(|(sv, rv)| sv - rv)
                            .fold(f64::NEG_INFINITY, f64::max)
                    })
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(sequence.first(), alpha);
    }
}

#[test]
fn eps_sequences_never_worsen_when_solutions_are_added() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xB007);
    for _ in 0..50 {
        let reference: Vec<ObjectiveVector> = (0..5)
            .map(|_| ov(&[rng.gen(), rng.gen()]))
            .collect();
        let mut solutions = vec![ov(&[rng.gen(), rng.gen()])];
        let before = edo_core::eps_sequence(&reference, &solutions).unwrap();
        solutions.push(ov(&[rng.gen(), rng.gen()]));
        let after = edo_core::eps_sequence(&reference, &solutions).unwrap();
        let ordering = edo_core::eps_compare(&after, &before).unwrap();
        assert_ne!(ordering, std::cmp::Ordering::Greater);
    }
}

#[test]
fn star_discrepancy_of_the_scaled_11_grid_matches_the_scan_oracle() {
    let grid = ReferenceSet::grid(2, 11).unwrap();
    let points: Vec<FeatureVector> = grid
        .points()
        .iter()
        .map(|p| FeatureVector::from_unit(p.values().to_vec()).unwrap())
        .collect();
    // 121 points exceed the exactness budget; use a thinned variant instead:
    // every second grid row/column is still a regular grid on [0,1]².
    let thinned: Vec<FeatureVector> = points
        .iter()
        .filter(|p| {
            let on_coarse = |x: f64| (x * 10.0).round() as usize % 2 == 0;
            on_coarse(p.values()[0]) && on_coarse(p.values()[1])
        })
        .cloned()
        .collect();
    assert_eq!(thinned.len(), 36);
    let exact = star_discrepancy(&thinned).unwrap();
    let scan = oracles::star_discrepancy_scan(&thinned, 400).unwrap();
    assert!(scan <= exact + 1e-12);
    assert!(exact <= scan + 2.0 / 400.0 + 1e-12);
    assert!((0.0..=1.0).contains(&exact));
}
