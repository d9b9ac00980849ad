//! The four TSP instance features with their normalization ranges.
//!
//! All features are invariant under city permutation, and the two
//! distance-based ones scale linearly under uniform scaling of the cities.

use serde::{Deserialize, Serialize};

use super::TspInstance;

/// Feature selector with the per-feature normalization ranges determined
/// from initial experiments on random 50-city instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TspFeature {
    /// f1: mean angle each city forms with its two nearest neighbors.
    AngleMean,
    /// f2: mean distance from the cities to their centroid.
    CentroidMeanDist,
    /// f3: mean nearest-neighbor distance.
    NndsMean,
    /// f4: mean edge length of the minimum spanning tree.
    MstDistsMean,
}

impl TspFeature {
    pub const ALL: [TspFeature; 4] = [
        TspFeature::AngleMean,
        TspFeature::CentroidMeanDist,
        TspFeature::NndsMean,
        TspFeature::MstDistsMean,
    ];

    /// Normalization range (min, max) for this feature.
    pub fn bounds(self) -> (f64, f64) {
        match self {
            TspFeature::AngleMean => (0.70, 2.90),
            TspFeature::CentroidMeanDist => (0.24, 0.70),
            TspFeature::NndsMean => (0.10, 0.70),
            TspFeature::MstDistsMean => (0.06, 0.15),
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            TspFeature::AngleMean => "f1",
            TspFeature::CentroidMeanDist => "f2",
            TspFeature::NndsMean => "f3",
            TspFeature::MstDistsMean => "f4",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.id() == id)
    }

    pub fn compute(self, instance: &TspInstance) -> f64 {
        match self {
            TspFeature::AngleMean => feature_angle_mean(instance),
            TspFeature::CentroidMeanDist => feature_centroid_mean_dist(instance),
            TspFeature::NndsMean => feature_nnds_mean(instance),
            TspFeature::MstDistsMean => feature_mst_dists_mean(instance),
        }
    }
}

/// Mean over cities of the angle (radians, in [0,π]) at the city between
/// rays to its two nearest neighbors. Distance ties break to the lower city
/// index; a zero-length ray (coincident cities) contributes angle 0.
pub fn feature_angle_mean(instance: &TspInstance) -> f64 {
    let cities = instance.cities();
    let n = cities.len();
    let mut total = 0.0;
    for i in 0..n {
        let (a, b) = two_nearest(instance, i);
        total += angle_at(cities[i], cities[a], cities[b]);
    }
    total / n as f64
}

fn two_nearest(instance: &TspInstance, i: usize) -> (usize, usize) {
    let n = instance.n_cities();
    let mut first = (f64::INFINITY, usize::MAX);
    let mut second = (f64::INFINITY, usize::MAX);
    for j in 0..n {
        if j == i {
            continue;
        }
        let d = instance.distance(i, j);
        if d < first.0 {
            second = first;
            first = (d, j);
        } else if d < second.0 {
            second = (d, j);
        }
    }
    (first.1, second.1)
}

fn angle_at(city: [f64; 2], p: [f64; 2], q: [f64; 2]) -> f64 {
    let u = [p[0] - city[0], p[1] - city[1]];
    let v = [q[0] - city[0], q[1] - city[1]];
    let nu = (u[0] * u[0] + u[1] * u[1]).sqrt();
    let nv = (v[0] * v[0] + v[1] * v[1]).sqrt();
    if nu == 0.0 || nv == 0.0 {
        log::warn!("degenerate angle at coincident cities; counting as 0");
        return 0.0;
    }
    let cos = ((u[0] * v[0] + u[1] * v[1]) / (nu * nv)).clamp(-1.0, 1.0);
    cos.acos()
}

/// Mean Euclidean distance from the cities to their centroid.
pub fn feature_centroid_mean_dist(instance: &TspInstance) -> f64 {
    let cities = instance.cities();
    let n = cities.len() as f64;
    let cx = cities.iter().map(|c| c[0]).sum::<f64>() / n;
    let cy = cities.iter().map(|c| c[1]).sum::<f64>() / n;
    cities
        .iter()
        .map(|c| ((c[0] - cx).powi(2) + (c[1] - cy).powi(2)).sqrt())
        .sum::<f64>()
        / n
}

/// Mean over cities of the distance to the nearest other city.
pub fn feature_nnds_mean(instance: &TspInstance) -> f64 {
    let n = instance.n_cities();
    let mut total = 0.0;
    for i in 0..n {
        let mut nearest = f64::INFINITY;
        for j in 0..n {
            if j != i {
                let d = instance.distance(i, j);
                if d < nearest {
                    nearest = d;
                }
            }
        }
        total += nearest;
    }
    total / n as f64
}

/// Mean edge length of the Euclidean minimum spanning tree (dense Prim,
/// lowest-index tie-breaking). The edge-weight multiset of an MST is unique,
/// so tie-breaking never changes the value.
pub fn feature_mst_dists_mean(instance: &TspInstance) -> f64 {
    let n = instance.n_cities();
    let mut in_tree = vec![false; n];
    let mut key = vec![f64::INFINITY; n];
    key[0] = 0.0;
    let mut total = 0.0;
    for _ in 0..n {
        let mut next = usize::MAX;
        for v in 0..n {
            if !in_tree[v] && (next == usize::MAX || key[v] < key[next]) {
                next = v;
            }
        }
        in_tree[next] = true;
        total += key[next];
        for v in 0..n {
            if !in_tree[v] {
                let d = instance.distance(next, v);
                if d < key[v] {
                    key[v] = d;
                }
            }
        }
    }
    total / (n - 1) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn triangle() -> TspInstance {
        TspInstance::new(vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap()
    }

    fn random_instance(n: usize, seed: u64) -> TspInstance {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        TspInstance::new((0..n).map(|_| [rng.gen(), rng.gen()]).collect()).unwrap()
    }

    #[test]
    fn right_triangle_angle_mean_is_pi_over_three() {
        assert!((feature_angle_mean(&triangle()) - PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn collinear_equidistant_points_average_pi_over_three() {
        // ends see both neighbors in the same direction (angle 0), the
        // middle sees opposite directions (angle π)
        let inst = TspInstance::new(vec![[0.0, 0.5], [0.5, 0.5], [1.0, 0.5]]).unwrap();
        assert!((feature_angle_mean(&inst) - PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn triangle_centroid_mean_distance() {
        let expected = (2f64.sqrt() + 2.0 * 5f64.sqrt()) / 9.0;
        assert!((feature_centroid_mean_dist(&triangle()) - expected).abs() < 1e-12);
    }

    #[test]
    fn identical_cities_have_zero_centroid_spread() {
        let inst = TspInstance::new(vec![[0.5, 0.5]; 3]).unwrap();
        assert_eq!(feature_centroid_mean_dist(&inst), 0.0);
    }

    #[test]
    fn unit_square_corners_centroid_distance() {
        let inst =
            TspInstance::new(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        assert!((feature_centroid_mean_dist(&inst) - 2f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn triangle_nearest_neighbor_mean_is_one() {
        assert!((feature_nnds_mean(&triangle()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn triangle_mst_mean_is_one() {
        // forced MST: the two legs of length 1
        assert!((feature_mst_dists_mean(&triangle()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn nnds_matches_a_naive_recomputation() {
        let inst = random_instance(10, 21);
        let n = inst.n_cities();
        let mut expected = 0.0;
        for i in 0..n {
            let mut best = f64::INFINITY;
            for j in 0..n {
                if i != j {
                    best = best.min(inst.distance(i, j));
                }
            }
            expected += best;
        }
        expected /= n as f64;
        assert_eq!(feature_nnds_mean(&inst), expected);
    }

    #[test]
    fn angle_mean_matches_a_naive_recomputation() {
        let inst = random_instance(10, 22);
        let cities = inst.cities();
        let n = cities.len();
        let mut expected = 0.0;
        for i in 0..n {
            // naive: sort all neighbors by (distance, index), take the first two
            let mut neighbors: Vec<(f64, usize)> = (0..n)
                .filter(|&j| j != i)
                .map(|j| (inst.distance(i, j), j))
                .collect();
            neighbors.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            let (p, q) = (cities[neighbors[0].1], cities[neighbors[1].1]);
            let u = [p[0] - cities[i][0], p[1] - cities[i][1]];
            let v = [q[0] - cities[i][0], q[1] - cities[i][1]];
            let dot = u[0] * v[0] + u[1] * v[1];
            let norms = (u[0] * u[0] + u[1] * u[1]).sqrt() * (v[0] * v[0] + v[1] * v[1]).sqrt();
            expected += (dot / norms).clamp(-1.0, 1.0).acos();
        }
        expected /= n as f64;
        assert!((feature_angle_mean(&inst) - expected).abs() < 1e-12);
    }

    #[test]
    fn mst_total_matches_exhaustive_spanning_tree_search() {
        // brute force over all edge subsets of size n−1 at small n
        for seed in 0..4 {
            let inst = random_instance(6, 30 + seed);
            let n = inst.n_cities();
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                .collect();
            let mut best = f64::INFINITY;
            let m = edges.len();
            for mask in 0u32..(1 << m) {
                if mask.count_ones() as usize != n - 1 {
                    continue;
                }
                let mut parent: Vec<usize> = (0..n).collect();
                fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
                    while parent[x] != x {
                        parent[x] = parent[parent[x]];
                        x = parent[x];
                    }
                    x
                }
                let mut weight = 0.0;
                let mut joined = 0;
                for (e, &(i, j)) in edges.iter().enumerate() {
                    if mask & (1 << e) != 0 {
                        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                        if ri != rj {
                            parent[ri] = rj;
                            joined += 1;
                        }
                        weight += inst.distance(i, j);
                    }
                }
                if joined == n - 1 {
                    best = best.min(weight);
                }
            }
            let prim_total = feature_mst_dists_mean(&inst) * (n - 1) as f64;
            assert!(
                (prim_total - best).abs() < 1e-9,
                "prim {prim_total} vs brute force {best}"
            );
        }
    }

    #[test]
    fn features_are_invariant_under_city_permutation() {
        let inst = random_instance(12, 40);
        let mut cities = inst.cities().to_vec();
        cities.reverse();
        cities.swap(2, 7);
        let shuffled = TspInstance::new(cities).unwrap();
        for f in TspFeature::ALL {
            assert!(
                (f.compute(&inst) - f.compute(&shuffled)).abs() < 1e-12,
                "{} changed under permutation",
                f.id()
            );
        }
    }

    #[test]
    fn distance_features_scale_linearly() {
        let inst = random_instance(10, 41);
        let scaled = TspInstance::new(
            inst.cities()
                .iter()
                .map(|c| [c[0] * 0.5, c[1] * 0.5])
                .collect(),
        )
        .unwrap();
        for f in [TspFeature::NndsMean, TspFeature::MstDistsMean] {
            let ratio = f.compute(&scaled) / f.compute(&inst);
            assert!((ratio - 0.5).abs() < 1e-9);
        }
    }

    #[test]
    fn random_50_city_features_fall_inside_the_table_bounds_mostly() {
        // sanity check, not a strict assertion: bounds should rarely clamp
        let mut inside = 0;
        let total = 20 * 4;
        for seed in 0..20 {
            let inst = random_instance(50, 100 + seed);
            for f in TspFeature::ALL {
                let (lo, hi) = f.bounds();
                let v = f.compute(&inst);
                if (lo..=hi).contains(&v) {
                    inside += 1;
                }
            }
        }
        assert!(
            inside as f64 >= 0.75 * total as f64,
            "only {inside}/{total} feature values inside the table bounds"
        );
    }

    #[test]
    fn feature_ids_round_trip() {
        for f in TspFeature::ALL {
            assert_eq!(TspFeature::from_id(f.id()), Some(f));
        }
        assert_eq!(TspFeature::from_id("f9"), None);
    }
}
