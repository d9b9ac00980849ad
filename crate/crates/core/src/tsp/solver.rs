//! Tour construction: randomized first-improvement 2-OPT and the Held–Karp
//! exact dynamic program.

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::{TspInstance, Tour};

/// Minimum gain for a 2-exchange to count as improving; guards against
/// cycling on floating-point noise.
const MIN_GAIN: f64 = 1e-12;

/// City cap for [`exact_opt`]: O(2ⁿ·n²) time, O(2ⁿ·n) memory.
pub const EXACT_OPT_MAX_CITIES: usize = 15;

/// First-improvement 2-OPT from a uniformly random starting permutation:
/// scan pairs (i, j) lexicographically, reverse the segment on the first
/// shortening exchange, repeat until no exchange improves. The returned tour
/// is 2-opt-local.
pub fn two_opt(instance: &TspInstance, rng: &mut ChaCha8Rng) -> Tour {
    let n = instance.n_cities();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    while let Some((i, j)) = first_improving_exchange(&order, instance) {
        order[i + 1..=j].reverse();
    }
    Tour::new(order, instance).expect("2-OPT preserves the permutation")
}

/// The lexicographically first pair (i, j) whose segment reversal shortens
/// the tour, or `None` when the tour is 2-opt-local. Exposed so tests can
/// assert local optimality directly.
pub fn first_improving_exchange(order: &[usize], instance: &TspInstance) -> Option<(usize, usize)> {
    let n = order.len();
    for i in 0..n.saturating_sub(1) {
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue; // the two removed edges would share city order[0]
            }
            let a = order[i];
            let b = order[i + 1];
            let c = order[j];
            let d = order[(j + 1) % n];
            let gain = instance.distance(a, b) + instance.distance(c, d)
                - instance.distance(a, c)
                - instance.distance(b, d);
            if gain > MIN_GAIN {
                return Some((i, j));
            }
        }
    }
    None
}

/// Provably optimal tour via Held–Karp dynamic programming over subsets of
/// cities, paths anchored at city 0.
pub fn exact_opt(instance: &TspInstance) -> Result<Tour> {
    let n = instance.n_cities();
    if n > EXACT_OPT_MAX_CITIES {
        return Err(Error::Capacity(format!(
            "the exact dynamic program supports up to {EXACT_OPT_MAX_CITIES} cities, got {n}; \
             supply an externally computed optimum instead"
        )));
    }
    let m = n - 1; // cities 1..=m, mapped to bits 0..m
    let full = 1usize << m;
    let mut cost = vec![f64::INFINITY; full * m];
    let mut parent = vec![usize::MAX; full * m];
    for last in 0..m {
        cost[(1 << last) * m + last] = instance.distance(0, last + 1);
    }
    for mask in 1..full {
        for last in 0..m {
            if mask & (1 << last) == 0 {
                continue;
            }
            let current = cost[mask * m + last];
            if !current.is_finite() {
                continue;
            }
            for next in 0..m {
                if mask & (1 << next) != 0 {
                    continue;
                }
                let next_mask = mask | (1 << next);
                let candidate = current + instance.distance(last + 1, next + 1);
                if candidate < cost[next_mask * m + next] {
                    cost[next_mask * m + next] = candidate;
                    parent[next_mask * m + next] = last;
                }
            }
        }
    }
    let mut best = (f64::INFINITY, 0usize);
    for last in 0..m {
        let candidate = cost[(full - 1) * m + last] + instance.distance(last + 1, 0);
        if candidate < best.0 {
            best = (candidate, last);
        }
    }
    // walk the parent chain back from the best closing city
    let mut sequence = vec![0usize; m];
    let mut mask = full - 1;
    let mut last = best.1;
    for k in (0..m).rev() {
        sequence[k] = last;
        let p = parent[mask * m + last];
        mask &= !(1 << last);
        if k > 0 {
            last = p;
        }
    }
    let mut order = Vec::with_capacity(n);
    order.push(0);
    order.extend(sequence.into_iter().map(|c| c + 1));
    Tour::new(order, instance)
}
