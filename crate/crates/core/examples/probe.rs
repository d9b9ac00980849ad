use edo_core::ea::{run, EvolutionConfig, InitStrategy, QualityGate};
use edo_core::vector::{VectorDomain, VectorGenotype};
use edo_core::{FeatureVector, IndicatorKind, IndicatorSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn main() {
    let domain = VectorDomain::new(2).unwrap();
    let dis = IndicatorSpec::standard(IndicatorKind::Dis, 2).unwrap();
    let seeds: Vec<u64> = (0..10).map(|i| 1000 + i).collect();
    let mut rand_dis = Vec::new();
    for &seed in &seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let features: Vec<FeatureVector> = (0..20)
            .map(|_| FeatureVector::from_unit(vec![rng.gen(), rng.gen()]).unwrap()).collect();
        rand_dis.push(dis.evaluate(&features).unwrap().scalar());
    }
    let t0 = Instant::now();
    let mut wins = 0;
    let mut vals = Vec::new();
    for (i, &seed) in seeds.iter().enumerate() {
        let config = EvolutionConfig::<VectorGenotype> {
            mu: 20, lambda: 1, generations: 500, seed,
            indicator: IndicatorSpec::standard(IndicatorKind::Hyp2d, 2).unwrap(),
            gate: QualityGate::unconstrained(),
            init: InitStrategy::random_accept(),
        };
        let report = run(&config, &domain).unwrap();
        let features: Vec<FeatureVector> = report.final_population.iter().map(|m| m.features.clone()).collect();
        let d = dis.evaluate(&features).unwrap().scalar();
        if d < rand_dis[i] { wins += 1; }
        vals.push((d * 1000.0).round() / 1000.0);
    }
    println!("gens 500 driver HYP2D: DIS {:?} wins {}/10 in {:.1?}", vals, wins, t0.elapsed());
}
