use dvo_core::baselines::{
    generation_control, gwo_a, inertia_weight, math_optimizer_accelerated,
    math_optimizer_probability, sca_r1, woa_branch, Algorithm, AoaParams, Baseline, BaselineConfig,
    GwoParams, PsoParams, ScaParams, WoaBranch,
};
use dvo_core::benchmarks::{classical_scalable, Catalog};
use dvo_core::record::run_optimizer;
use dvo_core::stochastic::RngStream;
use proptest::prelude::*;

#[test]
fn every_baseline_solves_the_planar_sphere() {
    let problem = classical_scalable("F1", 2).unwrap();
    for alg in Algorithm::ALL {
        let opt = Baseline::new(BaselineConfig::new(alg).with_budget(30, 300));
        for seed in 0..30 {
            let rec = run_optimizer(&opt, &problem, seed, seed).unwrap();
            assert!(
                rec.best_fitness < 1e-1,
                "{alg} seed {seed}: {}",
                rec.best_fitness
            );
        }
    }
}

#[test]
fn runs_are_reproducible_and_well_formed() {
    let cat = Catalog::builtin();
    let problems = [
        cat.lookup("F10", Some(5)).unwrap(),
        cat.lookup("F18", None).unwrap(),
        cat.lookup("welded_beam", None).unwrap(),
    ];
    for alg in Algorithm::ALL {
        let (n, t) = (12, 40);
        let opt = Baseline::new(BaselineConfig::new(alg).with_budget(n, t));
        for p in &problems {
            let a = run_optimizer(&opt, p, 0, 17).unwrap();
            let b = run_optimizer(&opt, p, 0, 17).unwrap();
            assert_eq!(a, b, "{alg} on {}", p.name);
            assert_eq!(a.trace.len(), t);
            assert_eq!(a.evaluations, n * (t + 1));
            assert!(
                a.trace.windows(2).all(|w| w[1] <= w[0]),
                "{alg} on {}",
                p.name
            );
            assert_eq!(*a.trace.last().unwrap(), a.best_fitness);
            assert!(p.bounds.contains(&a.best_position));
            assert_eq!(a.algorithm, alg.name());
        }
    }
}

#[test]
fn woa_branch_split_is_even() {
    let mut rng = RngStream::new(5);
    let n = 100_000;
    let spiral = (0..n)
        .filter(|_| {
            let big_a = rng.uniform_in(-2.0, 2.0);
            woa_branch(rng.uniform(), big_a) == WoaBranch::Spiral
        })
        .count();
    let frac = spiral as f64 / n as f64;
    assert!((frac - 0.5).abs() < 0.01, "{frac}");
    assert_eq!(woa_branch(0.2, 0.5), WoaBranch::Encircle);
    assert_eq!(woa_branch(0.2, -1.5), WoaBranch::Search);
}

#[test]
fn eo_generation_probability_fraction() {
    let mut rng = RngStream::new(6);
    let n = 100_000;
    let on = (0..n)
        .filter(|_| generation_control(rng.uniform(), 0.5))
        .count();
    let frac = on as f64 / n as f64;
    assert!((frac - 0.5).abs() < 0.01, "{frac}");
}

#[test]
fn schedules_hit_their_endpoints() {
    let t = 200;
    let pso = PsoParams::default();
    assert_eq!(inertia_weight(0, t, &pso), 0.9);
    assert!((inertia_weight(t - 1, t, &pso) - 0.4).abs() < 1e-15);
    let gwo = GwoParams::default();
    assert_eq!(gwo_a(0, t, &gwo), 2.0);
    assert_eq!(gwo_a(t - 1, t, &gwo), 0.0);
    let sca = ScaParams::default();
    assert_eq!(sca_r1(0, t, &sca), 2.0);
    assert_eq!(sca_r1(t - 1, t, &sca), 0.0);
    let aoa = AoaParams::default();
    assert!((math_optimizer_accelerated(0, t, &aoa) - 0.1).abs() < 1e-15);
    assert!((math_optimizer_accelerated(t - 1, t, &aoa) - 0.9).abs() < 1e-15);
    assert_eq!(math_optimizer_probability(t - 1, t, &aoa), 0.0);
    assert!(math_optimizer_probability(0, t, &aoa) < 1.0);
}

#[test]
fn algorithm_names_parse_case_insensitively() {
    for alg in Algorithm::ALL {
        assert_eq!(alg.name().parse::<Algorithm>().unwrap(), alg);
        assert_eq!(alg.name().to_lowercase().parse::<Algorithm>().unwrap(), alg);
    }
    assert!("HHO".parse::<Algorithm>().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn best_stays_in_bounds(seed in any::<u64>(), which in 0usize..6, dim in 2usize..6) {
        let p = classical_scalable("F9", dim).unwrap();
        let opt = Baseline::new(BaselineConfig::new(Algorithm::ALL[which]).with_budget(8, 15));
        let rec = run_optimizer(&opt, &p, 0, seed).unwrap();
        prop_assert!(p.bounds.contains(&rec.best_position));
        prop_assert!(rec.trace.windows(2).all(|w| w[1] <= w[0]));
    }
}
