use dvo_core::benchmarks::{classical_fixed, classical_scalable, Catalog};
use dvo_core::problem::Bounds;
use dvo_core::stochastic::{LevyParams, RngStream};
use dvo_core::vortex::motion::{
    beta_schedule, drain_probabilities, phi, radial_pressure, select_phase, shrink_radius,
    spiral_update, swirl_speed, Phase, SpiralMode,
};
use dvo_core::vortex::{initialize, step, DvoParams};
use dvo_core::ProblemSpec;
use proptest::prelude::*;

fn small_params(population: usize, drains: usize, iterations: usize) -> DvoParams {
    DvoParams {
        population,
        drains,
        iterations,
        ..DvoParams::default()
    }
}

fn problem_pool() -> Vec<ProblemSpec> {
    let cat = Catalog::builtin();
    vec![
        classical_scalable("F1", 5).unwrap(),
        classical_scalable("F9", 3).unwrap(),
        classical_scalable("F5", 4).unwrap(),
        classical_fixed("F16").unwrap(),
        cat.lookup("tension_spring", None).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn drain_probabilities_normalized_and_decreasing(k in 1usize..20, beta in 0.0f64..10.0) {
        let p = drain_probabilities(k, beta);
        prop_assert_eq!(p.len(), k);
        let total: f64 = p.iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        prop_assert!(p.iter().all(|&x| x > 0.0));
        prop_assert!(p.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn phases_partition_the_unit_interval(rho in 0.0f64..=1.0, near in 0.0f64..0.5, gap in 0.0f64..0.5) {
        let far = near + gap;
        let phase = select_phase(rho, far, near);
        let expected = if rho > far {
            Phase::FarField
        } else if rho > near {
            Phase::Spiral
        } else {
            Phase::Core
        };
        prop_assert_eq!(phase, expected);
    }

    #[test]
    fn swirl_never_exceeds_cap(rho in 0.0f64..=1.0, c in 0.0f64..100.0, reg in 1e-6f64..1.0, cap in 0.1f64..50.0) {
        let v = swirl_speed(rho, c, reg, cap);
        prop_assert!(v <= cap);
        prop_assert!(v >= 0.0);
    }

    #[test]
    fn clip_is_idempotent_and_contains(
        xs in prop::collection::vec(prop_oneof![
            -1e6f64..1e6,
            Just(f64::INFINITY),
            Just(f64::NEG_INFINITY),
        ], 1..8)
    ) {
        let d = xs.len();
        let b = Bounds::uniform(d, -3.0, 7.0).unwrap();
        let mut once = xs.clone();
        b.clip(&mut once);
        prop_assert!(b.contains(&once));
        let mut twice = once.clone();
        b.clip(&mut twice);
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn state_invariants_hold_every_iteration(
        seed in any::<u64>(),
        which in 0usize..5,
        drains in 1usize..5,
        splash in any::<bool>(),
    ) {
        let problem = &problem_pool()[which];
        let mut params = small_params(8, drains, 20);
        params.stay_limit = 2;
        params.toggles.splash = splash;
        let levy = LevyParams::new(params.levy_index).unwrap();
        let mut rng = RngStream::new(seed);
        let mut state = initialize(problem, &params, &mut rng).unwrap();
        let mut best = state.drain_fitness[0];
        for _ in 0..params.iterations {
            let before = state.fitness.clone();
            step(&mut state, &params, problem, &levy, &mut rng).unwrap();
            // Best-so-far never regresses.
            prop_assert!(state.drain_fitness[0] <= best);
            best = state.drain_fitness[0];
            // Without splash-out the greedy update never worsens an agent.
            if !splash {
                for (f_new, f_old) in state.fitness.iter().zip(&before) {
                    prop_assert!(f_new <= f_old);
                }
            }
            for x in state.positions.iter().chain(&state.drains) {
                prop_assert!(problem.bounds.contains(x));
            }
            prop_assert!(state.drain_fitness.windows(2).all(|w| w[0] <= w[1]));
            prop_assert!(state.fitness.iter().all(|&f| f >= state.drain_fitness[0]));
        }
        prop_assert_eq!(state.evaluations, params.population * (params.iterations + 1));
    }
}

#[test]
fn schedule_endpoints() {
    let t_max = 500;
    assert_eq!(phi(0, t_max), 2.0);
    assert_eq!(phi(t_max - 1, t_max), 0.0);
    assert_eq!(beta_schedule(0, t_max, 1.0, 6.0), 1.0);
    assert_eq!(beta_schedule(t_max - 1, t_max, 1.0, 6.0), 6.0);
    assert_eq!(radial_pressure(2.0, 0.1, true), 1.0);
    assert!((radial_pressure(0.0, 0.1, true) - 0.1).abs() < 1e-15);
    assert_eq!(radial_pressure(0.0, 0.1, false), 1.0);
    for t in 1..t_max {
        assert!(phi(t, t_max) < phi(t - 1, t_max));
    }
}

#[test]
fn spiral_radius_identity() {
    // |x' - v|^2 = s^2 (cos^2 w + v_theta^2 sin^2 w) for the full spiral.
    let mut rng = RngStream::new(77);
    for trial in 0..10_000 {
        let d = 2 + trial % 9;
        let drain: Vec<f64> = (0..d).map(|_| rng.uniform_in(-5.0, 5.0)).collect();
        let x: Vec<f64> = (0..d).map(|_| rng.uniform_in(-5.0, 5.0)).collect();
        let r = x
            .iter()
            .zip(&drain)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        let s = shrink_radius(r, rng.uniform(), rng.uniform());
        let v_theta = rng.uniform_in(0.0, 10.0);
        let step =
            spiral_update(&x, &drain, r, s, v_theta, 0.0, SpiralMode::Full, &mut rng).unwrap();
        let got: f64 = step
            .position
            .iter()
            .zip(&drain)
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        let (c, sn) = (step.omega.cos(), step.omega.sin());
        let want = s * s * (c * c + v_theta * v_theta * sn * sn);
        assert!(
            (got - want).abs() <= 1e-9 * want.max(1.0),
            "trial {trial}: {got} vs {want}"
        );
    }
}

#[test]
fn radial_only_spiral_is_deterministic() {
    let drain = [1.0, -2.0, 0.5];
    let x = [4.0, 2.0, 0.5];
    let r = 5.0;
    let mut rng = RngStream::new(3);
    let before = rng.clone().uniform();
    let out = spiral_update(
        &x,
        &drain,
        r,
        2.5,
        3.0,
        0.0,
        SpiralMode::RadialOnly,
        &mut rng,
    )
    .unwrap();
    assert_eq!(out.omega, 0.0);
    assert!((out.position[0] - 2.5).abs() < 1e-12);
    assert!((out.position[1] - 0.0).abs() < 1e-12);
    assert!((out.position[2] - 0.5).abs() < 1e-12);
    // No draws consumed.
    assert_eq!(rng.uniform(), before);
}

#[test]
fn one_dimensional_problem_runs() {
    let problem = ProblemSpec::deterministic("line", Bounds::uniform(1, -4.0, 4.0).unwrap(), |x| {
        (x[0] - 1.0).powi(2)
    });
    let params = small_params(10, 3, 200);
    let levy = LevyParams::new(params.levy_index).unwrap();
    let mut rng = RngStream::new(5);
    let mut state = initialize(&problem, &params, &mut rng).unwrap();
    for _ in 0..params.iterations {
        step(&mut state, &params, &problem, &levy, &mut rng).unwrap();
    }
    assert!(state.drain_fitness[0] < 1e-6);
}
