use crate::error::Result;
use crate::problem::{Bounds, Evaluator, ProblemSpec};
use crate::record::{run_optimizer, Optimizer, RunFailure, RunOutcome, RunRecord};
use crate::stochastic::{LevyParams, RngStream};

use super::motion::{
    assign_drains, beta_schedule, core_update, drain_probabilities, far_field_update,
    greedy_select, phi, radial_pressure, select_phase, shrink_radius, spiral_update, splash_out,
    stochastic_switch, swirl_speed, Assignment, Phase, SpiralMode,
};
use super::params::DvoParams;

/// Evolving population, drains and stagnation bookkeeping of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct DvoState {
    pub t: usize,
    pub positions: Vec<Vec<f64>>,
    pub fitness: Vec<f64>,
    /// Drain positions, best first.
    pub drains: Vec<Vec<f64>>,
    pub drain_fitness: Vec<f64>,
    pub prev_positions: Vec<Vec<f64>>,
    pub prev_fitness: Vec<f64>,
    pub stagnation: Vec<usize>,
    pub assignment: Vec<usize>,
    pub rho: Vec<f64>,
    pub phases: Vec<Phase>,
    pub evaluations: usize,
}

impl DvoState {
    pub fn best(&self) -> (&[f64], f64) {
        (&self.drains[0], self.drain_fitness[0])
    }
}

/// `k` best entries of `pool` by fitness. The sort is stable, so earlier
/// pool entries win ties. A position identical to one already selected is
/// skipped unless the pool runs out of distinct points.
pub fn select_drains(pool: &[(&[f64], f64)], k: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    let mut order: Vec<usize> = (0..pool.len()).collect();
    order.sort_by(|&a, &b| pool[a].1.total_cmp(&pool[b].1));
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    let mut skipped = Vec::new();
    for &i in &order {
        if chosen.len() == k {
            break;
        }
        if chosen.iter().any(|&c| pool[c].0 == pool[i].0) {
            skipped.push(i);
        } else {
            chosen.push(i);
        }
    }
    for i in skipped {
        if chosen.len() == k {
            break;
        }
        chosen.push(i);
    }
    chosen.sort_by(|&a, &b| pool[a].1.total_cmp(&pool[b].1).then(a.cmp(&b)));
    (
        chosen.iter().map(|&i| pool[i].0.to_vec()).collect(),
        chosen.iter().map(|&i| pool[i].1).collect(),
    )
}

/// Samples the initial population uniformly in the box, evaluates it and
/// seeds the drains with the best agents.
pub fn initialize(
    problem: &ProblemSpec,
    params: &DvoParams,
    rng: &mut RngStream,
) -> Result<DvoState> {
    params.validate()?;
    let n = params.population;
    let positions: Vec<Vec<f64>> = (0..n).map(|_| problem.bounds.sample(rng)).collect();
    let mut ev = Evaluator::new(problem);
    let mut fitness = Vec::with_capacity(n);
    for x in &positions {
        fitness.push(ev.eval(x, rng)?);
    }
    let pool: Vec<(&[f64], f64)> = positions
        .iter()
        .zip(&fitness)
        .map(|(x, &f)| (x.as_slice(), f))
        .collect();
    let (drains, drain_fitness) = select_drains(&pool, params.effective_drains());
    Ok(DvoState {
        t: 0,
        prev_positions: positions.clone(),
        prev_fitness: fitness.clone(),
        positions,
        fitness,
        drains,
        drain_fitness,
        stagnation: vec![0; n],
        assignment: vec![0; n],
        rho: vec![0.0; n],
        phases: vec![Phase::FarField; n],
        evaluations: ev.evaluations(),
    })
}

/// Recomputes the drains from current population, previous population and
/// previous drains.
pub fn elitist_drain_update(state: &mut DvoState, k: usize) {
    let pool: Vec<(&[f64], f64)> = state
        .positions
        .iter()
        .zip(&state.fitness)
        .chain(state.prev_positions.iter().zip(&state.prev_fitness))
        .chain(state.drains.iter().zip(&state.drain_fitness))
        .map(|(x, &f)| (x.as_slice(), f))
        .collect();
    let (drains, fit) = select_drains(&pool, k);
    state.drains = drains;
    state.drain_fitness = fit;
}

/// Core-phase stagnation counter update for one agent.
pub fn next_stagnation(tau: usize, phase: Phase, improved: bool, splashed: bool) -> usize {
    if splashed || improved || phase != Phase::Core {
        0
    } else {
        tau + 1
    }
}

/// Per-iteration quantities that do not depend on the agent.
struct IterationScalars {
    phi: f64,
    shrink_pressure: f64,
    sigma0: f64,
    spiral_mode: SpiralMode,
}

/// Advances `state` by one iteration.
pub fn step(
    state: &mut DvoState,
    params: &DvoParams,
    problem: &ProblemSpec,
    levy: &LevyParams,
    rng: &mut RngStream,
) -> Result<()> {
    let iterations = params.iterations;
    let t = state.t;
    let k = state.drains.len();
    let n = state.positions.len();
    let bounds = &problem.bounds;
    let diameter = bounds.diameter();
    let toggles = params.toggles;

    let phi_t = phi(t, iterations);
    let scalars = IterationScalars {
        phi: phi_t,
        shrink_pressure: radial_pressure(
            phi_t,
            params.min_radial_pressure,
            toggles.adaptive_spiral,
        ),
        sigma0: params.core_radius * diameter,
        spiral_mode: if toggles.radial_only {
            SpiralMode::RadialOnly
        } else if toggles.swirl {
            SpiralMode::Full
        } else {
            SpiralMode::NoSwirl
        },
    };
    let beta = beta_schedule(t, iterations, params.pressure_start, params.pressure_end);
    let probs = drain_probabilities(k, beta);

    let mut assignments = assign_drains(
        &state.positions,
        &state.drains,
        &probs,
        diameter,
        params.epsilon,
    );
    if toggles.switching && k >= 2 {
        let mut assign: Vec<usize> = assignments.iter().map(|a| a.drain).collect();
        for i in stochastic_switch(&mut assign, &probs, params.switch_prob, rng) {
            assignments[i] =
                Assignment::to(assign[i], &state.positions[i], &state.drains, diameter);
        }
    }

    let mut candidates = Vec::with_capacity(n);
    let mut phases = Vec::with_capacity(n);
    let mut splashed = vec![false; n];
    for i in 0..n {
        let a = assignments[i];
        let phase = select_phase(a.rho, params.far_threshold, params.near_threshold);
        let mut x = move_agent(state, params, &scalars, bounds, i, a, phase, rng)?;
        if phase == Phase::Core
            && toggles.splash
            && state.stagnation[i] >= params.stay_limit
            && rng.uniform() < params.splash_prob
        {
            x = splash_out(&state.drains[0], params.splash_scale, diameter, levy, rng);
            splashed[i] = true;
        }
        bounds.clip(&mut x);
        candidates.push(x);
        phases.push(phase);
    }

    let mut ev = Evaluator::new(problem);
    let mut cand_fit = Vec::with_capacity(n);
    for x in &candidates {
        cand_fit.push(ev.eval(x, rng)?);
    }
    state.evaluations += ev.evaluations();

    let old_positions = std::mem::take(&mut state.positions);
    let old_fitness = std::mem::take(&mut state.fitness);
    let mut prev_positions = old_positions.clone();
    let mut prev_fitness = old_fitness.clone();
    let mut positions = Vec::with_capacity(n);
    let mut fitness = Vec::with_capacity(n);
    for i in 0..n {
        let improved = cand_fit[i] < old_fitness[i];
        let (x, f) = if splashed[i] {
            if params.forced_splash_replacement {
                prev_positions[i] = candidates[i].clone();
                prev_fitness[i] = cand_fit[i];
            }
            (candidates[i].clone(), cand_fit[i])
        } else {
            greedy_select(
                (&old_positions[i], old_fitness[i]),
                (&candidates[i], cand_fit[i]),
                toggles.greedy_update,
            )
        };
        positions.push(x);
        fitness.push(f);
        state.stagnation[i] =
            next_stagnation(state.stagnation[i], phases[i], improved, splashed[i]);
    }

    state.positions = positions;
    state.fitness = fitness;
    state.prev_positions = prev_positions;
    state.prev_fitness = prev_fitness;
    state.assignment = assignments.iter().map(|a| a.drain).collect();
    state.rho = assignments.iter().map(|a| a.rho).collect();
    state.phases = phases;
    elitist_drain_update(state, k);
    state.t += 1;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn move_agent(
    state: &DvoState,
    params: &DvoParams,
    s: &IterationScalars,
    bounds: &Bounds,
    i: usize,
    a: Assignment,
    phase: Phase,
    rng: &mut RngStream,
) -> Result<Vec<f64>> {
    let x = &state.positions[i];
    let drain = &state.drains[a.drain];
    Ok(match phase {
        Phase::FarField => {
            far_field_update(x, drain, s.phi, params.drift, params.noise, bounds, rng)
        }
        // A zero radius cannot reach the spiral band; fall back to core sampling.
        Phase::Spiral if a.distance > 0.0 => {
            let shrink = shrink_radius(a.distance, params.shrink_gain, s.shrink_pressure);
            let v_theta = swirl_speed(
                a.rho,
                params.circulation,
                params.core_regularizer,
                params.max_swirl,
            );
            spiral_update(
                x,
                drain,
                a.distance,
                shrink,
                v_theta,
                params.epsilon,
                s.spiral_mode,
                rng,
            )?
            .position
        }
        Phase::Spiral | Phase::Core => core_update(drain, s.phi, s.sigma0, rng),
    })
}

/// Drain-vortex optimizer with a fixed parameter set.
#[derive(Debug, Clone)]
pub struct Dvo {
    label: String,
    params: DvoParams,
}

impl Dvo {
    pub fn new(params: DvoParams) -> Self {
        Self::with_label("DVO", params)
    }

    pub fn with_label(label: impl Into<String>, params: DvoParams) -> Self {
        Self {
            label: label.into(),
            params,
        }
    }

    pub fn params(&self) -> &DvoParams {
        &self.params
    }

    /// Runs to completion and returns the final state together with the
    /// best-so-far trace.
    pub fn run_state(
        &self,
        problem: &ProblemSpec,
        rng: &mut RngStream,
    ) -> Result<(DvoState, Vec<f64>)> {
        let levy = LevyParams::new(self.params.levy_index)?;
        let mut state = initialize(problem, &self.params, rng)?;
        let mut trace = Vec::with_capacity(self.params.iterations);
        while state.t < self.params.iterations {
            step(&mut state, &self.params, problem, &levy, rng)?;
            trace.push(state.drain_fitness[0]);
        }
        Ok((state, trace))
    }
}

impl Optimizer for Dvo {
    fn label(&self) -> &str {
        &self.label
    }

    fn optimize(&self, problem: &ProblemSpec, rng: &mut RngStream) -> Result<RunOutcome> {
        let (state, trace) = self.run_state(problem, rng)?;
        Ok(RunOutcome {
            trace,
            best_position: state.drains[0].clone(),
            best_fitness: state.drain_fitness[0],
            evaluations: state.evaluations,
        })
    }
}

/// Single DVO run seeded with `seed`.
pub fn run(problem: &ProblemSpec, params: &DvoParams, seed: u64) -> Result<RunRecord, RunFailure> {
    run_optimizer(&Dvo::new(params.clone()), problem, 0, seed)
}
