//! Constrained engineering design problems, all in `g(x) <= 0` form.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::problem::{Bounds, ProblemKind, ProblemSpec};

pub(crate) const ENGINEERING_IDS: [&str; 5] = [
    "three_bar_truss",
    "tension_spring",
    "welded_beam",
    "pressure_vessel",
    "speed_reducer",
];

// Keeps constraint values finite where a denominator vanishes on the box edge.
const DENOM_FLOOR: f64 = 1e-12;

fn safe(den: f64) -> f64 {
    if den.abs() < DENOM_FLOOR {
        DENOM_FLOOR
    } else {
        den
    }
}

fn three_bar_truss() -> Result<ProblemSpec> {
    const LEN: f64 = 100.0;
    const LOAD: f64 = 2.0;
    const STRESS: f64 = 2.0;
    Ok(
        ProblemSpec::deterministic("three_bar_truss", Bounds::uniform(2, 0.0, 1.0)?, |x| {
            (2.0 * SQRT_2 * x[0] + x[1]) * LEN
        })
        .with_constraint(|x| {
            (SQRT_2 * x[0] + x[1]) / safe(SQRT_2 * x[0] * x[0] + 2.0 * x[0] * x[1]) * LOAD - STRESS
        })
        .with_constraint(|x| x[1] / safe(SQRT_2 * x[0] * x[0] + 2.0 * x[0] * x[1]) * LOAD - STRESS)
        .with_constraint(|x| 1.0 / safe(SQRT_2 * x[1] + x[0]) * LOAD - STRESS)
        .with_best_known(263.895_843_376_468)
        .with_minimizer(vec![0.788_675_134_594_813, 0.408_248_290_463_863]),
    )
}

fn tension_spring() -> Result<ProblemSpec> {
    // x = (wire diameter d, mean coil diameter D, active coils N)
    Ok(ProblemSpec::deterministic(
        "tension_spring",
        Bounds::new(vec![0.05, 0.25, 2.0], vec![2.0, 1.3, 15.0])?,
        |x| (x[2] + 2.0) * x[1] * x[0] * x[0],
    )
    .with_constraint(|x| 1.0 - x[1].powi(3) * x[2] / (71_785.0 * x[0].powi(4)))
    .with_constraint(|x| {
        (4.0 * x[1] * x[1] - x[0] * x[1]) / safe(12_566.0 * (x[1] * x[0].powi(3) - x[0].powi(4)))
            + 1.0 / (5_108.0 * x[0] * x[0])
            - 1.0
    })
    .with_constraint(|x| 1.0 - 140.45 * x[0] / (x[1] * x[1] * x[2]))
    .with_constraint(|x| (x[0] + x[1]) / 1.5 - 1.0)
    .with_best_known(0.012_665_232_788)
    .with_minimizer(vec![
        0.051_689_156_131,
        0.356_720_026_419,
        11.288_831_695_483,
    ]))
}

mod welded {
    pub const LOAD: f64 = 6_000.0;
    pub const LEN: f64 = 14.0;
    pub const E: f64 = 30e6;
    pub const G: f64 = 12e6;
    pub const TAU_MAX: f64 = 13_600.0;
    pub const SIGMA_MAX: f64 = 30_000.0;
    pub const DELTA_MAX: f64 = 0.25;

    /// Shear stress in the weld for x = (h, l, t, b).
    pub fn shear(x: &[f64]) -> f64 {
        let (h, l, t) = (x[0], x[1], x[2]);
        let tau1 = LOAD / (std::f64::consts::SQRT_2 * h * l);
        let m = LOAD * (LEN + l / 2.0);
        let r = (l * l / 4.0 + ((h + t) / 2.0).powi(2)).sqrt();
        let j = 2.0 * (std::f64::consts::SQRT_2 * h * l * (l * l / 12.0 + ((h + t) / 2.0).powi(2)));
        let tau2 = m * r / j;
        (tau1 * tau1 + 2.0 * tau1 * tau2 * l / (2.0 * r) + tau2 * tau2).sqrt()
    }

    pub fn bending(x: &[f64]) -> f64 {
        6.0 * LOAD * LEN / (x[3] * x[2] * x[2])
    }

    pub fn deflection(x: &[f64]) -> f64 {
        4.0 * LOAD * LEN.powi(3) / (E * x[2].powi(3) * x[3])
    }

    pub fn buckling_load(x: &[f64]) -> f64 {
        let (t, b) = (x[2], x[3]);
        4.013 * E * (t * t * b.powi(6) / 36.0).sqrt() / (LEN * LEN)
            * (1.0 - t / (2.0 * LEN) * (E / (4.0 * G)).sqrt())
    }
}

fn welded_beam() -> Result<ProblemSpec> {
    use welded::*;
    Ok(ProblemSpec::deterministic(
        "welded_beam",
        Bounds::new(vec![0.1, 0.1, 0.1, 0.1], vec![2.0, 10.0, 10.0, 2.0])?,
        |x| 1.104_71 * x[0] * x[0] * x[1] + 0.048_11 * x[2] * x[3] * (14.0 + x[1]),
    )
    .with_constraint(|x| shear(x) - TAU_MAX)
    .with_constraint(|x| bending(x) - SIGMA_MAX)
    .with_constraint(|x| x[0] - x[3])
    .with_constraint(|x| 0.104_71 * x[0] * x[0] + 0.048_11 * x[2] * x[3] * (14.0 + x[1]) - 5.0)
    .with_constraint(|x| 0.125 - x[0])
    .with_constraint(|x| deflection(x) - DELTA_MAX)
    .with_constraint(|x| LOAD - buckling_load(x))
    .with_best_known(1.724_852_309)
    .with_minimizer(vec![
        0.205_729_639_786,
        3.470_488_665_628,
        9.036_623_910_357,
        0.205_729_639_786,
    ]))
}

fn pressure_vessel() -> Result<ProblemSpec> {
    // x = (shell thickness, head thickness, inner radius, length)
    Ok(ProblemSpec::deterministic(
        "pressure_vessel",
        Bounds::new(vec![0.0, 0.0, 10.0, 10.0], vec![99.0, 99.0, 200.0, 200.0])?,
        |x| {
            0.6224 * x[0] * x[2] * x[3]
                + 1.7781 * x[1] * x[2] * x[2]
                + 3.1661 * x[0] * x[0] * x[3]
                + 19.84 * x[0] * x[0] * x[2]
        },
    )
    .with_constraint(|x| -x[0] + 0.0193 * x[2])
    .with_constraint(|x| -x[1] + 0.009_54 * x[2])
    .with_constraint(|x| -PI * x[2] * x[2] * x[3] - 4.0 / 3.0 * PI * x[2].powi(3) + 1_296_000.0)
    .with_constraint(|x| x[3] - 240.0)
    .with_best_known(5_885.332_773_8)
    .with_minimizer(vec![0.778_168_641, 0.384_649_163, 40.319_618_724, 200.0]))
}

// The standard formulation uses the rounded coefficient 0.7854.
#[allow(clippy::approx_constant)]
fn speed_reducer() -> Result<ProblemSpec> {
    Ok(ProblemSpec::deterministic(
        "speed_reducer",
        Bounds::new(
            vec![2.6, 0.7, 17.0, 7.3, 7.3, 2.9, 5.0],
            vec![3.6, 0.8, 28.0, 8.3, 8.3, 3.9, 5.5],
        )?,
        |x| {
            0.7854 * x[0] * x[1] * x[1] * (3.3333 * x[2] * x[2] + 14.9334 * x[2] - 43.0934)
                - 1.508 * x[0] * (x[5] * x[5] + x[6] * x[6])
                + 7.4777 * (x[5].powi(3) + x[6].powi(3))
                + 0.7854 * (x[3] * x[5] * x[5] + x[4] * x[6] * x[6])
        },
    )
    .with_constraint(|x| 27.0 / (x[0] * x[1] * x[1] * x[2]) - 1.0)
    .with_constraint(|x| 397.5 / (x[0] * x[1] * x[1] * x[2] * x[2]) - 1.0)
    .with_constraint(|x| 1.93 * x[3].powi(3) / (x[1] * x[2] * x[5].powi(4)) - 1.0)
    .with_constraint(|x| 1.93 * x[4].powi(3) / (x[1] * x[2] * x[6].powi(4)) - 1.0)
    .with_constraint(|x| {
        ((745.0 * x[3] / (x[1] * x[2])).powi(2) + 16.9e6).sqrt() / (110.0 * x[5].powi(3)) - 1.0
    })
    .with_constraint(|x| {
        ((745.0 * x[4] / (x[1] * x[2])).powi(2) + 157.5e6).sqrt() / (85.0 * x[6].powi(3)) - 1.0
    })
    .with_constraint(|x| x[1] * x[2] / 40.0 - 1.0)
    .with_constraint(|x| 5.0 * x[1] / x[0] - 1.0)
    .with_constraint(|x| x[0] / (12.0 * x[1]) - 1.0)
    .with_constraint(|x| (1.5 * x[5] + 1.9) / x[3] - 1.0)
    .with_constraint(|x| (1.1 * x[6] + 1.9) / x[4] - 1.0)
    .with_best_known(2_994.424_465_757_6)
    .with_minimizer(vec![
        3.5,
        0.7,
        17.0,
        7.3,
        7.715_319_91,
        3.350_540_95,
        5.286_654_46,
    ]))
}

/// Unpenalized engineering problem with its constraint list.
pub fn engineering_problem(name: &str) -> Result<ProblemSpec> {
    let spec = match name {
        "three_bar_truss" => three_bar_truss()?,
        "tension_spring" => tension_spring()?,
        "welded_beam" => welded_beam()?,
        "pressure_vessel" => pressure_vessel()?,
        "speed_reducer" => speed_reducer()?,
        other => {
            return Err(Error::Catalog(format!(
                "unknown engineering problem `{other}`"
            )))
        }
    };
    Ok(spec.with_kind(ProblemKind::Engineering))
}
