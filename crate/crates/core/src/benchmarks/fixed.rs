//! Fixed-dimension classical functions F14-F23.

use crate::error::{Error, Result};
use crate::problem::{Bounds, ProblemKind, ProblemSpec};

pub(crate) const FIXED_IDS: [&str; 10] = [
    "F14", "F15", "F16", "F17", "F18", "F19", "F20", "F21", "F22", "F23",
];

const FOXHOLE_GRID: [f64; 5] = [-32.0, -16.0, 0.0, 16.0, 32.0];

/// Shekel's foxholes.
pub fn foxholes(x: &[f64]) -> f64 {
    let mut s = 1.0 / 500.0;
    for j in 0..25 {
        let a0 = FOXHOLE_GRID[j % 5];
        let a1 = FOXHOLE_GRID[j / 5];
        s += 1.0 / ((j + 1) as f64 + (x[0] - a0).powi(6) + (x[1] - a1).powi(6));
    }
    1.0 / s
}

const KOWALIK_A: [f64; 11] = [
    0.1957, 0.1947, 0.1735, 0.16, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323, 0.0235, 0.0246,
];
const KOWALIK_INV_B: [f64; 11] = [0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0];

pub fn kowalik(x: &[f64]) -> f64 {
    KOWALIK_A
        .iter()
        .zip(KOWALIK_INV_B)
        .map(|(a, inv)| {
            let b = 1.0 / inv;
            (a - x[0] * (b * b + x[1] * b) / (b * b + x[2] * b + x[3])).powi(2)
        })
        .sum()
}

pub fn six_hump_camel(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    4.0 * a * a - 2.1 * a.powi(4) + a.powi(6) / 3.0 + a * b - 4.0 * b * b + 4.0 * b.powi(4)
}

pub fn branin(x: &[f64]) -> f64 {
    use std::f64::consts::PI;
    let (a, b) = (x[0], x[1]);
    (b - 5.1 / (4.0 * PI * PI) * a * a + 5.0 / PI * a - 6.0).powi(2)
        + 10.0 * (1.0 - 1.0 / (8.0 * PI)) * a.cos()
        + 10.0
}

pub fn goldstein_price(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    let p = 1.0
        + (a + b + 1.0).powi(2)
            * (19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b);
    let q = 30.0
        + (2.0 * a - 3.0 * b).powi(2)
            * (18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b + 27.0 * b * b);
    p * q
}

const HARTMANN_C: [f64; 4] = [1.0, 1.2, 3.0, 3.2];
const HARTMANN3_A: [[f64; 3]; 4] = [
    [3.0, 10.0, 30.0],
    [0.1, 10.0, 35.0],
    [3.0, 10.0, 30.0],
    [0.1, 10.0, 35.0],
];
const HARTMANN3_P: [[f64; 3]; 4] = [
    [0.3689, 0.1170, 0.2673],
    [0.4699, 0.4387, 0.7470],
    [0.1091, 0.8732, 0.5547],
    [0.03815, 0.5743, 0.8828],
];
const HARTMANN6_A: [[f64; 6]; 4] = [
    [10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
    [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
    [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
    [17.0, 8.0, 0.05, 10.0, 0.1, 14.0],
];
const HARTMANN6_P: [[f64; 6]; 4] = [
    [0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886],
    [0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991],
    [0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650],
    [0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381],
];

fn hartmann<const D: usize>(x: &[f64], a: &[[f64; D]; 4], p: &[[f64; D]; 4]) -> f64 {
    -(0..4)
        .map(|i| {
            let s: f64 = (0..D).map(|j| a[i][j] * (x[j] - p[i][j]).powi(2)).sum();
            HARTMANN_C[i] * (-s).exp()
        })
        .sum::<f64>()
}

pub fn hartmann3(x: &[f64]) -> f64 {
    hartmann(x, &HARTMANN3_A, &HARTMANN3_P)
}

pub fn hartmann6(x: &[f64]) -> f64 {
    hartmann(x, &HARTMANN6_A, &HARTMANN6_P)
}

const SHEKEL_A: [[f64; 4]; 10] = [
    [4.0, 4.0, 4.0, 4.0],
    [1.0, 1.0, 1.0, 1.0],
    [8.0, 8.0, 8.0, 8.0],
    [6.0, 6.0, 6.0, 6.0],
    [3.0, 7.0, 3.0, 7.0],
    [2.0, 9.0, 2.0, 9.0],
    [5.0, 5.0, 3.0, 3.0],
    [8.0, 1.0, 8.0, 1.0],
    [6.0, 2.0, 6.0, 2.0],
    [7.0, 3.6, 7.0, 3.6],
];
const SHEKEL_C: [f64; 10] = [0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5];

/// Shekel function with `m` terms.
pub fn shekel(x: &[f64], m: usize) -> f64 {
    -(0..m)
        .map(|i| {
            let d: f64 = (0..4).map(|j| (x[j] - SHEKEL_A[i][j]).powi(2)).sum();
            1.0 / (d + SHEKEL_C[i])
        })
        .sum::<f64>()
}

/// Fixed-dimension function `id` with its native box, optimum value and a
/// documented minimizer.
pub fn classical_fixed(id: &str) -> Result<ProblemSpec> {
    type Entry = (Bounds, fn(&[f64]) -> f64, f64, Vec<f64>);
    let u = Bounds::uniform;
    let (bounds, f, f_true, argmin): Entry = match id {
        "F14" => (
            u(2, -65.536, 65.536)?,
            foxholes,
            0.998_003_837_794_449_8,
            vec![-31.978_334_780_538_82, -31.978_332_295_368_574],
        ),
        "F15" => (
            u(4, -5.0, 5.0)?,
            kowalik,
            3.074_859_878_056_054e-4,
            vec![
                0.192_833_453_081_293_57,
                0.190_836_239_990_802_18,
                0.123_117_299_277_181_54,
                0.135_765_990_269_036_8,
            ],
        ),
        "F16" => (
            u(2, -5.0, 5.0)?,
            six_hump_camel,
            -1.031_628_453_489_877_6,
            vec![0.089_842_016_813_774_61, -0.712_656_402_060_313_7],
        ),
        "F17" => (
            Bounds::new(vec![-5.0, 0.0], vec![10.0, 15.0])?,
            branin,
            0.397_887_357_729_738_16,
            vec![std::f64::consts::PI, 2.275],
        ),
        "F18" => (u(2, -2.0, 2.0)?, goldstein_price, 3.0, vec![0.0, -1.0]),
        "F19" => (
            u(3, 0.0, 1.0)?,
            hartmann3,
            -3.862_782_147_820_756,
            vec![
                0.114_614_342_030_833_93,
                0.555_648_850_790_536_8,
                0.852_546_953_846_026,
            ],
        ),
        "F20" => (
            u(6, 0.0, 1.0)?,
            hartmann6,
            -3.322_368_011_415_515,
            vec![
                0.201_689_511_800_041_27,
                0.150_010_690_350_647_57,
                0.476_873_973_540_9,
                0.275_332_431_139_817_1,
                0.311_651_617_484_684_9,
                0.657_300_536_689_091_3,
            ],
        ),
        "F21" => (
            u(4, 0.0, 10.0)?,
            |x| shekel(x, 5),
            -10.153_199_679_058_229,
            vec![
                4.000_037_152_376_549,
                4.000_133_278_657_566,
                4.000_037_151_057_555,
                4.000_133_277_090_425,
            ],
        ),
        "F22" => (
            u(4, 0.0, 10.0)?,
            |x| shekel(x, 7),
            -10.402_940_566_818_664,
            vec![
                4.000_572_914_267_843,
                4.000_689_365_862_991,
                3.999_489_710_414_378,
                3.999_606_160_387_538,
            ],
        ),
        "F23" => (
            u(4, 0.0, 10.0)?,
            |x| shekel(x, 10),
            -10.536_409_816_692_046,
            vec![
                4.000_746_533_201_553,
                4.000_592_934_538_832,
                3.999_663_397_220_255_8,
                3.999_509_801_285_225_5,
            ],
        ),
        other => return Err(Error::Catalog(format!("unknown fixed function `{other}`"))),
    };
    Ok(ProblemSpec::deterministic(id, bounds, f)
        .with_kind(ProblemKind::Fixed)
        .with_f_true(f_true)
        .with_minimizer(argmin))
}
