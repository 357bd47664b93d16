//! The classical 23-function test suite (F1–F23) with canonical dimensions,
//! bounds and reference optima.

pub mod functions;

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CsmaError, Result};
use crate::kernels::{RngStream, StreamDomain};
use crate::optimizer::{Objective, Problem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BenchmarkId(u8);

impl BenchmarkId {
    pub const COUNT: u8 = 23;

    pub fn new(n: u8) -> Result<Self> {
        if (1..=Self::COUNT).contains(&n) {
            Ok(Self(n))
        } else {
            Err(CsmaError::UnknownFunction(format!("F{n}")))
        }
    }

    pub fn number(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = BenchmarkId> {
        (1..=Self::COUNT).map(BenchmarkId)
    }
}

impl fmt::Display for BenchmarkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.0)
    }
}

impl FromStr for BenchmarkId {
    type Err = CsmaError;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .strip_prefix('F')
            .or_else(|| s.strip_prefix('f'))
            .ok_or_else(|| CsmaError::UnknownFunction(s.to_string()))?;
        let n: u8 = digits.parse().map_err(|_| CsmaError::UnknownFunction(s.to_string()))?;
        Self::new(n).map_err(|_| CsmaError::UnknownFunction(s.to_string()))
    }
}

impl Serialize for BenchmarkId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BenchmarkId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Category {
    Unimodal,
    Multimodal,
    FixedDimension,
}

impl FromStr for Category {
    type Err = CsmaError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "unimodal" => Ok(Category::Unimodal),
            "multimodal" => Ok(Category::Multimodal),
            "fixed-dimension" | "fixed" => Ok(Category::FixedDimension),
            other => Err(CsmaError::InvalidInput(format!("unknown category `{other}`"))),
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::Unimodal => "unimodal",
            Category::Multimodal => "multimodal",
            Category::FixedDimension => "fixed-dimension",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchmarkSpec {
    pub id: BenchmarkId,
    pub name: &'static str,
    pub dim: usize,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub category: Category,
    pub reference_optimum: f64,
    /// Known minimizer, when one exists in closed form or has been located
    /// numerically. `None` for the noisy quartic.
    #[serde(skip)]
    pub reference_argmin: Option<Vec<f64>>,
}

fn spec(
    n: u8,
    name: &'static str,
    dim: usize,
    bounds: (Vec<f64>, Vec<f64>),
    category: Category,
    reference_optimum: f64,
    reference_argmin: Option<Vec<f64>>,
) -> BenchmarkSpec {
    BenchmarkSpec {
        id: BenchmarkId(n),
        name,
        dim,
        lower: bounds.0,
        upper: bounds.1,
        category,
        reference_optimum,
        reference_argmin,
    }
}

fn cube(dim: usize, lo: f64, hi: f64) -> (Vec<f64>, Vec<f64>) {
    (vec![lo; dim], vec![hi; dim])
}

const HIGH_DIM: usize = 30;

/// Minimizer of the Schwefel 2.26 coordinate term.
pub const SCHWEFEL_ARGMIN: f64 = 420.968_746_359_982;

pub fn get_spec(id: BenchmarkId) -> BenchmarkSpec {
    use Category::*;
    let d = HIGH_DIM;
    let zeros = Some(vec![0.0; d]);
    match id.0 {
        1 => spec(1, "Sphere", d, cube(d, -100.0, 100.0), Unimodal, 0.0, zeros),
        2 => spec(2, "Schwefel 2.22", d, cube(d, -10.0, 10.0), Unimodal, 0.0, zeros),
        3 => spec(3, "Schwefel 1.2", d, cube(d, -100.0, 100.0), Unimodal, 0.0, zeros),
        4 => spec(4, "Schwefel 2.21", d, cube(d, -100.0, 100.0), Unimodal, 0.0, zeros),
        5 => spec(
            5,
            "Rosenbrock",
            d,
            cube(d, -30.0, 30.0),
            Unimodal,
            0.0,
            Some(vec![1.0; d]),
        ),
        6 => spec(6, "Step", d, cube(d, -100.0, 100.0), Unimodal, 0.0, zeros),
        7 => spec(7, "Quartic with noise", d, cube(d, -1.28, 1.28), Unimodal, 0.0, None),
        8 => spec(
            8,
            "Schwefel 2.26",
            d,
            cube(d, -500.0, 500.0),
            Multimodal,
            -12_569.486_618,
            Some(vec![SCHWEFEL_ARGMIN; d]),
        ),
        9 => spec(9, "Rastrigin", d, cube(d, -5.12, 5.12), Multimodal, 0.0, zeros),
        10 => spec(10, "Ackley", d, cube(d, -32.0, 32.0), Multimodal, 0.0, zeros),
        11 => spec(11, "Griewank", d, cube(d, -600.0, 600.0), Multimodal, 0.0, zeros),
        12 => spec(
            12,
            "Penalized 1",
            d,
            cube(d, -50.0, 50.0),
            Multimodal,
            0.0,
            Some(vec![-1.0; d]),
        ),
        13 => spec(
            13,
            "Penalized 2",
            d,
            cube(d, -50.0, 50.0),
            Multimodal,
            0.0,
            Some(vec![1.0; d]),
        ),
        14 => spec(
            14,
            "Shekel's Foxholes",
            2,
            cube(2, -65.536, 65.536),
            FixedDimension,
            0.998_004,
            Some(vec![-31.978_333_377_976_48, -31.978_334_007_870_856]),
        ),
        15 => spec(
            15,
            "Kowalik",
            4,
            cube(4, -5.0, 5.0),
            FixedDimension,
            0.000_307_5,
            Some(vec![
                0.192_833_453_055_185_84,
                0.190_836_240_545_420_14,
                0.123_117_299_825_616_62,
                0.135_765_990_122_946_18,
            ]),
        ),
        16 => spec(
            16,
            "Six-Hump Camel",
            2,
            cube(2, -5.0, 5.0),
            FixedDimension,
            -1.031_628_4,
            Some(vec![0.089_842_016_529_270_98, -0.712_656_401_380_720_2]),
        ),
        17 => spec(
            17,
            "Branin",
            2,
            (vec![-5.0, 0.0], vec![10.0, 15.0]),
            FixedDimension,
            0.397_887_4,
            Some(vec![std::f64::consts::PI, 2.275]),
        ),
        18 => spec(
            18,
            "Goldstein-Price",
            2,
            cube(2, -2.0, 2.0),
            FixedDimension,
            3.0,
            Some(vec![0.0, -1.0]),
        ),
        19 => spec(
            19,
            "Hartmann 3",
            3,
            cube(3, 0.0, 1.0),
            FixedDimension,
            -3.862_78,
            Some(vec![
                0.114_614_336_548_057_93,
                0.555_648_849_545_738_3,
                0.852_546_952_547_765_5,
            ]),
        ),
        20 => spec(
            20,
            "Hartmann 6",
            6,
            cube(6, 0.0, 1.0),
            FixedDimension,
            -3.321_99,
            Some(vec![
                0.201_707_620_587_060_04,
                0.146_780_943_490_147_3,
                0.476_744_849_626_570_1,
                0.275_342_392_831_650_85,
                0.311_651_874_025_620_8,
                0.657_275_164_082_834_8,
            ]),
        ),
        21 => spec(
            21,
            "Shekel 5",
            4,
            cube(4, 0.0, 10.0),
            FixedDimension,
            -10.153_2,
            Some(vec![
                4.000_037_152_376_549,
                4.000_133_278_657_566,
                4.000_037_151_057_555,
                4.000_133_277_090_425,
            ]),
        ),
        22 => spec(
            22,
            "Shekel 7",
            4,
            cube(4, 0.0, 10.0),
            FixedDimension,
            -10.402_9,
            Some(vec![
                4.000_572_914_267_843,
                4.000_689_365_862_991,
                3.999_489_710_414_378,
                3.999_606_160_387_538,
            ]),
        ),
        23 => spec(
            23,
            "Shekel 10",
            4,
            cube(4, 0.0, 10.0),
            FixedDimension,
            -10.536_4,
            Some(vec![
                4.000_746_533_201_553,
                4.000_592_934_538_832,
                3.999_663_397_220_255_8,
                3.999_509_801_285_225_5,
            ]),
        ),
        _ => unreachable!("BenchmarkId is range-checked"),
    }
}

/// All 23 specs in id order.
pub fn list_functions() -> Vec<BenchmarkSpec> {
    BenchmarkId::all().map(get_spec).collect()
}

fn deterministic_objective(id: BenchmarkId) -> fn(&[f64]) -> f64 {
    use functions::*;
    match id.0 {
        1 => sphere,
        2 => schwefel_2_22,
        3 => schwefel_1_2,
        4 => schwefel_2_21,
        5 => rosenbrock,
        6 => step,
        7 => quartic,
        8 => schwefel_2_26,
        9 => rastrigin,
        10 => ackley,
        11 => griewank,
        12 => penalized_1,
        13 => penalized_2,
        14 => shekel_foxholes,
        15 => kowalik,
        16 => six_hump_camel,
        17 => branin,
        18 => goldstein_price,
        19 => hartmann_3,
        20 => hartmann_6,
        21 => |x| shekel(x, 5),
        22 => |x| shekel(x, 7),
        23 => |x| shekel(x, 10),
        _ => unreachable!("BenchmarkId is range-checked"),
    }
}

/// The noisy quartic draws its additive `Uniform[0, 1)` term from `noise`,
/// one draw per evaluation.
fn noisy_quartic(noise: RngStream) -> Objective {
    let noise = Mutex::new(noise);
    Arc::new(move |x: &[f64]| {
        let u = noise.lock().expect("noise stream poisoned").uniform();
        functions::quartic(x) + u
    })
}

fn objective(id: BenchmarkId, noise_seed: u64) -> Objective {
    if id.0 == 7 {
        noisy_quartic(RngStream::for_slot(noise_seed, StreamDomain::Noise, 0, 0))
    } else {
        Arc::new(deterministic_objective(id))
    }
}

/// Problem for `id` with F7's noise seeded from `noise_seed`.
pub fn get_function_with_noise(id: BenchmarkId, noise_seed: u64) -> Problem {
    let spec = get_spec(id);
    Problem::from_arc(spec.lower, spec.upper, objective(id, noise_seed))
        .expect("canonical bounds are valid")
        .with_known_optimum(spec.reference_optimum)
}

/// Problem for `id` at dimension `dim`. Only F1–F13 scale; the fixed-dimension
/// functions accept their canonical dimension only.
pub fn get_function_with_dim(id: BenchmarkId, dim: usize, noise_seed: u64) -> Result<Problem> {
    let spec = get_spec(id);
    if dim == spec.dim {
        return Ok(get_function_with_noise(id, noise_seed));
    }
    if spec.category == Category::FixedDimension || dim == 0 {
        return Err(CsmaError::DimensionMismatch {
            expected: spec.dim,
            actual: dim,
        });
    }
    let (lo, hi) = (spec.lower[0], spec.upper[0]);
    let optimum = if id.0 == 8 {
        spec.reference_optimum / spec.dim as f64 * dim as f64
    } else {
        spec.reference_optimum
    };
    Problem::from_arc(vec![lo; dim], vec![hi; dim], objective(id, noise_seed)).map(|p| p.with_known_optimum(optimum))
}

/// Problem for `id`; F7 noise comes from seed 0.
pub fn get_function(id: BenchmarkId) -> Problem {
    get_function_with_noise(id, 0)
}

/// Looks up a function by its textual id (`"F1"`..`"F23"`).
pub fn get_function_by_name(name: &str) -> Result<Problem> {
    Ok(get_function(name.parse()?))
}

/// One evaluation of `id` at `x`. For F7 the noise term is the first draw of
/// the seed-0 noise stream, so repeated calls agree.
pub fn evaluate(id: BenchmarkId, x: &[f64]) -> Result<f64> {
    let dim = get_spec(id).dim;
    if x.len() != dim {
        return Err(CsmaError::DimensionMismatch {
            expected: dim,
            actual: x.len(),
        });
    }
    Ok(get_function(id).evaluate(x))
}
