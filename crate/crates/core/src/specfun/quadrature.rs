//! Globally adaptive Gauss–Kronrod (7/15) quadrature with an absolute error
//! target, plus a wrapper that absorbs algebraic endpoint singularities by a
//! power substitution.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::SpecFunError;

/// Kronrod abscissae on [-1, 1]; odd indices are the Gauss-7 nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

pub const DEFAULT_MAX_EVALS: usize = 500_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

impl QuadratureResult {
    fn combine(self, other: QuadratureResult) -> QuadratureResult {
        QuadratureResult {
            value: self.value + other.value,
            abs_error_estimate: self.abs_error_estimate + other.abs_error_estimate,
            evaluations: self.evaluations + other.evaluations,
        }
    }

    pub fn scaled(self, factor: f64) -> QuadratureResult {
        QuadratureResult {
            value: self.value * factor,
            abs_error_estimate: self.abs_error_estimate * factor.abs(),
            evaluations: self.evaluations,
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// `∫_a^b f(x) dx` to absolute error `tol`, bisecting the worst panel until
/// the summed error estimate meets the target.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_evals: usize,
) -> Result<QuadratureResult, SpecFunError> {
    if !(tol > 0.0) {
        return Err(SpecFunError::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    if a == b {
        return Ok(QuadratureResult { value: 0.0, abs_error_estimate: 0.0, evaluations: 0 });
    }
    let mut heap = BinaryHeap::new();
    let first = gauss_kronrod(&f, a, b);
    let mut evaluations = 15;
    let mut total_error = first.error;
    heap.push(first);

    loop {
        if !total_error.is_finite() {
            return Err(SpecFunError::NonFinite);
        }
        if total_error <= tol {
            break;
        }
        let worst = heap.pop().expect("at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if evaluations + 30 > max_evals || mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            let value = heap.iter().map(|p| p.value).sum();
            return Err(SpecFunError::ToleranceNotMet {
                value,
                error: total_error,
                tol,
                evaluations,
            });
        }
        let left = gauss_kronrod(&f, worst.a, mid);
        let right = gauss_kronrod(&f, mid, worst.b);
        evaluations += 30;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // resum from scratch so the incremental updates leave no drift
    let value = heap.iter().map(|p| p.value).sum();
    let abs_error_estimate = heap.iter().map(|p| p.error).sum();
    Ok(QuadratureResult { value, abs_error_estimate, evaluations })
}

/// `∫_a^b (x-a)^(α-1) (b-x)^(β-1) f(x) dx` for smooth `f`.
///
/// The interval is split at its midpoint. On a half whose exponent is below
/// one, `x - a = s^(1/α)` (resp. `b - x = s^(1/β)`) turns the weight into the
/// constant `1/α`, leaving a smooth integrand in `s`.
pub fn integrate_weighted<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    left_exponent: f64,
    right_exponent: f64,
    tol: f64,
    max_evals: usize,
) -> Result<QuadratureResult, SpecFunError> {
    if !(left_exponent > 0.0 && right_exponent > 0.0) {
        return Err(SpecFunError::InvalidParameter(
            "endpoint exponents must be positive for an integrable weight".to_string(),
        ));
    }
    let (alpha, beta) = (left_exponent, right_exponent);
    let mid = 0.5 * (a + b);
    let budget = max_evals / 2;

    let left = if alpha < 1.0 {
        let upper = (mid - a).powf(alpha);
        integrate(
            |s| {
                let x = a + s.powf(1.0 / alpha);
                (b - x).powf(beta - 1.0) * f(x) / alpha
            },
            0.0,
            upper,
            tol / 2.0,
            budget,
        )?
    } else {
        integrate(
            |x| (x - a).powf(alpha - 1.0) * (b - x).powf(beta - 1.0) * f(x),
            a,
            mid,
            tol / 2.0,
            budget,
        )?
    };

    let right = if beta < 1.0 {
        let upper = (b - mid).powf(beta);
        integrate(
            |s| {
                let x = b - s.powf(1.0 / beta);
                (x - a).powf(alpha - 1.0) * f(x) / beta
            },
            0.0,
            upper,
            tol / 2.0,
            budget,
        )?
    } else {
        integrate(
            |x| (x - a).powf(alpha - 1.0) * (b - x).powf(beta - 1.0) * f(x),
            mid,
            b,
            tol / 2.0,
            budget,
        )?
    };

    Ok(left.combine(right))
}
