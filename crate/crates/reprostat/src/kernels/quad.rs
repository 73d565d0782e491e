//! Adaptive Gauss-Kronrod quadrature of expectations under the standard
//! normal.
//!
//! Unbounded endpoints are truncated at |z| = 8, where the discarded tail
//! mass is below 1e-15; the adaptive driver then bisects until the local
//! Kronrod error estimate meets the tolerance.

use super::normal::norm_pdf;
use super::Interval;
use crate::error::Error;

/// Integration limit replacing infinite endpoints.
pub const TRUNCATION: f64 = 8.0;

/// Absolute-error target for [`integrate_normal_expectation`].
const DEFAULT_TOL: f64 = 1e-10;

/// Region of integration for a normal expectation.
#[derive(Debug, Clone, Copy)]
pub enum Region {
    /// A single interval; endpoints may be infinite.
    Interval(Interval),
    /// Both tails {|z| >= t}, t >= 0.
    TwoTail(f64),
}

// 15-point Kronrod rule on [-1, 1] (positive abscissae; symmetric).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
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
// Embedded 7-point Gauss weights (for XGK indices 1, 3, 5, 7).
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One Gauss-Kronrod panel: returns (kronrod, |kronrod - gauss|).
fn gk15<F: Fn(f64) -> Result<f64, Error>>(f: &F, a: f64, b: f64) -> Result<(f64, f64), Error> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kronrod = 0.0;
    let mut gauss = 0.0;
    for (i, (&x, &wk)) in XGK.iter().zip(WGK.iter()).enumerate() {
        let (lo, hi) = (c - h * x, c + h * x);
        let flo = eval(f, lo)?;
        let v = if x == 0.0 { flo } else { flo + eval(f, hi)? };
        kronrod += wk * v;
        if i % 2 == 1 {
            gauss += WG[i / 2] * v;
        }
    }
    Ok((kronrod * h, (kronrod - gauss).abs() * h))
}

fn eval<F: Fn(f64) -> Result<f64, Error>>(f: &F, x: f64) -> Result<f64, Error> {
    let v = f(x)?;
    if !v.is_finite() {
        return Err(Error::Evaluation(format!(
            "integrand evaluated to {v} at x = {x}"
        )));
    }
    Ok(v)
}

fn adaptive<F: Fn(f64) -> Result<f64, Error>>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    depth: u32,
) -> Result<f64, Error> {
    let (value, err) = gk15(f, a, b)?;
    if err <= tol || depth >= 40 {
        return Ok(value);
    }
    let mid = 0.5 * (a + b);
    let left = adaptive(f, a, mid, 0.5 * tol, depth + 1)?;
    let right = adaptive(f, mid, b, 0.5 * tol, depth + 1)?;
    Ok(left + right)
}

/// Integrate `f` on a bounded interval with the adaptive driver.
pub fn integrate<F: Fn(f64) -> Result<f64, Error>>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<f64, Error> {
    if a >= b {
        return Ok(0.0);
    }
    adaptive(f, a, b, tol, 0)
}

/// Integral of f(z) phi(z) dz over the region, with absolute error <= 1e-8.
///
/// `f` must be bounded on the region; any non-finite value aborts with an
/// evaluation error.
pub fn integrate_normal_expectation<F: Fn(f64) -> f64>(
    f: F,
    region: Region,
) -> Result<f64, Error> {
    let g = |z: f64| -> Result<f64, Error> { Ok(f(z) * norm_pdf(z)) };
    match region {
        Region::Interval(iv) => {
            let a = iv.lo.max(-TRUNCATION);
            let b = iv.hi.min(TRUNCATION);
            integrate(&g, a, b, DEFAULT_TOL)
        }
        Region::TwoTail(t) => {
            if t < 0.0 {
                return Err(Error::Domain(format!(
                    "two-tail region requires t >= 0, got {t}"
                )));
            }
            let upper = integrate(&g, t.min(TRUNCATION), TRUNCATION, DEFAULT_TOL)?;
            let lower = integrate(&g, -TRUNCATION, (-t).max(-TRUNCATION), DEFAULT_TOL)?;
            Ok(upper + lower)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::norm_quantile;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn full_line() -> Region {
        Region::Interval(Interval::new(f64::NEG_INFINITY, f64::INFINITY).unwrap())
    }

    #[test]
    fn normalization() {
        let v = integrate_normal_expectation(|_| 1.0, full_line()).unwrap();
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn upper_tail_mass() {
        let z = -norm_quantile(0.025).unwrap();
        let region = Region::Interval(Interval::new(z, f64::INFINITY).unwrap());
        let v = integrate_normal_expectation(|_| 1.0, region).unwrap();
        assert_abs_diff_eq!(v, 0.025, epsilon = 1e-9);
    }

    #[test]
    fn unit_variance() {
        let v = integrate_normal_expectation(|z| z * z, full_line()).unwrap();
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn two_tail_region() {
        let v = integrate_normal_expectation(|_| 1.0, Region::TwoTail(1.959963984540054)).unwrap();
        assert_abs_diff_eq!(v, 0.05, epsilon = 1e-9);
    }

    #[test]
    fn non_finite_integrand_errors() {
        let region = Region::Interval(Interval::new(-1.0, 1.0).unwrap());
        let r = integrate_normal_expectation(|z| 1.0 / z, region);
        assert!(matches!(r, Err(Error::Evaluation(_))));
    }

    #[test]
    fn negative_two_tail_threshold_errors() {
        assert!(integrate_normal_expectation(|_| 1.0, Region::TwoTail(-1.0)).is_err());
    }

    proptest! {
        // complementary regions add up to the full-line integral
        #[test]
        fn complementary_regions(split in -3.0f64..3.0) {
            let f = |z: f64| (0.3 * z).sin() + z * z;
            let left = integrate_normal_expectation(f,
                Region::Interval(Interval::new(f64::NEG_INFINITY, split).unwrap())).unwrap();
            let right = integrate_normal_expectation(f,
                Region::Interval(Interval::new(split, f64::INFINITY).unwrap())).unwrap();
            let full = integrate_normal_expectation(f, full_line()).unwrap();
            prop_assert!((left + right - full).abs() < 2e-8);
        }
    }
}
