//! Standard-normal density, CDF, survival, log-survival and quantile.
//!
//! The CDF is computed through [`erfc`](super::erfc), which keeps full
//! relative accuracy in both tails. The quantile follows Wichura's AS 241
//! (PPND16). `norm_log_sf` switches to the scaled complementary error
//! function once the direct survival value would lose accuracy, so it is
//! finite and accurate for arguments far beyond the underflow point of
//! `norm_sf` (needed by the truncated-normal likelihood, whose maximizer
//! can sit dozens of standard deviations below the truncation point).

use super::special::{erfc, erfcx};
use crate::error::Error;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Standard normal density phi(x).
pub fn norm_pdf(x: f64) -> f64 {
    const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
    INV_SQRT_2PI * (-0.5 * x * x).exp()
}

/// ln phi(x), finite wherever x is (phi itself underflows near |x| = 38.6).
pub fn norm_log_pdf(x: f64) -> f64 {
    const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_74;
    -0.5 * x * x - LN_SQRT_2PI
}

/// Standard normal CDF Phi(x).
pub fn norm_cdf(x: f64) -> f64 {
    0.5 * erfc(-x * FRAC_1_SQRT_2)
}

/// Survival function 1 - Phi(x), accurate in the upper tail.
pub fn norm_sf(x: f64) -> f64 {
    0.5 * erfc(x * FRAC_1_SQRT_2)
}

/// ln(1 - Phi(x)), finite for all finite x.
pub fn norm_log_sf(x: f64) -> f64 {
    let y = x * FRAC_1_SQRT_2;
    if y < 0.46875 {
        // direct value is far from underflow here
        norm_sf(x).ln()
    } else {
        // ln(0.5 erfc(y)) = ln(0.5) - y^2 + ln(erfcx(y))
        (0.5f64).ln() - y * y + erfcx(y).ln()
    }
}

// AS 241 (PPND16) coefficients.
const Q_A: [f64; 8] = [
    3.387_132_872_796_366_608e0,
    1.331_416_678_917_843_774_5e2,
    1.971_590_950_306_551_442_7e3,
    1.373_169_376_550_946_112_5e4,
    4.592_195_393_154_987_145_7e4,
    6.726_577_092_700_870_085_3e4,
    3.343_057_558_358_812_810_5e4,
    2.509_080_928_730_122_672_7e3,
];
const Q_B: [f64; 7] = [
    4.231_333_070_160_091_125_2e1,
    6.871_870_074_920_579_083e2,
    5.394_196_021_424_751_107_7e3,
    2.121_379_430_158_659_586_7e4,
    3.930_789_580_009_271_061e4,
    2.872_908_573_572_194_267_4e4,
    5.226_495_278_852_854_561e3,
];
const Q_C: [f64; 8] = [
    1.423_437_110_749_683_577_34e0,
    4.630_337_846_156_545_295_9e0,
    5.769_497_221_460_691_405_5e0,
    3.647_848_324_763_204_605_04e0,
    1.270_458_252_452_368_382_58e0,
    2.417_807_251_774_506_117_7e-1,
    2.272_384_498_926_918_458_33e-2,
    7.745_450_142_783_414_076_4e-4,
];
const Q_D: [f64; 7] = [
    2.053_191_626_637_758_821_87e0,
    1.676_384_830_183_803_849_4e0,
    6.897_673_349_851_000_045_5e-1,
    1.481_039_764_274_800_745_9e-1,
    1.519_866_656_361_645_719_66e-2,
    5.475_938_084_995_344_946e-4,
    1.050_750_071_644_416_843_24e-9,
];
const Q_E: [f64; 8] = [
    6.657_904_643_501_103_777_2e0,
    5.463_784_911_164_114_369_9e0,
    1.784_826_539_917_291_335_8e0,
    2.965_605_718_285_048_912_3e-1,
    2.653_218_952_657_612_309_3e-2,
    1.242_660_947_388_078_438_6e-3,
    2.711_555_568_743_487_578_15e-5,
    2.010_334_399_292_288_132_65e-7,
];
const Q_F: [f64; 7] = [
    5.998_322_065_558_879_376_9e-1,
    1.369_298_809_227_358_053_1e-1,
    1.487_536_129_085_061_485_25e-2,
    7.868_691_311_456_132_591e-4,
    1.846_318_317_510_054_681_8e-5,
    1.421_511_758_316_445_888_7e-7,
    2.044_263_103_389_939_785_64e-15,
];

fn ratpoly(num: &[f64; 8], den: &[f64; 7], r: f64) -> f64 {
    let mut p = num[7];
    for k in (0..7).rev() {
        p = p * r + num[k];
    }
    let mut q = den[6];
    for k in (0..6).rev() {
        q = q * r + den[k];
    }
    p / (q * r + 1.0)
}

/// Standard normal quantile: the x with Phi(x) = p.
///
/// Errors when p is outside the open interval (0, 1).
pub fn norm_quantile(p: f64) -> Result<f64, Error> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!(
            "norm_quantile requires 0 < p < 1, got {p}"
        )));
    }
    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180625 - q * q;
        return Ok(q * ratpoly(&Q_A, &Q_B, r));
    }
    let r = if q < 0.0 { p } else { 1.0 - p };
    let mut r = (-r.ln()).sqrt();
    let x = if r <= 5.0 {
        r -= 1.6;
        ratpoly(&Q_C, &Q_D, r)
    } else {
        r -= 5.0;
        ratpoly(&Q_E, &Q_F, r)
    };
    let x = if q < 0.0 { -x } else { x };
    Ok(newton_polish(x, p))
}

/// One Newton step against the high-accuracy CDF; 1 - p is exact in
/// floating point for p >= 0.5, so the tail residual is formed without
/// cancellation on either side.
fn newton_polish(x: f64, p: f64) -> f64 {
    let pdf = norm_pdf(x);
    if pdf < 1e-300 {
        return x;
    }
    let residual = if p <= 0.5 {
        norm_cdf(x) - p
    } else {
        norm_sf(x) - (1.0 - p)
    };
    let step = if p <= 0.5 { -residual } else { residual };
    x + step / pdf
}

/// Upper-tail quantile z_p with 1 - Phi(z_p) = p.
pub fn z_upper(p: f64) -> Result<f64, Error> {
    Ok(-norm_quantile(p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn pdf_reference_values() {
        let cases = [
            (0.0, 0.39894228040143268),
            (0.5, 0.35206532676429948),
            (1.0, 0.24197072451914335),
            (2.5, 0.017528300493568537),
            (5.0, 1.4867195147342977e-6),
            (8.0, 5.0522710835368923e-15),
        ];
        for (x, v) in cases {
            assert_relative_eq!(norm_pdf(x), v, max_relative = 1e-14);
            assert_relative_eq!(norm_pdf(-x), v, max_relative = 1e-14);
        }
        assert!(norm_pdf(5.0) < 1.5e-6);
    }

    #[test]
    fn cdf_reference_values() {
        // references computed at 40-digit precision
        let cases = [
            (-8.5, 9.4795348222033184e-18),
            (-8.0, 6.2209605742717841e-16),
            (-6.3, 1.488228221762311e-10),
            (-5.0, 2.8665157187919391e-7),
            (-4.2, 1.3345749015906338e-5),
            (-3.7, 0.00010779973347738834),
            (-3.0, 0.0013498980316300945),
            (-2.5, 0.0062096653257761352),
            (-1.959963984540054, 0.025000000000000014),
            (-1.5, 0.066807201268858066),
            (-1.0, 0.15865525393145705),
            (-0.46875, 0.31962417151711763),
            (-0.25, 0.40129367431707628),
            (0.0, 0.5),
            (0.3, 0.61791142218895264),
            (0.75, 0.7733726476231318),
            (1.0, 0.84134474606854295),
            (1.644853626951473, 0.95000000000000003),
            (2.0, 0.97724986805182079),
            (2.5, 0.99379033467422386),
            (3.0, 0.99865010196836991),
            (3.7, 0.99989220026652261),
            (5.0, 0.99999971334842812),
            (6.3, 0.99999999985117718),
        ];
        for (x, v) in cases {
            assert_relative_eq!(norm_cdf(x), v, max_relative = 1e-14);
        }
        assert!(norm_cdf(-8.0) < 1e-14);
        assert_eq!(norm_cdf(0.0), 0.5);
    }

    #[test]
    fn sf_is_complementary() {
        for x in [-6.0, -2.0, -0.3, 0.0, 0.4, 1.9, 4.5, 7.5] {
            assert_relative_eq!(norm_sf(x), norm_cdf(-x), max_relative = 1e-15);
        }
    }

    #[test]
    fn log_sf_reference_values() {
        let cases = [
            (-10.0, -7.6198530241605261e-24),
            (-3.0, -0.0013508099647481938),
            (0.0, -std::f64::consts::LN_2),
            (1.0, -1.8410216450092635),
            (3.0, -6.6077262215103495),
            (5.0, -15.064998393988726),
            (8.0, -35.01343715991455),
            (10.0, -53.231285150512471),
            (15.0, -116.1313848457117),
            (20.0, -203.91715537109726),
            (30.0, -454.3212439563432),
            (40.0, -804.60844201375379),
            (61.96, -1924.5664878610227),
            (100.0, -5005.5242086942051),
        ];
        for (x, v) in cases {
            assert_relative_eq!(norm_log_sf(x), v, max_relative = 1e-12);
        }
    }

    #[test]
    fn quantile_reference_values() {
        // references are the true quantiles of the binary-exact inputs
        let cases = [
            (1e-10, -6.3613409024040562),
            (1e-6, -4.753424308822899),
            (0.001, -3.0902323061678135),
            (0.0025, -2.8070337683438041),
            (0.025, -1.9599639845400542),
            (0.05, -1.6448536269514727),
            (0.1, -1.2815515655446004),
            (0.3, -0.52440051270804082),
            (0.5, 0.0),
            (0.7, 0.52440051270804066),
            (0.9, 1.2815515655446006),
            (0.975, 1.9599639845400539),
            (0.999, 3.0902323061678133),
            (0.999999, 4.7534243088170878),
            (0.9999995, 4.891638475714779),
        ];
        for (p, v) in cases {
            let got = norm_quantile(p).unwrap();
            if v == 0.0 {
                assert!(got.abs() < 1e-15);
            } else {
                assert_relative_eq!(got, v, max_relative = 1e-13);
            }
        }
    }

    #[test]
    fn quantile_rejects_out_of_domain() {
        assert!(norm_quantile(0.0).is_err());
        assert!(norm_quantile(1.0).is_err());
        assert!(norm_quantile(-0.2).is_err());
        assert!(norm_quantile(f64::NAN).is_err());
    }

    proptest! {
        // Phi(quantile(p)) = p to 1e-12 over the central range.
        #[test]
        fn cdf_inverts_quantile(p in 0.001f64..0.999) {
            let x = norm_quantile(p).unwrap();
            prop_assert!((norm_cdf(x) - p).abs() < 1e-12);
        }

        #[test]
        fn cdf_symmetry(x in -8.0f64..8.0) {
            prop_assert!((norm_cdf(x) + norm_cdf(-x) - 1.0).abs() < 1e-14);
        }

        #[test]
        fn cdf_monotone(x in -7.0f64..6.5) {
            prop_assert!(norm_cdf(x + 1e-3) > norm_cdf(x));
        }
    }
}
