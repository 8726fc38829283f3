//! Error-function family and log-domain helpers.
//!
//! `erfcx` follows W. J. Cody's rational Chebyshev approximations (CALERF),
//! which keep full relative precision for the scaled function on the whole
//! real line. Everything else in the crate that needs a Gaussian tail goes
//! through [`log_ndtr`] or [`erfcx`] so that products of the form
//! `exp(a) * Phi(b)` never overflow.

#![allow(clippy::excessive_precision)]

use std::f64::consts::{FRAC_1_SQRT_2, LN_2};

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_286_95;
pub(crate) const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_741_78;

const THRESHOLD: f64 = 0.46875;
const XNEG: f64 = -26.628_735_713_751_4;

const A: [f64; 5] = [
    3.161_123_743_870_565_6,
    113.864_154_151_050_156,
    377.485_237_685_302_021,
    3_209.377_589_138_469_47,
    0.185_777_706_184_603_153,
];
const B: [f64; 4] = [
    23.601_290_952_344_120_9,
    244.024_637_934_444_173,
    1_282.616_526_077_372_28,
    2_844.236_833_439_170_62,
];
const C: [f64; 9] = [
    0.564_188_496_988_670_089,
    8.883_149_794_388_375_94,
    66.119_190_637_141_629_5,
    298.635_138_197_400_131,
    881.952_221_241_769_09,
    1_712.047_612_634_070_58,
    2_051.078_377_826_071_47,
    1_230.339_354_797_997_25,
    2.153_115_354_744_038_46e-8,
];
const D: [f64; 8] = [
    15.744_926_110_709_834_7,
    117.693_950_891_312_499,
    537.181_101_862_009_858,
    1_621.389_574_566_690_19,
    3_290.799_235_733_459_63,
    4_362.619_090_143_247_16,
    3_439.367_674_143_721_64,
    1_230.339_354_803_749_42,
];
const P: [f64; 6] = [
    0.305_326_634_961_232_344,
    0.360_344_899_949_804_439,
    0.125_781_726_111_229_246,
    0.016_083_785_148_742_276_6,
    6.587_491_615_298_378_03e-4,
    0.016_315_387_137_302_097_8,
];
const Q: [f64; 5] = [
    2.568_520_192_289_822_42,
    1.872_952_849_923_460_47,
    0.527_905_102_951_428_412,
    0.060_518_341_312_441_319_1,
    0.002_335_204_976_268_691_85,
];

// erf(x)/x for |x| <= THRESHOLD, as a function of z = x^2.
#[inline]
fn small_ratio(z: f64) -> f64 {
    ((((A[4] * z + A[0]) * z + A[1]) * z + A[2]) * z + A[3]) / ((((z + B[0]) * z + B[1]) * z + B[2]) * z + B[3])
}

// erfcx(y) for THRESHOLD < y <= 4.
#[inline]
fn mid_erfcx(y: f64) -> f64 {
    let mut num = C[8] * y;
    let mut den = y;
    for i in 0..7 {
        num = (num + C[i]) * y;
        den = (den + D[i]) * y;
    }
    (num + C[7]) / (den + D[7])
}

// erfcx(y) for y > 4.
#[inline]
fn large_erfcx(y: f64) -> f64 {
    let z = 1.0 / (y * y);
    let mut num = P[5] * z;
    let mut den = z;
    for i in 0..4 {
        num = (num + P[i]) * z;
        den = (den + Q[i]) * z;
    }
    let r = z * (num + P[4]) / (den + Q[4]);
    (FRAC_1_SQRT_PI - r) / y
}

// exp(-y^2) split as exp(-yt^2) * exp(-(y-yt)(y+yt)) with yt = y rounded to 1/16.
#[inline]
fn exp_neg_square(y: f64) -> f64 {
    let yt = (y * 16.0).trunc() / 16.0;
    (-yt * yt).exp() * (-(y - yt) * (y + yt)).exp()
}

#[inline]
fn exp_pos_square(y: f64) -> f64 {
    let yt = (y * 16.0).trunc() / 16.0;
    (yt * yt).exp() * ((y - yt) * (y + yt)).exp()
}

/// Scaled complementary error function `exp(x^2) * erfc(x)`.
///
/// Finite and relatively accurate for every `x >= XNEG`; below that the true
/// value exceeds `f64::MAX` and `+inf` is returned.
pub fn erfcx(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let y = x.abs();
    if y <= THRESHOLD {
        let z = y * y;
        return z.exp() * (1.0 - x * small_ratio(z));
    }
    if x < XNEG {
        return f64::INFINITY;
    }
    let scaled = if y <= 4.0 { mid_erfcx(y) } else { large_erfcx(y) };
    if x < 0.0 {
        2.0 * exp_pos_square(y) - scaled
    } else {
        scaled
    }
}

/// Complementary error function.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let y = x.abs();
    if y <= THRESHOLD {
        return 1.0 - x * small_ratio(y * y);
    }
    let tail = if y >= 26.543 {
        0.0
    } else if y <= 4.0 {
        mid_erfcx(y) * exp_neg_square(y)
    } else {
        large_erfcx(y) * exp_neg_square(y)
    };
    if x < 0.0 {
        2.0 - tail
    } else {
        tail
    }
}

/// Error function.
pub fn erf(x: f64) -> f64 {
    let y = x.abs();
    if y <= THRESHOLD {
        x * small_ratio(y * y)
    } else if x < 0.0 {
        erfc(y) - 1.0
    } else {
        1.0 - erfc(y)
    }
}

/// Standard normal density.
#[inline]
pub fn norm_pdf(z: f64) -> f64 {
    (-0.5 * z * z - LN_SQRT_2PI).exp()
}

/// Standard normal CDF, `Phi(z)`.
#[inline]
pub fn norm_cdf(z: f64) -> f64 {
    0.5 * erfc(-z * FRAC_1_SQRT_2)
}

/// Standard normal survival function, `1 - Phi(z)`.
#[inline]
pub fn norm_sf(z: f64) -> f64 {
    0.5 * erfc(z * FRAC_1_SQRT_2)
}

/// `ln Phi(z)` without underflow in the left tail.
pub fn log_ndtr(z: f64) -> f64 {
    if z < -1.0 {
        (0.5 * erfcx(-z * FRAC_1_SQRT_2)).ln() - 0.5 * z * z
    } else {
        (-0.5 * erfc(z * FRAC_1_SQRT_2)).ln_1p()
    }
}

/// `ln(exp(a) + exp(b))`.
#[inline]
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// `ln(exp(a) - exp(b))` for `a >= b`; `-inf` when the difference vanishes.
#[inline]
pub fn log_sub_exp(a: f64, b: f64) -> f64 {
    if b >= a {
        return f64::NEG_INFINITY;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let d = b - a;
    // ln(1 - e^d), switching form at -ln 2 for accuracy.
    let tail = if d > -LN_2 {
        (-d.exp_m1()).ln()
    } else {
        (-d.exp()).ln_1p()
    };
    a + tail
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // Reference values from mpmath at 30 digits.
    #[test]
    fn erfcx_reference_values() {
        let cases = [
            (0.0, 1.0),
            (0.3, 0.734_599_334_567_655_15),
            (1.0, 0.427_583_576_155_807_0),
            (3.5, 0.155_293_655_608_894_3),
            (10.0, 0.056_140_992_743_822_586),
            (1.0e3, 5.641_893_014_533_876_5e-4),
            (-1.0, 5.008_980_080_762_283),
            (-5.0, 1.440_097_986_746_610_4e11),
        ];
        for (x, want) in cases {
            assert_relative_eq!(erfcx(x), want, max_relative = 1e-13);
        }
    }

    #[test]
    fn erfc_reference_values() {
        assert_relative_eq!(erfc(0.5), 0.479_500_122_186_953_5, max_relative = 1e-14);
        assert_relative_eq!(erfc(5.0), 1.537_459_794_428_034_8e-12, max_relative = 1e-13);
        assert_relative_eq!(erfc(-2.0), 1.995_322_265_018_952_7, max_relative = 1e-15);
        assert_relative_eq!(erf(0.2), 0.222_702_589_210_478_45, max_relative = 1e-14);
        assert_eq!(erfc(30.0), 0.0);
    }

    #[test]
    fn log_ndtr_tails() {
        assert_relative_eq!(log_ndtr(0.0), -LN_2, max_relative = 1e-15);
        // ln Phi(-40) = -804.608442013754...
        assert_relative_eq!(log_ndtr(-40.0), -804.608_442_013_753_8, max_relative = 1e-13);
        // ln Phi(8) = -6.22096057427178e-16
        assert_relative_eq!(log_ndtr(8.0), -6.220_960_574_271_786e-16, max_relative = 1e-10);
        assert_relative_eq!(norm_cdf(1.0), 0.841_344_746_068_542_9, max_relative = 1e-15);
    }

    #[test]
    fn erfcx_extreme_negative_is_infinite() {
        assert!(erfcx(-27.0).is_infinite());
        assert!(erfcx(f64::NAN).is_nan());
    }

    #[test]
    fn log_sum_helpers() {
        assert_relative_eq!(log_add_exp(0.0, 0.0), LN_2, max_relative = 1e-15);
        assert_relative_eq!(log_sub_exp(2.0_f64.ln(), 0.0), 0.0, epsilon = 1e-15);
        assert_eq!(log_sub_exp(1.0, 1.0), f64::NEG_INFINITY);
        assert_relative_eq!(
            log_sub_exp(0.0, -50.0),
            (-(-50.0f64).exp()).ln_1p(),
            max_relative = 1e-15
        );
    }
}
