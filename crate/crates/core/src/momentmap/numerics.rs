//! Scalar numerics: adaptive Gauss-Kronrod quadrature and bisection.

use crate::error::NumericError;

// 7-point Gauss / 15-point Kronrod pair on [-1, 1]; index 7 is the centre.
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
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_DEPTH: u32 = 40;

/// Result of a quadrature: the value and an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub err: f64,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        kronrod += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Adaptive G7K15 quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Intervals are bisected until the Kronrod-Gauss difference on each piece is
/// below its share of the tolerance.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<Quadrature, NumericError> {
    if !(tol > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(NumericError::InvalidParams(format!(
            "quadrature over [{a}, {b}] with tolerance {tol}"
        )));
    }
    let (value, err) = gk15(&f, a, b);
    let q = refine(&f, a, b, value, err, tol, 0);
    if !q.value.is_finite() {
        return Err(NumericError::QuadratureFailed { tol, err: f64::INFINITY });
    }
    if q.err > tol {
        return Err(NumericError::QuadratureFailed { tol, err: q.err });
    }
    Ok(q)
}

fn refine<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, value: f64, err: f64, tol: f64, depth: u32) -> Quadrature {
    if err <= tol || depth >= MAX_DEPTH {
        return Quadrature { value, err };
    }
    let m = 0.5 * (a + b);
    let (lv, le) = gk15(f, a, m);
    let (rv, re) = gk15(f, m, b);
    // Accept the split when it is already good enough as a whole.
    if le + re <= tol {
        return Quadrature {
            value: lv + rv,
            err: le + re,
        };
    }
    let l = refine(f, a, m, lv, le, 0.5 * tol, depth + 1);
    let r = refine(f, m, b, rv, re, 0.5 * tol, depth + 1);
    Quadrature {
        value: l.value + r.value,
        err: l.err + r.err,
    }
}

/// Bisection for a sign change of `f` on `[lo, hi]`, stopping once the
/// bracket is narrower than `tol` (or cannot be split in floating point).
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64, NumericError> {
    let (mut flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return Err(NumericError::Bracket(format!(
            "no sign change on [{lo}, {hi}] (f = {flo}, {fhi})"
        )));
    }
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
