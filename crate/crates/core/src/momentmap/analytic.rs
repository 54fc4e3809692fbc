//! The unperturbed (`eps = 0`) system in closed form.
//!
//! Without the `eps` wall the radial equation `|j| (1 + r^2) = 2 sqrt(h) r`
//! is a quadratic, and the action integral has an elementary antiderivative.
//! These serve as the oracle for the numerical path.

use std::f64::consts::PI;

use super::Variant;
use crate::error::NumericError;

fn asin_clamped(x: f64) -> f64 {
    x.clamp(-1.0, 1.0).asin()
}

/// Roots `(sqrt(h) -+ sqrt(h - j^2)) / |j|`; their product is always `1`.
pub fn radial_roots(h: f64, j: f64) -> Result<(f64, f64), NumericError> {
    if j == 0.0 {
        return Err(NumericError::ZeroMomentum);
    }
    if !(h > 0.0) || j * j > h {
        return Err(NumericError::NoRoot { h, h_min: j * j, j });
    }
    let (sh, s) = (h.sqrt(), (h - j * j).sqrt());
    Ok(((sh - s) / j.abs(), (sh + s) / j.abs()))
}

/// Antiderivative of `2 sqrt(4/(1+r^2)^2 - j^2/r^2)` for `0 < |j| < 1`.
///
/// At the turning points the `asin` arguments reach `+-1`, where rounding in
/// the argument costs about `1e-8` in the result.
pub fn antiderivative(j: f64, r: f64) -> f64 {
    let aj = j.abs();
    let s = (1.0 - j * j).sqrt();
    let r2 = r * r;
    2.0 * asin_clamped((r2 - 1.0) / (s * (r2 + 1.0)))
        - aj * asin_clamped((j * j * r2 + j * j - 2.0) / (2.0 * s))
        + aj * asin_clamped((j * j + j * j * r2 - 2.0 * r2) / (2.0 * s * r2))
}

/// The `eps -> 0` radial action on level `h`.
///
/// The full variant integrates between both roots; the hemisphere variant
/// stops at the equator `r = 1`. Scaling `j -> j / sqrt(h)` reduces to `h = 1`.
pub fn radial_action(variant: Variant, h: f64, j: f64) -> Result<f64, NumericError> {
    let (a, b) = radial_roots(h, j)?;
    if a == b {
        return Ok(0.0);
    }
    let sh = h.sqrt();
    let jn = j / sh;
    let upper = match variant {
        Variant::Full => b,
        Variant::Hemisphere => 1.0,
        Variant::Custom => {
            return Err(NumericError::InvalidParams(
                "no closed form for a custom C".into(),
            ))
        }
    };
    Ok(sh * (antiderivative(jn, upper) - antiderivative(jn, a)))
}

/// The closed-form value `2 pi sqrt(h) - 2 pi |j|` (full) or
/// `pi sqrt(h) - pi |j|` (hemisphere).
pub fn radial_action_closed(variant: Variant, h: f64, j: f64) -> Result<f64, NumericError> {
    let base = 2.0 * PI * (h.sqrt() - j.abs());
    match variant {
        Variant::Full => Ok(base),
        Variant::Hemisphere => Ok(0.5 * base),
        Variant::Custom => Err(NumericError::InvalidParams(
            "no closed form for a custom C".into(),
        )),
    }
}

/// The limit boundary point `(rho_1, rho_2)` at `h = 1`.
pub fn limit_point(variant: Variant, j: f64) -> Result<(f64, f64), NumericError> {
    let radial = radial_action_closed(variant, 1.0, j)?;
    Ok((
        radial + super::theta_term(super::Coordinate::First, j),
        radial + super::theta_term(super::Coordinate::Second, j),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_the_quadratic() {
        let (a, b) = radial_roots(1.0, 0.6).unwrap();
        assert!((a - 1.0 / 3.0).abs() < 1e-15 && (b - 3.0).abs() < 1e-15);
        for (h, j) in [(1.0, 0.1), (2.5, -1.2), (0.3, 0.5)] {
            let (a, b) = radial_roots(h, j).unwrap();
            assert!((a * b - 1.0).abs() < 1e-12);
        }
        assert!(radial_roots(0.2, 0.5).is_err());
    }

    #[test]
    fn antiderivative_reproduces_closed_form() {
        for j in [-0.9, -0.5, -0.05, 0.01, 0.3, 0.75, 0.99] {
            for h in [1.0, 2.0, 0.81] {
                if j * j >= h {
                    continue;
                }
                for v in [Variant::Full, Variant::Hemisphere] {
                    let a = radial_action(v, h, j).unwrap();
                    let c = radial_action_closed(v, h, j).unwrap();
                    assert!((a - c).abs() < 1e-7, "{v} h={h} j={j}: {a} vs {c}");
                }
            }
        }
    }

    #[test]
    fn antiderivative_matches_a_riemann_sum() {
        // midpoint rule after the sin^2 substitution, independent of the
        // adaptive quadrature used elsewhere
        let j: f64 = 0.4;
        let (a, b) = radial_roots(1.0, j).unwrap();
        let n = 20_000;
        let dt = PI / 2.0 / n as f64;
        let mut sum = 0.0;
        for k in 0..n {
            let t = (k as f64 + 0.5) * dt;
            let r = a + (b - a) * t.sin().powi(2);
            let p = 4.0 / (1.0 + r * r).powi(2) - j * j / (r * r);
            sum += p.max(0.0).sqrt() * (b - a) * (2.0 * t).sin() * dt;
        }
        let exact = antiderivative(j, b) - antiderivative(j, a);
        assert!((2.0 * sum - exact).abs() < 1e-7, "{} vs {exact}", 2.0 * sum);
    }

    #[test]
    fn limit_points() {
        let (x, y) = limit_point(Variant::Full, 0.5).unwrap();
        assert!((x - PI).abs() < 1e-15 && (y - 2.0 * PI).abs() < 1e-15);
        let (x, y) = limit_point(Variant::Hemisphere, 0.25).unwrap();
        assert!((x - 0.75 * PI).abs() < 1e-15 && (y - 1.25 * PI).abs() < 1e-15);
    }
}
