//! The `eps -> 0` limit of the moment-map images along a ladder of `eps`.

use std::f64::consts::PI;

use serde::Serialize;

use super::{boundary_points, theta_term, validate_grid, Coordinate, CurveSample, PerturbParams, PlanarCurve, Variant};
use crate::error::NumericError;

/// `{1e-2, 1e-3, 1e-4, 1e-5, 1e-6}`.
pub fn default_ladder() -> Vec<f64> {
    vec![1e-2, 1e-3, 1e-4, 1e-5, 1e-6]
}

/// 32 equally spaced values of `|j|` in `[0.2, 0.95]`, both signs.
///
/// Small `|j|` is left out: with `C = 1/sqrt(eps)` the outer turning point
/// `~ 2/|j|` only fits inside the disk once `eps` is tiny, so the default
/// ladder cannot resolve it. Near `|j| = 1` the hemisphere level set is
/// empty at `eps = 1e-2`.
pub fn default_limit_grid() -> Vec<f64> {
    let n = 32;
    let pos: Vec<f64> = (0..n).map(|k| 0.2 + 0.75 * k as f64 / (n - 1) as f64).collect();
    pos.iter().rev().map(|j| -j).chain(pos.iter().copied()).collect()
}

/// How the radial action approaches its limit at one `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConvergenceClass {
    /// Successive differences shrink at the rate the ladder spacing
    /// predicts for an error linear in `eps`.
    Linear,
    Faster,
    Slower,
    /// The last difference is below the quadrature noise.
    Resolved,
    /// Fewer than three rungs; no rate can be measured.
    Unmeasured,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleConvergence {
    pub j: f64,
    /// Radial action per rung of the ladder.
    pub radial: Vec<f64>,
    pub quad_err: Vec<f64>,
    pub limit: f64,
    pub err: f64,
    /// Ratio of the last two successive differences.
    pub ratio: Option<f64>,
    pub class: ConvergenceClass,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub ladder: Vec<f64>,
    /// Ratio of successive differences expected for linear convergence.
    pub expected_ratio: Option<f64>,
    pub median_ratio: Option<f64>,
    pub class: ConvergenceClass,
    /// Largest `|limit - last rung|` over the grid.
    pub max_shift: f64,
    /// Images at smaller `eps` contain those at larger `eps`, up to twice the
    /// quadrature error, at every shared sample.
    pub nesting_holds: bool,
    pub samples: Vec<SampleConvergence>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitDomain {
    pub variant: Variant,
    /// Extrapolated boundary curve.
    pub curve: PlanarCurve,
    /// Boundary curve at each rung of the ladder.
    pub rungs: Vec<PlanarCurve>,
    pub report: ConvergenceReport,
}

fn classify(ratio: f64, expected: f64) -> ConvergenceClass {
    if ratio >= 2.0 * expected {
        ConvergenceClass::Faster
    } else if ratio <= 0.5 * expected {
        ConvergenceClass::Slower
    } else {
        ConvergenceClass::Linear
    }
}

fn validate_ladder(ladder: &[f64]) -> Result<(), NumericError> {
    if ladder.is_empty() {
        return Err(NumericError::InvalidParams("empty eps ladder".into()));
    }
    if ladder.iter().any(|&e| !(e > 0.0 && e < 1.0)) {
        return Err(NumericError::InvalidParams("ladder values must lie in (0, 1)".into()));
    }
    if ladder.windows(2).any(|w| !(w[0] > w[1])) {
        return Err(NumericError::InvalidParams("ladder must be strictly decreasing".into()));
    }
    Ok(())
}

/// Boundary curves of the `variant` images over `ladder`, checked for
/// monotone convergence and extrapolated linearly in `eps` from the last two
/// rungs.
///
/// A radial action that decreases as `eps` decreases by more than the
/// quadrature error is reported as [`NumericError::Instability`].
pub fn limit_domain(variant: Variant, ladder: &[f64], grid: &[f64]) -> Result<LimitDomain, NumericError> {
    validate_ladder(ladder)?;
    validate_grid(grid)?;
    let mut per_rung = Vec::with_capacity(ladder.len());
    for &eps in ladder {
        let params = PerturbParams::for_variant(variant, eps)?;
        per_rung.push(boundary_points(&params, grid)?);
    }
    let rungs = per_rung
        .iter()
        .map(|pts| {
            PlanarCurve::new(
                pts.iter()
                    .map(|b| CurveSample { j: b.j, x: b.rho1, y: b.rho2, err: b.err })
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;

    let n = ladder.len();
    let expected = (n >= 3).then(|| (ladder[n - 3] - ladder[n - 2]) / (ladder[n - 2] - ladder[n - 1]));
    let mut samples = Vec::with_capacity(grid.len());
    let mut nesting_holds = true;
    for (s, &j) in grid.iter().enumerate() {
        let radial: Vec<f64> = per_rung.iter().map(|r| r[s].radial).collect();
        let quad_err: Vec<f64> = per_rung.iter().map(|r| r[s].err).collect();
        for k in 1..n {
            let slack = 2.0 * (quad_err[k] + quad_err[k - 1]);
            if radial[k] < radial[k - 1] - slack {
                return Err(NumericError::Instability(format!(
                    "radial action at j = {j} drops from {} (eps = {}) to {} (eps = {})",
                    radial[k - 1],
                    ladder[k - 1],
                    radial[k],
                    ladder[k]
                )));
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if radial[b] < radial[a] - 2.0 * (quad_err[a] + quad_err[b]) {
                    nesting_holds = false;
                }
            }
        }
        let (limit, err) = if n == 1 {
            (radial[0], quad_err[0])
        } else {
            let w = ladder[n - 1] / (ladder[n - 2] - ladder[n - 1]);
            let shift = (radial[n - 1] - radial[n - 2]) * w;
            (
                radial[n - 1] + shift,
                shift.abs() + quad_err[n - 1] + w * (quad_err[n - 1] + quad_err[n - 2]),
            )
        };
        let (ratio, class) = match expected {
            None => (None, ConvergenceClass::Unmeasured),
            Some(e) => {
                let d_last = radial[n - 1] - radial[n - 2];
                let d_prev = radial[n - 2] - radial[n - 3];
                let noise = 2.0 * (quad_err[n - 1] + quad_err[n - 2] + quad_err[n - 3]);
                if d_last.abs() <= noise {
                    (None, ConvergenceClass::Resolved)
                } else {
                    let r = d_prev / d_last;
                    (Some(r), classify(r, e))
                }
            }
        };
        samples.push(SampleConvergence { j, radial, quad_err, limit, err, ratio, class });
    }

    let curve = if n == 1 {
        rungs[0].clone()
    } else {
        PlanarCurve::new(
            samples
                .iter()
                .map(|s| CurveSample {
                    j: s.j,
                    x: s.limit + theta_term(Coordinate::First, s.j),
                    y: s.limit + theta_term(Coordinate::Second, s.j),
                    err: s.err,
                })
                .collect(),
        )?
    };

    let mut ratios: Vec<f64> = samples.iter().filter_map(|s| s.ratio).collect();
    ratios.sort_by(f64::total_cmp);
    let median_ratio = (!ratios.is_empty()).then(|| ratios[ratios.len() / 2]);
    let class = match (median_ratio, expected) {
        (Some(r), Some(e)) => classify(r, e),
        (None, Some(_)) => ConvergenceClass::Resolved,
        _ => ConvergenceClass::Unmeasured,
    };
    let max_shift = samples
        .iter()
        .map(|s| (s.limit - s.radial[n - 1]).abs())
        .fold(0.0, f64::max);

    Ok(LimitDomain {
        variant,
        curve,
        rungs,
        report: ConvergenceReport {
            ladder: ladder.to_vec(),
            expected_ratio: expected,
            median_ratio,
            class,
            max_shift,
            nesting_holds,
            samples,
        },
    })
}

fn segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let t = (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / (dx * dx + dy * dy)).clamp(0.0, 1.0);
    (p.0 - a.0 - t * dx).hypot(p.1 - a.1 - t * dy)
}

/// Distance from `(x, y)` to the boundary of the limit image: the corner
/// path `{x = 2pi} u {y = 2pi}` of the square for the full variant, the
/// segment `x + y = 2pi` for the hemisphere.
pub fn distance_to_limit(variant: Variant, x: f64, y: f64) -> Result<f64, NumericError> {
    let t = 2.0 * PI;
    match variant {
        Variant::Full => Ok(segment_distance((x, y), (t, 0.0), (t, t)).min(segment_distance((x, y), (t, t), (0.0, t)))),
        Variant::Hemisphere => Ok(segment_distance((x, y), (t, 0.0), (0.0, t))),
        Variant::Custom => Err(NumericError::InvalidParams("no limit shape for a custom C".into())),
    }
}

/// Largest [`distance_to_limit`] over the samples of `curve`.
pub fn sup_distance_to_limit(variant: Variant, curve: &PlanarCurve) -> Result<f64, NumericError> {
    curve
        .samples()
        .iter()
        .try_fold(0.0f64, |m, s| Ok(m.max(distance_to_limit(variant, s.x, s.y)?)))
}

/// `4 pi^2` (full) and `2 pi^2` (hemisphere).
pub fn limit_area(variant: Variant) -> Result<f64, NumericError> {
    match variant {
        Variant::Full => Ok(4.0 * PI * PI),
        Variant::Hemisphere => Ok(2.0 * PI * PI),
        Variant::Custom => Err(NumericError::InvalidParams("no limit shape for a custom C".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::momentmap::boundary_curve;

    #[test]
    fn single_rung_reproduces_boundary_curve() {
        let grid = [-0.6, -0.3, 0.3, 0.6];
        let d = limit_domain(Variant::Hemisphere, &[1e-3], &grid).unwrap();
        let direct = boundary_curve(&PerturbParams::hemisphere(1e-3).unwrap(), &grid).unwrap();
        assert_eq!(d.curve, direct);
        assert_eq!(d.report.class, ConvergenceClass::Unmeasured);
    }

    #[test]
    fn ladder_is_validated() {
        let grid = [0.5];
        assert!(limit_domain(Variant::Full, &[1e-3, 1e-2], &grid).is_err());
        assert!(limit_domain(Variant::Full, &[], &grid).is_err());
        assert!(limit_domain(Variant::Custom, &[1e-3], &grid).is_err());
        assert!(limit_domain(Variant::Full, &[1e-3], &[0.0]).is_err());
    }

    #[test]
    fn default_grid_shape() {
        let g = default_limit_grid();
        assert_eq!(g.len(), 64);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!((g[0] + 0.95).abs() < 1e-15 && (g[63] - 0.95).abs() < 1e-15);
        assert!(g.iter().all(|j| j.abs() >= 0.2 - 1e-15));
    }

    #[test]
    fn distances() {
        let t = 2.0 * PI;
        assert_eq!(distance_to_limit(Variant::Full, t, 1.0).unwrap(), 0.0);
        assert!((distance_to_limit(Variant::Full, t - 0.5, t - 1.0).unwrap() - 0.5).abs() < 1e-12);
        assert!(distance_to_limit(Variant::Hemisphere, PI, PI).unwrap() < 1e-15);
    }

    #[test]
    fn hemisphere_converges_roughly_linearly() {
        let d = limit_domain(Variant::Hemisphere, &[1e-2, 1e-3, 1e-4], &[-0.5, 0.5]).unwrap();
        assert!(d.report.nesting_holds);
        assert_eq!(d.report.class, ConvergenceClass::Linear, "{:?}", d.report);
        assert!(sup_distance_to_limit(Variant::Hemisphere, &d.curve).unwrap() < 1e-3);
    }
}
