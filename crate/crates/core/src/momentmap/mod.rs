//! The perturbed integrable system `(H, J)` on the unit-disk model of the
//! sphere, its radial action integrals and the boundary curves of the
//! resulting moment-map images.
//!
//! Positions `x` live in the open disk `|x|^2 < C`, momenta `y` in the plane:
//!
//! ```text
//! H(x, y) = |y|^2 (1 + |x|^2)^2 / 4 + eps / (C - |x|^2)
//! J(x, y) = x1 y2 - x2 y1
//! ```
//!
//! On the level `H = h` with `J = j` the radial motion is confined between
//! two roots `r_min < r_max`, and the action coordinates are
//! `rho_i(j) = 2 * int sqrt(4 (h - eps/(C - r^2)) / (1 + r^2)^2 - j^2 / r^2) dr + Theta_i(j)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::NumericError;

pub mod analytic;
pub mod curve;
pub mod limit;
pub mod numerics;

pub use curve::{CurveSample, PlanarCurve};
pub use limit::{limit_domain, ConvergenceClass, ConvergenceReport, LimitDomain, SampleConvergence};

/// Absolute tolerance requested from the radial quadrature.
pub const ACTION_TOL: f64 = 1e-10;
/// Absolute tolerance on `u = r^2` for the minimiser of the effective potential.
pub const MIN_TOL: f64 = 1e-12;
/// Absolute tolerance on the radial roots.
pub const ROOT_TOL: f64 = 1e-12;

/// Which family of parameters is in use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `C = 1 / sqrt(eps)`: the images fill out the square `[0, 2pi)^2`.
    Full,
    /// `C = 1`: the disk is a hemisphere, the images fill out a triangle.
    Hemisphere,
    Custom,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Full => "full",
            Variant::Hemisphere => "hemisphere",
            Variant::Custom => "custom",
        })
    }
}

impl FromStr for Variant {
    type Err = NumericError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full" => Ok(Variant::Full),
            "hemisphere" => Ok(Variant::Hemisphere),
            "custom" => Ok(Variant::Custom),
            _ => Err(NumericError::InvalidParams(format!("unknown variant {s:?}"))),
        }
    }
}

/// `(eps, C)` with `0 < eps < 1` and `C >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerturbParams {
    epsilon: f64,
    c: f64,
    variant: Variant,
}

impl PerturbParams {
    pub fn full(epsilon: f64) -> Result<Self, NumericError> {
        Self::checked(epsilon, 1.0 / epsilon.sqrt(), Variant::Full)
    }

    pub fn hemisphere(epsilon: f64) -> Result<Self, NumericError> {
        Self::checked(epsilon, 1.0, Variant::Hemisphere)
    }

    pub fn custom(epsilon: f64, c: f64) -> Result<Self, NumericError> {
        Self::checked(epsilon, c, Variant::Custom)
    }

    /// Parameters of a named variant; `Custom` has no canonical `C`.
    pub fn for_variant(variant: Variant, epsilon: f64) -> Result<Self, NumericError> {
        match variant {
            Variant::Full => Self::full(epsilon),
            Variant::Hemisphere => Self::hemisphere(epsilon),
            Variant::Custom => Err(NumericError::InvalidParams(
                "the custom variant needs an explicit C".into(),
            )),
        }
    }

    fn checked(epsilon: f64, c: f64, variant: Variant) -> Result<Self, NumericError> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(NumericError::InvalidParams(format!("epsilon = {epsilon} is not in (0, 1)")));
        }
        if !(c >= 1.0) || !c.is_finite() {
            return Err(NumericError::InvalidParams(format!("C = {c} is not >= 1")));
        }
        Ok(Self { epsilon, c, variant })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// `j^2 (1+u)^2 / (4u) + eps / (C - u)`, the value of `H` on the circle
    /// `|x|^2 = u` with purely angular momentum `j`.
    pub fn effective_potential(&self, u: f64, j: f64) -> f64 {
        j * j * (1.0 + u) * (1.0 + u) / (4.0 * u) + self.epsilon / (self.c - u)
    }
}

/// A point `(x, y)` of the cotangent bundle of the disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub x: [f64; 2],
    pub y: [f64; 2],
}

impl PhasePoint {
    pub fn new(x: [f64; 2], y: [f64; 2]) -> Self {
        Self { x, y }
    }

    pub fn norm_sq_x(&self) -> f64 {
        self.x[0] * self.x[0] + self.x[1] * self.x[1]
    }
}

pub fn hamiltonian(params: &PerturbParams, p: &PhasePoint) -> Result<f64, NumericError> {
    let u = p.norm_sq_x();
    if !(u < params.c) {
        return Err(NumericError::OutsideDomain { norm_sq: u, c: params.c });
    }
    let y2 = p.y[0] * p.y[0] + p.y[1] * p.y[1];
    Ok(y2 * (1.0 + u) * (1.0 + u) / 4.0 + params.epsilon / (params.c - u))
}

pub fn angular_momentum(p: &PhasePoint) -> f64 {
    p.x[0] * p.y[1] - p.x[1] * p.y[0]
}

/// Central-difference estimate of the Poisson bracket
/// `{H, J} = sum_i dH/dx_i dJ/dy_i - dH/dy_i dJ/dx_i` with step `step`.
pub fn poisson_bracket_check(params: &PerturbParams, p: &PhasePoint, step: f64) -> Result<f64, NumericError> {
    if !(step > 0.0 && step <= 1e-3) {
        return Err(NumericError::InvalidParams(format!("step {step} is not in (0, 1e-3]")));
    }
    let reach = p.norm_sq_x().sqrt() + step;
    if !(reach * reach < params.c) {
        return Err(NumericError::OutsideDomain {
            norm_sq: reach * reach,
            c: params.c,
        });
    }
    // Coordinates ordered (x1, x2, y1, y2).
    let coords = [p.x[0], p.x[1], p.y[0], p.y[1]];
    let at = |c: [f64; 4]| PhasePoint::new([c[0], c[1]], [c[2], c[3]]);
    let mut grad_h = [0.0; 4];
    let mut grad_j = [0.0; 4];
    for i in 0..4 {
        let (mut plus, mut minus) = (coords, coords);
        plus[i] += step;
        minus[i] -= step;
        grad_h[i] = (hamiltonian(params, &at(plus))? - hamiltonian(params, &at(minus))?) / (2.0 * step);
        grad_j[i] = (angular_momentum(&at(plus)) - angular_momentum(&at(minus))) / (2.0 * step);
    }
    Ok(grad_h[0] * grad_j[2] + grad_h[1] * grad_j[3] - grad_h[2] * grad_j[0] - grad_h[3] * grad_j[1])
}

/// Minimum of the effective potential over `u = r^2` in `(0, C)`, with its
/// minimiser. For `j = 0` the infimum `eps / C` sits at `u = 0`.
pub fn h_min(params: &PerturbParams, j: f64) -> (f64, f64) {
    if j == 0.0 {
        return (params.epsilon / params.c, 0.0);
    }
    let (eps, c, j2) = (params.epsilon, params.c, j * j);
    // The derivative is strictly increasing on (0, C), from -inf to +inf.
    let slope = |u: f64| j2 * (u * u - 1.0) / (4.0 * u * u) + eps / ((c - u) * (c - u));
    let mut lo = 0.5 * c.min(1.0);
    while slope(lo) >= 0.0 {
        lo *= 0.5;
    }
    let mut hi = lo;
    while slope(hi) <= 0.0 {
        hi = c - 0.5 * (c - hi);
    }
    let u = numerics::bisect(slope, lo, hi, MIN_TOL).expect("bracketed by construction");
    (params.effective_potential(u, j), u)
}

/// The two radii where the level set `{H = h, J = j}` touches its radial
/// turning points.
pub fn radial_roots(params: &PerturbParams, h: f64, j: f64) -> Result<(f64, f64), NumericError> {
    if j == 0.0 {
        return Err(NumericError::ZeroMomentum);
    }
    if !h.is_finite() {
        return Err(NumericError::InvalidParams(format!("level h = {h}")));
    }
    let (hm, u_star) = h_min(params, j);
    let r_star = u_star.sqrt();
    let degenerate = 4.0 * f64::EPSILON * h.abs().max(1.0);
    if (h - hm).abs() <= degenerate {
        return Ok((r_star, r_star));
    }
    if h < hm {
        return Err(NumericError::NoRoot { h, h_min: hm, j });
    }
    let g = |r: f64| params.effective_potential(r * r, j) - h;
    if g(r_star) >= 0.0 {
        return Ok((r_star, r_star));
    }
    let mut lo = 0.5 * r_star;
    while g(lo) <= 0.0 {
        lo *= 0.5;
    }
    let edge = params.c.sqrt();
    let mut hi = r_star;
    while g(hi) <= 0.0 {
        let next = edge - 0.5 * (edge - hi);
        if next >= edge || next == hi {
            return Err(NumericError::Bracket(format!("no outer root below sqrt(C) = {edge}")));
        }
        hi = next;
    }
    let r_min = numerics::bisect(g, lo, r_star, ROOT_TOL)?;
    let r_max = numerics::bisect(g, r_star, hi, ROOT_TOL)?;
    Ok((r_min, r_max))
}

/// `2 * int_{r_min}^{r_max} sqrt(4 (h - eps/(C - r^2)) / (1 + r^2)^2 - j^2/r^2) dr`
/// together with the quadrature error estimate.
///
/// The substitution `r = r_min + (r_max - r_min) sin^2(t)` cancels the
/// square-root zeros at both ends, leaving a smooth integrand on `[0, pi/2]`.
pub fn radial_action(params: &PerturbParams, h: f64, j: f64) -> Result<(f64, f64), NumericError> {
    let (a, b) = radial_roots(params, h, j)?;
    if b <= a {
        return Ok((0.0, 0.0));
    }
    let (eps, c, j2) = (params.epsilon, params.c, j * j);
    let width = b - a;
    let integrand = |t: f64| {
        let s = t.sin();
        let r = a + width * s * s;
        let r2 = r * r;
        let p = 4.0 * (h - eps / (c - r2)) / ((1.0 + r2) * (1.0 + r2)) - j2 / r2;
        p.max(0.0).sqrt() * width * (2.0 * t).sin()
    };
    let q = numerics::integrate(integrand, 0.0, PI / 2.0, 0.5 * ACTION_TOL)?;
    Ok((2.0 * q.value, 2.0 * q.err))
}

/// One of the two action coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coordinate {
    First,
    Second,
}

impl TryFrom<u8> for Coordinate {
    type Error = NumericError;
    fn try_from(i: u8) -> Result<Self, Self::Error> {
        match i {
            1 => Ok(Coordinate::First),
            2 => Ok(Coordinate::Second),
            _ => Err(NumericError::InvalidParams(format!("coordinate index {i} is not 1 or 2"))),
        }
    }
}

/// The angular correction to `rho_i`: `2 pi j` for the second coordinate
/// when `j > 0`, `-2 pi j` for the first when `j < 0`, and zero otherwise.
///
/// At `j = 0` both one-sided limits vanish, so zero is returned; callers
/// that care should use [`theta_term_flagged`].
pub fn theta_term(i: Coordinate, j: f64) -> f64 {
    match i {
        Coordinate::Second if j > 0.0 => 2.0 * PI * j,
        Coordinate::First if j < 0.0 => -2.0 * PI * j,
        _ => 0.0,
    }
}

/// [`theta_term`] plus a flag that is set when `j = 0` was extended by
/// continuity.
pub fn theta_term_flagged(i: Coordinate, j: f64) -> (f64, bool) {
    (theta_term(i, j), j == 0.0)
}

/// A point `(rho_1(j), rho_2(j))` of the boundary of the moment-map image.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryPoint {
    pub j: f64,
    pub rho1: f64,
    pub rho2: f64,
    /// The shared radial action (without the angular terms).
    pub radial: f64,
    pub err: f64,
}

/// `rho_i(j)` on the level `h = 1`, with its error estimate.
pub fn boundary_coordinate(params: &PerturbParams, i: Coordinate, j: f64) -> Result<(f64, f64), NumericError> {
    let (radial, err) = radial_action(params, 1.0, j)?;
    Ok((radial + theta_term(i, j), err))
}

pub fn boundary_point(params: &PerturbParams, j: f64) -> Result<BoundaryPoint, NumericError> {
    let (radial, err) = radial_action(params, 1.0, j)?;
    Ok(BoundaryPoint {
        j,
        rho1: radial + theta_term(Coordinate::First, j),
        rho2: radial + theta_term(Coordinate::Second, j),
        radial,
        err,
    })
}

pub(crate) fn validate_grid(grid: &[f64]) -> Result<(), NumericError> {
    if grid.is_empty() {
        return Err(NumericError::InvalidParams("empty j grid".into()));
    }
    for w in grid.windows(2) {
        if !(w[0] < w[1]) {
            return Err(NumericError::InvalidParams(format!(
                "j grid is not strictly increasing at {} -> {}",
                w[0], w[1]
            )));
        }
    }
    for &j in grid {
        if j == 0.0 {
            return Err(NumericError::ZeroMomentum);
        }
        if !(j > -1.0 && j < 1.0) {
            return Err(NumericError::InvalidParams(format!("j = {j} is not in (-1, 1)")));
        }
    }
    Ok(())
}

/// Boundary points over a grid of `j` values, evaluated in parallel. The
/// result is identical to sequential evaluation.
pub fn boundary_points(params: &PerturbParams, grid: &[f64]) -> Result<Vec<BoundaryPoint>, NumericError> {
    validate_grid(grid)?;
    grid.par_iter().map(|&j| boundary_point(params, j)).collect()
}

/// The curve `j -> (rho_1(j), rho_2(j))` sampled on `grid`.
pub fn boundary_curve(params: &PerturbParams, grid: &[f64]) -> Result<PlanarCurve, NumericError> {
    let samples = boundary_points(params, grid)?
        .into_iter()
        .map(|b| CurveSample {
            j: b.j,
            x: b.rho1,
            y: b.rho2,
            err: b.err,
        })
        .collect();
    PlanarCurve::new(samples)
}

/// Largest `|j|` with a nonempty level set `{H = 1, J = j}`, i.e. the root
/// of `h_min(j) = 1`.
pub fn j_max(params: &PerturbParams) -> f64 {
    let f = |j: f64| h_min(params, j).0 - 1.0;
    numerics::bisect(f, 0.0, 1.0, 1e-14).expect("h_min(0) < 1 < h_min(1)")
}

/// `samples` Chebyshev nodes `cos((2k-1) pi / (2 samples))` in increasing
/// order, scaled by `scale`. `samples` must be even so that `0` is excluded.
pub fn chebyshev_grid(samples: usize, scale: f64) -> Result<Vec<f64>, NumericError> {
    if samples == 0 || samples % 2 == 1 {
        return Err(NumericError::InvalidParams(format!(
            "sample count {samples} must be even and positive"
        )));
    }
    if !(scale > 0.0 && scale <= 1.0) {
        return Err(NumericError::InvalidParams(format!("scale {scale} is not in (0, 1]")));
    }
    let n = samples as f64;
    Ok((1..=samples)
        .rev()
        .map(|k| scale * ((2 * k - 1) as f64 * PI / (2.0 * n)).cos())
        .collect())
}

/// A symmetric grid for plotting boundary curves at a fixed `eps`: Chebyshev
/// nodes scaled just inside the admissible range `|j| < j_max`.
pub fn admissible_grid(params: &PerturbParams, samples: usize) -> Result<Vec<f64>, NumericError> {
    chebyshev_grid(samples, j_max(params) * (1.0 - 1e-9))
}
