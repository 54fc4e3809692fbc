//! Capacity obstructions, Gromov-width certificates and volume asymptotics.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

use crate::capseq::{ball_capacities, dstar_capacities, CapacitySequence, Surface};
use crate::error::ExactError;
use crate::exact::ExactQuantity;

/// Default number of capacities scanned by the width bounds.
pub const DEFAULT_WIDTH_TERMS: usize = 100;

/// Outcome of comparing two capacity sequences term by term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Dominance {
    Holds { upto: usize },
    FailsAt {
        k: usize,
        inner: ExactQuantity,
        outer: ExactQuantity,
    },
}

impl Dominance {
    pub fn holds(&self) -> bool {
        matches!(self, Dominance::Holds { .. })
    }
}

impl fmt::Display for Dominance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dominance::Holds { upto } => write!(f, "holds for k <= {upto}"),
            Dominance::FailsAt { k, inner, outer } => {
                write!(f, "fails_at k={k}: {inner} > {outer}")
            }
        }
    }
}

fn scan<F>(
    inner: &CapacitySequence,
    outer: &CapacitySequence,
    upto: usize,
    mut cmp: F,
) -> Result<Dominance, ExactError>
where
    F: FnMut(&ExactQuantity, &ExactQuantity) -> Result<Ordering, ExactError>,
{
    for k in 0..=upto {
        let (a, b) = (inner.term(k)?, outer.term(k)?);
        if cmp(&a, &b)? == Ordering::Greater {
            return Ok(Dominance::FailsAt {
                k,
                inner: a,
                outer: b,
            });
        }
    }
    Ok(Dominance::Holds { upto })
}

/// Checks `inner_k <= outer_k` for `0 <= k <= upto`, reporting the first
/// failure. This is the capacity-level necessary condition for a symplectic
/// embedding of `inner` into `outer`.
///
/// Both sequences must carry the same power of `pi`.
pub fn dominates(
    inner: &CapacitySequence,
    outer: &CapacitySequence,
    upto: usize,
) -> Result<Dominance, ExactError> {
    if upto == 0 {
        return Err(ExactError::InvalidSequence("upto must be at least 1".into()));
    }
    scan(inner, outer, upto, |a, b| a.try_cmp(b))
}

/// Like [`dominates`], but sequences in different units (e.g. `14` against
/// `4pi`) are compared through a rigorous enclosure of `pi`.
pub fn dominates_certified(
    inner: &CapacitySequence,
    outer: &CapacitySequence,
    upto: usize,
) -> Result<Dominance, ExactError> {
    if upto == 0 {
        return Err(ExactError::InvalidSequence("upto must be at least 1".into()));
    }
    scan(inner, outer, upto, |a, b| a.certified_cmp(b))
}

/// Upper bound for the Gromov width together with the index realising it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WidthBound {
    pub value: ExactQuantity,
    pub attained_at: usize,
}

/// `min_{1 <= k <= upto} c_k(target) / N(1,1)_k`.
///
/// If `B(a)` embeds then `a * N(1,1)_k = c_k(B(a)) <= c_k(target)` for every
/// `k`, so each ratio bounds `a`. Ties report the smallest `k`.
pub fn gromov_width_capacity_bound(
    target: &CapacitySequence,
    upto: usize,
) -> Result<WidthBound, ExactError> {
    if upto == 0 {
        return Err(ExactError::InvalidSequence("upto must be at least 1".into()));
    }
    let unit_ball = ball_capacities(ExactQuantity::int(1))?;
    let mut best: Option<WidthBound> = None;
    for k in 1..=upto {
        let ratio = target.term(k)?.checked_div(&unit_ball.term(k)?)?;
        let better = match &best {
            None => true,
            Some(b) => ratio.try_cmp(&b.value)? == Ordering::Less,
        };
        if better {
            best = Some(WidthBound {
                value: ratio,
                attained_at: k,
            });
        }
    }
    Ok(best.expect("upto >= 1"))
}

/// `sqrt(2 * volume)`: the largest ball with `vol B(a) = a^2 / 2` not
/// exceeding `volume`.
pub fn gromov_width_volume_bound(volume: ExactQuantity) -> Result<f64, ExactError> {
    if !volume.is_positive() {
        return Err(ExactError::NotPositive(volume.to_string()));
    }
    Ok((2.0 * volume.to_f64()).sqrt())
}

/// Exact form of [`gromov_width_volume_bound`] when `2 * volume` is a
/// rational square times `pi^2`.
pub fn gromov_width_volume_bound_exact(volume: ExactQuantity) -> Option<ExactQuantity> {
    if !volume.is_positive() {
        return None;
    }
    volume.checked_mul_int(2).ok()?.exact_sqrt()
}

/// Symplectic volume of the disk cotangent bundle: the area of its toric
/// image, `4pi^2` for `S^2` (the square `[0,2pi)^2`) and `2pi^2` for `RP^2`
/// (half of it, the open ball `B(2pi)`).
pub fn dstar_volume(surface: Surface) -> ExactQuantity {
    let coeff = match surface {
        Surface::S2 => 4,
        Surface::RP2 => 2,
    };
    ExactQuantity::new(Rational64::from_integer(coeff), 2).expect("pi^2 is supported")
}

/// `c_k^2 / (4k)`, which tends to the volume as `k -> infinity`.
pub fn volume_from_capacities(seq: &CapacitySequence, k: usize) -> Result<f64, ExactError> {
    if k == 0 {
        return Err(ExactError::InvalidSequence("k must be at least 1".into()));
    }
    let c = seq.term(k)?.to_f64();
    Ok(c * c / (4.0 * k as f64))
}

/// Model domains appearing as sources of known embeddings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Domain {
    Ball { a: ExactQuantity },
    Ellipsoid { a: ExactQuantity, b: ExactQuantity },
    Polydisk { a: ExactQuantity, b: ExactQuantity },
}

impl Domain {
    /// Volume with the normalization `vol B(a) = a^2 / 2`.
    pub fn volume(&self) -> ExactQuantity {
        let half = ExactQuantity::ratio(1, 2);
        let v = match self {
            Domain::Ball { a } => a.checked_mul(a).and_then(|x| x.checked_mul(&half)),
            Domain::Ellipsoid { a, b } => a.checked_mul(b).and_then(|x| x.checked_mul(&half)),
            Domain::Polydisk { a, b } => a.checked_mul(b),
        };
        v.expect("registry volumes are small")
    }

    /// ECH capacities, where they are available in closed form.
    pub fn capacities(&self) -> Option<CapacitySequence> {
        match self {
            Domain::Ball { a } => ball_capacities(*a).ok(),
            Domain::Ellipsoid { a, b } => CapacitySequence::combos(*a, *b).ok(),
            Domain::Polydisk { .. } => None,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Ball { a } => write!(f, "int B({a})"),
            Domain::Ellipsoid { a, b } => write!(f, "int E({a},{b})"),
            Domain::Polydisk { a, b } => write!(f, "int P({a},{b})"),
        }
    }
}

/// A symplectic embedding established by an explicit construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KnownEmbedding {
    pub source: Domain,
    pub target: Surface,
    pub volume_filling: bool,
    pub construction: &'static str,
}

/// The embeddings into disk cotangent bundles that are known from explicit
/// constructions. Nothing here is inferred; only these four are registered.
pub fn known_embeddings() -> Vec<KnownEmbedding> {
    let two_pi = ExactQuantity::int_pi(2);
    let four_pi = ExactQuantity::int_pi(4);
    vec![
        KnownEmbedding {
            source: Domain::Ball { a: two_pi },
            target: Surface::S2,
            volume_filling: false,
            construction: "disk bundle of an open hemisphere is symplectomorphic to int B(2pi)",
        },
        KnownEmbedding {
            source: Domain::Ball { a: two_pi },
            target: Surface::RP2,
            volume_filling: true,
            construction: "open hemisphere embeds in RP2 with full measure; its disk bundle is int B(2pi)",
        },
        KnownEmbedding {
            source: Domain::Ellipsoid {
                a: two_pi,
                b: four_pi,
            },
            target: Surface::S2,
            volume_filling: true,
            construction: "int E(2pi,4pi) embeds in int P(2pi,2pi) (Frenkel-Mueller)",
        },
        KnownEmbedding {
            source: Domain::Polydisk {
                a: two_pi,
                b: two_pi,
            },
            target: Surface::S2,
            volume_filling: true,
            construction: "disk bundle of a punctured sphere is symplectomorphic to int P(2pi,2pi)",
        },
    ]
}

/// Where the upper half of a width certificate comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UpperSource {
    CapacityRatio { k: usize },
    Volume { volume: ExactQuantity },
}

impl fmt::Display for UpperSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpperSource::CapacityRatio { k } => write!(f, "c_{k} ratio at k={k}"),
            UpperSource::Volume { volume } => write!(f, "volume sqrt(2*{volume})"),
        }
    }
}

/// Gromov width with matching upper and lower bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WidthCertificate {
    pub surface: Surface,
    pub width: ExactQuantity,
    pub upper: ExactQuantity,
    pub upper_source: UpperSource,
    pub lower: ExactQuantity,
    pub lower_source: &'static str,
}

/// Gromov width of `D*S2` / `D*RP2` with a certificate.
///
/// The upper bound comes from the `c_k` ratio scan for `S^2` and from the
/// volume for `RP^2`; the lower bound is the largest registered ball.
///
/// Panics if the two bounds disagree.
pub fn gromov_width(surface: Surface) -> WidthCertificate {
    gromov_width_upto(surface, DEFAULT_WIDTH_TERMS).expect("default scan length is valid")
}

/// [`gromov_width`] with an explicit scan length for the capacity bound.
pub fn gromov_width_upto(surface: Surface, upto: usize) -> Result<WidthCertificate, ExactError> {
    let (upper, upper_source) = match surface {
        Surface::S2 => {
            let b = gromov_width_capacity_bound(&dstar_capacities(surface), upto)?;
            (b.value, UpperSource::CapacityRatio { k: b.attained_at })
        }
        Surface::RP2 => {
            let volume = dstar_volume(surface);
            let bound = gromov_width_volume_bound_exact(volume)
                .ok_or_else(|| ExactError::InvalidSequence("volume bound is not exact".into()))?;
            (bound, UpperSource::Volume { volume })
        }
    };
    let mut lower: Option<(ExactQuantity, &'static str)> = None;
    for e in known_embeddings().into_iter().filter(|e| e.target == surface) {
        if let Domain::Ball { a } = e.source {
            let larger = match &lower {
                None => true,
                Some((l, _)) => a.try_cmp(l)? == Ordering::Greater,
            };
            if larger {
                lower = Some((a, e.construction));
            }
        }
    }
    let (lower, lower_source) = lower.expect("every surface has a registered ball");
    assert_eq!(
        upper, lower,
        "width certificate mismatch for {surface}: upper {upper}, lower {lower}"
    );
    Ok(WidthCertificate {
        surface,
        width: upper,
        upper,
        upper_source,
        lower,
        lower_source,
    })
}
