//! Combinatorial ECH chain complexes of three Zoll contact manifolds.
//!
//! After a Morse–Bott perturbation the only Reeb orbits below any action
//! bound are covers of two elliptic orbits `g1` (minimum) and `g2` (maximum),
//! so a generator is an [`OrbitSet`] `g1^m1 g2^m2`. All orbits are elliptic,
//! the differential vanishes and the chain complex is its own homology.
//!
//! | model       | CZ(g1^k) | CZ(g2^k) | action      | H_1     |
//! |-------------|----------|----------|-------------|---------|
//! | `S3`        | 4k - 1   | 4k + 1   | m1 + m2     | 0       |
//! | `SstarS2`   | 2k - 1   | 2k + 1   | 2pi(m1+m2)  | Z/2     |
//! | `SstarRP2`  | 2k - 1   | 2k + 1   | pi(m1+m2)   | Z/4     |
//!
//! The ECH index is assembled as `c_tau + Q_tau + CZ(alpha) - CZ(beta)`; the
//! relative Chern class and the relative self-intersection are both of the
//! difference form `f(alpha) - f(beta)` in the trivializations used here.

use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::capseq::{dstar_capacities, CapacitySequence, Surface};
use crate::error::ComplexError;
use crate::exact::ExactQuantity;

/// Orbit set `g1^m1 g2^m2`; `(0, 0)` is the empty set, written `1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbitSet {
    pub m1: u64,
    pub m2: u64,
}

impl OrbitSet {
    pub const EMPTY: OrbitSet = OrbitSet { m1: 0, m2: 0 };

    pub const fn new(m1: u64, m2: u64) -> Self {
        Self { m1, m2 }
    }

    pub fn is_empty(&self) -> bool {
        self.m1 == 0 && self.m2 == 0
    }

    /// Total multiplicity `m1 + m2`.
    pub fn degree(&self) -> u64 {
        self.m1 + self.m2
    }
}

impl fmt::Display for OrbitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factor = |f: &mut fmt::Formatter<'_>, name: &str, m: u64| match m {
            0 => Ok(()),
            1 => f.write_str(name),
            _ => write!(f, "{name}^{m}"),
        };
        if self.is_empty() {
            return f.write_str("1");
        }
        factor(f, "g1", self.m1)?;
        if self.m1 > 0 && self.m2 > 0 {
            f.write_str(" ")?;
        }
        factor(f, "g2", self.m2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelName {
    S3,
    SstarS2,
    SstarRP2,
}

impl std::str::FromStr for ModelName {
    type Err = ComplexError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "s3" => Ok(ModelName::S3),
            "sstar-s2" => Ok(ModelName::SstarS2),
            "sstar-rp2" => Ok(ModelName::SstarRP2),
            _ => Err(ComplexError::InvalidArgument(format!(
                "unknown model {s:?} (expected s3, sstar-s2 or sstar-rp2)"
            ))),
        }
    }
}

impl fmt::Display for ModelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelName::S3 => "s3",
            ModelName::SstarS2 => "sstar-s2",
            ModelName::SstarRP2 => "sstar-rp2",
        })
    }
}

/// Closed form of the absolute grading `I(alpha, empty)`:
/// `(square*(m1^2 + m2^2) + cross*m1*m2 + lin1*m1 + lin2*m2) / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexForm {
    pub square: i64,
    pub cross: i64,
    pub lin1: i64,
    pub lin2: i64,
    pub den: i64,
}

impl IndexForm {
    pub fn eval(&self, a: OrbitSet) -> Rational64 {
        let (m1, m2) = (a.m1 as i64, a.m2 as i64);
        Rational64::new(
            self.square * (m1 * m1 + m2 * m2) + self.cross * m1 * m2 + self.lin1 * m1 + self.lin2 * m2,
            self.den,
        )
    }
}

/// Parameters of one Zoll model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZollModel {
    pub name: ModelName,
    /// `CZ(g1^k) = slope*k - 1`, `CZ(g2^k) = slope*k + 1`.
    pub cz_slope: i64,
    /// Action of a simple orbit.
    pub action_unit: ExactQuantity,
    /// Order of `H_1`; the class of `g1^m1 g2^m2` is `m1 + m2` modulo this.
    pub homology_modulus: u64,
    pub index_form: IndexForm,
    /// `c_tau` contributes `chern * (m1 + m2)` per end.
    pub chern: Rational64,
    /// `Q_tau` contributes `self_q * (m1^2 + m2^2) + cross_q * m1*m2` per end.
    pub self_q: Rational64,
    pub cross_q: Rational64,
}

impl ZollModel {
    pub fn s3() -> Self {
        Self {
            name: ModelName::S3,
            cz_slope: 4,
            action_unit: ExactQuantity::int(1),
            homology_modulus: 1,
            index_form: IndexForm { square: 1, cross: 2, lin1: 1, lin2: 3, den: 1 },
            chern: Rational64::zero(),
            self_q: Rational64::from_integer(-1),
            cross_q: Rational64::from_integer(2),
        }
    }

    pub fn sstar_s2() -> Self {
        Self {
            name: ModelName::SstarS2,
            cz_slope: 2,
            action_unit: ExactQuantity::int_pi(2),
            homology_modulus: 2,
            index_form: IndexForm { square: 1, cross: 2, lin1: 0, lin2: 4, den: 2 },
            chern: Rational64::zero(),
            self_q: Rational64::new(-1, 2),
            cross_q: Rational64::from_integer(1),
        }
    }

    pub fn sstar_rp2() -> Self {
        Self {
            name: ModelName::SstarRP2,
            cz_slope: 2,
            action_unit: ExactQuantity::int_pi(1),
            homology_modulus: 4,
            index_form: IndexForm { square: 1, cross: 2, lin1: -2, lin2: 6, den: 4 },
            chern: Rational64::new(-1, 2),
            self_q: Rational64::new(-3, 4),
            cross_q: Rational64::new(1, 2),
        }
    }

    pub fn from_name(name: ModelName) -> Self {
        match name {
            ModelName::S3 => Self::s3(),
            ModelName::SstarS2 => Self::sstar_s2(),
            ModelName::SstarRP2 => Self::sstar_rp2(),
        }
    }

    pub fn all() -> [ZollModel; 3] {
        [Self::s3(), Self::sstar_s2(), Self::sstar_rp2()]
    }
}

/// Terms of `I(alpha, beta) = c_tau + Q_tau + CZ(alpha) - CZ(beta)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexPair {
    pub c_tau: Rational64,
    pub q_tau: Rational64,
    pub cz_sum_alpha: i64,
    pub cz_sum_beta: i64,
}

impl IndexPair {
    /// The assembled index, which must be an integer.
    pub fn total(&self) -> i64 {
        let sum4 = quarters(self.c_tau) + quarters(self.q_tau) + 4 * (self.cz_sum_alpha - self.cz_sum_beta);
        assert!(sum4 % 4 == 0, "ECH index {sum4}/4 is not an integer");
        sum4 / 4
    }
}

/// `4 r` for a rational whose denominator divides 4.
fn quarters(r: Rational64) -> i64 {
    let den = *r.denom();
    assert!(4 % den == 0, "denominator {den} does not divide 4");
    *r.numer() * (4 / den)
}

/// `H_1` class of `alpha`: `(m1 + m2) mod homology_modulus`.
pub fn homology_class(model: &ZollModel, alpha: OrbitSet) -> u64 {
    alpha.degree() % model.homology_modulus
}

fn check_same_class(model: &ZollModel, alpha: OrbitSet, beta: OrbitSet) -> Result<(), ComplexError> {
    let (a, b) = (homology_class(model, alpha), homology_class(model, beta));
    if a != b {
        return Err(ComplexError::HomologyMismatch {
            alpha: a,
            beta: b,
            modulus: model.homology_modulus,
        });
    }
    Ok(())
}

/// `CZ^I(alpha) = sum_{k=1}^{m1} CZ(g1^k) + sum_{k=1}^{m2} CZ(g2^k)`, summed as
/// two arithmetic series.
pub fn cz_total(model: &ZollModel, alpha: OrbitSet) -> i64 {
    let s = model.cz_slope;
    let (m1, m2) = (alpha.m1 as i64, alpha.m2 as i64);
    s * m1 * (m1 + 1) / 2 - m1 + s * m2 * (m2 + 1) / 2 + m2
}

/// Per-end Chern and self-intersection terms, in quarter units.
fn end_terms(model: &ZollModel, a: OrbitSet) -> (i64, i64) {
    let (m1, m2) = (a.m1 as i64, a.m2 as i64);
    let c = quarters(model.chern) * (m1 + m2);
    let q = quarters(model.self_q) * (m1 * m1 + m2 * m2) + quarters(model.cross_q) * m1 * m2;
    (c, q)
}

/// The pieces of the ECH index for the unique relative class from `alpha` to `beta`.
pub fn index_components(
    model: &ZollModel,
    alpha: OrbitSet,
    beta: OrbitSet,
) -> Result<IndexPair, ComplexError> {
    check_same_class(model, alpha, beta)?;
    let ((ca, qa), (cb, qb)) = (end_terms(model, alpha), end_terms(model, beta));
    Ok(IndexPair {
        c_tau: Rational64::new(ca - cb, 4),
        q_tau: Rational64::new(qa - qb, 4),
        cz_sum_alpha: cz_total(model, alpha),
        cz_sum_beta: cz_total(model, beta),
    })
}

/// `I(alpha, beta)` assembled from [`index_components`].
pub fn ech_index(model: &ZollModel, alpha: OrbitSet, beta: OrbitSet) -> Result<i64, ComplexError> {
    index_components(model, alpha, beta).map(|p| p.total())
}

/// The closed-form index as a polynomial in the multiplicities, written out
/// independently of [`index_components`]. Used to cross-check the assembly.
pub fn closed_form_index(
    model: &ZollModel,
    alpha: OrbitSet,
    beta: OrbitSet,
) -> Result<i64, ComplexError> {
    check_same_class(model, alpha, beta)?;
    let (m1, m2, n1, n2) = (alpha.m1 as i64, alpha.m2 as i64, beta.m1 as i64, beta.m2 as i64);
    // numerator over a common denominator of 4
    let value4 = match model.name {
        ModelName::S3 => {
            let g = |a: i64, b: i64| (a + b) * (a + b) + a + 3 * b;
            4 * (g(m1, m2) - g(n1, n2))
        }
        ModelName::SstarS2 => 2 * (m1 * m1 + m2 * m2 - n1 * n1 - n2 * n2) + 4 * (2 * m2 - 2 * n2 + m1 * m2 - n1 * n2),
        ModelName::SstarRP2 => {
            let delta = m1 + m2 - n1 - n2;
            delta * delta + 2 * delta * (n1 + n2) + 2 * (-m1 + 3 * m2 + n1 - 3 * n2)
        }
    };
    assert!(value4 % 4 == 0, "closed-form index {value4}/4 is not an integer");
    Ok(value4 / 4)
}

/// Absolute grading `|alpha| = I(alpha, empty)` on the nullhomologous class.
pub fn grading(model: &ZollModel, alpha: OrbitSet) -> Result<i64, ComplexError> {
    let class = homology_class(model, alpha);
    if class != 0 {
        return Err(ComplexError::GradingUndefined {
            class,
            modulus: model.homology_modulus,
        });
    }
    let g = model.index_form.eval(alpha);
    assert!(g.is_integer(), "grading {g} of {alpha} is not an integer");
    Ok(g.to_integer())
}

/// Symplectic action of the unperturbed form, `action_unit * (m1 + m2)`.
pub fn action(model: &ZollModel, alpha: OrbitSet) -> ExactQuantity {
    model
        .action_unit
        .checked_mul_int(alpha.degree() as i64)
        .expect("action fits in i64")
}

/// All nullhomologous generators with grading at most `max_grading`,
/// ordered by grading (ties, which never occur, would break by `m2`).
///
/// Panics if the gradings are not exactly `0, 2, 4, ..`: every model has
/// one generator per nonnegative even degree, so anything else means a
/// transcription error in the model parameters.
pub fn generators_by_grading(
    model: &ZollModel,
    max_grading: u64,
) -> Result<Vec<OrbitSet>, ComplexError> {
    if max_grading % 2 != 0 {
        return Err(ComplexError::InvalidArgument(format!(
            "max grading must be even, got {max_grading}"
        )));
    }
    let max = max_grading as i64;
    let step = model.homology_modulus;
    let mut graded = Vec::new();
    let mut d = 0u64;
    // at fixed degree the grading grows with m2, so (d, 0) is the cheapest generator
    while grading(model, OrbitSet::new(d, 0))? <= max {
        for m2 in 0..=d {
            let a = OrbitSet::new(d - m2, m2);
            let g = grading(model, a)?;
            if g <= max {
                graded.push((g, m2, a));
            }
        }
        d += step;
    }
    graded.sort_by_key(|&(g, m2, _)| (g, m2));
    for (i, &(g, _, a)) in graded.iter().enumerate() {
        assert_eq!(
            g,
            2 * i as i64,
            "model {}: generator {a} has grading {g}, expected {}",
            model.name,
            2 * i
        );
    }
    assert_eq!(graded.len() as i64, max / 2 + 1, "model {}: missing gradings", model.name);
    Ok(graded.into_iter().map(|(_, _, a)| a).collect())
}

/// Orbit sets in an arbitrary class `class` with total degree at most
/// `max_degree`, ordered by their index relative to the lowest-degree
/// generator `(class, 0)` of that class.
pub fn orbit_sets_in_class(
    model: &ZollModel,
    class: u64,
    max_degree: u64,
) -> Result<Vec<(OrbitSet, i64)>, ComplexError> {
    if class >= model.homology_modulus {
        return Err(ComplexError::InvalidArgument(format!(
            "class {class} out of range for modulus {}",
            model.homology_modulus
        )));
    }
    let reference = OrbitSet::new(class, 0);
    let mut out = Vec::new();
    let mut d = class;
    while d <= max_degree {
        for m2 in 0..=d {
            let a = OrbitSet::new(d - m2, m2);
            out.push((a, ech_index(model, a, reference)?));
        }
        d += model.homology_modulus;
    }
    out.sort_by_key(|&(a, i)| (i, a.m2));
    Ok(out)
}

/// The U map on nullhomologous generators:
/// `g1^i g2^j -> g1^(i+1) g2^(j-1)` for `j > 0` and `g1^i -> g2^(i - drop)`,
/// where `drop` is the order of `H_1`.
///
/// For `S^3` no explicit formula is displayed; this one is inferred from the
/// generator order, where each step lowers the grading by exactly 2.
pub fn u_map(model: &ZollModel, alpha: OrbitSet) -> Result<OrbitSet, ComplexError> {
    let class = homology_class(model, alpha);
    if class != 0 {
        return Err(ComplexError::GradingUndefined {
            class,
            modulus: model.homology_modulus,
        });
    }
    if alpha.is_empty() {
        return Err(ComplexError::UndefinedOnEmpty);
    }
    Ok(if alpha.m2 > 0 {
        OrbitSet::new(alpha.m1 + 1, alpha.m2 - 1)
    } else {
        OrbitSet::new(0, alpha.m1 - model.homology_modulus)
    })
}

/// Iterates the U map from `alpha` down to the empty set, returning the
/// whole chain `alpha, U(alpha), ..., 1`.
pub fn u_chain(model: &ZollModel, alpha: OrbitSet) -> Result<Vec<OrbitSet>, ComplexError> {
    let mut chain = vec![alpha];
    let mut cur = alpha;
    while !cur.is_empty() {
        cur = u_map(model, cur)?;
        chain.push(cur);
    }
    Ok(chain)
}

/// ECH spectrum `c_0, .., c_{n-1}`: `c_k` is the action of the generator of
/// grading `2k`, the unique class with `U^k = [empty]`.
pub fn spectrum(model: &ZollModel, n: usize) -> Result<Vec<ExactQuantity>, ComplexError> {
    if n == 0 {
        return Err(ComplexError::InvalidArgument("count must be at least 1".into()));
    }
    let gens = generators_by_grading(model, 2 * (n as u64 - 1))?;
    Ok(gens.into_iter().map(|a| action(model, a)).collect())
}

/// The capacity sequence the spectrum should reproduce: `N(1,1)` for `S3`,
/// and the disk-bundle capacities for the unit cotangent bundles.
pub fn formula_capacities(model: &ZollModel) -> CapacitySequence {
    match model.name {
        ModelName::S3 => {
            let one = ExactQuantity::int(1);
            CapacitySequence::combos(one, one).expect("N(1,1) is well formed")
        }
        ModelName::SstarS2 => dstar_capacities(Surface::S2),
        ModelName::SstarRP2 => dstar_capacities(Surface::RP2),
    }
}
