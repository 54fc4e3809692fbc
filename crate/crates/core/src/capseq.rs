//! Capacity sequences built from nonnegative integer combinations.
//!
//! `N(a, b)` lists every value `m*a + n*b` (`m, n >= 0`) in nondecreasing
//! order, once per pair `(m, n)`. Ellipsoid and ball capacities are such
//! sequences; the disk cotangent bundles of `S^2` and `RP^2` are obtained by
//! keeping the multiples of 2 (resp. 4) in `N(1, 1)` and rescaling by `2pi`
//! (resp. `pi`).
//!
//! Terms are produced lazily by a k-way merge of the rows
//! `{m*a + n*b : n >= 0}` and memoized in an append-only cache shared by
//! every clone of a [`CapacitySequence`].

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::ExactError;
use crate::exact::ExactQuantity;

/// Surfaces whose disk cotangent bundles are modelled here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Surface {
    S2,
    RP2,
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Surface::S2 => f.write_str("D*S2"),
            Surface::RP2 => f.write_str("D*RP2"),
        }
    }
}

/// How the terms of a [`CapacitySequence`] are generated.
#[derive(Debug, Clone)]
pub enum Rule {
    /// `N(a, b)`.
    Combos { a: ExactQuantity, b: ExactQuantity },
    /// Terms of `base` that are integer multiples of `j`, order preserved.
    Filtered { base: CapacitySequence, j: u64 },
    /// Term-wise product with `factor`.
    Scaled {
        base: CapacitySequence,
        factor: ExactQuantity,
    },
    /// A finite, explicitly listed sequence.
    Explicit(Vec<ExactQuantity>),
}

enum Cursor {
    Merge(CombinationMerge),
    BaseIndex(usize),
    Fixed,
}

struct Cache {
    terms: Vec<ExactQuantity>,
    cursor: Cursor,
}

struct Inner {
    rule: Rule,
    cache: Mutex<Cache>,
}

/// A lazily enumerated nondecreasing sequence `c_0 = 0 <= c_1 <= ...`.
///
/// Cloning is cheap and clones share the term cache.
#[derive(Clone)]
pub struct CapacitySequence {
    inner: Arc<Inner>,
}

impl fmt::Debug for CapacitySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CapacitySequence")
            .field("rule", &self.label())
            .finish()
    }
}

fn require_positive(x: &ExactQuantity) -> Result<(), ExactError> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(ExactError::NotPositive(x.to_string()))
    }
}

impl CapacitySequence {
    fn from_rule(rule: Rule, terms: Vec<ExactQuantity>, cursor: Cursor) -> Self {
        Self {
            inner: Arc::new(Inner {
                rule,
                cache: Mutex::new(Cache { terms, cursor }),
            }),
        }
    }

    /// `N(a, b)`; both generators must be positive and share a unit.
    pub fn combos(a: ExactQuantity, b: ExactQuantity) -> Result<Self, ExactError> {
        let merge = CombinationMerge::new(a, b)?;
        Ok(Self::from_rule(
            Rule::Combos { a, b },
            Vec::new(),
            Cursor::Merge(merge),
        ))
    }

    /// Subsequence of the multiples of `j`.
    ///
    /// The base must consist of integer multiples of a common unit; otherwise
    /// divisibility is meaningless and the base is rejected.
    pub fn filtered(base: &CapacitySequence, j: u64) -> Result<Self, ExactError> {
        if j == 0 {
            return Err(ExactError::NotPositive("0".into()));
        }
        if !base.is_integral() {
            return Err(ExactError::NonIntegralBase);
        }
        Ok(Self::from_rule(
            Rule::Filtered {
                base: base.clone(),
                j,
            },
            Vec::new(),
            Cursor::BaseIndex(0),
        ))
    }

    /// Term-wise product with a positive `factor`.
    pub fn scaled(base: &CapacitySequence, factor: ExactQuantity) -> Result<Self, ExactError> {
        require_positive(&factor)?;
        let unit = base.pi_power() + factor.pi_power();
        if unit > crate::exact::MAX_PI_POWER {
            return Err(ExactError::Overflow);
        }
        Ok(Self::from_rule(
            Rule::Scaled {
                base: base.clone(),
                factor,
            },
            Vec::new(),
            Cursor::BaseIndex(0),
        ))
    }

    /// A finite sequence given term by term.
    pub fn explicit(terms: Vec<ExactQuantity>) -> Result<Self, ExactError> {
        match terms.first() {
            Some(t) if t.is_zero() => {}
            _ => return Err(ExactError::InvalidSequence("term 0 must be 0".into())),
        }
        for w in terms.windows(2) {
            match w[0].try_cmp(&w[1])? {
                std::cmp::Ordering::Greater => {
                    return Err(ExactError::InvalidSequence(format!(
                        "not nondecreasing: {} > {}",
                        w[0], w[1]
                    )))
                }
                _ => continue,
            }
        }
        Ok(Self::from_rule(
            Rule::Explicit(terms.clone()),
            terms,
            Cursor::Fixed,
        ))
    }

    pub fn rule(&self) -> &Rule {
        &self.inner.rule
    }

    /// Human-readable description of the generating rule, e.g. `2pi*M_2(N(1,1))`.
    pub fn label(&self) -> String {
        match &self.inner.rule {
            Rule::Combos { a, b } => format!("N({a},{b})"),
            Rule::Filtered { base, j } => format!("M_{j}({})", base.label()),
            Rule::Scaled { base, factor } => format!("{factor}*{}", base.label()),
            Rule::Explicit(t) => format!("explicit[{}]", t.len()),
        }
    }

    /// Power of `pi` carried by the nonzero terms.
    pub fn pi_power(&self) -> u8 {
        match &self.inner.rule {
            Rule::Combos { a, .. } => a.pi_power(),
            Rule::Filtered { base, .. } => base.pi_power(),
            Rule::Scaled { base, factor } => base.pi_power() + factor.pi_power(),
            Rule::Explicit(t) => t.iter().map(|x| x.pi_power()).max().unwrap_or(0),
        }
    }

    /// Whether every term is an integer multiple of `pi^p`.
    pub fn is_integral(&self) -> bool {
        match &self.inner.rule {
            Rule::Combos { a, b } => a.is_integral() && b.is_integral(),
            Rule::Filtered { base, .. } => base.is_integral(),
            Rule::Scaled { base, factor } => base.is_integral() && factor.is_integral(),
            Rule::Explicit(t) => t.iter().all(|x| x.is_integral()),
        }
    }

    /// Number of terms, if the sequence is finite.
    pub fn finite_len(&self) -> Option<usize> {
        match &self.inner.rule {
            Rule::Explicit(t) => Some(t.len()),
            Rule::Combos { .. } => None,
            Rule::Filtered { base, .. } | Rule::Scaled { base, .. } => {
                // filtering a finite base may end even earlier; callers hit Exhausted then
                base.finite_len()
            }
        }
    }

    /// The term with index `k` (0-based).
    pub fn term(&self, k: usize) -> Result<ExactQuantity, ExactError> {
        let mut cache = self.inner.cache.lock().expect("capacity cache poisoned");
        while cache.terms.len() <= k {
            let next = self.produce(&mut cache, k)?;
            cache.terms.push(next);
        }
        Ok(cache.terms[k])
    }

    /// The first `n` terms.
    pub fn prefix(&self, n: usize) -> Result<Vec<ExactQuantity>, ExactError> {
        if n == 0 {
            return Ok(Vec::new());
        }
        self.term(n - 1)?;
        let cache = self.inner.cache.lock().expect("capacity cache poisoned");
        Ok(cache.terms[..n].to_vec())
    }

    fn produce(&self, cache: &mut Cache, requested: usize) -> Result<ExactQuantity, ExactError> {
        let available = cache.terms.len();
        let exhausted = |_| ExactError::Exhausted {
            available,
            requested,
        };
        match (&self.inner.rule, &mut cache.cursor) {
            (Rule::Combos { .. }, Cursor::Merge(merge)) => Ok(merge.next_value()),
            (Rule::Filtered { base, j }, Cursor::BaseIndex(idx)) => loop {
                let t = base.term(*idx).map_err(exhausted)?;
                *idx += 1;
                if t.coeff().numer().is_multiple_of(&(*j as i64)) {
                    return Ok(t);
                }
            },
            (Rule::Scaled { base, factor }, Cursor::BaseIndex(idx)) => {
                let t = base.term(*idx).map_err(exhausted)?;
                *idx += 1;
                t.checked_mul(factor)
            }
            _ => Err(ExactError::Exhausted {
                available,
                requested,
            }),
        }
    }
}

/// `N(a, b)` as a capacity sequence (ellipsoid `E(a, b)`).
pub fn ellipsoid_capacities(
    a: ExactQuantity,
    b: ExactQuantity,
) -> Result<CapacitySequence, ExactError> {
    CapacitySequence::combos(a, b)
}

/// Ball `B(a)`: `N(a, a)`.
pub fn ball_capacities(a: ExactQuantity) -> Result<CapacitySequence, ExactError> {
    CapacitySequence::combos(a, a)
}

/// ECH capacities of the disk cotangent bundle: `2pi*M_2(N(1,1))` for `S^2`,
/// `pi*M_4(N(1,1))` for `RP^2`.
pub fn dstar_capacities(surface: Surface) -> CapacitySequence {
    let one = ExactQuantity::int(1);
    let base = CapacitySequence::combos(one, one).expect("N(1,1) is well formed");
    let (j, factor) = match surface {
        Surface::S2 => (2, ExactQuantity::int_pi(2)),
        Surface::RP2 => (4, ExactQuantity::int_pi(1)),
    };
    let filtered = CapacitySequence::filtered(&base, j).expect("N(1,1) is integral");
    CapacitySequence::scaled(&filtered, factor).expect("positive factor")
}

/// First `n` terms of `N(a, b)`.
pub fn nseq_prefix(
    a: ExactQuantity,
    b: ExactQuantity,
    n: usize,
) -> Result<Vec<ExactQuantity>, ExactError> {
    if n == 0 {
        return Err(ExactError::InvalidSequence("count must be at least 1".into()));
    }
    let mut merge = CombinationMerge::new(a, b)?;
    Ok((0..n).map(|_| merge.next_value()).collect())
}

/// `N(a, b)_k`, computed by popping `k + 1` values from a fresh merge.
pub fn nseq_kth(a: ExactQuantity, b: ExactQuantity, k: usize) -> Result<ExactQuantity, ExactError> {
    let mut merge = CombinationMerge::new(a, b)?;
    for _ in 0..k {
        merge.next_value();
    }
    Ok(merge.next_value())
}

/// First `n` terms of `base` that are multiples of `j`.
pub fn filter_multiples(
    base: &CapacitySequence,
    j: u64,
    n: usize,
) -> Result<Vec<ExactQuantity>, ExactError> {
    CapacitySequence::filtered(base, j)?.prefix(n)
}

/// Indices in `base` of its first `n` multiples of `j`.
pub fn filter_positions(
    base: &CapacitySequence,
    j: u64,
    n: usize,
) -> Result<Vec<usize>, ExactError> {
    if j == 0 {
        return Err(ExactError::NotPositive("0".into()));
    }
    if !base.is_integral() {
        return Err(ExactError::NonIntegralBase);
    }
    let mut out = Vec::with_capacity(n);
    let mut idx = 0;
    while out.len() < n {
        let t = base.term(idx)?;
        if t.coeff().numer().is_multiple_of(&(j as i64)) {
            out.push(idx);
        }
        idx += 1;
    }
    Ok(out)
}

/// `lambda * base`, term by term.
pub fn scale_seq(
    base: &CapacitySequence,
    lambda: ExactQuantity,
) -> Result<CapacitySequence, ExactError> {
    CapacitySequence::scaled(base, lambda)
}

/// Min-heap merge over the rows `{m*a + n*b : n >= 0}`.
///
/// Both generators are brought to a common denominator so the heap compares
/// plain integers. Equal values pop in `(m, n)` lexicographic order. Only rows
/// whose head has been reached are ever in the heap, so `k` pops touch
/// `O(k)` candidates.
#[derive(Debug, Clone)]
pub struct CombinationMerge {
    step_a: i64,
    step_b: i64,
    den: i64,
    pi_power: u8,
    heap: BinaryHeap<Reverse<(i64, u64, u64)>>,
}

impl CombinationMerge {
    pub fn new(a: ExactQuantity, b: ExactQuantity) -> Result<Self, ExactError> {
        require_positive(&a)?;
        require_positive(&b)?;
        if a.pi_power() != b.pi_power() {
            return Err(ExactError::UnitMismatch {
                left: a.to_string(),
                right: b.to_string(),
            });
        }
        let (ca, cb) = (a.coeff(), b.coeff());
        let den = ca.denom().lcm(cb.denom());
        let step_a = ca.numer() * (den / ca.denom());
        let step_b = cb.numer() * (den / cb.denom());
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((0, 0, 0)));
        Ok(Self {
            step_a,
            step_b,
            den,
            pi_power: a.pi_power(),
            heap,
        })
    }

    /// Next `(value numerator over den, m, n)` triple.
    pub fn next_pair(&mut self) -> (i64, u64, u64) {
        let Reverse((v, m, n)) = self.heap.pop().expect("merge heap never empties");
        self.heap.push(Reverse((
            v.checked_add(self.step_b).expect("combination overflow"),
            m,
            n + 1,
        )));
        if n == 0 {
            self.heap.push(Reverse((
                v.checked_add(self.step_a).expect("combination overflow"),
                m + 1,
                0,
            )));
        }
        (v, m, n)
    }

    pub fn next_value(&mut self) -> ExactQuantity {
        let (v, _, _) = self.next_pair();
        ExactQuantity::new(num_rational::Rational64::new(v, self.den), self.pi_power)
            .expect("pi power already validated")
    }
}

impl Iterator for CombinationMerge {
    type Item = ExactQuantity;

    fn next(&mut self) -> Option<ExactQuantity> {
        Some(self.next_value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<ExactQuantity> {
        v.iter().map(|&x| ExactQuantity::int(x)).collect()
    }

    fn pis(v: &[i64]) -> Vec<ExactQuantity> {
        v.iter().map(|&x| ExactQuantity::int_pi(x)).collect()
    }

    /// Sort-based oracle: all m*a + n*b with m*a + n*b <= bound.
    fn brute_force(a: i64, b: i64, bound: i64) -> Vec<i64> {
        let mut v = Vec::new();
        for m in 0..=bound / a {
            for n in 0..=(bound - m * a) / b {
                v.push(m * a + n * b);
            }
        }
        v.sort_unstable();
        v
    }

    #[test]
    fn prefixes_match_brute_force() {
        let one = ExactQuantity::int(1);
        let two = ExactQuantity::int(2);
        assert_eq!(brute_force(1, 1, 4)[..10], [0, 1, 1, 2, 2, 2, 3, 3, 3, 3]);
        assert_eq!(brute_force(1, 2, 5)[..8], [0, 1, 2, 2, 3, 3, 4, 4]);
        assert_eq!(nseq_prefix(one, one, 10).unwrap(), ints(&[0, 1, 1, 2, 2, 2, 3, 3, 3, 3]));
        assert_eq!(nseq_prefix(one, two, 8).unwrap(), ints(&[0, 1, 2, 2, 3, 3, 4, 4]));
        let a = ExactQuantity::ratio(7, 3);
        assert_eq!(nseq_prefix(a, two, 1).unwrap(), ints(&[0]));
    }

    #[test]
    fn kth_examples() {
        let one = ExactQuantity::int(1);
        let two = ExactQuantity::int(2);
        assert_eq!(nseq_kth(one, one, 3).unwrap(), ExactQuantity::int(2));
        assert_eq!(nseq_kth(one, one, 0).unwrap(), ExactQuantity::zero());
        assert_eq!(nseq_kth(one, two, 4).unwrap(), ExactQuantity::int(3));
    }

    #[test]
    fn invalid_generators() {
        let one = ExactQuantity::int(1);
        assert!(matches!(
            nseq_prefix(ExactQuantity::zero(), one, 3),
            Err(ExactError::NotPositive(_))
        ));
        assert!(matches!(
            nseq_kth(ExactQuantity::int(-1), one, 3),
            Err(ExactError::NotPositive(_))
        ));
        assert!(matches!(
            nseq_prefix(one, ExactQuantity::int_pi(1), 3),
            Err(ExactError::UnitMismatch { .. })
        ));
        assert!(nseq_prefix(one, one, 0).is_err());
    }

    #[test]
    fn filter_examples() {
        let n11 = ball_capacities(ExactQuantity::int(1)).unwrap();
        assert_eq!(filter_multiples(&n11, 2, 9).unwrap(), ints(&[0, 2, 2, 2, 4, 4, 4, 4, 4]));
        assert_eq!(filter_multiples(&n11, 4, 6).unwrap(), ints(&[0, 4, 4, 4, 4, 4]));
        assert_eq!(filter_multiples(&n11, 1, 4).unwrap(), ints(&[0, 1, 1, 2]));
        assert!(filter_multiples(&n11, 0, 4).is_err());
    }

    #[test]
    fn filter_rejects_non_integral_base() {
        let half = ball_capacities(ExactQuantity::ratio(1, 2)).unwrap();
        assert_eq!(
            CapacitySequence::filtered(&half, 2).unwrap_err(),
            ExactError::NonIntegralBase
        );
    }

    #[test]
    fn filter_of_finite_base_exhausts() {
        let base = CapacitySequence::explicit(ints(&[0, 1, 2, 3])).unwrap();
        let f = CapacitySequence::filtered(&base, 2).unwrap();
        assert_eq!(f.prefix(2).unwrap(), ints(&[0, 2]));
        assert!(matches!(f.term(2), Err(ExactError::Exhausted { .. })));
    }

    #[test]
    fn scaling_examples() {
        let n11 = ball_capacities(ExactQuantity::int(1)).unwrap();
        let same = scale_seq(&n11, ExactQuantity::int(1)).unwrap();
        assert_eq!(same.prefix(50).unwrap(), n11.prefix(50).unwrap());

        let m2 = CapacitySequence::filtered(&n11, 2).unwrap();
        let s = scale_seq(&m2, ExactQuantity::int_pi(2)).unwrap();
        assert_eq!(s.prefix(5).unwrap(), pis(&[0, 4, 4, 4, 8]));

        let n12 = ellipsoid_capacities(ExactQuantity::int(1), ExactQuantity::int(2)).unwrap();
        let scaled = scale_seq(&n12, ExactQuantity::int_pi(2)).unwrap();
        let direct = ellipsoid_capacities(ExactQuantity::int_pi(2), ExactQuantity::int_pi(4)).unwrap();
        assert_eq!(scaled.prefix(50).unwrap(), direct.prefix(50).unwrap());
        assert!(scale_seq(&n12, ExactQuantity::zero()).is_err());
    }

    #[test]
    fn ellipsoid_and_ball_examples() {
        let ball = ball_capacities(ExactQuantity::int(1)).unwrap();
        assert_eq!(ball.prefix(6).unwrap(), ints(&[0, 1, 1, 2, 2, 2]));
        let e = ellipsoid_capacities(ExactQuantity::int_pi(2), ExactQuantity::int_pi(4)).unwrap();
        // brute force: {0, 2, 4, 4, ...}pi
        assert_eq!(brute_force(2, 4, 8)[2], 4);
        assert_eq!(e.term(2).unwrap(), ExactQuantity::int_pi(4));
        let a = ExactQuantity::ratio_pi(3, 2);
        let b = ExactQuantity::ratio_pi(5, 3);
        let ab = ellipsoid_capacities(a, b).unwrap().prefix(100).unwrap();
        let ba = ellipsoid_capacities(b, a).unwrap().prefix(100).unwrap();
        assert_eq!(ab, ba);
    }

    #[test]
    fn dstar_lists() {
        let s2 = dstar_capacities(Surface::S2);
        assert_eq!(s2.prefix(9).unwrap(), pis(&[0, 4, 4, 4, 8, 8, 8, 8, 8]));
        assert_eq!(s2.term(0).unwrap(), ExactQuantity::zero());
        let rp2 = dstar_capacities(Surface::RP2);
        assert_eq!(rp2.prefix(7).unwrap(), pis(&[0, 4, 4, 4, 4, 4, 8]));
        assert_eq!(s2.label(), "2pi*M_2(N(1,1))");
        assert_eq!(rp2.label(), "1pi*M_4(N(1,1))");
    }

    #[test]
    fn explicit_validation() {
        assert!(CapacitySequence::explicit(ints(&[1, 2])).is_err());
        assert!(CapacitySequence::explicit(ints(&[0, 2, 1])).is_err());
        assert!(CapacitySequence::explicit(vec![]).is_err());
        let s = CapacitySequence::explicit(ints(&[0, 3, 3])).unwrap();
        assert_eq!(s.finite_len(), Some(3));
        assert!(matches!(s.term(3), Err(ExactError::Exhausted { .. })));
    }

    #[test]
    fn counting_law() {
        let n11 = ball_capacities(ExactQuantity::int(1)).unwrap();
        let terms = n11.prefix(51 * 52 / 2 + 10).unwrap();
        for t in 0..=50i64 {
            let count = terms
                .iter()
                .filter(|x| x.coeff() <= num_rational::Rational64::from_integer(t))
                .count() as i64;
            assert_eq!(count, (t + 1) * (t + 2) / 2, "t = {t}");
        }
    }

    #[test]
    fn cache_is_shared_between_clones() {
        let s = dstar_capacities(Surface::S2);
        let t = s.clone();
        s.prefix(100).unwrap();
        assert_eq!(t.prefix(100).unwrap(), s.prefix(100).unwrap());
    }

    #[test]
    fn concurrent_readers_agree() {
        let s = dstar_capacities(Surface::RP2);
        let expected = dstar_capacities(Surface::RP2).prefix(2000).unwrap();
        std::thread::scope(|scope| {
            for i in 0..4 {
                let s = s.clone();
                let expected = &expected;
                scope.spawn(move || {
                    for k in (i..2000).step_by(7) {
                        assert_eq!(s.term(k).unwrap(), expected[k]);
                    }
                });
            }
        });
    }
}
