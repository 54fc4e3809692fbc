//! Exact quantities of the form `r * pi^p` with `r` rational.
//!
//! Every closed-form capacity, action and volume in this crate is a rational
//! multiple of `1`, `pi` or `pi^2`, so the combinatorial side never touches
//! floating point. Values with different powers of `pi` are incomparable under
//! [`PartialOrd`]; [`ExactQuantity::certified_cmp`] decides such comparisons
//! rigorously from a rational enclosure of `pi` when a caller really needs one.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ExactError;

/// Largest supported power of `pi` (volumes are `r * pi^2`).
pub const MAX_PI_POWER: u8 = 2;

// 50 correct decimals of pi; the enclosure is [PI_DIGITS, PI_DIGITS + 1] * 10^-50.
const PI_DIGITS: &str = "314159265358979323846264338327950288419716939937510";
const PI_SCALE: u32 = 50;

/// A rational number times an explicit power of `pi`.
///
/// Zero is normalized to `pi_power = 0`, so `0 * pi == 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExactQuantity {
    coeff: Rational64,
    pi_power: u8,
}

impl ExactQuantity {
    pub fn new(coeff: Rational64, pi_power: u8) -> Result<Self, ExactError> {
        if pi_power > MAX_PI_POWER {
            return Err(ExactError::Overflow);
        }
        let pi_power = if coeff.is_zero() { 0 } else { pi_power };
        Ok(Self { coeff, pi_power })
    }

    pub const fn zero() -> Self {
        Self {
            coeff: Rational64::new_raw(0, 1),
            pi_power: 0,
        }
    }

    /// The integer `n` (no factor of `pi`).
    pub fn int(n: i64) -> Self {
        Self {
            coeff: Rational64::from_integer(n),
            pi_power: 0,
        }
    }

    /// The rational `num / den`.
    ///
    /// Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self {
            coeff: Rational64::new(num, den),
            pi_power: 0,
        }
    }

    /// `n * pi`.
    pub fn int_pi(n: i64) -> Self {
        Self::ratio_pi(n, 1)
    }

    /// `(num / den) * pi`.
    pub fn ratio_pi(num: i64, den: i64) -> Self {
        let coeff = Rational64::new(num, den);
        Self {
            coeff,
            pi_power: if coeff.is_zero() { 0 } else { 1 },
        }
    }

    pub fn coeff(&self) -> Rational64 {
        self.coeff
    }

    pub fn pi_power(&self) -> u8 {
        self.pi_power
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.coeff.is_positive()
    }

    /// True when the coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeff.is_integer()
    }

    /// True when both values can be compared or added exactly.
    pub fn same_unit(&self, other: &Self) -> bool {
        self.pi_power == other.pi_power || self.is_zero() || other.is_zero()
    }

    fn unit_mismatch(&self, other: &Self) -> ExactError {
        ExactError::UnitMismatch {
            left: self.to_string(),
            right: other.to_string(),
        }
    }

    /// Exact comparison; fails when the powers of `pi` differ.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, ExactError> {
        self.partial_cmp(other)
            .ok_or_else(|| self.unit_mismatch(other))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        if !self.same_unit(other) {
            return Err(self.unit_mismatch(other));
        }
        let coeff = self
            .coeff
            .checked_add(&other.coeff)
            .ok_or(ExactError::Overflow)?;
        Self::new(coeff, self.pi_power.max(other.pi_power))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.checked_add(&Self {
            coeff: -other.coeff,
            pi_power: other.pi_power,
        })
    }

    /// Product; powers of `pi` add.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let coeff = self
            .coeff
            .checked_mul(&other.coeff)
            .ok_or(ExactError::Overflow)?;
        Self::new(coeff, self.pi_power + other.pi_power)
    }

    /// Quotient; powers of `pi` subtract and must stay nonnegative.
    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        if other.is_zero() {
            return Err(ExactError::NotPositive(other.to_string()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if other.pi_power > self.pi_power {
            return Err(self.unit_mismatch(other));
        }
        let coeff = self
            .coeff
            .checked_div(&other.coeff)
            .ok_or(ExactError::Overflow)?;
        Self::new(coeff, self.pi_power - other.pi_power)
    }

    pub fn checked_mul_int(&self, n: i64) -> Result<Self, ExactError> {
        let coeff = self
            .coeff
            .checked_mul(&Rational64::from_integer(n))
            .ok_or(ExactError::Overflow)?;
        Self::new(coeff, self.pi_power)
    }

    pub fn to_f64(&self) -> f64 {
        let c = *self.coeff.numer() as f64 / *self.coeff.denom() as f64;
        c * std::f64::consts::PI.powi(self.pi_power as i32)
    }

    /// Exact square root when it exists: the power of `pi` must be even and
    /// the coefficient a nonnegative rational square.
    pub fn exact_sqrt(&self) -> Option<Self> {
        if self.coeff.is_negative() || self.pi_power % 2 != 0 {
            return None;
        }
        let n = integer_sqrt(*self.coeff.numer())?;
        let d = integer_sqrt(*self.coeff.denom())?;
        Self::new(Rational64::new(n, d), self.pi_power / 2).ok()
    }

    /// Rigorous comparison that also handles differing powers of `pi`.
    ///
    /// Equal units compare exactly. Otherwise both sides are enclosed in
    /// rational intervals using 50 decimals of `pi`; overlapping enclosures
    /// yield [`ExactError::Undecidable`].
    pub fn certified_cmp(&self, other: &Self) -> Result<Ordering, ExactError> {
        if let Some(ord) = self.partial_cmp(other) {
            return Ok(ord);
        }
        let (a_lo, a_hi) = self.enclosure();
        let (b_lo, b_hi) = other.enclosure();
        if a_hi < b_lo {
            Ok(Ordering::Less)
        } else if a_lo > b_hi {
            Ok(Ordering::Greater)
        } else {
            Err(ExactError::Undecidable {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }

    fn enclosure(&self) -> (BigRational, BigRational) {
        let scale = BigInt::from(10u8).pow(PI_SCALE);
        let digits: BigInt = PI_DIGITS.parse().expect("pi digits");
        let pi_lo = BigRational::new(digits.clone(), scale.clone());
        let pi_hi = BigRational::new(digits + 1, scale);
        let mut lo = BigRational::one();
        let mut hi = BigRational::one();
        for _ in 0..self.pi_power {
            lo *= &pi_lo;
            hi *= &pi_hi;
        }
        let c = BigRational::new(
            BigInt::from(*self.coeff.numer()),
            BigInt::from(*self.coeff.denom()),
        );
        let (x, y) = (&c * lo, &c * hi);
        if c.is_negative() {
            (y, x)
        } else {
            (x, y)
        }
    }
}

fn integer_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

impl Default for ExactQuantity {
    fn default() -> Self {
        Self::zero()
    }
}

impl PartialOrd for ExactQuantity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.same_unit(other).then(|| self.coeff.cmp(&other.coeff))
    }
}

impl fmt::Display for ExactQuantity {
    /// Canonical form: `0`, `<int>`, `<p>/<q>`, each followed by `pi` or
    /// `pi^2` when the power of `pi` is nonzero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            return f.write_str("0");
        }
        if self.coeff.is_integer() {
            write!(f, "{}", self.coeff.numer())?;
        } else {
            write!(f, "{}/{}", self.coeff.numer(), self.coeff.denom())?;
        }
        match self.pi_power {
            0 => Ok(()),
            1 => f.write_str("pi"),
            p => write!(f, "pi^{p}"),
        }
    }
}

impl FromStr for ExactQuantity {
    type Err = ExactError;

    /// Accepts `7`, `-3/4`, `2.01`, `pi`, `2pi`, `2*pi`, `201/100pi`,
    /// `3/2 pi^2` and the `π` symbol.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ExactError::Parse(s.to_string());
        let compact: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .replace('π', "pi");
        let (body, pi_power) = if let Some(b) = compact.strip_suffix("pi^2") {
            (b, 2)
        } else if let Some(b) = compact.strip_suffix("pi") {
            (b, 1)
        } else {
            (compact.as_str(), 0)
        };
        let body = body.strip_suffix('*').unwrap_or(body);
        let coeff = if body.is_empty() {
            if pi_power == 0 {
                return Err(err());
            }
            Rational64::one()
        } else if body == "-" {
            -Rational64::one()
        } else {
            parse_rational(body).ok_or_else(err)?
        };
        Self::new(coeff, pi_power)
    }
}

fn parse_rational(s: &str) -> Option<Rational64> {
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.parse().ok()?;
        let d: i64 = d.parse().ok()?;
        if d == 0 {
            return None;
        }
        return Some(Rational64::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) || frac.len() > 15 {
            return None;
        }
        let negative = int.starts_with('-');
        let int_part: i64 = if int.is_empty() || int == "-" {
            0
        } else {
            int.parse().ok()?
        };
        let den = 10i64.checked_pow(frac.len() as u32)?;
        let frac_part: i64 = frac.parse().ok()?;
        let mag = int_part.abs().checked_mul(den)?.checked_add(frac_part)?;
        let num = if negative { -mag } else { mag };
        return Some(Rational64::new(num, den));
    }
    s.parse::<i64>().ok().map(Rational64::from_integer)
}

/// Wire form `{ "num": .., "den": .., "pi": .. }`.
#[derive(Serialize, Deserialize)]
struct ExactWire {
    num: i64,
    den: i64,
    pi: u8,
}

impl Serialize for ExactQuantity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ExactWire {
            num: *self.coeff.numer(),
            den: *self.coeff.denom(),
            pi: self.pi_power,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactQuantity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let w = ExactWire::deserialize(deserializer)?;
        if w.den <= 0 {
            return Err(serde::de::Error::custom("denominator must be positive"));
        }
        if w.num.gcd(&w.den) != 1 && w.num != 0 {
            return Err(serde::de::Error::custom("fraction not in lowest terms"));
        }
        ExactQuantity::new(Rational64::new(w.num, w.den), w.pi).map_err(serde::de::Error::custom)
    }
}
