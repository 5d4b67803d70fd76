//! Exact rational arithmetic helpers.
//!
//! Certificates never touch floating point. Values that involve a square or
//! cube root of a rational are carried symbolically as `coeff · radicand^(e/2)`
//! or `coeff · base^(e/3)` and compared by raising both sides to a power.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Huge numerators/denominators: fall back to a scaled division.
        let n = x.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = x.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"-0.125"`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let whole: BigInt = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            int_digits.parse().map_err(|_| bad())?
        };
        let frac_num: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mag = Q::new(whole * &scale + frac_num, scale);
        return Ok(if negative { -mag } else { mag });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Q::from_integer(n))
}

pub fn format_rational(x: &Q) -> String {
    x.to_string()
}

/// Smallest integer `n` with `n >= x`.
pub fn ceil_q(x: &Q) -> BigInt {
    x.ceil().to_integer()
}

pub fn floor_q(x: &Q) -> BigInt {
    x.floor().to_integer()
}

/// Integer square root `⌊√n⌋`.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of a negative number");
    n.sqrt()
}

pub fn isqrt_u128(n: u128) -> u128 {
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// `⌊x^(1/k)⌋` for a nonnegative rational `x`.
fn floor_root(x: &Q, k: u32) -> BigInt {
    assert!(!x.is_negative());
    // Largest integer m with m^k <= x, found by bisection.
    let mut lo = BigInt::zero();
    let mut hi = floor_q(x).max(BigInt::one()) + 1u32;
    while &lo + 1u32 < hi {
        let mid: BigInt = (&lo + &hi) >> 1;
        if Q::from_integer(num_traits::pow(mid.clone(), k as usize)) <= *x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// A number `coeff · √radicand` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqrtScaled {
    #[serde(with = "qstr")]
    pub coeff: Q,
    #[serde(with = "qstr")]
    pub radicand: Q,
}

impl SqrtScaled {
    pub fn new(coeff: Q, radicand: Q) -> Self {
        assert!(!radicand.is_negative(), "negative radicand");
        SqrtScaled { coeff, radicand }
    }

    pub fn rational(x: Q) -> Self {
        SqrtScaled::new(x, Q::one())
    }

    /// The signed square `coeff · |coeff| · radicand`; order-preserving.
    fn signed_square(&self) -> Q {
        &self.coeff * self.coeff.abs() * &self.radicand
    }

    pub fn cmp_rational(&self, x: &Q) -> Ordering {
        self.signed_square().cmp(&(x * x.abs()))
    }

    pub fn cmp_exact(&self, other: &SqrtScaled) -> Ordering {
        self.signed_square().cmp(&other.signed_square())
    }

    pub fn eq_exact(&self, other: &SqrtScaled) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }

    pub fn to_f64(&self) -> f64 {
        q_to_f64(&self.coeff) * q_to_f64(&self.radicand).sqrt()
    }

    /// `⌈coeff · √radicand⌉` for a nonnegative value.
    pub fn ceil(&self) -> BigInt {
        let f = self.floor();
        if self.cmp_rational(&Q::from_integer(f.clone())) == Ordering::Equal {
            f
        } else {
            f + 1u32
        }
    }

    /// `⌊coeff · √radicand⌋` for a nonnegative value.
    pub fn floor(&self) -> BigInt {
        assert!(!self.coeff.is_negative(), "floor of a negative root value");
        floor_root(&(&self.coeff * &self.coeff * &self.radicand), 2)
    }
}

impl fmt::Display for SqrtScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}*sqrt({})", self.coeff, self.radicand)
        }
    }
}

/// A number `coeff · base^(exponent/3)` with rational `coeff` and integer `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeRootScaled {
    pub coeff: Q,
    pub base: u64,
    pub exponent: u32,
}

impl CubeRootScaled {
    pub fn new(coeff: Q, base: u64, exponent: u32) -> Self {
        CubeRootScaled {
            coeff,
            base,
            exponent,
        }
    }

    fn signed_cube(&self) -> Q {
        let c = &self.coeff;
        c * c
            * c
            * Q::from_integer(num_traits::pow(
                BigInt::from(self.base),
                self.exponent as usize,
            ))
    }

    pub fn cmp_rational(&self, x: &Q) -> Ordering {
        self.signed_cube().cmp(&(x * x * x))
    }

    pub fn to_f64(&self) -> f64 {
        q_to_f64(&self.coeff) * (self.base as f64).powf(self.exponent as f64 / 3.0)
    }

    /// `⌈value⌉` for a nonnegative value.
    pub fn ceil(&self) -> BigInt {
        let f = self.floor();
        if self.cmp_rational(&Q::from_integer(f.clone())) == Ordering::Equal {
            f
        } else {
            f + 1u32
        }
    }

    pub fn floor(&self) -> BigInt {
        assert!(!self.coeff.is_negative(), "floor of a negative root value");
        floor_root(&self.signed_cube(), 3)
    }
}

pub fn bigint_to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("integer does not fit in i64")
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn sign_of(x: &Q) -> Sign {
    x.numer().sign()
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod qstr {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for sequences of rationals.
pub mod qvec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&format_rational(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Q>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
