//! Exact rational probabilities.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders as `num/den` (always with a denominator, even when it is 1).
pub fn fraction(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Nearest `f64`, for reporting only.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator or denominator too large for a direct conversion
        let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
        let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Parses `a/b`, an integer, or a decimal with optional exponent
/// (`0.25`, `1e-6`, `2.5E3`) into an exact rational.
pub fn parse(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::InvalidArgument(format!("not a rational number: '{text}'"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (ip, fp) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.bytes().chain(fp.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("0{ip}{fp}").parse().map_err(|_| bad())?;
    let scale = exp - fp.len() as i32;
    let ten = BigInt::from(10u32);
    let mut r = if scale >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// `ceil(p * 2^64)` for `p` in `[0, 1]`; a uniform `u64` draw `x` satisfies
/// `x < threshold` with probability exactly `threshold / 2^64`, which is
/// `p` rounded up to the next multiple of `2^-64`.
pub fn bernoulli_threshold(p: &Rational) -> u128 {
    debug_assert!(!p.is_negative() && *p <= Rational::one());
    let num = p.numer().magnitude() << 64u32;
    let den = p.denom().magnitude();
    let (q, r) = num_integer::Integer::div_rem(&num, den);
    let q = if r.is_zero() { q } else { q + BigUint::one() };
    q.to_u128().expect("threshold fits in 65 bits")
}

/// Serialized form used by every JSON output: strings for the exact parts.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
    pub float: f64,
}

impl From<&Rational> for RationalJson {
    fn from(r: &Rational) -> Self {
        RationalJson {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
            float: to_f64(r),
        }
    }
}

pub(crate) fn is_probability(r: &Rational) -> bool {
    r.numer().sign() != Sign::Minus && *r <= Rational::one()
}
