//! Exact rational scalars.
//!
//! `Rational` is `num`'s arbitrary-precision `Ratio<BigInt>`, whose invariants
//! (lowest terms, positive denominator) match what every checker in this crate
//! assumes about scalars. Parsing is done here rather than through `FromStr`
//! because `Ratio::new` aborts on a zero denominator and we want a clean error.

use crate::error::{Error, Result};
use num_bigint::BigInt;

pub type Rational = num_rational::BigRational;

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-1/2"`, `"+4/6"` (reduced to `2/3`). `pos` offsets the
/// reported error position, for callers that parse a slice of a larger input.
pub fn parse_rational(s: &str, pos: usize) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::parse(pos, "empty rational literal"));
    }
    let (num_str, den_str) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| Error::parse(pos, format!("invalid integer `{num_str}`")))?;
    let den: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| Error::parse(pos, format!("invalid denominator `{d}`")))?,
        None => BigInt::from(1),
    };
    if den == BigInt::from(0) {
        return Err(Error::parse(pos, "zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Canonical display form: `n` for integers, `n/d` otherwise, `-` up front.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}
