//! Exact rational scalars and small vector helpers.
//!
//! All arithmetic in this crate is exact: strict-versus-closed boundary
//! questions are the whole subject, so floating point is banned from every
//! decision path. Rationals serialize as `"p/q"` strings (`"p"` when the
//! denominator is 1).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational from a numerator/denominator pair.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"p/q"` or `"p"`.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt, Error> {
        t.parse::<BigInt>()
            .map_err(|_| Error::Input(format!("invalid rational `{s}`")))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Input(format!("zero denominator in `{s}`")));
            }
            Ok(Rat::new(parse_int(n)?, den))
        }
    }
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise (q > 0).
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_vec(ss: &[String]) -> Result<Vec<Rat>, Error> {
    ss.iter().map(|s| parse_rat(s)).collect()
}

pub fn format_vec(v: &[Rat]) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

/// Exact inner product. Panics on length mismatch (internal misuse).
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "dot: length mismatch");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(c: &Rat, a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| c * x).collect()
}

pub fn is_zero_vec(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Scale a vector so its first nonzero entry becomes ±1, preserving signs.
/// Returns `None` for the zero vector. The scale factor is positive, so the
/// direction of any inequality the vector belongs to is unchanged.
pub fn canonical_scale(v: &[Rat]) -> Option<Rat> {
    let first = v.iter().find(|x| !x.is_zero())?;
    Some(first.abs().recip())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "-3", "1/2", "-7/4", "10/5"] {
            let r = parse_rat(s).unwrap();
            let t = format_rat(&r);
            assert_eq!(parse_rat(&t).unwrap(), r);
        }
        assert_eq!(format_rat(&parse_rat("10/5").unwrap()), "2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn canonical_scale_first_nonzero() {
        let v = vec![rat(0), rat(-4), rat(6)];
        let c = canonical_scale(&v).unwrap();
        let w = scale_vec(&c, &v);
        assert_eq!(w, vec![rat(0), rat(-1), ratio(3, 2)]);
        assert!(canonical_scale(&[rat(0), rat(0)]).is_none());
    }
}
