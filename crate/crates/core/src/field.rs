//! Ground field: the rationals or a prime field 𝔽_p.
//!
//! Scalars are always stored as exact rationals. For a prime field every
//! canonical value is an integer in `0..p`, and arithmetic re-reduces after
//! each operation, so elimination pivots are decided correctly mod p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Field {
    /// The rational numbers ℚ (default).
    Rational,
    /// The prime field 𝔽_p.
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn rational() -> Self {
        Field::Rational
    }

    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::Input(format!("{p} is not prime")))
        }
    }

    /// Parse a field descriptor: `q` or `fp:<p>`.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "q" | "Q" => Ok(Field::Rational),
            _ => match s.strip_prefix("fp:") {
                Some(p) => {
                    let p: u64 = p
                        .parse()
                        .map_err(|_| Error::Input(format!("invalid field `{s}`")))?;
                    Field::prime(p)
                }
                None => Err(Error::Input(format!("invalid field `{s}`"))),
            },
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            Field::Rational => "q".to_string(),
            Field::Prime(p) => format!("fp:{p}"),
        }
    }

    /// Canonical form of a scalar. For 𝔽_p the denominator must be coprime
    /// to p; inputs are checked at parse boundaries via [`Field::normalize`].
    pub fn reduce(&self, r: &Rat) -> Rat {
        match self {
            Field::Rational => r.clone(),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                let num = r.numer().mod_floor(&p);
                let den = r.denom().mod_floor(&p);
                assert!(
                    !den.is_zero(),
                    "internal: denominator divisible by the characteristic"
                );
                if den.is_one() {
                    Rat::from_integer(num)
                } else {
                    let inv = den.modpow(&(&p - BigInt::from(2)), &p);
                    Rat::from_integer((num * inv).mod_floor(&p))
                }
            }
        }
    }

    /// Checked reduction for external input.
    pub fn normalize(&self, r: &Rat) -> Result<Rat> {
        if let Field::Prime(p) = self {
            let p = BigInt::from(*p);
            if r.denom().mod_floor(&p).is_zero() {
                return Err(Error::Input(format!(
                    "denominator of {r} is divisible by the characteristic"
                )));
            }
        }
        Ok(self.reduce(r))
    }

    pub fn is_zero(&self, r: &Rat) -> bool {
        match self {
            Field::Rational => r.is_zero(),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                (r.numer().mod_floor(&p)).is_zero()
            }
        }
    }

    pub fn add(&self, a: &Rat, b: &Rat) -> Rat {
        self.reduce(&(a + b))
    }

    pub fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        self.reduce(&(a - b))
    }

    pub fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        self.reduce(&(a * b))
    }

    pub fn neg(&self, a: &Rat) -> Rat {
        self.reduce(&(-a))
    }

    /// Multiplicative inverse. Panics on zero (internal misuse).
    pub fn inv(&self, a: &Rat) -> Rat {
        assert!(!self.is_zero(a), "inverse of zero");
        match self {
            Field::Rational => a.recip(),
            Field::Prime(_) => {
                let c = self.reduce(a);
                self.reduce(&c.recip())
            }
        }
    }
}

impl Default for Field {
    fn default() -> Self {
        Field::Rational
    }
}
