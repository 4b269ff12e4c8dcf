//! Exact coefficient rings.

use std::fmt;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Coefficients are stored as reduced fractions of `i128`; for the integer
/// and prime-field rings the denominator is always 1.
pub type Coeff = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("modulus {0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("{0} is not an integer")]
    NotIntegral(String),
    #[error("{0} is not invertible in {1}")]
    NotInvertible(String, BaseRing),
}

/// The exact base ring over which every identity is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseRing {
    Integers,
    Rationals,
    PrimeField(u32),
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Integers => write!(f, "Z"),
            BaseRing::Rationals => write!(f, "Q"),
            BaseRing::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn overflow() -> ! {
    panic!("coefficient overflow in exact arithmetic")
}

impl BaseRing {
    pub fn prime_field(p: u64) -> Result<Self, RingError> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        Ok(BaseRing::PrimeField(p as u32))
    }

    pub fn from_int(self, v: i128) -> Coeff {
        self.reduce(Coeff::from_integer(v))
    }

    /// Brings an integral value into canonical form (reduction mod p).
    fn reduce(self, c: Coeff) -> Coeff {
        match self {
            BaseRing::PrimeField(p) => {
                debug_assert!(c.is_integer());
                Coeff::from_integer(c.numer().rem_euclid(p as i128))
            }
            _ => c,
        }
    }

    /// Maps an arbitrary rational into the ring, failing when that is impossible.
    pub fn normalize(self, c: Coeff) -> Result<Coeff, RingError> {
        match self {
            BaseRing::Rationals => Ok(c),
            BaseRing::Integers => {
                if c.is_integer() {
                    Ok(c)
                } else {
                    Err(RingError::NotIntegral(c.to_string()))
                }
            }
            BaseRing::PrimeField(p) => {
                let p = p as i128;
                let den = c.denom().rem_euclid(p);
                if den == 0 {
                    return Err(RingError::NotInvertible(c.denom().to_string(), self));
                }
                let inv = mod_pow(den, p - 2, p);
                Ok(Coeff::from_integer(c.numer().rem_euclid(p) * inv % p))
            }
        }
    }

    pub fn add(self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce(a.checked_add(b).unwrap_or_else(|| overflow()))
    }

    pub fn mul(self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce(a.checked_mul(b).unwrap_or_else(|| overflow()))
    }

    pub fn neg(self, a: &Coeff) -> Coeff {
        self.reduce(-a)
    }

    /// Division by a nonzero element; only used when parsing text input.
    pub fn div(self, a: &Coeff, b: &Coeff) -> Result<Coeff, RingError> {
        if b.is_zero() {
            return Err(RingError::NotInvertible("0".into(), self));
        }
        match self {
            BaseRing::Integers => {
                let q = a / b;
                self.normalize(q)
            }
            BaseRing::Rationals => Ok(a / b),
            BaseRing::PrimeField(_) => {
                let inv = self.normalize(Coeff::new(1, *b.numer()))?;
                Ok(self.mul(a, &inv))
            }
        }
    }

    /// Whether the canonical representative should be printed with a minus sign.
    pub fn is_negative(self, c: &Coeff) -> bool {
        match self {
            BaseRing::PrimeField(_) => false,
            _ => c.is_negative(),
        }
    }

    pub fn is_one(self, c: &Coeff) -> bool {
        c.is_one()
    }
}

fn mod_pow(mut b: i128, mut e: i128, m: i128) -> i128 {
    let mut acc = 1i128;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_is_checked() {
        assert!(BaseRing::prime_field(7).is_ok());
        assert_eq!(BaseRing::prime_field(9), Err(RingError::NotPrime(9)));
        assert!(BaseRing::prime_field(1).is_err());
    }

    #[test]
    fn prime_field_reduces_and_inverts() {
        let f = BaseRing::prime_field(5).unwrap();
        assert_eq!(f.from_int(-1), Coeff::from_integer(4));
        let half = f.normalize(Coeff::new(1, 2)).unwrap();
        assert_eq!(f.mul(&half, &f.from_int(2)), Coeff::one());
        assert!(f.normalize(Coeff::new(1, 5)).is_err());
    }

    #[test]
    fn integers_reject_fractions() {
        assert!(BaseRing::Integers.normalize(Coeff::new(1, 2)).is_err());
        assert!(BaseRing::Rationals.normalize(Coeff::new(1, 2)).is_ok());
    }
}
