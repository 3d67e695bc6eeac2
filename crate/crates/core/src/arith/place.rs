use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::primes::{is_prime, to_bigint, PrimalityMethod};
use crate::error::{Error, Result};

/// A rational prime whose primality has been checked.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime {
    value: BigUint,
    small: Option<u64>,
}

impl Prime {
    pub fn new(p: impl Into<BigUint>) -> Result<Self> {
        let value = p.into();
        let (ok, _) = is_prime(&value);
        if !ok {
            return Err(Error::NotPrime(value.to_string()));
        }
        Ok(Self::new_unchecked(value))
    }

    pub(crate) fn new_unchecked(value: BigUint) -> Self {
        let small = value.to_u64();
        Prime { value, small }
    }

    pub fn two() -> Self {
        Self::new_unchecked(BigUint::from(2u32))
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn to_bigint(&self) -> BigInt {
        to_bigint(&self.value)
    }

    pub fn as_u64(&self) -> Option<u64> {
        self.small
    }

    pub fn is_two(&self) -> bool {
        self.small == Some(2)
    }

    pub fn primality_method(&self) -> PrimalityMethod {
        is_prime(&self.value).1
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// A place of Q: the real place or a prime.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Real,
    Finite(Prime),
}

impl Place {
    pub fn prime(p: u64) -> Result<Self> {
        Ok(Place::Finite(Prime::new(p)?))
    }

    pub fn as_prime(&self) -> Option<&Prime> {
        match self {
            Place::Real => None,
            Place::Finite(p) => Some(p),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "real"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "real" | "inf" | "infinity" | "oo" => Ok(Place::Real),
            _ => {
                let digits = t.strip_prefix("p=").unwrap_or(&t);
                let p: BigUint = digits
                    .parse()
                    .map_err(|_| Error::parse(format!("place {s:?}"), "expected \"real\" or a prime"))?;
                Ok(Place::Finite(Prime::new(p)?))
            }
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_places() {
        assert_eq!("real".parse::<Place>().unwrap(), Place::Real);
        assert_eq!("p=7".parse::<Place>().unwrap(), Place::prime(7).unwrap());
        assert!("9".parse::<Place>().is_err());
        assert!(Place::Real < Place::prime(2).unwrap());
        assert!(Place::prime(3).unwrap() < Place::prime(11).unwrap());
    }
}
