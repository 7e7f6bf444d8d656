use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Coefficient ring of a Witt vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseRing {
    Integers,
    IntegersMod(u64),
}

impl BaseRing {
    pub fn integers_mod(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::UnsupportedRing(format!("Z/{m}")));
        }
        Ok(BaseRing::IntegersMod(m))
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::UnsupportedRing(format!("F_{p}: {p} is not prime")));
        }
        Ok(BaseRing::IntegersMod(p))
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            BaseRing::Integers => None,
            BaseRing::IntegersMod(m) => Some(*m),
        }
    }

    pub fn is_torsion_free(&self) -> bool {
        matches!(self, BaseRing::Integers)
    }

    /// Representative in `[0, m)` over `Z/m`, unchanged over `Z`.
    pub fn reduce(&self, x: &BigInt) -> BigInt {
        match self {
            BaseRing::Integers => x.clone(),
            BaseRing::IntegersMod(m) => x.mod_floor(&BigInt::from(*m)),
        }
    }

    /// All elements, for finite rings.
    pub fn elements(&self) -> Option<Vec<BigInt>> {
        self.modulus().map(|m| (0..m).map(BigInt::from).collect())
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Integers => write!(f, "Z"),
            BaseRing::IntegersMod(m) if is_prime(*m) => write!(f, "F_{m}"),
            BaseRing::IntegersMod(m) => write!(f, "Z/{m}"),
        }
    }
}

/// Accepts `Z`, `Z/m` and `F_p`.
impl FromStr for BaseRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Z" {
            return Ok(BaseRing::Integers);
        }
        let parse = |t: &str| t.parse::<u64>().map_err(|_| Error::UnsupportedRing(s.to_string()));
        if let Some(m) = s.strip_prefix("Z/") {
            return BaseRing::integers_mod(parse(m)?);
        }
        if let Some(p) = s.strip_prefix("F_") {
            return BaseRing::prime_field(parse(p)?);
        }
        Err(Error::UnsupportedRing(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        assert_eq!("Z".parse::<BaseRing>().unwrap(), BaseRing::Integers);
        assert_eq!("Z/4".parse::<BaseRing>().unwrap(), BaseRing::IntegersMod(4));
        assert_eq!("F_3".parse::<BaseRing>().unwrap(), BaseRing::IntegersMod(3));
        assert!("F_4".parse::<BaseRing>().is_err());
        assert!("Z/1".parse::<BaseRing>().is_err());
        assert!("Q".parse::<BaseRing>().is_err());
        assert_eq!(BaseRing::IntegersMod(2).to_string(), "F_2");
        assert_eq!(BaseRing::IntegersMod(8).to_string(), "Z/8");
    }
}
