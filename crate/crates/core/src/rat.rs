//! Exact rational helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn half() -> Rat {
    rat(1, 2)
}

/// `2^-n` for any integer `n`.
pub fn pow2(n: i64) -> Rat {
    let two = int(2);
    if n >= 0 {
        num_traits::pow::pow(two, n as usize)
    } else {
        num_traits::pow::pow(two, n.unsigned_abs() as usize).recip()
    }
}

/// Parses `p`, `-p`, or `p/q`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let bad = || Error::parse(0, format!("not a rational: {t:?}"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::parse(0, "zero denominator"));
        }
        Ok(Rat::new(n, d))
    } else {
        let n: BigInt = t.parse().map_err(|_| bad())?;
        Ok(Rat::from_integer(n))
    }
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}
