//! Bounded rational intervals and convex-set relations between them.

use std::fmt;

use crate::error::{Error, Result};
use crate::rat::{parse_rat, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl RatInterval {
    pub fn closed(lo: Rat, hi: Rat) -> Self {
        RatInterval { lo, hi, lo_closed: true, hi_closed: true }
    }

    pub fn open(lo: Rat, hi: Rat) -> Self {
        RatInterval { lo, hi, lo_closed: false, hi_closed: false }
    }

    pub fn point(x: Rat) -> Self {
        RatInterval::closed(x.clone(), x)
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi && self.lo_closed && self.hi_closed
    }

    /// Nonempty with more than one point.
    pub fn is_proper(&self) -> bool {
        self.lo < self.hi
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let above = if self.lo_closed { *x >= self.lo } else { *x > self.lo };
        let below = if self.hi_closed { *x <= self.hi } else { *x < self.hi };
        above && below
    }

    pub fn closure(&self) -> RatInterval {
        RatInterval::closed(self.lo.clone(), self.hi.clone())
    }

    pub fn interior(&self) -> RatInterval {
        RatInterval::open(self.lo.clone(), self.hi.clone())
    }

    pub fn intersect(&self, other: &RatInterval) -> RatInterval {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            std::cmp::Ordering::Less => (other.lo.clone(), other.lo_closed),
            std::cmp::Ordering::Greater => (self.lo.clone(), self.lo_closed),
            std::cmp::Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            std::cmp::Ordering::Greater => (other.hi.clone(), other.hi_closed),
            std::cmp::Ordering::Less => (self.hi.clone(), self.hi_closed),
            std::cmp::Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        RatInterval { lo, hi, lo_closed, hi_closed }
    }

    /// `self` is a subset of `other`.
    pub fn subset_of(&self, other: &RatInterval) -> bool {
        if self.is_empty() {
            return true;
        }
        let lo_ok = self.lo > other.lo || (self.lo == other.lo && (other.lo_closed || !self.lo_closed));
        let hi_ok = self.hi < other.hi || (self.hi == other.hi && (other.hi_closed || !self.hi_closed));
        lo_ok && hi_ok
    }

    pub fn length(&self) -> Rat {
        &self.hi - &self.lo
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_closed { '[' } else { '(' };
        let r = if self.hi_closed { ']' } else { ')' };
        write!(f, "{l}{},{}{r}", self.lo, self.hi)
    }
}

impl std::str::FromStr for RatInterval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::parse(0, format!("not an interval: {t:?}"));
        let lo_closed = match t.chars().next() {
            Some('[') => true,
            Some('(') => false,
            _ => return Err(bad()),
        };
        let hi_closed = match t.chars().last() {
            Some(']') => true,
            Some(')') => false,
            _ => return Err(bad()),
        };
        let (a, b) = t[1..t.len() - 1].split_once(',').ok_or_else(bad)?;
        let iv = RatInterval { lo: parse_rat(a)?, hi: parse_rat(b)?, lo_closed, hi_closed };
        if iv.lo > iv.hi {
            return Err(Error::parse(0, "interval bounds are reversed"));
        }
        Ok(iv)
    }
}

/// The two convex sets share a point.
pub fn convex_overlap(a: &RatInterval, b: &RatInterval) -> bool {
    !a.is_empty() && !b.is_empty() && !a.intersect(b).is_empty()
}

/// `inner` lies well inside `outer`: its closure sits in the interior of
/// `outer`. Both must be proper intervals.
pub fn convex_prec(outer: &RatInterval, inner: &RatInterval) -> Result<bool> {
    if !outer.is_proper() || !inner.is_proper() {
        return Err(Error::ImproperInterval);
    }
    Ok(inner.closure().subset_of(&outer.interior()))
}

/// Image of a convex set under an increasing map given by its values at the
/// two ends; endpoint closedness is kept.
pub fn convex_image(iv: &RatInterval, f: impl Fn(&Rat) -> Result<Rat>) -> Result<RatInterval> {
    Ok(RatInterval { lo: f(&iv.lo)?, hi: f(&iv.hi)?, lo_closed: iv.lo_closed, hi_closed: iv.hi_closed })
}
