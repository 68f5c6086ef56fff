//! Strictly increasing piecewise affine maps on rational intervals, plus
//! constant maps. Pieces are right-continuous: at a break the piece to the
//! right applies.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::interval::RatInterval;
use crate::error::{Error, Result};
use crate::rat::{parse_rat, Rat};

/// `x -> slope * x + offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub slope: Rat,
    pub offset: Rat,
}

impl Affine {
    pub fn new(slope: Rat, offset: Rat) -> Self {
        Affine { slope, offset }
    }

    pub fn identity() -> Self {
        Affine::new(Rat::one(), Rat::zero())
    }

    /// The increasing affine bijection `[a, b] -> [c, d]`; requires `a < b`.
    pub fn onto(a: &Rat, b: &Rat, c: &Rat, d: &Rat) -> Self {
        let slope = (d - c) / (b - a);
        let offset = c - &slope * a;
        Affine { slope, offset }
    }

    pub fn apply(&self, x: &Rat) -> Rat {
        &self.slope * x + &self.offset
    }

    pub fn inverse(&self) -> Affine {
        let slope = self.slope.recip();
        let offset = -(&self.offset * &slope);
        Affine { slope, offset }
    }

    /// `self . g`.
    pub fn after(&self, g: &Affine) -> Affine {
        Affine { slope: &self.slope * &g.slope, offset: self.apply(&g.offset) }
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*x{}{}", self.slope, if self.offset.is_negative() { "" } else { "+" }, self.offset)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Body {
    /// `pieces.len() == breaks.len() + 1`.
    Pieces { breaks: Vec<Rat>, pieces: Vec<Affine> },
    Const(Rat),
}

/// A map on the interval between `lo` and `hi`, closed at finite ends;
/// `None` marks an unbounded side.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonoMap {
    lo: Option<Rat>,
    hi: Option<Rat>,
    body: Body,
}

fn out_of(x: &Rat) -> Error {
    Error::OutOfDomain(x.to_string())
}

impl MonoMap {
    pub fn affine(lo: Option<Rat>, hi: Option<Rat>, f: Affine) -> Result<Self> {
        MonoMap::piecewise(lo, hi, vec![], vec![f])
    }

    pub fn identity(lo: Option<Rat>, hi: Option<Rat>) -> Self {
        MonoMap::affine(lo, hi, Affine::identity()).expect("identity is increasing")
    }

    pub fn constant(lo: Option<Rat>, hi: Option<Rat>, point: Rat) -> Result<Self> {
        check_bounds(&lo, &hi)?;
        Ok(MonoMap { lo, hi, body: Body::Const(point) })
    }

    pub fn piecewise(lo: Option<Rat>, hi: Option<Rat>, breaks: Vec<Rat>, pieces: Vec<Affine>) -> Result<Self> {
        check_bounds(&lo, &hi)?;
        if pieces.len() != breaks.len() + 1 {
            return Err(Error::DomainError("need one more piece than breaks".into()));
        }
        if pieces.iter().any(|p| !p.slope.is_positive()) {
            return Err(Error::DomainError("piece slopes must be positive".into()));
        }
        if breaks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::DomainError("breaks must increase".into()));
        }
        if let (Some(first), Some(last)) = (breaks.first(), breaks.last()) {
            if lo.as_ref().is_some_and(|l| first <= l) || hi.as_ref().is_some_and(|h| last >= h) {
                return Err(Error::DomainError("breaks must lie inside the domain".into()));
            }
        }
        for (i, b) in breaks.iter().enumerate() {
            if pieces[i].apply(b) > pieces[i + 1].apply(b) {
                return Err(Error::DomainError(format!("map decreases across {b}")));
            }
        }
        let mut m = MonoMap { lo, hi, body: Body::Pieces { breaks, pieces } };
        m.normalize();
        Ok(m)
    }

    /// The affine bijection `[a, b] -> [c, d]`.
    pub fn onto(a: &Rat, b: &Rat, c: &Rat, d: &Rat) -> Result<Self> {
        if a >= b || c >= d {
            return Err(Error::BadInterval(format!("[{a},{b}] -> [{c},{d}]")));
        }
        MonoMap::affine(Some(a.clone()), Some(b.clone()), Affine::onto(a, b, c, d))
    }

    pub fn lo(&self) -> Option<&Rat> {
        self.lo.as_ref()
    }

    pub fn hi(&self) -> Option<&Rat> {
        self.hi.as_ref()
    }

    pub fn is_const(&self) -> bool {
        matches!(self.body, Body::Const(_))
    }

    pub fn const_value(&self) -> Option<&Rat> {
        match &self.body {
            Body::Const(p) => Some(p),
            Body::Pieces { .. } => None,
        }
    }

    pub fn breaks(&self) -> &[Rat] {
        match &self.body {
            Body::Pieces { breaks, .. } => breaks,
            Body::Const(_) => &[],
        }
    }

    pub fn pieces(&self) -> &[Affine] {
        match &self.body {
            Body::Pieces { pieces, .. } => pieces,
            Body::Const(_) => &[],
        }
    }

    pub fn in_domain(&self, x: &Rat) -> bool {
        self.lo.as_ref().is_none_or(|l| x >= l) && self.hi.as_ref().is_none_or(|h| x <= h)
    }

    /// Domain as a closed interval, when bounded.
    pub fn domain(&self) -> Option<RatInterval> {
        Some(RatInterval::closed(self.lo.clone()?, self.hi.clone()?))
    }

    fn piece_index(&self, x: &Rat) -> usize {
        self.breaks().partition_point(|b| b <= x)
    }

    pub fn apply(&self, x: &Rat) -> Result<Rat> {
        if !self.in_domain(x) {
            return Err(out_of(x));
        }
        Ok(match &self.body {
            Body::Const(p) => p.clone(),
            Body::Pieces { pieces, .. } => pieces[self.piece_index(x)].apply(x),
        })
    }

    /// Limit from the left at `x`; `x` must exceed the lower end.
    pub fn left_limit(&self, x: &Rat) -> Result<Rat> {
        if !self.in_domain(x) || self.lo.as_ref() == Some(x) {
            return Err(out_of(x));
        }
        Ok(match &self.body {
            Body::Const(p) => p.clone(),
            Body::Pieces { breaks, pieces } => pieces[breaks.partition_point(|b| b < x)].apply(x),
        })
    }

    pub fn is_continuous(&self) -> bool {
        match &self.body {
            Body::Const(_) => true,
            Body::Pieces { breaks, pieces } => {
                breaks.iter().enumerate().all(|(i, b)| pieces[i].apply(b) == pieces[i + 1].apply(b))
            }
        }
    }

    /// Values at the two ends, `None` on an unbounded side.
    pub fn image_ends(&self) -> (Option<Rat>, Option<Rat>) {
        let at = |e: &Option<Rat>| e.as_ref().map(|x| self.apply(x).expect("end is in the domain"));
        match &self.body {
            Body::Const(p) => (Some(p.clone()), Some(p.clone())),
            Body::Pieces { .. } => (at(&self.lo), at(&self.hi)),
        }
    }

    /// Image of a convex subset of a continuous map's domain.
    pub fn image_of(&self, iv: &RatInterval) -> Result<RatInterval> {
        if !self.in_domain(&iv.lo) {
            return Err(out_of(&iv.lo));
        }
        if !self.in_domain(&iv.hi) {
            return Err(out_of(&iv.hi));
        }
        if self.is_const() {
            return Ok(RatInterval::point(self.apply(&iv.lo)?));
        }
        let hi = if iv.hi_closed { self.apply(&iv.hi)? } else { self.left_limit(&iv.hi).or_else(|_| self.apply(&iv.hi))? };
        Ok(RatInterval { lo: self.apply(&iv.lo)?, hi, lo_closed: iv.lo_closed, hi_closed: iv.hi_closed })
    }

    /// `self . g`. The image of `g` must lie in the domain of `self`.
    pub fn compose(&self, g: &MonoMap) -> Result<MonoMap> {
        let (glo, ghi) = g.image_ends();
        match (&glo, &self.lo) {
            (_, None) => {}
            (Some(v), Some(l)) if v >= l => {}
            _ => return Err(Error::OutOfDomain(format!("image of the inner map leaves [{:?}, ..]", self.lo))),
        }
        match (&ghi, &self.hi) {
            (_, None) => {}
            (Some(v), Some(h)) if v <= h => {}
            _ => return Err(Error::OutOfDomain(format!("image of the inner map leaves [.., {:?}]", self.hi))),
        }
        let (gbreaks, gpieces) = match &g.body {
            Body::Const(p) => return MonoMap::constant(g.lo.clone(), g.hi.clone(), self.apply(p)?),
            Body::Pieces { breaks, pieces } => (breaks, pieces),
        };
        let (fbreaks, fpieces) = match &self.body {
            Body::Const(p) => return MonoMap::constant(g.lo.clone(), g.hi.clone(), p.clone()),
            Body::Pieces { breaks, pieces } => (breaks, pieces),
        };
        let mut cuts: Vec<Rat> = gbreaks.clone();
        for fb in fbreaks {
            for (i, gp) in gpieces.iter().enumerate() {
                let x = gp.inverse().apply(fb);
                let after_lo = if i == 0 { g.lo.as_ref().is_none_or(|l| x > *l) } else { x >= gbreaks[i - 1] };
                let before_hi = if i == gbreaks.len() { g.hi.as_ref().is_none_or(|h| x < *h) } else { x < gbreaks[i] };
                if after_lo && before_hi {
                    cuts.push(x);
                }
            }
        }
        cuts.sort();
        cuts.dedup();
        cuts.retain(|x| g.lo.as_ref().is_none_or(|l| x > l) && g.hi.as_ref().is_none_or(|h| x < h));
        let mut pieces = Vec::with_capacity(cuts.len() + 1);
        for k in 0..=cuts.len() {
            let sample = if k > 0 {
                cuts[k - 1].clone()
            } else if let Some(l) = &g.lo {
                l.clone()
            } else if let Some(c) = cuts.first() {
                c - Rat::one()
            } else {
                Rat::zero()
            };
            let gp = &gpieces[gbreaks.partition_point(|b| *b <= sample)];
            let y = gp.apply(&sample);
            let fp = &fpieces[fbreaks.partition_point(|b| *b <= y)];
            pieces.push(fp.after(gp));
        }
        MonoMap::piecewise(g.lo.clone(), g.hi.clone(), cuts, pieces)
    }

    /// The `x` with `self(x) = y`.
    pub fn invert_apply(&self, y: &Rat) -> Result<Rat> {
        let (breaks, pieces) = match &self.body {
            Body::Const(_) => return Err(Error::NotInvertible),
            Body::Pieces { breaks, pieces } => (breaks, pieces),
        };
        for (i, p) in pieces.iter().enumerate() {
            let x = p.inverse().apply(y);
            let lo_ok = if i == 0 { self.lo.as_ref().is_none_or(|l| x >= *l) } else { x >= breaks[i - 1] };
            let hi_ok = if i == breaks.len() { self.hi.as_ref().is_none_or(|h| x <= *h) } else { x < breaks[i] };
            if lo_ok && hi_ok {
                return Ok(x);
            }
        }
        Err(Error::OutOfDomain(format!("{y} is not a value of the map")))
    }

    /// Inverse of a continuous increasing map, defined on its image.
    pub fn inverse(&self) -> Result<MonoMap> {
        let (breaks, pieces) = match &self.body {
            Body::Const(_) => return Err(Error::NotInvertible),
            Body::Pieces { breaks, pieces } => (breaks, pieces),
        };
        if !self.is_continuous() {
            return Err(Error::NotInvertible);
        }
        let (lo, hi) = self.image_ends();
        let nb = breaks.iter().enumerate().map(|(i, b)| pieces[i + 1].apply(b)).collect();
        MonoMap::piecewise(lo, hi, nb, pieces.iter().map(Affine::inverse).collect())
    }

    pub fn restrict(&self, lo: Rat, hi: Rat) -> Result<MonoMap> {
        if !self.in_domain(&lo) || !self.in_domain(&hi) {
            return Err(Error::OutOfDomain(format!("[{lo},{hi}]")));
        }
        match &self.body {
            Body::Const(p) => MonoMap::constant(Some(lo), Some(hi), p.clone()),
            Body::Pieces { breaks, pieces } => {
                let i0 = breaks.partition_point(|b| *b <= lo);
                let i1 = breaks.partition_point(|b| *b < hi);
                MonoMap::piecewise(
                    Some(lo),
                    Some(hi),
                    breaks[i0..i1].to_vec(),
                    pieces[i0..=i1].to_vec(),
                )
            }
        }
    }

    fn normalize(&mut self) {
        if let Body::Pieces { breaks, pieces } = &mut self.body {
            let mut i = 0;
            while i < breaks.len() {
                if pieces[i] == pieces[i + 1] {
                    breaks.remove(i);
                    pieces.remove(i + 1);
                } else {
                    i += 1;
                }
            }
        }
    }

    /// Fixed points as a sorted list of disjoint convex sets. The domain
    /// must be bounded.
    pub fn fixed_set(&self) -> Result<Vec<RatInterval>> {
        let (lo, hi) = match (&self.lo, &self.hi) {
            (Some(l), Some(h)) => (l.clone(), h.clone()),
            _ => return Err(Error::DomainError("fixed set of a map on an unbounded domain".into())),
        };
        let (breaks, pieces) = match &self.body {
            Body::Const(p) => {
                return Ok(if self.in_domain(p) { vec![RatInterval::point(p.clone())] } else { vec![] });
            }
            Body::Pieces { breaks, pieces } => (breaks, pieces),
        };
        let mut out: Vec<RatInterval> = Vec::new();
        for (i, p) in pieces.iter().enumerate() {
            let a = if i == 0 { lo.clone() } else { breaks[i - 1].clone() };
            let b = if i == breaks.len() { hi.clone() } else { breaks[i].clone() };
            let part = RatInterval { lo: a, hi: b, lo_closed: true, hi_closed: i == breaks.len() };
            let found = if p.slope.is_one() {
                if p.offset.is_zero() {
                    Some(part)
                } else {
                    None
                }
            } else {
                let x = &p.offset / (Rat::one() - &p.slope);
                part.contains(&x).then(|| RatInterval::point(x))
            };
            if let Some(f) = found {
                match out.last_mut() {
                    Some(prev) if prev.hi == f.lo && (prev.hi_closed || f.lo_closed) => {
                        prev.hi = f.hi;
                        prev.hi_closed = f.hi_closed;
                    }
                    _ => out.push(f),
                }
            }
        }
        Ok(out)
    }
}

fn check_bounds(lo: &Option<Rat>, hi: &Option<Rat>) -> Result<()> {
    if let (Some(l), Some(h)) = (lo, hi) {
        if l > h {
            return Err(Error::BadInterval(format!("[{l},{h}]")));
        }
    }
    Ok(())
}

impl fmt::Display for MonoMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let end = |e: &Option<Rat>, inf: &str| e.as_ref().map_or(inf.to_string(), |x| x.to_string());
        write!(f, "on [{},{}]: ", end(&self.lo, "-inf"), end(&self.hi, "inf"))?;
        match &self.body {
            Body::Const(p) => write!(f, "const {p}"),
            Body::Pieces { breaks, pieces } => {
                for (i, p) in pieces.iter().enumerate() {
                    if i > 0 {
                        write!(f, " | from {}: ", breaks[i - 1])?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for Affine {
    type Err = Error;

    /// `<slope>*x<+|-><offset>`, as printed.
    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        let (slope, rest) = t.split_once("*x").ok_or_else(|| Error::parse(0, "expected '<slope>*x<offset>'"))?;
        let offset = match rest.trim().strip_prefix('+') {
            Some(o) => parse_rat(o.trim())?,
            None if rest.trim().is_empty() => Rat::zero(),
            None => parse_rat(rest.trim())?,
        };
        Ok(Affine::new(parse_rat(slope.trim())?, offset))
    }
}

impl FromStr for MonoMap {
    type Err = Error;

    /// The printed form `on [lo,hi]: <affine> | from <b>: <affine> ...`,
    /// where `-inf`/`inf` mark open sides and the `on [..]:` prefix may be
    /// left out for a map of the whole line. `const <v>` gives a constant.
    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        let (lo, hi, body) = match t.strip_prefix("on ") {
            Some(r) => {
                let (dom, body) = r.split_once("]:").ok_or_else(|| Error::parse(3, "expected 'on [lo,hi]:'"))?;
                let dom = dom.trim().strip_prefix('[').ok_or_else(|| Error::parse(3, "expected '['"))?;
                let (a, b) = dom.split_once(',').ok_or_else(|| Error::parse(3, "expected 'lo,hi'"))?;
                let end = |e: &str, inf: &str| if e.trim() == inf { Ok(None) } else { parse_rat(e.trim()).map(Some) };
                (end(a, "-inf")?, end(b, "inf")?, body)
            }
            None => (None, None, t),
        };
        if let Some(v) = body.trim().strip_prefix("const ") {
            return MonoMap::constant(lo, hi, parse_rat(v.trim())?);
        }
        let mut breaks = Vec::new();
        let mut pieces = Vec::new();
        for (i, part) in body.split('|').enumerate() {
            let part = part.trim();
            let aff = if i == 0 {
                part
            } else {
                let r = part.strip_prefix("from ").ok_or_else(|| Error::parse(0, "expected 'from <break>:'"))?;
                let (b, aff) = r.split_once(':').ok_or_else(|| Error::parse(0, "expected ':' after break"))?;
                breaks.push(parse_rat(b.trim())?);
                aff
            };
            pieces.push(aff.parse()?);
        }
        MonoMap::piecewise(lo, hi, breaks, pieces)
    }
}
