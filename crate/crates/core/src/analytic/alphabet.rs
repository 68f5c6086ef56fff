//! Alphabet systems: one monotone map `t_a : I -> I` per letter, composed
//! along words and extended to eventually periodic omega-sequences.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};

use super::interval::RatInterval;
use super::mono::{Affine, MonoMap};
use crate::error::{Error, Result};
use crate::lexspace::{LexElem, Value};
use crate::ordinal::Ordinal;
use crate::rat::{int, is_integer, parse_rat, pow2, Rat};
use crate::seqmaps::pre_period;

/// Largest letter magnitude accepted by the dyadic systems.
const DYADIC_LIMIT: i64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Letters {
    Table(BTreeMap<Value, MonoMap>),
    /// Letters in Z with `t_n` onto `[z_n, z_(n+1)]`.
    DyadicZ,
    /// Letters in N with `t_n` onto `[z_n, z_(n+1)]` inside `[0, 1]`.
    DyadicN,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphabetSystem {
    lo: Rat,
    hi: Rat,
    letters: Letters,
}

/// Result of realizing an omega-sequence: a map onto a proper interval or
/// a single point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Realized {
    Map(MonoMap),
    Point(Rat),
}

impl fmt::Display for Realized {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Realized::Map(m) => write!(f, "map {m}"),
            Realized::Point(p) => write!(f, "{p}"),
        }
    }
}

/// The two-sided dyadic ladder: `-1 + 2^n` below zero, `1 - 2^-n` from zero on.
pub fn ladder_z(n: i64) -> Rat {
    if n < 0 {
        int(-1) + pow2(n)
    } else {
        int(1) - pow2(-n)
    }
}

fn letter_index(a: &Value, nonneg: bool) -> Result<i64> {
    let unknown = || Error::UnknownLetter(a.to_string());
    if !is_integer(a) || (nonneg && a.is_negative()) {
        return Err(unknown());
    }
    let n = a.to_integer().to_i64().ok_or_else(unknown)?;
    if n.abs() > DYADIC_LIMIT {
        return Err(unknown());
    }
    Ok(n)
}

impl AlphabetSystem {
    pub fn dyadic_z() -> Self {
        AlphabetSystem { lo: int(-1), hi: int(1), letters: Letters::DyadicZ }
    }

    pub fn dyadic_n() -> Self {
        AlphabetSystem { lo: int(0), hi: int(1), letters: Letters::DyadicN }
    }

    /// A finite table of letter maps on `[lo, hi]`.
    pub fn table(lo: Rat, hi: Rat, letters: BTreeMap<Value, MonoMap>) -> Result<Self> {
        if lo >= hi {
            return Err(Error::BadInterval(format!("[{lo},{hi}]")));
        }
        for (a, m) in &letters {
            if m.lo() != Some(&lo) || m.hi() != Some(&hi) {
                return Err(Error::DomainError(format!("letter {a} is not defined on [{lo},{hi}]")));
            }
            let (ilo, ihi) = m.image_ends();
            if ilo.is_some_and(|v| v < lo) || ihi.is_some_and(|v| v > hi) {
                return Err(Error::DomainError(format!("letter {a} leaves [{lo},{hi}]")));
            }
        }
        Ok(AlphabetSystem { lo, hi, letters: Letters::Table(letters) })
    }

    /// Letter 0 contracts `[-1, 1]` onto `[-1/2, 1/2]` fixing `[-1/4, 1/4]`
    /// pointwise; letter 1 is affine onto `[5/8, 7/8]`.
    pub fn flat_example() -> Self {
        let j = (Some(int(-1)), Some(int(1)));
        let q = |n: i64, d: i64| Rat::new(n.into(), d.into());
        let flat = MonoMap::piecewise(
            j.0.clone(),
            j.1.clone(),
            vec![q(-1, 4), q(1, 4)],
            vec![Affine::new(q(1, 3), q(-1, 6)), Affine::identity(), Affine::new(q(1, 3), q(1, 6))],
        )
        .expect("valid map");
        let lift = MonoMap::onto(&int(-1), &int(1), &q(5, 8), &q(7, 8)).expect("valid map");
        let letters = BTreeMap::from([(int(0), flat), (int(1), lift)]);
        AlphabetSystem::table(int(-1), int(1), letters).expect("valid system")
    }

    pub fn interval(&self) -> RatInterval {
        RatInterval::closed(self.lo.clone(), self.hi.clone())
    }

    pub fn letter(&self, a: &Value) -> Result<MonoMap> {
        let (lo, hi) = (&self.lo, &self.hi);
        match &self.letters {
            Letters::Table(t) => t.get(a).cloned().ok_or_else(|| Error::UnknownLetter(a.to_string())),
            Letters::DyadicZ => {
                let n = letter_index(a, false)?;
                MonoMap::onto(lo, hi, &ladder_z(n), &ladder_z(n + 1))
            }
            Letters::DyadicN => {
                let n = letter_index(a, true)?;
                MonoMap::onto(lo, hi, &ladder_z(n), &ladder_z(n + 1))
            }
        }
    }

    /// `t_w = t_(w0) . t_(w1) . ...` and its image `I_w`.
    pub fn word_map(&self, w: &[Value]) -> Result<(MonoMap, RatInterval)> {
        let mut m = MonoMap::identity(Some(self.lo.clone()), Some(self.hi.clone()));
        for a in w.iter().rev() {
            m = self.letter(a)?.compose(&m)?;
        }
        let iv = m.image_of(&self.interval())?;
        Ok((m, iv))
    }

    /// Canonical block of the periodic class of `per` (its least rotation)
    /// and the rotation offset `i` with `per = e[i..] e[..i]`.
    fn canonical_block(per: &[Value]) -> (Vec<Value>, usize) {
        let p = per.len();
        let mut best = 0;
        for r in 1..p {
            let rot = per[r..].iter().chain(&per[..r]);
            let cur = per[best..].iter().chain(&per[..best]);
            if rot.cmp(cur) == std::cmp::Ordering::Less {
                best = r;
            }
        }
        let e: Vec<Value> = per[best..].iter().chain(&per[..best]).cloned().collect();
        (e, (p - best) % p)
    }

    /// `t_(e^inf)` for a canonical block `e`: the fixed point of `t_e` for an
    /// improper class, the affine map onto the fixed interval otherwise.
    pub fn periodic_map(&self, e: &[Value]) -> Result<Realized> {
        let (te, _) = self.word_map(e)?;
        let fixed = te.fixed_set()?;
        match fixed.as_slice() {
            [] => Err(Error::DomainError("the periodic block has no fixed point".into())),
            [f] if f.is_point() => Ok(Realized::Point(f.lo.clone())),
            [f] if f.lo_closed && f.hi_closed => Ok(Realized::Map(MonoMap::onto(&self.lo, &self.hi, &f.lo, &f.hi)?)),
            _ => Err(Error::UnsupportedShape("fixed set of the periodic block is not a closed interval".into())),
        }
    }

    /// Realizes an eventually periodic omega-sequence of letters.
    pub fn t_s(&self, s: &LexElem) -> Result<Realized> {
        let (pre, per) = pre_period(s)?;
        let (e, i) = Self::canonical_block(&per);
        let mut head = pre;
        if i > 0 {
            head.extend_from_slice(&e[i..]);
        }
        let (tw, _) = self.word_map(&head)?;
        Ok(match self.periodic_map(&e)? {
            Realized::Point(x) => Realized::Point(tw.apply(&x)?),
            Realized::Map(m) => Realized::Map(tw.compose(&m)?),
        })
    }

    /// Checks `t_(s1) = t_(s1|beta) . t_(s2|beta)^-1 . t_(s2)` exactly.
    pub fn composition_check(&self, s1: &LexElem, s2: &LexElem, beta: usize) -> Result<bool> {
        let b = Ordinal::from(beta);
        if !s1.translate(&b)?.lex_eq(&s2.translate(&b)?)? {
            return Err(Error::NotEndEquivalentAtBeta(beta));
        }
        let (w1, _) = self.word_map(&s1.seq().prefix_values(beta))?;
        let (w2, _) = self.word_map(&s2.seq().prefix_values(beta))?;
        let rhs = match self.t_s(s2)? {
            Realized::Point(p) => Realized::Point(w1.apply(&w2.invert_apply(&p)?)?),
            Realized::Map(m) => Realized::Map(w1.compose(&w2.inverse()?.compose(&m)?)?),
        };
        Ok(self.t_s(s1)? == rhs)
    }
}

pub fn realize_zz(s: &LexElem) -> Result<Rat> {
    point_of(AlphabetSystem::dyadic_z().t_s(s)?)
}

pub fn realize_zn(s: &LexElem) -> Result<Rat> {
    point_of(AlphabetSystem::dyadic_n().t_s(s)?)
}

fn point_of(r: Realized) -> Result<Rat> {
    match r {
        Realized::Point(p) => Ok(p),
        Realized::Map(_) => Err(Error::DomainError("proper periodic class in a dyadic system".into())),
    }
}

/// Fixture format: an optional `interval [lo,hi]` line, then one line per
/// affine piece, `letter <id>: <slope> <offset> on [x0,x1] -> [y0,y1]`, in
/// increasing order of `x0`. A zero slope marks a constant letter.
impl FromStr for AlphabetSystem {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut iv: Option<RatInterval> = None;
        let mut raw: BTreeMap<Value, Vec<(Affine, RatInterval, RatInterval)>> = BTreeMap::new();
        let mut pos = 0;
        for line in text.lines() {
            let at = pos;
            pos += line.len() + 1;
            let l = line.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let err = |m: &str| Error::parse(at, m.to_string());
            if let Some(rest) = l.strip_prefix("interval") {
                iv = Some(rest.parse().map_err(|_| err("bad interval"))?);
                continue;
            }
            let rest = l.strip_prefix("letter").ok_or_else(|| err("expected `letter` or `interval`"))?;
            let (id, body) = rest.split_once(':').ok_or_else(|| err("missing `:`"))?;
            let id = parse_rat(id).map_err(|_| err("bad letter id"))?;
            let (lhs, range) = body.split_once("->").ok_or_else(|| err("missing `->`"))?;
            let (coef, dom) = lhs.split_once(" on ").ok_or_else(|| err("missing `on`"))?;
            let mut nums = coef.split_whitespace();
            let slope = parse_rat(nums.next().ok_or_else(|| err("missing slope"))?)?;
            let offset = parse_rat(nums.next().ok_or_else(|| err("missing offset"))?)?;
            if nums.next().is_some() || slope.is_negative() {
                return Err(err("expected `<slope> <offset>` with slope >= 0"));
            }
            let dom: RatInterval = dom.parse().map_err(|_| err("bad piece domain"))?;
            let range: RatInterval = range.parse().map_err(|_| err("bad piece range"))?;
            let f = Affine::new(slope, offset);
            if f.apply(&dom.lo) != range.lo || f.apply(&dom.hi) != range.hi {
                return Err(err("piece range does not match its formula"));
            }
            raw.entry(id).or_default().push((f, dom, range));
        }
        let first = raw.values().next().ok_or_else(|| Error::parse(0, "no letters"))?;
        let iv = iv.unwrap_or_else(|| {
            RatInterval::closed(first[0].1.lo.clone(), first.last().expect("nonempty").1.hi.clone())
        });
        let mut letters = BTreeMap::new();
        for (id, pieces) in raw {
            let bad = |m: &str| Error::DomainError(format!("letter {id}: {m}"));
            if pieces[0].1.lo != iv.lo || pieces.last().expect("nonempty").1.hi != iv.hi {
                return Err(bad("pieces do not cover the interval"));
            }
            if pieces.windows(2).any(|w| w[0].1.hi != w[1].1.lo) {
                return Err(bad("pieces are not contiguous"));
            }
            let lo = Some(iv.lo.clone());
            let hi = Some(iv.hi.clone());
            let m = if pieces.iter().any(|p| p.0.slope.is_zero()) {
                if pieces.len() != 1 {
                    return Err(bad("a constant letter takes a single piece"));
                }
                MonoMap::constant(lo, hi, pieces[0].0.offset.clone())?
            } else {
                let breaks = pieces[1..].iter().map(|p| p.1.lo.clone()).collect();
                MonoMap::piecewise(lo, hi, breaks, pieces.into_iter().map(|p| p.0).collect())?
            };
            letters.insert(id, m);
        }
        AlphabetSystem::table(iv.lo, iv.hi, letters)
    }
}
