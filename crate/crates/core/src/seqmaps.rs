//! Maps on eventually periodic integer sequences of length omega: shift,
//! end equivalence, tree automorphisms, reproduction, lifts and saturated
//! sets.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lexspace::{minimal_period, LexElem, Payload, Value};
use crate::ordinal::{OrdLen, Ordinal};

/// Checks that `s` has length omega.
pub fn ensure_omega(s: &LexElem) -> Result<()> {
    if s.len() != OrdLen::Fin(Ordinal::omega()) {
        return Err(Error::ShapeMismatch(format!("expected length w, got {}", s.len())));
    }
    Ok(())
}

/// Unique (prefix, period) description of an omega-length element: the
/// period is minimal and the prefix does not end with the period's last value.
pub fn pre_period(s: &LexElem) -> Result<(Vec<Value>, Vec<Value>)> {
    ensure_omega(s)?;
    let segs = s.segments();
    let (last, init) = segs.split_last().expect("length w is nonempty");
    let mut pre = Vec::new();
    for seg in init {
        let n = seg.len.fin().and_then(|o| o.to_usize()).ok_or_else(|| {
            Error::UnsupportedShape("infinite segment before the tail of a length-w element".into())
        })?;
        match &seg.payload {
            Payload::Const(v) => pre.extend(std::iter::repeat_n(v.clone(), n)),
            Payload::Word(vals) => pre.extend(vals.iter().cloned()),
            Payload::Cycle(_) => unreachable!("cycles are infinite"),
        }
    }
    let mut per = match &last.payload {
        Payload::Const(v) => vec![v.clone()],
        Payload::Cycle(w) => minimal_period(w),
        Payload::Word(_) => unreachable!("words are finite"),
    };
    while pre.last().is_some() && pre.last() == per.last() {
        pre.pop();
        per.rotate_right(1);
    }
    Ok((pre, per))
}

pub fn from_pre_period(s_like: &LexElem, pre: Vec<Value>, per: Vec<Value>) -> Result<LexElem> {
    let base = s_like.base().clone();
    let tail = LexElem::cycle(base.clone(), per, OrdLen::Fin(Ordinal::omega()))?;
    LexElem::word(base, pre)?.sum(&tail)
}

/// The shift `tau(s)_i = s_(i+1)`.
pub fn shift(s: &LexElem) -> Result<LexElem> {
    ensure_omega(s)?;
    s.translate(&Ordinal::one())
}

fn shift_by(s: &LexElem, i: usize) -> Result<LexElem> {
    s.translate(&Ordinal::from(i))
}

fn witness_bound(s: &LexElem, t: &LexElem) -> Result<usize> {
    let (ps, qs) = pre_period(s)?;
    let (pt, qt) = pre_period(t)?;
    Ok(ps.len() + pt.len() + qs.len().lcm(&qt.len()))
}

/// Lexicographically least `(i, j)` with `tau^i(s) = tau^j(t)`.
pub fn end_equivalent(s: &LexElem, t: &LexElem) -> Result<Option<(usize, usize)>> {
    let bound = witness_bound(s, t)?;
    let tails: Vec<LexElem> = (0..=bound).map(|j| shift_by(t, j)).collect::<Result<_>>()?;
    for i in 0..=bound {
        let si = shift_by(s, i)?;
        for (j, tj) in tails.iter().enumerate() {
            if si.lex_eq(tj)? {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Least `i` with `tau^i(s) = tau^i(t)`.
pub fn level_end_equivalent(s: &LexElem, t: &LexElem) -> Result<Option<usize>> {
    let bound = witness_bound(s, t)?;
    for i in 0..=bound {
        if shift_by(s, i)?.lex_eq(&shift_by(t, i)?)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Finitely supported prefix function `m`; unlisted words map to zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AutoSpec {
    pub entries: BTreeMap<Vec<Value>, Value>,
}

impl AutoSpec {
    pub fn get(&self, w: &[Value]) -> Value {
        self.entries.get(w).cloned().unwrap_or_else(Value::zero)
    }

    fn max_len(&self) -> Option<usize> {
        self.entries.iter().filter(|(_, v)| !v.is_zero()).map(|(k, _)| k.len()).max()
    }
}

/// `f(x)_i = x_i + m(x_0 ... x_(i-1))`.
pub fn tree_auto_apply(m: &AutoSpec, x: &LexElem) -> Result<LexElem> {
    ensure_omega(x)?;
    let Some(depth) = m.max_len() else {
        return Ok(x.clone());
    };
    let vals = x.seq().prefix_values(depth + 1);
    let head: Vec<Value> = vals.iter().enumerate().map(|(i, v)| v + m.get(&vals[..i])).collect();
    LexElem::word(x.base().clone(), head)?.sum(&shift_by(x, depth + 1)?)
}

/// The automorphism sending `p` to `q`: for `x != p` with equality level
/// `k`, the result is `q` below `k`, `x_k - p_k + q_k` at `k`, and `x` above.
pub fn point_auto(p: &LexElem, q: &LexElem, x: &LexElem) -> Result<LexElem> {
    for e in [p, q, x] {
        ensure_omega(e)?;
    }
    let Some(k) = x.first_diff(p)? else {
        return Ok(q.clone());
    };
    let kk = k.to_usize().expect("finite level in length w");
    let v = x.at(kk)? - p.at(kk)? + q.at(kk)?;
    let head = q.restrict(&k)?.sum(&LexElem::word(x.base().clone(), vec![v])?)?;
    head.sum(&shift_by(x, kk + 1)?)
}

/// Prefix concatenation `a_w(z) = wz`.
pub fn reproduce(w: &[Value], z: &LexElem) -> Result<LexElem> {
    ensure_omega(z)?;
    LexElem::word(z.base().clone(), w.to_vec())?.sum(z)
}

/// First nonzero coordinate, `None` for the zero sequence.
pub fn first_nonzero(x: &LexElem) -> Option<(Ordinal, Value)> {
    let k = x.seq().first_index_where(|v| !v.is_zero())?;
    let v = x.index(&k).expect("found index").clone();
    Some((k, v))
}

/// `l+`: prepends 0 when the first nonzero coordinate is negative.
pub fn lift_plus(x: &LexElem) -> Result<LexElem> {
    lift(x, true)
}

/// `l-`: prepends 0 when the first nonzero coordinate is positive.
pub fn lift_minus(x: &LexElem) -> Result<LexElem> {
    lift(x, false)
}

fn lift(x: &LexElem, plus: bool) -> Result<LexElem> {
    ensure_omega(x)?;
    match first_nonzero(x) {
        Some((_, v)) if (plus && v.is_negative()) || (!plus && v.is_positive()) => {
            reproduce(&[Value::zero()], x)
        }
        _ => Ok(x.clone()),
    }
}

/// A union of end-equivalence classes given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturatedSet {
    pub generators: Vec<LexElem>,
}

impl SaturatedSet {
    pub fn new(generators: Vec<LexElem>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvariantViolation("a saturated set needs a generator".into()));
        }
        for g in &generators {
            ensure_omega(g)?;
        }
        Ok(SaturatedSet { generators })
    }
}

pub fn saturated_member(w: &SaturatedSet, s: &LexElem) -> Result<bool> {
    for g in &w.generators {
        if end_equivalent(s, g)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

impl FromStr for SaturatedSet {
    type Err = Error;

    /// A `[W]` header line followed by one element per line; blank lines and
    /// `#` comments are skipped.
    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        match lines.next() {
            Some("[W]") => {}
            _ => return Err(Error::parse(0, "expected [W] header")),
        }
        let gens = lines.map(|l| l.parse::<LexElem>()).collect::<Result<Vec<_>>>()?;
        SaturatedSet::new(gens)
    }
}
