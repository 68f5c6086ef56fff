//! Zero-dimensional orders: double points and arrow spaces, gap pairs in
//! `2^alpha`, and the clopen-interval isomorphisms between them.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lexspace::{BaseKind, BaseOrder, LexElem, Payload, Sign, Value};
use crate::ordinal::{OrdLen, Ordinal};
use crate::rat::{int, parse_rat, Rat};
use crate::seqmaps::{saturated_member, SaturatedSet};
use crate::treekit::TreeSpec;

/// The underlying point of a double point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    Value(Value),
    Elem(LexElem),
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Value(v) => write!(f, "{v}"),
            Base::Elem(e) => write!(f, "{e}"),
        }
    }
}

/// `t^-` or `t^+`: the two copies of `t` in the doubled order, with
/// `t^- < t^+` immediately adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DoublePoint {
    pub point: Base,
    pub sign: Sign,
}

impl DoublePoint {
    pub fn value(v: Value, sign: Sign) -> Self {
        DoublePoint { point: Base::Value(v), sign }
    }

    pub fn elem(e: LexElem, sign: Sign) -> Self {
        DoublePoint { point: Base::Elem(e), sign }
    }
}

impl fmt::Display for DoublePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ^{}", self.point, self.sign)
    }
}

impl FromStr for DoublePoint {
    type Err = Error;

    /// `<value or element> ^-` or `^+`.
    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim_end();
        let at = t.rfind('^').ok_or_else(|| Error::parse(t.len(), "missing ^- or ^+"))?;
        let sign = match &t[at + 1..] {
            "-" => Sign::Minus,
            "+" => Sign::Plus,
            _ => return Err(Error::parse(at + 1, "sign must be - or +")),
        };
        let body = t[..at].trim();
        let point = if body.contains("segs=") {
            Base::Elem(body.parse()?)
        } else {
            Base::Value(parse_rat(body)?)
        };
        Ok(DoublePoint { point, sign })
    }
}

fn sign_rank(s: Sign) -> u8 {
    match s {
        Sign::Minus => 0,
        Sign::Plus => 1,
    }
}

pub fn double_cmp(p: &DoublePoint, q: &DoublePoint) -> Result<Ordering> {
    let base = match (&p.point, &q.point) {
        (Base::Value(a), Base::Value(b)) => a.cmp(b),
        (Base::Elem(a), Base::Elem(b)) => a.lex_cmp(b)?,
        _ => return Err(Error::ShapeMismatch("a value and an element are not comparable".into())),
    };
    Ok(base.then(sign_rank(p.sign).cmp(&sign_rank(q.sign))))
}

/// Endpoints of the preimage of the open interval `(a, b)`: `(a^+, b^-)`.
pub fn open_preimage(a: Base, b: Base) -> (DoublePoint, DoublePoint) {
    (DoublePoint { point: a, sign: Sign::Plus }, DoublePoint { point: b, sign: Sign::Minus })
}

/// Endpoints of the preimage of the closed interval `[a, b]`: `[a^-, b^+]`.
pub fn closed_preimage(a: Base, b: Base) -> (DoublePoint, DoublePoint) {
    (DoublePoint { point: a, sign: Sign::Minus }, DoublePoint { point: b, sign: Sign::Plus })
}

/// Which points carry a plus copy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlusSet {
    All,
    Values(BTreeSet<Value>),
    /// Omega-sequences end equivalent to one of the generators.
    Classes(SaturatedSet),
}

/// The order `F x {-} u A x {+}` for a base order `F` and a subset `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowSpace {
    pub base: BaseOrder,
    pub plus: PlusSet,
}

impl ArrowSpace {
    pub fn new(base: BaseOrder, plus: PlusSet) -> Self {
        ArrowSpace { base, plus }
    }

    pub fn in_plus(&self, t: &Base) -> Result<bool> {
        match (&self.plus, t) {
            (PlusSet::All, _) => Ok(true),
            (PlusSet::Values(vs), Base::Value(v)) => Ok(vs.contains(v)),
            (PlusSet::Classes(w), Base::Elem(e)) => saturated_member(w, e),
            _ => Err(Error::ShapeMismatch("plus set and point have different kinds".into())),
        }
    }

    fn check_base(&self, t: &Base) -> Result<()> {
        match t {
            Base::Value(v) => self.base.check_value(v),
            Base::Elem(e) if e.base().same_kind(&self.base) => Ok(()),
            Base::Elem(e) => Err(Error::ShapeMismatch(format!("element over {} in a space over {}", e.base(), self.base))),
        }
    }

    /// Validates a point of the space.
    pub fn point(&self, t: Base, sign: Sign) -> Result<DoublePoint> {
        self.check_base(&t)?;
        if sign == Sign::Plus && !self.in_plus(&t)? {
            return Err(Error::NotInA(t.to_string()));
        }
        Ok(DoublePoint { point: t, sign })
    }

    pub fn cmp(&self, p: &DoublePoint, q: &DoublePoint) -> Result<Ordering> {
        for x in [p, q] {
            self.point(x.point.clone(), x.sign)?;
        }
        double_cmp(p, q)
    }
}

fn two() -> BaseOrder {
    BaseOrder::new(BaseKind::Two)
}

fn ensure_two(x: &LexElem) -> Result<()> {
    if x.base().kind != BaseKind::Two {
        return Err(Error::ShapeMismatch(format!("expected base 2, got {}", x.base())));
    }
    Ok(())
}

fn all_equal(x: &LexElem, v: i64) -> bool {
    let v = int(v);
    x.seq().all_values().all(|u| *u == v)
}

/// `x < y` are adjacent in `2^alpha`: they agree below some `e`, `x_e = 0`,
/// `y_e = 1`, and afterwards `x` is all ones and `y` all zeros.
pub fn gap_pair(x: &LexElem, y: &LexElem) -> Result<bool> {
    ensure_two(x)?;
    ensure_two(y)?;
    if x.len() != y.len() {
        return Err(Error::ShapeMismatch(format!("lengths {} and {}", x.len(), y.len())));
    }
    let e = match x.first_diff(y)? {
        Some(e) => e,
        None => return Ok(false),
    };
    if !x.index(&e)?.is_zero() || !y.index(&e)?.is_one() {
        return Ok(false);
    }
    let next = e.succ();
    Ok(all_equal(&x.translate(&next)?, 1) && all_equal(&y.translate(&next)?, 0))
}

/// Least `beta` from which `x` is constant.
pub fn beta_star(x: &LexElem) -> Result<Ordinal> {
    let starts = x.seq().with_starts();
    let (start, last) = match starts.last() {
        Some(s) => s.clone(),
        None => return Ok(Ordinal::zero()),
    };
    match &last.payload {
        Payload::Const(_) => Ok(start),
        Payload::Cycle(_) => Err(Error::NotEventuallyConstant),
        Payload::Word(vals) => {
            let v = vals.last().expect("words are nonempty");
            let run = vals.iter().rev().take_while(|u| *u == v).count();
            let k = vals.len() - run;
            if k == 0 && starts.len() >= 2 {
                if let Payload::Const(u) = &starts[starts.len() - 2].1.payload {
                    if u == v {
                        return Ok(starts[starts.len() - 2].0.clone());
                    }
                }
            }
            Ok(start.add(&Ordinal::from(k)))
        }
    }
}

fn konst_two(v: i64, len: &Ordinal) -> Result<LexElem> {
    if len.is_zero() {
        return Ok(LexElem::empty(two()));
    }
    LexElem::konst(two(), int(v), OrdLen::Fin(len.clone()))
}

/// Order type of `{j < k : x_j = 0}`.
fn zeros_below(x: &LexElem, k: &Ordinal) -> Result<Ordinal> {
    let len = x.restrict(k)?.seq().ordertype_where(|v| v.is_zero());
    len.fin().cloned().ok_or_else(|| Error::DomainError("unbounded order type".into()))
}

fn check_full_tree(t: &TreeSpec, alpha: &Ordinal) -> Result<()> {
    if *t.height() != OrdLen::Fin(alpha.clone()) {
        return Err(Error::DomainError(format!("tree height {} differs from the length {alpha}", t.height())));
    }
    if !alpha.is_tail_like()? {
        return Err(Error::NotTailLike(alpha.to_string()));
    }
    for v in [0, 1] {
        if !t.is_branch(&konst_two(v, alpha)?)? {
            return Err(Error::DomainError(format!("the constant {v} branch leaves the tree early")));
        }
    }
    Ok(())
}

fn check_branch(t: &TreeSpec, x: &LexElem) -> Result<()> {
    if !t.is_branch(x)? {
        return Err(Error::NotMember(x.to_string()));
    }
    Ok(())
}

/// Isomorphism of the clopen interval `[x, 1]` onto `[0, 1]` in the branch
/// space of `t`, for `x` eventually zero.
pub fn ray_iso(x: &LexElem, z: &LexElem, t: &TreeSpec) -> Result<LexElem> {
    ensure_two(x)?;
    ensure_two(z)?;
    let alpha = x.order()?;
    check_full_tree(t, &alpha)?;
    check_branch(t, x)?;
    check_branch(t, z)?;
    let beta = match beta_star(x) {
        Ok(b) if x.len() == OrdLen::Fin(b.clone()) || x.index(&b)?.is_zero() => b,
        _ => return Err(Error::NotEventuallyZero),
    };
    if z.lex_cmp(x)? == Ordering::Less {
        return Err(Error::OutOfInterval(format!("{z} lies below {x}")));
    }
    match x.first_diff(z)? {
        Some(e) if e < beta => {
            let head = konst_two(0, &zeros_below(x, &e)?)?;
            head.sum(&LexElem::word(two(), vec![int(1)])?)?.sum(&z.translate(&e.succ())?)
        }
        _ => konst_two(0, &zeros_below(x, &beta)?)?.sum(&z.translate(&beta)?),
    }
}

fn flip(x: &LexElem) -> Result<LexElem> {
    LexElem::from_seq(two(), x.seq().map_values(|v| int(1) - v))
}

/// Isomorphism of the clopen interval `[x, y]` onto `[0, 1]`, for `x`
/// eventually zero and `y` eventually one.
pub fn clopen_iso(x: &LexElem, y: &LexElem, z: &LexElem, t: &TreeSpec) -> Result<LexElem> {
    ensure_two(x)?;
    ensure_two(y)?;
    ensure_two(z)?;
    if z.lex_cmp(x)? == Ordering::Less || z.lex_cmp(y)? == Ordering::Greater {
        return Err(Error::OutOfInterval(format!("{z} is outside [x, y]")));
    }
    let e = x.first_diff(y)?.ok_or_else(|| Error::DomainError("x and y are equal".into()))?;
    if x.index(&e)? > y.index(&e)? {
        return Err(Error::DomainError("x must lie below y".into()));
    }
    let next = e.succ();
    let tail = z.translate(&next)?;
    let ze = z.index(&e)?.clone();
    let mapped = if ze.is_zero() {
        ray_iso(&x.translate(&next)?, &tail, t)?
    } else {
        flip(&ray_iso(&flip(&y.translate(&next)?)?, &flip(&tail)?, t)?)?
    };
    LexElem::word(two(), vec![ze])?.sum(&mapped)
}

/// Sends the double point `a^-` or `a^+` of `2^beta` into `2^alpha` by
/// appending `0` or `1` and then a seed that is not eventually constant.
pub fn double_point_inject(a: &LexElem, sign: Sign, seed: &LexElem) -> Result<LexElem> {
    ensure_two(a)?;
    ensure_two(seed)?;
    if seed.is_empty() || beta_star(seed).is_ok() {
        return Err(Error::BadSeed(seed.to_string()));
    }
    let bit = if sign == Sign::Plus { 1 } else { 0 };
    a.sum(&LexElem::word(two(), vec![int(bit)])?)?.sum(seed)
}

/// `t^- -> (t, -1, -1, ...)` and `t^+ -> (t, 1, 1, ...)` into `J^w`.
pub fn fat_cantor_embed(t: &Rat, sign: Sign) -> Result<LexElem> {
    if *t < int(-1) || *t > int(1) {
        return Err(Error::OutOfInterval(format!("{t} is outside [-1,1]")));
    }
    let base = BaseOrder::with_j(BaseKind::Rat, int(-1), int(1))?;
    let v = if sign == Sign::Plus { int(1) } else { int(-1) };
    LexElem::word(base.clone(), vec![t.clone()])?.sum(&LexElem::konst(base, v, OrdLen::Fin(Ordinal::omega()))?)
}
