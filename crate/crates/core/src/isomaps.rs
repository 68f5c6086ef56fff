//! Explicit order isomorphisms between lexicographic powers and intervals.
//!
//! * [`SimpleTreeIso`] sends the elements of `J`-valued powers that are not
//!   eventually `-1` or `+1` onto the full power `Q^alpha`, by folding each
//!   run of `+1` (or `-1`) of length `j` into one coordinate of the `j`-th
//!   band above `1` (or below `-1`).
//! * [`corner_interval_map`] is the isomorphism `[x-, x+] -> [y, z]`.
//! * [`UpperMap`] is the isomorphism `[c, b] -> [c~, b~]` onto the standard
//!   upper half interval.
//! * [`glue_at`] joins two line maps at a common value.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use crate::analytic::{Affine, Embedding, MonoMap};
use crate::error::{Error, Result};
use crate::lexspace::{BaseKind, LexElem, Payload, Segment, Seq, Value};
use crate::ordinal::{OrdLen, Ordinal};
use crate::rat::{half, int, Rat};

/// Most omega-blocks expanded one by one when a cycle maps to an output
/// with a prefix in every block.
const BLOCK_LIMIT: usize = 256;

/// How one output coordinate was produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mark {
    /// Copied input coordinate.
    First,
    Interior,
    /// A run of `+1` of the given length was folded.
    Plus(Ordinal),
    /// A run of `-1` of the given length was folded.
    Minus(Ordinal),
    /// A whole constant or periodic stretch handled at once.
    Block,
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mark::First => write!(f, "first"),
            Mark::Interior => write!(f, "0"),
            Mark::Plus(j) => write!(f, "{j}"),
            Mark::Minus(j) => write!(f, "{j}*"),
            Mark::Block => write!(f, "block"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    /// First output coordinate written by this step.
    pub out_start: Ordinal,
    /// First input coordinate read by this step.
    pub in_start: Ordinal,
    pub mark: Mark,
    pub piece: Segment<Value>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoTrace {
    pub input: LexElem,
    pub output: LexElem,
    pub steps: Vec<TraceStep>,
}

impl IsoTrace {
    /// Concatenates the recorded pieces.
    pub fn replay(&self) -> Result<LexElem> {
        let seq = Seq::new(self.steps.iter().map(|s| s.piece.clone()).collect())?;
        LexElem::from_seq(self.output.base().clone(), seq)
    }
}

impl fmt::Display for IsoTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "out\tin\tm\tpiece")?;
        for s in &self.steps {
            let piece = Seq::new(vec![s.piece.clone()]).map_err(|_| fmt::Error)?;
            let shown = LexElem::from_seq(self.output.base().clone(), piece).map_err(|_| fmt::Error)?;
            let body = shown.to_string();
            let segs = body.split_once("segs=").map_or(body.as_str(), |(_, s)| s);
            writeln!(f, "{}\t{}\t{}\t{}", s.out_start, s.in_start, s.mark, segs)?;
        }
        Ok(())
    }
}

fn check_tail_like(alpha: &Ordinal) -> Result<()> {
    if alpha.is_zero() || !alpha.is_tail_like()? {
        return Err(Error::NotTailLike(alpha.to_string()));
    }
    Ok(())
}

fn check_order(x: &LexElem, alpha: &Ordinal) -> Result<()> {
    if x.len() != OrdLen::Fin(alpha.clone()) {
        return Err(Error::ShapeMismatch(format!("expected length {alpha}, got {}", x.len())));
    }
    Ok(())
}

fn fin(len: &OrdLen) -> Ordinal {
    len.fin().expect("finite length").clone()
}

/// Isomorphism from the elements of `J^alpha`-type powers (first coordinate
/// anywhere in Q, later ones in `[-1, 1]`) that are not eventually `-1` or
/// `+1`, onto `Q^alpha`.
#[derive(Clone, Debug)]
pub struct SimpleTreeIso {
    alpha: Ordinal,
    emb: Embedding,
}

impl SimpleTreeIso {
    pub fn new(alpha: &Ordinal) -> Result<Self> {
        check_tail_like(alpha)?;
        if alpha.is_finite() {
            return Err(Error::NotTailLike(format!("{alpha} is finite")));
        }
        Ok(SimpleTreeIso { alpha: alpha.clone(), emb: Embedding::new(alpha.clone(), int(0), int(1))? })
    }

    /// Left end of the `j`-th band above `1`, for `1 <= j < alpha`; the bands
    /// start at `1` and are cofinal in Q.
    pub fn band_start(&self, j: &Ordinal) -> Result<Rat> {
        let k = j.sub_left(&Ordinal::one())?;
        Ok((int(1) - self.emb.eval(&k)?).recip())
    }

    fn band(&self, j: &Ordinal) -> Result<(Rat, Rat)> {
        Ok((self.band_start(j)?, self.band_start(&j.succ())?))
    }

    /// `g_j : [-1, 1) -> [s_j, s_(j+1))`.
    fn up(&self, j: &Ordinal, t: &Rat) -> Result<Rat> {
        let (a, b) = self.band(j)?;
        Ok(&a + (t + int(1)) * half() * (b - &a))
    }

    /// `g_(j*) : (-1, 1] -> (-s_(j+1), -s_j]`.
    fn down(&self, j: &Ordinal, t: &Rat) -> Result<Rat> {
        let (a, b) = self.band(j)?;
        Ok(-&b + (t + int(1)) * half() * (b - a))
    }

    /// For `v >= 1`: the band `j` holding `v` and `g_j^-1(v)`.
    fn unfold(&self, v: &Rat) -> Result<(Ordinal, Rat)> {
        let r = int(1) - v.recip();
        let j = Ordinal::one().add(&self.emb.locate(&r).map_err(|_| Error::ValueOutsidePartition(v.to_string()))?);
        let (a, b) = self.band(&j)?;
        Ok((j, (v - &a) * int(2) / (b - a) - int(1)))
    }

    fn check_input(&self, x: &LexElem) -> Result<()> {
        check_order(x, &self.alpha)?;
        if x.base().kind != BaseKind::Rat {
            return Err(Error::ShapeMismatch(format!("expected base Q, got {}", x.base())));
        }
        Ok(())
    }

    pub fn forward(&self, x: &LexElem) -> Result<(LexElem, IsoTrace)> {
        self.check_input(x)?;
        let one = Ordinal::one();
        let rest = x.translate(&one)?;
        if rest.seq().all_values().any(|v| *v < int(-1) || *v > int(1)) {
            return Err(Error::OutOfInterval("coordinates after the first must lie in [-1,1]".into()));
        }
        let x0 = x.index(&Ordinal::zero())?.clone();
        let mut steps = vec![TraceStep {
            out_start: Ordinal::zero(),
            in_start: Ordinal::zero(),
            mark: Mark::First,
            piece: Segment::word(vec![x0]),
        }];
        let segs: Vec<(Ordinal, Ordinal, Segment<Value>)> = rest
            .seq()
            .with_starts()
            .into_iter()
            .map(|(s, seg)| (s.clone(), s.add(&fin(&seg.len)), seg.clone()))
            .collect();
        let mut pos = Ordinal::zero();
        let mut out_len = one.clone();
        let mut k = 0;
        while pos < self.alpha {
            while segs[k].1 <= pos {
                k += 1;
            }
            let (start, end, seg) = &segs[k];
            let in_start = one.add(&pos);
            let mut emitted: Vec<(Mark, Segment<Value>)> = Vec::new();
            match &seg.payload {
                Payload::Const(v) if interior(v) => {
                    let len = end.sub_left(&pos)?;
                    emitted.push((Mark::Block, Segment::konst(v.clone(), OrdLen::Fin(len))));
                    pos = end.clone();
                }
                Payload::Cycle(w) => {
                    let rel = pos.sub_left(start)?;
                    let (lam, n) = rel.limit_split();
                    let state = usize::try_from(n % w.len()).expect("small");
                    let (pre, per) = self.cycle_image(w, state)?;
                    push_block(&mut emitted, pre, per);
                    let block_end = lam.add(&Ordinal::omega());
                    let remaining = fin(&seg.len).sub_left(&block_end)?;
                    if !remaining.is_zero() {
                        let (pre0, per0) = self.cycle_image(w, 0)?;
                        if pre0.is_empty() {
                            emitted.push((Mark::Block, Segment::cycle(per0, OrdLen::Fin(remaining))));
                        } else {
                            let blocks = remaining
                                .omega_factor()?
                                .to_usize()
                                .filter(|b| *b <= BLOCK_LIMIT)
                                .ok_or_else(|| Error::UnsupportedShape(format!("{remaining} blocks with a prefix each")))?;
                            for _ in 0..blocks {
                                push_block(&mut emitted, pre0.clone(), per0.clone());
                            }
                        }
                    }
                    pos = end.clone();
                }
                _ => {
                    let v = rest.index(&pos)?.clone();
                    if interior(&v) {
                        emitted.push((Mark::Interior, Segment::word(vec![v])));
                        pos = pos.succ();
                    } else {
                        let j = rest
                            .translate(&pos)?
                            .seq()
                            .first_index_where(|u| *u != v)
                            .ok_or(Error::EventuallyConstant)?;
                        let landing = pos.add(&j);
                        let t = rest.index(&landing)?;
                        let (val, mark) = if v > Rat::zero() {
                            (self.up(&j, t)?, Mark::Plus(j))
                        } else {
                            (self.down(&j, t)?, Mark::Minus(j))
                        };
                        emitted.push((mark, Segment::word(vec![val])));
                        pos = landing.succ();
                    }
                }
            }
            for (mark, piece) in emitted {
                let len = fin(&piece.len);
                steps.push(TraceStep { out_start: out_len.clone(), in_start: in_start.clone(), mark, piece });
                out_len = out_len.add(&len);
            }
        }
        let seq = Seq::new(steps.iter().map(|s| s.piece.clone()).collect())?;
        let output = LexElem::from_seq(x.base().clone(), seq)?;
        let trace = IsoTrace { input: x.clone(), output: output.clone(), steps };
        Ok((output, trace))
    }

    /// Image of one omega-block of a cycle entered at offset `state`, as
    /// (prefix, period).
    fn cycle_image(&self, w: &[Value], state: usize) -> Result<(Vec<Value>, Vec<Value>)> {
        let p = w.len();
        let mut seen = vec![usize::MAX; p];
        let mut vals = Vec::new();
        let mut o = state;
        while seen[o] == usize::MAX {
            seen[o] = vals.len();
            let v = &w[o];
            if interior(v) {
                vals.push(v.clone());
                o = (o + 1) % p;
                continue;
            }
            let j = (1..=p).find(|k| w[(o + k) % p] != *v).ok_or(Error::EventuallyConstant)?;
            let t = &w[(o + j) % p];
            let jo = Ordinal::from(j);
            vals.push(if *v > Rat::zero() { self.up(&jo, t)? } else { self.down(&jo, t)? });
            o = (o + j + 1) % p;
        }
        let per = vals.split_off(seen[o]);
        Ok((vals, per))
    }

    /// Expansion of one output value into input coordinates.
    fn expand(&self, v: &Rat) -> Result<Vec<Segment<Value>>> {
        if interior(v) {
            return Ok(vec![Segment::word(vec![v.clone()])]);
        }
        let (sign, mag) = if *v > Rat::zero() { (int(1), v.clone()) } else { (int(-1), -v) };
        let (j, t) = self.unfold(&mag)?;
        let t = if sign > Rat::zero() { t } else { -t };
        let run = match j.to_usize() {
            Some(n) => Segment::word(vec![sign; n]),
            None => Segment::konst(sign, OrdLen::Fin(j)),
        };
        Ok(vec![run, Segment::word(vec![t])])
    }

    /// Finite expansion of a block of values, if every run is finite.
    fn expand_finite(&self, vals: &[Value]) -> Result<Option<Vec<Value>>> {
        let mut out = Vec::new();
        for v in vals {
            for seg in self.expand(v)? {
                match seg.payload {
                    Payload::Word(w) => out.extend(w),
                    _ => return Ok(None),
                }
            }
        }
        Ok(Some(out))
    }

    pub fn inverse(&self, z: &LexElem) -> Result<LexElem> {
        self.check_input(z)?;
        let rest = z.translate(&Ordinal::one())?;
        let mut out = vec![Segment::word(vec![z.index(&Ordinal::zero())?.clone()])];
        for (_, seg) in rest.seq().with_starts() {
            match &seg.payload {
                Payload::Word(vals) => {
                    for v in vals {
                        out.extend(self.expand(v)?);
                    }
                }
                Payload::Const(v) if interior(v) => out.push(seg.clone()),
                Payload::Const(_) | Payload::Cycle(_) if seg.is_infinite() => {
                    let block = match &seg.payload {
                        Payload::Const(v) => vec![v.clone()],
                        Payload::Cycle(w) => w.clone(),
                        Payload::Word(_) => unreachable!(),
                    };
                    let expanded = self
                        .expand_finite(&block)?
                        .ok_or_else(|| Error::UnsupportedShape("infinitely many infinite runs".into()))?;
                    out.push(Segment::cycle(expanded, seg.len.clone()));
                }
                Payload::Const(v) => {
                    let n = fin(&seg.len).to_usize().expect("finite constants are short");
                    for _ in 0..n {
                        out.extend(self.expand(v)?);
                    }
                }
                Payload::Cycle(_) => unreachable!("cycles are infinite"),
            }
        }
        LexElem::from_seq(z.base().clone(), Seq::new(out)?)
    }
}

fn interior(v: &Rat) -> bool {
    *v > int(-1) && *v < int(1)
}

fn push_block(out: &mut Vec<(Mark, Segment<Value>)>, pre: Vec<Value>, per: Vec<Value>) {
    if !pre.is_empty() {
        out.push((Mark::Block, Segment::word(pre)));
    }
    out.push((Mark::Block, Segment::cycle(per, OrdLen::Fin(Ordinal::omega()))));
}

/// The isomorphism `[x-, x+] -> [y, z]` for `y < z` of tail-like length,
/// where `x-` and `x+` are constant at the ends of `J`.
pub fn corner_interval_map(y: &LexElem, z: &LexElem, x: &LexElem, alpha: &Ordinal) -> Result<LexElem> {
    check_tail_like(alpha)?;
    for e in [y, z, x] {
        check_order(e, alpha)?;
    }
    let base = x.base().clone();
    let (lo, hi) = base.j_bounds()?;
    let (lo, hi) = (lo.clone(), hi.clone());
    if y.lex_cmp(z)? != Ordering::Less {
        return Err(Error::DomainError("y must lie below z".into()));
    }
    let bottom = LexElem::konst(base.clone(), lo.clone(), OrdLen::Fin(alpha.clone()))?;
    let top = LexElem::konst(base.clone(), hi.clone(), OrdLen::Fin(alpha.clone()))?;
    if x.lex_cmp(&bottom)? == Ordering::Less || x.lex_cmp(&top)? == Ordering::Greater {
        return Err(Error::OutOfInterval(x.to_string()));
    }
    let beta = y.first_diff(z)?.expect("y < z");
    let x0 = x.index(&Ordinal::zero())?.clone();
    let g0 = Affine::onto(&lo, &hi, y.index(&beta)?, z.index(&beta)?);
    let head = y.restrict(&beta)?.sum(&LexElem::word(base.clone(), vec![g0.apply(&x0)])?)?;
    let (guide, end) = if x0 == lo {
        (y, &lo)
    } else if x0 == hi {
        (z, &hi)
    } else {
        return head.sum(&x.translate(&Ordinal::one())?);
    };
    let k = match x.seq().first_index_where(|v| v != end) {
        Some(k) => k,
        None => return Ok(guide.clone()),
    };
    let run = guide.translate(&beta.succ())?.restrict(&k.sub_left(&Ordinal::one())?)?;
    let a = guide.index(&beta.add(&k))?;
    let moved = x.index(&k)? - end + a;
    head.sum(&run)?
        .sum(&LexElem::word(base, vec![moved])?)?
        .sum(&x.translate(&k.succ())?)
}

/// The isomorphism of `[c, b]` onto `[c~, b~]` with `c~ = (0, 0, ...)` and
/// `b~ = (1, -1, -1, ...)`, for `c` agreeing with `b` below `beta`,
/// `c_beta < b_beta` and `c` zero after `beta`.
#[derive(Clone, Debug)]
pub struct UpperMap {
    c: LexElem,
    b: LexElem,
    alpha: Ordinal,
    beta: Ordinal,
    /// Order type of the cut points `K`.
    theta: Ordinal,
    emb: Embedding,
}

impl UpperMap {
    pub fn new(c: &LexElem, b: &LexElem, alpha: &Ordinal) -> Result<Self> {
        check_tail_like(alpha)?;
        check_order(c, alpha)?;
        check_order(b, alpha)?;
        c.base().j_bounds()?;
        let beta = c
            .first_diff(b)?
            .ok_or_else(|| Error::DomainError("c and b are equal".into()))?;
        if c.index(&beta)? >= b.index(&beta)? {
            return Err(Error::DomainError("c must lie below b".into()));
        }
        let after = c.translate(&beta.succ())?;
        if after.seq().all_values().any(|v| !v.is_zero()) {
            return Err(Error::ShapeMismatch("c must be zero after the first difference".into()));
        }
        let above = b.translate(&beta.succ())?.seq().ordertype_where(|v| *v > int(-1));
        let theta = Ordinal::one().add(&fin(&above));
        let emb = Embedding::new(theta.clone(), int(0), int(1))?;
        Ok(UpperMap { c: c.clone(), b: b.clone(), alpha: alpha.clone(), beta, theta, emb })
    }

    pub fn beta(&self) -> &Ordinal {
        &self.beta
    }

    pub fn theta(&self) -> &Ordinal {
        &self.theta
    }

    /// Rank of a cut point `k` among `K = {beta} u {k > beta : b_k > -1}`.
    fn rank(&self, k: &Ordinal) -> Result<Ordinal> {
        if *k == self.beta {
            return Ok(Ordinal::zero());
        }
        let from = self.beta.succ();
        let span = k.sub_left(&from)?;
        let below = self.b.translate(&from)?.restrict(&span)?.seq().ordertype_where(|v| *v > int(-1));
        Ok(Ordinal::one().add(&fin(&below)))
    }

    /// Description of the cut points.
    pub fn describe_k(&self) -> String {
        format!("K = {{{}}} u {{k > {} : b_k > -1}}, order type {}", self.beta, self.beta, self.theta)
    }

    /// The cut point whose piece holds `x`.
    pub fn piece_of(&self, x: &LexElem) -> Result<Option<Ordinal>> {
        check_order(x, &self.alpha)?;
        if x.lex_cmp(&self.c)? == Ordering::Less || x.lex_cmp(&self.b)? == Ordering::Greater {
            return Err(Error::OutOfInterval(x.to_string()));
        }
        x.first_diff(&self.b)
    }

    pub fn apply(&self, x: &LexElem) -> Result<LexElem> {
        let base = x.base().clone();
        let (lo, hi) = base.j_bounds()?;
        let (lo, hi) = (lo.clone(), hi.clone());
        let k = match self.piece_of(x)? {
            Some(k) => k,
            None => {
                let tail = LexElem::konst(base.clone(), lo, OrdLen::Fin(self.alpha.clone()))?;
                return LexElem::word(base, vec![hi])?.sum(&tail);
            }
        };
        let from = if k == self.beta { self.c.index(&k)?.clone() } else { lo };
        let to = self.b.index(&k)?;
        let r = self.rank(&k)?;
        let q = Affine::onto(&from, to, &self.emb.eval(&r)?, &self.emb.eval(&r.succ())?);
        let xk = x.index(&k)?;
        if xk < &from {
            return Err(Error::OutOfInterval(x.to_string()));
        }
        LexElem::word(base, vec![q.apply(xk)])?.sum(&x.translate(&k.succ())?)
    }
}

/// The map equal to `f1` up to `a` and to `f2` from `a` on.
pub fn glue_at(f1: &MonoMap, f2: &MonoMap, a: &Rat) -> Result<MonoMap> {
    if f1.is_const() || f2.is_const() {
        return Err(Error::DomainError("constant maps cannot be glued into a bijection".into()));
    }
    if f1.apply(a)? != f2.apply(a)? {
        return Err(Error::Mismatch);
    }
    let i = f1.breaks().partition_point(|b| b < a);
    let j = f2.breaks().partition_point(|b| b <= a);
    let mut breaks = f1.breaks()[..i].to_vec();
    breaks.push(a.clone());
    breaks.extend_from_slice(&f2.breaks()[j..]);
    let mut pieces = f1.pieces()[..=i].to_vec();
    pieces.extend_from_slice(&f2.pieces()[j..]);
    let lo = f1.lo().cloned();
    let hi = f2.hi().cloned();
    if lo.as_ref() == Some(a) || hi.as_ref() == Some(a) {
        return Err(Error::DomainError("glue point must be inside both domains".into()));
    }
    MonoMap::piecewise(lo, hi, breaks, pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn q(segs: &str) -> LexElem {
        format!("base=Q; J=-1..1; segs=[ {segs} ]").parse().unwrap()
    }

    fn w() -> Ordinal {
        Ordinal::omega()
    }

    #[test]
    fn simple_tree_forward() {
        let iso = SimpleTreeIso::new(&w()).unwrap();
        let x = q("3 : vals 5,1/2,-1/3 ; w : cycle 0,1/4");
        let (y, trace) = iso.forward(&x).unwrap();
        assert_eq!(y, x);
        assert_eq!(trace.replay().unwrap(), y);
        let x = q("3 : vals 2,1,1/2 ; w : const 0");
        let (y, _) = iso.forward(&x).unwrap();
        assert_eq!(y.index(&Ordinal::one()).unwrap(), &rat(7, 4));
        assert_eq!(iso.inverse(&y).unwrap(), x);
        assert_eq!(iso.forward(&q("1 : vals 0 ; w : const 1")), Err(Error::EventuallyConstant));
        let x = q("2 : vals 0,1/2 ; w : cycle 1,1,-1,1/2,-1,0");
        let (y, trace) = iso.forward(&x).unwrap();
        assert_eq!(trace.replay().unwrap(), y);
        assert_eq!(iso.inverse(&y).unwrap(), x);
    }

    #[test]
    fn simple_tree_long_runs() {
        let a: Ordinal = "w^(2)".parse().unwrap();
        let iso = SimpleTreeIso::new(&a).unwrap();
        let x = q("1 : vals 0 ; w : const 1 ; 1 : vals 1/2 ; w^(2) : cycle -1,1,0");
        let (y, trace) = iso.forward(&x).unwrap();
        assert_eq!(trace.replay().unwrap(), y);
        assert_eq!(iso.inverse(&y).unwrap(), x);
        assert!(y.index(&Ordinal::one()).unwrap() >= &iso.band_start(&w()).unwrap());
    }

    #[test]
    fn corner_map_ends() {
        let a = w();
        let y = q("2 : vals 0,1/2 ; w : const 0");
        let z = q("2 : vals 0,3/4 ; w : cycle 1/2,-1/2");
        let bottom = q("w : const -1");
        let top = q("w : const 1");
        assert_eq!(corner_interval_map(&y, &z, &bottom, &a).unwrap(), y);
        assert_eq!(corner_interval_map(&y, &z, &top, &a).unwrap(), z);
        let m = corner_interval_map(&y, &z, &q("1 : vals 0 ; w : const 0"), &a).unwrap();
        assert_eq!(m, q("2 : vals 0,5/8 ; w : const 0"));
        let lo = corner_interval_map(&y, &z, &q("3 : vals -1,-1,0 ; w : const 0"), &a).unwrap();
        assert_eq!(lo, q("4 : vals 0,1/2,0,1 ; w : const 0"));
        assert!(matches!(corner_interval_map(&y, &z, &q("w : const 2"), &a), Err(Error::OutOfInterval(_))));
    }

    #[test]
    fn upper_map_ends() {
        let a = w();
        let b = q("2 : vals 1/2,1/2 ; w : cycle -1,0");
        let c = q("2 : vals 1/2,0 ; w : const 0");
        let m = UpperMap::new(&c, &b, &a).unwrap();
        assert_eq!(m.apply(&c).unwrap(), q("w : const 0"));
        assert_eq!(m.apply(&b).unwrap(), q("1 : vals 1 ; w : const -1"));
        assert_eq!(m.theta(), &w());
        let bad = q("2 : vals 1/2,0 ; w : const 1/3");
        assert!(matches!(UpperMap::new(&bad, &b, &a), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn gluing() {
        let f1 = MonoMap::affine(None, None, Affine::new(int(1), int(1))).unwrap();
        let f2 = MonoMap::affine(None, None, Affine::new(int(2), int(0))).unwrap();
        let g = glue_at(&f1, &f2, &int(1)).unwrap();
        assert_eq!(g.apply(&int(1)).unwrap(), int(2));
        assert_eq!(g.apply(&int(0)).unwrap(), int(1));
        assert_eq!(g.apply(&int(3)).unwrap(), int(6));
        assert_eq!(glue_at(&f1, &f1, &int(5)).unwrap(), f1);
        assert_eq!(glue_at(&f1, &f2, &int(0)), Err(Error::Mismatch));
    }
}
