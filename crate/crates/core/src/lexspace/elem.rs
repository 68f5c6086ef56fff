use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};

use super::seq::{len_sub, Payload, Segment, Seq};
use crate::error::{Error, Result};
use crate::ordinal::{OrdLen, Ordinal};
use crate::rat::{is_integer, parse_rat, Rat};

/// Coordinate values are exact rationals; integer bases restrict them.
pub type Value = Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Minus => "-",
            Sign::Plus => "+",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseKind {
    Two,
    Chain(u32),
    Int,
    Nat,
    Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaseOrder {
    pub kind: BaseKind,
    /// The distinguished closed interval `J`, when present.
    pub j: Option<(Value, Value)>,
}

impl BaseOrder {
    pub fn new(kind: BaseKind) -> Self {
        BaseOrder { kind, j: None }
    }

    pub fn with_j(kind: BaseKind, lo: Value, hi: Value) -> Result<Self> {
        let b = BaseOrder { kind, j: None };
        b.check_value(&lo)?;
        b.check_value(&hi)?;
        if lo >= hi {
            return Err(Error::InvariantViolation(format!("J requires lo < hi, got {lo}..{hi}")));
        }
        Ok(BaseOrder { kind, j: Some((lo, hi)) })
    }

    pub fn two() -> Self {
        BaseOrder::new(BaseKind::Two)
    }

    pub fn int() -> Self {
        BaseOrder::new(BaseKind::Int)
    }

    /// The rationals with `J = [-1, 1]`.
    pub fn rat_j() -> Self {
        BaseOrder::with_j(BaseKind::Rat, Rat::from_integer((-1).into()), Rat::from_integer(1.into()))
            .expect("valid interval")
    }

    pub fn check_value(&self, v: &Value) -> Result<()> {
        let ok = match self.kind {
            BaseKind::Rat => true,
            BaseKind::Int => is_integer(v),
            BaseKind::Nat => is_integer(v) && !v.is_negative(),
            BaseKind::Two => is_integer(v) && (v.is_zero() || *v == Rat::from_integer(1.into())),
            BaseKind::Chain(n) => {
                is_integer(v) && !v.is_negative() && v.to_integer().to_u32().is_some_and(|k| k < n)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvariantViolation(format!("{v} is not a value of base {}", self.kind_str())))
        }
    }

    pub fn j_bounds(&self) -> Result<(&Value, &Value)> {
        self.j.as_ref().map(|(a, b)| (a, b)).ok_or(Error::MissingJ)
    }

    pub fn same_kind(&self, other: &BaseOrder) -> bool {
        self.kind == other.kind
    }

    fn kind_str(&self) -> String {
        match self.kind {
            BaseKind::Two => "2".into(),
            BaseKind::Chain(n) => format!("C{n}"),
            BaseKind::Int => "Z".into(),
            BaseKind::Nat => "N".into(),
            BaseKind::Rat => "Q".into(),
        }
    }
}

impl fmt::Display for BaseOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "base={}", self.kind_str())?;
        if let Some((lo, hi)) = &self.j {
            write!(f, "; J={lo}..{hi}")?;
        }
        Ok(())
    }
}

/// An element of `X^alpha` (or of branch length `W`) over a base order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LexElem {
    base: BaseOrder,
    seq: Seq<Value>,
}

impl LexElem {
    pub fn new(base: BaseOrder, segs: Vec<Segment<Value>>) -> Result<Self> {
        LexElem::from_seq(base, Seq::new(segs)?)
    }

    pub fn from_seq(base: BaseOrder, seq: Seq<Value>) -> Result<Self> {
        for v in seq.all_values() {
            base.check_value(v)?;
        }
        Ok(LexElem { base, seq: seq.canonicalize() })
    }

    pub fn empty(base: BaseOrder) -> Self {
        LexElem { base, seq: Seq::empty() }
    }

    pub fn konst(base: BaseOrder, v: Value, len: OrdLen) -> Result<Self> {
        LexElem::from_seq(base, Seq::konst(v, len))
    }

    pub fn word(base: BaseOrder, vals: Vec<Value>) -> Result<Self> {
        LexElem::from_seq(base, Seq::word(vals))
    }

    pub fn cycle(base: BaseOrder, word: Vec<Value>, len: OrdLen) -> Result<Self> {
        LexElem::from_seq(base, Seq::cycle(word, len)?)
    }

    pub fn base(&self) -> &BaseOrder {
        &self.base
    }

    pub fn seq(&self) -> &Seq<Value> {
        &self.seq
    }

    pub fn segments(&self) -> &[Segment<Value>] {
        self.seq.segments()
    }

    /// Total length: the order of the element.
    pub fn len(&self) -> OrdLen {
        self.seq.len()
    }

    /// Total length, required to be an ordinal rather than the marker.
    pub fn order(&self) -> Result<Ordinal> {
        self.len().fin().cloned().ok_or_else(|| Error::ShapeMismatch("length W has no ordinal order".into()))
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn with_base(&self, base: BaseOrder) -> Result<Self> {
        LexElem::from_seq(base, self.seq.clone())
    }

    pub fn index(&self, i: &Ordinal) -> Result<&Value> {
        self.seq.index(i)
    }

    pub fn at(&self, i: usize) -> Result<&Value> {
        self.seq.index(&Ordinal::from(i))
    }

    fn check_shape(&self, other: &LexElem) -> Result<()> {
        if !self.base.same_kind(&other.base) {
            return Err(Error::ShapeMismatch(format!("bases {} and {}", self.base, other.base)));
        }
        if self.len() != other.len() {
            return Err(Error::ShapeMismatch(format!("lengths {} and {}", self.len(), other.len())));
        }
        Ok(())
    }

    /// First position of difference, or `None` when equal.
    pub fn first_diff(&self, other: &LexElem) -> Result<Option<Ordinal>> {
        self.check_shape(other)?;
        self.seq.first_diff(&other.seq)
    }

    pub fn lex_cmp(&self, other: &LexElem) -> Result<Ordering> {
        Ok(match self.first_diff(other)? {
            None => Ordering::Equal,
            Some(i) => self.index(&i)?.cmp(other.index(&i)?),
        })
    }

    pub fn lex_eq(&self, other: &LexElem) -> Result<bool> {
        Ok(self.first_diff(other)?.is_none())
    }

    /// Least index where the elements differ.
    pub fn equality_level(&self, other: &LexElem) -> Result<Ordinal> {
        self.first_diff(other)?.ok_or(Error::EqualElements)
    }

    /// Concatenation `self + other`.
    pub fn sum(&self, other: &LexElem) -> Result<LexElem> {
        if !self.base.same_kind(&other.base) {
            return Err(Error::ShapeMismatch(format!("bases {} and {}", self.base, other.base)));
        }
        Ok(LexElem { base: self.base.clone(), seq: self.seq.concat(&other.seq)? })
    }

    pub fn restrict(&self, beta: &Ordinal) -> Result<LexElem> {
        Ok(LexElem { base: self.base.clone(), seq: self.seq.restrict(beta)? })
    }

    /// The suffix `i -> self(beta + i)`.
    pub fn translate(&self, beta: &Ordinal) -> Result<LexElem> {
        Ok(LexElem { base: self.base.clone(), seq: self.seq.translate(beta)? })
    }

    pub fn canonicalize(&self) -> LexElem {
        LexElem { base: self.base.clone(), seq: self.seq.canonicalize() }
    }

    /// Extends by the top (`Plus`) or bottom (`Minus`) of `J` up to length
    /// `alpha`: the corner points `z+` and `z-`.
    pub fn corner(&self, alpha: &OrdLen, sign: Sign) -> Result<LexElem> {
        let (lo, hi) = self.base.j_bounds()?;
        let o = self.order()?;
        if !alpha.exceeds(&o) {
            return Err(Error::IndexOutOfRange(format!("corner length {alpha} must exceed {o}")));
        }
        let v = if sign == Sign::Plus { hi.clone() } else { lo.clone() };
        let tail = LexElem { base: self.base.clone(), seq: Seq::konst(v, len_sub(alpha, &o)?) };
        self.sum(&tail)
    }

    /// True when every coordinate after the first lies in `J`.
    pub fn in_x_alpha(&self) -> Result<bool> {
        let (lo, hi) = self.base.j_bounds()?;
        if self.is_empty() {
            return Ok(true);
        }
        let rest = self.seq.translate(&Ordinal::one())?;
        Ok(rest.first_index_where(|v| v < lo || v > hi).is_none())
    }

    /// `b` below `beta` and `a` from `beta` on, for `a < b` coordinatewise.
    pub fn flag_embed(a: &LexElem, b: &LexElem, beta: &Ordinal) -> Result<LexElem> {
        a.check_shape(b)?;
        if let Some(i) = a.seq.first_where2(&b.seq, |x, y| x >= y)? {
            return Err(Error::NotDominated(i.to_string()));
        }
        b.restrict(beta)?.sum(&a.translate(beta)?)
    }

    pub fn is_constant(&self) -> bool {
        matches!(self.segments(), [Segment { payload: Payload::Const(_), .. }])
    }

    /// The value of an element that is a single constant segment.
    pub fn constant_value(&self) -> Option<&Value> {
        match self.segments() {
            [Segment { payload: Payload::Const(v), .. }] => Some(v),
            _ => None,
        }
    }

    /// Flattens an element of `(X^alpha)^beta` into `X^(alpha*beta)`.
    /// Every inner element must share one base and one length.
    pub fn flatten(outer: &Seq<LexElem>) -> Result<LexElem> {
        let mut inners = outer.all_values();
        let Some(first) = inners.next() else {
            return Err(Error::UnsupportedShape("flatten needs a nonempty outer element".into()));
        };
        let base = first.base.clone();
        let alpha = first.order()?;
        for e in outer.all_values() {
            if !e.base.same_kind(&base) || e.len() != OrdLen::Fin(alpha.clone()) {
                return Err(Error::ShapeMismatch("inner elements differ in base or length".into()));
            }
        }
        let unsupported = || Error::UnsupportedShape("infinite repetition of a non-periodic inner element".into());
        let mut acc = LexElem::empty(base.clone());
        for s in outer.segments() {
            let piece = match &s.payload {
                Payload::Word(vals) => {
                    let mut p = LexElem::empty(base.clone());
                    for v in vals {
                        p = p.sum(v)?;
                    }
                    p
                }
                Payload::Const(inner) => match s.len.fin().filter(|l| l.is_finite()) {
                    Some(n) => {
                        let n = n.to_usize().ok_or_else(unsupported)?;
                        let mut p = LexElem::empty(base.clone());
                        for _ in 0..n {
                            p = p.sum(inner)?;
                        }
                        p
                    }
                    None => {
                        let total = match &s.len {
                            OrdLen::Fin(l) => OrdLen::Fin(alpha.mul(l)),
                            OrdLen::OmegaMark => OrdLen::OmegaMark,
                        };
                        if let Some(v) = inner.constant_value() {
                            LexElem::konst(base.clone(), v.clone(), total)?
                        } else if let Some(n) = alpha.to_usize() {
                            let vals = inner.seq.prefix_values(n);
                            match &s.len {
                                OrdLen::OmegaMark => LexElem::cycle(base.clone(), vals, OrdLen::OmegaMark)?,
                                OrdLen::Fin(l) => {
                                    let (lam, k) = l.limit_split();
                                    let mut p = LexElem::cycle(base.clone(), vals, OrdLen::Fin(lam))?;
                                    for _ in 0..k.to_usize().ok_or_else(unsupported)? {
                                        p = p.sum(inner)?;
                                    }
                                    p
                                }
                            }
                        } else {
                            return Err(unsupported());
                        }
                    }
                },
                Payload::Cycle(word) => {
                    let n = alpha.to_usize().ok_or_else(unsupported)?;
                    let vals: Vec<Value> = word.iter().flat_map(|e| e.seq.prefix_values(n)).collect();
                    LexElem::cycle(base.clone(), vals, s.len.clone())?
                }
            };
            acc = acc.sum(&piece)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for LexElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; segs=[", self.base)?;
        for (i, s) in self.segments().iter().enumerate() {
            if i > 0 {
                write!(f, " ;")?;
            }
            write!(f, " {} : ", s.len)?;
            let list = |vals: &[Value]| vals.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
            match &s.payload {
                Payload::Const(v) => write!(f, "const {v}")?,
                Payload::Word(vals) => write!(f, "vals {}", list(vals))?,
                Payload::Cycle(w) => write!(f, "cycle {}", list(w))?,
            }
        }
        write!(f, " ]")
    }
}

fn offset_in(whole: &str, part: &str) -> usize {
    (part.as_ptr() as usize).saturating_sub(whole.as_ptr() as usize)
}

fn shift_parse(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        other => other,
    }
}

pub fn parse_base(text: &str, header: &str) -> Result<BaseOrder> {
    let mut kind = None;
    let mut j = None;
    for item in header.split(';') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let at = offset_in(text, item);
        if let Some(b) = item.strip_prefix("base=") {
            kind = Some(match b.trim() {
                "2" => BaseKind::Two,
                "Z" => BaseKind::Int,
                "N" => BaseKind::Nat,
                "Q" => BaseKind::Rat,
                c if c.starts_with('C') => {
                    let n: u32 = c[1..].parse().map_err(|_| Error::parse(at, "bad chain size"))?;
                    if n < 2 {
                        return Err(Error::parse(at, "chain size must be at least 2"));
                    }
                    BaseKind::Chain(n)
                }
                _ => return Err(Error::parse(at, "unknown base")),
            });
        } else if let Some(r) = item.strip_prefix("J=") {
            let (lo, hi) = r.split_once("..").ok_or_else(|| Error::parse(at, "J must read lo..hi"))?;
            j = Some((parse_rat(lo).map_err(|e| shift_parse(e, at))?, parse_rat(hi).map_err(|e| shift_parse(e, at))?));
        } else {
            return Err(Error::parse(at, format!("unexpected header item {item:?}")));
        }
    }
    let kind = kind.ok_or_else(|| Error::parse(0, "missing base="))?;
    match j {
        Some((lo, hi)) => BaseOrder::with_j(kind, lo, hi),
        None => Ok(BaseOrder::new(kind)),
    }
}

fn parse_values(text: &str, list: &str) -> Result<Vec<Value>> {
    list.split(',')
        .map(|v| parse_rat(v).map_err(|e| shift_parse(e, offset_in(text, v))))
        .collect()
}

/// Parses one `<len> : const v | vals v,.. | cycle v,..` segment.
pub fn parse_segment(text: &str, item: &str) -> Result<Segment<Value>> {
    let at = offset_in(text, item);
    let (len, body) = item.split_once(':').ok_or_else(|| Error::parse(at, "segment needs '<len> : <payload>'"))?;
    let len: OrdLen = len.trim().parse().map_err(|e| shift_parse(e, offset_in(text, len)))?;
    let body = body.trim();
    let (kw, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
    let payload = match kw {
        "const" => Payload::Const(parse_rat(rest).map_err(|e| shift_parse(e, offset_in(text, rest)))?),
        "vals" => Payload::Word(parse_values(text, rest)?),
        "cycle" => Payload::Cycle(parse_values(text, rest)?),
        _ => return Err(Error::parse(offset_in(text, body), "expected const, vals or cycle")),
    };
    Ok(Segment { len, payload })
}

impl FromStr for LexElem {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let idx = text.find("segs=").ok_or_else(|| Error::parse(text.len(), "missing segs="))?;
        let base = parse_base(text, &text[..idx])?;
        let body = text[idx + 5..].trim();
        let inner = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| Error::parse(offset_in(text, body), "segments must be enclosed in [ ]"))?;
        let mut segs = Vec::new();
        if !inner.trim().is_empty() {
            for item in inner.split(';') {
                segs.push(parse_segment(text, item)?);
            }
        }
        LexElem::new(base, segs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn e(s: &str) -> LexElem {
        s.parse().unwrap()
    }

    #[test]
    fn text_round_trip() {
        for s in [
            "base=2; segs=[ w : const 0 ]",
            "base=Z; segs=[ 2 : vals 1,2 ; w : cycle 0,1 ; W : cycle 0,1 ]",
            "base=Q; J=-1..1; segs=[ 1 : vals 1/2 ; w^(2) : const -1 ]",
            "base=C3; segs=[ ]",
        ] {
            let x = e(s);
            assert_eq!(x.to_string(), s);
            assert_eq!(e(&x.to_string()), x);
        }
        // a long cycle after a finite prefix is split at the first limit
        let x = e("base=Z; segs=[ 2 : vals 1,2 ; W : cycle 0,1 ]");
        assert_eq!(x.to_string(), "base=Z; segs=[ 2 : vals 1,2 ; w : cycle 0,1 ; W : cycle 0,1 ]");
        assert!(matches!("base=2; segs=[ w : const 2 ]".parse::<LexElem>(), Err(Error::InvariantViolation(_))));
        assert!(matches!("base=2; segs=[ w : konst 0 ]".parse::<LexElem>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn index_examples() {
        let x = e("base=Z; segs=[ w^(2) : cycle 0,1 ]");
        assert_eq!(*x.index(&o("w")).unwrap(), int(0));
        let c = e("base=Z; segs=[ w : const 7 ]");
        assert_eq!(*c.index(&o("3")).unwrap(), int(7));
        let w = e("base=Z; segs=[ 2 : vals 4,5 ; w : const 0 ]");
        assert_eq!(*w.index(&o("1")).unwrap(), int(5));
    }

    #[test]
    fn compare_examples() {
        let zero = e("base=2; segs=[ w : const 0 ]");
        let one_then_zero = e("base=2; segs=[ 1 : vals 1 ; w : const 0 ]");
        assert_eq!(zero.lex_cmp(&one_then_zero).unwrap(), Ordering::Less);
        let a = e("base=2; segs=[ 1 : vals 0 ; w : const 1 ]");
        let b = e("base=2; segs=[ 1 : vals 1 ; w : const 0 ]");
        assert_eq!(a.lex_cmp(&b).unwrap(), Ordering::Less);
        let c1 = e("base=Z; segs=[ w : cycle 0,1 ]");
        let c2 = e("base=Z; segs=[ w : cycle 0,1,1 ]");
        assert_eq!(c1.lex_cmp(&c2).unwrap(), Ordering::Less);
        assert_eq!(c1.equality_level(&c2).unwrap(), o("2"));
        assert_eq!(c1.equality_level(&c1), Err(Error::EqualElements));
        let short = e("base=Z; segs=[ 3 : const 0 ]");
        assert!(matches!(c1.lex_cmp(&short), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn algebra_examples() {
        let p = e("base=Z; segs=[ 1 : vals 1 ]");
        let q = e("base=Z; segs=[ w : const 0 ]");
        let s = p.sum(&q).unwrap();
        assert_eq!(s, e("base=Z; segs=[ 1 : vals 1 ; w : const 0 ]"));
        assert_eq!(s.restrict(&o("1")).unwrap(), p);
        assert_eq!(s.translate(&o("1")).unwrap(), q);
        let c = e("base=Z; segs=[ w^(2) : const 3 ]");
        assert_eq!(c.restrict(&o("w")).unwrap(), e("base=Z; segs=[ w : const 3 ]"));
        let w = e("base=Z; segs=[ 3 : vals 1,2,3 ]");
        assert_eq!(w.restrict(&o("2")).unwrap(), e("base=Z; segs=[ 2 : vals 1,2 ]"));
        let cyc = e("base=Z; segs=[ w : cycle 0,1 ]");
        assert_eq!(cyc.translate(&o("1")).unwrap(), e("base=Z; segs=[ w : cycle 1,0 ]"));
        let cyc2 = e("base=Z; segs=[ w^(2) : cycle 0,1 ]");
        assert_eq!(cyc2.translate(&o("w")).unwrap(), cyc2);
        let wq = e("base=Z; segs=[ W : const 0 ]");
        assert_eq!(wq.sum(&p), Err(Error::OmegaTail));
    }

    #[test]
    fn corners_and_j() {
        let z = e("base=Q; J=-1..1; segs=[ 1 : vals 1/3 ]");
        let minus = z.corner(&OrdLen::Fin(o("w")), Sign::Minus).unwrap();
        assert_eq!(minus, e("base=Q; J=-1..1; segs=[ 1 : vals 1/3 ; w : const -1 ]"));
        let plus = z.corner(&OrdLen::Fin(o("w")), Sign::Plus).unwrap();
        assert_eq!(minus.lex_cmp(&plus).unwrap(), Ordering::Less);
        assert!(plus.in_x_alpha().unwrap());
        let big = e("base=Q; J=-1..1; segs=[ 1 : vals 100 ; w : const 0 ]");
        assert!(big.in_x_alpha().unwrap());
        let bad = e("base=Q; J=-1..1; segs=[ 2 : vals 0,5 ; w : const 0 ]");
        assert!(!bad.in_x_alpha().unwrap());
        assert_eq!(e("base=Q; segs=[ 1 : vals 0 ]").corner(&OrdLen::Fin(o("w")), Sign::Plus), Err(Error::MissingJ));
    }

    #[test]
    fn flag_embedding() {
        let a = e("base=Z; segs=[ w : const 0 ]");
        let b = e("base=Z; segs=[ w : const 1 ]");
        assert_eq!(LexElem::flag_embed(&a, &b, &Ordinal::zero()).unwrap(), a);
        assert_eq!(LexElem::flag_embed(&a, &b, &o("w")).unwrap(), b);
        let f2 = LexElem::flag_embed(&a, &b, &o("2")).unwrap();
        let f5 = LexElem::flag_embed(&a, &b, &o("5")).unwrap();
        assert_eq!(f2.lex_cmp(&f5).unwrap(), Ordering::Less);
        assert!(matches!(LexElem::flag_embed(&b, &a, &o("1")), Err(Error::NotDominated(_))));
    }

    #[test]
    fn flatten_examples() {
        let inner = e("base=Z; segs=[ 2 : vals 3,4 ]");
        let two = Seq::konst(inner.clone(), OrdLen::Fin(o("2")));
        assert_eq!(LexElem::flatten(&two).unwrap(), e("base=Z; segs=[ 4 : vals 3,4,3,4 ]"));
        let om = Seq::konst(inner, OrdLen::Fin(o("w")));
        assert_eq!(LexElem::flatten(&om).unwrap(), e("base=Z; segs=[ w : cycle 3,4 ]"));
        let tail = e("base=Z; segs=[ 1 : vals 1 ; w : const 0 ]");
        let bad = Seq::konst(tail, OrdLen::Fin(o("w")));
        assert!(matches!(LexElem::flatten(&bad), Err(Error::UnsupportedShape(_))));
    }
}
