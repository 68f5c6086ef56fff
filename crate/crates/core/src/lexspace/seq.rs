//! Segment-structured transfinite sequences, generic over the value type.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ordinal::{OrdLen, Ordinal};

/// Upper bound on explicit word material produced by restriction.
const MAX_MATERIALIZE: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Payload<V> {
    Const(V),
    Word(Vec<V>),
    /// Within the segment, relative offset `lambda + k` (lambda zero or a
    /// limit) holds `word[k mod |word|]`.
    Cycle(Vec<V>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment<V> {
    pub len: OrdLen,
    pub payload: Payload<V>,
}

impl<V> Segment<V> {
    pub fn konst(v: V, len: OrdLen) -> Self {
        Segment { len, payload: Payload::Const(v) }
    }

    pub fn word(vals: Vec<V>) -> Self {
        Segment { len: OrdLen::Fin(Ordinal::from(vals.len())), payload: Payload::Word(vals) }
    }

    pub fn cycle(word: Vec<V>, len: OrdLen) -> Self {
        Segment { len, payload: Payload::Cycle(word) }
    }

    pub fn is_infinite(&self) -> bool {
        match &self.len {
            OrdLen::Fin(o) => !o.is_finite(),
            OrdLen::OmegaMark => true,
        }
    }
}

/// Ordinal sum of lengths; the marker absorbs everything after it.
pub fn len_add(a: &OrdLen, b: &OrdLen) -> OrdLen {
    match (a, b) {
        (OrdLen::Fin(x), OrdLen::Fin(y)) => OrdLen::Fin(x.add(y)),
        _ => OrdLen::OmegaMark,
    }
}

/// `a \ b` for `b <= a`.
pub fn len_sub(a: &OrdLen, b: &Ordinal) -> Result<OrdLen> {
    match a {
        OrdLen::Fin(x) => x.sub_left(b).map(OrdLen::Fin),
        OrdLen::OmegaMark => Ok(OrdLen::OmegaMark),
    }
}

fn rem_usize(k: &BigUint, p: usize) -> usize {
    (k % BigUint::from(p)).to_usize().expect("remainder below period")
}

fn rotate<V: Clone>(w: &[V], m: usize) -> Vec<V> {
    let m = m % w.len();
    w[m..].iter().chain(&w[..m]).cloned().collect()
}

/// Shortest block whose repetition gives `w`.
pub fn minimal_period<V: PartialEq + Clone>(w: &[V]) -> Vec<V> {
    let n = w.len();
    for p in 1..=n {
        if n.is_multiple_of(p) && (p..n).all(|i| w[i] == w[i - p]) {
            return w[..p].to_vec();
        }
    }
    w.to_vec()
}

impl<V: Clone> Payload<V> {
    /// Value at relative offset `i` inside a segment carrying this payload.
    pub fn value_rel(&self, i: &Ordinal) -> &V {
        match self {
            Payload::Const(v) => v,
            Payload::Word(vals) => &vals[i.to_usize().expect("word offsets are finite")],
            Payload::Cycle(w) => {
                let (_, k) = i.limit_split();
                &w[rem_usize(&k, w.len())]
            }
        }
    }

    /// Periodic view: (block, rotation of the first omega-block).
    fn periodic_view(&self, offset: &Ordinal) -> Option<(&[V], usize)> {
        match self {
            Payload::Const(v) => Some((std::slice::from_ref(v), 0)),
            Payload::Cycle(w) => {
                let (_, k) = offset.limit_split();
                Some((w.as_slice(), rem_usize(&k, w.len())))
            }
            Payload::Word(_) => None,
        }
    }
}

/// A finite list of segments read left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Seq<V> {
    segs: Vec<Segment<V>>,
}

impl<V> Default for Seq<V> {
    fn default() -> Self {
        Seq { segs: Vec::new() }
    }
}

impl<V> Seq<V> {
    pub fn segments(&self) -> &[Segment<V>] {
        &self.segs
    }

    pub fn into_segments(self) -> Vec<Segment<V>> {
        self.segs
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    pub fn len(&self) -> OrdLen {
        self.segs.iter().fold(OrdLen::Fin(Ordinal::zero()), |acc, s| len_add(&acc, &s.len))
    }

    /// Segments paired with their start positions.
    pub fn with_starts(&self) -> Vec<(Ordinal, &Segment<V>)> {
        let mut pos = Ordinal::zero();
        let mut out = Vec::with_capacity(self.segs.len());
        for s in &self.segs {
            out.push((pos.clone(), s));
            if let OrdLen::Fin(l) = &s.len {
                pos = pos.add(l);
            }
        }
        out
    }

    /// Locates the segment holding position `i`: (segment index, start).
    fn locate(&self, i: &Ordinal) -> Option<(usize, Ordinal)> {
        let mut pos = Ordinal::zero();
        for (k, s) in self.segs.iter().enumerate() {
            match &s.len {
                OrdLen::Fin(l) => {
                    let end = pos.add(l);
                    if *i < end {
                        return Some((k, pos));
                    }
                    pos = end;
                }
                OrdLen::OmegaMark => return Some((k, pos)),
            }
        }
        None
    }
}

impl<V: Clone + PartialEq> Seq<V> {
    /// Validates the structural invariants and returns the canonical form.
    pub fn new(segs: Vec<Segment<V>>) -> Result<Self> {
        let n = segs.len();
        for (i, s) in segs.iter().enumerate() {
            match &s.len {
                OrdLen::Fin(o) if o.is_zero() => {
                    return Err(Error::InvariantViolation("segment lengths must be positive".into()))
                }
                OrdLen::OmegaMark if i + 1 != n => {
                    return Err(Error::InvariantViolation("only the last segment may have length W".into()))
                }
                _ => {}
            }
            match &s.payload {
                Payload::Const(_) => {}
                Payload::Word(vals) => {
                    if vals.is_empty() {
                        return Err(Error::InvariantViolation("empty word".into()));
                    }
                    if s.len != OrdLen::Fin(Ordinal::from(vals.len())) {
                        return Err(Error::InvariantViolation("word length must equal its list length".into()));
                    }
                }
                Payload::Cycle(w) => {
                    if w.is_empty() {
                        return Err(Error::InvariantViolation("empty cycle".into()));
                    }
                    if let OrdLen::Fin(o) = &s.len {
                        if !o.is_limit() {
                            return Err(Error::InvariantViolation("cycle length must be a limit".into()));
                        }
                    }
                }
            }
        }
        Ok(Seq { segs }.canonicalize())
    }

    pub fn empty() -> Self {
        Seq { segs: Vec::new() }
    }

    pub fn konst(v: V, len: OrdLen) -> Self {
        if len == OrdLen::Fin(Ordinal::zero()) {
            return Seq::empty();
        }
        Seq { segs: vec![Segment::konst(v, len)] }.canonicalize()
    }

    pub fn word(vals: Vec<V>) -> Self {
        if vals.is_empty() {
            return Seq::empty();
        }
        Seq { segs: vec![Segment::word(vals)] }.canonicalize()
    }

    pub fn cycle(word: Vec<V>, len: OrdLen) -> Result<Self> {
        Seq::new(vec![Segment::cycle(word, len)])
    }

    pub fn index(&self, i: &Ordinal) -> Result<&V> {
        let (k, start) = self
            .locate(i)
            .ok_or_else(|| Error::IndexOutOfRange(format!("{i} is not below {}", self.len())))?;
        let rel = i.sub_left(&start)?;
        Ok(self.segs[k].payload.value_rel(&rel))
    }

    /// Values at the finite positions `0..n` (clipped to the length).
    pub fn prefix_values(&self, n: usize) -> Vec<V> {
        (0..n)
            .map(Ordinal::from)
            .take_while(|i| self.len().exceeds(i))
            .map(|i| self.index(&i).expect("in range").clone())
            .collect()
    }

    pub fn restrict(&self, beta: &Ordinal) -> Result<Self> {
        let total = self.len();
        if OrdLen::Fin(beta.clone()) > total {
            return Err(Error::IndexOutOfRange(format!("cannot restrict length {total} to {beta}")));
        }
        let mut out = Vec::new();
        let mut pos = Ordinal::zero();
        for s in &self.segs {
            if pos == *beta {
                break;
            }
            let end = len_add(&OrdLen::Fin(pos.clone()), &s.len);
            if end <= OrdLen::Fin(beta.clone()) {
                out.push(s.clone());
                pos = end.fin().expect("finite end").clone();
                continue;
            }
            let rel = beta.sub_left(&pos)?;
            match &s.payload {
                Payload::Const(v) => out.push(Segment::konst(v.clone(), OrdLen::Fin(rel))),
                Payload::Word(vals) => {
                    out.push(Segment::word(vals[..rel.to_usize().expect("finite")].to_vec()))
                }
                Payload::Cycle(w) => {
                    let (lam, k) = rel.limit_split();
                    if !lam.is_zero() {
                        out.push(Segment::cycle(w.clone(), OrdLen::Fin(lam)));
                    }
                    let k = k
                        .to_usize()
                        .filter(|&k| k <= MAX_MATERIALIZE)
                        .ok_or_else(|| Error::UnsupportedShape("restriction leaves an oversized word".into()))?;
                    if k > 0 {
                        out.push(Segment::word((0..k).map(|m| w[m % w.len()].clone()).collect()));
                    }
                }
            }
            break;
        }
        Ok(Seq { segs: out }.canonicalize())
    }

    /// The suffix starting at `beta`.
    pub fn translate(&self, beta: &Ordinal) -> Result<Self> {
        let total = self.len();
        if OrdLen::Fin(beta.clone()) > total {
            return Err(Error::IndexOutOfRange(format!("cannot translate length {total} by {beta}")));
        }
        let Some((k, start)) = self.locate(beta) else {
            return Ok(Seq::empty());
        };
        let s = &self.segs[k];
        let rel = beta.sub_left(&start)?;
        let remaining = len_sub(&s.len, &rel)?;
        let mut out = Vec::new();
        match &s.payload {
            Payload::Const(v) => out.push(Segment::konst(v.clone(), remaining)),
            Payload::Word(vals) => out.push(Segment::word(vals[rel.to_usize().expect("finite")..].to_vec())),
            Payload::Cycle(w) => {
                let (_, m) = rel.limit_split();
                if m.is_zero() {
                    out.push(Segment::cycle(w.clone(), remaining));
                } else {
                    let omega = Ordinal::omega();
                    out.push(Segment::cycle(rotate(w, rem_usize(&m, w.len())), OrdLen::Fin(omega.clone())));
                    let rest = len_sub(&remaining, &omega)?;
                    if rest != OrdLen::Fin(Ordinal::zero()) {
                        out.push(Segment::cycle(w.clone(), rest));
                    }
                }
            }
        }
        out.extend(self.segs[k + 1..].iter().cloned());
        Ok(Seq { segs: out }.canonicalize())
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.len().is_mark() {
            return Err(Error::OmegaTail);
        }
        let mut segs = self.segs.clone();
        segs.extend(other.segs.iter().cloned());
        Ok(Seq { segs }.canonicalize())
    }

    /// Canonical form: minimal cycle periods, single-value cycles as
    /// constants, no length-one constants, merged neighbours, and cycles
    /// longer than one omega-block starting at limit positions.
    pub fn canonicalize(&self) -> Self {
        let mut out: Vec<Segment<V>> = Vec::with_capacity(self.segs.len());
        for s in &self.segs {
            push_canonical(&mut out, s.clone());
        }
        Seq { segs: out }
    }

    /// First position where `pred(x_i, y_i)` holds. Both sequences must have
    /// the same length.
    pub fn first_where2<W: Clone>(
        &self,
        other: &Seq<W>,
        pred: impl Fn(&V, &W) -> bool,
    ) -> Result<Option<Ordinal>> {
        let total = self.len();
        if total != other.len() {
            return Err(Error::ShapeMismatch(format!("lengths {} and {}", total, other.len())));
        }
        let xs = self.with_starts();
        let ys = other.with_starts();
        let (mut ix, mut iy) = (0usize, 0usize);
        let mut cur = Ordinal::zero();
        while ix < xs.len() && iy < ys.len() {
            let (sx, segx) = &xs[ix];
            let (sy, segy) = &ys[iy];
            let ex = len_add(&OrdLen::Fin(sx.clone()), &segx.len);
            let ey = len_add(&OrdLen::Fin(sy.clone()), &segy.len);
            let end = std::cmp::min(&ex, &ey).clone();
            let ox = cur.sub_left(sx)?;
            let oy = cur.sub_left(sy)?;
            let plen = len_sub(&end, &cur)?;
            if let Some(j) = piece_first(&segx.payload, &ox, &segy.payload, &oy, &plen, &pred) {
                return Ok(Some(cur.add(&j)));
            }
            if ex == end {
                ix += 1;
            }
            if ey == end {
                iy += 1;
            }
            match end {
                OrdLen::Fin(e) => cur = e,
                OrdLen::OmegaMark => break,
            }
        }
        Ok(None)
    }

    /// First position where the sequences differ.
    pub fn first_diff(&self, other: &Self) -> Result<Option<Ordinal>> {
        self.first_where2(other, |a, b| a != b)
    }

    pub fn first_index_where(&self, pred: impl Fn(&V) -> bool) -> Option<Ordinal> {
        for (start, s) in self.with_starts() {
            let hit = match &s.payload {
                Payload::Const(v) => pred(v).then(Ordinal::zero),
                Payload::Word(vals) | Payload::Cycle(vals) => {
                    vals.iter().position(&pred).map(Ordinal::from)
                }
            };
            if let Some(j) = hit {
                return Some(start.add(&j));
            }
        }
        None
    }

    /// Order type of `{i : pred(x_i)}`.
    pub fn ordertype_where(&self, pred: impl Fn(&V) -> bool) -> OrdLen {
        let mut acc = OrdLen::Fin(Ordinal::zero());
        for s in &self.segs {
            let part = match &s.payload {
                Payload::Const(v) => pred(v).then(|| s.len.clone()),
                Payload::Word(vals) => Some(OrdLen::Fin(Ordinal::from(vals.iter().filter(|v| pred(v)).count()))),
                // every omega-block contributes an infinite subset of type omega
                Payload::Cycle(w) => w.iter().any(&pred).then(|| s.len.clone()),
            };
            if let Some(p) = part {
                acc = len_add(&acc, &p);
            }
        }
        acc
    }

    pub fn map_values<W: Clone + PartialEq>(&self, f: impl Fn(&V) -> W) -> Seq<W> {
        let segs = self
            .segs
            .iter()
            .map(|s| Segment {
                len: s.len.clone(),
                payload: match &s.payload {
                    Payload::Const(v) => Payload::Const(f(v)),
                    Payload::Word(vals) => Payload::Word(vals.iter().map(&f).collect()),
                    Payload::Cycle(w) => Payload::Cycle(w.iter().map(&f).collect()),
                },
            })
            .collect();
        Seq { segs }.canonicalize()
    }

    pub fn all_values(&self) -> impl Iterator<Item = &V> {
        self.segs.iter().flat_map(|s| match &s.payload {
            Payload::Const(v) => std::slice::from_ref(v).iter(),
            Payload::Word(vals) | Payload::Cycle(vals) => vals.iter(),
        })
    }
}

fn total_of<V>(segs: &[Segment<V>]) -> Ordinal {
    segs.iter()
        .fold(Ordinal::zero(), |acc, s| acc.add(s.len.fin().expect("only the last segment is unbounded")))
}

fn push_canonical<V: Clone + PartialEq>(out: &mut Vec<Segment<V>>, mut s: Segment<V>) {
    if let Payload::Cycle(w) = &s.payload {
        let w = minimal_period(w);
        s.payload = if w.len() == 1 { Payload::Const(w[0].clone()) } else { Payload::Cycle(w) };
    }
    if let Payload::Const(v) = &s.payload {
        if let Some(n) = s.len.fin().and_then(|o| o.to_usize()).filter(|&n| n <= MAX_MATERIALIZE) {
            s = Segment::word(vec![v.clone(); n]);
        }
    }
    let omega = Ordinal::omega();
    if let Payload::Cycle(w) = &s.payload {
        let start = total_of(out);
        if start.is_successor() && s.len > OrdLen::Fin(omega.clone()) {
            let rest = len_sub(&s.len, &omega).expect("longer than omega");
            let w = w.clone();
            push_canonical(out, Segment::cycle(w.clone(), OrdLen::Fin(omega)));
            push_canonical(out, Segment::cycle(w, rest));
            return;
        }
    }
    let omega_len = OrdLen::Fin(omega);
    while let Some(prev) = out.last() {
        let prev_start_successor = total_of(&out[..out.len() - 1]).is_successor();
        let prev_len_successor = prev.len.fin().is_some_and(|o| o.is_successor());
        let action = match (&prev.payload, &s.payload) {
            (Payload::Word(_), Payload::Word(_)) => Action::MergeWords,
            (Payload::Const(a), Payload::Const(b)) if a == b => Action::MergeConsts,
            (Payload::Word(a), Payload::Const(v)) if a.last() == Some(v) => Action::StripIntoConst,
            (Payload::Const(v), Payload::Word(b)) if b.first() == Some(v) => Action::AbsorbIntoConst,
            (Payload::Word(a), Payload::Cycle(w)) if s.len == omega_len && a.last() == w.last() => {
                Action::PullIntoCycle
            }
            (Payload::Const(v), Payload::Cycle(w))
                if prev_len_successor && s.len == omega_len && w.last() == Some(v) =>
            {
                Action::PullIntoCycle
            }
            (Payload::Cycle(a), Payload::Cycle(b)) if a == b && !prev_start_successor => Action::MergeCycles,
            _ => Action::Stop,
        };
        let prev = out.last_mut().expect("nonempty");
        match action {
            Action::Stop => break,
            Action::MergeWords => {
                if let (Payload::Word(a), Payload::Word(b)) = (&mut prev.payload, &mut s.payload) {
                    a.append(b);
                    prev.len = OrdLen::Fin(Ordinal::from(a.len()));
                }
                return;
            }
            Action::MergeConsts | Action::MergeCycles => {
                prev.len = len_add(&prev.len, &s.len);
                return;
            }
            Action::StripIntoConst => {
                s.len = len_add(&OrdLen::Fin(Ordinal::one()), &s.len);
                drop_last_value(out);
            }
            Action::AbsorbIntoConst => {
                prev.len = len_add(&prev.len, &OrdLen::Fin(Ordinal::one()));
                if let Payload::Word(b) = &mut s.payload {
                    b.remove(0);
                    if b.is_empty() {
                        return;
                    }
                    s.len = OrdLen::Fin(Ordinal::from(b.len()));
                }
            }
            Action::PullIntoCycle => {
                if let Payload::Cycle(w) = &mut s.payload {
                    w.rotate_right(1);
                }
                drop_last_value(out);
            }
        }
    }
    out.push(s);
}

enum Action {
    Stop,
    MergeWords,
    MergeConsts,
    MergeCycles,
    StripIntoConst,
    AbsorbIntoConst,
    PullIntoCycle,
}

/// Removes the last value of a final segment that is a word or a constant
/// of successor length.
fn drop_last_value<V: Clone>(out: &mut Vec<Segment<V>>) {
    let prev = out.last_mut().expect("nonempty");
    match &mut prev.payload {
        Payload::Word(a) => {
            a.pop();
            if a.is_empty() {
                out.pop();
            } else {
                prev.len = OrdLen::Fin(Ordinal::from(a.len()));
            }
        }
        Payload::Const(_) => {
            let (lam, k) = prev.len.fin().expect("successor length").limit_split();
            let shorter = lam.add(&Ordinal::nat(k - 1u32));
            if shorter.is_zero() {
                out.pop();
            } else {
                prev.len = OrdLen::Fin(shorter);
            }
        }
        Payload::Cycle(_) => unreachable!("cycles are infinite"),
    }
}

/// First offset `j` inside a piece where the predicate holds. `ox`, `oy` are
/// the offsets of the piece start within the two segments.
fn piece_first<V: Clone, W: Clone>(
    px: &Payload<V>,
    ox: &Ordinal,
    py: &Payload<W>,
    oy: &Ordinal,
    plen: &OrdLen,
    pred: &impl Fn(&V, &W) -> bool,
) -> Option<Ordinal> {
    match (px.periodic_view(ox), py.periodic_view(oy)) {
        (Some((wx, rx)), Some((wy, ry))) => {
            let l = wx.len().lcm(&wy.len());
            let finite_len = plen.fin().and_then(|o| o.to_usize());
            let first_block = finite_len.map_or(l, |n| n.min(l));
            for j in 0..first_block {
                if pred(&wx[(rx + j) % wx.len()], &wy[(ry + j) % wy.len()]) {
                    return Some(Ordinal::from(j));
                }
            }
            let omega = OrdLen::Fin(Ordinal::omega());
            if *plen > omega {
                for m in 0..l {
                    if pred(&wx[m % wx.len()], &wy[m % wy.len()]) {
                        return Some(Ordinal::omega().add(&Ordinal::from(m)));
                    }
                }
            }
            None
        }
        _ => {
            // a word is involved, so the piece is finite
            let n = plen.fin().and_then(|o| o.to_usize()).expect("word pieces are finite");
            (0..n).map(Ordinal::from).find(|j| pred(px.value_rel(&ox.add(j)), py.value_rel(&oy.add(j))))
        }
    }
}
