//! Additive trees described by saturated level sets, height functions and the
//! extension steps that grow a tree one tail-like level at a time.
//!
//! A tree stores, for some tail-like `b`, a set `W_b` of branches of length
//! `b`, closed under sharing a tail. Levels that are not listed carry the full
//! choice. Because every listed `W_b` is translation invariant, a vertex `p`
//! belongs to the tree iff every aligned block `p[b*k, b*(k+1))` of every
//! listed level lies in `W_b`. Blocks inside one segment are all equal, so
//! only the blocks that touch a segment start, plus the first block past it,
//! need to be inspected.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lexspace::{parse_base, BaseOrder, LexElem, Value};
use crate::ordinal::{OrdLen, Ordinal};
use crate::seqmaps::end_equivalent;

/// Branches admitted at one tail-like level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelSet {
    /// Every branch of the tree below this level.
    All,
    /// Branches sharing a tail with one of the generators.
    Gens(Vec<LexElem>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub beta: Ordinal,
    pub set: LevelSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeSpec {
    base: BaseOrder,
    levels: Vec<Level>,
    height: OrdLen,
    verified: bool,
}

impl TreeSpec {
    /// The simple tree of the given height: every sequence is a vertex.
    pub fn simple(base: BaseOrder, height: OrdLen) -> Self {
        TreeSpec { base, levels: Vec::new(), height, verified: true }
    }

    /// A hand-authored tree. Shapes are validated; coherence between levels
    /// is not, and the result reports `verified() == false`.
    pub fn new(base: BaseOrder, levels: Vec<Level>, height: OrdLen) -> Result<Self> {
        let mut prev: Option<&Ordinal> = None;
        for lv in &levels {
            if !lv.beta.is_tail_like()? {
                return Err(Error::NotTailLike(lv.beta.to_string()));
            }
            if prev.is_some_and(|p| *p >= lv.beta) {
                return Err(Error::InvariantViolation("levels must be strictly increasing".into()));
            }
            if !height.exceeds(&lv.beta) {
                return Err(Error::InvariantViolation(format!("level {} is not below the height", lv.beta)));
            }
            check_gens(&base, lv)?;
            prev = Some(&lv.beta);
        }
        let verified = levels.is_empty();
        Ok(TreeSpec { base, levels, height, verified })
    }

    pub fn base(&self) -> &BaseOrder {
        &self.base
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn height(&self) -> &OrdLen {
        &self.height
    }

    /// False for hand-authored trees whose coherence was never checked.
    pub fn verified(&self) -> bool {
        self.verified
    }

    /// Least end `b + beta` of an aligned block of a listed level that falls
    /// outside its level set, or `None` when every such block inside `p` is
    /// admitted.
    fn first_failure(&self, p: &LexElem) -> Result<Option<Ordinal>> {
        let total = p.len();
        let mut best: Option<Ordinal> = None;
        for lv in &self.levels {
            let gens = match &lv.set {
                LevelSet::All => continue,
                LevelSet::Gens(g) => g,
            };
            if lv.beta == Ordinal::one() {
                let allowed: Vec<&Value> = gens.iter().map(|g| g.at(0)).collect::<Result<_>>()?;
                if let Some(i) = p.seq().first_index_where(|v| !allowed.contains(&v)) {
                    let end = i.succ();
                    if best.as_ref().is_none_or(|b| end < *b) {
                        best = Some(end);
                    }
                }
                continue;
            }
            let e = lv.beta.leading_exp().expect("positive").clone();
            let mut starts = Vec::new();
            for (start, _) in p.seq().with_starts() {
                let (high, low) = start.split_at_exp(&e);
                if !low.is_zero() {
                    starts.push(high.add(&lv.beta));
                }
                starts.push(high);
            }
            starts.sort();
            starts.dedup();
            for b in starts {
                let end = b.add(&lv.beta);
                if !fits(&total, &end) || best.as_ref().is_some_and(|x| end >= *x) {
                    continue;
                }
                let block = p.translate(&b)?.restrict(&lv.beta)?;
                if !class_match(&lv.beta, gens, &block)? {
                    best = Some(end);
                }
            }
        }
        Ok(best)
    }

    /// Decides whether `p` is a vertex.
    pub fn member(&self, p: &LexElem) -> Result<bool> {
        self.check_base(p)?;
        let o = p.order()?;
        if !self.height.exceeds(&o) {
            return Err(Error::HeightExceeded);
        }
        Ok(self.first_failure(p)?.is_none())
    }

    /// `x` has length equal to the height and every proper restriction of
    /// `x` is a vertex.
    pub fn is_branch(&self, x: &LexElem) -> Result<bool> {
        self.check_base(x)?;
        if x.len() != self.height {
            return Ok(false);
        }
        Ok(self.first_failure(x)?.is_none())
    }

    /// Vertex of limit order (or the root) in the omega-thinned tree.
    pub fn omega_thin_member(&self, p: &LexElem) -> Result<bool> {
        let ok = self.member(p)?;
        let o = p.order()?;
        Ok(ok && (o.is_zero() || o.is_limit()))
    }

    /// Least `a` with `s|a` outside the tree, for `s` of length `W`. Returns
    /// the height when `s` stays inside all the way up.
    pub fn height_of(&self, s: &LexElem) -> Result<OrdLen> {
        self.check_base(s)?;
        if !s.len().is_mark() {
            return Err(Error::ShapeMismatch(format!("expected length W, got {}", s.len())));
        }
        Ok(match self.first_failure(s)? {
            Some(a) if self.height.exceeds(&a) || self.height == OrdLen::Fin(a.clone()) => OrdLen::Fin(a),
            _ => self.height.clone(),
        })
    }

    /// Adds the level `beta` (the current height) admitting the branches that
    /// share a tail with a generator of `set`; the height becomes `beta + 1`.
    pub fn extend_choice(&self, beta: &Ordinal, set: LevelSet) -> Result<TreeSpec> {
        if !beta.is_tail_like()? {
            return Err(Error::NotTailLike(beta.to_string()));
        }
        if self.height != OrdLen::Fin(beta.clone()) {
            return Err(Error::DomainError(format!("level {beta} differs from the height {}", self.height)));
        }
        let level = Level { beta: beta.clone(), set };
        if let LevelSet::Gens(gens) = &level.set {
            if gens.is_empty() {
                return Err(Error::GeneratorNotBranch("empty generator list".into()));
            }
            for g in gens {
                self.check_base(g)?;
                if g.len() != OrdLen::Fin(beta.clone()) {
                    return Err(Error::GeneratorNotBranch(format!("{g} has length {}", g.len())));
                }
                if self.first_failure(g)?.is_some() {
                    return Err(Error::GeneratorNotBranch(g.to_string()));
                }
                // sampled at the segment starts of the generator
                for (d, _) in g.seq().with_starts() {
                    if d.is_zero() {
                        continue;
                    }
                    let t = g.translate(&d)?;
                    if self.first_failure(&t)?.is_some() || !class_match(beta, gens, &t)? {
                        return Err(Error::NotTranslationInvariant(format!("{g} shifted by {d}")));
                    }
                }
            }
        }
        let mut levels = self.levels.clone();
        levels.push(level);
        Ok(TreeSpec { base: self.base.clone(), levels, height: OrdLen::Fin(beta.succ()), verified: self.verified })
    }

    /// Raises the height to the least tail-like ordinal above it. Vertices of
    /// the new orders are finite sums of existing vertices, which membership
    /// already decides, so only the height changes.
    pub fn extend_to_next_tail_like(&self) -> TreeSpec {
        let height = match &self.height {
            OrdLen::Fin(h) => OrdLen::Fin(h.next_tail_like()),
            OrdLen::OmegaMark => OrdLen::OmegaMark,
        };
        TreeSpec { height, ..self.clone() }
    }

    /// `p + q` for vertices `p` and `q`.
    pub fn reproduce(&self, p: &LexElem, q: &LexElem) -> Result<LexElem> {
        for x in [p, q] {
            if !self.member(x)? {
                return Err(Error::NotMember(x.to_string()));
            }
        }
        let r = p.sum(q)?;
        if !self.member(&r)? {
            return Err(Error::NotMember(format!("sum {r} (incoherent tree)")));
        }
        Ok(r)
    }

    fn check_base(&self, p: &LexElem) -> Result<()> {
        if !self.base.same_kind(p.base()) {
            return Err(Error::ShapeMismatch(format!("base {} differs from the tree's {}", p.base(), self.base)));
        }
        Ok(())
    }
}

fn fits(total: &OrdLen, end: &Ordinal) -> bool {
    match total {
        OrdLen::OmegaMark => true,
        OrdLen::Fin(t) => end <= t,
    }
}

fn check_gens(base: &BaseOrder, lv: &Level) -> Result<()> {
    if let LevelSet::Gens(gens) = &lv.set {
        for g in gens {
            if !base.same_kind(g.base()) {
                return Err(Error::ShapeMismatch(format!("generator base {} differs", g.base())));
            }
            if g.len() != OrdLen::Fin(lv.beta.clone()) {
                return Err(Error::InvariantViolation(format!("generator {g} does not have length {}", lv.beta)));
            }
        }
    }
    Ok(())
}

/// Whether `block` (of tail-like length `beta`) shares a tail with a generator.
/// Past `w` two blocks share a tail iff their final segments carry the same
/// payload, since every later `w`-block repeats that payload unrotated.
fn class_match(beta: &Ordinal, gens: &[LexElem], block: &LexElem) -> Result<bool> {
    if *beta == Ordinal::one() {
        for g in gens {
            if block.at(0)? == g.at(0)? {
                return Ok(true);
            }
        }
        return Ok(false);
    }
    if *beta == Ordinal::omega() {
        for g in gens {
            if end_equivalent(block, g)?.is_some() {
                return Ok(true);
            }
        }
        return Ok(false);
    }
    let tail = &block.segments().last().expect("nonempty").payload;
    Ok(gens.iter().any(|g| g.segments().last().is_some_and(|s| s.payload == *tail)))
}

impl fmt::Display for TreeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = self.base.to_string();
        let base = base.strip_prefix("base=").unwrap_or(&base);
        write!(f, "tree base={base} height={}", self.height)?;
        for lv in &self.levels {
            write!(f, "\nlevel {}:", lv.beta)?;
            match &lv.set {
                LevelSet::All => write!(f, "\n  all")?,
                LevelSet::Gens(gs) => {
                    for g in gs {
                        write!(f, "\n  {g}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for TreeSpec {
    type Err = Error;

    /// Header `tree base=<..> height=<ord|W>`, then `level <ord>:` blocks of
    /// generator lines (or the single word `all`). `#` starts a comment line.
    fn from_str(text: &str) -> Result<Self> {
        let mut lines = Vec::new();
        let mut at = 0;
        for line in text.split_inclusive('\n') {
            let t = line.trim();
            if !t.is_empty() && !t.starts_with('#') {
                lines.push((at + line.find(t).unwrap_or(0), t));
            }
            at += line.len();
        }
        let mut it = lines.into_iter();
        let (pos, header) = it.next().ok_or_else(|| Error::parse(0, "empty tree description"))?;
        let rest = header.strip_prefix("tree ").ok_or_else(|| Error::parse(pos, "expected 'tree' header"))?;
        let hidx = rest.find("height=").ok_or_else(|| Error::parse(pos + header.len(), "missing height="))?;
        let base = parse_base(rest, &rest[..hidx]).map_err(|e| shift(e, pos + 5))?;
        let height: OrdLen = rest[hidx + 7..].trim().parse().map_err(|e| shift(e, pos + 5 + hidx + 7))?;

        let mut levels: Vec<Level> = Vec::new();
        for (pos, line) in it {
            if let Some(l) = line.strip_prefix("level ") {
                let o = l.strip_suffix(':').ok_or_else(|| Error::parse(pos + line.len(), "level line must end in ':'"))?;
                let beta: Ordinal = o.trim().parse().map_err(|e| shift(e, pos + 6))?;
                levels.push(Level { beta, set: LevelSet::Gens(Vec::new()) });
                continue;
            }
            let lv = levels.last_mut().ok_or_else(|| Error::parse(pos, "generator before any level"))?;
            match (&mut lv.set, line) {
                (LevelSet::Gens(g), "all") if g.is_empty() => lv.set = LevelSet::All,
                (LevelSet::Gens(g), _) => g.push(line.parse().map_err(|e| shift(e, pos))?),
                (LevelSet::All, _) => return Err(Error::parse(pos, "generators after 'all'")),
            }
        }
        if let Some(lv) = levels.iter().find(|l| l.set == LevelSet::Gens(Vec::new())) {
            return Err(Error::InvariantViolation(format!("level {} has no generators", lv.beta)));
        }
        TreeSpec::new(base, levels, height)
    }
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        other => other,
    }
}

/// A height table on a finite universe of length-`W` sequences. Every check
/// here is relative to that universe, not to all sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightFn {
    pub universe: Vec<LexElem>,
    pub table: Vec<Ordinal>,
}

/// Pairwise equality levels; `None` on the diagonal.
fn levels_of(universe: &[LexElem]) -> Result<Vec<Vec<Option<Ordinal>>>> {
    for s in universe {
        if !s.len().is_mark() {
            return Err(Error::ShapeMismatch(format!("universe element {s} is not of length W")));
        }
    }
    let n = universe.len();
    let mut eps = vec![vec![None; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let e = universe[i].equality_level(&universe[j]).map_err(|e| match e {
                Error::EqualElements => Error::InvariantViolation("universe elements must be distinct".into()),
                other => other,
            })?;
            eps[i][j] = Some(e.clone());
            eps[j][i] = Some(e);
        }
    }
    Ok(eps)
}

/// `eps(s, t) >= h`, with the diagonal treated as unbounded.
fn reaches(e: &Option<Ordinal>, h: &Ordinal) -> bool {
    e.as_ref().is_none_or(|e| e >= h)
}

/// The largest height function below `h0` on `universe`, by iterating
/// `H'(s) = min { H(t) : eps(s,t) >= min(H(s), H(t)) }` until it is stable.
pub fn max_height_fn(universe: &[LexElem], h0: &[Ordinal]) -> Result<HeightFn> {
    if universe.len() != h0.len() {
        return Err(Error::ShapeMismatch("table and universe differ in size".into()));
    }
    if h0.iter().any(Ordinal::is_zero) {
        return Err(Error::DomainError("height values must be at least 1".into()));
    }
    let eps = levels_of(universe)?;
    let mut h = h0.to_vec();
    loop {
        let next: Vec<Ordinal> = (0..h.len())
            .map(|s| {
                (0..h.len())
                    .filter(|&t| reaches(&eps[s][t], std::cmp::min(&h[s], &h[t])))
                    .map(|t| h[t].clone())
                    .min()
                    .expect("s itself qualifies")
            })
            .collect();
        if next == h {
            return Ok(HeightFn { universe: universe.to_vec(), table: h });
        }
        h = next;
    }
}

/// Checks `eps(s,t) >= H(s) => H(t) = H(s)` on every pair. With `additive`
/// the values must also be tail-like and `H(tau_d s) = H(s)` must hold for
/// every segment start `d < H(s)` whose shift lands back in the universe.
pub fn is_height_fn(universe: &[LexElem], table: &[Ordinal], additive: bool) -> Result<bool> {
    if universe.len() != table.len() {
        return Err(Error::ShapeMismatch("table and universe differ in size".into()));
    }
    let eps = levels_of(universe)?;
    for s in 0..table.len() {
        for t in 0..table.len() {
            if reaches(&eps[s][t], &table[s]) && table[t] != table[s] {
                return Ok(false);
            }
        }
    }
    if !additive {
        return Ok(true);
    }
    for (s, hs) in universe.iter().zip(table) {
        if hs.is_zero() || !hs.is_tail_like()? {
            return Ok(false);
        }
        for (d, _) in s.seq().with_starts() {
            if d.is_zero() || d >= *hs {
                continue;
            }
            let shifted = s.translate(&d)?;
            for (u, hu) in universe.iter().zip(table) {
                if shifted.lex_cmp(u)? == Ordering::Equal && hu != hs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> LexElem {
        s.parse().unwrap()
    }

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    /// Binary tree whose level-w branches are the eventually-0 sequences.
    fn zero_tail_tree() -> TreeSpec {
        TreeSpec::simple(BaseOrder::two(), OrdLen::Fin(Ordinal::omega()))
            .extend_choice(&Ordinal::omega(), LevelSet::Gens(vec![e("base=2; segs=[ w : const 0 ]")]))
            .unwrap()
            .extend_to_next_tail_like()
    }

    #[test]
    fn zero_tail_membership() {
        let t = zero_tail_tree();
        assert_eq!(*t.height(), OrdLen::Fin(o("w^(2)")));
        assert!(t.member(&e("base=2; segs=[ 5 : vals 1,0,1,1,0 ]")).unwrap());
        assert!(t.member(&e("base=2; segs=[ w : const 0 ]")).unwrap());
        assert!(t.member(&e("base=2; segs=[ 3 : vals 1,1,1 ; w : const 0 ]")).unwrap());
        assert!(!t.member(&e("base=2; segs=[ w : cycle 0,1 ]")).unwrap());
        assert!(!t.member(&e("base=2; segs=[ w : const 1 ]")).unwrap());
        assert!(t.member(&e("base=2; segs=[ w*3 : const 0 ; 2 : vals 1,1 ]")).unwrap());
        assert!(!t.member(&e("base=2; segs=[ w : const 0 ; w : cycle 0,1 ; 1 : vals 0 ]")).unwrap());
        assert_eq!(t.member(&e("base=2; segs=[ w^(2) : const 0 ]")), Err(Error::HeightExceeded));
    }

    #[test]
    fn heights() {
        let t = zero_tail_tree();
        assert_eq!(t.height_of(&e("base=2; segs=[ W : const 0 ]")).unwrap(), OrdLen::Fin(o("w^(2)")));
        assert_eq!(t.height_of(&e("base=2; segs=[ W : cycle 0,1 ]")).unwrap(), OrdLen::Fin(o("w")));
        let s = e("base=2; segs=[ w*2 : const 0 ; W : const 1 ]");
        assert_eq!(t.height_of(&s).unwrap(), OrdLen::Fin(o("w*3")));
        // a base-bounded tree that only admits the value 0
        let z = TreeSpec::simple(BaseOrder::two(), OrdLen::Fin(Ordinal::one()))
            .extend_choice(&Ordinal::one(), LevelSet::Gens(vec![e("base=2; segs=[ 1 : vals 0 ]")]))
            .unwrap()
            .extend_to_next_tail_like();
        assert_eq!(*z.height(), OrdLen::Fin(Ordinal::omega()));
        assert_eq!(z.height_of(&e("base=2; segs=[ 3 : vals 0,0,1 ; W : const 0 ]")).unwrap(), OrdLen::Fin(o("3")));
    }

    #[test]
    fn extension_errors() {
        let t = TreeSpec::simple(BaseOrder::two(), OrdLen::Fin(Ordinal::omega()));
        let bad = LevelSet::Gens(vec![e("base=2; segs=[ 3 : vals 0,0,0 ]")]);
        assert!(matches!(t.extend_choice(&Ordinal::omega(), bad), Err(Error::GeneratorNotBranch(_))));
        assert!(matches!(t.extend_choice(&o("w*2"), LevelSet::All), Err(Error::NotTailLike(_))));
        let h = TreeSpec::simple(BaseOrder::two(), OrdLen::Fin(o("2")));
        assert_eq!(*h.extend_to_next_tail_like().height(), OrdLen::Fin(Ordinal::omega()));
        let full = t.extend_choice(&Ordinal::omega(), LevelSet::All).unwrap().extend_to_next_tail_like();
        assert!(full.member(&e("base=2; segs=[ w : cycle 0,1 ]")).unwrap());
    }

    #[test]
    fn thinning_and_reproduction() {
        let t = zero_tail_tree();
        assert!(t.omega_thin_member(&e("base=2; segs=[ w : const 0 ]")).unwrap());
        assert!(!t.omega_thin_member(&e("base=2; segs=[ 3 : vals 0,1,0 ]")).unwrap());
        let p = e("base=2; segs=[ 2 : vals 1,1 ]");
        let q = e("base=2; segs=[ w : const 0 ]");
        let r = t.reproduce(&p, &q).unwrap();
        assert_eq!(r.order().unwrap(), Ordinal::omega());
    }

    #[test]
    fn height_fixpoint() {
        let s = e("base=2; segs=[ 3 : vals 0,0,0 ; W : const 0 ]");
        let t = e("base=2; segs=[ 3 : vals 0,0,0 ; W : const 1 ]");
        let u = [s.clone(), t.clone()];
        let h = max_height_fn(&u, &[o("2"), o("5")]).unwrap();
        assert_eq!(h.table, vec![o("2"), o("2")]);
        assert!(is_height_fn(&u, &h.table, false).unwrap());
        let s2 = e("base=2; segs=[ 2 : vals 0,0 ; W : const 0 ]");
        let t2 = e("base=2; segs=[ 2 : vals 0,0 ; W : const 1 ]");
        let u2 = [s2, t2];
        let h0 = [o("w"), o("w^(2)")];
        assert_eq!(max_height_fn(&u2, &h0).unwrap().table, h0.to_vec());
        assert!(!is_height_fn(&u, &[o("2"), o("5")], false).unwrap());
    }

    #[test]
    fn fixture_round_trip() {
        let text = "tree base=2 height=w^(2)\nlevel w:\n  base=2; segs=[ w : const 0 ]\n";
        let t: TreeSpec = text.parse().unwrap();
        assert!(!t.verified());
        assert_eq!(t.to_string().parse::<TreeSpec>().unwrap(), t);
        assert!(!t.member(&e("base=2; segs=[ w : cycle 0,1 ]")).unwrap());
        assert!("tree base=2 height=w\nlevel w*2:\n all\n".parse::<TreeSpec>().is_err());
        assert!(matches!("tree base=2 hight=w".parse::<TreeSpec>(), Err(Error::Parse { .. })));
    }
}
