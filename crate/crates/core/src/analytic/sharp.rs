//! Sharply increasing ordinal-indexed sequences: every value exceeds the
//! supremum of all earlier values, limits included.

use num_traits::Zero;

use super::embed::Embedding;
use crate::error::{Error, Result};
use crate::lexspace::{BaseKind, BaseOrder, LexElem};
use crate::ordinal::Ordinal;
use crate::rat::{half, int, Rat};

/// A rational sequence indexed by an ordinal, read pointwise.
pub trait OrdinalSeq {
    fn order(&self) -> Result<Ordinal>;
    fn at(&self, i: &Ordinal) -> Result<Rat>;
    /// Supremum of the values strictly before `i`; `None` at `0`.
    fn hat(&self, i: &Ordinal) -> Result<Option<Rat>>;
    /// Indices where a failure of sharp increase would first show.
    fn critical(&self) -> Result<Vec<Ordinal>>;
}

/// Sample of indices below `alpha` covering the start, successors and the
/// first few limits of each Cantor term.
fn ordinal_samples(alpha: &Ordinal) -> Vec<Ordinal> {
    let mut out = vec![Ordinal::zero(), Ordinal::one()];
    let mut s = Ordinal::zero();
    for t in alpha.terms() {
        let unit = Ordinal::omega_pow(t.exp.clone());
        let mut k = 0u32;
        while t.coef > k.into() {
            if k < 3 {
                out.push(s.clone());
                out.push(s.succ());
                if !t.exp.is_zero() {
                    out.push(s.add(&Ordinal::omega()));
                }
            }
            s = s.add(&unit);
            k += 1;
        }
    }
    out.retain(|i| i < alpha);
    out.sort();
    out.dedup();
    out
}

pub fn is_sharply_increasing(p: &impl OrdinalSeq) -> Result<bool> {
    for i in p.critical()? {
        if let Some(h) = p.hat(&i)? {
            if h >= p.at(&i)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl OrdinalSeq for LexElem {
    fn order(&self) -> Result<Ordinal> {
        LexElem::order(self)
    }

    fn at(&self, i: &Ordinal) -> Result<Rat> {
        Ok(self.index(i)?.clone())
    }

    fn hat(&self, i: &Ordinal) -> Result<Option<Rat>> {
        if i.is_zero() {
            return Ok(None);
        }
        Ok(self.restrict(i)?.seq().all_values().max().cloned())
    }

    fn critical(&self) -> Result<Vec<Ordinal>> {
        let total = LexElem::order(self)?;
        let mut out = Vec::new();
        for (s, seg) in self.seq().with_starts() {
            let reach = match &seg.payload {
                crate::lexspace::Payload::Word(w) => w.len(),
                crate::lexspace::Payload::Cycle(w) => w.len() + 1,
                crate::lexspace::Payload::Const(_) => 1,
            };
            for k in 0..=reach {
                out.push(s.add(&Ordinal::from(k)));
            }
        }
        out.retain(|i| *i < total);
        out.dedup();
        Ok(out)
    }
}

/// The embedding itself, read as a sequence below its order.
pub struct EmbeddingSeq<'a>(pub &'a Embedding);

impl OrdinalSeq for EmbeddingSeq<'_> {
    fn order(&self) -> Result<Ordinal> {
        Ok(self.0.alpha().clone())
    }

    fn at(&self, i: &Ordinal) -> Result<Rat> {
        self.0.eval(i)
    }

    /// Continuity at limits makes the supremum the value there.
    fn hat(&self, i: &Ordinal) -> Result<Option<Rat>> {
        if i.is_zero() {
            return Ok(None);
        }
        let (lam, k) = i.limit_split();
        if !k.is_zero() {
            return Ok(Some(self.0.eval(&lam.add(&Ordinal::nat(k - 1u32)))?));
        }
        Ok(Some(self.0.eval(i)?))
    }

    fn critical(&self) -> Result<Vec<Ordinal>> {
        Ok(ordinal_samples(self.0.alpha()))
    }
}

/// `p(z)(i) = g_i(z_i)` with `g_i` the increasing affine map from `(-1, 1)`
/// onto `(e(i), e(i + 1))`.
#[derive(Clone, Debug)]
pub struct SharpSeq {
    emb: Embedding,
    z: LexElem,
}

pub fn sharp_generator(emb: &Embedding, z: &LexElem) -> Result<SharpSeq> {
    if z.order()? != *emb.alpha() {
        return Err(Error::ShapeMismatch(format!("length {} against order {}", z.len(), emb.alpha())));
    }
    if z.seq().all_values().any(|v| *v <= int(-1) || *v >= int(1)) {
        return Err(Error::OutOfInterval("values must lie in (-1, 1)".into()));
    }
    Ok(SharpSeq { emb: emb.clone(), z: z.clone() })
}

impl SharpSeq {
    /// The whole sequence as an element, possible only for finite orders.
    pub fn to_elem(&self) -> Result<LexElem> {
        let n = self
            .emb
            .alpha()
            .to_usize()
            .ok_or_else(|| Error::UnsupportedShape("an injective sequence of infinite length".into()))?;
        let vals = (0..n).map(|i| self.at(&Ordinal::from(i))).collect::<Result<Vec<_>>>()?;
        LexElem::word(BaseOrder::new(BaseKind::Rat), vals)
    }
}

impl OrdinalSeq for SharpSeq {
    fn order(&self) -> Result<Ordinal> {
        Ok(self.emb.alpha().clone())
    }

    fn at(&self, i: &Ordinal) -> Result<Rat> {
        let lo = self.emb.eval(i)?;
        let hi = self.emb.eval(&i.succ())?;
        let t = (self.z.index(i)? + int(1)) * half();
        Ok(&lo + t * (hi - &lo))
    }

    /// Each value sits in `(e(i), e(i + 1))`, so below a limit the
    /// supremum is the embedding's value there.
    fn hat(&self, i: &Ordinal) -> Result<Option<Rat>> {
        if i.is_zero() {
            return Ok(None);
        }
        let (lam, k) = i.limit_split();
        if !k.is_zero() {
            return Ok(Some(self.at(&lam.add(&Ordinal::nat(k - 1u32)))?));
        }
        Ok(Some(self.emb.eval(i)?))
    }

    fn critical(&self) -> Result<Vec<Ordinal>> {
        let mut out = ordinal_samples(self.emb.alpha());
        out.extend(self.z.critical()?);
        out.sort();
        out.dedup();
        Ok(out)
    }
}
