//! Nested subdivision of the interval `[-1+, +1-]` of `J^alpha`.
//!
//! A node `[a, b]` is cut into children `[z_n, z_(n+1)]`, `n` in Z, along a
//! ladder in the first coordinate `e` where `a` and `b` differ. `z_0` is the
//! midpoint: it agrees with `a` below `e`, takes `(a_e + b_e) / 2` at `e`
//! and is zero afterwards.

use crate::error::{Error, Result};
use crate::lexspace::{BaseKind, BaseOrder, LexElem};
use crate::ordinal::{OrdLen, Ordinal};
use crate::rat::{half, int, Rat};

use super::alphabet::ladder_z;

fn base() -> BaseOrder {
    BaseOrder::with_j(BaseKind::Rat, int(-1), int(1)).expect("valid J")
}

fn head_then_const(head: LexElem, v: Rat, alpha: &Ordinal) -> Result<LexElem> {
    let used = head.order()?;
    let rest = alpha.sub_left(&used)?;
    if rest.is_zero() {
        return Ok(head);
    }
    head.sum(&LexElem::konst(base(), v, OrdLen::Fin(rest))?)
}

/// The root node `(-1+, +1-)`.
pub fn partition_root(alpha: &Ordinal) -> Result<(LexElem, LexElem)> {
    if alpha.is_zero() {
        return Err(Error::DomainError("length must be positive".into()));
    }
    let a = head_then_const(LexElem::word(base(), vec![int(-1)])?, int(1), alpha)?;
    let b = head_then_const(LexElem::word(base(), vec![int(1)])?, int(-1), alpha)?;
    Ok((a, b))
}

/// The `n`-th ladder point inside `[a, b]`; `n = 0` gives the midpoint.
pub fn ladder_point(a: &LexElem, b: &LexElem, n: i64) -> Result<LexElem> {
    let e = a.first_diff(b)?.ok_or_else(|| Error::DomainError("degenerate node".into()))?;
    let (ae, be) = (a.index(&e)?.clone(), b.index(&e)?.clone());
    let v = &ae + (&be - &ae) * (int(1) + ladder_z(n)) * half();
    let head = a.restrict(&e)?.sum(&LexElem::word(base(), vec![v])?)?;
    head_then_const(head, int(0), &a.order()?)
}

/// Endpoints of the node reached from the root along `path`.
pub fn partition_node(alpha: &Ordinal, path: &[i64], depth: usize) -> Result<(LexElem, LexElem)> {
    if path.len() > depth {
        return Err(Error::DepthExceeded(format!("path of length {} exceeds depth {depth}", path.len())));
    }
    let (mut a, mut b) = partition_root(alpha)?;
    for &n in path {
        let lo = ladder_point(&a, &b, n)?;
        let hi = ladder_point(&a, &b, n + 1)?;
        a = lo;
        b = hi;
    }
    Ok((a, b))
}

/// Width of a node in the first coordinate where its endpoints differ.
pub fn node_width(a: &LexElem, b: &LexElem) -> Result<Rat> {
    let e = a.first_diff(b)?.ok_or_else(|| Error::DomainError("degenerate node".into()))?;
    Ok(b.index(&e)? - a.index(&e)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::pow2;
    use std::cmp::Ordering;

    #[test]
    fn root_and_midpoint() {
        let w2 = "w*2".parse::<Ordinal>().unwrap();
        let (a, b) = partition_node(&w2, &[], 4).unwrap();
        assert_eq!(a.to_string(), "base=Q; J=-1..1; segs=[ 1 : vals -1 ; w*2 : const 1 ]");
        assert_eq!(b.index(&Ordinal::zero()).unwrap(), &int(1));
        let mid = ladder_point(&a, &b, 0).unwrap();
        assert_eq!(mid, LexElem::konst(base(), int(0), OrdLen::Fin(w2.clone())).unwrap());
        assert!(matches!(partition_node(&w2, &[0; 5], 4), Err(Error::DepthExceeded(_))));
    }

    #[test]
    fn nesting_and_halving() {
        let w = Ordinal::omega();
        let path = [3, -2, 0, 7, -1, 1, 0, 0, -5, 2, 4, -3];
        let mut prev = partition_node(&w, &[], 12).unwrap();
        for k in 1..=path.len() {
            let cur = partition_node(&w, &path[..k], 12).unwrap();
            assert_ne!(prev.0.lex_cmp(&cur.0).unwrap(), Ordering::Greater);
            assert_ne!(cur.1.lex_cmp(&prev.1).unwrap(), Ordering::Greater);
            assert!(node_width(&cur.0, &cur.1).unwrap() <= int(2) * pow2(-(k as i64)));
            prev = cur;
        }
        let left = partition_node(&w, &[0, 1], 3).unwrap();
        let right = partition_node(&w, &[0, 2], 3).unwrap();
        assert_eq!(left.1, right.0);
    }
}
