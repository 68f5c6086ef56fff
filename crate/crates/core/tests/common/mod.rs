//! Seeded generators shared by the acceptance suite and the property tests.
#![allow(dead_code)]

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use transfin::ordinal::Term;
use transfin::rat::{int, rat};
use transfin::{BaseKind, BaseOrder, LexElem, OrdLen, Ordinal, Rat, Segment};

pub type Gen = ChaCha8Rng;

pub fn rng(seed: u64) -> Gen {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn o(s: &str) -> Ordinal {
    s.parse().unwrap()
}

pub fn e(s: &str) -> LexElem {
    s.parse().unwrap()
}

/// Ordinal below `w^(max_exp + 1)` with up to `max_terms` CNF terms.
pub fn ordinal(g: &mut Gen, max_terms: usize, max_exp: u64, max_coef: u64) -> Ordinal {
    let n = g.gen_range(0..=max_terms);
    let mut exps: Vec<u64> = (0..n).map(|_| g.gen_range(0..=max_exp)).collect();
    exps.sort_unstable_by(|a, b| b.cmp(a));
    exps.dedup();
    let terms = exps
        .into_iter()
        .map(|e| Term { exp: Ordinal::from(e), coef: BigUint::from(g.gen_range(1..=max_coef)) })
        .collect();
    Ordinal::from_terms(terms).unwrap()
}

pub fn positive_ordinal(g: &mut Gen, max_terms: usize, max_exp: u64, max_coef: u64) -> Ordinal {
    loop {
        let a = ordinal(g, max_terms, max_exp, max_coef);
        if !a.is_zero() {
            return a;
        }
    }
}

/// Like [`ordinal`] but exponents may themselves be infinite.
pub fn ordinal_deep(g: &mut Gen) -> Ordinal {
    let pool = ["0", "1", "2", "w", "w+1", "w*2", "w^(2)"];
    let n = g.gen_range(1..=3);
    let mut exps: Vec<Ordinal> = (0..n).map(|_| o(pool.choose(g).unwrap())).collect();
    exps.sort_unstable_by(|a, b| b.cmp(a));
    exps.dedup();
    let terms = exps.into_iter().map(|exp| Term { exp, coef: BigUint::from(g.gen_range(1..=4u32)) }).collect();
    Ordinal::from_terms(terms).unwrap()
}

pub fn value_pool(base: &BaseOrder) -> Vec<Rat> {
    match base.kind {
        BaseKind::Two => vec![int(0), int(1)],
        BaseKind::Chain(n) => (0..i64::from(n)).map(int).collect(),
        BaseKind::Int => (-3..=3).map(int).collect(),
        BaseKind::Nat => (0..=4).map(int).collect(),
        BaseKind::Rat => vec![int(-1), rat(-1, 2), int(0), rat(1, 3), rat(3, 4), int(1)],
    }
}

fn pick(g: &mut Gen, pool: &[Rat]) -> Rat {
    pool.choose(g).unwrap().clone()
}

fn word(g: &mut Gen, pool: &[Rat], n: usize) -> Vec<Rat> {
    (0..n).map(|_| pick(g, pool)).collect()
}

/// A limit-length block: optional finite word, then a constant or a cycle.
fn block(g: &mut Gen, pool: &[Rat], len: Ordinal, segs: &mut Vec<Segment<Rat>>) {
    if g.gen_bool(0.5) {
        let k = g.gen_range(1..=4);
        segs.push(Segment::word(word(g, pool, k)));
    }
    if g.gen_bool(0.3) {
        segs.push(Segment::konst(pick(g, pool), OrdLen::Fin(len)));
    } else {
        let k = g.gen_range(1..=4);
        segs.push(Segment::cycle(word(g, pool, k), OrdLen::Fin(len)));
    }
}

/// Random element of length `alpha` with values from `pool`.
pub fn elem_with(g: &mut Gen, base: &BaseOrder, pool: &[Rat], alpha: &Ordinal) -> LexElem {
    let mut segs = Vec::new();
    for t in alpha.terms() {
        let copies = t.coef.to_string().parse::<usize>().unwrap();
        if t.exp.is_zero() {
            segs.push(Segment::word(word(g, pool, copies)));
            continue;
        }
        let unit = Ordinal::omega_pow(t.exp.clone());
        for _ in 0..copies {
            block(g, pool, unit.clone(), &mut segs);
        }
    }
    LexElem::new(base.clone(), segs).unwrap()
}

pub fn elem(g: &mut Gen, base: &BaseOrder, alpha: &Ordinal) -> LexElem {
    let pool = value_pool(base);
    elem_with(g, base, &pool, alpha)
}

/// Random element of length `W` (omega-block prefix then the marker tail).
pub fn branch(g: &mut Gen, base: &BaseOrder, head: &Ordinal) -> LexElem {
    let pool = value_pool(base);
    let h = elem_with(g, base, &pool, head);
    let tail = if g.gen_bool(0.5) {
        LexElem::konst(base.clone(), pick(g, &pool), OrdLen::OmegaMark).unwrap()
    } else {
        let k = g.gen_range(1..=3);
        LexElem::cycle(base.clone(), word(g, &pool, k), OrdLen::OmegaMark).unwrap()
    };
    h.sum(&tail).unwrap()
}

/// Perturbs `x` at one random index below 8 (or its last finite place).
pub fn nearby(g: &mut Gen, x: &LexElem) -> LexElem {
    let pool = value_pool(x.base());
    let limit = x.len().fin().and_then(|o| o.to_usize()).unwrap_or(8).min(8);
    if limit == 0 {
        return x.clone();
    }
    let i = g.gen_range(0..limit);
    let head = x.restrict(&Ordinal::from(i)).unwrap();
    let v = LexElem::word(x.base().clone(), vec![pick(g, &pool)]).unwrap();
    let rest = x.translate(&Ordinal::from(i + 1)).unwrap();
    head.sum(&v).unwrap().sum(&rest).unwrap()
}

/// Eventually periodic omega-sequence with values from `pool`.
pub fn omega_seq(g: &mut Gen, base: &BaseOrder, pool: &[Rat]) -> LexElem {
    elem_with(g, base, pool, &Ordinal::omega())
}

pub fn rational_in(g: &mut Gen, lo: i64, hi: i64, den: i64) -> Rat {
    rat(g.gen_range(lo * den..=hi * den), den)
}

/// The first `n` coordinates (fewer for shorter finite elements).
pub fn materialize(x: &LexElem, n: usize) -> Vec<Rat> {
    let n = match x.len() {
        OrdLen::Fin(o) => o.to_usize().map_or(n, |k| k.min(n)),
        OrdLen::OmegaMark => n,
    };
    (0..n).map(|i| x.at(i).unwrap().clone()).collect()
}

/// A binary element of order `w*k + n` whose omega-blocks end in one of a
/// few fixed patterns.
pub fn tree_elem(g: &mut Gen, k: u64, n: u64) -> LexElem {
    let two = BaseOrder::two();
    let tails: [&[i64]; 5] = [&[0], &[1], &[0, 1], &[1, 0], &[0, 0, 1]];
    let mut x = LexElem::empty(two.clone());
    for _ in 0..k {
        let hl = Ordinal::from(g.gen_range(0..4u64));
        let head = elem(g, &two, &hl);
        let t = tails.choose(g).unwrap();
        let tail = LexElem::cycle(two.clone(), t.iter().map(|v| int(*v)).collect(), OrdLen::Fin(Ordinal::omega())).unwrap();
        x = x.sum(&head).unwrap().sum(&tail).unwrap();
    }
    x.sum(&elem(g, &two, &Ordinal::from(n))).unwrap()
}
