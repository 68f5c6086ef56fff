mod common;

use std::cmp::Ordering;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use transfin::rat::int;
use transfin::treekit::TreeSpec;
use transfin::zerodim::{
    beta_star, closed_preimage, double_cmp, gap_pair, ray_iso, double_point_inject, clopen_iso, Base, DoublePoint,
};
use transfin::{BaseOrder, LexElem, OrdLen, Ordinal, Sign};

fn bits(g: &mut Gen, max: usize) -> Vec<i64> {
    (0..g.gen_range(0..=max)).map(|_| g.gen_range(0..=1)).collect()
}

/// A word followed by a constant tail, length `w`.
fn dyadic(head: &[i64], tail: i64) -> LexElem {
    let two = BaseOrder::two();
    LexElem::word(two.clone(), head.iter().map(|b| int(*b)).collect())
        .unwrap()
        .sum(&LexElem::konst(two, int(tail), OrdLen::Fin(Ordinal::omega())).unwrap())
        .unwrap()
}

fn sign(g: &mut Gen) -> Sign {
    if g.gen_bool(0.5) { Sign::Plus } else { Sign::Minus }
}

fn lt(a: &LexElem, b: &LexElem) -> bool {
    a.lex_cmp(b).unwrap() == Ordering::Less
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn gaps_have_nothing_between(seed in any::<u64>()) {
        let mut g = rng(seed);
        let u = bits(&mut g, 6);
        let x = dyadic(&[u.clone(), vec![0]].concat(), 1);
        let y = dyadic(&[u, vec![1]].concat(), 0);
        prop_assert!(gap_pair(&x, &y).unwrap());
        let (bx, by) = (beta_star(&x).unwrap(), beta_star(&y).unwrap());
        prop_assert_eq!(&bx, &by);
        prop_assert!(bx.is_successor());
        for _ in 0..50 {
            let z = dyadic(&bits(&mut g, 8), g.gen_range(0..=1));
            prop_assert!(!(lt(&x, &z) && lt(&z, &y)), "{} lies inside a gap", z);
        }
    }

    #[test]
    fn non_adjacent_pairs_are_not_gaps(seed in any::<u64>()) {
        let mut g = rng(seed);
        let x = dyadic(&bits(&mut g, 6), g.gen_range(0..=1));
        let y = dyadic(&bits(&mut g, 6), g.gen_range(0..=1));
        if lt(&x, &y) && gap_pair(&x, &y).unwrap() {
            let z = dyadic(&bits(&mut g, 8), g.gen_range(0..=1));
            prop_assert!(!(lt(&x, &z) && lt(&z, &y)));
        } else if lt(&x, &y) {
            // some witness of bounded depth fits between
            let between = (0..1u32 << 10).any(|m| {
                let w: Vec<i64> = (0..10).map(|i| i64::from((m >> i) & 1)).collect();
                [0, 1].iter().any(|t| {
                    let z = dyadic(&w, *t);
                    lt(&x, &z) && lt(&z, &y)
                })
            });
            prop_assert!(between);
        }
    }

    #[test]
    fn clopen_isomorphisms_preserve_order(seed in any::<u64>()) {
        let mut g = rng(seed);
        let t = TreeSpec::simple(BaseOrder::two(), OrdLen::Fin(Ordinal::omega()));
        let x = dyadic(&bits(&mut g, 5), 0);
        let y = dyadic(&[bits(&mut g, 5), vec![1]].concat(), 1);
        if !lt(&x, &y) {
            return Ok(());
        }
        let a = nearby(&mut g, &x);
        let b = nearby(&mut g, &y);
        for (p, q) in [(&a, &b), (&a, &y), (&x, &b)] {
            let inside = |z: &LexElem| !lt(z, &x) && !lt(&y, z);
            if inside(p) && inside(q) {
                let (fp, fq) = (clopen_iso(&x, &y, p, &t).unwrap(), clopen_iso(&x, &y, q, &t).unwrap());
                prop_assert_eq!(fp.lex_cmp(&fq).unwrap(), p.lex_cmp(q).unwrap());
            }
            if !lt(p, &x) && !lt(q, &x) {
                let (fp, fq) = (ray_iso(&x, p, &t).unwrap(), ray_iso(&x, q, &t).unwrap());
                prop_assert_eq!(fp.lex_cmp(&fq).unwrap(), p.lex_cmp(q).unwrap());
            }
        }
    }

    #[test]
    fn injection_orders_double_points(seed in any::<u64>()) {
        let mut g = rng(seed);
        let seed_elem = e("base=2; segs=[ w : cycle 0,1,1 ]");
        let word = |b: Vec<i64>| LexElem::word(BaseOrder::two(), b.into_iter().map(int).collect()).unwrap();
        let n = g.gen_range(1..=5);
        let a: Vec<i64> = (0..n).map(|_| g.gen_range(0..=1)).collect();
        let b: Vec<i64> = (0..n).map(|_| g.gen_range(0..=1)).collect();
        let (sa, sb) = (sign(&mut g), sign(&mut g));
        let (pa, pb) = (DoublePoint::elem(word(a.clone()), sa), DoublePoint::elem(word(b.clone()), sb));
        let ia = double_point_inject(&word(a), sa, &seed_elem).unwrap();
        let ib = double_point_inject(&word(b), sb, &seed_elem).unwrap();
        prop_assert_eq!(ia.lex_cmp(&ib).unwrap(), double_cmp(&pa, &pb).unwrap());
        prop_assert!(beta_star(&ia).is_err());
    }

    #[test]
    fn closed_preimage_brackets_the_interval(seed in any::<u64>()) {
        let mut g = rng(seed);
        let a = rational_in(&mut g, -3, 3, 4);
        let b = &a + rational_in(&mut g, 0, 3, 4);
        let t = rational_in(&mut g, -4, 4, 4);
        let s = sign(&mut g);
        let p = DoublePoint::value(t.clone(), s);
        let (lo, hi) = closed_preimage(Base::Value(a.clone()), Base::Value(b.clone()));
        let inside = double_cmp(&lo, &p).unwrap() != Ordering::Greater && double_cmp(&p, &hi).unwrap() != Ordering::Greater;
        prop_assert_eq!(inside, a <= t && t <= b);
        let (olo, ohi) = transfin::zerodim::open_preimage(Base::Value(a.clone()), Base::Value(b.clone()));
        let open = double_cmp(&olo, &p).unwrap() == Ordering::Less && double_cmp(&p, &ohi).unwrap() == Ordering::Less;
        prop_assert_eq!(open, a < t && t < b);
    }
}

#[test]
fn double_point_text() {
    let p: DoublePoint = "1/2 ^+".parse().unwrap();
    assert_eq!(p.to_string(), "1/2 ^+");
    assert_eq!(double_cmp(&"1/2 ^-".parse().unwrap(), &p).unwrap(), Ordering::Less);
}
