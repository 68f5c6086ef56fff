mod common;

use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use transfin::rat::int;
use transfin::seqmaps::{
    end_equivalent, lift_minus, lift_plus, point_auto, pre_period, reproduce, saturated_member, shift,
    tree_auto_apply, AutoSpec, SaturatedSet,
};
use transfin::{BaseOrder, LexElem, Ordinal};

fn zseq(g: &mut Gen) -> LexElem {
    let z = BaseOrder::int();
    let pool = value_pool(&z);
    omega_seq(g, &z, &pool)
}

fn pair(g: &mut Gen) -> (LexElem, LexElem) {
    let x = zseq(g);
    let y = if g.gen_bool(0.6) { nearby(g, &x) } else { zseq(g) };
    (x, y)
}

/// `s` translated by `k` coordinates.
fn drop(s: &LexElem, k: usize) -> LexElem {
    s.translate(&Ordinal::from(k)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn lifts_preserve_order_and_tails(seed in any::<u64>()) {
        let mut g = rng(seed);
        let (x, y) = pair(&mut g);
        let (p, m) = (lift_plus(&x).unwrap(), lift_minus(&x).unwrap());
        prop_assert!(*p.at(0).unwrap() >= int(0));
        prop_assert!(*m.at(0).unwrap() <= int(0));
        for (a, b) in [(&x, &p), (&x, &m), (&p, &m)] {
            prop_assert!(end_equivalent(a, b).unwrap().is_some());
        }
        let want = x.lex_cmp(&y).unwrap();
        prop_assert_eq!(p.lex_cmp(&lift_plus(&y).unwrap()).unwrap(), want);
        prop_assert_eq!(m.lex_cmp(&lift_minus(&y).unwrap()).unwrap(), want);
    }

    #[test]
    fn saturated_sets_are_shift_invariant(seed in any::<u64>()) {
        let mut g = rng(seed);
        let gens: Vec<LexElem> = (0..g.gen_range(1..=3)).map(|_| zseq(&mut g)).collect();
        let s = if g.gen_bool(0.5) {
            let src = gens.choose(&mut g).unwrap().clone();
            let k = g.gen_range(0..4);
            let head: Vec<_> = (0..g.gen_range(0..4)).map(|_| int(g.gen_range(-3..=3))).collect();
            reproduce(&head, &drop(&src, k)).unwrap()
        } else {
            zseq(&mut g)
        };
        let w = SaturatedSet::new(gens).unwrap();
        prop_assert_eq!(saturated_member(&w, &s).unwrap(), saturated_member(&w, &shift(&s).unwrap()).unwrap());
    }

    #[test]
    fn head_and_shift_form_an_integer_pattern(seed in any::<u64>()) {
        let mut g = rng(seed);
        let (s, t) = pair(&mut g);
        let (ss, st) = (shift(&s).unwrap(), shift(&t).unwrap());
        let pattern = s.at(0).unwrap().cmp(t.at(0).unwrap()).then(ss.lex_cmp(&st).unwrap());
        prop_assert_eq!(s.lex_cmp(&t).unwrap(), pattern);
        prop_assert_eq!(reproduce(&[s.at(0).unwrap().clone()], &ss).unwrap(), s);
    }

    #[test]
    fn point_automorphisms_invert(seed in any::<u64>()) {
        let mut g = rng(seed);
        let (p, q) = (zseq(&mut g), zseq(&mut g));
        let x = if g.gen_bool(0.5) { nearby(&mut g, &p) } else { zseq(&mut g) };
        let fx = point_auto(&p, &q, &x).unwrap();
        prop_assert_eq!(point_auto(&q, &p, &fx).unwrap(), x);
        prop_assert_eq!(point_auto(&p, &q, &p).unwrap(), q);
    }

    #[test]
    fn tree_automorphisms_preserve_order(seed in any::<u64>()) {
        let mut g = rng(seed);
        let mut spec = AutoSpec::default();
        for _ in 0..g.gen_range(0..4) {
            let w: Vec<_> = (0..g.gen_range(0..3)).map(|_| int(g.gen_range(-1..=1))).collect();
            spec.entries.insert(w, int(g.gen_range(-2..=2)));
        }
        let (x, y) = pair(&mut g);
        let (fx, fy) = (tree_auto_apply(&spec, &x).unwrap(), tree_auto_apply(&spec, &y).unwrap());
        prop_assert_eq!(fx.lex_cmp(&fy).unwrap(), x.lex_cmp(&y).unwrap());
        prop_assert!(end_equivalent(&x, &fx).unwrap().is_some());
    }

    #[test]
    fn end_equivalence_matches_prefix_comparison(seed in any::<u64>()) {
        let mut g = rng(seed);
        let s = zseq(&mut g);
        let t = if g.gen_bool(0.5) {
            let head: Vec<_> = (0..g.gen_range(0..4)).map(|_| int(g.gen_range(-3..=3))).collect();
            let k = g.gen_range(0..5);
            reproduce(&head, &drop(&s, k)).unwrap()
        } else {
            zseq(&mut g)
        };
        let (ms, mt) = (materialize(&s, 160), materialize(&t, 160));
        let agree = |i: usize, j: usize| (0..128).all(|k| ms[i + k] == mt[j + k]);
        match end_equivalent(&s, &t).unwrap() {
            Some((i, j)) => prop_assert!(agree(i, j)),
            None => {
                for i in 0..16 {
                    for j in 0..16 {
                        prop_assert!(!agree(i, j), "tails agree from ({}, {})", i, j);
                    }
                }
            }
        }
    }

    #[test]
    fn pre_period_rebuilds_the_sequence(seed in any::<u64>()) {
        let mut g = rng(seed);
        let s = zseq(&mut g);
        let (pre, per) = pre_period(&s).unwrap();
        prop_assert!(!per.is_empty());
        let m = materialize(&s, 64);
        for (i, v) in m.iter().enumerate() {
            let want = if i < pre.len() { &pre[i] } else { &per[(i - pre.len()) % per.len()] };
            prop_assert_eq!(v, want);
        }
    }
}
