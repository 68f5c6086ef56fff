mod common;

use std::cmp::Ordering;

use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use transfin::lexspace::Seq;
use transfin::{BaseKind, BaseOrder, LexElem, OrdLen, Ordinal, Sign};

fn any_base(g: &mut Gen) -> BaseOrder {
    [BaseOrder::two(), BaseOrder::new(BaseKind::Chain(3)), BaseOrder::int(), BaseOrder::new(BaseKind::Nat), BaseOrder::rat_j()]
        .choose(g)
        .unwrap()
        .clone()
}

fn length(g: &mut Gen) -> Ordinal {
    o(["3", "w", "w+2", "w*2", "w*2+1", "w^(2)", "w^(2)+w*2+3", "w^(3)"].choose(g).unwrap())
}

/// A random ordinal strictly below a positive `a`.
fn below(g: &mut Gen, a: &Ordinal) -> Ordinal {
    assert!(!a.is_zero());
    (0..20).map(|_| ordinal(g, 3, 3, 3)).find(|b| b < a).unwrap_or_else(Ordinal::zero)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn total_order(seed in any::<u64>()) {
        let mut g = rng(seed);
        let base = any_base(&mut g);
        let alpha = length(&mut g);
        let x = elem(&mut g, &base, &alpha);
        let y = nearby(&mut g, &x);
        let z = if g.gen_bool(0.5) { nearby(&mut g, &y) } else { elem(&mut g, &base, &alpha) };
        let c = |a: &LexElem, b: &LexElem| a.lex_cmp(b).unwrap();
        prop_assert_eq!(c(&x, &x), Ordering::Equal);
        prop_assert_eq!(c(&x, &y), c(&y, &x).reverse());
        prop_assert_eq!(c(&x, &y) == Ordering::Equal, x == y);
        if c(&x, &y) != Ordering::Greater && c(&y, &z) != Ordering::Greater {
            prop_assert_ne!(c(&x, &z), Ordering::Greater);
        }
    }

    #[test]
    fn first_difference_is_exact(seed in any::<u64>()) {
        let mut g = rng(seed);
        let base = any_base(&mut g);
        let alpha = length(&mut g);
        let x = elem(&mut g, &base, &alpha);
        let y = if g.gen_bool(0.7) { nearby(&mut g, &x) } else { elem(&mut g, &base, &alpha) };
        match x.first_diff(&y).unwrap() {
            None => prop_assert_eq!(&x, &y),
            Some(eps) => {
                prop_assert_ne!(x.index(&eps).unwrap(), y.index(&eps).unwrap());
                let want = x.index(&eps).unwrap().cmp(y.index(&eps).unwrap());
                prop_assert_eq!(x.lex_cmp(&y).unwrap(), want);
                prop_assert_eq!(x.equality_level(&y).unwrap(), eps.clone());
                for _ in 0..if eps.is_zero() { 0 } else { 20 } {
                    let i = below(&mut g, &eps);
                    prop_assert_eq!(x.index(&i).unwrap(), y.index(&i).unwrap());
                }
            }
        }
    }

    #[test]
    fn agrees_with_coordinatewise_comparison(seed in any::<u64>()) {
        let mut g = rng(seed);
        let base = any_base(&mut g);
        let alpha = length(&mut g);
        let x = elem(&mut g, &base, &alpha);
        let y = nearby(&mut g, &x);
        let (mx, my) = (materialize(&x, 64), materialize(&y, 64));
        if let Some(i) = mx.iter().zip(&my).position(|(a, b)| a != b) {
            prop_assert_eq!(x.lex_cmp(&y).unwrap(), mx[i].cmp(&my[i]));
        }
    }

    #[test]
    fn sum_restrict_translate(seed in any::<u64>()) {
        let mut g = rng(seed);
        let base = any_base(&mut g);
        let (a1, a2) = (length(&mut g), length(&mut g));
        let p = elem(&mut g, &base, &a1);
        let q = elem(&mut g, &base, &a2);
        let r = p.sum(&q).unwrap();
        prop_assert_eq!(r.order().unwrap(), a1.add(&a2));
        prop_assert_eq!(r.restrict(&a1).unwrap(), p.clone());
        prop_assert_eq!(r.translate(&a1).unwrap(), q);
        let b = if a1.is_zero() { a1.clone() } else { below(&mut g, &a1) };
        let split = p.restrict(&b).unwrap().sum(&p.translate(&b).unwrap()).unwrap();
        prop_assert_eq!(split, p);
    }

    #[test]
    fn text_round_trip(seed in any::<u64>()) {
        let mut g = rng(seed);
        let base = any_base(&mut g);
        let x = if g.gen_bool(0.3) {
            let head = length(&mut g);
            branch(&mut g, &base, &head)
        } else {
            let alpha = length(&mut g);
            elem(&mut g, &base, &alpha)
        };
        let text = x.to_string();
        let back: LexElem = text.parse().unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, x);
    }

    #[test]
    fn canonical_form_is_stable(seed in any::<u64>()) {
        let mut g = rng(seed);
        let base = any_base(&mut g);
        let alpha = length(&mut g);
        let x = elem(&mut g, &base, &alpha);
        prop_assert_eq!(x.canonicalize(), x.clone());
        let re = LexElem::new(base, x.segments().to_vec()).unwrap();
        prop_assert_eq!(re, x);
    }

    #[test]
    fn flatten_indexes_blockwise(seed in any::<u64>()) {
        let mut g = rng(seed);
        let base = BaseOrder::int();
        let inner = o(["2", "w", "w+1"].choose(&mut g).unwrap());
        let n = g.gen_range(1..5usize);
        let parts: Vec<LexElem> = (0..n).map(|_| elem(&mut g, &base, &inner)).collect();
        let flat = LexElem::flatten(&Seq::word(parts.clone())).unwrap();
        prop_assert_eq!(flat.order().unwrap(), inner.mul(&Ordinal::from(n)));
        for _ in 0..5 {
            let i = g.gen_range(0..n);
            let j = if g.gen_bool(0.5) { Ordinal::from(g.gen_range(0..2u64)) } else { below(&mut g, &inner) };
            let pos = inner.mul(&Ordinal::from(i)).add(&j);
            prop_assert_eq!(flat.index(&pos).unwrap(), parts[i].index(&j).unwrap());
        }
    }

    #[test]
    fn corners_bound_every_element(seed in any::<u64>()) {
        let mut g = rng(seed);
        let base = BaseOrder::rat_j();
        let alpha = length(&mut g);
        let x = elem(&mut g, &base, &alpha);
        let empty = LexElem::empty(base.clone());
        let lo = empty.corner(&OrdLen::Fin(alpha.clone()), Sign::Minus).unwrap();
        let hi = empty.corner(&OrdLen::Fin(alpha), Sign::Plus).unwrap();
        prop_assert_ne!(lo.lex_cmp(&x).unwrap(), Ordering::Greater);
        prop_assert_ne!(x.lex_cmp(&hi).unwrap(), Ordering::Greater);
    }
}
