//! Continuous order embeddings of `alpha + 1` into a rational interval.
//!
//! The last Cantor term `w^e` of `alpha` gets the upper half of `[a, b]`
//! (or all of it when it is the only term). A limit `w^e` is cut along a
//! fundamental sequence `b_n`, and the piece `(b_n, b_(n+1)]` is embedded
//! recursively into `[x_n, x_(n+1)]` with the dyadic ladder
//! `x_n = b - (b - a) 2^-n`.

use crate::error::{Error, Result};
use crate::ordinal::Ordinal;
use crate::rat::{half, pow2, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    alpha: Ordinal,
    a: Rat,
    b: Rat,
}

impl Embedding {
    pub fn new(alpha: Ordinal, a: Rat, b: Rat) -> Result<Self> {
        if a >= b {
            return Err(Error::BadInterval(format!("[{a}, {b}] is not proper")));
        }
        if alpha.is_zero() {
            return Err(Error::BadInterval("the order must be positive".into()));
        }
        Ok(Embedding { alpha, a, b })
    }

    pub fn alpha(&self) -> &Ordinal {
        &self.alpha
    }

    /// Image of `xi`, for `xi <= alpha`.
    pub fn eval(&self, xi: &Ordinal) -> Result<Rat> {
        if *xi > self.alpha {
            return Err(Error::IndexOutOfRange(format!("{xi} exceeds {}", self.alpha)));
        }
        Ok(eval_in(&self.alpha, &self.a, &self.b, xi))
    }

    /// The `i < alpha` with `eval(i) <= r < eval(i + 1)`, for `a <= r < b`.
    pub fn locate(&self, r: &Rat) -> Result<Ordinal> {
        if *r < self.a || *r >= self.b {
            return Err(Error::BadInterval(format!("{r} is outside [{}, {})", self.a, self.b)));
        }
        Ok(locate_in(&self.alpha, &self.a, &self.b, r))
    }

    /// For a limit `lambda <= alpha` and `r < eval(lambda)`: the index after
    /// which every value below `lambda` exceeds `r`, so `eval(i + 1) > r`.
    pub fn modulus(&self, lambda: &Ordinal, r: &Rat) -> Result<Ordinal> {
        if !lambda.is_limit() {
            return Err(Error::NotLimit(lambda.to_string()));
        }
        let top = self.eval(lambda)?;
        if *r >= top {
            return Err(Error::BadInterval(format!("{r} is not below the value {top} at {lambda}")));
        }
        if *r < self.a {
            return Ok(Ordinal::zero());
        }
        self.locate(r)
    }
}

fn split_last(alpha: &Ordinal) -> (Ordinal, Ordinal) {
    let terms = alpha.terms();
    let last = terms.last().expect("positive");
    let mut head = terms.to_vec();
    let e = last.exp.clone();
    if last.coef == 1u32.into() {
        head.pop();
    } else {
        head.last_mut().expect("nonempty").coef -= 1u32;
    }
    (Ordinal::from_terms(head).expect("still CNF"), e)
}

/// Fundamental sequence of a limit ordinal `e`, strictly increasing for `n >= 1`.
pub fn fundamental(e: &Ordinal, n: u64) -> Ordinal {
    let (delta, d) = split_last(e);
    if d.is_zero() {
        panic!("fundamental sequence of a successor ordinal");
    }
    let (lam, k) = d.limit_split();
    if k > 0u32.into() {
        let dm = lam.add(&Ordinal::nat(k - 1u32));
        delta.add(&Ordinal::omega_pow(dm).mul(&Ordinal::from(n)))
    } else {
        delta.add(&Ordinal::omega_pow(fundamental(&d, n)))
    }
}

fn ladder(a: &Rat, b: &Rat, n: u64) -> Rat {
    b - (b - a) * pow2(-(n as i64))
}

fn eval_in(alpha: &Ordinal, a: &Rat, b: &Rat, xi: &Ordinal) -> Rat {
    if xi.is_zero() {
        return a.clone();
    }
    if xi == alpha {
        return b.clone();
    }
    let (head, e) = split_last(alpha);
    if !head.is_zero() {
        let m = (a + b) * half();
        if *xi <= head {
            return eval_in(&head, a, &m, xi);
        }
        return eval_tail(&e, &m, b, &xi.sub_left(&head).expect("xi > head"));
    }
    eval_tail(&e, a, b, xi)
}

/// Embedding of `w^e` on `[a, b]` evaluated at `0 < xi < w^e`.
fn eval_tail(e: &Ordinal, a: &Rat, b: &Rat, xi: &Ordinal) -> Rat {
    let (n, sub, off) = piece_of(e, xi);
    eval_in(&sub, &ladder(a, b, n), &ladder(a, b, n + 1), &off)
}

/// For `0 < xi < w^e`: the piece `n` with `b_n < xi <= b_(n+1)`, the order of
/// that piece and the offset of `xi` inside it.
fn piece_of(e: &Ordinal, xi: &Ordinal) -> (u64, Ordinal, Ordinal) {
    let (lam, k) = e.limit_split();
    if k > 0u32.into() {
        let e1 = lam.add(&Ordinal::nat(k - 1u32));
        let unit = Ordinal::omega_pow(e1.clone());
        let (high, low) = xi.split_at_exp(&e1);
        let c = high.terms().first().map(|t| u64::try_from(&t.coef).expect("coefficient fits u64")).unwrap_or(0);
        if low.is_zero() {
            (c - 1, unit.clone(), unit)
        } else {
            (c, unit, low)
        }
    } else {
        let mut n = 0u64;
        let mut below = Ordinal::zero();
        loop {
            let next = Ordinal::omega_pow(fundamental(e, n + 1));
            if *xi <= next {
                return (n, next, xi.sub_left(&below).expect("xi above the cut"));
            }
            below = next;
            n += 1;
        }
    }
}

fn locate_in(alpha: &Ordinal, a: &Rat, b: &Rat, r: &Rat) -> Ordinal {
    let (head, e) = split_last(alpha);
    if !head.is_zero() {
        let m = (a + b) * half();
        if *r < m {
            return locate_in(&head, a, &m, r);
        }
        return head.add(&locate_tail(&e, &m, b, r));
    }
    locate_tail(&e, a, b, r)
}

fn locate_tail(e: &Ordinal, a: &Rat, b: &Rat, r: &Rat) -> Ordinal {
    if e.is_zero() {
        return Ordinal::zero();
    }
    let mut n = 0u64;
    while *r >= ladder(a, b, n + 1) {
        n += 1;
    }
    let (lo, hi) = (ladder(a, b, n), ladder(a, b, n + 1));
    let (lam, k) = e.limit_split();
    if k > 0u32.into() {
        let unit = Ordinal::omega_pow(lam.add(&Ordinal::nat(k - 1u32)));
        unit.mul(&Ordinal::from(n)).add(&locate_in(&unit, &lo, &hi, r))
    } else {
        let sub = Ordinal::omega_pow(fundamental(e, n + 1));
        let below = if n == 0 { Ordinal::zero() } else { Ordinal::omega_pow(fundamental(e, n)) };
        below.add(&locate_in(&sub, &lo, &hi, r))
    }
}
