//! Ordinals below epsilon-zero in Cantor normal form.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// One CNF summand `w^exp * coef`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub exp: Ordinal,
    pub coef: BigUint,
}

/// An ordinal as a list of terms with strictly decreasing exponents and
/// positive coefficients. The empty list is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<Term>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::nat(1u32)
    }

    pub fn nat(n: impl Into<BigUint>) -> Self {
        let n = n.into();
        if n.is_zero() {
            return Ordinal::zero();
        }
        Ordinal { terms: vec![Term { exp: Ordinal::zero(), coef: n }] }
    }

    pub fn omega() -> Self {
        Ordinal::omega_pow(Ordinal::one())
    }

    /// `w^e`.
    pub fn omega_pow(e: Ordinal) -> Self {
        Ordinal { terms: vec![Term { exp: e, coef: BigUint::one() }] }
    }

    /// `w^e * c`; zero when `c` is zero.
    pub fn monomial(e: Ordinal, c: impl Into<BigUint>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Ordinal::zero();
        }
        Ordinal { terms: vec![Term { exp: e, coef: c }] }
    }

    /// Builds from raw terms, checking the CNF invariants.
    pub fn from_terms(terms: Vec<Term>) -> Result<Self> {
        for w in terms.windows(2) {
            if w[0].exp <= w[1].exp {
                return Err(Error::InvariantViolation("exponents must strictly decrease".into()));
            }
        }
        if terms.iter().any(|t| t.coef.is_zero()) {
            return Err(Error::InvariantViolation("coefficients must be positive".into()));
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|t| t.exp.is_zero())
    }

    /// The value as a natural number, when finite.
    pub fn as_nat(&self) -> Option<BigUint> {
        match self.terms.as_slice() {
            [] => Some(BigUint::zero()),
            [t] if t.exp.is_zero() => Some(t.coef.clone()),
            _ => None,
        }
    }

    pub fn to_usize(&self) -> Option<usize> {
        self.as_nat().and_then(|n| n.to_usize())
    }

    /// Nonzero with no finite tail.
    pub fn is_limit(&self) -> bool {
        self.terms.last().is_some_and(|t| !t.exp.is_zero())
    }

    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|t| t.exp.is_zero())
    }

    pub fn leading_exp(&self) -> Option<&Ordinal> {
        self.terms.first().map(|t| &t.exp)
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }

    pub fn add(&self, b: &Ordinal) -> Ordinal {
        let Some(lead) = b.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<Term> = Vec::with_capacity(self.terms.len() + b.terms.len());
        let mut rest = b.terms.iter();
        for t in &self.terms {
            match t.exp.cmp(&lead.exp) {
                Ordering::Greater => terms.push(t.clone()),
                Ordering::Equal => {
                    terms.push(Term { exp: t.exp.clone(), coef: &t.coef + &lead.coef });
                    rest.next();
                    break;
                }
                Ordering::Less => break,
            }
        }
        terms.extend(rest.cloned());
        Ordinal { terms }
    }

    pub fn mul(&self, b: &Ordinal) -> Ordinal {
        if self.is_zero() || b.is_zero() {
            return Ordinal::zero();
        }
        let e1 = &self.terms[0].exp;
        let mut terms = Vec::new();
        for t in &b.terms {
            if t.exp.is_zero() {
                // a * n: only the leading coefficient scales
                let mut head = self.terms[0].clone();
                head.coef *= &t.coef;
                terms.push(head);
                terms.extend(self.terms[1..].iter().cloned());
            } else {
                terms.push(Term { exp: e1.add(&t.exp), coef: t.coef.clone() });
            }
        }
        Ordinal { terms }
    }

    /// `self ^ b`, defined for finite bases and for `w`.
    pub fn pow(&self, b: &Ordinal) -> Result<Ordinal> {
        if let Some(n) = self.as_nat() {
            if n.is_zero() {
                return Ok(if b.is_zero() { Ordinal::one() } else { Ordinal::zero() });
            }
            if n.is_one() {
                return Ok(Ordinal::one());
            }
            // n^(w*beta + k) = w^beta * n^k
            let (lam, k) = b.limit_split();
            let k = k.to_u32().ok_or_else(|| Error::DomainError("exponent too large".into()))?;
            let fin = num_traits::pow::pow(n, k as usize);
            if lam.is_zero() {
                return Ok(Ordinal::nat(fin));
            }
            let beta = lam.omega_factor()?;
            return Ok(Ordinal::monomial(beta, fin));
        }
        if *self == Ordinal::omega() {
            return Ok(Ordinal::omega_pow(b.clone()));
        }
        Err(Error::UnsupportedBase(self.to_string()))
    }

    /// The unique `g` with `b + g = self`.
    pub fn sub_left(&self, b: &Ordinal) -> Result<Ordinal> {
        if b > self {
            return Err(Error::Underflow);
        }
        for (i, bt) in b.terms.iter().enumerate() {
            let at = &self.terms[i];
            if at.exp != bt.exp || at.coef != bt.coef {
                if at.exp == bt.exp {
                    let mut terms = vec![Term { exp: at.exp.clone(), coef: &at.coef - &bt.coef }];
                    terms.extend(self.terms[i + 1..].iter().cloned());
                    return Ok(Ordinal { terms });
                }
                return Ok(Ordinal { terms: self.terms[i..].to_vec() });
            }
        }
        Ok(Ordinal { terms: self.terms[b.terms.len()..].to_vec() })
    }

    /// `(lambda, k)` with `lambda` zero or a limit and `lambda + k = self`.
    pub fn limit_split(&self) -> (Ordinal, BigUint) {
        match self.terms.last() {
            Some(t) if t.exp.is_zero() => {
                let lam = Ordinal { terms: self.terms[..self.terms.len() - 1].to_vec() };
                (lam, t.coef.clone())
            }
            _ => (self.clone(), BigUint::zero()),
        }
    }

    /// The unique `b` with `w * b = self` for a positive limit.
    pub fn omega_factor(&self) -> Result<Ordinal> {
        if !self.is_limit() {
            return Err(Error::NotLimit(self.to_string()));
        }
        let one = Ordinal::one();
        let terms = self
            .terms
            .iter()
            .map(|t| Term { exp: t.exp.sub_left(&one).expect("limit exponents are positive"), coef: t.coef.clone() })
            .collect();
        Ok(Ordinal { terms })
    }

    pub fn is_tail_like(&self) -> Result<bool> {
        match self.terms.as_slice() {
            [] => Err(Error::DomainError("zero has no tail-like classification".into())),
            [t] => Ok(t.coef.is_one()),
            _ => Ok(false),
        }
    }

    /// Least tail-like ordinal that is at least `self`.
    pub fn next_tail_like(&self) -> Ordinal {
        match self.terms.as_slice() {
            [] => Ordinal::one(),
            [t] if t.coef.is_one() => self.clone(),
            [t, ..] => Ordinal::omega_pow(t.exp.succ()),
        }
    }

    /// Splits into `(high, low)` with `high` the terms of exponent at least
    /// `e`; `high` is the largest multiple of `w^e` not exceeding `self`.
    pub fn split_at_exp(&self, e: &Ordinal) -> (Ordinal, Ordinal) {
        let cut = self.terms.iter().position(|t| t.exp < *e).unwrap_or(self.terms.len());
        (
            Ordinal { terms: self.terms[..cut].to_vec() },
            Ordinal { terms: self.terms[cut..].to_vec() },
        )
    }

    /// The CNF read as a list of tail-like summands, each with its multiplicity.
    pub fn tail_like_pieces(&self) -> impl Iterator<Item = (Ordinal, &BigUint)> + '_ {
        self.terms.iter().map(|t| (Ordinal::omega_pow(t.exp.clone()), &t.coef))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let c = a.exp.cmp(&b.exp).then_with(|| a.coef.cmp(&b.coef));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::nat(n)
    }
}

impl From<usize> for Ordinal {
    fn from(n: usize) -> Self {
        Ordinal::nat(n as u64)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if t.exp.is_zero() {
                write!(f, "{}", t.coef)?;
                continue;
            }
            if t.exp == Ordinal::one() {
                write!(f, "w")?;
            } else {
                write!(f, "w^({})", t.exp)?;
            }
            if !t.coef.is_one() {
                write!(f, "*{}", t.coef)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Ordinal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::parse(p.pos, "trailing input"));
        }
        Ok(v)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Ordinal> {
        let mut acc = self.term()?;
        while self.eat(b'+') {
            let t = self.term()?;
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ordinal> {
        let f = self.factor()?;
        if self.eat(b'*') {
            let n = self.nat()?;
            return Ok(f.mul(&Ordinal::nat(n)));
        }
        Ok(f)
    }

    fn factor(&mut self) -> Result<Ordinal> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                if self.eat(b'^') {
                    self.expect(b'(')?;
                    let e = self.expr()?;
                    self.expect(b')')?;
                    Ok(Ordinal::omega_pow(e))
                } else {
                    Ok(Ordinal::omega())
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::nat(self.nat()?)),
            Some(_) => Err(Error::parse(self.pos, "expected a natural, 'w' or '('")),
            None => Err(Error::parse(self.pos, "unexpected end of input")),
        }
    }

    fn nat(&mut self) -> Result<BigUint> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected a natural"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }
}

/// Length marker: an ordinal, or the formal top element standing for the
/// first uncountable ordinal. The marker exceeds every ordinal and carries
/// no arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OrdLen {
    Fin(Ordinal),
    OmegaMark,
}

impl OrdLen {
    pub fn fin(&self) -> Option<&Ordinal> {
        match self {
            OrdLen::Fin(o) => Some(o),
            OrdLen::OmegaMark => None,
        }
    }

    pub fn is_mark(&self) -> bool {
        matches!(self, OrdLen::OmegaMark)
    }

    /// True when position `i` lies below this length.
    pub fn exceeds(&self, i: &Ordinal) -> bool {
        match self {
            OrdLen::Fin(o) => i < o,
            OrdLen::OmegaMark => true,
        }
    }
}

impl Ord for OrdLen {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (OrdLen::Fin(a), OrdLen::Fin(b)) => a.cmp(b),
            (OrdLen::Fin(_), OrdLen::OmegaMark) => Ordering::Less,
            (OrdLen::OmegaMark, OrdLen::Fin(_)) => Ordering::Greater,
            (OrdLen::OmegaMark, OrdLen::OmegaMark) => Ordering::Equal,
        }
    }
}

impl PartialOrd for OrdLen {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Ordinal> for OrdLen {
    fn from(o: Ordinal) -> Self {
        OrdLen::Fin(o)
    }
}

impl fmt::Display for OrdLen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrdLen::Fin(o) => write!(f, "{o}"),
            OrdLen::OmegaMark => write!(f, "W"),
        }
    }
}

impl FromStr for OrdLen {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "W" {
            Ok(OrdLen::OmegaMark)
        } else {
            s.parse().map(OrdLen::Fin)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn add_absorbs_lower_terms() {
        assert_eq!(o("w").add(&o("w^(2)")), o("w^(2)"));
        assert_eq!(o("w^(2)+w").add(&o("w*3+5")), o("w^(2)+w*4+5"));
        assert_eq!(o("w+3").add(&Ordinal::zero()), o("w+3"));
        assert_eq!(Ordinal::nat(2u32).add(&o("w")), o("w"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(o("w+1").mul(&o("w")), o("w^(2)"));
        assert_eq!(o("w+1").mul(&o("2")), o("w*2+1"));
        assert_eq!(o("w^(2)+w").mul(&Ordinal::zero()), Ordinal::zero());
        assert_eq!(o("w").mul(&o("w^(w)")), o("w^(w)"));
    }

    #[test]
    fn pow_examples() {
        assert_eq!(o("w").pow(&o("w")).unwrap(), Ordinal::omega_pow(o("w")));
        assert_eq!(o("2").pow(&o("w")).unwrap(), o("w"));
        assert_eq!(o("w").pow(&Ordinal::zero()).unwrap(), Ordinal::one());
        assert_eq!(o("2").pow(&o("w+3")).unwrap(), o("w*8"));
        assert_eq!(o("3").pow(&o("4")).unwrap(), o("81"));
        assert!(matches!(o("w+1").pow(&o("2")), Err(Error::UnsupportedBase(_))));
    }

    #[test]
    fn sub_left_examples() {
        assert_eq!(o("w^(2)").sub_left(&o("w")).unwrap(), o("w^(2)"));
        assert_eq!(o("w+5").sub_left(&o("w+2")).unwrap(), o("3"));
        assert_eq!(o("w*3").sub_left(&o("w*3")).unwrap(), Ordinal::zero());
        assert_eq!(o("w").sub_left(&o("w+1")), Err(Error::Underflow));
    }

    #[test]
    fn classification() {
        assert!(o("w^(w)").is_tail_like().unwrap());
        assert!(o("1").is_tail_like().unwrap());
        assert!(!o("w*2").is_tail_like().unwrap());
        assert!(Ordinal::zero().is_tail_like().is_err());
        assert_eq!(o("w^(2)+w*3+4").limit_split(), (o("w^(2)+w*3"), BigUint::from(4u32)));
        assert_eq!(o("5").limit_split(), (Ordinal::zero(), BigUint::from(5u32)));
        assert_eq!(o("w").limit_split(), (o("w"), BigUint::zero()));
        assert_eq!(o("w^(2)+w*2").omega_factor().unwrap(), o("w+2"));
        assert_eq!(o("w").omega_factor().unwrap(), o("1"));
        assert_eq!(o("w^(w)").omega_factor().unwrap(), o("w^(w)"));
        assert!(matches!(o("w+1").omega_factor(), Err(Error::NotLimit(_))));
        assert_eq!(o("w+1").next_tail_like(), o("w^(2)"));
        assert_eq!(o("2").next_tail_like(), o("w"));
        assert_eq!(o("w").next_tail_like(), o("w"));
    }

    #[test]
    fn compare() {
        assert!(o("w") < o("w+1"));
        assert!(o("w*2") < o("w^(2)"));
        assert!(OrdLen::Fin(o("w^(w^(w))")) < OrdLen::OmegaMark);
    }

    #[test]
    fn text_round_trip() {
        let v = o("w^(2)*3+w+5");
        assert_eq!(v.terms().len(), 3);
        assert_eq!(v.to_string(), "w^(2)*3+w+5");
        assert_eq!(o("0"), Ordinal::zero());
        assert_eq!(o("w+w^(2)").to_string(), "w^(2)");
        assert_eq!(o(" ( w + 1 ) * 2 ").to_string(), "w*2+1");
        assert_eq!(o("w^(w^(w)+1)").to_string(), "w^(w^(w)+1)");
        let err = "w^2".parse::<Ordinal>().unwrap_err();
        assert_eq!(err, Error::parse(2, "expected '('"));
    }
}
