//! Lifting an increasing map to the doubled order: `t^-` goes to the left
//! limit of `g` at `t` with sign `-`, `t^+` to the right limit with sign `+`.

use super::mono::MonoMap;
use crate::error::{Error, Result};
use crate::lexspace::Sign;
use crate::rat::Rat;
use crate::zerodim::DoublePoint;

/// One-sided limit of `g` at `t` from the side given by `sign`.
pub fn one_sided(g: &MonoMap, t: &Rat, sign: Sign) -> Result<Rat> {
    match sign {
        Sign::Minus => g.left_limit(t),
        Sign::Plus => {
            if g.hi() == Some(t) {
                return Err(Error::OutOfDomain(t.to_string()));
            }
            g.apply(t)
        }
    }
}

pub fn g_doubleprime(g: &MonoMap, t: &Rat, sign: Sign) -> Result<DoublePoint> {
    Ok(DoublePoint::value(one_sided(g, t, sign)?, sign))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::mono::Affine;
    use crate::rat::int;
    use crate::zerodim::double_cmp;
    use std::cmp::Ordering;

    #[test]
    fn limits_at_a_jump() {
        let g = MonoMap::piecewise(None, None, vec![int(0)], vec![Affine::identity(), Affine::new(int(1), int(1))]).unwrap();
        assert_eq!(one_sided(&g, &int(0), Sign::Minus).unwrap(), int(0));
        assert_eq!(one_sided(&g, &int(0), Sign::Plus).unwrap(), int(1));
        let id = MonoMap::identity(None, None);
        assert_eq!(g_doubleprime(&id, &int(3), Sign::Minus).unwrap(), DoublePoint::value(int(3), Sign::Minus));
        let lo = g_doubleprime(&g, &int(0), Sign::Minus).unwrap();
        let hi = g_doubleprime(&g, &int(0), Sign::Plus).unwrap();
        assert_eq!(double_cmp(&lo, &hi).unwrap(), Ordering::Less);
        let bounded = MonoMap::identity(Some(int(0)), Some(int(1)));
        assert!(g_doubleprime(&bounded, &int(0), Sign::Minus).is_err());
        assert!(g_doubleprime(&bounded, &int(1), Sign::Plus).is_err());
    }
}
