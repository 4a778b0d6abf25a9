use num::{One, ToPrimitive, Zero};

use super::PolyError;
use crate::Rational;

/// Goodman's lower bound `2x² − x` on the triangle density.
pub fn goodman_g(x: &Rational) -> Rational {
    let two = Rational::from_integer(2.into());
    &two * x * x - x
}

/// The piece index `s >= 1` with `x ∈ [1 − 1/s, 1 − 1/(s+1))`, i.e. `⌊1/(1−x)⌋`.
/// At a breakpoint the right-hand piece is chosen.
pub fn bollobas_piece(x: &Rational) -> Result<u64, PolyError> {
    if *x < Rational::zero() || *x >= Rational::one() {
        return Err(PolyError::OutOfDomain(x.to_string()));
    }
    let r = (Rational::one() / (Rational::one() - x)).floor();
    r.to_integer().to_u64().ok_or_else(|| PolyError::OutOfDomain(x.to_string()))
}

/// Bollobás's piecewise-linear bound: on piece `s` the chord of `g` between
/// `1 − 1/s` and `1 − 1/(s+1)`.
pub fn bollobas_l(x: &Rational) -> Result<Rational, PolyError> {
    let s = Rational::from_integer(bollobas_piece(x)?.into());
    let one = Rational::one();
    let two = &one + &one;
    let three = &two + &one;
    let slope = (&three * &s * &s - &s - &two) / (&s * (&s + &one));
    let offset = &two * (&s - &one) / (&s + &one);
    Ok(slope * x - offset)
}

/// Membership in `{(x, y) ∈ [0,1]² : y ≥ L(x)}`. `L` is extended to `x = 1`
/// by its limit 1.
pub fn in_region_r(x: &Rational, y: &Rational) -> bool {
    let (zero, one) = (Rational::zero(), Rational::one());
    if *x < zero || *x > one || *y < zero || *y > one {
        return false;
    }
    if *x == one {
        return *y == one;
    }
    *y >= bollobas_l(x).expect("x in [0,1)")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn values() {
        assert_eq!(goodman_g(&rat(1, 2)), rat(0, 1));
        assert_eq!(bollobas_l(&rat(1, 2)).unwrap(), rat(0, 1));
        assert_eq!(bollobas_l(&rat(3, 5)).unwrap(), rat(2, 15));
        assert_eq!(goodman_g(&rat(3, 5)), rat(3, 25));
        assert_eq!(bollobas_l(&rat(0, 1)).unwrap(), rat(0, 1));
        assert!(bollobas_l(&rat(1, 1)).is_err());
        assert!(bollobas_l(&rat(-1, 3)).is_err());
    }

    #[test]
    fn breakpoints_agree_with_both_pieces() {
        for s in 1..=20i64 {
            let x = rat(s - 1, s);
            assert_eq!(bollobas_l(&x).unwrap(), goodman_g(&x), "s={s}");
            if s >= 2 {
                // value of piece s-1 at its right endpoint
                let sp = Rational::from_integer((s - 1).into());
                let one = Rational::one();
                let left = (rat(3, 1) * &sp * &sp - &sp - rat(2, 1)) / (&sp * (&sp + &one)) * &x
                    - rat(2, 1) * (&sp - &one) / (&sp + &one);
                assert_eq!(left, goodman_g(&x));
            }
        }
    }

    #[test]
    fn region() {
        assert!(in_region_r(&rat(1, 2), &rat(0, 1)));
        assert!(!in_region_r(&rat(3, 5), &rat(3, 25)));
        assert!(in_region_r(&rat(1, 1), &rat(1, 1)));
        assert!(!in_region_r(&rat(1, 1), &rat(1, 2)));
        assert!(!in_region_r(&rat(1, 2), &rat(-1, 100)));
    }
}
