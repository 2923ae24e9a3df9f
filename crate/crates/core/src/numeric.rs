//! Exact number helpers: rational parsing/formatting, rounding, and a
//! square-root-of-rational type used for quantities like Euclidean norms
//! and inclusion factors that must be compared without rounding.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parse "p/q", "p", or a JSON-style number string into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.trim().parse().ok()?;
        let den: BigInt = q.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Rat::new(num, den));
    }
    if let Ok(n) = s.parse::<BigInt>() {
        return Some(Rat::from_integer(n));
    }
    // Decimal literal, e.g. "2.5" -> 5/2, kept exact.
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let sign = if int_part.starts_with('-') { -1 } else { 1 };
        let int_val: BigInt = if int_part.is_empty() || int_part == "-" {
            BigInt::zero()
        } else {
            int_part.parse().ok()?
        };
        if frac_part.is_empty() {
            return Some(Rat::from_integer(int_val));
        }
        let frac_num: BigInt = frac_part.parse().ok()?;
        if frac_num.sign() == Sign::Minus {
            return None;
        }
        let den = BigInt::from(10u32).pow(frac_part.len() as u32);
        let abs = Rat::from_integer(int_val.abs()) + Rat::new(frac_num, den);
        return Some(if sign < 0 { -abs } else { abs });
    }
    None
}

/// Format as "p/q", or just "p" for integers.
pub fn format_rational(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of truncated parts for huge operands.
        let n = r.numer().to_f64().unwrap_or(f64::MAX);
        let d = r.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

/// Round to the nearest integer, halves away from floor (deterministic).
pub fn round_nearest(r: &Rat) -> BigInt {
    (r + rat(1, 2)).floor().to_integer()
}

pub fn rat_floor(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// via continued fractions. Recovers clean fractions (1/5, 3/2, ...) from
/// their float images exactly.
pub fn rationalize(x: f64, max_den: u64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    if x == 0.0 {
        return Some(Rat::zero());
    }
    let neg = x < 0.0;
    let mut v = x.abs();
    // Convergents p/q of the continued fraction of v.
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let bound = BigInt::from(max_den);
    for _ in 0..64 {
        let a = v.floor();
        if !a.is_finite() || a >= 9.0e18 {
            break;
        }
        let ai = BigInt::from(a as i128);
        let p2 = &ai * &p1 + &p0;
        let q2 = &ai * &q1 + &q0;
        if q2 > bound {
            break;
        }
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let frac = v - a;
        if frac < 1e-15 * v.max(1.0) {
            break;
        }
        v = 1.0 / frac;
    }
    if q1.is_zero() {
        return None;
    }
    let r = Rat::new(p1, q1);
    Some(if neg { -r } else { r })
}

/// Exact rational from a float's binary expansion (no approximation).
pub fn rat_from_f64_exact(x: f64) -> Option<Rat> {
    Rat::from_float(x)
}

/// Floor of sqrt(n) for n >= 0.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative");
    num_integer::Roots::sqrt(n)
}

/// Largest integer z with z <= c + sqrt(q), q >= 0. Exact.
pub fn floor_add_sqrt(c: &Rat, q: &Rat) -> BigInt {
    assert!(!q.is_negative());
    let guess = rat_to_f64(c) + rat_to_f64(q).max(0.0).sqrt();
    let mut z = BigInt::from(guess.floor() as i128);
    let le = |z: &BigInt| -> bool {
        // z <= c + sqrt(q)  <=>  z - c <= sqrt(q)
        let d = Rat::from_integer(z.clone()) - c;
        if d.is_negative() || d.is_zero() {
            true
        } else {
            &d * &d <= *q
        }
    };
    while !le(&z) {
        z -= 1;
    }
    while le(&(&z + 1)) {
        z += 1;
    }
    z
}

/// Smallest integer z with z >= c - sqrt(q), q >= 0. Exact.
pub fn ceil_sub_sqrt(c: &Rat, q: &Rat) -> BigInt {
    -floor_add_sqrt(&(-c), q)
}

/// An exact nonnegative real stored as its rational square, so products,
/// quotients, powers, and comparisons stay exact even when the value itself
/// is irrational (e.g. Euclidean norms of rational vectors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqrtRational {
    square: Rat,
}

impl SqrtRational {
    pub fn from_square(square: Rat) -> Self {
        assert!(!square.is_negative(), "negative square");
        SqrtRational { square }
    }

    /// Embed a nonnegative rational r as sqrt(r^2).
    pub fn from_ratio(r: Rat) -> Self {
        assert!(!r.is_negative(), "SqrtRational::from_ratio of negative");
        SqrtRational { square: &r * &r }
    }

    pub fn from_int(n: u64) -> Self {
        Self::from_ratio(Rat::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        SqrtRational {
            square: Rat::zero(),
        }
    }

    pub fn one() -> Self {
        SqrtRational { square: Rat::one() }
    }

    pub fn square(&self) -> &Rat {
        &self.square
    }

    pub fn is_zero(&self) -> bool {
        self.square.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        SqrtRational {
            square: &self.square * &other.square,
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.square.is_zero(), "division by zero");
        SqrtRational {
            square: &self.square / &other.square,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut sq = Rat::one();
        for _ in 0..k {
            sq *= &self.square;
        }
        SqrtRational { square: sq }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.square.is_zero());
        SqrtRational {
            square: self.square.recip(),
        }
    }

    /// floor(sqrt(square)), exact via integer square roots.
    pub fn floor(&self) -> BigInt {
        // floor(sqrt(p/q)) = floor(sqrt(floor(p/q)))? Not in general; use
        // the largest k with k^2 * q <= p.
        let p = self.square.numer();
        let q = self.square.denom();
        let mut k = isqrt(&(p / q));
        while &(&k * &k) * q > *p {
            k -= 1;
        }
        while &(&(&k + 1) * &(&k + 1)) * q <= *p {
            k += 1;
        }
        k
    }

    /// The exact rational square root, when one exists.
    pub fn exact_sqrt(&self) -> Option<Rat> {
        let pn = isqrt(self.square.numer());
        let pd = isqrt(self.square.denom());
        if &(&pn * &pn) == self.square.numer() && &(&pd * &pd) == self.square.denom() {
            Some(Rat::new(pn, pd))
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.square).sqrt()
    }
}

impl PartialOrd for SqrtRational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SqrtRational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Both values are nonnegative, so comparing squares is exact.
        self.square.cmp(&other.square)
    }
}

/// gcd of a slice of integers (nonnegative result; 0 for all-zero input).
pub fn gcd_all(values: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for v in values {
        g = g.gcd(v);
    }
    g
}

/// lcm of the denominators of a slice of rationals.
pub fn lcm_denoms(values: &[Rat]) -> BigInt {
    let mut l = BigInt::one();
    for v in values {
        l = l.lcm(v.denom());
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/4"), Some(rat(3, 4)));
        assert_eq!(parse_rational("-7"), Some(rat_int(-7)));
        assert_eq!(parse_rational("2.5"), Some(rat(5, 2)));
        assert_eq!(parse_rational("-0.25"), Some(rat(-1, 4)));
        assert_eq!(format_rational(&rat(3, 4)), "3/4");
        assert_eq!(format_rational(&rat_int(-7)), "-7");
        assert!(parse_rational("1/0").is_none());
    }

    #[test]
    fn rounding() {
        assert_eq!(round_nearest(&rat(1, 2)), BigInt::from(1));
        assert_eq!(round_nearest(&rat(-1, 2)), BigInt::from(0));
        assert_eq!(round_nearest(&rat(7, 3)), BigInt::from(2));
        assert_eq!(round_nearest(&rat(-7, 3)), BigInt::from(-2));
    }

    #[test]
    fn rationalize_recovers_clean_fractions() {
        assert_eq!(rationalize(0.2, 1_000_000), Some(rat(1, 5)));
        assert_eq!(rationalize(1.5, 1_000_000), Some(rat(3, 2)));
        assert_eq!(rationalize(-0.125, 1_000_000), Some(rat(-1, 8)));
        let r = rationalize(std::f64::consts::SQRT_2, 1_000_000_000).unwrap();
        assert!((rat_to_f64(&r) - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn sqrt_rational_compare_and_floor() {
        let two = SqrtRational::from_square(rat_int(2));
        let one_and_half = SqrtRational::from_ratio(rat(3, 2));
        assert!(two < one_and_half); // sqrt(2) < 1.5 since 2 < 9/4
        assert_eq!(two.floor(), BigInt::from(1));
        assert_eq!(
            SqrtRational::from_square(rat_int(9)).exact_sqrt(),
            Some(rat_int(3))
        );
        assert_eq!(SqrtRational::from_square(rat_int(2)).exact_sqrt(), None);
        assert_eq!(
            SqrtRational::from_square(rat(25, 4)).floor(),
            BigInt::from(2)
        );
    }

    #[test]
    fn sqrt_bound_helpers() {
        // floor(1/2 + sqrt(2)) = floor(1.914..) = 1
        assert_eq!(floor_add_sqrt(&rat(1, 2), &rat_int(2)), BigInt::from(1));
        // ceil(1/2 - sqrt(2)) = ceil(-0.914..) = 0
        assert_eq!(ceil_sub_sqrt(&rat(1, 2), &rat_int(2)), BigInt::from(0));
        assert_eq!(floor_add_sqrt(&rat_int(0), &rat_int(4)), BigInt::from(2));
        assert_eq!(ceil_sub_sqrt(&rat_int(0), &rat_int(4)), BigInt::from(-2));
    }
}
