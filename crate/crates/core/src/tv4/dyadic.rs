use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// The exact number `(a + b√2) / 2^k`.
///
/// Always normalised: `k` is zero or one of `a`, `b` is odd, so equal values
/// have equal representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DyadicSqrt2 {
    a: BigInt,
    b: BigInt,
    k: u32,
}

impl DyadicSqrt2 {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, k: u32) -> Self {
        let mut x = DyadicSqrt2 {
            a: a.into(),
            b: b.into(),
            k,
        };
        x.normalise();
        x
    }

    pub fn zero() -> Self {
        DyadicSqrt2::new(0, 0, 0)
    }

    pub fn one() -> Self {
        DyadicSqrt2::new(1, 0, 0)
    }

    pub fn sqrt2() -> Self {
        DyadicSqrt2::new(0, 1, 0)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        DyadicSqrt2::new(n, 0, 0)
    }

    /// `2^e` for any integer `e`.
    pub fn pow2(e: i64) -> Self {
        if e >= 0 {
            DyadicSqrt2::new(BigInt::one() << e, 0, 0)
        } else {
            DyadicSqrt2::new(1, 0, u32::try_from(-e).expect("exponent fits u32"))
        }
    }

    /// `(s√2)^m` for `s = ±1` and any integer `m`.
    pub fn signed_sqrt2_pow(sign: i8, m: i64) -> Self {
        let half = Integer::div_floor(&m, &2);
        let p = DyadicSqrt2::pow2(half);
        if m.is_even() {
            p
        } else {
            let root = if sign < 0 { -DyadicSqrt2::sqrt2() } else { DyadicSqrt2::sqrt2() };
            root * p
        }
    }

    fn normalise(&mut self) {
        if self.a.is_zero() && self.b.is_zero() {
            self.k = 0;
            return;
        }
        while self.k > 0 && self.a.is_even() && self.b.is_even() {
            self.a >>= 1;
            self.b >>= 1;
            self.k -= 1;
        }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.k == 0
    }

    /// Multiplication by `2^e`.
    pub fn scale_pow2(&self, e: i64) -> Self {
        if e >= 0 {
            DyadicSqrt2::new(&self.a << e, &self.b << e, self.k)
        } else {
            let k = self.k + u32::try_from(-e).expect("exponent fits u32");
            DyadicSqrt2::new(self.a.clone(), self.b.clone(), k)
        }
    }

    /// Conjugate `√2 ↦ −√2`.
    pub fn conjugate(&self) -> Self {
        DyadicSqrt2::new(self.a.clone(), -&self.b, self.k)
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        (a + b * std::f64::consts::SQRT_2) / 2f64.powi(self.k as i32)
    }

    fn aligned(&self, k: u32) -> (BigInt, BigInt) {
        let shift = k - self.k;
        (&self.a << shift, &self.b << shift)
    }
}

impl Default for DyadicSqrt2 {
    fn default() -> Self {
        DyadicSqrt2::zero()
    }
}

impl Add<&DyadicSqrt2> for &DyadicSqrt2 {
    type Output = DyadicSqrt2;
    fn add(self, rhs: &DyadicSqrt2) -> DyadicSqrt2 {
        let k = self.k.max(rhs.k);
        let (a1, b1) = self.aligned(k);
        let (a2, b2) = rhs.aligned(k);
        DyadicSqrt2::new(a1 + a2, b1 + b2, k)
    }
}

impl Add for DyadicSqrt2 {
    type Output = DyadicSqrt2;
    fn add(self, rhs: DyadicSqrt2) -> DyadicSqrt2 {
        &self + &rhs
    }
}

impl AddAssign<&DyadicSqrt2> for DyadicSqrt2 {
    fn add_assign(&mut self, rhs: &DyadicSqrt2) {
        *self = &*self + rhs;
    }
}

impl Neg for DyadicSqrt2 {
    type Output = DyadicSqrt2;
    fn neg(self) -> DyadicSqrt2 {
        DyadicSqrt2 {
            a: -self.a,
            b: -self.b,
            k: self.k,
        }
    }
}

impl Sub for DyadicSqrt2 {
    type Output = DyadicSqrt2;
    fn sub(self, rhs: DyadicSqrt2) -> DyadicSqrt2 {
        self + (-rhs)
    }
}

impl Mul<&DyadicSqrt2> for &DyadicSqrt2 {
    type Output = DyadicSqrt2;
    fn mul(self, rhs: &DyadicSqrt2) -> DyadicSqrt2 {
        let a = &self.a * &rhs.a + ((&self.b * &rhs.b) << 1);
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        DyadicSqrt2::new(a, b, self.k + rhs.k)
    }
}

impl Mul for DyadicSqrt2 {
    type Output = DyadicSqrt2;
    fn mul(self, rhs: DyadicSqrt2) -> DyadicSqrt2 {
        &self * &rhs
    }
}

impl Sum for DyadicSqrt2 {
    fn sum<I: Iterator<Item = DyadicSqrt2>>(iter: I) -> Self {
        iter.fold(DyadicSqrt2::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a DyadicSqrt2> for DyadicSqrt2 {
    fn sum<I: Iterator<Item = &'a DyadicSqrt2>>(iter: I) -> Self {
        iter.fold(DyadicSqrt2::zero(), |acc, x| &acc + x)
    }
}

impl fmt::Debug for DyadicSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DyadicSqrt2({self})")
    }
}

/// Renders as `a`, `b√2`, `a + b√2` or `(a + b√2)/2^k`.
impl fmt::Display for DyadicSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let numerator = match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => self.a.to_string(),
            (true, false) => format!("{}√2", self.b),
            (false, false) if self.b.is_negative() => format!("{} - {}√2", self.a, self.b.abs()),
            (false, false) => format!("{} + {}√2", self.a, self.b),
        };
        match self.k {
            0 => f.write_str(&numerator),
            k if !self.a.is_zero() && !self.b.is_zero() => write!(f, "({numerator})/2^{k}"),
            k => write!(f, "{numerator}/2^{k}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(a: i64, b: i64, k: u32) -> DyadicSqrt2 {
        DyadicSqrt2::new(a, b, k)
    }

    #[test]
    fn square_of_both_roots_is_two() {
        for s in [-1i8, 1] {
            let z = DyadicSqrt2::signed_sqrt2_pow(s, 1);
            assert_eq!(&z * &z, DyadicSqrt2::from_int(2));
            let inv = DyadicSqrt2::signed_sqrt2_pow(s, -1);
            assert!((&z * &inv).is_one());
        }
    }

    #[test]
    fn normalisation_is_canonical() {
        assert_eq!(d(4, 2, 1), d(2, 1, 0));
        assert_eq!(d(0, 0, 7), DyadicSqrt2::zero());
        assert_eq!(d(6, 4, 3).k(), 2);
        assert_eq!(d(1, 0, 2) + d(3, 0, 2), DyadicSqrt2::one());
    }

    #[test]
    fn powers_of_signed_root() {
        assert_eq!(DyadicSqrt2::signed_sqrt2_pow(-1, 3), d(0, -2, 0));
        assert_eq!(DyadicSqrt2::signed_sqrt2_pow(1, -3), d(0, 1, 2));
        assert_eq!(DyadicSqrt2::signed_sqrt2_pow(-1, -2), d(1, 0, 1));
        assert_eq!(DyadicSqrt2::signed_sqrt2_pow(1, 0), DyadicSqrt2::one());
    }

    #[test]
    fn display_forms() {
        assert_eq!(d(3, 0, 0).to_string(), "3");
        assert_eq!(d(0, -1, 0).to_string(), "-1√2");
        assert_eq!(d(1, -1, 1).to_string(), "(1 - 1√2)/2^1");
        assert_eq!(d(1, 0, 2).to_string(), "1/2^2");
    }

    proptest! {
        #[test]
        fn ring_laws_hold(a in -50i64..50, b in -50i64..50, k in 0u32..5,
                          c in -50i64..50, e in -50i64..50, l in 0u32..5) {
            let x = d(a, b, k);
            let y = d(c, e, l);
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!((&x + &y) - y.clone(), x.clone());
            let fx = x.to_f64() * y.to_f64();
            prop_assert!(((&x * &y).to_f64() - fx).abs() < 1e-9 * (1.0 + fx.abs()));
            prop_assert_eq!(x.conjugate().conjugate(), x.clone());
            prop_assert_eq!(x.scale_pow2(3).scale_pow2(-3), x);
        }
    }
}
