use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// An element `a + b·√5` of the quadratic field Q(√5).
///
/// The golden ratio lives here (`φ = 1/2 + √5/2`), so the 600-cell and the
/// icosahedral solids have exact coordinates. Comparisons are exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSqrt5 {
    a: BigRational,
    b: BigRational,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl QSqrt5 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    /// `n/d + (m/e)·√5` from small integers.
    pub fn from_parts(n: i64, d: i64, m: i64, e: i64) -> Self {
        Self::new(rat(n, d), rat(m, e))
    }

    pub fn from_rational(a: BigRational) -> Self {
        Self::new(a, BigRational::zero())
    }

    /// The golden ratio φ = (1 + √5)/2.
    pub fn phi() -> Self {
        Self::from_parts(1, 2, 1, 2)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt5_part(&self) -> &BigRational {
        &self.b
    }

    /// Galois conjugate `a − b·√5`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a² − 5b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(5.into()) * &self.b * &self.b
    }

    fn sign(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (s, Ordering::Equal) | (Ordering::Equal, s) => s,
            (x, y) if x == y => x,
            _ => {
                // Opposite signs: the larger magnitude wins; a² = 5b² is
                // impossible for nonzero rationals.
                let a2 = &self.a * &self.a;
                let b2 = BigRational::from_integer(5.into()) * &self.b * &self.b;
                if a2 > b2 {
                    sa
                } else {
                    sb
                }
            }
        }
    }
}

impl fmt::Debug for QSqrt5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}·√5)", self.a, self.b)
    }
}

impl fmt::Display for QSqrt5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Ord for QSqrt5 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).sign()
    }
}

impl PartialOrd for QSqrt5 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for QSqrt5 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for QSqrt5 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Mul for QSqrt5 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let five = BigRational::from_integer(5.into());
        Self::new(
            &self.a * &rhs.a + five * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

impl Div for QSqrt5 {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let n = rhs.norm();
        assert!(!n.is_zero(), "division by zero in Q(sqrt5)");
        let q = self * rhs.conjugate();
        Self::new(q.a / &n, q.b / n)
    }
}

/// Q(√5) is a field: division is exact and the remainder is always zero.
impl Rem for QSqrt5 {
    type Output = Self;
    fn rem(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "remainder by zero in Q(sqrt5)");
        Self::zero()
    }
}

impl Neg for QSqrt5 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl Zero for QSqrt5 {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QSqrt5 {
    fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }
}

impl Num for QSqrt5 {
    type FromStrRadixErr = num_rational::ParseRatioError;

    /// Parses the rational part only.
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        BigRational::from_str_radix(s, radix).map(Self::from_rational)
    }
}

impl Signed for QSqrt5 {
    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn abs_sub(&self, other: &Self) -> Self {
        if self <= other {
            Self::zero()
        } else {
            self.clone() - other.clone()
        }
    }

    fn signum(&self) -> Self {
        match self.sign() {
            Ordering::Less => -Self::one(),
            Ordering::Equal => Self::zero(),
            Ordering::Greater => Self::one(),
        }
    }

    fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }
}

impl FromPrimitive for QSqrt5 {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Self::from_rational(BigRational::from_integer(n.into())))
    }

    fn from_u64(n: u64) -> Option<Self> {
        Some(Self::from_rational(BigRational::from_integer(n.into())))
    }

    fn from_f64(n: f64) -> Option<Self> {
        BigRational::from_float(n).map(Self::from_rational)
    }
}

impl ToPrimitive for QSqrt5 {
    fn to_i64(&self) -> Option<i64> {
        self.to_f64().and_then(|v| v.trunc().to_i64())
    }

    fn to_u64(&self) -> Option<u64> {
        self.to_f64().and_then(|v| v.trunc().to_u64())
    }

    fn to_f64(&self) -> Option<f64> {
        Some(self.a.to_f64()? + self.b.to_f64()? * 5f64.sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_identities() {
        let phi = QSqrt5::phi();
        // φ² = φ + 1
        assert_eq!(phi.clone() * phi.clone(), phi.clone() + QSqrt5::one());
        // 1/φ = φ − 1
        assert_eq!(QSqrt5::one() / phi.clone(), phi - QSqrt5::one());
    }

    #[test]
    fn ordering_is_exact() {
        // 2.236... vs 9/4
        let s5 = QSqrt5::from_parts(0, 1, 1, 1);
        let nine_quarters = QSqrt5::from_parts(9, 4, 0, 1);
        assert!(s5 < nine_quarters);
        assert!(QSqrt5::from_parts(-2, 1, 1, 1).is_positive());
        assert!(QSqrt5::from_parts(3, 1, -1, 1).is_positive());
        assert!(QSqrt5::from_parts(-3, 1, 1, 1).is_negative());
        assert_eq!(QSqrt5::zero().signum(), QSqrt5::zero());
    }

    #[test]
    fn float_conversion() {
        let phi = QSqrt5::phi().to_f64().unwrap();
        assert!((phi - 1.618_033_988_749_895).abs() < 1e-15);
    }
}
