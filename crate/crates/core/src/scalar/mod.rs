//! Scalar types used by the geometric layer.
//!
//! Every geometric routine is written once against [`Scalar`]. Float kinds
//! (`f32`, `f64`) give fast approximate answers; exact kinds (`i128`,
//! `BigInt`, [`BigRational`], [`QSqrt5`]) make every sign test decidable.

mod qsqrt5;

pub use qsqrt5::QSqrt5;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Ring of coordinates a geometric predicate can be evaluated over.
pub trait Scalar:
    Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// `true` when arithmetic is exact, so signs of polynomial expressions
    /// in the coordinates are decided without rounding.
    const EXACT: bool;

    /// Name used in serialized embeddings.
    const KIND: ScalarKind;

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("every scalar kind represents small integers")
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// Scalars with a total order and exact arithmetic.
pub trait ExactScalar: Scalar + Ord {}

impl<T: Scalar + Ord> ExactScalar for T {}

/// Floating point scalars.
pub trait RealScalar: Scalar + num_traits::Float {}

impl<T: Scalar + num_traits::Float> RealScalar for T {}

/// Exact conversion into a rational number, used where a ratio of two
/// scalars would overflow the native type.
pub trait ToBigRational {
    fn to_big_rational(&self) -> BigRational;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarKind {
    Int,
    Rational,
    Float,
    /// Elements of Q(sqrt 5); serialized as floats.
    Golden,
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const KIND: ScalarKind = ScalarKind::Float;
}

impl Scalar for f32 {
    const EXACT: bool = false;
    const KIND: ScalarKind = ScalarKind::Float;
}

impl Scalar for i128 {
    const EXACT: bool = true;
    const KIND: ScalarKind = ScalarKind::Int;
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    const KIND: ScalarKind = ScalarKind::Rational;
}

impl Scalar for BigInt {
    const EXACT: bool = true;
    const KIND: ScalarKind = ScalarKind::Int;
}

impl Scalar for QSqrt5 {
    const EXACT: bool = true;
    const KIND: ScalarKind = ScalarKind::Golden;
}

impl ToBigRational for i128 {
    fn to_big_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(*self))
    }
}

impl ToBigRational for BigInt {
    fn to_big_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }
}

impl ToBigRational for BigRational {
    fn to_big_rational(&self) -> BigRational {
        self.clone()
    }
}

/// Parses `"p"` or `"p/q"` into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}
