use std::cmp::Ordering;

use num_rational::BigRational;

use super::{det3, dot, sub, GeometryError};
use crate::complex::Simplex;
use crate::scalar::{RealScalar, Scalar, ToBigRational};

/// Local edges `(i, j)` of a tetrahedron with the opposite pair `(k, l)`.
pub const TET_EDGES: [[usize; 4]; 6] = [
    [0, 1, 2, 3],
    [0, 2, 1, 3],
    [0, 3, 1, 2],
    [1, 2, 0, 3],
    [1, 3, 0, 2],
    [2, 3, 0, 1],
];

/// Signed volume (times 6) of `abcd`.
pub fn orient3d<T: Scalar>(a: &[T; 3], b: &[T; 3], c: &[T; 3], d: &[T; 3]) -> T {
    det3(&sub(b, a), &sub(c, a), &sub(d, a))
}

/// The dihedral cosine along one edge as a fraction with a square root:
/// `cos = numer / sqrt(left · right)`.
///
/// With `e = p_j − p_i`, `u = p_k − p_i`, `v = p_l − p_i`:
/// `numer = |e|²(u·v) − (e·u)(e·v)`, `left = |e×u|²`, `right = |e×v|²`.
/// Both denominators are positive on a non-degenerate tetrahedron, so the
/// sign of `numer` alone decides acuteness.
#[derive(Debug, Clone, PartialEq)]
pub struct DihedralTerm<T> {
    pub edge: [usize; 2],
    pub numer: T,
    pub left: T,
    pub right: T,
}

impl<T: Scalar> DihedralTerm<T> {
    pub fn sign(&self) -> Ordering {
        self.numer
            .partial_cmp(&T::zero())
            .expect("dihedral numerator is comparable")
    }

    pub fn is_acute(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn cos_f64(&self) -> f64 {
        let l = self.left.to_f64_lossy();
        let r = self.right.to_f64_lossy();
        // sqrt(l)·sqrt(r) keeps the product in range for large integers.
        (self.numer.to_f64_lossy() / (l.sqrt() * r.sqrt())).clamp(-1.0, 1.0)
    }

    pub fn angle_deg(&self) -> f64 {
        self.cos_f64().acos().to_degrees()
    }
}

impl<T: Scalar + ToBigRational> DihedralTerm<T> {
    /// `cos²` as an exact rational; the cosine itself is usually irrational.
    pub fn cos_squared(&self) -> BigRational {
        let n = self.numer.to_big_rational();
        &n * &n / (self.left.to_big_rational() * self.right.to_big_rational())
    }
}

/// The six dihedral terms of `p`, in [`TET_EDGES`] order.
pub fn dihedral_terms<T: Scalar>(p: [&[T; 3]; 4]) -> Result<[DihedralTerm<T>; 6], GeometryError> {
    if orient3d(p[0], p[1], p[2], p[3]).is_zero() {
        return Err(GeometryError::DegenerateTetrahedron(
            Simplex::new([0, 1, 2, 3]).expect("distinct"),
        ));
    }
    Ok(TET_EDGES.map(|[i, j, k, l]| {
        let e = sub(p[j], p[i]);
        let u = sub(p[k], p[i]);
        let v = sub(p[l], p[i]);
        let ee = dot(&e, &e);
        let eu = dot(&e, &u);
        let ev = dot(&e, &v);
        DihedralTerm {
            edge: [i, j],
            numer: ee.clone() * dot(&u, &v) - eu.clone() * ev.clone(),
            left: ee.clone() * dot(&u, &u) - eu.clone() * eu,
            right: ee * dot(&v, &v) - ev.clone() * ev,
        }
    }))
}

/// Dihedral cosines in a float type.
pub fn dihedral_cosines<T: RealScalar>(p: [&[T; 3]; 4]) -> Result<[T; 6], GeometryError> {
    let terms = dihedral_terms(p)?;
    Ok(terms.map(|t| t.numer / (t.left.sqrt() * t.right.sqrt())))
}
