//! Euclidean realizations of complexes.
//!
//! Coordinates are generic over [`Scalar`](crate::scalar::Scalar): exact
//! kinds decide every predicate by an exact sign, float kinds give
//! approximate angles.

mod acute;
mod dihedral;
mod projection;
mod validate;

pub use acute::{verify_acute, AngleEntry, AngleReport, AngleSummary};
pub use dihedral::{
    dihedral_cosines, dihedral_terms, orient3d, DihedralTerm, TET_EDGES,
};
pub use projection::{
    radial_to_tetra_boundary, stereographic_project, unit_sphere_point, RegularTetra,
};
pub use validate::{verify_geometric_complex, GeometricReport, GeometricWitness, OverlapKind};

use thiserror::Error;
use num_bigint::BigInt;

use crate::complex::{ComplexError, Simplex};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("tetrahedron {0} has zero volume")]
    DegenerateTetrahedron(Simplex),
    #[error("an exact verdict cannot use a positive angle margin ({0} deg)")]
    MarginInExactMode(f64),
    #[error("expected a pure 3-dimensional complex")]
    NotTetrahedral,
    #[error("embedding has {points} points but the complex has {vertices} vertices")]
    SizeMismatch { points: usize, vertices: usize },
    #[error("point coincides with the projection pole")]
    ProjectionPole,
    #[error("ray from the centre misses the target boundary")]
    RayMiss,
}

/// Positions of the vertices `0..n` of a complex in `R^D`.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding<T, const D: usize> {
    pub points: Vec<[T; D]>,
}

impl<T: Scalar, const D: usize> Embedding<T, D> {
    pub fn new(points: Vec<[T; D]>) -> Self {
        Self { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, v: u32) -> &[T; D] {
        &self.points[v as usize]
    }

    pub fn to_f64(&self) -> Embedding<f64, D> {
        Embedding {
            points: self
                .points
                .iter()
                .map(|p| std::array::from_fn(|i| p[i].to_f64_lossy()))
                .collect(),
        }
    }

    pub(crate) fn check_size(&self, vertices: usize) -> Result<(), GeometryError> {
        if self.points.len() != vertices {
            return Err(GeometryError::SizeMismatch {
                points: self.points.len(),
                vertices,
            });
        }
        Ok(())
    }
}

/// Exact integer coordinates for a float embedding: every coordinate is
/// `m·2^e`, so multiplying all of them by `2^-min(e)` loses nothing. The
/// result is a similar copy, which is all that sign predicates see. `None`
/// for non-finite input.
pub fn exact_integer_embedding<const D: usize>(e: &Embedding<f64, D>) -> Option<Embedding<BigInt, D>> {
    use num_traits::Float;
    let parts: Vec<[(u64, i16, i8); D]> = e
        .points
        .iter()
        .map(|p| p.map(|x| x.integer_decode()))
        .collect();
    if e.points.iter().flatten().any(|x| !x.is_finite()) {
        return None;
    }
    let emin = parts
        .iter()
        .flatten()
        .filter(|(m, _, _)| *m != 0)
        .map(|&(_, ex, _)| ex)
        .min()
        .unwrap_or(0);
    let points = parts
        .iter()
        .map(|p| {
            p.map(|(m, ex, sign)| {
                let v = BigInt::from(m) << ((ex - emin).max(0) as usize);
                if m == 0 { BigInt::from(0) } else if sign < 0 { -v } else { v }
            })
        })
        .collect();
    Some(Embedding::new(points))
}

pub(crate) fn sub<T: Scalar>(a: &[T; 3], b: &[T; 3]) -> [T; 3] {
    std::array::from_fn(|i| a[i].clone() - b[i].clone())
}

pub(crate) fn dot<T: Scalar>(a: &[T; 3], b: &[T; 3]) -> T {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

pub(crate) fn cross<T: Scalar>(a: &[T; 3], b: &[T; 3]) -> [T; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

pub(crate) fn det3<T: Scalar>(a: &[T; 3], b: &[T; 3], c: &[T; 3]) -> T {
    dot(a, &cross(b, c))
}

pub(crate) fn neg<T: Scalar>(a: &[T; 3]) -> [T; 3] {
    std::array::from_fn(|i| -a[i].clone())
}

/// Small f64 vector helpers used by the numerical code.
pub mod vec3 {
    pub fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
        [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
    }
    pub fn add(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
        [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
    }
    pub fn scale(a: [f64; 3], s: f64) -> [f64; 3] {
        [a[0] * s, a[1] * s, a[2] * s]
    }
    pub fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }
    pub fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    }
    pub fn norm(a: [f64; 3]) -> f64 {
        dot(a, a).sqrt()
    }
    pub fn lerp(a: [f64; 3], b: [f64; 3], t: f64) -> [f64; 3] {
        add(a, scale(sub(b, a), t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational as Q;

    #[test]
    fn integer_copy_is_an_exact_scaling() {
        let e = Embedding::new(vec![[0.5, 0.25, -3.0], [0.0, 1e-20, 0.1]]);
        let z = exact_integer_embedding(&e).unwrap();
        let k = &z.points[0][1];
        for (p, q) in e.points.iter().zip(&z.points) {
            for i in 0..3 {
                // q / k = p / 0.25
                let lhs = Q::from_integer(q[i].clone()) * Q::from_float(0.25).unwrap();
                let rhs = Q::from_float(p[i]).unwrap() * Q::from_integer(k.clone());
                assert_eq!(lhs, rhs);
            }
        }
        assert!(exact_integer_embedding(&Embedding::new(vec![[f64::NAN, 0.0, 0.0]])).is_none());
    }
}
