//! The 600-cell, the ball `X543` cut out of it, and the subdivision of
//! tetrahedral complexes that replaces every cell by a copy of `X543`.

mod solids;
mod subdivision;
mod template;

pub use solids::{build_platonic_cones, build_w, build_y, PlatonicSolid};
pub use subdivision::{special_subdivision, SubdivisionMap, VertexOrigin};
pub use template::{face_template, x543_template, TemplateRole, X543Template};

use thiserror::Error;

use crate::complex::{
    complex_from_edges, ComplexError, FVector, Simplex, SimplicialComplex, SubComplex, VertexId,
};
use crate::geometry::Embedding;
use crate::scalar::QSqrt5;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolytopeError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("simplex {0} is not a cell of the complex")]
    SimplexNotFound(Simplex),
    #[error("special subdivision needs dimension at most 3, got {0}")]
    DimensionTooHigh(usize),
    #[error("unexpected structure: {0}")]
    Inconsistent(String),
}

fn half(n: i64) -> QSqrt5 {
    QSqrt5::from_parts(n, 2, 0, 1)
}

fn even_permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    p.iter().for_each(|&i| seen[i] = true);
                    if !seen.iter().all(|&s| s) {
                        continue;
                    }
                    let inv = (0..4)
                        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                        .filter(|&(i, j)| p[i] > p[j])
                        .count();
                    if inv % 2 == 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// The 120 unit icosians in lexicographic order.
fn icosians() -> Vec<[QSqrt5; 4]> {
    let zero = || QSqrt5::from_parts(0, 1, 0, 1);
    let mut pts: Vec<[QSqrt5; 4]> = Vec::with_capacity(120);
    for i in 0..4 {
        for s in [1, -1] {
            let mut p = std::array::from_fn(|_| zero());
            p[i] = QSqrt5::from_parts(s, 1, 0, 1);
            pts.push(p);
        }
    }
    for bits in 0..16 {
        pts.push(std::array::from_fn(|i| half(if bits >> i & 1 == 1 { -1 } else { 1 })));
    }
    // ½(φ, 1, 1/φ, 0) with 1/φ = φ − 1
    let base = [
        QSqrt5::from_parts(1, 4, 1, 4),
        half(1),
        QSqrt5::from_parts(-1, 4, 1, 4),
        zero(),
    ];
    for p in even_permutations() {
        for bits in 0..8 {
            let mut v: [QSqrt5; 4] = std::array::from_fn(|_| zero());
            for i in 0..4 {
                let mut c = base[i].clone();
                if i < 3 && bits >> i & 1 == 1 {
                    c = -c;
                }
                v[p[i]] = c;
            }
            pts.push(v);
        }
    }
    pts.sort();
    pts.dedup();
    pts
}

fn dot4(a: &[QSqrt5; 4], b: &[QSqrt5; 4]) -> QSqrt5 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() * y.clone())
        .fold(QSqrt5::from_parts(0, 1, 0, 1), |s, t| s + t)
}

/// The boundary complex of the 600-cell with its vertices on the unit
/// 3-sphere, in exact coordinates. Vertices are the unit icosians sorted
/// lexicographically; edges join vertices at distance `1/φ`.
pub fn generate_600_cell() -> Result<(SimplicialComplex, Embedding<QSqrt5, 4>), PolytopeError> {
    let pts = icosians();
    // |p − q|² = 1/φ² on the unit sphere means p·q = φ/2.
    let edge_dot = QSqrt5::from_parts(1, 4, 1, 4);
    let mut edges = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if dot4(&pts[i], &pts[j]) == edge_dot {
                edges.push([i as VertexId, j as VertexId]);
            }
        }
    }
    let k = complex_from_edges(pts.len(), &edges)?;
    expect_f(&k, &[120, 720, 1200, 600], "600-cell")?;
    Ok((k, Embedding::new(pts)))
}

pub(crate) fn expect_f(k: &SimplicialComplex, f: &[usize], what: &str) -> Result<(), PolytopeError> {
    if k.f_vector() != FVector(f.to_vec()) {
        return Err(PolytopeError::Inconsistent(format!(
            "{what} has f-vector {}, expected {:?}",
            k.f_vector(),
            f
        )));
    }
    Ok(())
}

/// Everything in `x600` sharing no vertex with `fixed_tet`, relabelled
/// densely (`vertex_map` points back into `x600`).
pub fn extract_x543(x600: &SimplicialComplex, fixed_tet: &Simplex) -> Result<SubComplex, PolytopeError> {
    if fixed_tet.dim() != 3 || !x600.contains(fixed_tet) {
        return Err(PolytopeError::SimplexNotFound(fixed_tet.clone()));
    }
    let cells = x600
        .simplices(3)
        .iter()
        .filter(|t| t.is_disjoint(fixed_tet))
        .cloned();
    let sub = SubComplex::from_parent_simplices(cells);
    expect_f(&sub.complex, &[116, 678, 1106, 543], "X543")?;
    Ok(sub)
}

/// Checks the structural facts about `X543` used by the construction:
/// boundary a 2-sphere with f = (22, 60, 40), flag, no empty square, rich.
pub fn check_x543_good(x: &SimplicialComplex) -> Result<(), PolytopeError> {
    let bd = x.boundary_complex()?.complex;
    expect_f(&bd, &[22, 60, 40], "boundary of X543")?;
    if let Some(w) = x.flag_witness() {
        return Err(PolytopeError::Inconsistent(format!("missing clique {w}")));
    }
    if let Some(sq) = x.find_empty_square() {
        return Err(PolytopeError::Inconsistent(format!("empty square {sq:?}")));
    }
    if !x.is_rich() {
        return Err(PolytopeError::Inconsistent("X543 is not rich".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn icosians_are_unit() {
        let pts = icosians();
        assert_eq!(pts.len(), 120);
        let one = QSqrt5::from_parts(1, 1, 0, 1);
        assert!(pts.iter().all(|p| dot4(p, p) == one));
        assert_eq!(even_permutations().len(), 12);
    }

    #[test]
    fn cell600_counts_and_links() {
        let (k, _) = generate_600_cell().unwrap();
        assert_eq!(k.f_vector().as_slice(), &[120, 720, 1200, 600]);
        assert_eq!(k.euler_characteristic(), 0);
        for v in 0..120 {
            let l = k.link(&Simplex::vertex(v)).unwrap().complex;
            assert_eq!(l.f_vector().as_slice(), &[12, 30, 20]);
        }
        for e in k.simplices(1) {
            assert_eq!(k.codim2_link_cycle(e).unwrap(), 5);
        }
    }

    #[test]
    fn extraction_needs_a_cell() {
        let (k, _) = generate_600_cell().unwrap();
        let tri = k.simplices(2)[0].clone();
        assert!(matches!(extract_x543(&k, &tri), Err(PolytopeError::SimplexNotFound(_))));
    }
}
