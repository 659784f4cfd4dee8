use super::{expect_f, PolytopeError};
use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::geometry::Embedding;
use crate::scalar::QSqrt5;

/// The cube `[-1, 1]³` cut into the regular tetrahedron `T0` on the even
/// corners (vertices `0..4`) and four cube-corner tetrahedra, one at each
/// odd corner (vertices `4..8`, vertex `4 + i` opposite to `i`).
pub fn build_w() -> Result<(SimplicialComplex, Embedding<i128, 3>), PolytopeError> {
    let even: [[i128; 3]; 4] = [[1, 1, 1], [-1, -1, 1], [-1, 1, -1], [1, -1, -1]];
    let mut pts = even.to_vec();
    pts.extend(even.iter().map(|p| p.map(|c| -c)));
    let mut cells = vec![Simplex::from_unsorted([0, 1, 2, 3])];
    for odd in 4..8 {
        let nb = (0..4).filter(|&e| {
            (0..3).filter(|&i| pts[e][i] != pts[odd][i]).count() == 1
        });
        cells.push(Simplex::from_unsorted(
            nb.map(|e| e as VertexId).chain([odd as VertexId]),
        ));
    }
    let k = SimplicialComplex::from_maximal(cells)?;
    expect_f(&k, &[8, 18, 16, 5], "W")?;
    Ok((k, Embedding::new(pts)))
}

/// The octahedron with vertices `±e_i` coned from the origin (vertex 0);
/// vertices `1..7` are `+x, −x, +y, −y, +z, −z`.
pub fn build_y() -> Result<(SimplicialComplex, Embedding<i128, 3>), PolytopeError> {
    let mut pts: Vec<[i128; 3]> = vec![[0, 0, 0]];
    for axis in 0..3 {
        for s in [1, -1] {
            let mut p = [0; 3];
            p[axis] = s;
            pts.push(p);
        }
    }
    let mut cells = Vec::new();
    for x in [1, 2] {
        for y in [3, 4] {
            for z in [5, 6] {
                cells.push(Simplex::from_unsorted([0, x, y, z]));
            }
        }
    }
    let k = SimplicialComplex::from_maximal(cells)?;
    expect_f(&k, &[7, 18, 20, 8], "Y")?;
    Ok((k, Embedding::new(pts)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlatonicSolid {
    Icosahedron,
    Dodecahedron,
}

fn q(n: i64) -> QSqrt5 {
    QSqrt5::from_parts(n, 1, 0, 1)
}

fn dot3(a: &[QSqrt5; 3], b: &[QSqrt5; 3]) -> QSqrt5 {
    (0..3).fold(q(0), |s, i| s + a[i].clone() * b[i].clone())
}

fn dist2(a: &[QSqrt5; 3], b: &[QSqrt5; 3]) -> QSqrt5 {
    let d: [QSqrt5; 3] = std::array::from_fn(|i| a[i].clone() - b[i].clone());
    dot3(&d, &d)
}

/// Cyclic shifts of `(0, ±a, ±b)`.
fn cyclic_family(a: QSqrt5, b: QSqrt5) -> Vec<[QSqrt5; 3]> {
    let mut out = Vec::new();
    for sa in [1, -1] {
        for sb in [1, -1] {
            let base = [q(0), a.clone() * q(sa), b.clone() * q(sb)];
            for shift in 0..3 {
                out.push(std::array::from_fn(|i| base[(i + 3 - shift) % 3].clone()));
            }
        }
    }
    out
}

fn icosahedron() -> Vec<[QSqrt5; 3]> {
    cyclic_family(q(1), QSqrt5::phi())
}

fn dodecahedron() -> Vec<[QSqrt5; 3]> {
    let mut pts = Vec::new();
    for bits in 0..8 {
        pts.push(std::array::from_fn(|i| q(if bits >> i & 1 == 1 { -1 } else { 1 })));
    }
    pts.extend(cyclic_family(QSqrt5::phi() - q(1), QSqrt5::phi()));
    pts
}

fn min_distance_pairs(pts: &[[QSqrt5; 3]]) -> Vec<(usize, usize)> {
    let mut best: Option<QSqrt5> = None;
    let mut pairs = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = dist2(&pts[i], &pts[j]);
            match &best {
                Some(b) if d > *b => {}
                Some(b) if d == *b => pairs.push((i, j)),
                _ => {
                    best = Some(d);
                    pairs = vec![(i, j)];
                }
            }
        }
    }
    pairs
}

/// Cone decompositions from the centre (vertex 0) in exact coordinates.
/// The icosahedron gives one tetrahedron per face. The dodecahedron gives
/// the 120 congruent tetrahedra `(centre, face centre, edge midpoint,
/// vertex)`.
pub fn build_platonic_cones(
    solid: PlatonicSolid,
) -> Result<(SimplicialComplex, Embedding<QSqrt5, 3>), PolytopeError> {
    let origin = [q(0), q(0), q(0)];
    match solid {
        PlatonicSolid::Icosahedron => {
            let v = icosahedron();
            let edges = min_distance_pairs(&v);
            let adj = |a: usize, b: usize| edges.contains(&(a.min(b), a.max(b)));
            let mut cells = Vec::new();
            for &(a, b) in &edges {
                for c in b + 1..v.len() {
                    if adj(a, c) && adj(b, c) {
                        cells.push(Simplex::from_unsorted([0, a as u32 + 1, b as u32 + 1, c as u32 + 1]));
                    }
                }
            }
            let mut pts = vec![origin];
            pts.extend(v);
            let k = SimplicialComplex::from_maximal(cells)?;
            expect_f(&k, &[13, 42, 50, 20], "icosahedron cones")?;
            Ok((k, Embedding::new(pts)))
        }
        PlatonicSolid::Dodecahedron => {
            let v = dodecahedron();
            let edges = min_distance_pairs(&v);
            let mut pts = vec![origin];
            pts.extend(v.iter().cloned());
            let vert_base = 1;
            let face_base = pts.len();
            // face normals point along cyclic shifts of (0, ±φ, ±1); each
            // face is the five vertices maximising the dot product
            let mut faces: Vec<Vec<usize>> = Vec::new();
            for u in cyclic_family(QSqrt5::phi(), q(1)) {
                let dots: Vec<QSqrt5> = v.iter().map(|p| dot3(p, &u)).collect();
                let top = dots.iter().max().expect("vertices").clone();
                let face: Vec<usize> = (0..v.len()).filter(|&i| dots[i] == top).collect();
                if face.len() != 5 {
                    return Err(PolytopeError::Inconsistent("dodecahedron face".into()));
                }
                let centre: [QSqrt5; 3] = std::array::from_fn(|c| {
                    face.iter().fold(q(0), |s, &i| s + v[i][c].clone()) / q(5)
                });
                pts.push(centre);
                faces.push(face);
            }
            let edge_base = pts.len();
            for &(a, b) in &edges {
                pts.push(std::array::from_fn(|c| {
                    (v[a][c].clone() + v[b][c].clone()) / q(2)
                }));
            }
            let mut cells = Vec::new();
            for (fi, face) in faces.iter().enumerate() {
                for (ei, &(a, b)) in edges.iter().enumerate() {
                    if !(face.contains(&a) && face.contains(&b)) {
                        continue;
                    }
                    for end in [a, b] {
                        cells.push(Simplex::from_unsorted([
                            0,
                            (face_base + fi) as VertexId,
                            (edge_base + ei) as VertexId,
                            (vert_base + end) as VertexId,
                        ]));
                    }
                }
            }
            let k = SimplicialComplex::from_maximal(cells)?;
            // centre, 20 vertices, 12 face centres, 30 edge midpoints
            if k.n_vertices() != 63 || k.simplices(3).len() != 120 {
                return Err(PolytopeError::Inconsistent(format!(
                    "dodecahedron cones have f-vector {}",
                    k.f_vector()
                )));
            }
            Ok((k, Embedding::new(pts)))
        }
    }
}
