//! The two published 116-vertex integer realizations of `X543` (on the
//! regular tetrahedron `T0` and the standard tetrahedron `T1`) and the
//! acute cube and octahedron meshes assembled from them.

mod data;

use std::collections::{HashMap, HashSet};

use serde_json::json;
use thiserror::Error;

use crate::complex::{complex_from_edges, ComplexError, Simplex, SimplicialComplex, VertexId};
use crate::geometry::{orient3d, verify_acute, AngleReport, Embedding, GeometryError};

/// Side of the cube in the published coordinates.
pub const CUBE_SIDE: i64 = 60000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AppendixError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("reconstruction has {found} {what}, expected {expected}")]
    ReconstructionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("copies {a} and {b} disagree on their common face at {point:?}")]
    BoundaryMismatch { a: usize, b: usize, point: [i64; 3] },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reference {
    /// Regular tetrahedron on the even corners of the cube.
    T0,
    /// Standard tetrahedron with its right-angled corner at the origin.
    T1,
}

impl Reference {
    pub fn name(self) -> &'static str {
        match self {
            Reference::T0 => "t0",
            Reference::T1 => "t1",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceMesh {
    pub which: Reference,
    pub points: Vec<[i64; 3]>,
    pub edges: Vec<[VertexId; 2]>,
}

impl ReferenceMesh {
    /// `{"points": [[x, y, z], …], "edges": [[i, j], …]}`
    pub fn to_json(&self) -> serde_json::Value {
        json!({ "edges": self.edges, "points": self.points })
    }
}

/// Vertices `0..4` are the corners, `4..10` split the edges, `10..22` lie
/// inside the faces and `22..116` are interior.
pub fn load_reference(which: Reference) -> ReferenceMesh {
    let table = match which {
        Reference::T0 => &data::T0,
        Reference::T1 => &data::T1,
    };
    ReferenceMesh {
        which,
        points: table.to_vec(),
        edges: data::EDGES.to_vec(),
    }
}

/// The flag completion of the edge list with the table's coordinates.
pub fn reconstruct(
    mesh: &ReferenceMesh,
) -> Result<(SimplicialComplex, Embedding<i128, 3>), AppendixError> {
    let k = complex_from_edges(mesh.points.len(), &mesh.edges)?;
    let tets = k.simplices(3).len();
    if tets != 543 {
        return Err(AppendixError::ReconstructionMismatch {
            what: "tetrahedra",
            expected: 543,
            found: tets,
        });
    }
    let emb = Embedding::new(mesh.points.iter().map(|p| p.map(i128::from)).collect());
    Ok((k, emb))
}

/// Exact acuteness of one published mesh.
pub fn verify_reference(which: Reference) -> Result<AngleReport, AppendixError> {
    let (k, emb) = reconstruct(&load_reference(which))?;
    Ok(verify_acute(&k, &emb, 0.0)?)
}

/// An isometry of `Z³` of the form `p ↦ (s_i p_{σ(i)} + t_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    pub perm: [usize; 3],
    pub signs: [i64; 3],
    pub shift: [i64; 3],
}

impl SignedPermutation {
    pub fn identity() -> Self {
        Self {
            perm: [0, 1, 2],
            signs: [1, 1, 1],
            shift: [0, 0, 0],
        }
    }

    pub fn apply(&self, p: [i64; 3]) -> [i64; 3] {
        std::array::from_fn(|i| self.signs[i] * p[self.perm[i]] + self.shift[i])
    }

    /// `+1` for rotations, `−1` for orientation-reversing maps.
    pub fn parity(&self) -> i64 {
        let inversions = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .filter(|&(i, j)| self.perm[i] > self.perm[j])
            .count();
        let sp = if inversions % 2 == 0 { 1 } else { -1 };
        sp * self.signs.iter().product::<i64>()
    }
}

/// A mesh glued from placed copies of the published tables.
#[derive(Debug, Clone)]
pub struct Assembly {
    pub complex: SimplicialComplex,
    pub embedding: Embedding<i128, 3>,
    /// For each copy: which table, the placement, and local → global ids.
    pub copies: Vec<(Reference, SignedPermutation, Vec<VertexId>)>,
}

impl Assembly {
    /// Parities of the placements, in copy order.
    pub fn orientation_pattern(&self) -> Vec<i64> {
        self.copies.iter().map(|(_, g, _)| g.parity()).collect()
    }

    /// Signed permutations of the bounding box that carry the mesh onto
    /// itself, split into (rotations, reflections).
    pub fn symmetries(&self) -> (Vec<SignedPermutation>, Vec<SignedPermutation>) {
        let pts: Vec<[i64; 3]> = self
            .embedding
            .points
            .iter()
            .map(|p| p.map(|c| c as i64))
            .collect();
        let lo: [i64; 3] = std::array::from_fn(|i| pts.iter().map(|p| p[i]).min().unwrap_or(0));
        let hi: [i64; 3] = std::array::from_fn(|i| pts.iter().map(|p| p[i]).max().unwrap_or(0));
        let index: HashMap<[i64; 3], VertexId> =
            pts.iter().enumerate().map(|(i, p)| (*p, i as VertexId)).collect();
        let tets: HashSet<&Simplex> = self.complex.simplices(3).iter().collect();
        let mut rot = Vec::new();
        let mut refl = Vec::new();
        for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            for bits in 0..8 {
                let signs: [i64; 3] = std::array::from_fn(|i| if bits >> i & 1 == 1 { -1 } else { 1 });
                // fix the box: x_i ↦ lo_i + hi_i − x_{σ(i)} when flipped
                let shift = std::array::from_fn(|i| {
                    if signs[i] < 0 {
                        lo[perm[i]] + hi[perm[i]]
                    } else {
                        0
                    }
                });
                let g = SignedPermutation { perm, signs, shift };
                let Some(map): Option<Vec<VertexId>> =
                    pts.iter().map(|p| index.get(&g.apply(*p)).copied()).collect()
                else {
                    continue;
                };
                let ok = tets.iter().all(|t| {
                    tets.contains(&Simplex::from_unsorted(t.iter().map(|v| map[v as usize])))
                });
                if ok {
                    if g.parity() > 0 {
                        rot.push(g);
                    } else {
                        refl.push(g);
                    }
                }
            }
        }
        (rot, refl)
    }
}

/// Points of `pts` in the closed face of the tetrahedron `corners`
/// spanned by the corners in `face`.
fn points_in_face(pts: &[[i64; 3]], corners: &[[i64; 3]; 4], face: &[usize]) -> Vec<[i64; 3]> {
    let wide = |p: &[i64; 3]| p.map(i128::from);
    let c: Vec<[i128; 3]> = corners.iter().map(wide).collect();
    let mut out: Vec<[i64; 3]> = pts
        .iter()
        .filter(|p| {
            (0..4).filter(|i| !face.contains(i)).all(|opp| {
                let f: Vec<&[i128; 3]> = (0..4).filter(|&j| j != opp).map(|j| &c[j]).collect();
                orient3d(f[0], f[1], f[2], &wide(p)) == 0
            })
        })
        .copied()
        .collect();
    out.sort_unstable();
    out
}

fn glue(pieces: Vec<(&ReferenceMesh, SignedPermutation)>) -> Result<Assembly, AppendixError> {
    let complexes: Vec<SimplicialComplex> = pieces
        .iter()
        .map(|(m, _)| reconstruct(m).map(|(k, _)| k))
        .collect::<Result<_, _>>()?;

    let placed: Vec<Vec<[i64; 3]>> = pieces
        .iter()
        .map(|(m, g)| m.points.iter().map(|p| g.apply(*p)).collect())
        .collect();
    let corners: Vec<[[i64; 3]; 4]> = placed.iter().map(|p| [p[0], p[1], p[2], p[3]]).collect();

    // Copies touching along a common face of the coarse dissection must
    // carry the same points on it.
    for a in 0..pieces.len() {
        for b in a + 1..pieces.len() {
            let shared: Vec<usize> = (0..4).filter(|&i| corners[b].contains(&corners[a][i])).collect();
            if shared.is_empty() {
                continue;
            }
            let shared_b: Vec<usize> = (0..4).filter(|&j| corners[a].contains(&corners[b][j])).collect();
            let pa = points_in_face(&placed[a], &corners[a], &shared);
            let pb = points_in_face(&placed[b], &corners[b], &shared_b);
            if pa != pb {
                let point = pa
                    .iter()
                    .find(|p| !pb.contains(p))
                    .or_else(|| pb.iter().find(|p| !pa.contains(p)))
                    .copied()
                    .unwrap_or(corners[a][shared[0]]);
                return Err(AppendixError::BoundaryMismatch { a, b, point });
            }
        }
    }

    let mut index: HashMap<[i64; 3], VertexId> = HashMap::new();
    let mut points: Vec<[i128; 3]> = Vec::new();
    let mut cells: Vec<Simplex> = Vec::new();
    let mut copies = Vec::new();
    for (((m, g), pts), k) in pieces.into_iter().zip(&placed).zip(&complexes) {
        let ids: Vec<VertexId> = pts
            .iter()
            .map(|p| {
                *index.entry(*p).or_insert_with(|| {
                    points.push(p.map(i128::from));
                    (points.len() - 1) as VertexId
                })
            })
            .collect();
        cells.extend(
            k.simplices(3)
                .iter()
                .map(|t| Simplex::from_unsorted(t.iter().map(|v| ids[v as usize]))),
        );
        copies.push((m.which, g, ids));
    }
    let complex = SimplicialComplex::from_maximal(cells)?;
    Ok(Assembly {
        complex,
        embedding: Embedding::new(points),
        copies,
    })
}

/// The cube `[0, 60000]³`: the `T0` table plus four copies of `T1`, placed
/// by the identity and the half-turns about the axes through the centre.
pub fn assemble_cube() -> Result<Assembly, AppendixError> {
    let s = CUBE_SIDE;
    let half_turn = |axis: usize| {
        let mut signs = [-1, -1, -1];
        let mut shift = [s, s, s];
        signs[axis] = 1;
        shift[axis] = 0;
        SignedPermutation {
            perm: [0, 1, 2],
            signs,
            shift,
        }
    };
    let t0 = load_reference(Reference::T0);
    let t1 = load_reference(Reference::T1);
    let mut pieces = vec![(&t0, SignedPermutation::identity())];
    pieces.push((&t1, SignedPermutation::identity()));
    pieces.extend((0..3).map(|axis| (&t1, half_turn(axis))));
    glue(pieces)
}

/// The octahedron `|x| + |y| + |z| ≤ 60000`: one copy of `T1` per octant,
/// placed by coordinate sign changes.
pub fn assemble_octahedron() -> Result<Assembly, AppendixError> {
    let t1 = load_reference(Reference::T1);
    let pieces = (0..8)
        .map(|bits| {
            let signs = std::array::from_fn(|i| if bits >> i & 1 == 1 { -1 } else { 1 });
            (
                &t1,
                SignedPermutation {
                    perm: [0, 1, 2],
                    signs,
                    shift: [0, 0, 0],
                },
            )
        })
        .collect();
    glue(pieces)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_rows() {
        let t0 = load_reference(Reference::T0);
        let t1 = load_reference(Reference::T1);
        assert_eq!(t0.points[0], [60000, 0, 0]);
        assert_eq!(t1.points[3], [0, 60000, 0]);
        assert_eq!(t0.points[115], [30000, 33159, 30000]);
        assert_eq!(t0.edges, t1.edges);
        assert_eq!(t0.edges.len(), 678);
        for m in [&t0, &t1] {
            assert!(m.points.iter().flatten().all(|&c| (0..=CUBE_SIDE).contains(&c)));
        }
        assert_eq!(
            t1.points[..4],
            [[60000, 0, 0], [0, 0, 0], [0, 0, 60000], [0, 60000, 0]]
        );
    }

    #[test]
    fn parity() {
        assert_eq!(SignedPermutation::identity().parity(), 1);
        let swap = SignedPermutation {
            perm: [1, 0, 2],
            signs: [1, 1, 1],
            shift: [0; 3],
        };
        assert_eq!(swap.parity(), -1);
    }

    #[test]
    fn face_points() {
        let corners = [[0, 0, 0], [6, 0, 0], [0, 6, 0], [0, 0, 6]];
        let pts = [[3, 0, 0], [1, 1, 0], [1, 1, 1], [0, 0, 0]];
        assert_eq!(points_in_face(&pts, &corners, &[0, 1]), vec![[0, 0, 0], [3, 0, 0]]);
        assert_eq!(points_in_face(&pts, &corners, &[0, 1, 2]).len(), 3);
    }

    #[test]
    fn mismatched_gluing_is_reported() {
        let t0 = load_reference(Reference::T0);
        let mut t1 = load_reference(Reference::T1);
        // lift a vertex of the face shared with T0 off that face
        t1.points[12][0] -= 1;
        let r = glue(vec![
            (&t0, SignedPermutation::identity()),
            (&t1, SignedPermutation::identity()),
        ]);
        assert!(matches!(r, Err(AppendixError::BoundaryMismatch { a: 0, b: 1, .. })));
    }
}
