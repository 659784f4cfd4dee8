//! Exact check that embedded tetrahedra form a geometric simplicial
//! complex: any two meet exactly in the hull of their shared vertices.
//!
//! Pairs are found by a bounding-box sweep. Depending on how many vertices
//! a pair shares:
//! - 3: the two apexes must lie strictly on opposite sides of the face;
//! - 2: the wedges at the shared edge, seen along it, may meet only at 0;
//! - 1: the cones at the shared vertex may meet only at the apex;
//! - 0: some separating axis (face normal or edge cross product) exists.
//!
//! Two cones `C₁, C₂` meet only at the apex iff
//! `0 ∉ conv(gen(C₁) ∪ −gen(C₂))`, which is decided by Carathéodory
//! subsets of size at most 4 with exact orientation signs.

use std::cmp::Ordering;

use num_traits::Zero;
use serde::Serialize;

use super::{cross, det3, dot, neg, orient3d, sub, Embedding, GeometryError};
use crate::complex::{Simplex, SimplicialComplex};
use crate::scalar::ExactScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OverlapKind {
    Degenerate,
    SharedFaceSameSide,
    SharedEdgeOverlap,
    SharedVertexOverlap,
    Intersecting,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeometricWitness {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub kind: OverlapKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeometricReport {
    pub pairs_checked: usize,
    pub witnesses: Vec<GeometricWitness>,
}

impl GeometricReport {
    pub fn is_ok(&self) -> bool {
        self.witnesses.is_empty()
    }
}

const MAX_WITNESSES: usize = 64;

fn sign<T: ExactScalar>(x: &T) -> Ordering {
    x.cmp(&T::zero())
}

fn is_zero_vec<T: ExactScalar>(v: &[T; 3]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Sign of the orientation of `(u, v)` in the plane with normal `n`.
fn plane_orient<T: ExactScalar>(n: &[T; 3], u: &[T; 3], v: &[T; 3]) -> Ordering {
    sign(&det3(n, u, v))
}

/// Whether 0 lies in the closed triangle `a b c` of a plane with normal
/// `n` (all three vectors in, or projected to, that plane).
fn origin_in_planar_triangle(orients: [Ordering; 3]) -> bool {
    if orients.iter().all(|o| *o == Ordering::Equal) {
        return false;
    }
    orients.iter().all(|o| *o != Ordering::Less) || orients.iter().all(|o| *o != Ordering::Greater)
}

/// `0 ∈ conv(gens)` for vectors modulo the line spanned by `e`.
fn origin_in_hull_mod_line<T: ExactScalar>(e: &[T; 3], gens: &[[T; 3]]) -> bool {
    let ee = dot(e, e);
    let pdot = |u: &[T; 3], v: &[T; 3]| {
        sign(&(ee.clone() * dot(u, v) - dot(e, u) * dot(e, v)))
    };
    let n = gens.len();
    for u in gens {
        if is_zero_vec(&cross(e, u)) {
            return true;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if plane_orient(e, &gens[i], &gens[j]) == Ordering::Equal
                && pdot(&gens[i], &gens[j]) == Ordering::Less
            {
                return true;
            }
            for k in j + 1..n {
                let o = [
                    plane_orient(e, &gens[i], &gens[j]),
                    plane_orient(e, &gens[j], &gens[k]),
                    plane_orient(e, &gens[k], &gens[i]),
                ];
                if origin_in_planar_triangle(o) {
                    return true;
                }
            }
        }
    }
    false
}

/// `0 ∈ conv(gens)` in three dimensions.
fn origin_in_hull<T: ExactScalar>(gens: &[[T; 3]]) -> bool {
    let n = gens.len();
    let zero: [T; 3] = [T::zero(), T::zero(), T::zero()];
    for g in gens {
        if is_zero_vec(g) {
            return true;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (&gens[i], &gens[j]);
            if is_zero_vec(&cross(a, b)) && sign(&dot(a, b)) == Ordering::Less {
                return true;
            }
            for k in j + 1..n {
                let c = &gens[k];
                if sign(&det3(a, b, c)) == Ordering::Equal {
                    let normal = [cross(a, b), cross(b, c), cross(a, c)]
                        .into_iter()
                        .find(|v| !is_zero_vec(v));
                    if let Some(nrm) = normal {
                        let o = [
                            plane_orient(&nrm, a, b),
                            plane_orient(&nrm, b, c),
                            plane_orient(&nrm, c, a),
                        ];
                        if origin_in_planar_triangle(o) {
                            return true;
                        }
                    }
                }
                for l in k + 1..n {
                    let d = &gens[l];
                    let full = sign(&orient3d(a, b, c, d));
                    if full == Ordering::Equal {
                        continue;
                    }
                    let parts = [
                        sign(&orient3d(&zero, b, c, d)),
                        sign(&orient3d(a, &zero, c, d)),
                        sign(&orient3d(a, b, &zero, d)),
                        sign(&orient3d(a, b, c, &zero)),
                    ];
                    if parts.iter().all(|p| *p == full || *p == Ordering::Equal) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn separated_on_axis<T: ExactScalar>(axis: &[T; 3], p: &[[T; 3]; 4], q: &[[T; 3]; 4]) -> bool {
    if is_zero_vec(axis) {
        return false;
    }
    let proj = |s: &[[T; 3]; 4]| {
        let v: Vec<T> = s.iter().map(|x| dot(axis, x)).collect();
        let lo = v.iter().min().cloned().expect("four points");
        let hi = v.iter().max().cloned().expect("four points");
        (lo, hi)
    };
    let (plo, phi) = proj(p);
    let (qlo, qhi) = proj(q);
    phi < qlo || qhi < plo
}

fn tet_normals<T: ExactScalar>(p: &[[T; 3]; 4]) -> Vec<[T; 3]> {
    [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
        .iter()
        .map(|&[a, b, c]| cross(&sub(&p[b], &p[a]), &sub(&p[c], &p[a])))
        .collect()
}

fn tet_edges<T: ExactScalar>(p: &[[T; 3]; 4]) -> Vec<[T; 3]> {
    [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]
        .iter()
        .map(|&[a, b]| sub(&p[b], &p[a]))
        .collect()
}

fn disjoint<T: ExactScalar>(p: &[[T; 3]; 4], q: &[[T; 3]; 4]) -> bool {
    for n in tet_normals(p).iter().chain(tet_normals(q).iter()) {
        if separated_on_axis(n, p, q) {
            return true;
        }
    }
    for a in tet_edges(p) {
        for b in tet_edges(q) {
            if separated_on_axis(&cross(&a, &b), p, q) {
                return true;
            }
        }
    }
    false
}

fn check_pair<T: ExactScalar>(
    s: &Simplex,
    t: &Simplex,
    emb: &Embedding<T, 3>,
) -> Option<OverlapKind> {
    let shared: Vec<u32> = s.iter().filter(|&v| t.contains_vertex(v)).collect();
    let only = |x: &Simplex| -> Vec<u32> { x.iter().filter(|&v| !shared.contains(&v)).collect() };
    let pt = |v: u32| emb.point(v).clone();
    match shared.len() {
        3 => {
            let f = [pt(shared[0]), pt(shared[1]), pt(shared[2])];
            let a = sign(&orient3d(&f[0], &f[1], &f[2], &pt(only(s)[0])));
            let b = sign(&orient3d(&f[0], &f[1], &f[2], &pt(only(t)[0])));
            (a == Ordering::Equal || a == b).then_some(OverlapKind::SharedFaceSameSide)
        }
        2 => {
            let a = pt(shared[0]);
            let e = sub(&pt(shared[1]), &a);
            let mut gens: Vec<[T; 3]> = only(s).into_iter().map(|v| sub(&pt(v), &a)).collect();
            gens.extend(only(t).into_iter().map(|v| neg(&sub(&pt(v), &a))));
            origin_in_hull_mod_line(&e, &gens).then_some(OverlapKind::SharedEdgeOverlap)
        }
        1 => {
            let a = pt(shared[0]);
            let mut gens: Vec<[T; 3]> = only(s).into_iter().map(|v| sub(&pt(v), &a)).collect();
            gens.extend(only(t).into_iter().map(|v| neg(&sub(&pt(v), &a))));
            origin_in_hull(&gens).then_some(OverlapKind::SharedVertexOverlap)
        }
        0 => {
            // Translate so magnitudes stay small for fixed-width integers.
            let o = pt(s[0]);
            let p: [[T; 3]; 4] = std::array::from_fn(|i| sub(&pt(s[i]), &o));
            let q: [[T; 3]; 4] = std::array::from_fn(|i| sub(&pt(t[i]), &o));
            (!disjoint(&p, &q)).then_some(OverlapKind::Intersecting)
        }
        _ => Some(OverlapKind::Degenerate),
    }
}

/// Exact pairwise validation of a pure 3-complex embedded with an exact
/// scalar type.
pub fn verify_geometric_complex<T: ExactScalar>(
    k: &SimplicialComplex,
    emb: &Embedding<T, 3>,
) -> Result<GeometricReport, GeometryError> {
    if k.dim() != Some(3) || !k.is_pure() {
        return Err(GeometryError::NotTetrahedral);
    }
    emb.check_size(k.n_vertices())?;
    let tets = k.simplices(3);
    let mut witnesses = Vec::new();
    for t in tets {
        let p = [emb.point(t[0]), emb.point(t[1]), emb.point(t[2]), emb.point(t[3])];
        if orient3d(p[0], p[1], p[2], p[3]).is_zero() {
            witnesses.push(GeometricWitness {
                a: t.to_vec(),
                b: t.to_vec(),
                kind: OverlapKind::Degenerate,
            });
        }
    }
    let boxes: Vec<([T; 3], [T; 3])> = tets
        .iter()
        .map(|t| {
            let lo = std::array::from_fn(|i| t.iter().map(|v| emb.point(v)[i].clone()).min().unwrap());
            let hi = std::array::from_fn(|i| t.iter().map(|v| emb.point(v)[i].clone()).max().unwrap());
            (lo, hi)
        })
        .collect();
    let mut order: Vec<usize> = (0..tets.len()).collect();
    order.sort_by(|&a, &b| boxes[a].0[0].cmp(&boxes[b].0[0]).then(a.cmp(&b)));
    let mut pairs_checked = 0;
    for (oi, &i) in order.iter().enumerate() {
        for &j in &order[oi + 1..] {
            if boxes[j].0[0] > boxes[i].1[0] {
                break;
            }
            let overlap = (1..3).all(|c| boxes[j].0[c] <= boxes[i].1[c] && boxes[i].0[c] <= boxes[j].1[c]);
            if !overlap {
                continue;
            }
            pairs_checked += 1;
            let (a, b) = if i < j { (i, j) } else { (j, i) };
            if let Some(kind) = check_pair(&tets[a], &tets[b], emb) {
                if witnesses.len() < MAX_WITNESSES {
                    witnesses.push(GeometricWitness {
                        a: tets[a].to_vec(),
                        b: tets[b].to_vec(),
                        kind,
                    });
                }
            }
        }
    }
    Ok(GeometricReport {
        pairs_checked,
        witnesses,
    })
}
