//! The simplicial neighbourhood `N_X(Y)` of a full subcomplex.
//!
//! Vertices of `N_X(Y)` are the vertices of `Y` together with one new
//! vertex for each simplex of `X` that meets `Y` without lying in it. For
//! `σ ∈ Y` and a chain `σ ⊂ τ_1 ⊂ … ⊂ τ_k` in `X` with `τ_1 ∉ Y`, the set
//! `V(σ) ∪ {τ_1, …, τ_k}` spans a simplex.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{comb_corollary_check, CombCorollary, FVectorError};
use crate::complex::{Simplex, SimplicialComplex, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NVertex {
    /// A vertex of `Y`, by its id in `X`.
    Original(VertexId),
    /// A simplex of `X` meeting `Y` but not contained in it.
    Simplex(Simplex),
}

#[derive(Debug, Clone)]
pub struct Neighborhood {
    pub complex: SimplicialComplex,
    /// `labels[v]` says what vertex `v` of `complex` stands for.
    pub labels: Vec<NVertex>,
}

impl Neighborhood {
    /// Ids (in `complex`) of the vertices coming from `Y`.
    pub fn original_vertices(&self) -> Vec<VertexId> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, l)| matches!(l, NVertex::Original(_)))
            .map(|(i, _)| i as VertexId)
            .collect()
    }

    /// Vertices of `complex` off its boundary.
    pub fn interior_vertices(&self) -> Result<Vec<VertexId>, FVectorError> {
        let bd: HashSet<VertexId> = self.complex.boundary_vertices()?.into_iter().collect();
        Ok((0..self.complex.n_vertices() as VertexId)
            .filter(|v| !bd.contains(v))
            .collect())
    }

    /// Image of `σ` (a simplex of `Y`, in `X` ids) inside `complex`.
    pub fn image_of_y_simplex(&self, s: &Simplex) -> Option<Simplex> {
        let ids: Option<Vec<VertexId>> = s
            .iter()
            .map(|v| {
                self.labels
                    .iter()
                    .position(|l| *l == NVertex::Original(v))
                    .map(|i| i as VertexId)
            })
            .collect();
        Simplex::new(ids?).ok()
    }

    /// Places each vertex at the barycentre of the simplex of `X` it
    /// stands for; vertices of `Y` keep their position.
    pub fn barycentric_positions<const D: usize>(&self, x_points: &[[f64; D]]) -> Vec<[f64; D]> {
        self.labels
            .iter()
            .map(|l| match l {
                NVertex::Original(v) => x_points[*v as usize],
                NVertex::Simplex(s) => {
                    let mut p = [0.0; D];
                    for v in s.iter() {
                        for (pi, xi) in p.iter_mut().zip(x_points[v as usize]) {
                            *pi += xi;
                        }
                    }
                    p.map(|c| c / s.len() as f64)
                }
            })
            .collect()
    }
}

fn closure(y: &[Simplex]) -> HashSet<Simplex> {
    y.iter().flat_map(|s| s.faces()).collect()
}

/// A simplex of `x` whose vertices all lie in `y` but which is not in `y`.
pub fn fullness_witness(x: &SimplicialComplex, y: &[Simplex]) -> Option<Simplex> {
    let ycl = closure(y);
    let verts: HashSet<VertexId> = ycl.iter().flat_map(|s| s.iter()).collect();
    x.all_simplices()
        .find(|s| s.iter().all(|v| verts.contains(&v)) && !ycl.contains(*s))
        .cloned()
}

pub fn is_full_subcomplex(x: &SimplicialComplex, y: &[Simplex]) -> bool {
    fullness_witness(x, y).is_none()
}

/// Enumerates saturated chains `from ⋖ τ_1 ⋖ … ⋖ maximal`, calling `emit`
/// with each chain (excluding `from`).
fn saturated_chains(
    x: &SimplicialComplex,
    from: &Simplex,
    chain: &mut Vec<Simplex>,
    emit: &mut dyn FnMut(&[Simplex]),
) {
    let d = from.dim();
    let i = x.index_of(from).expect("chain stays inside the complex");
    let ups = x.cofacets(d, i);
    if ups.is_empty() {
        emit(chain);
        return;
    }
    for &u in ups {
        let next = x.simplices(d + 1)[u as usize].clone();
        chain.push(next.clone());
        saturated_chains(x, &next, chain, emit);
        chain.pop();
    }
}

pub fn simplicial_neighborhood(
    x: &SimplicialComplex,
    y: &[Simplex],
) -> Result<Neighborhood, FVectorError> {
    for s in y {
        if !x.contains(s) {
            return Err(crate::complex::ComplexError::SimplexNotFound(s.clone()).into());
        }
    }
    if let Some(w) = fullness_witness(x, y) {
        return Err(FVectorError::NotFull(w));
    }
    let ycl = closure(y);
    let mut y_verts: Vec<VertexId> = ycl.iter().flat_map(|s| s.iter()).collect();
    y_verts.sort_unstable();
    y_verts.dedup();
    let in_y = |v: VertexId| y_verts.binary_search(&v).is_ok();

    let mut labels: Vec<NVertex> = y_verts.iter().map(|&v| NVertex::Original(v)).collect();
    let mut new_ones: Vec<Simplex> = x
        .all_simplices()
        .filter(|s| !ycl.contains(*s) && s.iter().any(in_y))
        .cloned()
        .collect();
    new_ones.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    labels.extend(new_ones.into_iter().map(NVertex::Simplex));
    let id: HashMap<NVertex, VertexId> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), i as VertexId))
        .collect();

    let mut gens: Vec<Simplex> = Vec::new();
    let mut ys: Vec<&Simplex> = ycl.iter().collect();
    ys.sort_unstable();
    for sigma in ys {
        let base: Vec<VertexId> = sigma.iter().map(|v| id[&NVertex::Original(v)]).collect();
        gens.push(Simplex::from_unsorted(base.iter().copied()));
        let mut chain = Vec::new();
        saturated_chains(x, sigma, &mut chain, &mut |c: &[Simplex]| {
            // Keep only the part of the chain from the first simplex outside Y.
            let Some(start) = c.iter().position(|t| !ycl.contains(t)) else {
                return;
            };
            if start > 0 {
                // The chain passes through a larger simplex of Y first; that
                // simplex produces the same generator with a bigger base.
                return;
            }
            gens.push(Simplex::from_unsorted(
                base.iter()
                    .copied()
                    .chain(c.iter().map(|t| id[&NVertex::Simplex(t.clone())])),
            ));
        });
    }
    let complex = SimplicialComplex::from_generators(gens).expect("every label is used");
    Ok(Neighborhood { complex, labels })
}

/// Vertices outside `omega` adjacent to it.
pub fn vertex_boundary(x: &SimplicialComplex, omega: &[VertexId]) -> Vec<VertexId> {
    let inside: HashSet<VertexId> = omega.iter().copied().collect();
    let mut out: Vec<VertexId> = omega
        .iter()
        .flat_map(|&v| x.neighbors(v).iter().copied())
        .filter(|u| !inside.contains(u))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Raw counts for a finite vertex patch `Ω`: `|Ω|`, `|∂Ω|`, and the
/// f-vector data of `M = N_X(Y)` for `Y` the full subcomplex on `Ω`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoperimetricReport {
    pub omega: usize,
    pub vertex_boundary: usize,
    pub f0: usize,
    pub boundary_f: [usize; 3],
    pub comb: Option<CombCorollary>,
}

pub fn isoperimetric_patch(
    x: &SimplicialComplex,
    omega: &[VertexId],
) -> Result<IsoperimetricReport, FVectorError> {
    if let Some(&v) = omega.iter().find(|&&v| v as usize >= x.n_vertices()) {
        return Err(FVectorError::VertexOutOfRange(v));
    }
    let inside: HashSet<VertexId> = omega.iter().copied().collect();
    let y: Vec<Simplex> = x
        .all_simplices()
        .filter(|s| s.iter().all(|v| inside.contains(&v)))
        .cloned()
        .collect();
    let n = simplicial_neighborhood(x, &y)?;
    let fb = n.complex.boundary_complex()?.complex.f_vector();
    Ok(IsoperimetricReport {
        omega: inside.len(),
        vertex_boundary: vertex_boundary(x, omega).len(),
        f0: n.complex.n_vertices(),
        boundary_f: [fb.get(0), fb.get(1), fb.get(2)],
        comb: comb_corollary_check(&n.complex).ok(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[VertexId]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn fullness() {
        let x = SimplicialComplex::simplex(3);
        assert!(is_full_subcomplex(&x, &[s(&[2])]));
        assert_eq!(fullness_witness(&x, &[s(&[0]), s(&[1])]), Some(s(&[0, 1])));
        assert!(is_full_subcomplex(&x, &[s(&[0, 1, 2, 3])]));
    }

    #[test]
    fn neighborhood_of_vertex_in_tetrahedron() {
        let x = SimplicialComplex::simplex(3);
        let n = simplicial_neighborhood(&x, &[s(&[0])]).unwrap();
        // v, 3 edges, 3 triangles, 1 tetrahedron through v
        assert_eq!(n.complex.n_vertices(), 8);
        assert_eq!(n.complex.dim(), Some(3));
        assert!(n.complex.is_pure());
        assert_eq!(n.complex.f_vector().get(3), 6);
        assert_eq!(n.complex.euler_characteristic(), 1);
    }

    #[test]
    fn neighborhood_of_vertex_in_closed_sphere() {
        let x = SimplicialComplex::simplex_boundary(5);
        let n = simplicial_neighborhood(&x, &[s(&[0])]).unwrap();
        assert!(n.complex.is_pure());
        assert_eq!(n.complex.dim(), Some(4));
        assert_eq!(n.complex.euler_characteristic(), 1);
        assert_eq!(n.interior_vertices().unwrap(), n.original_vertices());
    }

    #[test]
    fn not_full_is_rejected() {
        let x = SimplicialComplex::simplex(2);
        assert!(matches!(
            simplicial_neighborhood(&x, &[s(&[0]), s(&[1])]),
            Err(FVectorError::NotFull(_))
        ));
    }

    #[test]
    fn whole_complex_is_its_own_neighborhood() {
        let x = SimplicialComplex::simplex_boundary(4);
        let n = simplicial_neighborhood(&x, &x.maximal_simplices()).unwrap();
        assert_eq!(n.complex, x);
    }

    #[test]
    fn barycentres() {
        let x = SimplicialComplex::simplex(1);
        let n = simplicial_neighborhood(&x, &[s(&[0])]).unwrap();
        let pos = n.barycentric_positions(&[[0.0], [2.0]]);
        assert_eq!(pos, vec![[0.0], [1.0]]);
    }

    #[test]
    fn vertex_boundary_of_patch() {
        let c6 = SimplicialComplex::from_lists((0..6).map(|i| [i, (i + 1) % 6])).unwrap();
        assert_eq!(vertex_boundary(&c6, &[0, 1]), vec![2, 5]);
    }
}
