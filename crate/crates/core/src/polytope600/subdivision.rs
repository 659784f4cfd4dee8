use super::template::{face_template, x543_template, TemplateRole};
use super::PolytopeError;
use crate::complex::{Simplex, SimplicialComplex, SubComplex, VertexId};

/// Where a vertex of the subdivision comes from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VertexOrigin {
    Vertex(VertexId),
    /// The vertex splitting a parent edge.
    Edge(Simplex),
    /// One of the three vertices inside a parent triangle, the one
    /// adjacent to `corner`.
    Face { face: Simplex, corner: VertexId },
    /// An interior vertex of the copy of `X543` in a parent tetrahedron.
    Cell { cell: Simplex, template_vertex: VertexId },
}

impl VertexOrigin {
    /// The parent simplex whose relative interior contains the vertex.
    pub fn support(&self) -> Simplex {
        match self {
            VertexOrigin::Vertex(v) => Simplex::vertex(*v),
            VertexOrigin::Edge(s) | VertexOrigin::Face { face: s, .. } | VertexOrigin::Cell { cell: s, .. } => {
                s.clone()
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct SubdivisionMap {
    pub parent: SimplicialComplex,
    pub child: SimplicialComplex,
    /// Indexed by child vertex id.
    pub vertex_origin: Vec<VertexOrigin>,
}

impl SubdivisionMap {
    /// The smallest parent simplex containing the child simplex `s`.
    pub fn carrier(&self, s: &Simplex) -> Simplex {
        s.iter()
            .map(|v| self.vertex_origin[v as usize].support())
            .reduce(|a, b| a.union(&b))
            .expect("simplices are nonempty")
    }

    /// The part of the subdivision lying in the closed parent simplex `p`.
    pub fn restriction(&self, p: &Simplex) -> SubComplex {
        SubComplex::from_parent_simplices(
            self.child
                .simplices(p.dim())
                .iter()
                .filter(|s| self.carrier(s).is_face_of(p))
                .cloned(),
        )
    }

    /// Child edges whose carrier is the parent edge `e`.
    pub fn edges_over(&self, e: &Simplex) -> usize {
        self.child
            .simplices(1)
            .iter()
            .filter(|s| self.carrier(s).is_face_of(e))
            .count()
    }
}

/// Splits every edge in two, every triangle as in [`face_template`] and
/// every tetrahedron into a copy of `X543`. Corners of each parent simplex
/// are matched to template corners in increasing vertex order, so the
/// copies agree on shared faces.
pub fn special_subdivision(k: &SimplicialComplex) -> Result<SubdivisionMap, PolytopeError> {
    let dim = k.dim().unwrap_or(0);
    if dim > 3 {
        return Err(PolytopeError::DimensionTooHigh(dim));
    }
    let n0 = k.n_vertices();
    let edges = k.simplices(1);
    let tris = k.simplices(2);
    let tets = k.simplices(3);
    let tpl = x543_template();
    let n_inner = tpl.complex.n_vertices() - 22;

    let mut origin: Vec<VertexOrigin> = (0..n0 as VertexId).map(VertexOrigin::Vertex).collect();
    origin.extend(edges.iter().map(|e| VertexOrigin::Edge(e.clone())));
    for t in tris {
        origin.extend(t.iter().map(|c| VertexOrigin::Face {
            face: t.clone(),
            corner: c,
        }));
    }
    for t in tets {
        origin.extend((22..22 + n_inner as VertexId).map(|v| VertexOrigin::Cell {
            cell: t.clone(),
            template_vertex: v,
        }));
    }
    let edge_base = n0;
    let tri_base = edge_base + edges.len();
    let tet_base = tri_base + 3 * tris.len();

    let edge_id = |a: VertexId, b: VertexId| -> VertexId {
        let e = Simplex::from_unsorted([a, b]);
        (edge_base + k.index_of(&e).expect("edge of a parent simplex")) as VertexId
    };
    let face_id = |face: Simplex, corner: VertexId| -> VertexId {
        let pos = face.iter().position(|v| v == corner).expect("corner of face");
        (tri_base + 3 * k.index_of(&face).expect("face of a parent simplex") + pos) as VertexId
    };

    let mut gens: Vec<Simplex> = Vec::new();
    for (ti, t) in tets.iter().enumerate() {
        let map: Vec<VertexId> = tpl
            .roles
            .iter()
            .enumerate()
            .map(|(v, role)| match *role {
                TemplateRole::Corner(c) => t[c as usize],
                TemplateRole::Edge([a, b]) => edge_id(t[a as usize], t[b as usize]),
                TemplateRole::Face { face, corner } => face_id(
                    Simplex::from_unsorted(face.map(|c| t[c as usize])),
                    t[corner as usize],
                ),
                TemplateRole::Interior => (tet_base + ti * n_inner + v - 22) as VertexId,
            })
            .collect();
        gens.extend(
            tpl.complex
                .simplices(3)
                .iter()
                .map(|s| Simplex::from_unsorted(s.iter().map(|v| map[v as usize]))),
        );
    }

    let ft = face_template();
    for (fi, t) in tris.iter().enumerate() {
        if !k.cofacets(2, fi).is_empty() {
            continue;
        }
        let map: Vec<VertexId> = vec![
            t[0],
            t[1],
            t[2],
            edge_id(t[0], t[1]),
            edge_id(t[0], t[2]),
            edge_id(t[1], t[2]),
            face_id(t.clone(), t[0]),
            face_id(t.clone(), t[1]),
            face_id(t.clone(), t[2]),
        ];
        gens.extend(
            ft.simplices(2)
                .iter()
                .map(|s| Simplex::from_unsorted(s.iter().map(|v| map[v as usize]))),
        );
    }

    for (ei, e) in edges.iter().enumerate() {
        if k.cofacets(1, ei).is_empty() {
            let m = (edge_base + ei) as VertexId;
            gens.push(Simplex::from_unsorted([e[0], m]));
            gens.push(Simplex::from_unsorted([m, e[1]]));
        }
    }
    for v in 0..n0 {
        if k.cofacets(0, v).is_empty() {
            gens.push(Simplex::vertex(v as VertexId));
        }
    }

    let child = SimplicialComplex::from_generators(gens)?;
    if child.n_vertices() != origin.len() {
        return Err(PolytopeError::Inconsistent(format!(
            "subdivision has {} vertices, expected {}",
            child.n_vertices(),
            origin.len()
        )));
    }
    Ok(SubdivisionMap {
        parent: k.clone(),
        child,
        vertex_origin: origin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::are_isomorphic;

    #[test]
    fn single_tetrahedron_becomes_x543() {
        let s = special_subdivision(&SimplicialComplex::simplex(3)).unwrap();
        assert!(are_isomorphic(&s.child, &x543_template().complex).is_some());
        for e in s.parent.simplices(1) {
            assert_eq!(s.edges_over(e), 2);
        }
    }

    #[test]
    fn lower_dimensions() {
        let tri = special_subdivision(&SimplicialComplex::simplex(2)).unwrap();
        assert!(are_isomorphic(&tri.child, &face_template()).is_some());
        let edge = special_subdivision(&SimplicialComplex::simplex(1)).unwrap();
        assert_eq!(edge.child.f_vector().as_slice(), &[3, 2]);
        let pt = special_subdivision(&SimplicialComplex::simplex(0)).unwrap();
        assert_eq!(pt.child.f_vector().as_slice(), &[1]);
        assert!(matches!(
            special_subdivision(&SimplicialComplex::simplex(4)),
            Err(PolytopeError::DimensionTooHigh(4))
        ));
    }

    #[test]
    fn carriers_have_enough_dimension() {
        let s = special_subdivision(&SimplicialComplex::simplex(3)).unwrap();
        for c in s.child.all_simplices() {
            let car = s.carrier(c);
            assert!(car.dim() >= c.dim());
            assert!(s.parent.contains(&car));
        }
    }
}
