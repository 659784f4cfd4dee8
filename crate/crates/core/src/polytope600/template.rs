use std::collections::HashMap;
use std::sync::OnceLock;

use super::{check_x543_good, extract_x543, generate_600_cell, PolytopeError};
use crate::complex::{Simplex, SimplicialComplex, VertexId};

/// Position of a template vertex relative to the tetrahedron it subdivides.
/// Corners are numbered `0..4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TemplateRole {
    Corner(u8),
    /// The vertex splitting the edge between two corners.
    Edge([u8; 2]),
    /// One of the three vertices inside a face, the one adjacent to `corner`.
    Face { face: [u8; 3], corner: u8 },
    Interior,
}

impl TemplateRole {
    /// Corners of the smallest face of the tetrahedron containing the vertex.
    pub fn support(&self) -> Vec<u8> {
        match *self {
            TemplateRole::Corner(c) => vec![c],
            TemplateRole::Edge(e) => e.to_vec(),
            TemplateRole::Face { face, .. } => face.to_vec(),
            TemplateRole::Interior => vec![0, 1, 2, 3],
        }
    }
}

const EDGE_PAIRS: [[u8; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];
const FACES: [[u8; 3]; 4] = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];

/// `X543` with its vertices labelled by template role:
/// `0..4` corners, `4..10` edge vertices (pairs in lexicographic order),
/// `10..22` face vertices (faces in lexicographic order, then by corner),
/// `22..116` interior vertices.
#[derive(Debug, Clone)]
pub struct X543Template {
    pub complex: SimplicialComplex,
    pub roles: Vec<TemplateRole>,
    /// Unit-sphere coordinates of each vertex in the 600-cell.
    pub points4: Vec<[f64; 4]>,
    /// Unit-sphere coordinates of the four vertices of the removed cell.
    pub removed4: [[f64; 4]; 4],
}

impl X543Template {
    pub fn vertex_of(&self, role: TemplateRole) -> Option<VertexId> {
        self.roles.iter().position(|&r| r == role).map(|i| i as VertexId)
    }

    pub fn boundary_count(&self) -> usize {
        self.roles.iter().filter(|r| **r != TemplateRole::Interior).count()
    }
}

fn build_template() -> Result<X543Template, PolytopeError> {
    let (x600, emb) = generate_600_cell()?;
    let fixed = x600.simplices(3)[0].clone();
    let sub = extract_x543(&x600, &fixed)?;
    let x = &sub.complex;
    check_x543_good(x)?;

    let bd = x.boundary_complex()?;
    let bnb = |v: VertexId| -> Vec<VertexId> {
        let local = bd.vertex_map.binary_search(&v).expect("boundary vertex");
        bd.complex
            .neighbors(local as VertexId)
            .iter()
            .map(|&u| bd.vertex_map[u as usize])
            .collect()
    };
    let bverts = bd.vertex_map.clone();
    let deg6: Vec<VertexId> = bverts.iter().copied().filter(|&v| bnb(v).len() == 6).collect();
    let corners: Vec<VertexId> = deg6
        .iter()
        .copied()
        .filter(|&v| bnb(v).iter().filter(|u| deg6.contains(u)).count() == 3)
        .collect();
    if corners.len() != 4 {
        return Err(PolytopeError::Inconsistent(format!(
            "found {} corners on the boundary of X543",
            corners.len()
        )));
    }
    let corner_idx = |v: VertexId| corners.iter().position(|&c| c == v).map(|i| i as u8);

    let mut role_of: HashMap<VertexId, TemplateRole> = HashMap::new();
    for (i, &c) in corners.iter().enumerate() {
        role_of.insert(c, TemplateRole::Corner(i as u8));
    }
    for &m in deg6.iter().filter(|v| corner_idx(**v).is_none()) {
        let mut cs: Vec<u8> = bnb(m).into_iter().filter_map(corner_idx).collect();
        cs.sort_unstable();
        let [a, b] = cs[..] else {
            return Err(PolytopeError::Inconsistent(format!("edge vertex {m} sees corners {cs:?}")));
        };
        role_of.insert(m, TemplateRole::Edge([a, b]));
    }
    for &f in bverts.iter().filter(|&&v| bnb(v).len() == 5) {
        let nb = bnb(f);
        let cs: Vec<u8> = nb.iter().copied().filter_map(corner_idx).collect();
        let [c] = cs[..] else {
            return Err(PolytopeError::Inconsistent(format!("face vertex {f} sees corners {cs:?}")));
        };
        let mut face: Vec<u8> = vec![c];
        for u in nb {
            if let Some(TemplateRole::Edge(e)) = role_of.get(&u) {
                face.extend(e.iter().filter(|&&x| x != c));
            }
        }
        face.sort_unstable();
        face.dedup();
        let [a, b, d] = face[..] else {
            return Err(PolytopeError::Inconsistent(format!("face vertex {f} spans {face:?}")));
        };
        role_of.insert(f, TemplateRole::Face { face: [a, b, d], corner: c });
    }
    if role_of.len() != 22 {
        return Err(PolytopeError::Inconsistent(format!(
            "classified {} of 22 boundary vertices",
            role_of.len()
        )));
    }

    let mut order: Vec<TemplateRole> = (0..4).map(TemplateRole::Corner).collect();
    order.extend(EDGE_PAIRS.iter().map(|&e| TemplateRole::Edge(e)));
    for face in FACES {
        order.extend(face.iter().map(|&corner| TemplateRole::Face { face, corner }));
    }
    let by_role: HashMap<TemplateRole, VertexId> = role_of.iter().map(|(&v, &r)| (r, v)).collect();
    let mut new_to_old: Vec<VertexId> = Vec::with_capacity(116);
    for r in &order {
        new_to_old.push(*by_role.get(r).ok_or_else(|| {
            PolytopeError::Inconsistent(format!("no boundary vertex with role {r:?}"))
        })?);
    }
    new_to_old.extend((0..116).filter(|v| !role_of.contains_key(v)));
    let mut perm = vec![0; 116];
    for (new, &old) in new_to_old.iter().enumerate() {
        perm[old as usize] = new as VertexId;
    }
    let complex = x.relabel(&perm);
    let mut roles = order;
    roles.resize(116, TemplateRole::Interior);

    let e64 = emb.to_f64();
    let points4 = new_to_old
        .iter()
        .map(|&v| e64.points[sub.vertex_map[v as usize] as usize])
        .collect();
    let removed4 = std::array::from_fn(|i| e64.points[fixed[i] as usize]);
    Ok(X543Template {
        complex,
        roles,
        points4,
        removed4,
    })
}

static TEMPLATE: OnceLock<X543Template> = OnceLock::new();

/// The labelled `X543`, generated once from the 600-cell with the
/// lexicographically first cell removed.
pub fn x543_template() -> &'static X543Template {
    TEMPLATE.get_or_init(|| build_template().expect("X543 template generation"))
}

static FACE: OnceLock<SimplicialComplex> = OnceLock::new();

/// The subdivided triangle on each boundary face of `X543`:
/// `0..3` corners, `3..6` edge vertices for the pairs 01, 02, 12,
/// `6..9` interior vertices adjacent to corners 0, 1, 2.
pub fn face_template() -> SimplicialComplex {
    FACE.get_or_init(|| {
        let t = x543_template();
        let face = [0u8, 1, 2];
        let mut local: Vec<TemplateRole> = (0..3).map(TemplateRole::Corner).collect();
        local.extend([[0, 1], [0, 2], [1, 2]].map(TemplateRole::Edge));
        local.extend((0..3).map(|corner| TemplateRole::Face { face, corner }));
        let ids: HashMap<VertexId, VertexId> = local
            .iter()
            .enumerate()
            .map(|(i, &r)| (t.vertex_of(r).expect("role present"), i as VertexId))
            .collect();
        let tris: Vec<Simplex> = t
            .complex
            .boundary_facets()
            .expect("pure")
            .into_iter()
            .filter(|s| s.iter().all(|v| ids.contains_key(&v)))
            .map(|s| Simplex::new(s.iter().map(|v| ids[&v])).expect("distinct"))
            .collect();
        SimplicialComplex::from_maximal(tris).expect("face template")
    })
    .clone()
}
