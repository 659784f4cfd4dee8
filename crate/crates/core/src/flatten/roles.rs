use serde::{Deserialize, Serialize};

use super::FlattenError;
use crate::complex::{FVector, SimplicialComplex, VertexId};
use crate::polytope600::TemplateRole;

/// Labels of the flattening: `A` is the moving corner, `B` the three fixed
/// corners, `C` the vertices on the edges `AB_i`, `E` those on the base
/// edges, `D` the face vertices on the three faces through `A` and `F`
/// those on the base face. Interior vertices split into the layer touching
/// four boundary vertices, the layer touching three, and the core.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexRole {
    A,
    B,
    C,
    D,
    E,
    F,
    Outer12,
    Outer16,
    Core,
}

impl VertexRole {
    pub fn is_frozen(self) -> bool {
        matches!(self, VertexRole::A | VertexRole::B | VertexRole::C | VertexRole::E)
    }

    pub fn is_interior(self) -> bool {
        matches!(self, VertexRole::Outer12 | VertexRole::Outer16 | VertexRole::Core)
    }
}

/// Template position of each boundary vertex of an `X543` copy, given its
/// four corners. Interior vertices get [`TemplateRole::Interior`].
pub fn boundary_template_roles(
    k: &SimplicialComplex,
    corners: [VertexId; 4],
) -> Result<Vec<TemplateRole>, FlattenError> {
    let bad = |m: String| FlattenError::NotX543(m);
    if k.f_vector() != FVector(vec![116, 678, 1106, 543]) {
        return Err(bad(format!("f-vector {}", k.f_vector())));
    }
    let bd = k.boundary_complex()?;
    if bd.complex.f_vector() != FVector(vec![22, 60, 40]) {
        return Err(bad(format!("boundary f-vector {}", bd.complex.f_vector())));
    }
    let on_boundary = |v: VertexId| bd.vertex_map.binary_search(&v).ok();
    let bnb = |v: VertexId| -> Vec<VertexId> {
        let local = on_boundary(v).expect("boundary vertex") as VertexId;
        bd.complex
            .neighbors(local)
            .iter()
            .map(|&u| bd.vertex_map[u as usize])
            .collect()
    };
    let corner_idx = |v: VertexId| corners.iter().position(|&c| c == v).map(|i| i as u8);
    let mut roles = vec![TemplateRole::Interior; k.n_vertices()];
    for (i, &c) in corners.iter().enumerate() {
        if on_boundary(c).is_none() {
            return Err(bad(format!("corner {c} is not on the boundary")));
        }
        roles[c as usize] = TemplateRole::Corner(i as u8);
    }
    let mut faces_pending = Vec::new();
    for &v in &bd.vertex_map {
        if corner_idx(v).is_some() {
            continue;
        }
        let mut cs: Vec<u8> = bnb(v).into_iter().filter_map(corner_idx).collect();
        cs.sort_unstable();
        match cs[..] {
            [a, b] => roles[v as usize] = TemplateRole::Edge([a, b]),
            [c] => faces_pending.push((v, c)),
            _ => return Err(bad(format!("boundary vertex {v} sees corners {cs:?}"))),
        }
    }
    for (v, c) in faces_pending {
        let mut face = vec![c];
        for u in bnb(v) {
            if let TemplateRole::Edge(e) = roles[u as usize] {
                face.extend(e.iter().filter(|&&x| x != c));
            }
        }
        face.sort_unstable();
        face.dedup();
        let [a, b, d] = face[..] else {
            return Err(bad(format!("face vertex {v} spans corners {face:?}")));
        };
        roles[v as usize] = TemplateRole::Face {
            face: [a, b, d],
            corner: c,
        };
    }
    let edges = roles.iter().filter(|r| matches!(r, TemplateRole::Edge(_))).count();
    let faces = roles.iter().filter(|r| matches!(r, TemplateRole::Face { .. })).count();
    if edges != 6 || faces != 12 {
        return Err(bad(format!("{edges} edge and {faces} face vertices")));
    }
    Ok(roles)
}

/// Assigns flattening roles with `apex` (one of `corners`) as `A`.
pub fn classify_roles(
    k: &SimplicialComplex,
    corners: [VertexId; 4],
    apex: VertexId,
) -> Result<Vec<VertexRole>, FlattenError> {
    let a = corners
        .iter()
        .position(|&c| c == apex)
        .ok_or_else(|| FlattenError::NotX543(format!("apex {apex} is not a corner")))? as u8;
    let tpl = boundary_template_roles(k, corners)?;
    let mut boundary_nb = vec![0usize; k.n_vertices()];
    for v in 0..k.n_vertices() {
        boundary_nb[v] = k
            .neighbors(v as VertexId)
            .iter()
            .filter(|&&u| tpl[u as usize] != TemplateRole::Interior)
            .count();
    }
    let roles: Vec<VertexRole> = tpl
        .iter()
        .enumerate()
        .map(|(v, r)| match *r {
            TemplateRole::Corner(c) if c == a => VertexRole::A,
            TemplateRole::Corner(_) => VertexRole::B,
            TemplateRole::Edge(e) if e.contains(&a) => VertexRole::C,
            TemplateRole::Edge(_) => VertexRole::E,
            TemplateRole::Face { face, .. } if face.contains(&a) => VertexRole::D,
            TemplateRole::Face { .. } => VertexRole::F,
            TemplateRole::Interior => match boundary_nb[v] {
                4 => VertexRole::Outer12,
                3 => VertexRole::Outer16,
                _ => VertexRole::Core,
            },
        })
        .collect();
    let count = |r: VertexRole| roles.iter().filter(|&&x| x == r).count();
    let got = [
        count(VertexRole::Outer12),
        count(VertexRole::Outer16),
        count(VertexRole::Core),
    ];
    if got != [12, 16, 66] {
        return Err(FlattenError::NotX543(format!("interior layers {got:?}")));
    }
    Ok(roles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::appendix::{load_reference, reconstruct, Reference};
    use crate::polytope600::x543_template;

    fn count(roles: &[VertexRole], r: VertexRole) -> usize {
        roles.iter().filter(|&&x| x == r).count()
    }

    #[test]
    fn appendix_t1_roles() {
        let (k, _) = reconstruct(&load_reference(Reference::T1)).unwrap();
        let roles = classify_roles(&k, [0, 1, 2, 3], 1).unwrap();
        let of = |r: VertexRole| -> Vec<usize> { (0..116).filter(|&v| roles[v] == r).collect() };
        assert_eq!(of(VertexRole::A), vec![1]);
        assert_eq!(of(VertexRole::B), vec![0, 2, 3]);
        assert_eq!(of(VertexRole::C), vec![5, 7, 8]);
        assert_eq!(of(VertexRole::E), vec![4, 6, 9]);
        assert_eq!(of(VertexRole::F), vec![12, 17, 20]);
        assert_eq!(count(&roles, VertexRole::D), 9);
        assert_eq!(roles.iter().filter(|r| !r.is_interior()).count(), 22);
    }

    #[test]
    fn counts_do_not_depend_on_the_apex() {
        let t = &x543_template().complex;
        for apex in 0..4 {
            let roles = classify_roles(t, [0, 1, 2, 3], apex).unwrap();
            let counts: Vec<usize> = [
                VertexRole::A,
                VertexRole::B,
                VertexRole::C,
                VertexRole::D,
                VertexRole::E,
                VertexRole::F,
                VertexRole::Outer12,
                VertexRole::Outer16,
                VertexRole::Core,
            ]
            .iter()
            .map(|&r| count(&roles, r))
            .collect();
            assert_eq!(counts, vec![1, 3, 3, 9, 3, 3, 12, 16, 66]);
        }
    }

    #[test]
    fn rejects_other_complexes() {
        let k = SimplicialComplex::simplex(3);
        assert!(matches!(
            classify_roles(&k, [0, 1, 2, 3], 0),
            Err(FlattenError::NotX543(_))
        ));
    }
}
