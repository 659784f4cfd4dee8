use serde::{Deserialize, Serialize};

use super::step1::scale_about_centre;
use super::{FlattenError, FRAME_T0};
use crate::geometry::vec3::{add, cross, dot, scale, sub};
use crate::geometry::{verify_acute, Embedding};
use crate::polytope600::{x543_template, TemplateRole};

/// Positions of the three vertices inside a face, as barycentric
/// coordinates over the face corners (in increasing order). Row `r` is the
/// vertex next to the `r`-th corner.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FaceWeights(pub [[f64; 3]; 3]);

impl FaceWeights {
    /// Weight `own` on the adjacent corner and `other` on each of the two
    /// others; `own + 2·other` should be 1.
    pub fn symmetric(own: f64, other: f64) -> Self {
        FaceWeights(std::array::from_fn(|r| {
            std::array::from_fn(|k| if k == r { own } else { other })
        }))
    }

    /// The weights of the appendix meshes, where the face vertices sit at
    /// 26084 and 16958 (out of 60000) along the cube axes.
    pub fn reference() -> Self {
        let own = 26084.0 / 60000.0;
        Self::symmetric(own, (1.0 - own) / 2.0)
    }

    /// Reads the weights off a realization of the template on a tetrahedron
    /// with corners `frame`, from the face with corners `face`.
    pub fn from_embedding(
        e: &Embedding<f64, 3>,
        frame: &[[f64; 3]; 4],
        face: [u8; 3],
    ) -> Result<Self, FlattenError> {
        let tpl = x543_template();
        let tri = face.map(|c| frame[c as usize]);
        let mut rows = [[f64::NAN; 3]; 3];
        for (v, role) in tpl.roles.iter().enumerate() {
            if let TemplateRole::Face { face: f, corner } = *role {
                if f == face {
                    let r = face.iter().position(|&c| c == corner).expect("corner of face");
                    rows[r] = barycentric(e.points[v], tri);
                }
            }
        }
        if rows.iter().flatten().any(|x| x.is_nan()) {
            return Err(FlattenError::NotX543(format!("face {face:?} has no vertices")));
        }
        Ok(FaceWeights(rows))
    }

    fn place(&self, tri: [[f64; 3]; 3], r: usize) -> [f64; 3] {
        (0..3).fold([0.0; 3], |s, k| add(s, scale(tri[k], self.0[r][k])))
    }
}

fn barycentric(p: [f64; 3], tri: [[f64; 3]; 3]) -> [f64; 3] {
    let n = cross(sub(tri[1], tri[0]), sub(tri[2], tri[0]));
    let nn = dot(n, n);
    let w1 = dot(cross(sub(p, tri[0]), sub(tri[2], tri[0])), n) / nn;
    let w2 = dot(cross(sub(tri[1], tri[0]), sub(p, tri[0])), n) / nn;
    [1.0 - w1 - w2, w1, w2]
}

#[derive(Debug, Clone, PartialEq)]
pub struct Step3Result {
    pub embedding: Embedding<f64, 3>,
    /// Factor applied to the interior about the centroid.
    pub scale: f64,
    pub worst_cosine: f64,
}

/// Moves the face vertices of a `T0` realization (template ids) to
/// `weights` on every face, then scales the interior about the centroid by
/// the factor in `range` with the best worst angle.
pub fn step3_adjust(
    t0: &Embedding<f64, 3>,
    weights: &FaceWeights,
    range: (f64, f64),
) -> Result<Step3Result, FlattenError> {
    let tpl = x543_template();
    t0.check_size(tpl.complex.n_vertices())?;
    let mut base = t0.clone();
    for (v, role) in tpl.roles.iter().enumerate() {
        if let TemplateRole::Face { face, corner } = *role {
            let r = face.iter().position(|&c| c == corner).expect("corner of face");
            base.points[v] = weights.place(face.map(|c| FRAME_T0[c as usize]), r);
        }
    }
    let interior: Vec<u32> = (0..tpl.complex.n_vertices() as u32)
        .filter(|&v| tpl.roles[v as usize] == TemplateRole::Interior)
        .collect();
    let (lo, hi) = range;
    let samples = 64;
    let mut best: Option<Step3Result> = None;
    for i in 0..=samples {
        let s = lo + (hi - lo) * i as f64 / samples as f64;
        let mut e = base.clone();
        scale_about_centre(&mut e, &interior, s);
        let w = verify_acute(&tpl.complex, &e, 0.0)?.worst_cosine();
        if best.as_ref().is_none_or(|b| w > b.worst_cosine) {
            best = Some(Step3Result {
                embedding: e,
                scale: s,
                worst_cosine: w,
            });
        }
    }
    match best {
        Some(b) if b.worst_cosine > 0.0 => Ok(b),
        _ => Err(FlattenError::NoAcuteScale { lo, hi }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flatten::step1_realization;

    #[test]
    fn symmetric_rows_sum_to_one() {
        let w = FaceWeights::reference();
        for r in w.0 {
            assert!((r.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn weights_round_trip() {
        let e = step1_realization(5.64).unwrap();
        let w = FaceWeights::from_embedding(&e, &FRAME_T0, [0, 1, 2]).unwrap();
        let r = step3_adjust(&e, &w, (1.0, 1.0)).unwrap();
        // the four faces of the Step-1 realization are congruent, so
        // re-imposing the weights of one face changes nothing
        for (p, q) in r.embedding.points.iter().zip(&e.points) {
            assert!(sub(*p, *q).iter().all(|x| x.abs() < 1e-9), "{p:?} {q:?}");
        }
    }

    #[test]
    fn reference_weights_admit_an_acute_scale() {
        let e = step1_realization(5.9375).unwrap();
        let r = step3_adjust(&e, &FaceWeights::reference(), (0.5, 1.5)).unwrap();
        assert!(r.worst_cosine > 0.0 && r.scale < 1.0);
    }
}
