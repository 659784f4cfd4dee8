use super::{FlattenError, FRAME_T0};
use crate::geometry::vec3::{add, scale as vscale, sub};
use crate::geometry::{
    radial_to_tetra_boundary, stereographic_project, unit_sphere_point, verify_acute, Embedding,
    RegularTetra,
};
use crate::polytope600::x543_template;

/// Stereographic images of the template vertices (pole at the centre of
/// the removed cell) and the regular tetrahedron spanned by the directions
/// of the four corners.
pub fn projected_template() -> Result<(Vec<[f64; 3]>, RegularTetra), FlattenError> {
    let t = x543_template();
    let c: [f64; 4] = std::array::from_fn(|i| t.removed4.iter().map(|p| p[i]).sum());
    let pole = unit_sphere_point(c);
    let img = t
        .points4
        .iter()
        .map(|p| stereographic_project(*p, pole))
        .collect::<Result<Vec<_>, _>>()?;
    let target = RegularTetra::from_directions(std::array::from_fn(|i| img[i]));
    Ok((img, target))
}

/// The linear part `M` and offset of the similarity taking the regular
/// tetrahedron `src` (centred at the origin) corner by corner onto `dst`.
fn similarity(src: &[[f64; 3]; 4], dst: &[[f64; 3]; 4]) -> ([[f64; 3]; 3], [f64; 3]) {
    let c: [f64; 3] = std::array::from_fn(|i| dst.iter().map(|p| p[i]).sum::<f64>() / 4.0);
    let r2: f64 = src.iter().map(|p| p.iter().map(|x| x * x).sum::<f64>()).sum::<f64>() / 4.0;
    // Σ s sᵀ = (4 r²/3) I for a regular tetrahedron centred at the origin
    let mut m = [[0.0; 3]; 3];
    for k in 0..4 {
        let d = sub(dst[k], c);
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += d[i] * src[k][j] * 3.0 / (4.0 * r2);
            }
        }
    }
    (m, c)
}

fn apply(m: &[[f64; 3]; 3], c: [f64; 3], p: [f64; 3]) -> [f64; 3] {
    add(
        std::array::from_fn(|i| m[i][0] * p[0] + m[i][1] * p[1] + m[i][2] * p[2]),
        c,
    )
}

/// Step 1 at circumradius `scale` (in units where the projection's
/// equator is the unit sphere): interior vertices stay at their
/// stereographic images, boundary vertices move radially onto the regular
/// tetrahedron, and the result is carried onto `T0` in the unit cube.
/// Vertex ids are those of [`x543_template`].
pub fn step1_realization(scale: f64) -> Result<Embedding<f64, 3>, FlattenError> {
    let (img, target) = projected_template()?;
    let boundary: Vec<u32> = (0..22).collect();
    let placed = radial_to_tetra_boundary(&img, &boundary, &target, scale)?;
    let (m, c) = similarity(&target.scaled_corners(scale), &FRAME_T0);
    Ok(Embedding::new(placed.into_iter().map(|p| apply(&m, c, p)).collect()))
}

/// Worst (smallest) dihedral cosine of the Step-1 realization at `scale`.
pub fn step1_worst_cosine(scale: f64) -> Result<f64, FlattenError> {
    let emb = step1_realization(scale)?;
    Ok(verify_acute(&x543_template().complex, &emb, 0.0)?.worst_cosine())
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ScaleInterval {
    pub lo: f64,
    pub hi: f64,
    /// Sampled scale with the largest worst cosine.
    pub best: f64,
    pub best_worst_cosine: f64,
}

/// The interval of scales in `[lo, hi]` for which every dihedral angle of
/// the Step-1 realization is below `90 − margin_deg`, located by sampling
/// and bisection. Assumes the acute set is an interval.
pub fn acute_scale_interval(lo: f64, hi: f64, margin_deg: f64) -> Result<ScaleInterval, FlattenError> {
    let threshold = margin_deg.to_radians().sin();
    let ok = |s: f64| step1_worst_cosine(s).map(|w| w > threshold);
    let samples = 48;
    let xs: Vec<f64> = (0..=samples).map(|i| lo + (hi - lo) * i as f64 / samples as f64).collect();
    let ws = xs.iter().map(|&s| step1_worst_cosine(s)).collect::<Result<Vec<_>, _>>()?;
    let (bi, &bw) = ws
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .ok_or(FlattenError::NoAcuteScale { lo, hi })?;
    if bw <= threshold {
        return Err(FlattenError::NoAcuteScale { lo, hi });
    }
    let bisect = |mut inside: f64, mut outside: f64| -> Result<f64, FlattenError> {
        for _ in 0..40 {
            let mid = 0.5 * (inside + outside);
            if ok(mid)? {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        Ok(inside)
    };
    let left = match (0..bi).rev().find(|&i| ws[i] <= threshold) {
        Some(i) => bisect(xs[bi], xs[i])?,
        None => lo,
    };
    let right = match (bi + 1..xs.len()).find(|&i| ws[i] <= threshold) {
        Some(i) => bisect(xs[bi], xs[i])?,
        None => hi,
    };
    Ok(ScaleInterval {
        lo: left,
        hi: right,
        best: xs[bi],
        best_worst_cosine: bw,
    })
}

/// Scales the points `ids` of `emb` about the centroid of `T0` by `s`.
pub(crate) fn scale_about_centre(emb: &mut Embedding<f64, 3>, ids: &[u32], s: f64) {
    let c: [f64; 3] = std::array::from_fn(|i| FRAME_T0.iter().map(|p| p[i]).sum::<f64>() / 4.0);
    for &v in ids {
        let p = &mut emb.points[v as usize];
        *p = add(c, vscale(sub(*p, c), s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corners_land_on_t0() {
        let e = step1_realization(6.0).unwrap();
        for k in 0..4 {
            let d = sub(e.points[k], FRAME_T0[k]);
            assert!(d.iter().all(|x| x.abs() < 1e-12), "{d:?}");
        }
    }

    #[test]
    fn some_scale_is_acute() {
        assert!(step1_worst_cosine(6.0).unwrap() > 0.0);
        assert!(step1_worst_cosine(4.0).unwrap() <= 0.0);
    }
}
