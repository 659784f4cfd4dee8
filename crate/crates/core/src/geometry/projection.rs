//! Maps used to realize a spherical 3-ball in `R^3`: stereographic
//! projection out of `S^3` and radial placement onto a tetrahedron.

use super::vec3;
use super::GeometryError;

fn dot4(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Scales `p` onto the unit sphere.
pub fn unit_sphere_point(p: [f64; 4]) -> [f64; 4] {
    let n = dot4(&p, &p).sqrt();
    p.map(|c| c / n)
}

/// Orthonormal basis of the hyperplane orthogonal to the unit vector `n`,
/// by Gram–Schmidt on the coordinate axes (deterministic).
fn complement_basis(n: &[f64; 4]) -> [[f64; 4]; 3] {
    let mut basis: Vec<[f64; 4]> = Vec::with_capacity(3);
    let mut axes: Vec<usize> = (0..4).collect();
    // Start from the axes least aligned with n for numerical stability.
    axes.sort_by(|&a, &b| n[a].abs().total_cmp(&n[b].abs()).then(a.cmp(&b)));
    for &ax in &axes {
        let mut v = [0.0; 4];
        v[ax] = 1.0;
        for b in std::iter::once(n).chain(basis.iter()) {
            let d = dot4(&v, b);
            for i in 0..4 {
                v[i] -= d * b[i];
            }
        }
        let len = dot4(&v, &v).sqrt();
        if len > 1e-6 {
            basis.push(v.map(|c| c / len));
        }
        if basis.len() == 3 {
            break;
        }
    }
    [basis[0], basis[1], basis[2]]
}

/// Stereographic projection of the unit sphere from `pole` onto the
/// hyperplane through the origin orthogonal to it, written in an
/// orthonormal basis of that hyperplane.
///
/// `−pole` goes to the origin, the equator `{x · pole = 0}` is fixed, and
/// `pole` itself has no image.
pub fn stereographic_project(p: [f64; 4], pole: [f64; 4]) -> Result<[f64; 3], GeometryError> {
    let n = unit_sphere_point(pole);
    let denom = 1.0 - dot4(&p, &n);
    if denom.abs() < 1e-12 {
        return Err(GeometryError::ProjectionPole);
    }
    let img: [f64; 4] = std::array::from_fn(|i| n[i] + (p[i] - n[i]) / denom);
    let basis = complement_basis(&n);
    Ok(basis.map(|b| dot4(&img, &b)))
}

/// A regular tetrahedron centred at the origin with circumradius 1.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularTetra {
    pub corners: [[f64; 3]; 4],
}

impl RegularTetra {
    /// Corners along four given directions (normalized). The directions
    /// must be those of a regular tetrahedron for the result to be one.
    pub fn from_directions(dirs: [[f64; 3]; 4]) -> Self {
        Self {
            corners: dirs.map(|d| vec3::scale(d, 1.0 / vec3::norm(d))),
        }
    }

    pub fn standard() -> Self {
        Self::from_directions([[1.0, 1.0, 1.0], [-1.0, -1.0, 1.0], [-1.0, 1.0, -1.0], [1.0, -1.0, -1.0]])
    }

    pub fn scaled_corners(&self, scale: f64) -> [[f64; 3]; 4] {
        self.corners.map(|c| vec3::scale(c, scale))
    }

    /// Outward unit normal and offset `h` of each face (`n · x ≤ h` inside),
    /// face `i` being opposite corner `i`.
    pub fn faces(&self) -> [([f64; 3], f64); 4] {
        std::array::from_fn(|i| {
            let [a, b, c] = [0, 1, 2, 3]
                .into_iter()
                .filter(|&j| j != i)
                .map(|j| self.corners[j])
                .collect::<Vec<_>>()[..]
            else {
                unreachable!()
            };
            let mut n = vec3::cross(vec3::sub(b, a), vec3::sub(c, a));
            if vec3::dot(n, vec3::sub(self.corners[i], a)) > 0.0 {
                n = vec3::scale(n, -1.0);
            }
            let n = vec3::scale(n, 1.0 / vec3::norm(n));
            (n, vec3::dot(n, a))
        })
    }

    /// Where the ray from the origin through `p` leaves the tetrahedron
    /// scaled by `scale`.
    pub fn ray_exit(&self, p: [f64; 3], scale: f64) -> Result<[f64; 3], GeometryError> {
        let mut best: Option<f64> = None;
        for (n, h) in self.faces() {
            let d = vec3::dot(n, p);
            if d > 1e-15 {
                let t = h * scale / d;
                best = Some(best.map_or(t, |b: f64| b.min(t)));
            }
        }
        best.map(|t| vec3::scale(p, t)).ok_or(GeometryError::RayMiss)
    }
}

/// Moves each listed vertex along its ray from the origin onto the boundary
/// of `target` scaled by `scale`; other points are untouched.
pub fn radial_to_tetra_boundary(
    points: &[[f64; 3]],
    boundary_vertices: &[u32],
    target: &RegularTetra,
    scale: f64,
) -> Result<Vec<[f64; 3]>, GeometryError> {
    let mut out = points.to_vec();
    for &v in boundary_vertices {
        out[v as usize] = target.ray_exit(points[v as usize], scale)?;
    }
    Ok(out)
}
