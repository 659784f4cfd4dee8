use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{dihedral_terms, Embedding, GeometryError};
use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleEntry {
    pub tet: usize,
    pub edge: [VertexId; 2],
    pub cos: f64,
    pub acute: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleSummary {
    pub min_deg: f64,
    pub max_deg: f64,
    pub n_failures: usize,
}

/// Dihedral data for every (tetrahedron, edge) pair, six per tetrahedron
/// in the order of the complex's tetrahedra.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleReport {
    pub tets: Vec<Simplex>,
    pub entries: Vec<AngleEntry>,
    pub min_deg: f64,
    pub max_deg: f64,
    /// Entries failing the verdict, as (tetrahedron index, edge).
    pub failures: Vec<(usize, [VertexId; 2])>,
    pub exact: bool,
    pub margin_deg: f64,
}

impl AngleReport {
    pub fn is_acute(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> AngleSummary {
        AngleSummary {
            min_deg: self.min_deg,
            max_deg: self.max_deg,
            n_failures: self.failures.len(),
        }
    }

    /// Smallest dihedral cosine, i.e. the cosine of the largest angle.
    pub fn worst_cosine(&self) -> f64 {
        self.entries.iter().map(|e| e.cos).fold(f64::INFINITY, f64::min)
    }

    /// Counts of angles in `[k·width, (k+1)·width)` degrees.
    pub fn histogram(&self, width_deg: f64) -> Vec<usize> {
        let bins = (180.0 / width_deg).ceil() as usize;
        let mut h = vec![0; bins];
        for e in &self.entries {
            let a = e.cos.acos().to_degrees();
            h[((a / width_deg) as usize).min(bins - 1)] += 1;
        }
        h
    }

    /// `{"tetrahedra": [[{edge, cos, acute} × 6], …], "summary": {…}}`
    pub fn to_json(&self) -> serde_json::Value {
        let tets: Vec<serde_json::Value> = self
            .entries
            .chunks(6)
            .map(|c| {
                serde_json::Value::Array(
                    c.iter()
                        .map(|e| json!({"acute": e.acute, "cos": e.cos, "edge": e.edge}))
                        .collect(),
                )
            })
            .collect();
        json!({
            "summary": self.summary(),
            "tetrahedra": tets,
        })
    }
}

/// Computes every dihedral angle of a pure 3-complex.
///
/// With an exact scalar the verdict is the exact sign of each dihedral
/// numerator and `margin_deg` must be zero. With floats an angle passes
/// when it is below `90 − margin_deg` degrees.
pub fn verify_acute<T: Scalar>(
    k: &SimplicialComplex,
    emb: &Embedding<T, 3>,
    margin_deg: f64,
) -> Result<AngleReport, GeometryError> {
    if T::EXACT && margin_deg != 0.0 {
        return Err(GeometryError::MarginInExactMode(margin_deg));
    }
    if k.dim() != Some(3) || !k.is_pure() {
        return Err(GeometryError::NotTetrahedral);
    }
    emb.check_size(k.n_vertices())?;
    let threshold = margin_deg.to_radians().sin();
    let tets = k.simplices(3).to_vec();
    let mut entries = Vec::with_capacity(tets.len() * 6);
    let mut failures = Vec::new();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for (ti, t) in tets.iter().enumerate() {
        let p = [emb.point(t[0]), emb.point(t[1]), emb.point(t[2]), emb.point(t[3])];
        let terms = dihedral_terms(p).map_err(|e| match e {
            GeometryError::DegenerateTetrahedron(_) => GeometryError::DegenerateTetrahedron(t.clone()),
            other => other,
        })?;
        for term in terms {
            let cos = term.cos_f64();
            let acute = if T::EXACT {
                term.is_acute()
            } else {
                cos > threshold
            };
            let edge = [t[term.edge[0]], t[term.edge[1]]];
            let deg = cos.acos().to_degrees();
            lo = lo.min(deg);
            hi = hi.max(deg);
            if !acute {
                failures.push((ti, edge));
            }
            entries.push(AngleEntry {
                tet: ti,
                edge,
                cos,
                acute,
            });
        }
    }
    Ok(AngleReport {
        tets,
        entries,
        min_deg: lo,
        max_deg: hi,
        failures,
        exact: T::EXACT,
        margin_deg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn regular() -> (SimplicialComplex, Embedding<i128, 3>) {
        (
            SimplicialComplex::simplex(3),
            Embedding::new(vec![[1, 1, 1], [-1, -1, 1], [-1, 1, -1], [1, -1, -1]]),
        )
    }

    #[test]
    fn exact_regular_is_acute() {
        let (k, e) = regular();
        let r = verify_acute(&k, &e, 0.0).unwrap();
        assert!(r.is_acute() && r.exact);
        assert_eq!(r.entries.len(), 6);
        assert!((r.max_deg - 70.528_779_365_509_3).abs() < 1e-9);
        assert!(matches!(
            verify_acute(&k, &e, 1e-6),
            Err(GeometryError::MarginInExactMode(_))
        ));
    }

    #[test]
    fn cube_corner_fails_exactly_on_legs() {
        let k = SimplicialComplex::simplex(3);
        let e: Embedding<i128, 3> = Embedding::new(vec![[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        let r = verify_acute(&k, &e, 0.0).unwrap();
        assert_eq!(r.failures, vec![(0, [0, 1]), (0, [0, 2]), (0, [0, 3])]);
        let f = verify_acute(&k, &e.to_f64(), 1e-6).unwrap();
        assert_eq!(f.failures.len(), 3);
        assert!((f.max_deg - 90.0).abs() < 1e-12);
    }

    #[test]
    fn json_shape() {
        let (k, e) = regular();
        let v = verify_acute(&k, &e, 0.0).unwrap().to_json();
        assert_eq!(v["tetrahedra"].as_array().unwrap().len(), 1);
        assert_eq!(v["tetrahedra"][0].as_array().unwrap().len(), 6);
        assert_eq!(v["summary"]["n_failures"], 0);
    }
}
