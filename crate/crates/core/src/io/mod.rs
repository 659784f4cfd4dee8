//! Mesh documents (JSON) and export to OFF and legacy VTK.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, ComplexJson, Simplex, SimplicialComplex, VertexId};
use crate::geometry::Embedding;
use crate::scalar::{parse_rational, QSqrt5, Scalar, ScalarKind};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("malformed embedding: {0}")]
    Malformed(String),
    #[error("the document has no embedding")]
    MissingEmbedding,
    #[error("expected {expected}-dimensional points, found {found}")]
    Dimension { expected: usize, found: usize },
}

/// Coordinates as JSON: integers as numbers, rationals as `"p/q"` strings,
/// floats as numbers. Golden-ratio coordinates are written as floats.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingJson {
    pub scalar: ScalarKind,
    pub points: Vec<Vec<serde_json::Value>>,
}

/// An embedding read back from JSON, in the most exact form available.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyEmbedding {
    Int(Embedding<i128, 3>),
    Rational(Embedding<BigRational, 3>),
    Float(Embedding<f64, 3>),
}

impl AnyEmbedding {
    pub fn to_f64(&self) -> Embedding<f64, 3> {
        match self {
            AnyEmbedding::Int(e) => e.to_f64(),
            AnyEmbedding::Rational(e) => e.to_f64(),
            AnyEmbedding::Float(e) => e.clone(),
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, AnyEmbedding::Float(_))
    }

    pub fn len(&self) -> usize {
        match self {
            AnyEmbedding::Int(e) => e.len(),
            AnyEmbedding::Rational(e) => e.len(),
            AnyEmbedding::Float(e) => e.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Exact coordinates as rationals, if the embedding is exact.
    pub fn to_rational(&self) -> Option<Embedding<BigRational, 3>> {
        match self {
            AnyEmbedding::Int(e) => Some(Embedding::new(
                e.points
                    .iter()
                    .map(|p| p.map(|x| BigRational::from_integer(BigInt::from(x))))
                    .collect(),
            )),
            AnyEmbedding::Rational(e) => Some(e.clone()),
            AnyEmbedding::Float(_) => None,
        }
    }
}

impl EmbeddingJson {
    pub fn from_int<const D: usize>(e: &Embedding<i128, D>) -> Self {
        Self {
            scalar: ScalarKind::Int,
            points: e
                .points
                .iter()
                .map(|p| p.iter().map(|&x| int_value(x)).collect())
                .collect(),
        }
    }

    pub fn from_rational<const D: usize>(e: &Embedding<BigRational, D>) -> Self {
        Self {
            scalar: ScalarKind::Rational,
            points: e
                .points
                .iter()
                .map(|p| p.iter().map(|x| serde_json::Value::String(x.to_string())).collect())
                .collect(),
        }
    }

    pub fn from_f64<const D: usize>(e: &Embedding<f64, D>) -> Self {
        Self {
            scalar: ScalarKind::Float,
            points: e
                .points
                .iter()
                .map(|p| p.iter().map(|&x| serde_json::json!(x)).collect())
                .collect(),
        }
    }

    pub fn from_qsqrt5<const D: usize>(e: &Embedding<QSqrt5, D>) -> Self {
        Self::from_f64(&e.to_f64())
    }

    pub fn dim(&self) -> Option<usize> {
        self.points.first().map(Vec::len)
    }

    pub fn to_f64_points(&self) -> Result<Vec<Vec<f64>>, IoError> {
        self.points
            .iter()
            .map(|p| p.iter().map(value_f64).collect())
            .collect()
    }

    /// Reads a 3-dimensional embedding.
    pub fn to_embedding3(&self) -> Result<AnyEmbedding, IoError> {
        if let Some(p) = self.points.iter().find(|p| p.len() != 3) {
            return Err(IoError::Dimension {
                expected: 3,
                found: p.len(),
            });
        }
        Ok(match self.scalar {
            ScalarKind::Int => AnyEmbedding::Int(Embedding::new(
                self.points.iter().map(|p| arr(p, value_int)).collect::<Result<_, _>>()?,
            )),
            ScalarKind::Rational => AnyEmbedding::Rational(Embedding::new(
                self.points
                    .iter()
                    .map(|p| arr(p, value_rational))
                    .collect::<Result<_, _>>()?,
            )),
            ScalarKind::Float | ScalarKind::Golden => AnyEmbedding::Float(Embedding::new(
                self.points.iter().map(|p| arr(p, value_f64)).collect::<Result<_, _>>()?,
            )),
        })
    }
}

fn arr<T>(
    p: &[serde_json::Value],
    f: fn(&serde_json::Value) -> Result<T, IoError>,
) -> Result<[T; 3], IoError> {
    Ok([f(&p[0])?, f(&p[1])?, f(&p[2])?])
}

fn int_value(x: i128) -> serde_json::Value {
    match i64::try_from(x) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::String(x.to_string()),
    }
}

fn value_int(v: &serde_json::Value) -> Result<i128, IoError> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(i128::from)
            .ok_or_else(|| IoError::Malformed(format!("{n} is not an integer"))),
        serde_json::Value::String(s) => {
            i128::from_str(s).map_err(|_| IoError::Malformed(format!("{s:?} is not an integer")))
        }
        other => Err(IoError::Malformed(format!("{other} is not an integer"))),
    }
}

fn value_rational(v: &serde_json::Value) -> Result<BigRational, IoError> {
    match v {
        serde_json::Value::String(s) => {
            parse_rational(s).ok_or_else(|| IoError::Malformed(format!("{s:?} is not a rational")))
        }
        _ => value_int(v).map(|x| BigRational::from_integer(BigInt::from(x))),
    }
}

fn value_f64(v: &serde_json::Value) -> Result<f64, IoError> {
    match v {
        serde_json::Value::Number(n) => {
            n.as_f64().ok_or_else(|| IoError::Malformed(format!("{n} is not a number")))
        }
        serde_json::Value::String(_) => value_rational(v)?
            .to_f64()
            .ok_or_else(|| IoError::Malformed(format!("{v} overflows"))),
        other => Err(IoError::Malformed(format!("{other} is not a number"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Metadata {
    pub name: String,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshDocument {
    pub complex: ComplexJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<EmbeddingJson>,
    pub metadata: Metadata,
}

impl MeshDocument {
    pub fn new(k: &SimplicialComplex, name: &str, provenance: &str) -> Self {
        Self {
            complex: k.to_json(),
            embedding: None,
            metadata: Metadata {
                name: name.to_string(),
                provenance: provenance.to_string(),
            },
        }
    }

    pub fn with_embedding(mut self, e: EmbeddingJson) -> Self {
        self.embedding = Some(e);
        self
    }

    /// Pretty JSON with keys in sorted order.
    pub fn to_json_string(&self) -> Result<String, IoError> {
        let v = serde_json::to_value(self)?;
        let mut s = serde_json::to_string_pretty(&v)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json_str(s: &str) -> Result<Self, IoError> {
        let doc: Self = serde_json::from_str(s)?;
        doc.validate()?;
        Ok(doc)
    }

    fn validate(&self) -> Result<(), IoError> {
        if let Some(e) = &self.embedding {
            if e.points.len() != self.complex.n_vertices {
                return Err(IoError::Malformed(format!(
                    "{} points for {} vertices",
                    e.points.len(),
                    self.complex.n_vertices
                )));
            }
            if let Some(d) = e.dim() {
                if let Some(p) = e.points.iter().find(|p| p.len() != d) {
                    return Err(IoError::Dimension {
                        expected: d,
                        found: p.len(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn complex(&self) -> Result<SimplicialComplex, IoError> {
        Ok(SimplicialComplex::from_json(&self.complex)?)
    }

    pub fn embedding3(&self) -> Result<AnyEmbedding, IoError> {
        self.embedding.as_ref().ok_or(IoError::MissingEmbedding)?.to_embedding3()
    }
}

/// Boundary triangles of a pure 3-complex, each oriented so that its
/// normal points away from the tetrahedron it bounds.
pub fn oriented_boundary<T: Scalar>(
    k: &SimplicialComplex,
    e: &Embedding<T, 3>,
) -> Result<Vec<[VertexId; 3]>, IoError> {
    let tets = k.facets_of_dim(3);
    let mut out = Vec::new();
    for f in k.boundary_facets()? {
        let tet = tets
            .iter()
            .find(|t| f.is_face_of(t))
            .ok_or_else(|| IoError::Malformed(format!("boundary face {f:?} has no tetrahedron")))?;
        let d = tet.difference(&f).iter().next().expect("opposite vertex");
        let v: Vec<VertexId> = f.iter().collect();
        let o = crate::geometry::orient3d(e.point(v[0]), e.point(v[1]), e.point(v[2]), e.point(d));
        // orient3d > 0 means d is on the positive side; flip so it is not
        if o > T::zero() {
            out.push([v[0], v[2], v[1]]);
        } else {
            out.push([v[0], v[1], v[2]]);
        }
    }
    Ok(out)
}

/// ASCII OFF of the boundary surface. All vertices are written so that
/// ids agree with the complex.
pub fn write_off<T: Scalar>(k: &SimplicialComplex, e: &Embedding<T, 3>) -> Result<String, IoError> {
    let tris = oriented_boundary(k, e)?;
    let pts = e.to_f64();
    let mut s = String::from("OFF\n");
    let _ = writeln!(s, "{} {} 0", pts.len(), tris.len());
    for p in &pts.points {
        let _ = writeln!(s, "{} {} {}", p[0], p[1], p[2]);
    }
    for t in &tris {
        let _ = writeln!(s, "3 {} {} {}", t[0], t[1], t[2]);
    }
    Ok(s)
}

/// Tetrahedron list in the `.ele` layout: a header `n 4 0`, then one
/// numbered row per tetrahedron.
pub fn write_ele(k: &SimplicialComplex) -> String {
    let tets = k.facets_of_dim(3);
    let mut s = String::new();
    let _ = writeln!(s, "{} 4 0", tets.len());
    for (i, t) in tets.iter().enumerate() {
        let v: Vec<VertexId> = t.iter().collect();
        let _ = writeln!(s, "{i} {} {} {} {}", v[0], v[1], v[2], v[3]);
    }
    s
}

/// Legacy ASCII VTK unstructured grid of the maximal simplices (triangles
/// as cell type 5, tetrahedra as 10).
pub fn write_vtk<T: Scalar>(
    k: &SimplicialComplex,
    e: &Embedding<T, 3>,
    title: &str,
) -> Result<String, IoError> {
    let cells: Vec<Simplex> = k
        .maximal_simplices()
        .into_iter()
        .filter(|s| s.dim() >= 2)
        .collect();
    if let Some(s) = cells.iter().find(|s| s.dim() > 3) {
        return Err(IoError::Dimension {
            expected: 3,
            found: s.dim(),
        });
    }
    let pts = e.to_f64();
    let mut s = String::from("# vtk DataFile Version 3.0\n");
    let _ = writeln!(s, "{}", title.lines().next().unwrap_or(""));
    s.push_str("ASCII\nDATASET UNSTRUCTURED_GRID\n");
    let _ = writeln!(s, "POINTS {} double", pts.len());
    for p in &pts.points {
        let _ = writeln!(s, "{} {} {}", p[0], p[1], p[2]);
    }
    let size: usize = cells.iter().map(|c| c.dim() + 2).sum();
    let _ = writeln!(s, "CELLS {} {}", cells.len(), size);
    for c in &cells {
        let v: Vec<String> = c.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "{} {}", v.len(), v.join(" "));
    }
    let _ = writeln!(s, "CELL_TYPES {}", cells.len());
    for c in &cells {
        let _ = writeln!(s, "{}", if c.dim() == 3 { 10 } else { 5 });
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_tet() -> (SimplicialComplex, Embedding<i128, 3>) {
        let k = SimplicialComplex::simplex(3);
        let e = Embedding::new(vec![[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        (k, e)
    }

    #[test]
    fn document_round_trip() {
        let (k, e) = unit_tet();
        let doc = MeshDocument::new(&k, "tet", "test").with_embedding(EmbeddingJson::from_int(&e));
        let s = doc.to_json_string().unwrap();
        let back = MeshDocument::from_json_str(&s).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.embedding3().unwrap(), AnyEmbedding::Int(e));
        // keys come out sorted
        let c = s.find("\"complex\"").unwrap();
        let m = s.find("\"metadata\"").unwrap();
        assert!(s.find("\"embedding\"").unwrap() > c && m > c);
    }

    #[test]
    fn rationals_round_trip() {
        let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
        let e = Embedding::new(vec![[r(1, 3), r(-2, 5), r(7, 1)]]);
        let j = EmbeddingJson::from_rational(&e);
        assert_eq!(j.points[0][0], serde_json::json!("1/3"));
        assert_eq!(j.to_embedding3().unwrap(), AnyEmbedding::Rational(e));
    }

    #[test]
    fn rejects_wrong_point_count() {
        let (k, e) = unit_tet();
        let mut doc = MeshDocument::new(&k, "tet", "test").with_embedding(EmbeddingJson::from_int(&e));
        doc.embedding.as_mut().unwrap().points.pop();
        let s = serde_json::to_string(&doc).unwrap();
        assert!(matches!(MeshDocument::from_json_str(&s), Err(IoError::Malformed(_))));
    }

    #[test]
    fn off_faces_point_outwards() {
        let (k, e) = unit_tet();
        let off = write_off(&k, &e).unwrap();
        assert!(off.starts_with("OFF\n4 4 0\n"));
        for t in oriented_boundary(&k, &e).unwrap() {
            let d = (0..4).find(|v| !t.contains(v)).unwrap();
            let o = crate::geometry::orient3d(e.point(t[0]), e.point(t[1]), e.point(t[2]), e.point(d));
            assert!(o < 0);
        }
    }

    #[test]
    fn vtk_has_tetra_cells() {
        let (k, e) = unit_tet();
        let v = write_vtk(&k, &e, "tet").unwrap();
        assert!(v.contains("CELLS 1 5\n4 0 1 2 3\n"));
        assert!(v.ends_with("CELL_TYPES 1\n10\n"));
        assert_eq!(write_ele(&k), "1 4 0\n0 0 1 2 3\n");
    }
}
