use serde::{Deserialize, Serialize};

use super::{ComplexError, Simplex, SimplicialComplex, VertexId};

/// Interchange form: maximal simplices only, each sorted, listed in
/// lexicographic order. `dim` is −1 for the empty complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub dim: i64,
    pub n_vertices: usize,
    pub maximal_simplices: Vec<Vec<VertexId>>,
}

impl From<&SimplicialComplex> for ComplexJson {
    fn from(k: &SimplicialComplex) -> Self {
        Self {
            dim: k.dim().map_or(-1, |d| d as i64),
            n_vertices: k.n_vertices(),
            maximal_simplices: k.maximal_simplices().iter().map(|s| s.to_vec()).collect(),
        }
    }
}

impl TryFrom<&ComplexJson> for SimplicialComplex {
    type Error = ComplexError;

    fn try_from(doc: &ComplexJson) -> Result<Self, ComplexError> {
        if doc.maximal_simplices.is_empty() {
            return if doc.n_vertices == 0 {
                Ok(SimplicialComplex::empty())
            } else {
                Err(ComplexError::Malformed("vertices without simplices".into()))
            };
        }
        let k = SimplicialComplex::from_lists(doc.maximal_simplices.iter().cloned())?;
        if k.n_vertices() != doc.n_vertices {
            return Err(ComplexError::Malformed(format!(
                "n_vertices is {} but simplices use {}",
                doc.n_vertices,
                k.n_vertices()
            )));
        }
        if k.dim().map_or(-1, |d| d as i64) != doc.dim {
            return Err(ComplexError::Malformed(format!(
                "dim is {} but simplices have dimension {:?}",
                doc.dim,
                k.dim()
            )));
        }
        let maximal = k.maximal_simplices().len();
        if maximal != doc.maximal_simplices.len() {
            return Err(ComplexError::Malformed(
                "listed simplices are not all maximal".into(),
            ));
        }
        Ok(k)
    }
}

impl SimplicialComplex {
    pub fn to_json(&self) -> ComplexJson {
        ComplexJson::from(self)
    }

    pub fn from_json(doc: &ComplexJson) -> Result<Self, ComplexError> {
        Self::try_from(doc)
    }

    /// Maximal simplices of the given dimension, e.g. the tetrahedra of a
    /// pure 3-complex.
    pub fn facets_of_dim(&self, d: usize) -> Vec<Simplex> {
        self.maximal_simplices()
            .into_iter()
            .filter(|s| s.dim() == d)
            .collect()
    }
}
