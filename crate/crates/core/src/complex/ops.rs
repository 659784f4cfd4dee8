use super::{ComplexError, Simplex, SimplicialComplex, VertexId};

impl SimplicialComplex {
    /// Stellar subdivision at `s`: its open star is replaced by the cone
    /// from a new vertex (id `n_vertices()`) over `∂s * link(s)`.
    pub fn stellar_subdivision(&self, s: &Simplex) -> Result<Self, ComplexError> {
        if !self.contains(s) {
            return Err(ComplexError::SimplexNotFound(s.clone()));
        }
        if s.len() == 1 {
            // Subdividing at a vertex only renames it.
            return Ok(self.clone());
        }
        let w = self.n_vertices() as VertexId;
        let mut gens = Vec::new();
        for m in self.maximal_simplices() {
            if !s.is_face_of(&m) {
                gens.push(m);
                continue;
            }
            let rest: Vec<VertexId> = m.iter().filter(|&v| !s.contains_vertex(v)).collect();
            for f in s.facets() {
                gens.push(Simplex::from_unsorted(
                    rest.iter().copied().chain(f.iter()).chain([w]),
                ));
            }
        }
        Self::from_generators(gens)
    }

    /// The complex generated by all maximal simplices except `s`. Vertices
    /// left isolated are dropped and ids compacted.
    pub fn without_facet(&self, s: &Simplex) -> Result<Self, ComplexError> {
        let maximal = self.maximal_simplices();
        if !maximal.contains(s) {
            return Err(ComplexError::SimplexNotFound(s.clone()));
        }
        let rest: Vec<Simplex> = maximal.into_iter().filter(|m| m != s).collect();
        if rest.is_empty() {
            return Ok(Self::empty());
        }
        Ok(super::SubComplex::from_parent_simplices(rest).complex)
    }

    /// Join with a second complex; vertices of `other` are shifted past ours.
    pub fn join(&self, other: &Self) -> Self {
        let shift = self.n_vertices() as VertexId;
        let mut gens = Vec::new();
        for a in self.maximal_simplices() {
            for b in other.maximal_simplices() {
                gens.push(Simplex::from_unsorted(a.iter().chain(b.iter().map(|v| v + shift))));
            }
        }
        Self::from_generators(gens).expect("join of dense complexes is dense")
    }
}
