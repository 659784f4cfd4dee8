use std::collections::BTreeMap;

use super::{ComplexError, Simplex, SimplicialComplex, VertexId};

impl SimplicialComplex {
    /// A minimal clique of the 1-skeleton that spans no simplex, or `None`
    /// when the complex is flag. Every proper subset of the witness is a
    /// simplex.
    pub fn flag_witness(&self) -> Option<Simplex> {
        let top = self.dim()?;
        for d in 1..=top {
            for s in self.simplices(d) {
                let last = s[s.len() - 1];
                for &v in self.neighbors(s[0]) {
                    if v <= last || !s.iter().all(|u| self.has_edge(u, v)) {
                        continue;
                    }
                    let cand = Simplex::from_unsorted(s.iter().chain(std::iter::once(v)));
                    if !self.contains(&cand) && cand.facets().all(|f| self.contains(&f)) {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }

    pub fn is_flag(&self) -> bool {
        self.flag_witness().is_none()
    }

    /// A 4-cycle `a-b-c-d` of edges with neither `ac` nor `bd` an edge.
    pub fn find_empty_square(&self) -> Option<[VertexId; 4]> {
        // For each non-adjacent pair (a, c), the common neighbours b.
        let mut middles: BTreeMap<(VertexId, VertexId), Vec<VertexId>> = BTreeMap::new();
        for b in 0..self.n_vertices() as VertexId {
            let nb = self.neighbors(b);
            for (i, &a) in nb.iter().enumerate() {
                for &c in &nb[i + 1..] {
                    if !self.has_edge(a, c) {
                        middles.entry((a, c)).or_default().push(b);
                    }
                }
            }
        }
        for ((a, c), bs) in middles {
            for (i, &b) in bs.iter().enumerate() {
                for &d in &bs[i + 1..] {
                    if !self.has_edge(b, d) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
        None
    }

    pub fn is_flag_no_square(&self) -> bool {
        self.is_flag() && self.find_empty_square().is_none()
    }
}

/// Flag completion of a graph up to dimension 3: triangles and 4-cliques
/// become simplices. A 5-clique is an error.
pub fn complex_from_edges(
    n_vertices: usize,
    edges: &[[VertexId; 2]],
) -> Result<SimplicialComplex, ComplexError> {
    let mut adj = vec![Vec::new(); n_vertices];
    for &[a, b] in edges {
        if a == b || a as usize >= n_vertices || b as usize >= n_vertices {
            return Err(ComplexError::BadEdge([a, b]));
        }
        adj[a as usize].push(b);
        adj[b as usize].push(a);
    }
    for a in &mut adj {
        a.sort_unstable();
        a.dedup();
    }
    let linked = |a: VertexId, b: VertexId| adj[a as usize].binary_search(&b).is_ok();
    let mut gens: Vec<Simplex> = (0..n_vertices as VertexId).map(Simplex::vertex).collect();
    for a in 0..n_vertices as VertexId {
        let up: Vec<VertexId> = adj[a as usize].iter().copied().filter(|&b| b > a).collect();
        for (i, &b) in up.iter().enumerate() {
            gens.push(Simplex::from_unsorted([a, b]));
            for (j, &c) in up.iter().enumerate().skip(i + 1) {
                if !linked(b, c) {
                    continue;
                }
                gens.push(Simplex::from_unsorted([a, b, c]));
                for &d in &up[j + 1..] {
                    if !linked(b, d) || !linked(c, d) {
                        continue;
                    }
                    gens.push(Simplex::from_unsorted([a, b, c, d]));
                    if let Some(&e) = up.iter().find(|&&e| {
                        e != b && e != c && e != d && linked(b, e) && linked(c, e) && linked(d, e)
                    }) {
                        return Err(ComplexError::CliqueTooLarge(
                            Simplex::from_unsorted([a, b, c, d, e]).to_vec(),
                        ));
                    }
                }
            }
        }
    }
    SimplicialComplex::from_generators(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_triangle_witness() {
        let k = SimplicialComplex::from_lists([[0, 1], [1, 2], [0, 2]]).unwrap();
        assert_eq!(k.flag_witness().unwrap().to_vec(), vec![0, 1, 2]);
        assert!(SimplicialComplex::simplex(3).is_flag());
    }

    #[test]
    fn hollow_tetrahedron_witness_is_minimal() {
        let k = SimplicialComplex::simplex_boundary(3);
        assert_eq!(k.flag_witness().unwrap().to_vec(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn squares() {
        let c4 = SimplicialComplex::from_lists([[0, 1], [1, 2], [2, 3], [0, 3]]).unwrap();
        let sq = c4.find_empty_square().unwrap();
        let mut sorted = sq.to_vec();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2, 3]);
        // Octahedron boundary: ±e_i as 0..6, opposite pairs (0,1), (2,3), (4,5).
        let mut tris = Vec::new();
        for x in [0, 1] {
            for y in [2, 3] {
                for z in [4, 5] {
                    tris.push([x, y, z]);
                }
            }
        }
        let oct = SimplicialComplex::from_lists(tris).unwrap();
        let [a, b, c, d] = oct.find_empty_square().unwrap();
        assert!(oct.has_edge(a, b) && oct.has_edge(b, c) && oct.has_edge(c, d) && oct.has_edge(d, a));
        assert!(!oct.has_edge(a, c) && !oct.has_edge(b, d));
        assert!(SimplicialComplex::simplex(4).find_empty_square().is_none());
    }

    #[test]
    fn edges_to_complex() {
        let k4 = complex_from_edges(4, &[[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]).unwrap();
        assert_eq!(k4.f_vector().0, vec![4, 6, 4, 1]);
        let c5: Vec<[u32; 2]> = (0..5).map(|i| [i, (i + 1) % 5]).collect();
        assert_eq!(complex_from_edges(5, &c5).unwrap().f_vector().0, vec![5, 5]);
        let k5: Vec<[u32; 2]> = (0..5)
            .flat_map(|a| (a + 1..5).map(move |b| [a, b]))
            .collect();
        assert!(matches!(
            complex_from_edges(5, &k5),
            Err(ComplexError::CliqueTooLarge(_))
        ));
        assert!(matches!(
            complex_from_edges(2, &[[0, 0]]),
            Err(ComplexError::BadEdge(_))
        ));
    }
}
