use super::{ComplexError, Simplex, SimplicialComplex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Richness {
    Rich,
    /// An interior codimension-2 simplex whose link is a cycle of length ≤ 4.
    NotRich { simplex: Simplex, link_length: usize },
}

impl Richness {
    pub fn is_rich(&self) -> bool {
        matches!(self, Richness::Rich)
    }
}

impl SimplicialComplex {
    /// Length of the link of an `(n−2)`-simplex when that link is a single
    /// cycle; `BadLink` otherwise (including links that are paths, as on
    /// the boundary).
    pub fn codim2_link_cycle(&self, s: &Simplex) -> Result<usize, ComplexError> {
        let n = self.dim().unwrap_or(0);
        if s.dim() + 2 != n {
            return Err(ComplexError::BadLink(s.clone()));
        }
        let d = s.dim();
        let i = self
            .index_of(s)
            .ok_or_else(|| ComplexError::SimplexNotFound(s.clone()))?;
        let ridge_ids = self.cofacets(d, i);
        let verts: Vec<u32> = ridge_ids
            .iter()
            .map(|&r| self.simplices(d + 1)[r as usize].difference(s)[0])
            .collect();
        let mut tops: Vec<u32> = ridge_ids
            .iter()
            .flat_map(|&r| self.cofacets(d + 1, r as usize).iter().copied())
            .collect();
        tops.sort_unstable();
        tops.dedup();
        let m = verts.len();
        if m < 3 || tops.len() != m {
            return Err(ComplexError::BadLink(s.clone()));
        }
        let pos = |v: u32| verts.iter().position(|&w| w == v).unwrap();
        let mut adj = vec![Vec::with_capacity(2); m];
        for &t in &tops {
            let e = self.simplices(d + 2)[t as usize].difference(s);
            let (a, b) = (pos(e[0]), pos(e[1]));
            adj[a].push(b);
            adj[b].push(a);
        }
        if adj.iter().any(|a| a.len() != 2) {
            return Err(ComplexError::BadLink(s.clone()));
        }
        // Walk the cycle from vertex 0 and make sure it visits everything.
        let (mut prev, mut cur, mut steps) = (0usize, adj[0][0], 1usize);
        while cur != 0 {
            let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
            prev = cur;
            cur = next;
            steps += 1;
            if steps > m {
                break;
            }
        }
        if steps != m {
            return Err(ComplexError::BadLink(s.clone()));
        }
        Ok(m)
    }

    /// Checks every interior `(n−2)`-simplex; returns the first one (in
    /// lexicographic order) whose link is shorter than 5.
    pub fn richness(&self) -> Result<Richness, ComplexError> {
        let n = self.check_pure()?;
        if n < 2 {
            return Err(ComplexError::DimensionTooLow {
                need: 2,
                have: n as isize,
            });
        }
        for s in self.interior_simplices(n - 2)? {
            let len = self.codim2_link_cycle(&s)?;
            if len <= 4 {
                return Ok(Richness::NotRich {
                    simplex: s,
                    link_length: len,
                });
            }
        }
        Ok(Richness::Rich)
    }

    pub fn is_rich(&self) -> bool {
        matches!(self.richness(), Ok(Richness::Rich))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_is_not_rich() {
        let s = SimplicialComplex::simplex_boundary(5);
        match s.richness().unwrap() {
            Richness::NotRich { simplex, link_length } => {
                assert_eq!(simplex.dim(), 2);
                assert_eq!(link_length, 3);
            }
            Richness::Rich => panic!("boundary of the 5-simplex has 3-cycle links"),
        }
    }

    #[test]
    fn single_simplex_vacuously_rich() {
        assert_eq!(SimplicialComplex::simplex(4).richness().unwrap(), Richness::Rich);
        assert_eq!(SimplicialComplex::simplex(2).richness().unwrap(), Richness::Rich);
    }

    #[test]
    fn pentagon_disc_is_rich_square_disc_is_not() {
        let cone = |n: u32| {
            SimplicialComplex::from_lists((0..n).map(|i| [i, (i + 1) % n, n])).unwrap()
        };
        assert!(cone(5).is_rich());
        assert_eq!(
            cone(4).richness().unwrap(),
            Richness::NotRich {
                simplex: Simplex::vertex(4),
                link_length: 4
            }
        );
    }

    #[test]
    fn bad_link_is_an_error() {
        // Two discs glued at a single interior vertex: link of 0 is two cycles.
        let mut tris: Vec<[u32; 3]> = (0..5).map(|i| [0, 1 + i, 1 + (i + 1) % 5]).collect();
        tris.extend((0..5).map(|i| [0, 6 + i, 6 + (i + 1) % 5]));
        let k = SimplicialComplex::from_lists(tris).unwrap();
        assert!(matches!(k.richness(), Err(ComplexError::BadLink(_))));
    }
}
