//! Abstract simplicial complexes.
//!
//! A [`SimplicialComplex`] stores every simplex explicitly, grouped by
//! dimension and sorted, together with the cofacet incidence between
//! consecutive dimensions. Complexes never change after construction.

mod flag;
mod iso;
mod json;
mod ops;
mod rich;
mod simplex;

pub use flag::complex_from_edges;
pub use iso::are_isomorphic;
pub use json::ComplexJson;
pub use rich::Richness;
pub use simplex::{Simplex, VertexId};

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("no simplices given")]
    Empty,
    #[error("simplex {0:?} repeats a vertex")]
    DegenerateSimplex(Vec<VertexId>),
    #[error("simplex {0:?} given twice")]
    DuplicateSimplex(Vec<VertexId>),
    #[error("vertex ids are not dense: {0} is missing")]
    VertexGap(VertexId),
    #[error("simplex {0} is not in the complex")]
    SimplexNotFound(Simplex),
    #[error("complex is not pure: maximal simplex {0} has the wrong dimension")]
    NotPure(Simplex),
    #[error("codimension-one simplex {0} lies in {1} top simplices")]
    NonPseudomanifold(Simplex, usize),
    #[error("operation needs dimension at least {need}, complex has dimension {have}")]
    DimensionTooLow { need: usize, have: isize },
    #[error("link of interior simplex {0} is not a cycle")]
    BadLink(Simplex),
    #[error("vertices {0:?} form a clique too large for a 3-dimensional complex")]
    CliqueTooLarge(Vec<VertexId>),
    #[error("edge {0:?} is a loop or mentions a vertex outside the graph")]
    BadEdge([VertexId; 2]),
    #[error("malformed complex document: {0}")]
    Malformed(String),
}

/// Simplex counts `f_0, …, f_dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    /// `f_i`, zero past the top dimension.
    pub fn get(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn euler(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Default)]
pub struct SimplicialComplex {
    levels: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, u32>>,
    // cofacets[d][i]: indices into levels[d + 1] of simplices containing levels[d][i]
    cofacets: Vec<Vec<Vec<u32>>>,
    neighbors: Vec<Vec<VertexId>>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("f_vector", &self.f_vector().0)
            .finish()
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.levels == other.levels
    }
}

impl Eq for SimplicialComplex {}

/// A complex extracted from a larger one, relabelled densely.
/// `vertex_map[new] = old`.
#[derive(Debug, Clone)]
pub struct SubComplex {
    pub complex: SimplicialComplex,
    pub vertex_map: Vec<VertexId>,
}

impl SubComplex {
    /// Relabels `gens` (given in parent ids) densely and closes under faces.
    pub fn from_parent_simplices<I>(gens: I) -> Self
    where
        I: IntoIterator<Item = Simplex>,
    {
        let gens: Vec<Simplex> = gens.into_iter().collect();
        let mut vertex_map: Vec<VertexId> = gens.iter().flat_map(|s| s.iter()).collect();
        vertex_map.sort_unstable();
        vertex_map.dedup();
        let lookup: HashMap<VertexId, VertexId> = vertex_map
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as VertexId))
            .collect();
        let complex = SimplicialComplex::from_generators(
            gens.iter().map(|s| Simplex::from_unsorted(s.iter().map(|v| lookup[&v]))),
        )
        .expect("relabelled vertex ids are dense");
        Self {
            complex,
            vertex_map,
        }
    }

    pub fn to_parent(&self, s: &Simplex) -> Simplex {
        Simplex::from_unsorted(s.iter().map(|v| self.vertex_map[v as usize]))
    }
}

/// Builds a complex from its maximal simplices (any generating set works;
/// faces are added automatically).
pub fn build_complex(maximal: Vec<Simplex>) -> Result<SimplicialComplex, ComplexError> {
    SimplicialComplex::from_maximal(maximal)
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Rejects empty input and repeated simplices, then closes under faces.
    pub fn from_maximal(maximal: Vec<Simplex>) -> Result<Self, ComplexError> {
        if maximal.is_empty() {
            return Err(ComplexError::Empty);
        }
        let mut seen = HashSet::with_capacity(maximal.len());
        for s in &maximal {
            if !seen.insert(s) {
                return Err(ComplexError::DuplicateSimplex(s.to_vec()));
            }
        }
        Self::from_generators(maximal)
    }

    /// Like [`Self::from_maximal`] but from raw vertex lists.
    pub fn from_lists<I, L>(lists: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = L>,
        L: IntoIterator<Item = VertexId>,
    {
        let maximal = lists
            .into_iter()
            .map(Simplex::new)
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_maximal(maximal)
    }

    /// Face closure of an arbitrary generating set. Repeats are allowed.
    pub(crate) fn from_generators<I>(gens: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = Simplex>,
    {
        let mut sets: Vec<HashSet<Simplex>> = Vec::new();
        let mut stack: Vec<Simplex> = Vec::new();
        for g in gens {
            stack.push(g);
            while let Some(s) = stack.pop() {
                let d = s.dim();
                if sets.len() <= d {
                    sets.resize_with(d + 1, HashSet::new);
                }
                if sets[d].contains(&s) {
                    continue;
                }
                if d > 0 {
                    stack.extend(s.facets());
                }
                sets[d].insert(s);
            }
        }
        let levels: Vec<Vec<Simplex>> = sets
            .into_iter()
            .map(|set| {
                let mut v: Vec<Simplex> = set.into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect();
        if let Some(verts) = levels.first() {
            for (i, s) in verts.iter().enumerate() {
                if s[0] as usize != i {
                    return Err(ComplexError::VertexGap(i as VertexId));
                }
            }
        }
        Ok(Self::index_levels(levels))
    }

    fn index_levels(levels: Vec<Vec<Simplex>>) -> Self {
        let index: Vec<HashMap<Simplex, u32>> = levels
            .iter()
            .map(|lvl| {
                lvl.iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i as u32))
                    .collect()
            })
            .collect();
        let mut cofacets: Vec<Vec<Vec<u32>>> =
            levels.iter().map(|lvl| vec![Vec::new(); lvl.len()]).collect();
        for d in 1..levels.len() {
            for (j, s) in levels[d].iter().enumerate() {
                for f in s.facets() {
                    cofacets[d - 1][index[d - 1][&f] as usize].push(j as u32);
                }
            }
        }
        let n = levels.first().map_or(0, Vec::len);
        let mut neighbors = vec![Vec::new(); n];
        if let Some(edges) = levels.get(1) {
            for e in edges {
                neighbors[e[0] as usize].push(e[1]);
                neighbors[e[1] as usize].push(e[0]);
            }
        }
        for nb in &mut neighbors {
            nb.sort_unstable();
        }
        Self {
            levels,
            index,
            cofacets,
            neighbors,
        }
    }

    /// Dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.levels.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn n_vertices(&self) -> usize {
        self.levels.first().map_or(0, Vec::len)
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.levels.iter().map(Vec::len).collect())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler()
    }

    /// The `d`-simplices in lexicographic order.
    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.levels.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.levels.iter().flatten()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).map(|&i| i as usize)
    }

    /// Indices (into `simplices(d + 1)`) of the simplices having
    /// `simplices(d)[i]` as a facet.
    pub fn cofacets(&self, d: usize, i: usize) -> &[u32] {
        self.cofacets
            .get(d)
            .and_then(|c| c.get(i))
            .map_or(&[], Vec::as_slice)
    }

    /// Sorted neighbours of `v` in the 1-skeleton.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.neighbors[v as usize]
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.neighbors[a as usize].binary_search(&b).is_ok()
    }

    /// Simplices that are not a face of anything larger.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for (d, lvl) in self.levels.iter().enumerate() {
            for (i, s) in lvl.iter().enumerate() {
                if self.cofacets(d, i).is_empty() {
                    out.push(s.clone());
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Every simplex strictly containing `s`, grouped by dimension.
    pub fn proper_cofaces(&self, s: &Simplex) -> Result<Vec<Vec<Simplex>>, ComplexError> {
        let start = self
            .index_of(s)
            .ok_or_else(|| ComplexError::SimplexNotFound(s.clone()))?;
        let mut out = Vec::new();
        let mut frontier = vec![start as u32];
        let mut d = s.dim();
        while !frontier.is_empty() && d + 1 < self.levels.len() {
            let mut next: Vec<u32> = frontier
                .iter()
                .flat_map(|&i| self.cofacets(d, i as usize).iter().copied())
                .collect();
            next.sort_unstable();
            next.dedup();
            d += 1;
            out.push(
                next.iter()
                    .map(|&i| self.levels[d][i as usize].clone())
                    .collect(),
            );
            frontier = next;
        }
        Ok(out)
    }

    /// Link of `s`: all simplices disjoint from `s` whose join with `s`
    /// is in the complex.
    pub fn link(&self, s: &Simplex) -> Result<SubComplex, ComplexError> {
        let cofaces = self.proper_cofaces(s)?;
        Ok(SubComplex::from_parent_simplices(
            cofaces.into_iter().flatten().map(|r| r.difference(s)),
        ))
    }

    /// Checks that every maximal simplex has the top dimension.
    pub fn check_pure(&self) -> Result<usize, ComplexError> {
        let n = self.dim().ok_or(ComplexError::Empty)?;
        for (d, lvl) in self.levels.iter().enumerate().take(n) {
            for (i, s) in lvl.iter().enumerate() {
                if self.cofacets(d, i).is_empty() {
                    return Err(ComplexError::NotPure(s.clone()));
                }
            }
        }
        Ok(n)
    }

    pub fn is_pure(&self) -> bool {
        self.check_pure().is_ok()
    }

    /// The `(n−1)`-simplices lying in exactly one `n`-simplex.
    pub fn boundary_facets(&self) -> Result<Vec<Simplex>, ComplexError> {
        let n = self.check_pure()?;
        if n == 0 {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for (i, s) in self.levels[n - 1].iter().enumerate() {
            match self.cofacets(n - 1, i).len() {
                1 => out.push(s.clone()),
                2 => {}
                k => return Err(ComplexError::NonPseudomanifold(s.clone(), k)),
            }
        }
        Ok(out)
    }

    /// The boundary as its own complex (possibly empty), relabelled densely.
    pub fn boundary_complex(&self) -> Result<SubComplex, ComplexError> {
        Ok(SubComplex::from_parent_simplices(self.boundary_facets()?))
    }

    /// All simplices of the boundary, in parent ids.
    pub fn boundary_simplex_set(&self) -> Result<HashSet<Simplex>, ComplexError> {
        let mut set = HashSet::new();
        for f in self.boundary_facets()? {
            for face in f.faces() {
                set.insert(face);
            }
        }
        Ok(set)
    }

    /// Vertices lying on the boundary, sorted.
    pub fn boundary_vertices(&self) -> Result<Vec<VertexId>, ComplexError> {
        let mut v: Vec<VertexId> = self
            .boundary_facets()?
            .iter()
            .flat_map(|s| s.iter())
            .collect();
        v.sort_unstable();
        v.dedup();
        Ok(v)
    }

    /// The `d`-simplices not contained in the boundary.
    pub fn interior_simplices(&self, d: usize) -> Result<Vec<Simplex>, ComplexError> {
        let bd = self.boundary_simplex_set()?;
        Ok(self
            .simplices(d)
            .iter()
            .filter(|s| !bd.contains(*s))
            .cloned()
            .collect())
    }

    /// Applies a vertex relabelling `perm[old] = new`.
    pub fn relabel(&self, perm: &[VertexId]) -> Self {
        Self::from_generators(
            self.maximal_simplices()
                .iter()
                .map(|s| Simplex::from_unsorted(s.iter().map(|v| perm[v as usize]))),
        )
        .expect("a permutation keeps ids dense")
    }

    /// Cone over the complex with apex `n_vertices()`.
    pub fn cone(&self) -> Self {
        let apex = self.n_vertices() as VertexId;
        Self::from_generators(
            self.maximal_simplices()
                .iter()
                .map(|s| Simplex::from_unsorted(s.iter().chain(std::iter::once(apex)))),
        )
        .expect("apex extends a dense range")
    }

    /// Full simplex on `n + 1` vertices.
    pub fn simplex(n: usize) -> Self {
        Self::from_generators([Simplex::from_unsorted(0..=n as VertexId)])
            .expect("dense by construction")
    }

    /// Boundary of the `n`-simplex, an `(n−1)`-sphere.
    pub fn simplex_boundary(n: usize) -> Self {
        let full = Simplex::from_unsorted(0..=n as VertexId);
        Self::from_generators(full.facets()).expect("dense by construction")
    }
}
