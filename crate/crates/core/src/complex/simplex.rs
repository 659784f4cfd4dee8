use std::fmt;
use std::ops::Deref;

use smallvec::SmallVec;

use super::ComplexError;

pub type VertexId = u32;

/// A simplex given by its strictly increasing vertex list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(SmallVec<[VertexId; 5]>);

impl Simplex {
    /// Sorts the vertices; a repeated vertex is an error.
    pub fn new<I: IntoIterator<Item = VertexId>>(vs: I) -> Result<Self, ComplexError> {
        let raw: SmallVec<[VertexId; 5]> = vs.into_iter().collect();
        let mut v = raw.clone();
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::DegenerateSimplex(raw.to_vec()));
        }
        if v.is_empty() {
            return Err(ComplexError::Empty);
        }
        Ok(Self(v))
    }

    /// Sorts without checking for repeats; for internal use where the
    /// vertices are distinct by construction.
    pub(crate) fn from_unsorted<I: IntoIterator<Item = VertexId>>(vs: I) -> Self {
        let mut v: SmallVec<[VertexId; 5]> = vs.into_iter().collect();
        v.sort_unstable();
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Self(v)
    }

    pub fn vertex(v: VertexId) -> Self {
        Self(smallvec::smallvec![v])
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.iter().all(|v| other.contains_vertex(v))
    }

    /// The codimension-one faces, `i`-th one omitting the `i`-th vertex.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.0.len()).map(move |skip| {
            Simplex(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect(),
            )
        })
    }

    /// All nonempty faces, including the simplex itself.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        (1u32..(1 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }

    /// Vertices of `self` not in `other`. Panics if nothing is left.
    pub fn difference(&self, other: &Simplex) -> Simplex {
        let v: SmallVec<[VertexId; 5]> = self.iter().filter(|&v| !other.contains_vertex(v)).collect();
        assert!(!v.is_empty(), "difference of a simplex with a superset");
        Simplex(v)
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut v: SmallVec<[VertexId; 5]> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        Simplex(v)
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.iter().all(|v| !other.contains_vertex(v))
    }
}

impl Deref for Simplex {
    type Target = [VertexId];
    fn deref(&self) -> &[VertexId] {
        &self.0
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}
