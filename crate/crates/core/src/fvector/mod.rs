//! Linear relations among simplex counts of triangulated manifolds and the
//! counting inequalities that rule out rich triangulations.
//!
//! Throughout, `f_i` counts the `i`-simplices of a complex `M` and `f∂_i`
//! those of its boundary.

mod neighborhood;

pub use neighborhood::{
    fullness_witness, is_full_subcomplex, isoperimetric_patch, simplicial_neighborhood,
    vertex_boundary, IsoperimetricReport, NVertex, Neighborhood,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, FVector, Richness, Simplex, SimplicialComplex, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FVectorError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("expected a pure {expected}-dimensional complex, got dimension {found:?}")]
    NotPure {
        expected: usize,
        found: Option<usize>,
    },
    #[error("interior simplex {simplex} has a link of length {link_length}")]
    NotRich { simplex: Simplex, link_length: usize },
    #[error("subcomplex is not full: {0} has all its vertices in it but is missing")]
    NotFull(Simplex),
    #[error("vertex {0} is not in the complex")]
    VertexOutOfRange(VertexId),
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i64 / (i + 1) as i64;
    }
    acc
}

/// Checks the complex is pure of dimension `m` and returns the f-vectors of
/// it and its boundary.
fn pure_counts(k: &SimplicialComplex, m: usize) -> Result<(FVector, FVector), FVectorError> {
    let wrong = FVectorError::NotPure {
        expected: m,
        found: k.dim(),
    };
    match k.check_pure() {
        Ok(n) if n == m => {}
        Ok(_) | Err(ComplexError::NotPure(_)) | Err(ComplexError::Empty) => return Err(wrong),
        Err(e) => return Err(e.into()),
    }
    let boundary = k.boundary_complex()?.complex.f_vector();
    Ok((k.f_vector(), boundary))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DsReport {
    pub dim: usize,
    pub f: FVector,
    pub boundary_f: FVector,
    /// `residuals[k] = f_k − f∂_k − Σ_{i=k..m} (−1)^{i+m} C(i+1, k+1) f_i`.
    pub residuals: Vec<i64>,
}

impl DsReport {
    pub fn holds(&self) -> bool {
        self.residuals.iter().all(|&r| r == 0)
    }
}

/// Residuals of the Dehn–Sommerville relations for a homology
/// `m`-manifold with boundary. All zero on a genuine manifold.
pub fn dehn_sommerville(k: &SimplicialComplex, m: usize) -> Result<DsReport, FVectorError> {
    let (f, fb) = pure_counts(k, m)?;
    let residuals = (0..=m)
        .map(|kk| {
            let sum: i64 = (kk..=m)
                .map(|i| {
                    let sign = if (i + m).is_multiple_of(2) { 1 } else { -1 };
                    sign * binomial(i + 1, kk + 1) * f.get(i) as i64
                })
                .sum();
            f.get(kk) as i64 - fb.get(kk) as i64 - sum
        })
        .collect();
    Ok(DsReport {
        dim: m,
        f,
        boundary_f: fb,
        residuals,
    })
}

/// The two four-dimensional relations
/// `2f_1 − f∂_1 = 3f_2 − 6f_3 + 10f_4` and `−f∂_2 = −4f_3 + 10f_4`,
/// returned as residuals (left minus right).
pub fn corollary_ds_4d(k: &SimplicialComplex) -> Result<(i64, i64), FVectorError> {
    let (f, fb) = pure_counts(k, 4)?;
    let f = |i| f.get(i) as i64;
    let fb = |i| fb.get(i) as i64;
    let first = (2 * f(1) - fb(1)) - (3 * f(2) - 6 * f(3) + 10 * f(4));
    let second = -fb(2) - (-4 * f(3) + 10 * f(4));
    Ok((first, second))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum RichVerdict {
    Rich,
    NotRich {
        simplex: Vec<VertexId>,
        link_length: usize,
    },
    /// Richness is undefined (a codimension-2 link is not a cycle, or the
    /// complex is not a pseudomanifold).
    Undecided { reason: String },
}

impl RichVerdict {
    pub fn of(k: &SimplicialComplex) -> Self {
        match k.richness() {
            Ok(Richness::Rich) => RichVerdict::Rich,
            Ok(Richness::NotRich {
                simplex,
                link_length,
            }) => RichVerdict::NotRich {
                simplex: simplex.to_vec(),
                link_length,
            },
            Err(e) => RichVerdict::Undecided {
                reason: e.to_string(),
            },
        }
    }

    pub fn is_rich(&self) -> bool {
        matches!(self, RichVerdict::Rich)
    }
}

/// Both sides of `2f_0 ≤ 2χ + f∂_1` together with the richness verdict.
/// A rich complex always has `slack ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub f0: usize,
    pub euler: i64,
    pub boundary_f1: usize,
    pub lhs: i64,
    pub rhs: i64,
    pub slack: i64,
    pub rich: RichVerdict,
    pub closed: bool,
    /// For closed complexes, whether `f_0 ≤ χ`.
    pub closed_bound_holds: Option<bool>,
}

impl ObstructionReport {
    /// `true` when the report would contradict the inequality: rich but
    /// with negative slack.
    pub fn contradicts_inequality(&self) -> bool {
        self.rich.is_rich() && self.slack < 0
    }
}

pub fn richness_obstruction(k: &SimplicialComplex) -> Result<ObstructionReport, FVectorError> {
    let (f, fb) = pure_counts(k, 4)?;
    let euler = f.euler();
    let lhs = 2 * f.get(0) as i64;
    let rhs = 2 * euler + fb.get(1) as i64;
    let closed = fb.get(0) == 0;
    Ok(ObstructionReport {
        f0: f.get(0),
        euler,
        boundary_f1: fb.get(1),
        lhs,
        rhs,
        slack: rhs - lhs,
        rich: RichVerdict::of(k),
        closed,
        closed_bound_holds: closed.then_some(f.get(0) as i64 <= euler),
    })
}

/// Counts pairs (2-simplex ⊂ 4-simplex) by walking the incidence index.
pub fn count_triangle_flags(k: &SimplicialComplex) -> u64 {
    let mut flags = 0u64;
    for (i, _) in k.simplices(2).iter().enumerate() {
        let mut tops: Vec<u32> = k
            .cofacets(2, i)
            .iter()
            .flat_map(|&t| k.cofacets(3, t as usize).iter().copied())
            .collect();
        tops.sort_unstable();
        tops.dedup();
        flags += tops.len() as u64;
    }
    flags
}

/// `(10·f_4, 5·(f_2 − f∂_2))`; on a rich complex the first is at least the
/// second because every interior triangle lies in five or more 4-simplices.
pub fn flag_count_inequality(k: &SimplicialComplex) -> Result<(u64, u64), FVectorError> {
    let (f, fb) = pure_counts(k, 4)?;
    if let Richness::NotRich {
        simplex,
        link_length,
    } = k.richness()?
    {
        return Err(FVectorError::NotRich {
            simplex,
            link_length,
        });
    }
    Ok((10 * f.get(4) as u64, 5 * (f.get(2) - fb.get(2)) as u64))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombCorollary {
    /// `2f_0`
    pub lhs: i64,
    /// `2(1 + f∂_2) + f∂_1`
    pub rhs: i64,
    /// `false` when the boundary is empty: the bound then only restates
    /// the closed case and is not meaningful.
    pub applicable: bool,
}

impl CombCorollary {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }
}

/// Both sides of `2f_0 ≤ 2(1 + f∂_2) + f∂_1`.
pub fn comb_corollary_check(m: &SimplicialComplex) -> Result<CombCorollary, FVectorError> {
    let (f, fb) = pure_counts(m, 4)?;
    Ok(CombCorollary {
        lhs: 2 * f.get(0) as i64,
        rhs: 2 * (1 + fb.get(2) as i64) + fb.get(1) as i64,
        applicable: fb.get(0) > 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 5), 0);
        assert_eq!(binomial(6, 6), 1);
    }

    #[test]
    fn ds_on_simplices_and_spheres() {
        for n in 1..=4 {
            assert!(dehn_sommerville(&SimplicialComplex::simplex(n), n).unwrap().holds());
        }
        for n in 2..=5 {
            let s = SimplicialComplex::simplex_boundary(n);
            assert!(dehn_sommerville(&s, n - 1).unwrap().holds(), "sphere {n}");
        }
        assert!(matches!(
            dehn_sommerville(&SimplicialComplex::simplex(3), 4),
            Err(FVectorError::NotPure { .. })
        ));
    }

    #[test]
    fn ds_fails_off_manifolds() {
        // Two tetrahedra sharing only a vertex: pure, pseudomanifold, not a manifold.
        let k = SimplicialComplex::from_lists([[0, 1, 2, 3], [0, 4, 5, 6]]).unwrap();
        assert!(!dehn_sommerville(&k, 3).unwrap().holds());
    }

    #[test]
    fn corollary_on_small_complexes() {
        assert_eq!(corollary_ds_4d(&SimplicialComplex::simplex(4)).unwrap(), (0, 0));
        assert_eq!(
            corollary_ds_4d(&SimplicialComplex::simplex_boundary(5)).unwrap(),
            (0, 0)
        );
    }

    #[test]
    fn obstruction_examples() {
        let s = richness_obstruction(&SimplicialComplex::simplex_boundary(5)).unwrap();
        assert_eq!((s.lhs, s.rhs, s.slack), (12, 4, -8));
        assert!(s.closed);
        assert_eq!(s.closed_bound_holds, Some(false));
        assert!(matches!(s.rich, RichVerdict::NotRich { link_length: 3, .. }));
        assert!(!s.contradicts_inequality());

        let d = richness_obstruction(&SimplicialComplex::simplex(4)).unwrap();
        assert_eq!((d.lhs, d.rhs, d.slack), (10, 12, 2));
        assert!(d.rich.is_rich());
    }

    #[test]
    fn flag_counts() {
        let d4 = SimplicialComplex::simplex(4);
        assert_eq!(flag_count_inequality(&d4).unwrap(), (10, 0));
        assert_eq!(count_triangle_flags(&d4), 10);
        assert!(matches!(
            flag_count_inequality(&SimplicialComplex::simplex_boundary(5)),
            Err(FVectorError::NotRich { .. })
        ));
    }

    #[test]
    fn comb_corollary_examples() {
        let c = comb_corollary_check(&SimplicialComplex::simplex(4)).unwrap();
        assert_eq!((c.lhs, c.rhs), (10, 32));
        assert!(c.applicable && c.holds());
        let closed = comb_corollary_check(&SimplicialComplex::simplex_boundary(5)).unwrap();
        assert_eq!(closed.rhs, 2);
        assert!(!closed.applicable);
    }
}
