//! Isomorphism search by colour refinement with individualisation.
//!
//! Vertex colours start equal and are refined by the multiset of coloured
//! simplices around each vertex. Both complexes are refined together
//! against one shared signature table, so equal colours mean the same
//! thing on both sides. When refinement stalls, one vertex of the
//! smallest ambiguous class is pinned to each candidate in turn.

use std::collections::BTreeMap;

use smallvec::SmallVec;

use super::{SimplicialComplex, VertexId};

type Star = Vec<Vec<(u8, SmallVec<[VertexId; 4]>)>>;

fn stars(k: &SimplicialComplex) -> Star {
    let mut star: Star = vec![Vec::new(); k.n_vertices()];
    for d in 1..=k.dim().unwrap_or(0) {
        for s in k.simplices(d) {
            for v in s.iter() {
                let others = s.iter().filter(|&u| u != v).collect();
                star[v as usize].push((d as u8, others));
            }
        }
    }
    star
}

type Signature = (u32, Vec<(u8, SmallVec<[u32; 4]>)>);

fn signatures(star: &Star, colors: &[u32]) -> Vec<Signature> {
    star.iter()
        .enumerate()
        .map(|(v, items)| {
            let mut sig: Vec<(u8, SmallVec<[u32; 4]>)> = items
                .iter()
                .map(|(d, others)| {
                    let mut c: SmallVec<[u32; 4]> =
                        others.iter().map(|&u| colors[u as usize]).collect();
                    c.sort_unstable();
                    (*d, c)
                })
                .collect();
            sig.sort_unstable();
            (colors[v], sig)
        })
        .collect()
}

fn n_classes(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn histogram(colors: &[u32]) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for &c in colors {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

struct Ctx<'a> {
    k1: &'a SimplicialComplex,
    k2: &'a SimplicialComplex,
    s1: Star,
    s2: Star,
}

impl Ctx<'_> {
    /// Refines to a fixed point; `None` as soon as the two sides disagree.
    fn refine(&self, mut c1: Vec<u32>, mut c2: Vec<u32>) -> Option<(Vec<u32>, Vec<u32>)> {
        loop {
            if histogram(&c1) != histogram(&c2) {
                return None;
            }
            let before = n_classes(&c1);
            let g1 = signatures(&self.s1, &c1);
            let g2 = signatures(&self.s2, &c2);
            let mut table: BTreeMap<&Signature, u32> = BTreeMap::new();
            for s in g1.iter().chain(g2.iter()) {
                table.insert(s, 0);
            }
            for (i, v) in table.values_mut().enumerate() {
                *v = i as u32;
            }
            c1 = g1.iter().map(|s| table[s]).collect();
            c2 = g2.iter().map(|s| table[s]).collect();
            if n_classes(&c1) == before {
                return (histogram(&c1) == histogram(&c2)).then_some((c1, c2));
            }
        }
    }

    fn verify(&self, map: &[VertexId]) -> bool {
        self.k1.maximal_simplices().iter().all(|s| {
            let img = super::Simplex::from_unsorted(s.iter().map(|v| map[v as usize]));
            self.k2.contains(&img)
        })
    }

    fn search(&self, c1: Vec<u32>, c2: Vec<u32>) -> Option<Vec<VertexId>> {
        let (c1, c2) = self.refine(c1, c2)?;
        let hist = histogram(&c1);
        let pick = hist
            .iter()
            .filter(|(_, &n)| n > 1)
            .min_by_key(|(&c, &n)| (n, c))
            .map(|(&c, _)| c);
        let Some(color) = pick else {
            let mut by_color = vec![0; c2.len()];
            for (w, &c) in c2.iter().enumerate() {
                by_color[c as usize] = w as VertexId;
            }
            let map: Vec<VertexId> = c1.iter().map(|&c| by_color[c as usize]).collect();
            return self.verify(&map).then_some(map);
        };
        let fresh = c1.len() as u32;
        let v = c1.iter().position(|&c| c == color)?;
        for (w, _) in c2.iter().enumerate().filter(|(_, &c)| c == color) {
            let mut n1 = c1.clone();
            let mut n2 = c2.clone();
            n1[v] = fresh;
            n2[w] = fresh;
            if let Some(m) = self.search(n1, n2) {
                return Some(m);
            }
        }
        None
    }
}

/// A vertex bijection `map[v1] = v2` carrying the simplices of `k1` onto
/// those of `k2`, or `None`. The result is deterministic.
pub fn are_isomorphic(k1: &SimplicialComplex, k2: &SimplicialComplex) -> Option<Vec<VertexId>> {
    if k1.f_vector() != k2.f_vector() {
        return None;
    }
    if k1.is_empty() {
        return Some(Vec::new());
    }
    let ctx = Ctx {
        k1,
        k2,
        s1: stars(k1),
        s2: stars(k2),
    };
    let n = k1.n_vertices();
    ctx.search(vec![0; n], vec![0; n])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apply(k: &SimplicialComplex, map: &[VertexId]) -> SimplicialComplex {
        k.relabel(map)
    }

    #[test]
    fn relabelled_sphere() {
        let k = SimplicialComplex::simplex_boundary(4);
        let perm = [3, 0, 4, 1, 2];
        let k2 = k.relabel(&perm);
        let map = are_isomorphic(&k, &k2).unwrap();
        assert_eq!(apply(&k, &map), k2);
    }

    #[test]
    fn hexagon_vs_two_triangles() {
        let c6 = SimplicialComplex::from_lists((0..6).map(|i| [i, (i + 1) % 6])).unwrap();
        let two = SimplicialComplex::from_lists([[0, 1], [1, 2], [0, 2], [3, 4], [4, 5], [3, 5]])
            .unwrap();
        assert!(are_isomorphic(&c6, &two).is_none());
        assert!(are_isomorphic(&c6, &c6).is_some());
    }

    #[test]
    fn regular_graphs_need_individualisation() {
        // A 7-cycle is vertex-transitive, so refinement alone never splits it.
        let c = SimplicialComplex::from_lists((0..7).map(|i| [i, (i + 1) % 7])).unwrap();
        let rot: Vec<VertexId> = (0..7).map(|i| (i * 3) % 7).collect();
        let c2 = c.relabel(&rot);
        let map = are_isomorphic(&c, &c2).unwrap();
        assert_eq!(apply(&c, &map), c2);
    }
}
