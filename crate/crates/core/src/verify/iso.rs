//! Backtracking search for simplicial isomorphisms of small complexes.
//!
//! Vertices are packed into `u64` bitmasks (at most 64 per complex). Candidates
//! must share the signature `(degree, f-vector of the vertex link)`. Each
//! partial assignment is pruned in both directions: the mapped part of every
//! facet must land on a face of the target, and vice versa.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::maps::{Permutation, VertexMap};

/// Node budget used when the caller has no better estimate.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

type Signature = (usize, Vec<u64>);

struct Packed {
    labels: Vec<VertexId>,
    facets: Vec<u64>,
    facet_set: HashSet<u64>,
    faces: HashSet<u64>,
    adjacency: Vec<u64>,
    facets_of: Vec<Vec<u64>>,
    signature: Vec<Signature>,
}

impl Packed {
    fn new(complex: &SimplicialComplex) -> Result<Self> {
        let labels = complex.vertices().to_vec();
        if labels.len() > 64 {
            return Err(Error::Unsupported(format!(
                "isomorphism search supports at most 64 vertices, got {}",
                labels.len()
            )));
        }
        let index: HashMap<&VertexId, usize> = labels.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mask = |f: &Face| f.iter().fold(0u64, |m, v| m | 1 << index[v]);
        let facets: Vec<u64> = complex.facets().iter().map(mask).collect();
        let mut faces = HashSet::new();
        for &f in &facets {
            // enumerate submasks
            let mut sub = f;
            loop {
                faces.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f;
            }
        }
        let n = labels.len();
        let mut adjacency = vec![0u64; n];
        let mut facets_of = vec![Vec::new(); n];
        for &f in &facets {
            for v in bits(f) {
                adjacency[v] |= f & !(1 << v);
                facets_of[v].push(f);
            }
        }
        let signature = labels
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let link = complex.link(&Face::of([v.clone()])).expect("vertex of the complex");
                (adjacency[i].count_ones() as usize, link.f_vector().counts().to_vec())
            })
            .collect();
        Ok(Packed {
            labels,
            facet_set: facets.iter().copied().collect(),
            facets,
            faces,
            adjacency,
            facets_of,
            signature,
        })
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

fn map_mask(m: u64, map: &[usize]) -> u64 {
    bits(m).fold(0, |acc, i| acc | 1 << map[i])
}

/// Search state for isomorphisms from one complex onto another.
pub struct IsoSearch {
    a: Packed,
    b: Packed,
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    budget: u64,
    nodes: u64,
    compatible: bool,
}

const UNSET: usize = usize::MAX;

impl IsoSearch {
    pub fn new(a: &SimplicialComplex, b: &SimplicialComplex, budget: u64) -> Result<Self> {
        let pa = Packed::new(a)?;
        let pb = Packed::new(b)?;
        let mut sig_a: Vec<&Signature> = pa.signature.iter().collect();
        let mut sig_b: Vec<&Signature> = pb.signature.iter().collect();
        sig_a.sort();
        sig_b.sort();
        let compatible = pa.labels.len() == pb.labels.len()
            && pa.facets.len() == pb.facets.len()
            && a.f_vector() == b.f_vector()
            && sig_a == sig_b;
        let n = pa.labels.len();
        let mut class_size: HashMap<&Signature, usize> = HashMap::new();
        for s in &pa.signature {
            *class_size.entry(s).or_default() += 1;
        }
        // rarest signature first, then keep the placed set connected
        let mut order = Vec::with_capacity(n);
        let mut placed = 0u64;
        for _ in 0..n {
            let next = (0..n)
                .filter(|&v| placed & 1 << v == 0)
                .min_by_key(|&v| {
                    let touching = (pa.adjacency[v] & placed).count_ones();
                    (
                        std::cmp::Reverse(touching),
                        class_size[&pa.signature[v]],
                        std::cmp::Reverse(pa.adjacency[v].count_ones()),
                        v,
                    )
                })
                .expect("unplaced vertex");
            placed |= 1 << next;
            order.push(next);
        }
        let candidates = (0..n)
            .map(|v| {
                (0..pb.labels.len())
                    .filter(|&w| pb.signature[w] == pa.signature[v])
                    .collect()
            })
            .collect();
        Ok(IsoSearch {
            a: pa,
            b: pb,
            order,
            candidates,
            budget,
            nodes: 0,
            compatible,
        })
    }

    /// Nodes visited so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// Runs the search, calling `found` for each isomorphism until it returns `false`.
    pub fn run(&mut self, mut found: impl FnMut(&VertexMap) -> bool) -> Result<()> {
        if !self.compatible {
            return Ok(());
        }
        let n = self.a.labels.len();
        let mut ab = vec![UNSET; n];
        let mut ba = vec![UNSET; n];
        self.extend(0, 0, 0, &mut ab, &mut ba, &mut found)?;
        Ok(())
    }

    /// Returns `Ok(false)` when the callback asked to stop.
    fn extend(
        &mut self,
        pos: usize,
        mapped_a: u64,
        mapped_b: u64,
        ab: &mut [usize],
        ba: &mut [usize],
        found: &mut impl FnMut(&VertexMap) -> bool,
    ) -> Result<bool> {
        if pos == self.order.len() {
            let ok = self
                .a
                .facets
                .iter()
                .all(|&f| self.b.facet_set.contains(&map_mask(f, ab)));
            if !ok {
                return Ok(true);
            }
            let map = VertexMap::new(
                (0..ab.len())
                    .map(|i| (self.a.labels[i].clone(), self.b.labels[ab[i]].clone()))
                    .collect(),
            )?;
            return Ok(found(&map));
        }
        let v = self.order[pos];
        for ci in 0..self.candidates[v].len() {
            let w = self.candidates[v][ci];
            if ba[w] != UNSET {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded(self.budget));
            }
            ab[v] = w;
            ba[w] = v;
            let na = mapped_a | 1 << v;
            let nb = mapped_b | 1 << w;
            if self.consistent(v, w, na, nb, ab, ba) && !self.extend(pos + 1, na, nb, ab, ba, found)? {
                ab[v] = UNSET;
                ba[w] = UNSET;
                return Ok(false);
            }
            ab[v] = UNSET;
            ba[w] = UNSET;
        }
        Ok(true)
    }

    fn consistent(&self, v: usize, w: usize, na: u64, nb: u64, ab: &[usize], ba: &[usize]) -> bool {
        if map_mask(self.a.adjacency[v] & na, ab) != self.b.adjacency[w] & nb {
            return false;
        }
        self.a.facets_of[v]
            .iter()
            .all(|&f| self.b.faces.contains(&map_mask(f & na, ab)))
            && self.b.facets_of[w]
                .iter()
                .all(|&g| self.a.faces.contains(&map_mask(g & nb, ba)))
    }
}

/// A simplicial isomorphism `a → b`, or `None` when none exists.
///
/// Any returned map is re-checked by comparing facet sets.
pub fn find_isomorphism(a: &SimplicialComplex, b: &SimplicialComplex, budget: u64) -> Result<Option<VertexMap>> {
    let mut search = IsoSearch::new(a, b, budget)?;
    let mut result = None;
    search.run(|m| {
        result = Some(m.clone());
        false
    })?;
    if let Some(m) = &result {
        if &m.apply_complex(a)? != b {
            return Err(Error::CriterionFailed(
                "isomorphism search returned an unsound map".into(),
            ));
        }
    }
    Ok(result)
}

/// Every automorphism of `complex`; fails if there are more than `cap`.
pub fn automorphisms(complex: &SimplicialComplex, budget: u64, cap: usize) -> Result<Vec<Permutation>> {
    let mut search = IsoSearch::new(complex, complex, budget)?;
    let mut out = Vec::new();
    let mut overflow = false;
    search.run(|m| {
        if out.len() == cap {
            overflow = true;
            return false;
        }
        out.push(m.to_permutation().expect("automorphisms are permutations"));
        true
    })?;
    if overflow {
        return Err(Error::CapExceeded(cap));
    }
    Ok(out)
}

/// Sizes of vertex orbits under a set of permutations, largest first.
pub fn orbit_sizes(perms: &[Permutation], vertices: &[VertexId]) -> Vec<usize> {
    let mut orbit_of: BTreeMap<&VertexId, usize> = BTreeMap::new();
    let mut sizes = Vec::new();
    for v in vertices {
        if orbit_of.contains_key(v) {
            continue;
        }
        let id = sizes.len();
        let members: std::collections::BTreeSet<VertexId> =
            perms.iter().map(|p| p.apply(v)).chain([v.clone()]).collect();
        for m in vertices.iter().filter(|m| members.contains(m)) {
            orbit_of.insert(m, id);
        }
        sizes.push(members.len());
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crosspoly::{b_complex, cross_polytope_boundary};

    #[test]
    fn complement_of_b1_is_b2_in_dimension_five() {
        let full = cross_polytope_boundary(5).unwrap().complex;
        let comp = full.complement(&b_complex(1, 5).unwrap()).unwrap();
        let b2 = b_complex(2, 5).unwrap();
        assert!(find_isomorphism(&comp, &b2, DEFAULT_BUDGET).unwrap().is_some());
    }

    #[test]
    fn tetrahedron_is_not_an_octahedron() {
        let t = SimplicialComplex::simplex(Face::of(["a", "b", "c", "d"]))
            .boundary()
            .unwrap();
        let o = cross_polytope_boundary(3).unwrap().complex;
        let mut s = IsoSearch::new(&t, &o, 10).unwrap();
        let mut hits = 0;
        s.run(|_| {
            hits += 1;
            true
        })
        .unwrap();
        assert_eq!((hits, s.nodes()), (0, 0));
    }

    #[test]
    fn octahedron_automorphisms() {
        let o = cross_polytope_boundary(3).unwrap().complex;
        let auts = automorphisms(&o, DEFAULT_BUDGET, 1000).unwrap();
        assert_eq!(auts.len(), 48);
        assert_eq!(orbit_sizes(&auts, o.vertices()), vec![6]);
        assert!(matches!(
            automorphisms(&o, DEFAULT_BUDGET, 10),
            Err(Error::CapExceeded(10))
        ));
    }

    #[test]
    fn budget_is_enforced() {
        let o = cross_polytope_boundary(4).unwrap().complex;
        assert!(matches!(automorphisms(&o, 5, 10_000), Err(Error::BudgetExceeded(5))));
    }

    #[test]
    fn relabelled_copy_is_found() {
        let b = b_complex(2, 6).unwrap();
        let primed = b.relabel(|v| VertexId::new(format!("{v}'"))).unwrap();
        let m = find_isomorphism(&b, &primed, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(m.apply_complex(&b).unwrap(), primed);
    }
}
