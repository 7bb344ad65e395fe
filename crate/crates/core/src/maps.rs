//! Vertex maps: permutations (involutions, automorphism generators) and colorings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::error::{Error, Result};

/// A bijection on a declared vertex set.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    mapping: BTreeMap<VertexId, VertexId>,
}

impl Permutation {
    pub fn new(mapping: BTreeMap<VertexId, VertexId>) -> Result<Self> {
        let images: BTreeSet<&VertexId> = mapping.values().collect();
        let domain: BTreeSet<&VertexId> = mapping.keys().collect();
        if images != domain {
            return Err(Error::MalformedInput(
                "vertex map is not a bijection of its domain".into(),
            ));
        }
        Ok(Permutation { mapping })
    }

    pub fn from_pairs<I, A, B>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<VertexId>,
        B: Into<VertexId>,
    {
        let mut mapping = BTreeMap::new();
        for (a, b) in pairs {
            let a = a.into();
            if mapping.insert(a.clone(), b.into()).is_some() {
                return Err(Error::MalformedInput(format!("vertex {a} mapped twice")));
            }
        }
        Self::new(mapping)
    }

    /// The involution swapping each given pair.
    pub fn involution<I, A, B>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<VertexId>,
        B: Into<VertexId>,
    {
        let mut both = Vec::new();
        for (a, b) in pairs {
            let (a, b) = (a.into(), b.into());
            both.push((a.clone(), b.clone()));
            both.push((b, a));
        }
        Self::from_pairs(both)
    }

    pub fn identity<'a>(vertices: impl IntoIterator<Item = &'a VertexId>) -> Self {
        Permutation {
            mapping: vertices.into_iter().map(|v| (v.clone(), v.clone())).collect(),
        }
    }

    pub fn domain(&self) -> impl Iterator<Item = &VertexId> {
        self.mapping.keys()
    }

    pub fn mapping(&self) -> &BTreeMap<VertexId, VertexId> {
        &self.mapping
    }

    /// Image of `v`; vertices outside the domain are fixed.
    pub fn apply(&self, v: &VertexId) -> VertexId {
        self.mapping.get(v).cloned().unwrap_or_else(|| v.clone())
    }

    pub fn apply_face(&self, face: &Face) -> Face {
        face.map(|v| self.apply(v)).expect("a bijection keeps faces simple")
    }

    pub fn apply_complex(&self, complex: &SimplicialComplex) -> SimplicialComplex {
        complex
            .relabel(|v| self.apply(v))
            .expect("a bijection keeps faces simple")
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let keys: BTreeSet<VertexId> = self.mapping.keys().chain(other.mapping.keys()).cloned().collect();
        Permutation {
            mapping: keys
                .into_iter()
                .map(|v| {
                    let w = self.apply(&other.apply(&v));
                    (v, w)
                })
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            mapping: self.mapping.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().all(|(a, b)| a == b)
    }

    /// Same action, ignoring fixed points recorded in the domain.
    pub fn same_action(&self, other: &Permutation) -> bool {
        self.mapping
            .keys()
            .chain(other.mapping.keys())
            .all(|v| self.apply(v) == other.apply(v))
    }

    pub fn order(&self) -> usize {
        let mut seen = BTreeSet::new();
        let mut order = 1usize;
        for start in self.mapping.keys() {
            if seen.contains(start) {
                continue;
            }
            let mut len = 0usize;
            let mut v = start.clone();
            loop {
                seen.insert(v.clone());
                v = self.apply(&v);
                len += 1;
                if &v == start {
                    break;
                }
            }
            order = num_integer::lcm(order, len);
        }
        order
    }

    pub fn fixed_points(&self) -> Vec<VertexId> {
        self.mapping
            .iter()
            .filter(|(a, b)| a == b)
            .map(|(a, _)| a.clone())
            .collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let moved: Vec<String> = self
            .mapping
            .iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| format!("{a}->{b}"))
            .collect();
        write!(f, "Permutation[{}]", moved.join(", "))
    }
}

/// Injective vertex map between two (possibly differently labelled) vertex sets.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexMap {
    mapping: BTreeMap<VertexId, VertexId>,
}

impl VertexMap {
    pub fn new(mapping: BTreeMap<VertexId, VertexId>) -> Result<Self> {
        let images: BTreeSet<&VertexId> = mapping.values().collect();
        if images.len() != mapping.len() {
            return Err(Error::MalformedInput("vertex map is not injective".into()));
        }
        Ok(VertexMap { mapping })
    }

    pub fn mapping(&self) -> &BTreeMap<VertexId, VertexId> {
        &self.mapping
    }

    /// Image of `v`; vertices outside the domain are kept.
    pub fn apply(&self, v: &VertexId) -> VertexId {
        self.mapping.get(v).cloned().unwrap_or_else(|| v.clone())
    }

    pub fn apply_face(&self, face: &Face) -> Result<Face> {
        face.map(|v| self.apply(v))
    }

    pub fn apply_complex(&self, complex: &SimplicialComplex) -> Result<SimplicialComplex> {
        complex.relabel(|v| self.apply(v))
    }

    pub fn inverse(&self) -> VertexMap {
        VertexMap {
            mapping: self.mapping.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        }
    }

    /// The same map as a permutation, when domain and image coincide.
    pub fn to_permutation(&self) -> Result<Permutation> {
        Permutation::new(self.mapping.clone())
    }
}

impl From<Permutation> for VertexMap {
    fn from(p: Permutation) -> Self {
        VertexMap { mapping: p.mapping }
    }
}

impl fmt::Debug for VertexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self.mapping.iter().map(|(a, b)| format!("{a}->{b}")).collect();
        write!(f, "VertexMap[{}]", pairs.join(", "))
    }
}

/// Vertex coloring with colors `1..=d`.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring {
    assignment: BTreeMap<VertexId, u32>,
}

impl Coloring {
    pub fn new(assignment: BTreeMap<VertexId, u32>) -> Self {
        Coloring { assignment }
    }

    pub fn from_pairs<V: Into<VertexId>>(pairs: impl IntoIterator<Item = (V, u32)>) -> Self {
        Coloring {
            assignment: pairs.into_iter().map(|(v, c)| (v.into(), c)).collect(),
        }
    }

    pub fn color(&self, v: &VertexId) -> Option<u32> {
        self.assignment.get(v).copied()
    }

    pub fn assignment(&self) -> &BTreeMap<VertexId, u32> {
        &self.assignment
    }

    pub fn colors_used(&self) -> BTreeSet<u32> {
        self.assignment.values().copied().collect()
    }

    /// Colors of a face, in vertex order. `None` if some vertex is uncolored.
    pub fn face_colors(&self, face: &Face) -> Option<Vec<u32>> {
        face.iter().map(|v| self.color(v)).collect()
    }

    pub fn merge(&self, other: &Coloring) -> Result<Coloring> {
        let mut assignment = self.assignment.clone();
        for (v, &c) in &other.assignment {
            if let Some(old) = assignment.insert(v.clone(), c) {
                if old != c {
                    return Err(Error::Precondition(format!("vertex {v} colored both {old} and {c}")));
                }
            }
        }
        Ok(Coloring { assignment })
    }

    pub fn restricted_to<'a>(&self, vertices: impl IntoIterator<Item = &'a VertexId>) -> Coloring {
        Coloring {
            assignment: vertices
                .into_iter()
                .filter_map(|v| self.color(v).map(|c| (v.clone(), c)))
                .collect(),
        }
    }

    pub fn relabel(&self, f: impl Fn(&VertexId) -> VertexId) -> Coloring {
        Coloring {
            assignment: self.assignment.iter().map(|(v, &c)| (f(v), c)).collect(),
        }
    }
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.assignment.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_first() {
        let a = Permutation::from_pairs([("1", "2"), ("2", "3"), ("3", "1")]).unwrap();
        let b = Permutation::involution([("1", "2")]).unwrap();
        let ab = a.compose(&b);
        assert_eq!(ab.apply(&"1".into()), VertexId::new("3"));
        assert_eq!(a.order(), 3);
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_pairs([("1", "2"), ("2", "2")]).is_err());
        assert!(Permutation::from_pairs([("1", "2"), ("1", "3")]).is_err());
    }
}
