//! Finite abstract simplicial complexes stored by their facets.
//!
//! A [`SimplicialComplex`] keeps only its inclusion-maximal faces in a
//! normalized (sorted) order. The full face lattice is enumerated lazily on
//! first use and cached, so repeated membership queries and chain-complex
//! assembly stay linear in the number of faces.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Opaque vertex label. Equality and ordering are those of the label string.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(Arc<str>);

impl VertexId {
    pub fn new(label: impl AsRef<str>) -> Self {
        VertexId(Arc::from(label.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId::new(s)
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(Arc::from(s))
    }
}

impl Serialize for VertexId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for VertexId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer).map(VertexId::from)
    }
}

/// A face: a strictly increasing list of vertices. The empty face has dimension -1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Face(Vec<VertexId>);

impl Face {
    /// Builds a face from arbitrary vertices; duplicates are rejected.
    pub fn new<I, V>(vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        let mut vs: Vec<VertexId> = vertices.into_iter().map(Into::into).collect();
        vs.sort();
        for w in vs.windows(2) {
            if w[0] == w[1] {
                return Err(Error::MalformedInput(format!("duplicate vertex {} in face", w[0])));
            }
        }
        Ok(Face(vs))
    }

    /// Builds a face from labels that are known to be distinct.
    ///
    /// Panics on a repeated label; meant for constructions and tests.
    pub fn of<V: Into<VertexId>>(vertices: impl IntoIterator<Item = V>) -> Self {
        Face::new(vertices).expect("face labels must be distinct")
    }

    /// Wraps a vector that is already strictly sorted.
    pub(crate) fn from_sorted(vertices: Vec<VertexId>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Face(vertices)
    }

    pub fn empty() -> Self {
        Face(Vec::new())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, VertexId> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.0.binary_search(v).is_ok()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                match w.cmp(v) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        self.intersection(other).is_empty()
    }

    pub fn union(&self, other: &Face) -> Face {
        let set: BTreeSet<&VertexId> = self.0.iter().chain(other.0.iter()).collect();
        Face(set.into_iter().cloned().collect())
    }

    pub fn intersection(&self, other: &Face) -> Face {
        Face(self.0.iter().filter(|v| other.contains(v)).cloned().collect())
    }

    pub fn difference(&self, other: &Face) -> Face {
        Face(self.0.iter().filter(|v| !other.contains(v)).cloned().collect())
    }

    /// The face with the vertex at position `index` removed.
    pub fn without_index(&self, index: usize) -> Face {
        let mut vs = self.0.clone();
        vs.remove(index);
        Face(vs)
    }

    pub fn with_vertex(&self, v: VertexId) -> Result<Face> {
        match self.0.binary_search(&v) {
            Ok(_) => Err(Error::VertexCollision(v.to_string())),
            Err(pos) => {
                let mut vs = self.0.clone();
                vs.insert(pos, v);
                Ok(Face(vs))
            }
        }
    }

    /// All faces of this simplex (including the empty face and itself).
    pub fn subfaces(&self) -> impl Iterator<Item = Face> + '_ {
        let n = self.0.len();
        assert!(n < 64, "faces with 64 or more vertices are not enumerable");
        (0u64..(1u64 << n)).map(move |mask| {
            Face(
                (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| self.0[i].clone())
                    .collect(),
            )
        })
    }

    /// Image under a vertex map. Fails if the map is not injective on the face.
    pub fn map<F>(&self, f: F) -> Result<Face>
    where
        F: Fn(&VertexId) -> VertexId,
    {
        Face::new(self.0.iter().map(f))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'de> Deserialize<'de> for Face {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<VertexId>::deserialize(deserializer)?;
        Face::new(raw).map_err(serde::de::Error::custom)
    }
}

impl<'a> IntoIterator for &'a Face {
    type Item = &'a VertexId;
    type IntoIter = std::slice::Iter<'a, VertexId>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Face counts `f_{-1}, f_0, ..., f_{dim}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FVector {
    counts: Vec<u64>,
}

impl FVector {
    /// `counts[0]` is `f_{-1}`.
    pub fn from_counts(counts: Vec<u64>) -> Self {
        FVector { counts }
    }

    /// Number of faces of dimension `i` (zero outside the stored range).
    pub fn get(&self, i: isize) -> u64 {
        if i < -1 {
            return 0;
        }
        self.counts.get((i + 1) as usize).copied().unwrap_or(0)
    }

    /// `f_0, f_1, ...` without the leading `f_{-1}`.
    pub fn nonempty(&self) -> &[u64] {
        self.counts.get(1..).unwrap_or(&[])
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Unreduced Euler characteristic `sum_{i>=0} (-1)^i f_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.nonempty()
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.nonempty().iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Graph on the facets of a pure complex, adjacent when they share a ridge.
#[derive(Clone, Debug)]
pub struct FacetRidgeGraph {
    pub nodes: Vec<Face>,
    pub adjacency: Vec<Vec<usize>>,
}

impl FacetRidgeGraph {
    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.nodes.len()];
        let mut out = Vec::new();
        for start in 0..self.nodes.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(n) = stack.pop() {
                comp.push(n);
                for &m in &self.adjacency[n] {
                    if !seen[m] {
                        seen[m] = true;
                        stack.push(m);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// True when the graph is one cycle through every node.
    pub fn is_single_cycle(&self) -> bool {
        self.nodes.len() >= 3 && self.adjacency.iter().all(|a| a.len() == 2) && self.is_connected()
    }
}

#[derive(Debug)]
struct FaceTable {
    /// `by_dim[k]` holds the faces of dimension `k - 1`, sorted.
    by_dim: Vec<Vec<Face>>,
    set: HashSet<Face>,
}

/// A finite abstract simplicial complex, stored by its facets.
///
/// The void complex (no faces at all) and the complex `{∅}` are different
/// values: the former has no facets, the latter has the empty face as its
/// single facet.
pub struct SimplicialComplex {
    facets: Vec<Face>,
    vertices: Vec<VertexId>,
    table: OnceLock<FaceTable>,
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        SimplicialComplex {
            facets: self.facets.clone(),
            vertices: self.vertices.clone(),
            table: OnceLock::new(),
        }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("facets", &self.facets)
            .finish()
    }
}

impl SimplicialComplex {
    /// The complex generated by `faces`. Non-maximal faces are absorbed.
    pub fn from_facets<I>(faces: I) -> Result<Self>
    where
        I: IntoIterator<Item = Face>,
    {
        let faces: Vec<Face> = faces.into_iter().collect();
        if faces.is_empty() {
            return Err(Error::EmptyComplex);
        }
        Ok(Self::generated_by(faces))
    }

    /// Like [`from_facets`](Self::from_facets) but an empty input gives the void complex.
    pub fn generated_by<I>(faces: I) -> Self
    where
        I: IntoIterator<Item = Face>,
    {
        let mut faces: Vec<Face> = faces.into_iter().collect();
        faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        faces.dedup();
        let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
        // Faces are visited largest first, so only earlier (larger) faces can absorb.
        let mut by_vertex: HashMap<VertexId, Vec<usize>> = HashMap::new();
        for face in faces {
            let absorbed = match face.vertices().first() {
                None => !kept.is_empty(),
                Some(first) => by_vertex
                    .get(first)
                    .map(|idx| idx.iter().any(|&i| face.is_subset(&kept[i])))
                    .unwrap_or(false),
            };
            if !absorbed {
                let i = kept.len();
                for v in face.iter() {
                    by_vertex.entry(v.clone()).or_default().push(i);
                }
                kept.push(face);
            }
        }
        kept.sort();
        let vertices: BTreeSet<VertexId> = kept.iter().flat_map(|f| f.iter().cloned()).collect();
        SimplicialComplex {
            facets: kept,
            vertices: vertices.into_iter().collect(),
            table: OnceLock::new(),
        }
    }

    /// The complex with no faces.
    pub fn void() -> Self {
        Self::generated_by(std::iter::empty())
    }

    /// The complex `{∅}` of dimension -1.
    pub fn irrelevant() -> Self {
        Self::generated_by([Face::empty()])
    }

    /// The full simplex on the given vertices.
    pub fn simplex(face: Face) -> Self {
        Self::generated_by([face])
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn has_vertex(&self, v: &VertexId) -> bool {
        self.vertices.binary_search(v).is_ok()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension of the complex; -1 for `{∅}` and for the void complex.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(Face::dim).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets.iter().all(|f| f.dim() == d)
    }

    fn table(&self) -> &FaceTable {
        self.table.get_or_init(|| {
            let mut set: HashSet<Face> = HashSet::new();
            for facet in &self.facets {
                if set.contains(facet) {
                    continue;
                }
                for sub in facet.subfaces() {
                    set.insert(sub);
                }
            }
            let top = (self.dim() + 2).max(0) as usize;
            let mut by_dim: Vec<Vec<Face>> = vec![Vec::new(); top];
            for f in &set {
                by_dim[f.len()].push(f.clone());
            }
            for layer in &mut by_dim {
                layer.sort();
            }
            FaceTable { by_dim, set }
        })
    }

    /// Forces the lazy face enumeration (useful before sharing across threads).
    pub fn precompute_faces(&self) {
        let _ = self.table();
    }

    /// Membership `F ∈ Δ`, i.e. `F` lies in some facet.
    pub fn contains_face(&self, face: &Face) -> bool {
        if self.is_void() {
            return false;
        }
        self.table().set.contains(face)
    }

    pub fn has_facet(&self, face: &Face) -> bool {
        self.facets.binary_search(face).is_ok()
    }

    /// Faces of dimension `k`, sorted lexicographically.
    pub fn faces_of_dim(&self, k: isize) -> &[Face] {
        if k < -1 {
            return &[];
        }
        self.table()
            .by_dim
            .get((k + 1) as usize)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Every face including the empty one, by increasing dimension.
    pub fn all_faces(&self) -> impl Iterator<Item = &Face> {
        self.table().by_dim.iter().flatten()
    }

    pub fn face_count(&self) -> usize {
        if self.is_void() {
            0
        } else {
            self.table().set.len()
        }
    }

    pub fn f_vector(&self) -> FVector {
        FVector::from_counts(self.table().by_dim.iter().map(|l| l.len() as u64).collect())
    }

    pub fn edges(&self) -> &[Face] {
        self.faces_of_dim(1)
    }

    /// Neighbors of `v` in the graph of the complex.
    pub fn neighbors(&self, v: &VertexId) -> BTreeSet<VertexId> {
        self.facets
            .iter()
            .filter(|f| f.contains(v))
            .flat_map(|f| f.iter().filter(|w| *w != v).cloned())
            .collect()
    }

    /// `st(σ) = {τ : σ ∪ τ ∈ Δ}`.
    pub fn star(&self, sigma: &Face) -> Result<Self> {
        if !self.contains_face(sigma) {
            return Err(Error::FaceNotFound(sigma.to_string()));
        }
        Ok(Self::generated_by(
            self.facets.iter().filter(|f| sigma.is_subset(f)).cloned(),
        ))
    }

    /// `lk(σ) = {τ ∈ st(σ) : τ ∩ σ = ∅}`.
    pub fn link(&self, sigma: &Face) -> Result<Self> {
        if !self.contains_face(sigma) {
            return Err(Error::FaceNotFound(sigma.to_string()));
        }
        Ok(Self::generated_by(
            self.facets
                .iter()
                .filter(|f| sigma.is_subset(f))
                .map(|f| f.difference(sigma)),
        ))
    }

    /// The cone `Δ * {v}`.
    pub fn cone(&self, apex: &VertexId) -> Result<Self> {
        if self.has_vertex(apex) {
            return Err(Error::VertexCollision(apex.to_string()));
        }
        let facets = self
            .facets
            .iter()
            .map(|f| f.with_vertex(apex.clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::generated_by(facets))
    }

    /// `Δ[W] = {σ ∈ Δ : σ ⊆ W}`. Vertices of `W` outside `Δ` are ignored.
    pub fn restriction<'a, I>(&self, vertex_set: I) -> Self
    where
        I: IntoIterator<Item = &'a VertexId>,
    {
        let w: HashSet<&VertexId> = vertex_set.into_iter().collect();
        if self.is_void() {
            return Self::void();
        }
        Self::generated_by(
            self.facets
                .iter()
                .map(|f| Face::from_sorted(f.iter().filter(|v| w.contains(v)).cloned().collect())),
        )
    }

    /// The complex generated by the facets of `self` that are not facets of `other`.
    pub fn complement(&self, other: &SimplicialComplex) -> Result<Self> {
        if !other.is_void() {
            if !self.is_pure() || !other.is_pure() || self.dim() != other.dim() {
                return Err(Error::Precondition(
                    "complement requires pure complexes of equal dimension".into(),
                ));
            }
            if let Some(f) = other.facets.iter().find(|f| !self.has_facet(f)) {
                return Err(Error::Precondition(format!(
                    "facet {f} of the subcomplex is not a facet of the ambient complex"
                )));
            }
        }
        Ok(Self::generated_by(
            self.facets.iter().filter(|f| !other.has_facet(f)).cloned(),
        ))
    }

    /// All faces of dimension at most `i`.
    pub fn skeleton(&self, i: isize) -> Result<Self> {
        if i < -1 || i > self.dim() {
            return Err(Error::Precondition(format!(
                "skeleton dimension {i} outside [-1, {}]",
                self.dim()
            )));
        }
        if i == self.dim() {
            return Ok(self.clone());
        }
        let low = self.facets.iter().filter(|f| f.dim() < i);
        Ok(Self::generated_by(self.faces_of_dim(i).iter().chain(low).cloned()))
    }

    /// Number of facets containing each ridge of a pure complex.
    pub fn ridge_incidence(&self) -> BTreeMap<Face, usize> {
        let mut counts = BTreeMap::new();
        for f in &self.facets {
            for i in 0..f.len() {
                *counts.entry(f.without_index(i)).or_insert(0) += 1;
            }
        }
        counts
    }

    /// Boundary by the ridge criterion: closure of ridges lying in exactly one facet.
    pub fn boundary(&self) -> Result<Self> {
        if !self.is_pure() {
            return Err(Error::Precondition("boundary requires a pure complex".into()));
        }
        if self.dim() < 0 {
            return Ok(Self::void());
        }
        let counts = self.ridge_incidence();
        if let Some((ridge, &count)) = counts.iter().find(|(_, &c)| c > 2) {
            return Err(Error::NotPseudomanifold {
                ridge: ridge.to_string(),
                count,
            });
        }
        Ok(Self::generated_by(
            counts.into_iter().filter(|&(_, c)| c == 1).map(|(r, _)| r),
        ))
    }

    pub fn union(&self, other: &SimplicialComplex) -> Self {
        Self::generated_by(self.facets.iter().chain(other.facets.iter()).cloned())
    }

    /// Faces common to both complexes.
    ///
    /// Every common face lies in `F ∩ G` for a facet `F` of one and `G` of the
    /// other, so the pairwise facet intersections generate the result.
    pub fn intersection(&self, other: &SimplicialComplex) -> Self {
        if self.is_void() || other.is_void() {
            return Self::void();
        }
        let mut faces = HashSet::new();
        for f in &self.facets {
            for g in &other.facets {
                faces.insert(f.intersection(g));
            }
        }
        Self::generated_by(faces)
    }

    pub fn facet_ridge_graph(&self) -> FacetRidgeGraph {
        let mut by_ridge: HashMap<Face, Vec<usize>> = HashMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            for k in 0..f.len() {
                by_ridge.entry(f.without_index(k)).or_default().push(i);
            }
        }
        let mut adjacency: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.facets.len()];
        for owners in by_ridge.values() {
            for (a, &i) in owners.iter().enumerate() {
                for &j in &owners[a + 1..] {
                    adjacency[i].insert(j);
                    adjacency[j].insert(i);
                }
            }
        }
        FacetRidgeGraph {
            nodes: self.facets.clone(),
            adjacency: adjacency.into_iter().map(|s| s.into_iter().collect()).collect(),
        }
    }

    /// Image under a vertex map that must be injective on every facet.
    pub fn relabel<F>(&self, f: F) -> Result<Self>
    where
        F: Fn(&VertexId) -> VertexId,
    {
        let facets = self
            .facets
            .iter()
            .map(|face| face.map(&f))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::generated_by(facets))
    }

    /// Vertex sets of the connected components, as subcomplexes.
    pub fn connected_components(&self) -> Vec<SimplicialComplex> {
        let index: HashMap<&VertexId, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for f in &self.facets {
            let mut it = f.iter();
            if let Some(first) = it.next() {
                let a = find(&mut parent, index[first]);
                for v in it {
                    let b = find(&mut parent, index[v]);
                    parent[b] = a;
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<Face>> = BTreeMap::new();
        for f in self.facets.iter().filter(|f| !f.is_empty()) {
            let root = find(&mut parent, index[&f.vertices()[0]]);
            groups.entry(root).or_default().push(f.clone());
        }
        let mut comps: Vec<SimplicialComplex> = groups.into_values().map(Self::generated_by).collect();
        comps.sort_by(|a, b| a.facets.cmp(&b.facets));
        comps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(labels: &[&str]) -> Face {
        Face::of(labels.iter().copied())
    }

    fn octahedron() -> SimplicialComplex {
        let mut facets = Vec::new();
        for mask in 0..8u32 {
            facets.push(Face::of((1..=3).map(|i| {
                if mask & (1 << (i - 1)) == 0 {
                    format!("x{i}")
                } else {
                    format!("y{i}")
                }
            })));
        }
        SimplicialComplex::from_facets(facets).unwrap()
    }

    fn tetra_boundary() -> SimplicialComplex {
        SimplicialComplex::simplex(f(&["a", "b", "c", "d"])).boundary().unwrap()
    }

    #[test]
    fn from_facets_absorbs_duplicates_and_subfaces() {
        let c = SimplicialComplex::from_facets([f(&["a", "b"]), f(&["b", "c"]), f(&["a", "b"])]).unwrap();
        assert_eq!(c.facets(), &[f(&["a", "b"]), f(&["b", "c"])]);
        let c = SimplicialComplex::from_facets([f(&["a"]), f(&["a", "b", "c"])]).unwrap();
        assert_eq!(c.facets(), &[f(&["a", "b", "c"])]);
        assert_eq!(octahedron().f_vector().nonempty(), &[6, 12, 8]);
    }

    #[test]
    fn duplicate_vertex_is_malformed() {
        assert!(matches!(Face::new(["a", "a"]), Err(Error::MalformedInput(_))));
        assert_eq!(
            SimplicialComplex::from_facets(Vec::<Face>::new()),
            Err(Error::EmptyComplex)
        );
    }

    #[test]
    fn triangle_boundary_f_vector() {
        let c = SimplicialComplex::simplex(f(&["a", "b", "c"])).boundary().unwrap();
        assert_eq!(c.f_vector().nonempty(), &[3, 3]);
        assert_eq!(c.f_vector().get(-1), 1);
    }

    #[test]
    fn vertex_link_in_tetrahedron_boundary() {
        let t = tetra_boundary();
        let lk = t.link(&f(&["a"])).unwrap();
        let expected = SimplicialComplex::simplex(f(&["b", "c", "d"])).boundary().unwrap();
        assert_eq!(lk, expected);
        assert!(matches!(t.link(&f(&["a", "z"])), Err(Error::FaceNotFound(_))));
    }

    #[test]
    fn edge_link_in_octahedron_is_two_points() {
        let o = octahedron();
        let lk = o.link(&f(&["x1", "y2"])).unwrap();
        assert_eq!(lk.facets(), &[f(&["x3"]), f(&["y3"])]);
        // brute-force oracle: faces τ disjoint from σ with σ ∪ τ a face
        let sigma = f(&["x1", "y2"]);
        let brute: Vec<Face> = o
            .all_faces()
            .filter(|t| t.is_disjoint(&sigma) && o.contains_face(&t.union(&sigma)))
            .cloned()
            .collect();
        let mut link_faces: Vec<Face> = lk.all_faces().cloned().collect();
        let mut brute = brute;
        link_faces.sort();
        brute.sort();
        assert_eq!(link_faces, brute);
    }

    #[test]
    fn cone_and_collision() {
        let tri = SimplicialComplex::simplex(f(&["a", "b", "c"])).boundary().unwrap();
        let cone = tri.cone(&VertexId::new("v")).unwrap();
        assert_eq!(cone.facets().len(), 3);
        assert!(cone.facets().iter().all(|g| g.contains(&"v".into())));
        assert!(matches!(tri.cone(&"a".into()), Err(Error::VertexCollision(_))));
    }

    #[test]
    fn restriction_cases() {
        let o = octahedron();
        let w: Vec<VertexId> = ["x1", "x2", "x3", "q"].iter().map(|&s| s.into()).collect();
        assert_eq!(o.restriction(&w).facets(), &[f(&["x1", "x2", "x3"])]);
        let none: Vec<VertexId> = Vec::new();
        assert_eq!(o.restriction(&none), SimplicialComplex::irrelevant());
    }

    #[test]
    fn complement_and_errors() {
        let o = octahedron();
        assert!(o.complement(&o).unwrap().is_void());
        let part = SimplicialComplex::from_facets([f(&["x1", "x2", "x3"])]).unwrap();
        let rest = o.complement(&part).unwrap();
        assert_eq!(rest.facets().len(), 7);
        let foreign = SimplicialComplex::from_facets([f(&["a", "b", "c"])]).unwrap();
        assert!(matches!(o.complement(&foreign), Err(Error::Precondition(_))));
        let low = SimplicialComplex::from_facets([f(&["x1", "x2"])]).unwrap();
        assert!(matches!(o.complement(&low), Err(Error::Precondition(_))));
    }

    #[test]
    fn skeleton_cases() {
        let t = tetra_boundary();
        let k4 = t.skeleton(1).unwrap();
        assert_eq!(k4.facets().len(), 6);
        assert!(k4.facets().iter().all(|e| e.len() == 2));
        assert_eq!(t.skeleton(2).unwrap(), t);
        assert!(t.skeleton(3).is_err());
        let mixed =
            SimplicialComplex::from_facets([Face::of(["a", "b", "c"]), Face::of(["c", "d"]), Face::of(["e"])]).unwrap();
        assert_eq!(mixed.skeleton(1).unwrap().vertices().len(), 5);
        assert!(t.skeleton(-2).is_err());
    }

    #[test]
    fn boundary_cases() {
        let simplex = SimplicialComplex::simplex(f(&["a", "b", "c", "d"]));
        assert_eq!(simplex.boundary().unwrap().facets().len(), 4);
        assert!(octahedron().boundary().unwrap().is_void());
        let book =
            SimplicialComplex::from_facets([f(&["a", "b", "c"]), f(&["a", "b", "d"]), f(&["a", "b", "e"])]).unwrap();
        assert!(matches!(
            book.boundary(),
            Err(Error::NotPseudomanifold { count: 3, .. })
        ));
    }

    #[test]
    fn union_and_intersection() {
        let o = octahedron();
        assert_eq!(o.union(&o), o);
        assert_eq!(o.intersection(&o), o);
        let a = SimplicialComplex::from_facets([f(&["a", "b"])]).unwrap();
        let b = SimplicialComplex::from_facets([f(&["c", "d"])]).unwrap();
        assert_eq!(a.intersection(&b), SimplicialComplex::irrelevant());
        // partial overlap: two triangles sharing only an edge
        let t1 = SimplicialComplex::from_facets([f(&["a", "b", "c"])]).unwrap();
        let t2 = SimplicialComplex::from_facets([f(&["b", "c", "d"])]).unwrap();
        assert_eq!(t1.intersection(&t2).facets(), &[f(&["b", "c"])]);
    }

    #[test]
    fn facet_ridge_graphs() {
        let tri = SimplicialComplex::simplex(f(&["a", "b", "c"])).boundary().unwrap();
        let g = tri.facet_ridge_graph();
        assert!(g.is_single_cycle());
        assert_eq!(g.nodes.len(), 3);
        let two = SimplicialComplex::from_facets([f(&["x1", "x2"]), f(&["y1", "y2"])]).unwrap();
        let g = two.facet_ridge_graph();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.components().len(), 2);
    }

    #[test]
    fn components_of_disjoint_union() {
        let a = tetra_boundary();
        let b = a.relabel(|v| VertexId::new(format!("{v}'"))).unwrap();
        let comps = a.union(&b).connected_components();
        assert_eq!(comps.len(), 2);
        assert!(comps.contains(&a) && comps.contains(&b));
    }

    #[test]
    fn star_is_link_joined_with_simplex() {
        let o = octahedron();
        for sigma in o.all_faces() {
            let st = o.star(sigma).unwrap();
            let lk = o.link(sigma).unwrap();
            let joined = SimplicialComplex::generated_by(lk.facets().iter().map(|t| t.union(sigma)));
            assert_eq!(st, joined, "star of {sigma}");
        }
    }
}
