//! Certification checks. Each check returns a [`VerificationReport`]; a failing
//! report always names a concrete witness.
//!
//! Manifold-type properties are only certified through necessary conditions
//! (pseudomanifold structure and link homology), never as a PL statement.

mod group;
mod iso;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::homology::{reduced_homology, sphere_betti};
use crate::maps::{Coloring, Permutation};

pub use group::{group_closure, GroupClosure};
pub use iso::{automorphisms, find_isomorphism, orbit_sizes, IsoSearch, DEFAULT_BUDGET};

/// Phrase attached to manifold-type reports.
pub const NECESSARY_CONDITIONS: &str = "necessary conditions passed";

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub metrics: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerificationReport {
    pub fn pass(check: impl Into<String>) -> Self {
        VerificationReport {
            check: check.into(),
            passed: true,
            witness: None,
            metrics: BTreeMap::new(),
            note: None,
        }
    }

    pub fn fail(check: impl Into<String>, witness: impl Into<String>) -> Self {
        VerificationReport {
            check: check.into(),
            passed: false,
            witness: Some(witness.into()),
            metrics: BTreeMap::new(),
            note: None,
        }
    }

    /// Pass when `failure` is `None`, otherwise fail with it as witness.
    pub fn from_outcome(check: impl Into<String>, failure: Option<String>) -> Self {
        match failure {
            None => Self::pass(check),
            Some(w) => Self::fail(check, w),
        }
    }

    pub fn metric(mut self, key: &str, value: impl Serialize) -> Self {
        self.metrics
            .insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Renames the check, keeping the outcome.
    pub fn named(mut self, check: impl Into<String>) -> Self {
        self.check = check.into();
        self
    }
}

impl std::fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}", if self.passed { "PASS" } else { "FAIL" }, self.check)?;
        if let Some(w) = &self.witness {
            write!(f, " (witness: {w})")?;
        }
        Ok(())
    }
}

/// Balancedness: a proper coloring with exactly `dim + 1` colors.
///
/// Without a coloring, an exhaustive backtracking search decides whether one
/// exists and reports it.
pub fn check_balanced(complex: &SimplicialComplex, coloring: Option<&Coloring>) -> VerificationReport {
    const CHECK: &str = "balanced";
    let k = (complex.dim() + 1).max(0) as usize;
    match coloring {
        Some(c) => {
            if let Some(v) = complex.vertices().iter().find(|v| c.color(v).is_none()) {
                return VerificationReport::fail(CHECK, format!("vertex {v} has no color"));
            }
            for e in complex.edges() {
                let (a, b) = (&e.vertices()[0], &e.vertices()[1]);
                if c.color(a) == c.color(b) {
                    return VerificationReport::fail(CHECK, format!("edge {e} is monochromatic"));
                }
            }
            let used = c.restricted_to(complex.vertices()).colors_used();
            let report = if used.len() == k {
                VerificationReport::pass(CHECK)
            } else {
                VerificationReport::fail(CHECK, format!("{} colors used, dimension needs {k}", used.len()))
            };
            report.metric("colors", used.len())
        }
        None => match find_balanced_coloring(complex) {
            Some(c) => VerificationReport::pass(CHECK)
                .metric("colors", k)
                .metric("coloring", c.assignment()),
            None => VerificationReport::fail(CHECK, format!("no proper {k}-coloring of the graph exists")),
        },
    }
}

/// Exhaustive search for a proper `(dim + 1)`-coloring with colors `1..=dim+1`.
pub fn find_balanced_coloring(complex: &SimplicialComplex) -> Option<Coloring> {
    let k = (complex.dim() + 1).max(0) as u32;
    let verts = complex.vertices();
    let index: HashMap<&VertexId, usize> = verts.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut adj = vec![Vec::new(); verts.len()];
    for e in complex.edges() {
        let (a, b) = (index[&e.vertices()[0]], index[&e.vertices()[1]]);
        adj[a].push(b);
        adj[b].push(a);
    }
    // Visit vertices so that each one has as many colored neighbors as possible.
    let mut order = Vec::with_capacity(verts.len());
    let mut placed = vec![false; verts.len()];
    for _ in 0..verts.len() {
        let next = (0..verts.len())
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let seen = adj[v].iter().filter(|&&w| placed[w]).count();
                (seen, adj[v].len(), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
    }
    let mut colors = vec![0u32; verts.len()];
    fn go(pos: usize, order: &[usize], adj: &[Vec<usize>], colors: &mut [u32], k: u32) -> bool {
        let Some(&v) = order.get(pos) else { return true };
        // symmetry breaking: never open more than one new color at a time
        let max_used = order[..pos].iter().map(|&w| colors[w]).max().unwrap_or(0);
        for c in 1..=k.min(max_used + 1) {
            if adj[v].iter().all(|&w| colors[w] != c) {
                colors[v] = c;
                if go(pos + 1, order, adj, colors, k) {
                    return true;
                }
                colors[v] = 0;
            }
        }
        false
    }
    go(0, &order, &adj, &mut colors, k).then(|| Coloring::new(verts.iter().cloned().zip(colors).collect()))
}

/// Central symmetry: `α` is a fixed-point-free involution of the vertices that
/// permutes the facets and never maps a nonempty face to itself.
pub fn check_cs(complex: &SimplicialComplex, alpha: &Permutation) -> VerificationReport {
    const CHECK: &str = "centrally-symmetric";
    for v in complex.vertices() {
        let image = alpha.apply(v);
        if &image == v {
            return VerificationReport::fail(CHECK, format!("vertex {v} is fixed"));
        }
        if !complex.has_vertex(&image) {
            return VerificationReport::fail(CHECK, format!("{v} maps outside the complex to {image}"));
        }
        if &alpha.apply(&image) != v {
            return VerificationReport::fail(CHECK, format!("α² moves {v}"));
        }
    }
    let auto = check_automorphism(complex, alpha);
    if !auto.passed {
        return auto.named(CHECK);
    }
    // α(F) = F forces F to contain an orbit {v, α(v)}, i.e. that edge.
    for f in complex.facets() {
        if let Some(v) = f.iter().find(|v| f.contains(&alpha.apply(v))) {
            let w = alpha.apply(v);
            return VerificationReport::fail(CHECK, format!("face {} is mapped to itself", Face::of([v.clone(), w])));
        }
    }
    VerificationReport::pass(CHECK).metric("orbits", complex.vertices().len() / 2)
}

/// `g` permutes the facet set.
pub fn check_automorphism(complex: &SimplicialComplex, g: &Permutation) -> VerificationReport {
    const CHECK: &str = "automorphism";
    for f in complex.facets() {
        let image = g.apply_face(f);
        if !complex.has_facet(&image) {
            return VerificationReport::fail(CHECK, format!("facet {f} maps to non-facet {image}"));
        }
    }
    VerificationReport::pass(CHECK)
}

/// Pure, every ridge in exactly two facets, connected facet-ridge graph.
pub fn check_closed_pseudomanifold(complex: &SimplicialComplex) -> VerificationReport {
    const CHECK: &str = "closed-pseudomanifold";
    if complex.is_void() {
        return VerificationReport::fail(CHECK, "void complex");
    }
    if !complex.is_pure() {
        let f = complex
            .facets()
            .iter()
            .find(|f| f.dim() != complex.dim())
            .expect("impure");
        return VerificationReport::fail(CHECK, format!("facet {f} has lower dimension"));
    }
    let ridges = complex.ridge_incidence();
    if let Some((r, c)) = ridges.iter().find(|(_, &c)| c != 2) {
        return VerificationReport::fail(CHECK, format!("ridge {r} lies in {c} facets"));
    }
    let graph = complex.facet_ridge_graph();
    let comps = graph.components();
    if comps.len() != 1 {
        return VerificationReport::fail(
            CHECK,
            format!(
                "facet-ridge graph has {} components; {} starts another",
                comps.len(),
                graph.nodes[comps[1][0]]
            ),
        );
    }
    VerificationReport::pass(CHECK)
        .metric("ridges", ridges.len())
        .metric("facets", complex.facets().len())
}

/// Every vertex link has the reduced homology of `S^{dim-1}`; vertices whose
/// link has a boundary must instead have an acyclic link.
pub fn link_homology_survey(complex: &SimplicialComplex) -> VerificationReport {
    const CHECK: &str = "vertex-link-homology";
    complex.precompute_faces();
    let target = sphere_betti(complex.dim() - 1);
    let outcomes: Vec<(VertexId, std::result::Result<bool, String>)> = complex
        .vertices()
        .par_iter()
        .map(|v| {
            let outcome = (|| {
                let link = complex.link(&Face::of([v.clone()])).map_err(|e| e.to_string())?;
                let on_boundary = !link.boundary().map_err(|e| e.to_string())?.is_void();
                let h = reduced_homology(&link).map_err(|e| e.to_string())?;
                let ok = if on_boundary {
                    h.is_acyclic()
                } else {
                    h.matches(&target)
                };
                if ok {
                    Ok(on_boundary)
                } else {
                    Err(format!("link of {v}: {}", h.to_string().replace('\n', ", ")))
                }
            })();
            (v.clone(), outcome)
        })
        .collect();
    let boundary: Vec<&VertexId> = outcomes
        .iter()
        .filter(|(_, o)| o == &Ok(true))
        .map(|(v, _)| v)
        .collect();
    let failure = outcomes.iter().find_map(|(_, o)| o.clone().err());
    VerificationReport::from_outcome(CHECK, failure)
        .metric("vertices", outcomes.len())
        .metric(
            "boundary_vertices",
            boundary.iter().map(|v| v.as_str()).collect::<Vec<_>>(),
        )
        .with_note(NECESSARY_CONDITIONS)
}

/// Every `i`-face of `sub` is a face of `complex`.
pub fn skeleton_contained(complex: &SimplicialComplex, sub: &SimplicialComplex, i: isize) -> VerificationReport {
    let check = format!("skeleton-{i}-contained");
    let faces = sub.faces_of_dim(i);
    let missing = faces.iter().find(|f| !complex.contains_face(f));
    VerificationReport::from_outcome(check, missing.map(|f| format!("{i}-face {f} is missing")))
        .metric("faces_checked", faces.len())
}

/// Pairs of vertices that do not span an edge.
pub fn non_edges(complex: &SimplicialComplex) -> BTreeSet<Face> {
    let edges: BTreeSet<&Face> = complex.edges().iter().collect();
    let vs = complex.vertices();
    let mut out = BTreeSet::new();
    for (i, a) in vs.iter().enumerate() {
        for b in &vs[i + 1..] {
            let e = Face::of([a.clone(), b.clone()]);
            if !edges.contains(&e) {
                out.insert(e);
            }
        }
    }
    out
}

/// `g` maps the non-edge set onto itself and preserves the f-vector.
pub fn check_preserves_non_edges(complex: &SimplicialComplex, g: &Permutation) -> VerificationReport {
    const CHECK: &str = "non-edges-invariant";
    if g.apply_complex(complex).f_vector() != complex.f_vector() {
        return VerificationReport::fail(CHECK, "f-vector changes");
    }
    let missing = non_edges(complex);
    let moved = missing.iter().find(|e| !missing.contains(&g.apply_face(e)));
    VerificationReport::from_outcome(
        CHECK,
        moved.map(|e| format!("non-edge {e} maps to edge {}", g.apply_face(e))),
    )
    .metric("non_edges", missing.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crosspoly::{antipode, cross_polytope_boundary};

    fn tetra_boundary() -> SimplicialComplex {
        SimplicialComplex::simplex(Face::of(["a", "b", "c", "d"]))
            .boundary()
            .unwrap()
    }

    #[test]
    fn cross_polytope_is_balanced_and_cs() {
        for d in 2..=6 {
            let cp = cross_polytope_boundary(d).unwrap();
            assert!(check_balanced(&cp.complex, Some(&cp.coloring)).passed);
            assert!(check_balanced(&cp.complex, None).passed);
            assert!(check_cs(&cp.complex, &cp.antipode).passed);
            assert!(check_closed_pseudomanifold(&cp.complex).passed);
            assert!(link_homology_survey(&cp.complex).passed);
        }
    }

    #[test]
    fn tetrahedron_is_not_three_colorable() {
        let t = tetra_boundary();
        let r = check_balanced(&t, None);
        assert!(!r.passed && r.witness.is_some());
        let three = Coloring::from_pairs([("a", 1), ("b", 2), ("c", 3), ("d", 3)]);
        assert!(!check_balanced(&t, Some(&three)).passed);
    }

    #[test]
    fn triangle_has_no_free_involution() {
        let tri = SimplicialComplex::simplex(Face::of(["a", "b", "c"]))
            .boundary()
            .unwrap();
        let swap = Permutation::involution([("a", "b")]).unwrap();
        let r = check_cs(&tri, &swap);
        assert!(!r.passed);
        assert!(r.witness.unwrap().contains('c'));
    }

    #[test]
    fn cs_squared_is_identity_automorphism() {
        let cp = cross_polytope_boundary(4).unwrap();
        let sq = cp.antipode.compose(&cp.antipode);
        assert!(sq.is_identity());
        assert!(check_automorphism(&cp.complex, &sq).passed);
    }

    #[test]
    fn branching_ridge_is_reported() {
        let fan = SimplicialComplex::from_facets([
            Face::of(["a", "b", "c"]),
            Face::of(["a", "b", "d"]),
            Face::of(["a", "b", "e"]),
        ])
        .unwrap();
        let r = check_closed_pseudomanifold(&fan);
        assert!(!r.passed);
        assert!(r.witness.unwrap().contains("{a b}"));
    }

    #[test]
    fn skeleton_containment() {
        let cp = cross_polytope_boundary(4).unwrap();
        let b1 = crate::crosspoly::b_complex(1, 4).unwrap();
        assert!(skeleton_contained(&b1, &cp.complex, 1).passed);
        assert!(!skeleton_contained(&b1, &cp.complex, 2).passed);
    }

    #[test]
    fn non_edges_of_cross_polytope_are_antipodal_pairs() {
        let cp = cross_polytope_boundary(4).unwrap();
        let ne = non_edges(&cp.complex);
        assert_eq!(ne.len(), 4);
        let alpha = antipode(4);
        assert!(ne.iter().all(|e| alpha.apply(&e.vertices()[0]) == e.vertices()[1]));
        assert!(check_preserves_non_edges(&cp.complex, &alpha).passed);
    }
}
