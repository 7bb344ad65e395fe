//! The balanced `4d`-vertex triangulation of `S^2 × S^{d-3}`.
//!
//! Two cross-polytope boundaries `P` (labels `x_i`, `y_i`) and `P'` (labels
//! `x'_i`, `y'_i`) are bridged by a ring of `2d` cross-polytopes `Γ_1..Γ_{2d}`,
//! glued by ◊-connected sums and closed by a ◊-handle addition. The ring `Γ`
//! contains `Δ₁ = B(1,d)` and `f(Δ₁)`; cutting those out leaves the tube `N`,
//! and `Σ = Δ₂ ∪ N ∪ f(Δ₂)`.
//!
//! Every label carries its color in its subscript: `κ(x_c) = κ(y_c) = κ(x'_c) = κ(y'_c) = c`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::crosspoly::{b_complex, cross_polytope_boundary, wrap, x, y};
use crate::error::{Error, Result};
use crate::maps::{Coloring, Permutation, VertexMap};
use crate::verify::non_edges;

/// `x'_i`.
pub fn xp(i: usize) -> VertexId {
    VertexId::new(format!("x'{i}"))
}

/// `y'_i`.
pub fn yp(i: usize) -> VertexId {
    VertexId::new(format!("y'{i}"))
}

/// The coloring of all `4d` labels.
pub fn coloring(d: usize) -> Coloring {
    Coloring::new(
        (1..=d)
            .flat_map(|c| [x(c), y(c), xp(c), yp(c)].map(|v| (v, c as u32)))
            .collect(),
    )
}

/// `σ_i = x_1..x_i y_{i+1}..y_d` and `σ_{d+i} = y_1..y_i x_{i+1}..x_d` for `1 <= i <= d`.
pub fn sigma(i: usize, d: usize) -> Result<Face> {
    if !(1..=2 * d).contains(&i) {
        return Err(Error::Precondition(format!("σ_i needs 1 <= i <= 2d, got i={i}, d={d}")));
    }
    let (k, swapped) = if i <= d { (i, false) } else { (i - d, true) };
    Ok(Face::of((1..=d).map(|p| if (p <= k) != swapped { x(p) } else { y(p) })))
}

/// `f`: `x_i ↦ x'_{i+1}`, `y_i ↦ y'_{i+1}` for `i < d`; `x_d ↦ y'_1`, `y_d ↦ x'_1`.
pub fn map_f(d: usize) -> VertexMap {
    let mut m = BTreeMap::new();
    for i in 1..d {
        m.insert(x(i), xp(i + 1));
        m.insert(y(i), yp(i + 1));
    }
    m.insert(x(d), yp(1));
    m.insert(y(d), xp(1));
    VertexMap::new(m).expect("f is injective")
}

/// The swap `D`: `x ↔ y` on primed and unprimed labels alike.
pub fn swap_xy(d: usize) -> Permutation {
    Permutation::involution((1..=d).flat_map(|j| [(x(j), y(j)), (xp(j), yp(j))])).expect("distinct labels")
}

/// A cross-polytope boundary with a distinguished pair of antipodal facets.
#[derive(Clone, Debug)]
pub struct PolytopePiece {
    pub complex: SimplicialComplex,
    pub sigma: Face,
    pub antipode: Permutation,
    pub coloring: Coloring,
}

impl PolytopePiece {
    /// The cross-polytope whose antipodal pairs match the equal-colored vertices
    /// of `sigma` and `opposite`.
    pub fn from_antipodal_facets(sigma: &Face, opposite: &Face, coloring: &Coloring) -> Result<Self> {
        if !sigma.is_disjoint(opposite) || sigma.len() != opposite.len() {
            return Err(Error::Precondition(format!(
                "{sigma} and {opposite} cannot be antipodal facets"
            )));
        }
        let by_color = |f: &Face| -> Result<BTreeMap<u32, VertexId>> {
            let mut m = BTreeMap::new();
            for v in f.iter() {
                let c = coloring
                    .color(v)
                    .ok_or_else(|| Error::Precondition(format!("vertex {v} has no color")))?;
                if m.insert(c, v.clone()).is_some() {
                    return Err(Error::Precondition(format!("{f} repeats color {c}")));
                }
            }
            Ok(m)
        };
        let a = by_color(sigma)?;
        let b = by_color(opposite)?;
        if a.keys().ne(b.keys()) {
            return Err(Error::Precondition(format!(
                "{sigma} and {opposite} use different colors"
            )));
        }
        let pairs: Vec<(VertexId, VertexId)> = a.into_iter().zip(b.into_values()).map(|((_, u), w)| (u, w)).collect();
        let n = pairs.len();
        let facets = (0u64..1 << n).map(|bits| {
            Face::of(
                pairs
                    .iter()
                    .enumerate()
                    .map(|(k, (u, w))| if bits >> k & 1 == 0 { u.clone() } else { w.clone() }),
            )
        });
        let complex = SimplicialComplex::from_facets(facets)?;
        let antipode = Permutation::involution(pairs)?;
        let coloring = coloring.restricted_to(complex.vertices());
        Ok(PolytopePiece {
            complex,
            sigma: sigma.clone(),
            antipode,
            coloring,
        })
    }

    pub fn opposite(&self) -> Face {
        self.antipode.apply_face(&self.sigma)
    }

    /// Copy with every label `v` renamed to `v#tag`.
    pub fn tagged(&self, tag: usize) -> PolytopePiece {
        let t = |v: &VertexId| private_label(v, tag);
        PolytopePiece {
            complex: self.complex.relabel(t).expect("tagging is injective"),
            sigma: self.sigma.map(t).expect("tagging is injective"),
            antipode: Permutation::from_pairs(self.antipode.mapping().iter().map(|(a, b)| (t(a), t(b))))
                .expect("tagged involution"),
            coloring: self.coloring.relabel(t),
        }
    }
}

fn private_label(v: &VertexId, tag: usize) -> VertexId {
    VertexId::new(format!("{v}#{tag}"))
}

fn shared_label(v: &VertexId) -> VertexId {
    VertexId::new(v.as_str().split('#').next().unwrap_or_default())
}

/// `Γ_i`: the cross-polytope with `σ_i` and `f(σ_i)` as antipodal facets.
pub fn gamma_piece(d: usize, i: usize) -> Result<PolytopePiece> {
    if d < 3 {
        return Err(Error::Precondition(format!("pieces need d >= 3, got {d}")));
    }
    let s = sigma(i, d)?;
    let fs = map_f(d).apply_face(&s)?;
    PolytopePiece::from_antipodal_facets(&s, &fs, &coloring(d))
}

/// The edges `e_1..e_{2d}` along which consecutive pieces are joined.
///
/// `e_i = {x'_{i+1}, y_{i+2}}` for `i <= d-2`, `e_{d-1} = {x'_d, x_1}`,
/// `e_d = {y'_1, x_2}`, and `e_{d+i}` is the `x ↔ y` swap of `e_i`.
pub fn deleted_edges(d: usize) -> Vec<Face> {
    let mut first: Vec<Face> = (1..=d.saturating_sub(2))
        .map(|i| Face::of([xp(i + 1), y(i + 2)]))
        .collect();
    first.push(Face::of([xp(d), x(1)]));
    first.push(Face::of([yp(1), x(2)]));
    let swap = swap_xy(d);
    let second: Vec<Face> = first.iter().map(|e| swap.apply_face(e)).collect();
    first.extend(second);
    first
}

/// A complex under construction by ◊-gluing.
#[derive(Clone, Debug)]
pub struct Glued {
    pub complex: SimplicialComplex,
    pub coloring: Coloring,
    /// `σ` of the most recently attached piece; the next gluing matches it.
    pub open_sigma: Face,
    pub open_opposite: Face,
    /// The distinguished facets `±σ` of every piece so far.
    pub protected: Vec<Face>,
}

impl From<&PolytopePiece> for Glued {
    fn from(p: &PolytopePiece) -> Self {
        Glued {
            complex: p.complex.clone(),
            coloring: p.coloring.clone(),
            open_sigma: p.sigma.clone(),
            open_opposite: p.opposite(),
            protected: vec![p.sigma.clone(), p.opposite()],
        }
    }
}

fn edge_colors(e: &Face, coloring: &Coloring) -> Result<Vec<u32>> {
    let mut c = coloring
        .face_colors(e)
        .ok_or_else(|| Error::Precondition(format!("edge {e} is not fully colored")))?;
    c.sort_unstable();
    Ok(c)
}

fn check_gluing_edge(g: &Glued, e: &Face) -> Result<()> {
    if e.len() != 2 || !g.complex.contains_face(e) {
        return Err(Error::Precondition(format!("{e} is not an edge of the complex")));
    }
    if let Some(p) = g.protected.iter().find(|p| e.is_subset(p)) {
        return Err(Error::Precondition(format!(
            "edge {e} lies in the distinguished facet {p}"
        )));
    }
    Ok(())
}

fn vertex_set(c: &SimplicialComplex) -> BTreeSet<VertexId> {
    c.vertices().iter().cloned().collect()
}

fn image_set(m: &VertexMap, vs: impl IntoIterator<Item = VertexId>) -> BTreeSet<VertexId> {
    vs.into_iter().map(|v| m.apply(&v)).collect()
}

/// `(g1 # g2)`: delete `e1`, `e2`, and glue the rest along the star boundaries.
///
/// `ident` sends the star vertices of `e1` in `g1` to those of `e2` in `g2`.
/// The result keeps `g1`'s labels; `g2`'s star vertices take their `ident` preimages.
pub fn diamond_connected_sum(g1: &Glued, e1: &Face, g2: &Glued, e2: &Face, ident: &VertexMap) -> Result<Glued> {
    check_gluing_edge(g1, e1)?;
    check_gluing_edge(g2, e2)?;
    if edge_colors(e1, &g1.coloring)? != edge_colors(e2, &g2.coloring)? {
        return Err(Error::Precondition(format!(
            "edges {e1} and {e2} have different colors"
        )));
    }
    let st1 = g1.complex.star(e1)?;
    let st2 = g2.complex.star(e2)?;
    let v1 = vertex_set(&st1);
    let v2 = vertex_set(&st2);
    let domain: BTreeSet<VertexId> = ident.mapping().keys().cloned().collect();
    if domain != v1 || image_set(ident, v1.iter().cloned()) != v2 {
        return Err(Error::Gluing(
            "ident must map the star vertices of e1 onto those of e2".into(),
        ));
    }
    for (a, b) in [(&g1.open_sigma, &g2.open_sigma), (&g1.open_opposite, &g2.open_opposite)] {
        let lhs = image_set(ident, v1.iter().filter(|v| a.contains(v)).cloned());
        let rhs: BTreeSet<VertexId> = v2.iter().filter(|v| b.contains(v)).cloned().collect();
        if lhs != rhs {
            return Err(Error::Gluing(format!(
                "the star part on {a} is not sent to the star part on {b}"
            )));
        }
    }
    for v in &v1 {
        if g1.coloring.color(v) != g2.coloring.color(&ident.apply(v)) {
            return Err(Error::Gluing(format!("ident changes the color of {v}")));
        }
    }
    if ident.apply_complex(&st1.boundary()?)? != st2.boundary()? {
        return Err(Error::Gluing(
            "ident is not an isomorphism of the star boundaries".into(),
        ));
    }
    let back = ident.inverse();
    let keep1 = g1.complex.facets().iter().filter(|f| !e1.is_subset(f)).cloned();
    let keep2 = g2
        .complex
        .facets()
        .iter()
        .filter(|f| !e2.is_subset(f))
        .map(|f| back.apply_face(f))
        .collect::<Result<Vec<_>>>()?;
    let complex = SimplicialComplex::generated_by(keep1.chain(keep2));
    if complex.contains_face(e1) {
        return Err(Error::Gluing(format!("edge {e1} survives the gluing")));
    }
    let coloring = g1
        .coloring
        .merge(&g2.coloring.relabel(|v| back.apply(v)))?
        .restricted_to(complex.vertices());
    let mut protected = g1.protected.clone();
    for p in &g2.protected {
        protected.push(back.apply_face(p)?);
    }
    Ok(Glued {
        complex,
        coloring,
        open_sigma: back.apply_face(&g2.open_sigma)?,
        open_opposite: back.apply_face(&g2.open_opposite)?,
        protected,
    })
}

/// ◊-handle addition: remove the stars of `e1`, `e2` and identify their links via `phi`.
///
/// `phi` sends the star vertices of `e1` to those of `e2`. Every vertex `v` in
/// the star of `e1` must share no neighbor with `phi(v)`.
pub fn diamond_handle_addition(g: &Glued, e1: &Face, e2: &Face, phi: &VertexMap) -> Result<Glued> {
    check_gluing_edge(g, e1)?;
    check_gluing_edge(g, e2)?;
    if edge_colors(e1, &g.coloring)? != edge_colors(e2, &g.coloring)? {
        return Err(Error::Precondition(format!(
            "edges {e1} and {e2} have different colors"
        )));
    }
    let st1 = g.complex.star(e1)?;
    let st2 = g.complex.star(e2)?;
    let v1 = vertex_set(&st1);
    let domain: BTreeSet<VertexId> = phi.mapping().keys().cloned().collect();
    if domain != v1 || phi.apply_complex(&st1)? != st2 {
        return Err(Error::Gluing(
            "phi is not an isomorphism from st(e1) onto st(e2)".into(),
        ));
    }
    for v in &v1 {
        if g.coloring.color(v) != g.coloring.color(&phi.apply(v)) {
            return Err(Error::Gluing(format!("phi changes the color of {v}")));
        }
        let w = phi.apply(v);
        if w != *v && !g.complex.neighbors(v).is_disjoint(&g.complex.neighbors(&w)) {
            return Err(Error::HandleIllegal { vertex: v.to_string() });
        }
    }
    let kept = g
        .complex
        .facets()
        .iter()
        .filter(|f| !e1.is_subset(f) && !e2.is_subset(f))
        .map(|f| phi.apply_face(f))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::Gluing(format!("identification collapses a facet: {e}")))?;
    let complex = SimplicialComplex::generated_by(kept);
    if complex.contains_face(e2) {
        return Err(Error::Gluing(format!("edge {e2} survives the handle addition")));
    }
    let coloring = g.coloring.restricted_to(complex.vertices());
    Ok(Glued {
        complex,
        coloring,
        open_sigma: phi.apply_face(&g.open_sigma)?,
        open_opposite: phi.apply_face(&g.open_opposite)?,
        protected: g
            .protected
            .iter()
            .map(|p| phi.apply_face(p))
            .collect::<Result<Vec<_>>>()?,
    })
}

/// The ring of pieces and the edges joining them.
#[derive(Clone, Debug)]
pub struct GlueChain {
    pub pieces: Vec<PolytopePiece>,
    pub deleted_edges: Vec<Face>,
    /// How the disjoint-label gluing collapses back onto the shared labels.
    pub identification: VertexMap,
}

/// `Γ` together with the two copies of `B(1,d)` it contains.
#[derive(Clone, Debug)]
pub struct GammaComplex {
    pub d: usize,
    pub complex: SimplicialComplex,
    pub delta1: SimplicialComplex,
    pub f_delta1: SimplicialComplex,
    pub chain: GlueChain,
    pub coloring: Coloring,
}

pub fn build_gamma(d: usize) -> Result<GammaComplex> {
    if d < 3 {
        return Err(Error::Precondition(format!("Γ needs d >= 3, got {d}")));
    }
    let pieces: Vec<PolytopePiece> = (1..=2 * d)
        .into_par_iter()
        .map(|i| gamma_piece(d, i))
        .collect::<Result<_>>()?;
    let edges = deleted_edges(d);
    let n = pieces.len();
    for i in 0..n {
        let (a, b, e) = (&pieces[i], &pieces[(i + 1) % n], &edges[i]);
        let common = a.complex.intersection(&b.complex);
        if common != a.complex.star(e)? || common != b.complex.star(e)? {
            return Err(Error::Gluing(format!(
                "Γ_{} ∩ Γ_{} is not the star of {e}",
                i + 1,
                (i + 1) % n + 1
            )));
        }
    }
    let facets: BTreeSet<&Face> = pieces.iter().flat_map(|p| p.complex.facets()).collect();
    let complex = SimplicialComplex::generated_by(
        facets
            .into_iter()
            .filter(|f| !edges.iter().any(|e| e.is_subset(f)))
            .cloned(),
    );
    if let Some(e) = edges.iter().find(|e| complex.contains_face(e)) {
        return Err(Error::ConstructionInvariant(format!(
            "deleted edge {e} is still a face"
        )));
    }

    let (glued, identification) = glue_with_private_labels(&pieces, &edges)?;
    if glued != complex {
        return Err(Error::ConstructionInvariant(
            "the disjoint-label gluing disagrees with the shared-label union".into(),
        ));
    }

    let delta1 = b_complex(1, d)?;
    let f_delta1 = map_f(d).apply_complex(&delta1)?;
    if let Some(f) = delta1
        .facets()
        .iter()
        .chain(f_delta1.facets())
        .find(|f| !complex.has_facet(f))
    {
        return Err(Error::ConstructionInvariant(format!(
            "facet {f} of Δ1 ∪ f(Δ1) was lost"
        )));
    }
    if complex.vertices().len() != 4 * d {
        return Err(Error::ConstructionInvariant(format!(
            "Γ has {} vertices, expected {}",
            complex.vertices().len(),
            4 * d
        )));
    }
    let coloring = coloring(d);
    Ok(GammaComplex {
        d,
        complex,
        delta1,
        f_delta1,
        chain: GlueChain {
            pieces,
            deleted_edges: edges,
            identification,
        },
        coloring,
    })
}

/// Glues private copies `Γ_i#i` by ◊-connected sums along `e_1..e_{2d-1}`,
/// closes the ring with a ◊-handle addition along `e_{2d}`, and renames back.
fn glue_with_private_labels(pieces: &[PolytopePiece], edges: &[Face]) -> Result<(SimplicialComplex, VertexMap)> {
    let n = pieces.len();
    // rep[i][v]: the label that piece i's copy of v carries in the glued complex
    let mut rep: Vec<BTreeMap<VertexId, VertexId>> = Vec::with_capacity(n);
    let tagged: Vec<PolytopePiece> = pieces.iter().enumerate().map(|(i, p)| p.tagged(i + 1)).collect();
    rep.push(
        pieces[0]
            .complex
            .vertices()
            .iter()
            .map(|v| (v.clone(), private_label(v, 1)))
            .collect(),
    );
    let mut acc = Glued::from(&tagged[0]);
    for i in 0..n - 1 {
        let e = &edges[i];
        let star_vertices = vertex_set(&pieces[i].complex.star(e)?);
        let ident = VertexMap::new(
            star_vertices
                .iter()
                .map(|v| (rep[i][v].clone(), private_label(v, i + 2)))
                .collect(),
        )?;
        let e1 = e.map(|v| rep[i][v].clone())?;
        let e2 = e.map(|v| private_label(v, i + 2))?;
        acc = diamond_connected_sum(&acc, &e1, &Glued::from(&tagged[i + 1]), &e2, &ident)?;
        let next: BTreeMap<VertexId, VertexId> = pieces[i + 1]
            .complex
            .vertices()
            .iter()
            .map(|v| {
                let label = if star_vertices.contains(v) {
                    rep[i][v].clone()
                } else {
                    private_label(v, i + 2)
                };
                (v.clone(), label)
            })
            .collect();
        rep.push(next);
    }
    let e = &edges[n - 1];
    let closing = vertex_set(&pieces[n - 1].complex.star(e)?);
    let phi = VertexMap::new(
        closing
            .iter()
            .map(|v| (rep[n - 1][v].clone(), rep[0][v].clone()))
            .collect(),
    )?;
    let e_last = e.map(|v| rep[n - 1][v].clone())?;
    let e_first = e.map(|v| rep[0][v].clone())?;
    // the identification is anchored on the open end of the chain
    acc.protected.retain(|p| !e_last.is_subset(p) && !e_first.is_subset(p));
    let closed = diamond_handle_addition(&acc, &e_last, &e_first, &phi)?;
    let back: BTreeMap<VertexId, VertexId> = closed
        .complex
        .vertices()
        .iter()
        .map(|v| (v.clone(), shared_label(v)))
        .collect();
    let identification = VertexMap::new(back)
        .map_err(|_| Error::ConstructionInvariant("two private copies of one label survive the gluing".into()))?;
    Ok((identification.apply_complex(&closed.complex)?, identification))
}

/// `Σ = Δ₂ ∪ N ∪ f(Δ₂)` with its balanced coloring and the intermediate pieces.
#[derive(Clone, Debug)]
pub struct SigmaComplex {
    pub d: usize,
    pub complex: SimplicialComplex,
    pub coloring: Coloring,
    pub gamma: GammaComplex,
    pub delta2: SimplicialComplex,
    pub f_delta2: SimplicialComplex,
    pub tube: SimplicialComplex,
}

pub fn build_sigma(d: usize) -> Result<SigmaComplex> {
    let gamma = build_gamma(d)?;
    let p = cross_polytope_boundary(d)?.complex;
    let delta2 = p.complement(&gamma.delta1)?;
    let f_delta2 = map_f(d).apply_complex(&delta2)?;
    let tube = gamma.complex.complement(&gamma.delta1.union(&gamma.f_delta1))?;
    for (part, name) in [(&gamma.delta1, "Δ1"), (&gamma.f_delta1, "f(Δ1)")] {
        if tube.intersection(part) != part.boundary()? {
            return Err(Error::ConstructionInvariant(format!("N ∩ {name} differs from ∂{name}")));
        }
    }
    let complex = delta2.union(&tube).union(&f_delta2);
    if complex.vertices().len() != 4 * d {
        return Err(Error::ConstructionInvariant(format!(
            "Σ has {} vertices, expected {}",
            complex.vertices().len(),
            4 * d
        )));
    }
    Ok(SigmaComplex {
        d,
        complex,
        coloring: gamma.coloring.clone(),
        gamma,
        delta2,
        f_delta2,
        tube,
    })
}

/// The generators `D`, `E'`, `R'` of the symmetry group of `Σ`.
pub fn symmetry_generators(d: usize) -> Vec<(String, Permutation)> {
    let mirror = |j: usize| d - j + 1;
    let mut e = BTreeMap::new();
    let mut r = BTreeMap::new();
    for j in 1..=d {
        e.insert(x(j), xp(mirror(j)));
        e.insert(y(j), yp(mirror(j)));
        e.insert(xp(j), x(mirror(j)));
        e.insert(yp(j), y(mirror(j)));
        if j < d {
            r.insert(x(j), x(j + 1));
            r.insert(y(j), y(j + 1));
            r.insert(xp(j), xp(j + 1));
            r.insert(yp(j), yp(j + 1));
        }
    }
    r.insert(x(d), y(1));
    r.insert(y(d), x(1));
    r.insert(xp(d), yp(1));
    r.insert(yp(d), xp(1));
    vec![
        ("D".into(), swap_xy(d)),
        ("E'".into(), Permutation::new(e).expect("E' is a bijection")),
        ("R'".into(), Permutation::new(r).expect("R' is a bijection")),
    ]
}

/// Accounting of the non-edges of `Σ`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct MissingEdgeLedger {
    pub non_edges: usize,
    pub deleted: usize,
    /// Antipodal pairs of some piece that are non-edges of `Σ`.
    pub antipodal_non_edges: usize,
    /// Pairs of vertices that share no piece, e.g. `{x_i, y_i}` and `{v, f(-v)}`.
    pub separated: usize,
    /// Non-edges explained by none of the classes above.
    pub unexplained: Vec<Face>,
    /// Deleted edges that are nevertheless edges of `Σ`.
    pub realized_deleted: Vec<Face>,
}

pub fn missing_edge_ledger(sigma: &SigmaComplex) -> MissingEdgeLedger {
    let missing = non_edges(&sigma.complex);
    let deleted: BTreeSet<Face> = sigma.gamma.chain.deleted_edges.iter().cloned().collect();
    let antipodal: BTreeSet<Face> = sigma
        .gamma
        .chain
        .pieces
        .iter()
        .flat_map(|p| {
            p.antipode
                .mapping()
                .iter()
                .map(|(a, b)| Face::of([a.clone(), b.clone()]))
        })
        .collect();
    let pieces = &sigma.gamma.chain.pieces;
    let separated = |e: &Face| {
        !pieces
            .iter()
            .any(|p| e.iter().all(|v| p.complex.vertices().contains(v)))
    };
    MissingEdgeLedger {
        non_edges: missing.len(),
        deleted: deleted.len(),
        antipodal_non_edges: missing.iter().filter(|e| antipodal.contains(e)).count(),
        separated: missing.iter().filter(|e| separated(e)).count(),
        unexplained: missing
            .iter()
            .filter(|e| !antipodal.contains(e) && !deleted.contains(e) && !separated(e))
            .cloned()
            .collect(),
        realized_deleted: deleted.iter().filter(|e| !missing.contains(e)).cloned().collect(),
    }
}

/// Two octahedra on disjoint labels glued along the 4-cycles around
/// `{y3, x'1}` and `{Y3, X'1}`; a balanced 2-sphere on 8 vertices.
pub fn two_octahedra_example() -> Result<Glued> {
    let col = Coloring::from_pairs([
        ("y1", 1),
        ("y2", 2),
        ("y3", 3),
        ("x'1", 1),
        ("x'2", 2),
        ("x'3", 3),
        ("X1", 1),
        ("Y2", 2),
        ("Y3", 3),
        ("X'1", 1),
        ("X'2", 2),
        ("X'3", 3),
    ]);
    let g1 =
        PolytopePiece::from_antipodal_facets(&Face::of(["y1", "y2", "y3"]), &Face::of(["x'1", "x'2", "x'3"]), &col)?;
    let g2 =
        PolytopePiece::from_antipodal_facets(&Face::of(["X1", "Y2", "Y3"]), &Face::of(["X'1", "X'2", "X'3"]), &col)?;
    let ident = VertexMap::new(
        [("y3", "Y3"), ("x'2", "X'2"), ("x'1", "X'1"), ("y2", "Y2")]
            .into_iter()
            .map(|(a, b)| (VertexId::new(a), VertexId::new(b)))
            .collect(),
    )?;
    diamond_connected_sum(
        &Glued::from(&g1),
        &Face::of(["y3", "x'1"]),
        &Glued::from(&g2),
        &Face::of(["Y3", "X'1"]),
        &ident,
    )
}

/// The index of the piece pairing, exposed for reports: piece `i` joins to `i+1` at `e_i`.
pub fn next_piece(i: usize, d: usize) -> usize {
    wrap(i + 1, 2 * d)
}
