//! Complexes inside cross-polytope boundaries.
//!
//! Vertices of `∂C*_d` are labelled `x1..xd`, `y1..yd`, with `x_i` antipodal to
//! `y_i`. A facet picks one of `x_i`, `y_i` for every position and is encoded
//! as a [`SignedFacet`]. Subscripts are read modulo `d` wherever the
//! constructions wrap around.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::maps::{Coloring, Permutation};

/// `x_i` (1-based).
pub fn x(i: usize) -> VertexId {
    VertexId::new(format!("x{i}"))
}

/// `y_i` (1-based).
pub fn y(i: usize) -> VertexId {
    VertexId::new(format!("y{i}"))
}

/// Index in `1..=d` for a possibly wrapped 1-based subscript.
pub(crate) fn wrap(i: usize, d: usize) -> usize {
    (i + d - 1) % d + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    X,
    Y,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::X => Sign::Y,
            Sign::Y => Sign::X,
        }
    }
}

/// A facet of `∂C*_d` as a word in `{X, Y}^d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedFacet {
    signs: Vec<Sign>,
}

impl SignedFacet {
    pub fn new(signs: Vec<Sign>) -> Self {
        SignedFacet { signs }
    }

    /// Parses a word such as `"XXYY"` (case-insensitive).
    pub fn parse(word: &str) -> Result<Self> {
        word.chars()
            .map(|c| match c {
                'x' | 'X' => Ok(Sign::X),
                'y' | 'Y' => Ok(Sign::Y),
                other => Err(Error::MalformedInput(format!("sign {other:?} in {word:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(SignedFacet::new)
    }

    /// Reads a facet of `∂C*_d` back into its sign vector.
    pub fn from_face(face: &Face, d: usize) -> Result<Self> {
        let mut signs = vec![None; d];
        for v in face.iter() {
            let (sign, idx) = parse_xy(v)
                .filter(|&(_, i)| (1..=d).contains(&i))
                .ok_or_else(|| Error::MalformedInput(format!("{v} is not a vertex of ∂C*_{d}")))?;
            if signs[idx - 1].replace(sign).is_some() {
                return Err(Error::MalformedInput(format!("{face} contains an antipodal pair")));
            }
        }
        signs
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .map(SignedFacet::new)
            .ok_or_else(|| Error::MalformedInput(format!("{face} is not a facet of ∂C*_{d}")))
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn d(&self) -> usize {
        self.signs.len()
    }

    pub fn to_face(&self) -> Face {
        Face::of(self.signs.iter().enumerate().map(|(i, s)| match s {
            Sign::X => x(i + 1),
            Sign::Y => y(i + 1),
        }))
    }

    /// Switches at positions `1..d-1`: places where `u_i` and `u_{i+1}` differ.
    pub fn switch_count(&self) -> usize {
        self.signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Switches counted around the cycle, including the pair `(u_d, u_1)`.
    /// Always even.
    pub fn cyclic_switch_count(&self) -> usize {
        let wrap = match (self.signs.first(), self.signs.last()) {
            (Some(a), Some(b)) if a != b => 1,
            _ => 0,
        };
        self.switch_count() + wrap
    }

    /// Number of `y` labels.
    pub fn y_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s == Sign::Y).count()
    }

    pub fn antipode(&self) -> SignedFacet {
        SignedFacet::new(self.signs.iter().map(|s| s.flip()).collect())
    }
}

impl std::fmt::Display for SignedFacet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for s in &self.signs {
            f.write_str(match s {
                Sign::X => "X",
                Sign::Y => "Y",
            })?;
        }
        Ok(())
    }
}

/// Splits `x12` into `(X, 12)`; primed and other labels give `None`.
fn parse_xy(v: &VertexId) -> Option<(Sign, usize)> {
    let s = v.as_str();
    let sign = match s.as_bytes().first()? {
        b'x' => Sign::X,
        b'y' => Sign::Y,
        _ => return None,
    };
    let digits = &s[1..];
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok().map(|i| (sign, i))
}

/// All `2^d` sign vectors in lexicographic order (`X < Y`).
pub fn all_signed_facets(d: usize) -> impl Iterator<Item = SignedFacet> {
    (0u64..1 << d).map(move |bits| {
        SignedFacet::new(
            (0..d)
                .map(|i| if bits >> (d - 1 - i) & 1 == 1 { Sign::Y } else { Sign::X })
                .collect(),
        )
    })
}

/// `∂C*_d` with its antipodal involution and balanced coloring.
#[derive(Clone, Debug)]
pub struct CrossPolytopeSphere {
    pub d: usize,
    pub labels: Vec<VertexId>,
    pub complex: SimplicialComplex,
    pub antipode: Permutation,
    pub coloring: Coloring,
}

/// `x_i ↔ y_i` for `1 <= i <= d`.
pub fn antipode(d: usize) -> Permutation {
    Permutation::involution((1..=d).map(|i| (x(i), y(i)))).expect("distinct labels")
}

/// `κ(x_i) = κ(y_i) = i`.
pub fn standard_coloring(d: usize) -> Coloring {
    Coloring::new((1..=d).flat_map(|i| [(x(i), i as u32), (y(i), i as u32)]).collect())
}

pub fn cross_polytope_boundary(d: usize) -> Result<CrossPolytopeSphere> {
    if d < 1 {
        return Err(Error::Precondition("the cross-polytope needs d >= 1".into()));
    }
    let complex = SimplicialComplex::from_facets(all_signed_facets(d).map(|s| s.to_face()))?;
    Ok(CrossPolytopeSphere {
        d,
        labels: (1..=d).map(x).chain((1..=d).map(y)).collect(),
        complex,
        antipode: antipode(d),
        coloring: standard_coloring(d),
    })
}

/// `B(i,d)`: the facets of `∂C*_d` with at most `i` switches.
pub fn b_complex(i: usize, d: usize) -> Result<SimplicialComplex> {
    if d < 1 || i >= d {
        return Err(Error::Precondition(format!(
            "B(i,d) needs 0 <= i <= d-1, got i={i}, d={d}"
        )));
    }
    SimplicialComplex::from_facets(
        all_signed_facets(d)
            .filter(|s| s.switch_count() <= i)
            .map(|s| s.to_face()),
    )
}

/// `τ_j^k`: all `x` except a cyclic block of `j` `y`'s starting at position `k`.
pub fn tau(j: usize, k: usize, d: usize) -> Result<Face> {
    if d < 1 || j > d || !(1..=d).contains(&k) {
        return Err(Error::Precondition(format!(
            "tau needs 0 <= j <= d and 1 <= k <= d, got j={j}, k={k}, d={d}"
        )));
    }
    let block: HashSet<usize> = (k..k + j).map(|i| wrap(i, d)).collect();
    Ok(Face::of((1..=d).map(|i| if block.contains(&i) { y(i) } else { x(i) })))
}

fn gamma_any(j: usize, d: usize) -> Result<SimplicialComplex> {
    SimplicialComplex::from_facets((1..=d).map(|k| tau(j, k, d)).collect::<Result<Vec<_>>>()?)
}

/// `Γ_j`, generated by `τ_j^1..τ_j^d` (a single facet when `j = 0`).
pub fn gamma(j: usize, d: usize) -> Result<SimplicialComplex> {
    if d < 1 || j >= d {
        return Err(Error::Precondition(format!(
            "gamma needs 0 <= j <= d-1, got j={j}, d={d}"
        )));
    }
    gamma_any(j, d)
}

/// Union of `Γ_lo..=Γ_hi`, where `Γ_d` is the all-`y` facet.
fn gamma_range(lo: usize, hi: usize, d: usize) -> Result<SimplicialComplex> {
    let mut facets = Vec::new();
    for j in lo..=hi {
        facets.extend(gamma_any(j, d)?.facets().iter().cloned());
    }
    SimplicialComplex::from_facets(facets)
}

/// A verified shelling: facets in order with their restriction faces.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ShellingCertificate {
    pub order: Vec<Face>,
    pub restrictions: Vec<Face>,
}

/// Checks that `order` is a shelling of `complex`.
///
/// Step `j` is valid when every maximal face of `F_j ∩ (F_1 ∪ ... ∪ F_{j-1})`
/// is a ridge of `F_j`; the new faces then form the interval `[r(F_j), F_j]`
/// where `r(F_j)` collects the vertices whose removal gives one of those ridges.
pub fn verify_shelling(complex: &SimplicialComplex, order: &[Face]) -> Result<ShellingCertificate> {
    let given: BTreeSet<&Face> = order.iter().collect();
    let facets: BTreeSet<&Face> = complex.facets().iter().collect();
    if given.len() != order.len() || given != facets {
        return Err(Error::Precondition(
            "the order must list every facet exactly once".into(),
        ));
    }
    if !complex.is_pure() {
        return Err(Error::Precondition("only pure complexes are shellable".into()));
    }
    let mut restrictions = Vec::with_capacity(order.len());
    for (step, facet) in order.iter().enumerate() {
        if step == 0 {
            restrictions.push(Face::empty());
            continue;
        }
        let meets: BTreeSet<Face> = order[..step].iter().map(|g| facet.intersection(g)).collect();
        let maximal: Vec<&Face> = meets
            .iter()
            .filter(|a| !meets.iter().any(|b| b.len() > a.len() && a.is_subset(b)))
            .collect();
        if let Some(bad) = maximal.iter().find(|m| m.len() + 1 != facet.len()) {
            return Err(Error::NotShelling {
                step,
                intersection: bad.to_string(),
            });
        }
        let r = facet
            .iter()
            .filter(|v| maximal.iter().any(|m| !m.contains(v)))
            .cloned()
            .collect::<Vec<_>>();
        restrictions.push(Face::of(r));
    }
    Ok(ShellingCertificate {
        order: order.to_vec(),
        restrictions,
    })
}

/// `τ_0, τ_1^1..τ_1^d, ..., τ_i^1..τ_i^d`.
pub fn lemma_shelling_order(i: usize, d: usize) -> Result<Vec<Face>> {
    if i >= d {
        return Err(Error::Precondition(format!("need i <= d-1, got i={i}, d={d}")));
    }
    let mut order = vec![tau(0, 1, d)?];
    for j in 1..=i {
        for k in 1..=d {
            order.push(tau(j, k, d)?);
        }
    }
    Ok(order)
}

/// `Γ_0 ∪ ... ∪ Γ_i`.
pub fn gamma_union(i: usize, d: usize) -> Result<SimplicialComplex> {
    if i >= d {
        return Err(Error::Precondition(format!("need i <= d-1, got i={i}, d={d}")));
    }
    gamma_range(0, i, d)
}

/// Checks that the facet-ridge graph of `complex` is one cycle `σ_1..σ_{2n}`
/// with `σ_{n+i} = α(σ_i)`, and returns that enumeration.
///
/// The walk starts at the smallest facet and heads to its smaller neighbor.
pub fn verify_cycle_antipodal(complex: &SimplicialComplex, antipode: &Permutation) -> Result<Vec<Face>> {
    if !complex.is_pure() {
        return Err(Error::Precondition("cycle criterion needs a pure complex".into()));
    }
    let graph = complex.facet_ridge_graph();
    if !graph.is_single_cycle() {
        return Err(Error::CriterionFailed(format!(
            "facet-ridge graph is not a single cycle ({} facets, {} adjacencies)",
            graph.nodes.len(),
            graph.edge_count()
        )));
    }
    let len = graph.nodes.len();
    if len % 2 == 1 {
        return Err(Error::CriterionFailed(format!("cycle has odd length {len}")));
    }
    let mut walk = vec![0usize];
    let mut prev = usize::MAX;
    let mut cur = 0usize;
    while walk.len() < len {
        let next = *graph.adjacency[cur]
            .iter()
            .filter(|&&n| n != prev)
            .min()
            .expect("cycle nodes have two neighbors");
        prev = cur;
        cur = next;
        walk.push(cur);
    }
    let cycle: Vec<Face> = walk.into_iter().map(|i| graph.nodes[i].clone()).collect();
    let n = len / 2;
    for i in 0..n {
        let image = antipode.apply_face(&cycle[i]);
        if image != cycle[n + i] {
            return Err(Error::CriterionFailed(format!(
                "position {}: antipode of {} is {image}, but the cycle has {}",
                i + 1,
                cycle[i],
                cycle[n + i]
            )));
        }
    }
    Ok(cycle)
}

/// The two `d`-balls inside `∂C*_{d+1}` and their common part.
#[derive(Clone, Debug)]
pub struct BallPair {
    pub d: usize,
    pub d1: SimplicialComplex,
    pub d2: SimplicialComplex,
    /// `D₁ ∩ D₂`, a subcomplex of `∂C*_d`.
    pub intersection: SimplicialComplex,
}

/// Builds `D₁`, `D₂` with apexes `x_{d+1}`, `y_{d+1}`.
pub fn build_d1_d2(d: usize) -> Result<BallPair> {
    if d < 3 {
        return Err(Error::Precondition(format!("D1/D2 need d >= 3, got {d}")));
    }
    let alpha = antipode(d);
    let m = d / 2;
    let (base1, base2, expected) = if d % 2 == 1 {
        (
            gamma_range(0, m + 1, d)?,
            gamma_range(m, d, d)?,
            gamma_range(m, m + 1, d)?,
        )
    } else {
        let gamma_small =
            SimplicialComplex::from_facets((1..=m).map(|i| tau(m - 1, i, d)).collect::<Result<Vec<_>>>()?)?;
        let minus_gamma = alpha.apply_complex(&gamma_small);
        let listed =
            SimplicialComplex::from_facets((m..=d - 1).map(|i| tau(m + 1, i, d)).collect::<Result<Vec<_>>>()?)?;
        if minus_gamma != listed {
            return Err(Error::ConstructionInvariant(
                "the antipode of γ differs from ∪ τ_{m+1}^i".into(),
            ));
        }
        let gm = gamma_any(m, d)?;
        (
            gamma_range(0, m, d)?.union(&minus_gamma),
            gamma_range(m, d, d)?.union(&gamma_small),
            gm.union(&gamma_small).union(&minus_gamma),
        )
    };
    let intersection = base1.intersection(&base2);
    if intersection != expected {
        return Err(Error::ConstructionInvariant(format!(
            "D1 ∩ D2 has {} facets, not the expected belt",
            intersection.facets().len()
        )));
    }
    if alpha.apply_complex(&intersection) != intersection {
        return Err(Error::ConstructionInvariant(
            "D1 ∩ D2 is not centrally symmetric".into(),
        ));
    }
    Ok(BallPair {
        d,
        d1: base1.cone(&x(d + 1))?,
        d2: base2.cone(&y(d + 1))?,
        intersection,
    })
}

/// The centrally symmetric triangulation `∂(D₁ ∪ D₂)` on `2d + 2` vertices.
#[derive(Clone, Debug)]
pub struct CsSphereProduct {
    pub d: usize,
    pub complex: SimplicialComplex,
    pub antipode: Permutation,
    pub coloring: Coloring,
}

pub fn cs_sphere_product(d: usize) -> Result<CsSphereProduct> {
    if d < 5 {
        return Err(Error::Precondition(format!(
            "the cs sphere product needs d >= 5, got {d}"
        )));
    }
    let balls = build_d1_d2(d)?;
    let complex = balls.d1.union(&balls.d2).boundary()?;
    if complex.vertices().len() != 2 * d + 2 {
        return Err(Error::ConstructionInvariant(format!(
            "expected {} vertices, found {}",
            2 * d + 2,
            complex.vertices().len()
        )));
    }
    Ok(CsSphereProduct {
        d,
        complex,
        antipode: antipode(d + 1),
        coloring: standard_coloring(d + 1),
    })
}

/// The permutations `R`, `S` (both fixing `x_{d+1}`, `y_{d+1}`) and the antipode.
pub fn cs_symmetry_generators(d: usize) -> Vec<(String, Permutation)> {
    let mut r = BTreeMap::new();
    let mut s = BTreeMap::new();
    for j in 1..=d {
        r.insert(x(j), x(d - j + 1));
        r.insert(y(j), y(d - j + 1));
        s.insert(x(j), x(wrap(j + 1, d)));
        s.insert(y(j), y(wrap(j + 1, d)));
    }
    for m in [&mut r, &mut s] {
        m.insert(x(d + 1), x(d + 1));
        m.insert(y(d + 1), y(d + 1));
    }
    vec![
        ("R".into(), Permutation::new(r).expect("reflection is a bijection")),
        ("S".into(), Permutation::new(s).expect("rotation is a bijection")),
        ("antipode".into(), antipode(d + 1)),
    ]
}

/// Apex labels for one inductive step.
#[derive(Clone, Debug)]
pub struct Apexes {
    pub u: VertexId,
    pub v: VertexId,
    pub u_prime: VertexId,
    pub v_prime: VertexId,
}

/// The four balls feeding [`inductive_step`].
#[derive(Clone, Debug)]
pub struct InductiveSeed {
    pub a1: SimplicialComplex,
    pub a2: SimplicialComplex,
    pub b1: SimplicialComplex,
    pub b2: SimplicialComplex,
    pub apexes: Apexes,
}

#[derive(Clone, Debug)]
pub struct InductiveOutput {
    pub d_prev: SimplicialComplex,
    pub d_cur: SimplicialComplex,
    pub c1: SimplicialComplex,
    pub c2: SimplicialComplex,
    pub d_next: SimplicialComplex,
}

/// One round of the inductive construction.
pub fn inductive_step(
    a1: &SimplicialComplex,
    a2: &SimplicialComplex,
    b1: &SimplicialComplex,
    b2: &SimplicialComplex,
    apexes: &Apexes,
) -> Result<InductiveOutput> {
    if b1.intersection(b2) != a1.union(a2) {
        return Err(Error::Precondition("B1 ∩ B2 must equal A1 ∪ A2".into()));
    }
    let Apexes { u, v, u_prime, v_prime } = apexes;
    let d_prev = a1.cone(u)?.union(&a2.cone(v)?);
    let d_cur = b1.cone(u)?.union(&b2.cone(v)?);
    let c1 = b1.cone(u)?.union(&a2.cone(v)?);
    let c2 = a1.cone(u)?.union(&b2.cone(v)?);
    if c1.intersection(&c2) != d_prev {
        return Err(Error::ConstructionInvariant("C1 ∩ C2 differs from D_prev".into()));
    }
    let d_next = c1.cone(u_prime)?.union(&c2.cone(v_prime)?);
    Ok(InductiveOutput {
        d_prev,
        d_cur,
        c1,
        c2,
        d_next,
    })
}

/// Links of `x_d`, `y_d` in `B(i-1,d)` and `B(i,d)`; one step rebuilds `B(i,d+1)`.
pub fn b_family_seed(i: usize, d: usize) -> Result<InductiveSeed> {
    if i < 1 || i + 1 >= d {
        return Err(Error::Precondition(format!(
            "the B-family seed needs 1 <= i <= d-2, got i={i}, d={d}"
        )));
    }
    let prev = b_complex(i - 1, d)?;
    let cur = b_complex(i, d)?;
    let xd = Face::of([x(d)]);
    let yd = Face::of([y(d)]);
    Ok(InductiveSeed {
        a1: prev.link(&xd)?,
        a2: prev.link(&yd)?,
        b1: cur.link(&xd)?,
        b2: cur.link(&yd)?,
        apexes: Apexes {
            u: x(d),
            v: y(d),
            u_prime: x(d + 1),
            v_prime: y(d + 1),
        },
    })
}

/// The `i = 1` seed: two arcs of the facet cycle of `B(1, d-1)` meeting in the
/// all-`x` and all-`y` facets. One step yields a ball whose boundary has the
/// homology of `S^1 × S^{d-2}`.
pub fn circle_seed(d: usize) -> Result<InductiveSeed> {
    if d < 3 {
        return Err(Error::Precondition(format!("the circle seed needs d >= 3, got {d}")));
    }
    let n = d - 1;
    let all_x = SignedFacet::new(vec![Sign::X; n]);
    let all_y = all_x.antipode();
    let arc = |first: Sign| -> Result<SimplicialComplex> {
        let mut facets = vec![all_x.to_face(), all_y.to_face()];
        for k in 1..n {
            let signs = (0..n).map(|p| if p < k { first } else { first.flip() }).collect();
            facets.push(SignedFacet::new(signs).to_face());
        }
        SimplicialComplex::from_facets(facets)
    };
    Ok(InductiveSeed {
        a1: SimplicialComplex::simplex(all_x.to_face()),
        a2: SimplicialComplex::simplex(all_y.to_face()),
        b1: arc(Sign::X)?,
        b2: arc(Sign::Y)?,
        apexes: Apexes {
            u: x(d),
            v: y(d),
            u_prime: x(d + 1),
            v_prime: y(d + 1),
        },
    })
}

impl InductiveSeed {
    pub fn run(&self) -> Result<InductiveOutput> {
        inductive_step(&self.a1, &self.a2, &self.b1, &self.b2, &self.apexes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{reduced_homology, sphere_betti, sphere_product_betti};

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn cross_polytope_face_numbers() {
        for d in 1..=8usize {
            let cp = cross_polytope_boundary(d).unwrap();
            let f = cp.complex.f_vector();
            for i in 0..d as isize {
                let expect = (1u64 << (i + 1)) * binom(d as u64, i as u64 + 1);
                assert_eq!(f.get(i), expect, "d={d} i={i}");
            }
        }
        assert!(cross_polytope_boundary(0).is_err());
    }

    #[test]
    fn switch_counts() {
        let w = |s: &str| SignedFacet::parse(s).unwrap();
        assert_eq!(w("XXXXX").switch_count(), 0);
        assert_eq!(w("XXYYY").switch_count(), 1);
        assert_eq!(w("XXYYY").cyclic_switch_count(), 2);
        assert_eq!(w("XYXY").switch_count(), 3);
        assert_eq!(w("XYXY").cyclic_switch_count(), 4);
    }

    #[test]
    fn signed_facet_round_trip() {
        for s in all_signed_facets(4) {
            assert_eq!(SignedFacet::from_face(&s.to_face(), 4).unwrap(), s);
        }
        assert!(SignedFacet::from_face(&Face::of(["x1", "y1", "x2"]), 3).is_err());
    }

    #[test]
    fn b_complex_sizes() {
        for d in 3..=7 {
            let b0 = b_complex(0, d).unwrap();
            assert_eq!(b0.facets().len(), 2);
            assert_eq!(b0.facet_ridge_graph().edge_count(), 0);
            let b1 = b_complex(1, d).unwrap();
            assert_eq!(b1.facets().len(), 2 * d);
            assert!(b1.facet_ridge_graph().is_single_cycle());
            assert_eq!(
                b_complex(d - 1, d).unwrap(),
                cross_polytope_boundary(d).unwrap().complex
            );
        }
        assert!(b_complex(5, 5).is_err());
    }

    #[test]
    fn b_complex_homology_is_a_sphere() {
        for (i, d) in [(1, 5), (2, 5), (1, 6), (2, 6), (3, 6)] {
            let h = reduced_homology(&b_complex(i, d).unwrap()).unwrap();
            assert!(h.matches(&sphere_betti(i as isize)), "B({i},{d}): {h}");
        }
    }

    #[test]
    fn tau_and_gamma() {
        assert_eq!(tau(2, 4, 5).unwrap(), Face::of(["x1", "x2", "x3", "y4", "y5"]));
        assert_eq!(tau(2, 5, 5).unwrap(), Face::of(["y1", "x2", "x3", "x4", "y5"]));
        assert_eq!(gamma(0, 4).unwrap().facets().len(), 1);
        for d in 3..=7 {
            for j in 1..d {
                let g = gamma(j, d).unwrap();
                assert_eq!(g.facets().len(), d);
                for f in g.facets() {
                    let s = SignedFacet::from_face(f, d).unwrap();
                    assert_eq!(s.cyclic_switch_count(), 2);
                    assert_eq!(s.y_count(), j);
                }
            }
            // τ_j^k and τ_{d-j}^{k+j} are antipodal
            let alpha = antipode(d);
            for j in 0..=d {
                for k in 1..=d {
                    assert_eq!(
                        alpha.apply_face(&tau(j, k, d).unwrap()),
                        tau(d - j, wrap(k + j, d), d).unwrap()
                    );
                }
            }
        }
        assert!(gamma(5, 5).is_err());
        assert!(tau(1, 0, 5).is_err());
    }

    #[test]
    fn lemma_shellings() {
        for d in 5..=8usize {
            for i in 0..=d.div_ceil(2) {
                let order = lemma_shelling_order(i, d).unwrap();
                let cert =
                    verify_shelling(&gamma_union(i, d).unwrap(), &order).unwrap_or_else(|e| panic!("d={d} i={i}: {e}"));
                if i >= 2 {
                    for (idx, r) in cert.restrictions.iter().enumerate().skip(1 + (i - 1) * d) {
                        let k = (idx - 1) % d + 1;
                        assert_eq!(r, &Face::of([y(k), y(wrap(k + i - 1, d))]), "d={d} i={i} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn belt_union_past_half_is_not_a_ball_for_even_d() {
        // two blocks of d/2 + 1 y's overlap in two separate positions
        for d in [6, 8] {
            let i = d / 2 + 1;
            let c = gamma_union(i, d).unwrap();
            let err = verify_shelling(&c, &lemma_shelling_order(i, d).unwrap()).unwrap_err();
            assert!(matches!(err, Error::NotShelling { .. }));
            assert!(!reduced_homology(&c).unwrap().is_acyclic());
        }
    }

    #[test]
    fn shelling_rejections() {
        let single = SimplicialComplex::simplex(Face::of(["a", "b", "c"]));
        let cert = verify_shelling(&single, single.facets()).unwrap();
        assert_eq!(cert.restrictions, vec![Face::empty()]);
        // two triangles meeting in a vertex, second step fails
        let bowtie = SimplicialComplex::from_facets([Face::of(["a", "b", "c"]), Face::of(["c", "d", "e"])]).unwrap();
        let err = verify_shelling(&bowtie, bowtie.facets()).unwrap_err();
        assert!(matches!(err, Error::NotShelling { step: 1, .. }));
        // order must cover the facets
        assert!(verify_shelling(&bowtie, &bowtie.facets()[..1]).is_err());
    }

    #[test]
    fn cycle_antipodality() {
        for d in 3..=7 {
            let cycle = verify_cycle_antipodal(&b_complex(1, d).unwrap(), &antipode(d)).unwrap();
            assert_eq!(cycle.len(), 2 * d);
        }
        let err = verify_cycle_antipodal(&b_complex(0, 4).unwrap(), &antipode(4)).unwrap_err();
        assert!(matches!(err, Error::CriterionFailed(_)));
    }

    #[test]
    fn d1_d2_intersections() {
        for d in 3..=8 {
            let balls = build_d1_d2(d).unwrap();
            assert_eq!(balls.intersection.facets().len(), 2 * d, "d={d}");
            verify_cycle_antipodal(&balls.intersection, &antipode(d)).unwrap();
        }
        let five = build_d1_d2(5).unwrap();
        assert_eq!(five.intersection, gamma(2, 5).unwrap().union(&gamma(3, 5).unwrap()));
    }

    #[test]
    fn cone_vertex_count() {
        let cone = gamma_union(1, 5).unwrap().cone(&x(6)).unwrap();
        assert_eq!(cone.f_vector().get(0), 11);
        assert!(reduced_homology(&cone).unwrap().is_acyclic());
    }

    #[test]
    fn cs_product_five() {
        let cs = cs_sphere_product(5).unwrap();
        assert_eq!(cs.complex.vertices().len(), 12);
        assert!(cs.complex.boundary().unwrap().is_void());
        let h = reduced_homology(&cs.complex).unwrap();
        assert!(h.matches(&sphere_product_betti(2, 2)), "{h}");
        assert!(cs_sphere_product(4).is_err());
        for (name, g) in cs_symmetry_generators(5) {
            assert_eq!(g.apply_complex(&cs.complex), cs.complex, "{name}");
        }
    }

    #[test]
    fn inductive_b_family_rebuilds_b() {
        for (i, d) in [(1, 4), (1, 5), (2, 5)] {
            let out = b_family_seed(i, d).unwrap().run().unwrap();
            assert_eq!(out.d_prev, b_complex(i - 1, d).unwrap());
            assert_eq!(out.d_cur, b_complex(i, d).unwrap());
            assert_eq!(out.d_next, b_complex(i, d + 1).unwrap());
        }
    }

    #[test]
    fn inductive_circle_seed() {
        for d in [4, 5] {
            let out = circle_seed(d).unwrap().run().unwrap();
            let h = reduced_homology(&out.d_next.boundary().unwrap()).unwrap();
            assert!(h.matches(&sphere_product_betti(1, d as isize - 2)), "d={d}: {h}");
        }
    }

    #[test]
    fn inductive_guard() {
        let seed = b_family_seed(1, 4).unwrap();
        let err = inductive_step(&seed.b1, &seed.a2, &seed.b1, &seed.b2, &seed.apexes).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }
}
