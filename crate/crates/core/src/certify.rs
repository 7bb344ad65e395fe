//! Certification pipelines.
//!
//! Each [`Target`] builds one object and runs every applicable check on it,
//! producing a [`Certificate`]. A failed construction or check becomes a
//! failing report with a witness; only search-budget and group-cap overruns
//! abort a pipeline, so callers can tell "false" apart from "undecided".

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::balanced::{build_sigma, missing_edge_ledger, symmetry_generators};
use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::crosspoly::{
    antipode, b_complex, b_family_seed, build_d1_d2, circle_seed, cross_polytope_boundary, cs_sphere_product,
    cs_symmetry_generators, gamma_union, lemma_shelling_order, verify_cycle_antipodal, verify_shelling, wrap, y,
};
use crate::error::{Error, Result};
use crate::homology::{
    reduced_euler_from_faces, reduced_homology, smith_normal_form, smith_normal_form_with_transforms, sphere_betti,
    sphere_product_betti, IntegerMatrix,
};
use crate::io::ComplexDocument;
use crate::verify::{
    automorphisms, check_automorphism, check_balanced, check_closed_pseudomanifold, check_cs,
    check_preserves_non_edges, find_isomorphism, group_closure, link_homology_survey, orbit_sizes, skeleton_contained,
    VerificationReport, DEFAULT_BUDGET,
};

/// Largest group the closure checks will enumerate.
pub const GROUP_CAP: usize = 100_000;

/// Something that can be built and certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    CrossPolytope {
        d: usize,
    },
    BComplex {
        i: usize,
        d: usize,
    },
    /// The belt union `Γ_0 ∪ … ∪ Γ_i` with its shelling.
    Shelling {
        d: usize,
        i: usize,
    },
    /// `D₁ ∩ D₂` as an antipodal cycle of facets.
    Cycle {
        d: usize,
    },
    CsProduct {
        d: usize,
    },
    /// The named symmetries of the cs product.
    CsSymmetry {
        d: usize,
    },
    BalancedProduct {
        d: usize,
        intermediates: bool,
    },
    /// One inductive step from the `B(i-1,d)`, `B(i,d)` seed.
    Inductive {
        i: usize,
        d: usize,
    },
    /// One inductive step from the circle seed.
    InductiveCircle {
        d: usize,
    },
    /// Randomized self-test of the homology engine.
    Engine {
        samples: usize,
        seed: u64,
    },
}

impl Target {
    pub fn name(&self) -> &'static str {
        match self {
            Target::CrossPolytope { .. } => "cross-polytope",
            Target::BComplex { .. } => "b-complex",
            Target::Shelling { .. } => "shelling",
            Target::Cycle { .. } => "cycle",
            Target::CsProduct { .. } => "cs-product",
            Target::CsSymmetry { .. } => "cs-symmetry",
            Target::BalancedProduct { .. } => "balanced-product",
            Target::Inductive { .. } => "inductive",
            Target::InductiveCircle { .. } => "inductive-circle",
            Target::Engine { .. } => "engine",
        }
    }

    pub fn params(&self) -> BTreeMap<String, Value> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: Value| {
            m.insert(k.to_string(), v);
        };
        match *self {
            Target::CrossPolytope { d }
            | Target::Cycle { d }
            | Target::CsProduct { d }
            | Target::CsSymmetry { d }
            | Target::InductiveCircle { d } => put("d", d.into()),
            Target::BComplex { i, d } | Target::Shelling { d, i } | Target::Inductive { i, d } => {
                put("d", d.into());
                put("i", i.into());
            }
            Target::BalancedProduct { d, intermediates } => {
                put("d", d.into());
                put("intermediates", intermediates.into());
            }
            Target::Engine { samples, seed } => {
                put("samples", samples.into());
                put("seed", seed.into());
            }
        }
        m
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        for (k, v) in self.params() {
            if k != "intermediates" {
                write!(f, " {k}={v}")?;
            }
        }
        Ok(())
    }
}

/// All reports for one target.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub target: String,
    pub params: BTreeMap<String, Value>,
    pub passed: bool,
    pub reports: Vec<VerificationReport>,
    pub timings_ms: BTreeMap<String, f64>,
    #[serde(skip)]
    pub artifacts: Vec<ComplexDocument>,
}

impl Certificate {
    pub fn first_failure(&self) -> Option<&VerificationReport> {
        self.reports.iter().find(|r| !r.passed)
    }

    pub fn report(&self, check: &str) -> Option<&VerificationReport> {
        self.reports.iter().find(|r| r.check == check)
    }
}

/// Everything needed to replay and audit one CLI run.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub params: BTreeMap<String, Value>,
    pub inputs: BTreeMap<String, String>,
    pub outputs: BTreeMap<String, String>,
    pub certificates: Vec<Certificate>,
    pub passed: bool,
    pub wall_ms: f64,
}

struct Pipeline {
    reports: Vec<VerificationReport>,
    timings: BTreeMap<String, f64>,
    artifacts: Vec<ComplexDocument>,
}

fn elapsed_ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

impl Pipeline {
    fn new() -> Self {
        Pipeline {
            reports: Vec::new(),
            timings: BTreeMap::new(),
            artifacts: Vec::new(),
        }
    }

    fn absorb<T>(&mut self, name: &str, start: Instant, outcome: Result<T>) -> Result<Option<T>> {
        self.timings.insert(name.to_string(), elapsed_ms(start));
        match outcome {
            Ok(v) => Ok(Some(v)),
            Err(e) if e.is_resource_limit() => Err(e),
            Err(e) => {
                self.reports.push(VerificationReport::fail(name, e.to_string()));
                Ok(None)
            }
        }
    }

    /// Runs a construction step; a failure is recorded and yields `None`.
    fn build<T>(&mut self, name: &str, f: impl FnOnce() -> Result<T>) -> Result<Option<T>> {
        let start = Instant::now();
        let out = f();
        self.absorb(name, start, out)
    }

    fn check(&mut self, name: &str, f: impl FnOnce() -> Result<VerificationReport>) -> Result<()> {
        let start = Instant::now();
        let out = f();
        if let Some(report) = self.absorb(name, start, out)? {
            self.reports.push(report.named(name));
        }
        Ok(())
    }

    fn finish(self, target: &Target) -> Certificate {
        Certificate {
            target: target.name().to_string(),
            params: target.params(),
            passed: !self.reports.is_empty() && self.reports.iter().all(|r| r.passed),
            reports: self.reports,
            timings_ms: self.timings,
            artifacts: self.artifacts,
        }
    }

    /// Reduced homology against a target profile, then Euler consistency.
    fn homology(&mut self, name: &str, complex: &SimplicialComplex, expected: &BTreeMap<isize, u64>) -> Result<()> {
        let mut euler = None;
        self.check(name, || {
            let h = reduced_homology(complex)?;
            euler = Some(h.euler_characteristic());
            Ok(VerificationReport::from_outcome(
                name,
                (!h.matches(expected)).then(|| h.to_string().replace('\n', "; ")),
            )
            .metric("betti", h.nonzero_betti())
            .metric("expected", expected)
            .metric("torsion_free", h.is_torsion_free()))
        })?;
        if let Some(chi) = euler {
            let from_faces = reduced_euler_from_faces(complex);
            self.check(&format!("{name}-euler"), || Ok(count_check("", chi, from_faces)))?;
        }
        Ok(())
    }
}

fn count_check<T: PartialEq + fmt::Display + Serialize + Copy>(
    name: &str,
    actual: T,
    expected: T,
) -> VerificationReport {
    VerificationReport::from_outcome(
        name,
        (actual != expected).then(|| format!("found {actual}, expected {expected}")),
    )
    .metric("actual", actual)
    .metric("expected", expected)
}

fn iso_check(a: &SimplicialComplex, b: &SimplicialComplex) -> Result<VerificationReport> {
    Ok(match find_isomorphism(a, b, DEFAULT_BUDGET)? {
        Some(m) => VerificationReport::pass("").metric("map", m.mapping()),
        None => VerificationReport::fail("", "no isomorphism exists"),
    })
}

pub fn certify(target: &Target) -> Result<Certificate> {
    let mut p = Pipeline::new();
    match *target {
        Target::CrossPolytope { d } => cross_polytope(&mut p, d)?,
        Target::BComplex { i, d } => b_family(&mut p, i, d)?,
        Target::Shelling { d, i } => shelling(&mut p, d, i)?,
        Target::Cycle { d } => cycle(&mut p, d)?,
        Target::CsProduct { d } => cs_product(&mut p, d)?,
        Target::CsSymmetry { d } => cs_symmetry(&mut p, d)?,
        Target::BalancedProduct { d, intermediates } => balanced_product(&mut p, d, intermediates)?,
        Target::Inductive { i, d } => inductive(&mut p, i, d)?,
        Target::InductiveCircle { d } => inductive_circle(&mut p, d)?,
        Target::Engine { samples, seed } => engine(&mut p, samples, seed)?,
    }
    Ok(p.finish(target))
}

/// Builds the target's complexes without running any checks.
pub fn build(target: &Target) -> Result<Vec<ComplexDocument>> {
    let doc = ComplexDocument::new;
    Ok(match *target {
        Target::CrossPolytope { d } => {
            let cp = cross_polytope_boundary(d)?;
            vec![doc(format!("cross-polytope-{d}"), cp.complex)
                .with_coloring(cp.coloring)
                .with_involution(cp.antipode)]
        }
        Target::BComplex { i, d } => {
            vec![doc(format!("b-{i}-{d}"), b_complex(i, d)?).with_involution(antipode(d))]
        }
        Target::Shelling { d, i } => vec![doc(format!("gamma-belt-{i}-{d}"), gamma_union(i, d)?)],
        Target::Cycle { d } => vec![doc(format!("d1-cap-d2-{d}"), build_d1_d2(d)?.intersection)],
        Target::CsProduct { d } | Target::CsSymmetry { d } => {
            let cs = cs_sphere_product(d)?;
            vec![doc(format!("cs-product-{d}"), cs.complex).with_involution(cs.antipode)]
        }
        Target::BalancedProduct { d, intermediates } => {
            let s = build_sigma(d)?;
            let mut out = vec![doc(format!("sigma-{d}"), s.complex.clone()).with_coloring(s.coloring.clone())];
            if intermediates {
                for (name, c) in [
                    ("gamma", &s.gamma.complex),
                    ("delta1", &s.gamma.delta1),
                    ("delta2", &s.delta2),
                    ("tube", &s.tube),
                ] {
                    out.push(
                        doc(format!("{name}-{d}"), c.clone()).with_coloring(s.coloring.restricted_to(c.vertices())),
                    );
                }
            }
            out
        }
        Target::Inductive { i, d } => vec![doc(format!("inductive-{i}-{d}"), b_family_seed(i, d)?.run()?.d_next)],
        Target::InductiveCircle { d } => vec![doc(format!("inductive-circle-{d}"), circle_seed(d)?.run()?.d_next)],
        Target::Engine { .. } => return Err(Error::Unsupported("the engine self-test builds no complex".into())),
    })
}

/// Certifies independent targets in parallel, keeping the input order.
pub fn certify_many(targets: &[Target]) -> Vec<Result<Certificate>> {
    targets.par_iter().map(certify).collect()
}

/// The targets behind the acceptance criteria, for dimensions up to `max_d`.
///
/// Shelling and cycle targets are cheap and also run at `max_d + 1`.
pub fn acceptance_targets(max_d: usize) -> Vec<Target> {
    let mut t = Vec::new();
    for d in 5..=max_d {
        t.push(Target::CsProduct { d });
    }
    for d in 5..=max_d + 1 {
        for i in 1..=(d + 2) / 2 {
            t.push(Target::Shelling { d, i });
        }
        t.push(Target::Cycle { d });
    }
    for d in 3..=max_d {
        t.push(Target::BalancedProduct {
            d,
            intermediates: false,
        });
    }
    for d in (5..=max_d).filter(|d| d % 2 == 1) {
        t.push(Target::CsSymmetry { d });
    }
    for d in 4..=max_d.min(7) {
        for i in 1..d {
            t.push(Target::BComplex { i, d });
        }
    }
    for (i, d) in [(1, 4), (1, 5), (2, 5)] {
        if d < max_d {
            t.push(Target::Inductive { i, d });
        }
    }
    for d in 4..max_d.min(6) {
        t.push(Target::InductiveCircle { d });
    }
    t.push(Target::Engine { samples: 1000, seed: 0 });
    t
}

fn cross_polytope(p: &mut Pipeline, d: usize) -> Result<()> {
    let Some(cp) = p.build("construct", || cross_polytope_boundary(d))? else {
        return Ok(());
    };
    let f = cp.complex.f_vector();
    p.check("f-vector", || {
        let expected: Vec<u64> = (0..d as u32)
            .map(|i| (1u64 << (i + 1)) * binomial(d as u64, i as u64 + 1))
            .collect();
        let found = f.nonempty().to_vec();
        Ok(VerificationReport::from_outcome("", (found != expected).then(|| format!("{found:?}"))).metric("f", found))
    })?;
    p.check("balanced", || Ok(check_balanced(&cp.complex, Some(&cp.coloring))))?;
    p.check("cs", || Ok(check_cs(&cp.complex, &cp.antipode)))?;
    p.check("pseudomanifold", || Ok(check_closed_pseudomanifold(&cp.complex)))?;
    p.homology("homology", &cp.complex, &sphere_betti(d as isize - 1))?;
    p.artifacts.push(
        ComplexDocument::new(format!("cross-polytope-{d}"), cp.complex.clone())
            .with_coloring(cp.coloring.clone())
            .with_involution(cp.antipode.clone()),
    );
    Ok(())
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn b_family(p: &mut Pipeline, i: usize, d: usize) -> Result<()> {
    let Some(b) = p.build("construct", || b_complex(i, d))? else {
        return Ok(());
    };
    let full = cross_polytope_boundary(d)?.complex;
    p.check("skeleton", || Ok(skeleton_contained(&b, &full, i as isize)))?;
    p.check("cs", || Ok(check_cs(&b, &antipode(d))))?;
    if i + 2 <= d {
        p.check("complement-isomorphism", || {
            iso_check(&full.complement(&b)?, &b_complex(d - i - 2, d)?)
        })?;
    }
    p.homology("homology", &b, &sphere_betti(i as isize))?;
    if i + 2 <= d {
        let boundary = b.boundary()?;
        p.homology(
            "boundary-homology",
            &boundary,
            &sphere_product_betti(i as isize, (d - i - 2) as isize),
        )?;
    }
    p.artifacts.push(ComplexDocument::new(format!("b-{i}-{d}"), b));
    Ok(())
}

fn shelling(p: &mut Pipeline, d: usize, i: usize) -> Result<()> {
    let Some((union, order)) = p.build("construct", || Ok((gamma_union(i, d)?, lemma_shelling_order(i, d)?)))? else {
        return Ok(());
    };
    let mut cert = None;
    p.check("shelling", || {
        Ok(match verify_shelling(&union, &order) {
            Ok(c) => {
                let r: Vec<String> = c.restrictions.iter().map(|f| f.to_string()).collect();
                cert = Some(c);
                VerificationReport::pass("")
                    .metric("facets", order.len())
                    .metric("restrictions", r)
            }
            Err(e @ Error::NotShelling { .. }) => VerificationReport::fail("", e.to_string()),
            Err(e) => return Err(e),
        })
    })?;
    if let Some(c) = cert.filter(|_| i >= 2) {
        p.check("restriction-faces", || {
            let offset = 1 + (i - 1) * d;
            let bad = (1..=d).find_map(|k| {
                let want = Face::of([y(k), y(wrap(k + i - 1, d))]);
                let got = &c.restrictions[offset + k - 1];
                (*got != want).then(|| format!("τ_{i}^{k}: restriction {got}, expected {want}"))
            });
            Ok(VerificationReport::from_outcome("", bad))
        })?;
    }
    p.homology("ball-homology", &union, &BTreeMap::new())?;
    p.homology("boundary-homology", &union.boundary()?, &sphere_betti(d as isize - 2))?;
    p.artifacts
        .push(ComplexDocument::new(format!("gamma-belt-{i}-{d}"), union));
    Ok(())
}

fn cycle(p: &mut Pipeline, d: usize) -> Result<()> {
    let Some(balls) = p.build("construct", || build_d1_d2(d))? else {
        return Ok(());
    };
    let ring = &balls.intersection;
    p.check("cycle-antipodal", || {
        Ok(match verify_cycle_antipodal(ring, &antipode(d)) {
            Ok(c) => {
                count_check("", c.len(), 2 * d).metric("cycle", c.iter().map(|f| f.to_string()).collect::<Vec<_>>())
            }
            Err(e @ Error::CriterionFailed(_)) => VerificationReport::fail("", e.to_string()),
            Err(e) => return Err(e),
        })
    })?;
    p.check("isomorphic-to-b1", || iso_check(ring, &b_complex(1, d)?))?;
    p.artifacts
        .push(ComplexDocument::new(format!("d1-cap-d2-{d}"), ring.clone()));
    Ok(())
}

fn cs_product(p: &mut Pipeline, d: usize) -> Result<()> {
    let Some(cs) = p.build("construct", || cs_sphere_product(d))? else {
        return Ok(());
    };
    p.check("vertices", || {
        Ok(count_check("", cs.complex.vertices().len(), 2 * d + 2))
    })?;
    p.homology("homology", &cs.complex, &sphere_product_betti(2, d as isize - 3))?;
    p.check("cs", || Ok(check_cs(&cs.complex, &cs.antipode)))?;
    p.check("skeleton", || {
        Ok(skeleton_contained(
            &cs.complex,
            &cross_polytope_boundary(d + 1)?.complex,
            2,
        ))
    })?;
    p.check("pseudomanifold", || Ok(check_closed_pseudomanifold(&cs.complex)))?;
    p.check("vertex-links", || Ok(link_homology_survey(&cs.complex)))?;
    p.artifacts
        .push(ComplexDocument::new(format!("cs-product-{d}"), cs.complex.clone()).with_involution(cs.antipode.clone()));
    Ok(())
}

fn cs_symmetry(p: &mut Pipeline, d: usize) -> Result<()> {
    let Some(cs) = p.build("construct", || cs_sphere_product(d))? else {
        return Ok(());
    };
    let gens = cs_symmetry_generators(d);
    let odd = d % 2 == 1;
    for (name, g) in &gens {
        let is_aut = check_automorphism(&cs.complex, g);
        if odd || name == "antipode" {
            p.check(&format!("automorphism-{name}"), || Ok(is_aut))?;
        } else {
            // only the antipode is claimed for even d
            p.check(&format!("not-automorphism-{name}"), || {
                Ok(VerificationReport::from_outcome(
                    "",
                    is_aut.passed.then(|| format!("{name} preserves the facets")),
                ))
            })?;
        }
    }
    if odd {
        p.check("vertex-transitive", || {
            let perms: Vec<_> = gens.iter().map(|(_, g)| g.clone()).collect();
            let closure = group_closure(&perms, GROUP_CAP)?;
            let sizes: Vec<usize> = closure.orbits.iter().map(Vec::len).collect();
            let n = cs.complex.vertices().len();
            Ok(VerificationReport::from_outcome(
                "",
                (!closure.vertex_transitive).then(|| format!("order {}, orbit sizes {sizes:?}", closure.order)),
            )
            // an orbit of every vertex needs the vertex count to divide the order
            .metric("vertex_count_divides_order", closure.order % n == 0)
            .metric("order", closure.order)
            .metric("orbits", &closure.orbits))
        })?;
    }
    p.check("full-automorphism-group", || {
        let auts = automorphisms(&cs.complex, DEFAULT_BUDGET, GROUP_CAP)?;
        let sizes = orbit_sizes(&auts, cs.complex.vertices());
        Ok(VerificationReport::pass("")
            .metric("order", auts.len())
            .metric("orbit_sizes", &sizes)
            .metric("vertex_transitive", sizes.len() == 1)
            .with_note("computed, not a claim"))
    })?;
    Ok(())
}

fn balanced_product(p: &mut Pipeline, d: usize, intermediates: bool) -> Result<()> {
    let Some(s) = p.build("construct", || build_sigma(d))? else {
        return Ok(());
    };
    let f = s.complex.f_vector();
    let top = d as isize - 1;
    let d64 = d as u64;
    p.check("f0", || Ok(count_check("", f.get(0), 4 * d64)))?;
    p.check("f1", || Ok(count_check("", f.get(1), 4 * d64 * (2 * d64 - 3))))?;
    p.check("f-top", || {
        Ok(count_check("", f.get(top), (d64 + 2) * (1 << d) - 8 * d64))
    })?;
    let g = s.gamma.complex.f_vector();
    p.check("gamma-facets", || Ok(count_check("", g.get(top), d64 << d)))?;
    p.check("balanced", || Ok(check_balanced(&s.complex, Some(&s.coloring))))?;
    if d == 3 {
        p.check("two-octahedra", || {
            let parts = s.complex.connected_components();
            let oct = cross_polytope_boundary(3)?.complex;
            let mut bad = (parts.len() != 2).then(|| format!("{} components", parts.len()));
            for c in &parts {
                if bad.is_none() && find_isomorphism(c, &oct, DEFAULT_BUDGET)?.is_none() {
                    bad = Some(format!(
                        "component on {} vertices is not an octahedron",
                        c.vertices().len()
                    ));
                }
            }
            Ok(VerificationReport::from_outcome("", bad).metric("components", parts.len()))
        })?;
    } else {
        p.check("pseudomanifold", || Ok(check_closed_pseudomanifold(&s.complex)))?;
    }
    p.check("vertex-links", || Ok(link_homology_survey(&s.complex)))?;
    p.homology("homology", &s.complex, &sphere_product_betti(2, d as isize - 3))?;
    if d >= 4 {
        let gens = symmetry_generators(d);
        for (name, g) in &gens {
            p.check(&format!("automorphism-{name}"), || {
                Ok(check_automorphism(&s.complex, g))
            })?;
            p.check(&format!("non-edges-{name}"), || {
                Ok(check_preserves_non_edges(&s.complex, g))
            })?;
        }
        let (e, r) = (&gens[1].1, &gens[2].1);
        p.check("relation", || {
            let holds = e.compose(r).same_action(&r.inverse().compose(&e.inverse()));
            Ok(VerificationReport::from_outcome(
                "",
                (!holds).then(|| "E'R' differs from R'^-1 E'^-1".to_string()),
            ))
        })?;
        p.check("group-order", || {
            let perms: Vec<_> = gens.iter().map(|(_, g)| g.clone()).collect();
            let closure = group_closure(&perms, GROUP_CAP)?;
            Ok(count_check("", closure.order, 8 * d).metric("vertex_transitive", closure.vertex_transitive))
        })?;
        if d <= 5 {
            p.check("full-automorphism-group", || {
                let auts = automorphisms(&s.complex, DEFAULT_BUDGET, GROUP_CAP)?;
                Ok(VerificationReport::pass("")
                    .metric("order", auts.len())
                    .metric("orbit_sizes", orbit_sizes(&auts, s.complex.vertices()))
                    .with_note("computed, not a claim"))
            })?;
        }
        p.check("missing-edges", || {
            let ledger = missing_edge_ledger(&s);
            let bad =
                (!ledger.unexplained.is_empty() || !ledger.realized_deleted.is_empty()).then(|| format!("{ledger:?}"));
            Ok(VerificationReport::from_outcome("", bad).metric("ledger", &ledger))
        })?;
    }
    p.artifacts = build(&Target::BalancedProduct { d, intermediates })?;
    Ok(())
}

fn inductive(p: &mut Pipeline, i: usize, d: usize) -> Result<()> {
    let Some(out) = p.build("construct", || b_family_seed(i, d)?.run())? else {
        return Ok(());
    };
    let target = b_complex(i, d + 1)?;
    p.check("equals-b", || {
        Ok(VerificationReport::from_outcome(
            "",
            (out.d_next != target).then(|| "D_next differs from B(i,d+1) as labelled".to_string()),
        ))
    })?;
    p.check("isomorphic-to-b", || iso_check(&out.d_next, &target))?;
    p.artifacts
        .push(ComplexDocument::new(format!("inductive-{i}-{d}"), out.d_next));
    Ok(())
}

fn inductive_circle(p: &mut Pipeline, d: usize) -> Result<()> {
    let Some(out) = p.build("construct", || circle_seed(d)?.run())? else {
        return Ok(());
    };
    p.homology("homology", &out.d_next, &sphere_betti(1))?;
    p.homology(
        "boundary-homology",
        &out.d_next.boundary()?,
        &sphere_product_betti(1, d as isize - 2),
    )?;
    p.artifacts
        .push(ComplexDocument::new(format!("inductive-circle-{d}"), out.d_next));
    Ok(())
}

/// A sparse matrix with entries in `[-5, 5]`, at most 40×40.
pub fn random_matrix(rng: &mut impl Rng) -> IntegerMatrix {
    let rows = rng.gen_range(1..=40);
    let cols = rng.gen_range(1..=40);
    let density = rng.gen_range(0.02..0.3);
    let dense: Vec<Vec<i64>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    if rng.gen_bool(density) {
                        rng.gen_range(-5..=5)
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    IntegerMatrix::from_dense(&dense)
}

/// A complex generated by a few random faces on at most 8 vertices.
pub fn random_complex(rng: &mut impl Rng) -> SimplicialComplex {
    let n = rng.gen_range(2..=8);
    let count = rng.gen_range(1..=10);
    let faces: Vec<Face> = (0..count)
        .map(|_| {
            let picked: Vec<VertexId> = (0..n)
                .filter(|_| rng.gen_bool(0.5))
                .map(|v| VertexId::new(format!("v{v}")))
                .collect();
            if picked.is_empty() {
                Face::of([VertexId::new("v0")])
            } else {
                Face::of(picked)
            }
        })
        .collect();
    SimplicialComplex::generated_by(faces)
}

fn engine(p: &mut Pipeline, samples: usize, seed: u64) -> Result<()> {
    p.check("smith-forms", || {
        let failure = (0..samples as u64).into_par_iter().find_map_first(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k));
            let m = random_matrix(&mut rng);
            let dec = smith_normal_form_with_transforms(&m);
            let sparse = smith_normal_form(&m);
            let problem = if let Err(e) = dec.verify(&m) {
                Some(e.to_string())
            } else if !dec.form.is_divisibility_chain() {
                Some("invariant factors do not divide each other".into())
            } else if sparse != dec.form {
                Some("sparse and dense forms disagree".into())
            } else if sparse.rank != m.bareiss_rank() {
                Some("rank differs from fraction-free elimination".into())
            } else {
                None
            };
            problem.map(|e| format!("sample {k} ({}x{}): {e}", m.rows(), m.cols()))
        });
        Ok(VerificationReport::from_outcome("", failure).metric("samples", samples))
    })?;
    p.check("cone-acyclic", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xC0DE);
        for k in 0..samples.min(200) {
            let c = random_complex(&mut rng);
            let h = reduced_homology(&c.cone(&VertexId::new("apex"))?)?;
            if !h.is_acyclic() {
                return Ok(VerificationReport::fail(
                    "",
                    format!("sample {k}: cone of {c:?} has {h}"),
                ));
            }
        }
        Ok(VerificationReport::pass(""))
    })?;
    p.check("euler", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xE1E);
        for k in 0..samples.min(200) {
            let c = random_complex(&mut rng);
            let h = reduced_homology(&c)?;
            if h.euler_characteristic() != reduced_euler_from_faces(&c) {
                return Ok(VerificationReport::fail("", format!("sample {k}: {c:?}")));
            }
        }
        Ok(VerificationReport::pass(""))
    })?;
    for n in 1..=7usize {
        let simplex = Face::of((0..=n).map(|v| VertexId::new(format!("v{v}"))));
        p.homology(
            &format!("simplex-boundary-{n}"),
            &SimplicialComplex::simplex(simplex).boundary()?,
            &sphere_betti(n as isize - 1),
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn passes(t: Target) -> Certificate {
        let c = certify(&t).unwrap();
        assert!(c.passed, "{t}: {:?}", c.first_failure());
        c
    }

    #[test]
    fn small_targets_pass() {
        passes(Target::CrossPolytope { d: 4 });
        passes(Target::BComplex { i: 2, d: 5 });
        passes(Target::Cycle { d: 5 });
        passes(Target::Inductive { i: 1, d: 4 });
        passes(Target::InductiveCircle { d: 4 });
    }

    #[test]
    fn shelling_reports_restrictions() {
        let c = passes(Target::Shelling { d: 6, i: 3 });
        let r = c.report("shelling").unwrap();
        let listed = r.metrics["restrictions"].as_array().unwrap();
        assert_eq!(listed.last().unwrap(), "{y2 y6}");
        assert!(c.report("restriction-faces").unwrap().passed);
    }

    #[test]
    fn failed_shelling_is_a_report_not_an_error() {
        let c = certify(&Target::Shelling { d: 6, i: 4 }).unwrap();
        assert!(!c.passed);
        assert!(c.report("shelling").unwrap().witness.is_some());
    }

    #[test]
    fn construction_errors_become_failures() {
        let c = certify(&Target::CsProduct { d: 3 }).unwrap();
        assert!(!c.passed);
        assert_eq!(c.reports[0].check, "construct");
    }

    #[test]
    fn balanced_four_symmetry() {
        let c = certify(&Target::BalancedProduct {
            d: 4,
            intermediates: true,
        })
        .unwrap();
        // R'^d = D, so the named generators only reach order 4d
        let failing: Vec<&str> = c
            .reports
            .iter()
            .filter(|r| !r.passed)
            .map(|r| r.check.as_str())
            .collect();
        assert_eq!(failing, ["group-order"]);
        assert_eq!(c.report("group-order").unwrap().metrics["actual"], 16);
        assert_eq!(c.report("full-automorphism-group").unwrap().metrics["order"], 32);
        assert_eq!(c.artifacts.len(), 5);
    }

    #[test]
    fn engine_small_run() {
        passes(Target::Engine { samples: 40, seed: 7 });
    }

    #[test]
    fn targets_display_and_params() {
        let t = Target::Shelling { d: 6, i: 3 };
        assert_eq!(t.to_string(), "shelling d=6 i=3");
        assert!(acceptance_targets(6).contains(&Target::CsProduct { d: 6 }));
    }
}
