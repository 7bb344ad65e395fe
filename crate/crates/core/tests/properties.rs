//! Randomized invariants of the homology engine and complex operations.

use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

use sphereprod::homology::{
    homology, reduced_euler_from_faces, reduced_homology, smith_normal_form, smith_normal_form_with_transforms,
    IntegerMatrix,
};
use sphereprod::io::{ComplexDocument, Format};
use sphereprod::{Face, Permutation, SimplicialComplex, VertexId};

fn matrix(max: usize) -> impl Strategy<Value = IntegerMatrix> {
    (1..=max, 1..=max, 0.02f64..0.35).prop_flat_map(|(r, c, density)| {
        let entry = prop_oneof![
            ((1.0 - density) * 1000.0) as u32 => Just(0i64),
            (density * 1000.0).max(1.0) as u32 => -6i64..=6,
        ];
        prop::collection::vec(prop::collection::vec(entry, c), r).prop_map(|rows| IntegerMatrix::from_dense(&rows))
    })
}

fn label(v: usize) -> VertexId {
    VertexId::new(format!("v{v}"))
}

/// Complexes generated by up to 10 random faces on at most 8 vertices.
fn complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(1u16..256, 1..10).prop_map(|masks| {
        SimplicialComplex::generated_by(
            masks
                .into_iter()
                .map(|m| Face::of((0..8).filter(|b| m & (1 << b) != 0).map(label))),
        )
    })
}

fn permutation_of_eight() -> impl Strategy<Value = Permutation> {
    Just((0..8).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|image| Permutation::from_pairs((0..8).map(|v| (label(v), label(image[v])))).unwrap())
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn smith_form_is_certified(m in matrix(40)) {
        let dec = smith_normal_form_with_transforms(&m);
        prop_assert!(dec.verify(&m).is_ok(), "{:?}", dec.verify(&m));
        prop_assert!(dec.form.is_divisibility_chain());
        prop_assert_eq!(&smith_normal_form(&m), &dec.form);
        prop_assert_eq!(dec.form.rank, m.bareiss_rank());
        prop_assert_eq!(smith_normal_form(&m.transpose()), dec.form);
    }
}

proptest! {
    #![proptest_config(config(300))]

    #[test]
    fn determinant_is_product_of_factors(m in matrix(8).prop_filter("square", |m| m.rows() == m.cols())) {
        let form = smith_normal_form(&m);
        let det = m.determinant().abs();
        if form.rank < m.rows() {
            prop_assert_eq!(det, BigInt::from(0));
        } else {
            let product = form.invariant_factors.iter().fold(BigInt::from(1), |acc, d| acc * d);
            prop_assert_eq!(det, product);
        }
    }

    #[test]
    fn cones_are_acyclic(c in complex()) {
        let cone = c.cone(&VertexId::new("apex")).unwrap();
        prop_assert!(reduced_homology(&cone).unwrap().is_acyclic());
    }

    #[test]
    fn euler_characteristic_agrees(c in complex()) {
        let h = reduced_homology(&c).unwrap();
        prop_assert_eq!(h.euler_characteristic(), reduced_euler_from_faces(&c));
        let unreduced = homology(&c, false).unwrap();
        prop_assert_eq!(unreduced.euler_characteristic(), c.f_vector().euler_characteristic());
        prop_assert_eq!(unreduced.betti(0), c.connected_components().len() as u64);
    }

    #[test]
    fn relabelling_preserves_everything(c in complex(), p in permutation_of_eight()) {
        let image = p.apply_complex(&c);
        prop_assert_eq!(image.f_vector(), c.f_vector());
        prop_assert_eq!(reduced_homology(&image).unwrap(), reduced_homology(&c).unwrap());
        prop_assert_eq!(p.inverse().apply_complex(&image), c.clone());
        prop_assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn lattice_laws(a in complex(), b in complex()) {
        let union = a.union(&b);
        let meet = a.intersection(&b);
        for f in a.facets().iter().chain(b.facets()) {
            prop_assert!(union.contains_face(f));
        }
        for f in meet.facets() {
            prop_assert!(a.contains_face(f) && b.contains_face(f));
        }
        prop_assert_eq!(a.union(&a), a.clone());
        prop_assert_eq!(union, b.union(&a));
        // inclusion–exclusion on face counts
        prop_assert_eq!(
            a.union(&b).face_count() + a.intersection(&b).face_count(),
            a.face_count() + b.face_count()
        );
    }

    #[test]
    fn skeleton_truncates_the_f_vector(c in complex(), k in 0isize..4) {
        if k > c.dim() {
            prop_assert!(c.skeleton(k).is_err());
            return Ok(());
        }
        let s = c.skeleton(k).unwrap();
        let full = c.f_vector();
        for j in -1..=c.dim() {
            prop_assert_eq!(s.f_vector().get(j), if j <= k { full.get(j) } else { 0 });
        }
    }

    #[test]
    fn links_of_vertices_live_in_the_star(c in complex()) {
        for v in c.vertices() {
            let sigma = Face::of([v.clone()]);
            let link = c.link(&sigma).unwrap();
            let star = c.star(&sigma).unwrap();
            prop_assert!(!link.has_vertex(v));
            for f in link.facets() {
                prop_assert!(star.contains_face(&f.with_vertex(v.clone()).unwrap()));
            }
        }
    }

    #[test]
    fn encodings_round_trip(c in complex()) {
        let doc = ComplexDocument::new("random", c);
        for format in [Format::Plain, Format::Json] {
            let text = doc.render(format);
            let back = ComplexDocument::parse(&text, Format::sniff(&text)).unwrap();
            prop_assert_eq!(&back, &doc);
            prop_assert_eq!(back.render(format), text);
        }
    }
}
