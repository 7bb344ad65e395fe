//! End-to-end checks of the two constructions through the public API.

use std::collections::BTreeMap;

use sphereprod::balanced::build_sigma;
use sphereprod::certify::{build, certify, Target};
use sphereprod::crosspoly::{b_complex, cross_polytope_boundary, cs_sphere_product};
use sphereprod::homology::{reduced_homology, sphere_product_betti};
use sphereprod::io::{ComplexDocument, Format};
use sphereprod::verify::{check_balanced, check_closed_pseudomanifold, check_cs, find_isomorphism, DEFAULT_BUDGET};
use sphereprod::Error;

#[test]
fn cs_product_is_a_symmetric_sphere_product() {
    for d in [5, 6] {
        let p = cs_sphere_product(d).unwrap();
        assert_eq!(p.complex.vertices().len(), 2 * d + 2);
        assert!(check_cs(&p.complex, &p.antipode).passed);
        assert!(check_closed_pseudomanifold(&p.complex).passed);
        let h = reduced_homology(&p.complex).unwrap();
        assert_eq!(h.nonzero_betti(), sphere_product_betti(2, d as isize - 3), "d = {d}");
        assert!(h.is_torsion_free());
    }
    assert!(matches!(cs_sphere_product(4), Err(Error::Precondition(_))));
}

#[test]
fn balanced_product_has_4d_vertices_and_d_colors() {
    for d in [4, 5] {
        let s = build_sigma(d).unwrap();
        assert_eq!(s.complex.vertices().len(), 4 * d);
        let report = check_balanced(&s.complex, Some(&s.coloring));
        assert!(report.passed, "{report}");
        assert_eq!(s.coloring.colors_used().len(), d);
        let h = reduced_homology(&s.complex).unwrap();
        assert_eq!(h.nonzero_betti(), sphere_product_betti(2, d as isize - 3));
    }
}

#[test]
fn b_complexes_grow_to_the_full_sphere() {
    let d = 5;
    let sphere = cross_polytope_boundary(d).unwrap().complex;
    let mut previous = 0;
    for i in 0..d {
        let b = b_complex(i, d).unwrap();
        let n = b.facets().len();
        assert!(n > previous);
        previous = n;
    }
    assert_eq!(previous, sphere.facets().len());
}

#[test]
fn built_documents_survive_both_encodings() {
    for target in [
        Target::CrossPolytope { d: 4 },
        Target::CsProduct { d: 5 },
        Target::BalancedProduct {
            d: 4,
            intermediates: true,
        },
    ] {
        for doc in build(&target).unwrap() {
            let json = ComplexDocument::parse_json(&doc.to_json()).unwrap();
            assert_eq!(json, doc, "{target}");
            let plain = ComplexDocument::parse_plain(&doc.to_plain()).unwrap();
            assert_eq!(plain.complex, doc.complex);
            assert_eq!(plain.digest(Format::Plain), doc.digest(Format::Plain));
        }
    }
}

#[test]
fn relabelled_copies_are_found_isomorphic() {
    let s = build_sigma(4).unwrap().complex;
    let renamed = s.relabel(|v| format!("r{v}").into()).unwrap();
    let map = find_isomorphism(&s, &renamed, DEFAULT_BUDGET)
        .unwrap()
        .expect("isomorphic");
    assert_eq!(map.apply_complex(&s).unwrap(), renamed);

    let cs = cs_sphere_product(5).unwrap().complex;
    assert!(find_isomorphism(&cs, &s, DEFAULT_BUDGET).unwrap().is_none());
}

#[test]
fn certificates_serialize_with_parameters() {
    let cert = certify(&Target::Shelling { d: 5, i: 3 }).unwrap();
    assert!(cert.passed);
    let value = serde_json::to_value(&cert).unwrap();
    let params: BTreeMap<String, serde_json::Value> = serde_json::from_value(value["params"].clone()).unwrap();
    assert_eq!(params["d"], 5);
    assert_eq!(params["i"], 3);
    assert!(value.get("artifacts").is_none());
}
