use schubitope::{
    certify_lattice_vertices, hrep, key_polynomial, member, newton_exponents, rothe,
    schubert_polynomial, skyline, vertex_compositions, vertices, Composition, Diagram, DiagramJson,
    HRep, HRepJson, LatticePoint, Permutation, Polynomial, PolynomialJson, VertexSetJson,
};

fn comp(s: &str) -> Composition {
    s.parse().unwrap()
}

#[test]
fn skyline_pipeline() {
    for a in ["1,0,3", "2,0,1,1", "0,2,2", "3,1,0,2"] {
        let alpha = comp(a);
        let d = skyline(&alpha).unwrap();
        let vs = vertices(&d).unwrap();
        let expected: Vec<LatticePoint> = vertex_compositions(&alpha)
            .iter()
            .map(LatticePoint::from)
            .collect();
        assert_eq!(vs, expected, "{a}");

        let h = hrep(&d).unwrap();
        assert!(certify_lattice_vertices(&h, &vs).unwrap().passed(), "{a}");

        let key = key_polynomial(&alpha).unwrap();
        for e in newton_exponents(&key) {
            assert!(member(&h, &e.to_rational()).unwrap(), "{a}: {e}");
        }
    }
}

#[test]
fn json_documents_round_trip() {
    let d = rothe(&"315624".parse::<Permutation>().unwrap()).unwrap();
    let text = serde_json::to_string(&d.to_json()).unwrap();
    let back = Diagram::from_json(&serde_json::from_str::<DiagramJson>(&text).unwrap()).unwrap();
    assert_eq!(back, d);

    let h = hrep(&d).unwrap();
    let text = serde_json::to_string(&h.to_json()).unwrap();
    let back = HRep::from_json(&serde_json::from_str::<HRepJson>(&text).unwrap()).unwrap();
    assert_eq!(back, h);
    assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), text);

    let vs = VertexSetJson::new(vertices(&d).unwrap());
    let text = serde_json::to_string(&vs).unwrap();
    let back: VertexSetJson = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&back).unwrap(), text);

    let p = schubert_polynomial(&"315624".parse().unwrap()).unwrap();
    let text = serde_json::to_string(&p.to_json()).unwrap();
    let back =
        Polynomial::from_json(&serde_json::from_str::<PolynomialJson>(&text).unwrap()).unwrap();
    assert_eq!(back, p);
}
