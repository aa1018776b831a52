use nilgcs::catalog::{catalog, find};
use nilgcs::gcs::GcsDoc;
use nilgcs::semiabelian::search_semi_abelian;
use nilgcs::verify::verify_paper;
use nilgcs::{parse_salamon, DgaPresentation, Error};

#[test]
fn documents_round_trip_through_json() {
    for e in catalog() {
        let alg = e.algebra().unwrap();
        for s in &e.structures {
            let text = s.doc.to_json();
            let back = GcsDoc::from_json(&text).unwrap();
            let a = s.build(&alg).unwrap();
            let b = back.build(None).unwrap();
            assert_eq!(a.matrix(), b.matrix(), "{} {}", e.name, s.label);
        }
    }
}

#[test]
fn numeric_matrix_entries_are_accepted() {
    let doc = r#"{"algebra": "0,0,0,0", "J": [[0,-1,0,0],[1,0,0,0],[0,0,0,-1],[0,0,1,0]],
                  "B": [[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]], "Pi": [[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}"#;
    let gcs = GcsDoc::from_json(doc).unwrap().build(None).unwrap();
    assert!(gcs.is_integrable());
    assert_eq!(gcs.gcs_type(), 2);
}

#[test]
fn malformed_inputs_are_errors() {
    assert!(matches!(parse_salamon("0,0,1"), Err(Error::Parse { .. }) | Err(Error::Input(_))));
    assert!(parse_salamon("0,0,12,13,").is_err());
    assert!(GcsDoc::from_json("{").is_err());
    let singular = r#"{"algebra": "0,0", "symplectic": "0"}"#;
    assert!(GcsDoc::from_json(singular).unwrap().build(None).is_err());
}

#[test]
fn catalog_lookup_by_name_and_tuple() {
    assert_eq!(find("kodaira-thurston").unwrap().salamon, "0,0,0,12");
    assert_eq!(find("(0,0,12,13)").unwrap().name, "filiform-4");
    assert!(find("nothing-here").is_none());
}

#[test]
fn verdict_documents_serialize() {
    let e = find("filiform-4").unwrap();
    let alg = e.algebra().unwrap();
    let gcs = e.structures[0].build(&alg).unwrap();
    let doc = search_semi_abelian(&gcs, None).unwrap().to_doc();
    let v = serde_json::to_value(&doc).unwrap();
    assert_eq!(v["status"], "IMPOSSIBLE");
    assert!(v["certificate"].is_object());

    let e = find("kodaira-thurston").unwrap();
    let gcs = e.structures[0].build(&e.algebra().unwrap()).unwrap();
    let v = serde_json::to_value(search_semi_abelian(&gcs, None).unwrap().to_doc()).unwrap();
    assert_eq!(v["status"], "SEMI_ABELIAN");
    assert!(v["pair"].is_object());
}

#[test]
fn dga_cohomology_of_the_kodaira_structure() {
    let e = find("kodaira-thurston").unwrap();
    let gcs = e.structures[0].build(&e.algebra().unwrap()).unwrap();
    let dga = DgaPresentation::new(&gcs);
    let betti = dga.betti_numbers().unwrap();
    assert_eq!(betti.first(), Some(&1));
    assert_eq!(betti.iter().sum::<usize>() % 2, 0);
    let report = dga.cohomology_report(1).unwrap();
    assert_eq!(report.dim, betti[1]);
}

#[test]
fn full_report_passes() {
    let report = verify_paper();
    assert!(report.all_passed(), "{}", report.to_text());
    let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), report.checks.len());
}
