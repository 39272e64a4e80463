use std::sync::OnceLock;

use evenlat::curveconfig::TierPolicy;
use evenlat::paperverify::{PaperData, Status, VerificationReport, Verifier};
use serde_json::json;

fn report() -> &'static VerificationReport {
    static R: OnceLock<VerificationReport> = OnceLock::new();
    R.get_or_init(|| {
        Verifier::new(TierPolicy::Auto)
            .run(&PaperData::default(), None)
            .unwrap()
    })
}

#[test]
fn pairing_table_is_exact() {
    let e = report().entry("lemma_4_2").unwrap();
    assert_eq!(e.status, Status::Pass);
    assert_eq!(e.witnesses["pairings"][2][3], json!("-5/4"));
    assert_eq!(e.witnesses["pairings"][0][0], json!(-5));
    assert_eq!(e.witnesses["isotropic"].as_array().unwrap().len(), 7);
}

#[test]
fn double_w1_is_already_an_even_four() {
    let e = report().entry("thm_4_3").unwrap();
    let certs = e.witnesses["certificates"].as_array().unwrap();
    let c = certs
        .iter()
        .find(|c| c["class"] == json!([0, 0, 2, 0]))
        .unwrap();
    assert_eq!(c["certificate"]["steps"], json!([]));
    assert_eq!(
        c["certificate"]["four"],
        json!(["R17", "R18", "R19", "R20"])
    );
}

#[test]
fn quotient_chain() {
    let e = report().entry("section_6").unwrap();
    assert_eq!(e.status, Status::Pass);
    assert_eq!(e.witnesses["isotropic_count"], json!(31));
    assert_eq!(e.witnesses["det"], json!("-256"));
    assert_eq!(
        e.witnesses["worked_chain"]["four"],
        json!(["N1", "N4", "N5", "N7"])
    );
    assert_eq!(e.witnesses["even_eight_has_no_certificate"], json!(true));
    assert_eq!(e.witnesses["even_eight_in_lattice"], json!(true));
    let inv = e.witnesses["inverse_snf"].as_array().unwrap();
    assert_eq!(inv[14..], [json!("1/4"), json!("1/4")]);
}

#[test]
fn transcendental_candidates() {
    let e = report().entry("prop_4_4").unwrap();
    assert_eq!(e.status, Status::Pass);
    assert_eq!(e.witnesses["signature"], json!([2, 4]));
    assert_eq!(e.witnesses["block_form"][0][1], json!("1/2"));
    let u = report().entry("tx_prime_uniqueness").unwrap();
    assert_eq!(u.status, Status::ReportOnly);
    assert_eq!(u.witnesses["rank_criterion"], json!(false));
}

#[test]
fn report_round_trips_and_renders() {
    let r = report();
    assert_eq!(r.schema, 1);
    assert!(!r.has_failures());
    let back: VerificationReport = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(&back, r);
    let md = r.to_markdown();
    assert!(md.contains("Reconstruction tier: 3"));
    assert!(md.contains("| section_6 | pass |"));
}

#[test]
fn perturbed_pairing_fails_with_coordinates() {
    let mut p = PaperData::default();
    p.q_pairings[2][3] = evenlat::exactlinalg::rat(-3, 4);
    let r = Verifier::new(TierPolicy::Auto)
        .run(&p, Some(&["lemma_4_2"]))
        .unwrap();
    let m = r.entries[0].mismatch.clone().unwrap();
    assert_eq!((m.key.as_str(), m.coords), ("pairings", vec![3, 4]));
}

#[test]
fn every_printed_gram_entry_is_load_bearing() {
    let v = Verifier::new(TierPolicy::Auto);
    for i in 0..6 {
        for j in 0..6 {
            let mut p = PaperData::default();
            p.q_gram[i][j] += 1;
            let r = v.run(&p, Some(&["lemma_3_1"])).unwrap();
            assert_eq!(r.entries[0].status, Status::Fail, "({i},{j})");
        }
    }
}
