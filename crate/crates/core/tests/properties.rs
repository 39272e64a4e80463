mod support;

fn run(suite: fn() -> support::Outcome) {
    let n = suite().unwrap_or_else(|e| panic!("{e}"));
    assert!(n >= 200 || std::env::var(support::CASES_ENV).is_ok());
}

#[test]
fn snf_and_hnf_transforms() {
    run(support::snf_hnf);
}

#[test]
fn det_equals_discriminant_order() {
    run(support::det_equals_disc_order);
}

#[test]
fn index_two_overlattices_match_isotropic_subgroups() {
    run(support::overlattice_round_trip);
}

#[test]
fn signature_is_a_congruence_invariant() {
    run(support::signature_congruence);
}

#[test]
fn quadratic_form_polarises_to_the_bilinear_form() {
    run(support::quadratic_polarisation);
}

#[test]
fn primitive_sublattices_have_opposite_complements() {
    run(support::primitive_complements);
}
