use su2_plane::algebra::verify_e_correction;

#[test]
fn e_correction_rendering_matches_the_stored_copy() {
    let rendered = verify_e_correction().unwrap().render();
    assert_eq!(rendered, include_str!("golden/e_correction.txt"));
}

#[test]
fn printed_identities_leave_non_empty_residuals_under_the_stated_rules() {
    let report = verify_e_correction().unwrap();
    let sizes: Vec<(&str, usize)> = report.printed_residuals().map(|r| (r.identity, r.residual.len())).collect();
    assert_eq!(sizes, [("commutator-with-e", 12), ("casimir-with-e", 17)]);
}
