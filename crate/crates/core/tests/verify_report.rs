use monopole_cs::verify::{all_pass, failing, run_verification, VerifyOptions};

#[test]
fn default_ranges_pass() {
    let records = run_verification(&VerifyOptions::default()).unwrap();
    for r in &records {
        println!(
            "{:32} {:>12.3e} <= {:<10.1e} {}",
            r.id,
            r.residual,
            r.tolerance,
            if r.pass { "ok" } else { "FAIL" }
        );
    }
    assert!(all_pass(&records), "{:?}", failing(&records));
}

#[test]
fn perturbation_breaks_overlap_and_identity() {
    let records = run_verification(&VerifyOptions { perturb: 1e-6 }).unwrap();
    let ids: Vec<&str> = failing(&records).iter().map(|r| r.id.as_str()).collect();
    assert!(ids.contains(&"overlap_addition_formula"), "{ids:?}");
    assert!(ids.contains(&"resolution_of_identity"), "{ids:?}");
}
