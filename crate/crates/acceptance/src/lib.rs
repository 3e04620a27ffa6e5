//! Shared verdict formatting for the acceptance tests.

/// Print one verdict line and return whether the criterion held, so the
/// caller can assert after reporting.
pub fn verdict(id: &str, pass: bool, detail: &str) -> bool {
    println!(
        "criterion {id}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    pass
}
