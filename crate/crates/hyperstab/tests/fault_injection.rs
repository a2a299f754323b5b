//! Kept in its own binary: the fault switch is process-wide and would corrupt
//! concurrently running tests.

use hyperstab::ffcurves::*;

#[test]
fn fault_injection_breaks_dual_method() {
    let ctx = FqContext::new(3).unwrap();
    inject_reciprocity_fault(true);
    let bad = enumerate_squarefree(&ctx, 3)
        .unwrap()
        .filter(|d| lfunction_charsum(&ctx, d).unwrap() != frobenius_data(&ctx, d).unwrap().lfunction())
        .count();
    inject_reciprocity_fault(false);
    assert!(bad > 0);
}
