use genus_core::verifier::{case_for_theorem, verify_theorem};

fn main() {
    let id = std::env::args().nth(1).unwrap_or_else(|| "T3.3".into());
    let case = case_for_theorem(&id).expect("known theorem id");
    let r = verify_theorem(&case);
    println!("case: {} ({})", r.case, r.theorem);
    println!("weight: {}", r.weight_used);
    println!("residual_zero: {}", r.residual_zero);
    for row in &r.identity_table {
        println!("  q^{}: coeff {} matched={}", row.q, row.display, row.matched);
    }
    println!("negative control failed as expected: {}", r.negative_control_failed_as_expected);
    println!("elapsed: {} ms", r.elapsed_ms);
    for n in &r.notes {
        println!("note: {n}");
    }
}
