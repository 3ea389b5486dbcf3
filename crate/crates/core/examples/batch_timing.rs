use gm_order::harness::{batch_verify, BatchOptions, ALL_THEOREMS};
use std::time::Instant;

fn main() {
    let trials: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(20);
    let opts = BatchOptions {
        trials,
        seed: 42,
        ..Default::default()
    };
    let t0 = Instant::now();
    let summary = batch_verify(&ALL_THEOREMS, &opts).unwrap();
    let dt = t0.elapsed();
    let mut all = true;
    for t in &summary.theorems {
        if t.confirmed != t.trials {
            all = false;
            println!(
                "{}: {}/{} confirmed ({} holds, {} rev, {} viol, {} inc, {} skip)",
                t.theorem,
                t.confirmed,
                t.trials,
                t.holds,
                t.holds_reversed,
                t.violated,
                t.inconclusive,
                t.skipped
            );
            for f in t.failures.iter().take(1) {
                println!("  first failure: {}", serde_json::to_string(&f).unwrap());
            }
        }
    }
    println!(
        "total {} trials x {} theorems in {:.2?} -> all confirmed: {}",
        trials,
        summary.theorems.len(),
        dt,
        all
    );
}
