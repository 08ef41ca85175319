//! Run both kernelization modes on a sparse random graph and compare the
//! kernel sizes against their guarantees (12k simple, 5k crucial).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use p3vc::{kernelize, Graph, KernelMode, KernelOutcome};

fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn main() {
    let g = gnp(60, 0.06, 11);
    println!("instance: n = {}, m = {}", g.n(), g.m());

    for k in [8usize, 14, 20] {
        println!("\nbudget k = {k}");
        for mode in [KernelMode::Simple, KernelMode::Crucial] {
            let r = kernelize(&g, k, mode);
            print!("  {mode:?}: ");
            match &r.outcome {
                KernelOutcome::HaltNo => println!("decided no"),
                KernelOutcome::Reduced { graph, k: k2 } => {
                    println!(
                        "kernel n = {} (<= {}·{} = {}), k' = {k2}, forced {:?}",
                        graph.n(),
                        r.size_bound_claim,
                        k2,
                        r.size_bound_claim * k2,
                        r.forced_cover
                    );
                    assert!(graph.n() <= r.size_bound_claim * k2);
                }
            }
            for line in &r.trace {
                println!("      {line}");
            }
            if let Some(audit) = &r.audit {
                println!(
                    "      audit: {} inequalities, all hold = {}",
                    audit.entries.len(),
                    audit.ok
                );
            }
        }
    }
}
