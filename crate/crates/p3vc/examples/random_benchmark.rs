//! Sweep the budget on a handful of random instances and relate search-tree
//! size to the theoretical 1.7485^k growth.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use p3vc::recurrence::WORST_CASE_FACTOR;
use p3vc::{solve, Graph};

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
    println!("seed  n   k  answer  nodes      nodes/1.7485^k");
    for seed in 0..3u64 {
        let n = 40;
        let g = gnp(n, 3.0 / n as f64, seed);
        for k in (4..=14).step_by(2) {
            let res = solve(&g, k);
            let bound = WORST_CASE_FACTOR.powi(k as i32);
            println!(
                "{seed:4} {n:3} {k:3}  {:6}  {:9}  {:.6}",
                if res.answer { "yes" } else { "no" },
                res.stats.nodes_total,
                res.stats.nodes_total as f64 / bound
            );
            if res.answer {
                break; // larger budgets only get easier
            }
        }
    }
}
