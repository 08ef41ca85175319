//! Decide 3-path vertex cover on the Petersen graph for increasing budgets
//! and print the first certificate found.

use p3vc::{solve, verify_cover, Graph};

fn main() {
    let edges = [
        // outer 5-cycle, inner pentagram, spokes
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 0),
        (5, 7),
        (7, 9),
        (9, 6),
        (6, 8),
        (8, 5),
        (0, 5),
        (1, 6),
        (2, 7),
        (3, 8),
        (4, 9),
    ];
    let g = Graph::from_edges(10, &edges).unwrap();
    println!("Petersen graph: n = {}, m = {}", g.n(), g.m());

    for k in 0..=6 {
        let res = solve(&g, k);
        println!(
            "k = {k}: {:3}  ({} search nodes, depth {})",
            if res.answer { "yes" } else { "no" },
            res.stats.nodes_total,
            res.stats.max_depth
        );
        if let Some(cover) = res.cover {
            assert!(verify_cover(&g, &cover));
            let listed: Vec<usize> = cover.iter().copied().collect();
            println!("      certificate {listed:?} (verified)");
            println!("\nrule expansions at k = {k}:");
            for (rule, count) in &res.stats.nodes_per_rule {
                println!("  {rule:18} {count}");
            }
            break;
        }
    }
}
