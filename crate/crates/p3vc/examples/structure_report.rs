//! Scan a small graph for the local structures the search steps branch on:
//! tails, dominated pairs, satellites, chains, and pendant triangles.

use p3vc::Graph;

fn main() {
    // a cube with one subdivided edge (chain), a pendant path (tail), and
    // a triangle with a pendant vertex
    let edges = [
        // cube 0..8 with edge 0-1 replaced by 0-8, 8-1
        (0, 2),
        (0, 4),
        (1, 3),
        (1, 5),
        (2, 3),
        (2, 6),
        (3, 7),
        (4, 5),
        (4, 6),
        (5, 7),
        (6, 7),
        (0, 8),
        (8, 1),
        // pendant path 9-10 hanging off vertex 0
        (9, 10),
        (10, 0),
        // pendant triangle 11-12-13 with pendant 14 at 11
        (11, 12),
        (11, 13),
        (12, 13),
        (11, 14),
    ];
    let g = Graph::from_edges(15, &edges).unwrap();

    let profile = g.components_profile();
    println!("components: {} total", profile.comp_total);
    for (size, count) in profile.comp_by_size.iter().enumerate() {
        if *count > 0 {
            println!("  {count} of size {size}");
        }
    }

    let report = g.detect_structures();
    println!("\ntails (v, u, w):             {:?}", report.tails);
    println!("dominated pairs (v, u):      {:?}", report.dominated_pairs);
    println!("satellites (v, p, s):        {:?}", report.satellites);
    println!("chains (u0, u1, u2, u3):     {:?}", report.chains);
    println!("pendant triangles:           {:?}", report.triangle_pendants);

    println!("\nmaximal greedy 3-path packing:");
    for path in &g.maximal_p3_packing().paths {
        println!("  {:?}", path.vertices());
    }
}
