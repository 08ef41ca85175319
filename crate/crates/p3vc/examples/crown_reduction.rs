//! Walk one crown reduction by hand: take the residue of a maximal packing,
//! check the component-surplus condition, extract (I, C, R), and verify the
//! accounting against the brute-force oracle.

use p3vc::kernel::decomposition::{
    find_good_decomposition, reduce_by_decomposition, ASideView, DecompMode,
};
use p3vc::oracle::min_p3vc;
use p3vc::{Graph, VertexSet};

fn main() {
    // a 3-path 0-1-2 where vertex 0 also carries six pendant leaves: the
    // packing absorbs one leaf, the rest outnumber their attachment points
    let edges = [
        (0, 1),
        (1, 2),
        (0, 3),
        (0, 4),
        (0, 5),
        (0, 6),
        (0, 7),
        (0, 8),
    ];
    let g = Graph::from_edges(9, &edges).unwrap();

    let packing = g.maximal_p3_packing();
    println!("maximal packing:");
    for p in &packing.paths {
        println!("  {:?}", p.vertices());
    }

    let used = packing.vertex_set();
    let a: VertexSet = g.vertices().filter(|v| !used.contains(v)).collect();
    let asv = ASideView::build(&g, &a);
    println!("\nresidue A = {:?}", asv.a);
    println!("components of G[A]: {:?}", asv.comps);
    println!("N(A) = {:?}, N2'(A) = {:?}", asv.n_of_a, asv.n2_prime);
    println!(
        "surplus: {} components vs 2·|N(A)| - |N2'(A)| = {} -> crown exists: {}",
        asv.comps.len(),
        2 * asv.n_of_a.len() - asv.n2_prime.len(),
        asv.lemma_condition()
    );

    let d = find_good_decomposition(&g, &asv, DecompMode::General)
        .expect("the surplus guarantees a crown");
    println!("\ncrown: I = {:?}", d.i);
    println!("       C = {:?}", d.c);
    println!("       R = {:?}", d.r);
    println!("witness paths (one per C-vertex):");
    for p in &d.witness.paths {
        println!("  {:?}", p.vertices());
    }

    let (rest, _, forced, _) = reduce_by_decomposition(&g, 0, &d);
    let whole = min_p3vc(&g).unwrap().0;
    let remainder = min_p3vc(&rest).unwrap().0;
    println!(
        "\noracle check: opt(G) = {whole} = opt(G - I - C) + |C| = {remainder} + {}",
        forced.len()
    );
    assert_eq!(whole, remainder + forced.len());
}
