//! Cross-check the search solver against the brute-force oracle on a batch
//! of random graphs: decisions for every budget, plus certificate validity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use p3vc::oracle::min_p3vc;
use p3vc::{solve, verify_cover, Graph};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut instances = 0u32;
    let mut decisions = 0u32;

    for n in 4..=11usize {
        for _ in 0..20 {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.3) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let (opt, witness) = min_p3vc(&g).unwrap();
            assert!(verify_cover(&g, &witness));
            for k in 0..=n {
                let res = solve(&g, k);
                assert_eq!(res.answer, opt <= k, "n = {n}, k = {k}, oracle = {opt}");
                if let Some(cover) = res.cover {
                    assert!(cover.len() <= k && verify_cover(&g, &cover));
                }
                decisions += 1;
            }
            instances += 1;
        }
    }
    println!("checked {decisions} decisions on {instances} random graphs: all agree");
}
