//! Exact reference solvers for small graphs. These are the ground truth the
//! search and kernelization modules are tested against, and they are also
//! reachable from the command line (`verify --oracle`).
//!
//! Both solvers do exhaustive 3-way branching over bitmask-encoded vertex
//! subsets with memoization, so they are exponential but exact; size caps
//! keep runtimes sane.

use crate::graph::{Graph, Packing, Path3, Vertex, VertexSet};
use std::collections::HashMap;
use thiserror::Error;

/// Largest instance `min_p3vc` accepts by default.
pub const MIN_COVER_CAP: usize = 20;
/// Largest instance `max_p3_packing` accepts.
pub const MAX_PACKING_CAP: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, oracle handles at most {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("{kind} of {n} vertices is invalid (minimum {min})")]
    InvalidLength { kind: &'static str, n: usize, min: usize },
}

/// Shape selector for `path_cycle_cover_size`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinearKind {
    Path,
    Cycle,
}

fn find_p3_mask(g: &Graph, mask: u64) -> Option<[Vertex; 3]> {
    for v in g.vertices() {
        if mask & (1 << v) == 0 {
            continue;
        }
        let mut picked = [0; 2];
        let mut cnt = 0;
        for &u in g.neighbors(v) {
            if mask & (1 << u) != 0 {
                picked[cnt] = u;
                cnt += 1;
                if cnt == 2 {
                    return Some([picked[0], v, picked[1]]);
                }
            }
        }
    }
    None
}

fn min_cover_mask(g: &Graph, mask: u64, memo: &mut HashMap<u64, usize>) -> usize {
    if let Some(&c) = memo.get(&mask) {
        return c;
    }
    // Some vertex of any remaining 3-path must join the cover: 3-way branch.
    let best = match find_p3_mask(g, mask) {
        None => 0,
        Some(p) => {
            1 + p.iter().map(|&x| min_cover_mask(g, mask & !(1 << x), memo)).min().unwrap()
        }
    };
    memo.insert(mask, best);
    best
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

/// Exact minimum 3-path vertex cover with a witness, for graphs with at
/// most `limit` vertices. The witness is one optimal cover; when several
/// exist, which one comes back is not part of the contract — only its size
/// and validity are.
pub fn min_p3vc_with_limit(g: &Graph, limit: usize) -> Result<(usize, VertexSet), OracleError> {
    let n = g.n();
    if n > limit.min(64) {
        return Err(OracleError::TooLarge { n, cap: limit.min(64) });
    }
    let mut memo = HashMap::new();
    let size = min_cover_mask(g, full_mask(n), &mut memo);
    // Reconstruct a witness by walking the memo table downward.
    let mut cover = VertexSet::new();
    let mut mask = full_mask(n);
    while let Some(p) = find_p3_mask(g, mask) {
        let cur = min_cover_mask(g, mask, &mut memo);
        let x = p
            .iter()
            .copied()
            .find(|&x| min_cover_mask(g, mask & !(1 << x), &mut memo) == cur - 1)
            .expect("some branch of an optimal node is optimal");
        cover.insert(x);
        mask &= !(1 << x);
    }
    debug_assert_eq!(cover.len(), size);
    Ok((size, cover))
}

/// `min_p3vc_with_limit` with the default cap.
pub fn min_p3vc(g: &Graph) -> Result<(usize, VertexSet), OracleError> {
    min_p3vc_with_limit(g, MIN_COVER_CAP)
}

fn max_packing_mask(g: &Graph, mask: u64, memo: &mut HashMap<u64, usize>) -> usize {
    let v = match g.vertices().find(|&v| mask & (1 << v) != 0) {
        None => return 0,
        Some(v) => v,
    };
    if let Some(&c) = memo.get(&mask) {
        return c;
    }
    // Either the lowest remaining vertex is unused, or it is in some 3-path:
    // as the middle of two remaining neighbors, or as an end through one.
    let mut best = max_packing_mask(g, mask & !(1 << v), memo);
    let nbrs: Vec<Vertex> =
        g.neighbors(v).iter().copied().filter(|&u| mask & (1 << u) != 0).collect();
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            let sub = mask & !(1 << v) & !(1 << a) & !(1 << b);
            best = best.max(1 + max_packing_mask(g, sub, memo));
        }
    }
    for &u in &nbrs {
        for &w in g.neighbors(u) {
            if w != v && mask & (1 << w) != 0 {
                let sub = mask & !(1 << v) & !(1 << u) & !(1 << w);
                best = best.max(1 + max_packing_mask(g, sub, memo));
            }
        }
    }
    memo.insert(mask, best);
    best
}

/// Exact maximum 3-path packing with a witness.
pub fn max_p3_packing(g: &Graph) -> Result<(usize, Packing), OracleError> {
    let n = g.n();
    if n > MAX_PACKING_CAP {
        return Err(OracleError::TooLarge { n, cap: MAX_PACKING_CAP });
    }
    let mut memo = HashMap::new();
    let size = max_packing_mask(g, full_mask(n), &mut memo);
    // Witness reconstruction mirrors the recursion.
    let mut paths = Vec::new();
    let mut mask = full_mask(n);
    'outer: while paths.len() < size {
        let cur = max_packing_mask(g, mask, &mut memo);
        let v = g.vertices().find(|&v| mask & (1 << v) != 0).unwrap();
        if max_packing_mask(g, mask & !(1 << v), &mut memo) == cur {
            mask &= !(1 << v);
            continue;
        }
        let nbrs: Vec<Vertex> =
            g.neighbors(v).iter().copied().filter(|&u| mask & (1 << u) != 0).collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                let sub = mask & !(1 << v) & !(1 << a) & !(1 << b);
                if 1 + max_packing_mask(g, sub, &mut memo) == cur {
                    paths.push(Path3::new(a, v, b));
                    mask = sub;
                    continue 'outer;
                }
            }
        }
        for &u in &nbrs {
            for &w in g.neighbors(u) {
                if w != v && mask & (1 << w) != 0 {
                    let sub = mask & !(1 << v) & !(1 << u) & !(1 << w);
                    if 1 + max_packing_mask(g, sub, &mut memo) == cur {
                        paths.push(Path3::new(v, u, w));
                        mask = sub;
                        continue 'outer;
                    }
                }
            }
        }
        unreachable!("an optimal branch must exist when skipping is suboptimal");
    }
    let packing = Packing { paths };
    debug_assert!(packing.is_valid(g));
    Ok((size, packing))
}

/// Closed-form minimum cover size of a path or cycle on `n` vertices,
/// together with a witness given as 0-indexed positions along the
/// path/cycle order: floor(n/3) at positions 2, 5, 8, ... for paths,
/// ceil(n/3) at positions 0, 3, 6, ... for cycles. Deleting the witness
/// leaves runs of at most two consecutive vertices.
pub fn path_cycle_cover_size(
    kind: LinearKind,
    n: usize,
) -> Result<(usize, Vec<usize>), OracleError> {
    match kind {
        LinearKind::Path => {
            if n < 1 {
                return Err(OracleError::InvalidLength { kind: "path", n, min: 1 });
            }
            let size = n / 3;
            Ok((size, (0..size).map(|i| 3 * i + 2).collect()))
        }
        LinearKind::Cycle => {
            if n < 3 {
                return Err(OracleError::InvalidLength { kind: "cycle", n, min: 3 });
            }
            let size = n.div_ceil(3);
            Ok((size, (0..size).map(|i| 3 * i).collect()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn path(n: usize) -> Graph {
        g(n, &(0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    fn cycle(n: usize) -> Graph {
        let mut e: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        e.push((n - 1, 0));
        g(n, &e)
    }

    fn is_cover(h: &Graph, cover: &VertexSet) -> bool {
        h.vertices()
            .filter(|v| !cover.contains(v))
            .all(|v| h.neighbors(v).iter().filter(|u| !cover.contains(u)).count() <= 1)
    }

    /// Independent route: smallest subset over all 2^n masks.
    fn min_cover_subsets(h: &Graph) -> usize {
        let n = h.n();
        (0u64..1 << n)
            .filter(|m| {
                let c: VertexSet = (0..n).filter(|v| m & (1 << v) != 0).collect();
                is_cover(h, &c)
            })
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn empty_and_edge() {
        let (s, c) = min_p3vc(&Graph::new(0)).unwrap();
        assert_eq!((s, c.len()), (0, 0));
        let (s, _) = min_p3vc(&g(2, &[(0, 1)])).unwrap();
        assert_eq!(s, 0);
    }

    #[test]
    fn k4_needs_two() {
        let k4 = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let (s, c) = min_p3vc(&k4).unwrap();
        assert_eq!(s, 2);
        assert!(is_cover(&k4, &c));
    }

    #[test]
    fn k23_needs_two() {
        // sides {0,1} (degree 3) and {2,3,4} (degree 2)
        let k23 = g(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        let (s, c) = min_p3vc(&k23).unwrap();
        assert_eq!(s, 2);
        assert!(is_cover(&k23, &c));
    }

    #[test]
    fn oracle_matches_subset_enumeration() {
        let mut rng = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            rng
        };
        for n in 1..=9usize {
            for _ in 0..12 {
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in (u + 1)..n {
                        if next() % 100 < 35 {
                            edges.push((u, v));
                        }
                    }
                }
                let h = g(n, &edges);
                let (s, c) = min_p3vc(&h).unwrap();
                assert!(is_cover(&h, &c));
                assert_eq!(c.len(), s);
                assert_eq!(s, min_cover_subsets(&h), "graph: {:?}", h.edges());
            }
        }
    }

    #[test]
    fn refuses_large_instances() {
        let big = Graph::new(MIN_COVER_CAP + 1);
        assert!(matches!(min_p3vc(&big), Err(OracleError::TooLarge { .. })));
        assert!(matches!(
            max_p3_packing(&Graph::new(MAX_PACKING_CAP + 1)),
            Err(OracleError::TooLarge { .. })
        ));
    }

    #[test]
    fn packing_small_cases() {
        assert_eq!(max_p3_packing(&path(3)).unwrap().0, 1);
        assert_eq!(max_p3_packing(&path(5)).unwrap().0, 1);
        assert_eq!(max_p3_packing(&path(6)).unwrap().0, 2);
        // two disjoint 3-paths
        let two = g(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]);
        let (s, p) = max_p3_packing(&two).unwrap();
        assert_eq!(s, 2);
        assert!(p.is_valid(&two));
        let k4 = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(max_p3_packing(&k4).unwrap().0, 1);
    }

    #[test]
    fn packing_witness_take_skip_cross_check() {
        // independent route: take/skip recursion over the explicit 3-path list
        fn all_p3s(h: &Graph) -> Vec<[usize; 3]> {
            let mut out = Vec::new();
            for v in h.vertices() {
                let nb = h.neighbors(v);
                for i in 0..nb.len() {
                    for j in (i + 1)..nb.len() {
                        out.push([nb[i], v, nb[j]]);
                    }
                }
            }
            out
        }
        fn best(list: &[[usize; 3]], i: usize, used: u64) -> usize {
            if i == list.len() {
                return 0;
            }
            let skip = best(list, i + 1, used);
            let p = list[i];
            if p.iter().all(|&x| used & (1 << x) == 0) {
                let m = used | p.iter().map(|&x| 1u64 << x).sum::<u64>();
                skip.max(1 + best(list, i + 1, m))
            } else {
                skip
            }
        }
        let mut rng = 0xabcdef12345u64;
        let mut next = move || {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            rng
        };
        for n in 3..=7usize {
            for _ in 0..10 {
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in (u + 1)..n {
                        if next() % 100 < 40 {
                            edges.push((u, v));
                        }
                    }
                }
                let h = g(n, &edges);
                let (s, p) = max_p3_packing(&h).unwrap();
                assert!(p.is_valid(&h));
                assert_eq!(p.len(), s);
                assert_eq!(s, best(&all_p3s(&h), 0, 0));
            }
        }
    }

    #[test]
    fn packing_at_most_cover() {
        let mut rng = 0x5555u64;
        let mut next = move || {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            rng
        };
        for n in 1..=10usize {
            for _ in 0..8 {
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in (u + 1)..n {
                        if next() % 100 < 30 {
                            edges.push((u, v));
                        }
                    }
                }
                let h = g(n, &edges);
                // each disjoint 3-path needs its own cover vertex
                assert!(max_p3_packing(&h).unwrap().0 <= min_p3vc(&h).unwrap().0);
            }
        }
    }

    #[test]
    fn linear_formulas_match_oracle() {
        for n in 1..=12usize {
            let (s, w) = path_cycle_cover_size(LinearKind::Path, n).unwrap();
            assert_eq!(s, n / 3);
            assert_eq!(s, min_p3vc(&path(n)).unwrap().0, "path n={n}");
            let cover: VertexSet = w.into_iter().collect();
            assert!(is_cover(&path(n), &cover));
            if n >= 3 {
                let (s, w) = path_cycle_cover_size(LinearKind::Cycle, n).unwrap();
                assert_eq!(s, n.div_ceil(3));
                assert_eq!(s, min_p3vc(&cycle(n)).unwrap().0, "cycle n={n}");
                let cover: VertexSet = w.into_iter().collect();
                assert!(is_cover(&cycle(n), &cover));
            }
        }
        assert!(path_cycle_cover_size(LinearKind::Cycle, 2).is_err());
        assert!(path_cycle_cover_size(LinearKind::Path, 0).is_err());
    }

    #[test]
    fn path_cover_increases_every_three_steps() {
        let mut prev = 0;
        for n in 1..=30 {
            let (s, _) = path_cycle_cover_size(LinearKind::Path, n).unwrap();
            assert!(s >= prev);
            assert_eq!(s, n / 3);
            prev = s;
        }
    }
}
