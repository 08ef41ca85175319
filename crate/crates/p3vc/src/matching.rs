//! Maximum bipartite matching (Hopcroft–Karp).
//!
//! Written in-tree rather than pulled in as a dependency because the crown
//! extraction in the kernelizer walks the final BFS/DFS alternating
//! structure, so it needs the matching arrays themselves, not just the size.

/// Matching between `left` (indices into `left_adj`) and `right`
/// (0..n_right). `left_match[l]` is l's partner, if any.
#[derive(Clone, Debug)]
pub struct BipartiteMatching {
    pub left_match: Vec<Option<usize>>,
    pub right_match: Vec<Option<usize>>,
    pub size: usize,
}

const INF: u32 = u32::MAX;

/// Maximum matching in the bipartite graph where left vertex `l` is
/// adjacent to the right vertices `left_adj[l]`. O(E sqrt(V)).
pub fn hopcroft_karp(left_adj: &[Vec<usize>], n_right: usize) -> BipartiteMatching {
    let n_left = left_adj.len();
    debug_assert!(left_adj.iter().flatten().all(|&r| r < n_right));
    let mut left_match: Vec<Option<usize>> = vec![None; n_left];
    let mut right_match: Vec<Option<usize>> = vec![None; n_right];
    let mut dist = vec![INF; n_left];
    let mut queue = Vec::with_capacity(n_left);

    // BFS from all free left vertices, layering by alternating paths.
    let bfs = |left_match: &[Option<usize>],
               right_match: &[Option<usize>],
               dist: &mut Vec<u32>,
               queue: &mut Vec<usize>| {
        queue.clear();
        for l in 0..n_left {
            dist[l] = if left_match[l].is_none() {
                queue.push(l);
                0
            } else {
                INF
            };
        }
        let mut found = false;
        let mut head = 0;
        while head < queue.len() {
            let l = queue[head];
            head += 1;
            for &r in &left_adj[l] {
                match right_match[r] {
                    None => found = true,
                    Some(l2) => {
                        if dist[l2] == INF {
                            dist[l2] = dist[l] + 1;
                            queue.push(l2);
                        }
                    }
                }
            }
        }
        found
    };

    fn dfs(
        l: usize,
        left_adj: &[Vec<usize>],
        left_match: &mut [Option<usize>],
        right_match: &mut [Option<usize>],
        dist: &mut [u32],
    ) -> bool {
        for i in 0..left_adj[l].len() {
            let r = left_adj[l][i];
            let ok = match right_match[r] {
                None => true,
                Some(l2) => {
                    dist[l2] == dist[l] + 1
                        && dfs(l2, left_adj, left_match, right_match, dist)
                }
            };
            if ok {
                left_match[l] = Some(r);
                right_match[r] = Some(l);
                return true;
            }
        }
        dist[l] = INF;
        false
    }

    let mut size = 0;
    while bfs(&left_match, &right_match, &mut dist, &mut queue) {
        for l in 0..n_left {
            if left_match[l].is_none()
                && dfs(l, left_adj, &mut left_match, &mut right_match, &mut dist)
            {
                size += 1;
            }
        }
    }
    BipartiteMatching { left_match, right_match, size }
}
