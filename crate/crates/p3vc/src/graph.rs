//! Undirected simple graphs with dense vertex ids, plus the small
//! structural queries the solver and kernelizer are built from.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use thiserror::Error;

pub type Vertex = usize;
pub type VertexSet = BTreeSet<Vertex>;

/// A path on three vertices. `ends` are the two degree-1 endpoints of the
/// path, `middle` the vertex adjacent to both. Stored with `ends.0 < ends.1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Path3 {
    pub ends: (Vertex, Vertex),
    pub middle: Vertex,
}

impl Path3 {
    pub fn new(a: Vertex, middle: Vertex, b: Vertex) -> Self {
        assert!(a != b && a != middle && b != middle, "degenerate 3-path");
        let (x, y) = if a < b { (a, b) } else { (b, a) };
        Path3 { ends: (x, y), middle }
    }

    pub fn vertices(&self) -> [Vertex; 3] {
        [self.ends.0, self.middle, self.ends.1]
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.ends.0 == v || self.ends.1 == v || self.middle == v
    }

    /// True when both path edges are present in `g`.
    pub fn is_in(&self, g: &Graph) -> bool {
        g.has_edge(self.ends.0, self.middle) && g.has_edge(self.middle, self.ends.1)
    }
}

/// A set of vertex-disjoint 3-paths.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Packing {
    pub paths: Vec<Path3>,
}

impl Packing {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.paths.iter().flat_map(|p| p.vertices()).collect()
    }

    /// Valid = every path lies in `g` and no vertex is reused.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let mut seen = VertexSet::new();
        for p in &self.paths {
            if !p.is_in(g) {
                return false;
            }
            for v in p.vertices() {
                if !seen.insert(v) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {0} out of range (n = {1})")]
    OutOfRange(Vertex, usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {0}: expected `p edge <n> <m>` header")]
    MalformedHeader(usize),
    #[error("line {0}: second `p` header")]
    DuplicateHeader(usize),
    #[error("missing `p edge` header")]
    MissingHeader,
    #[error("line {0}: malformed edge line")]
    MalformedEdge(usize),
    #[error("line {0}: self-loop `e {1} {1}` is not allowed")]
    SelfLoop(usize, usize),
    #[error("line {0}: vertex {1} outside 1..={2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("line {0}: unrecognized line")]
    UnknownLine(usize),
    #[error("header declares {declared} edges, found {found} edge lines")]
    EdgeCountMismatch { declared: usize, found: usize },
}

/// Component census of a graph: total count plus counts keyed by size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentsProfile {
    /// One entry per component, each sorted ascending; entries ordered by
    /// their smallest vertex.
    pub components: Vec<Vec<Vertex>>,
    pub comp_total: usize,
    /// comp_by_size[i] = number of components with exactly i vertices.
    pub comp_by_size: Vec<usize>,
}

/// Everything steps 2-8 of the search branch on, computed in one pass.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructureReport {
    /// (v, u, w): degree-1 v, its degree-2 neighbor u, u's other neighbor w.
    pub tails: Vec<(Vertex, Vertex, Vertex)>,
    /// (v, u) with N[u] subseteq N[v]: v is dominated by its neighbor u.
    pub dominated_pairs: Vec<(Vertex, Vertex)>,
    /// (v, p, s) with p in N(v) and N[p] \ N[v] = {s}.
    pub satellites: Vec<(Vertex, Vertex, Vertex)>,
    /// (u0, u1, u2, u3): d(u0) >= 3, d(u1) = d(u2) = 2, u3 != u0.
    pub chains: Vec<(Vertex, Vertex, Vertex, Vertex)>,
    /// (v, u1, u2, u3): degree-3 v with degree-1 neighbor u1 and adjacent
    /// neighbors u2 < u3.
    pub triangle_pendants: Vec<(Vertex, Vertex, Vertex, Vertex)>,
}

/// Mapping between a graph and the subgraph produced by a deletion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdMap {
    pub new_to_old: Vec<Vertex>,
    pub old_to_new: Vec<Option<Vertex>>,
}

impl IdMap {
    pub fn to_old(&self, v: Vertex) -> Vertex {
        self.new_to_old[v]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut sets: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if u >= n {
                return Err(GraphError::OutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::OutOfRange(v, n));
            }
            sets[u].insert(v);
            sets[v].insert(u);
        }
        let adj: Vec<Vec<Vertex>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let m = adj.iter().map(|a| a.len()).sum::<usize>() / 2;
        Ok(Graph { adj, m })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Neighbors in ascending order.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.m);
        for u in self.vertices() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Open or closed neighborhood of a vertex set.
    /// Open: union of N(x) minus X itself. Closed: open union X.
    pub fn neighborhood(&self, xs: &VertexSet, closed: bool) -> VertexSet {
        let mut out = VertexSet::new();
        for &x in xs {
            for &y in &self.adj[x] {
                out.insert(y);
            }
        }
        if closed {
            out.extend(xs.iter().copied());
        } else {
            for x in xs {
                out.remove(x);
            }
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut comps = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn components_profile(&self) -> ComponentsProfile {
        let components = self.components();
        let comp_total = components.len();
        let max = components.iter().map(|c| c.len()).max().unwrap_or(0);
        let mut comp_by_size = vec![0usize; max + 1];
        for c in &components {
            comp_by_size[c.len()] += 1;
        }
        ComponentsProfile { components, comp_total, comp_by_size }
    }

    /// First 3-path in scan order: smallest vertex of degree >= 2 becomes the
    /// middle, flanked by its two smallest neighbors. None iff max degree <= 1.
    pub fn find_p3(&self) -> Option<Path3> {
        for v in self.vertices() {
            if self.degree(v) >= 2 {
                return Some(Path3::new(self.adj[v][0], v, self.adj[v][1]));
            }
        }
        None
    }

    pub fn is_p3_free(&self) -> bool {
        self.find_p3().is_none()
    }

    /// Greedy maximal packing: repeatedly take the first 3-path among the
    /// vertices not yet used.
    pub fn maximal_p3_packing(&self) -> Packing {
        let mut used = vec![false; self.n()];
        let mut paths = Vec::new();
        loop {
            let mut found = None;
            'scan: for v in self.vertices() {
                if used[v] {
                    continue;
                }
                let mut picked = [0; 2];
                let mut cnt = 0;
                for &u in &self.adj[v] {
                    if !used[u] {
                        picked[cnt] = u;
                        cnt += 1;
                        if cnt == 2 {
                            found = Some(Path3::new(picked[0], v, picked[1]));
                            break 'scan;
                        }
                    }
                }
            }
            match found {
                Some(p) => {
                    for x in p.vertices() {
                        used[x] = true;
                    }
                    paths.push(p);
                }
                None => break,
            }
        }
        Packing { paths }
    }

    /// All tail/dominated/satellite/chain/pendant-triangle features, by
    /// definition scans. Callers filter for the configuration they need.
    pub fn detect_structures(&self) -> StructureReport {
        let mut r = StructureReport::default();
        for v in self.vertices() {
            // tails
            if self.degree(v) == 1 {
                let u = self.adj[v][0];
                if self.degree(u) == 2 {
                    let w = if self.adj[u][0] == v { self.adj[u][1] } else { self.adj[u][0] };
                    r.tails.push((v, u, w));
                }
            }
            // dominated pairs: v dominated by u iff N[u] subseteq N[v]
            for &u in &self.adj[v] {
                if self.adj[u].iter().all(|&x| x == v || self.has_edge(x, v)) {
                    r.dominated_pairs.push((v, u));
                }
            }
            // satellites
            for &p in &self.adj[v] {
                let mut outside = None;
                let mut count = 0;
                for &x in &self.adj[p] {
                    if x != v && !self.has_edge(x, v) {
                        outside = Some(x);
                        count += 1;
                        if count > 1 {
                            break;
                        }
                    }
                }
                if count == 1 {
                    r.satellites.push((v, p, outside.unwrap()));
                }
            }
            // chains starting at v
            if self.degree(v) >= 3 {
                for &u1 in &self.adj[v] {
                    if self.degree(u1) != 2 {
                        continue;
                    }
                    let u2 = if self.adj[u1][0] == v { self.adj[u1][1] } else { self.adj[u1][0] };
                    if self.degree(u2) != 2 {
                        continue;
                    }
                    let u3 = if self.adj[u2][0] == u1 { self.adj[u2][1] } else { self.adj[u2][0] };
                    if u3 != v {
                        r.chains.push((v, u1, u2, u3));
                    }
                }
            }
            // pendant-triangle configurations
            if self.degree(v) == 3 {
                let nb = &self.adj[v];
                for i in 0..3 {
                    if self.degree(nb[i]) != 1 {
                        continue;
                    }
                    let (a, b) = match i {
                        0 => (nb[1], nb[2]),
                        1 => (nb[0], nb[2]),
                        _ => (nb[0], nb[1]),
                    };
                    if self.has_edge(a, b) {
                        r.triangle_pendants.push((v, nb[i], a.min(b), a.max(b)));
                    }
                }
            }
        }
        r
    }

    /// The subgraph induced by `keep` (must be sorted, duplicate-free),
    /// with vertices renumbered to 0..keep.len().
    pub fn induced(&self, keep: &[Vertex]) -> (Graph, IdMap) {
        debug_assert!(keep.windows(2).all(|w| w[0] < w[1]));
        let mut old_to_new = vec![None; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            old_to_new[v] = Some(i);
        }
        let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); keep.len()];
        let mut m = 0;
        for (i, &v) in keep.iter().enumerate() {
            for &u in &self.adj[v] {
                if let Some(j) = old_to_new[u] {
                    adj[i].push(j);
                    if i < j {
                        m += 1;
                    }
                }
            }
        }
        (Graph { adj, m }, IdMap { new_to_old: keep.to_vec(), old_to_new })
    }

    /// Deletes a vertex set, returning the remaining graph and the id map.
    pub fn remove_vertices(&self, drop: &VertexSet) -> (Graph, IdMap) {
        let keep: Vec<Vertex> = self.vertices().filter(|v| !drop.contains(v)).collect();
        self.induced(&keep)
    }

    /// Strict DIMACS edge-format parser. Comment lines start with `c`,
    /// exactly one `p edge <n> <m>` header, then exactly m `e <u> <v>` lines
    /// with 1-indexed endpoints and no self-loops. Duplicate edges collapse.
    pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
        let mut edge_lines = 0usize;
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim_end_matches('\r');
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let mut parts = line.split_whitespace();
            match parts.next() {
                Some("p") => {
                    if header.is_some() {
                        return Err(ParseError::DuplicateHeader(lineno));
                    }
                    let fmt = parts.next();
                    let n = parts.next().and_then(|t| t.parse::<usize>().ok());
                    let m = parts.next().and_then(|t| t.parse::<usize>().ok());
                    match (fmt, n, m, parts.next()) {
                        (Some("edge"), Some(n), Some(m), None) => header = Some((n, m)),
                        _ => return Err(ParseError::MalformedHeader(lineno)),
                    }
                }
                Some("e") => {
                    let (n, _) = header.ok_or(ParseError::MissingHeader)?;
                    let u = parts.next().and_then(|t| t.parse::<usize>().ok());
                    let v = parts.next().and_then(|t| t.parse::<usize>().ok());
                    let (u, v) = match (u, v, parts.next()) {
                        (Some(u), Some(v), None) => (u, v),
                        _ => return Err(ParseError::MalformedEdge(lineno)),
                    };
                    if u == v {
                        return Err(ParseError::SelfLoop(lineno, u));
                    }
                    for x in [u, v] {
                        if x < 1 || x > n {
                            return Err(ParseError::VertexOutOfRange(lineno, x, n));
                        }
                    }
                    edge_lines += 1;
                    edges.push((u - 1, v - 1));
                }
                _ => return Err(ParseError::UnknownLine(lineno)),
            }
        }
        let (n, m) = header.ok_or(ParseError::MissingHeader)?;
        if edge_lines != m {
            return Err(ParseError::EdgeCountMismatch { declared: m, found: edge_lines });
        }
        Ok(Graph::from_edges(n, &edges).expect("endpoints validated"))
    }

    /// Canonical DIMACS form: header, then `e u v` with u < v, 1-indexed,
    /// sorted lexicographically.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p edge {} {}", self.n(), self.m());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn parse_p3() {
        let parsed = Graph::parse_dimacs("p edge 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(parsed, g(3, &[(0, 1), (1, 2)]));
        assert_eq!(parsed.m(), 2);
    }

    #[test]
    fn parse_triangle_with_comment() {
        let doc = "c triangle\np edge 3 3\ne 1 2\ne 1 3\ne 2 3\n";
        let parsed = Graph::parse_dimacs(doc).unwrap();
        assert_eq!(parsed.degree(0), 2);
        assert_eq!(parsed.to_dimacs(), "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n");
    }

    #[test]
    fn parse_rejects_self_loop_with_line_number() {
        let err = Graph::parse_dimacs("p edge 2 1\ne 1 1\n").unwrap_err();
        assert_eq!(err, ParseError::SelfLoop(2, 1));
    }

    #[test]
    fn parse_rejects_out_of_range_and_counts() {
        assert_eq!(
            Graph::parse_dimacs("p edge 2 1\ne 1 3\n").unwrap_err(),
            ParseError::VertexOutOfRange(2, 3, 2)
        );
        assert_eq!(
            Graph::parse_dimacs("p edge 2 2\ne 1 2\n").unwrap_err(),
            ParseError::EdgeCountMismatch { declared: 2, found: 1 }
        );
        assert_eq!(Graph::parse_dimacs("e 1 2\n").unwrap_err(), ParseError::MissingHeader);
    }

    #[test]
    fn duplicate_edges_collapse() {
        let parsed = Graph::parse_dimacs("p edge 2 2\ne 1 2\ne 2 1\n").unwrap();
        assert_eq!(parsed.m(), 1);
    }

    #[test]
    fn neighborhood_open_closed() {
        // path a-b-c: N({b}) = {a, c}, N[{a}] = {a, b}
        let p3 = g(3, &[(0, 1), (1, 2)]);
        let b: VertexSet = [1].into_iter().collect();
        assert_eq!(p3.neighborhood(&b, false), [0, 2].into_iter().collect());
        let a: VertexSet = [0].into_iter().collect();
        assert_eq!(p3.neighborhood(&a, true), [0, 1].into_iter().collect());
        // N({u, v}) of an edge excludes u and v
        let k3 = g(3, &[(0, 1), (0, 2), (1, 2)]);
        let uv: VertexSet = [0, 1].into_iter().collect();
        assert_eq!(k3.neighborhood(&uv, false), [2].into_iter().collect());
    }

    #[test]
    fn components_profile_counts() {
        // triangle + edge + isolated vertex
        let h = g(6, &[(0, 1), (0, 2), (1, 2), (3, 4)]);
        let prof = h.components_profile();
        assert_eq!(prof.comp_total, 3);
        assert_eq!(prof.comp_by_size[1], 1);
        assert_eq!(prof.comp_by_size[2], 1);
        assert_eq!(prof.comp_by_size[3], 1);
        let n: usize = prof.comp_by_size.iter().enumerate().map(|(s, c)| s * c).sum();
        assert_eq!(n, 6);
    }

    #[test]
    fn find_p3_cases() {
        assert_eq!(g(2, &[(0, 1)]).find_p3(), None);
        let tri = g(3, &[(0, 1), (0, 2), (1, 2)]);
        let p = tri.find_p3().unwrap();
        assert!(p.is_in(&tri));
        assert_eq!(p.middle, 0);
    }

    #[test]
    fn greedy_packing_on_p6() {
        // 0-1-2-3-4-5: greedy takes (0,1,2) then (3,4,5)
        let p6 = g(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        let pk = p6.maximal_p3_packing();
        assert_eq!(pk.len(), 2);
        assert!(pk.is_valid(&p6));
        assert_eq!(pk.paths[0], Path3::new(0, 1, 2));
        assert_eq!(pk.paths[1], Path3::new(3, 4, 5));
        // maximality: removing the packed vertices leaves no 3-path
        let (rest, _) = p6.remove_vertices(&pk.vertex_set());
        assert!(rest.is_p3_free());
    }

    #[test]
    fn structures_on_p4() {
        // 0-1-2-3: tails (0,1,2) and (3,2,1)
        let p4 = g(4, &[(0, 1), (1, 2), (2, 3)]);
        let r = p4.detect_structures();
        assert_eq!(r.tails, vec![(0, 1, 2), (3, 2, 1)]);
    }

    #[test]
    fn structures_dominated_on_p3() {
        // path a-b-c: b is dominated by a (N[a] subseteq N[b])
        let r = g(3, &[(0, 1), (1, 2)]).detect_structures();
        assert!(r.dominated_pairs.contains(&(1, 0)));
        assert!(r.dominated_pairs.contains(&(1, 2)));
        assert!(!r.dominated_pairs.contains(&(0, 1)));
    }

    #[test]
    fn structures_satellite() {
        // edges v-p, v-q, p-s: s is a satellite of v with parent p
        let h = g(4, &[(0, 1), (0, 2), (1, 3)]);
        let r = h.detect_structures();
        assert!(r.satellites.contains(&(0, 1, 3)));
    }

    #[test]
    fn structures_chain_and_pendant_triangle() {
        // star center 0 with arms; chain 0-1-2-3 needs d(1)=d(2)=2
        let h = g(6, &[(0, 1), (1, 2), (2, 3), (0, 4), (0, 5)]);
        let r = h.detect_structures();
        assert!(r.chains.contains(&(0, 1, 2, 3)));
        // triangle 0-1-2 with pendant 3 on 0
        let t = g(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]);
        let r = t.detect_structures();
        assert_eq!(r.triangle_pendants, vec![(0, 3, 1, 2)]);
    }

    #[test]
    fn naive_structure_rescan_agrees() {
        // independent definitional rescan, quadratic and unclever on purpose
        let mut rng = 0xdeadbeefu64;
        let mut next = move || {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            rng
        };
        for n in 2..10usize {
            for _ in 0..30 {
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in (u + 1)..n {
                        if next() % 10 < 3 {
                            edges.push((u, v));
                        }
                    }
                }
                let h = g(n, &edges);
                let r = h.detect_structures();
                let nset = |v: usize| -> VertexSet {
                    h.neighbors(v).iter().copied().collect()
                };
                let mut dom = Vec::new();
                for v in 0..n {
                    for &u in h.neighbors(v) {
                        let mut nu = nset(u);
                        nu.insert(u);
                        let mut nv = nset(v);
                        nv.insert(v);
                        if nu.is_subset(&nv) {
                            dom.push((v, u));
                        }
                    }
                }
                assert_eq!(r.dominated_pairs, dom);
                let mut sats = Vec::new();
                for v in 0..n {
                    for &p in h.neighbors(v) {
                        let mut nv = nset(v);
                        nv.insert(v);
                        let mut np = nset(p);
                        np.insert(p);
                        let diff: Vec<_> = np.difference(&nv).copied().collect();
                        if diff.len() == 1 {
                            sats.push((v, p, diff[0]));
                        }
                    }
                }
                assert_eq!(r.satellites, sats);
            }
        }
    }

    #[test]
    fn induced_maps_back() {
        let h = g(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let drop: VertexSet = [1].into_iter().collect();
        let (sub, map) = h.remove_vertices(&drop);
        assert_eq!(sub.n(), 4);
        assert_eq!(sub.m(), 2);
        assert_eq!(map.to_old(0), 0);
        assert_eq!(map.to_old(1), 2);
        assert_eq!(map.old_to_new[1], None);
    }
}
