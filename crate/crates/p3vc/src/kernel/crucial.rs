//! The 5k kernel machinery: a partition (A, B, Z) of the vertices where
//! B carries a 3-path packing, A induces maximum degree 1 with no edge to
//! Z, and Z is fully paid for by a packing witness (|Z| ≤ 5·|witness|).
//!
//! On top of the partition the packing paths are classified by how they
//! touch A, and a family of side conditions is enforced by local rewrites
//! (augment the packing, rotate a path, or set a cluster aside into Z).
//! Once every condition holds, a counting audit ties the number of packing
//! paths to the graph size, and two crown reductions shrink the graph until
//! |V| ≤ 5k or the budget is provably insufficient.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::graph::{Graph, Packing, Path3, Vertex, VertexSet};
use crate::kernel::decomposition::{
    find_good_decomposition, ASideView, DecompMode, GoodDecomposition,
};

#[derive(Clone, Debug)]
pub struct CrucialPartition {
    pub a: VertexSet,
    pub z: VertexSet,
    pub packing: Packing,
    /// disjoint 3-paths inside G[Z] paying for it: |Z| ≤ 5·len
    pub z_witness: Packing,
}

impl CrucialPartition {
    pub fn b(&self) -> VertexSet {
        self.packing.vertex_set()
    }
}

/// How a packing path touches the A-side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathClass {
    /// no vertex has a neighbor in A
    Free,
    /// all A-neighbors form a single one-vertex A-component
    SingleAnchor,
    /// exactly one attached vertex and it is the middle
    MidAttached,
    /// exactly one attached vertex and it is an end
    EndAttached,
    /// two or more attached vertices spread over several components
    MultiAttached,
}

#[derive(Clone, Debug)]
pub struct PathInfo {
    pub path: Path3,
    /// path vertices with a neighbor in A
    pub attached: Vec<Vertex>,
    /// vertices of the A-components the path touches
    pub a_of_l: VertexSet,
    /// path vertices with no neighbor in A
    pub free: Vec<Vertex>,
    pub class: PathClass,
    /// path vertices adjacent to a free vertex of some *other* end-attached path
    pub pointers: Vec<Vertex>,
    /// indices of the end-attached paths those free vertices belong to
    pub targets: BTreeSet<usize>,
    /// touches a one-vertex / a two-vertex A-component
    pub touches_a0: bool,
    pub touches_a1: bool,
    /// Free path with ≥ 2 pointers, or end-attached path hit by such a one
    pub bad: bool,
}

/// Per-class path counts. x: end-attached (good/bad), y: free paths by
/// pointer count (0, 1, ≥2), z: mid-attached by component size seen from
/// the middle (singletons only / pairs only), w: single-anchor paths
/// (with / without pointers).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    pub x1: usize,
    pub x2: usize,
    pub y0: usize,
    pub y1: usize,
    pub y2: usize,
    pub z1: usize,
    pub z2: usize,
    pub w1: usize,
    pub w2: usize,
}

impl Counters {
    /// total number of packing paths
    pub fn k1(&self) -> usize {
        self.x1 + self.x2 + self.y0 + self.y1 + self.y2 + self.z1 + self.z2 + self.w1 + self.w2
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub paths: Vec<PathInfo>,
    pub counters: Counters,
    /// free vertex of an end-attached path → index of its path
    pub free_end_attached: BTreeMap<Vertex, usize>,
    pub free_mid_attached: BTreeMap<Vertex, usize>,
}

pub fn classify(g: &Graph, a: &VertexSet, paths: &[Path3]) -> Classification {
    // components of G[A] are singletons and edges
    let comp_mate = |v: Vertex| -> Option<Vertex> {
        g.neighbors(v).iter().copied().find(|u| a.contains(u))
    };

    let mut infos: Vec<PathInfo> = paths
        .iter()
        .map(|&p| {
            let vs = p.vertices();
            let mut attached = Vec::new();
            let mut free = Vec::new();
            let mut a_of_l = VertexSet::new();
            let mut touches_a0 = false;
            let mut touches_a1 = false;
            for &v in &vs {
                let nbrs: Vec<Vertex> =
                    g.neighbors(v).iter().copied().filter(|u| a.contains(u)).collect();
                if nbrs.is_empty() {
                    free.push(v);
                } else {
                    attached.push(v);
                    for u in nbrs {
                        a_of_l.insert(u);
                        match comp_mate(u) {
                            Some(m) => {
                                a_of_l.insert(m);
                                touches_a1 = true;
                            }
                            None => touches_a0 = true,
                        }
                    }
                }
            }
            let class = if attached.is_empty() {
                PathClass::Free
            } else if a_of_l.len() == 1 {
                PathClass::SingleAnchor
            } else if attached.len() >= 2 {
                PathClass::MultiAttached
            } else if attached[0] == vs[1] {
                PathClass::MidAttached
            } else {
                PathClass::EndAttached
            };
            PathInfo {
                path: p,
                attached,
                a_of_l,
                free,
                class,
                pointers: Vec::new(),
                targets: BTreeSet::new(),
                touches_a0,
                touches_a1,
                bad: false,
            }
        })
        .collect();

    let mut free_end_attached = BTreeMap::new();
    let mut free_mid_attached = BTreeMap::new();
    for (i, info) in infos.iter().enumerate() {
        for &f in &info.free {
            match info.class {
                PathClass::EndAttached => {
                    free_end_attached.insert(f, i);
                }
                PathClass::MidAttached => {
                    free_mid_attached.insert(f, i);
                }
                _ => {}
            }
        }
    }

    for i in 0..infos.len() {
        let vs = infos[i].path.vertices();
        for &v in &vs {
            let mut hits = false;
            for &u in g.neighbors(v) {
                if let Some(&j) = free_end_attached.get(&u) {
                    if j != i {
                        hits = true;
                        infos[i].targets.insert(j);
                    }
                }
            }
            if hits {
                infos[i].pointers.push(v);
            }
        }
    }

    // a free path with two pointer vertices spoils every path it points at
    let mut spoiled: Vec<usize> = Vec::new();
    for info in &infos {
        if info.class == PathClass::Free && info.pointers.len() >= 2 {
            spoiled.extend(info.targets.iter().copied());
        }
    }
    for j in spoiled {
        infos[j].bad = true;
    }

    let mut c = Counters::default();
    for info in &infos {
        match info.class {
            PathClass::EndAttached => {
                if info.bad {
                    c.x2 += 1;
                } else {
                    c.x1 += 1;
                }
            }
            PathClass::Free => match info.pointers.len() {
                0 => c.y0 += 1,
                1 => c.y1 += 1,
                _ => c.y2 += 1,
            },
            PathClass::MidAttached => {
                if info.touches_a0 && !info.touches_a1 {
                    c.z1 += 1;
                } else if info.touches_a1 && !info.touches_a0 {
                    c.z2 += 1;
                }
                // mixed middles are a violation and counted in neither bin
            }
            PathClass::SingleAnchor => {
                if info.pointers.is_empty() {
                    c.w2 += 1;
                } else {
                    c.w1 += 1;
                }
            }
            PathClass::MultiAttached => {}
        }
    }
    debug_assert!(
        c.k1()
            + infos
                .iter()
                .filter(|i| {
                    i.class == PathClass::MultiAttached
                        || (i.class == PathClass::MidAttached && i.touches_a0 && i.touches_a1)
                })
                .count()
            == infos.len()
    );

    Classification { paths: infos, counters: c, free_end_attached, free_mid_attached }
}

/// First unsatisfied side condition, in enforcement order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// a path outside SingleAnchor has ≥ 2 attached vertices
    OversizedAttachment(usize),
    /// a mid-attached middle sees both a singleton and a pair component
    MixedMiddle(usize),
    /// free vertices of two end-attached paths are adjacent
    LinkedEnds(usize, usize),
    /// a free end-attached vertex is adjacent to a free mid-attached vertex
    LinkedEndMid(usize, usize),
    /// a single-anchor path has ≥ 2 pointer vertices
    AnchoredPointers(usize),
    /// a free path with ≥ 2 pointers aims at two different end-attached paths
    SplitPointers(usize, usize, usize),
    /// a free end-attached vertex is adjacent to Z
    FreeTouchesZ(usize),
    /// a good free path or a single-anchor path points at a spoiled path
    GoodPointsAtBad { offender: usize, target: usize },
}

pub fn first_violation(g: &Graph, z: &VertexSet, cls: &Classification) -> Option<Violation> {
    use PathClass::*;
    for (i, info) in cls.paths.iter().enumerate() {
        if info.class == MultiAttached {
            return Some(Violation::OversizedAttachment(i));
        }
    }
    for (i, info) in cls.paths.iter().enumerate() {
        if info.class == MidAttached && info.touches_a0 && info.touches_a1 {
            return Some(Violation::MixedMiddle(i));
        }
    }
    for (i, info) in cls.paths.iter().enumerate() {
        if info.class != EndAttached {
            continue;
        }
        for &f in &info.free {
            for &u in g.neighbors(f) {
                if let Some(&j) = cls.free_end_attached.get(&u) {
                    if j != i {
                        return Some(Violation::LinkedEnds(i.min(j), i.max(j)));
                    }
                }
            }
        }
    }
    for (i, info) in cls.paths.iter().enumerate() {
        if info.class != EndAttached {
            continue;
        }
        for &f in &info.free {
            for &u in g.neighbors(f) {
                if let Some(&j) = cls.free_mid_attached.get(&u) {
                    return Some(Violation::LinkedEndMid(i, j));
                }
            }
        }
    }
    for (i, info) in cls.paths.iter().enumerate() {
        if info.class == SingleAnchor && info.pointers.len() >= 2 {
            return Some(Violation::AnchoredPointers(i));
        }
    }
    for (i, info) in cls.paths.iter().enumerate() {
        if info.class == Free && info.pointers.len() >= 2 && info.targets.len() >= 2 {
            let mut it = info.targets.iter();
            let t1 = *it.next().unwrap();
            let t2 = *it.next().unwrap();
            return Some(Violation::SplitPointers(i, t1, t2));
        }
    }
    for (i, info) in cls.paths.iter().enumerate() {
        if info.class != EndAttached {
            continue;
        }
        for &f in &info.free {
            if g.neighbors(f).iter().any(|u| z.contains(u)) {
                return Some(Violation::FreeTouchesZ(i));
            }
        }
    }
    for (i, info) in cls.paths.iter().enumerate() {
        let good_free = info.class == Free && info.pointers.len() <= 1;
        let anchored = info.class == SingleAnchor;
        if !(good_free || anchored) {
            continue;
        }
        for &j in &info.targets {
            if cls.paths[j].bad {
                return Some(Violation::GoodPointsAtBad { offender: i, target: j });
            }
        }
    }
    None
}

/// Full structural check of a partition: used after building and by the
/// test suites.
pub fn validate_crucial_partition(g: &Graph, p: &CrucialPartition) -> Result<(), String> {
    let b = p.b();
    if p.a.len() + b.len() + p.z.len() != g.n()
        || !p.a.is_disjoint(&b)
        || !p.a.is_disjoint(&p.z)
        || !b.is_disjoint(&p.z)
    {
        return Err("A, B, Z do not partition the vertex set".into());
    }
    if !p.packing.is_valid(g) {
        return Err("B does not carry a valid packing".into());
    }
    for &v in &p.a {
        if g.neighbors(v).iter().filter(|u| p.a.contains(u)).count() > 1 {
            return Err(format!("G[A] has degree >= 2 at {v}"));
        }
        if g.neighbors(v).iter().any(|u| p.z.contains(u)) {
            return Err(format!("edge between A-vertex {v} and Z"));
        }
    }
    if !p.z_witness.is_valid(g) || !p.z_witness.vertex_set().is_subset(&p.z) {
        return Err("Z witness is not a packing inside Z".into());
    }
    if p.z.len() > 5 * p.z_witness.len() {
        return Err(format!(
            "Z has {} vertices but only {} witness paths",
            p.z.len(),
            p.z_witness.len()
        ));
    }
    let cls = classify(g, &p.a, &p.packing.paths);
    if let Some(v) = first_violation(g, &p.z, &cls) {
        return Err(format!("side condition violated: {v:?}"));
    }
    Ok(())
}

pub enum BuildOutcome {
    Built(CrucialPartition, Classification),
    /// no rewrite applied; the caller degrades to the simpler kernel
    Fallback { reason: String },
}

struct Builder<'g> {
    g: &'g Graph,
    a: VertexSet,
    z: VertexSet,
    paths: Vec<Path3>,
    z_witness: Vec<Path3>,
}

impl<'g> Builder<'g> {
    fn state_hash(&self) -> u64 {
        let mut h = DefaultHasher::new();
        for &v in &self.a {
            v.hash(&mut h);
        }
        u64::MAX.hash(&mut h);
        for &v in &self.z {
            v.hash(&mut h);
        }
        u64::MAX.hash(&mut h);
        let mut ps: Vec<[Vertex; 3]> = self.paths.iter().map(|p| p.vertices()).collect();
        ps.sort_unstable();
        ps.hash(&mut h);
        h.finish()
    }

    /// vertices of every A-component adjacent to one of `verts`
    fn touching_comps(&self, verts: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new();
        for &v in verts {
            for &u in self.g.neighbors(v) {
                if self.a.contains(&u) && out.insert(u) {
                    if let Some(&m) =
                        self.g.neighbors(u).iter().find(|w| self.a.contains(w))
                    {
                        out.insert(m);
                    }
                }
            }
        }
        out
    }

    fn pool_for(&self, idxs: &[usize]) -> VertexSet {
        let mut pool: VertexSet =
            idxs.iter().flat_map(|&i| self.paths[i].vertices()).collect();
        pool.extend(self.touching_comps(&pool.clone()));
        pool
    }

    fn p3s_within(&self, pool: &VertexSet) -> Vec<Path3> {
        let mut out = Vec::new();
        for &m in pool {
            let nbrs: Vec<Vertex> =
                self.g.neighbors(m).iter().copied().filter(|u| pool.contains(u)).collect();
            for i in 0..nbrs.len() {
                for j in (i + 1)..nbrs.len() {
                    out.push(Path3::new(nbrs[i], m, nbrs[j]));
                }
            }
        }
        out
    }

    /// A displaced to the A-side: may not touch Z and must keep G[A] at
    /// maximum degree 1. Returns the new A-set on success.
    fn displaced_a(&self, old_vs: &VertexSet, new_paths: &[Path3]) -> Option<VertexSet> {
        let used: VertexSet = new_paths.iter().flat_map(|p| p.vertices()).collect();
        let displaced: VertexSet = old_vs.difference(&used).copied().collect();
        let mut new_a: VertexSet = self.a.difference(&used).copied().collect();
        new_a.extend(displaced.iter().copied());
        for &d in &displaced {
            if self.g.neighbors(d).iter().any(|u| self.z.contains(u)) {
                return None;
            }
        }
        let deg = |v: Vertex| {
            self.g.neighbors(v).iter().filter(|u| new_a.contains(u)).count()
        };
        for &d in &displaced {
            if deg(d) > 1 {
                return None;
            }
            for &u in self.g.neighbors(d) {
                if new_a.contains(&u) && deg(u) > 1 {
                    return None;
                }
            }
        }
        Some(new_a)
    }

    fn commit(&mut self, old_idxs: &[usize], new_paths: Vec<Path3>, new_a: VertexSet) {
        let mut idxs = old_idxs.to_vec();
        idxs.sort_unstable();
        for &i in idxs.iter().rev() {
            self.paths.remove(i);
        }
        self.paths.extend(new_paths);
        self.a = new_a;
    }

    /// Replace the given paths by `target` pairwise disjoint 3-paths drawn
    /// from their vertices and the A-components around them. With
    /// target = old + 1 this grows the packing.
    fn try_replace(&mut self, old_idxs: &[usize], target: usize) -> bool {
        let old_vs: VertexSet =
            old_idxs.iter().flat_map(|&i| self.paths[i].vertices()).collect();
        let pool = self.pool_for(old_idxs);
        if pool.len() > 18 {
            return false;
        }
        let cands = self.p3s_within(&pool);
        let mut chosen: Vec<Path3> = Vec::new();
        if let Some(new_a) = self.search(&cands, 0, &mut chosen, &old_vs, target) {
            self.commit(old_idxs, chosen, new_a);
            return true;
        }
        false
    }

    fn search(
        &self,
        cands: &[Path3],
        start: usize,
        chosen: &mut Vec<Path3>,
        old_vs: &VertexSet,
        target: usize,
    ) -> Option<VertexSet> {
        if chosen.len() == target {
            return self.displaced_a(old_vs, chosen);
        }
        for i in start..cands.len() {
            let vs = cands[i].vertices();
            if chosen.iter().any(|c| c.vertices().iter().any(|v| vs.contains(v))) {
                continue;
            }
            chosen.push(cands[i]);
            if let Some(a) = self.search(cands, i + 1, chosen, old_vs, target) {
                return Some(a);
            }
            chosen.pop();
        }
        None
    }

    /// Swap one path for an alternative with strictly fewer attached
    /// vertices (measured against the post-swap A-side).
    fn try_rotate_fewer_attached(&mut self, idx: usize, cur_attached: usize) -> bool {
        let old_vs: VertexSet = self.paths[idx].vertices().into_iter().collect();
        let pool = self.pool_for(&[idx]);
        if pool.len() > 18 {
            return false;
        }
        let mut best: Option<(usize, Path3, VertexSet)> = None;
        for cand in self.p3s_within(&pool) {
            if cand == self.paths[idx] {
                continue;
            }
            if let Some(new_a) = self.displaced_a(&old_vs, &[cand]) {
                let att = cand
                    .vertices()
                    .iter()
                    .filter(|&&v| self.g.neighbors(v).iter().any(|u| new_a.contains(u)))
                    .count();
                if att < cur_attached
                    && best.as_ref().map_or(true, |(b, bp, _)| att < *b || (att == *b && cand < *bp))
                {
                    best = Some((att, cand, new_a));
                }
            }
        }
        if let Some((_, cand, new_a)) = best {
            self.commit(&[idx], vec![cand], new_a);
            return true;
        }
        false
    }

    /// Mixed middle: re-route the path along one of its pair components,
    /// m — a — b, freeing both old ends.
    fn try_rotate_into_pair(&mut self, idx: usize) -> bool {
        let p = self.paths[idx];
        let m = p.vertices()[1];
        let old_vs: VertexSet = p.vertices().into_iter().collect();
        let anchors: Vec<Vertex> = self
            .g
            .neighbors(m)
            .iter()
            .copied()
            .filter(|u| self.a.contains(u))
            .collect();
        for a1 in anchors {
            let Some(&b1) = self.g.neighbors(a1).iter().find(|u| self.a.contains(u)) else {
                continue;
            };
            let cand = Path3::new(m, a1, b1);
            if let Some(new_a) = self.displaced_a(&old_vs, &[cand]) {
                self.commit(&[idx], vec![cand], new_a);
                return true;
            }
        }
        false
    }

    /// Pull the anchor of a single-anchor path into the packing.
    fn try_rotate_anchor_in(&mut self, idx: usize, anchor: Vertex) -> bool {
        let old_vs: VertexSet = self.paths[idx].vertices().into_iter().collect();
        let pool = self.pool_for(&[idx]);
        for cand in self.p3s_within(&pool) {
            if cand == self.paths[idx] || !cand.vertices().contains(&anchor) {
                continue;
            }
            if let Some(new_a) = self.displaced_a(&old_vs, &[cand]) {
                self.commit(&[idx], vec![cand], new_a);
                return true;
            }
        }
        false
    }

    /// Set the paths and every A-component around them aside into Z; the
    /// paths themselves become the witness. Only allowed while the cluster
    /// stays within 5 vertices per witness path.
    fn try_transfer(&mut self, idxs: &[usize]) -> bool {
        let cluster = self.pool_for(idxs);
        if cluster.len() > 5 * idxs.len() {
            return false;
        }
        let mut sorted = idxs.to_vec();
        sorted.sort_unstable();
        for &i in sorted.iter().rev() {
            self.z_witness.push(self.paths[i]);
            self.paths.remove(i);
        }
        for &v in &cluster {
            self.a.remove(&v);
            self.z.insert(v);
        }
        true
    }

    fn fix(&mut self, v: &Violation, cls: &Classification) -> bool {
        match *v {
            Violation::OversizedAttachment(i) => {
                let cur = cls.paths[i].attached.len();
                self.try_replace(&[i], 2)
                    || self.try_transfer(&[i])
                    || self.try_rotate_fewer_attached(i, cur)
            }
            Violation::MixedMiddle(i) => {
                self.try_replace(&[i], 2) || self.try_rotate_into_pair(i)
            }
            Violation::LinkedEnds(i, j) | Violation::LinkedEndMid(i, j) => {
                self.try_replace(&[i, j], 3) || self.try_transfer(&[i, j])
            }
            Violation::AnchoredPointers(i) => {
                let targets: Vec<usize> = cls.paths[i].targets.iter().copied().collect();
                let anchor = *cls.paths[i].a_of_l.iter().next().expect("anchored");
                for &j in &targets {
                    if self.try_replace(&[i, j], 3) {
                        return true;
                    }
                }
                if self.try_rotate_anchor_in(i, anchor) {
                    return true;
                }
                targets.iter().any(|&j| self.try_transfer(&[i, j]))
            }
            Violation::SplitPointers(i, t1, t2) => {
                self.try_replace(&[i, t1, t2], 4)
                    || self.try_replace(&[i, t1], 3)
                    || self.try_replace(&[i, t2], 3)
                    || self.try_transfer(&[i, t1, t2])
            }
            Violation::FreeTouchesZ(i) => self.try_replace(&[i], 2) || self.try_transfer(&[i]),
            Violation::GoodPointsAtBad { offender, target } => {
                self.try_replace(&[offender, target], 3)
                    || self.try_transfer(&[target])
                    || self.try_replace(&[target], 2)
            }
        }
    }
}

/// Build a partition satisfying every side condition, starting from a
/// maximal packing, by repeated local rewrites. Gives up (soundly) when a
/// violation admits no rewrite or the process cycles.
pub fn build_crucial_partition(g: &Graph) -> BuildOutcome {
    let packing = g.maximal_p3_packing();
    let used = packing.vertex_set();
    let a: VertexSet = g.vertices().filter(|v| !used.contains(v)).collect();
    let mut b = Builder { g, a, z: VertexSet::new(), paths: packing.paths, z_witness: Vec::new() };

    let budget = 10 * g.n() * g.n() + 100;
    let mut seen: HashSet<u64> = HashSet::new();
    for _ in 0..budget {
        if !seen.insert(b.state_hash()) {
            return BuildOutcome::Fallback { reason: "rewrite cycle".into() };
        }
        let cls = classify(g, &b.a, &b.paths);
        match first_violation(g, &b.z, &cls) {
            None => {
                let part = CrucialPartition {
                    a: b.a,
                    z: b.z,
                    packing: Packing { paths: b.paths },
                    z_witness: Packing { paths: b.z_witness },
                };
                if let Err(e) = validate_crucial_partition(g, &part) {
                    panic!("built partition fails validation: {e}");
                }
                return BuildOutcome::Built(part, cls);
            }
            Some(v) => {
                if !b.fix(&v, &cls) {
                    return BuildOutcome::Fallback { reason: format!("stuck at {v:?}") };
                }
            }
        }
    }
    BuildOutcome::Fallback { reason: "rewrite budget exhausted".into() }
}

/// The sharpened A-side: swap the anchors of single-anchor paths out and
/// the free pairs of good end-attached paths in. Still induces maximum
/// degree 1, but now the crown condition is within reach of the audit.
pub fn sharpened_a_side(part: &CrucialPartition, cls: &Classification) -> VertexSet {
    let mut a = part.a.clone();
    for info in &cls.paths {
        match info.class {
            PathClass::SingleAnchor => {
                for &v in &info.a_of_l {
                    a.remove(&v);
                }
            }
            PathClass::EndAttached if !info.bad => {
                a.extend(info.free.iter().copied());
            }
            _ => {}
        }
    }
    a
}

pub enum RuleStep {
    /// the packing plus the Z-witness already exceed the budget
    HaltNo,
    Reduce(GoodDecomposition, &'static str),
    FixedPoint,
}

/// One round of the reduction rules on a clean partition.
pub fn apply_reduction_rules(
    g: &Graph,
    k: i64,
    part: &CrucialPartition,
    cls: &Classification,
) -> RuleStep {
    let k1 = cls.counters.k1() as i64;
    if 5 * k1 > 5 * k - part.z.len() as i64 {
        return RuleStep::HaltNo;
    }
    let asv = ASideView::build(g, &part.a);
    if asv.corollary_condition() {
        let d = find_good_decomposition(g, &asv, DecompMode::EdgesOnly)
            .expect("pair-component surplus guarantees a crown");
        return RuleStep::Reduce(d, "crown2(A)");
    }
    let ap = sharpened_a_side(part, cls);
    let asv2 = ASideView::build(g, &ap);
    if asv2.lemma_condition() {
        let d = find_good_decomposition(g, &asv2, DecompMode::General)
            .expect("component surplus guarantees a crown");
        return RuleStep::Reduce(d, "crown(A')");
    }
    RuleStep::FixedPoint
}

#[derive(Clone, Debug)]
pub struct AuditEntry {
    pub name: &'static str,
    pub lhs: i64,
    pub rhs: i64,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct AuditReport {
    pub entries: Vec<AuditEntry>,
    pub ok: bool,
}

/// Recompute, at a fixed point, every inequality the 5k bound rests on.
pub fn audit_bound(g: &Graph, part: &CrucialPartition, cls: &Classification, k: i64) -> AuditReport {
    let c = cls.counters;
    let (x1, x2) = (c.x1 as i64, c.x2 as i64);
    let (y0, y1, y2) = (c.y0 as i64, c.y1 as i64, c.y2 as i64);
    let (z1, z2) = (c.z1 as i64, c.z2 as i64);
    let (w1, w2) = (c.w1 as i64, c.w2 as i64);
    let k1 = c.k1() as i64;
    let zlen = part.z.len() as i64;

    let asv = ASideView::build(g, &part.a);
    let ap = sharpened_a_side(part, cls);
    let asv2 = ASideView::build(g, &ap);
    let comp_a = asv.comps.len() as i64;
    let comp2_a = asv.comp2_count() as i64;
    let comp_ap = asv2.comps.len() as i64;

    let le = |name, lhs: i64, rhs: i64| AuditEntry { name, lhs, rhs, ok: lhs <= rhs };
    let eq = |name, lhs: i64, rhs: i64| AuditEntry { name, lhs, rhs, ok: lhs == rhs };
    let entries = vec![
        le("5*paths <= 5k - |Z|", 5 * k1, 5 * k - zlen),
        eq(
            "paths = sum of class counters",
            k1,
            x1 + x2 + y0 + y1 + y2 + z1 + z2 + w1 + w2,
        ),
        le("|N2(A)| <= x1 + x2 + z2", asv.n2.len() as i64, x1 + x2 + z2),
        le("x2 <= y2", x2, y2),
        le("comp(A) + x1 - w1 - w2 <= comp(A')", comp_a + x1 - w1 - w2, comp_ap),
        le(
            "|N(A')| <= x1 + x2 + y0 + y1 + z1 + z2 + w1",
            asv2.n_of_a.len() as i64,
            x1 + x2 + y0 + y1 + z1 + z2 + w1,
        ),
        le("y1 + z2 + w1 <= |N2'(A')|", y1 + z2 + w1, asv2.n2_prime.len() as i64),
        le(
            "comp(A) <= x1 + 2*x2 + 2*y0 + y1 + 2*z1 + z2 + 2*w1 + w2",
            comp_a,
            x1 + 2 * x2 + 2 * y0 + y1 + 2 * z1 + z2 + 2 * w1 + w2,
        ),
        le("comp2(A) <= x1 + x2 + z2", comp2_a, x1 + x2 + z2),
        le("|A| <= 2*paths", part.a.len() as i64, 2 * k1),
        eq("|B| = 3*paths", part.b().len() as i64, 3 * k1),
        le("|V| <= 5k", g.n() as i64, 5 * k),
    ];
    let ok = entries.iter().all(|e| e.ok);
    AuditReport { entries, ok }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn classify_end_attached_and_pointer() {
        // path (0,1,2) attached at end 0 to two singletons {6},{7};
        // path (3,4,5) is free but its vertex 3 sees the free vertex 1
        let h = g(8, &[(0, 1), (1, 2), (3, 4), (4, 5), (6, 0), (7, 0), (3, 1)]);
        let a: VertexSet = [6, 7].into_iter().collect();
        let paths = [Path3::new(0, 1, 2), Path3::new(3, 4, 5)];
        let cls = classify(&h, &a, &paths);
        assert_eq!(cls.paths[0].class, PathClass::EndAttached);
        assert_eq!(cls.paths[0].attached, vec![0]);
        assert_eq!(cls.paths[0].free, vec![1, 2]);
        assert_eq!(cls.paths[1].class, PathClass::Free);
        assert_eq!(cls.paths[1].pointers, vec![3]);
        assert_eq!(cls.paths[1].targets, [0].into_iter().collect());
        assert!(!cls.paths[0].bad && !cls.paths[1].bad);
        let c = cls.counters;
        assert_eq!((c.x1, c.y1, c.k1()), (1, 1, 2));
        assert!(first_violation(&h, &VertexSet::new(), &cls).is_none());
    }

    #[test]
    fn classify_single_anchor_beats_attachment_count() {
        // one singleton anchor 3 adjacent to all three path vertices
        let h = g(4, &[(0, 1), (1, 2), (3, 0), (3, 1), (3, 2)]);
        let a: VertexSet = [3].into_iter().collect();
        let cls = classify(&h, &a, &[Path3::new(0, 1, 2)]);
        assert_eq!(cls.paths[0].class, PathClass::SingleAnchor);
        assert_eq!(cls.counters.w2, 1);
    }

    #[test]
    fn mixed_middle_is_rotated_onto_its_pair() {
        // L = (0,1,2) with middle 1 seeing singleton {3} and pair {4,5}
        let h = g(6, &[(0, 1), (1, 2), (3, 1), (4, 1), (4, 5)]);
        match build_crucial_partition(&h) {
            BuildOutcome::Built(part, cls) => {
                assert!(validate_crucial_partition(&h, &part).is_ok());
                assert!(part.z.is_empty(), "small case should not need Z");
                // no mid-attached path with a mixed middle remains
                assert!(cls
                    .paths
                    .iter()
                    .all(|i| !(i.class == PathClass::MidAttached && i.touches_a0 && i.touches_a1)));
            }
            BuildOutcome::Fallback { reason } => panic!("unexpected fallback: {reason}"),
        }
    }

    #[test]
    fn k4_path_is_single_anchored() {
        // K4: the leftover vertex is one singleton component adjacent to
        // all three path vertices — legal as is
        let h = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        match build_crucial_partition(&h) {
            BuildOutcome::Built(part, cls) => {
                assert!(validate_crucial_partition(&h, &part).is_ok());
                assert!(part.z.is_empty());
                assert_eq!(cls.paths[0].class, PathClass::SingleAnchor);
                assert_eq!((cls.counters.w2, cls.counters.k1()), (1, 1));
            }
            BuildOutcome::Fallback { reason } => panic!("unexpected fallback: {reason}"),
        }
    }

    #[test]
    fn two_end_anchors_force_a_transfer() {
        // path (1,0,2) with separate singleton anchors at both ends; no
        // second 3-path fits, so the whole 5-vertex cluster moves to Z
        let h = g(5, &[(0, 1), (0, 2), (1, 3), (2, 4)]);
        match build_crucial_partition(&h) {
            BuildOutcome::Built(part, cls) => {
                assert!(validate_crucial_partition(&h, &part).is_ok());
                assert_eq!(part.z.len(), 5);
                assert_eq!(part.z_witness.len(), 1);
                assert_eq!(cls.counters.k1(), 0);
                assert!(part.a.is_empty());
            }
            BuildOutcome::Fallback { reason } => panic!("unexpected fallback: {reason}"),
        }
    }

    #[test]
    fn halt_rule_fires_when_packing_exceeds_budget() {
        // three disjoint 3-paths, k = 2
        let h = g(9, &[(0, 1), (1, 2), (3, 4), (4, 5), (6, 7), (7, 8)]);
        let BuildOutcome::Built(part, cls) = build_crucial_partition(&h) else {
            panic!("expected a partition");
        };
        assert_eq!(cls.counters.k1(), 3);
        assert!(matches!(apply_reduction_rules(&h, 2, &part, &cls), RuleStep::HaltNo));
        assert!(matches!(apply_reduction_rules(&h, 3, &part, &cls), RuleStep::FixedPoint));
    }

    #[test]
    fn audit_holds_on_random_partitions() {
        let mut rng = 0x5eed5eedu64;
        let mut next = move || {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            rng
        };
        let mut audited = 0;
        for n in 6..=14usize {
            for _ in 0..12 {
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in (u + 1)..n {
                        if next() % 100 < 25 {
                            edges.push((u, v));
                        }
                    }
                }
                let h = g(n, &edges);
                let BuildOutcome::Built(part, cls) = build_crucial_partition(&h) else {
                    continue;
                };
                assert!(validate_crucial_partition(&h, &part).is_ok());
                // pick k large enough that the rules reach a fixed point
                let k = n as i64;
                if let RuleStep::FixedPoint = apply_reduction_rules(&h, k, &part, &cls) {
                    let report = audit_bound(&h, &part, &cls, k);
                    for e in &report.entries {
                        assert!(e.ok, "{} failed: {} vs {}", e.name, e.lhs, e.rhs);
                    }
                    audited += 1;
                }
            }
        }
        assert!(audited > 20, "generator never reached an audited fixed point");
    }
}
