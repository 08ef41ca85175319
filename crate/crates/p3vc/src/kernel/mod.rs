//! Kernelization: shrink an instance (G, k) to an equivalent one of
//! bounded size, collecting forced cover vertices along the way.
//!
//! Simple mode alternates a packing-size check with two crown reductions
//! until the graph has at most 12k vertices. Crucial mode maintains the
//! partition from [`crucial`] and reaches 5k, degrading to the simple
//! bound when the partition builder gives up.

pub mod crucial;
pub mod decomposition;

use crate::graph::{Graph, Vertex, VertexSet};
use crucial::{
    apply_reduction_rules, audit_bound, build_crucial_partition, AuditReport, BuildOutcome,
    RuleStep,
};
use decomposition::{
    find_good_decomposition, reduce_by_decomposition, ASideView, DecompMode, GoodDecomposition,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelMode {
    Simple,
    Crucial,
}

#[derive(Clone, Debug)]
pub enum KernelOutcome {
    Reduced { graph: Graph, k: usize },
    /// the instance is already decided: no cover of the remaining budget exists
    HaltNo,
}

#[derive(Clone, Debug)]
pub struct KernelResult {
    pub outcome: KernelOutcome,
    /// vertices (original ids) that every optimal cover of the original
    /// instance can be assumed to contain
    pub forced_cover: VertexSet,
    pub mode: KernelMode,
    /// guaranteed kernel size as a multiple of k: 5, or 12 after a fallback
    pub size_bound_claim: usize,
    /// crucial mode only: the partition builder degraded to the simple path
    pub fallback: bool,
    pub trace: Vec<String>,
    /// inequality audit from the crucial fixed point
    pub audit: Option<AuditReport>,
    /// kernel vertex id → original vertex id
    pub map_to_original: Vec<Vertex>,
}

/// A structural object produced mid-run, paired with the intermediate graph
/// it was built on. Emitted through [`kernelize_observed`].
pub enum KernelEvent<'a> {
    Crown(&'a Graph, &'a GoodDecomposition),
    Partition(&'a Graph, &'a crucial::CrucialPartition),
}

struct State {
    g: Graph,
    k: i64,
    to_orig: Vec<Vertex>,
    forced: VertexSet,
    trace: Vec<String>,
}

impl State {
    fn apply(&mut self, d: &GoodDecomposition, label: &str) {
        let (g2, k2, c, map) = reduce_by_decomposition(&self.g, self.k, d);
        self.forced.extend(c.iter().map(|&v| self.to_orig[v]));
        self.to_orig = map.new_to_old.iter().map(|&i| self.to_orig[i]).collect();
        self.trace.push(format!(
            "{label}: -{} vertices, -{} budget",
            d.i.len() + d.c.len(),
            d.c.len()
        ));
        self.g = g2;
        self.k = k2;
    }
}

/// Returns true when the instance is decided negatively.
fn simple_loop(st: &mut State, obs: &mut dyn FnMut(KernelEvent<'_>)) -> bool {
    loop {
        let s = st.g.maximal_p3_packing();
        if (s.len() as i64) > st.k {
            st.trace
                .push(format!("halt: packing of size {} exceeds budget {}", s.len(), st.k));
            return true;
        }
        let used = s.vertex_set();
        let a: VertexSet = st.g.vertices().filter(|v| !used.contains(v)).collect();
        let asv = ASideView::build(&st.g, &a);
        if asv.lemma_condition() {
            let d = find_good_decomposition(&st.g, &asv, DecompMode::General)
                .expect("component surplus guarantees a crown");
            obs(KernelEvent::Crown(&st.g, &d));
            st.apply(&d, "crown(A)");
            continue;
        }
        if asv.corollary_condition() {
            let d = find_good_decomposition(&st.g, &asv, DecompMode::EdgesOnly)
                .expect("pair surplus guarantees a crown");
            obs(KernelEvent::Crown(&st.g, &d));
            st.apply(&d, "crown2(A)");
            continue;
        }
        // both conditions failed with |S| <= k, which caps the residue
        assert!(a.len() as i64 <= 9 * st.k);
        assert!(st.g.n() as i64 <= 12 * st.k);
        st.trace.push("fixed point".into());
        return false;
    }
}

fn crucial_loop(
    st: &mut State,
    obs: &mut dyn FnMut(KernelEvent<'_>),
) -> (bool, bool, Option<AuditReport>) {
    loop {
        match build_crucial_partition(&st.g) {
            BuildOutcome::Fallback { reason } => {
                st.trace.push(format!("fallback({reason})"));
                let halted = simple_loop(st, obs);
                return (halted, true, None);
            }
            BuildOutcome::Built(part, cls) => {
                obs(KernelEvent::Partition(&st.g, &part));
                match apply_reduction_rules(&st.g, st.k, &part, &cls) {
                    RuleStep::HaltNo => {
                        st.trace.push(format!(
                            "halt: {} paths plus |Z| = {} exceed budget {}",
                            cls.counters.k1(),
                            part.z.len(),
                            st.k
                        ));
                        return (true, false, None);
                    }
                    RuleStep::Reduce(d, label) => {
                        obs(KernelEvent::Crown(&st.g, &d));
                        st.apply(&d, label);
                    }
                    RuleStep::FixedPoint => {
                        let report = audit_bound(&st.g, &part, &cls, st.k);
                        debug_assert!(report.ok, "size audit failed at the fixed point");
                        st.trace.push("fixed point".into());
                        return (false, false, Some(report));
                    }
                }
            }
        }
    }
}

/// Reduce (g, k). The result is equivalent: g has a cover of size ≤ k iff
/// the kernel has one of size ≤ the returned budget; `forced_cover` plus
/// any optimal kernel cover (pulled back through `map_to_original`) is an
/// optimal-size cover of g.
pub fn kernelize(g: &Graph, k: usize, mode: KernelMode) -> KernelResult {
    kernelize_observed(g, k, mode, &mut |_| {})
}

/// [`kernelize`], additionally reporting every crown decomposition and
/// crucial partition as it is produced, paired with the intermediate graph
/// it was built on. Lets a caller re-validate each object independently.
pub fn kernelize_observed(
    g: &Graph,
    k: usize,
    mode: KernelMode,
    obs: &mut dyn FnMut(KernelEvent<'_>),
) -> KernelResult {
    let mut st = State {
        g: g.clone(),
        k: k as i64,
        to_orig: g.vertices().collect(),
        forced: VertexSet::new(),
        trace: Vec::new(),
    };
    let (halted, fallback, audit) = match mode {
        KernelMode::Simple => (simple_loop(&mut st, obs), false, None),
        KernelMode::Crucial => crucial_loop(&mut st, obs),
    };
    let size_bound_claim = match (mode, fallback) {
        (KernelMode::Crucial, false) => 5,
        _ => 12,
    };
    let outcome = if halted {
        KernelOutcome::HaltNo
    } else {
        debug_assert!(st.k >= 0, "fixed points keep a nonnegative budget");
        KernelOutcome::Reduced { graph: st.g, k: st.k as usize }
    };
    KernelResult {
        outcome,
        forced_cover: st.forced,
        mode,
        size_bound_claim,
        fallback,
        trace: st.trace,
        audit,
        map_to_original: st.to_orig,
    }
}
