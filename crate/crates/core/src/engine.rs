//! The two-phase container algorithm and fingerprint-based reconstruction.
//!
//! A run and its replay share one driver; the only difference is how the
//! question "is the chosen vertex in the independent set?" is answered. In
//! a real run it is answered from `I`; in a replay it is answered from the
//! fingerprints (`T` in Phase I, `T'` in Phase II). Each vertex is asked at
//! most once per phase and leaves the available set immediately afterwards,
//! which is why the two answers always coincide and the container depends
//! on the fingerprints alone.
//!
//! Determinism contract: vertices are ordered by ascending id, candidate
//! subgraphs by the canonical edge order. The "largest degree" of Step I.5
//! is read as the edge count of the vertex's head link-graph restricted to
//! `A \ S` (the proofs use only determinism, not the particular choice).

use serde::{Deserialize, Serialize};

use crate::bounded::{bounded_reaches, greedy_bounded_subgraph, max_bounded_subgraph};
use crate::error::{Error, Result};
use crate::exact::{gt_one_plus_eps_times, le_one_minus_eps_times, rat, rat_u64};
use crate::graph::Graph;
use crate::hypergraph::RootedHypergraph;
use crate::params::{Params, Profile};
use crate::set::VertexSet;

/// How eligibility (`∃ G_v ⊆ HL_v with Δ ≤ s, e ≥ t`) is decided.
/// `Exact` answers the existential exactly; `Greedy` only accepts when the
/// canonical greedy subgraph reaches `t` edges, so greedy-eligible implies
/// exact-eligible but not conversely.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EligibilityMode {
    Exact,
    Greedy,
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub mode: EligibilityMode,
    /// Skips the algorithm-profile validation so desk-scale instances can
    /// run. All unconditional invariants still hold and are still checked.
    pub relaxed: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            mode: EligibilityMode::Exact,
            relaxed: false,
        }
    }
}

/// A vertex certified eligible, together with the witness subgraph.
#[derive(Clone, Debug)]
pub struct EligibilityWitness {
    pub vertex: u32,
    pub subgraph: Graph,
    pub edge_count: u64,
    pub max_degree: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Phase {
    I,
    II,
}

/// One decision point: the chosen vertex, the membership answer, and the
/// state sizes after the step's updates.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StepRecord {
    pub phase: Phase,
    pub step: u64,
    pub chosen: u32,
    pub in_i: bool,
    pub a_size: u64,
    pub l_edges: u64,
}

/// One Phase-I core test: the size of `A \ S` and whether an eligible
/// vertex was found in it.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CoreEvent {
    pub a_minus_s_size: u64,
    pub eligible_found: bool,
}

/// What the trace can certify about the run's hypotheses. The conditional
/// guarantees (|A| ≤ (1−ε)M, |C| ≤ (1−ε/2)M) are only claimed when all
/// three flags hold.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Certification {
    /// Parameter inequalities of the algorithm profile.
    pub algorithm_profile_ok: bool,
    /// The input-size condition `M ≥ (1+100ε)N` from the algorithm's input
    /// contract.
    pub host_size_ok: bool,
    /// Every encountered `A \ S` of size > (1+ε)N contained an eligible
    /// vertex.
    pub niceness_observed: bool,
}

impl Certification {
    pub fn certified(&self) -> bool {
        self.algorithm_profile_ok && self.host_size_ok && self.niceness_observed
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Trace {
    pub universe: u32,
    pub m0: u64,
    pub stop_phase: Phase,
    pub final_a_size: u64,
    pub steps: Vec<StepRecord>,
    pub core_events: Vec<CoreEvent>,
    pub certification: Certification,
}

/// Full record of a container run; serializes to JSON bit-exactly.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ContainerRun {
    pub params: Params,
    pub mode: EligibilityMode,
    pub relaxed: bool,
    pub fingerprint_t: Vec<u32>,
    pub fingerprint_t_prime: Vec<u32>,
    pub container: Vec<u32>,
    pub trace: Trace,
    /// Empty iff every per-step invariant check passed.
    pub invariant_violations: Vec<String>,
}

impl ContainerRun {
    pub fn container_set(&self) -> VertexSet {
        VertexSet::from_ids(self.trace.universe, self.container.iter().copied())
    }

    pub fn fingerprint_t_set(&self) -> VertexSet {
        VertexSet::from_ids(self.trace.universe, self.fingerprint_t.iter().copied())
    }

    pub fn fingerprint_t_prime_set(&self) -> VertexSet {
        VertexSet::from_ids(self.trace.universe, self.fingerprint_t_prime.iter().copied())
    }

    /// `|T| · t ≤ 2sM`, checked in exact rational arithmetic.
    pub fn fingerprint_t_bound_ok(&self) -> bool {
        rat_u64(self.fingerprint_t.len() as u64) * rat(self.params.t)
            <= rat(2.0) * rat(self.params.s) * rat_u64(self.trace.m0)
    }

    /// `|T'| · z ≤ M`, checked in exact rational arithmetic.
    pub fn fingerprint_t_prime_bound_ok(&self) -> bool {
        rat_u64(self.fingerprint_t_prime.len() as u64) * rat(self.params.z)
            <= rat_u64(self.trace.m0)
    }

    /// The conditional size guarantees, asserted only as an implication:
    /// certified hypotheses ⇒ `|A| ≤ (1−ε)M` and `|C| ≤ (1−ε/2)M`.
    pub fn conditional_size_ok(&self) -> bool {
        if !self.trace.certification.certified() {
            return true;
        }
        let m0 = self.trace.m0;
        let a_ok = le_one_minus_eps_times(self.trace.final_a_size, self.params.eps, m0);
        let c_ok = rat_u64(self.container.len() as u64)
            <= (rat(1.0) - rat(self.params.eps) / rat(2.0)) * rat_u64(m0);
        a_ok && c_ok
    }
}

/// Decides eligibility of `v` given its head link-graph restricted to the
/// working set, and produces the canonical witness: the greedy subgraph
/// when it reaches `t` edges, otherwise the deterministic exact maximum.
pub(crate) fn witness_from_link(
    v: u32,
    hl: &Graph,
    s: f64,
    t: f64,
    mode: EligibilityMode,
) -> Option<EligibilityWitness> {
    if (hl.edge_count() as f64) < t {
        return None;
    }
    let greedy = greedy_bounded_subgraph(hl, s);
    if (greedy.edge_count() as f64) >= t {
        return Some(pack_witness(v, greedy));
    }
    match mode {
        EligibilityMode::Greedy => None,
        EligibilityMode::Exact => {
            if !bounded_reaches(hl, s, t) {
                return None;
            }
            let exact = max_bounded_subgraph(hl, s);
            debug_assert!((exact.edge_count() as f64) >= t);
            Some(pack_witness(v, exact))
        }
    }
}

fn pack_witness(v: u32, g: Graph) -> EligibilityWitness {
    let edge_count = g.edge_count();
    let max_degree = g.max_degree();
    EligibilityWitness {
        vertex: v,
        subgraph: g,
        edge_count,
        max_degree,
    }
}

/// Is `v` `(A, s, t)`-eligible in `h`? Returns the witness when it is.
pub fn is_eligible(
    h: &RootedHypergraph,
    a: &VertexSet,
    v: u32,
    s: f64,
    t: f64,
    mode: EligibilityMode,
) -> Option<EligibilityWitness> {
    let hl = h.head_link_graph(v, a);
    witness_from_link(v, &hl, s, t, mode)
}

/// Is `a` an `(s, t)`-core, i.e. free of eligible vertices?
pub fn is_core(h: &RootedHypergraph, a: &VertexSet, s: f64, t: f64, mode: EligibilityMode) -> bool {
    a.iter().all(|v| is_eligible(h, a, v, s, t, mode).is_none())
}

enum Membership<'a> {
    Real(&'a VertexSet),
    Replay {
        t: &'a VertexSet,
        t_prime: &'a VertexSet,
    },
}

impl Membership<'_> {
    fn phase1(&self, v: u32) -> bool {
        match self {
            Membership::Real(i) => i.contains(v),
            Membership::Replay { t, .. } => t.contains(v),
        }
    }

    fn phase2(&self, v: u32) -> bool {
        match self {
            Membership::Real(i) => i.contains(v),
            Membership::Replay { t_prime, .. } => t_prime.contains(v),
        }
    }
}

struct Driver<'h> {
    h: &'h RootedHypergraph,
    head_pairs: Vec<Vec<(u32, u32)>>,
    params: Params,
    opts: RunOptions,
    a: VertexSet,
    link: Graph,
    t_fp: VertexSet,
    t_prime_fp: VertexSet,
    m0: u64,
    step: u64,
    steps: Vec<StepRecord>,
    core_events: Vec<CoreEvent>,
    violations: Vec<String>,
}

impl<'h> Driver<'h> {
    fn new(h: &'h RootedHypergraph, params: Params, opts: RunOptions) -> Self {
        let a = h.vertices().clone();
        let link = Graph::with_vertices(a.iter());
        let m0 = a.len() as u64;
        Driver {
            h,
            head_pairs: h.head_pair_index(),
            params,
            opts,
            a,
            link,
            t_fp: VertexSet::empty(h.universe()),
            t_prime_fp: VertexSet::empty(h.universe()),
            m0,
            step: 0,
            steps: Vec::new(),
            core_events: Vec::new(),
            violations: Vec::new(),
        }
    }

    fn check_state(&mut self) {
        if !self.link.is_simple() {
            self.violations
                .push(format!("step {}: L is not simple", self.step));
        }
        let max_deg = self.link.max_degree();
        if (max_deg as f64) > 2.0 * self.params.s {
            self.violations.push(format!(
                "step {}: max degree of L = {} exceeds 2s = {}",
                self.step,
                max_deg,
                2.0 * self.params.s
            ));
        }
        if !self.link.vertices_within(&self.a) {
            self.violations
                .push(format!("step {}: V(L) is not contained in A", self.step));
        }
    }

    fn record(&mut self, phase: Phase, chosen: u32, in_i: bool) {
        self.step += 1;
        self.steps.push(StepRecord {
            phase,
            step: self.step,
            chosen,
            in_i,
            a_size: self.a.len() as u64,
            l_edges: self.link.edge_count(),
        });
    }

    /// The head link-graph of `v` restricted to `within`, from the index.
    fn link_graph_of(&self, v: u32, within: &VertexSet) -> Graph {
        let mut g = Graph::new();
        for &(x, y) in &self.head_pairs[v as usize] {
            if within.contains(x) && within.contains(y) {
                g.add_edge(x, y);
            }
        }
        g
    }

    /// Scans `A \ S` for eligible vertices and returns the one of maximum
    /// head-link edge count (ties to the smallest id), with its witness.
    fn best_eligible(&self, a_minus_s: &VertexSet) -> Option<(u64, EligibilityWitness)> {
        let (s, t) = (self.params.s, self.params.t);
        let mut best: Option<(u64, EligibilityWitness)> = None;
        for v in a_minus_s.iter() {
            if (self.head_pairs[v as usize].len() as f64) < t {
                continue;
            }
            let hl = self.link_graph_of(v, a_minus_s);
            let count = hl.edge_count();
            if (count as f64) < t {
                continue;
            }
            if best.as_ref().is_some_and(|(bc, _)| count <= *bc) {
                continue;
            }
            if let Some(w) = witness_from_link(v, &hl, s, t, self.opts.mode) {
                best = Some((count, w));
            }
        }
        best
    }

    fn phase1(&mut self, membership: &Membership) -> Option<VertexSet> {
        loop {
            if le_one_minus_eps_times(self.a.len() as u64, self.params.eps, self.m0) {
                return Some(self.a.union(&self.t_fp));
            }
            let mut s_set = VertexSet::empty(self.h.universe());
            for u in self.a.iter() {
                if (self.link.neighbor_count(u) as f64) >= self.params.s {
                    s_set.insert(u);
                }
            }
            let a_minus_s = self.a.difference(&s_set);
            let found = self.best_eligible(&a_minus_s);
            self.core_events.push(CoreEvent {
                a_minus_s_size: a_minus_s.len() as u64,
                eligible_found: found.is_some(),
            });
            let Some((_, witness)) = found else {
                // A \ S is an (s, t)-core.
                return None;
            };
            let v = witness.vertex;
            let in_i = membership.phase1(v);
            if in_i {
                self.t_fp.insert(v);
                self.a.remove(v);
                self.link.union_add(&witness.subgraph);
                self.link.remove_vertex(v);
            } else {
                self.a.remove(v);
                self.link.remove_vertex(v);
            }
            self.record(Phase::I, v, in_i);
            self.check_state();
        }
    }

    fn phase2(&mut self, membership: &Membership) -> VertexSet {
        loop {
            let top = self.link.max_degree_vertex();
            let Some((v, d)) = top else {
                return self.a.union(&self.t_fp).union(&self.t_prime_fp);
            };
            if (d as f64) < self.params.z {
                return self.a.union(&self.t_fp).union(&self.t_prime_fp);
            }
            let in_i = membership.phase2(v);
            if in_i {
                self.t_prime_fp.insert(v);
                let mut doomed: Vec<u32> = self.link.neighbors(v).collect();
                doomed.push(v);
                for u in doomed {
                    self.a.remove(u);
                    self.link.remove_vertex(u);
                }
            } else {
                self.a.remove(v);
                self.link.remove_vertex(v);
            }
            self.record(Phase::II, v, in_i);
            self.check_state();
        }
    }

    fn execute(mut self, membership: Membership) -> ContainerRun {
        self.check_state();
        let (container, stop_phase) = match self.phase1(&membership) {
            Some(c) => (c, Phase::I),
            None => (self.phase2(&membership), Phase::II),
        };
        let host_size_ok = rat_u64(self.m0)
            >= (rat(1.0) + rat(100.0) * rat(self.params.eps)) * rat(self.params.n_target);
        let niceness_observed = self.core_events.iter().all(|ev| {
            !gt_one_plus_eps_times(ev.a_minus_s_size, self.params.eps, self.params.n_target)
                || ev.eligible_found
        });
        let certification = Certification {
            algorithm_profile_ok: self
                .params
                .profile_violations(Profile::Algorithm)
                .is_empty(),
            host_size_ok,
            niceness_observed,
        };
        ContainerRun {
            params: self.params,
            mode: self.opts.mode,
            relaxed: self.opts.relaxed,
            fingerprint_t: self.t_fp.to_sorted_vec(),
            fingerprint_t_prime: self.t_prime_fp.to_sorted_vec(),
            container: container.to_sorted_vec(),
            trace: Trace {
                universe: self.h.universe(),
                m0: self.m0,
                stop_phase,
                final_a_size: self.a.len() as u64,
                steps: self.steps,
                core_events: self.core_events,
                certification,
            },
            invariant_violations: self.violations,
        }
    }
}

fn validate_run_inputs(h: &RootedHypergraph, params: &Params, opts: &RunOptions) -> Result<()> {
    let sanity = params.sanity_violations();
    if !sanity.is_empty() {
        return Err(Error::InvalidParams(sanity));
    }
    if !opts.relaxed {
        params.validate(Profile::Algorithm)?;
    }
    if params.m != h.vertex_count() as u64 {
        return Err(Error::InvalidParams(vec![format!(
            "params.m = {} must equal the host's vertex count {}",
            params.m,
            h.vertex_count()
        )]));
    }
    if let Err(v) = h.verify_rooted_with(1) {
        return Err(Error::InvalidInput(format!(
            "hypergraph is not 1-rooted: pair {:?} has {} head-outside edges",
            v.pair,
            v.edges.len()
        )));
    }
    Ok(())
}

/// Runs the two-phase container algorithm on independent set `i_set`.
pub fn run_container(
    h: &RootedHypergraph,
    i_set: &VertexSet,
    params: &Params,
    opts: &RunOptions,
) -> Result<ContainerRun> {
    validate_run_inputs(h, params, opts)?;
    if !i_set.is_subset_of(h.vertices()) {
        return Err(Error::InvalidInput(
            "independent set contains vertices outside the host".into(),
        ));
    }
    if let Some(e) = h.find_contained_edge(i_set) {
        return Err(Error::NotIndependent { edge: e.triple });
    }
    Ok(Driver::new(h, *params, *opts).execute(Membership::Real(i_set)))
}

/// Replays the algorithm answering membership queries from the
/// fingerprints. No validation against any independent set is performed;
/// arbitrary fingerprints still produce a deterministic set.
pub fn reconstruct_run(
    h: &RootedHypergraph,
    t_fp: &VertexSet,
    t_prime_fp: &VertexSet,
    params: &Params,
    opts: &RunOptions,
) -> Result<ContainerRun> {
    validate_run_inputs(h, params, opts)?;
    Ok(Driver::new(h, *params, *opts).execute(Membership::Replay {
        t: t_fp,
        t_prime: t_prime_fp,
    }))
}

/// The container reconstructed from fingerprints alone.
pub fn reconstruct(
    h: &RootedHypergraph,
    t_fp: &VertexSet,
    t_prime_fp: &VertexSet,
    params: &Params,
    opts: &RunOptions,
) -> Result<VertexSet> {
    Ok(reconstruct_run(h, t_fp, t_prime_fp, params, opts)?.container_set())
}
