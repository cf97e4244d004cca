//! Iterating the single-step container lemma and collecting families.
//!
//! Each level runs the two-phase algorithm on the current host and replaces
//! the host by the subhypergraph induced on the container. Levels continue
//! while the host is larger than `(1+100ε)N` and containers strictly
//! shrink; a level that fails to shrink ends the iteration with an explicit
//! status instead of looping.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::engine::{run_container, RunOptions};
use crate::error::{Error, Result};
use crate::exact::{gt_one_plus_eps_times, rat, rat_u64};
use crate::hypergraph::RootedHypergraph;
use crate::params::Params;
use crate::set::VertexSet;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum IterationStatus {
    /// Stopped because the host reached `(1+100ε)N`.
    ReachedTarget,
    /// A level produced a container no smaller than its host.
    HypothesisFailed,
}

/// One fingerprint pair per level plus audit data.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ContainerRecord {
    pub container: Vec<u32>,
    pub universe: u32,
    /// Phase-I fingerprints `T_1, …, T_p`.
    pub fingerprints_t: Vec<Vec<u32>>,
    /// Phase-II fingerprints `S_1, …, S_p` (per-level `T'`).
    pub fingerprints_s: Vec<Vec<u32>>,
    /// Host size at the start of each level.
    pub host_sizes: Vec<u64>,
    pub levels: usize,
    pub status: IterationStatus,
    /// Whether each level's trace certified its hypotheses.
    pub certified: Vec<bool>,
    /// Literal per-level comparison `|T_i| ≤ 2sM(1−ε/2)^i / t` with `M`
    /// the original host size (reported, not asserted; the sound per-level
    /// bound uses the level's own host size).
    pub remark_t_bound: Vec<bool>,
}

impl ContainerRecord {
    pub fn container_set(&self) -> VertexSet {
        VertexSet::from_ids(self.universe, self.container.iter().copied())
    }

    /// Per-level `|T_i| · t ≤ 2 s M_i` in exact rationals.
    pub fn level_t_bounds_ok(&self, params: &Params) -> bool {
        self.fingerprints_t
            .iter()
            .zip(&self.host_sizes)
            .all(|(t_i, &m_i)| {
                rat_u64(t_i.len() as u64) * rat(params.t)
                    <= rat(2.0) * rat(params.s) * rat_u64(m_i)
            })
    }

    /// Per-level `|S_i| · z ≤ M_i` in exact rationals (with the default
    /// `z = 4εs` this is the fingerprint bound `|S_i| ≤ M_i/(4εs)`).
    pub fn level_s_bounds_ok(&self, params: &Params) -> bool {
        self.fingerprints_s
            .iter()
            .zip(&self.host_sizes)
            .all(|(s_i, &m_i)| rat_u64(s_i.len() as u64) * rat(params.z) <= rat_u64(m_i))
    }

    /// `M_{i+1} ≤ (1−ε/2)·M_i` for every level that certified.
    pub fn certified_shrinkage_ok(&self, params: &Params) -> bool {
        let half_eps = rat(params.eps) / rat(2.0);
        for i in 0..self.levels {
            if !self.certified[i] {
                continue;
            }
            let next = if i + 1 < self.levels {
                self.host_sizes[i + 1]
            } else {
                self.container.len() as u64
            };
            if rat_u64(next) > (rat(1.0) - half_eps.clone()) * rat_u64(self.host_sizes[i]) {
                return false;
            }
        }
        true
    }
}

/// Runs the container algorithm level by level until the host is at most
/// `(1+100ε)N` or a level fails to shrink.
pub fn iterate_containers(
    h: &RootedHypergraph,
    i_set: &VertexSet,
    params: &Params,
    opts: &RunOptions,
) -> Result<ContainerRecord> {
    if let Some(e) = h.find_contained_edge(i_set) {
        return Err(Error::NotIndependent { edge: e.triple });
    }
    let mut host = h.clone();
    let mut record = ContainerRecord {
        container: host.vertices().to_sorted_vec(),
        universe: h.universe(),
        fingerprints_t: Vec::new(),
        fingerprints_s: Vec::new(),
        host_sizes: Vec::new(),
        levels: 0,
        status: IterationStatus::ReachedTarget,
        certified: Vec::new(),
        remark_t_bound: Vec::new(),
    };
    let m_original = host.vertex_count() as f64;
    let gamma = 1.0 - params.eps / 2.0;
    loop {
        let m_i = host.vertex_count() as u64;
        // Stop once |host| ≤ (1+100ε)N.
        if !gt_one_plus_eps_times(m_i, 100.0 * params.eps, params.n_target) {
            record.status = IterationStatus::ReachedTarget;
            return Ok(record);
        }
        let level_params = params.with_m(m_i);
        let run = run_container(&host, i_set, &level_params, opts)?;
        let c_set = run.container_set();
        let level = record.levels + 1;
        record.host_sizes.push(m_i);
        record.fingerprints_t.push(run.fingerprint_t.clone());
        record.fingerprints_s.push(run.fingerprint_t_prime.clone());
        record
            .certified
            .push(run.trace.certification.certified());
        record.remark_t_bound.push(
            run.fingerprint_t.len() as f64
                <= 2.0 * params.s * m_original * gamma.powi(level as i32) / params.t,
        );
        record.levels = level;
        record.container = run.container;
        if c_set.len() as u64 >= m_i {
            record.status = IterationStatus::HypothesisFailed;
            return Ok(record);
        }
        host = host.induced(&c_set);
    }
}

/// A container family over a collection of independent sets, deduplicated
/// by canonical encoding, with the per-set assignment.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ContainerFamily {
    /// Distinct containers as sorted vertex lists, sorted lexicographically.
    pub containers: Vec<Vec<u32>>,
    /// Index into `containers` for each input set.
    pub assignment: Vec<usize>,
    /// Number of distinct fingerprint sequences observed.
    pub distinct_fingerprints: usize,
}

/// Runs `iterate_containers` over every supplied independent set. Errors
/// identify the offending input when one is not independent. The result is
/// independent of input order up to the assignment indices.
pub fn collect_container_family(
    h: &RootedHypergraph,
    sets: &[VertexSet],
    params: &Params,
    opts: &RunOptions,
) -> Result<ContainerFamily> {
    for (idx, i_set) in sets.iter().enumerate() {
        if let Some(e) = h.find_contained_edge(i_set) {
            return Err(Error::InvalidInput(format!(
                "input set #{idx} is not independent: edge {:?} lies inside it",
                e.triple
            )));
        }
    }
    let mut containers: Vec<Vec<u32>> = Vec::new();
    let mut assignment = Vec::with_capacity(sets.len());
    let mut fingerprints: std::collections::BTreeSet<Vec<Vec<u32>>> =
        std::collections::BTreeSet::new();
    let mut records = Vec::with_capacity(sets.len());
    for i_set in sets {
        let rec = iterate_containers(h, i_set, params, opts)?;
        let mut fp = rec.fingerprints_t.clone();
        fp.extend(rec.fingerprints_s.clone());
        fingerprints.insert(fp);
        records.push(rec);
    }
    for rec in &records {
        match containers.binary_search(&rec.container) {
            Ok(pos) => assignment.push(pos),
            Err(pos) => {
                containers.insert(pos, rec.container.clone());
                // Earlier assignments pointing at or past `pos` shift by one.
                for a in assignment.iter_mut() {
                    if *a >= pos {
                        *a += 1;
                    }
                }
                assignment.push(pos);
            }
        }
    }
    Ok(ContainerFamily {
        containers,
        assignment,
        distinct_fingerprints: fingerprints.len(),
    })
}

/// Deterministic pseudorandom 1-rooted hypergraph. Every unordered pair
/// `{x, y}` independently receives (with probability `density`) one edge
/// `{x, y, h}` headed at a uniformly chosen third vertex, so each pair has
/// at most one head-outside edge by construction.
pub fn generate_synthetic_rooted(
    m: u32,
    density: f64,
    seed: u64,
) -> Result<RootedHypergraph> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InfeasibleDensity(density));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut triples = Vec::new();
    if m >= 3 {
        for x in 0..m {
            for y in (x + 1)..m {
                if rng.gen::<f64>() < density {
                    let mut h = rng.gen_range(0..m - 2);
                    // Skip over x and y to pick a head outside the pair.
                    if h >= x {
                        h += 1;
                    }
                    if h >= y {
                        h += 1;
                    }
                    triples.push((x, y, h, h));
                }
            }
        }
    }
    RootedHypergraph::build(m, &triples, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::EligibilityMode;
    use crate::unionfree::build_union_hypergraph;

    fn relaxed() -> RunOptions {
        RunOptions {
            mode: EligibilityMode::Exact,
            relaxed: true,
        }
    }

    #[test]
    fn edgeless_small_host_iterates_zero_levels() {
        let h = RootedHypergraph::build(6, &[], 1).unwrap();
        // M = 6 ≤ (1+100·0.1)·N with N = 1: 11 ≥ 6.
        let p = Params::new(0.1, 1.0, 1.0, 1.0, 6);
        let rec = iterate_containers(&h, &VertexSet::empty(6), &p, &relaxed()).unwrap();
        assert_eq!(rec.levels, 0);
        assert_eq!(rec.container, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(rec.status, IterationStatus::ReachedTarget);
    }

    #[test]
    fn edgeless_large_host_stalls_explicitly() {
        let h = RootedHypergraph::build(60, &[], 1).unwrap();
        let p = Params::new(0.1, 1.0, 1.0, 1.0, 60);
        let rec = iterate_containers(&h, &VertexSet::empty(60), &p, &relaxed()).unwrap();
        assert_eq!(rec.levels, 1);
        assert_eq!(rec.status, IterationStatus::HypothesisFailed);
        assert_eq!(rec.container.len(), 60);
    }

    #[test]
    fn containment_holds_at_every_level() {
        let h = generate_synthetic_rooted(30, 0.7, 11).unwrap();
        let i = greedy_independent(&h, 5);
        let p = Params::new(0.1, 1.0, 1.0, 2.0, 30);
        let rec = iterate_containers(&h, &i, &p, &relaxed()).unwrap();
        assert!(i.is_subset_of(&rec.container_set()));
        assert!(rec.level_t_bounds_ok(&p));
        assert!(rec.level_s_bounds_ok(&p));
        assert!(rec.certified_shrinkage_ok(&p));
        assert!(rec.levels >= 1);
    }

    fn greedy_independent(h: &RootedHypergraph, seed: u64) -> VertexSet {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<u32> = h.vertices().to_sorted_vec();
        for i in (1..order.len()).rev() {
            let j = rng.gen_range(0..=i);
            order.swap(i, j);
        }
        let mut i_set = VertexSet::empty(h.universe());
        for v in order {
            i_set.insert(v);
            if h.find_contained_edge(&i_set).is_some() {
                i_set.remove(v);
            }
        }
        i_set
    }

    #[test]
    fn family_collection_covers_all_independent_sets_of_p3() {
        let h = build_union_hypergraph(3).unwrap();
        // Enumerate every independent set of the 8-vertex union hypergraph.
        let mut sets = Vec::new();
        for mask in 0u32..(1 << 8) {
            let s = VertexSet::from_ids(8, (0..8).filter(|&v| mask >> v & 1 == 1));
            if h.is_independent(&s) {
                sets.push(s);
            }
        }
        assert_eq!(sets.len(), 124);
        let p = Params::new(0.1, 1.0, 1.0, 2.0, 8);
        let fam = collect_container_family(&h, &sets, &p, &relaxed()).unwrap();
        for (i_set, &c_idx) in sets.iter().zip(&fam.assignment) {
            let c = VertexSet::from_ids(8, fam.containers[c_idx].iter().copied());
            assert!(i_set.is_subset_of(&c));
        }
        assert!(fam.containers.len() <= fam.distinct_fingerprints);
        assert!(fam.containers.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn family_of_just_the_empty_set_yields_one_container() {
        let h = build_union_hypergraph(2).unwrap();
        let p = Params::new(0.1, 1.0, 1.0, 2.0, 4);
        let fam =
            collect_container_family(&h, &[VertexSet::empty(4)], &p, &relaxed()).unwrap();
        assert_eq!(fam.containers.len(), 1);
        assert_eq!(fam.assignment, vec![0]);
    }

    #[test]
    fn family_rejects_non_independent_member() {
        let h = build_union_hypergraph(2).unwrap();
        let good = VertexSet::from_ids(4, [1, 2]);
        let bad = VertexSet::from_ids(4, [1, 2, 3]);
        let p = Params::new(0.1, 1.0, 1.0, 2.0, 4);
        let err =
            collect_container_family(&h, &[good, bad], &p, &relaxed()).unwrap_err();
        assert!(err.to_string().contains("#1"));
    }

    #[test]
    fn synthetic_generator_is_rooted_and_reproducible() {
        let a = generate_synthetic_rooted(12, 0.5, 42).unwrap();
        let b = generate_synthetic_rooted(12, 0.5, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.verify_rooted_with(1).is_ok());
        assert!(a.edge_count() > 0);
        let c = generate_synthetic_rooted(12, 0.5, 43).unwrap();
        assert_ne!(a, c);
        assert_eq!(generate_synthetic_rooted(12, 0.0, 1).unwrap().edge_count(), 0);
        assert!(generate_synthetic_rooted(12, 1.5, 1).is_err());
    }
}
