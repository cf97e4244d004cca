//! Supersaturation toolkit: Kneser graphs and their spectra, the Expander
//! Mixing Lemma, the small-distance union-pair graphs, the degree-bounded
//! embedding construction, and the good/bad/horrible permutation counting
//! identity — everything desk-checkable behind the supersaturation theorem.

use itertools::Itertools;
use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::binomial_u64;
use crate::engine::{witness_from_link, EligibilityMode, EligibilityWitness};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::unionfree::{build_union_hypergraph, SetFamily};

/// Set-difference size at which a bad pair counts as horrible.
pub const HORRIBLE_DISTANCE: u32 = 11;

/// Scale factor in the eligibility target `t = ε²n²/10^40`.
pub const SUPERSAT_T_DENOMINATOR: f64 = 1e40;

/// Regularity and spectral facts of the Kneser graph `KG(m, k)`.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct KneserStats {
    pub m: u32,
    pub k: u32,
    /// `N = C(m, k)`.
    pub n_vertices: u64,
    /// `D = C(m-k, k)`.
    pub d: u64,
    /// `λ = -k/(m-k) · D`.
    pub lambda_formula: f64,
}

impl KneserStats {
    /// `λ` as an exact integer (it always is one: `kD/(m-k) = C(m-k-1, k-1)`).
    pub fn lambda_formula_int(&self) -> i64 {
        let num = self.k as i128 * self.d as i128;
        let den = (self.m - self.k) as i128;
        debug_assert_eq!(num % den, 0);
        -(num / den) as i64
    }
}

pub fn kneser_stats(m: u32, k: u32) -> Result<KneserStats> {
    if k < 1 || 2 * k > m {
        return Err(Error::InvalidInput(format!(
            "Kneser graph needs 1 <= k and 2k <= m, got m={m}, k={k}"
        )));
    }
    let n_vertices = binomial_u64(m as u64, k as u64).ok_or(Error::SizeGuard {
        what: "C(m, k)",
        got: u64::MAX,
        limit: u64::MAX,
    })?;
    let d = binomial_u64((m - k) as u64, k as u64).expect("smaller than C(m,k)");
    let lambda_formula = -(k as f64) / ((m - k) as f64) * d as f64;
    Ok(KneserStats {
        m,
        k,
        n_vertices,
        d,
        lambda_formula,
    })
}

/// Builds `KG(m, k)`: vertices are the k-subsets of `[m]` in lexicographic
/// order of their sorted element lists, edges join disjoint subsets.
pub fn kneser_graph(m: u32, k: u32) -> Result<Graph> {
    let stats = kneser_stats(m, k)?;
    if stats.n_vertices > 10_000 {
        return Err(Error::SizeGuard {
            what: "C(m, k) vertices of the Kneser graph",
            got: stats.n_vertices,
            limit: 10_000,
        });
    }
    let words = (m as usize).div_ceil(64);
    let mut masks: Vec<Vec<u64>> = Vec::with_capacity(stats.n_vertices as usize);
    for combo in (0..m).combinations(k as usize) {
        let mut blocks = vec![0u64; words];
        for e in combo {
            blocks[e as usize / 64] |= 1u64 << (e % 64);
        }
        masks.push(blocks);
    }
    let mut g = Graph::with_vertices(0..masks.len() as u32);
    for i in 0..masks.len() {
        for j in (i + 1)..masks.len() {
            if masks[i].iter().zip(&masks[j]).all(|(a, b)| a & b == 0) {
                g.add_edge(i as u32, j as u32);
            }
        }
    }
    Ok(g)
}

/// Smallest adjacency eigenvalue of a dense symmetric eigensolve.
pub fn min_eigenvalue(g: &Graph) -> Result<f64> {
    let n = g.vertex_count();
    if n > 1000 {
        return Err(Error::SizeGuard {
            what: "vertex count for the dense eigensolve",
            got: n as u64,
            limit: 1000,
        });
    }
    if n == 0 {
        return Err(Error::InvalidInput("eigensolve of the empty graph".into()));
    }
    let ids: Vec<u32> = g.vertices().collect();
    let pos: std::collections::HashMap<u32, usize> =
        ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj = DMatrix::<f64>::zeros(n, n);
    for (u, v, mult) in g.edges() {
        let (i, j) = (pos[&u], pos[&v]);
        adj[(i, j)] = mult as f64;
        adj[(j, i)] = mult as f64;
    }
    let eigen = SymmetricEigen::new(adj);
    Ok(eigen
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min))
}

/// Right-hand side of the Expander Mixing Lemma:
/// `(D/2N)|S|² + (λ/2N)|S|(N−|S|)`.
pub fn eml_lower_bound(d: f64, n_vertices: u64, lambda: f64, size: u64) -> f64 {
    let n = n_vertices as f64;
    let sz = size as f64;
    d / (2.0 * n) * sz * sz + lambda / (2.0 * n) * sz * (n - sz)
}

/// Result of an EML sweep: the worst subset and its slack
/// `e(G[S]) − bound`. Verified with 1e-9 slack against float rounding.
#[derive(Clone, Debug)]
pub struct EmlCheck {
    pub holds: bool,
    pub worst_slack: f64,
    pub worst_subset: Vec<u32>,
    pub subsets_checked: u64,
}

fn eml_scan(
    g: &Graph,
    d: f64,
    lambda: f64,
    subsets: impl Iterator<Item = u64>,
    ids: &[u32],
    edges: &[(usize, usize, u32)],
) -> EmlCheck {
    let n = g.vertex_count() as u64;
    let mut worst_slack = f64::INFINITY;
    let mut worst_subset = Vec::new();
    let mut checked = 0u64;
    for mask in subsets {
        let size = mask.count_ones() as u64;
        let e: u64 = edges
            .iter()
            .filter(|&&(i, j, _)| mask >> i & 1 == 1 && mask >> j & 1 == 1)
            .map(|&(_, _, mult)| mult as u64)
            .sum();
        let bound = eml_lower_bound(d, n, lambda, size);
        let slack = e as f64 - bound;
        if slack < worst_slack {
            worst_slack = slack;
            worst_subset = (0..ids.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| ids[i])
                .collect();
        }
        checked += 1;
    }
    EmlCheck {
        holds: worst_slack >= -1e-9,
        worst_slack,
        worst_subset,
        subsets_checked: checked,
    }
}

fn compressed_edges(g: &Graph) -> (Vec<u32>, Vec<(usize, usize, u32)>) {
    let ids: Vec<u32> = g.vertices().collect();
    let pos: std::collections::HashMap<u32, usize> =
        ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges = g
        .edges()
        .map(|(u, v, mult)| (pos[&u], pos[&v], mult))
        .collect();
    (ids, edges)
}

/// Checks `e(G[S]) ≥ eml_lower_bound` over every one of the `2^|V|`
/// subsets. Guarded to 20 vertices; use [`verify_eml_sampled`] beyond.
pub fn verify_eml_exhaustive(g: &Graph, d: f64, lambda: f64) -> Result<EmlCheck> {
    let n = g.vertex_count();
    if n > 20 {
        return Err(Error::SizeGuard {
            what: "vertex count for exhaustive EML verification",
            got: n as u64,
            limit: 20,
        });
    }
    let (ids, edges) = compressed_edges(g);
    Ok(eml_scan(g, d, lambda, 0..(1u64 << n), &ids, &edges))
}

/// Same check over seeded random subsets, for graphs past the exhaustive
/// guard (still ≤ 63 vertices).
pub fn verify_eml_sampled(
    g: &Graph,
    d: f64,
    lambda: f64,
    samples: u32,
    seed: u64,
) -> Result<EmlCheck> {
    let n = g.vertex_count();
    if n > 63 {
        return Err(Error::SizeGuard {
            what: "vertex count for sampled EML verification",
            got: n as u64,
            limit: 63,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = if n == 0 { 0 } else { (!0u64) >> (64 - n) };
    let masks: Vec<u64> = (0..samples).map(|_| rng.gen::<u64>() & full).collect();
    let (ids, edges) = compressed_edges(g);
    Ok(eml_scan(g, d, lambda, masks.into_iter(), &ids, &edges))
}

/// Deterministic random D-regular graph by the pairing model with retry.
pub fn random_regular(n: u32, d: u32, seed: u64) -> Result<Graph> {
    if !(n as u64 * d as u64).is_multiple_of(2) || d >= n {
        return Err(Error::InvalidInput(format!(
            "no {d}-regular graph on {n} vertices (need nd even and d < n)"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..10_000 {
        let mut stubs: Vec<u32> =
            (0..n).flat_map(|v| std::iter::repeat_n(v, d as usize)).collect();
        for i in (1..stubs.len()).rev() {
            let j = rng.gen_range(0..=i);
            stubs.swap(i, j);
        }
        let mut g = Graph::with_vertices(0..n);
        for pair in stubs.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || g.multiplicity(u.min(v), u.max(v)) > 0 {
                continue 'attempt;
            }
            g.add_edge(u, v);
        }
        return Ok(g);
    }
    Err(Error::InvalidInput(format!(
        "pairing model failed to produce a simple {d}-regular graph on {n} vertices"
    )))
}

/// The induced-edge bound for large vertex sets in `KG(m, k)`:
/// with `1+β = |S| / C(m-1, k-1)`, any such `S` induces at least
/// `(1 − 1/(1+β)) · Dm/(N(m−k)) · C(|S|, 2)` edges.
pub fn kneser_induced_bound(m: u32, k: u32, family_size: u64) -> Result<f64> {
    let stats = kneser_stats(m, k)?;
    let threshold = binomial_u64((m - 1) as u64, (k - 1) as u64).expect("within C(m,k)");
    if family_size <= threshold {
        return Err(Error::BetaNonpositive {
            m,
            k,
            family_size,
            threshold,
        });
    }
    let one_plus_beta = family_size as f64 / threshold as f64;
    let pairs = family_size as f64 * (family_size as f64 - 1.0) / 2.0;
    Ok((1.0 - 1.0 / one_plus_beta)
        * (stats.d as f64 * m as f64 / (stats.n_vertices as f64 * (m - k) as f64))
        * pairs)
}

/// The graph on `B_k(A) ∩ F = {B ∈ F : B ⊆ A, |A\B| = k}` with edges the
/// pairs whose union is `A`. Vertex ids are the member bitmasks.
/// Isomorphic to the disjointness graph on complements within `A`.
pub fn union_pair_graph(family: &SetFamily, a_mask: u32, k: u32) -> Graph {
    let members: Vec<u32> = family
        .masks()
        .filter(|&b| b & !a_mask == 0 && (a_mask & !b).count_ones() == k)
        .collect();
    let mut g = Graph::with_vertices(members.iter().copied());
    for i in 0..members.len() {
        for j in (i + 1)..members.len() {
            if members[i] | members[j] == a_mask {
                g.add_edge(members[i], members[j]);
            }
        }
    }
    g
}

/// Degree-bounded embedding: removes the `m` largest-degree vertices `S`
/// (ties towards smaller id) and either returns `G \ S` when its maximum
/// degree is already ≤ m, or builds the star packing from `S` step by
/// step. Output satisfies `Δ(H) ≤ m` and `e(H) ≥ m²/2` whenever
/// `e(G \ S) ≥ m²`.
pub fn embed_bounded_subgraph(g: &Graph, m: u32) -> Result<Graph> {
    if (g.vertex_count() as u64) < m as u64 {
        return Err(Error::InvalidInput(format!(
            "graph has {} vertices, fewer than m = {m}",
            g.vertex_count()
        )));
    }
    let mut by_degree: Vec<u32> = g.vertices().collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let s: Vec<u32> = by_degree[..m as usize].to_vec();
    let mut rest = g.clone();
    for &v in &s {
        rest.remove_vertex(v);
    }
    let required = m as u64 * m as u64;
    if rest.edge_count() < required {
        return Err(Error::EmbeddingPrecondition {
            edges_outside: rest.edge_count(),
            required,
        });
    }
    if rest.max_degree() <= m as u64 {
        return Ok(rest);
    }
    // Constructive branch: every vertex of S has degree > m in G, so the
    // star of s_i can always contribute m-i+1 fresh edges.
    let mut h = Graph::with_vertices(g.vertices());
    for (i, &s_i) in s.iter().enumerate() {
        let want = m as usize - i;
        let fresh: Vec<u32> = g
            .neighbors(s_i)
            .filter(|v| !s[..i].contains(v))
            .take(want)
            .collect();
        if fresh.len() < want {
            return Err(Error::InvalidInput(format!(
                "embedding step {}: only {} fresh neighbours, wanted {want}",
                i + 1,
                fresh.len()
            )));
        }
        for v in fresh {
            h.add_edge(s_i, v);
        }
    }
    debug_assert!(h.max_degree() <= m as u64);
    debug_assert!(h.edge_count() >= required.div_ceil(2));
    Ok(h)
}

/// Classification of a (permutation, set) pair.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum PairClass {
    /// The elements of `A` do not form the first `|A|` elements of `Π`.
    NotAPair,
    /// Condition (i) holds and no proper subset of `A` that is an initial
    /// segment of `Π` lies in the family.
    Good,
    /// Condition (i) holds but some witness `B` exists; `horrible` when a
    /// witness has `|A\B| ≥` the threshold.
    Bad { horrible: bool },
}

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    /// Whether ∅ counts as an initial segment (prefix of length 0).
    pub include_empty_prefix: bool,
    pub horrible_threshold: u32,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            include_empty_prefix: true,
            horrible_threshold: HORRIBLE_DISTANCE,
        }
    }
}

/// Classifies `(Π, A)` against family `F` with the default reading
/// (∅ included as a prefix, horrible threshold 11).
pub fn classify_permutation(perm: &[u32], a_mask: u32, family: &SetFamily) -> PairClass {
    classify_permutation_opts(perm, a_mask, family, &ClassifyOptions::default())
}

pub fn classify_permutation_opts(
    perm: &[u32],
    a_mask: u32,
    family: &SetFamily,
    opts: &ClassifyOptions,
) -> PairClass {
    let a_size = a_mask.count_ones() as usize;
    let mut prefix = 0u32;
    let mut prefixes = Vec::with_capacity(perm.len() + 1);
    prefixes.push(0u32);
    for &x in perm {
        prefix |= 1 << x;
        prefixes.push(prefix);
    }
    if prefixes[a_size] != a_mask {
        return PairClass::NotAPair;
    }
    let start = if opts.include_empty_prefix { 0 } else { 1 };
    let mut bad = false;
    let mut horrible = false;
    for (j, &b) in prefixes.iter().enumerate().take(a_size).skip(start) {
        if family.contains(b) {
            bad = true;
            if (a_size - j) as u32 >= opts.horrible_threshold {
                horrible = true;
            }
        }
    }
    if bad {
        PairClass::Bad { horrible }
    } else {
        PairClass::Good
    }
}

/// Threshold configuration of the supersaturation proof at a given `n`
/// (natural logarithm in `√(n log n)`).
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct SupersatConfig {
    pub eps: f64,
    pub n: u32,
    pub delta: f64,
    pub delta1: f64,
    pub delta2: f64,
    /// Eligibility target `t = ε²n²/10^40`.
    pub t: f64,
}

impl SupersatConfig {
    pub fn new(n: u32, eps: f64) -> Result<SupersatConfig> {
        if n < 2 {
            return Err(Error::SizeGuard {
                what: "n for the supersaturation thresholds",
                got: n as u64,
                limit: u64::MAX,
            });
        }
        let nf = n as f64;
        let root = (nf * nf.ln()).sqrt();
        Ok(SupersatConfig {
            eps,
            n,
            delta: nf / 2.0 - root,
            delta1: nf / 2.0 - root / 2.0,
            delta2: nf / 2.0 + root / 2.0,
            t: eps * eps * nf * nf / SUPERSAT_T_DENOMINATOR,
        })
    }
}

/// Per-set audit record.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct SetAudit {
    pub mask: u32,
    /// Permutations satisfying condition (i); equals `|A|!(n-|A|)!`.
    pub cond_i_count: u64,
    /// `S_A`: bad permutations.
    pub bad_count: u64,
    pub horrible_count: u64,
    /// `|H_A|` when a prefix size Δ was supplied.
    pub h_a: Option<u64>,
    /// `α_A` from `|H_A| = C(|A|-1, Δ)(1+α_A)`.
    pub alpha_a: Option<f64>,
}

/// Full brute-force audit over all `n!` permutations.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct PermutationAudit {
    pub n: u32,
    pub family: Vec<u32>,
    pub per_set: Vec<SetAudit>,
    pub delta: Option<u32>,
    pub delta1: f64,
    pub delta2: f64,
    /// No permutation is good for two different sets.
    pub each_good_at_most_one: bool,
    /// `Σ_A (|A|!(n-|A|)! - S_A)`.
    pub sum_lhs: u64,
    pub n_factorial: u64,
    /// `sum_lhs ≤ n!`.
    pub identity_holds: bool,
}

fn factorial(n: u64) -> u64 {
    (1..=n).product::<u64>().max(1)
}

/// Brute-forces the counting identity over all `n!` permutations: each
/// permutation is good for at most one `A ∈ F`, and
/// `Σ_A (|A|!(n-|A|)! - S_A) ≤ n!`. When `delta` is supplied, also
/// collects `H_A` (the Δ-prefix sets of horrible permutations) and `α_A`;
/// `delta` must satisfy `0 ≤ Δ ≤ min |A| - 1`.
pub fn audit_counting_identity(
    family: &SetFamily,
    delta: Option<u32>,
) -> Result<PermutationAudit> {
    audit_counting_identity_opts(family, delta, &ClassifyOptions::default())
}

pub fn audit_counting_identity_opts(
    family: &SetFamily,
    delta: Option<u32>,
    opts: &ClassifyOptions,
) -> Result<PermutationAudit> {
    let n = family.n();
    if n > 8 {
        return Err(Error::SizeGuard {
            what: "n for the n! permutation audit",
            got: n as u64,
            limit: 8,
        });
    }
    let masks: Vec<u32> = family.masks().collect();
    if let Some(d) = delta {
        let min_size = masks.iter().map(|m| m.count_ones()).min().unwrap_or(0);
        if min_size == 0 || d > min_size - 1 {
            return Err(Error::InvalidInput(format!(
                "delta = {d} must satisfy 0 <= delta <= min|A| - 1 = {}",
                min_size.wrapping_sub(1) as i64
            )));
        }
    }
    let mut cond_i = vec![0u64; masks.len()];
    let mut bad = vec![0u64; masks.len()];
    let mut horrible = vec![0u64; masks.len()];
    let mut h_a_sets: Vec<std::collections::BTreeSet<u32>> =
        vec![std::collections::BTreeSet::new(); masks.len()];
    let mut each_good_at_most_one = true;
    for perm in (0..n).permutations(n as usize) {
        let mut prefix = 0u32;
        let mut prefixes = Vec::with_capacity(n as usize + 1);
        prefixes.push(0u32);
        for &x in &perm {
            prefix |= 1 << x;
            prefixes.push(prefix);
        }
        let mut good_here = 0u32;
        for (idx, &a_mask) in masks.iter().enumerate() {
            match classify_permutation_opts(&perm, a_mask, family, opts) {
                PairClass::NotAPair => {}
                PairClass::Good => {
                    cond_i[idx] += 1;
                    good_here += 1;
                }
                PairClass::Bad { horrible: h } => {
                    cond_i[idx] += 1;
                    bad[idx] += 1;
                    if h {
                        horrible[idx] += 1;
                        if let Some(d) = delta {
                            h_a_sets[idx].insert(prefixes[d as usize]);
                        }
                    }
                }
            }
        }
        if good_here > 1 {
            each_good_at_most_one = false;
        }
    }
    let n_factorial = factorial(n as u64);
    let mut sum_lhs = 0u64;
    let mut per_set = Vec::with_capacity(masks.len());
    for (idx, &mask) in masks.iter().enumerate() {
        let a = mask.count_ones() as u64;
        let expected_cond_i = factorial(a) * factorial(n as u64 - a);
        debug_assert_eq!(cond_i[idx], expected_cond_i);
        sum_lhs += cond_i[idx] - bad[idx];
        let (h_a, alpha_a) = if let Some(d) = delta {
            let count = h_a_sets[idx].len() as u64;
            let denom = binomial_u64(a - 1, d as u64).unwrap_or(0);
            let alpha = if denom > 0 {
                Some(count as f64 / denom as f64 - 1.0)
            } else {
                None
            };
            (Some(count), alpha)
        } else {
            (None, None)
        };
        per_set.push(SetAudit {
            mask,
            cond_i_count: cond_i[idx],
            bad_count: bad[idx],
            horrible_count: horrible[idx],
            h_a,
            alpha_a,
        });
    }
    let (delta1, delta2) = if n >= 2 {
        let cfg = SupersatConfig::new(n, 1.0 / 400.0)?;
        (cfg.delta1, cfg.delta2)
    } else {
        (n as f64 / 2.0, n as f64 / 2.0)
    };
    Ok(PermutationAudit {
        n,
        family: masks,
        per_set,
        delta,
        delta1,
        delta2,
        each_good_at_most_one,
        sum_lhs,
        n_factorial,
        identity_holds: sum_lhs <= n_factorial,
    })
}

/// Searches `F` for an `(F, s, t)`-eligible vertex of the union hypergraph
/// at the supersaturation thresholds `s = n`, `t = ε²n²/10^40`, using
/// exact eligibility. A search tool, not a theorem check: at desk scale
/// the theorem's hypotheses carry no force.
pub fn eligibility_from_supersat(
    family: &SetFamily,
    eps: f64,
    n: u32,
) -> Result<Option<EligibilityWitness>> {
    if n > 12 {
        return Err(Error::SizeGuard {
            what: "n for the supersaturation eligibility search",
            got: n as u64,
            limit: 12,
        });
    }
    let h = build_union_hypergraph(n)?;
    let a = family.to_vertex_set();
    let s = n as f64;
    let t = eps * eps * (n as f64) * (n as f64) / SUPERSAT_T_DENOMINATOR;
    let index = h.head_pair_index();
    for v in a.iter() {
        let mut hl = Graph::new();
        for &(x, y) in &index[v as usize] {
            if a.contains(x) && a.contains(y) {
                hl.add_edge(x, y);
            }
        }
        if let Some(w) = witness_from_link(v, &hl, s, t, EligibilityMode::Exact) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}
