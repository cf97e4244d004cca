//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Run with `cargo test -p rooted-containers --test acceptance --
//! --nocapture` to see the lines.

use std::sync::OnceLock;
use std::time::Instant;

use num::bigint::BigUint;
use num::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rooted_containers::bounded::{greedy_bounded_subgraph, max_bounded_subgraph_edges};
use rooted_containers::bounds::{binomial, check_entropy_bound};
use rooted_containers::engine::{
    reconstruct, run_container, ContainerRun, EligibilityMode, RunOptions,
};
use rooted_containers::family::generate_synthetic_rooted;
use rooted_containers::graph::Graph;
use rooted_containers::hypergraph::RootedHypergraph;
use rooted_containers::params::Params;
use rooted_containers::set::VertexSet;
use rooted_containers::supersat::{
    audit_counting_identity, embed_bounded_subgraph, kneser_graph, kneser_stats,
    min_eigenvalue, random_regular, verify_eml_exhaustive, verify_eml_sampled,
};
use rooted_containers::unionfree::{
    alpha_bounds, build_union_hypergraph, count_union_free, section4_crossover, SetFamily,
};

fn pass(criterion: u32, what: &str, started: Instant) {
    println!(
        "[PASS] criterion {criterion}: {what} ({:.2}s)",
        started.elapsed().as_secs_f64()
    );
}

fn fail(criterion: u32, what: &str, detail: &str) -> ! {
    println!("[FAIL] criterion {criterion}: {what} — {detail}");
    panic!("criterion {criterion} failed: {detail}");
}

#[test]
fn criterion_1_union_hypergraph_rootedness() {
    let started = Instant::now();
    for n in 1..=12 {
        let h = build_union_hypergraph(n).unwrap();
        if let Err(v) = h.verify_rooted_with(1) {
            fail(
                1,
                "union hypergraph rootedness",
                &format!("n = {n}: pair {:?} violates 1-rootedness", v.pair),
            );
        }
    }
    let elapsed = started.elapsed();
    if elapsed.as_secs_f64() >= 30.0 {
        fail(
            1,
            "union hypergraph rootedness",
            &format!("runtime {elapsed:?} exceeded 30 s"),
        );
    }
    pass(1, "build_union_hypergraph(1..=12) all 1-rooted", started);
}

#[test]
fn criterion_2_dual_oracle_census() {
    let started = Instant::now();
    // Frozen values from an independent enumeration.
    let expected = [(1u32, 4u64), (2, 14), (3, 124), (4, 5404)];
    for (n, want) in expected {
        let t0 = Instant::now();
        let by_families = count_union_free(n).unwrap();
        let by_edges = build_union_hypergraph(n)
            .unwrap()
            .count_independent_sets()
            .unwrap();
        if by_families != by_edges {
            fail(
                2,
                "dual-oracle census",
                &format!("n = {n}: family oracle {by_families} != edge oracle {by_edges}"),
            );
        }
        if by_families != want {
            fail(
                2,
                "dual-oracle census",
                &format!("n = {n}: got {by_families}, frozen value {want}"),
            );
        }
        // alpha(n) >= 2^C(n, floor(n/2)), exactly.
        let exponent = num::ToPrimitive::to_u64(&binomial(n as u64, n as u64 / 2)).unwrap();
        let lower = BigUint::one() << exponent as usize;
        if lower > BigUint::from(by_families) {
            fail(2, "dual-oracle census", &format!("n = {n}: lower bound fails"));
        }
        if n == 4 && t0.elapsed().as_secs_f64() >= 5.0 {
            fail(2, "dual-oracle census", "n = 4 census exceeded 5 s");
        }
    }
    pass(2, "alpha(1..=4) agree across both oracles: 4, 14, 124, 5404", started);
}

struct Case {
    h: RootedHypergraph,
    i_set: VertexSet,
    params: Params,
    opts: RunOptions,
    run: ContainerRun,
}

fn random_independent_set(h: &RootedHypergraph, rng: &mut ChaCha8Rng, keep: f64) -> VertexSet {
    let mut order = h.vertices().to_sorted_vec();
    for i in (1..order.len()).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
    let mut set = VertexSet::empty(h.universe());
    for v in order {
        if rng.gen::<f64>() > keep {
            continue;
        }
        set.insert(v);
        if h.find_contained_edge(&set).is_some() {
            set.remove(v);
        }
    }
    set
}

fn suite() -> &'static Vec<Case> {
    static SUITE: OnceLock<Vec<Case>> = OnceLock::new();
    SUITE.get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut cases = Vec::new();
        let s_choices = [1.0, 1.5, 2.0, 3.0];
        let t_choices = [1.0, 2.0, 3.5];
        let eps_choices = [0.05, 0.1];
        // 440 synthetic hosts, M ≤ 60.
        for case_idx in 0..440u64 {
            let m = rng.gen_range(8..=60);
            let density = [0.05, 0.15, 0.3, 0.6, 1.0][case_idx as usize % 5];
            let h = generate_synthetic_rooted(m, density, 1000 + case_idx).unwrap();
            cases.push((h, case_idx));
        }
        // 60+ union hosts, n ≤ 4.
        for case_idx in 440..504u64 {
            let n = 2 + (case_idx % 3) as u32;
            let h = build_union_hypergraph(n).unwrap();
            cases.push((h, case_idx));
        }
        cases
            .into_iter()
            .map(|(h, case_idx)| {
                let keep = [0.0, 0.3, 0.7, 1.0][case_idx as usize % 4];
                let i_set = random_independent_set(&h, &mut rng, keep);
                let m = h.vertex_count() as u64;
                let s = s_choices[case_idx as usize % s_choices.len()];
                let t = t_choices[case_idx as usize % t_choices.len()];
                let eps = eps_choices[case_idx as usize % eps_choices.len()];
                // N varies from forcing niceness events to making them vacuous.
                let n_target = match case_idx % 3 {
                    0 => 1.0,
                    1 => m as f64 / 4.0,
                    _ => 2.0 * m as f64,
                };
                let params = Params::new(eps, s, t, n_target, m);
                let opts = RunOptions {
                    mode: if case_idx % 2 == 0 {
                        EligibilityMode::Exact
                    } else {
                        EligibilityMode::Greedy
                    },
                    relaxed: true,
                };
                let run = run_container(&h, &i_set, &params, &opts).unwrap();
                Case {
                    h,
                    i_set,
                    params,
                    opts,
                    run,
                }
            })
            .collect()
    })
}

#[test]
fn criterion_3_mechanical_invariants() {
    let started = Instant::now();
    let cases = suite();
    if cases.len() < 500 {
        fail(3, "mechanical invariants", "fewer than 500 seeded cases");
    }
    // Every algorithm path must be exercised: Phase-I acceptances (T),
    // Phase-II acceptances (T'), and Phase-II deletions.
    let t_runs = cases.iter().filter(|c| !c.run.fingerprint_t.is_empty()).count();
    let tp_runs = cases
        .iter()
        .filter(|c| !c.run.fingerprint_t_prime.is_empty())
        .count();
    let phase2_steps: usize = cases
        .iter()
        .map(|c| {
            c.run
                .trace
                .steps
                .iter()
                .filter(|s| matches!(s.phase, rooted_containers::engine::Phase::II))
                .count()
        })
        .sum();
    if t_runs == 0 || tp_runs == 0 || phase2_steps == 0 {
        fail(
            3,
            "mechanical invariants",
            &format!("suite lacks coverage: T-runs {t_runs}, T'-runs {tp_runs}, phase-II steps {phase2_steps}"),
        );
    }
    for (idx, case) in cases.iter().enumerate() {
        let run = &case.run;
        if !run.invariant_violations.is_empty() {
            fail(
                3,
                "mechanical invariants",
                &format!("case {idx}: {:?}", run.invariant_violations),
            );
        }
        let c = run.container_set();
        let t = run.fingerprint_t_set();
        let tp = run.fingerprint_t_prime_set();
        if !case.i_set.is_subset_of(&c) {
            fail(3, "mechanical invariants", &format!("case {idx}: I not in C"));
        }
        if !t.is_subset_of(&case.i_set) || !tp.is_subset_of(&case.i_set) {
            fail(3, "mechanical invariants", &format!("case {idx}: T or T' not in I"));
        }
        if !run.fingerprint_t_bound_ok() {
            fail(3, "mechanical invariants", &format!("case {idx}: |T| t > 2sM"));
        }
        if !run.fingerprint_t_prime_bound_ok() {
            fail(3, "mechanical invariants", &format!("case {idx}: |T'| z > M"));
        }
    }
    pass(
        3,
        &format!(
            "{} seeded runs: L simple, deg(L) <= 2s, V(L) in A, I in C, fingerprint bounds",
            cases.len()
        ),
        started,
    );
}

#[test]
fn criterion_4_fingerprint_determinism() {
    let started = Instant::now();
    let cases = suite();
    for (idx, case) in cases.iter().enumerate() {
        let c = reconstruct(
            &case.h,
            &case.run.fingerprint_t_set(),
            &case.run.fingerprint_t_prime_set(),
            &case.params,
            &case.opts,
        )
        .unwrap();
        if c != case.run.container_set() {
            fail(
                4,
                "fingerprint determinism",
                &format!("case {idx}: reconstruct(T, T') != C"),
            );
        }
    }
    // Distinct independent sets with equal fingerprints must receive the
    // same container; a sparse host makes such collisions abundant.
    let h = generate_synthetic_rooted(20, 0.15, 777).unwrap();
    let params = Params::new(0.1, 1.0, 1.0, 2.0, 20);
    let opts = RunOptions {
        mode: EligibilityMode::Exact,
        relaxed: true,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(444);
    type FingerprintKey = (Vec<u32>, Vec<u32>);
    let mut groups: std::collections::BTreeMap<FingerprintKey, (Vec<u32>, Vec<VertexSet>)> =
        std::collections::BTreeMap::new();
    for _ in 0..60 {
        let i_set = random_independent_set(&h, &mut rng, 0.5);
        let run = run_container(&h, &i_set, &params, &opts).unwrap();
        let key = (run.fingerprint_t.clone(), run.fingerprint_t_prime.clone());
        let entry = groups.entry(key).or_insert_with(|| (run.container.clone(), Vec::new()));
        if entry.0 != run.container {
            fail(
                4,
                "fingerprint determinism",
                "equal fingerprints produced different containers",
            );
        }
        if !entry.1.contains(&i_set) {
            entry.1.push(i_set);
        }
    }
    let collisions = groups.values().filter(|(_, is)| is.len() >= 2).count();
    if collisions == 0 {
        fail(
            4,
            "fingerprint determinism",
            "no fingerprint collision found among 60 random independent sets",
        );
    }
    pass(
        4,
        &format!(
            "reconstruct(T, T') = C exactly on all {} runs; {collisions} fingerprint collisions share containers",
            cases.len()
        ),
        started,
    );
}

#[test]
fn criterion_5_conditional_size_guarantee() {
    let started = Instant::now();
    let cases = suite();
    let mut certified = 0usize;
    let mut niceness_seen = (false, false);
    for (idx, case) in cases.iter().enumerate() {
        if case.run.trace.certification.niceness_observed {
            niceness_seen.0 = true;
        } else {
            niceness_seen.1 = true;
        }
        if case.run.trace.certification.certified() {
            certified += 1;
        }
        if !case.run.conditional_size_ok() {
            fail(
                5,
                "conditional size guarantee",
                &format!("case {idx}: certified run exceeded (1-eps)M or (1-eps/2)M"),
            );
        }
    }
    // The flag itself must move across the suite, even though full
    // certification needs theorem-scale parameters no desk run meets.
    if !(niceness_seen.0 && niceness_seen.1) {
        fail(
            5,
            "conditional size guarantee",
            "niceness flag never varied across the suite",
        );
    }
    pass(
        5,
        &format!(
            "implication holds on all {} runs ({} certified; desk-scale parameters cannot satisfy the algorithm profile)",
            cases.len(),
            certified
        ),
        started,
    );
}

#[test]
fn criterion_6_entropy_bound() {
    let started = Instant::now();
    let mut checked = 0u32;
    for big_m in 1..=30u64 {
        for m in 1..=(big_m / 2) {
            // zeta chosen so that floor(zeta*M) = m.
            let zeta = ((m as f64 + 0.5) / big_m as f64).min(0.5);
            let c = check_entropy_bound(big_m, zeta).unwrap();
            if c.floor_zeta_m != m {
                fail(6, "entropy bound", &format!("floor mismatch at M={big_m}, m={m}"));
            }
            if !c.holds {
                fail(6, "entropy bound", &format!("violated at M={big_m}, zeta={zeta}"));
            }
            checked += 1;
        }
        // Fractional grid.
        for step in 1..=50u32 {
            let zeta = step as f64 / 100.0;
            let c = check_entropy_bound(big_m, zeta).unwrap();
            if !c.holds {
                fail(6, "entropy bound", &format!("violated at M={big_m}, zeta={zeta}"));
            }
            checked += 1;
        }
    }
    let elapsed = started.elapsed();
    if elapsed.as_secs_f64() >= 1.0 {
        fail(6, "entropy bound", &format!("runtime {elapsed:?} exceeded 1 s"));
    }
    pass(
        6,
        &format!("C(M, <=zM) <= 2^(H(z)M) on {checked} (M, zeta) pairs, M <= 30"),
        started,
    );
}

#[test]
fn criterion_7_kneser_spectra() {
    let started = Instant::now();
    let mut checked = 0u32;
    for m in 2..=300u32 {
        for k in 1..=(m / 2) {
            let Some(n_vertices) = rooted_containers::bounds::binomial_u64(m as u64, k as u64)
            else {
                break;
            };
            if n_vertices > 300 {
                break;
            }
            let stats = kneser_stats(m, k).unwrap();
            let g = kneser_graph(m, k).unwrap();
            let lambda = min_eigenvalue(&g).unwrap();
            if (lambda - stats.lambda_formula).abs() > 1e-6 {
                fail(
                    7,
                    "Kneser spectra",
                    &format!(
                        "KG({m},{k}): computed {lambda}, formula {}",
                        stats.lambda_formula
                    ),
                );
            }
            checked += 1;
        }
    }
    let elapsed = started.elapsed();
    if elapsed.as_secs_f64() >= 10.0 {
        fail(7, "Kneser spectra", &format!("runtime {elapsed:?} exceeded 10 s"));
    }
    pass(
        7,
        &format!("min eigenvalue = -k/(m-k)*C(m-k,k) on {checked} Kneser graphs (C(m,k) <= 300)"),
        started,
    );
}

#[test]
fn criterion_8_expander_mixing_lemma() {
    let started = Instant::now();
    // Exhaustive sweeps.
    for (m, k) in [(5u32, 2u32), (4, 2)] {
        let stats = kneser_stats(m, k).unwrap();
        let g = kneser_graph(m, k).unwrap();
        let check = verify_eml_exhaustive(&g, stats.d as f64, stats.lambda_formula).unwrap();
        if !check.holds {
            fail(
                8,
                "expander mixing lemma",
                &format!(
                    "KG({m},{k}) violated at subset {:?} (slack {})",
                    check.worst_subset, check.worst_slack
                ),
            );
        }
        let want = 1u64 << g.vertex_count();
        if check.subsets_checked != want {
            fail(8, "expander mixing lemma", "exhaustive sweep incomplete");
        }
    }
    // 50 seeded random regular graphs, lambda from the eigensolve.
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    let mut built = 0;
    while built < 50 {
        let n = rng.gen_range(8..=16u32);
        let d = rng.gen_range(2..=5u32);
        if n * d % 2 != 0 || d >= n {
            continue;
        }
        let g = random_regular(n, d, 9000 + built as u64).unwrap();
        let lambda = min_eigenvalue(&g).unwrap();
        let check = verify_eml_sampled(&g, d as f64, lambda, 2000, 17 + built as u64).unwrap();
        if !check.holds {
            fail(
                8,
                "expander mixing lemma",
                &format!(
                    "random {d}-regular on {n}: violated at {:?} (slack {})",
                    check.worst_subset, check.worst_slack
                ),
            );
        }
        built += 1;
    }
    let elapsed = started.elapsed();
    if elapsed.as_secs_f64() >= 20.0 {
        fail(8, "expander mixing lemma", &format!("runtime {elapsed:?} exceeded 20 s"));
    }
    pass(
        8,
        "exhaustive on KG(5,2) and KG(4,2), sampled on 50 seeded regular graphs",
        started,
    );
}

fn random_gnp(n: u32, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::with_vertices(0..n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < p {
                g.add_edge(u, v);
            }
        }
    }
    g
}

#[test]
fn criterion_9_embedding_lemma() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut qualifying = 0u32;
    let mut attempts = 0u64;
    while qualifying < 1000 {
        attempts += 1;
        if attempts > 100_000 {
            fail(9, "embedding lemma", "could not find 1000 qualifying instances");
        }
        let n = rng.gen_range(8..=18u32);
        let p = [0.3, 0.5, 0.7, 0.9][attempts as usize % 4];
        let m = rng.gen_range(1..=4u32);
        let g = random_gnp(n, p, &mut rng);
        match embed_bounded_subgraph(&g, m) {
            Err(_) => continue, // precondition not met; filtered out
            Ok(h) => {
                qualifying += 1;
                if h.max_degree() > m as u64 {
                    fail(
                        9,
                        "embedding lemma",
                        &format!("attempt {attempts}: max degree {} > m = {m}", h.max_degree()),
                    );
                }
                let need = (m as u64 * m as u64).div_ceil(2);
                if h.edge_count() < need {
                    fail(
                        9,
                        "embedding lemma",
                        &format!("attempt {attempts}: {} edges < ceil(m^2/2) = {need}", h.edge_count()),
                    );
                }
            }
        }
    }
    pass(
        9,
        "1000 qualifying seeded graphs: deg(H) <= m and e(H) >= ceil(m^2/2)",
        started,
    );
}

#[test]
fn criterion_10_counting_identity() {
    let started = Instant::now();
    // Tight case first: all 2-subsets of [3].
    let tight = SetFamily::from_masks(3, [0b011, 0b101, 0b110]).unwrap();
    let audit = audit_counting_identity(&tight, None).unwrap();
    if !(audit.sum_lhs == 6 && audit.n_factorial == 6 && audit.identity_holds) {
        fail(10, "counting identity", "tight case n=3 is not tight");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    let mut audited = 0u32;
    while audited < 200 {
        let n = 2 + (audited % 4); // n in 2..=5
        let p = [0.2, 0.5, 0.8][audited as usize % 3];
        let masks = (0u32..(1 << n)).filter(|_| rng.gen::<f64>() < p);
        let fam = SetFamily::from_masks(n, masks).unwrap();
        let audit = audit_counting_identity(&fam, None).unwrap();
        if !audit.each_good_at_most_one {
            fail(
                10,
                "counting identity",
                &format!("family #{audited}: a permutation is good for two sets"),
            );
        }
        if !audit.identity_holds {
            fail(
                10,
                "counting identity",
                &format!("family #{audited}: sum {} > {}!", audit.sum_lhs, audit.n_factorial),
            );
        }
        audited += 1;
    }
    let elapsed = started.elapsed();
    if elapsed.as_secs_f64() >= 60.0 {
        fail(10, "counting identity", &format!("runtime {elapsed:?} exceeded 60 s"));
    }
    pass(
        10,
        "200 seeded families (n <= 5) plus the tight n=3 case, both claims exhaustive",
        started,
    );
}

// Independent oracle: maximum over all 2^e edge subsets.
fn brute_force_bounded_max(g: &Graph, s: f64) -> u64 {
    let cap = if s <= 0.0 { 0u64 } else { s.floor() as u64 };
    let edges: Vec<(u32, u32)> = g
        .edges()
        .flat_map(|(u, v, mult)| std::iter::repeat_n((u, v), mult as usize))
        .collect();
    assert!(edges.len() <= 16);
    let mut best = 0u64;
    'mask: for mask in 0u32..(1 << edges.len()) {
        let mut deg = std::collections::HashMap::new();
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for w in [u, v] {
                    let d = deg.entry(w).or_insert(0u64);
                    *d += 1;
                    if *d > cap {
                        continue 'mask;
                    }
                }
            }
        }
        best = best.max(mask.count_ones() as u64);
    }
    best
}

#[test]
fn criterion_11_bounded_subgraph_oracle() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1111);
    for case in 0..200u32 {
        let n = rng.gen_range(4..=10u32);
        let mut g = Graph::with_vertices(0..n);
        let target_edges = rng.gen_range(0..=16u32);
        let mut pairs: Vec<(u32, u32)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        for i in (1..pairs.len()).rev() {
            let j = rng.gen_range(0..=i);
            pairs.swap(i, j);
        }
        for &(u, v) in pairs.iter().take(target_edges as usize) {
            g.add_edge(u, v);
        }
        for s in [1.0, 2.0, 3.0] {
            let exact = max_bounded_subgraph_edges(&g, s);
            let brute = brute_force_bounded_max(&g, s);
            if exact != brute {
                fail(
                    11,
                    "bounded-subgraph oracle",
                    &format!("case {case}, s={s}: exact {exact} != brute force {brute}"),
                );
            }
            let greedy = greedy_bounded_subgraph(&g, s).edge_count();
            if greedy > exact {
                fail(
                    11,
                    "bounded-subgraph oracle",
                    &format!("case {case}, s={s}: greedy {greedy} exceeds exact {exact}"),
                );
            }
        }
    }
    pass(
        11,
        "exact maximum equals 2^e brute force on 200 seeded graphs; greedy never exceeds it",
        started,
    );
}

#[test]
fn criterion_12_asymptotics_reported_honestly() {
    let started = Instant::now();
    // Not reproducible at desk scale; substituted by exact term evaluation
    // and honest crossover reporting.
    for n in [2u32, 10, 20, 64] {
        let r = alpha_bounds(n, 0.004).unwrap();
        if r.chain_holds {
            fail(
                12,
                "asymptotic honesty",
                &format!("chain reported as holding at desk n = {n}"),
            );
        }
        if !r.chain_lhs_log2.is_finite() || !r.chain_rhs_log2.is_finite() {
            fail(12, "asymptotic honesty", "non-finite chain terms");
        }
        if let Some(holds) = r.lower_bound_holds {
            if !holds {
                fail(12, "asymptotic honesty", &format!("lower bound fails at n = {n}"));
            }
        }
    }
    let cross = section4_crossover(0.004).unwrap();
    if cross.log2_n <= 300.0 {
        fail(
            12,
            "asymptotic honesty",
            &format!("crossover unexpectedly small: 2^{}", cross.log2_n),
        );
    }
    if alpha_bounds(10, 0.01).is_ok() {
        fail(12, "asymptotic honesty", "eps = 0.01 >= 1/200 must be rejected");
    }
    pass(
        12,
        &format!(
            "chain false at desk n; first holds near n = 2^{:.1} = {:.3e}",
            cross.log2_n, cross.n
        ),
        started,
    );
}
