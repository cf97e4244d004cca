//! Degree-bounded subgraph selection.
//!
//! Two routes to "a subgraph with max degree ≤ s and many edges": a
//! deterministic greedy scan (fast, maximal under the canonical edge
//! order) and an exact branch-and-bound maximum (the semantics of exact
//! eligibility). Degrees are integers, so `Δ(H) ≤ s` means `Δ(H) ≤ ⌊s⌋`.

use crate::graph::Graph;

fn cap_of(s: f64) -> u64 {
    if s <= 0.0 {
        0
    } else {
        s.floor() as u64
    }
}

/// Scans edges in canonical order, keeping an edge iff both endpoints can
/// still absorb it without exceeding `⌊s⌋`. The result is maximal under
/// the scan order and deterministic.
pub fn greedy_bounded_subgraph(g: &Graph, s: f64) -> Graph {
    let cap = cap_of(s);
    let mut deg: std::collections::BTreeMap<u32, u64> = std::collections::BTreeMap::new();
    let mut out = Graph::new();
    for (u, v, mult) in g.edges() {
        for _ in 0..mult {
            let du = *deg.get(&u).unwrap_or(&0);
            let dv = *deg.get(&v).unwrap_or(&0);
            if du < cap && dv < cap {
                out.add_edge(u, v);
                *deg.entry(u).or_insert(0) += 1;
                *deg.entry(v).or_insert(0) += 1;
            }
        }
    }
    out
}

struct Solver {
    edges: Vec<(usize, usize)>,
    cap: Vec<i64>,
    rem: Vec<i64>,
    contrib: Vec<i64>,
    ub_sum: i64,
    cur: Vec<bool>,
    best: u64,
    best_sel: Vec<bool>,
    target: Option<u64>,
    reached: bool,
}

impl Solver {
    fn update(&mut self, v: usize) {
        let c = self.cap[v].min(self.rem[v]).max(0);
        self.ub_sum += c - self.contrib[v];
        self.contrib[v] = c;
    }

    fn dfs(&mut self, idx: usize, kept: u64) {
        if self.reached {
            return;
        }
        if kept > self.best {
            self.best = kept;
            self.best_sel = self.cur.clone();
            if self.target.is_some_and(|t| self.best >= t) {
                self.reached = true;
                return;
            }
        }
        if idx == self.edges.len() {
            return;
        }
        let ub = kept + ((self.edges.len() - idx) as u64).min((self.ub_sum / 2) as u64);
        if ub <= self.best {
            return;
        }
        let (u, v) = self.edges[idx];
        if self.cap[u] > 0 && self.cap[v] > 0 {
            self.cap[u] -= 1;
            self.cap[v] -= 1;
            self.rem[u] -= 1;
            self.rem[v] -= 1;
            self.update(u);
            self.update(v);
            self.cur[idx] = true;
            self.dfs(idx + 1, kept + 1);
            self.cur[idx] = false;
            self.cap[u] += 1;
            self.cap[v] += 1;
            self.rem[u] += 1;
            self.rem[v] += 1;
            self.update(u);
            self.update(v);
            if self.reached {
                return;
            }
        }
        self.rem[u] -= 1;
        self.rem[v] -= 1;
        self.update(u);
        self.update(v);
        self.dfs(idx + 1, kept);
        self.rem[u] += 1;
        self.rem[v] += 1;
        self.update(u);
        self.update(v);
    }
}

fn solve(g: &Graph, s: f64, target: Option<u64>) -> (u64, Graph) {
    let cap = cap_of(s) as i64;
    let ids: Vec<u32> = g.vertices().collect();
    let pos: std::collections::HashMap<u32, usize> =
        ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    // Expand multiplicities; canonical order is preserved.
    let mut edges = Vec::new();
    for (u, v, mult) in g.edges() {
        for _ in 0..mult {
            edges.push((pos[&u], pos[&v]));
        }
    }
    let n = ids.len();
    let mut rem = vec![0i64; n];
    for &(u, v) in &edges {
        rem[u] += 1;
        rem[v] += 1;
    }
    let contrib: Vec<i64> = rem.iter().map(|&r| r.min(cap)).collect();
    let ub_sum = contrib.iter().sum();
    let ne = edges.len();
    let mut solver = Solver {
        edges,
        cap: vec![cap; n],
        rem,
        contrib,
        ub_sum,
        cur: vec![false; ne],
        best: 0,
        best_sel: vec![false; ne],
        target,
        reached: false,
    };
    solver.dfs(0, 0);
    let mut out = Graph::new();
    for (i, &(u, v)) in solver.edges.iter().enumerate() {
        if solver.best_sel[i] {
            out.add_edge(ids[u], ids[v]);
        }
    }
    (solver.best, out)
}

/// Exact maximum number of edges over all subgraphs with `Δ ≤ s`.
pub fn max_bounded_subgraph_edges(g: &Graph, s: f64) -> u64 {
    solve(g, s, None).0
}

/// A deterministic maximum subgraph with `Δ ≤ s`: the first optimum found
/// by depth-first search over edges in canonical order ("take" explored
/// before "skip").
pub fn max_bounded_subgraph(g: &Graph, s: f64) -> Graph {
    solve(g, s, None).1
}

/// Decides `max_bounded_subgraph_edges(g, s) ≥ t` with early exit.
pub(crate) fn bounded_reaches(g: &Graph, s: f64, t: f64) -> bool {
    if t <= 0.0 {
        return true;
    }
    let target = t.ceil() as u64;
    if (g.edge_count() as f64) < t {
        return false;
    }
    solve(g, s, Some(target)).0 as f64 >= t
}
