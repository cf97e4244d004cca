//! Rooted 3-uniform hypergraphs.
//!
//! Every edge is an unordered triple of distinct vertices with one of the
//! three tagged as its *head*. A hypergraph is `r`-rooted when every
//! unordered vertex pair lies in at most `r` edges whose head is outside
//! the pair. Rootedness is verified explicitly, not at construction time,
//! so counterexamples can be built for tests.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::set::VertexSet;

/// One edge: the triple sorted ascending, plus the head (one of the three).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Edge {
    pub triple: [u32; 3],
    pub head: u32,
}

impl Edge {
    /// The two vertices of the edge other than the head.
    pub fn partner_pair(&self) -> (u32, u32) {
        let mut it = self.triple.iter().copied().filter(|&x| x != self.head);
        let a = it.next().unwrap();
        let b = it.next().unwrap();
        (a, b)
    }
}

/// A 3-uniform hypergraph with per-edge heads and a declared rootedness
/// parameter `r`. Vertex ids are dense integers `[0, universe)`; an induced
/// subhypergraph keeps the id space and shrinks the active vertex set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RootedHypergraph {
    universe: u32,
    vertices: VertexSet,
    edges: Vec<Edge>,
    r: u32,
}

/// Outcome of a rootedness check: a witness pair and all its offending
/// edges when the bound is exceeded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootednessViolation {
    pub pair: (u32, u32),
    pub edges: Vec<Edge>,
}

impl RootedHypergraph {
    /// Builds a canonicalized hypergraph from raw `(u, v, w, head)` triples.
    /// Rootedness is *not* asserted here; call [`RootedHypergraph::verify_rooted`].
    pub fn build(
        vertex_count: u32,
        triples: &[(u32, u32, u32, u32)],
        r: u32,
    ) -> Result<RootedHypergraph> {
        let mut edges = Vec::with_capacity(triples.len());
        for &(u, v, w, head) in triples {
            let mut triple = [u, v, w];
            for &x in &triple {
                if x >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: x,
                        universe: vertex_count,
                    });
                }
            }
            triple.sort_unstable();
            if triple[0] == triple[1] || triple[1] == triple[2] {
                return Err(Error::RepeatedVertex { triple });
            }
            if head != u && head != v && head != w {
                return Err(Error::HeadNotInTriple { triple, head });
            }
            edges.push(Edge { triple, head });
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(RootedHypergraph {
            universe: vertex_count,
            vertices: VertexSet::full(vertex_count),
            edges,
            r,
        })
    }

    /// Internal constructor for edges already in canonical sorted order.
    pub(crate) fn from_canonical(universe: u32, vertices: VertexSet, edges: Vec<Edge>, r: u32) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        RootedHypergraph {
            universe,
            vertices,
            edges,
            r,
        }
    }

    /// The id space `[0, universe)`.
    pub fn universe(&self) -> u32 {
        self.universe
    }

    /// The active vertex set (all of `[0, universe)` for a freshly built
    /// hypergraph; smaller after `induced`).
    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn rootedness(&self) -> u32 {
        self.r
    }

    /// Checks that every unordered pair lies in at most `r` edges with head
    /// outside the pair, for the given `r` (ignoring the stored parameter).
    ///
    /// Each edge charges exactly one pair: its two non-head vertices.
    pub fn verify_rooted_with(&self, r: u32) -> std::result::Result<(), RootednessViolation> {
        let mut keys: Vec<u64> = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = e.partner_pair();
                (a as u64) << 32 | b as u64
            })
            .collect();
        keys.sort_unstable();
        let mut i = 0;
        while i < keys.len() {
            let mut j = i + 1;
            while j < keys.len() && keys[j] == keys[i] {
                j += 1;
            }
            if (j - i) as u32 > r {
                let pair = ((keys[i] >> 32) as u32, keys[i] as u32);
                let offending = self
                    .edges
                    .iter()
                    .filter(|e| e.partner_pair() == pair)
                    .copied()
                    .collect();
                return Err(RootednessViolation {
                    pair,
                    edges: offending,
                });
            }
            i = j;
        }
        Ok(())
    }

    /// Rootedness check against the hypergraph's own declared `r`.
    pub fn verify_rooted(&self) -> std::result::Result<(), RootednessViolation> {
        self.verify_rooted_with(self.r)
    }

    /// Number of edges whose head is `v`.
    pub fn head_degree(&self, v: u32) -> usize {
        self.edges.iter().filter(|e| e.head == v).count()
    }

    /// The head link-graph of `v` restricted to `a`: vertex pairs
    /// `{u1, u2} ⊆ a` with `{v, u1, u2}` an edge headed at `v`. Simple by
    /// construction (edges are distinct `(triple, head)` records).
    pub fn head_link_graph(&self, v: u32, a: &VertexSet) -> Graph {
        let mut g = Graph::new();
        for e in &self.edges {
            if e.head == v {
                let (x, y) = e.partner_pair();
                if a.contains(x) && a.contains(y) {
                    g.add_edge(x, y);
                }
            }
        }
        g
    }

    /// Subhypergraph induced on `a`: active vertices `vertices ∩ a`, edges
    /// with all three endpoints inside, heads preserved, id space unchanged.
    pub fn induced(&self, a: &VertexSet) -> RootedHypergraph {
        let vertices = self.vertices.intersection(a);
        let edges = self
            .edges
            .iter()
            .filter(|e| e.triple.iter().all(|&x| vertices.contains(x)))
            .copied()
            .collect();
        RootedHypergraph {
            universe: self.universe,
            vertices,
            edges,
            r: self.r,
        }
    }

    /// True iff no edge lies entirely inside `x`.
    pub fn is_independent(&self, x: &VertexSet) -> bool {
        self.find_contained_edge(x).is_none()
    }

    /// First edge (canonical order) fully contained in `x`, if any.
    pub fn find_contained_edge(&self, x: &VertexSet) -> Option<Edge> {
        self.edges
            .iter()
            .find(|e| e.triple.iter().all(|&v| x.contains(v)))
            .copied()
    }

    /// Exact independent-set count by scanning all `2^M` vertex subsets.
    /// Exponential; guarded to small hosts.
    pub fn count_independent_sets(&self) -> Result<u64> {
        let m = self.vertex_count();
        if m > 24 {
            return Err(Error::SizeGuard {
                what: "vertex count for exhaustive independent-set census",
                got: m as u64,
                limit: 24,
            });
        }
        let ids = self.vertices.to_sorted_vec();
        let pos: std::collections::HashMap<u32, u32> = ids
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as u32))
            .collect();
        let edge_masks: Vec<u32> = self
            .edges
            .iter()
            .map(|e| e.triple.iter().map(|v| 1u32 << pos[v]).sum())
            .collect();
        let mut count = 0u64;
        for subset in 0u64..(1u64 << m) {
            let subset = subset as u32;
            if edge_masks.iter().all(|&em| subset & em != em) {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Partner pairs grouped by head, indexed by vertex id. One pass over
    /// the edge list; lets callers build many head link-graphs cheaply.
    pub fn head_pair_index(&self) -> Vec<Vec<(u32, u32)>> {
        let mut index = vec![Vec::new(); self.universe as usize];
        for e in &self.edges {
            index[e.head as usize].push(e.partner_pair());
        }
        index
    }
}
