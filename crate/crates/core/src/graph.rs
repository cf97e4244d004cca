//! Undirected multigraphs with an explicit vertex set.
//!
//! Used for head link-graphs, the algorithm's accumulating link multigraph
//! `L`, Kneser graphs, and the embedding lemma. Edges are kept in canonical
//! `(u, v)` order with `u < v`; multiplicities make `L` a genuine multigraph
//! even though it stays simple on 1-rooted inputs.

use std::collections::{BTreeMap, BTreeSet};

use crate::set::VertexSet;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Graph {
    vertices: BTreeSet<u32>,
    adj: BTreeMap<u32, BTreeMap<u32, u32>>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    /// The empty graph on the given vertices.
    pub fn with_vertices<I: IntoIterator<Item = u32>>(vs: I) -> Self {
        Graph {
            vertices: vs.into_iter().collect(),
            adj: BTreeMap::new(),
        }
    }

    pub fn insert_vertex(&mut self, v: u32) {
        self.vertices.insert(v);
    }

    /// Adds `mult` parallel copies of edge `{u, v}`. Self-loops are not
    /// representable.
    pub fn add_edge_mult(&mut self, u: u32, v: u32, mult: u32) {
        assert_ne!(u, v, "self-loops are not allowed");
        if mult == 0 {
            return;
        }
        self.vertices.insert(u);
        self.vertices.insert(v);
        *self.adj.entry(u).or_default().entry(v).or_insert(0) += mult;
        *self.adj.entry(v).or_default().entry(u).or_insert(0) += mult;
    }

    pub fn add_edge(&mut self, u: u32, v: u32) {
        self.add_edge_mult(u, v, 1);
    }

    pub fn remove_vertex(&mut self, v: u32) {
        self.vertices.remove(&v);
        if let Some(nbrs) = self.adj.remove(&v) {
            for u in nbrs.keys() {
                if let Some(m) = self.adj.get_mut(u) {
                    m.remove(&v);
                    if m.is_empty() {
                        self.adj.remove(u);
                    }
                }
            }
        }
    }

    pub fn contains_vertex(&self, v: u32) -> bool {
        self.vertices.contains(&v)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.vertices.iter().copied()
    }

    /// Degree counting multiplicities.
    pub fn degree(&self, v: u32) -> u64 {
        self.adj
            .get(&v)
            .map(|m| m.values().map(|&c| c as u64).sum())
            .unwrap_or(0)
    }

    /// Number of distinct neighbours.
    pub fn neighbor_count(&self, v: u32) -> usize {
        self.adj.get(&v).map(|m| m.len()).unwrap_or(0)
    }

    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        self.adj.get(&v).into_iter().flat_map(|m| m.keys().copied())
    }

    /// Total edge count, multiplicities included.
    pub fn edge_count(&self) -> u64 {
        self.adj
            .values()
            .map(|m| m.values().map(|&c| c as u64).sum::<u64>())
            .sum::<u64>()
            / 2
    }

    pub fn max_degree(&self) -> u64 {
        self.vertices.iter().map(|&v| self.degree(v)).max().unwrap_or(0)
    }

    /// The vertex of maximum degree (multiplicities counted); ties broken
    /// towards the smallest id. `None` on the empty vertex set.
    pub fn max_degree_vertex(&self) -> Option<(u32, u64)> {
        let mut best: Option<(u32, u64)> = None;
        for &v in &self.vertices {
            let d = self.degree(v);
            match best {
                Some((_, bd)) if d <= bd => {}
                _ => best = Some((v, d)),
            }
        }
        best
    }

    /// Edges in canonical order: ascending `(u, v)` with `u < v`, plus the
    /// multiplicity of each.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        self.adj.iter().flat_map(|(&u, m)| {
            m.iter()
                .filter(move |&(&v, _)| u < v)
                .map(move |(&v, &c)| (u, v, c))
        })
    }

    pub fn multiplicity(&self, u: u32, v: u32) -> u32 {
        self.adj
            .get(&u)
            .and_then(|m| m.get(&v).copied())
            .unwrap_or(0)
    }

    pub fn is_simple(&self) -> bool {
        self.adj.values().all(|m| m.values().all(|&c| c == 1))
    }

    /// Multigraph union: adds all of `other`'s vertices and edge
    /// multiplicities into `self`.
    pub fn union_add(&mut self, other: &Graph) {
        for v in other.vertices() {
            self.insert_vertex(v);
        }
        for (u, v, c) in other.edges() {
            self.add_edge_mult(u, v, c);
        }
    }

    /// True iff every vertex of the graph lies in `set`.
    pub fn vertices_within(&self, set: &VertexSet) -> bool {
        self.vertices().all(|v| set.contains(v))
    }
}
