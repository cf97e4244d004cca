//! The union hypergraph on the subset lattice and the union-free census.
//!
//! Vertices of `P(n)` are bitmasks and the vertex id *is* the mask, so the
//! label map is free and mask order is the canonical vertex order. Edges
//! are unordered triples of distinct sets `{A, B, C}` with `A ∪ B = C`,
//! headed at `C`.

use std::collections::BTreeSet;

use num::bigint::BigUint;
use num::One;
use serde::{Deserialize, Serialize};

use crate::bounds::{binomial, log2_biguint};
use crate::error::{Error, Result};
use crate::hypergraph::RootedHypergraph;
use crate::set::VertexSet;

/// The subset lattice `P(n)` with bitmask vertex ids.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SubsetLattice {
    pub n: u32,
}

impl SubsetLattice {
    pub fn new(n: u32) -> Result<Self> {
        if !(1..=22).contains(&n) {
            return Err(Error::SizeGuard {
                what: "ground-set size n",
                got: n as u64,
                limit: 22,
            });
        }
        Ok(SubsetLattice { n })
    }

    pub fn vertex_count(&self) -> u64 {
        1u64 << self.n
    }

    /// Elements of the subset encoded by `mask`, 1-based.
    pub fn elements(&self, mask: u32) -> Vec<u32> {
        (0..self.n).filter(|&i| mask >> i & 1 == 1).map(|i| i + 1).collect()
    }
}

/// A family of subsets of `[n]`, each subset a bitmask below `2^n`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SetFamily {
    n: u32,
    masks: BTreeSet<u32>,
}

impl SetFamily {
    pub fn new(n: u32) -> Result<SetFamily> {
        if n > 31 {
            return Err(Error::SizeGuard {
                what: "ground-set size n",
                got: n as u64,
                limit: 31,
            });
        }
        Ok(SetFamily {
            n,
            masks: BTreeSet::new(),
        })
    }

    pub fn from_masks<I: IntoIterator<Item = u32>>(n: u32, masks: I) -> Result<SetFamily> {
        let mut f = SetFamily::new(n)?;
        for m in masks {
            f.insert(m)?;
        }
        Ok(f)
    }

    pub fn insert(&mut self, mask: u32) -> Result<()> {
        if self.n < 32 && mask >= 1u32 << self.n {
            return Err(Error::VertexOutOfRange {
                vertex: mask,
                universe: 1u32 << self.n,
            });
        }
        self.masks.insert(mask);
        Ok(())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn contains(&self, mask: u32) -> bool {
        self.masks.contains(&mask)
    }

    pub fn masks(&self) -> impl Iterator<Item = u32> + '_ {
        self.masks.iter().copied()
    }

    /// The family as a vertex set of the union hypergraph on `P(n)`.
    pub fn to_vertex_set(&self) -> VertexSet {
        VertexSet::from_ids(1u32 << self.n, self.masks())
    }

    /// No three distinct members satisfy `A ∪ B = C`. Pair scan; agrees
    /// with independence in the union hypergraph.
    pub fn is_union_free(&self) -> bool {
        let v: Vec<u32> = self.masks().collect();
        for i in 0..v.len() {
            for j in (i + 1)..v.len() {
                let c = v[i] | v[j];
                if c != v[i] && c != v[j] && self.masks.contains(&c) {
                    return false;
                }
            }
        }
        true
    }
}

/// Builds the union hypergraph on `P(n)`: one edge per unordered triple of
/// distinct sets `{A, B, C}` with `A ∪ B = C`, head `C`. 1-rooted because
/// a pair `(A, B)` determines its union.
pub fn build_union_hypergraph(n: u32) -> Result<RootedHypergraph> {
    if !(1..=22).contains(&n) {
        return Err(Error::SizeGuard {
            what: "ground-set size n",
            got: n as u64,
            limit: 22,
        });
    }
    let p = 1u32 << n;
    let mut edges = Vec::new();
    // a < b < c always: c = a|b strictly contains b, so the triples below
    // arrive pre-sorted and in canonical lexicographic order.
    for a in 0..p {
        for b in (a + 1)..p {
            let c = a | b;
            if c != a && c != b {
                edges.push(crate::hypergraph::Edge {
                    triple: [a, b, c],
                    head: c,
                });
            }
        }
    }
    Ok(RootedHypergraph::from_canonical(
        p,
        VertexSet::full(p),
        edges,
        1,
    ))
}

fn family_is_union_free(fam_bits: u64, p: u32) -> bool {
    let members: Vec<u32> = (0..p).filter(|&v| fam_bits >> v & 1 == 1).collect();
    for i in 0..members.len() {
        for j in (i + 1)..members.len() {
            let c = members[i] | members[j];
            if c != members[i] && c != members[j] && fam_bits >> c & 1 == 1 {
                return false;
            }
        }
    }
    true
}

/// Exact `α(n)` by exhaustive enumeration of all `2^{2^n}` families with
/// the pair-scan union-free test (independent of the hypergraph route).
pub fn count_union_free(n: u32) -> Result<u64> {
    count_union_free_threaded(n, 1)
}

/// Same census partitioned across `threads` worker threads; the count is
/// a sum of per-chunk counts and therefore independent of `threads`.
pub fn count_union_free_threaded(n: u32, threads: usize) -> Result<u64> {
    if !(1..=4).contains(&n) {
        return Err(Error::SizeGuard {
            what: "ground-set size n for the exhaustive census",
            got: n as u64,
            limit: 4,
        });
    }
    let p = 1u32 << n;
    let total: u64 = 1u64 << p;
    let threads = threads.clamp(1, 64);
    let chunk = total.div_ceil(threads as u64);
    let counts = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..threads as u64 {
            let lo = w * chunk;
            let hi = ((w + 1) * chunk).min(total);
            handles.push(scope.spawn(move || {
                let mut c = 0u64;
                for fam in lo..hi {
                    if family_is_union_free(fam, p) {
                        c += 1;
                    }
                }
                c
            }));
        }
        handles.into_iter().map(|h| h.join().unwrap()).sum::<u64>()
    });
    Ok(counts)
}

/// All `⌊n/2⌋`-subsets of `[n]`; union-free since the union of two
/// distinct members is strictly larger than `⌊n/2⌋`.
pub fn middle_layer(n: u32) -> Result<SetFamily> {
    if n == 0 {
        return Err(Error::SizeGuard {
            what: "ground-set size n",
            got: 0,
            limit: 31,
        });
    }
    let k = n / 2;
    SetFamily::from_masks(n, (0u32..1 << n).filter(|m| m.count_ones() == k))
}

/// Desk-scale evaluation of the final bound assembly for `α(n)`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct AlphaReport {
    pub n: u32,
    pub eps: f64,
    /// Exact census value, available for n ≤ 4.
    pub alpha_exact: Option<u64>,
    /// `C(n, ⌊n/2⌋)`: the exponent of the lower bound `2^C ≤ α(n)`.
    pub lower_exponent: f64,
    pub lower_exponent_exact: String,
    /// `2^{C(n,⌊n/2⌋)} ≤ α(n)`, decided exactly when `alpha_exact` is known.
    pub lower_bound_holds: Option<bool>,
    /// The container-count term `10^44 ε^{-3} (2^n/n) log2 n` (an exponent;
    /// +inf once it exceeds f64 range).
    pub container_count_term: f64,
    /// `(1+100ε) · C(n, ⌊n/2⌋)`: the container-size exponent.
    pub container_size_exponent: f64,
    /// `(1+101ε) · C(n, ⌊n/2⌋)`: the assembled upper-bound exponent.
    pub upper_exponent: f64,
    /// log2 of both sides of the chain comparison (finite for any n).
    pub chain_lhs_log2: f64,
    pub chain_rhs_log2: f64,
    /// `10^44 ε^{-3} (2^n/n) log2 n ≤ ε C(n, ⌊n/2⌋)` at this n, compared in
    /// log space. False until n is astronomically large.
    pub chain_holds: bool,
}

fn chain_lhs_log2(n: f64, eps: f64) -> f64 {
    let log2n = n.log2();
    let loglog = if log2n > 0.0 { log2n.log2() } else { f64::NEG_INFINITY };
    44.0 * 10f64.log2() + 3.0 * (1.0 / eps).log2() + n - log2n + loglog
}

/// Evaluates every term of the final bound chain at this `n` and reports
/// the crossover comparison honestly.
pub fn alpha_bounds(n: u32, eps: f64) -> Result<AlphaReport> {
    if !(eps > 0.0 && eps < 1.0 / 200.0) {
        return Err(Error::OutOfDomain {
            what: "eps",
            got: eps,
            range: "(0, 1/200)",
        });
    }
    if !(1..=100_000).contains(&n) {
        return Err(Error::SizeGuard {
            what: "n for exact term evaluation",
            got: n as u64,
            limit: 100_000,
        });
    }
    let central = binomial(n as u64, (n / 2) as u64);
    let central_log2 = log2_biguint(&central);
    let central_f = num::ToPrimitive::to_f64(&central).unwrap_or(f64::INFINITY);
    let alpha_exact = if n <= 4 { Some(count_union_free(n)?) } else { None };
    let lower_bound_holds = alpha_exact.map(|a| {
        // 2^C ≤ α, exactly.
        let lhs = BigUint::one() << num::ToPrimitive::to_u64(&central).unwrap() as usize;
        lhs <= BigUint::from(a)
    });
    let lhs_log2 = chain_lhs_log2(n as f64, eps);
    let rhs_log2 = eps.log2() + central_log2;
    Ok(AlphaReport {
        n,
        eps,
        alpha_exact,
        lower_exponent: central_f,
        lower_exponent_exact: central.to_string(),
        lower_bound_holds,
        container_count_term: lhs_log2.exp2(),
        container_size_exponent: (1.0 + 100.0 * eps) * central_f,
        upper_exponent: (1.0 + 101.0 * eps) * central_f,
        chain_lhs_log2: lhs_log2,
        chain_rhs_log2: rhs_log2,
        chain_holds: lhs_log2 <= rhs_log2,
    })
}

/// Approximate location of the chain crossover.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct Crossover {
    /// `log2` of the first n at which the chain holds.
    pub log2_n: f64,
    /// The n itself; +inf when it exceeds f64 range.
    pub n: f64,
}

/// The difference `log2(ε·C(n,n/2)) − log2(10^44 ε^{-3} (2^n/n) log2 n)`
/// with the dominant `n` terms cancelled analytically via
/// `C(n, n/2) = 2^n √(2/(πn)) (1 + O(1/n))`, so it stays accurate at
/// astronomically large n. `l` is `log2 n`.
fn chain_diff_log_space(l: f64, eps: f64) -> f64 {
    -4.0 * (1.0 / eps).log2() - 44.0 * 10f64.log2() - 0.5 * (std::f64::consts::PI / 2.0).log2()
        + 0.5 * l
        - l.log2()
}

/// The first `n` at which the chain comparison turns true. The naive
/// difference of the two exponents cancels catastrophically in floating
/// point (both sides grow like n while the gap is O(log n)), so the
/// comparison is solved in `log2 n` space where it is monotone increasing.
/// The answer is astronomically large; no literal upward scan can reach it.
pub fn section4_crossover(eps: f64) -> Result<Crossover> {
    if !(eps > 0.0 && eps < 1.0 / 200.0) {
        return Err(Error::OutOfDomain {
            what: "eps",
            got: eps,
            range: "(0, 1/200)",
        });
    }
    let mut lo = 8.0f64; // log2 n; the difference is increasing past here
    let mut hi = 16.0f64;
    while chain_diff_log_space(hi, eps) < 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > 1e9 {
            return Err(Error::InvalidInput(
                "crossover exceeds representable range".into(),
            ));
        }
    }
    for _ in 0..200 {
        let mid = (lo + hi) / 2.0;
        if chain_diff_log_space(mid, eps) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Crossover {
        log2_n: hi,
        n: hi.exp2(),
    })
}
