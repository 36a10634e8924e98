//! Small finite graphs with bitset adjacency, exact minimum vertex
//! cover, shortest-path metrics, and the Hamming gap-instance builder.
//!
//! Everything here is deliberately tiny: orders up to 64 so a
//! neighborhood is one machine word, exact cover search up to 32
//! vertices. The interesting instances (cycles, complete bipartite
//! graphs, Hamming graphs on cube vertices) are all in that range or
//! are kept implicit.

use serde::{Deserialize, Serialize};

use crate::cube::binomial;
use crate::metric::FiniteMetric;
use crate::scalar::Scalar;
use crate::{Error, Result};

pub const MAX_ORDER: usize = 64;
pub const MAX_EXACT_COVER_ORDER: usize = 32;

// ---------------------------------------------------------------------------
// Graph
// ---------------------------------------------------------------------------

/// Undirected simple graph on at most [`MAX_ORDER`] vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    order: usize,
    adj: Vec<u64>,
    edges: Vec<(usize, usize)>,
    labels: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::Precondition(format!(
                "graph order {order} not in 1..={MAX_ORDER}"
            )));
        }
        Ok(Graph {
            order,
            adj: vec![0; order],
            edges: Vec::new(),
            labels: None,
        })
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(order)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.order || v >= self.order {
            return Err(Error::Precondition(format!(
                "edge ({u},{v}) out of range for order {}",
                self.order
            )));
        }
        if u == v {
            return Err(Error::Precondition(format!("self-loop at vertex {u}")));
        }
        if self.adj[u] >> v & 1 == 1 {
            return Err(Error::Precondition(format!("duplicate edge ({u},{v})")));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        let e = (u.min(v), u.max(v));
        let pos = self.edges.partition_point(|x| x < &e);
        self.edges.insert(pos, e);
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.order
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.order && v < self.order);
        self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        debug_assert!(v < self.order);
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.neighbors(v).count_ones()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen: u64 = 1; // vertex 0
        let mut frontier: u64 = 1;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == self.order
    }

    // -- canned families used throughout the gap experiments ----------------

    pub fn complete(k: usize) -> Result<Self> {
        let mut g = Graph::new(k)?;
        for u in 0..k {
            for v in u + 1..k {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    pub fn cycle(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::Precondition(format!("cycle needs >= 3 vertices, got {k}")));
        }
        let mut g = Graph::new(k)?;
        for v in 0..k {
            g.add_edge(v, (v + 1) % k)?;
        }
        Ok(g)
    }

    /// Complete bipartite graph; part sizes `a` then `b`, vertices of
    /// the first part come first.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::Precondition("both parts must be nonempty".into()));
        }
        let mut g = Graph::new(a + b)?;
        for u in 0..a {
            for v in 0..b {
                g.add_edge(u, a + v)?;
            }
        }
        Ok(g)
    }

    // -- JSON interchange ----------------------------------------------------

    /// Parse `{"n": ..., "edges": [[i,j], ...]}`; rejects self-loops,
    /// duplicates, and out-of-range endpoints.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(s)?;
        Graph::from_edges(raw.n, &raw.edges)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&GraphJson {
            n: self.order,
            edges: self.edges.clone(),
        })
        .expect("graph json never fails to serialize")
    }
}

// ---------------------------------------------------------------------------
// Minimum vertex cover
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexCover {
    pub size: u32,
    /// Bit v set iff vertex v is in the cover.
    pub mask: u64,
}

/// Exact minimum vertex cover by branch and bound on the complementary
/// maximum independent set.
pub fn min_vertex_cover(g: &Graph) -> Result<VertexCover> {
    if g.order > MAX_EXACT_COVER_ORDER {
        return Err(Error::SizeCap(format!(
            "exact cover supports order <= {MAX_EXACT_COVER_ORDER}, got {}",
            g.order
        )));
    }
    let full = if g.order == 64 {
        u64::MAX
    } else {
        (1u64 << g.order) - 1
    };
    let mut best = (0u32, 0u64); // size and members of the best independent set
    mis_branch(&g.adj, full, 0, 0, &mut best);
    Ok(VertexCover {
        size: g.order as u32 - best.0,
        mask: full & !best.1,
    })
}

fn mis_branch(adj: &[u64], cand: u64, cur_size: u32, cur_set: u64, best: &mut (u32, u64)) {
    if cur_size + cand.count_ones() <= best.0 {
        return;
    }
    if cand == 0 {
        *best = (cur_size, cur_set);
        return;
    }
    // Branch on the candidate with the most candidate neighbors: the
    // include branch then removes the most vertices.
    let mut pivot = cand.trailing_zeros() as usize;
    let mut pivot_deg = 0;
    let mut scan = cand;
    while scan != 0 {
        let v = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        let deg = (adj[v] & cand).count_ones();
        if deg > pivot_deg {
            pivot = v;
            pivot_deg = deg;
        }
    }
    if pivot_deg == 0 {
        // Remaining candidates are pairwise nonadjacent: take them all.
        let size = cur_size + cand.count_ones();
        if size > best.0 {
            *best = (size, cur_set | cand);
        }
        return;
    }
    mis_branch(
        adj,
        cand & !adj[pivot] & !(1 << pivot),
        cur_size + 1,
        cur_set | 1 << pivot,
        best,
    );
    mis_branch(adj, cand & !(1 << pivot), cur_size, cur_set, best);
}

/// Check that `mask` covers every edge.
pub fn is_vertex_cover(g: &Graph, mask: u64) -> bool {
    g.edges()
        .iter()
        .all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1)
}

// ---------------------------------------------------------------------------
// Shortest-path metric
// ---------------------------------------------------------------------------

/// All-pairs shortest-path distances with unit edge lengths.
pub fn graph_metric<S: Scalar>(g: &Graph) -> Result<FiniteMetric<S>> {
    let n = g.order;
    let mut dist = vec![vec![S::zero(); n]; n];
    for start in 0..n {
        let mut hop = vec![u32::MAX; n];
        hop[start] = 0;
        let mut frontier: u64 = 1 << start;
        let mut level = 0u32;
        while frontier != 0 {
            level += 1;
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= g.adj[v];
            }
            let mut fresh = next;
            let mut scan = fresh;
            while scan != 0 {
                let v = scan.trailing_zeros() as usize;
                scan &= scan - 1;
                if hop[v] != u32::MAX {
                    fresh &= !(1 << v);
                } else {
                    hop[v] = level;
                }
            }
            frontier = fresh;
        }
        if hop.iter().any(|&h| h == u32::MAX) {
            return Err(Error::Disconnected);
        }
        for v in 0..n {
            dist[start][v] = S::from_int(i64::from(hop[v]));
        }
    }
    let metric = FiniteMetric::new(dist)?;
    match &g.labels {
        Some(l) => metric.with_labels(l.clone()),
        None => Ok(metric),
    }
}

// ---------------------------------------------------------------------------
// Hamming gap instances
// ---------------------------------------------------------------------------

/// Implicit description of the Hamming graph on `{-1,1}^n` whose edges
/// connect points at a fixed distance `d = n - n/(4t)`; equivalently,
/// at inner product `-lambda * n` with `lambda = 1 - 1/(2t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HammingInstance {
    pub n: u32,
    pub t: u32,
    /// Inner product of adjacent points, `n - 2d`.
    pub edge_dot: i64,
    /// Hamming distance of adjacent points.
    pub edge_distance: u32,
}

/// Largest dimension for brute-force neighborhood counts (2^n points).
pub const MAX_BRUTE_DIM: u32 = 16;

pub fn hamming_graph(n: u32, t: u32) -> Result<HammingInstance> {
    if t == 0 {
        return Err(Error::Precondition("parameter t must be positive".into()));
    }
    if n == 0 || n % (4 * t) != 0 {
        return Err(Error::Precondition(format!("4t = {} must divide n = {n}", 4 * t)));
    }
    let d = n - n / (4 * t);
    let instance = HammingInstance {
        n,
        t,
        edge_dot: i64::from(n) - 2 * i64::from(d),
        edge_distance: d,
    };
    debug_assert_eq!(instance.edge_dot.rem_euclid(2), i64::from(n).rem_euclid(2));
    debug_assert!(instance.edge_dot.unsigned_abs() <= u64::from(n));
    Ok(instance)
}

impl HammingInstance {
    /// Common degree of every vertex: the number of points at distance
    /// exactly `d`.
    pub fn degree(&self) -> u64 {
        binomial(u64::from(self.n), u64::from(self.edge_distance))
    }

    /// Degree recomputed by scanning all 2^n points.
    pub fn brute_degree(&self) -> Result<u64> {
        if self.n > MAX_BRUTE_DIM {
            return Err(Error::SizeCap(format!(
                "brute-force degree supports n <= {MAX_BRUTE_DIM}, got {}",
                self.n
            )));
        }
        let count = (0..1u64 << self.n)
            .filter(|v| v.count_ones() == self.edge_distance)
            .count() as u64;
        Ok(count)
    }

    /// The distance-regularity argument wants an even edge distance;
    /// parameter choices that break that still define a graph, so they
    /// warn instead of failing.
    pub fn odd_distance_warning(&self) -> Option<String> {
        (self.edge_distance % 2 == 1).then(|| {
            format!(
                "edge distance d = {} is odd (n = {}, t = {}); the gap argument needs d even",
                self.edge_distance, self.n, self.t
            )
        })
    }

    /// Build the graph explicitly; only dimensions whose 2^n vertices
    /// fit the [`Graph`] cap are allowed.
    pub fn materialize(&self) -> Result<Graph> {
        if 1usize << self.n > MAX_ORDER {
            return Err(Error::SizeCap(format!(
                "2^{} vertices exceed the explicit graph cap of {MAX_ORDER}",
                self.n
            )));
        }
        let vertices = 1usize << self.n;
        let mut g = Graph::new(vertices)?;
        for u in 0..vertices {
            for v in u + 1..vertices {
                if ((u ^ v) as u64).count_ones() == self.edge_distance {
                    g.add_edge(u, v)?;
                }
            }
        }
        Ok(g)
    }
}
