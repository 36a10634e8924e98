//! Corpus builders and naive oracles shared by the acceptance run.
//!
//! Everything here is deliberately independent of the library's own
//! machinery: graphs are generated by canonical augmentation over raw
//! adjacency masks, covers come from a full subset sweep, and the
//! isoperimetry oracle walks plain nested loops. Where the library and
//! an oracle disagree, the oracle wins.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vc_gap_lab::graph::Graph;
use vc_gap_lab::lp::{LinearProgram, Rel, Sense, VarKind};
use vc_gap_lab::metric::{CutMeasure, FiniteMetric};

pub fn seeded_rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xacce_0000 ^ tag)
}

// ---------------------------------------------------------- graph corpus ----

/// Up-to-isomorphism counts used to self-check the generator.
pub const ALL_GRAPH_COUNTS: [usize; 8] = [1, 2, 4, 11, 34, 156, 1044, 12346];
pub const CONNECTED_GRAPH_COUNTS: [usize; 8] = [1, 1, 2, 6, 21, 112, 853, 11117];

fn edge_bit(i: usize, j: usize) -> u32 {
    // i < j; triangular index, 28 bits suffice for 8 vertices.
    (j * (j - 1) / 2 + i) as u32
}

fn edge_mask(adj: &[u8]) -> u32 {
    let mut mask = 0u32;
    for j in 1..adj.len() {
        for i in 0..j {
            if adj[i] >> j & 1 == 1 {
                mask |= 1 << edge_bit(i, j);
            }
        }
    }
    mask
}

fn adj_from_mask(n: usize, mask: u32) -> Vec<u8> {
    let mut adj = vec![0u8; n];
    for j in 1..n {
        for i in 0..j {
            if mask >> edge_bit(i, j) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    adj
}

/// Iterated neighborhood refinement: a cheap isomorphism invariant per
/// vertex, used only to shrink the permutation search.
fn vertex_invariants(adj: &[u8]) -> Vec<u64> {
    let n = adj.len();
    let mut inv: Vec<u64> = adj.iter().map(|m| u64::from(m.count_ones())).collect();
    for _ in 0..3 {
        let mut next = Vec::with_capacity(n);
        for v in 0..n {
            let mut peers: Vec<u64> = (0..n).filter(|&u| adj[v] >> u & 1 == 1).map(|u| inv[u]).collect();
            peers.sort_unstable();
            let mut h = inv[v].wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(1);
            for p in peers {
                h = h.wrapping_mul(31).wrapping_add(p.wrapping_mul(0xff51_afd7_ed55_8ccd));
            }
            next.push(h);
        }
        inv = next;
    }
    inv
}

fn best_over_cells(
    adj: &[u8],
    cells: &[Vec<usize>],
    perm: &mut Vec<usize>,
    used: &mut u8,
    best: &mut u32,
) {
    let n = adj.len();
    if perm.len() == n {
        let mut mask = 0u32;
        for j in 1..n {
            for i in 0..j {
                if adj[perm[i]] >> perm[j] & 1 == 1 {
                    mask |= 1 << edge_bit(i, j);
                }
            }
        }
        if mask < *best {
            *best = mask;
        }
        return;
    }
    // Positions fill cell by cell, so only permutations respecting the
    // invariant ordering are visited.
    let mut seen = 0;
    let cell = cells
        .iter()
        .find(|c| {
            let here = perm.len() >= seen && perm.len() < seen + c.len();
            if !here {
                seen += c.len();
            }
            here
        })
        .expect("positions stay in range");
    for &v in cell {
        if *used >> v & 1 == 0 {
            *used |= 1 << v;
            perm.push(v);
            best_over_cells(adj, cells, perm, used, best);
            perm.pop();
            *used &= !(1 << v);
        }
    }
}

/// Minimum edge mask over all invariant-respecting vertex orderings —
/// a canonical form for graphs on up to 8 vertices.
pub fn canonical_form(adj: &[u8]) -> u32 {
    let n = adj.len();
    let inv = vertex_invariants(adj);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (inv[v], v));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match cells.last_mut() {
            Some(cell) if inv[cell[0]] == inv[v] => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = u32::MAX;
    let mut perm = Vec::with_capacity(n);
    let mut used = 0u8;
    best_over_cells(adj, &cells, &mut perm, &mut used, &mut best);
    best
}

fn is_connected_adj(adj: &[u8]) -> bool {
    let n = adj.len();
    let mut seen = 1u8;
    let mut frontier = 1u8;
    while frontier != 0 {
        let mut next = 0u8;
        for v in 0..n {
            if frontier >> v & 1 == 1 {
                next |= adj[v];
            }
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen.count_ones() as usize == n
}

/// Every graph on 1..=max_n vertices up to isomorphism, grouped by
/// order, built by augmenting each (n−1)-vertex graph with a new vertex
/// of every possible neighborhood and deduplicating canonical forms.
pub fn graphs_up_to_iso(max_n: usize) -> Vec<Vec<Vec<u8>>> {
    assert!((1..=8).contains(&max_n));
    let mut by_n: Vec<Vec<Vec<u8>>> = vec![Vec::new(); max_n + 1];
    by_n[1].push(vec![0u8]);
    for n in 2..=max_n {
        let mut canon_seen: HashSet<u32> = HashSet::new();
        let mut labeled_seen: HashSet<u32> = HashSet::new();
        let mut out = Vec::new();
        for parent in &by_n[n - 1] {
            for nb in 0u16..(1 << (n - 1)) {
                let nb = nb as u8;
                let mut adj: Vec<u8> = parent.clone();
                adj.push(nb);
                for v in 0..n - 1 {
                    if nb >> v & 1 == 1 {
                        adj[v] |= 1 << (n - 1);
                    }
                }
                if !labeled_seen.insert(edge_mask(&adj)) {
                    continue;
                }
                let canon = canonical_form(&adj);
                if canon_seen.insert(canon) {
                    out.push(adj_from_mask(n, canon));
                }
            }
        }
        by_n[n] = out;
    }
    by_n.remove(0);
    by_n
}

/// The criterion-11 corpus: all connected graphs on 1..=max_n vertices
/// up to isomorphism, with per-order counts for self-checking.
pub fn connected_graphs_up_to_iso(max_n: usize) -> (Vec<Graph>, Vec<usize>, Vec<usize>) {
    let by_n = graphs_up_to_iso(max_n);
    let all_counts: Vec<usize> = by_n.iter().map(Vec::len).collect();
    let mut connected_counts = Vec::new();
    let mut graphs = Vec::new();
    for group in &by_n {
        let mut count = 0;
        for adj in group {
            if !is_connected_adj(adj) {
                continue;
            }
            count += 1;
            let n = adj.len();
            let mut edges = Vec::new();
            for j in 1..n {
                for i in 0..j {
                    if adj[i] >> j & 1 == 1 {
                        edges.push((i, j));
                    }
                }
            }
            graphs.push(Graph::from_edges(n, &edges).expect("generator emits simple graphs"));
        }
        connected_counts.push(count);
    }
    (graphs, all_counts, connected_counts)
}

/// Reference minimum vertex cover: full subset sweep, smallest mask on
/// ties.
pub fn brute_force_vc(g: &Graph) -> (u32, u64) {
    let n = g.order();
    let mut best = (n as u32, (1u64 << n) - 1);
    for mask in 0..1u64 << n {
        let size = mask.count_ones();
        if size >= best.0 {
            continue;
        }
        if g.edges()
            .iter()
            .all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1)
        {
            best = (size, mask);
        }
    }
    best
}

// ---------------------------------------------------- isoperimetry oracle ----

/// (mask, size, boundary, p, slack) for every judged subset with
/// negative slack, plus the judged count — from raw nested loops.
pub fn naive_iso_census(n: u32, restrict_small: bool) -> (u64, Vec<(u64, u64, u64, u64, f64)>) {
    let points = 1u64 << n;
    let full = (1u64 << points) - 1;
    let mut checked = 0;
    let mut violations = Vec::new();
    for mask in 0..=full {
        let size = mask.count_ones() as u64;
        if restrict_small && size > points / 2 {
            continue;
        }
        checked += 1;
        let mut boundary = 0u64;
        let mut p = 0u64;
        for u in 0..points {
            if mask >> u & 1 == 0 {
                continue;
            }
            for i in 0..n {
                if mask >> (u ^ (1 << i)) & 1 == 0 {
                    boundary += 1;
                }
            }
            if mask >> (u ^ (points - 1)) & 1 == 1 {
                p += 1;
            }
        }
        let bound = if size == 0 {
            0.0
        } else {
            size as f64 * (f64::from(n) - (size as f64).log2()) + p as f64
        };
        let slack = boundary as f64 - bound;
        if slack < -1e-9 {
            violations.push((mask, size, boundary, p, slack));
        }
    }
    violations.sort_by_key(|v| v.0);
    (checked, violations)
}

// ------------------------------------------------------- metric corpora ----

/// Structured plus seeded-random cut measures on 5..=8 points with
/// dyadic weights, so every derived distance is exact in f64.
pub fn cut_measure_corpus() -> Vec<CutMeasure<f64>> {
    let mut corpus = Vec::new();
    // Coordinate cuts of the 3-cube: the Hamming metric on 8 points.
    let coord_cuts: Vec<(u64, f64)> = (0..3)
        .map(|i| {
            let side: u64 = (0..8u64).filter(|u| u >> i & 1 == 1).map(|u| 1 << u).sum();
            (side, 1.0)
        })
        .collect();
    corpus.push(CutMeasure::new(8, coord_cuts).unwrap());
    // A star: point 0 split off from everyone else.
    corpus.push(CutMeasure::new(5, vec![(0b11110, 2.0)]).unwrap());
    // Nested cuts along a path.
    corpus.push(
        CutMeasure::new(
            6,
            (1..6).map(|k| (((1u64 << 6) - 1) & !((1 << k) - 1), 0.5)).collect(),
        )
        .unwrap(),
    );
    let mut rng = seeded_rng(4);
    for points in 5..=8usize {
        for _ in 0..10 {
            let full = (1u64 << points) - 1;
            let cuts: Vec<(u64, f64)> = (0..rng.gen_range(3..=10))
                .map(|_| {
                    let mask = rng.gen_range(1..full);
                    let w = f64::from(rng.gen_range(1..=16u32)) / 8.0;
                    (mask, w)
                })
                .collect();
            corpus.push(CutMeasure::new(points, cuts).unwrap());
        }
    }
    corpus
}

/// Random valid 3-point metrics via star weights (every 3-point metric
/// has this form), including tight-triangle degenerations.
pub fn three_point_metrics(count: usize) -> Vec<FiniteMetric<f64>> {
    let mut rng = seeded_rng(9);
    let mut out = Vec::new();
    let from_star = |x: f64, y: f64, z: f64| {
        FiniteMetric::new(vec![
            vec![0.0, x + y, x + z],
            vec![x + y, 0.0, y + z],
            vec![x + z, y + z, 0.0],
        ])
        .unwrap()
    };
    out.push(from_star(1.0, 1.0, 1.0));
    out.push(from_star(0.0, 0.5, 2.0));
    out.push(from_star(1.0, 1.0, 0.0));
    while out.len() < count {
        let mut w = [0.0f64; 3];
        for v in &mut w {
            *v = f64::from(rng.gen_range(0..=16u32)) / 8.0;
        }
        // At most one zero weight keeps all distances positive.
        if w.iter().filter(|v| **v == 0.0).count() > 1 {
            continue;
        }
        out.push(from_star(w[0], w[1], w[2]));
    }
    out
}

// ------------------------------------------------------------ random LPs ----

/// Small bounded Max programs on a dyadic grid: always feasible at the
/// origin unless an extra Ge/Eq row forbids it, and always bounded by a
/// box row, so outcomes stay comparable across scalar types. The coarse
/// grid provokes degenerate ties on purpose.
pub fn random_lp(rng: &mut ChaCha8Rng) -> LinearProgram<f64> {
    let vars = rng.gen_range(3..=6usize);
    let grid = |rng: &mut ChaCha8Rng, lo: u32, hi: u32| f64::from(rng.gen_range(lo..=hi)) / 4.0;
    let objective: Vec<f64> = (0..vars).map(|_| grid(rng, 1, 8)).collect();
    let mut lp = LinearProgram::new(Sense::Max, objective, vec![VarKind::NonNeg; vars]).unwrap();
    lp.constrain(vec![1.0; vars], Rel::Le, grid(rng, 8, 16)).unwrap();
    for _ in 0..rng.gen_range(2..=4usize) {
        let coeffs: Vec<f64> = (0..vars)
            .map(|_| if rng.gen_bool(0.3) { 0.0 } else { grid(rng, 1, 4) })
            .collect();
        lp.constrain(coeffs, Rel::Le, grid(rng, 2, 8)).unwrap();
    }
    if rng.gen_bool(0.3) {
        let coeffs: Vec<f64> = (0..vars)
            .map(|_| if rng.gen_bool(0.5) { 0.0 } else { 1.0 })
            .collect();
        lp.constrain(coeffs, Rel::Ge, grid(rng, 1, 2)).unwrap();
    }
    if rng.gen_bool(0.2) {
        let coeffs: Vec<f64> = (0..vars)
            .map(|_| if rng.gen_bool(0.5) { 0.0 } else { grid(rng, 1, 2) })
            .collect();
        lp.constrain(coeffs, Rel::Eq, grid(rng, 1, 4)).unwrap();
    }
    lp
}
