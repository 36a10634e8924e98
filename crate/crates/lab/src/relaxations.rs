//! Gram-backed candidate solutions for the vertex-cover SDP hierarchy and
//! exhaustive tier-by-tier feasibility audits.
//!
//! A candidate lives on the point set {0} ∪ V: position 0 is the apex vector
//! v_0 and position i+1 carries vertex i.  Every constraint in the hierarchy
//! is an inner-product expression, so solutions are stored Gram-first and
//! explicit coordinates stay optional (the Charikar-style vectors live in
//! dimension n^{2t}+n+1, which is wasteful to materialize for large t).
//!
//! Four tiers are audited.  `Standard` is the base relaxation: unit norms
//! plus the edge equalities (v_i−v_0)·(v_j−v_0) = 0.  `Triangle` adds the
//! squared-Euclidean triangle inequalities over all triples of points.
//! `Karakostas` instead adds them over the reflection-closed point set
//! {±v_i}, and `Pentagonal` adds the (2,3)-hypermetric inequalities on top
//! of the triangle tier.  Triangle-and-up tiers are supersets of Standard,
//! so audit verdicts are monotone by construction.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cube::binomial;
use crate::graph::{self, Graph};
use crate::metric::FiniteMetric;
use crate::tol;
use crate::{Error, Result, Shard};

// ---------------------------------------------------------------- tiers ----

/// Constraint tier of the relaxation hierarchy.
///
/// `Triangle` strengthens `Standard`; `Karakostas` and `Pentagonal` both
/// strengthen `Triangle` and are incomparable siblings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Standard,
    Triangle,
    Karakostas,
    Pentagonal,
}

impl Tier {
    pub const ALL: [Tier; 4] = [
        Tier::Standard,
        Tier::Triangle,
        Tier::Karakostas,
        Tier::Pentagonal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Tier::Standard => "standard",
            Tier::Triangle => "triangle",
            Tier::Karakostas => "karakostas",
            Tier::Pentagonal => "pentagonal",
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Tier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "standard" | "edge" => Ok(Tier::Standard),
            "triangle" => Ok(Tier::Triangle),
            "karakostas" => Ok(Tier::Karakostas),
            "pentagonal" => Ok(Tier::Pentagonal),
            other => Err(Error::Invalid(format!(
                "unknown tier '{other}' (expected standard|triangle|karakostas|pentagonal)"
            ))),
        }
    }
}

// ------------------------------------------------------------- solutions ----

/// Candidate SDP solution: a unit-diagonal Gram matrix over {0} ∪ V, with
/// optional explicit coordinates that reproduce it.
#[derive(Clone, Debug)]
pub struct VectorSolution {
    gram: Vec<Vec<f64>>,
    realization: Option<Vec<Vec<f64>>>,
}

impl VectorSolution {
    /// Wraps a Gram matrix. Requires a square, symmetric matrix with unit
    /// diagonal (both within 1e-9); positive semidefiniteness is checked
    /// separately by [`VectorSolution::validate`] since it costs O(N^3).
    pub fn from_gram(gram: Vec<Vec<f64>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(Error::Invalid("empty Gram matrix".into()));
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "Gram row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if !row.iter().all(|x| x.is_finite()) {
                return Err(Error::Invalid(format!("non-finite entry in Gram row {i}")));
            }
            if (row[i] - 1.0).abs() > tol::RESIDUAL_ABS {
                return Err(Error::Invalid(format!(
                    "Gram diagonal entry {i} is {} (unit vectors required)",
                    row[i]
                )));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if (gram[i][j] - gram[j][i]).abs() > tol::RESIDUAL_ABS {
                    return Err(Error::Invalid(format!(
                        "Gram is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(Self {
            gram,
            realization: None,
        })
    }

    /// Builds a solution from explicit coordinates (one row per point); the
    /// Gram matrix is derived and the rows are kept as the realization.
    pub fn from_coords(coords: Vec<Vec<f64>>) -> Result<Self> {
        let n = coords.len();
        if n == 0 {
            return Err(Error::Invalid("empty coordinate list".into()));
        }
        let d = coords[0].len();
        if coords.iter().any(|row| row.len() != d) {
            return Err(Error::DimensionMismatch(
                "coordinate rows have unequal lengths".into(),
            ));
        }
        let gram: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| dot_f64(&coords[i], &coords[j])).collect())
            .collect();
        let mut sol = Self::from_gram(gram)?;
        sol.realization = Some(coords);
        Ok(sol)
    }

    /// Attaches explicit coordinates to an existing Gram, verifying that
    /// their inner products reproduce it within 1e-9.
    pub fn attach_realization(&mut self, coords: Vec<Vec<f64>>) -> Result<()> {
        let n = self.points();
        if coords.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "realization has {} rows, Gram has {n}",
                coords.len()
            )));
        }
        let d = coords[0].len();
        if coords.iter().any(|row| row.len() != d) {
            return Err(Error::DimensionMismatch(
                "coordinate rows have unequal lengths".into(),
            ));
        }
        for i in 0..n {
            for j in i..n {
                let g = dot_f64(&coords[i], &coords[j]);
                if (g - self.gram[i][j]).abs() > tol::REALIZATION_EQ {
                    return Err(Error::Invalid(format!(
                        "realization disagrees with Gram at ({i},{j}): {} vs {}",
                        g, self.gram[i][j]
                    )));
                }
            }
        }
        self.realization = Some(coords);
        Ok(())
    }

    /// The ±1 solution encoding a vertex cover: v_i = v_0 on the cover and
    /// v_i = −v_0 off it. Fails if `cover_mask` is not a vertex cover of `g`.
    pub fn integral(g: &Graph, cover_mask: u64) -> Result<Self> {
        let n = g.order();
        if n < 64 && cover_mask >= 1u64 << n {
            return Err(Error::Precondition(format!(
                "cover mask {cover_mask:#x} has bits outside the {n}-vertex range"
            )));
        }
        if !graph::is_vertex_cover(g, cover_mask) {
            return Err(Error::Precondition(
                "mask is not a vertex cover of the graph".into(),
            ));
        }
        let mut coords = Vec::with_capacity(n + 1);
        coords.push(vec![1.0]);
        for v in 0..n {
            let s = if cover_mask >> v & 1 == 1 { 1.0 } else { -1.0 };
            coords.push(vec![s]);
        }
        Self::from_coords(coords)
    }

    /// Number of points, |V| + 1.
    pub fn points(&self) -> usize {
        self.gram.len()
    }

    /// Number of graph vertices the solution is sized for.
    pub fn vertices(&self) -> usize {
        self.gram.len() - 1
    }

    pub fn gram(&self) -> &[Vec<f64>] {
        &self.gram
    }

    pub fn realization(&self) -> Option<&[Vec<f64>]> {
        self.realization.as_deref()
    }

    /// Inner product v_i · v_j of points (apex = 0, vertex v = v+1).
    pub fn dot(&self, i: usize, j: usize) -> f64 {
        self.gram[i][j]
    }

    /// Squared Euclidean distance ‖v_i − v_j‖².
    pub fn sq_distance(&self, i: usize, j: usize) -> f64 {
        self.gram[i][i] + self.gram[j][j] - 2.0 * self.gram[i][j]
    }

    /// The ‖·‖² distances as a finite metric space on all points (apex
    /// first), clamping the tiny negative rounding residue at zero.
    pub fn sq_metric(&self) -> Result<FiniteMetric<f64>> {
        let n = self.points();
        let mut dist = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let d = self.sq_distance(i, j).max(0.0);
                dist[i][j] = d;
                dist[j][i] = d;
            }
        }
        FiniteMetric::new(dist)
    }

    /// Positive semidefiniteness audit: smallest eigenvalue of the Gram must
    /// be ≥ −1e-8 · trace.
    pub fn validate(&self) -> Result<()> {
        let min_eig = crate::metric::min_symmetric_eigenvalue(&self.gram);
        let trace: f64 = (0..self.points()).map(|i| self.gram[i][i]).sum();
        if min_eig < -tol::PSD_EIG_REL * trace {
            return Err(Error::NotPsd(min_eig));
        }
        Ok(())
    }

    /// Relaxation objective Σ_{i∈V} (1 + v_0·v_i)/2.
    pub fn objective_vc(&self) -> f64 {
        (1..self.points())
            .map(|i| (1.0 + self.gram[0][i]) / 2.0)
            .sum()
    }

    /// The equivalent distance form Σ_{i∈V} (1 − ‖v_0 − v_i‖²/4); agrees
    /// with [`VectorSolution::objective_vc`] to rounding error.
    pub fn objective_distance_form(&self) -> f64 {
        (1..self.points())
            .map(|i| 1.0 - self.sq_distance(0, i) / 4.0)
            .sum()
    }
}

fn dot_f64(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

// ---------------------------------------------------------------- audits ----

/// Outcome of a tier audit.
///
/// `worst_violation` is the maximum over the census of the constraint
/// violation: |residual| for the edge equalities and −slack for the
/// inequalities, so it is ≤ tol exactly when the solution is feasible (it
/// can be negative when every inequality has slack to spare; it is 0 when
/// the census is empty).  `violating_witness` lists the points of the worst
/// constraint — entries are positions in {0} ∪ V (apex = 0), and in the
/// Karakostas census a reflected point −v_k appears as −(k+1).  Ties are
/// broken toward the lexicographically smallest witness, which also makes
/// the audit deterministic under sharding.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FeasibilityReport {
    pub tier: Tier,
    pub feasible: bool,
    pub worst_violation: f64,
    pub violating_witness: Vec<i64>,
    pub constraints_checked: u64,
    /// True when the pentagonal census was too large to exhaust and fell
    /// back to the seeded sample (above [`PENTAGONAL_EXACT_MAX`] points).
    pub sampled: bool,
    pub objective_vc: f64,
    pub objective_distance_form: f64,
}

/// Largest point count for which the pentagonal census is exhausted.
pub const PENTAGONAL_EXACT_MAX: usize = 40;
/// Sample size of the seeded pentagonal sweep above the exact cap.
pub const PENTAGONAL_SAMPLES: u64 = 1_000_000;
// Fixed stream so sampled audits are reproducible run to run.
pub(crate) const PENTAGONAL_SAMPLE_SEED: u64 = 0x5eed_5135;

/// Running worst constraint of a census shard.
#[derive(Clone, Debug)]
struct Worst {
    violation: f64,
    witness: Vec<i64>,
}

impl Worst {
    fn none() -> Self {
        Self {
            violation: f64::NEG_INFINITY,
            witness: Vec::new(),
        }
    }

    fn offer<F: FnOnce() -> Vec<i64>>(&mut self, violation: f64, witness: F) {
        if violation > self.violation {
            self.violation = violation;
            self.witness = witness();
        } else if violation == self.violation {
            let w = witness();
            if self.witness.is_empty() || w < self.witness {
                self.witness = w;
            }
        }
    }

    fn absorb(&mut self, other: Worst) {
        if other.violation > self.violation
            || (other.violation == self.violation
                && !other.witness.is_empty()
                && (self.witness.is_empty() || other.witness < self.witness))
        {
            self.violation = other.violation;
            self.witness = other.witness;
        }
    }
}

/// Audits `sol` against every constraint of `tier` on `g` and reports the
/// worst violation. Feasible ⇔ worst violation ≤ `tol`.
///
/// The census is exact except for the pentagonal family above
/// [`PENTAGONAL_EXACT_MAX`] points, which switches to all 5-tuples through
/// the apex plus a fixed-seed uniform sample of the rest (apex-free tuples
/// cannot violate for the constructions of interest, whose off-apex points
/// carry an ℓ1 metric).
pub fn check_tier(sol: &VectorSolution, g: &Graph, tier: Tier, tol: f64) -> Result<FeasibilityReport> {
    check_tier_threaded(sol, g, tier, tol, 1)
}

/// [`check_tier`] with the census sharded over `threads` workers. The report
/// is identical for every thread count.
pub fn check_tier_threaded(
    sol: &VectorSolution,
    g: &Graph,
    tier: Tier,
    tol: f64,
    threads: usize,
) -> Result<FeasibilityReport> {
    if sol.points() != g.order() + 1 {
        return Err(Error::DimensionMismatch(format!(
            "solution has {} points but the graph needs {}",
            sol.points(),
            g.order() + 1
        )));
    }
    sol.validate()?;

    let parts = crate::run_sharded(threads, |shard| {
        let mut worst = Worst::none();
        let mut checked = 0u64;
        edge_census(sol, g, shard, &mut worst, &mut checked);
        match tier {
            Tier::Standard => {}
            Tier::Triangle => triangle_census(sol, shard, &mut worst, &mut checked),
            Tier::Karakostas => signed_triangle_census(sol, shard, &mut worst, &mut checked),
            Tier::Pentagonal => {
                triangle_census(sol, shard, &mut worst, &mut checked);
                if sol.points() <= PENTAGONAL_EXACT_MAX {
                    pentagonal_census_exact(sol, shard, &mut worst, &mut checked);
                } else {
                    pentagonal_census_apex(sol, shard, &mut worst, &mut checked);
                }
            }
        }
        (worst, checked)
    });

    let mut worst = Worst::none();
    let mut checked = 0u64;
    for (w, c) in parts {
        worst.absorb(w);
        checked += c;
    }

    let sampled = tier == Tier::Pentagonal && sol.points() > PENTAGONAL_EXACT_MAX;
    if sampled {
        // Deterministic regardless of thread count: the sampled sweep runs
        // as a single fixed-seed pass.
        pentagonal_census_sampled(sol, &mut worst, &mut checked);
    }

    let worst_violation = if checked == 0 { 0.0 } else { worst.violation };
    Ok(FeasibilityReport {
        tier,
        feasible: worst_violation <= tol,
        worst_violation,
        violating_witness: worst.witness,
        constraints_checked: checked,
        sampled,
        objective_vc: sol.objective_vc(),
        objective_distance_form: sol.objective_distance_form(),
    })
}

/// Edge equalities (v_i − v_0)·(v_j − v_0) = 0; violation = |residual|.
fn edge_census(sol: &VectorSolution, g: &Graph, shard: Shard, worst: &mut Worst, checked: &mut u64) {
    let gm = &sol.gram;
    for (idx, &(u, v)) in g.edges().iter().enumerate() {
        if !shard.owns(idx as u64) {
            continue;
        }
        let (i, j) = (u + 1, v + 1);
        let r = gm[i][j] - gm[0][i] - gm[0][j] + gm[0][0];
        worst.offer(r.abs(), || vec![i as i64, j as i64]);
        *checked += 1;
    }
}

/// Triangle inequalities (v_x − v_y)·(v_z − v_y) ≥ 0 over all point triples
/// and all three center choices; witness is [center, x, z] with x < z.
fn triangle_census(sol: &VectorSolution, shard: Shard, worst: &mut Worst, checked: &mut u64) {
    let gm = &sol.gram;
    let n = sol.points();
    let mut idx = 0u64;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if shard.owns(idx) {
                    for (y, x, z) in [(a, b, c), (b, a, c), (c, a, b)] {
                        let slack = gm[x][z] - gm[x][y] - gm[y][z] + gm[y][y];
                        worst.offer(-slack, || vec![y as i64, x as i64, z as i64]);
                        *checked += 1;
                    }
                }
                idx += 1;
            }
        }
    }
}

// Signed points 0..2N stand for {+v_k} then {−v_k}; the global reflection
// p ↦ (p+N) mod 2N fixes no triple, so each constraint family is visited
// once by keeping only triples lexicographically ≤ their reflected image.
fn signed_triangle_census(sol: &VectorSolution, shard: Shard, worst: &mut Worst, checked: &mut u64) {
    let gm = &sol.gram;
    let n = sol.points();
    let m = 2 * n;
    let sg = |p: usize, q: usize| -> f64 {
        let s = if (p < n) == (q < n) { 1.0 } else { -1.0 };
        s * gm[p % n][q % n]
    };
    let encode = |p: usize| -> i64 {
        if p < n {
            p as i64
        } else {
            -((p - n) as i64 + 1)
        }
    };
    let mut idx = 0u64;
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                let mut img = [(a + n) % m, (b + n) % m, (c + n) % m];
                img.sort_unstable();
                if img < [a, b, c] {
                    continue; // reflected copy of a triple already visited
                }
                if shard.owns(idx) {
                    for (y, x, z) in [(a, b, c), (b, a, c), (c, a, b)] {
                        let slack = sg(x, z) - sg(x, y) - sg(y, z) + gm[y % n][y % n];
                        worst.offer(-slack, || {
                            // Canonical witness: reflect so the center is a
                            // +v point, then list the other two in encoded
                            // order.
                            let flip = y >= n;
                            let enc = |p: usize| encode(if flip { (p + n) % m } else { p });
                            let (mut ex, mut ez) = (enc(x), enc(z));
                            if ex > ez {
                                std::mem::swap(&mut ex, &mut ez);
                            }
                            vec![enc(y), ex, ez]
                        });
                        *checked += 1;
                    }
                }
                idx += 1;
            }
        }
    }
}

/// Slack of the (2,3)-hypermetric inequality for S = {s0,s1}, T = {t0,t1,t2}
/// in the ‖·‖² metric: Σ_{s,t} d(s,t) − d(s0,s1) − Σ_{t<t'} d(t,t').
fn pentagonal_slack(sol: &VectorSolution, s: [usize; 2], t: [usize; 3]) -> f64 {
    let mut cross = 0.0;
    for &a in &s {
        for &b in &t {
            cross += sol.sq_distance(a, b);
        }
    }
    let within = sol.sq_distance(s[0], s[1])
        + sol.sq_distance(t[0], t[1])
        + sol.sq_distance(t[0], t[2])
        + sol.sq_distance(t[1], t[2]);
    cross - within
}

// The 10 ways to pick S (two positions) out of a sorted 5-tuple.
pub(crate) const SPLITS: [(usize, usize); 10] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (1, 2),
    (1, 3),
    (1, 4),
    (2, 3),
    (2, 4),
    (3, 4),
];

fn offer_pentagonal(
    sol: &VectorSolution,
    quint: [usize; 5],
    worst: &mut Worst,
    checked: &mut u64,
    split: Option<usize>,
) {
    for (k, &(i, j)) in SPLITS.iter().enumerate() {
        if let Some(only) = split {
            if k != only {
                continue;
            }
        }
        let s = [quint[i], quint[j]];
        let mut t = [0usize; 3];
        let mut w = 0;
        for (pos, &p) in quint.iter().enumerate() {
            if pos != i && pos != j {
                t[w] = p;
                w += 1;
            }
        }
        let slack = pentagonal_slack(sol, s, t);
        worst.offer(-slack, || {
            vec![s[0] as i64, s[1] as i64, t[0] as i64, t[1] as i64, t[2] as i64]
        });
        *checked += 1;
    }
}

fn pentagonal_census_exact(sol: &VectorSolution, shard: Shard, worst: &mut Worst, checked: &mut u64) {
    let n = sol.points();
    let mut idx = 0u64;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    for e in d + 1..n {
                        if shard.owns(idx) {
                            offer_pentagonal(sol, [a, b, c, d, e], worst, checked, None);
                        }
                        idx += 1;
                    }
                }
            }
        }
    }
}

/// All 5-tuples through the apex (point 0), used above the exact cap.
fn pentagonal_census_apex(sol: &VectorSolution, shard: Shard, worst: &mut Worst, checked: &mut u64) {
    let n = sol.points();
    let mut idx = 0u64;
    for b in 1..n {
        for c in b + 1..n {
            for d in c + 1..n {
                for e in d + 1..n {
                    if shard.owns(idx) {
                        offer_pentagonal(sol, [0, b, c, d, e], worst, checked, None);
                    }
                    idx += 1;
                }
            }
        }
    }
}

/// Fixed-seed uniform sweep of apex-free 5-tuples (one split each).
fn pentagonal_census_sampled(sol: &VectorSolution, worst: &mut Worst, checked: &mut u64) {
    let n = sol.points();
    let mut rng = ChaCha8Rng::seed_from_u64(PENTAGONAL_SAMPLE_SEED);
    for _ in 0..PENTAGONAL_SAMPLES {
        let mut quint = [0usize; 5];
        let mut w = 0;
        while w < 5 {
            let p = rng.gen_range(1..n);
            if !quint[..w].contains(&p) {
                quint[w] = p;
                w += 1;
            }
        }
        quint.sort_unstable();
        let split = rng.gen_range(0..SPLITS.len());
        offer_pentagonal(sol, quint, worst, checked, Some(split));
    }
}

/// Constraint count of the exact census at each tier, for N points and m
/// edges: the edge equalities, 3·C(N,3) triangle inequalities, 3·C(2N,3)/2
/// reflection-closed ones, and 10·C(N,5) pentagonal ones.
pub fn census_size(tier: Tier, points: usize, edges: usize) -> u64 {
    let n = points as u64;
    let m = edges as u64;
    match tier {
        Tier::Standard => m,
        Tier::Triangle => m + 3 * binomial(n, 3),
        Tier::Karakostas => m + 3 * binomial(2 * n, 3) / 2,
        Tier::Pentagonal => m + 3 * binomial(n, 3) + 10 * binomial(n, 5),
    }
}

// ----------------------------------------------------------------- tests ----
