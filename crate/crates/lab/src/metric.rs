//! Finite metric analysis: negative-type testing, cut measures and the
//! cut cone, exact minimum l1 distortion via LP, and the tensor-square
//! metric with its distortion lower bound.
//!
//! Distortion convention throughout: embeddings are nonexpanding
//! (l1 distances never exceed the metric), and the distortion D is the
//! worst shrinkage factor. The LP certificate is normalized that way.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::lp::{self, LinearProgram, LpOutcome, Rel, Sense, VarKind};
use crate::scalar::Scalar;
use crate::{tol, Error, Result};

// ---------------------------------------------------------------------------
// FiniteMetric
// ---------------------------------------------------------------------------

/// Symmetric nonnegative distance matrix with zero diagonal. The
/// triangle inequality is *not* assumed; [`triangle_census`] checks it.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetric<S> {
    size: usize,
    dist: Vec<Vec<S>>,
    labels: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct MetricJson {
    labels: Vec<String>,
    dist: Vec<Vec<f64>>,
}

impl<S: Scalar> FiniteMetric<S> {
    pub fn new(dist: Vec<Vec<S>>) -> Result<Self> {
        let size = dist.len();
        if size == 0 {
            return Err(Error::Precondition("metric needs at least one point".into()));
        }
        for (i, row) in dist.iter().enumerate() {
            if row.len() != size {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries in a {size}-point metric",
                    row.len()
                )));
            }
            if !dist[i][i].is_zero() {
                return Err(Error::Precondition(format!("nonzero diagonal at point {i}")));
            }
            for j in 0..size {
                if dist[i][j] < S::zero() {
                    return Err(Error::Precondition(format!(
                        "negative distance at ({i},{j})"
                    )));
                }
                if dist[i][j] != dist[j][i] {
                    return Err(Error::Precondition(format!(
                        "asymmetric distances at ({i},{j})"
                    )));
                }
            }
        }
        Ok(FiniteMetric {
            size,
            dist,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} points",
                labels.len(),
                self.size
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dist(&self, i: usize, j: usize) -> &S {
        &self.dist[i][j]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label_of(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    /// Parse `{"labels": [...], "dist": [[...]]}`.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: MetricJson = serde_json::from_str(s)?;
        if raw.labels.len() != raw.dist.len() {
            return Err(Error::Precondition(format!(
                "{} labels for {} matrix rows",
                raw.labels.len(),
                raw.dist.len()
            )));
        }
        let dist = raw
            .dist
            .iter()
            .map(|row| row.iter().map(|&v| S::from_f64(v)).collect())
            .collect();
        FiniteMetric::new(dist)?.with_labels(raw.labels)
    }

    pub fn to_json_string(&self) -> String {
        let labels = match &self.labels {
            Some(l) => l.clone(),
            None => (0..self.size).map(|i| i.to_string()).collect(),
        };
        let dist = self
            .dist
            .iter()
            .map(|row| row.iter().map(Scalar::as_f64).collect())
            .collect();
        serde_json::to_string(&MetricJson { labels, dist })
            .expect("metric json never fails to serialize")
    }
}

// ---------------------------------------------------------------------------
// Triangle inequality census
// ---------------------------------------------------------------------------

/// One failed triangle: `d(i,k) > d(i,j) + d(j,k)` by `defect`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleViolation<S> {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub defect: S,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleCensus<S> {
    pub triples_checked: u64,
    pub violations: Vec<TriangleViolation<S>>,
}

pub fn triangle_census<S: Scalar>(m: &FiniteMetric<S>) -> TriangleCensus<S> {
    let tol = if S::EXACT {
        S::zero()
    } else {
        S::from_f64(tol::RESIDUAL_ABS)
    };
    let mut census = TriangleCensus {
        triples_checked: 0,
        violations: Vec::new(),
    };
    let n = m.size;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                census.triples_checked += 1;
                // Each unordered triple yields three middle-point choices.
                for (a, b, c) in [(i, j, k), (j, i, k), (i, k, j)] {
                    let defect = m.dist[a][c].clone()
                        - m.dist[a][b].clone()
                        - m.dist[b][c].clone();
                    if defect > tol {
                        census.violations.push(TriangleViolation {
                            i: a,
                            j: b,
                            k: c,
                            defect,
                        });
                    }
                }
            }
        }
    }
    census
}

// ---------------------------------------------------------------------------
// Negative type
// ---------------------------------------------------------------------------

/// Smallest eigenvalue of a symmetric matrix given as dense rows.
pub(crate) fn min_symmetric_eigenvalue(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    if n == 0 {
        return 0.0;
    }
    let m = nalgebra::DMatrix::from_fn(n, n, |i, j| (rows[i][j] + rows[j][i]) / 2.0);
    nalgebra::SymmetricEigen::new(m)
        .eigenvalues
        .iter()
        .fold(f64::INFINITY, |acc, &v| acc.min(v))
}

/// Gram form of the metric seen from `base`:
/// `G_ij = (d(i,base) + d(j,base) - d(i,j)) / 2` over the other points.
pub fn negative_type_gram<S: Scalar>(m: &FiniteMetric<S>, base: usize) -> Result<Vec<Vec<f64>>> {
    if base >= m.size {
        return Err(Error::Precondition(format!(
            "base point {base} out of range for {} points",
            m.size
        )));
    }
    let others: Vec<usize> = (0..m.size).filter(|&p| p != base).collect();
    let gram = others
        .iter()
        .map(|&i| {
            others
                .iter()
                .map(|&j| {
                    (m.dist[i][base].as_f64() + m.dist[j][base].as_f64()
                        - m.dist[i][j].as_f64())
                        / 2.0
                })
                .collect()
        })
        .collect();
    Ok(gram)
}

/// Smallest eigenvalue of the base-point Gram form, for reporting.
pub fn negative_type_eigenvalue<S: Scalar>(m: &FiniteMetric<S>, base: usize) -> Result<f64> {
    Ok(min_symmetric_eigenvalue(&negative_type_gram(m, base)?))
}

/// A metric is of negative type iff its Gram form is PSD; the test
/// tolerates eigenvalue noise proportional to the trace.
pub fn is_negative_type<S: Scalar>(m: &FiniteMetric<S>, base: usize) -> Result<bool> {
    let gram = negative_type_gram(m, base)?;
    let trace: f64 = (0..gram.len()).map(|i| gram[i][i]).sum();
    Ok(min_symmetric_eigenvalue(&gram) >= -tol::PSD_EIG_REL * trace)
}

// ---------------------------------------------------------------------------
// Cut measures
// ---------------------------------------------------------------------------

/// Maximum point count for cut machinery (cuts are u64 bitmasks).
pub const MAX_CUT_POINTS: usize = 64;

/// A weighted family of cuts over a fixed point set. Cuts are stored
/// with point 0 outside the cut (complement-normalized), duplicates
/// merged, weights strictly positive, sorted by mask.
#[derive(Debug, Clone, PartialEq)]
pub struct CutMeasure<S> {
    points: usize,
    cuts: Vec<(u64, S)>,
}

impl<S: Scalar> CutMeasure<S> {
    pub fn new(points: usize, raw: Vec<(u64, S)>) -> Result<Self> {
        if points == 0 || points > MAX_CUT_POINTS {
            return Err(Error::Precondition(format!(
                "cut measure supports 1..={MAX_CUT_POINTS} points, got {points}"
            )));
        }
        let full = if points == 64 {
            u64::MAX
        } else {
            (1u64 << points) - 1
        };
        let mut merged: BTreeMap<u64, S> = BTreeMap::new();
        for (mask, w) in raw {
            if mask & !full != 0 {
                return Err(Error::Precondition(format!(
                    "cut mask {mask:#x} mentions points beyond {points}"
                )));
            }
            if mask == 0 || mask == full {
                return Err(Error::Precondition(
                    "cuts must be nonempty proper subsets".into(),
                ));
            }
            if w <= S::zero() {
                return Err(Error::Precondition("cut weights must be positive".into()));
            }
            // Orient every cut away from point 0.
            let mask = if mask & 1 == 1 { mask ^ full } else { mask };
            match merged.get_mut(&mask) {
                Some(acc) => *acc = acc.clone() + w,
                None => {
                    merged.insert(mask, w);
                }
            }
        }
        Ok(CutMeasure {
            points,
            cuts: merged.into_iter().collect(),
        })
    }

    pub fn empty(points: usize) -> Result<Self> {
        CutMeasure::new(points, Vec::new())
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn cuts(&self) -> &[(u64, S)] {
        &self.cuts
    }

    pub fn total_weight(&self) -> S {
        self.cuts
            .iter()
            .fold(S::zero(), |acc, (_, w)| acc + w.clone())
    }

    /// Induced cut distance: total weight of cuts separating i and j.
    pub fn distance(&self, i: usize, j: usize) -> S {
        debug_assert!(i < self.points && j < self.points);
        let mut acc = S::zero();
        for (mask, w) in &self.cuts {
            if (mask >> i & 1) != (mask >> j & 1) {
                acc = acc + w.clone();
            }
        }
        acc
    }

    pub fn to_metric(&self) -> FiniteMetric<S> {
        let dist = (0..self.points)
            .map(|i| (0..self.points).map(|j| self.distance(i, j)).collect())
            .collect();
        FiniteMetric::new(dist).expect("cut distances form a valid metric")
    }

    /// Scale every weight by `f > 0`.
    pub fn scaled(&self, f: &S) -> Result<Self> {
        if *f <= S::zero() {
            return Err(Error::Precondition("scale factor must be positive".into()));
        }
        Ok(CutMeasure {
            points: self.points,
            cuts: self
                .cuts
                .iter()
                .map(|(m, w)| (*m, w.clone() * f.clone()))
                .collect(),
        })
    }
}

/// Exact cut decomposition of points in coordinate-wise l1 space, via
/// threshold cuts: one cut per gap between consecutive distinct values
/// in each coordinate, weighted by the gap. At most
/// `(points - 1) * dimensions` cuts.
pub fn l1_points_to_cut_measure<S: Scalar>(coords: &[Vec<S>]) -> Result<CutMeasure<S>> {
    let m = coords.len();
    if m == 0 || m > MAX_CUT_POINTS {
        return Err(Error::Precondition(format!(
            "cut decomposition supports 1..={MAX_CUT_POINTS} points, got {m}"
        )));
    }
    let dims = coords[0].len();
    if coords.iter().any(|row| row.len() != dims) {
        return Err(Error::DimensionMismatch(
            "points of differing dimension".into(),
        ));
    }
    let mut cuts = Vec::new();
    for c in 0..dims {
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| {
            coords[a][c]
                .partial_cmp(&coords[b][c])
                .expect("coordinates must be comparable")
        });
        let mut below = 0u64;
        for w in order.windows(2) {
            below |= 1 << w[0];
            let gap = coords[w[1]][c].clone() - coords[w[0]][c].clone();
            if gap > S::zero() {
                cuts.push((below, gap));
            }
        }
    }
    CutMeasure::new(m, cuts)
}

// ---------------------------------------------------------------------------
// Minimum l1 distortion
// ---------------------------------------------------------------------------

/// Size cap for the exact cut-cone LP: 2^(m-1) - 1 cut variables.
pub const MAX_LP_POINTS: usize = 17;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbedMethod {
    PoincareBound,
    CutConeLp,
}

/// Result of a distortion computation: a certified lower bound, the
/// exact optimum when an LP ran, and the optimal (nonexpanding) cut
/// embedding as certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingReport<S> {
    pub c1_lower: f64,
    pub c1_exact: Option<S>,
    pub method: EmbedMethod,
    pub certificate: Option<CutMeasure<S>>,
}

impl<S: Scalar> EmbeddingReport<S> {
    /// JSON with cut masks as hex strings and weights rendered exactly.
    pub fn to_json_value(&self) -> serde_json::Value {
        let cert = self.certificate.as_ref().map(|cm| {
            let cuts: Vec<serde_json::Value> = cm
                .cuts()
                .iter()
                .map(|(mask, w)| {
                    serde_json::json!({
                        "mask": format!("{mask:#x}"),
                        "weight": w.to_string(),
                    })
                })
                .collect();
            serde_json::json!({ "points": cm.points(), "cuts": cuts })
        });
        serde_json::json!({
            "c1_lower": self.c1_lower,
            "c1_exact": self.c1_exact.as_ref().map(|v| v.to_string()),
            "method": match self.method {
                EmbedMethod::PoincareBound => "poincare-bound",
                EmbedMethod::CutConeLp => "cut-cone-lp",
            },
            "certificate": cert,
        })
    }
}

/// Exact minimum l1 distortion by linear programming over the cut cone.
///
/// Variables: one weight per nonempty cut class avoiding point 0
/// (complements identified) plus the distortion D. Constraints per
/// pair: `d(i,j) <= sum of separating weights <= D * d(i,j)` (zero
/// pairs must not be separated), and `D >= 1`. Exact scalars solve the
/// LP in rational arithmetic; floats go through the robust solver.
pub fn min_distortion_l1<S: Scalar>(metric: &FiniteMetric<S>) -> Result<EmbeddingReport<S>> {
    let m = metric.size();
    if m > MAX_LP_POINTS {
        return Err(Error::SizeCap(format!(
            "distortion LP supports <= {MAX_LP_POINTS} points, got {m}"
        )));
    }
    if m == 1 {
        return Ok(EmbeddingReport {
            c1_lower: 1.0,
            c1_exact: Some(S::one()),
            method: EmbedMethod::CutConeLp,
            certificate: Some(CutMeasure::empty(1)?),
        });
    }
    let ncuts = (1usize << (m - 1)) - 1;
    let dvar = ncuts;
    let mut prog = LinearProgram::new(
        Sense::Min,
        (0..=ncuts)
            .map(|v| if v == dvar { S::one() } else { S::zero() })
            .collect(),
        vec![VarKind::NonNeg; ncuts + 1],
    )?;
    let mask_of = |cut: usize| ((cut + 1) as u64) << 1;
    for i in 0..m {
        for j in i + 1..m {
            let mut sep = vec![S::zero(); ncuts + 1];
            for (cut, slot) in sep.iter_mut().enumerate().take(ncuts) {
                let mask = mask_of(cut);
                if (mask >> i & 1) != (mask >> j & 1) {
                    *slot = S::one();
                }
            }
            let d = metric.dist(i, j).clone();
            if d.is_zero() {
                prog.constrain(sep, Rel::Le, S::zero())?;
            } else {
                prog.constrain(sep.clone(), Rel::Ge, d.clone())?;
                sep[dvar] = S::zero() - d;
                prog.constrain(sep, Rel::Le, S::zero())?;
            }
        }
    }
    let mut unit = vec![S::zero(); ncuts + 1];
    unit[dvar] = S::one();
    prog.constrain(unit, Rel::Ge, S::one())?;

    let (x, value): (Vec<S>, S) = if S::EXACT {
        match lp::solve(&prog)?.outcome {
            LpOutcome::Optimal { x, value } => (x, value),
            other => {
                return Err(Error::Invalid(format!(
                    "cut-cone LP cannot be {other:?} on a metric"
                )))
            }
        }
    } else {
        let fprog = LinearProgram {
            sense: prog.sense,
            objective: prog.objective.iter().map(Scalar::as_f64).collect(),
            vars: prog.vars.clone(),
            constraints: prog
                .constraints
                .iter()
                .map(|c| lp::Constraint {
                    coeffs: c.coeffs.iter().map(Scalar::as_f64).collect(),
                    rel: c.rel,
                    rhs: c.rhs.as_f64(),
                })
                .collect(),
        };
        match lp::solve_f64_robust(&fprog)?.outcome {
            LpOutcome::Optimal { x, value } => (
                x.iter().map(|&v| S::from_f64(v)).collect(),
                S::from_f64(value),
            ),
            other => {
                return Err(Error::Invalid(format!(
                    "cut-cone LP cannot be {other:?} on a metric"
                )))
            }
        }
    };

    // Normalize the certificate to the nonexpanding convention by
    // dividing the cut weights by D.
    let cutoff = if S::EXACT {
        S::zero()
    } else {
        S::from_f64(1e-12)
    };
    let cuts: Vec<(u64, S)> = x
        .iter()
        .take(ncuts)
        .enumerate()
        .filter(|(_, w)| **w > cutoff)
        .map(|(cut, w)| (mask_of(cut), w.clone() / value.clone()))
        .collect();
    Ok(EmbeddingReport {
        c1_lower: value.as_f64(),
        c1_exact: Some(value),
        method: EmbedMethod::CutConeLp,
        certificate: Some(CutMeasure::new(m, cuts)?),
    })
}

// ---------------------------------------------------------------------------
// Tensor-square metric
// ---------------------------------------------------------------------------

pub const MAX_TENSOR_DIM: u32 = 8;

/// Distance matrix of the squared-tensor point set: cube points mapped
/// to `u (x) u`, plus the origin. Distances are
/// `d(u,v) = 2n^2 - 2(u.v)^2` and `d(u,0) = n^2`, both exact integers.
///
/// With `merge_antipodes` the zero-distance pairs `u, -u` collapse to
/// one point per antipodal class (the metric proper); without it every
/// cube point stays separate, which is the view the one-extra-point
/// Poincare inequality quantifies over.
pub fn tensor_metric<S: Scalar>(n: u32, merge_antipodes: bool) -> Result<FiniteMetric<S>> {
    if n == 0 || n > MAX_TENSOR_DIM {
        return Err(Error::Precondition(format!(
            "tensor metric supports n in 1..={MAX_TENSOR_DIM}, got {n}"
        )));
    }
    let reps: Vec<u32> = if merge_antipodes {
        // One representative per antipodal class: highest coordinate -1.
        (0..1u32 << (n - 1)).collect()
    } else {
        (0..1u32 << n).collect()
    };
    let nn = i64::from(n) * i64::from(n);
    let mut labels = vec!["0".to_string()];
    let prefix = if merge_antipodes { "±" } else { "" };
    for &u in &reps {
        labels.push(format!("{prefix}{u:0width$b}", width = n as usize));
    }
    let m = reps.len() + 1;
    let mut dist = vec![vec![S::zero(); m]; m];
    for (a, &u) in reps.iter().enumerate() {
        dist[0][a + 1] = S::from_int(nn);
        dist[a + 1][0] = S::from_int(nn);
        for (b, &v) in reps.iter().enumerate().skip(a + 1) {
            let dot = i64::from(n) - 2 * i64::from((u ^ v).count_ones());
            let d = 2 * nn - 2 * dot * dot;
            dist[a + 1][b + 1] = S::from_int(d);
            dist[b + 1][a + 1] = S::from_int(d);
        }
    }
    FiniteMetric::new(dist)?.with_labels(labels)
}

/// Distortion forced on the squared-tensor metric by the cube Poincaré
/// inequality: D(n) = (8/7)(4α+1/2) / (4α+1/2 + 1/(2(n−1))).
///
/// Strictly increasing in n with limit 8/7, and strictly below 8/7 for
/// every finite n — the asymptotic constant is approached but never hit.
pub fn poincare_distortion_bound(n: u32, c: &crate::isoperimetry::PoincareConstants) -> Result<f64> {
    if n < 2 {
        return Err(Error::Precondition(format!(
            "distortion bound needs n >= 2, got {n}"
        )));
    }
    let half_ratio = 4.0 * c.alpha + 0.5;
    Ok(c.factor / (half_ratio + 1.0 / (2.0 * (f64::from(n) - 1.0))))
}

// ---------------------------------------------------------------------------
// Cut rounding
// ---------------------------------------------------------------------------

/// Outcome of rounding an ℓ1-embeddable SDP solution to a vertex cover.
///
/// `lambda_sum` and `weighted_half_sum` use the ±1 cut representation
/// ‖v_i−v_j‖² = Σ λ_t |f_t(i)−f_t(j)|, whose λ_t is half the indicator
/// weight stored in a [`CutMeasure`]; at an optimal solution λ sums to 2
/// and the cover is as small as the relaxation objective.
#[derive(Debug, Clone, PartialEq)]
pub struct CutRounding {
    pub cover_mask: u64,
    pub cover_size: u32,
    /// The set I_t = {i : f_t(i) = −1} per cut, as a vertex bitmask.
    pub independent_masks: Vec<u64>,
    pub independent_sizes: Vec<u32>,
    pub max_independent: u32,
    /// Σ λ_t.
    pub lambda_sum: f64,
    /// Σ λ_t |I_t| / 2, the relaxation's bound on max |I_t|.
    pub weighted_half_sum: f64,
}

/// Rounds a solution whose ‖·‖² metric is cut-decomposed by `cm`: each
/// cut's −1 side (orienting f_t(0) = +1) must be an independent set, and
/// the complement of the largest one is returned as a vertex cover.
///
/// The caller supplies `cm` reproducing `sol.sq_distance` (checked, 1e-9)
/// over all point pairs; a cut side that contains an edge is rejected,
/// which is exactly the symptom of a solution that was not feasible for
/// the base relaxation.
pub fn cut_rounding(
    g: &crate::graph::Graph,
    sol: &crate::relaxations::VectorSolution,
    cm: &CutMeasure<f64>,
) -> Result<CutRounding> {
    let n = g.order();
    if sol.points() != n + 1 || cm.points() != n + 1 {
        return Err(Error::DimensionMismatch(format!(
            "graph needs {} points, solution has {} and cut measure {}",
            n + 1,
            sol.points(),
            cm.points()
        )));
    }
    for i in 0..=n {
        for j in i + 1..=n {
            let d = cm.distance(i, j);
            let want = sol.sq_distance(i, j);
            if (d - want).abs() > tol::RESIDUAL_ABS {
                return Err(Error::Precondition(format!(
                    "cut measure distance {d} at ({i},{j}) does not reproduce ‖·‖² = {want}"
                )));
            }
        }
    }

    let mut independent_masks = Vec::with_capacity(cm.cuts().len());
    let mut independent_sizes = Vec::with_capacity(cm.cuts().len());
    let mut lambda_sum = 0.0;
    let mut weighted_half_sum = 0.0;
    let mut best: Option<(u32, u64)> = None;
    for &(mask, weight) in cm.cuts() {
        // Masks are normalized away from point 0, so the mask side is the
        // −1 side and shifts down to a vertex set.
        let vmask = mask >> 1;
        for &(u, v) in g.edges() {
            if vmask >> u & 1 == 1 && vmask >> v & 1 == 1 {
                return Err(Error::Invalid(format!(
                    "cut side {vmask:#x} contains edge ({u},{v}): not independent, \
                     so the solution violates an edge constraint"
                )));
            }
        }
        let size = vmask.count_ones();
        let lambda = weight / 2.0;
        lambda_sum += lambda;
        weighted_half_sum += lambda * f64::from(size) / 2.0;
        independent_masks.push(vmask);
        independent_sizes.push(size);
        if best.map_or(true, |(s, _)| size > s) {
            best = Some((size, vmask));
        }
    }

    let (max_independent, best_mask) = best.unwrap_or((0, 0));
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let cover_mask = full & !best_mask;
    Ok(CutRounding {
        cover_mask,
        cover_size: cover_mask.count_ones(),
        independent_masks,
        independent_sizes,
        max_independent,
        lambda_sum,
        weighted_half_sum,
    })
}
