//! The tensored-cube gap family: the plateau polynomial q and its
//! closure parameter beta, implicit audits of every relaxation tier
//! over dot classes and sign profiles, explicit coordinates on demand,
//! and the closed-form l1 images certifying 1+beta distortion.
//!
//! Point 0 is the apex; point k >= 1 carries cube vertex mask k-1 of
//! the (±1)^n cube. Every pairwise inner product depends only on the
//! vertex dot product, so feasibility sweeps run over dot classes and
//! sign profiles instead of concrete tuples, and instances far beyond
//! materializable sizes stay checkable.

use serde::Serialize;

use crate::cube;
use crate::pentagon::{self, CharikarPentagonalCensus};
use crate::relaxations::{Tier, VectorSolution, PENTAGONAL_SAMPLES};
use crate::scalar::Scalar;
use crate::{run_sharded, tol, Error, Result, Shard};

/// Largest supported t: the exact integer closed forms for the linear
/// coefficient of q need (2t-1)^(2t-1) and (2t)^(2t-2) inside i64.
pub const MAX_T: u32 = 8;

/// Total float budget for materialized Grams, realizations, and l1
/// images; anything larger stays implicit.
pub const MATERIALIZE_FLOATS: u64 = 8_000_000;

// ------------------------------------------------------------ q and beta ----

fn checked_t(t: u32) -> Result<()> {
    if t == 0 {
        return Err(Error::Precondition("t must be at least 1".into()));
    }
    if t > MAX_T {
        return Err(Error::SizeCap(format!(
            "t = {t} exceeds the exact-arithmetic cap {MAX_T}"
        )));
    }
    Ok(())
}

/// lambda = 1 - 1/(2t); the minimum of q sits at -lambda.
fn lambda_of<S: Scalar>(t: u32) -> S {
    S::from_ratio(i64::from(2 * t - 1), i64::from(2 * t))
}

/// The linear coefficient 2t·lambda^(2t-1) = (2t-1)^(2t-1) / (2t)^(2t-2),
/// kept as an exact integer ratio.
fn linear_coeff_of<S: Scalar>(t: u32) -> S {
    let b = i64::from(2 * t);
    let num = (b - 1).checked_pow(2 * t - 1).expect("fits in i64 for t <= 8");
    let den = b.checked_pow(2 * t - 2).expect("fits in i64 for t <= 8");
    S::from_ratio(num, den)
}

/// q(x) = x^(2t) + 2t·lambda^(2t-1)·x: the even power plus the tilt
/// that flattens it exactly at -lambda.
pub fn q_eval<S: Scalar>(x: &S, t: u32) -> Result<S> {
    checked_t(t)?;
    Ok(x.powi(2 * t) + linear_coeff_of::<S>(t) * x.clone())
}

/// The closure parameter beta = (q(1) + q(-lambda)) / (q(1) - q(-lambda)),
/// the unique apex height making the edge constraint tight.
pub fn solve_beta<S: Scalar>(t: u32) -> Result<S> {
    checked_t(t)?;
    let lambda: S = lambda_of(t);
    let q_one = S::one() + linear_coeff_of::<S>(t);
    let q_min = q_eval(&-lambda, t)?;
    Ok((q_one.clone() + q_min.clone()) / (q_one - q_min))
}

// ------------------------------------------------------------- parameters ----

/// Parameters of one gap instance: cube dimension n (a multiple of 4t)
/// and plateau order t, with the derived constants cached exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct CharikarParams<S> {
    pub t: u32,
    pub n: u32,
    /// 1 - 1/(2t); instance edges join vertices at correlation -lambda.
    pub lambda: S,
    /// 1/(4t): the disagreement margin fed to the cover lower bound.
    pub gamma: S,
    /// 2t·lambda^(2t-1) as an exact ratio.
    pub q_linear_coeff: S,
    /// Inner product of the apex with every cube image.
    pub beta: S,
}

impl<S: Scalar> CharikarParams<S> {
    pub fn new(t: u32, n: u32) -> Result<Self> {
        checked_t(t)?;
        if n == 0 || n > 32 {
            return Err(Error::Precondition(format!(
                "cube dimension must lie in 1..=32, got {n}"
            )));
        }
        if n % (4 * t) != 0 {
            return Err(Error::Precondition(format!(
                "4t = {} must divide n = {n}",
                4 * t
            )));
        }
        Ok(Self {
            t,
            n,
            lambda: lambda_of(t),
            gamma: S::from_ratio(1, i64::from(4 * t)),
            q_linear_coeff: linear_coeff_of(t),
            beta: solve_beta(t)?,
        })
    }

    pub fn q(&self, x: &S) -> S {
        x.powi(2 * self.t) + self.q_linear_coeff.clone() * x.clone()
    }

    pub fn q_one(&self) -> S {
        S::one() + self.q_linear_coeff.clone()
    }

    /// q at the edge correlation -lambda: the global minimum of q.
    pub fn q_at_edge(&self) -> S {
        self.q(&-self.lambda.clone())
    }

    pub fn q_of_dot(&self, d: i64) -> S {
        self.q(&S::from_ratio(d, i64::from(self.n)))
    }

    /// Inner product of two cube images with vertex dot product d:
    /// beta² + (1 - beta²)·q(d/n)/q(1).
    pub fn y_of_dot(&self, d: i64) -> S {
        let b2 = self.beta.clone() * self.beta.clone();
        b2.clone() + (S::one() - b2) * self.q_of_dot(d) / self.q_one()
    }

    /// Vertex dot product across an instance edge: n/(2t) - n = -lambda·n.
    pub fn edge_dot(&self) -> i64 {
        i64::from(self.n / (2 * self.t)) - i64::from(self.n)
    }

    /// Hamming distance across an instance edge: n - n/(4t).
    pub fn edge_hamming(&self) -> u32 {
        self.n - self.n / (4 * self.t)
    }

    pub fn dot_of_hamming(&self, h: usize) -> i64 {
        i64::from(self.n) - 2 * h as i64
    }

    /// The defining identity of beta, evaluated literally:
    /// 1 - 2beta + beta² + (1-beta²)·q(-lambda)/q(1). Zero exactly.
    pub fn beta_residual(&self) -> S {
        let b = self.beta.clone();
        let b2 = b.clone() * b.clone();
        S::one() - S::from_int(2) * b
            + b2.clone()
            + (S::one() - b2) * self.q_at_edge() / self.q_one()
    }

    pub fn summary(&self) -> ParamsSummary {
        ParamsSummary {
            t: self.t,
            n: self.n,
            lambda: self.lambda.as_f64(),
            gamma: self.gamma.as_f64(),
            q_linear_coeff: self.q_linear_coeff.as_f64(),
            beta: self.beta.as_f64(),
            edge_dot: self.edge_dot(),
        }
    }
}

/// Float view of the instance parameters, for reports.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParamsSummary {
    pub t: u32,
    pub n: u32,
    pub lambda: f64,
    pub gamma: f64,
    pub q_linear_coeff: f64,
    pub beta: f64,
    pub edge_dot: i64,
}

/// Residual of the edge equality y(edge) + 1 - 2beta; identically zero
/// by the choice of beta.
pub fn edge_residual<S: Scalar>(params: &CharikarParams<S>) -> S {
    params.y_of_dot(params.edge_dot()) + S::one() - S::from_int(2) * params.beta.clone()
}

// --------------------------------------------------------------- solution ----

/// The implicit SDP point family: an apex plus one unit vector per
/// cube vertex, addressed as 0 (apex) and mask+1.
#[derive(Clone, Debug, PartialEq)]
pub struct CharikarSolution<S> {
    params: CharikarParams<S>,
}

impl<S: Scalar> CharikarSolution<S> {
    pub fn new(params: CharikarParams<S>) -> Self {
        Self { params }
    }

    pub fn params(&self) -> &CharikarParams<S> {
        &self.params
    }

    /// 2^n cube images plus the apex.
    pub fn points(&self) -> u64 {
        (1u64 << self.params.n) + 1
    }

    /// Inner product of points i and j (unit norms, apex row beta).
    pub fn y(&self, i: u64, j: u64) -> S {
        debug_assert!(i < self.points() && j < self.points());
        if i == j {
            return S::one();
        }
        if i == 0 || j == 0 {
            return self.params.beta.clone();
        }
        let diff = (i - 1) ^ (j - 1);
        self.params
            .y_of_dot(i64::from(self.params.n) - 2 * i64::from(diff.count_ones()))
    }

    /// Squared distance 2 - 2y between points i and j.
    pub fn sq_distance(&self, i: u64, j: u64) -> S {
        S::from_int(2) - S::from_int(2) * self.y(i, j)
    }

    /// SDP objective Σ (1 + v0·vi)/2 = (1+beta)/2 · 2^n.
    pub fn objective(&self) -> S {
        (S::one() + self.params.beta.clone()) / S::from_int(2)
            * S::from_int(1i64 << self.params.n)
    }

    /// Concrete unit vectors reproducing the Gram: a scaled 2t-fold
    /// tensor-power block, a scaled linear block, and a constant last
    /// coordinate carrying the apex projection. Only within the float
    /// budget; the implicit Gram is the primary object everywhere else.
    pub fn materialize(&self) -> Result<VectorSolution> {
        let p = &self.params;
        let n = p.n as usize;
        let pts = u128::from(self.points());
        let tensor_dim = u128::from(p.n).pow(2 * p.t);
        let dim = tensor_dim + p.n as u128 + 1;
        let budget = pts * pts + pts * dim;
        if budget > u128::from(MATERIALIZE_FLOATS) {
            return Err(Error::SizeCap(format!(
                "materializing t={}, n={} needs {budget} floats (budget {MATERIALIZE_FLOATS})",
                p.t, p.n
            )));
        }
        let pts = pts as usize;
        let tensor_dim = tensor_dim as usize;
        let dim = dim as usize;

        let beta = p.beta.as_f64();
        let y_by_h: Vec<f64> = (0..=n)
            .map(|h| p.y_of_dot(p.dot_of_hamming(h)).as_f64())
            .collect();
        let mut gram = vec![vec![0.0f64; pts]; pts];
        gram[0][0] = 1.0;
        for i in 1..pts {
            gram[0][i] = beta;
            gram[i][0] = beta;
            gram[i][i] = 1.0;
            for j in i + 1..pts {
                let h = (((i - 1) ^ (j - 1)) as u64).count_ones() as usize;
                gram[i][j] = y_by_h[h];
                gram[j][i] = y_by_h[h];
            }
        }
        let mut sol = VectorSolution::from_gram(gram)?;

        // sqrt(C)·(u'^{⊗2t}, sqrt(2t·lambda^{2t-1})·u', 0) + beta·e_last
        // with C = (1-beta²)/q(1) and u' = u/sqrt(n): tensor entries are
        // ±sqrt(C)/n^t, linear entries ±sqrt(C·q_lin/n).
        let c = (1.0 - beta * beta) / p.q_one().as_f64();
        let tensor_scale = c.sqrt() / (p.n as f64).powi(p.t as i32);
        let linear_scale = (c * p.q_linear_coeff.as_f64() / p.n as f64).sqrt();
        let mut coords = vec![vec![0.0f64; dim]; pts];
        coords[0][dim - 1] = 1.0;
        for (i, row) in coords.iter_mut().enumerate().skip(1) {
            let mask = (i - 1) as u64;
            let sign = |l: usize| if mask >> l & 1 == 1 { 1.0f64 } else { -1.0 };
            let mut digits = vec![0usize; 2 * p.t as usize];
            for v in row.iter_mut().take(tensor_dim) {
                let mut prod = tensor_scale;
                for &l in &digits {
                    prod *= sign(l);
                }
                *v = prod;
                for l in digits.iter_mut() {
                    *l += 1;
                    if *l < n {
                        break;
                    }
                    *l = 0;
                }
            }
            for l in 0..n {
                row[tensor_dim + l] = linear_scale * sign(l);
            }
            row[dim - 1] = beta;
        }
        sol.attach_realization(coords)?;
        Ok(sol)
    }
}

// --------------------------------------------------------------- censuses ----

/// A constraint class pinned by its family name, the sign profile or
/// dot classes involved, the centered member, and any reflections.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProfileWitness {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<u32>>,
    /// Member acting as the difference center, where the family has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center: Option<u32>,
    /// Reflection signs applied to members, in family-documented order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signs: Option<Vec<i8>>,
    /// Vertex dot products pinning the class.
    pub dots: Vec<i64>,
}

/// Census verdict for one tier: the worst violation over every
/// constraint class, the class attaining it, and the pentagonal
/// sub-census when that tier asks for one.
#[derive(Clone, Debug, PartialEq)]
pub struct TierCensus<S> {
    pub tier: Tier,
    /// max(|edge residual|, -min inequality slack); exactly 0 for a
    /// tight feasible instance in exact arithmetic.
    pub worst: S,
    pub witness: Option<ProfileWitness>,
    pub families_checked: u64,
    pub pentagon: Option<CharikarPentagonalCensus<S>>,
}

// Tie keys order families as 0 edge, 1 apex-centered, 2 cube-centered,
// 3 cube-triangle, 4 signed-apex-centered, 5 signed-cube-centered,
// 6 signed-cube-triangle, 7 reflection-cube, 8 reflection-apex,
// 9..=11 pentagonal (apex-pair, apex-triple, sampled); then the
// family-specific coordinates. Smaller key wins ties, which keeps
// census results independent of the thread count.
struct WorstClass<S> {
    violation: Option<S>,
    key: Vec<i64>,
    witness: Option<ProfileWitness>,
    checked: u64,
}

impl<S: Scalar> WorstClass<S> {
    fn new() -> Self {
        Self {
            violation: None,
            key: Vec::new(),
            witness: None,
            checked: 0,
        }
    }

    fn place(&mut self, violation: S, key: Vec<i64>, witness: ProfileWitness) {
        match &self.violation {
            Some(best) if violation < *best => {}
            Some(best) if violation == *best => {
                if key < self.key {
                    self.key = key;
                    self.witness = Some(witness);
                }
            }
            _ => {
                self.violation = Some(violation);
                self.key = key;
                self.witness = Some(witness);
            }
        }
    }

    fn offer<F>(&mut self, violation: S, describe: F)
    where
        F: FnOnce() -> (Vec<i64>, ProfileWitness),
    {
        self.checked += 1;
        let interesting = match &self.violation {
            Some(best) => violation >= *best,
            None => true,
        };
        if interesting {
            let (key, witness) = describe();
            self.place(violation, key, witness);
        }
    }

    fn absorb(&mut self, other: Self) {
        self.checked += other.checked;
        if let Some(v) = other.violation {
            let w = other.witness.expect("a violation always carries a witness");
            self.place(v, other.key, w);
        }
    }
}

fn y_table<S: Scalar>(p: &CharikarParams<S>) -> Vec<S> {
    (0..=p.n as usize)
        .map(|h| p.y_of_dot(p.dot_of_hamming(h)))
        .collect()
}

fn smul<S: Scalar>(s: i8, v: S) -> S {
    if s < 0 {
        -v
    } else {
        v
    }
}

const SIGN_PAIRS: [(i8, i8); 4] = [(1, 1), (-1, 1), (1, -1), (-1, -1)];

/// The edge equality (v_i - v_0)·(v_j - v_0) = 0, i.e. y(edge)+1-2beta.
fn edge_scan<S: Scalar>(p: &CharikarParams<S>, acc: &mut WorstClass<S>) {
    let r = edge_residual(p);
    acc.offer(r.abs(), || {
        (
            vec![0, i64::from(p.edge_hamming())],
            ProfileWitness {
                family: "edge".into(),
                counts: None,
                center: None,
                signs: None,
                dots: vec![p.edge_dot()],
            },
        )
    });
}

/// Triangles centered at the apex with two (optionally reflected) cube
/// ends: slack s1·s2·y(d) - s1·beta - s2·beta + 1 over every dot class.
fn apex_centered_scan<S: Scalar>(
    p: &CharikarParams<S>,
    y: &[S],
    signed: bool,
    acc: &mut WorstClass<S>,
) {
    let (family, rank) = if signed {
        ("signed-apex-centered", 4i64)
    } else {
        ("apex-centered", 1)
    };
    let pairs: &[(i8, i8)] = if signed { &SIGN_PAIRS } else { &SIGN_PAIRS[..1] };
    for h in 1..=p.n as usize {
        for &(s1, s2) in pairs {
            let slack = smul(s1 * s2, y[h].clone())
                - smul(s1, p.beta.clone())
                - smul(s2, p.beta.clone())
                + S::one();
            acc.offer(-slack, || {
                (
                    vec![rank, h as i64, i64::from(s1), i64::from(s2)],
                    ProfileWitness {
                        family: family.into(),
                        counts: None,
                        center: None,
                        signs: signed.then(|| vec![s1, s2]),
                        dots: vec![p.dot_of_hamming(h)],
                    },
                )
            });
        }
    }
}

/// Triangles centered at a cube vertex with the (optionally reflected)
/// apex and a second vertex as ends: slack s0·s2·beta - s0·beta
/// - s2·y(d) + 1; the unsigned case is 1 - y(d) >= 0.
fn cube_centered_scan<S: Scalar>(
    p: &CharikarParams<S>,
    y: &[S],
    signed: bool,
    acc: &mut WorstClass<S>,
) {
    let (family, rank) = if signed {
        ("signed-cube-centered", 5i64)
    } else {
        ("cube-centered", 2)
    };
    let pairs: &[(i8, i8)] = if signed { &SIGN_PAIRS } else { &SIGN_PAIRS[..1] };
    for h in 1..=p.n as usize {
        for &(s0, s2) in pairs {
            let slack = smul(s0 * s2, p.beta.clone())
                - smul(s0, p.beta.clone())
                - smul(s2, y[h].clone())
                + S::one();
            acc.offer(-slack, || {
                (
                    vec![rank, h as i64, i64::from(s0), i64::from(s2)],
                    ProfileWitness {
                        family: family.into(),
                        counts: None,
                        center: None,
                        signs: signed.then(|| vec![s0, s2]),
                        dots: vec![p.dot_of_hamming(h)],
                    },
                )
            });
        }
    }
}

/// Triangles on three distinct cube vertices, every center, and in the
/// signed case every end-reflection class (the center normalized to +).
fn cube_triangle_scan<S: Scalar>(
    p: &CharikarParams<S>,
    y: &[S],
    signed: bool,
    shard: Shard,
    acc: &mut WorstClass<S>,
) {
    let (family, rank) = if signed {
        ("signed-cube-triangle", 6i64)
    } else {
        ("cube-triangle", 3)
    };
    let pairs: &[(i8, i8)] = if signed { &SIGN_PAIRS } else { &SIGN_PAIRS[..1] };
    let n = i64::from(p.n);
    let h = |d: i64| ((n - d) / 2) as usize;
    let profiles = cube::enumerate_profiles(p.n, 3, shard).expect("k = 3 is supported");
    for prof in profiles {
        let d01 = prof.dot(0, 1);
        let d02 = prof.dot(0, 2);
        let d12 = prof.dot(1, 2);
        if d01 == n || d02 == n || d12 == n {
            // Coincident vertices: every instance collapses to a pair
            // constraint already covered by the dot-class scans.
            continue;
        }
        for (center, d_ab, d_ac, d_bc) in
            [(0u32, d12, d01, d02), (1, d02, d01, d12), (2, d01, d02, d12)]
        {
            for &(sa, sb) in pairs {
                let slack = smul(sa * sb, y[h(d_ab)].clone())
                    - smul(sa, y[h(d_ac)].clone())
                    - smul(sb, y[h(d_bc)].clone())
                    + S::one();
                acc.offer(-slack, || {
                    let mut key = vec![rank];
                    key.extend(prof.counts().iter().map(|&v| i64::from(v)));
                    key.extend([i64::from(center), i64::from(sa), i64::from(sb)]);
                    (
                        key,
                        ProfileWitness {
                            family: family.into(),
                            counts: Some(prof.counts().to_vec()),
                            center: Some(center),
                            signs: signed.then(|| vec![sa, sb]),
                            dots: vec![d_ab, d_ac, d_bc],
                        },
                    )
                });
            }
        }
    }
}

/// Reflected pairs {v, -v} against a third vertex s·w: centered at the
/// third vertex the form telescopes to zero; centered inside the pair
/// it is 2 ∓ 2·s·y(d). Member order [+v, -v, s·w].
fn reflection_cube_scan<S: Scalar>(p: &CharikarParams<S>, y: &[S], acc: &mut WorstClass<S>) {
    let two = S::from_int(2);
    for h in 1..=p.n as usize {
        for s in [1i8, -1] {
            let wit = |center: u32| ProfileWitness {
                family: "reflection-cube".into(),
                counts: None,
                center: Some(center),
                signs: Some(vec![s]),
                dots: vec![p.dot_of_hamming(h)],
            };
            // (v - s·w)·(-v - s·w) = -1 + s·(v·w) - s·(v·w) + 1 = 0.
            acc.offer(S::zero(), || (vec![7, h as i64, i64::from(s), 2], wit(2)));
            let sy = smul(s, y[h].clone());
            let slack = two.clone() - two.clone() * sy.clone();
            acc.offer(-slack, || (vec![7, h as i64, i64::from(s), 0], wit(0)));
            let slack = two.clone() + two.clone() * sy;
            acc.offer(-slack, || (vec![7, h as i64, i64::from(s), 1], wit(1)));
        }
    }
}

/// Reflected pairs through the apex: {±v_0, s·v_i} and {±v_i, s·v_0}
/// both produce the constants {0, 2-2·s·beta, 2+2·s·beta}.
fn reflection_apex_scan<S: Scalar>(p: &CharikarParams<S>, acc: &mut WorstClass<S>) {
    let two = S::from_int(2);
    for base in 0..2i64 {
        for s in [1i8, -1] {
            let wit = |center: u32| ProfileWitness {
                family: "reflection-apex".into(),
                counts: None,
                center: Some(center),
                signs: Some(vec![s]),
                dots: vec![],
            };
            let sb = smul(s, p.beta.clone());
            acc.offer(S::zero(), || (vec![8, base, i64::from(s), 2], wit(2)));
            let slack = two.clone() - two.clone() * sb.clone();
            acc.offer(-slack, || (vec![8, base, i64::from(s), 0], wit(0)));
            let slack = two.clone() + two.clone() * sb;
            acc.offer(-slack, || (vec![8, base, i64::from(s), 1], wit(1)));
        }
    }
}

/// Minimum slack of the apex-centered family (v_i-v_0)·(v_j-v_0) >= 0
/// with the dot class attaining it; zero exactly on edges.
pub fn apex_pair_minimum<S: Scalar>(p: &CharikarParams<S>) -> (S, i64) {
    let y = y_table(p);
    let mut best: Option<(S, i64)> = None;
    for h in 1..=p.n as usize {
        let slack = y[h].clone() + S::one() - S::from_int(2) * p.beta.clone();
        if best.as_ref().map_or(true, |(b, _)| slack < *b) {
            best = Some((slack, p.dot_of_hamming(h)));
        }
    }
    best.expect("n >= 1")
}

/// Closed-form minimum of one signed apex family over dot classes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyMin<S> {
    pub family: &'static str,
    pub min_slack: S,
    pub argmin_dot: i64,
}

/// Per-family minima of the signed triples through the apex, labelled
/// by reflection pattern: the difference family (+,+) bottoms out at 0
/// on edges, the sum family (-,-) at 4·beta, and the mixed family at
/// the almost-coincident dot class.
pub fn karakostas_family_minima<S: Scalar>(p: &CharikarParams<S>) -> Vec<FamilyMin<S>> {
    let y = y_table(p);
    let specs: [(&'static str, i8, i8); 3] = [
        ("apex-difference", 1, 1),
        ("apex-sum", -1, -1),
        ("apex-mixed", 1, -1),
    ];
    specs
        .iter()
        .map(|&(family, s1, s2)| {
            let mut best: Option<(S, i64)> = None;
            for h in 1..=p.n as usize {
                let slack = smul(s1 * s2, y[h].clone())
                    - smul(s1, p.beta.clone())
                    - smul(s2, p.beta.clone())
                    + S::one();
                if best.as_ref().map_or(true, |(b, _)| slack < *b) {
                    best = Some((slack, p.dot_of_hamming(h)));
                }
            }
            let (min_slack, argmin_dot) = best.expect("n >= 1");
            FamilyMin {
                family,
                min_slack,
                argmin_dot,
            }
        })
        .collect()
}

fn profile_witness_of(w: &pentagon::CharikarPentagonalWitness) -> ProfileWitness {
    let family = match w.partition {
        pentagon::PentagonPartition::ApexPair => "pentagonal-apex-pair",
        pentagon::PentagonPartition::ApexTriple { .. } => "pentagonal-apex-triple",
        pentagon::PentagonPartition::PureSampled { .. } => "pentagonal-sampled",
    };
    ProfileWitness {
        family: family.into(),
        counts: w.counts.clone(),
        center: None,
        signs: None,
        dots: w.dots.clone(),
    }
}

/// Worst violation of `tier` over the implicit solution, sweeping dot
/// classes and sign profiles. Equalities contribute |residual|,
/// inequalities -slack.
pub fn tier_census<S>(
    params: &CharikarParams<S>,
    tier: Tier,
    threads: usize,
) -> Result<TierCensus<S>>
where
    S: Scalar + Send + Sync,
{
    let y = y_table(params);
    let mut total = WorstClass::new();
    edge_scan(params, &mut total);
    let signed = tier == Tier::Karakostas;
    if tier != Tier::Standard {
        apex_centered_scan(params, &y, signed, &mut total);
        cube_centered_scan(params, &y, signed, &mut total);
        if signed {
            reflection_cube_scan(params, &y, &mut total);
            reflection_apex_scan(params, &mut total);
        }
        let shards = run_sharded(threads, |shard| {
            let mut acc = WorstClass::new();
            cube_triangle_scan(params, &y, signed, shard, &mut acc);
            acc
        });
        for s in shards {
            total.absorb(s);
        }
    }
    let pentagon = if tier == Tier::Pentagonal {
        Some(pentagon::charikar_pentagonal_census(
            params,
            threads,
            PENTAGONAL_SAMPLES,
        )?)
    } else {
        None
    };
    if let Some(c) = &pentagon {
        total.checked += c.partitions_checked;
        total.place(
            -c.min_slack.clone(),
            c.witness.sort_key(),
            profile_witness_of(&c.witness),
        );
    }
    Ok(TierCensus {
        tier,
        worst: total.violation.expect("the edge class is always offered"),
        witness: total.witness,
        families_checked: total.checked,
        pentagon,
    })
}

/// One tier's verdict in float mode, shaped for serialization.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstructionReport {
    pub tier: Tier,
    pub feasible: bool,
    pub worst_violation: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ProfileWitness>,
    pub families_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pentagon: Option<pentagon::PentagonalCharikarReport>,
    pub params: ParamsSummary,
}

/// Audits the requested tiers against `tol`; output order follows the
/// input tiers.
pub fn verify_construction(
    params: &CharikarParams<f64>,
    tiers: &[Tier],
    tol: f64,
    threads: usize,
) -> Result<Vec<ConstructionReport>> {
    tiers
        .iter()
        .map(|&tier| {
            let census = tier_census(params, tier, threads)?;
            Ok(ConstructionReport {
                tier,
                feasible: census.worst <= tol,
                worst_violation: census.worst,
                witness: census.witness,
                families_checked: census.families_checked,
                pentagon: census
                    .pentagon
                    .as_ref()
                    .map(|c| pentagon::PentagonalCharikarReport::from_census(c, tol)),
                params: params.summary(),
            })
        })
        .collect()
}

// -------------------------------------------------------------- embedding ----

/// Closed-form l1 images of the solution: the apex at the origin, one
/// image per vertex; cube pairs are isometric to ‖·‖² and apex pairs
/// shrink by exactly 1+beta, which is the whole distortion.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExplicitEmbedding<S> {
    pub t: u32,
    pub n: u32,
    /// l1 norm shared by every cube image (the apex maps to 0);
    /// measured from coordinates when materialized.
    pub norm_f: S,
    /// Independent route to the same norm, through lambda powers
    /// rather than the exact coefficient ratio: 2C·(1 + 2t·lambda^(2t-1)).
    pub norm_formula: S,
    /// Extremes of l1 distance ÷ ‖·‖² distance over cube dot classes.
    pub cube_ratio_min: S,
    pub cube_ratio_max: S,
    /// The apex-pair ratio 2(1-beta²) / (2-2beta) = 1+beta.
    pub apex_ratio: S,
    /// max ratio ÷ min ratio over all pairs.
    pub distortion: S,
    pub materialized: bool,
    /// Explicit images (row per point, apex first), when within budget.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<Vec<f64>>>,
}

/// f(apex) = 0; f(v_i) = C·((2/n^t)·u_i^{⊗2t}, (2/sqrt n)·q_lin·u_i'),
/// flattened with the tensor block first.
fn embedding_coords<S: Scalar>(p: &CharikarParams<S>, tensor_dim: usize) -> Vec<Vec<f64>> {
    let n = p.n as usize;
    let beta = p.beta.as_f64();
    let c = (1.0 - beta * beta) / p.q_one().as_f64();
    let tensor_coeff = 2.0 * c / (p.n as f64).powi(2 * p.t as i32);
    let linear_coeff = 2.0 * c * p.q_linear_coeff.as_f64() / p.n as f64;
    let pts = (1usize << p.n) + 1;
    let dim = tensor_dim + n;
    let mut rows = vec![vec![0.0f64; dim]; pts];
    for (i, row) in rows.iter_mut().enumerate().skip(1) {
        let mask = (i - 1) as u64;
        let sign = |l: usize| if mask >> l & 1 == 1 { 1.0f64 } else { -1.0 };
        let mut digits = vec![0usize; 2 * p.t as usize];
        for v in row.iter_mut().take(tensor_dim) {
            let mut prod = tensor_coeff;
            for &l in &digits {
                prod *= sign(l);
            }
            *v = prod;
            for l in digits.iter_mut() {
                *l += 1;
                if *l < n {
                    break;
                }
                *l = 0;
            }
        }
        for l in 0..n {
            row[tensor_dim + l] = linear_coeff * sign(l);
        }
    }
    rows
}

/// Builds the explicit l1 embedding. Per dot class the tensor block
/// contributes 2C(1 - rho^{2t}) and the linear block 2C·q_lin·(1 - rho);
/// the sum telescopes to 2C(q(1) - q(rho)) = ‖v_i - v_j‖², so cube
/// ratios are exactly one. Coordinates are emitted in float mode when
/// they fit the budget, and re-measured against the closed forms.
pub fn explicit_l1_embedding<S: Scalar>(sol: &CharikarSolution<S>) -> Result<ExplicitEmbedding<S>> {
    let p = sol.params();
    let n = p.n as usize;
    let two = S::from_int(2);
    let b2 = p.beta.clone() * p.beta.clone();
    let c2 = two.clone() * (S::one() - b2) / p.q_one();
    let q_lin = p.q_linear_coeff.clone();

    let mut closed = Vec::with_capacity(n + 1);
    for h in 0..=n {
        let rho = S::from_ratio(p.dot_of_hamming(h), i64::from(p.n));
        let tensor = c2.clone() * (S::one() - rho.powi(2 * p.t));
        let linear = c2.clone() * q_lin.clone() * (S::one() - rho.clone());
        closed.push(tensor + linear);
    }
    let norm_closed = c2.clone() * (S::one() + q_lin.clone());
    let norm_formula = c2.clone()
        * (S::one() + S::from_int(i64::from(2 * p.t)) * p.lambda.powi(2 * p.t - 1));

    let sq_of = |h: usize| two.clone() - two.clone() * p.y_of_dot(p.dot_of_hamming(h));
    let apex_sq = two.clone() - two.clone() * p.beta.clone();

    let mut norm_f = norm_closed.clone();
    let mut cube_ratio_min: Option<S> = None;
    let mut cube_ratio_max: Option<S> = None;
    for h in 1..=n {
        let ratio = closed[h].clone() / sq_of(h);
        if cube_ratio_min.as_ref().map_or(true, |m| ratio < *m) {
            cube_ratio_min = Some(ratio.clone());
        }
        if cube_ratio_max.as_ref().map_or(true, |m| ratio > *m) {
            cube_ratio_max = Some(ratio);
        }
    }
    let mut cube_ratio_min = cube_ratio_min.expect("n >= 1");
    let mut cube_ratio_max = cube_ratio_max.expect("n >= 1");
    let apex_ratio = norm_closed.clone() / apex_sq;

    let pts = (1u128 << p.n) + 1;
    let tensor_dim = u128::from(p.n).pow(2 * p.t);
    let img_dim = tensor_dim + u128::from(p.n);
    let mut coords = None;
    let materialized = !S::EXACT && pts * img_dim <= u128::from(MATERIALIZE_FLOATS);
    if materialized {
        let rows = embedding_coords(p, tensor_dim as usize);
        let l1 = |a: &[f64], b: &[f64]| -> f64 {
            a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
        };
        let measured_norm: f64 = rows[1].iter().map(|x| x.abs()).sum();
        if (measured_norm - norm_closed.as_f64()).abs() > tol::EMBED_ABS {
            return Err(Error::Invalid(format!(
                "materialized image norm {measured_norm} drifts from the closed form"
            )));
        }
        let mut m_min = f64::INFINITY;
        let mut m_max = f64::NEG_INFINITY;
        for h in 1..=n {
            // representative pair: vertex 0 and the vertex h bits away
            let j = ((1u64 << h) - 1) as usize + 1;
            let d = l1(&rows[1], &rows[j]);
            if (d - closed[h].as_f64()).abs() > tol::EMBED_ABS {
                return Err(Error::Invalid(format!(
                    "materialized class h={h} drifts from the closed form"
                )));
            }
            let ratio = d / sq_of(h).as_f64();
            m_min = m_min.min(ratio);
            m_max = m_max.max(ratio);
        }
        norm_f = S::from_f64(measured_norm);
        cube_ratio_min = S::from_f64(m_min);
        cube_ratio_max = S::from_f64(m_max);
        coords = Some(rows);
    }

    let max_ratio = if apex_ratio > cube_ratio_max {
        apex_ratio.clone()
    } else {
        cube_ratio_max.clone()
    };
    let min_ratio = if apex_ratio < cube_ratio_min {
        apex_ratio.clone()
    } else {
        cube_ratio_min.clone()
    };
    let distortion = max_ratio / min_ratio;

    Ok(ExplicitEmbedding {
        t: p.t,
        n: p.n,
        norm_f,
        norm_formula,
        cube_ratio_min,
        cube_ratio_max,
        apex_ratio,
        distortion,
        materialized,
        coords,
    })
}

// ------------------------------------------------------------- gap report ----

/// Headline numbers of one instance: the SDP objective, the cover
/// bound it is measured against, and the gap the family approaches.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapReport {
    pub t: u32,
    pub n: u32,
    pub beta: f64,
    /// Σ (1 + v0·vi)/2 = (1+beta)/2 · 2^n.
    pub sdp_objective: f64,
    /// Isoperimetric cover bound, quoted with its constant unevaluated.
    pub cover_lower_bound: String,
    /// 2/(1+beta), approaching 2 as t grows.
    pub integrality_gap: f64,
    /// The true optimum; deliberately left open by this report.
    pub vertex_cover: String,
}

pub fn gap_report<S: Scalar>(params: &CharikarParams<S>) -> GapReport {
    let beta = params.beta.as_f64();
    GapReport {
        t: params.t,
        n: params.n,
        beta,
        sdp_objective: (1.0 + beta) / 2.0 * 2f64.powi(params.n as i32),
        cover_lower_bound: format!(
            "2^n - (2 - delta)^n, delta = delta({}) > 0 not evaluated",
            params.gamma.as_f64()
        ),
        integrality_gap: 2.0 / (1.0 + beta),
        vertex_cover: "not computed".into(),
    }
}

// ----------------------------------------------------------------- tests ----

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relaxations;
    use crate::{graph, metric, Float, Rat};
    use num_traits::{One, Zero};

    fn rp(t: u32, n: u32) -> CharikarParams<Rat> {
        CharikarParams::new(t, n).unwrap()
    }

    fn fp(t: u32, n: u32) -> CharikarParams<Float> {
        CharikarParams::new(t, n).unwrap()
    }

    fn rat(a: i64, b: i64) -> Rat {
        Rat::from_ratio(a, b)
    }

    #[test]
    fn beta_closed_forms() {
        assert_eq!(solve_beta::<Rat>(1).unwrap(), rat(7, 9));
        assert_eq!(solve_beta::<Rat>(2).unwrap(), rat(445, 931));
        assert_eq!(solve_beta::<Rat>(3).unwrap(), rat(81031, 237281));
        assert_eq!(solve_beta::<Rat>(4).unwrap(), rat(29130361, 109837575));
        assert_eq!(rp(1, 8).beta, rat(7, 9));
    }

    #[test]
    fn beta_decreasing_in_unit_interval() {
        let mut prev = 1.0f64;
        for t in 1..=MAX_T {
            let b: Float = solve_beta(t).unwrap();
            assert!(b > 0.0 && b < 1.0, "beta({t}) = {b} out of range");
            assert!(b < prev, "beta not strictly decreasing at t = {t}");
            prev = b;
        }
    }

    #[test]
    fn beta_residual_vanishes() {
        for t in 1..=MAX_T {
            let n = 4 * t;
            assert_eq!(rp(t, n).beta_residual(), Rat::zero(), "t = {t}");
            assert!(fp(t, n).beta_residual().abs() <= tol::BETA_RESIDUAL, "t = {t}");
        }
    }

    #[test]
    fn q_closed_values() {
        assert_eq!(q_eval(&Rat::one(), 1).unwrap(), rat(2, 1));
        assert_eq!(q_eval(&rat(-1, 2), 1).unwrap(), rat(-1, 4));
        assert_eq!(q_eval(&-Rat::one(), 1).unwrap(), Rat::zero());
        assert_eq!(q_eval(&Rat::one(), 2).unwrap(), rat(43, 16));
        let p = rp(2, 8);
        assert_eq!(p.lambda, rat(3, 4));
        assert_eq!(p.gamma, rat(1, 8));
        assert_eq!(p.q_linear_coeff, rat(27, 16));
        assert_eq!(p.q_one(), rat(43, 16));
        assert_eq!(p.q(&Rat::one()), q_eval(&Rat::one(), 2).unwrap());
    }

    #[test]
    fn q_flat_exactly_at_minus_lambda() {
        // q'(x) = 2t·x^(2t-1) + 2t·lambda^(2t-1) vanishes at -lambda.
        for t in 1..=6u32 {
            let p = rp(t, 4 * t);
            let deriv = Rat::from_int(i64::from(2 * t)) * (-p.lambda.clone()).powi(2 * t - 1)
                + p.q_linear_coeff.clone();
            assert_eq!(deriv, Rat::zero(), "t = {t}");
        }
    }

    #[test]
    fn q_monotone_about_the_minimum() {
        for t in [1u32, 2, 4, 8] {
            let p = fp(t, 4 * t);
            let lambda = p.lambda;
            let grid = 200;
            let mut prev = p.q(&-1.0);
            for k in 1..=grid {
                let x = -1.0 + (1.0 - lambda) * k as f64 / grid as f64;
                let v = p.q(&x);
                assert!(v < prev, "q not strictly decreasing at t = {t}, k = {k}");
                prev = v;
            }
            let mut prev = p.q(&-lambda);
            for k in 1..=grid {
                let x = -lambda + (1.0 + lambda) * k as f64 / grid as f64;
                let v = p.q(&x);
                assert!(v > prev, "q not strictly increasing at t = {t}, k = {k}");
                prev = v;
            }
        }
    }

    #[test]
    fn q_strictly_convex_exact() {
        // Second divided differences stay positive in exact arithmetic;
        // floats lose this near 0, where the power term underflows the
        // linear one.
        for t in [1u32, 3, 6] {
            let p = rp(t, 4 * t);
            let grid = 400i64;
            let q_at = |k: i64| p.q(&rat(k, grid));
            let mut left = q_at(-grid);
            let mut mid = q_at(-grid + 1);
            for k in (-grid + 2)..=grid {
                let right = q_at(k);
                let second = right.clone() - Rat::from_int(2) * mid.clone() + left;
                assert!(second > Rat::zero(), "t = {t}, k = {k}");
                left = mid;
                mid = right;
            }
        }
    }

    #[test]
    fn y_values_small_t() {
        let p = rp(1, 8);
        assert_eq!(p.edge_dot(), -4);
        assert_eq!(p.edge_hamming(), 6);
        assert_eq!(p.y_of_dot(-4), rat(5, 9));
        assert_eq!(p.y_of_dot(-8), rat(49, 81));
        assert_eq!(edge_residual(&p), Rat::zero());
        let p2 = rp(2, 8);
        assert_eq!(p2.edge_dot(), -6);
        assert_eq!(p2.y_of_dot(-6), rat(-41, 931));
        assert_eq!(edge_residual(&p2), Rat::zero());
        let sol = CharikarSolution::new(rp(1, 8));
        assert_eq!(sol.points(), 257);
        assert_eq!(sol.y(3, 3), Rat::one());
        assert_eq!(sol.y(0, 17), rat(7, 9));
        // masks 0 and 255 are antipodal
        assert_eq!(sol.y(1, 256), rat(49, 81));
        assert_eq!(sol.sq_distance(1, 256), rat(64, 81));
    }

    #[test]
    fn apex_pair_bottoms_at_edges() {
        for (t, n) in [(1u32, 8u32), (2, 8), (3, 12)] {
            let p = rp(t, n);
            let (min, argmin) = apex_pair_minimum(&p);
            assert_eq!(min, Rat::zero(), "t = {t}, n = {n}");
            assert_eq!(argmin, p.edge_dot(), "t = {t}, n = {n}");
        }
        // every other dot class keeps a real margin in float mode
        let p = fp(1, 8);
        let y = y_table(&p);
        for h in 1..=8usize {
            if p.dot_of_hamming(h) == p.edge_dot() {
                continue;
            }
            let slack = y[h] + 1.0 - 2.0 * p.beta;
            assert!(slack > 1e-6, "h = {h}");
        }
    }

    #[test]
    fn signed_apex_family_minima() {
        let p = rp(1, 8);
        let minima = karakostas_family_minima(&p);
        let by_name = |name: &str| minima.iter().find(|m| m.family == name).unwrap();
        let diff = by_name("apex-difference");
        assert_eq!(diff.min_slack, Rat::zero());
        assert_eq!(diff.argmin_dot, -4);
        let sum = by_name("apex-sum");
        assert_eq!(sum.min_slack, rat(28, 9)); // 4·beta
        assert_eq!(sum.argmin_dot, -4);
        // strictly above the 2beta(1+beta) midline
        assert!(sum.min_slack > rat(2, 1) * rat(7, 9) * rat(16, 9));
        let mixed = by_name("apex-mixed");
        assert_eq!(mixed.min_slack, rat(11, 81)); // 1 - y(n-2)
        assert_eq!(mixed.argmin_dot, 6);
    }

    #[test]
    fn tier_census_exact_zero() {
        let p = rp(1, 8);
        for tier in Tier::ALL {
            let census = tier_census(&p, tier, 2).unwrap();
            assert_eq!(census.worst, Rat::zero(), "{tier:?}");
            let w = census.witness.unwrap();
            assert_eq!(w.family, "edge", "{tier:?}");
            assert_eq!(w.dots, vec![-4]);
        }
    }

    #[test]
    fn tier_census_exact_counts() {
        let p = rp(1, 8);
        assert_eq!(tier_census(&p, Tier::Standard, 1).unwrap().families_checked, 1);
        assert_eq!(tier_census(&p, Tier::Triangle, 1).unwrap().families_checked, 437);
        assert_eq!(
            tier_census(&p, Tier::Karakostas, 1).unwrap().families_checked,
            1805
        );
        let pent = tier_census(&p, Tier::Pentagonal, 1).unwrap();
        let sub = pent.pentagon.unwrap();
        assert_eq!(sub.profiles, 6435);
        assert!(sub.min_pure_sampled.is_none());
        assert_eq!(sub.min_slack, Rat::zero());
        assert_eq!(sub.min_apex_pair, Rat::zero());
        assert!(sub.min_apex_triple > Rat::zero());
        assert_eq!(
            pent.families_checked,
            437 + sub.partitions_checked
        );
    }

    #[test]
    fn tier_census_float_feasible() {
        for (t, n) in [(1u32, 8u32), (2, 8)] {
            let p = fp(t, n);
            for tier in Tier::ALL {
                let census = tier_census(&p, tier, 2).unwrap();
                assert!(
                    census.worst <= 1e-12,
                    "t = {t}, n = {n}, {tier:?}: {}",
                    census.worst
                );
            }
        }
    }

    #[test]
    fn tier_census_thread_invariant() {
        let p = fp(1, 8);
        let a = tier_census(&p, Tier::Karakostas, 1).unwrap();
        let b = tier_census(&p, Tier::Karakostas, 4).unwrap();
        assert_eq!(a, b);
        let a = tier_census(&p, Tier::Pentagonal, 1).unwrap();
        let b = tier_census(&p, Tier::Pentagonal, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn gram_minor_is_psd() {
        let sol = CharikarSolution::new(fp(1, 8));
        let k = 12usize;
        let gram: Vec<Vec<f64>> = (0..k)
            .map(|i| (0..k).map(|j| sol.y(i as u64, j as u64)).collect())
            .collect();
        let eig = metric::min_symmetric_eigenvalue(&gram);
        assert!(eig >= -tol::PSD_EIG_REL * k as f64, "eig = {eig}");
    }

    #[test]
    fn materialize_matches_profile_census() {
        let p = fp(1, 4);
        let sol = CharikarSolution::new(p.clone());
        let mat = sol.materialize().unwrap();
        assert_eq!(mat.points(), 17);
        let g = graph::hamming_graph(4, 1).unwrap().materialize().unwrap();
        for tier in Tier::ALL {
            let direct = relaxations::check_tier(&mat, &g, tier, tol::RESIDUAL_ABS).unwrap();
            let implicit = tier_census(&p, tier, 1).unwrap();
            assert!(direct.feasible, "{tier:?}");
            assert!(
                (direct.worst_violation - implicit.worst).abs() <= tol::CROSS_MODE,
                "{tier:?}: {} vs {}",
                direct.worst_violation,
                implicit.worst
            );
        }
        let report = relaxations::check_tier(&mat, &g, Tier::Standard, tol::RESIDUAL_ABS).unwrap();
        let expected = (1.0 + p.beta) / 2.0 * 16.0;
        assert!((report.objective_vc - expected).abs() <= 1e-9);
    }

    #[test]
    fn materialize_respects_budget() {
        assert!(matches!(
            CharikarSolution::new(fp(1, 12)).materialize(),
            Err(Error::SizeCap(_))
        ));
        let sol = CharikarSolution::new(fp(2, 8)).materialize().unwrap();
        assert_eq!(sol.points(), 257);
        assert!(sol.realization().is_some());
    }

    #[test]
    fn embedding_exact_ratios() {
        let sol = CharikarSolution::new(rp(1, 8));
        let emb = explicit_l1_embedding(&sol).unwrap();
        assert!(!emb.materialized);
        assert!(emb.coords.is_none());
        assert_eq!(emb.cube_ratio_min, Rat::one());
        assert_eq!(emb.cube_ratio_max, Rat::one());
        assert_eq!(emb.apex_ratio, rat(16, 9));
        assert_eq!(emb.distortion, rat(16, 9));
        assert_eq!(emb.norm_f, rat(64, 81)); // 2(1-beta²)
        assert_eq!(emb.norm_formula, rat(64, 81));
    }

    #[test]
    fn embedding_materialized_instances() {
        for (t, n) in [(1u32, 4u32), (1, 8), (2, 8), (1, 12)] {
            let sol = CharikarSolution::new(fp(t, n));
            let emb = explicit_l1_embedding(&sol).unwrap();
            assert!(emb.materialized, "t = {t}, n = {n}");
            assert!((emb.norm_f - emb.norm_formula).abs() <= 1e-9);
            assert!((emb.cube_ratio_min - 1.0).abs() <= 1e-9);
            assert!((emb.cube_ratio_max - 1.0).abs() <= 1e-9);
            let beta = sol.params().beta;
            assert!((emb.apex_ratio - (1.0 + beta)).abs() <= 1e-12);
            assert!((emb.distortion - (1.0 + beta)).abs() <= 1e-9);
            let coords = emb.coords.as_ref().unwrap();
            assert_eq!(coords.len(), (1usize << n) + 1);
            assert!(coords[0].iter().all(|&x| x == 0.0));
        }
    }

    #[test]
    fn embedding_random_pairs_match_closed_form() {
        use rand::{Rng, SeedableRng};
        let sol = CharikarSolution::new(fp(2, 8));
        let emb = explicit_l1_embedding(&sol).unwrap();
        let coords = emb.coords.as_ref().unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let a = rng.gen_range(0u64..256);
            let b = rng.gen_range(0u64..256);
            if a == b {
                continue;
            }
            let l1: f64 = coords[(a + 1) as usize]
                .iter()
                .zip(&coords[(b + 1) as usize])
                .map(|(x, y)| (x - y).abs())
                .sum();
            let sq = sol.sq_distance(a + 1, b + 1);
            assert!((l1 - sq).abs() <= 1e-9, "masks {a}, {b}");
        }
    }

    #[test]
    fn embedding_distortion_decreases_in_t() {
        let mut prev = f64::INFINITY;
        for t in 1..=4u32 {
            let sol = CharikarSolution::new(fp(t, 4 * t));
            let emb = explicit_l1_embedding(&sol).unwrap();
            let beta = sol.params().beta;
            assert!((emb.distortion - (1.0 + beta)).abs() <= 1e-9, "t = {t}");
            assert!(emb.distortion < prev, "t = {t}");
            prev = emb.distortion;
        }
    }

    #[test]
    fn objective_and_gap_values() {
        assert_eq!(CharikarSolution::new(rp(1, 8)).objective(), rat(2048, 9));
        assert_eq!(
            CharikarSolution::new(rp(2, 8)).objective(),
            rat(176128, 931)
        );
        let report = gap_report(&fp(1, 8));
        assert!((report.sdp_objective - 2048.0 / 9.0).abs() <= 1e-12);
        assert!((report.integrality_gap - 1.125).abs() <= 1e-15);
        assert_eq!(report.vertex_cover, "not computed");
        assert!(report.cover_lower_bound.starts_with("2^n - (2 - delta)^n"));
        let g1 = gap_report(&fp(1, 4)).integrality_gap;
        let g4 = gap_report(&fp(4, 16)).integrality_gap;
        let g8 = gap_report(&fp(8, 32)).integrality_gap;
        assert!(g1 < g4 && g4 < g8 && g8 < 2.0);
    }

    #[test]
    fn parameter_validation() {
        assert!(CharikarParams::<Float>::new(0, 4).is_err());
        assert!(CharikarParams::<Float>::new(9, 36).is_err());
        assert!(CharikarParams::<Float>::new(1, 6).is_err());
        assert!(CharikarParams::<Float>::new(1, 0).is_err());
        assert!(CharikarParams::<Float>::new(2, 40).is_err());
        assert!(q_eval(&1.0f64, 0).is_err());
        assert!(q_eval(&1.0f64, 9).is_err());
        assert!(solve_beta::<Float>(0).is_err());
    }

    #[test]
    fn reports_serialize() {
        let p = fp(1, 8);
        let js = serde_json::to_value(p.summary()).unwrap();
        assert_eq!(js["t"], 1);
        assert_eq!(js["edge_dot"], -4);
        let reports = verify_construction(&p, &[Tier::Standard, Tier::Triangle], 1e-9, 2).unwrap();
        assert_eq!(reports.len(), 2);
        assert!(reports.iter().all(|r| r.feasible));
        let js = serde_json::to_value(&reports).unwrap();
        assert_eq!(js[0]["tier"], "standard");
        assert_eq!(js[1]["witness"]["family"], "edge");
    }
}
