//! (2,3)-hypermetric ("pentagonal") machinery: a minimum-slack census
//! for arbitrary finite metrics, and the profile-driven audit that
//! settles the strongest tier for the implicit gap construction —
//! including the block functional E and its purification check.
//!
//! A (2,3) instance splits five points into S (two) and T (three) and
//! asks that cross distances outweigh within distances. On the gap
//! family the apex participates in one of two ways (inside S, or
//! inside T), both reducible to 4-member sign profiles; pure cube
//! five-tuples embed in l1 and are swept only as float-mode redundancy.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::charikar::CharikarParams;
use crate::cube::{self, SignProfile};
use crate::metric::FiniteMetric;
use crate::relaxations::{
    PENTAGONAL_EXACT_MAX, PENTAGONAL_SAMPLES, PENTAGONAL_SAMPLE_SEED, SPLITS,
};
use crate::scalar::Scalar;
use crate::{run_sharded, Error, Result};

// --------------------------------------------------- generic metric census ----

/// One (2,3) instance on a metric: cross-sum lhs, within-sum rhs, and
/// their difference, nonnegative exactly when the inequality holds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PentagonalWitness<S> {
    pub s: [usize; 2],
    pub t: [usize; 3],
    pub lhs: S,
    pub rhs: S,
    pub slack: S,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PentagonalCensus<S> {
    pub min_slack: S,
    pub witness: PentagonalWitness<S>,
    /// False when the 5-subset space was sampled instead of exhausted.
    pub exhaustive: bool,
    pub partitions_checked: u64,
}

// Minimum accumulator with deterministic tie-breaking on (s, t), so
// results are independent of the thread count.
struct BestSplit<S> {
    witness: Option<PentagonalWitness<S>>,
    checked: u64,
}

impl<S: Scalar> BestSplit<S> {
    fn new() -> Self {
        Self {
            witness: None,
            checked: 0,
        }
    }

    fn place(&mut self, cand: PentagonalWitness<S>) {
        match &self.witness {
            Some(best) if cand.slack > best.slack => {}
            Some(best) if cand.slack == best.slack && (cand.s, cand.t) >= (best.s, best.t) => {}
            _ => self.witness = Some(cand),
        }
    }

    fn offer(&mut self, cand: PentagonalWitness<S>) {
        self.checked += 1;
        self.place(cand);
    }

    fn absorb(&mut self, other: Self) {
        self.checked += other.checked;
        if let Some(w) = other.witness {
            self.place(w);
        }
    }
}

fn offer_all_splits<S: Scalar>(m: &FiniteMetric<S>, quint: [usize; 5], best: &mut BestSplit<S>) {
    for &(i, j) in SPLITS.iter() {
        let s = [quint[i], quint[j]];
        let mut t = [0usize; 3];
        let mut w = 0;
        for (pos, &p) in quint.iter().enumerate() {
            if pos != i && pos != j {
                t[w] = p;
                w += 1;
            }
        }
        let mut lhs = S::zero();
        for &a in &s {
            for &b in &t {
                lhs = lhs + m.dist(a, b).clone();
            }
        }
        let rhs = m.dist(s[0], s[1]).clone()
            + m.dist(t[0], t[1]).clone()
            + m.dist(t[0], t[2]).clone()
            + m.dist(t[1], t[2]).clone();
        let slack = lhs.clone() - rhs.clone();
        best.offer(PentagonalWitness { s, t, lhs, rhs, slack });
    }
}

/// Minimum (2,3) slack over 5-subsets of `metric`. Exhausts every
/// subset up to [`PENTAGONAL_EXACT_MAX`] points; beyond that, sweeps
/// [`PENTAGONAL_SAMPLES`] subsets from the canonical seeded stream.
pub fn pentagonal_census<S>(metric: &FiniteMetric<S>, threads: usize) -> Result<PentagonalCensus<S>>
where
    S: Scalar + Send + Sync,
{
    pentagonal_census_seeded(metric, threads, 0)
}

/// [`pentagonal_census`] with `seed` mixed into the sampling stream;
/// seed 0 is the canonical stream. Exhaustive censuses ignore the seed.
pub fn pentagonal_census_seeded<S>(
    metric: &FiniteMetric<S>,
    threads: usize,
    seed: u64,
) -> Result<PentagonalCensus<S>>
where
    S: Scalar + Send + Sync,
{
    let n = metric.size();
    if n < 5 {
        return Err(Error::Precondition(format!(
            "pentagonal census needs at least 5 points, got {n}"
        )));
    }
    let (best, exhaustive) = if n <= PENTAGONAL_EXACT_MAX {
        let shards = run_sharded(threads, |shard| {
            let mut best = BestSplit::new();
            let mut seq = 0u64;
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        for d in c + 1..n {
                            for e in d + 1..n {
                                let mine = shard.owns(seq);
                                seq += 1;
                                if mine {
                                    offer_all_splits(metric, [a, b, c, d, e], &mut best);
                                }
                            }
                        }
                    }
                }
            }
            best
        });
        let mut total = BestSplit::new();
        for s in shards {
            total.absorb(s);
        }
        (total, true)
    } else {
        let mut best = BestSplit::new();
        let mut rng = ChaCha8Rng::seed_from_u64(PENTAGONAL_SAMPLE_SEED ^ seed);
        for _ in 0..PENTAGONAL_SAMPLES {
            let mut q = [0usize; 5];
            let mut filled = 0usize;
            while filled < 5 {
                let v = rng.gen_range(0..n);
                if !q[..filled].contains(&v) {
                    q[filled] = v;
                    filled += 1;
                }
            }
            q.sort_unstable();
            offer_all_splits(metric, q, &mut best);
        }
        (best, false)
    };
    let checked = best.checked;
    let witness = best.witness.expect("census visits at least one subset");
    Ok(PentagonalCensus {
        min_slack: witness.slack.clone(),
        witness,
        exhaustive,
        partitions_checked: checked,
    })
}

// ------------------------------------------- gap construction: E and blocks ----

/// Partition shape of a pentagonal instance on the implicit solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PentagonPartition {
    /// S = {apex, fourth member}, T = the leading triple.
    ApexPair,
    /// Apex inside T: S is the member pair named here, T the apex plus
    /// the remaining two members.
    ApexTriple { pair: [u8; 2] },
    /// Five cube points, no apex; S at the given split position.
    PureSampled { split: u8 },
}

/// Worst-class description for the gap-construction census.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CharikarPentagonalWitness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub masks: Option<Vec<u64>>,
    pub partition: PentagonPartition,
    /// Minority blocks joined by the fourth member, when block-pure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi: Option<u32>,
    /// Pairwise dots, row-major over the tuple: 4-member profiles give
    /// [d01,d02,d03,d12,d13,d23], sampled 5-tuples the ten analogues.
    pub dots: Vec<i64>,
}

impl CharikarPentagonalWitness {
    pub(crate) fn sort_key(&self) -> Vec<i64> {
        let rank = match self.partition {
            PentagonPartition::ApexPair => 9,
            PentagonPartition::ApexTriple { .. } => 10,
            PentagonPartition::PureSampled { .. } => 11,
        };
        let mut key = vec![rank];
        if let Some(counts) = &self.counts {
            key.extend(counts.iter().map(|&v| i64::from(v)));
        }
        if let Some(masks) = &self.masks {
            key.extend(masks.iter().map(|&v| v as i64));
        }
        match self.partition {
            PentagonPartition::ApexTriple { pair } => key.extend(pair.map(i64::from)),
            PentagonPartition::PureSampled { split } => key.push(i64::from(split)),
            PentagonPartition::ApexPair => {}
        }
        key
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharikarPentagonalCensus<S> {
    pub min_slack: S,
    pub witness: CharikarPentagonalWitness,
    pub min_apex_pair: S,
    /// Minimum over quadrilateral instances with all members distinct;
    /// coincident members degenerate to triangles audited elsewhere.
    pub min_apex_triple: S,
    /// None in exact mode: pure cube 5-tuples embed in l1 and cannot
    /// go negative, so the sweep is float-mode redundancy only.
    pub min_pure_sampled: Option<S>,
    pub profiles: u64,
    pub sampled_tuples: u64,
    pub partitions_checked: u64,
}

// Minimum accumulator with lazy description and deterministic
// lexicographic tie keys, mirroring the tier census accumulator.
struct BestSlack<S> {
    slack: Option<S>,
    key: Vec<i64>,
    witness: Option<CharikarPentagonalWitness>,
    checked: u64,
}

impl<S: Scalar> BestSlack<S> {
    fn new() -> Self {
        Self {
            slack: None,
            key: Vec::new(),
            witness: None,
            checked: 0,
        }
    }

    fn place(&mut self, slack: S, key: Vec<i64>, witness: CharikarPentagonalWitness) {
        match &self.slack {
            Some(best) if slack > *best => {}
            Some(best) if slack == *best => {
                if key < self.key {
                    self.key = key;
                    self.witness = Some(witness);
                }
            }
            _ => {
                self.slack = Some(slack);
                self.key = key;
                self.witness = Some(witness);
            }
        }
    }

    fn offer<F>(&mut self, slack: S, describe: F)
    where
        F: FnOnce() -> (Vec<i64>, CharikarPentagonalWitness),
    {
        self.checked += 1;
        let interesting = match &self.slack {
            Some(best) => slack <= *best,
            None => true,
        };
        if interesting {
            let (key, witness) = describe();
            self.place(slack, key, witness);
        }
    }

    fn absorb(&mut self, other: Self) {
        self.checked += other.checked;
        if let Some(s) = other.slack {
            let w = other.witness.expect("a slack always carries a witness");
            self.place(s, other.key, w);
        }
    }
}

/// The block functional of a 4-member profile (u1,u2,u3,u4):
/// E = Σ q(rho) over the leading triple's pairs minus Σ q(rho) to the
/// fourth member. Returns (E, slack of S = {apex, u4} vs T = {u1,u2,u3}),
/// related by slack = 4(1-beta) + 2(1-beta²)/q(1) · E.
pub fn e_function<S: Scalar>(
    profile: &SignProfile,
    params: &CharikarParams<S>,
) -> Result<(S, S)> {
    if profile.k() != 4 {
        return Err(Error::Precondition(format!(
            "E is defined on 4-member profiles, got k = {}",
            profile.k()
        )));
    }
    if profile.n() != params.n {
        return Err(Error::DimensionMismatch(format!(
            "profile dimension {} vs instance dimension {}",
            profile.n(),
            params.n
        )));
    }
    let q = |a: u32, b: u32| params.q_of_dot(profile.dot(a, b));
    let e = q(0, 1) + q(0, 2) + q(1, 2) - q(0, 3) - q(1, 3) - q(2, 3);
    let b2 = params.beta.clone() * params.beta.clone();
    let slack = S::from_int(4) * (S::one() - params.beta.clone())
        + S::from_int(2) * (S::one() - b2) / params.q_one() * e.clone();
    Ok((e, slack))
}

/// Number of minority blocks of the leading triple that the fourth
/// member joins, when it is constant on every agreement block; None if
/// it straddles one. Pattern bits agree-with-member-0: bit 0 for u2,
/// bit 1 for u3, bit 2 for u4.
fn xi_of(profile: &SignProfile) -> Option<u32> {
    let c = profile.counts();
    let mut xi = 0;
    for block in 0..4usize {
        let lo = c[block];
        let hi = c[block | 4];
        if lo > 0 && hi > 0 {
            return None;
        }
        if lo + hi == 0 {
            continue;
        }
        let joins = match block {
            // (u2,u3) both disagree u1: minority u1, joined when b2 = 1
            0 => hi > 0,
            // exactly one of u2,u3 disagrees u1: it is the minority,
            // joined when b2 = 0
            1 | 2 => lo > 0,
            // unanimous block: no minority
            _ => continue,
        };
        if joins {
            xi += 1;
        }
    }
    Some(xi)
}

/// Full pentagonal audit of the implicit solution: every 4-member
/// profile drives the apex-in-pair instance and the three quadrilateral
/// pairings; float mode additionally sweeps seeded pure 5-tuples.
pub fn charikar_pentagonal_census<S>(
    params: &CharikarParams<S>,
    threads: usize,
    samples: u64,
) -> Result<CharikarPentagonalCensus<S>>
where
    S: Scalar + Send + Sync,
{
    charikar_pentagonal_census_seeded(params, threads, samples, 0)
}

/// [`charikar_pentagonal_census`] with `seed` mixed into the pure
/// 5-tuple sampling stream; seed 0 is the canonical stream.
pub fn charikar_pentagonal_census_seeded<S>(
    params: &CharikarParams<S>,
    threads: usize,
    samples: u64,
    seed: u64,
) -> Result<CharikarPentagonalCensus<S>>
where
    S: Scalar + Send + Sync,
{
    if params.n > 24 {
        return Err(Error::SizeCap(format!(
            "profile census supports n <= 24, got {}",
            params.n
        )));
    }
    let n = params.n;
    let ni = i64::from(n);
    let q: Vec<S> = (0..=n as usize)
        .map(|h| params.q_of_dot(params.dot_of_hamming(h)))
        .collect();
    let y: Vec<S> = (0..=n as usize)
        .map(|h| params.y_of_dot(params.dot_of_hamming(h)))
        .collect();
    let b2 = params.beta.clone() * params.beta.clone();
    let c0 = S::from_int(4) * (S::one() - params.beta.clone());
    let ce = S::from_int(2) * (S::one() - b2) / params.q_one();

    let shard_results = run_sharded(threads, |shard| {
        let mut pair = BestSlack::new();
        let mut triple = BestSlack::new();
        let profiles = cube::enumerate_profiles(n, 4, shard).expect("k = 4 is supported");
        for prof in profiles {
            let d = [
                prof.dot(0, 1),
                prof.dot(0, 2),
                prof.dot(0, 3),
                prof.dot(1, 2),
                prof.dot(1, 3),
                prof.dot(2, 3),
            ];
            let h = |dd: i64| ((ni - dd) / 2) as usize;
            // S = {apex, member 3} vs T = {members 0,1,2}: affine in E.
            let e = q[h(d[0])].clone() + q[h(d[1])].clone() + q[h(d[3])].clone()
                - q[h(d[2])].clone()
                - q[h(d[4])].clone()
                - q[h(d[5])].clone();
            let slack = c0.clone() + ce.clone() * e;
            pair.offer(slack, || {
                let counts = prof.counts().to_vec();
                let mut key = vec![9i64];
                key.extend(counts.iter().map(|&v| i64::from(v)));
                (
                    key,
                    CharikarPentagonalWitness {
                        counts: Some(counts),
                        masks: None,
                        partition: PentagonPartition::ApexPair,
                        xi: xi_of(&prof),
                        dots: d.to_vec(),
                    },
                )
            });
            if d.iter().all(|&dd| dd < ni) {
                // Quadrilateral instances S = {a,b}, T = {apex, c, d}:
                // apex terms cancel, leaving cross minus within on four
                // distinct cube points.
                for (pair_ids, ab, cd, cross) in [
                    ([0u8, 1u8], 0usize, 5usize, [1usize, 2, 3, 4]),
                    ([0, 2], 1, 4, [0, 2, 3, 5]),
                    ([0, 3], 2, 3, [0, 1, 4, 5]),
                ] {
                    let within = y[h(d[ab])].clone() + y[h(d[cd])].clone();
                    let mut cross_sum = S::zero();
                    for &ix in &cross {
                        cross_sum = cross_sum + y[h(d[ix])].clone();
                    }
                    let slack =
                        S::from_int(4) + S::from_int(2) * within - S::from_int(2) * cross_sum;
                    triple.offer(slack, || {
                        let counts = prof.counts().to_vec();
                        let mut key = vec![10i64];
                        key.extend(counts.iter().map(|&v| i64::from(v)));
                        key.extend(pair_ids.map(i64::from));
                        (
                            key,
                            CharikarPentagonalWitness {
                                counts: Some(counts),
                                masks: None,
                                partition: PentagonPartition::ApexTriple { pair: pair_ids },
                                xi: None,
                                dots: d.to_vec(),
                            },
                        )
                    });
                }
            }
        }
        (pair, triple)
    });
    let mut pair = BestSlack::new();
    let mut triple = BestSlack::new();
    for (p_shard, t_shard) in shard_results {
        pair.absorb(p_shard);
        triple.absorb(t_shard);
    }

    let mut sampled = BestSlack::new();
    let mut tuples = 0u64;
    if !S::EXACT && samples > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(PENTAGONAL_SAMPLE_SEED ^ seed);
        let space = 1u64 << n;
        for _ in 0..samples {
            let mut m = [0u64; 5];
            let mut filled = 0usize;
            while filled < 5 {
                let v = rng.gen_range(0..space);
                if !m[..filled].contains(&v) {
                    m[filled] = v;
                    filled += 1;
                }
            }
            m.sort_unstable();
            tuples += 1;
            let yy = |a: usize, b: usize| y[(m[a] ^ m[b]).count_ones() as usize].clone();
            for (k, &(i, j)) in SPLITS.iter().enumerate() {
                let mut others = [0usize; 3];
                let mut w = 0;
                for pos in 0..5 {
                    if pos != i && pos != j {
                        others[w] = pos;
                        w += 1;
                    }
                }
                // slack in the 2-2y metric: 4 - 2(Σcross y - Σwithin y)
                let mut cross = S::zero();
                for &a in &[i, j] {
                    for &b in &others {
                        cross = cross + yy(a, b);
                    }
                }
                let within = yy(i, j)
                    + yy(others[0], others[1])
                    + yy(others[0], others[2])
                    + yy(others[1], others[2]);
                let slack = S::from_int(4) - S::from_int(2) * (cross - within);
                sampled.offer(slack, || {
                    let mut key = vec![11i64];
                    key.extend(m.iter().map(|&v| v as i64));
                    key.push(k as i64);
                    (
                        key,
                        CharikarPentagonalWitness {
                            counts: None,
                            masks: Some(m.to_vec()),
                            partition: PentagonPartition::PureSampled { split: k as u8 },
                            xi: None,
                            dots: pairwise_dots(&m, ni),
                        },
                    )
                });
            }
        }
    }

    let mut overall = BestSlack::new();
    for acc in [&pair, &triple, &sampled] {
        if let Some(s) = &acc.slack {
            overall.place(
                s.clone(),
                acc.key.clone(),
                acc.witness.clone().expect("a slack always carries a witness"),
            );
        }
    }
    let partitions_checked = pair.checked + triple.checked + sampled.checked;
    Ok(CharikarPentagonalCensus {
        min_slack: overall.slack.expect("profile space is nonempty"),
        witness: overall.witness.expect("profile space is nonempty"),
        min_apex_pair: pair.slack.expect("profile space is nonempty"),
        min_apex_triple: triple.slack.expect("distinct profiles exist for n >= 4"),
        min_pure_sampled: sampled.slack,
        profiles: pair.checked,
        sampled_tuples: tuples,
        partitions_checked,
    })
}

fn pairwise_dots(masks: &[u64; 5], n: i64) -> Vec<i64> {
    let mut dots = Vec::with_capacity(10);
    for a in 0..5 {
        for b in a + 1..5 {
            dots.push(n - 2 * i64::from((masks[a] ^ masks[b]).count_ones()));
        }
    }
    dots
}

/// Float-mode pentagonal verdict for the implicit construction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PentagonalCharikarReport {
    pub feasible: bool,
    pub min_slack: f64,
    pub witness: CharikarPentagonalWitness,
    pub min_apex_pair: f64,
    pub min_apex_triple: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_pure_sampled: Option<f64>,
    pub enumerated_profiles: u64,
    pub sampled_tuples: u64,
}

impl PentagonalCharikarReport {
    pub fn from_census(census: &CharikarPentagonalCensus<f64>, tol: f64) -> Self {
        Self {
            feasible: census.min_slack >= -tol,
            min_slack: census.min_slack,
            witness: census.witness.clone(),
            min_apex_pair: census.min_apex_pair,
            min_apex_triple: census.min_apex_triple,
            min_pure_sampled: census.min_pure_sampled,
            enumerated_profiles: census.profiles,
            sampled_tuples: census.sampled_tuples,
        }
    }
}

/// Full pentagonal audit with the default sampling budget.
pub fn verify_pentagonal_charikar(
    params: &CharikarParams<f64>,
    threads: usize,
    tol: f64,
) -> Result<PentagonalCharikarReport> {
    let census = charikar_pentagonal_census(params, threads, PENTAGONAL_SAMPLES)?;
    Ok(PentagonalCharikarReport::from_census(&census, tol))
}

/// Randomized audit of the per-block purification step: for seeded
/// mixed profiles, E never drops below the minimum of its 16 per-block
/// purifications (up to float slop). Concavity of E in each block's
/// mixing weight pushes minima to pure corners; this checks the
/// reduction numerically instead of trusting the calculus.
pub fn convexity_reduction_check(
    params: &CharikarParams<f64>,
    trials: u64,
    seed: u64,
) -> Result<bool> {
    let n = params.n as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut counts;
        loop {
            counts = [0u32; 8];
            for _ in 0..n {
                counts[rng.gen_range(0..8usize)] += 1;
            }
            if (0..4).any(|b| counts[b] + counts[b + 4] >= 2) {
                break;
            }
        }
        if !(0..4).any(|b| counts[b] > 0 && counts[b + 4] > 0) {
            // force one block to actually mix
            let b = (0..4)
                .find(|&b| counts[b] + counts[b + 4] >= 2)
                .expect("checked above");
            let tot = counts[b] + counts[b + 4];
            let w = rng.gen_range(1..tot);
            counts[b] = w;
            counts[b + 4] = tot - w;
        }
        let mixed = SignProfile::new(4, params.n, counts.to_vec())?;
        let (e_mixed, _) = e_function(&mixed, params)?;
        let mut min_pure = f64::INFINITY;
        for choice in 0..16u32 {
            let mut pure = [0u32; 8];
            for b in 0..4 {
                let tot = counts[b] + counts[b + 4];
                let side = if choice >> b & 1 == 1 { b + 4 } else { b };
                pure[side] = tot;
            }
            let prof = SignProfile::new(4, params.n, pure.to_vec())?;
            let (e, _) = e_function(&prof, params)?;
            min_pure = min_pure.min(e);
        }
        if e_mixed < min_pure - 1e-12 {
            return Ok(false);
        }
    }
    Ok(true)
}

// ----------------------------------------------------------------- tests ----
