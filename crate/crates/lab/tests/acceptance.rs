//! Acceptance run: one line per criterion, PASS or FAIL, exit 1 on any
//! failure. Each criterion re-derives its expected values from scratch
//! (closed forms, naive oracles, independent corpora) rather than
//! trusting library constants.

mod common;

use std::panic;
use std::time::Instant;

use num_traits::Zero;
use vc_gap_lab::charikar::{
    self, solve_beta, CharikarParams, CharikarSolution,
};
use vc_gap_lab::cube::VertexSet;
use vc_gap_lab::graph::{self, Graph};
use vc_gap_lab::isoperimetry::{self, PoincareConstants};
use vc_gap_lab::lp::{self, LpOutcome};
use vc_gap_lab::metric::{self, CutMeasure};
use vc_gap_lab::pentagon;
use vc_gap_lab::relaxations::{self, Tier, VectorSolution};
use vc_gap_lab::sdp_io::{self, SdpInstance};
use vc_gap_lab::{Rat, Scalar};

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

fn threads() -> usize {
    std::env::var("VC_GAP_LAB_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&t: &usize| t >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get().min(8))
                .unwrap_or(1)
        })
}

fn lab<T>(r: vc_gap_lab::Result<T>) -> Result<T, String> {
    r.map_err(|e| format!("library error: {e}"))
}

// ------------------------------------------------------------ criterion 1 ----

fn c01_charikar_feasibility() -> Result<String, String> {
    let mut detail = String::new();
    for (t, n) in [(1u32, 8u32), (1, 12), (2, 16)] {
        let start = Instant::now();
        let params = lab(CharikarParams::<f64>::new(t, n))?;
        let reports = lab(charikar::verify_construction(
            &params,
            &Tier::ALL,
            1e-9,
            threads(),
        ))?;
        let secs = start.elapsed().as_secs_f64();
        ensure!(reports.len() == 4, "expected 4 tier reports at ({t},{n})");
        for r in &reports {
            ensure!(
                r.feasible && r.worst_violation <= 1e-9,
                "({t},{n}) {} tier worst violation {} exceeds 1e-9",
                r.tier,
                r.worst_violation
            );
        }
        ensure!(
            secs <= 120.0,
            "({t},{n}) verification took {secs:.1}s, over the 2-minute budget"
        );
        detail.push_str(&format!(" ({t},{n}) {secs:.1}s"));
    }
    for n in [8, 12] {
        let params = lab(CharikarParams::<Rat>::new(1, n))?;
        let census = lab(charikar::tier_census(&params, Tier::Standard, threads()))?;
        ensure!(
            census.worst == Rat::zero(),
            "rational edge residual nonzero at (1,{n})"
        );
    }
    Ok(format!("3 instances, 4 tiers each;{detail}; t=1 edge residuals 0 exactly"))
}

// ------------------------------------------------------------ criterion 2 ----

fn c02_beta_closure() -> Result<String, String> {
    let b1 = lab(solve_beta::<Rat>(1))?;
    ensure!(b1 == Rat::from_ratio(7, 9), "solve_beta(1) != 7/9");
    let b2 = lab(solve_beta::<Rat>(2))?;
    ensure!(b2 == Rat::from_ratio(445, 931), "solve_beta(2) != 445/931");
    for t in 1..=8u32 {
        let params = lab(CharikarParams::<f64>::new(t, 4 * t))?;
        let res = params.beta_residual().abs();
        ensure!(
            res <= 1e-12,
            "float beta residual {res:.3e} at t={t} exceeds 1e-12"
        );
    }
    Ok("7/9 and 445/931 exact; float residuals <= 1e-12 for t <= 8".into())
}

// ------------------------------------------------------------ criterion 3 ----

fn c03_objective_identity() -> Result<String, String> {
    for (t, n) in [(1u32, 8u32), (1, 12), (2, 16)] {
        let params = lab(CharikarParams::<f64>::new(t, n))?;
        let beta = params.beta;
        let sol = CharikarSolution::new(params);
        let expected = (1.0 + beta) / 2.0 * f64::powi(2.0, n as i32);
        let got = sol.objective();
        ensure!(
            (got - expected).abs() <= 1e-12 * expected.max(1.0),
            "objective {got} != (1+beta)/2 * 2^{n} = {expected}"
        );
    }
    let mut rng = common::seeded_rng(3);
    use rand::Rng;
    for trial in 0..100 {
        let vertices = rng.gen_range(4..=10usize);
        let dim = rng.gen_range(2..=4usize);
        let mut coords = Vec::with_capacity(vertices + 1);
        for _ in 0..=vertices {
            loop {
                let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm > 1e-2 {
                    coords.push(v.iter().map(|x| x / norm).collect());
                    break;
                }
            }
        }
        let sol = lab(VectorSolution::from_coords(coords))?;
        let gap = (sol.objective_vc() - sol.objective_distance_form()).abs();
        ensure!(
            gap <= 1e-12,
            "objective forms differ by {gap:.3e} on random solution {trial}"
        );
    }
    Ok("closed form at 3 instances; 100 random solutions agree to 1e-12".into())
}

// ------------------------------------------------------------ criterion 4 ----

fn c04_pentagonal_detector() -> Result<String, String> {
    let g = lab(Graph::complete_bipartite(2, 3))?;
    let m = lab(graph::graph_metric::<f64>(&g))?;
    let census = lab(pentagon::pentagonal_census(&m, threads()))?;
    ensure!(census.min_slack == -2.0, "K23 min slack {} != -2", census.min_slack);
    let w = &census.witness;
    ensure!(
        w.s == [0, 1] && w.t == [2, 3, 4],
        "K23 witness is not the bipartition: s={:?} t={:?}",
        w.s,
        w.t
    );
    ensure!(
        w.lhs == 6.0 && w.rhs == 8.0,
        "K23 witness sides {} vs {} are not 6 vs 8",
        w.lhs,
        w.rhs
    );
    let corpus = common::cut_measure_corpus();
    let count = corpus.len();
    for (i, cm) in corpus.iter().enumerate() {
        let census = lab(pentagon::pentagonal_census(&cm.to_metric(), threads()))?;
        ensure!(
            census.min_slack >= 0.0,
            "cut-measure metric {i} has negative pentagonal slack {}",
            census.min_slack
        );
    }
    Ok(format!("K23 slack -2 at the 6-vs-8 bipartition; {count} cut metrics all >= 0"))
}

// ------------------------------------------------------------ criterion 5 ----

fn c05_isoperimetry() -> Result<String, String> {
    for n in 1..=4u32 {
        let restricted = lab(isoperimetry::census_generalized(n, false, true, threads()))?;
        ensure!(
            restricted.violations.is_empty(),
            "n={n}: {} violations in the half-or-smaller regime",
            restricted.violations.len()
        );

        let full = lab(isoperimetry::census_generalized(n, false, false, threads()))?;
        ensure!(!full.violations.is_empty(), "n={n}: full census found nothing");
        let cube_mask = (1u64 << (1u32 << n)) - 1;
        ensure!(
            full.violations.iter().any(|r| r.mask == cube_mask),
            "n={n}: S = Q_n missing from the violation list"
        );
        if n == 2 {
            for triple in [0x7u64, 0xb, 0xd, 0xe] {
                ensure!(
                    full.violations.iter().any(|r| r.mask == triple),
                    "n=2: 3-set {triple:#x} missing"
                );
            }
        }

        for restrict in [false, true] {
            let lab_census =
                lab(isoperimetry::census_generalized(n, false, restrict, threads()))?;
            let (checked, oracle) = common::naive_iso_census(n, restrict);
            ensure!(
                lab_census.checked == checked,
                "n={n} restrict={restrict}: checked {} vs oracle {checked}",
                lab_census.checked
            );
            ensure!(
                lab_census.violations.len() == oracle.len(),
                "n={n} restrict={restrict}: {} violations vs oracle {}",
                lab_census.violations.len(),
                oracle.len()
            );
            for (r, &(mask, size, boundary, p, slack)) in
                lab_census.violations.iter().zip(&oracle)
            {
                ensure!(
                    r.mask == mask && r.size == size && r.boundary == boundary && r.p == p,
                    "n={n}: record {:#x} disagrees with oracle {mask:#x}",
                    r.mask
                );
                ensure!(
                    (r.slack - slack).abs() <= 1e-12,
                    "n={n}: slack {} vs oracle {slack} at {mask:#x}",
                    r.slack
                );
            }
        }
    }
    Ok("n <= 4: restricted clean, Q_n and the n=2 triples flagged, oracle matches set-for-set".into())
}

// ------------------------------------------------------------ criterion 6 ----

fn c06_poincare() -> Result<String, String> {
    let c = PoincareConstants::standard();
    for n in 1..=5u32 {
        let census = lab(isoperimetry::poincare_census(n, &c, threads()))?;
        ensure!(
            census.violations.is_empty(),
            "n={n}: {} Poincare violations",
            census.violations.len()
        );
    }
    let census = lab(isoperimetry::poincare_census(4, &c, threads()))?;
    let mut expected: Vec<u64> = (0..8u64).map(|u| 1 << u | 1 << (u ^ 15)).collect();
    expected.sort_unstable();
    ensure!(
        census.equalities == expected,
        "n=4 equality masks {:?} are not the antipodal pairs",
        census.equalities
    );
    let target = 8.0 * c.alpha + 1.0;
    for &mask in &expected {
        let s = lab(VertexSet::new(4, mask))?;
        let rec = lab(isoperimetry::poincare_check(&s, &c))?;
        ensure!(
            (rec.lhs - rec.rhs).abs() <= 1e-12,
            "pair {mask:#x}: |lhs - rhs| = {:.3e}",
            (rec.lhs - rec.rhs).abs()
        );
        ensure!(
            (rec.lhs - target).abs() <= 1e-12 && (rec.rhs - target).abs() <= 1e-12,
            "pair {mask:#x}: sides {} / {} != 8a+1 = {target}",
            rec.lhs,
            rec.rhs
        );
    }
    Ok("n <= 5 clean; all 8 antipodal pairs at n=4 sit exactly on 8a+1".into())
}

// ------------------------------------------------------------ criterion 7 ----

fn c07_calculus_lemma() -> Result<String, String> {
    let c = PoincareConstants::standard();
    let alpha = f64::ln(2.0) / (14.0 - 8.0 * f64::ln(2.0));
    let scan = lab(isoperimetry::calculus_lemma_scan(200_000, &c))?;
    ensure!(
        (scan.argmin - 3.0).abs() <= 1e-6,
        "argmin {} is not 3 +/- 1e-6",
        scan.argmin
    );
    let minval = (8.0 / 7.0) * (4.0 * alpha + 0.5);
    ensure!(
        (scan.minval - minval).abs() <= 1e-9,
        "min {} != (8/7)(4a+1/2) = {minval}",
        scan.minval
    );
    let f1 = 4.0 * alpha + 1.0;
    ensure!(
        (scan.f_at_one - f1).abs() <= 1e-12,
        "f(1) = {} != 4a+1 = {f1}",
        scan.f_at_one
    );
    ensure!(
        (isoperimetry::lemma_f(1.0, &c) - f1).abs() <= 1e-12,
        "direct f(1) drifts from 4a+1"
    );
    Ok(format!(
        "argmin {:.9}, min {:.12}, f(1) = 4a+1",
        scan.argmin, scan.minval
    ))
}

// ------------------------------------------------------------ criterion 8 ----

fn c08_tensor_metric() -> Result<String, String> {
    let c = PoincareConstants::standard();
    for n in 1..=6u32 {
        let m = lab(metric::tensor_metric::<f64>(n, false))?;
        let points = 1usize << n;
        ensure!(m.size() == points + 1, "n={n}: {} points", m.size());
        let nn = f64::from(n * n);
        let mut total = 0.0;
        for a in 0..points {
            ensure!(
                *m.dist(0, a + 1) == nn,
                "n={n}: base distance to {a} is {}",
                m.dist(0, a + 1)
            );
            for b in 0..points {
                if a == b {
                    continue;
                }
                let d = *m.dist(a + 1, b + 1);
                total += d;
                if (a ^ b).count_ones() == 1 {
                    ensure!(
                        d == f64::from(8 * (n - 1)),
                        "n={n}: edge distance {d} != 8(n-1)"
                    );
                }
            }
        }
        let want = f64::powi(2.0, 2 * n as i32) * f64::from(2 * n * n - 2 * n);
        ensure!(total == want, "n={n}: distance sum {total} != {want}");

        let merged = lab(metric::tensor_metric::<f64>(n, true))?;
        for a in 1..merged.size() {
            ensure!(
                *merged.dist(0, a) == nn,
                "n={n}: merged class {a} not at n^2 from the base"
            );
        }
        let census = metric::triangle_census(&m);
        ensure!(
            census.violations.is_empty(),
            "n={n}: {} triangle violations",
            census.violations.len()
        );
        ensure!(
            lab(metric::is_negative_type(&m, 0))?,
            "n={n}: tensor metric not of negative type"
        );
    }
    let b10 = lab(metric::poincare_distortion_bound(10, &c))?;
    ensure!(
        (b10 - 1.0710).abs() <= 1e-3,
        "bound(10) = {b10} is not 1.0710 +/- 1e-3"
    );
    let mut prev = lab(metric::poincare_distortion_bound(2, &c))?;
    for n in 3..=60u32 {
        let next = lab(metric::poincare_distortion_bound(n, &c))?;
        ensure!(next > prev, "bound not increasing at n={n}");
        ensure!(next < 8.0 / 7.0, "bound(n={n}) = {next} reached 8/7");
        prev = next;
    }
    Ok(format!("identities exact for n <= 6; bound(10) = {b10:.6} rising toward 8/7"))
}

// ------------------------------------------------------------ criterion 9 ----

fn c09_exact_c1() -> Result<String, String> {
    for (i, m) in common::three_point_metrics(120).iter().enumerate() {
        let rep = lab(metric::min_distortion_l1(m))?;
        ensure!(
            (rep.c1_lower - 1.0).abs() <= 1e-9,
            "3-point metric {i}: c1 = {}",
            rep.c1_lower
        );
    }
    let corpus = common::cut_measure_corpus();
    for (i, cm) in corpus.iter().enumerate() {
        let rep = lab(metric::min_distortion_l1(&cm.to_metric()))?;
        ensure!(
            (rep.c1_lower - 1.0).abs() <= 1e-9,
            "cut metric {i}: c1 = {}",
            rep.c1_lower
        );
    }

    let g = lab(Graph::complete_bipartite(2, 3))?;
    let float_rep = lab(metric::min_distortion_l1(&lab(graph::graph_metric::<f64>(&g))?))?;
    let exact_rep = lab(metric::min_distortion_l1(&lab(graph::graph_metric::<Rat>(&g))?))?;
    let exact = exact_rep
        .c1_exact
        .as_ref()
        .ok_or("rational mode returned no exact value")?;
    ensure!(
        float_rep.c1_lower >= 4.0 / 3.0 - 1e-6 && exact.as_f64() >= 4.0 / 3.0 - 1e-6,
        "K23 c1 {} / {} below 4/3",
        float_rep.c1_lower,
        exact.as_f64()
    );
    ensure!(
        (float_rep.c1_lower - exact.as_f64()).abs() <= 1e-7,
        "K23 float/rational gap {:.3e}",
        (float_rep.c1_lower - exact.as_f64()).abs()
    );

    let start = Instant::now();
    let tensor = lab(metric::tensor_metric::<f64>(3, true))?;
    let rep = lab(metric::min_distortion_l1(&tensor))?;
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs <= 10.0, "tensor n=3 took {secs:.1}s");
    ensure!(rep.c1_lower >= 1.0 - 1e-9, "tensor n=3 c1 {} < 1", rep.c1_lower);
    Ok(format!(
        "120 three-point and {} cut metrics at c1 = 1; K23 at {:.9}; tensor n=3 in {secs:.2}s",
        corpus.len(),
        float_rep.c1_lower
    ))
}

// ----------------------------------------------------------- criterion 10 ----

fn c10_embedding() -> Result<String, String> {
    let mut last = f64::INFINITY;
    let mut distortions = Vec::new();
    for t in 1..=4u32 {
        let n = 8 * t;
        let params = lab(CharikarParams::<f64>::new(t, n))?;
        let emb = lab(charikar::explicit_l1_embedding(&CharikarSolution::new(params)))?;
        // Closed form re-derived from scratch.
        let tf = f64::from(t);
        let lambda = 1.0 - 1.0 / (2.0 * tf);
        let lam_pow = lambda.powi(2 * t as i32 - 1);
        let q = |x: f64| x.powi(2 * t as i32) + 2.0 * tf * lam_pow * x;
        let beta = (q(1.0) + q(-lambda)) / (q(1.0) - q(-lambda));
        let expected = (1.0 - beta * beta) / q(1.0) * (2.0 + 4.0 * tf * lam_pow);
        let norm = emb.norm_f;
        ensure!(
            (norm - expected).abs() <= 1e-9,
            "t={t}: image norm {norm} != {expected}"
        );
        ensure!(
            emb.distortion < last,
            "t={t}: distortion {} did not decrease (previous {last})",
            emb.distortion
        );
        last = emb.distortion;
        distortions.push(format!("{:.4}", emb.distortion));
    }
    Ok(format!(
        "norms match the closed form; distortion falls {} over t = 1..4",
        distortions.join(" > ")
    ))
}

// ----------------------------------------------------------- criterion 11 ----

fn c11_rounding_corpus() -> Result<String, String> {
    let (graphs, all_counts, connected_counts) = common::connected_graphs_up_to_iso(8);
    ensure!(
        all_counts == common::ALL_GRAPH_COUNTS,
        "graph generator counts {all_counts:?} != {:?}",
        common::ALL_GRAPH_COUNTS
    );
    ensure!(
        connected_counts == common::CONNECTED_GRAPH_COUNTS,
        "connected counts {connected_counts:?} != {:?}",
        common::CONNECTED_GRAPH_COUNTS
    );
    for g in &graphs {
        let (vc, cover) = common::brute_force_vc(g);
        let sol = lab(VectorSolution::integral(g, cover))?;
        let non_cover = !cover & ((1u64 << g.order()) - 1);
        let cm = lab(CutMeasure::new(g.order() + 1, vec![(non_cover << 1, 4.0)]))?;
        let r = lab(metric::cut_rounding(g, &sol, &cm))?;
        ensure!(
            r.cover_size == vc,
            "{}-vertex graph with {} edges: rounded cover {} != vc {vc}",
            g.order(),
            g.size(),
            r.cover_size
        );
        ensure!(
            graph::is_vertex_cover(g, r.cover_mask),
            "rounded mask is not a cover"
        );
        ensure!(
            (r.lambda_sum - 2.0).abs() <= 1e-12,
            "lambda sum {} != 2",
            r.lambda_sum
        );
    }
    Ok(format!(
        "{} connected graphs on <= 8 vertices: cover recovered exactly, sum of lambda = 2",
        graphs.len()
    ))
}

// ----------------------------------------------------------- criterion 12 ----

fn c12_lp_agreement() -> Result<String, String> {
    let mut rng = common::seeded_rng(12);
    let mut optimal = 0usize;
    let mut infeasible = 0usize;
    let mut max_gap = 0.0f64;
    for i in 0..100 {
        let flp = common::random_lp(&mut rng);
        let f = lp::solve(&flp).map_err(|e| format!("float LP {i}: {e}"))?;
        let r = lp::solve(&lp::to_exact(&flp)).map_err(|e| format!("exact LP {i}: {e}"))?;
        match (&f.outcome, &r.outcome) {
            (
                LpOutcome::Optimal { value: vf, .. },
                LpOutcome::Optimal { value: vr, .. },
            ) => {
                optimal += 1;
                let gap = (vf - vr.as_f64()).abs();
                max_gap = max_gap.max(gap);
                ensure!(gap <= 1e-7, "LP {i}: float/rational gap {gap:.3e}");
            }
            (LpOutcome::Infeasible, LpOutcome::Infeasible) => infeasible += 1,
            (a, b) => {
                return Err(format!("LP {i}: outcomes diverge ({a:?} vs {b:?})"));
            }
        }
    }
    ensure!(optimal >= 60, "only {optimal} of 100 programs were optimal");
    Ok(format!(
        "{optimal} optimal / {infeasible} infeasible; max value gap {max_gap:.2e}; no stalls"
    ))
}

// ----------------------------------------------------------- criterion 13 ----

fn c13_sdp_io() -> Result<String, String> {
    let cases = [
        ("K3", lab(Graph::complete(3))?),
        ("C5", lab(Graph::cycle(5))?),
        ("K23", lab(Graph::complete_bipartite(2, 3))?),
    ];
    for (name, g) in &cases {
        for tier in Tier::ALL {
            let inst = lab(SdpInstance::build(g, tier))?;
            let text = inst.render();
            let parsed = lab(sdp_io::parse_sdpa(&text))?;
            ensure!(
                parsed.rows == inst.emitted_rows(),
                "{name}/{tier}: parsed {} rows, wrote {}",
                parsed.rows,
                inst.emitted_rows()
            );
            let want = relaxations::census_size(tier, g.order() + 1, g.size());
            ensure!(
                inst.census_constraints() == want,
                "{name}/{tier}: census {} != {want}",
                inst.census_constraints()
            );

            // Feasible verdicts survive the text round trip.
            let (vc, cover) = common::brute_force_vc(g);
            let sol = lab(VectorSolution::integral(g, cover))?;
            let direct = lab(relaxations::check_tier(&sol, g, tier, 1e-9))?;
            let text = sdp_io::format_solution(&sol);
            let (back, reimported) = lab(sdp_io::import_solution(&text, g, tier, 1e-9))?;
            ensure!(back.points() == g.order() + 1, "{name}/{tier}: point count drifted");
            ensure!(
                direct.feasible && reimported.feasible,
                "{name}/{tier}: integral verdict lost in transit"
            );
            ensure!(
                reimported.constraints_checked == want,
                "{name}/{tier}: round trip checked {} constraints, census says {want}",
                reimported.constraints_checked
            );
            ensure!(
                (reimported.objective_vc - f64::from(vc)).abs() <= 1e-12,
                "{name}/{tier}: objective {} != vc {vc}",
                reimported.objective_vc
            );

            // Infeasible verdicts survive too: lean the cover side 0.99
            // toward the apex so every edge misses orthogonality.
            let s = (1.0f64 - 0.99 * 0.99).sqrt();
            let mut coords = vec![vec![1.0, 0.0]];
            for v in 0..g.order() {
                if cover >> v & 1 == 1 {
                    coords.push(vec![0.99, s]);
                } else {
                    coords.push(vec![-1.0, 0.0]);
                }
            }
            let tilted = lab(VectorSolution::from_coords(coords))?;
            let direct = lab(relaxations::check_tier(&tilted, g, tier, 1e-9))?;
            ensure!(!direct.feasible, "{name}/{tier}: tilted solution passed");
            let text = sdp_io::format_solution(&tilted);
            let (_, reimported) = lab(sdp_io::import_solution(&text, g, tier, 1e-9))?;
            ensure!(
                !reimported.feasible
                    && (reimported.worst_violation - direct.worst_violation).abs() <= 1e-12,
                "{name}/{tier}: infeasible verdict drifted ({} vs {})",
                direct.worst_violation,
                reimported.worst_violation
            );
        }
    }

    let golden = [
        ("K3", Tier::Standard, include_str!("../testdata/k3-standard.sdpa")),
        ("C5", Tier::Triangle, include_str!("../testdata/c5-triangle.sdpa")),
        ("K23", Tier::Pentagonal, include_str!("../testdata/k23-pentagonal.sdpa")),
    ];
    for (name, tier, frozen) in golden {
        let g = match name {
            "K3" => lab(Graph::complete(3))?,
            "C5" => lab(Graph::cycle(5))?,
            _ => lab(Graph::complete_bipartite(2, 3))?,
        };
        let text = lab(SdpInstance::build(&g, tier))?.render();
        ensure!(text == frozen, "{name}/{tier} no longer matches its golden file");
    }
    Ok("round trips preserve verdicts and counts at all tiers; golden files byte-stable".into())
}

// ----------------------------------------------------------------- driver ----

fn main() {
    let criteria: &[(&str, fn() -> Result<String, String>)] = &[
        ("charikar tier feasibility", c01_charikar_feasibility),
        ("beta closure", c02_beta_closure),
        ("objective identity", c03_objective_identity),
        ("pentagonal detector", c04_pentagonal_detector),
        ("generalized isoperimetry", c05_isoperimetry),
        ("poincare inequality", c06_poincare),
        ("calculus lemma", c07_calculus_lemma),
        ("tensor metric", c08_tensor_metric),
        ("exact c1", c09_exact_c1),
        ("explicit l1 embedding", c10_embedding),
        ("rounding corpus", c11_rounding_corpus),
        ("lp core agreement", c12_lp_agreement),
        ("sdp text round trip", c13_sdp_io),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(|| check())
            .unwrap_or_else(|_| Err("panicked (see output above)".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:2}  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(msg) => {
                failures += 1;
                println!("FAIL {:2}  {name}: {msg} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failures > 0 {
        println!("acceptance: {failures} of {} criteria FAILED", criteria.len());
        std::process::exit(1);
    }
    println!("acceptance: all {} criteria passed", criteria.len());
}
