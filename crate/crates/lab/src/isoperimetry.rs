//! Exhaustive audits of the generalized edge-isoperimetric bound on
//! the hypercube, its symmetric-set corollary, the cube-plus-a-point
//! Poincare inequality, and the one-variable calculus fact behind the
//! Poincare constant.
//!
//! The bound `|E(S,S^c)| >= |S| (n - log2 |S|) + p(S)` is treated as an
//! auditable claim, not an axiom: censuses report every negative-slack
//! set. All observed violations have |S| > 2^(n-1) (the full cube, and
//! e.g. a 3-point set in Q_2); the `restrict_small` switch judges only
//! the half-or-smaller regime, which is the one consumed downstream.

use serde::Serialize;

use crate::cube::{enumerate_subsets, VertexSet};
use crate::{run_sharded, tol, Error, Result};

// ---------------------------------------------------------------------------
// Generalized isoperimetry
// ---------------------------------------------------------------------------

/// One audited set: exact counts plus the real-valued bound and slack.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsoperimetryRecord {
    pub n: u32,
    pub mask: u64,
    pub size: u64,
    pub boundary: u64,
    /// Number of vertices u in S with -u also in S (the written
    /// definition; see [`IsoperimetryRecord::antipodal_pairs`]).
    pub p: u64,
    /// `|S| (n - log2 |S|) + p(S)`; zero for the empty set.
    pub bound: f64,
    /// `boundary - bound`; negative means the stated bound fails.
    pub slack: f64,
}

impl IsoperimetryRecord {
    pub const CSV_HEADER: &'static str = "n,set_bits_hex,size,boundary,p,bound,slack";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{:#x},{},{},{},{:.9},{:.9}",
            self.n, self.mask, self.size, self.boundary, self.p, self.bound, self.slack
        )
    }

    /// The same quantity counted as unordered antipodal pairs.
    pub fn antipodal_pairs(&self) -> u64 {
        self.p / 2
    }
}

/// Exact binary log of a power of two, double precision otherwise.
fn log2_size(size: u64) -> f64 {
    debug_assert!(size > 0);
    if size.is_power_of_two() {
        f64::from(size.trailing_zeros())
    } else {
        (size as f64).log2()
    }
}

pub fn check_generalized(s: &VertexSet) -> IsoperimetryRecord {
    let size = s.len();
    let boundary = s.edge_boundary();
    let p = s.antipodal_count();
    let bound = if size == 0 {
        0.0
    } else {
        size as f64 * (f64::from(s.dim()) - log2_size(size)) + p as f64
    };
    IsoperimetryRecord {
        n: s.dim(),
        mask: s.mask(),
        size,
        boundary,
        p,
        bound,
        slack: boundary as f64 - bound,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsoCensus {
    pub checked: u64,
    /// Negative-slack records, sorted by set mask.
    pub violations: Vec<IsoperimetryRecord>,
}

/// Audit every subset (or every symmetric subset) of the n-cube.
/// `restrict_small` confines judgment to |S| <= 2^(n-1). Work is
/// sharded across `threads` scoped workers; the merged result is
/// independent of the thread count.
pub fn census_generalized(
    n: u32,
    symmetric_only: bool,
    restrict_small: bool,
    threads: usize,
) -> Result<IsoCensus> {
    // Probe the cap up front so workers cannot fail.
    let _ = enumerate_subsets(n, symmetric_only, crate::Shard::whole())?;
    let half = 1u64 << (n - 1);
    let parts = run_sharded(threads, |shard| {
        let mut checked = 0u64;
        let mut violations = Vec::new();
        for s in enumerate_subsets(n, symmetric_only, shard).expect("cap checked above") {
            if restrict_small && s.len() > half {
                continue;
            }
            checked += 1;
            let rec = check_generalized(&s);
            if rec.slack < -tol::RESIDUAL_ABS {
                violations.push(rec);
            }
        }
        (checked, violations)
    });
    let mut census = IsoCensus {
        checked: 0,
        violations: Vec::new(),
    };
    for (checked, violations) in parts {
        census.checked += checked;
        census.violations.extend(violations);
    }
    census.violations.sort_by_key(|r| r.mask);
    Ok(census)
}

// ---------------------------------------------------------------------------
// Poincare inequality
// ---------------------------------------------------------------------------

/// The constant of the cube-plus-a-point Poincare inequality and the
/// prefactor it produces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoincareConstants {
    /// `ln 2 / (14 - 8 ln 2)`.
    pub alpha: f64,
    /// `(8/7) (4 alpha + 1/2)`; also the minimum of [`lemma_f`].
    pub factor: f64,
}

impl PoincareConstants {
    pub fn standard() -> Self {
        let alpha = f64::ln(2.0) / (14.0 - 8.0 * f64::ln(2.0));
        PoincareConstants {
            alpha,
            factor: (8.0 / 7.0) * (4.0 * alpha + 0.5),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoincareRecord {
    pub n: u32,
    pub mask: u64,
    /// `(1/2^n) (8/7) (4a + 1/2) |S| |S^c|`.
    pub lhs: f64,
    /// `a |E(S,S^c)| + |S|/2`.
    pub rhs: f64,
    pub slack: f64,
}

/// Evaluate the inequality on one antipodally closed set. Symmetry is
/// a hard precondition: the underlying functions must satisfy
/// f(u) = f(-u).
pub fn poincare_check(s: &VertexSet, c: &PoincareConstants) -> Result<PoincareRecord> {
    if !s.is_symmetric() {
        return Err(Error::Precondition(format!(
            "set {:#x} is not antipodally closed",
            s.mask()
        )));
    }
    let n = s.dim();
    let size = s.len() as f64;
    let co_size = s.complement().len() as f64;
    let lhs = c.factor * size * co_size / f64::from(1u32 << n);
    let rhs = c.alpha * s.edge_boundary() as f64 + size / 2.0;
    Ok(PoincareRecord {
        n,
        mask: s.mask(),
        lhs,
        rhs,
        slack: rhs - lhs,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoincareCensus {
    pub checked: u64,
    pub violations: Vec<PoincareRecord>,
    /// Masks of nonempty sets achieving equality (within 1e-12).
    pub equalities: Vec<u64>,
}

/// Check every symmetric subset of the n-cube (2^(2^(n-1)) sets).
pub fn poincare_census(n: u32, c: &PoincareConstants, threads: usize) -> Result<PoincareCensus> {
    let _ = enumerate_subsets(n, true, crate::Shard::whole())?;
    let parts = run_sharded(threads, |shard| {
        let mut checked = 0u64;
        let mut violations = Vec::new();
        let mut equalities = Vec::new();
        for s in enumerate_subsets(n, true, shard).expect("cap checked above") {
            checked += 1;
            let rec = poincare_check(&s, c).expect("census sets are symmetric");
            if rec.slack < -tol::RESIDUAL_ABS {
                violations.push(rec);
            } else if rec.slack.abs() <= tol::EQUALITY_ABS && !s.is_empty() {
                equalities.push(s.mask());
            }
        }
        (checked, violations, equalities)
    });
    let mut census = PoincareCensus {
        checked: 0,
        violations: Vec::new(),
        equalities: Vec::new(),
    };
    for (checked, violations, equalities) in parts {
        census.checked += checked;
        census.violations.extend(violations);
        census.equalities.extend(equalities);
    }
    census.violations.sort_by_key(|r| r.mask);
    census.equalities.sort_unstable();
    Ok(census)
}

// ---------------------------------------------------------------------------
// The calculus lemma
// ---------------------------------------------------------------------------

/// `f(x) = (a (x+1) + 1/2) / (1 - 2^(-x))`, the function whose minimum
/// over [1, oo) pins down the Poincare prefactor.
pub fn lemma_f(x: f64, c: &PoincareConstants) -> f64 {
    (c.alpha * (x + 1.0) + 0.5) / (1.0 - (-x).exp2())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaScan {
    pub argmin: f64,
    pub minval: f64,
    pub f_at_one: f64,
    /// Central-difference derivative at x = 3.
    pub derivative_at_three: f64,
}

/// Locate the minimum of [`lemma_f`] on [1, 64]: coarse grid, then
/// golden-section refinement of the bracketing interval.
pub fn calculus_lemma_scan(grid: usize, c: &PoincareConstants) -> Result<LemmaScan> {
    if grid < 1000 {
        return Err(Error::Precondition(format!(
            "lemma scan needs a grid of at least 1000 points, got {grid}"
        )));
    }
    let (lo, hi) = (1.0f64, 64.0f64);
    let step = (hi - lo) / (grid - 1) as f64;
    let mut best_idx = 0;
    let mut best_val = f64::INFINITY;
    for i in 0..grid {
        let v = lemma_f(lo + step * i as f64, c);
        if v < best_val {
            best_val = v;
            best_idx = i;
        }
    }
    let mut a = lo + step * best_idx.saturating_sub(1) as f64;
    let mut b = (lo + step * (best_idx + 1) as f64).min(hi);
    // Golden-section search on the bracket.
    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = lemma_f(x1, c);
    let mut f2 = lemma_f(x2, c);
    while b - a > 1e-10 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = lemma_f(x1, c);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = lemma_f(x2, c);
        }
    }
    let argmin = (a + b) / 2.0;
    let h = 1e-6;
    Ok(LemmaScan {
        argmin,
        minval: lemma_f(argmin, c),
        f_at_one: lemma_f(1.0, c),
        derivative_at_three: (lemma_f(3.0 + h, c) - lemma_f(3.0 - h, c)) / (2.0 * h),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Shard;

    fn set(n: u32, mask: u64) -> VertexSet {
        VertexSet::new(n, mask).unwrap()
    }

    #[test]
    fn constants_match_closed_forms() {
        let c = PoincareConstants::standard();
        assert!((c.alpha - 0.08198246338208083).abs() < 1e-15);
        assert!((c.factor - 0.9462055468895123).abs() < 1e-15);
        assert!((c.factor - (4.0 * c.alpha + 0.5) / (7.0 / 8.0)).abs() < 1e-15);
    }

    #[test]
    fn generalized_examples() {
        // Singleton in Q_3: equality.
        let rec = check_generalized(&set(3, 0b1));
        assert_eq!((rec.size, rec.boundary, rec.p), (1, 3, 0));
        assert_eq!(rec.bound, 3.0);
        assert_eq!(rec.slack, 0.0);
        // Antipodal pair in Q_4: equality, 2(4-1) + 2 = 8.
        let rec = check_generalized(&set(4, (1 << 0b0000) | (1 << 0b1111)));
        assert_eq!((rec.size, rec.boundary, rec.p), (2, 8, 2));
        assert_eq!(rec.bound, 8.0);
        assert_eq!(rec.slack, 0.0);
        assert_eq!(rec.antipodal_pairs(), 1);
        // The n=2 three-point counterexample to the literal statement.
        let rec = check_generalized(&set(2, (1 << 0b11) | (1 << 0b01) | (1 << 0b00)));
        assert_eq!(rec.boundary, 2);
        assert!((rec.bound - 3.2451124978365314).abs() < 1e-12);
        assert!(rec.slack < 0.0);
        // Empty set: all-zero record.
        let rec = check_generalized(&set(3, 0));
        assert_eq!((rec.bound, rec.slack), (0.0, 0.0));
    }

    #[test]
    fn census_restricted_is_clean() {
        for n in 1..=4 {
            let census = census_generalized(n, false, true, 1).unwrap();
            assert!(
                census.violations.is_empty(),
                "n={n}: {:?}",
                census.violations.first()
            );
        }
        let sym = census_generalized(5, true, true, 1).unwrap();
        assert!(sym.violations.is_empty());
        // Symmetric sets with at most 8 of the 16 antipodal classes:
        // sum_{k<=8} C(16,k) = 2^15 + C(16,8)/2.
        assert_eq!(sym.checked, 39203);
    }

    #[test]
    fn census_unrestricted_reports_large_sets() {
        let census = census_generalized(2, false, false, 1).unwrap();
        assert_eq!(census.checked, 16);
        // Q_2 itself violates: boundary 0 vs bound 4.
        let full = census.violations.iter().find(|r| r.mask == 0b1111).unwrap();
        assert_eq!(full.boundary, 0);
        assert_eq!(full.bound, 4.0);
        // All violations exceed half the cube.
        assert!(census.violations.iter().all(|r| r.size > 2));
        // The 3-point sets are among them.
        assert!(census.violations.iter().any(|r| r.size == 3));
    }

    #[test]
    fn standard_bound_is_clean_everywhere() {
        // Without the +p(S) term the bound holds for every subset.
        for n in 1..=4 {
            for s in enumerate_subsets(n, false, Shard::whole()).unwrap() {
                let rec = check_generalized(&s);
                let std_bound = rec.bound - rec.p as f64;
                assert!(
                    rec.boundary as f64 >= std_bound - 1e-9,
                    "n={n} mask={:#x}",
                    rec.mask
                );
            }
        }
    }

    #[test]
    fn census_thread_count_is_immaterial() {
        let serial = census_generalized(4, false, false, 1).unwrap();
        let parallel = census_generalized(4, false, false, 3).unwrap();
        assert_eq!(serial, parallel);
        let p1 = poincare_census(4, &PoincareConstants::standard(), 1).unwrap();
        let p4 = poincare_census(4, &PoincareConstants::standard(), 4).unwrap();
        assert_eq!(p1, p4);
    }

    #[test]
    fn poincare_examples() {
        let c = PoincareConstants::standard();
        // Antipodal pair in Q_4: equality at 8a + 1.
        let rec = poincare_check(&set(4, (1 << 0b0000) | (1 << 0b1111)), &c).unwrap();
        assert!((rec.lhs - 1.6558597070566465).abs() < 1e-12);
        assert!((rec.rhs - rec.lhs).abs() < 1e-12);
        // Full cube: empty complement, slack is |S|/2.
        let rec = poincare_check(&set(3, 0xff), &c).unwrap();
        assert_eq!(rec.lhs, 0.0);
        assert_eq!(rec.rhs, 4.0);
        // Complement of an antipodal pair in Q_3.
        let pair = (1u64 << 0b000) | (1 << 0b111);
        let rec = poincare_check(&set(3, 0xff ^ pair), &c).unwrap();
        assert!((rec.lhs - 1.4193083203342683).abs() < 1e-12);
        assert!((rec.rhs - (6.0 * c.alpha + 3.0)).abs() < 1e-12);
        assert!(rec.slack > 0.0);
        // Non-symmetric input is rejected.
        assert!(poincare_check(&set(3, 0b1), &c).is_err());
    }

    #[test]
    fn poincare_census_is_clean_with_pair_equalities() {
        let c = PoincareConstants::standard();
        let census = poincare_census(4, &c, 1).unwrap();
        assert_eq!(census.checked, 256);
        assert!(census.violations.is_empty());
        // Equality cases: exactly the 8 antipodal pairs.
        let mut pairs: Vec<u64> = (0u32..8)
            .map(|v| (1u64 << v) | (1 << (v ^ 0b1111)))
            .collect();
        pairs.sort_unstable();
        assert_eq!(census.equalities, pairs);

        let big = poincare_census(5, &c, 2).unwrap();
        assert_eq!(big.checked, 65536);
        assert!(big.violations.is_empty());
    }

    #[test]
    fn codimension_one_symmetric_subcubes_are_tight() {
        // S = {u : u_a u_b = 1} has |S| = 2^(n-1), boundary 2^n, and
        // exact equality in the generalized bound.
        for n in 2..=5u32 {
            for a in 0..n {
                for b in a + 1..n {
                    let mut mask = 0u64;
                    for v in 0..1u32 << n {
                        if (v >> a & 1) == (v >> b & 1) {
                            mask |= 1 << v;
                        }
                    }
                    let s = set(n, mask);
                    assert!(s.is_symmetric());
                    let rec = check_generalized(&s);
                    assert_eq!(rec.size, 1 << (n - 1));
                    assert_eq!(rec.boundary, 1 << n);
                    assert_eq!(rec.slack, 0.0, "n={n} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn lemma_scan_finds_the_minimum() {
        let c = PoincareConstants::standard();
        let scan = calculus_lemma_scan(4096, &c).unwrap();
        assert!((scan.argmin - 3.0).abs() < 1e-6, "argmin {}", scan.argmin);
        assert!((scan.minval - c.factor).abs() < 1e-9);
        assert!((scan.f_at_one - (4.0 * c.alpha + 1.0)).abs() < 1e-12);
        assert!((scan.f_at_one - 1.3279298535283233).abs() < 1e-12);
        assert!(scan.derivative_at_three.abs() < 1e-6);
        assert!(scan.f_at_one > 8.0 / 7.0, "f(1) exceeds the asymptote");
        assert!(calculus_lemma_scan(999, &c).is_err());
    }

    #[test]
    fn csv_row_format() {
        let rec = check_generalized(&set(3, 0b1));
        assert_eq!(IsoperimetryRecord::CSV_HEADER, "n,set_bits_hex,size,boundary,p,bound,slack");
        assert_eq!(rec.csv_row(), "3,0x1,1,3,0,3.000000000,0.000000000");
    }
}
