//! Centralized float tolerances.
//!
//! Every tolerance used by a verdict lives here, so test expectations,
//! CLI defaults, and library defaults cannot drift apart. Exact
//! (rational) mode ignores all of these and compares against zero.

/// Absolute tolerance on constraint residuals and census slacks.
/// A solution is feasible iff its worst violation stays below this.
pub const RESIDUAL_ABS: f64 = 1e-9;

/// Relative floor for the smallest eigenvalue in PSD tests:
/// `min_eig >= -PSD_EIG_REL * trace` passes.
pub const PSD_EIG_REL: f64 = 1e-8;

/// Agreement required between the two objective forms (vertex-cover
/// form and distance form) of the same solution.
pub const OBJECTIVE_EQ: f64 = 1e-12;

/// Residual allowed in the defining equation of the parameter `beta`
/// in float mode.
pub const BETA_RESIDUAL: f64 = 1e-12;

/// Allowed gap between float-mode and rational-mode optima of the same
/// linear program.
pub const CROSS_MODE: f64 = 1e-7;

/// Agreement between a realization's inner products and the stored
/// Gram matrix.
pub const REALIZATION_EQ: f64 = 1e-9;

/// Absolute tolerance on `l1` embedding identities (norm formulas,
/// cut-measure round trips in float mode).
pub const EMBED_ABS: f64 = 1e-9;

/// Window around the calculus-lemma argmin.
pub const LEMMA_ARGMIN: f64 = 1e-6;

/// Window around the calculus-lemma minimum value.
pub const LEMMA_MINVAL: f64 = 1e-9;

/// Slack below which a census entry counts as an equality case.
pub const EQUALITY_ABS: f64 = 1e-12;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_sane() {
        // The pivot epsilon of the LP kernel must undercut every
        // verdict tolerance, and equality detection must be strictly
        // tighter than feasibility.
        assert!(crate::scalar::pivot_eps::<f64>() < EQUALITY_ABS);
        assert!(EQUALITY_ABS < RESIDUAL_ABS);
        assert!(RESIDUAL_ABS <= CROSS_MODE);
        assert!(OBJECTIVE_EQ < RESIDUAL_ABS);
    }
}
