//! The single home for every numeric default in the crate.
//!
//! Command-line flags and explicit function arguments override these; code
//! elsewhere must not hard-wire its own magic numbers. Keeping them in one
//! documented module makes runs reproducible and the knobs auditable.

/// Default RNG seed for randomized suites and sampled starts.
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

/// Default clustering tolerance for eigenvalues and for membership of a
/// point in a local spectrum (`‖P_λ x‖ > tol·‖x‖`).
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;

/// Two merged clusters closer than this multiple of the cluster tolerance
/// make Hermite interpolation ill-conditioned and are rejected.
pub const CLUSTER_GUARD_FACTOR: f64 = 10.0;

/// Relative tolerance for the L2 operator-norm power iteration.
pub const L2_ITERATION_TOL: f64 = 1e-12;

/// Iteration cap for the L2 operator-norm power iteration.
pub const L2_ITERATION_CAP: usize = 10_000;

/// Default relative truncation tolerance for the scaled-and-squared
/// exponential series.
pub const EXPM_TOL: f64 = 1e-13;

/// 1-norms above this would overflow `exp` in double precision.
pub const EXPM_NORM_CAP: f64 = 600.0;

/// Default relative residual tolerance for resolvent solves, scaled by
/// `(|z| + ‖M‖)·‖u‖`.
pub const RESOLVENT_RESIDUAL_TOL: f64 = 1e-10;

/// Default absolute error budget for adaptive quadrature, split evenly
/// between the adaptive pass on the truncated interval and the analytic
/// tail bound.
pub const QUAD_TOL: f64 = 1e-8;

/// Default half-width of the sampling grid for growth certificates and
/// growth-constant estimation.
pub const GRID_T_MAX: f64 = 200.0;

/// Default step of that grid.
pub const GRID_STEP: f64 = 0.05;

/// Default half-width of the exported sweep grid (the `sweep` command).
pub const DEFAULT_SWEEP_T_MAX: f64 = 10.0;

/// Default step of the exported sweep grid.
pub const DEFAULT_SWEEP_STEP: f64 = 0.1;

/// Grid suprema of `‖e^{tT}x‖/ω(t)` converge from below; the reported
/// growth constant is inflated by this factor to cover the remainder.
pub const GROWTH_CONSTANT_MARGIN: f64 = 1.01;

/// Fitted growth exponents carry roughly this much noise at the default
/// grid; empirical membership tests compare against `α + ALPHA_FIT_MARGIN`.
pub const ALPHA_FIT_MARGIN: f64 = 0.15;

/// Default power-iteration length for the local spectral radius estimate.
pub const RADIUS_POWER_N_MAX: usize = 64;

/// Default atom cutoff `K` for truncated measures (atoms `|k| ≤ K`).
pub const MEASURE_K_ATOMS: usize = 5000;

/// Default tail tolerance for the series constant `C(α)`.
pub const C_ALPHA_TAIL_TOL: f64 = 1e-9;

/// Offsets `ε` used by the Carleman-style resolvent blow-up scan.
pub const CARLEMAN_OFFSETS: [f64; 6] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6];

/// A log–log slope at or below this flags resolvent blow-up.
pub const CARLEMAN_SLOPE_THRESHOLD: f64 = -0.8;

/// Gaussian-family quadrature is truncated at this many standard
/// deviations; the discarded tail is covered by an analytic bound.
pub const GAUSSIAN_T_CUT_SIGMAS: f64 = 40.0;

/// Environment variable capping suite parallelism.
pub const WORKERS_ENV: &str = "SPECLAB_WORKERS";
