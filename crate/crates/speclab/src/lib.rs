//! Numerical laboratory for local spectral theory of small complex matrices.
//!
//! The crate studies the orbit `t ↦ e^{tT}x` of a vector under a matrix
//! semigroup, and what polynomial growth of that orbit says about the
//! structure of `T` and `x`:
//!
//! * [`linalg`] — dense complex vectors/matrices, exponentials, resolvents,
//!   eigenvalues, and spectral projections at desk scale (dimension ≤ 16).
//! * [`local_spectrum`] — local spectra `σ_T(x)`, local spectral radii,
//!   bidirectional growth certificates, and a Carleman-style resolvent
//!   blow-up scan.
//! * [`beurling`] — polynomially weighted function/measure algebras on the
//!   line: admissible weights, Gaussian and band-limited test functions,
//!   Fourier data, discrete measures, and the series constant `C(α)`.
//! * [`calculus`] — the weighted calculus `x_f = ∫ f(t) e^{tT}x dt` and
//!   `x_μ = ∫ e^{tT}x dμ(t)`, the one-point Taylor formula, and the
//!   orbit-side checkers of the statement catalog (see `README.md`).
//! * [`derivation`] — inner derivations `Δ_A = [A, ·]`, conjugation orbits,
//!   Deddens-class membership, local spectral subspaces, principal matrix
//!   logarithms, and the derivation-side checkers.
//! * [`suites`] — seeded randomized verification suites behind the
//!   `speclab verify` subcommand.
//! * [`cli`] — the thin command-line layer (`analyze`, `verify`, `sweep`,
//!   `report`).
//!
//! # Examples
//!
//! The `examples/` directory is the guided tour; each file is runnable on
//! its own and prints what it checks:
//!
//! ```text
//! cargo run --example local_spectrum_basics   # σ_T(x) and both radii
//! cargo run --example orbit_growth            # growth certificates + CSV sweep
//! cargo run --example one_point_calculus      # Taylor formula vs quadrature
//! cargo run --example eigenprojection_split   # splitting x by interpolating functions
//! cargo run --example triangular_measure      # C(α) and the triangular-wave measure
//! cargo run --example norm_bound              # ‖Tx‖ ≤ C_x(r + C(α) r^{1−α})
//! cargo run --example carleman_scan           # locating σ_T(x) by resolvent blow-up
//! cargo run --example resolvent_identity      # Laplace transform of the orbit
//! cargo run --example deddens_class           # conjugation orbits and ker Δ_A^k
//! cargo run --example matrix_log_invariance   # principal log + invariance checks
//! ```
//!
//! The same machinery is scriptable through the `speclab` binary; see the
//! README for the subcommand reference and the JSON/CSV formats.

pub mod beurling;
pub mod calculus;
pub mod cli;
pub mod config;
pub mod derivation;
mod error;
pub mod io;
pub mod linalg;
pub mod local_spectrum;
pub mod quad;
pub mod report;
pub mod suites;

pub use error::Error;
