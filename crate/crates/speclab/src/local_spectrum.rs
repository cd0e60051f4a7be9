//! Local spectral data of a matrix at a vector: the support of `x` across
//! spectral projections, the local spectral radius, growth classification of
//! the orbit `t -> e^{tT} x`, and two independent cross-checks (resolvent
//! blow-up scanning and the Laplace representation of the local resolvent).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config;
use crate::error::Error;
use crate::linalg::{
    ComplexMatrix, ComplexVector, NormFamily, SpectralDecomposition, operator_norm,
    resolvent_apply, spectral_decomposition,
};
use crate::quad::integrate;
use crate::report::TheoremReport;

/// How a spectrum estimate was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumSource {
    ExactProjection,
    CarlemanScan,
}

/// The local spectrum `sigma_T(x)`: eigenvalues whose spectral projection
/// carries a nontrivial piece of `x`. Empty exactly for `x = 0`.
#[derive(Debug, Clone)]
pub struct LocalSpectrum {
    pub points: Vec<Complex64>,
    /// `||P_j x||_2` for each point, same order.
    pub masses: Vec<f64>,
    pub source: SpectrumSource,
    pub cluster_tol: f64,
}

impl LocalSpectrum {
    pub fn radius(&self) -> f64 {
        self.points.iter().map(|l| l.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_real(&self) -> f64 {
        self.points.iter().map(|l| l.re.abs()).fold(0.0, f64::max)
    }

    pub fn contains(&self, lambda: Complex64, tol: f64) -> bool {
        self.points.iter().any(|p| (p - lambda).norm() <= tol)
    }
}

/// Precomputed data for evaluating `e^{tT} x` at many `t` cheaply:
/// `e^{tT} x = sum_j e^{lambda_j t} sum_r (t^r / r!) (T - lambda_j)^r P_j x`,
/// with the inner sum finite because each projected vector is eventually
/// killed by `(T - lambda_j)`.
#[derive(Debug, Clone)]
pub struct OrbitEvaluator {
    dim: usize,
    terms: Vec<OrbitTerm>,
    x_norm: f64,
}

#[derive(Debug, Clone)]
struct OrbitTerm {
    lambda: Complex64,
    /// `vectors[r] = (T - lambda)^r P x`; stops at the first vanishing power.
    vectors: Vec<ComplexVector>,
}

impl OrbitEvaluator {
    pub fn new(m: &ComplexMatrix, decomp: &SpectralDecomposition, x: &ComplexVector) -> Self {
        let x_norm = x.norm_l2();
        let m_scale = 1.0 + m.one_norm();
        let mut terms = Vec::with_capacity(decomp.clusters.len());
        for cluster in &decomp.clusters {
            let mut shifted = m.clone();
            shifted = shifted.add_scaled_identity(-cluster.eigenvalue);
            let mut vectors = Vec::new();
            let mut v = cluster.projection.mul_vec(x);
            let mut scale = x_norm.max(1e-300);
            for _ in 0..cluster.nilpotent_order {
                if v.norm_l2() <= 1e-13 * scale {
                    break;
                }
                vectors.push(v.clone());
                v = shifted.mul_vec(&v);
                scale *= m_scale;
            }
            terms.push(OrbitTerm {
                lambda: cluster.eigenvalue,
                vectors,
            });
        }
        OrbitEvaluator {
            dim: x.dim(),
            terms,
            x_norm,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn x_norm(&self) -> f64 {
        self.x_norm
    }

    /// `e^{tT} x`. Overflows to non-finite entries when `Re(lambda) * t`
    /// exceeds roughly 709; callers sampling exponential orbits clamp `t`.
    pub fn evaluate(&self, t: f64) -> ComplexVector {
        let mut acc = ComplexVector::zeros(self.dim);
        for term in &self.terms {
            let mut coeff = (term.lambda * t).exp();
            for (r, v) in term.vectors.iter().enumerate() {
                if r > 0 {
                    coeff *= t / r as f64;
                }
                acc.axpy(coeff, v);
            }
        }
        acc
    }

    /// Per-eigenvalue nilpotency degree on `x`: smallest `m` with
    /// `(T - lambda)^m P x = 0`, for eigenvalues carrying mass above
    /// `threshold * ||x||`.
    pub fn nilpotency_index(&self, threshold: f64) -> Vec<(Complex64, usize)> {
        self.terms
            .iter()
            .filter(|t| {
                t.vectors
                    .first()
                    .is_some_and(|v| v.norm_l2() > threshold * self.x_norm)
            })
            .map(|t| (t.lambda, t.vectors.len()))
            .collect()
    }

    /// Fastest oscillation rate in the orbit, `max |Im lambda|` over terms
    /// that survive on `x`; quadrature against the orbit keys panel counts
    /// off this.
    pub fn max_frequency(&self) -> f64 {
        self.terms
            .iter()
            .filter(|t| !t.vectors.is_empty())
            .map(|t| t.lambda.im.abs())
            .fold(0.0, f64::max)
    }

    /// Sum of `||P_j x||_2` over all clusters, a crude but rigorous bound on
    /// how much projection mass any orbit sample can see.
    pub fn total_projection_mass(&self) -> f64 {
        self.terms
            .iter()
            .filter_map(|t| t.vectors.first().map(|v| v.norm_l2()))
            .sum()
    }
}

/// `sigma_T(x)` via spectral projections: `lambda_j` contributes iff
/// `||P_j x||_2 > cluster_tol * ||x||_2`. For matrices this coincides with
/// the analytic definition (finite spectra have the single-valued extension
/// property).
pub fn local_spectrum(
    m: &ComplexMatrix,
    x: &ComplexVector,
    cluster_tol: f64,
) -> Result<LocalSpectrum, Error> {
    let decomp = spectral_decomposition(m, cluster_tol)?;
    Ok(local_spectrum_from(&decomp, x, cluster_tol))
}

/// Same as [`local_spectrum`] when a decomposition is already available.
pub fn local_spectrum_from(
    decomp: &SpectralDecomposition,
    x: &ComplexVector,
    cluster_tol: f64,
) -> LocalSpectrum {
    let x_norm = x.norm_l2();
    let mut points = Vec::new();
    let mut masses = Vec::new();
    for cluster in &decomp.clusters {
        let mass = cluster.projection.mul_vec(x).norm_l2();
        if mass > cluster_tol * x_norm {
            points.push(cluster.eigenvalue);
            masses.push(mass);
        }
    }
    LocalSpectrum {
        points,
        masses,
        source: SpectrumSource::ExactProjection,
        cluster_tol,
    }
}

/// `r_T(x) = max { |lambda| : lambda in sigma_T(x) }`; zero for `x = 0`.
pub fn local_spectral_radius_exact(
    m: &ComplexMatrix,
    x: &ComplexVector,
    cluster_tol: f64,
) -> Result<f64, Error> {
    Ok(local_spectrum(m, x, cluster_tol)?.radius())
}

/// Power-iteration estimate of the local spectral radius.
#[derive(Debug, Clone)]
pub struct PowerRadius {
    /// `(n, ||T^n x||^{1/n})`.
    pub samples: Vec<(usize, f64)>,
    /// Average of the last quartile of samples.
    pub estimate: f64,
    /// Whether internal rescaling was required to avoid overflow.
    pub rescaled: bool,
}

/// Estimates `r_T(x) = lim ||T^n x||^{1/n}` by iterating with a running-norm
/// rescale. Convergence is slow for defective eigenvalues (polynomial factors
/// decay like `n^{k/n}`), hence the tail-average estimate.
pub fn local_spectral_radius_power(
    m: &ComplexMatrix,
    x: &ComplexVector,
    n_max: usize,
) -> Result<PowerRadius, Error> {
    if n_max < 8 {
        return Err(Error::Domain(format!(
            "power estimate needs n_max >= 8, got {n_max}"
        )));
    }
    let x_norm = x.norm_l2();
    if x_norm == 0.0 {
        return Ok(PowerRadius {
            samples: vec![(1, 0.0)],
            estimate: 0.0,
            rescaled: false,
        });
    }
    let mut y = x.scale(Complex64::new(1.0 / x_norm, 0.0));
    let mut log_norm = x_norm.ln();
    let mut samples = Vec::with_capacity(n_max);
    let mut rescaled = false;
    for n in 1..=n_max {
        let z = m.mul_vec(&y);
        let zn = z.norm_l2();
        if zn == 0.0 {
            samples.push((n, 0.0));
            return Ok(PowerRadius {
                samples,
                estimate: 0.0,
                rescaled,
            });
        }
        log_norm += zn.ln();
        if log_norm.abs() > 700.0 {
            rescaled = true;
        }
        samples.push((n, (log_norm / n as f64).exp()));
        y = z.scale(Complex64::new(1.0 / zn, 0.0));
    }
    let tail_start = samples.len() - samples.len() / 4;
    let tail = &samples[tail_start.min(samples.len() - 1)..];
    let estimate = tail.iter().map(|&(_, r)| r).sum::<f64>() / tail.len() as f64;
    Ok(PowerRadius {
        samples,
        estimate,
        rescaled,
    })
}

/// Classification of the orbit `t -> ||e^{tT} x||` against polynomial growth
/// `C (1 + |t|)^alpha` in both time directions.
#[derive(Debug, Clone)]
pub struct GrowthCertificate {
    /// True iff every local-spectrum point is purely imaginary (within
    /// cluster_tol) and the empirical fit did not contradict that.
    pub polynomial_bidirectional: bool,
    /// `max (nilpotency index - 1)` over contributing eigenvalues; `None`
    /// when growth is exponential.
    pub exact_alpha: Option<u32>,
    /// Smallest `m` with `(T - lambda)^m P_lambda x = 0`, per contributing
    /// eigenvalue.
    pub nilpotency_index: Vec<(Complex64, usize)>,
    /// Least-squares slope of `log ||e^{tT}x||` against `log(1+|t|)` over the
    /// outer half of the grid.
    pub fitted_alpha: f64,
    /// `1.01 * max_grid ||e^{tT}x|| / (1+|t|)^{fitted_alpha}`.
    pub fitted_c: f64,
    pub sample_grid: Vec<(f64, f64)>,
    /// Largest |Re lambda| over contributing eigenvalues.
    pub max_abs_real: f64,
    /// Worst log-fit residual divided by the fit's decade span.
    pub fit_residual_per_decade: f64,
    /// Why polynomial growth was rejected, when it was.
    pub reason: Option<String>,
}

impl GrowthCertificate {
    /// The certified bound at a given time.
    pub fn bound(&self, t: f64) -> f64 {
        self.fitted_c * (1.0 + t.abs()).powf(self.fitted_alpha)
    }
}

/// Samples the orbit on `[-t_max, t_max]` with the given step, fits the
/// polynomial growth exponent, and cross-checks against the exact spectral
/// structure. Exponential orbits are sampled only where `exp` stays finite.
pub fn orbit_growth(
    m: &ComplexMatrix,
    x: &ComplexVector,
    t_max: f64,
    step: f64,
) -> Result<GrowthCertificate, Error> {
    if !(t_max >= 10.0) || !(step > 0.0) {
        return Err(Error::Domain(format!(
            "orbit grid needs t_max >= 10 and step > 0, got {t_max}, {step}"
        )));
    }
    let cluster_tol = config::DEFAULT_CLUSTER_TOL;
    let decomp = spectral_decomposition(m, cluster_tol)?;
    let evaluator = OrbitEvaluator::new(m, &decomp, x);
    let spectrum = local_spectrum_from(&decomp, x, cluster_tol);
    let nilpotency_index = evaluator.nilpotency_index(cluster_tol);

    let max_abs_real = spectrum.max_abs_real();
    let spectral_polynomial = max_abs_real <= cluster_tol;
    // Keep Re(lambda) * t below exp overflow for exponential instances.
    let t_eff = if spectral_polynomial {
        t_max
    } else {
        t_max.min(600.0 / max_abs_real)
    };

    let n = (t_eff / step).floor() as i64;
    let mut sample_grid = Vec::with_capacity((2 * n + 1) as usize);
    for k in -n..=n {
        let t = k as f64 * step;
        sample_grid.push((t, evaluator.evaluate(t).norm_l2()));
    }

    let zero_orbit = sample_grid.iter().all(|&(_, v)| v <= 1e-300);
    let (fitted_alpha, fit_residual_per_decade) = if zero_orbit {
        (0.0, 0.0)
    } else {
        fit_growth_exponent(&sample_grid, t_eff)
    };
    let fitted_c = config::GROWTH_CONSTANT_MARGIN
        * sample_grid
            .iter()
            .map(|&(t, v)| v / (1.0 + t.abs()).powf(fitted_alpha))
            .fold(0.0, f64::max);

    let mut reason = None;
    if !spectral_polynomial {
        let worst = spectrum
            .points
            .iter()
            .max_by(|a, b| a.re.abs().total_cmp(&b.re.abs()))
            .copied()
            .unwrap_or_default();
        reason = Some(format!(
            "eigenvalue {worst} has real part {:.3e} beyond cluster_tol {cluster_tol:.1e}",
            worst.re
        ));
    } else if fit_residual_per_decade > 1.0 {
        reason = Some(format!(
            "empirical fit residual {fit_residual_per_decade:.2} per decade exceeds 1"
        ));
    }
    let polynomial_bidirectional = reason.is_none();
    let exact_alpha = polynomial_bidirectional.then(|| {
        nilpotency_index
            .iter()
            .map(|&(_, idx)| idx.saturating_sub(1) as u32)
            .max()
            .unwrap_or(0)
    });

    Ok(GrowthCertificate {
        polynomial_bidirectional,
        exact_alpha,
        nilpotency_index,
        fitted_alpha,
        fitted_c,
        sample_grid,
        max_abs_real,
        fit_residual_per_decade,
        reason,
    })
}

/// Least-squares slope over the outer half of the grid (|t| >= t_eff/2),
/// which suppresses the transient near t = 0.
pub(crate) fn fit_growth_exponent(samples: &[(f64, f64)], t_eff: f64) -> (f64, f64) {
    let cutoff = t_eff / 2.0;
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .filter(|&&(t, v)| t.abs() >= cutoff && v > 1e-300)
        .map(|&(t, v)| ((1.0 + t.abs()).ln(), v.ln()))
        .collect();
    if pts.len() < 4 {
        return (0.0, 0.0);
    }
    let n = pts.len() as f64;
    let mean_x = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let var: f64 = pts.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if var <= 1e-12 {
        return (0.0, 0.0);
    }
    let cov: f64 = pts
        .iter()
        .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
        .sum();
    let slope = cov / var;
    let max_residual = pts
        .iter()
        .map(|p| (p.1 - mean_y - slope * (p.0 - mean_x)).abs())
        .fold(0.0, f64::max);
    let span_x = pts
        .iter()
        .map(|p| p.0)
        .fold(f64::NEG_INFINITY, f64::max)
        - pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let per_decade = if span_x > 0.0 {
        max_residual / span_x
    } else {
        0.0
    };
    (slope, per_decade)
}

/// Sharp growth constant against a concrete weight: `margin * sup_grid
/// ||e^{tT}x|| / w(t)`, returned with the maximizing time.
pub fn growth_constant(
    evaluator: &OrbitEvaluator,
    weight: &crate::beurling::Weight,
    t_max: f64,
    step: f64,
) -> (f64, f64) {
    let n = (t_max / step).floor() as i64;
    let mut best = (0.0f64, 0.0f64);
    for k in -n..=n {
        let t = k as f64 * step;
        let ratio = evaluator.evaluate(t).norm_l2() / weight.evaluate(t);
        if ratio > best.0 {
            best = (ratio, t);
        }
    }
    (config::GROWTH_CONSTANT_MARGIN * best.0, best.1)
}

/// Checks that polynomially bounded orbits have purely imaginary local
/// spectrum. Not applicable when the orbit is not polynomially bounded.
pub fn check_prop_2_2(
    m: &ComplexMatrix,
    x: &ComplexVector,
    cluster_tol: f64,
) -> Result<TheoremReport, Error> {
    let mut report = TheoremReport::new("prop2.2");
    report.tolerance("cluster_tol", cluster_tol);
    let cert = orbit_growth(m, x, config::GRID_T_MAX, config::GRID_STEP)?;
    if !cert.polynomial_bidirectional {
        return Ok(report.not_applicable(
            cert.reason
                .unwrap_or_else(|| "orbit not polynomially bounded".into()),
        ));
    }
    report.hypothesis(
        "polynomial growth in both directions",
        true,
        format!(
            "fitted_alpha={:.3}, fitted_c={:.3e}",
            cert.fitted_alpha, cert.fitted_c
        ),
    );
    let spectrum = local_spectrum(m, x, cluster_tol)?;
    Ok(report.conclude(spectrum.max_abs_real(), cluster_tol))
}

/// One grid point of a Carleman blow-up scan.
#[derive(Debug, Clone)]
pub struct CarlemanPoint {
    pub lambda: f64,
    /// `|<probe, (z - T)^{-1} x>|` for each offset, larger of the two
    /// half-plane approaches.
    pub values: Vec<f64>,
    /// Log-log slope of the values against the offsets; -100 encodes a
    /// resolvent failure (certain blow-up).
    pub slope: f64,
    pub candidate: bool,
}

#[derive(Debug, Clone)]
pub struct CarlemanScan {
    pub points: Vec<CarlemanPoint>,
    /// Candidates as a spectrum estimate: `i * lambda` for flagged lambdas.
    pub spectrum: LocalSpectrum,
}

/// Scans real frequencies: for each `lambda` on the grid, the local resolvent
/// `(z - T)^{-1} x` is probed at `z = i lambda +- eps` for a decreasing
/// sequence of offsets; a log-log slope at or below the threshold (default
/// -0.8) marks `i lambda` as a local-spectrum candidate. Resolvent failures
/// (z numerically on the spectrum) count as blow-up evidence.
pub fn carleman_scan(
    m: &ComplexMatrix,
    x: &ComplexVector,
    probe: &ComplexVector,
    real_grid: &[f64],
    offsets: &[f64],
) -> Result<CarlemanScan, Error> {
    if probe.norm_l2() == 0.0 {
        return Err(Error::Domain("carleman probe must be nonzero".into()));
    }
    if offsets.len() < 2 || offsets.windows(2).any(|w| w[1] >= w[0]) || offsets[0] <= 0.0 {
        return Err(Error::Domain(
            "offsets must be a decreasing positive sequence".into(),
        ));
    }
    let mut points = Vec::with_capacity(real_grid.len());
    let mut candidates = Vec::new();
    for &lambda in real_grid {
        let mut values = Vec::with_capacity(offsets.len());
        let mut failed = false;
        for &eps in offsets {
            let mut best = 0.0f64;
            for sign in [1.0, -1.0] {
                let z = Complex64::new(sign * eps, lambda);
                match resolvent_apply(m, z, x) {
                    Ok(u) => best = best.max(probe.inner(&u).norm()),
                    Err(_) => failed = true,
                }
            }
            values.push(best.min(1e280));
        }
        let slope = if failed {
            -100.0
        } else {
            log_log_slope(offsets, &values)
        };
        let candidate = slope <= config::CARLEMAN_SLOPE_THRESHOLD;
        if candidate {
            candidates.push(lambda);
        }
        points.push(CarlemanPoint {
            lambda,
            values,
            slope,
            candidate,
        });
    }
    let spectrum = LocalSpectrum {
        points: candidates.iter().map(|&l| Complex64::new(0.0, l)).collect(),
        masses: vec![0.0; candidates.len()],
        source: SpectrumSource::CarlemanScan,
        cluster_tol: 0.0,
    };
    Ok(CarlemanScan { points, spectrum })
}

fn log_log_slope(offsets: &[f64], values: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = offsets
        .iter()
        .zip(values)
        .filter(|&(_, &v)| v > 1e-300)
        .map(|(&e, &v)| (e.ln(), v.ln()))
        .collect();
    if pts.len() < 2 {
        return 0.0;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let var: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let cov: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if var <= 0.0 { 0.0 } else { cov / var }
}

/// Outcome of checking `(zI - T)^{-1} x = integral of e^{-zt} e^{tT} x dt`.
#[derive(Debug, Clone)]
pub struct ResolventResidual {
    /// `|| quadrature - resolvent_apply ||_2`.
    pub residual: f64,
    /// Bound on the truncated `[t_cut, infinity)` part of the integral.
    pub tail_bound: f64,
    /// Quadrature error estimate for the `[0, t_cut]` part.
    pub quad_error: f64,
}

/// Verifies the Laplace representation of the local resolvent for `Re z > 0`
/// on a polynomially bounded orbit. Errors when the tail diverges (spectrum
/// reaching into `Re >= Re z`).
pub fn verify_resolvent_representation(
    m: &ComplexMatrix,
    x: &ComplexVector,
    z: Complex64,
    t_cut: f64,
    quad_tol: f64,
) -> Result<ResolventResidual, Error> {
    let cluster_tol = config::DEFAULT_CLUSTER_TOL;
    let decomp = spectral_decomposition(m, cluster_tol)?;
    let spectrum = local_spectrum_from(&decomp, x, cluster_tol);
    let max_re = spectrum.points.iter().map(|l| l.re).fold(0.0, f64::max);
    if z.re <= max_re + 1e-9 {
        return Err(Error::Hypothesis(format!(
            "Laplace tail diverges: Re z = {} but local spectrum reaches Re = {max_re}",
            z.re
        )));
    }
    let evaluator = OrbitEvaluator::new(m, &decomp, x);

    // Tail: ||e^{tT}x|| <= C (1+t)^alpha with the fitted certificate, and
    // (1+t)^alpha <= 2^alpha (1 + t^q) with q = ceil(alpha), so the cut-off
    // tail integrates in closed form.
    let cert_weight = {
        let cert_alpha = evaluator
            .nilpotency_index(cluster_tol)
            .iter()
            .map(|&(_, idx)| idx.saturating_sub(1))
            .max()
            .unwrap_or(0) as f64;
        crate::beurling::Weight::power(cert_alpha).expect("nonnegative exponent")
    };
    let (c_x, _) = growth_constant(&evaluator, &cert_weight, t_cut.min(200.0), 0.1);
    let (w_coeff, q) = cert_weight.integer_majorant();
    let r = z.re;
    let tail_bound =
        c_x * w_coeff * (exp_poly_tail(0, r, t_cut) + exp_poly_tail(q, r, t_cut));

    let freq = decomp
        .clusters
        .iter()
        .map(|c| c.eigenvalue.im.abs())
        .fold(z.im.abs(), f64::max);
    let seed = ((t_cut * (freq + 1.0) / 3.0).ceil() as usize).clamp(32, 4096);
    let quad = integrate(
        |t| {
            let mut v = evaluator.evaluate(t);
            v = v.scale((-z * t).exp());
            v
        },
        0.0,
        t_cut,
        quad_tol,
        seed,
        8 * seed,
    )
    .map_err(Error::Quad)?;
    let direct = resolvent_apply(m, z, x)?;
    let residual = quad.value.sub(&direct).norm_l2();
    Ok(ResolventResidual {
        residual,
        tail_bound,
        quad_error: quad.error,
    })
}

/// `integral over t >= T of t^q e^{-rt} dt` in closed form (integer `q`).
fn exp_poly_tail(q: u32, r: f64, t: f64) -> f64 {
    // (q!/r^{q+1}) e^{-rT} sum_{j<=q} (rT)^j / j!
    let mut sum = 0.0;
    let mut term = 1.0; // (rT)^j / j!
    for j in 0..=q {
        if j > 0 {
            term *= r * t / j as f64;
        }
        sum += term;
    }
    let mut q_fact = 1.0;
    for j in 2..=q {
        q_fact *= j as f64;
    }
    q_fact / r.powi(q as i32 + 1) * (-r * t).exp() * sum
}

/// `||e^{tT}||` sampled in an operator norm; used by operator-level
/// statements (orbit of the identity).
pub fn operator_orbit_norm(
    m: &ComplexMatrix,
    t: f64,
    family: NormFamily,
) -> Result<f64, Error> {
    let e = crate::linalg::expm(&m.scale(Complex64::new(t, 0.0)), config::EXPM_TOL)?;
    Ok(operator_norm(&e, family)?)
}
