//! Spectral decompositions: eigenvalue clustering and polynomially
//! reconstructed Riesz projections.
//!
//! For a matrix `M` with clustered eigenvalues `λ_j` (algebraic
//! multiplicities `m_j`), the projection onto the generalized eigenspace of
//! cluster `j` is `p_j(M)`, where `p_j` is the Hermite interpolation
//! polynomial taking value 1 (with `m_j − 1` vanishing derivatives) at
//! `λ_j` and vanishing to order `m_i` at every other cluster. The
//! polynomial is built as a truncated reciprocal series times the nodal
//! factor, which is exact in exact arithmetic and well conditioned for the
//! separations this crate works at.

use num_complex::Complex64;

use super::{eigenvalues, ComplexMatrix, LinalgError, MAX_SPECTRAL_DIM};
use crate::config::CLUSTER_GUARD_FACTOR;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// One eigenvalue cluster: center, algebraic multiplicity, spectral
/// projection, and the size of its largest Jordan block.
#[derive(Debug, Clone)]
pub struct Cluster {
    pub eigenvalue: Complex64,
    pub multiplicity: usize,
    pub projection: ComplexMatrix,
    /// Smallest `r` with `(M − λI)^r P ≈ 0`.
    pub nilpotent_order: usize,
}

/// A full resolution of the identity for one matrix.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    dim: usize,
    pub cluster_tol: f64,
    pub clusters: Vec<Cluster>,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// All cluster centers, in the deterministic (re, im) order the
    /// decomposition was built with.
    pub fn cluster_centers(&self) -> Vec<Complex64> {
        self.clusters.iter().map(|c| c.eigenvalue).collect()
    }

    /// True when every Jordan block is trivial (the matrix is
    /// diagonalizable at the working tolerance).
    pub fn is_semisimple(&self) -> bool {
        self.clusters.iter().all(|c| c.nilpotent_order <= 1)
    }

    /// Spectral radius from the cluster centers.
    pub fn spectral_radius(&self) -> f64 {
        self.clusters.iter().map(|c| c.eigenvalue.norm()).fold(0.0, f64::max)
    }
}

/// Clusters the spectrum of `m` at tolerance `cluster_tol` and builds the
/// projection family.
///
/// Eigenvalues closer than `cluster_tol` are merged (single linkage) into
/// one cluster with summed multiplicity. Cluster centers that remain
/// closer than [`CLUSTER_GUARD_FACTOR`]`·cluster_tol` after merging are
/// rejected: interpolation through them would be ill-conditioned, and the
/// caller should retry with a larger tolerance. The returned family is
/// validated as a resolution of the identity.
pub fn spectral_decomposition(
    m: &ComplexMatrix,
    cluster_tol: f64,
) -> Result<SpectralDecomposition, LinalgError> {
    let n = m.dim();
    if n > MAX_SPECTRAL_DIM {
        return Err(LinalgError::DimensionCap { dim: n, max: MAX_SPECTRAL_DIM });
    }
    let eigs = eigenvalues(m)?;
    let (centers, multiplicities) = cluster_eigenvalues(&eigs, cluster_tol)?;

    let k = centers.len();
    let mut clusters = Vec::with_capacity(k);
    for j in 0..k {
        let projection = hermite_projection(m, &centers, &multiplicities, j);
        let nilpotent_order = nilpotent_order(m, centers[j], &projection, multiplicities[j], cluster_tol);
        clusters.push(Cluster {
            eigenvalue: centers[j],
            multiplicity: multiplicities[j],
            projection,
            nilpotent_order,
        });
    }

    let decomp = SpectralDecomposition { dim: n, cluster_tol, clusters };
    validate(m, &decomp)?;
    Ok(decomp)
}

/// Single-linkage clustering with deterministic (re, im) ordering of the
/// resulting centers.
fn cluster_eigenvalues(
    eigs: &[Complex64],
    tol: f64,
) -> Result<(Vec<Complex64>, Vec<usize>), LinalgError> {
    let n = eigs.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for i in 0..n {
        for j in i + 1..n {
            if (eigs[i] - eigs[j]).norm() <= tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: Vec<(Complex64, usize)> = Vec::new();
    let mut root_index: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let root = find(&mut parent, i);
        match root_index[root] {
            Some(g) => {
                groups[g].0 += eigs[i];
                groups[g].1 += 1;
            }
            None => {
                root_index[root] = Some(groups.len());
                groups.push((eigs[i], 1));
            }
        }
    }
    let mut centers_mults: Vec<(Complex64, usize)> = groups
        .into_iter()
        .map(|(sum, count)| (sum / count as f64, count))
        .collect();
    centers_mults.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));

    // Conditioning guard: merged clusters must stay clearly separated.
    for i in 0..centers_mults.len() {
        for j in i + 1..centers_mults.len() {
            let gap = (centers_mults[i].0 - centers_mults[j].0).norm();
            if gap < CLUSTER_GUARD_FACTOR * tol {
                return Err(LinalgError::ClusterConflict { gap, tol });
            }
        }
    }
    let centers = centers_mults.iter().map(|g| g.0).collect();
    let mults = centers_mults.iter().map(|g| g.1).collect();
    Ok((centers, mults))
}

/// Builds `p_j(M)` for cluster `j`: the truncated reciprocal series of the
/// nodal polynomial of the other clusters, times that nodal polynomial.
fn hermite_projection(
    m: &ComplexMatrix,
    centers: &[Complex64],
    mults: &[usize],
    j: usize,
) -> ComplexMatrix {
    let n = m.dim();
    let mj = mults[j];

    // Nodal factor W = Π_{i≠j} (M − λ_i)^{m_i} and the Taylor coefficients
    // of g(z) = Π_{i≠j} (z − λ_i)^{m_i} around λ_j, truncated at order m_j.
    let mut w = ComplexMatrix::identity(n);
    let mut g_series = vec![Complex64::new(0.0, 0.0); mj];
    g_series[0] = ONE;
    for (i, (&center, &mult)) in centers.iter().zip(mults).enumerate() {
        if i == j {
            continue;
        }
        let shifted = m.add_scaled_identity(-center);
        let d = centers[j] - center;
        for _ in 0..mult {
            w = w.mul(&shifted);
            // Multiply the truncated series by (d + w).
            let mut next = vec![Complex64::new(0.0, 0.0); mj];
            for r in 0..mj {
                next[r] += g_series[r] * d;
                if r + 1 < mj {
                    next[r + 1] += g_series[r];
                }
            }
            g_series = next;
        }
    }

    // Reciprocal series b with (Σ b_r w^r)·g ≡ 1 (mod w^{m_j}).
    let mut b = vec![Complex64::new(0.0, 0.0); mj];
    b[0] = ONE / g_series[0];
    for r in 1..mj {
        let mut acc = Complex64::new(0.0, 0.0);
        for l in 1..=r {
            acc += g_series[l] * b[r - l];
        }
        b[r] = -acc / g_series[0];
    }

    // p_j(M) = (Σ_r b_r (M − λ_j)^r) · W.
    let shifted_j = m.add_scaled_identity(-centers[j]);
    let mut series_sum = ComplexMatrix::identity(n).scale(b[0]);
    let mut power = ComplexMatrix::identity(n);
    for &coeff in b.iter().take(mj).skip(1) {
        power = power.mul(&shifted_j);
        series_sum = series_sum.add(&power.scale(coeff));
    }
    series_sum.mul(&w)
}

/// Size of the largest Jordan block in a cluster: smallest `r` with
/// `(M − λ)^r P ≈ 0` at the working tolerance.
fn nilpotent_order(
    m: &ComplexMatrix,
    center: Complex64,
    projection: &ComplexMatrix,
    multiplicity: usize,
    tol: f64,
) -> usize {
    let shifted = m.add_scaled_identity(-center);
    let scale_step = 1.0 + shifted.one_norm();
    let base = projection.one_norm().max(1.0);
    let mut current = projection.clone();
    let mut scale = base;
    for r in 1..=multiplicity {
        current = shifted.mul(&current);
        scale *= scale_step;
        if current.one_norm() <= tol * scale {
            return r;
        }
    }
    multiplicity
}

/// Checks the resolution-of-identity invariants:
/// `ΣP = I`, `P² = P`, `P_iP_j = 0`, `Σ multiplicities = dim`, all at
/// `10·cluster_tol`.
fn validate(m: &ComplexMatrix, decomp: &SpectralDecomposition) -> Result<(), LinalgError> {
    let n = decomp.dim;
    let allowed = CLUSTER_GUARD_FACTOR * decomp.cluster_tol * (1.0 + m.one_norm());
    let mut defect = 0.0_f64;

    let total: usize = decomp.clusters.iter().map(|c| c.multiplicity).sum();
    if total != n {
        return Err(LinalgError::ProjectionDefect { defect: total as f64 - n as f64 });
    }
    let mut sum = ComplexMatrix::zeros(n);
    for (i, ci) in decomp.clusters.iter().enumerate() {
        sum = sum.add(&ci.projection);
        let idem = ci.projection.mul(&ci.projection).sub(&ci.projection).one_norm();
        defect = defect.max(idem);
        for cj in decomp.clusters.iter().skip(i + 1) {
            defect = defect.max(ci.projection.mul(&cj.projection).one_norm());
        }
        // Projections commute with the matrix they decompose.
        defect = defect.max(m.mul(&ci.projection).sub(&ci.projection.mul(m)).one_norm());
    }
    defect = defect.max(sum.sub(&ComplexMatrix::identity(n)).one_norm());
    if defect > allowed {
        return Err(LinalgError::ProjectionDefect { defect });
    }
    Ok(())
}

/// Evaluates `f(M)` through the decomposition:
/// `f(M) = Σ_j Σ_{r<ord_j} f⁽ʳ⁾(λ_j)/r! · (M − λ_j)^r P_j`.
///
/// `derivs(λ, r)` must return the r-th derivative of `f` at `λ`; orders up
/// to each cluster's nilpotent order are requested. Exact for any function
/// analytic near the spectrum.
pub fn matrix_function(
    m: &ComplexMatrix,
    decomp: &SpectralDecomposition,
    mut derivs: impl FnMut(Complex64, usize) -> Complex64,
) -> ComplexMatrix {
    let n = m.dim();
    let mut out = ComplexMatrix::zeros(n);
    for cluster in &decomp.clusters {
        let shifted = m.add_scaled_identity(-cluster.eigenvalue);
        let mut term = cluster.projection.clone();
        let mut factorial = 1.0;
        for r in 0..cluster.nilpotent_order {
            if r > 0 {
                term = shifted.mul(&term);
                factorial *= r as f64;
            }
            let coeff = derivs(cluster.eigenvalue, r) / factorial;
            out = out.add(&term.scale(coeff));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::DEFAULT_CLUSTER_TOL;
    use crate::linalg::expm;
    use crate::config::EXPM_TOL;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_matrix_gets_coordinate_projections() {
        let m = ComplexMatrix::diagonal(&[c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)]);
        let d = spectral_decomposition(&m, DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(d.clusters.len(), 3);
        for cluster in &d.clusters {
            assert_eq!(cluster.multiplicity, 1);
            assert_eq!(cluster.nilpotent_order, 1);
            // Each projection is the coordinate projector onto the slot
            // whose diagonal entry matches.
            let idx = (0..3)
                .find(|&i| (m.get(i, i) - cluster.eigenvalue).norm() < 1e-12)
                .unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    let want = if i == j && i == idx { 1.0 } else { 0.0 };
                    assert!((cluster.projection.get(i, j) - c(want, 0.0)).norm() < 1e-10);
                }
            }
        }
        assert!(d.is_semisimple());
    }

    #[test]
    fn jordan_block_is_one_cluster_with_full_order() {
        // J = iI + N, size 4: one cluster, multiplicity 4, projection I.
        let mut m = ComplexMatrix::diagonal(&[c(0.0, 1.0); 4]);
        for i in 0..3 {
            m.set(i, i + 1, c(1.0, 0.0));
        }
        let d = spectral_decomposition(&m, DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(d.clusters.len(), 1);
        assert_eq!(d.clusters[0].multiplicity, 4);
        assert_eq!(d.clusters[0].nilpotent_order, 4);
        let p = &d.clusters[0].projection;
        assert!(p.sub(&ComplexMatrix::identity(4)).max_abs() < 1e-12);
        assert!(!d.is_semisimple());
    }

    #[test]
    fn mixed_jordan_structure_projects_blockwise() {
        // Block diag(J₂(i), −i): two clusters with multiplicities 2 and 1.
        let m = ComplexMatrix::from_rows(&[
            vec![c(0.0, 1.0), c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0)],
        ])
        .unwrap();
        let d = spectral_decomposition(&m, DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(d.clusters.len(), 2);
        let top = d
            .clusters
            .iter()
            .find(|cl| (cl.eigenvalue - c(0.0, 1.0)).norm() < 1e-10)
            .unwrap();
        assert_eq!(top.multiplicity, 2);
        assert_eq!(top.nilpotent_order, 2);
        // Projection onto the first two coordinates.
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j && i < 2 { 1.0 } else { 0.0 };
                assert!((top.projection.get(i, j) - c(want, 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn close_eigenvalues_merge_into_one_cluster() {
        let m = ComplexMatrix::diagonal(&[c(0.0, 0.0), c(1e-12, 0.0), c(1.0, 0.0)]);
        let d = spectral_decomposition(&m, 1e-8).unwrap();
        assert_eq!(d.clusters.len(), 2);
        let merged = d.clusters.iter().find(|cl| cl.eigenvalue.norm() < 1e-6).unwrap();
        assert_eq!(merged.multiplicity, 2);
    }

    #[test]
    fn borderline_separation_is_rejected() {
        // 5e-8 apart: too far to merge at 1e-8, too close to interpolate.
        let m = ComplexMatrix::diagonal(&[c(0.0, 0.0), c(5e-8, 0.0)]);
        match spectral_decomposition(&m, 1e-8) {
            Err(LinalgError::ClusterConflict { gap, .. }) => {
                assert!((gap - 5e-8).abs() < 1e-12);
            }
            other => panic!("expected cluster conflict, got {other:?}"),
        }
    }

    #[test]
    fn matrix_function_exponential_matches_expm() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(0.0, 1.0), c(1.0, 0.0), c(0.0, 0.5)],
            vec![c(0.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, -2.0)],
        ])
        .unwrap();
        let d = spectral_decomposition(&m, DEFAULT_CLUSTER_TOL).unwrap();
        // exp has itself as every derivative.
        let via_decomp = matrix_function(&m, &d, |z, _| z.exp());
        let via_series = expm(&m, EXPM_TOL).unwrap();
        assert!(via_decomp.sub(&via_series).max_abs() < 1e-10);
    }

    #[test]
    fn matrix_function_principal_log_of_unipotent_block() {
        let m = ComplexMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let d = spectral_decomposition(&m, DEFAULT_CLUSTER_TOL).unwrap();
        let log = matrix_function(&m, &d, |z, r| match r {
            0 => z.ln(),
            r => {
                // d^r/dz^r log z = (−1)^{r−1} (r−1)! / z^r
                let sign = if r % 2 == 1 { 1.0 } else { -1.0 };
                let fact: f64 = (1..r).map(|k| k as f64).product();
                Complex64::new(sign * fact, 0.0) / z.powu(r as u32)
            }
        });
        assert!((log.get(0, 0)).norm() < 1e-12);
        assert!((log.get(0, 1) - c(1.0, 0.0)).norm() < 1e-12);
        assert!((log.get(1, 0)).norm() < 1e-12);
        assert!((log.get(1, 1)).norm() < 1e-12);
    }

    #[test]
    fn dimension_cap_is_enforced() {
        let m = ComplexMatrix::identity(17);
        assert!(matches!(
            spectral_decomposition(&m, DEFAULT_CLUSTER_TOL),
            Err(LinalgError::DimensionCap { dim: 17, max: 16 })
        ));
    }
}
