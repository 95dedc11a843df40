//! One-sided Jacobi SVD plus the factorization-backed operations the rest
//! of the crate needs: min-norm affine solves, null-space projection, and
//! singular-value extremes.

use super::{dot, norm, DenseMatrix, SINGULAR_VALUE_REL_TOL};
use crate::error::{Error, Result};

/// Largest and smallest nonzero singular values of a matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingularExtremes {
    pub sigma_max_plus: f64,
    pub sigma_min_plus: f64,
}

impl SingularExtremes {
    pub fn kappa(&self) -> f64 {
        self.sigma_max_plus / self.sigma_min_plus
    }
}

/// Full SVD `A = U Σ Vᵀ` with `V` square, singular values descending.
#[derive(Clone, Debug)]
pub struct Svd {
    m: usize,
    n: usize,
    /// m×n; column j is the left vector for σ_j (zero column when σ_j = 0).
    u: DenseMatrix,
    /// n×n orthogonal.
    v: DenseMatrix,
    sigma: Vec<f64>,
    rank: usize,
}

impl Svd {
    /// Hestenes one-sided Jacobi: orthogonalize the columns of `W = A·V`
    /// by plane rotations accumulated into `V`.
    pub fn new(a: &DenseMatrix) -> Svd {
        let m = a.rows();
        let n = a.cols();
        let mut w = a.clone();
        let mut v = DenseMatrix::identity(n);

        let max_sweeps = 60;
        for _ in 0..max_sweeps {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                    for i in 0..m {
                        let wp = w.get(i, p);
                        let wq = w.get(i, q);
                        alpha += wp * wp;
                        beta += wq * wq;
                        gamma += wp * wq;
                    }
                    if alpha == 0.0 || beta == 0.0 {
                        continue;
                    }
                    let rel = gamma.abs() / (alpha * beta).sqrt();
                    if rel <= 1e-15 {
                        continue;
                    }
                    off = off.max(rel);
                    let zeta = (beta - alpha) / (2.0 * gamma);
                    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = c * t;
                    for i in 0..m {
                        let wp = w.get(i, p);
                        let wq = w.get(i, q);
                        w.set(i, p, c * wp - s * wq);
                        w.set(i, q, s * wp + c * wq);
                    }
                    for i in 0..n {
                        let vp = v.get(i, p);
                        let vq = v.get(i, q);
                        v.set(i, p, c * vp - s * vq);
                        v.set(i, q, s * vp + c * vq);
                    }
                }
            }
            if off <= 1e-15 {
                break;
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        let norms: Vec<f64> = (0..n).map(|j| norm(&w.col(j))).collect();
        order.sort_by(|&a, &b| norms[b].partial_cmp(&norms[a]).unwrap());

        let mut u = DenseMatrix::zeros(m, n);
        let mut vs = DenseMatrix::zeros(n, n);
        let mut sigma = vec![0.0; n];
        for (jj, &j) in order.iter().enumerate() {
            sigma[jj] = norms[j];
            for i in 0..n {
                vs.set(i, jj, v.get(i, j));
            }
            if norms[j] > 0.0 {
                for i in 0..m {
                    u.set(i, jj, w.get(i, j) / norms[j]);
                }
            }
        }

        let cutoff = sigma.first().copied().unwrap_or(0.0) * SINGULAR_VALUE_REL_TOL;
        let rank = sigma.iter().take_while(|&&s| s > cutoff && s > 0.0).count();

        Svd {
            m,
            n,
            u,
            v: vs,
            sigma,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn sigma(&self) -> &[f64] {
        &self.sigma
    }

    /// Orthonormal basis of null(A) as columns (n × (n − rank)).
    pub fn null_basis(&self) -> DenseMatrix {
        let d = self.n - self.rank;
        let mut b = DenseMatrix::zeros(self.n, d);
        for j in 0..d {
            for i in 0..self.n {
                b.set(i, j, self.v.get(i, self.rank + j));
            }
        }
        b
    }

    /// Orthonormal basis of the row space as columns (n × rank).
    pub fn row_basis(&self) -> DenseMatrix {
        let mut b = DenseMatrix::zeros(self.n, self.rank);
        for j in 0..self.rank {
            for i in 0..self.n {
                b.set(i, j, self.v.get(i, j));
            }
        }
        b
    }

    /// Minimum-norm least-squares solution of `A x = b` together with the
    /// least-squares residual norm `‖b − A x‖`.
    pub fn solve_min_norm(&self, b: &[f64]) -> (Vec<f64>, f64) {
        assert_eq!(b.len(), self.m);
        let mut x = vec![0.0; self.n];
        let mut fitted = vec![0.0; self.m];
        for j in 0..self.rank {
            let uj = self.u.col(j);
            let coef = dot(&uj, b);
            for i in 0..self.n {
                x[i] += self.v.get(i, j) * coef / self.sigma[j];
            }
            for i in 0..self.m {
                fitted[i] += uj[i] * coef;
            }
        }
        let res = b
            .iter()
            .zip(&fitted)
            .map(|(bi, fi)| (bi - fi) * (bi - fi))
            .sum::<f64>()
            .sqrt();
        (x, res)
    }
}

/// σ_max⁺(A) and σ_min⁺(A).
pub fn singular_extremes(a: &DenseMatrix) -> Result<SingularExtremes> {
    let svd = Svd::new(a);
    if svd.rank() == 0 {
        return Err(Error::NoNonzeroSingularValue);
    }
    Ok(SingularExtremes {
        sigma_max_plus: svd.sigma[0],
        sigma_min_plus: svd.sigma[svd.rank() - 1],
    })
}

/// Minimum-Euclidean-norm solution of `A x = b`; errs if inconsistent.
pub fn min_norm_affine_point(a: &DenseMatrix, b: &[f64]) -> Result<Vec<f64>> {
    let svd = Svd::new(a);
    let (x, res) = svd.solve_min_norm(b);
    if res > 1e-8 * (1.0 + norm(b)) {
        return Err(Error::InfeasibleAffine);
    }
    Ok(x)
}

/// Orthogonal projection of `v` onto null(A), computed by subtracting the
/// row-space component so vectors already in the null space pass through
/// unchanged.
pub fn project_null_space(a: &DenseMatrix, v: &[f64]) -> Vec<f64> {
    let svd = Svd::new(a);
    let rb = svd.row_basis();
    let mut out = v.to_vec();
    for j in 0..rb.cols() {
        let col = rb.col(j);
        let coef = dot(&col, v);
        for i in 0..out.len() {
            out[i] -= coef * col[i];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{dist, norm_inf};

    fn s3() -> f64 {
        3.0f64.sqrt()
    }

    #[test]
    fn singular_extremes_row_of_ones() {
        let a = DenseMatrix::from_rows(&[vec![s3() / 3.0; 3]]).unwrap();
        let e = singular_extremes(&a).unwrap();
        assert!((e.sigma_max_plus - 1.0).abs() < 1e-12);
        assert!((e.sigma_min_plus - 1.0).abs() < 1e-12);
    }

    #[test]
    fn singular_extremes_identity_and_diagonal() {
        let e = singular_extremes(&DenseMatrix::identity(2)).unwrap();
        assert_eq!((e.sigma_max_plus, e.sigma_min_plus), (1.0, 1.0));

        let a = DenseMatrix::from_rows(&[vec![3.0, 0.0], vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let e = singular_extremes(&a).unwrap();
        assert!((e.sigma_max_plus - 3.0).abs() < 1e-12);
        assert!((e.sigma_min_plus - 1.0).abs() < 1e-12);
        assert!((e.kappa() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn singular_extremes_zero_matrix_errors() {
        let a = DenseMatrix::zeros(2, 3);
        assert!(matches!(
            singular_extremes(&a),
            Err(Error::NoNonzeroSingularValue)
        ));
    }

    #[test]
    fn min_norm_point_simplex_plane() {
        let a = DenseMatrix::from_rows(&[vec![s3() / 3.0; 3]]).unwrap();
        let q = min_norm_affine_point(&a, &[1.0]).unwrap();
        for qi in &q {
            assert!((qi - 1.0 / s3()).abs() < 1e-12);
        }
    }

    #[test]
    fn min_norm_point_trivial_cases() {
        let q = min_norm_affine_point(&DenseMatrix::identity(3), &[0.3, -1.0, 2.0]).unwrap();
        assert!(dist(&q, &[0.3, -1.0, 2.0]) < 1e-12);

        let a = DenseMatrix::from_rows(&[vec![1.0, 0.0]]).unwrap();
        let q = min_norm_affine_point(&a, &[0.0]).unwrap();
        assert!(norm_inf(&q) < 1e-14);
    }

    #[test]
    fn min_norm_point_inconsistent_errors() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 0.0], vec![1.0, 0.0]]).unwrap();
        assert!(matches!(
            min_norm_affine_point(&a, &[0.0, 1.0]),
            Err(Error::InfeasibleAffine)
        ));
    }

    #[test]
    fn null_space_projection_cases() {
        let a = DenseMatrix::from_rows(&[vec![s3() / 3.0; 3]]).unwrap();
        // already in the null space: unchanged
        let c = vec![-1.0 / 6.0f64.sqrt(), -1.0 / 6.0f64.sqrt(), 2.0 / 6.0f64.sqrt()];
        let p = project_null_space(&a, &c);
        assert!(dist(&p, &c) < 1e-14);

        // row-space vector: projects to zero
        let p = project_null_space(&a, &[2.0, 2.0, 2.0]);
        assert!(norm_inf(&p) < 1e-13);

        let a = DenseMatrix::from_rows(&[vec![1.0, 0.0]]).unwrap();
        let p = project_null_space(&a, &[3.0, 5.0]);
        assert!(dist(&p, &[0.0, 5.0]) < 1e-14);
    }

    /// Two-sided Jacobi eigensolver for symmetric matrices; test-only
    /// oracle, independent of the one-sided SVD path.
    fn sym_eigenvalues(mut g: Vec<Vec<f64>>) -> Vec<f64> {
        let n = g.len();
        for _ in 0..100 {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off = off.max(g[p][q].abs());
                }
            }
            if off < 1e-14 {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    if g[p][q].abs() < 1e-300 {
                        continue;
                    }
                    let theta = 0.5 * (g[q][q] - g[p][p]) / g[p][q];
                    let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = c * t;
                    for k in 0..n {
                        let gpk = g[p][k];
                        let gqk = g[q][k];
                        g[p][k] = c * gpk - s * gqk;
                        g[q][k] = s * gpk + c * gqk;
                    }
                    for k in 0..n {
                        let gkp = g[k][p];
                        let gkq = g[k][q];
                        g[k][p] = c * gkp - s * gkq;
                        g[k][q] = s * gkp + c * gkq;
                    }
                }
            }
        }
        let mut ev: Vec<f64> = (0..n).map(|i| g[i][i]).collect();
        ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
        ev
    }

    #[test]
    fn jacobi_svd_matches_gram_eigenvalues_up_to_5x5() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for trial in 0..200 {
            let m = 1 + trial % 5;
            let n = 1 + (trial / 5) % 5;
            let rows: Vec<Vec<f64>> = (0..m)
                .map(|_| (0..n).map(|_| rng.gen_range(-4..=4) as f64).collect())
                .collect();
            let a = DenseMatrix::from_rows(&rows).unwrap();
            // Gram matrix A Aᵀ eigenvalues via the independent two-sided Jacobi.
            let mut g = vec![vec![0.0; m]; m];
            for i in 0..m {
                for j in 0..m {
                    g[i][j] = dot(a.row(i), a.row(j));
                }
            }
            let ev = sym_eigenvalues(g);
            let svd = Svd::new(&a);
            let lam_max = ev.first().copied().unwrap_or(0.0).max(0.0);
            let k = m.min(n);
            for j in 0..k {
                let s = if j < svd.sigma().len() { svd.sigma()[j] } else { 0.0 };
                if j < svd.rank() {
                    let fromeig = ev[j].max(0.0).sqrt();
                    assert!(
                        (s - fromeig).abs() <= 1e-10 * (1.0 + fromeig),
                        "σ mismatch: {s} vs {fromeig} (m={m} n={n})"
                    );
                } else {
                    // zero singular values: compare at the eigenvalue scale,
                    // where both computations carry their roundoff
                    assert!(s * s <= 1e-12 * (1.0 + lam_max));
                    assert!(ev[j].abs() <= 1e-12 * (1.0 + lam_max));
                }
            }
        }
    }
}
