//! Euclidean projection onto polyhedra of the form `{z : Az = b, z ≥ 0}`.
//!
//! The affine part is eliminated through an orthonormal null-space basis,
//! which turns the problem into least-distance programming in the reduced
//! coordinates. That LDP is solved by the Lawson–Hanson reduction to
//! nonnegative least squares, and the result is then polished by an exact
//! equality-constrained solve on the detected active set so the returned
//! point satisfies the KKT system to near machine precision. Exactness
//! matters here: several condition measures are ratios of distances
//! produced by this routine.

use super::svd::Svd;
use super::{add, axpy, dist, dot, norm, norm_inf, sub, DenseMatrix};
use crate::error::{Error, Result};

/// KKT residual target: `1e-9 * (1 + ‖x‖)` for the projected point of `x`.
const KKT_REL_TOL: f64 = 1e-9;

/// Reusable projector onto `{z : Az = b, z ≥ 0}`.
///
/// Construction factors `A` once; `project` can then be called many times
/// (the error-ratio estimators do exactly that).
pub struct PolyhedronProjector {
    a: DenseMatrix,
    b: Vec<f64>,
    /// Min-norm solution of `Az = b`.
    q: Vec<f64>,
    /// Orthonormal null-space basis, n × d.
    null: DenseMatrix,
}

impl PolyhedronProjector {
    pub fn new(a: &DenseMatrix, b: &[f64]) -> Result<Self> {
        if b.len() != a.rows() {
            return Err(Error::InvalidParameter(
                "right-hand side length does not match the matrix".into(),
            ));
        }
        let svd = Svd::new(a);
        let (q, res) = svd.solve_min_norm(b);
        if res > 1e-8 * (1.0 + norm(b)) {
            // Az = b has no solution at all, so the polyhedron is empty.
            return Err(Error::InfeasibleSet);
        }
        Ok(Self {
            a: a.clone(),
            b: b.to_vec(),
            q,
            null: svd.null_basis(),
        })
    }

    pub fn affine_dim(&self) -> usize {
        self.null.cols()
    }

    /// Euclidean projection of `x`; returns `(point, ‖x − point‖)`.
    pub fn project(&self, x: &[f64]) -> Result<(Vec<f64>, f64)> {
        let n = self.a.cols();
        assert_eq!(x.len(), n);
        let d = self.null.cols();

        // Reduced coordinates: z = q + N t, unconstrained optimum at t̂.
        let xm_q = sub(x, &self.q);
        let t_hat: Vec<f64> = (0..d).map(|j| dot(&self.null.col(j), &xm_q)).collect();
        let mut z = self.q.clone();
        for j in 0..d {
            axpy(t_hat[j], &self.null.col(j), &mut z);
        }

        let scale = 1.0 + norm_inf(x).max(norm_inf(&self.q));
        if z.iter().all(|&zi| zi >= -1e-12 * scale) {
            // Affine projection already satisfies the bounds.
            let z = clamp_tiny(z, 1e-12 * scale);
            let dv = dist(x, &z);
            return Ok((z, dv));
        }

        if d == 0 {
            // Feasible set is the single point q, and q has a negative entry.
            return Err(Error::InfeasibleSet);
        }

        // Shifted LDP: min ‖τ‖ s.t. N τ ≥ −q − N t̂  (componentwise rows).
        let g: Vec<f64> = (0..n).map(|i| -z[i]).collect();
        let tau = match ldp(&self.null, &g) {
            Some(t) => t,
            None => return Err(Error::InfeasibleSet),
        };
        let mut z_raw = z;
        for j in 0..d {
            axpy(tau[j], &self.null.col(j), &mut z_raw);
        }

        match self.polish(x, &z_raw, scale) {
            Some(zp) => {
                let dv = dist(x, &zp);
                Ok((zp, dv))
            }
            None => {
                let z_raw = clamp_tiny(z_raw, 1e-10 * scale);
                let dv = dist(x, &z_raw);
                Ok((z_raw, dv))
            }
        }
    }

    /// Re-solves the projection as an equality-constrained problem on the
    /// active set suggested by `z_raw`, verifying the full KKT system.
    fn polish(&self, x: &[f64], z_raw: &[f64], scale: f64) -> Option<Vec<f64>> {
        let n = self.a.cols();
        let act_tol = 1e-7 * scale;
        let mut active: Vec<bool> = z_raw.iter().map(|&zi| zi <= act_tol).collect();

        for _round in 0..(2 * n + 8) {
            let free: Vec<usize> = (0..n).filter(|&i| !active[i]).collect();
            if free.is_empty() && self.b.iter().any(|&bi| bi.abs() > 1e-12 * scale) {
                return None;
            }
            let af = self.a.select_cols(&free);
            let svd = Svd::new(&af);
            let xf: Vec<f64> = free.iter().map(|&i| x[i]).collect();
            let r = sub(&self.b, &af.matvec(&xf));
            let (corr, res) = svd.solve_min_norm(&r);
            if res > 1e-7 * (1.0 + norm(&self.b)) {
                return None; // working set cannot satisfy Az = b
            }
            let zf = add(&xf, &corr);

            // Primal check: free coordinates must stay nonnegative.
            if let Some(worst) = zf
                .iter()
                .enumerate()
                .filter(|(_, &v)| v < -1e-10 * scale)
                .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            {
                active[free[worst.0]] = true;
                continue;
            }

            let mut z = vec![0.0; n];
            for (k, &i) in free.iter().enumerate() {
                z[i] = zf[k].max(0.0);
            }

            // Dual check: multipliers on the active bounds must be ≥ 0.
            // Stationarity is z − x = Aᵀν + λ with λ supported on the
            // active set.
            let w = sub(&z, x);
            let wf: Vec<f64> = free.iter().map(|&i| w[i]).collect();
            let aft = af.transpose(); // |F| × m
            let nu_svd = Svd::new(&aft);
            let (nu, stat_res) = nu_svd.solve_min_norm(&wf);
            if stat_res > KKT_REL_TOL * (1.0 + norm(x)) {
                return None;
            }
            let at_nu = self.a.tr_matvec(&nu);
            let mut neg_lambda: Option<usize> = None;
            let mut worst = -1e-7 * scale;
            for i in 0..n {
                if active[i] {
                    let lam = w[i] - at_nu[i];
                    if lam < worst {
                        worst = lam;
                        neg_lambda = Some(i);
                    }
                }
            }
            if let Some(i) = neg_lambda {
                active[i] = false;
                continue;
            }

            // Full KKT residual.
            let feas = norm_inf(&sub(&self.a.matvec(&z), &self.b));
            if feas <= KKT_REL_TOL * (1.0 + norm(x)) {
                return Some(z);
            }
            return None;
        }
        None
    }
}

fn clamp_tiny(mut z: Vec<f64>, tol: f64) -> Vec<f64> {
    for v in z.iter_mut() {
        if *v < 0.0 && *v >= -tol {
            *v = 0.0;
        }
    }
    z
}

/// Euclidean projection of `x` onto `{z : Az = b, z ≥ 0}`.
pub fn project_polyhedron(x: &[f64], a: &DenseMatrix, b: &[f64]) -> Result<(Vec<f64>, f64)> {
    PolyhedronProjector::new(a, b)?.project(x)
}

/// Least-distance programming: `min ‖t‖ s.t. G t ≥ g`, rows of `G` taken
/// from the n×d matrix (one inequality per row). Returns `None` when the
/// system is infeasible. Classic reduction to NNLS.
fn ldp(gmat: &DenseMatrix, g: &[f64]) -> Option<Vec<f64>> {
    let k = gmat.rows();
    let d = gmat.cols();
    // E is (d+1) × k with column i = (G_i, g_i)ᵀ ; f = e_{d+1}.
    let mut e = DenseMatrix::zeros(d + 1, k);
    for i in 0..k {
        for j in 0..d {
            e.set(j, i, gmat.get(i, j));
        }
        e.set(d, i, g[i]);
    }
    let mut f = vec![0.0; d + 1];
    f[d] = 1.0;
    let u = nnls(&e, &f);
    let r = sub(&e.matvec(&u), &f);
    let rn = norm(&r);
    if rn <= 1e-10 {
        return None;
    }
    // r_{d+1} = −‖r‖² < 0 at the NNLS optimum.
    Some((0..d).map(|j| -r[j] / r[d]).collect())
}

/// Lawson–Hanson nonnegative least squares: `min ‖E u − f‖, u ≥ 0`.
pub(crate) fn nnls(e: &DenseMatrix, f: &[f64]) -> Vec<f64> {
    let ncols = e.cols();
    let mut passive = vec![false; ncols];
    let mut u = vec![0.0; ncols];

    let grad_scale = {
        let w0 = e.tr_matvec(f);
        1.0 + norm_inf(&w0)
    };
    let tol = 1e-13 * grad_scale;

    for _outer in 0..(3 * ncols + 12) {
        // Dual vector w = Eᵀ(f − E u).
        let resid = sub(f, &e.matvec(&u));
        let w = e.tr_matvec(&resid);
        let mut best: Option<(usize, f64)> = None;
        for j in 0..ncols {
            if !passive[j] && w[j] > tol {
                if best.map_or(true, |(_, bw)| w[j] > bw) {
                    best = Some((j, w[j]));
                }
            }
        }
        let Some((jstar, _)) = best else { break };
        passive[jstar] = true;

        // Inner loop: least squares on the passive set, stepping back when
        // components would go nonpositive.
        for _inner in 0..(3 * ncols + 12) {
            let pidx: Vec<usize> = (0..ncols).filter(|&j| passive[j]).collect();
            let ep = e.select_cols(&pidx);
            let (zp, _res) = Svd::new(&ep).solve_min_norm(f);
            if zp.iter().all(|&z| z > tol.max(1e-14)) {
                u.iter_mut().for_each(|v| *v = 0.0);
                for (k, &j) in pidx.iter().enumerate() {
                    u[j] = zp[k];
                }
                break;
            }
            let mut alpha = 1.0f64;
            for (k, &j) in pidx.iter().enumerate() {
                if zp[k] <= tol.max(1e-14) {
                    let den = u[j] - zp[k];
                    if den > 0.0 {
                        alpha = alpha.min(u[j] / den);
                    } else {
                        alpha = 0.0;
                    }
                }
            }
            for (k, &j) in pidx.iter().enumerate() {
                u[j] += alpha * (zp[k] - u[j]);
                if u[j] <= tol.max(1e-14) {
                    u[j] = 0.0;
                    passive[j] = false;
                }
            }
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::norm;

    fn s3() -> f64 {
        3.0f64.sqrt()
    }

    fn simplex() -> (DenseMatrix, Vec<f64>) {
        // {x : (√3/3) eᵀ x = 1, x ≥ 0}  ==  {x ≥ 0, Σx = √3}
        (
            DenseMatrix::from_rows(&[vec![s3() / 3.0; 3]]).unwrap(),
            vec![1.0],
        )
    }

    /// Independent oracle: projection onto {x ≥ 0, Σ x = s} by the
    /// classic sorting/threshold construction.
    fn simplex_projection(x: &[f64], s: f64) -> Vec<f64> {
        let n = x.len();
        let mut sorted = x.to_vec();
        sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let mut cum = 0.0;
        let mut theta = 0.0;
        for k in 0..n {
            cum += sorted[k];
            let t = (cum - s) / (k as f64 + 1.0);
            if k + 1 == n || sorted[k + 1] - t <= 0.0 {
                theta = t;
                if sorted[k] - t > 0.0 {
                    break;
                }
            }
        }
        x.iter().map(|&xi| (xi - theta).max(0.0)).collect()
    }

    #[test]
    fn projects_onto_simplex_matches_threshold_oracle() {
        let (a, b) = simplex();
        let p = PolyhedronProjector::new(&a, &b).unwrap();

        let x = vec![s3() + 1.0, -1.0, 0.0];
        let (z, d) = p.project(&x).unwrap();
        let oracle = simplex_projection(&x, s3());
        assert!(dist(&z, &oracle) < 1e-9, "{z:?} vs {oracle:?}");
        assert!((d - 2.0f64.sqrt()).abs() < 1e-10);
        assert!(dist(&z, &[s3(), 0.0, 0.0]) < 1e-10);

        // randomized agreement with the threshold oracle
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let x: Vec<f64> = (0..3).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let (z, d) = p.project(&x).unwrap();
            let oracle = simplex_projection(&x, s3());
            assert!(dist(&z, &oracle) < 1e-8, "{x:?}: {z:?} vs {oracle:?}");
            assert!((d - dist(&x, &oracle)).abs() < 1e-8);
        }
    }

    #[test]
    fn feasible_point_is_fixed_and_projection_is_idempotent() {
        let (a, b) = simplex();
        let p = PolyhedronProjector::new(&a, &b).unwrap();
        let x = vec![0.4, 0.4, s3() - 0.8];
        let (z, d) = p.project(&x).unwrap();
        assert!(d < 1e-12);
        assert!(dist(&z, &x) < 1e-12);

        let (z2, d2) = p.project(&z).unwrap();
        assert!(d2 < 1e-12);
        assert!(dist(&z2, &z) < 1e-12);
    }

    #[test]
    fn barycenter_plus_normal_offset_projects_back() {
        let (a, b) = simplex();
        let p = PolyhedronProjector::new(&a, &b).unwrap();
        let bary = vec![1.0 / s3(); 3];
        let x: Vec<f64> = bary.iter().map(|v| v + 0.7).collect(); // offset along e
        let (z, d) = p.project(&x).unwrap();
        assert!(dist(&z, &bary) < 1e-10);
        assert!((d - 0.7 * s3()).abs() < 1e-10);
    }

    #[test]
    fn empty_polyhedron_is_detected() {
        // x1 + x2 = -1 with x ≥ 0 is empty.
        let a = DenseMatrix::from_rows(&[vec![1.0, 1.0]]).unwrap();
        let p = PolyhedronProjector::new(&a, &[-1.0]).unwrap();
        assert!(matches!(p.project(&[1.0, 1.0]), Err(Error::InfeasibleSet)));

        // inconsistent affine part is empty too
        let a = DenseMatrix::from_rows(&[vec![1.0, 0.0], vec![1.0, 0.0]]).unwrap();
        assert!(matches!(
            PolyhedronProjector::new(&a, &[0.0, 1.0]),
            Err(Error::InfeasibleSet)
        ));
    }

    #[test]
    fn kkt_quality_on_random_polyhedra() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for trial in 0..120 {
            let m = 1 + trial % 3;
            let n = m + 2 + trial % 4;
            let rows: Vec<Vec<f64>> = (0..m)
                .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect();
            let a = DenseMatrix::from_rows(&rows).unwrap();
            let x0: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..1.5)).collect();
            let b = a.matvec(&x0);
            let p = PolyhedronProjector::new(&a, &b).unwrap();
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let (z, d) = p.project(&x).unwrap();
            // feasibility
            assert!(norm_inf(&sub(&a.matvec(&z), &b)) < 1e-8 * (1.0 + norm(&b)));
            assert!(z.iter().all(|&v| v >= -1e-9));
            // distance consistency and idempotence
            assert!((d - dist(&x, &z)).abs() < 1e-12);
            let (z2, d2) = p.project(&z).unwrap();
            assert!(d2 < 1e-7 * (1.0 + norm(&z)), "idempotence failed: {d2}");
            assert!(dist(&z2, &z) < 1e-7 * (1.0 + norm(&z)));
        }
    }
}
