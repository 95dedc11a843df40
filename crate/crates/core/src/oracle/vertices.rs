//! Basic-feasible-solution enumeration for `{x : Ax = b, x ≥ 0}` and
//! extreme-ray enumeration for its recession cone.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::numerics::{norm, norm_inf, sub, DenseMatrix, Svd};

/// Componentwise feasibility slack accepted on enumerated vertices.
pub const VERTEX_FEAS_TOL: f64 = 1e-9;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u128::from(u64::MAX) {
            return u128::from(u64::MAX);
        }
    }
    acc
}

/// All basic feasible solutions, deduplicated and sorted lexicographically.
/// `max_subsets` guards the combinatorial loop; the public API pins it.
pub(crate) fn enumerate_bfs(
    a: &DenseMatrix,
    b: &[f64],
    max_subsets: u128,
) -> Result<Vec<Vec<f64>>> {
    let n = a.cols();
    let svd = Svd::new(a);
    let rank = svd.rank();
    let count = binomial(n, rank);
    if count > max_subsets {
        return Err(Error::InstanceTooLarge(format!(
            "C({n}, {rank}) = {count} basis candidates exceeds the {max_subsets} guard"
        )));
    }

    let bscale = 1.0 + norm(b);
    let mut vertices: Vec<Vec<f64>> = Vec::new();
    for basis in (0..n).combinations(rank) {
        let ab = a.select_cols(&basis);
        let bsvd = Svd::new(&ab);
        if bsvd.rank() < rank {
            continue; // dependent columns
        }
        let (xb, res) = bsvd.solve_min_norm(b);
        if res > 1e-9 * bscale {
            continue; // basis cannot reproduce b
        }
        if xb.iter().any(|&v| v < -VERTEX_FEAS_TOL) {
            continue;
        }
        let mut x = vec![0.0; n];
        for (k, &j) in basis.iter().enumerate() {
            x[j] = xb[k];
        }
        vertices.push(x);
    }

    dedup_sorted(&mut vertices);
    Ok(vertices)
}

/// Lexicographic sort plus tolerance dedup (degenerate bases produce the
/// same geometric vertex many times).
pub(crate) fn dedup_sorted(points: &mut Vec<Vec<f64>>) {
    points.sort_by(|p, q| {
        for (a, b) in p.iter().zip(q) {
            if (a - b).abs() > 1e-12 {
                return a.partial_cmp(b).unwrap();
            }
        }
        std::cmp::Ordering::Equal
    });
    points.dedup_by(|p, q| norm_inf(&sub(p, q)) <= 1e-9);
}

/// All basic feasible solutions of `{Ax = b, x ≥ 0}`.
///
/// Errors with `InstanceTooLarge` beyond the desk-scale guard and with
/// `InfeasibleSet` when the polyhedron is empty (a nonempty set of this
/// form always has a vertex, so enumeration is a complete test).
pub fn enumerate_vertices(a: &DenseMatrix, b: &[f64]) -> Result<Vec<Vec<f64>>> {
    if a.cols() > 20 {
        return Err(Error::InstanceTooLarge(format!(
            "{} variables exceeds the 20-variable oracle guard",
            a.cols()
        )));
    }
    let v = enumerate_bfs(a, b, 1_000_000)?;
    if v.is_empty() {
        return Err(Error::InfeasibleSet);
    }
    Ok(v)
}

/// Normalized extreme rays of the recession cone `{d : Ad = 0, d ≥ 0}`,
/// obtained as the vertices of its slice `{d ≥ 0 : Ad = 0, eᵀd = 1}`.
pub(crate) fn extreme_rays(a: &DenseMatrix, max_subsets: u128) -> Result<Vec<Vec<f64>>> {
    let n = a.cols();
    let ones = DenseMatrix::from_rows(&[vec![1.0; n]]).expect("static shape");
    let lifted = a.vstack(&ones);
    let mut rhs = vec![0.0; a.rows()];
    rhs.push(1.0);
    let mut rays = enumerate_bfs(&lifted, &rhs, max_subsets)?;
    // normalize to unit Euclidean length for stable downstream use
    for r in rays.iter_mut() {
        let nr = norm(r);
        for v in r.iter_mut() {
            *v /= nr;
        }
    }
    dedup_sorted(&mut rays);
    Ok(rays)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::dist;

    fn s3() -> f64 {
        3.0f64.sqrt()
    }

    #[test]
    fn simplex_vertices() {
        let a = DenseMatrix::from_rows(&[vec![s3() / 3.0; 3]]).unwrap();
        let v = enumerate_vertices(&a, &[1.0]).unwrap();
        assert_eq!(v.len(), 3);
        assert!(dist(&v[0], &[0.0, 0.0, s3()]) < 1e-10);
        assert!(dist(&v[1], &[0.0, s3(), 0.0]) < 1e-10);
        assert!(dist(&v[2], &[s3(), 0.0, 0.0]) < 1e-10);
    }

    #[test]
    fn point_and_infeasible_cases() {
        let a = DenseMatrix::from_rows(&[vec![1.0]]).unwrap();
        let v = enumerate_vertices(&a, &[1.0]).unwrap();
        assert_eq!(v, vec![vec![1.0]]);

        // x1 + x2 = -1, x >= 0 is empty
        let a = DenseMatrix::from_rows(&[vec![1.0, 1.0]]).unwrap();
        assert!(matches!(
            enumerate_vertices(&a, &[-1.0]),
            Err(Error::InfeasibleSet)
        ));
    }

    #[test]
    fn size_guard_trips() {
        let a = DenseMatrix::zeros(1, 25);
        assert!(matches!(
            enumerate_vertices(&a, &[0.0]),
            Err(Error::InstanceTooLarge(_))
        ));
    }

    #[test]
    fn vertices_satisfy_the_system() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let m = 2;
            let n = 5;
            let rows: Vec<Vec<f64>> = (0..m)
                .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect();
            let a = DenseMatrix::from_rows(&rows).unwrap();
            let x0: Vec<f64> = (0..n).map(|_| rng.gen_range(0.3..1.2)).collect();
            let b = a.matvec(&x0);
            let verts = enumerate_vertices(&a, &b).unwrap();
            assert!(!verts.is_empty());
            for v in &verts {
                assert!(norm_inf(&sub(&a.matvec(v), &b)) < 1e-8 * (1.0 + norm(&b)));
                assert!(v.iter().all(|&x| x >= -1e-12), "vertex {v:?}");
            }
        }
    }

    #[test]
    fn recession_rays_of_free_coordinate() {
        // {x2 = 0} in R^2: recession cone of {x : x2 = 0, x >= 0} is the ray e1.
        let a = DenseMatrix::from_rows(&[vec![0.0, 1.0]]).unwrap();
        let rays = extreme_rays(&a, 1 << 20).unwrap();
        assert_eq!(rays.len(), 1);
        assert!(dist(&rays[0], &[1.0, 0.0]) < 1e-12);

        // simplex plane has a compact feasible set: no rays
        let a = DenseMatrix::from_rows(&[vec![s3() / 3.0; 3]]).unwrap();
        assert!(extreme_rays(&a, 1 << 20).unwrap().is_empty());
    }
}
