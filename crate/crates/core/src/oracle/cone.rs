//! Tangent-cone generators by the double description method.
//!
//! The feasible-direction cone of `F_p` at a feasible point `x` is
//! `{d ∈ null(A) : dᵢ ≥ 0 for all i with xᵢ = 0}`. Working in reduced
//! coordinates `d = N t` this is a cone `{t : B t ≥ 0}`, whose extreme
//! rays and lineality space we build rowwise, starting from the whole
//! space and cutting one halfspace at a time.

use crate::error::{Error, Result};
use crate::model::SymmetricPd;
use crate::numerics::{dot, norm_inf, normalize, DenseMatrix};

const DD_TOL: f64 = 1e-10;

struct Ray {
    t: Vec<f64>,
    /// Bitmask over processed rows where the ray is tight.
    active: u64,
}

/// Extreme rays and lineality basis of `{t : Bt ≥ 0}` (rows of `b_rows`).
fn double_description(dim: usize, b_rows: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    assert!(b_rows.len() <= 64, "active-set bitmask is u64-backed");
    let mut lineality: Vec<Vec<f64>> = (0..dim)
        .map(|i| {
            let mut e = vec![0.0; dim];
            e[i] = 1.0;
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (row_idx, brow) in b_rows.iter().enumerate() {
        let bit = 1u64 << row_idx;
        let lvals: Vec<f64> = lineality.iter().map(|l| dot(brow, l)).collect();
        let pivot = lvals
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.abs().partial_cmp(&y.1.abs()).unwrap())
            .filter(|(_, v)| v.abs() > DD_TOL)
            .map(|(i, _)| i);

        if let Some(p) = pivot {
            // The lineality pokes through this halfspace: the pivot
            // direction leaves the lineality and becomes a ray; everything
            // else is sheared into the hyperplane bᵀt = 0.
            let mut lstar = lineality.remove(p);
            let mut vstar = lvals[p];
            if vstar < 0.0 {
                lstar.iter_mut().for_each(|v| *v = -*v);
                vstar = -vstar;
            }
            for l in lineality.iter_mut() {
                let coef = dot(brow, l) / vstar;
                for (li, si) in l.iter_mut().zip(&lstar) {
                    *li -= coef * si;
                }
                normalize(l, 1e-300);
            }
            for r in rays.iter_mut() {
                let coef = dot(brow, &r.t) / vstar;
                for (ri, si) in r.t.iter_mut().zip(&lstar) {
                    *ri -= coef * si;
                }
                normalize(&mut r.t, 1e-300);
                r.active |= bit;
            }
            // tight on no previous inequality constraints it violates;
            // lineality directions are tight on every processed row
            let prev_mask = bit - 1;
            rays.push(Ray {
                t: lstar,
                active: prev_mask,
            });
            continue;
        }

        // Lineality is contained in the hyperplane: split the rays.
        let vals: Vec<f64> = rays.iter().map(|r| dot(brow, &r.t)).collect();
        let mut keep: Vec<Ray> = Vec::new();
        let mut new_rays: Vec<Ray> = Vec::new();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > DD_TOL).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < -DD_TOL).collect();

        for (ip, &i) in pos.iter().map(|&i| (i, &rays[i])).map(|(i, r)| (i, r)).collect::<Vec<_>>() {
            let _ = ip; // indices used below
            let _ = i;
            break;
        }

        for &ip in &pos {
            for &ineg in &neg {
                let common = rays[ip].active & rays[ineg].active;
                let adjacent = !rays.iter().enumerate().any(|(k, r)| {
                    k != ip && k != ineg && (r.active & common) == common
                });
                if !adjacent {
                    continue;
                }
                let (a, b) = (vals[ip], -vals[ineg]);
                let mut t: Vec<f64> = rays[ip]
                    .t
                    .iter()
                    .zip(&rays[ineg].t)
                    .map(|(tp, tn)| b * tp + a * tn)
                    .collect();
                if !normalize(&mut t, 1e-14) {
                    continue;
                }
                new_rays.push(Ray {
                    t,
                    active: common | bit,
                });
            }
        }

        for (i, r) in rays.drain(..).enumerate() {
            if vals[i] > DD_TOL {
                keep.push(r);
            } else if vals[i] >= -DD_TOL {
                keep.push(Ray {
                    t: r.t,
                    active: r.active | bit,
                });
            }
        }
        keep.extend(new_rays);
        rays = keep;
    }

    (rays.into_iter().map(|r| r.t).collect(), lineality)
}

/// Finite generator set of the feasible-direction cone of `F_p` at the
/// feasible point `x_star`: the cone's extreme rays plus both signs of a
/// lineality basis, mapped back to x-space and normalized. Sorted for
/// determinism.
pub fn tangent_cone_generators(pd: &SymmetricPd, x_star: &[f64]) -> Result<Vec<Vec<f64>>> {
    tangent_cone_in_basis(&pd.null_basis, x_star)
}

/// Same, parameterized by the subspace basis so the dual side can reuse it
/// with the row-space basis of its own standard form.
pub fn tangent_cone_in_basis(basis: &DenseMatrix, x_star: &[f64]) -> Result<Vec<Vec<f64>>> {
    let n = basis.rows();
    let dim = basis.cols();
    if x_star.len() != n {
        return Err(Error::InvalidParameter(
            "point dimension does not match the basis".into(),
        ));
    }
    let ztol = 1e-9 * (1.0 + norm_inf(x_star));
    if x_star.iter().any(|&v| v < -ztol) {
        return Err(Error::InvalidParameter(
            "tangent cone requested at an infeasible point".into(),
        ));
    }
    let active: Vec<usize> = (0..n).filter(|&i| x_star[i] <= ztol).collect();
    if active.len() > 64 {
        return Err(Error::InstanceTooLarge(
            "more than 64 active bounds in the cone computation".into(),
        ));
    }
    let rows: Vec<Vec<f64>> = active.iter().map(|&i| basis.row(i).to_vec()).collect();
    let (rays, lineality) = double_description(dim, &rows);

    let mut gens: Vec<Vec<f64>> = Vec::new();
    for t in rays {
        push_mapped(&mut gens, basis, &t);
    }
    for l in lineality {
        push_mapped(&mut gens, basis, &l);
        let neg: Vec<f64> = l.iter().map(|v| -v).collect();
        push_mapped(&mut gens, basis, &neg);
    }
    super::vertices::dedup_sorted(&mut gens);
    Ok(gens)
}

fn push_mapped(out: &mut Vec<Vec<f64>>, basis: &DenseMatrix, t: &[f64]) {
    let mut d = vec![0.0; basis.rows()];
    for j in 0..basis.cols() {
        let col = basis.col(j);
        for (di, ci) in d.iter_mut().zip(&col) {
            *di += t[j] * ci;
        }
    }
    if normalize(&mut d, 1e-12) {
        out.push(d);
    }
}
