//! LP data model and the symmetric primal-dual reformulation.
//!
//! A standard-form instance `min cᵀx s.t. Ax = b, x ≥ 0` is rewritten so
//! that primal and dual look alike: the objective is replaced by its
//! projection `c` onto null(A) (which preserves the optimal set), and the
//! right-hand side is represented by the min-norm point `q` of
//! `V_p = {x : Ax = b}`. The dual feasible set is then
//! `F_d = V_d ∩ R^n₊` with `V_d = c + rowspace(A)`, the dual objective is
//! `max −qᵀs`, and the two associated linear subspaces are orthogonal
//! complements.

use crate::error::{Error, Result};
use crate::numerics::{dot, norm, singular_extremes, DenseMatrix, SingularExtremes, Svd};

/// Standard-form LP data: `min c_rawᵀ x  s.t.  A x = b, x ≥ 0`.
///
/// The on-disk JSON schema for instances lives in [`crate::instances`].
#[derive(Clone, Debug, PartialEq)]
pub struct LpInstance {
    pub a: DenseMatrix,
    pub b: Vec<f64>,
    pub c_raw: Vec<f64>,
}

impl LpInstance {
    pub fn new(a: DenseMatrix, b: Vec<f64>, c_raw: Vec<f64>) -> Result<Self> {
        if b.len() != a.rows() {
            return Err(Error::InvalidParameter(format!(
                "b has length {} but A has {} rows",
                b.len(),
                a.rows()
            )));
        }
        if c_raw.len() != a.cols() {
            return Err(Error::InvalidParameter(format!(
                "c has length {} but A has {} columns",
                c_raw.len(),
                a.cols()
            )));
        }
        if b.iter().chain(c_raw.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("b and c must be finite".into()));
        }
        Ok(Self { a, b, c_raw })
    }

    pub fn num_vars(&self) -> usize {
        self.a.cols()
    }

    pub fn num_constraints(&self) -> usize {
        self.a.rows()
    }
}

/// The symmetric primal-dual geometry derived from an [`LpInstance`].
#[derive(Clone, Debug)]
pub struct SymmetricPd {
    pub instance: LpInstance,
    /// Projected objective, an element of null(A); also the min-norm point
    /// of the dual affine subspace `V_d`.
    pub c: Vec<f64>,
    /// Min-norm point of `V_p`, an element of rowspace(A).
    pub q: Vec<f64>,
    /// `Dist(0, V_p) = ‖q‖`.
    pub dist0_vp: f64,
    /// `Dist(0, V_d) = ‖c‖`.
    pub dist0_vd: f64,
    pub n: usize,
    /// Orthonormal basis of null(A) as columns, n × (n − rank).
    pub null_basis: DenseMatrix,
    /// Orthonormal basis of rowspace(A) as columns, n × rank.
    pub row_basis: DenseMatrix,
    pub extremes: SingularExtremes,
}

impl SymmetricPd {
    pub fn kappa(&self) -> f64 {
        self.extremes.kappa()
    }

    /// The dual problem `max −qᵀs, s ∈ V_d ∩ R^n₊` written back in
    /// standard form: `min qᵀs  s.t.  Nᵀ s = Nᵀ c, s ≥ 0` where the rows
    /// of `Nᵀ` span null(A). Lets every primal-side routine run on the
    /// dual by symmetry.
    pub fn dual_standard_form(&self) -> LpInstance {
        let nt = self.null_basis.transpose();
        let b = nt.matvec(&self.c);
        LpInstance {
            a: nt,
            b,
            c_raw: self.q.clone(),
        }
    }
}

/// Builds the symmetric reformulation, validating the standing assumption
/// that non-optimal feasible points exist on both sides (equivalently,
/// neither of the two affine pieces passes through the origin).
pub fn build_symmetric_pd(inst: &LpInstance) -> Result<SymmetricPd> {
    let extremes = singular_extremes(&inst.a).map_err(|_| {
        Error::AssumptionViolation("constraint matrix is zero".into())
    })?;
    let svd = Svd::new(&inst.a);
    let (q, res) = svd.solve_min_norm(&inst.b);
    if res > 1e-8 * (1.0 + norm(&inst.b)) {
        return Err(Error::InfeasibleAffine);
    }

    // c := projection of c_raw onto null(A), via subtracting the row-space
    // component so vectors already in null(A) pass through bit-unchanged.
    let row_basis = svd.row_basis();
    let mut c = inst.c_raw.clone();
    for j in 0..row_basis.cols() {
        let col = row_basis.col(j);
        let coef = dot(&col, &inst.c_raw);
        for (ci, bi) in c.iter_mut().zip(&col) {
            *ci -= coef * bi;
        }
    }

    let dist0_vd = norm(&c);
    let dist0_vp = norm(&q);
    if dist0_vd <= 1e-10 * (1.0 + norm(&inst.c_raw)) {
        return Err(Error::AssumptionViolation(
            "objective projects to zero on null(A): every feasible point is optimal, \
             so no non-optimal feasible solutions exist and Dist(0, V_d) = 0"
                .into(),
        ));
    }
    if dist0_vp <= 1e-10 * (1.0 + norm(&inst.b)) {
        return Err(Error::AssumptionViolation(
            "right-hand side is zero: V_p passes through the origin, the dual \
             objective is constant, and Dist(0, V_p) = 0"
                .into(),
        ));
    }

    Ok(SymmetricPd {
        n: inst.num_vars(),
        instance: inst.clone(),
        c,
        q,
        dist0_vp,
        dist0_vd,
        null_basis: svd.null_basis(),
        row_basis,
        extremes,
    })
}

/// A primal-dual iterate; the dual slack is always the derived quantity
/// `s = c − Aᵀy`, which lies on `V_d` by construction.
#[derive(Clone, Debug)]
pub struct PrimalDualPair {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub s: Vec<f64>,
}

impl PrimalDualPair {
    pub fn from_xy(pd: &SymmetricPd, x: Vec<f64>, y: Vec<f64>) -> Self {
        let mut s = pd.c.clone();
        let aty = pd.instance.a.tr_matvec(&y);
        for (si, ai) in s.iter_mut().zip(&aty) {
            *si -= ai;
        }
        Self { x, y, s }
    }
}

/// `Gap(x, s) = cᵀx + qᵀs`; zero at optimal pairs, nonnegative on
/// feasible ones.
pub fn duality_gap(pd: &SymmetricPd, x: &[f64], s: &[f64]) -> f64 {
    dot(&pd.c, x) + dot(&pd.q, s)
}

/// `Dist(x, R^n₊)`: Euclidean norm of the negative part.
pub fn dist_to_orthant(x: &[f64]) -> f64 {
    x.iter()
        .map(|&v| if v < 0.0 { v * v } else { 0.0 })
        .sum::<f64>()
        .sqrt()
}
