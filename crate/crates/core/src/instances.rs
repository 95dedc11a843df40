//! Instance generators and serialization.
//!
//! Two sources of test problems: the `LP_γ` family on the 3-simplex whose
//! primal sharpness decays like `sin γ` while every other measure stays
//! put, and seeded random standard-form instances with guaranteed primal
//! feasibility.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::LpInstance;
use crate::numerics::{norm, singular_extremes, DenseMatrix};

/// Parameter of the `LP_γ` family; valid range `[0, π/2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaSpec {
    pub gamma: f64,
}

impl GammaSpec {
    pub fn new(gamma: f64) -> Result<Self> {
        if !gamma.is_finite() || !(0.0..std::f64::consts::FRAC_PI_2).contains(&gamma) {
            return Err(Error::InvalidParameter(format!(
                "gamma must lie in [0, pi/2), got {gamma}"
            )));
        }
        Ok(Self { gamma })
    }
}

/// The 3-variable family `min c_γᵀx  s.t. (√3/3)·Σxᵢ = 1, x ≥ 0` with
/// `c_γ = cos γ · (−1,−1,2)/√6 + sin γ · (−1,1,0)/√2`.
///
/// For γ ∈ (0, π/2) the unique primal optimum is `(√3, 0, 0)`; at γ = 0
/// the whole segment to `(0, √3, 0)` is optimal.
pub fn lp_gamma(gamma: f64) -> Result<LpInstance> {
    let spec = GammaSpec::new(gamma)?;
    lp_gamma_spec(spec)
}

pub fn lp_gamma_spec(spec: GammaSpec) -> Result<LpInstance> {
    let g = spec.gamma;
    let s6 = 6.0f64.sqrt();
    let s2 = 2.0f64.sqrt();
    let u = [-1.0 / s6, -1.0 / s6, 2.0 / s6];
    let v = [-1.0 / s2, 1.0 / s2, 0.0];
    let c: Vec<f64> = (0..3).map(|i| g.cos() * u[i] + g.sin() * v[i]).collect();
    let a = DenseMatrix::from_rows(&[vec![3.0f64.sqrt() / 3.0; 3]])?;
    LpInstance::new(a, vec![1.0], c)
}

/// Default sweep grid: nine log-spaced values `γ_k = (π/2) · 10^(−k/2)`
/// for `k = 3..=11`, approaching the degenerate γ = 0 limit from above.
/// γ = 0 itself is left out of the default sweep: its primal optimum is a
/// segment, so sharpness and the error-ratio estimates jump
/// discontinuously there and the log-scale sweep could not display it
/// anyway. Pass an explicit grid to include it.
pub fn default_gamma_grid() -> Vec<f64> {
    (3..=11)
        .map(|k| std::f64::consts::FRAC_PI_2 * 10f64.powf(-(k as f64) / 2.0))
        .collect()
}

/// Random standard-form instance with `1 ≤ m < n`: `A` has full row rank,
/// `b = A x₀` for a strictly positive `x₀` (so the primal is feasible and
/// has interior points), and `c` is standard normal. The objective is
/// projected later, at model-build time. Deterministic in `seed`.
pub fn random_instance(seed: u64, m: usize, n: usize) -> Result<LpInstance> {
    if m == 0 || m >= n || n > 20 {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= m < n <= 20, got m={m} n={n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _attempt in 0..64 {
        let rows: Vec<Vec<f64>> = (0..m)
            .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        let a = DenseMatrix::from_rows(&rows)?;
        let ext = match singular_extremes(&a) {
            Ok(e) => e,
            Err(_) => continue,
        };
        // reject rank-deficient or badly conditioned draws
        if ext.kappa() > 50.0 || ext.sigma_min_plus < 1e-6 {
            continue;
        }
        let x0: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..1.5)).collect();
        let b = a.matvec(&x0);
        if norm(&b) < 1e-6 {
            continue;
        }
        let c_raw: Vec<f64> = (0..n)
            .map(|_| StandardNormal.sample(&mut rng))
            .collect();
        return LpInstance::new(a, b, c_raw);
    }
    Err(Error::GenerationFailed(format!(
        "no full-rank draw for m={m}, n={n}, seed={seed}"
    )))
}

/// Redraws only the objective vector of an existing instance; used by the
/// corpus builders to filter for bounded or unique-optimum problems
/// without discarding the constraint geometry.
pub fn redraw_objective(inst: &LpInstance, rng: &mut ChaCha8Rng) -> LpInstance {
    let c_raw: Vec<f64> = (0..inst.num_vars())
        .map(|_| StandardNormal.sample(rng))
        .collect();
    LpInstance {
        a: inst.a.clone(),
        b: inst.b.clone(),
        c_raw,
    }
}

#[derive(Serialize, Deserialize)]
struct RawInstance {
    #[serde(rename = "A")]
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
    c: Vec<f64>,
}

/// Parses the on-disk JSON schema `{"A": [[...]], "b": [...], "c": [...]}`
/// with field-level error paths.
pub fn parse_instance(text: &str) -> Result<LpInstance> {
    let raw: RawInstance = serde_json::from_str(text).map_err(|e| Error::Parse {
        path: "$".into(),
        message: e.to_string(),
    })?;
    if raw.a.is_empty() {
        return Err(Error::Parse {
            path: "A".into(),
            message: "matrix needs at least one row".into(),
        });
    }
    let cols = raw.a[0].len();
    for (i, row) in raw.a.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::Parse {
                path: format!("A[{i}]"),
                message: format!("row has length {} but row 0 has {cols}", row.len()),
            });
        }
        if row.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parse {
                path: format!("A[{i}]"),
                message: "entries must be finite".into(),
            });
        }
    }
    if raw.b.len() != raw.a.len() {
        return Err(Error::Parse {
            path: "b".into(),
            message: format!("length {} does not match {} rows of A", raw.b.len(), raw.a.len()),
        });
    }
    if raw.c.len() != cols {
        return Err(Error::Parse {
            path: "c".into(),
            message: format!("length {} does not match {cols} columns of A", raw.c.len()),
        });
    }
    let a = DenseMatrix::from_rows(&raw.a)?;
    LpInstance::new(a, raw.b, raw.c)
}

/// Canonical JSON form of an instance; `parse_instance ∘ serialize` is the
/// identity and the text is byte-stable.
pub fn serialize_instance(inst: &LpInstance) -> String {
    let raw = RawInstance {
        a: (0..inst.a.rows()).map(|i| inst.a.row(i).to_vec()).collect(),
        b: inst.b.clone(),
        c: inst.c_raw.clone(),
    };
    serde_json::to_string_pretty(&raw).expect("instance serialization cannot fail")
}

/// Grid manifest consumed by the sweep command: `{"gamma": [...]}`.
#[derive(Serialize, Deserialize)]
pub struct GammaGrid {
    pub gamma: Vec<f64>,
}

pub fn parse_gamma_grid(text: &str) -> Result<Vec<f64>> {
    let grid: GammaGrid = serde_json::from_str(text).map_err(|e| Error::Parse {
        path: "gamma".into(),
        message: e.to_string(),
    })?;
    if grid.gamma.is_empty() {
        return Err(Error::InvalidParameter("gamma grid is empty".into()));
    }
    for &g in &grid.gamma {
        GammaSpec::new(g)?;
    }
    Ok(grid.gamma)
}
