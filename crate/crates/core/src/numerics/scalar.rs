//! Scalar quasiconvex minimization by golden-section search.

use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9; // (√5 − 1) / 2

/// Golden-section search with a fixed iteration budget; returns the best
/// evaluated `(argmin, min)`. The caller guarantees quasiconvexity.
pub(crate) fn golden_section(
    f: &mut dyn FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    iters: usize,
) -> Result<(f64, f64)> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidParameter("need finite lo < hi".into()));
    }
    let mut eval = |x: f64| -> Result<f64> {
        let v = f(x);
        if !v.is_finite() {
            return Err(Error::EvaluationError);
        }
        Ok(v)
    };

    let mut best = (lo, eval(lo)?);
    for &(x, v) in &[(hi, eval(hi)?)] {
        if v < best.1 {
            best = (x, v);
        }
    }

    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = eval(c)?;
    let mut fd = eval(d)?;
    for _ in 0..iters {
        if fc < best.1 {
            best = (c, fc);
        }
        if fd < best.1 {
            best = (d, fd);
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = eval(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = eval(d)?;
        }
        if (b - a).abs() <= 1e-15 * (1.0 + a.abs() + b.abs()) {
            break;
        }
    }
    if fc < best.1 {
        best = (c, fc);
    }
    if fd < best.1 {
        best = (d, fd);
    }
    Ok(best)
}

/// Minimizes a quasiconvex scalar function on `[lo, hi]`.
pub fn minimize_scalar_quasiconvex(
    mut f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
) -> Result<(f64, f64)> {
    golden_section(&mut f, lo, hi, 80)
}
