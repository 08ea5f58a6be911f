use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::group::{FiniteAbelianGroup, Subgroup};
use crate::transforms::Signal;

/// Relative tolerance for the partition-of-unity check.
const PARTITION_TOL: f64 = 1e-12;

/// Parseval window for the system with translations `Lambda` and all
/// modulations.
///
/// Each factor lists values on the transversal `X` of `Lambda` (in
/// transversal order) and must be positive there. `W_r` is the convolution
/// of the factors extended by zero off `X`; its `Lambda`-periodization must
/// be a constant `C_r`, which holds whenever one factor is constant. The
/// result is `sqrt(W_r / (C_r |X|))`.
pub fn build_parseval_bspline(
    group: &FiniteAbelianGroup,
    lambda: &Subgroup,
    order: usize,
    factors: &[Vec<f64>],
) -> Result<Signal> {
    if lambda.parent() != group {
        return invalid(format!("Lambda must be a subgroup of {group}"));
    }
    if lambda.order() == group.order() {
        return invalid("B-spline windows need a proper subgroup Lambda");
    }
    if order == 0 {
        return invalid("B-spline order must be at least 1");
    }
    if factors.len() != order {
        return invalid(format!("order {order} needs {order} factors, got {}", factors.len()));
    }
    let reps = lambda.transversal().reps().to_vec();
    for (i, f) in factors.iter().enumerate() {
        if f.len() != reps.len() {
            return invalid(format!(
                "factor {i} has {} values, the transversal has {}",
                f.len(),
                reps.len()
            ));
        }
        if f.iter().any(|v| !v.is_finite() || *v <= 0.0) {
            return invalid(format!("factor {i} must be positive on the transversal"));
        }
    }

    let n = group.order();
    let extend = |f: &[f64]| {
        let mut v = vec![0.0; n];
        for (&x, &val) in reps.iter().zip(f) {
            v[x] = val;
        }
        v
    };
    let mut w = extend(&factors[0]);
    for f in &factors[1..] {
        let u = extend(f);
        let mut out = vec![0.0; n];
        for (y, &a) in w.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (z, &b) in u.iter().enumerate() {
                out[group.add(y, z)] += a * b;
            }
        }
        w = out;
    }

    let periodized: Vec<f64> = (0..n)
        .map(|x| lambda.elements().iter().map(|&l| w[group.sub(x, l)]).sum())
        .collect();
    let c_r = periodized[0];
    let spread = periodized.iter().map(|p| (p - c_r).abs()).fold(0.0, f64::max);
    if spread > PARTITION_TOL * c_r {
        return Err(Error::ConstructionFailed(format!(
            "Lambda-periodization of W_{order} is not constant (spread {spread:e})"
        )));
    }
    let denom = c_r * reps.len() as f64;
    Signal::new(
        group,
        w.iter().map(|v| Complex64::new((v / denom).sqrt(), 0.0)).collect(),
    )
}
