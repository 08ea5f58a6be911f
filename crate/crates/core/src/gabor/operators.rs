use num_complex::Complex64;

use super::{check_lattice, GaborSystem};
use crate::error::{invalid, Error, Result};
use crate::group::{to_f64, MeasureWeights, Subgroup};
use crate::numerics::{solve_hpd, DenseMatrix};
use crate::transforms::{fourier, Signal};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `<f, E_gamma T_lambda g>`, rows in `Lambda` element order and columns in
/// `Gamma` element order.
pub fn coefficients(sys: &GaborSystem, f: &Signal) -> Result<DenseMatrix> {
    if f.group() != sys.group() {
        return invalid("signal and system live on different groups");
    }
    Ok(raw_coefficients(sys.window(), sys.lambda(), sys.gamma(), sys.weights(), f))
}

fn raw_coefficients(
    g: &Signal,
    lambda: &Subgroup,
    gamma: &Subgroup,
    weights: &MeasureWeights,
    f: &Signal,
) -> DenseMatrix {
    let grp = g.group();
    let c_g = to_f64(weights.c_g);
    let (fv, gv) = (f.values(), g.values());
    DenseMatrix::from_fn(lambda.order(), gamma.order(), |i, j| {
        let (lam, gam) = (lambda.elements()[i], gamma.elements()[j]);
        let s: Complex64 = (0..grp.order())
            .map(|x| fv[x] * (grp.pair_idx(gam, x) * gv[grp.sub(x, lam)]).conj())
            .sum();
        s * c_g
    })
}

/// `S_{g,h} f` by the defining double sum.
pub fn frame_operator_apply(sys_g: &GaborSystem, sys_h: &GaborSystem, f: &Signal) -> Result<Signal> {
    if !sys_g.same_lattice(sys_h) {
        return invalid("mixed frame operator needs both systems on the same lattice");
    }
    mixed_frame_operator_apply(sys_g.window(), sys_h.window(), sys_g.lambda(), sys_g.gamma(), sys_g.weights(), f)
}

/// `S_{g,h} f = c_Lambda c_Gamma sum <f, E_gamma T_lambda g> E_gamma T_lambda h`
/// for arbitrary (possibly zero) windows.
pub fn mixed_frame_operator_apply(
    g: &Signal,
    h: &Signal,
    lambda: &Subgroup,
    gamma: &Subgroup,
    weights: &MeasureWeights,
    f: &Signal,
) -> Result<Signal> {
    check_lattice(&[g, h, f], lambda, gamma, weights)?;
    let grp = g.group();
    let coeffs = raw_coefficients(g, lambda, gamma, weights, f);
    let scale = to_f64(weights.c_lambda) * to_f64(weights.c_gamma);
    let hv = h.values();
    let mut out = vec![ZERO; grp.order()];
    for (i, &lam) in lambda.elements().iter().enumerate() {
        for (j, &gam) in gamma.elements().iter().enumerate() {
            let c = coeffs[(i, j)] * scale;
            if c == ZERO {
                continue;
            }
            for (x, o) in out.iter_mut().enumerate() {
                *o += c * grp.pair_idx(gam, x) * hv[grp.sub(x, lam)];
            }
        }
    }
    Signal::new(grp, out)
}

fn check_member(sub: &Subgroup, el: usize, what: &str) -> Result<()> {
    if el >= sub.parent().order() || !sub.contains(el) {
        return invalid(format!("{what} is not a member of the required subgroup"));
    }
    Ok(())
}

/// `s_alpha(x) = c_Lambda sum_lambda conj(g(x - lambda - alpha)) h(x - lambda)`
/// for `alpha` in `Gamma^perp`.
pub fn s_alpha(
    g: &Signal,
    h: &Signal,
    lambda: &Subgroup,
    gamma: &Subgroup,
    weights: &MeasureWeights,
    alpha: usize,
) -> Result<Signal> {
    check_lattice(&[g, h], lambda, gamma, weights)?;
    check_member(&gamma.annihilator(), alpha, "alpha")?;
    Ok(raw_s_alpha(g, h, lambda, weights, alpha))
}

fn raw_s_alpha(g: &Signal, h: &Signal, lambda: &Subgroup, weights: &MeasureWeights, alpha: usize) -> Signal {
    let grp = g.group();
    let c = to_f64(weights.c_lambda);
    let (gv, hv) = (g.values(), h.values());
    Signal::from_fn(grp, |x| {
        let s: Complex64 = lambda
            .elements()
            .iter()
            .map(|&lam| {
                let y = grp.sub(x, lam);
                gv[grp.sub(y, alpha)].conj() * hv[y]
            })
            .sum();
        s * c
    })
}

/// `t_beta(w) = c_Gamma sum_gamma conj(g^(w - gamma - beta)) h^(w - gamma)` for
/// `beta` in `Lambda^perp`; the result lives on the dual.
pub fn t_beta(
    g: &Signal,
    h: &Signal,
    lambda: &Subgroup,
    gamma: &Subgroup,
    weights: &MeasureWeights,
    beta: usize,
) -> Result<Signal> {
    check_lattice(&[g, h], lambda, gamma, weights)?;
    check_member(&lambda.annihilator(), beta, "beta")?;
    let ghat = fourier(g, weights)?;
    let hhat = fourier(h, weights)?;
    Ok(raw_t_beta(&ghat, &hhat, gamma, weights, beta))
}

fn raw_t_beta(ghat: &Signal, hhat: &Signal, gamma: &Subgroup, weights: &MeasureWeights, beta: usize) -> Signal {
    let grp = ghat.group();
    let c = to_f64(weights.c_gamma);
    let (gv, hv) = (ghat.values(), hhat.values());
    Signal::from_fn(grp, |w| {
        let s: Complex64 = gamma
            .elements()
            .iter()
            .map(|&gam| {
                let v = grp.sub(w, gam);
                gv[grp.sub(v, beta)].conj() * hv[v]
            })
            .sum();
        s * c
    })
}

/// Dense matrix of `f -> sum_{alpha in Gamma^perp} s_alpha T_alpha f`.
pub fn walnut_matrix(
    g: &Signal,
    h: &Signal,
    lambda: &Subgroup,
    gamma: &Subgroup,
    weights: &MeasureWeights,
) -> Result<DenseMatrix> {
    check_lattice(&[g, h], lambda, gamma, weights)?;
    let grp = g.group();
    let n = grp.order();
    let mut m = DenseMatrix::zeros(n, n);
    for &alpha in gamma.annihilator().elements() {
        let s = raw_s_alpha(g, h, lambda, weights, alpha);
        for x in 0..n {
            m[(x, grp.sub(x, alpha))] += s.values()[x];
        }
    }
    Ok(m)
}

/// `S_{g,h} f` through the Walnut representation.
pub fn walnut_apply(
    g: &Signal,
    h: &Signal,
    lambda: &Subgroup,
    gamma: &Subgroup,
    weights: &MeasureWeights,
    f: &Signal,
) -> Result<Signal> {
    check_lattice(&[g, h, f], lambda, gamma, weights)?;
    let grp = g.group();
    let mut out = vec![ZERO; grp.order()];
    for &alpha in gamma.annihilator().elements() {
        let s = raw_s_alpha(g, h, lambda, weights, alpha);
        for (x, o) in out.iter_mut().enumerate() {
            *o += s.values()[x] * f.values()[grp.sub(x, alpha)];
        }
    }
    Signal::new(grp, out)
}

/// Frame operator `S_{g,g}` of a system as a dense matrix.
pub fn frame_operator_matrix(sys: &GaborSystem) -> DenseMatrix {
    walnut_matrix(sys.window(), sys.window(), sys.lambda(), sys.gamma(), sys.weights())
        .expect("system data is consistent by construction")
}

/// `<h, E_beta T_alpha g>` for `alpha` in `Gamma^perp` (rows) and `beta` in
/// `Lambda^perp` (columns), element order.
pub fn janssen_coefficients(
    g: &Signal,
    h: &Signal,
    lambda: &Subgroup,
    gamma: &Subgroup,
    weights: &MeasureWeights,
) -> Result<DenseMatrix> {
    check_lattice(&[g, h], lambda, gamma, weights)?;
    let (gp, lp) = (gamma.annihilator(), lambda.annihilator());
    Ok(raw_coefficients(g, &gp, &lp, weights, h))
}

#[derive(Clone, Debug)]
pub struct JanssenOperator {
    pub matrix: DenseMatrix,
    /// `sum |<h, E_beta T_alpha g>|`.
    pub condition_a: f64,
}

/// `sum_{alpha, beta} <h, E_beta T_alpha g> E_beta T_alpha` as a dense matrix.
pub fn janssen_operator(
    g: &Signal,
    h: &Signal,
    lambda: &Subgroup,
    gamma: &Subgroup,
    weights: &MeasureWeights,
) -> Result<JanssenOperator> {
    let coeffs = janssen_coefficients(g, h, lambda, gamma, weights)?;
    let grp = g.group();
    let n = grp.order();
    let (gp, lp) = (gamma.annihilator(), lambda.annihilator());
    let mut m = DenseMatrix::zeros(n, n);
    let mut condition_a = 0.0;
    for (i, &alpha) in gp.elements().iter().enumerate() {
        for (j, &beta) in lp.elements().iter().enumerate() {
            let c = coeffs[(i, j)];
            condition_a += c.norm();
            for x in 0..n {
                m[(x, grp.sub(x, alpha))] += c * grp.pair_idx(beta, x);
            }
        }
    }
    Ok(JanssenOperator { matrix: m, condition_a })
}

/// `|<S_{g,h} f1, f2> - sum <h, E_beta T_alpha g> <E_beta T_alpha f1, f2>|`.
pub fn figa_residual(
    f1: &Signal,
    f2: &Signal,
    g: &Signal,
    h: &Signal,
    lambda: &Subgroup,
    gamma: &Subgroup,
    weights: &MeasureWeights,
) -> Result<f64> {
    check_lattice(&[f1, f2, g, h], lambda, gamma, weights)?;
    let c_g = to_f64(weights.c_g);
    let lhs = mixed_frame_operator_apply(g, h, lambda, gamma, weights, f1)?.inner(f2) * c_g;
    let coeffs = janssen_coefficients(g, h, lambda, gamma, weights)?;
    let (gp, lp) = (gamma.annihilator(), lambda.annihilator());
    let mut rhs = ZERO;
    for (i, &alpha) in gp.elements().iter().enumerate() {
        for (j, &beta) in lp.elements().iter().enumerate() {
            rhs += coeffs[(i, j)] * f1.tf_shift(alpha, beta).inner(f2) * c_g;
        }
    }
    Ok((lhs - rhs).norm())
}

/// `max |<h, E_beta T_alpha g> - delta_{alpha,0} delta_{beta,0}|`.
pub fn wexler_raz_residual(
    g: &Signal,
    h: &Signal,
    lambda: &Subgroup,
    gamma: &Subgroup,
    weights: &MeasureWeights,
) -> Result<f64> {
    let coeffs = janssen_coefficients(g, h, lambda, gamma, weights)?;
    // The zero element is first in both annihilators.
    let mut worst: f64 = 0.0;
    for i in 0..coeffs.rows() {
        for j in 0..coeffs.cols() {
            let target = if i == 0 && j == 0 { ONE } else { ZERO };
            worst = worst.max((coeffs[(i, j)] - target).norm());
        }
    }
    Ok(worst)
}

/// Residuals of the three equivalent duality tests.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualPairResiduals {
    /// `max |S_{g,h} - I|` entrywise (weak duality on the standard basis).
    pub weak: f64,
    /// `max |s_alpha - delta_{alpha,0}|`.
    pub s_side: f64,
    /// `max |t_beta - delta_{beta,0}|`.
    pub t_side: f64,
}

impl DualPairResiduals {
    pub fn max(&self) -> f64 {
        self.weak.max(self.s_side).max(self.t_side)
    }

    pub fn is_dual(&self, tol: f64) -> bool {
        self.max() <= tol
    }

    /// The time-side and frequency-side criteria reach the same verdict.
    pub fn sides_agree(&self, tol: f64) -> bool {
        (self.s_side <= tol) == (self.t_side <= tol)
    }
}

pub fn verify_dual_pair(
    g: &Signal,
    h: &Signal,
    lambda: &Subgroup,
    gamma: &Subgroup,
    weights: &MeasureWeights,
) -> Result<DualPairResiduals> {
    check_lattice(&[g, h], lambda, gamma, weights)?;
    let grp = g.group();
    let n = grp.order();

    let mut weak: f64 = 0.0;
    for y in 0..n {
        let col = mixed_frame_operator_apply(g, h, lambda, gamma, weights, &Signal::delta(grp, y))?;
        for (x, v) in col.values().iter().enumerate() {
            let id = if x == y { ONE } else { ZERO };
            weak = weak.max((v - id).norm());
        }
    }

    let mut s_side: f64 = 0.0;
    for &alpha in gamma.annihilator().elements() {
        let s = raw_s_alpha(g, h, lambda, weights, alpha);
        let target = if alpha == grp.zero() { ONE } else { ZERO };
        for v in s.values() {
            s_side = s_side.max((v - target).norm());
        }
    }

    let ghat = fourier(g, weights)?;
    let hhat = fourier(h, weights)?;
    let mut t_side: f64 = 0.0;
    for &beta in lambda.annihilator().elements() {
        let t = raw_t_beta(&ghat, &hhat, gamma, weights, beta);
        let target = if beta == grp.zero() { ONE } else { ZERO };
        for v in t.values() {
            t_side = t_side.max((v - target).norm());
        }
    }
    Ok(DualPairResiduals { weak, s_side, t_side })
}

/// `h = S^{-1} g`, solved against the Hermitian positive-definite frame
/// operator.
pub fn canonical_dual(sys: &GaborSystem) -> Result<Signal> {
    let bounds = super::dual_gramian_bounds(sys).bounds;
    if !bounds.is_frame {
        return Err(Error::SingularOperator { lambda_min: bounds.a_opt });
    }
    let s = frame_operator_matrix(sys);
    let h = solve_hpd(&s, sys.window().values())?;
    Signal::new(sys.group(), h)
}

/// `max_y || (S U - U S) e_y ||` with `U = E_w T_a`, for any `a` and `w`.
pub fn shift_commutator_norm(sys: &GaborSystem, a: usize, w: usize) -> Result<f64> {
    let grp = sys.group();
    let n = grp.order();
    if a >= n || w >= n {
        return invalid("shift parameters out of range");
    }
    let s = frame_operator_matrix(sys);
    let mut u = DenseMatrix::zeros(n, n);
    for x in 0..n {
        u[(x, grp.sub(x, a))] = grp.pair_idx(w, x);
    }
    let c = s.matmul(&u).sub(&u.matmul(&s));
    Ok((0..n)
        .map(|y| c.column(y).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .fold(0.0, f64::max))
}

/// [`shift_commutator_norm`] restricted to `lambda in Lambda`, `gamma in Gamma`.
pub fn commutation_residual(sys: &GaborSystem, lambda: usize, gamma: usize) -> Result<f64> {
    check_member(sys.lambda(), lambda, "lambda")?;
    check_member(sys.gamma(), gamma, "gamma")?;
    shift_commutator_norm(sys, lambda, gamma)
}
