//! Brute-force reference path.
//!
//! Everything here is built from explicit time-frequency shifts and dense
//! inner products. Only group arithmetic and the linear-algebra kernel are
//! used, so the oracle shares no code with the Zak and fiber machinery it
//! is meant to check.

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::group::{to_f64, FiniteAbelianGroup, MeasureWeights, Subgroup};
use crate::numerics::{hermitian_eigenvalues, DenseMatrix, FrameBounds};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `(E_w T_a f)(x) = <w, x> f(x - a)`.
pub fn oracle_tf_shift(g: &FiniteAbelianGroup, f: &[Complex64], a: usize, w: usize) -> Vec<Complex64> {
    (0..g.order())
        .map(|x| g.pair_idx(w, x) * f[g.sub(x, a)])
        .collect()
}

/// `c_G`-weighted inner product.
fn inner(c_g: f64, f: &[Complex64], h: &[Complex64]) -> Complex64 {
    f.iter().zip(h).map(|(a, b)| a * b.conj()).sum::<Complex64>() * c_g
}

fn check(g: &FiniteAbelianGroup, vecs: &[&[Complex64]], subs: &[&Subgroup]) -> Result<()> {
    if vecs.iter().any(|v| v.len() != g.order()) {
        return invalid(format!("vectors must have length {}", g.order()));
    }
    if subs.iter().any(|s| s.parent() != g) {
        return invalid(format!("subgroups must live in {g}"));
    }
    Ok(())
}

/// Dense `|G| x |G|` matrix of `S_{g,h} f = c_Lambda c_Gamma sum <f, E_gamma
/// T_lambda g> E_gamma T_lambda h`.
///
/// Column `y` is `S_{g,h} e_y`, computed by the quadruple loop over
/// `(lambda, gamma, x, y)`.
pub fn oracle_frame_matrix(
    group: &FiniteAbelianGroup,
    g: &[Complex64],
    h: &[Complex64],
    lambda: &Subgroup,
    gamma: &Subgroup,
    weights: &MeasureWeights,
) -> Result<DenseMatrix> {
    check(group, &[g, h], &[lambda, gamma])?;
    let n = group.order();
    let scale = to_f64(weights.c_lambda) * to_f64(weights.c_gamma);
    let c_g = to_f64(weights.c_g);
    let mut s = DenseMatrix::zeros(n, n);
    for &lam in lambda.elements() {
        for &gam in gamma.elements() {
            let gs = oracle_tf_shift(group, g, lam, gam);
            let hs = oracle_tf_shift(group, h, lam, gam);
            for y in 0..n {
                // <e_y, E T g> = c_G conj(E T g (y))
                let coeff = gs[y].conj() * c_g * scale;
                if coeff == ZERO {
                    continue;
                }
                for x in 0..n {
                    s[(x, y)] += coeff * hs[x];
                }
            }
        }
    }
    Ok(s)
}

/// Extreme eigenvalues of `S_{g,g}`.
pub fn oracle_frame_bounds(
    group: &FiniteAbelianGroup,
    g: &[Complex64],
    lambda: &Subgroup,
    gamma: &Subgroup,
    weights: &MeasureWeights,
    tol: f64,
) -> Result<FrameBounds> {
    let s = oracle_frame_matrix(group, g, g, lambda, gamma, weights)?;
    Ok(FrameBounds::from_spectrum(&hermitian_eigenvalues(&s)?, tol))
}

/// The adjoint family `{E_beta T_alpha g}` for `alpha in Gamma^perp`,
/// `beta in Lambda^perp`, ordered with `alpha` outermost.
pub fn oracle_adjoint_family(
    group: &FiniteAbelianGroup,
    g: &[Complex64],
    lambda: &Subgroup,
    gamma: &Subgroup,
) -> Result<Vec<Vec<Complex64>>> {
    check(group, &[g], &[lambda, gamma])?;
    let gamma_perp = perp_by_search(gamma);
    let lambda_perp = perp_by_search(lambda);
    let mut out = Vec::with_capacity(gamma_perp.len() * lambda_perp.len());
    for &a in &gamma_perp {
        for &b in &lambda_perp {
            out.push(oracle_tf_shift(group, g, a, b));
        }
    }
    Ok(out)
}

/// Annihilator by exhaustive test of every element against every member.
fn perp_by_search(h: &Subgroup) -> Vec<usize> {
    let g = h.parent();
    (0..g.order())
        .filter(|&w| h.elements().iter().all(|&x| g.phase(w, x) == 0))
        .collect()
}

/// Gram matrix `M[k][l] = <f_l, f_k>` with `c_G`-weighted inner products.
pub fn oracle_gram(vectors: &[Vec<Complex64>], c_g: f64) -> DenseMatrix {
    let n = vectors.len();
    let mut m = DenseMatrix::zeros(n, n);
    for k in 0..n {
        for l in k..n {
            let v = inner(c_g, &vectors[l], &vectors[k]);
            m[(k, l)] = v;
            m[(l, k)] = v.conj();
        }
    }
    m
}

/// Riesz bounds of a finite family: extreme eigenvalues of its Gram matrix.
pub fn oracle_riesz_bounds(vectors: &[Vec<Complex64>], c_g: f64, tol: f64) -> Result<FrameBounds> {
    if vectors.is_empty() {
        return invalid("Riesz bounds of an empty family");
    }
    let gram = oracle_gram(vectors, c_g);
    Ok(FrameBounds::from_spectrum(&hermitian_eigenvalues(&gram)?, tol))
}

/// `max_{i,j} |<e_i, e_j> - c_Lambda c_Gamma sum <e_i, E T h> <E T g, e_j>|`.
pub fn oracle_dual_residual(
    group: &FiniteAbelianGroup,
    g: &[Complex64],
    h: &[Complex64],
    lambda: &Subgroup,
    gamma: &Subgroup,
    weights: &MeasureWeights,
) -> Result<f64> {
    check(group, &[g, h], &[lambda, gamma])?;
    let n = group.order();
    let scale = to_f64(weights.c_lambda) * to_f64(weights.c_gamma);
    let c_g = to_f64(weights.c_g);
    let mut acc = DenseMatrix::zeros(n, n);
    for &lam in lambda.elements() {
        for &gam in gamma.elements() {
            let gs = oracle_tf_shift(group, g, lam, gam);
            let hs = oracle_tf_shift(group, h, lam, gam);
            for i in 0..n {
                // <e_i, E T h> = c_G conj(hs[i]); <E T g, e_j> = c_G gs[j]
                let left = hs[i].conj() * c_g * scale;
                for j in 0..n {
                    acc[(i, j)] += left * gs[j] * c_g;
                }
            }
        }
    }
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let id = if i == j { c_g } else { 0.0 };
            worst = worst.max((acc[(i, j)] - id).norm());
        }
    }
    Ok(worst)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub frame: FrameBounds,
    pub riesz: FrameBounds,
    /// Optimal Bessel bound `lambda_max(S)`.
    pub bessel_bound: f64,
    /// Present when a second window was supplied.
    pub dual_residual: Option<f64>,
}

pub fn oracle_report(
    group: &FiniteAbelianGroup,
    g: &[Complex64],
    h: Option<&[Complex64]>,
    lambda: &Subgroup,
    gamma: &Subgroup,
    weights: &MeasureWeights,
    tol: f64,
) -> Result<OracleReport> {
    let frame = oracle_frame_bounds(group, g, lambda, gamma, weights, tol)?;
    let family = oracle_adjoint_family(group, g, lambda, gamma)?;
    let riesz = oracle_riesz_bounds(&family, to_f64(weights.c_g), tol)?;
    let dual_residual = match h {
        Some(h) => Some(oracle_dual_residual(group, g, h, lambda, gamma, weights)?),
        None => None,
    };
    Ok(OracleReport {
        frame,
        riesz,
        bessel_bound: frame.b_opt,
        dual_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::derive_weights;

    fn setup(factors: &[usize], l: &[usize], gm: &[usize]) -> (FiniteAbelianGroup, Subgroup, Subgroup, MeasureWeights) {
        let g = FiniteAbelianGroup::new(factors).unwrap();
        let lam = Subgroup::from_generator_indices(&g, l);
        let gam = Subgroup::from_generator_indices(&g, gm);
        let w = derive_weights(&g, &lam, &gam).unwrap();
        (g, lam, gam, w)
    }

    fn delta(n: usize) -> Vec<Complex64> {
        let mut v = vec![ZERO; n];
        v[0] = Complex64::new(1.0, 0.0);
        v
    }

    #[test]
    fn full_lattice_unit_window_is_identity() {
        let (g, lam, gam, w) = setup(&[6], &[1], &[1]);
        let win: Vec<Complex64> = (0..6).map(|i| Complex64::new(i as f64, 1.0)).collect();
        let norm = win.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let win: Vec<Complex64> = win.iter().map(|z| z / norm).collect();
        let s = oracle_frame_matrix(&g, &win, &win, &lam, &gam, &w).unwrap();
        assert!(s.sub(&DenseMatrix::identity(6)).max_abs() < 1e-12);
        let b = oracle_frame_bounds(&g, &win, &lam, &gam, &w, 1e-9).unwrap();
        assert!(b.is_parseval);
    }

    #[test]
    fn zero_windows() {
        let (g, lam, gam, w) = setup(&[8], &[2], &[4]);
        let z = vec![ZERO; 8];
        let d = delta(8);
        let s = oracle_frame_matrix(&g, &d, &z, &lam, &gam, &w).unwrap();
        assert_eq!(s.max_abs(), 0.0);
        let b = oracle_frame_bounds(&g, &z, &lam, &gam, &w, 1e-9).unwrap();
        assert_eq!((b.a_opt, b.b_opt, b.is_frame), (0.0, 0.0, false));
        let r = oracle_dual_residual(&g, &d, &z, &lam, &gam, &w).unwrap();
        assert_eq!(r, 1.0);
    }

    /// Z_4, Lambda = Gamma = {0,2}, g = delta_0: c_Lambda = 2, c_Gamma = 1/2.
    /// By hand: E_gamma T_lambda delta_0 = <gamma, lambda> delta_lambda, so S
    /// is c_Lambda c_Gamma |Gamma| = 2 on the even points and 0 elsewhere.
    #[test]
    fn hand_computed_z4() {
        let (g, lam, gam, w) = setup(&[4], &[2], &[2]);
        let s = oracle_frame_matrix(&g, &delta(4), &delta(4), &lam, &gam, &w).unwrap();
        let expect = DenseMatrix::diagonal(&[2.0, 0.0, 2.0, 0.0]);
        assert!(s.sub(&expect).max_abs() < 1e-15);
    }

    #[test]
    fn riesz_simple_families() {
        let e = |k: usize| {
            let mut v = vec![ZERO; 3];
            v[k] = Complex64::new(1.0, 0.0);
            v
        };
        let b = oracle_riesz_bounds(&[e(0)], 1.0, 1e-9).unwrap();
        assert_eq!((b.a_opt, b.b_opt), (1.0, 1.0));
        let b = oracle_riesz_bounds(&[e(0), e(2)], 1.0, 1e-9).unwrap();
        assert_eq!((b.a_opt, b.b_opt), (1.0, 1.0));
        assert!(oracle_riesz_bounds(&[], 1.0, 1e-9).is_err());
    }

    #[test]
    fn adjoint_family_size() {
        let (g, lam, gam, _) = setup(&[8], &[2], &[4]);
        let fam = oracle_adjoint_family(&g, &delta(8), &lam, &gam).unwrap();
        assert_eq!(fam.len(), 64 / (4 * 2));
    }

    /// The oracle must not depend on the code it validates.
    #[test]
    fn imports_only_group_and_numerics() {
        let src = include_str!("oracle.rs");
        for forbidden in ["crate::gabor", "crate::transforms", "super::gabor", "super::transforms"] {
            let hits = src.lines().filter(|l| l.contains(forbidden) && !l.contains("for forbidden")).count();
            assert_eq!(hits, 0, "oracle references {forbidden}");
        }
    }
}
