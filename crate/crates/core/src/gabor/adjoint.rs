use num_complex::Complex64;

use super::estimates::{bessel_estimate, calderon_bounds, CalderonBounds};
use super::fibers::{dual_gramian_bounds, frequency_side_bounds, zz_bounds};
use super::operators::{
    canonical_dual, figa_residual, janssen_operator, verify_dual_pair, walnut_matrix,
    wexler_raz_residual,
};
use super::GaborSystem;
use crate::error::{invalid, Result};
use crate::group::{to_f64, Subgroup};
use crate::numerics::{hermitian_eigenvalues, solve_hpd, DenseMatrix, FrameBounds, RANK_CUTOFF};
use crate::oracle::{oracle_frame_bounds, oracle_frame_matrix};
use crate::transforms::{zak, Signal};

/// `{E_beta T_alpha g}` over `alpha in Gamma^perp`, `beta in Lambda^perp`,
/// both with counting measure.
#[derive(Clone, Debug)]
pub struct AdjointSystem {
    window: Signal,
    gamma_perp: Subgroup,
    lambda_perp: Subgroup,
}

impl AdjointSystem {
    pub fn window(&self) -> &Signal {
        &self.window
    }

    pub fn gamma_perp(&self) -> &Subgroup {
        &self.gamma_perp
    }

    pub fn lambda_perp(&self) -> &Subgroup {
        &self.lambda_perp
    }

    pub fn len(&self) -> usize {
        self.gamma_perp.order() * self.lambda_perp.order()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index pairs `(alpha, beta)`, `alpha` outermost.
    pub fn indices(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.len());
        for &a in self.gamma_perp.elements() {
            for &b in self.lambda_perp.elements() {
                out.push((a, b));
            }
        }
        out
    }

    pub fn members(&self) -> Vec<Signal> {
        self.indices()
            .into_iter()
            .map(|(a, b)| self.window.tf_shift(a, b))
            .collect()
    }

    /// `M[k][l] = <f_l, f_k>`.
    pub fn gram(&self) -> DenseMatrix {
        gram_of(&self.members())
    }
}

fn gram_of(members: &[Signal]) -> DenseMatrix {
    let n = members.len();
    let mut m = DenseMatrix::zeros(n, n);
    for k in 0..n {
        for l in k..n {
            let v = members[l].inner(&members[k]);
            m[(k, l)] = v;
            m[(l, k)] = v.conj();
        }
    }
    m
}

pub fn adjoint_system(sys: &GaborSystem) -> AdjointSystem {
    AdjointSystem {
        window: sys.window().clone(),
        gamma_perp: sys.gamma_perp().clone(),
        lambda_perp: sys.lambda_perp().clone(),
    }
}

/// Second route to the lower Riesz bound: the biorthogonal family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BiorthogonalCheck {
    /// `1 / lambda_max` of the Gram matrix of the biorthogonal family.
    pub lower_bound: f64,
    /// `max |<f_k, h_l> - delta_{kl}|`.
    pub biorthogonality_residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RieszReport {
    pub bounds: FrameBounds,
    /// Present when the Gram matrix is invertible.
    pub biorthogonal: Option<BiorthogonalCheck>,
}

impl RieszReport {
    pub fn is_riesz_sequence(&self) -> bool {
        self.bounds.is_frame
    }
}

pub fn riesz_bounds(adj: &AdjointSystem, tol: f64) -> RieszReport {
    riesz_of(&adj.members(), tol)
}

fn riesz_of(members: &[Signal], tol: f64) -> RieszReport {
    let gram = gram_of(members);
    let eig = hermitian_eigenvalues(&gram).expect("Gram matrices are Hermitian");
    let bounds = FrameBounds::from_spectrum(&eig, tol);
    let biorthogonal = if bounds.is_frame {
        biorthogonal_family(members, &gram).ok()
    } else {
        None
    };
    RieszReport { bounds, biorthogonal }
}

/// `h_k = sum_l (Gram^{-1})_{lk} f_l`, checked for biorthogonality.
fn biorthogonal_family(members: &[Signal], gram: &DenseMatrix) -> Result<BiorthogonalCheck> {
    let n = members.len();
    let grp = members[0].group();
    let mut duals = Vec::with_capacity(n);
    for k in 0..n {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[k] = Complex64::new(1.0, 0.0);
        let col = solve_hpd(gram, &e)?;
        let h = Signal::from_fn(grp, |x| {
            members.iter().zip(&col).map(|(f, c)| c * f.values()[x]).sum()
        });
        duals.push(h);
    }
    let mut residual: f64 = 0.0;
    for (k, f) in members.iter().enumerate() {
        for (l, h) in duals.iter().enumerate() {
            let target = if k == l { 1.0 } else { 0.0 };
            residual = residual.max((f.inner(h) - target).norm());
        }
    }
    let upper = hermitian_eigenvalues(&gram_of(&duals))?[0];
    Ok(BiorthogonalCheck {
        lower_bound: 1.0 / upper,
        biorthogonality_residual: residual,
    })
}

/// Critical-density diagnostics for `Lambda = Gamma^perp`.
#[derive(Clone, Debug, PartialEq)]
pub struct CriticalDensityReport {
    /// Extremes of `c_Lambda |Z_Lambda g|^2` over fibers where it is nonzero.
    pub zak_min: f64,
    pub zak_max: f64,
    /// Fibers where `c_Lambda |Z_Lambda g|^2 <= tolerance`.
    pub zero_fibers: usize,
    pub fiber_count: usize,
    pub frame: FrameBounds,
    /// Riesz bounds of the (square) Gabor family itself.
    pub riesz: FrameBounds,
    pub is_riesz_basis: bool,
    /// Frame for the span of the system (smallest nonzero bound positive).
    pub is_basic_frame: bool,
    /// Frame verdict equals Riesz-basis verdict and the bounds match.
    pub consistent: bool,
}

pub fn critical_density_check(sys: &GaborSystem) -> Result<CriticalDensityReport> {
    if !sys.is_critical() {
        return invalid("critical density check needs Lambda = Gamma^perp");
    }
    let tol = sys.tolerance();
    let c = to_f64(sys.weights().c_lambda);
    let z = zak(sys.lambda(), sys.window())?;
    let mut zak_min = f64::INFINITY;
    let mut zak_max: f64 = 0.0;
    let mut zero_fibers = 0;
    for v in z.values().as_slice() {
        let m = c * v.norm_sqr();
        if m <= tol {
            zero_fibers += 1;
        } else {
            zak_min = zak_min.min(m);
        }
        zak_max = zak_max.max(m);
    }
    if !zak_min.is_finite() {
        zak_min = 0.0;
    }
    let fiber_count = z.values().as_slice().len();

    let frame = dual_gramian_bounds(sys).bounds;
    let scale = Complex64::new((to_f64(sys.weights().c_lambda) * to_f64(sys.weights().c_gamma)).sqrt(), 0.0);
    let family: Vec<Signal> = sys
        .lambda()
        .elements()
        .iter()
        .flat_map(|&l| sys.gamma().elements().iter().map(move |&g| (l, g)))
        .map(|(l, g)| sys.window().tf_shift(l, g).scaled(scale))
        .collect();
    let riesz = riesz_of(&family, tol).bounds;
    let is_riesz_basis = family.len() == sys.group().order() && riesz.is_frame;
    let consistent = frame.is_frame == is_riesz_basis
        && frame.deviation(&riesz) <= tol.max(RANK_CUTOFF * frame.b_opt.max(1.0));
    Ok(CriticalDensityReport {
        zak_min,
        zak_max,
        zero_fibers,
        fiber_count,
        frame,
        riesz,
        is_riesz_basis,
        is_basic_frame: zak_min > tol,
        consistent,
    })
}

/// Every bound computation and identity check for one system.
#[derive(Clone, Debug, PartialEq)]
pub struct DualityReport {
    pub oracle: FrameBounds,
    pub dual_gramian: FrameBounds,
    pub zz: FrameBounds,
    pub frequency: FrameBounds,
    pub adjoint_riesz: FrameBounds,
    /// Largest relative deviation among the five bound pairs.
    pub bound_agreement: f64,
    /// `|lambda_max(S) - lambda_max(Gram of adjoint)|`.
    pub bessel_duality_residual: f64,
    /// Second window used for the residuals: the canonical dual for frames,
    /// otherwise the window itself.
    pub uses_canonical_dual: bool,
    pub wexler_raz: f64,
    /// Operator-norm distance to the oracle matrix.
    pub walnut: f64,
    pub janssen: f64,
    /// Largest FIGA residual over the probe signals.
    pub figa: f64,
    pub dual_pair: f64,
    pub condition_a: f64,
    pub calderon: CalderonBounds,
    pub bessel_estimate: f64,
    pub is_tight: bool,
    pub adjoint_orthogonal: bool,
    /// All five bounds agree, Bessel duality holds and tight frames have an
    /// orthogonal adjoint.
    pub consistent: bool,
}

pub fn duality_report(sys: &GaborSystem) -> Result<DualityReport> {
    let tol = sys.tolerance();
    let grp = sys.group();
    let (g, lam, gam, w) = (sys.window(), sys.lambda(), sys.gamma(), sys.weights());

    let oracle = oracle_frame_bounds(grp, g.values(), lam, gam, w, tol)?;
    let dual_gramian = dual_gramian_bounds(sys).bounds;
    let zz = zz_bounds(sys).bounds;
    let frequency = frequency_side_bounds(sys).bounds;
    let adj = adjoint_system(sys);
    let gram = adj.gram();
    let gram_eig = hermitian_eigenvalues(&gram)?;
    let adjoint_riesz = FrameBounds::from_spectrum(&gram_eig, tol);
    let bound_agreement = [dual_gramian, zz, frequency, adjoint_riesz]
        .iter()
        .map(|b| b.deviation(&oracle))
        .fold(0.0, f64::max);
    let bessel_duality_residual = (oracle.b_opt - gram_eig[0]).abs();

    let (h, uses_canonical_dual) = if dual_gramian.is_frame {
        (canonical_dual(sys)?, true)
    } else {
        (g.clone(), false)
    };
    let wexler_raz = wexler_raz_residual(g, &h, lam, gam, w)?;
    let reference = oracle_frame_matrix(grp, g.values(), h.values(), lam, gam, w)?;
    let walnut = walnut_matrix(g, &h, lam, gam, w)?.sub(&reference).operator_norm();
    let jan = janssen_operator(g, &h, lam, gam, w)?;
    let janssen = jan.matrix.sub(&reference).operator_norm();
    let probe = Signal::from_fn(grp, |x| Complex64::new(1.0 + x as f64, (grp.order() - x) as f64));
    let mut figa: f64 = 0.0;
    for x in 0..grp.order() {
        figa = figa.max(figa_residual(&Signal::delta(grp, x), &probe, g, &h, lam, gam, w)?);
    }
    let dual_pair = verify_dual_pair(g, &h, lam, gam, w)?.max();

    let norm_sqr = g.norm_sqr();
    let off_diagonal = (0..gram.rows())
        .flat_map(|k| (0..gram.cols()).filter(move |&l| l != k).map(move |l| (k, l)))
        .map(|(k, l)| gram[(k, l)].norm())
        .fold(0.0, f64::max);
    let adjoint_orthogonal = off_diagonal <= tol * norm_sqr.max(1.0);
    let is_tight = oracle.is_tight(tol);
    let tight_matches = is_tight == adjoint_orthogonal
        && (!is_tight || (oracle.a_opt - norm_sqr).abs() <= tol * norm_sqr.max(1.0));

    let consistent = bound_agreement <= tol
        && bessel_duality_residual <= tol * oracle.b_opt.max(1.0)
        && tight_matches;

    Ok(DualityReport {
        oracle,
        dual_gramian,
        zz,
        frequency,
        adjoint_riesz,
        bound_agreement,
        bessel_duality_residual,
        uses_canonical_dual,
        wexler_raz,
        walnut,
        janssen,
        figa,
        dual_pair,
        condition_a: jan.condition_a,
        calderon: calderon_bounds(sys),
        bessel_estimate: bessel_estimate(g, lam, gam, w)?,
        is_tight,
        adjoint_orthogonal,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::super::testutil::*;
    use super::super::{build_parseval_bspline, frame_operator_matrix};
    use super::*;
    use crate::oracle::{oracle_adjoint_family, oracle_riesz_bounds};
    use crate::transforms::signal_from_zak;

    #[test]
    fn adjoint_examples() {
        let g = group(&[8]);
        let whole = sub(&g, &[1]);
        let sys = GaborSystem::new(Signal::delta(&g, 3), whole.clone(), whole).unwrap();
        let adj = adjoint_system(&sys);
        assert_eq!(adj.len(), 1);
        let r = riesz_bounds(&adj, 1e-9);
        assert_eq!((r.bounds.a_opt, r.bounds.b_opt), (1.0, 1.0));

        let sys = system(&[8], &[2], &[4], 2);
        let adj = adjoint_system(&sys);
        assert_eq!(adj.len(), 64 / (4 * 2));
        assert_eq!(adj.gamma_perp().order() * adj.lambda_perp().order(), 8);
    }

    /// Every adjoint shift commutes with every lattice shift.
    #[test]
    fn adjoint_shifts_commute() {
        let sys = system(&[2, 4], &[2], &[1], 3);
        let grp = sys.group();
        let f = random(grp, &mut crate::rng::SplitMix64::new(1));
        let adj = adjoint_system(&sys);
        for (a, b) in adj.indices() {
            for &l in sys.lambda().elements() {
                for &gm in sys.gamma().elements() {
                    let one = f.tf_shift(l, gm).tf_shift(a, b);
                    let two = f.tf_shift(a, b).tf_shift(l, gm);
                    assert!(one.max_abs_diff(&two) < 1e-14);
                }
            }
        }
    }

    #[test]
    fn riesz_paths_agree() {
        let sys = system(&[8], &[2], &[2], 5);
        let adj = adjoint_system(&sys);
        let r = riesz_bounds(&adj, 1e-9);
        assert!(r.is_riesz_sequence());
        let bi = r.biorthogonal.unwrap();
        assert!((bi.lower_bound - r.bounds.a_opt).abs() <= 1e-10 * r.bounds.a_opt.max(1.0));
        assert!(bi.biorthogonality_residual < 1e-10);
        let o = oracle_riesz_bounds(
            &oracle_adjoint_family(sys.group(), sys.window().values(), sys.lambda(), sys.gamma()).unwrap(),
            1.0,
            1e-9,
        )
        .unwrap();
        assert!(o.deviation(&r.bounds) <= 1e-10);
    }

    #[test]
    fn orthogonal_adjoint_is_tight() {
        let g = group(&[8]);
        let lam = sub(&g, &[2]);
        let w = build_parseval_bspline(&g, &lam, 1, &[vec![1.0, 1.0]]).unwrap();
        let sys = GaborSystem::new(w, lam, Subgroup::whole(&g)).unwrap();
        let rep = duality_report(&sys).unwrap();
        assert!(rep.is_tight && rep.adjoint_orthogonal && rep.consistent);
        assert!((rep.adjoint_riesz.a_opt - sys.window().norm_sqr()).abs() < 1e-12);
        for b in [rep.oracle, rep.dual_gramian, rep.zz, rep.frequency, rep.adjoint_riesz] {
            assert!((b.a_opt - 1.0).abs() < 1e-10 && (b.b_opt - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn report_on_oversampled_system() {
        let sys = system(&[8], &[2], &[2], 7);
        let rep = duality_report(&sys).unwrap();
        assert!(rep.consistent, "{rep:?}");
        assert!(rep.bound_agreement <= 1e-10);
        assert!(rep.uses_canonical_dual);
        for r in [rep.wexler_raz, rep.walnut, rep.janssen, rep.figa, rep.dual_pair] {
            assert!(r <= 1e-10);
        }
        assert!(rep.calderon.within(&rep.oracle, 1e-9));
        assert!(rep.bessel_estimate >= rep.oracle.b_opt);
    }

    #[test]
    fn critical_density_cases() {
        let g = group(&[8]);
        let lam = sub(&g, &[2]);
        let gam = sub(&g, &[4]);

        // Indicator of {0, 1}: |Z| = 1 on every fiber.
        let w = Signal::from_fn(&g, |x| if x < 2 { real(1.0) } else { real(0.0) });
        let sys = GaborSystem::new(w, lam.clone(), gam.clone()).unwrap();
        let rep = critical_density_check(&sys).unwrap();
        assert!(rep.frame.is_frame && rep.is_riesz_basis && rep.consistent);
        assert!((rep.zak_min - rep.zak_max).abs() < 1e-12);

        // delta_0 vanishes on the odd coset.
        let sys = GaborSystem::new(Signal::delta(&g, 0), lam.clone(), gam.clone()).unwrap();
        let rep = critical_density_check(&sys).unwrap();
        assert!(!rep.frame.is_frame && !rep.is_riesz_basis && rep.consistent);
        assert_eq!(rep.zero_fibers, 4);

        // Zak field with a single zero.
        let mut field = DenseMatrix::from_fn(2, 4, |i, j| Complex64::new(1.0 + i as f64, 0.5 * j as f64));
        field[(1, 2)] = Complex64::new(0.0, 0.0);
        let w = signal_from_zak(&lam, field).unwrap();
        let sys = GaborSystem::new(w, lam.clone(), gam.clone()).unwrap();
        let rep = critical_density_check(&sys).unwrap();
        assert_eq!(rep.zero_fibers, 1);
        assert!(!rep.frame.is_frame && rep.is_basic_frame && rep.consistent);
        assert!(rep.frame.a_opt.abs() < 1e-12);
        // The nonzero spectrum of S is the basic-frame range.
        let eig = hermitian_eigenvalues(&frame_operator_matrix(&sys)).unwrap();
        let smallest_nonzero = eig.iter().copied().filter(|&v| v > 1e-9).fold(f64::INFINITY, f64::min);
        assert!((smallest_nonzero - rep.zak_min).abs() < 1e-10);

        // Parseval at critical density.
        let w = Signal::from_fn(&g, |x| if x < 2 { real(2f64.sqrt() / 2.0) } else { real(0.0) });
        let sys = GaborSystem::new(w, lam.clone(), gam.clone()).unwrap();
        let rep = critical_density_check(&sys).unwrap();
        assert!(rep.frame.is_parseval && rep.is_riesz_basis && rep.riesz.is_parseval);

        assert!(critical_density_check(&system(&[8], &[2], &[2], 1)).is_err());
    }

    #[test]
    fn non_frame_report() {
        let g = group(&[8]);
        let sys = GaborSystem::new(Signal::delta(&g, 0), sub(&g, &[2]), sub(&g, &[4])).unwrap();
        let rep = duality_report(&sys).unwrap();
        assert!(!rep.uses_canonical_dual);
        for b in [rep.oracle, rep.dual_gramian, rep.zz, rep.frequency, rep.adjoint_riesz] {
            assert!(b.a_opt.abs() < 1e-12 && !b.is_frame);
        }
        assert!(rep.consistent);
    }
}
