use num_complex::Complex64;

use super::{check_lattice, GaborSystem};
use crate::error::Result;
use crate::group::{to_f64, MeasureWeights, Subgroup};
use crate::numerics::FrameBounds;
use crate::transforms::{fourier, Signal};

/// Ranges of the periodized window energy on both sides.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CalderonBounds {
    /// `[min_x, max_x]` of `c_Lambda sum_lambda |g(x + lambda)|^2`.
    pub time: (f64, f64),
    /// `[min_w, max_w]` of `c_Gamma sum_gamma |g^(w + gamma)|^2`.
    pub frequency: (f64, f64),
}

impl CalderonBounds {
    /// Both intervals lie inside `[A - tol, B + tol]`.
    pub fn within(&self, bounds: &FrameBounds, tol: f64) -> bool {
        let inside = |(lo, hi): (f64, f64)| lo >= bounds.a_opt - tol && hi <= bounds.b_opt + tol;
        inside(self.time) && inside(self.frequency)
    }
}

fn periodized_range(values: &[Complex64], sub: &Subgroup, c: f64) -> (f64, f64) {
    let grp = sub.parent();
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for x in 0..grp.order() {
        let e: f64 = sub.elements().iter().map(|&l| values[grp.add(x, l)].norm_sqr()).sum::<f64>() * c;
        lo = lo.min(e);
        hi = hi.max(e);
    }
    (lo, hi)
}

pub fn calderon_bounds(sys: &GaborSystem) -> CalderonBounds {
    let w = sys.weights();
    let ghat = fourier(sys.window(), w).expect("weights match the window");
    CalderonBounds {
        time: periodized_range(sys.window().values(), sys.lambda(), to_f64(w.c_lambda)),
        frequency: periodized_range(ghat.values(), sys.gamma(), to_f64(w.c_gamma)),
    }
}

/// `max_{x, alpha'} c_Lambda sum_lambda |g(x - lambda - alpha')| sum_alpha
/// |g(x - lambda - alpha)|` over `x` in `G` and `alpha, alpha'` in
/// `Gamma^perp`; an upper bound for the optimal Bessel bound.
pub fn bessel_estimate(g: &Signal, lambda: &Subgroup, gamma: &Subgroup, weights: &MeasureWeights) -> Result<f64> {
    check_lattice(&[g], lambda, gamma, weights)?;
    let grp = g.group();
    let gp = gamma.annihilator();
    let abs: Vec<f64> = g.values().iter().map(|z| z.norm()).collect();
    // Periodized modulus over Gamma^perp.
    let per: Vec<f64> = (0..grp.order())
        .map(|y| gp.elements().iter().map(|&a| abs[grp.sub(y, a)]).sum())
        .collect();
    let c = to_f64(weights.c_lambda);
    let mut best: f64 = 0.0;
    for x in 0..grp.order() {
        for &ap in gp.elements() {
            let s: f64 = lambda
                .elements()
                .iter()
                .map(|&l| {
                    let y = grp.sub(x, l);
                    abs[grp.sub(y, ap)] * per[y]
                })
                .sum();
            best = best.max(c * s);
        }
    }
    Ok(best)
}

/// Largest deviation over `lambda` in `Lambda` between
/// `c_Gamma sum_gamma |<f, E_gamma T_lambda g>|^2` and
/// `c_G sum_x sum_{alpha in Gamma^perp} f(x) conj(f(x - alpha)) conj(T_lambda g(x)) T_lambda g(x - alpha)`.
pub fn gamma_energy_identity_residual(
    g: &Signal,
    lambda: &Subgroup,
    gamma: &Subgroup,
    weights: &MeasureWeights,
    f: &Signal,
) -> Result<f64> {
    check_lattice(&[g, f], lambda, gamma, weights)?;
    let grp = g.group();
    let gp = gamma.annihilator();
    let (c_g, c_gamma) = (to_f64(weights.c_g), to_f64(weights.c_gamma));
    let (fv, gv) = (f.values(), g.values());
    let mut worst: f64 = 0.0;
    for &l in lambda.elements() {
        let lhs: f64 = gamma
            .elements()
            .iter()
            .map(|&gm| {
                let s: Complex64 = (0..grp.order())
                    .map(|x| fv[x] * (grp.pair_idx(gm, x) * gv[grp.sub(x, l)]).conj())
                    .sum();
                (s * c_g).norm_sqr()
            })
            .sum::<f64>()
            * c_gamma;
        let rhs: Complex64 = (0..grp.order())
            .map(|x| {
                gp.elements()
                    .iter()
                    .map(|&a| {
                        let y = grp.sub(x, a);
                        fv[x] * fv[y].conj() * gv[grp.sub(x, l)].conj() * gv[grp.sub(y, l)]
                    })
                    .sum::<Complex64>()
            })
            .sum::<Complex64>()
            * c_g;
        worst = worst.max((rhs - lhs).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::super::testutil::*;
    use super::*;
    use crate::group::derive_weights;
    use crate::oracle::oracle_frame_bounds;
    use crate::rng::SplitMix64;

    #[test]
    fn calderon_examples() {
        let g = group(&[8]);
        let whole = sub(&g, &[1]);
        let mut rng = SplitMix64::new(3);
        let u = random(&g, &mut rng);
        let u = u.scaled(real(1.0 / u.norm()));
        let sys = GaborSystem::new(u, whole.clone(), sub(&g, &[2])).unwrap();
        let c = calderon_bounds(&sys);
        assert!((c.time.0 - 1.0).abs() < 1e-12 && (c.time.1 - 1.0).abs() < 1e-12);

        for (l, gm) in [(&[2][..], &[2][..]), (&[1], &[4]), (&[2], &[1])] {
            let sys = system(&[8], l, gm, rng.next_u64());
            let b = oracle_frame_bounds(sys.group(), sys.window().values(), sys.lambda(), sys.gamma(), sys.weights(), 1e-9).unwrap();
            assert!(b.is_frame);
            assert!(calderon_bounds(&sys).within(&b, 1e-9));
        }
    }

    #[test]
    fn bessel_estimate_examples() {
        let g = group(&[8]);
        let whole = sub(&g, &[1]);
        let w = derive_weights(&g, &whole, &whole).unwrap();
        assert_eq!(bessel_estimate(&Signal::delta(&g, 0), &whole, &whole, &w).unwrap(), 1.0);

        let mut rng = SplitMix64::new(4);
        for (l, gm) in [(&[2][..], &[4][..]), (&[2], &[2]), (&[4], &[1])] {
            let sys = system(&[8], l, gm, rng.next_u64());
            let (lam, gam, wt) = (sys.lambda(), sys.gamma(), sys.weights());
            let m = bessel_estimate(sys.window(), lam, gam, wt).unwrap();
            let b = oracle_frame_bounds(&g, sys.window().values(), lam, gam, wt, 1e-9).unwrap();
            assert!(m >= b.b_opt * (1.0 - 1e-12));
            let m2 = bessel_estimate(&sys.window().scaled(real(2.0)), lam, gam, wt).unwrap();
            assert!((m2 - 4.0 * m).abs() < 1e-12 * m2);
        }
    }

    #[test]
    fn energy_identity() {
        let mut rng = SplitMix64::new(5);
        for (l, gm) in [(&[2][..], &[4][..]), (&[2], &[1]), (&[4], &[2])] {
            let sys = system(&[8], l, gm, rng.next_u64());
            for _ in 0..5 {
                let f = random(sys.group(), &mut rng);
                let r = gamma_energy_identity_residual(sys.window(), sys.lambda(), sys.gamma(), sys.weights(), &f).unwrap();
                assert!(r <= 1e-11);
            }
            let d = Signal::delta(sys.group(), 0);
            let r = gamma_energy_identity_residual(sys.window(), sys.lambda(), sys.gamma(), sys.weights(), &d).unwrap();
            assert!(r <= 1e-14);
        }
    }
}
