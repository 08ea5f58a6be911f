use proptest::prelude::*;

use gaborlab_core::gabor::{
    adjoint_system, canonical_dual, dual_gramian_bounds, frequency_side_bounds, verify_dual_pair, zz_bounds,
    GaborSystem,
};
use gaborlab_core::group::{all_subgroups, derive_weights, to_f64, FiniteAbelianGroup, Subgroup};
use gaborlab_core::numerics::{hermitian_eigenvalues, FrameBounds};
use gaborlab_core::oracle::oracle_frame_bounds;
use gaborlab_core::transforms::{fourier, inverse_fourier, inverse_zak, zak, Signal};
use gaborlab_core::Complex64;

fn factors() -> impl Strategy<Value = Vec<usize>> {
    prop_oneof![
        (2usize..=12).prop_map(|n| vec![n]),
        (2usize..=4, 2usize..=4).prop_map(|(a, b)| vec![a, b]),
    ]
}

/// A group, two subgroup picks and window values.
fn case() -> impl Strategy<Value = (Vec<usize>, usize, usize, Vec<(f64, f64)>)> {
    factors().prop_flat_map(|f| {
        let n: usize = f.iter().product();
        (
            Just(f),
            any::<usize>(),
            any::<usize>(),
            prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n),
        )
    })
}

fn setup(f: &[usize], i: usize, j: usize, vals: &[(f64, f64)]) -> (FiniteAbelianGroup, Subgroup, Subgroup, Signal) {
    let g = FiniteAbelianGroup::new(f).unwrap();
    let subs = all_subgroups(&g, usize::MAX);
    let l = subs[i % subs.len()].clone();
    let gm = subs[j % subs.len()].clone();
    let s = Signal::new(&g, vals.iter().map(|&(a, b)| Complex64::new(a, b)).collect()).unwrap();
    (g, l, gm, s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn annihilators_are_dual((f, i, j, v) in case()) {
        let (g, l, gm, _) = setup(&f, i, j, &v);
        prop_assert_eq!(l.order() * l.annihilator().order(), g.order());
        prop_assert_eq!(l.annihilator().annihilator(), l.clone());
        let meet = l.intersect(&gm).unwrap().annihilator();
        let join = l.annihilator().sum(&gm.annihilator()).unwrap();
        prop_assert_eq!(meet, join);
    }

    #[test]
    fn weights_are_consistent((f, i, j, v) in case()) {
        let (g, l, gm, _) = setup(&f, i, j, &v);
        let w = derive_weights(&g, &l, &gm).unwrap();
        let n = g.order() as f64;
        prop_assert_eq!(to_f64(w.c_lambda) * to_f64(w.w_g_mod_lambda), 1.0);
        prop_assert!((to_f64(w.c_gamma) * to_f64(w.w_ghat_mod_gamma) - 1.0 / n).abs() < 1e-15);
        prop_assert!((to_f64(w.w_k) * w.p as f64 - to_f64(w.c_lambda)).abs() < 1e-12);
    }

    #[test]
    fn transforms_invert((f, i, j, v) in case()) {
        let (g, l, gm, s) = setup(&f, i, j, &v);
        let w = derive_weights(&g, &l, &gm).unwrap();
        let back = inverse_fourier(&fourier(&s, &w).unwrap(), &w).unwrap();
        prop_assert!(back.max_abs_diff(&s) < 1e-12);
        let z = zak(&l, &s).unwrap();
        prop_assert!(inverse_zak(&z).max_abs_diff(&s) < 1e-12);
        prop_assert!((z.norm_sqr() - s.norm_sqr()).abs() < 1e-10 * s.norm_sqr().max(1.0));
    }

    #[test]
    fn bound_methods_agree((f, i, j, v) in case()) {
        let (g, l, gm, s) = setup(&f, i, j, &v);
        prop_assume!(s.norm_sqr() > 1e-6);
        let sys = GaborSystem::new(s, l, gm).unwrap();
        let o = oracle_frame_bounds(&g, sys.window().values(), sys.lambda(), sys.gamma(), sys.weights(), 1e-9).unwrap();
        for b in [dual_gramian_bounds(&sys).bounds, zz_bounds(&sys).bounds, frequency_side_bounds(&sys).bounds] {
            prop_assert!(b.deviation(&o) <= 1e-9, "{:?} vs {:?}", b, o);
        }
        // Bessel duality: the top of the spectrum always matches.
        let gram = hermitian_eigenvalues(&adjoint_system(&sys).gram()).unwrap();
        prop_assert!((gram[0] - o.b_opt).abs() <= 1e-9 * o.b_opt.max(1.0));
        if sys.lambda().order() * sys.gamma().order() >= g.order() {
            let r = FrameBounds::from_spectrum(&gram, 1e-9);
            prop_assert!(r.deviation(&o) <= 1e-9);
        }
    }

    #[test]
    fn canonical_dual_is_dual((f, i, j, v) in case()) {
        let (_, l, gm, s) = setup(&f, i, j, &v);
        prop_assume!(s.norm_sqr() > 1e-6);
        let sys = GaborSystem::new(s, l, gm).unwrap();
        let b = dual_gramian_bounds(&sys).bounds;
        prop_assume!(b.is_frame && b.a_opt > 1e-3 * b.b_opt);
        let h = canonical_dual(&sys).unwrap();
        let r = verify_dual_pair(sys.window(), &h, sys.lambda(), sys.gamma(), sys.weights()).unwrap();
        prop_assert!(r.is_dual(1e-9), "{:?}", r);
        prop_assert!(r.sides_agree(1e-9));
    }
}
