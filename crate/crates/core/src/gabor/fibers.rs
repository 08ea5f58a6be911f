//! Frame bounds from Zak-domain fibers.
//!
//! Fix a translation subgroup `T` and a modulation subgroup `M` acting on a
//! base group. With `P = M^perp` (the Zak subgroup), `N = T ∩ P`,
//! `p = |P/N|` and `q = |T/N|`, every pair `(x, w)` with `x` in a
//! transversal of `P` and `w` a character of `P` carries the `q x p` matrix
//!
//! ```text
//! Phi(x, w)[k][j] = Z_P g(x + kappa_k, w + chi_j)
//! ```
//!
//! where `kappa_k` runs over `T/N` and `chi_j` over the characters of `P`
//! trivial on `N`. The frame operator is unitarily equivalent to the direct
//! sum of `scale * Phi^* Phi`, so its extreme eigenvalues are read off the
//! fibers. The time side uses `(G, g, Lambda, Gamma)`, the frequency side
//! `(Ghat, g^, Gamma, Lambda)`.

use num_complex::Complex64;

use super::GaborSystem;
use crate::group::{to_f64, Subgroup};
use crate::numerics::{hermitian_eigenvalues, singular_values, DenseMatrix, FrameBounds};
use crate::transforms::{coset_reps, fourier, zak_at};

/// Per-fiber spectra plus their global extremes.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralField {
    /// `(x, w)` labels, both as element indices.
    pub fibers: Vec<(usize, usize)>,
    /// Descending, one list per fiber.
    pub values: Vec<Vec<f64>>,
    /// Minimum over fibers of the smallest value.
    pub min: f64,
    /// Maximum over fibers of the largest value.
    pub max: f64,
}

impl SpectralField {
    fn from_lists(fibers: Vec<(usize, usize)>, values: Vec<Vec<f64>>) -> Self {
        let min = values
            .iter()
            .filter_map(|v| v.last().copied())
            .fold(f64::INFINITY, f64::min);
        let max = values
            .iter()
            .filter_map(|v| v.first().copied())
            .fold(f64::NEG_INFINITY, f64::max);
        Self { fibers, values, min, max }
    }

    pub fn len(&self) -> usize {
        self.fibers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fibers.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiberBounds {
    pub field: SpectralField,
    pub bounds: FrameBounds,
    pub p: usize,
    pub q: usize,
}

struct FiberSetup {
    zak_subgroup: Subgroup,
    xs: Vec<usize>,
    omegas: Vec<usize>,
    chis: Vec<usize>,
    kappas: Vec<usize>,
    scale: f64,
}

impl FiberSetup {
    fn new(translations: &Subgroup, modulations: &Subgroup, c_t: f64, rho: f64) -> Self {
        let zak_subgroup = modulations.annihilator();
        let meet = translations
            .intersect(&zak_subgroup)
            .expect("subgroups share a parent");
        let chis = coset_reps(&meet.annihilator(), modulations);
        let kappas = coset_reps(translations, &meet);
        let p = chis.len();
        Self {
            xs: zak_subgroup.transversal().reps().to_vec(),
            omegas: modulations.transversal().reps().to_vec(),
            zak_subgroup,
            chis,
            kappas,
            scale: c_t * rho / p as f64,
        }
    }

    fn p(&self) -> usize {
        self.chis.len()
    }

    fn q(&self) -> usize {
        self.kappas.len()
    }

    /// Calls `f` with every fiber label and its `q x p` Zibulski-Zeevi matrix.
    fn for_each(&self, window: &[Complex64], mut f: impl FnMut((usize, usize), DenseMatrix)) {
        let grp = self.zak_subgroup.parent();
        for &x in &self.xs {
            for &w in &self.omegas {
                let phi = DenseMatrix::from_fn(self.q(), self.p(), |k, j| {
                    zak_at(
                        &self.zak_subgroup,
                        window,
                        grp.add(x, self.kappas[k]),
                        grp.add(w, self.chis[j]),
                    )
                });
                f((x, w), phi);
            }
        }
    }

    fn gramian(&self, window: &[Complex64], tol: f64) -> FiberBounds {
        let mut fibers = Vec::new();
        let mut values = Vec::new();
        self.for_each(window, |label, phi| {
            let g = phi.adjoint().matmul(&phi).scaled(self.scale);
            fibers.push(label);
            values.push(hermitian_eigenvalues(&g).expect("Gram matrices are Hermitian"));
        });
        self.finish(fibers, values, tol)
    }

    fn zz(&self, window: &[Complex64], tol: f64) -> FiberBounds {
        let p = self.p();
        let mut fibers = Vec::new();
        let mut values = Vec::new();
        self.for_each(window, |label, phi| {
            let mut v: Vec<f64> = singular_values(&phi)
                .into_iter()
                .map(|s| self.scale * s * s)
                .collect();
            // q < p leaves p - q zero eigenvalues in the dual Gramian.
            v.resize(p, 0.0);
            fibers.push(label);
            values.push(v);
        });
        self.finish(fibers, values, tol)
    }

    fn finish(&self, fibers: Vec<(usize, usize)>, values: Vec<Vec<f64>>, tol: f64) -> FiberBounds {
        let field = SpectralField::from_lists(fibers, values);
        let bounds = FrameBounds::from_extremes(field.min, field.max, tol);
        FiberBounds {
            field,
            bounds,
            p: self.p(),
            q: self.q(),
        }
    }
}

fn time_setup(sys: &GaborSystem) -> FiberSetup {
    let w = sys.weights();
    let rho = to_f64(w.c_gamma) * to_f64(w.c_g) * sys.gamma().order() as f64;
    FiberSetup::new(sys.lambda(), sys.gamma(), to_f64(w.c_lambda), rho)
}

/// Per-fiber `p x p` dual Gramian eigenvalues and the optimal frame bounds.
pub fn dual_gramian_bounds(sys: &GaborSystem) -> FiberBounds {
    time_setup(sys).gramian(sys.window().values(), sys.tolerance())
}

/// Per-fiber scaled squared singular values of the `q x p` Zibulski-Zeevi
/// matrices (padded with zeros to length `p`) and the optimal frame bounds.
pub fn zz_bounds(sys: &GaborSystem) -> FiberBounds {
    time_setup(sys).zz(sys.window().values(), sys.tolerance())
}

/// The same computation on the Fourier side: `g^` translated by `Gamma` and
/// modulated by `Lambda`, Zak transform over `Lambda^perp`.
pub fn frequency_side_bounds(sys: &GaborSystem) -> FiberBounds {
    let w = sys.weights();
    let ghat = fourier(sys.window(), w).expect("weights match the window");
    let rho = to_f64(w.c_lambda) * to_f64(w.c_ghat) * sys.lambda().order() as f64;
    FiberSetup::new(sys.gamma(), sys.lambda(), to_f64(w.c_gamma), rho)
        .gramian(ghat.values(), sys.tolerance())
}
