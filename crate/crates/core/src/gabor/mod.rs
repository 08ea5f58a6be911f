//! Gabor systems `{E_gamma T_lambda g}` over subgroups `Lambda` of `G` and
//! `Gamma` of the dual.
//!
//! Frame operators are available in three forms (direct sum, Walnut,
//! Janssen); frame bounds come from Zak-domain fibers on the time side
//! (dual Gramian and Zibulski-Zeevi matrices) and the frequency side, and
//! from the adjoint system through the duality principle.

mod adjoint;
mod bspline;
mod estimates;
mod fibers;
mod operators;

use crate::error::{invalid, Result};
use crate::group::{derive_weights, to_f64, FiniteAbelianGroup, MeasureWeights, Subgroup};
use crate::numerics::DEFAULT_TOLERANCE;
use crate::transforms::Signal;

pub use crate::numerics::FrameBounds;
pub use adjoint::{
    adjoint_system, critical_density_check, duality_report, riesz_bounds, AdjointSystem,
    BiorthogonalCheck, CriticalDensityReport, DualityReport, RieszReport,
};
pub use bspline::build_parseval_bspline;
pub use estimates::{
    bessel_estimate, calderon_bounds, gamma_energy_identity_residual, CalderonBounds,
};
pub use fibers::{
    dual_gramian_bounds, frequency_side_bounds, zz_bounds, FiberBounds, SpectralField,
};
pub use operators::{
    canonical_dual, coefficients, commutation_residual, figa_residual, frame_operator_apply,
    frame_operator_matrix, janssen_coefficients, janssen_operator, mixed_frame_operator_apply,
    s_alpha, shift_commutator_norm, t_beta, verify_dual_pair, walnut_apply, walnut_matrix,
    wexler_raz_residual, DualPairResiduals, JanssenOperator,
};

/// Window plus lattice data.
#[derive(Clone, Debug)]
pub struct GaborSystem {
    window: Signal,
    lambda: Subgroup,
    gamma: Subgroup,
    lambda_perp: Subgroup,
    gamma_perp: Subgroup,
    weights: MeasureWeights,
    tolerance: f64,
}

impl GaborSystem {
    pub fn new(window: Signal, lambda: Subgroup, gamma: Subgroup) -> Result<Self> {
        let weights = derive_weights(window.group(), &lambda, &gamma)?;
        if window.norm_sqr() == 0.0 {
            return invalid("Gabor window must be nonzero");
        }
        Ok(Self {
            lambda_perp: lambda.annihilator(),
            gamma_perp: gamma.annihilator(),
            window,
            lambda,
            gamma,
            weights,
            tolerance: DEFAULT_TOLERANCE,
        })
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    /// Same lattice, different window.
    pub fn with_window(&self, window: Signal) -> Result<Self> {
        if window.group() != self.group() {
            return invalid("replacement window lives on a different group");
        }
        if window.norm_sqr() == 0.0 {
            return invalid("Gabor window must be nonzero");
        }
        Ok(Self {
            window,
            ..self.clone()
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        self.window.group()
    }

    pub fn window(&self) -> &Signal {
        &self.window
    }

    pub fn lambda(&self) -> &Subgroup {
        &self.lambda
    }

    pub fn gamma(&self) -> &Subgroup {
        &self.gamma
    }

    pub fn lambda_perp(&self) -> &Subgroup {
        &self.lambda_perp
    }

    pub fn gamma_perp(&self) -> &Subgroup {
        &self.gamma_perp
    }

    pub fn weights(&self) -> &MeasureWeights {
        &self.weights
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// `Lambda = Gamma^perp`.
    pub fn is_critical(&self) -> bool {
        self.lambda == self.gamma_perp
    }

    fn same_lattice(&self, other: &GaborSystem) -> bool {
        self.lambda == other.lambda && self.gamma == other.gamma
    }
}

/// Shared validation for the functions that take raw lattice data.
pub(crate) fn check_lattice(
    signals: &[&Signal],
    lambda: &Subgroup,
    gamma: &Subgroup,
    weights: &MeasureWeights,
) -> Result<()> {
    let g = signals[0].group();
    if signals.iter().any(|s| s.group() != g) {
        return invalid("signals live on different groups");
    }
    if lambda.parent() != g || gamma.parent() != g {
        return invalid(format!("subgroups must live in {g}"));
    }
    let n = g.order() as f64;
    let consistent = weights.group_order() == g.order()
        && to_f64(weights.c_lambda) == n / lambda.order() as f64
        && to_f64(weights.c_gamma) == 1.0 / gamma.order() as f64;
    if !consistent {
        return invalid("weights do not belong to this lattice");
    }
    Ok(())
}
