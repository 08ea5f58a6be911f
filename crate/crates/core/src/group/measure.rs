use num_rational::Ratio;
use num_traits::ToPrimitive;

use super::{FiniteAbelianGroup, Subgroup};
use crate::error::{invalid, Result};

pub type Rational = Ratio<u64>;

/// Haar weights for every group in the Gabor setting.
///
/// Each weight is the mass of a single point (all groups here are finite).
/// Annihilators carry counting measure; every other weight follows from
/// fixing counting measure on `G` and requiring Plancherel duality and
/// Weil's formula along the chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureWeights {
    pub c_g: Rational,
    pub c_ghat: Rational,
    pub c_lambda: Rational,
    pub c_gamma: Rational,
    pub w_g_mod_lambda: Rational,
    pub w_ghat_mod_gamma: Rational,
    pub c_lambda_perp: Rational,
    pub c_gamma_perp: Rational,
    /// Point mass on a section `K` of `Lambda ∩ Gamma^perp` in `Lambda`.
    pub w_k: Rational,
    /// `|Gamma^perp / (Lambda ∩ Gamma^perp)|`.
    pub p: u64,
    /// `|Lambda / (Lambda ∩ Gamma^perp)|`.
    pub q: u64,
    group_order: u64,
}

impl MeasureWeights {
    pub fn group_order(&self) -> usize {
        self.group_order as usize
    }
}

pub fn to_f64(r: Rational) -> f64 {
    r.to_f64().expect("weights are finite positive rationals")
}

fn count(n: usize) -> Rational {
    Rational::from_integer(n as u64)
}

/// Point mass of the Plancherel-dual measure on a group of order `order`
/// whose dual carries point mass `c`.
fn plancherel_dual(order: usize, c: Rational) -> Rational {
    Rational::from_integer(1) / (c * count(order))
}

/// Subgroup weight fixed by Weil's formula `c_whole = w_quotient * c_sub`.
fn weil_subgroup(c_whole: Rational, w_quotient: Rational) -> Rational {
    c_whole / w_quotient
}

/// Solves the normalization chain for `(G, Lambda, Gamma)`.
pub fn derive_weights(g: &FiniteAbelianGroup, lambda: &Subgroup, gamma: &Subgroup) -> Result<MeasureWeights> {
    if lambda.parent() != g || gamma.parent() != g {
        return invalid(format!(
            "subgroups must live in {g} (and its dual); got {} and {}",
            lambda.parent(),
            gamma.parent()
        ));
    }
    let one = Rational::from_integer(1);
    let n = g.order();

    let c_g = one;
    let c_ghat = plancherel_dual(n, c_g);

    // G/Lambda is dual to Lambda^perp with counting measure.
    let c_lambda_perp = one;
    let w_g_mod_lambda = plancherel_dual(lambda.index(), c_lambda_perp);
    let c_lambda = weil_subgroup(c_g, w_g_mod_lambda);

    // Ghat/Gamma is dual to Gamma^perp with counting measure.
    let c_gamma_perp = one;
    let w_ghat_mod_gamma = plancherel_dual(gamma.index(), c_gamma_perp);
    let c_gamma = weil_subgroup(c_ghat, w_ghat_mod_gamma);

    let gamma_perp = gamma.annihilator();
    let meet = lambda.intersect(&gamma_perp)?;
    let p = (gamma_perp.order() / meet.order()) as u64;
    let q = (lambda.order() / meet.order()) as u64;
    let w_k = c_lambda / Rational::from_integer(p);

    Ok(MeasureWeights {
        c_g,
        c_ghat,
        c_lambda,
        c_gamma,
        w_g_mod_lambda,
        w_ghat_mod_gamma,
        c_lambda_perp,
        c_gamma_perp,
        w_k,
        p,
        q,
        group_order: n as u64,
    })
}
