//! Building systems from scenarios and running the requested checks.

use std::time::Instant;

use gaborlab_core::gabor::{
    bessel_estimate, build_parseval_bspline, calderon_bounds, canonical_dual, critical_density_check,
    dual_gramian_bounds, duality_report, figa_residual, frequency_side_bounds, janssen_operator,
    walnut_matrix, wexler_raz_residual, zz_bounds, DualityReport, FiberBounds, GaborSystem,
};
use gaborlab_core::group::{FiniteAbelianGroup, GroupElement, MeasureWeights, Subgroup, DEFAULT_MAX_ORDER};
use gaborlab_core::numerics::FrameBounds;
use gaborlab_core::oracle::oracle_frame_matrix;
use gaborlab_core::rng::SplitMix64;
use gaborlab_core::transforms::Signal;
use gaborlab_core::Complex64;

use crate::config::{CheckName, ConfigError, ScenarioConfig, WindowSpec};
use crate::report::{
    BoundsEntry, BoundsTable, CheckResult, FiberExtremes, FieldSummary, GroupSummary, ReportDocument,
    SpectralFields, Status, Weights, SCHEMA_VERSION,
};

/// Environment variable that overrides every other order cap.
pub const MAX_ORDER_ENV: &str = "GABORLAB_MAX_ORDER";

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Takes precedence over `max_order` in the scenario.
    pub max_order_override: Option<usize>,
    pub dump_fibers: bool,
    pub timing: bool,
}

/// Reads [`MAX_ORDER_ENV`], rejecting values that are not positive integers.
pub fn max_order_from_env() -> Result<Option<usize>, ConfigError> {
    match std::env::var(MAX_ORDER_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(ConfigError::new(MAX_ORDER_ENV, format!("{v:?} is not a positive integer"))),
        },
        Err(_) => Ok(None),
    }
}

pub struct Scenario {
    pub system: GaborSystem,
    /// Second window for the mixed-operator checks, if the scenario names one.
    pub dual: Option<Signal>,
}

fn subgroup(g: &FiniteAbelianGroup, path: &str, gens: &[Vec<usize>]) -> Result<Subgroup, ConfigError> {
    let els: Vec<GroupElement> = gens.iter().map(|c| GroupElement::new(c.clone())).collect();
    Subgroup::from_generators(g, &els).map_err(|e| ConfigError::new(path, e.to_string()))
}

pub fn build_window(
    path: &str,
    spec: &WindowSpec,
    g: &FiniteAbelianGroup,
    lambda: &Subgroup,
) -> Result<Signal, ConfigError> {
    let err = |suffix: &str, e: gaborlab_core::Error| ConfigError::new(format!("{path}{suffix}"), e.to_string());
    match spec {
        WindowSpec::Explicit { re, im } => {
            let values = match im {
                Some(im) => re.iter().zip(im).map(|(&a, &b)| Complex64::new(a, b)).collect(),
                None => re.iter().map(|&a| Complex64::new(a, 0.0)).collect(),
            };
            Signal::new(g, values).map_err(|e| err(".values", e))
        }
        WindowSpec::Delta { at } => {
            let idx = match at {
                Some(c) => g.index_of(&GroupElement::new(c.clone())).map_err(|e| err(".at", e))?,
                None => g.zero(),
            };
            Ok(Signal::delta(g, idx))
        }
        WindowSpec::Constant { value } => Ok(Signal::constant(g, Complex64::new(*value, 0.0))),
        WindowSpec::Random { seed } => {
            let mut rng = SplitMix64::new(*seed);
            Ok(Signal::from_fn(g, |_| rng.next_complex()))
        }
        WindowSpec::Bspline { order, factors } => {
            build_parseval_bspline(g, lambda, *order, factors).map_err(|e| err("", e))
        }
    }
}

pub fn build(config: &ScenarioConfig, max_order_override: Option<usize>) -> Result<Scenario, ConfigError> {
    config.validate()?;
    let cap = max_order_override.or(config.max_order).unwrap_or(DEFAULT_MAX_ORDER);
    let g = FiniteAbelianGroup::with_max_order(&config.group, cap).map_err(|e| ConfigError::new("group", e.to_string()))?;
    let lambda = subgroup(&g, "lambda.generators", &config.lambda.generators)?;
    let gamma = subgroup(&g, "gamma.generators", &config.gamma.generators)?;
    let window = build_window("window", &config.window, &g, &lambda)?;
    let dual = match &config.dual_window {
        Some(spec) => Some(build_window("dual_window", spec, &g, &lambda)?),
        None => None,
    };
    let system = GaborSystem::new(window, lambda, gamma)
        .map_err(|e| ConfigError::new("window", e.to_string()))?
        .with_tolerance(config.tolerance);
    Ok(Scenario { system, dual })
}

fn entry(b: &FrameBounds) -> BoundsEntry {
    BoundsEntry {
        a: b.a_opt,
        b: b.b_opt,
        is_frame: b.is_frame,
        is_parseval: b.is_parseval,
    }
}

fn summary(f: &FiberBounds, dump: bool) -> FieldSummary {
    let fibers = dump.then(|| {
        f.field
            .fibers
            .iter()
            .zip(&f.field.values)
            .map(|(&(x, omega), v)| FiberExtremes {
                x,
                omega,
                min: v.last().copied().unwrap_or(0.0),
                max: v.first().copied().unwrap_or(0.0),
            })
            .collect()
    });
    FieldSummary {
        p: f.p,
        q: f.q,
        fiber_count: f.field.len(),
        min: f.field.min,
        max: f.field.max,
        fibers,
    }
}

fn weights(w: &MeasureWeights) -> Weights {
    Weights {
        c_g: w.c_g.to_string(),
        c_ghat: w.c_ghat.to_string(),
        c_lambda: w.c_lambda.to_string(),
        c_gamma: w.c_gamma.to_string(),
        w_g_mod_lambda: w.w_g_mod_lambda.to_string(),
        w_ghat_mod_gamma: w.w_ghat_mod_gamma.to_string(),
        w_k: w.w_k.to_string(),
        p: w.p,
        q: w.q,
    }
}

struct Outcome {
    status: Status,
    residual: Option<f64>,
    threshold: Option<f64>,
    detail: String,
}

fn judged(residual: f64, threshold: f64, detail: String) -> Outcome {
    // NaN residuals fail.
    let status = if residual <= threshold { Status::Pass } else { Status::Fail };
    Outcome {
        status,
        residual: Some(residual),
        threshold: Some(threshold),
        detail,
    }
}

fn skipped(detail: &str) -> Outcome {
    Outcome {
        status: Status::Skip,
        residual: None,
        threshold: None,
        detail: detail.into(),
    }
}

/// The pieces every check draws on, computed once.
struct Context<'a> {
    sys: &'a GaborSystem,
    report: &'a DualityReport,
    /// Second window and where it came from.
    h: Signal,
    h_source: &'static str,
    tol: f64,
    /// `max(1, B)`.
    scale: f64,
}

fn run_check(name: CheckName, cx: &Context) -> Result<Outcome, gaborlab_core::Error> {
    let (sys, rep, tol) = (cx.sys, cx.report, cx.tol);
    let (g, lam, gam, w) = (sys.window(), sys.lambda(), sys.gamma(), sys.weights());
    let h = &cx.h;
    Ok(match name {
        CheckName::Bounds => judged(
            rep.bound_agreement,
            tol,
            format!(
                "A = {:.6e}, B = {:.6e}, frame = {}",
                rep.oracle.a_opt, rep.oracle.b_opt, rep.oracle.is_frame
            ),
        ),
        CheckName::Zz => judged(
            rep.zz.deviation(&rep.oracle),
            tol,
            "Zibulski-Zeevi singular values vs oracle".into(),
        ),
        CheckName::Walnut | CheckName::Janssen => {
            let reference = oracle_frame_matrix(sys.group(), g.values(), h.values(), lam, gam, w)?;
            let threshold = tol * reference.operator_norm().max(1.0);
            if name == CheckName::Walnut {
                let gap = walnut_matrix(g, h, lam, gam, w)?.sub(&reference).operator_norm();
                judged(gap, threshold, format!("operator-norm gap to oracle, h = {}", cx.h_source))
            } else {
                let jan = janssen_operator(g, h, lam, gam, w)?;
                let gap = jan.matrix.sub(&reference).operator_norm();
                judged(
                    gap,
                    threshold,
                    format!("operator-norm gap to oracle, condition A sum {:.6e}, h = {}", jan.condition_a, cx.h_source),
                )
            }
        }
        CheckName::Figa => {
            let grp = sys.group();
            let ramp = Signal::from_fn(grp, |x| Complex64::new(1.0 + x as f64, (grp.order() - x) as f64));
            let mut worst: f64 = 0.0;
            for x in 0..grp.order() {
                worst = worst.max(figa_residual(&Signal::delta(grp, x), &ramp, g, h, lam, gam, w)?);
            }
            let rel = worst / (g.norm() * h.norm() * ramp.norm()).max(1.0);
            judged(rel, tol, format!("basis probes against a ramp, h = {}", cx.h_source))
        }
        CheckName::WexlerRaz => {
            if cx.h_source == "window" {
                skipped("no dual window given and the system is not a frame")
            } else {
                let r = wexler_raz_residual(g, h, lam, gam, w)?;
                judged(r, tol, format!("biorthogonality of the adjoint systems, h = {}", cx.h_source))
            }
        }
        CheckName::Duality => {
            let residual = rep.bound_agreement.max(rep.bessel_duality_residual / cx.scale);
            let mut o = judged(
                residual,
                tol,
                format!(
                    "Riesz bounds of adjoint A = {:.6e}, B = {:.6e}; tight = {}, adjoint orthogonal = {}",
                    rep.adjoint_riesz.a_opt, rep.adjoint_riesz.b_opt, rep.is_tight, rep.adjoint_orthogonal
                ),
            );
            if !rep.consistent {
                o.status = Status::Fail;
            }
            o
        }
        CheckName::Calderon => {
            if !rep.oracle.is_frame {
                skipped("not a frame")
            } else {
                let c = calderon_bounds(sys);
                let (a, b) = (rep.oracle.a_opt, rep.oracle.b_opt);
                let violation = [a - c.time.0, c.time.1 - b, a - c.frequency.0, c.frequency.1 - b]
                    .into_iter()
                    .fold(0.0, f64::max);
                judged(
                    violation,
                    tol * cx.scale,
                    format!(
                        "time [{:.6e}, {:.6e}], frequency [{:.6e}, {:.6e}]",
                        c.time.0, c.time.1, c.frequency.0, c.frequency.1
                    ),
                )
            }
        }
        CheckName::Critical => {
            if !sys.is_critical() {
                skipped("Lambda is not Gamma^perp")
            } else {
                let c = critical_density_check(sys)?;
                let mut o = judged(
                    c.frame.deviation(&c.riesz),
                    tol,
                    format!(
                        "frame = {}, Riesz basis = {}, Zak zeros on {} of {} fibers",
                        c.frame.is_frame, c.is_riesz_basis, c.zero_fibers, c.fiber_count
                    ),
                );
                if !c.consistent {
                    o.status = Status::Fail;
                }
                o
            }
        }
        CheckName::BesselEstimate => {
            let m = bessel_estimate(g, lam, gam, w)?;
            let b = rep.oracle.b_opt;
            judged(
                (b - m).max(0.0) / cx.scale,
                tol,
                format!("estimate M = {m:.6e} against B = {b:.6e}"),
            )
        }
    })
}

fn failed_check(name: CheckName, detail: String) -> CheckResult {
    CheckResult {
        name: name.as_str().into(),
        status: Status::Fail,
        residual: None,
        threshold: None,
        detail,
    }
}

/// Builds the system and runs every requested check.
///
/// Only scenario errors are returned; numeric failures inside a check are
/// recorded as failing checks.
pub fn run_scenario(config: &ScenarioConfig, opts: &RunOptions) -> Result<ReportDocument, ConfigError> {
    let start = Instant::now();
    let scenario = build(config, opts.max_order_override)?;
    let sys = &scenario.system;

    let group = GroupSummary {
        order: sys.group().order(),
        lambda_order: sys.lambda().order(),
        gamma_order: sys.gamma().order(),
        critical: sys.is_critical(),
        weights: weights(sys.weights()),
    };
    let spectral_fields = Some(SpectralFields {
        dual_gramian: summary(&dual_gramian_bounds(sys), opts.dump_fibers),
        zz: summary(&zz_bounds(sys), opts.dump_fibers),
        frequency: summary(&frequency_side_bounds(sys), opts.dump_fibers),
    });

    let (bounds, checks) = match duality_report(sys) {
        Ok(rep) => {
            let bounds = BoundsTable {
                oracle: entry(&rep.oracle),
                dual_gramian: entry(&rep.dual_gramian),
                zz: entry(&rep.zz),
                frequency: entry(&rep.frequency),
                adjoint_riesz: entry(&rep.adjoint_riesz),
                max_deviation: rep.bound_agreement,
            };
            let (h, h_source) = match (&scenario.dual, rep.uses_canonical_dual) {
                (Some(d), _) => (Ok(d.clone()), "dual_window"),
                (None, true) => (canonical_dual(sys), "canonical dual"),
                (None, false) => (Ok(sys.window().clone()), "window"),
            };
            let checks: Vec<CheckResult> = match h {
                Ok(h) => {
                    let cx = Context {
                        sys,
                        report: &rep,
                        h,
                        h_source,
                        tol: config.tolerance,
                        scale: rep.oracle.b_opt.max(1.0),
                    };
                    config
                        .checks
                        .iter()
                        .map(|&name| match run_check(name, &cx) {
                            Ok(o) => CheckResult {
                                name: name.as_str().into(),
                                status: o.status,
                                residual: o.residual,
                                threshold: o.threshold,
                                detail: o.detail,
                            },
                            Err(e) => failed_check(name, e.to_string()),
                        })
                        .collect()
                }
                Err(e) => config
                    .checks
                    .iter()
                    .map(|&n| failed_check(n, format!("canonical dual: {e}")))
                    .collect(),
            };
            (Some(bounds), checks)
        }
        Err(e) => (
            None,
            config
                .checks
                .iter()
                .map(|&n| failed_check(n, format!("bound computation failed: {e}")))
                .collect(),
        ),
    };

    let status = if checks.iter().any(|c: &CheckResult| c.status == Status::Fail) {
        Status::Fail
    } else {
        Status::Pass
    };
    Ok(ReportDocument {
        schema_version: SCHEMA_VERSION.into(),
        scenario: config.clone(),
        group,
        bounds,
        spectral_fields,
        checks,
        status,
        timing_ms: opts.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    })
}

/// `h = S^{-1} g` for the scenario's system.
pub fn scenario_dual(config: &ScenarioConfig, max_order_override: Option<usize>) -> Result<Result<Signal, gaborlab_core::Error>, ConfigError> {
    let scenario = build(config, max_order_override)?;
    Ok(canonical_dual(&scenario.system))
}
