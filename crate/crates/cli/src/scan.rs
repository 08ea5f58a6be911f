//! Density sweeps over every subgroup pair of one group.
//!
//! CSV columns, one row per pair `(Lambda, Gamma)`:
//!
//! | column | meaning |
//! |---|---|
//! | `lambda`, `gamma` | generator tuples, e.g. `(0,2) (1,0)` |
//! | `lambda_order`, `gamma_order` | subgroup orders |
//! | `p`, `q` | fiber dimensions of the dual Gramian and Zibulski-Zeevi matrices |
//! | `a`, `b` | optimal frame bounds from the dual Gramian fibers |
//! | `frame` | `true` when `a` exceeds the tolerance |

use std::io::Write;

use serde::Serialize;

use gaborlab_core::gabor::{dual_gramian_bounds, GaborSystem};
use gaborlab_core::group::{all_subgroups, FiniteAbelianGroup, Subgroup};
use gaborlab_core::rng::SplitMix64;
use gaborlab_core::transforms::Signal;

use crate::config::ConfigError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub lambda: String,
    pub gamma: String,
    pub lambda_order: usize,
    pub gamma_order: usize,
    pub p: usize,
    pub q: usize,
    pub a: f64,
    pub b: f64,
    pub frame: bool,
}

fn label(h: &Subgroup) -> String {
    if h.generators().is_empty() {
        return "0".into();
    }
    h.generator_elements()
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// All pairs among the first `max_subgroups` subgroups (by order), with the
/// random window drawn from `seed`.
pub fn scan(
    factors: &[usize],
    max_subgroups: usize,
    seed: u64,
    max_order: usize,
) -> Result<Vec<ScanRow>, ConfigError> {
    let g = FiniteAbelianGroup::with_max_order(factors, max_order).map_err(|e| ConfigError::new("group", e.to_string()))?;
    let mut rng = SplitMix64::new(seed);
    let window = Signal::from_fn(&g, |_| rng.next_complex());
    let subs = all_subgroups(&g, max_subgroups);
    let mut rows = Vec::with_capacity(subs.len() * subs.len());
    for l in &subs {
        for gm in &subs {
            let sys = GaborSystem::new(window.clone(), l.clone(), gm.clone())
                .expect("random windows are nonzero and subgroups share the group");
            let d = dual_gramian_bounds(&sys);
            rows.push(ScanRow {
                lambda: label(l),
                gamma: label(gm),
                lambda_order: l.order(),
                gamma_order: gm.order(),
                p: d.p,
                q: d.q,
                a: d.bounds.a_opt,
                b: d.bounds.b_opt,
                frame: d.bounds.is_frame,
            });
        }
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[ScanRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z8_rows() {
        let rows = scan(&[8], 100, 0, 4096).unwrap();
        assert_eq!(rows.len(), 16);
        for r in &rows {
            // A frame needs |Lambda| |Gamma| >= |G|.
            if r.lambda_order * r.gamma_order < 8 {
                assert!(!r.frame);
            }
            assert!(r.a <= r.b);
        }
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("lambda,gamma,lambda_order,gamma_order,p,q,a,b,frame\n"));
        assert_eq!(text.lines().count(), 17);
    }

    #[test]
    fn cap_and_limits() {
        assert_eq!(scan(&[2, 4], 3, 1, 4096).unwrap().len(), 9);
        assert!(scan(&[64, 64], 2, 0, 1024).is_err());
    }
}
