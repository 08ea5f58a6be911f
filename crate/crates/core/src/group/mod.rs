//! Finite abelian groups `Z_{n_1} x ... x Z_{n_k}` and their duals.
//!
//! Elements are addressed by their canonical index: the mixed-radix number
//! whose digits are the coordinates, first coordinate most significant. This
//! makes index order coincide with lexicographic tuple order.
//!
//! A finite abelian group is isomorphic to its dual. Characters are therefore
//! represented in the same coordinate space, with the pairing
//! `<w, x> = exp(2 pi i sum_j w_j x_j / n_j)`.

mod measure;
mod subgroup;

pub use measure::{derive_weights, to_f64, MeasureWeights, Rational};
pub use subgroup::{all_subgroups, Subgroup, Transversal};

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

/// Default cap on the group order.
pub const DEFAULT_MAX_ORDER: usize = 4096;

#[derive(Clone)]
pub struct FiniteAbelianGroup {
    inner: Arc<GroupData>,
}

struct GroupData {
    factors: Vec<usize>,
    order: usize,
    /// lcm of the factors; every pairing phase is a multiple of `1/exponent`.
    exponent: usize,
    /// `exponent / n_j` for each factor.
    phase_scale: Vec<usize>,
    strides: Vec<usize>,
    /// Row-major `order x rank` coordinate table.
    coords: Vec<usize>,
    roots: Vec<Complex64>,
}

/// Element of a group (or of its dual) given by coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub coords: Vec<usize>,
}

/// A character of `G`, written in the coordinates of the dual group.
pub type Character = GroupElement;

impl GroupElement {
    pub fn new(coords: Vec<usize>) -> Self {
        Self { coords }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `exp(2 pi i t / n)` with exact values on the quarter turns.
fn unit_root(t: usize, n: usize) -> Complex64 {
    let t = t % n;
    let quarter = 4 * t / n;
    if quarter * n == 4 * t {
        return match quarter {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let angle = 2.0 * std::f64::consts::PI * (t as f64) / (n as f64);
    Complex64::new(angle.cos(), angle.sin())
}

impl FiniteAbelianGroup {
    /// Builds `Z_{n_1} x ... x Z_{n_k}` with the default order cap.
    pub fn new(invariant_factors: &[usize]) -> Result<Self> {
        Self::with_max_order(invariant_factors, DEFAULT_MAX_ORDER)
    }

    pub fn with_max_order(invariant_factors: &[usize], max_order: usize) -> Result<Self> {
        if invariant_factors.is_empty() {
            return invalid("a group needs at least one invariant factor");
        }
        if let Some(bad) = invariant_factors.iter().find(|&&n| n == 0) {
            return invalid(format!("invariant factor {bad} must be >= 1"));
        }
        let mut order: usize = 1;
        for &n in invariant_factors {
            order = order
                .checked_mul(n)
                .filter(|&o| o <= max_order)
                .ok_or_else(|| {
                    Error::ResourceLimit(format!(
                        "group order of {invariant_factors:?} exceeds the cap {max_order}"
                    ))
                })?;
        }
        let exponent = invariant_factors
            .iter()
            .fold(1usize, |acc, &n| acc / gcd(acc, n) * n);
        let rank = invariant_factors.len();
        let mut strides = vec![1usize; rank];
        for j in (0..rank.saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * invariant_factors[j + 1];
        }
        let mut coords = Vec::with_capacity(order * rank);
        for idx in 0..order {
            for j in 0..rank {
                coords.push((idx / strides[j]) % invariant_factors[j]);
            }
        }
        let roots = (0..exponent).map(|t| unit_root(t, exponent)).collect();
        Ok(Self {
            inner: Arc::new(GroupData {
                factors: invariant_factors.to_vec(),
                order,
                exponent,
                phase_scale: invariant_factors.iter().map(|&n| exponent / n).collect(),
                strides,
                coords,
                roots,
            }),
        })
    }

    pub fn factors(&self) -> &[usize] {
        &self.inner.factors
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn rank(&self) -> usize {
        self.inner.factors.len()
    }

    /// Least common multiple of the invariant factors.
    pub fn exponent(&self) -> usize {
        self.inner.exponent
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn coords(&self, idx: usize) -> &[usize] {
        let k = self.rank();
        &self.inner.coords[idx * k..(idx + 1) * k]
    }

    pub fn element(&self, idx: usize) -> GroupElement {
        GroupElement::new(self.coords(idx).to_vec())
    }

    /// Validates `el` and returns its canonical index.
    pub fn index_of(&self, el: &GroupElement) -> Result<usize> {
        if el.coords.len() != self.rank() {
            return invalid(format!(
                "element {el} has {} coordinates, group {self} has rank {}",
                el.coords.len(),
                self.rank()
            ));
        }
        let mut idx = 0;
        for (j, (&c, &n)) in el.coords.iter().zip(&self.inner.factors).enumerate() {
            if c >= n {
                return invalid(format!("coordinate {j} of {el} is not below {n}"));
            }
            idx += c * self.inner.strides[j];
        }
        Ok(idx)
    }

    /// Index of the element with the given (unreduced) integer coordinates.
    pub fn index_of_reduced(&self, coords: &[i64]) -> usize {
        coords
            .iter()
            .zip(&self.inner.factors)
            .zip(&self.inner.strides)
            .map(|((&c, &n), &s)| (c.rem_euclid(n as i64) as usize) * s)
            .sum()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.coords(a), self.coords(b));
        let mut idx = 0;
        for j in 0..self.rank() {
            let n = self.inner.factors[j];
            let s = ca[j] + cb[j];
            idx += if s >= n { s - n } else { s } * self.inner.strides[j];
        }
        idx
    }

    pub fn neg(&self, a: usize) -> usize {
        let mut idx = 0;
        for (j, &c) in self.coords(a).iter().enumerate() {
            let n = self.inner.factors[j];
            idx += ((n - c) % n) * self.inner.strides[j];
        }
        idx
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.coords(a), self.coords(b));
        let mut idx = 0;
        for j in 0..self.rank() {
            let n = self.inner.factors[j];
            idx += ((ca[j] + n - cb[j]) % n) * self.inner.strides[j];
        }
        idx
    }

    /// `k * a` in additive notation.
    pub fn scale(&self, a: usize, k: usize) -> usize {
        let mut idx = 0;
        for (j, &c) in self.coords(a).iter().enumerate() {
            let n = self.inner.factors[j];
            idx += ((c * (k % n)) % n) * self.inner.strides[j];
        }
        idx
    }

    /// Integer `t` with `<w, x> = exp(2 pi i t / exponent)`.
    pub fn phase(&self, w: usize, x: usize) -> usize {
        let (cw, cx) = (self.coords(w), self.coords(x));
        let e = self.inner.exponent;
        let mut t = 0;
        for j in 0..self.rank() {
            let n = self.inner.factors[j];
            t = (t + ((cw[j] * cx[j]) % n) * self.inner.phase_scale[j]) % e;
        }
        t
    }

    /// Pairing of a character with an element, both given by index.
    pub fn pair_idx(&self, w: usize, x: usize) -> Complex64 {
        self.inner.roots[self.phase(w, x)]
    }

    /// `exp(2 pi i t / exponent)`.
    pub fn root(&self, t: usize) -> Complex64 {
        self.inner.roots[t % self.inner.exponent]
    }

    /// Pairing `<w, x>` for validated coordinates.
    pub fn pair(&self, w: &Character, x: &GroupElement) -> Result<Complex64> {
        let wi = self.index_of(w)?;
        let xi = self.index_of(x)?;
        Ok(self.pair_idx(wi, xi))
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn same_as(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.factors() == other.factors()
    }
}

impl PartialEq for FiniteAbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for FiniteAbelianGroup {}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteAbelianGroup({self})")
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.factors().iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "Z_{n}")?;
        }
        Ok(())
    }
}

/// Convenience: `make_group` under the name used in reports.
pub fn make_group(invariant_factors: &[usize]) -> Result<FiniteAbelianGroup> {
    FiniteAbelianGroup::new(invariant_factors)
}
