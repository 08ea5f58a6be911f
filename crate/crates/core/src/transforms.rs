//! Fourier, Zak, fiberization and short-time Fourier transforms.
//!
//! All transforms use the naive summation in canonical index order, so the
//! results are reproducible bit for bit.

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::group::{to_f64, FiniteAbelianGroup, MeasureWeights, Subgroup};
use crate::numerics::DenseMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A complex function on `G` (or on the dual, which shares coordinates).
#[derive(Clone, Debug, PartialEq)]
pub struct Signal {
    group: FiniteAbelianGroup,
    values: Vec<Complex64>,
}

impl Signal {
    pub fn new(group: &FiniteAbelianGroup, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != group.order() {
            return invalid(format!(
                "signal has {} values, group {group} has order {}",
                values.len(),
                group.order()
            ));
        }
        if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return invalid("signal has non-finite values");
        }
        Ok(Self {
            group: group.clone(),
            values,
        })
    }

    pub fn from_fn(group: &FiniteAbelianGroup, f: impl FnMut(usize) -> Complex64) -> Self {
        Self {
            group: group.clone(),
            values: (0..group.order()).map(f).collect(),
        }
    }

    pub fn zeros(group: &FiniteAbelianGroup) -> Self {
        Self::from_fn(group, |_| ZERO)
    }

    pub fn constant(group: &FiniteAbelianGroup, c: Complex64) -> Self {
        Self::from_fn(group, |_| c)
    }

    /// Point mass at the element with index `at`.
    pub fn delta(group: &FiniteAbelianGroup, at: usize) -> Self {
        Self::from_fn(group, |x| if x == at { Complex64::new(1.0, 0.0) } else { ZERO })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `sum_x |f(x)|^2` (counting measure).
    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `sum_x f(x) conj(g(x))` (counting measure).
    pub fn inner(&self, other: &Signal) -> Complex64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    pub fn scaled(&self, s: Complex64) -> Signal {
        Signal::from_fn(&self.group, |x| self.values[x] * s)
    }

    pub fn sub(&self, other: &Signal) -> Signal {
        Signal::from_fn(&self.group, |x| self.values[x] - other.values[x])
    }

    /// `(T_a f)(x) = f(x - a)`.
    pub fn translate(&self, a: usize) -> Signal {
        Signal::from_fn(&self.group, |x| self.values[self.group.sub(x, a)])
    }

    /// `(E_w f)(x) = <w, x> f(x)`.
    pub fn modulate(&self, w: usize) -> Signal {
        Signal::from_fn(&self.group, |x| self.group.pair_idx(w, x) * self.values[x])
    }

    /// `E_w T_a f`.
    pub fn tf_shift(&self, a: usize, w: usize) -> Signal {
        let g = &self.group;
        Signal::from_fn(g, |x| g.pair_idx(w, x) * self.values[g.sub(x, a)])
    }

    pub fn max_abs_diff(&self, other: &Signal) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn same_group(&self, other: &Signal) -> Result<()> {
        if self.group != other.group {
            return invalid(format!(
                "signals live on different groups ({} vs {})",
                self.group, other.group
            ));
        }
        Ok(())
    }
}

fn check_weights(group: &FiniteAbelianGroup, weights: &MeasureWeights) -> Result<()> {
    if weights.group_order() != group.order() {
        return invalid(format!(
            "weights belong to a group of order {}, signal lives on {group}",
            weights.group_order()
        ));
    }
    Ok(())
}

/// `f^(w) = c_G sum_x f(x) conj(<w, x>)`.
pub fn fourier(f: &Signal, weights: &MeasureWeights) -> Result<Signal> {
    check_weights(&f.group, weights)?;
    let g = &f.group;
    let c = to_f64(weights.c_g);
    Ok(Signal::from_fn(g, |w| {
        let s: Complex64 = (0..g.order())
            .map(|x| f.values[x] * g.pair_idx(w, x).conj())
            .sum();
        s * c
    }))
}

/// `f(x) = c_Ghat sum_w f^(w) <w, x>`.
pub fn inverse_fourier(fhat: &Signal, weights: &MeasureWeights) -> Result<Signal> {
    check_weights(&fhat.group, weights)?;
    let g = &fhat.group;
    let c = to_f64(weights.c_ghat);
    Ok(Signal::from_fn(g, |x| {
        let s: Complex64 = (0..g.order())
            .map(|w| fhat.values[w] * g.pair_idx(w, x))
            .sum();
        s * c
    }))
}

/// `Z_H f(y, w) = sum_{h in H} f(y + h) conj(<w, h>)` at arbitrary `y` in `G`
/// and `w` in the dual.
pub fn zak_at(h: &Subgroup, f: &[Complex64], y: usize, w: usize) -> Complex64 {
    let g = h.parent();
    h.elements()
        .iter()
        .map(|&e| f[g.add(y, e)] * g.pair_idx(w, e).conj())
        .sum()
}

/// Zak transform sampled on a transversal of `H` times the characters of `H`.
#[derive(Clone, Debug)]
pub struct ZakArray {
    subgroup: Subgroup,
    /// Transversal of `H` in `G` (row labels).
    points: Vec<usize>,
    /// Transversal of `H^perp` in the dual (column labels).
    characters: Vec<usize>,
    values: DenseMatrix,
}

impl ZakArray {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn characters(&self) -> &[usize] {
        &self.characters
    }

    pub fn values(&self) -> &DenseMatrix {
        &self.values
    }

    /// `Z(points[i], characters[j])`.
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.values[(i, j)]
    }

    /// `(1/|H|) sum |Z|^2`, which equals `sum |f|^2`.
    pub fn norm_sqr(&self) -> f64 {
        self.values.frobenius_norm().powi(2) / self.subgroup.order() as f64
    }
}

pub fn zak(h: &Subgroup, f: &Signal) -> Result<ZakArray> {
    if h.parent() != &f.group {
        return invalid(format!("subgroup of {} used on a signal over {}", h.parent(), f.group));
    }
    let points = h.transversal().reps().to_vec();
    let characters = h.annihilator().transversal().reps().to_vec();
    let values = DenseMatrix::from_fn(points.len(), characters.len(), |i, j| {
        zak_at(h, &f.values, points[i], characters[j])
    });
    Ok(ZakArray {
        subgroup: h.clone(),
        points,
        characters,
        values,
    })
}

/// Inverts [`zak`]: `f(y + h) = (1/|H|) sum_w Z(y, w) <w, h>`.
pub fn inverse_zak(z: &ZakArray) -> Signal {
    let h = &z.subgroup;
    let g = h.parent();
    let scale = 1.0 / h.order() as f64;
    let mut values = vec![ZERO; g.order()];
    for (i, &y) in z.points.iter().enumerate() {
        for &e in h.elements() {
            let s: Complex64 = z
                .characters
                .iter()
                .enumerate()
                .map(|(j, &w)| z.values[(i, j)] * g.pair_idx(w, e))
                .sum();
            values[g.add(y, e)] = s * scale;
        }
    }
    Signal {
        group: g.clone(),
        values,
    }
}

/// Builds a signal from prescribed Zak samples on the transversal grid.
pub fn signal_from_zak(h: &Subgroup, values: DenseMatrix) -> Result<Signal> {
    let points = h.transversal().reps().to_vec();
    let characters = h.annihilator().transversal().reps().to_vec();
    if values.rows() != points.len() || values.cols() != characters.len() {
        return invalid(format!(
            "Zak samples must be {}x{}, got {}x{}",
            points.len(),
            characters.len(),
            values.rows(),
            values.cols()
        ));
    }
    Ok(inverse_zak(&ZakArray {
        subgroup: h.clone(),
        points,
        characters,
        values,
    }))
}

/// Frequency fibers `(f^(w + a))_{a in H^perp}` for `w` in a transversal of
/// `H^perp` in the dual.
#[derive(Clone, Debug)]
pub struct FiberArray {
    subgroup: Subgroup,
    annihilator: Vec<usize>,
    reps: Vec<usize>,
    fibers: Vec<Vec<Complex64>>,
}

impl FiberArray {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// Elements of `H^perp`, the index set of each fiber.
    pub fn annihilator(&self) -> &[usize] {
        &self.annihilator
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn fibers(&self) -> &[Vec<Complex64>] {
        &self.fibers
    }

    pub fn entry_count(&self) -> usize {
        self.fibers.iter().map(Vec::len).sum()
    }
}

pub fn fiberize(h: &Subgroup, f: &Signal, weights: &MeasureWeights) -> Result<FiberArray> {
    if h.parent() != &f.group {
        return invalid(format!("subgroup of {} used on a signal over {}", h.parent(), f.group));
    }
    let fhat = fourier(f, weights)?;
    let g = &f.group;
    let perp = h.annihilator();
    let reps = perp.transversal().reps().to_vec();
    let fibers = reps
        .iter()
        .map(|&w| perp.elements().iter().map(|&a| fhat.values[g.add(w, a)]).collect())
        .collect();
    Ok(FiberArray {
        subgroup: h.clone(),
        annihilator: perp.elements().to_vec(),
        reps,
        fibers,
    })
}

/// `V_g0 f(x, w) = c_G sum_t f(t) conj(<w, t>) conj(g0(t - x))`, rows indexed
/// by `x`, columns by `w`.
pub fn stft(g0: &Signal, f: &Signal, weights: &MeasureWeights) -> Result<DenseMatrix> {
    f.same_group(g0)?;
    check_weights(&f.group, weights)?;
    if g0.norm_sqr() == 0.0 {
        return invalid("short-time Fourier transform needs a nonzero window");
    }
    let g = &f.group;
    let c = to_f64(weights.c_g);
    let n = g.order();
    Ok(DenseMatrix::from_fn(n, n, |x, w| {
        let s: Complex64 = (0..n)
            .map(|t| f.values[t] * g.pair_idx(w, t).conj() * g0.values[g.sub(t, x)].conj())
            .sum();
        s * c
    }))
}

/// Coset-split Zak vector used in the time-side characterization:
/// `psi_i = sum_{m in M} f(y + l_i + m) conj(<w, m>)`, where `M = Lambda ∩
/// Gamma^perp` and `l_i` runs over a transversal of `M` in `Gamma^perp`.
///
/// For each fixed `(y, w)` it differs from the vector
/// `(Z_{Gamma^perp} f(y, w + chi_i))_i` by a fixed unitary matrix times `sqrt(p)`.
pub fn zak_psi_vector(
    gamma_perp: &Subgroup,
    meet: &Subgroup,
    f: &[Complex64],
    y: usize,
    w: usize,
) -> Vec<Complex64> {
    let g = gamma_perp.parent();
    let shifts = coset_reps(gamma_perp, meet);
    shifts
        .iter()
        .map(|&l| {
            meet.elements()
                .iter()
                .map(|&m| f[g.add(g.add(y, l), m)] * g.pair_idx(w, m).conj())
                .sum()
        })
        .collect()
}

/// Representatives of `sub` in `sup` (`sub` must be a subgroup of `sup`),
/// sorted by index.
pub(crate) fn coset_reps(sup: &Subgroup, sub: &Subgroup) -> Vec<usize> {
    let t = sub.transversal();
    let mut seen = vec![false; t.len()];
    let mut reps = Vec::new();
    for &e in sup.elements() {
        let c = t.coset_of(e);
        if !seen[c] {
            seen[c] = true;
            reps.push(e);
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::derive_weights;
    use crate::rng::SplitMix64;

    fn group(f: &[usize]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(f).unwrap()
    }

    fn whole_weights(g: &FiniteAbelianGroup) -> MeasureWeights {
        let w = Subgroup::whole(g);
        derive_weights(g, &w, &w).unwrap()
    }

    fn cyc(g: &FiniteAbelianGroup, k: usize) -> Subgroup {
        Subgroup::from_generator_indices(g, &[k])
    }

    fn random(g: &FiniteAbelianGroup, rng: &mut SplitMix64) -> Signal {
        Signal::from_fn(g, |_| rng.next_complex())
    }

    #[test]
    fn fourier_examples() {
        let g = group(&[4]);
        let w = whole_weights(&g);
        let d = fourier(&Signal::delta(&g, 0), &w).unwrap();
        assert!(d.values().iter().all(|&z| z == Complex64::new(1.0, 0.0)));
        let c = fourier(&Signal::constant(&g, Complex64::new(1.0, 0.0)), &w).unwrap();
        assert!(c.max_abs_diff(&Signal::delta(&g, 0).scaled(Complex64::new(4.0, 0.0))) < 1e-15);

        let g8 = group(&[8]);
        let w8 = whole_weights(&g8);
        let f = random(&g8, &mut SplitMix64::new(1));
        let back = inverse_fourier(&fourier(&f, &w8).unwrap(), &w8).unwrap();
        assert!(back.max_abs_diff(&f) < 1e-12);

        assert!(fourier(&f, &w).is_err());
    }

    #[test]
    fn plancherel_on_corpus() {
        let mut rng = SplitMix64::new(99);
        for factors in [&[4][..], &[8], &[12], &[16], &[2, 4], &[3, 9]] {
            let g = group(factors);
            let w = whole_weights(&g);
            for _ in 0..50 {
                let f = random(&g, &mut rng);
                let lhs = to_f64(w.c_g) * f.norm_sqr();
                let rhs = to_f64(w.c_ghat) * fourier(&f, &w).unwrap().norm_sqr();
                assert!((lhs - rhs).abs() <= 1e-12 * lhs.max(1.0));
            }
        }
    }

    #[test]
    fn zak_examples() {
        let g = group(&[4]);
        let h = cyc(&g, 2);
        let z = zak(&h, &Signal::delta(&g, 0)).unwrap();
        assert_eq!(z.points(), &[0, 1]);
        for j in 0..2 {
            assert_eq!(z.get(0, j), Complex64::new(1.0, 0.0));
            assert_eq!(z.get(1, j), ZERO);
        }

        let g8 = group(&[8]);
        let f = random(&g8, &mut SplitMix64::new(5));
        let z = zak(&Subgroup::trivial(&g8), &f).unwrap();
        for (i, &x) in z.points().iter().enumerate() {
            assert_eq!(z.get(i, 0), f.values()[x]);
        }

        let z = zak(&cyc(&g8, 4), &f).unwrap();
        assert!((z.norm_sqr() - f.norm_sqr()).abs() <= 1e-12 * f.norm_sqr());
        assert!(inverse_zak(&z).max_abs_diff(&f) < 1e-12);
    }

    #[test]
    fn zak_quasi_periodicity() {
        let mut rng = SplitMix64::new(17);
        for (factors, gen) in [(&[8][..], 2usize), (&[2, 4][..], 1), (&[3, 9][..], 3)] {
            let g = group(factors);
            let h = cyc(&g, gen);
            let f = random(&g, &mut rng);
            for y in 0..g.order() {
                for w in 0..g.order() {
                    let base = zak_at(&h, f.values(), y, w);
                    for &e in h.elements() {
                        let shifted = zak_at(&h, f.values(), g.add(y, e), w);
                        assert!((shifted - g.pair_idx(w, e) * base).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn fiberize_examples() {
        let g = group(&[8]);
        let w = whole_weights(&g);
        let f = random(&g, &mut SplitMix64::new(3));

        let t = fiberize(&Subgroup::whole(&g), &f, &w).unwrap();
        assert_eq!(t.fibers().len(), 8);
        assert!(t.fibers().iter().all(|v| v.len() == 1));

        let h = cyc(&g, 2);
        let t = fiberize(&h, &f, &w).unwrap();
        assert_eq!(t.fibers().len(), 4);
        assert!(t.fibers().iter().all(|v| v.len() == 2));
        assert_eq!(t.entry_count(), 8);

        let energy: f64 = t.fibers().iter().flatten().map(|z| z.norm_sqr()).sum();
        assert!((energy * to_f64(w.c_ghat) - f.norm_sqr()).abs() < 1e-12 * f.norm_sqr());
    }

    #[test]
    fn fiberize_translation_law() {
        let mut rng = SplitMix64::new(23);
        for (factors, gen) in [(&[8][..], 2usize), (&[12][..], 3), (&[2, 4][..], 2)] {
            let g = group(factors);
            let w = whole_weights(&g);
            let h = cyc(&g, gen);
            let f = random(&g, &mut rng);
            let tf = fiberize(&h, &f, &w).unwrap();
            for &lam in h.elements() {
                let shifted = fiberize(&h, &f.translate(lam), &w).unwrap();
                for (k, &om) in tf.reps().iter().enumerate() {
                    let phase = g.pair_idx(om, lam).conj();
                    for (a, b) in shifted.fibers()[k].iter().zip(&tf.fibers()[k]) {
                        assert!((a - phase * b).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn stft_examples() {
        let g = group(&[4]);
        let w = whole_weights(&g);
        let d = Signal::delta(&g, 0);
        let v = stft(&d, &d, &w).unwrap();
        for x in 0..4 {
            for om in 0..4 {
                let expect = if x == 0 { 1.0 } else { 0.0 };
                assert!((v[(x, om)] - expect).norm() < 1e-15);
            }
        }
        assert!(stft(&Signal::zeros(&g), &d, &w).is_err());

        let g8 = group(&[8]);
        let w8 = whole_weights(&g8);
        let mut rng = SplitMix64::new(8);
        let (f, g0) = (random(&g8, &mut rng), random(&g8, &mut rng));
        let v = stft(&g0, &f, &w8).unwrap();
        let lhs = v.frobenius_norm().powi(2) * to_f64(w8.c_g) * to_f64(w8.c_ghat);
        assert!((lhs - f.norm_sqr() * g0.norm_sqr()).abs() < 1e-12 * lhs);

        let a = 3;
        let vs = stft(&g0, &f.translate(a), &w8).unwrap();
        for x in 0..8 {
            for om in 0..8 {
                assert!((vs[(g8.add(x, a), om)].norm() - v[(x, om)].norm()).abs() < 1e-12);
            }
        }
    }

    /// The q x q Gram matrices built from the Zak vectors and from the
    /// coset-split vectors agree after dividing by `p`.
    #[test]
    fn psi_variant_gram_matches_zak_gram() {
        let mut rng = SplitMix64::new(41);
        for factors in [&[8][..], &[12], &[16], &[2, 4]] {
            let g = group(factors);
            let subs = crate::group::all_subgroups(&g, 100);
            let f = random(&g, &mut rng);
            for lam in &subs {
                for gam in &subs {
                    let gp = gam.annihilator();
                    let meet = lam.intersect(&gp).unwrap();
                    let p = gp.order() / meet.order();
                    let chis = coset_reps(&meet.annihilator(), gam);
                    assert_eq!(chis.len(), p);
                    let kappas = coset_reps(lam, &meet);
                    let x = gp.transversal().reps()[gp.transversal().len() - 1];
                    for &om in gam.transversal().reps().iter().take(3) {
                        let zvec = |k: usize| -> Vec<Complex64> {
                            chis.iter()
                                .map(|&c| zak_at(&gp, f.values(), g.add(x, k), g.add(om, c)))
                                .collect()
                        };
                        let zs: Vec<_> = kappas.iter().map(|&k| zvec(k)).collect();
                        let ps: Vec<_> = kappas
                            .iter()
                            .map(|&k| zak_psi_vector(&gp, &meet, f.values(), g.add(x, k), om))
                            .collect();
                        for i in 0..zs.len() {
                            for j in 0..zs.len() {
                                let a: Complex64 =
                                    zs[i].iter().zip(&zs[j]).map(|(u, v)| u * v.conj()).sum();
                                let b: Complex64 =
                                    ps[i].iter().zip(&ps[j]).map(|(u, v)| u * v.conj()).sum();
                                assert!((a / p as f64 - b).norm() < 1e-10 * (1.0 + b.norm()));
                            }
                        }
                    }
                }
            }
        }
    }
}
