//! Truncated complex power series with explicit truncation orders.
//!
//! A [`PowerSeries`] stores coefficients `c_0..c_N` of an analytic function
//! on the unit disc. The truncation order `N` is part of the value: binary
//! operations truncate to the minimum of the two orders, so a result never
//! pretends to know coefficients it cannot. Evaluation inside the disc
//! returns the Horner sum of the stored part together with a geometric tail
//! bound driven by a caller-supplied coefficient bound.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("series must have at least one coefficient")]
    Empty,
    #[error("coefficient at index {0} is not finite")]
    NonFiniteCoefficient(usize),
    #[error("constant term is zero; the series has no reciprocal")]
    ZeroConstantTerm,
    #[error("point lies outside the open unit disc (|z| = {0})")]
    OutsideUnitDisc(f64),
}

/// A point of the open unit disc. Construction rejects `|z| >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscPoint(Complex64);

impl DiscPoint {
    pub fn new(z: Complex64) -> Result<Self, SeriesError> {
        if !z.re.is_finite() || !z.im.is_finite() || z.norm() >= 1.0 {
            return Err(SeriesError::OutsideUnitDisc(z.norm()));
        }
        Ok(DiscPoint(z))
    }

    /// `r e^{2 pi i t}` with `0 <= r < 1`.
    pub fn from_polar(r: f64, t: f64) -> Result<Self, SeriesError> {
        Self::new(Complex64::from_polar(r, std::f64::consts::TAU * t))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    pub fn modulus(&self) -> f64 {
        self.0.norm()
    }
}

/// A value together with a rigorous bound on the truncation error.
#[derive(Debug, Clone, Copy)]
pub struct Estimate {
    pub value: Complex64,
    pub bound: f64,
}

/// Coefficients `c_0..c_N` of a truncated power series.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::Empty);
        }
        for (k, c) in coeffs.iter().enumerate() {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(SeriesError::NonFiniteCoefficient(k));
            }
        }
        Ok(PowerSeries { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self, SeriesError> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The zero series of the given order.
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![Complex64::ZERO; order + 1],
        }
    }

    /// The constant series `1` of the given order.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Complex64::ONE;
        s
    }

    /// The monomial `z^k` carried at the given order. Requires `k <= order`.
    pub fn monomial(order: usize, k: usize) -> Self {
        assert!(k <= order, "monomial degree exceeds truncation order");
        let mut s = Self::zero(order);
        s.coeffs[k] = Complex64::ONE;
        s
    }

    /// Truncation order `N`; the series stores `N + 1` coefficients.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`; zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn sup_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Squared coefficient two-norm of the truncation.
    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Coefficient inner product `sum_k a_k conj(b_k)` up to the shared order.
    pub fn inner(&self, other: &PowerSeries) -> Complex64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    pub fn truncated(&self, order: usize) -> Self {
        let n = order.min(self.order());
        PowerSeries {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &PowerSeries) -> Self {
        let n = self.order().min(other.order());
        PowerSeries {
            coeffs: (0..=n).map(|k| self.coeffs[k] + other.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, other: &PowerSeries) -> Self {
        let n = self.order().min(other.order());
        PowerSeries {
            coeffs: (0..=n).map(|k| self.coeffs[k] - other.coeffs[k]).collect(),
        }
    }

    /// Cauchy product truncated to the minimum of the two orders.
    pub fn multiply(&self, other: &PowerSeries) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![Complex64::ZERO; n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        PowerSeries { coeffs: out }
    }

    /// Multiplicative inverse by forward substitution.
    ///
    /// The defining relation is `self * result = 1` through the shared order;
    /// this is the triangular solve against the Toeplitz system of the
    /// coefficients. Fails when the constant term vanishes.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let a0 = self.coeffs[0];
        if a0.norm_sqr() == 0.0 {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let n = self.order();
        let mut r = vec![Complex64::ZERO; n + 1];
        r[0] = Complex64::ONE / a0;
        for k in 1..=n {
            let mut acc = Complex64::ZERO;
            for j in 1..=k {
                acc += self.coeffs[j] * r[k - j];
            }
            r[k] = -acc / a0;
        }
        Ok(PowerSeries { coeffs: r })
    }

    /// Multiplicative inverse by Newton doubling; the precision of the
    /// iterate doubles each step. Alternative route to [`reciprocal`]
    /// (same contract, different arithmetic path), kept for
    /// cross-validation and as the faster choice at large orders.
    ///
    /// [`reciprocal`]: PowerSeries::reciprocal
    pub fn reciprocal_newton(&self) -> Result<Self, SeriesError> {
        let a0 = self.coeffs[0];
        if a0.norm_sqr() == 0.0 {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let n = self.order();
        let mut r = PowerSeries {
            coeffs: vec![Complex64::ONE / a0],
        };
        let mut m = 0usize; // r is exact through order m
        while m < n {
            let m2 = (2 * m + 1).min(n);
            let a = self.truncated(m2);
            let r_ext = PowerSeries {
                coeffs: {
                    let mut c = r.coeffs.clone();
                    c.resize(m2 + 1, Complex64::ZERO);
                    c
                },
            };
            // r <- r (2 - a r) at order m2
            let ar = a.multiply(&r_ext);
            let two = PowerSeries::one(m2).scale(Complex64::new(2.0, 0.0));
            r = r_ext.multiply(&two.sub(&ar));
            m = m2;
        }
        Ok(r)
    }

    /// Integer power by repeated multiplication; the order is preserved and
    /// `power(0)` is the constant series `1`.
    pub fn power(&self, n: usize) -> Self {
        let mut out = PowerSeries::one(self.order());
        for _ in 0..n {
            out = out.multiply(self);
        }
        out
    }

    /// Horner evaluation of the truncation at a disc point.
    ///
    /// `coeff_bound` must dominate `sup_k |c_k|` over the *full* (untruncated)
    /// coefficient sequence; the returned bound
    /// `coeff_bound * |z|^{N+1} / (1 - |z|)` then dominates the discarded
    /// tail.
    pub fn evaluate(&self, z: DiscPoint, coeff_bound: f64) -> Estimate {
        let zv = z.value();
        let mut acc = Complex64::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = acc * zv + c;
        }
        let r = z.modulus();
        let bound = coeff_bound * r.powi(self.order() as i32 + 1) / (1.0 - r);
        Estimate { value: acc, bound }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn geometric(order: usize) -> PowerSeries {
        PowerSeries::from_real(&vec![1.0; order + 1]).unwrap()
    }

    #[test]
    fn multiply_telescopes_geometric() {
        let a = PowerSeries::from_real(&[1.0, -1.0, 0.0, 0.0, 0.0]).unwrap();
        let g = geometric(4);
        let p = a.multiply(&g);
        assert_eq!(p.coeff(0), Complex64::ONE);
        for k in 1..=4 {
            assert_eq!(p.coeff(k), Complex64::ZERO);
        }
    }

    #[test]
    fn multiply_identity() {
        let a = PowerSeries::new(vec![c(0.3, 1.0), c(-2.0, 0.5), c(0.0, -1.0)]).unwrap();
        let one = PowerSeries::one(2);
        assert_eq!(a.multiply(&one), a);
    }

    #[test]
    fn multiply_binomial_by_hand() {
        let a = PowerSeries::from_real(&[1.0, 1.0, 0.0]).unwrap();
        let p = a.multiply(&a);
        assert_eq!(p.coeffs(), &[c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn reciprocal_of_geometric_series() {
        // forward-substitution oracle: (1,1,1,...)^{-1} = (1,-1,0,...)
        let r = geometric(6).reciprocal().unwrap();
        assert_abs_diff_eq!(r.coeff(0).re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.coeff(1).re, -1.0, epsilon = 1e-15);
        for k in 2..=6 {
            assert_abs_diff_eq!(r.coeff(k).norm(), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn reciprocal_of_identity() {
        let one = PowerSeries::one(5);
        assert_eq!(one.reciprocal().unwrap(), one);
    }

    #[test]
    fn reciprocal_of_even_geometric() {
        // (1,0,1,0,1,...)^{-1} = (1,0,-1,0,0,...)
        let a = PowerSeries::from_real(&[1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0]).unwrap();
        let r = a.reciprocal().unwrap();
        let expect = [1.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0];
        for (k, &e) in expect.iter().enumerate() {
            assert_abs_diff_eq!(r.coeff(k).re, e, epsilon = 1e-15);
            assert_abs_diff_eq!(r.coeff(k).im, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn reciprocal_rejects_zero_constant_term() {
        let a = PowerSeries::from_real(&[0.0, 1.0]).unwrap();
        assert_eq!(a.reciprocal().unwrap_err(), SeriesError::ZeroConstantTerm);
        assert_eq!(
            a.reciprocal_newton().unwrap_err(),
            SeriesError::ZeroConstantTerm
        );
    }

    #[test]
    fn power_shifts_monomials() {
        let z = PowerSeries::monomial(5, 1);
        let z2 = z.power(2);
        assert_eq!(z2.coeff(2), Complex64::ONE);
        assert_eq!(z2.coeff(1), Complex64::ZERO);
        let z4 = PowerSeries::monomial(5, 2).power(2);
        assert_eq!(z4.coeff(4), Complex64::ONE);
    }

    #[test]
    fn power_one_is_identity_and_zeroth_is_one() {
        let a = PowerSeries::new(vec![c(1.0, 0.2), c(0.5, -0.3), c(0.1, 0.0)]).unwrap();
        assert_eq!(a.power(1), a);
        assert_eq!(a.power(0), PowerSeries::one(2));
    }

    #[test]
    fn evaluate_geometric_partial_sum() {
        let n = 10;
        let g = geometric(n);
        let z = DiscPoint::new(c(0.5, 0.0)).unwrap();
        let est = g.evaluate(z, 1.0);
        let expect = 2.0 - 0.5f64.powi(n as i32); // sum_{k<=n} 2^{-k}
        assert_abs_diff_eq!(est.value.re, expect, epsilon = 1e-14);
        assert_abs_diff_eq!(est.bound, 2.0 * 0.5f64.powi(n as i32 + 1), epsilon = 1e-16);
    }

    #[test]
    fn evaluate_at_origin_gives_constant_term() {
        let a = PowerSeries::new(vec![c(0.7, -0.1), c(3.0, 2.0)]).unwrap();
        let est = a.evaluate(DiscPoint::new(Complex64::ZERO).unwrap(), 5.0);
        assert_eq!(est.value, c(0.7, -0.1));
        assert_eq!(est.bound, 0.0);
    }

    #[test]
    fn disc_point_rejects_boundary_and_exterior() {
        assert!(DiscPoint::new(c(1.0, 0.0)).is_err());
        assert!(DiscPoint::new(c(0.8, 0.7)).is_err());
        assert!(DiscPoint::new(c(0.8, 0.5)).is_ok());
        assert!(DiscPoint::new(c(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn series_rejects_non_finite() {
        assert!(PowerSeries::from_real(&[1.0, f64::INFINITY]).is_err());
        assert!(PowerSeries::new(vec![]).is_err());
    }

    proptest! {
        #[test]
        fn multiply_commutes(
            a in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..20),
            b in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..20),
        ) {
            let a = PowerSeries::new(a.into_iter().map(|(re, im)| c(re, im)).collect()).unwrap();
            let b = PowerSeries::new(b.into_iter().map(|(re, im)| c(re, im)).collect()).unwrap();
            let ab = a.multiply(&b);
            let ba = b.multiply(&a);
            for k in 0..=ab.order() {
                prop_assert!((ab.coeff(k) - ba.coeff(k)).norm() < 1e-12);
            }
        }

        #[test]
        fn multiply_associates(
            a in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..12),
            b in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..12),
            d in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..12),
        ) {
            let a = PowerSeries::new(a.into_iter().map(|(re, im)| c(re, im)).collect()).unwrap();
            let b = PowerSeries::new(b.into_iter().map(|(re, im)| c(re, im)).collect()).unwrap();
            let d = PowerSeries::new(d.into_iter().map(|(re, im)| c(re, im)).collect()).unwrap();
            let left = a.multiply(&b).multiply(&d);
            let right = a.multiply(&b.multiply(&d));
            for k in 0..=left.order().min(right.order()) {
                prop_assert!((left.coeff(k) - right.coeff(k)).norm() < 1e-12);
            }
        }

        #[test]
        fn reciprocal_inverts(
            mut cs in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 2..40),
            a0 in 0.1..1.0f64,
        ) {
            cs[0] = (a0, 0.0);
            let a = PowerSeries::new(cs.into_iter().map(|(re, im)| c(re, im)).collect()).unwrap();
            let r = a.reciprocal().unwrap();
            let p = a.multiply(&r);
            // residual relative to the reciprocal's own magnitude; the
            // absolute residual can be large when the reciprocal
            // coefficients grow exponentially
            let scale = r.sup_coeff().max(1.0);
            prop_assert!((p.coeff(0) - Complex64::ONE).norm() < 1e-12 * scale);
            for k in 1..=p.order() {
                prop_assert!(p.coeff(k).norm() < 1e-12 * scale);
            }
        }

        #[test]
        fn reciprocal_residual_small_for_moment_sequences(
            atoms in proptest::collection::vec((0.0..1.0f64, 0.01..1.0f64), 1..6),
            order in 4..64usize,
        ) {
            // moment sequences of atomic probability measures have unit
            // constant term and a bounded reciprocal; here the absolute
            // residual of the convolution identity stays at roundoff scale
            let total: f64 = atoms.iter().map(|&(_, w)| w).sum();
            let tau = std::f64::consts::TAU;
            let cs: Vec<Complex64> = (0..=order)
                .map(|n| {
                    atoms
                        .iter()
                        .map(|&(x, w)| Complex64::from_polar(w / total, -tau * n as f64 * x))
                        .sum()
                })
                .collect();
            let a = PowerSeries::new(cs).unwrap();
            let r = a.reciprocal().unwrap();
            let p = a.multiply(&r);
            prop_assert!((p.coeff(0) - Complex64::ONE).norm() < 1e-12);
            for k in 1..=p.order() {
                prop_assert!(p.coeff(k).norm() < 1e-12);
            }
        }

        #[test]
        fn newton_matches_forward_substitution(
            mut cs in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 2..60),
            a0 in 0.3..1.0f64,
        ) {
            cs[0] = (a0, 0.0);
            let a = PowerSeries::new(cs.into_iter().map(|(re, im)| c(re, im)).collect()).unwrap();
            let f = a.reciprocal().unwrap();
            let n = a.reciprocal_newton().unwrap();
            let scale = f.sup_coeff().max(1.0);
            for k in 0..=f.order() {
                prop_assert!((f.coeff(k) - n.coeff(k)).norm() <= 1e-12 * scale);
            }
        }

        #[test]
        fn evaluate_tail_bound_holds(
            cs in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 2..30),
            r in 0.0..0.9f64,
            t in 0.0..1.0f64,
        ) {
            // reference: the same coefficients repeated periodically out to 4N
            // keeps sup |c_k| fixed while realizing a nonzero tail
            let base: Vec<Complex64> = cs.iter().map(|&(re, im)| c(re, im)).collect();
            let n = base.len() - 1;
            let mut long = base.clone();
            while long.len() < 4 * (n + 1) {
                long.extend_from_slice(&base);
            }
            let short = PowerSeries::new(base).unwrap();
            let long = PowerSeries::new(long).unwrap();
            let z = DiscPoint::from_polar(r, t).unwrap();
            let bound = short.sup_coeff().max(1e-30);
            let est = short.evaluate(z, bound);
            let reference = long.evaluate(z, bound);
            let ref_tail = reference.bound;
            prop_assert!((est.value - reference.value).norm() <= est.bound + ref_tail + 1e-13);
        }
    }

    #[test]
    fn newton_matches_forward_at_large_order() {
        // moment sequence of a fixed five-atom measure, order 4096
        let n = 4096;
        let atoms = [
            (0.0, 0.3),
            (0.137, 0.2),
            (0.391, 0.2),
            (0.5, 0.2),
            (0.83, 0.1),
        ];
        let tau = std::f64::consts::TAU;
        let cs: Vec<Complex64> = (0..=n)
            .map(|k| {
                atoms
                    .iter()
                    .map(|&(x, w)| Complex64::from_polar(w, -tau * k as f64 * x))
                    .sum()
            })
            .collect();
        let a = PowerSeries::new(cs).unwrap();
        let f = a.reciprocal().unwrap();
        let nw = a.reciprocal_newton().unwrap();
        let scale = f.sup_coeff().max(1.0);
        let mut worst = 0.0f64;
        for k in 0..=n {
            worst = worst.max((f.coeff(k) - nw.coeff(k)).norm() / scale);
        }
        assert!(worst < 1e-12, "newton/forward relative gap {worst}");
    }
}
