//! Cauchy and normalized Cauchy transforms, the inner function attached to a
//! measure, and the inverse construction recovering moments from an inner
//! function.
//!
//! The attached inner function `b` has Taylor coefficients `b_n = -alpha_n`
//! for `n >= 1` and `b(0) = 0`; conversely the series
//! `H = (1 + b) / (1 - b)` has positive real part on the disc and its
//! coefficients read off the moments of the measure: `m(n) = H_n / 2`. The
//! normalized Cauchy transform is evaluated along two routes (a ratio of
//! Cauchy transforms, and the coefficient series `sum <f, g_n> z^n`) whose
//! agreement is one of the library's primary checks.

use num_complex::Complex64;
use thiserror::Error;

use crate::kaczmarz::{alpha, GnMatrix};
use crate::measures::{BoundaryFunction, FourierTable, MeasureError};
use crate::series::{DiscPoint, Estimate, PowerSeries, SeriesError};

const TAU: f64 = std::f64::consts::TAU;

#[derive(Debug, Error)]
pub enum TransformError {
    #[error("series error: {0}")]
    Series(#[from] SeriesError),
    #[error("measure error: {0}")]
    Measure(#[from] MeasureError),
    #[error("denominator |C(z)| = {0} is numerically degenerate")]
    NumericalDegeneracy(f64),
    #[error("inner-function series must vanish at the origin (|b(0)| = {0})")]
    NonzeroAtOrigin(f64),
}

/// Truncated Taylor series of a function `b` with `b(0) = 0` that is inner
/// for the measures produced by this library. `|b| < 1` on the disc holds
/// for the pipeline's own outputs and is smoke-tested, not certified.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerSeries {
    series: PowerSeries,
}

impl InnerSeries {
    pub fn new(series: PowerSeries) -> Result<Self, TransformError> {
        let c0 = series.coeff(0).norm();
        if c0 > 1e-12 {
            return Err(TransformError::NonzeroAtOrigin(c0));
        }
        Ok(InnerSeries { series })
    }

    /// `b(z) = z^k` carried at the given order.
    pub fn monomial(order: usize, k: usize) -> Self {
        assert!(k >= 1, "an inner series vanishes at the origin");
        InnerSeries {
            series: PowerSeries::monomial(order, k),
        }
    }

    pub fn series(&self) -> &PowerSeries {
        &self.series
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    /// Multiply by a unimodular constant; the result drives the rotated
    /// measure families.
    pub fn rotate(&self, phase: Complex64) -> Self {
        debug_assert!((phase.norm() - 1.0).abs() < 1e-12);
        InnerSeries {
            series: self.series.scale(phase),
        }
    }

    /// `b^n` as an inner series; requires `n >= 1`.
    pub fn power(&self, n: usize) -> Self {
        assert!(n >= 1, "power 0 is the constant 1, which is not inner");
        InnerSeries {
            series: self.series.power(n),
        }
    }

    /// Tail-bounded evaluation. The coefficients of an inner function are
    /// square-summable with unit sum, so `1` dominates every tail
    /// coefficient.
    pub fn evaluate(&self, z: DiscPoint) -> Estimate {
        let bound = self.series.sup_coeff().max(1.0);
        self.series.evaluate(z, bound)
    }
}

/// The inner series attached to a moment table: `b_n = -alpha_n`, `b_0 = 0`.
pub fn inner_from_measure(table: &FourierTable) -> InnerSeries {
    let a = alpha(table);
    let mut coeffs: Vec<Complex64> = a.values().iter().map(|c| -c).collect();
    coeffs[0] = Complex64::ZERO;
    InnerSeries {
        series: PowerSeries::new(coeffs).expect("alpha coefficients are finite"),
    }
}

/// Moments recovered from an inner series through the positive-real-part
/// series `H = (1 + b) / (1 - b)`: `m(0) = 1` and `m(n) = H_n / 2`.
pub fn measure_from_inner(b: &InnerSeries) -> Result<FourierTable, TransformError> {
    let order = b.order();
    let one = PowerSeries::one(order);
    let denom = one.sub(b.series());
    let h = one.add(b.series()).multiply(&denom.reciprocal()?);
    let mut values: Vec<Complex64> = h.coeffs().iter().map(|c| 0.5 * c).collect();
    values[0] = Complex64::ONE;
    Ok(FourierTable::new(values)?)
}

/// `sum_n m_n z^n` with a geometric tail bound from the largest supplied
/// moment modulus.
pub fn cauchy_transform(moments: &[Complex64], z: DiscPoint) -> Estimate {
    let series = PowerSeries::new(moments.to_vec()).expect("finite moments");
    let bound = series.sup_coeff().max(1e-300);
    series.evaluate(z, bound)
}

/// Moments `m_n = sum_k w_k f(x_k) e^{-2 pi i n x_k}` of `f` against the
/// function's own rule.
pub fn moments_of(f: &BoundaryFunction, count: usize) -> Vec<Complex64> {
    let rule = f.rule();
    (0..=count as i64)
        .map(|n| {
            rule.weights()
                .iter()
                .zip(rule.nodes().iter().zip(f.values()))
                .map(|(&w, (&x, v))| w * v * Complex64::from_polar(1.0, -TAU * n as f64 * x))
                .sum()
        })
        .collect()
}

/// The Cauchy transform summed directly over the rule's nodes,
/// `sum_k w_k f(x_k) / (1 - z e^{-2 pi i x_k})`. Exact for atomic rules at
/// every `|z| < 1`, which makes it the right evaluator near the boundary
/// where series truncations lose control.
pub fn cauchy_transform_nodes(f: &BoundaryFunction, z: Complex64) -> Complex64 {
    let rule = f.rule();
    rule.weights()
        .iter()
        .zip(rule.nodes().iter().zip(f.values()))
        .map(|(&w, (&x, v))| w * v / (Complex64::ONE - z * Complex64::from_polar(1.0, -TAU * x)))
        .sum()
}

/// Both routes to the normalized Cauchy transform at one point.
#[derive(Debug, Clone, Copy)]
pub struct NormalizedCauchy {
    /// Ratio of the `f`-moment series to the measure's moment series.
    pub via_ratio: Complex64,
    /// Coefficient series `sum_n <f, g_n> z^n`.
    pub via_series: Complex64,
    /// Combined truncation bound for the ratio route.
    pub ratio_bound: f64,
    /// Truncation bound for the coefficient route.
    pub series_bound: f64,
}

impl NormalizedCauchy {
    pub fn disagreement(&self) -> f64 {
        (self.via_ratio - self.via_series).norm()
    }
}

/// Evaluate the normalized Cauchy transform of `f` by the two routes.
///
/// The denominator series has positive real part on the disc so it cannot
/// vanish; the guard only reports numerical degeneracy of the truncation.
pub fn normalized_cauchy(
    f: &BoundaryFunction,
    table: &FourierTable,
    g: &GnMatrix,
    z: DiscPoint,
) -> Result<NormalizedCauchy, TransformError> {
    let order = table.order().min(g.order());
    let f_moments = moments_of(f, order);
    let num = cauchy_transform(&f_moments, z);
    let den = cauchy_transform(&table.values()[..=order], z);
    if den.value.norm() < 1e-6 {
        return Err(TransformError::NumericalDegeneracy(den.value.norm()));
    }
    let via_ratio = num.value / den.value;
    // first-order propagation of the two truncation bounds through the ratio
    let ratio_bound =
        (num.bound + via_ratio.norm() * den.bound) / (den.value.norm() - den.bound).max(1e-9);

    let sampled = g.sample_rows(f.rule());
    let mut coeffs = Vec::with_capacity(order + 1);
    for row in sampled.iter().take(order + 1) {
        coeffs.push(crate::measures::inner_product(f, row)?);
    }
    let series = PowerSeries::new(coeffs).expect("finite coefficients");
    // frame coefficients are bounded by ||f||
    let est = series.evaluate(z, f.norm().max(series.sup_coeff()));
    Ok(NormalizedCauchy {
        via_ratio,
        via_series: est.value,
        ratio_bound,
        series_bound: est.bound,
    })
}

/// L2 errors `|| F(r e^{2 pi i x}) - target ||` on the target's rule, one per
/// radius. A decreasing sequence witnesses the boundary-convergence claim;
/// the caller judges the final value against its own tolerance.
pub fn radial_check(
    f: impl Fn(Complex64) -> Complex64,
    target: &BoundaryFunction,
    radii: &[f64],
) -> Vec<f64> {
    let rule = target.rule();
    radii
        .iter()
        .map(|&r| {
            let on_circle =
                BoundaryFunction::sample(rule, |x| f(Complex64::from_polar(r, TAU * x)));
            on_circle
                .sub(target)
                .expect("sampled on the target's rule")
                .norm()
        })
        .collect()
}

/// Default radius schedule `1 - 2^{-k}` for `k = 1..=steps`.
pub fn default_radial_schedule(steps: u32) -> Vec<f64> {
    (1..=steps)
        .map(|k| 1.0 - 2.0f64.powi(-(k as i32)))
        .collect()
}

/// Series order needed for conclusive tail control at the largest radius:
/// truncation at order `N >= 50 / (1 - r_max)` drives the geometric tail
/// below `e^{-50}`.
pub fn conclusive_order(r_max: f64) -> usize {
    (50.0 / (1.0 - r_max)).ceil() as usize
}
