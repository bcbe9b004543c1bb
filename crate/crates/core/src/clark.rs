//! Families of measures attached to unimodular rotations of an inner
//! function, and the averaging identities that tie them to the measures of
//! its powers.
//!
//! For a rotation parameter `a` on the circle, the measure of `conj(a) b` is
//! recovered by the same positive-real-part series as any other inner
//! function. Averaging the `n` measures at the `n`-th roots of unity
//! reproduces the measure of `b^n`, momentwise; splitting the average over
//! divisibility classes gives the affine three-measure identity.

use num_complex::Complex64;

use crate::measures::FourierTable;
use crate::series::DiscPoint;
use crate::transforms::{measure_from_inner, InnerSeries, TransformError};

const TAU: f64 = std::f64::consts::TAU;

/// The measure of `b^n` through the positive-real-part series.
pub fn measure_power(b: &InnerSeries, n: usize) -> Result<FourierTable, TransformError> {
    assert!(n >= 1);
    measure_from_inner(&b.power(n))
}

/// The `n` rotated measures at the roots of unity together with the measure
/// of `b^n`.
#[derive(Debug, Clone)]
pub struct ClarkFamily {
    b: InnerSeries,
    n: usize,
    sigma_tables: Vec<FourierTable>,
    mu_n_table: FourierTable,
}

impl ClarkFamily {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn b(&self) -> &InnerSeries {
        &self.b
    }

    /// Moment table of the measure attached to `e^{-2 pi i j / n} b`.
    pub fn sigma(&self, j: usize) -> &FourierTable {
        &self.sigma_tables[j]
    }

    pub fn sigmas(&self) -> &[FourierTable] {
        &self.sigma_tables
    }

    pub fn power_table(&self) -> &FourierTable {
        &self.mu_n_table
    }

    /// Max over `k <= k_max` of the averaging defect
    /// `|m_n(k) - (1/n) sum_j sigma_j(k)|`.
    pub fn decomposition_residual(&self, k_max: usize) -> f64 {
        let k_max = k_max.min(self.mu_n_table.order());
        (0..=k_max as i64)
            .map(|k| {
                let avg: Complex64 =
                    self.sigma_tables.iter().map(|t| t.at(k)).sum::<Complex64>() / self.n as f64;
                (self.mu_n_table.at(k) - avg).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// Build the rotated family of order `n >= 1`.
pub fn clark_family(b: &InnerSeries, n: usize) -> Result<ClarkFamily, TransformError> {
    assert!(n >= 1);
    let sigma_tables: Result<Vec<FourierTable>, TransformError> = (0..n)
        .map(|j| {
            let phase = Complex64::from_polar(1.0, -TAU * j as f64 / n as f64);
            measure_from_inner(&b.rotate(phase))
        })
        .collect();
    Ok(ClarkFamily {
        b: b.clone(),
        n,
        sigma_tables: sigma_tables?,
        mu_n_table: measure_power(b, n)?,
    })
}

/// Max over the sample points of the defect in the root-of-unity resolvent
/// average: `(1/n) sum_j (1 + w_j b) / (1 - w_j b)` against
/// `(1 + b^n) / (1 - b^n)`, with `w_j` running over conjugate roots of unity.
pub fn verify_expsum(b: &InnerSeries, n: usize, samples: &[DiscPoint]) -> f64 {
    assert!(n >= 1);
    let mut worst = 0.0f64;
    for &z in samples {
        let bz = b.evaluate(z).value;
        let mut avg = Complex64::ZERO;
        for j in 0..n {
            let w = Complex64::from_polar(1.0, -TAU * j as f64 / n as f64) * bz;
            avg += (Complex64::ONE + w) / (Complex64::ONE - w);
        }
        avg /= n as f64;
        let bn = bz.powu(n as u32);
        let rhs = (Complex64::ONE + bn) / (Complex64::ONE - bn);
        worst = worst.max((avg - rhs).norm());
    }
    worst
}

/// Outcome of the three-measure affine identity at `n = q m`.
#[derive(Debug, Clone, Copy)]
pub struct AffineReport {
    pub m: usize,
    pub q: usize,
    pub n: usize,
    /// Max over `k <= k_max` of
    /// `|m_n(k) - (1/q) m_m(k) - ((q-1)/q) rho(k)|`.
    pub residual: f64,
}

/// Check that the measure of `b^n` splits affinely over the measure of `b^m`
/// and the average `rho` of the rotated measures at indices not divisible by
/// `q`.
pub fn verify_affine(
    b: &InnerSeries,
    m: usize,
    q: usize,
    k_max: usize,
) -> Result<AffineReport, TransformError> {
    assert!(m >= 1 && q >= 2);
    let n = q * m;
    let family = clark_family(b, n)?;
    let mu_m = measure_power(b, m)?;
    let k_max = k_max.min(family.power_table().order()).min(mu_m.order());
    let mut worst = 0.0f64;
    for k in 0..=k_max as i64 {
        let rho: Complex64 = (0..n)
            .filter(|j| j % q != 0)
            .map(|j| family.sigma(j).at(k))
            .sum::<Complex64>()
            * (q as f64 / ((q - 1) as f64 * n as f64));
        let lhs = family.power_table().at(k);
        let rhs = mu_m.at(k) / q as f64 + rho * ((q - 1) as f64 / q as f64);
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(AffineReport {
        m,
        q,
        n,
        residual: worst,
    })
}
