//! The auxiliary row-action sequence `{g_n}` attached to a singular
//! probability measure, by two independent routes, together with its Gram
//! matrix and expansion machinery.
//!
//! Route one inverts the lower-triangular Toeplitz system of the moments:
//! the reciprocal coefficients `alpha` of the moment series give
//! `g_n = sum_i conj(alpha_{n-i}) e_i`. Route two runs the defining
//! recursion `g_n = e_n - sum_{i<n} <e_n, e_i> g_i` directly against the
//! moment table. The two must agree entrywise; that agreement is the primary
//! cross-validation of the whole pipeline.

use std::sync::Arc;

use num_complex::Complex64;

use crate::measures::{
    inner_product, sample_exponential, BoundaryFunction, FourierTable, MeasureError, QuadratureRule,
};
use crate::series::PowerSeries;

/// Reciprocal coefficients of the moment series: `alpha * m = 1` as
/// truncated series, so `sum_{k<=n} alpha_k m(n-k) = 0` for `n >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaSeq {
    values: Vec<Complex64>,
}

impl AlphaSeq {
    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn at(&self, k: usize) -> Complex64 {
        self.values[k]
    }

    pub fn as_series(&self) -> PowerSeries {
        PowerSeries::new(self.values.clone()).expect("alpha coefficients are finite")
    }

    /// Max residual of the defining convolution identity over `1..=order`.
    pub fn convolution_residual(&self, table: &FourierTable) -> f64 {
        let n = self.order().min(table.order());
        (1..=n)
            .map(|k| {
                (0..=k)
                    .map(|j| self.values[j] * table.at((k - j) as i64))
                    .sum::<Complex64>()
                    .norm()
            })
            .fold(0.0, f64::max)
    }
}

/// `alpha` by forward substitution against the moment table.
pub fn alpha(table: &FourierTable) -> AlphaSeq {
    let series = PowerSeries::new(table.values().to_vec()).expect("moments are finite");
    let rec = series
        .reciprocal()
        .expect("moment tables have unit constant term");
    AlphaSeq {
        values: rec.coeffs().to_vec(),
    }
}

/// Lower-triangular coefficient rows of the auxiliary sequence over the
/// exponentials: row `n` holds the coefficients of `g_n` on `e_0..e_n`.
#[derive(Debug, Clone)]
pub struct GnMatrix {
    rows: Vec<Vec<Complex64>>,
    // present when the rows are the Toeplitz rows built from alpha; enables
    // O(order * nodes) sampling
    alpha: Option<AlphaSeq>,
}

impl GnMatrix {
    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Vec<Complex64>] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> &[Complex64] {
        &self.rows[n]
    }

    /// Coefficient of `e_i` in row `n` (zero above the diagonal).
    pub fn entry(&self, n: usize, i: usize) -> Complex64 {
        self.rows[n].get(i).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Self {
        assert!(!rows.is_empty());
        GnMatrix { rows, alpha: None }
    }

    /// Largest entrywise difference against another row table.
    pub fn max_entry_diff(&self, other: &GnMatrix) -> f64 {
        let n = self.order().min(other.order());
        let mut worst = 0.0f64;
        for row in 0..=n {
            for i in 0..=row {
                worst = worst.max((self.entry(row, i) - other.entry(row, i)).norm());
            }
        }
        worst
    }

    /// All rows sampled on a quadrature rule.
    ///
    /// Toeplitz rows use the one-step recurrence
    /// `g_n(x) = e^{2 pi i x} g_{n-1}(x) + conj(alpha_n)`; general rows fall
    /// back to direct summation.
    pub fn sample_rows(&self, rule: &Arc<QuadratureRule>) -> Vec<BoundaryFunction> {
        let nodes = rule.nodes();
        match &self.alpha {
            Some(a) => {
                let omegas: Vec<Complex64> = nodes
                    .iter()
                    .map(|&x| Complex64::from_polar(1.0, std::f64::consts::TAU * x))
                    .collect();
                let mut current: Vec<Complex64> = vec![a.at(0).conj(); nodes.len()];
                let mut out = Vec::with_capacity(self.rows.len());
                out.push(
                    BoundaryFunction::new(Arc::clone(rule), current.clone())
                        .expect("finite samples"),
                );
                for n in 1..=self.order() {
                    let an = a.at(n).conj();
                    for (v, w) in current.iter_mut().zip(&omegas) {
                        *v = *v * w + an;
                    }
                    out.push(
                        BoundaryFunction::new(Arc::clone(rule), current.clone())
                            .expect("finite samples"),
                    );
                }
                out
            }
            None => (0..=self.order())
                .map(|n| self.sample_row(n, rule))
                .collect(),
        }
    }

    pub fn sample_row(&self, n: usize, rule: &Arc<QuadratureRule>) -> BoundaryFunction {
        let tau = std::f64::consts::TAU;
        let values = rule
            .nodes()
            .iter()
            .map(|&x| {
                let omega = Complex64::from_polar(1.0, tau * x);
                // Horner over the row coefficients
                let mut acc = Complex64::ZERO;
                for c in self.rows[n].iter().rev() {
                    acc = acc * omega + c;
                }
                acc
            })
            .collect();
        BoundaryFunction::new(Arc::clone(rule), values).expect("finite samples")
    }
}

/// Rows from the reciprocal coefficients: row `n`, column `i` is
/// `conj(alpha_{n-i})`.
pub fn g_from_alpha(a: &AlphaSeq) -> GnMatrix {
    let rows = (0..=a.order())
        .map(|n| (0..=n).map(|i| a.at(n - i).conj()).collect())
        .collect();
    GnMatrix {
        rows,
        alpha: Some(a.clone()),
    }
}

/// Rows from the defining recursion, using `<e_n, e_i> = m(i - n)` read off
/// the moment table.
pub fn g_recursive(table: &FourierTable) -> GnMatrix {
    let order = table.order();
    let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(order + 1);
    rows.push(vec![Complex64::ONE]);
    for n in 1..=order {
        let mut row = vec![Complex64::ZERO; n + 1];
        row[n] = Complex64::ONE;
        for i in 0..n {
            let c = table.at(i as i64 - n as i64);
            if c.norm_sqr() == 0.0 {
                continue;
            }
            for (j, &prev) in rows[i].iter().enumerate() {
                row[j] -= c * prev;
            }
        }
        rows.push(row);
    }
    GnMatrix { rows, alpha: None }
}

/// Hermitian Gram matrix `G[n][m] = <g_n, g_m>` in the measure's inner
/// product, assembled through the moment table.
#[derive(Debug, Clone)]
pub struct GramMatrix {
    entries: Vec<Vec<Complex64>>,
    hermiticity_defect: f64,
}

impl GramMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Complex64>] {
        &self.entries
    }

    pub fn entry(&self, n: usize, m: usize) -> Complex64 {
        self.entries[n][m]
    }

    pub fn trace(&self) -> f64 {
        (0..self.size()).map(|i| self.entries[i][i].re).sum()
    }

    /// Largest `|G[n][m] - conj(G[m][n])|` observed before symmetrization.
    pub fn hermiticity_defect(&self) -> f64 {
        self.hermiticity_defect
    }

    pub fn from_entries(entries: Vec<Vec<Complex64>>) -> Self {
        let n = entries.len();
        assert!(entries.iter().all(|r| r.len() == n));
        let mut defect = 0.0f64;
        let mut sym = entries.clone();
        for i in 0..n {
            for j in 0..n {
                defect = defect.max((entries[i][j] - entries[j][i].conj()).norm());
                sym[i][j] = 0.5 * (entries[i][j] + entries[j][i].conj());
            }
        }
        GramMatrix {
            entries: sym,
            hermiticity_defect: defect,
        }
    }

    pub fn min_eigenvalue(&self) -> f64 {
        crate::linalg::hermitian_eigenvalues(&self.entries)[0]
    }
}

/// `G = R M R^H` where `R` holds the coefficient rows and `M` is the
/// Toeplitz matrix of the moments. The bilinear form goes through the table
/// (exact moments), not through quadrature.
pub fn gram(table: &FourierTable, g: &GnMatrix) -> GramMatrix {
    let n = g.order().min(table.order());
    // C[r][j] = sum_{i <= r} R[r][i] M[i][j]
    let mut c = vec![vec![Complex64::ZERO; n + 1]; n + 1];
    for r in 0..=n {
        for (i, &ri) in g.row(r).iter().enumerate().take(n + 1) {
            if ri.norm_sqr() == 0.0 {
                continue;
            }
            for (j, cj) in c[r].iter_mut().enumerate() {
                *cj += ri * table.at(j as i64 - i as i64);
            }
        }
    }
    let mut entries = vec![vec![Complex64::ZERO; n + 1]; n + 1];
    for r in 0..=n {
        for m in 0..=n {
            let mut acc = Complex64::ZERO;
            for (j, &mj) in g.row(m).iter().enumerate().take(n + 1) {
                acc += c[r][j] * mj.conj();
            }
            entries[r][m] = acc;
        }
    }
    GramMatrix::from_entries(entries)
}

/// Expansion of a boundary function against the sampled auxiliary rows.
#[derive(Debug, Clone)]
pub struct Expansion {
    /// `c_n = <f, g_n>` on the function's rule.
    pub coeffs: Vec<Complex64>,
    /// `|| f - sum_{n<=k} c_n e_n ||` for each `k`.
    pub residuals: Vec<f64>,
    /// Partial sums of `|c_n|^2` (nondecreasing by construction).
    pub energy_partial_sums: Vec<f64>,
    /// `||f||^2` on the rule.
    pub norm_sqr: f64,
}

/// Coefficients `<f, g_n>` from exact moments of `f`:
/// `<f, g_n> = sum_i conj(row_n[i]) m_f(i)` where `m_f(i) = <f, e_i>`.
/// For trigonometric polynomials against a moment table this route carries
/// no quadrature error at all.
pub fn coeffs_from_moments(f_moments: &[Complex64], g: &GnMatrix) -> Vec<Complex64> {
    let order = g.order().min(f_moments.len() - 1);
    (0..=order)
        .map(|n| {
            g.row(n)
                .iter()
                .zip(f_moments)
                .map(|(c, m)| c.conj() * m)
                .sum()
        })
        .collect()
}

/// Coefficients `<f, g_n>` together with reconstruction residuals in the
/// measure norm. The table caps the number of rows used.
pub fn expand(
    f: &BoundaryFunction,
    g: &GnMatrix,
    table: &FourierTable,
) -> Result<Expansion, MeasureError> {
    let order = g.order().min(table.order());
    let rule = f.rule().clone();
    let sampled = g.sample_rows(&rule);
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut residuals = Vec::with_capacity(order + 1);
    let mut energy = Vec::with_capacity(order + 1);
    let mut energy_acc = 0.0f64;
    let mut partial = BoundaryFunction::constant(&rule, Complex64::ZERO);
    for n in 0..=order {
        let c = inner_product(f, &sampled[n])?;
        coeffs.push(c);
        energy_acc += c.norm_sqr();
        energy.push(energy_acc);
        let en = sample_exponential(n as i64, &rule);
        partial = partial.add(&en.scale(c))?;
        residuals.push(f.sub(&partial)?.norm());
    }
    Ok(Expansion {
        coeffs,
        residuals,
        energy_partial_sums: energy,
        norm_sqr: f.norm_sqr(),
    })
}
