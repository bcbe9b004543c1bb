//! Layer decomposition of a Hardy-space element along the powers of an inner
//! function: `f = phi_0 + phi_1 b + phi_2 b^2 + ...` with each layer
//! annihilated by the adjoint multiplication operator.
//!
//! One step peels `phi = f - b T(f)` and continues with `T(f)`, where `T` is
//! the adjoint of multiplication by `b` in coefficient form. The iteration
//! telescopes exactly in the truncated algebra, so reconstruction is a
//! roundoff-level identity regardless of how well the truncated `b`
//! approximates its inner limit; norm additivity and layer membership
//! degrade with the energy the truncation is missing, which
//! [`truncation_energy_deficit`] measures.

use crate::series::PowerSeries;
use crate::transforms::InnerSeries;

/// Adjoint of multiplication by `b` on coefficients:
/// `out_k = sum_j conj(b_j) f_{k+j}`. The output keeps the input's order;
/// entries beyond the shared truncation are treated as zero.
pub fn toeplitz_adjoint(b: &InnerSeries, f: &PowerSeries) -> PowerSeries {
    let n = f.order();
    let bc = b.series().coeffs();
    let fc = f.coeffs();
    let coeffs = (0..=n)
        .map(|k| {
            bc.iter()
                .take(n - k + 1)
                .enumerate()
                .map(|(j, bj)| bj.conj() * fc[k + j])
                .sum()
        })
        .collect();
    PowerSeries::new(coeffs).expect("finite coefficients")
}

/// Layers `phi_0..phi_M` with the unexpanded remainder `T^{M+1} f`.
#[derive(Debug, Clone)]
pub struct WoldLayers {
    b: InnerSeries,
    layers: Vec<PowerSeries>,
    residual: PowerSeries,
}

impl WoldLayers {
    pub fn b(&self) -> &InnerSeries {
        &self.b
    }

    pub fn layers(&self) -> &[PowerSeries] {
        &self.layers
    }

    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }

    /// `T^{M+1} f`, what remains after the last expanded layer.
    pub fn residual(&self) -> &PowerSeries {
        &self.residual
    }

    /// `| ||f||^2 - sum ||phi_n||^2 - ||residual||^2 |` against the supplied
    /// source.
    pub fn norm_gap(&self, f: &PowerSeries) -> f64 {
        let total: f64 =
            self.layers.iter().map(|p| p.norm_sqr()).sum::<f64>() + self.residual.norm_sqr();
        (f.norm_sqr() - total).abs()
    }

    /// `||T phi_n||` for each layer; membership defect in the kernel of the
    /// adjoint.
    pub fn membership_defects(&self) -> Vec<f64> {
        self.layers
            .iter()
            .map(|p| toeplitz_adjoint(&self.b, p).norm_sqr().sqrt())
            .collect()
    }

    /// Largest `|<b^i phi_i, b^j phi_j>|` over `i != j`, including the
    /// remainder term.
    pub fn orthogonality_defect(&self) -> f64 {
        let order = self.residual.order();
        let mut terms: Vec<PowerSeries> = Vec::with_capacity(self.layers.len() + 1);
        let mut power = PowerSeries::one(order);
        for phi in &self.layers {
            terms.push(power.multiply(phi));
            power = power.multiply(self.b.series());
        }
        terms.push(power.multiply(&self.residual));
        let mut worst = 0.0f64;
        for i in 0..terms.len() {
            for j in (i + 1)..terms.len() {
                worst = worst.max(terms[i].inner(&terms[j]).norm());
            }
        }
        worst
    }
}

/// Energy the truncation of `b` is missing against a unit-energy inner
/// limit: `1 - sum |b_j|^2`. Norm additivity and membership defects of a
/// layer decomposition scale with this deficit.
pub fn truncation_energy_deficit(b: &InnerSeries) -> f64 {
    (1.0 - b.series().norm_sqr()).max(0.0)
}

/// Peel `depth + 1` layers off `f` along `b`.
pub fn wold_layers(f: &PowerSeries, b: &InnerSeries, depth: usize) -> WoldLayers {
    let mut current = f.clone();
    let mut layers = Vec::with_capacity(depth + 1);
    for _ in 0..=depth {
        let next = toeplitz_adjoint(b, &current);
        let phi = current.sub(&b.series().multiply(&next));
        layers.push(phi);
        current = next;
    }
    WoldLayers {
        b: b.clone(),
        layers,
        residual: current,
    }
}

/// `sum_n phi_n b^n + b^{M+1} residual`, assembled in Horner form; the
/// iteration telescopes, so this reproduces the decomposed element exactly
/// up to roundoff.
pub fn wold_reconstruct(w: &WoldLayers) -> PowerSeries {
    let mut acc = w.residual.clone();
    for phi in w.layers.iter().rev() {
        acc = phi.add(&w.b.series().multiply(&acc));
    }
    acc
}
