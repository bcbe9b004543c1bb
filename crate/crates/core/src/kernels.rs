//! Reproducing kernels on the disc with boundary values against a singular
//! measure: the circle kernel, the contractively-divided (de Branges-Rovnyak
//! style) kernel in closed form, the Gram double series of a coefficient
//! family, projections onto finite anchor spans, and layered combinations
//! along powers of an inner function.
//!
//! Every handle answers three questions: the kernel value `K_z(w)`, the
//! boundary samples `K*_z` on a quadrature rule, and whether the kernel
//! reproduces itself through boundary integration,
//! `K_z(w) = sum_k w_k K*_z(x_k) conj(K*_w(x_k))`.

use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::kaczmarz::GramMatrix;
use crate::linalg::{condition_inf, hermitian_eigenvalues, Lu};
use crate::measures::{BoundaryFunction, MeasureError, QuadratureRule};
use crate::series::{DiscPoint, Estimate};
use crate::transforms::InnerSeries;

const TAU: f64 = std::f64::consts::TAU;

#[derive(Debug, Error)]
pub enum KernelError {
    #[error("projection requires at least one anchor")]
    EmptyAnchors,
    #[error("anchor Gram is numerically singular (condition {0:.3e})")]
    SingularAnchorGram(f64),
    #[error("section points must be distinct")]
    DuplicatePoints,
    #[error("layers must be projections")]
    LayerNotProjected,
    #[error("measure error: {0}")]
    Measure(#[from] MeasureError),
}

/// The circle (Szego) kernel `1 / (1 - conj(z) w)`.
pub fn szego(z: DiscPoint, w: DiscPoint) -> Complex64 {
    Complex64::ONE / (Complex64::ONE - z.value().conj() * w.value())
}

/// `(1 - conj(b(z)) b(w)) / (1 - conj(z) w)` with the truncation bounds of
/// the two inner evaluations propagated to first order.
pub fn dbr_closed(b: &InnerSeries, z: DiscPoint, w: DiscPoint) -> Estimate {
    let bz = b.evaluate(z);
    let bw = b.evaluate(w);
    let s = szego(z, w);
    let value = (Complex64::ONE - bz.value.conj() * bw.value) * s;
    let bound = (bz.bound * (bw.value.norm() + bw.bound) + bw.bound * bz.value.norm()) * s.norm();
    Estimate { value, bound }
}

/// Double series `sum_{n,m} G[n][m] conj(z)^n w^m` with the geometric tail
/// bound `max|G| (|z|^{N+1} + |w|^{N+1}) / ((1-|z|)(1-|w|))`.
pub fn gram_kernel(gram: &GramMatrix, z: DiscPoint, w: DiscPoint) -> Estimate {
    let n = gram.size();
    let zb = z.value().conj();
    let wv = w.value();
    // powers of w once, then one pass over rows
    let mut wpow = Vec::with_capacity(n);
    let mut p = Complex64::ONE;
    for _ in 0..n {
        wpow.push(p);
        p *= wv;
    }
    let mut acc = Complex64::ZERO;
    let mut zp = Complex64::ONE;
    let mut sup = 0.0f64;
    for row in gram.entries() {
        let mut rowacc = Complex64::ZERO;
        for (g, wp) in row.iter().zip(&wpow) {
            rowacc += g * wp;
            sup = sup.max(g.norm());
        }
        acc += zp * rowacc;
        zp *= zb;
    }
    let (rz, rw) = (z.modulus(), w.modulus());
    let bound = sup * (rz.powi(n as i32) + rw.powi(n as i32)) / ((1.0 - rz) * (1.0 - rw));
    Estimate { value: acc, bound }
}

/// A kernel on the disc with boundary data against a fixed measure.
#[derive(Debug, Clone)]
pub enum KernelHandle {
    /// Closed form from an inner series.
    ClosedDbr { b: InnerSeries },
    /// Gram double series of a coefficient family over the exponentials;
    /// `family[n]` holds the coefficients of the n-th member on `e_0..`.
    GramSeries {
        gram: GramMatrix,
        family: Vec<Vec<Complex64>>,
    },
    /// Projection of a base kernel onto the span of its functions at the
    /// anchor points.
    Projected {
        base: Box<KernelHandle>,
        anchors: Vec<DiscPoint>,
    },
    /// `sum_n conj(b(z))^n b(w)^n k^(n)_z(w)` over projected layers.
    Layered {
        b: InnerSeries,
        layers: Vec<KernelHandle>,
    },
}

impl KernelHandle {
    pub fn closed_dbr(b: InnerSeries) -> Self {
        KernelHandle::ClosedDbr { b }
    }

    pub fn gram_series(gram: GramMatrix, family: Vec<Vec<Complex64>>) -> Self {
        KernelHandle::GramSeries { gram, family }
    }

    /// Validates the anchor set and the conditioning of its Gram.
    pub fn projected(base: KernelHandle, anchors: Vec<DiscPoint>) -> Result<Self, KernelError> {
        if anchors.is_empty() {
            return Err(KernelError::EmptyAnchors);
        }
        let h = KernelHandle::Projected {
            base: Box::new(base),
            anchors,
        };
        h.anchor_gram()?; // surface conditioning problems at construction
        Ok(h)
    }

    /// Layers must themselves be projections; their mutual orthogonality is
    /// the caller's assertion, spot-checked with
    /// [`layer_orthogonality_defect`].
    ///
    /// [`layer_orthogonality_defect`]: KernelHandle::layer_orthogonality_defect
    pub fn layered(b: InnerSeries, layers: Vec<KernelHandle>) -> Result<Self, KernelError> {
        if layers
            .iter()
            .any(|l| !matches!(l, KernelHandle::Projected { .. }))
        {
            return Err(KernelError::LayerNotProjected);
        }
        Ok(KernelHandle::Layered { b, layers })
    }

    fn anchor_gram(&self) -> Result<(Vec<Vec<Complex64>>, Vec<DiscPoint>), KernelError> {
        let KernelHandle::Projected { base, anchors } = self else {
            unreachable!("anchor_gram is only called on projections");
        };
        let k = anchors.len();
        let mut g = vec![vec![Complex64::ZERO; k]; k];
        for i in 0..k {
            for j in 0..k {
                g[i][j] = base.eval(anchors[j], anchors[i])?.value;
            }
        }
        let cond = condition_inf(&g);
        if !cond.is_finite() || cond > 1e12 {
            return Err(KernelError::SingularAnchorGram(cond));
        }
        Ok((g, anchors.clone()))
    }

    /// Kernel value `K_z(w)` with a truncation bound.
    pub fn eval(&self, z: DiscPoint, w: DiscPoint) -> Result<Estimate, KernelError> {
        match self {
            KernelHandle::ClosedDbr { b } => Ok(dbr_closed(b, z, w)),
            KernelHandle::GramSeries { gram, .. } => Ok(gram_kernel(gram, z, w)),
            KernelHandle::Projected { base, anchors } => {
                let (g, _) = self.anchor_gram()?;
                let lu = Lu::new(&g);
                let y: Result<Vec<Complex64>, KernelError> = anchors
                    .iter()
                    .map(|&a| Ok(base.eval(z, a)?.value))
                    .collect();
                let c = lu
                    .solve(&y?)
                    .ok_or(KernelError::SingularAnchorGram(f64::INFINITY))?;
                let mut acc = Complex64::ZERO;
                let mut bound = 0.0f64;
                for (cj, &aj) in c.iter().zip(anchors) {
                    let base_val = base.eval(aj, w)?;
                    acc += cj * base_val.value;
                    bound += cj.norm() * base_val.bound;
                }
                Ok(Estimate { value: acc, bound })
            }
            KernelHandle::Layered { b, layers } => {
                let bz = b.evaluate(z);
                let bw = b.evaluate(w);
                let mut acc = Complex64::ZERO;
                let mut bound = 0.0f64;
                let mut factor = Complex64::ONE;
                for (n, layer) in layers.iter().enumerate() {
                    let kn = layer.eval(z, w)?;
                    acc += factor.conj() * bw.value.powu(n as u32) * kn.value;
                    // first-order growth of the power factors
                    let fmag = bz.value.norm().powi(n as i32) * bw.value.norm().powi(n as i32);
                    bound += fmag * kn.bound
                        + kn.value.norm()
                            * n as f64
                            * (bz.bound * bw.value.norm().max(1.0) + bw.bound)
                            * bz.value
                                .norm()
                                .max(bw.value.norm())
                                .powi(n.saturating_sub(1) as i32);
                    factor *= bz.value;
                }
                Ok(Estimate { value: acc, bound })
            }
        }
    }

    /// Boundary samples `K*_z` on the rule, with a truncation bound on the
    /// sampled values.
    pub fn boundary(
        &self,
        z: DiscPoint,
        rule: &Arc<QuadratureRule>,
    ) -> Result<(BoundaryFunction, f64), KernelError> {
        match self {
            KernelHandle::ClosedDbr { b } => {
                let bz = b.evaluate(z);
                let factor = Complex64::ONE - bz.value.conj();
                let zb = z.value().conj();
                let f = BoundaryFunction::sample(rule, |x| {
                    factor / (Complex64::ONE - zb * Complex64::from_polar(1.0, TAU * x))
                });
                Ok((f, bz.bound / (1.0 - z.modulus())))
            }
            KernelHandle::GramSeries { family, .. } => {
                // K*_z = sum_n conj(z)^n h_n; regroup over the exponentials:
                // coefficient of e_i is sum_{n >= i} conj(z)^n family[n][i]
                let order = family.len() - 1;
                let zb = z.value().conj();
                let mut zpow = Vec::with_capacity(order + 1);
                let mut p = Complex64::ONE;
                for _ in 0..=order {
                    zpow.push(p);
                    p *= zb;
                }
                let mut coeff = vec![Complex64::ZERO; order + 1];
                let mut sup_row = 0.0f64;
                for (n, row) in family.iter().enumerate() {
                    let l1: f64 = row.iter().map(|c| c.norm()).sum();
                    sup_row = sup_row.max(l1);
                    for (i, c) in row.iter().enumerate() {
                        coeff[i] += zpow[n] * c;
                    }
                }
                let f = BoundaryFunction::sample(rule, |x| {
                    let omega = Complex64::from_polar(1.0, TAU * x);
                    let mut acc = Complex64::ZERO;
                    for c in coeff.iter().rev() {
                        acc = acc * omega + c;
                    }
                    acc
                });
                let r = z.modulus();
                let bound = sup_row * r.powi(order as i32 + 1) / (1.0 - r);
                Ok((f, bound))
            }
            KernelHandle::Projected { base, anchors } => {
                let (g, _) = self.anchor_gram()?;
                let lu = Lu::new(&g);
                let y: Result<Vec<Complex64>, KernelError> = anchors
                    .iter()
                    .map(|&a| Ok(base.eval(z, a)?.value))
                    .collect();
                let c = lu
                    .solve(&y?)
                    .ok_or(KernelError::SingularAnchorGram(f64::INFINITY))?;
                let mut acc = BoundaryFunction::constant(rule, Complex64::ZERO);
                let mut bound = 0.0f64;
                for (cj, &aj) in c.iter().zip(anchors) {
                    let (fj, bj) = base.boundary(aj, rule)?;
                    acc = acc.add(&fj.scale(*cj))?;
                    bound += cj.norm() * bj;
                }
                Ok((acc, bound))
            }
            KernelHandle::Layered { b, layers } => {
                // on the support of the measure attached to b the radial
                // limits of b have modulus one and drop out of the factors
                let bz = b.evaluate(z);
                let mut acc = BoundaryFunction::constant(rule, Complex64::ZERO);
                let mut bound = 0.0f64;
                let mut factor = Complex64::ONE;
                for layer in layers {
                    let (fl, bl) = layer.boundary(z, rule)?;
                    acc = acc.add(&fl.scale(factor.conj()))?;
                    bound += factor.norm() * bl + bz.bound;
                    factor *= bz.value;
                }
                Ok((acc, bound))
            }
        }
    }

    /// Largest normalized cross-layer boundary inner product; a layered
    /// handle with genuinely orthogonal layers returns a value at quadrature
    /// scale. Non-layered handles return zero.
    pub fn layer_orthogonality_defect(
        &self,
        rule: &Arc<QuadratureRule>,
    ) -> Result<f64, KernelError> {
        let KernelHandle::Layered { layers, .. } = self else {
            return Ok(0.0);
        };
        let mut basis: Vec<Vec<BoundaryFunction>> = Vec::new();
        for layer in layers {
            let KernelHandle::Projected { base, anchors } = layer else {
                return Err(KernelError::LayerNotProjected);
            };
            let fns: Result<Vec<BoundaryFunction>, KernelError> = anchors
                .iter()
                .map(|&a| Ok(base.boundary(a, rule)?.0))
                .collect();
            basis.push(fns?);
        }
        let mut worst = 0.0f64;
        for n in 0..basis.len() {
            for m in (n + 1)..basis.len() {
                for u in &basis[n] {
                    for v in &basis[m] {
                        let ip = crate::measures::inner_product(u, v)?.norm();
                        let scale = (u.norm() * v.norm()).max(1e-300);
                        worst = worst.max(ip / scale);
                    }
                }
            }
        }
        Ok(worst)
    }
}

/// Max over ordered point pairs of
/// `|K_z(w) - sum_k w_k K*_z(x_k) conj(K*_w(x_k))|`.
pub fn reproduce_check(
    handle: &KernelHandle,
    rule: &Arc<QuadratureRule>,
    points: &[DiscPoint],
) -> Result<f64, KernelError> {
    let boundaries: Result<Vec<BoundaryFunction>, KernelError> = points
        .iter()
        .map(|&z| Ok(handle.boundary(z, rule)?.0))
        .collect();
    let boundaries = boundaries?;
    let mut worst = 0.0f64;
    for (i, &z) in points.iter().enumerate() {
        for (j, &w) in points.iter().enumerate() {
            let direct = handle.eval(z, w)?.value;
            let integrated = crate::measures::inner_product(&boundaries[i], &boundaries[j])?;
            worst = worst.max((direct - integrated).norm());
        }
    }
    Ok(worst)
}

/// Eigenvalue summary of the section `(K(p_j, p_i))_{ij}`.
#[derive(Debug, Clone, Copy)]
pub struct PsdReport {
    pub min_eigenvalue: f64,
    pub trace: f64,
}

impl PsdReport {
    /// Nonnegativity up to a scale-free tolerance.
    pub fn passes(&self, relative_tol: f64) -> bool {
        self.min_eigenvalue >= -relative_tol * self.trace.abs().max(1e-300)
    }
}

/// Hermitian eigen-solve of the kernel section over the given points.
pub fn psd_check(handle: &KernelHandle, points: &[DiscPoint]) -> Result<PsdReport, KernelError> {
    for (i, a) in points.iter().enumerate() {
        for b in points.iter().skip(i + 1) {
            if (a.value() - b.value()).norm() == 0.0 {
                return Err(KernelError::DuplicatePoints);
            }
        }
    }
    let n = points.len();
    let mut section = vec![vec![Complex64::ZERO; n]; n];
    for i in 0..n {
        for j in 0..n {
            section[i][j] = handle.eval(points[j], points[i])?.value;
        }
    }
    let eig = hermitian_eigenvalues(&section);
    let trace: f64 = (0..n).map(|i| section[i][i].re).sum();
    Ok(PsdReport {
        min_eigenvalue: eig[0],
        trace,
    })
}
