//! Dual families beyond the canonical auxiliary sequence: mixture duals
//! (scale the companion measure in, keep a tight frame) and density-weighted
//! duals (divide by an exact Radon-Nikodym table, keep a frame with explicit
//! bounds). Both reconstruct through the exponentials and both feed the
//! coefficient map into the Hardy space.

use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use thiserror::Error;

use crate::kaczmarz::{alpha, g_from_alpha, GnMatrix};
use crate::linalg::hermitian_eigenvalues;
use crate::measures::{
    inner_product, sample_exponential, BoundaryFunction, FourierTable, MeasureError, MeasureSpec,
    QuadratureRule,
};

#[derive(Debug, Error)]
pub enum DualError {
    #[error("mixture coefficient must lie in (0, 1], got {0}")]
    InvalidEta(f64),
    #[error("unsupported measure pair: {0}")]
    UnsupportedSpec(String),
    #[error("atom at position {0} carries zero weight in the reference measure")]
    ZeroDensity(f64),
    #[error("measure error: {0}")]
    Measure(#[from] MeasureError),
}

/// How the reference family's members are rescaled into the target space.
#[derive(Debug, Clone)]
pub enum Scaling {
    /// Multiply every member by the mixture coefficient.
    Uniform { eta: f64 },
    /// Divide pointwise by the density table over the target's atoms.
    Weighted { density: Vec<f64>, lo: f64, hi: f64 },
}

/// A family `{h_n}` dual to the exponentials in the target measure's space,
/// represented by the reference measure's coefficient rows and a scaling.
#[derive(Debug, Clone)]
pub struct DualFamily {
    rows: GnMatrix,
    scaling: Scaling,
    mu_rule: Arc<QuadratureRule>,
    lambda_rule: Arc<QuadratureRule>,
    /// `Some(false)` when the two atomic supports intersect (the mixture
    /// hypothesis asks for mutually singular parts); `None` when not
    /// decidable symbolically.
    pub supports_disjoint: Option<bool>,
}

impl DualFamily {
    pub fn order(&self) -> usize {
        self.rows.order()
    }

    pub fn rows(&self) -> &GnMatrix {
        &self.rows
    }

    pub fn scaling(&self) -> &Scaling {
        &self.scaling
    }

    pub fn mu_rule(&self) -> &Arc<QuadratureRule> {
        &self.mu_rule
    }

    pub fn lambda_rule(&self) -> &Arc<QuadratureRule> {
        &self.lambda_rule
    }

    /// The n-th scaled member sampled on the target rule.
    pub fn scaled_member(&self, n: usize) -> BoundaryFunction {
        let raw = self.rows.sample_row(n, &self.mu_rule);
        match &self.scaling {
            Scaling::Uniform { eta } => raw.scale(Complex64::new(*eta, 0.0)),
            Scaling::Weighted { density, .. } => {
                let values = raw
                    .values()
                    .iter()
                    .zip(density)
                    .map(|(v, d)| v / d)
                    .collect();
                BoundaryFunction::new(Arc::clone(&self.mu_rule), values)
                    .expect("finite scaled samples")
            }
        }
    }

    /// All scaled members at once.
    pub fn scaled_members(&self) -> Vec<BoundaryFunction> {
        let raw = self.rows.sample_rows(&self.mu_rule);
        match &self.scaling {
            Scaling::Uniform { eta } => raw
                .into_iter()
                .map(|f| f.scale(Complex64::new(*eta, 0.0)))
                .collect(),
            Scaling::Weighted { density, .. } => raw
                .into_iter()
                .map(|f| {
                    let values = f.values().iter().zip(density).map(|(v, d)| v / d).collect();
                    BoundaryFunction::new(Arc::clone(&self.mu_rule), values)
                        .expect("finite scaled samples")
                })
                .collect(),
        }
    }

    /// Zero-extension of a target-space function onto the reference rule.
    /// Nodes are matched bitwise; both rules come from the same spec
    /// arithmetic, so shared atoms have identical representations.
    pub fn extend_to_lambda(&self, f: &BoundaryFunction) -> Result<BoundaryFunction, DualError> {
        if !Arc::ptr_eq(f.rule(), &self.mu_rule) && **f.rule() != *self.mu_rule {
            return Err(DualError::Measure(MeasureError::RuleMismatch));
        }
        let index: HashMap<u64, usize> = self
            .mu_rule
            .nodes()
            .iter()
            .enumerate()
            .map(|(i, x)| (x.to_bits(), i))
            .collect();
        let values = self
            .lambda_rule
            .nodes()
            .iter()
            .map(|x| {
                index
                    .get(&x.to_bits())
                    .map(|&i| f.values()[i])
                    .unwrap_or(Complex64::ZERO)
            })
            .collect();
        Ok(BoundaryFunction::new(Arc::clone(&self.lambda_rule), values).expect("finite extension"))
    }

    /// Coefficients `<g, h_n>` in the reference measure's inner product.
    pub fn lambda_coeffs(&self, g: &BoundaryFunction) -> Result<Vec<Complex64>, DualError> {
        let sampled = self.rows.sample_rows(&self.lambda_rule);
        sampled.iter().map(|h| Ok(inner_product(g, h)?)).collect()
    }
}

/// Dual family from a mixture: blend the target with a mutually singular
/// companion, take the companion measure's canonical rows, and scale by the
/// blend coefficient. The result is a tight frame in the target space with
/// frame bound `eta`.
pub fn mixture_dual(
    mu: &MeasureSpec,
    nu: &MeasureSpec,
    eta: f64,
    order: usize,
    depth: u32,
) -> Result<DualFamily, DualError> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(DualError::InvalidEta(eta));
    }
    let supports_disjoint = mu.atomic_supports_disjoint(nu);
    let lambda = if eta == 1.0 {
        mu.clone()
    } else {
        MeasureSpec::mixture(vec![(eta, mu.clone()), (1.0 - eta, nu.clone())])?
    };
    let table = FourierTable::build(&lambda, order);
    let rows = g_from_alpha(&alpha(&table));
    Ok(DualFamily {
        rows,
        scaling: Scaling::Uniform { eta },
        mu_rule: mu.atoms(depth),
        lambda_rule: lambda.atoms(depth),
        supports_disjoint,
    })
}

/// Dual family from an absolutely continuous pair of atomic measures: the
/// reference measure's canonical rows divided by the exact density
/// `d(target)/d(reference)` on the target's atoms. Only atomic pairs are
/// accepted; there the density is a finite table.
pub fn weighted_dual(
    mu: &MeasureSpec,
    lambda: &MeasureSpec,
    order: usize,
) -> Result<DualFamily, DualError> {
    let (MeasureSpec::Atomic { atoms: mu_atoms }, MeasureSpec::Atomic { atoms: la_atoms }) =
        (mu, lambda)
    else {
        return Err(DualError::UnsupportedSpec(
            "weighted duals require atomic target and reference".into(),
        ));
    };
    let mut density = Vec::with_capacity(mu_atoms.len());
    for &(x, w) in mu_atoms {
        let Some(&(_, lw)) = la_atoms.iter().find(|&&(y, _)| y == x) else {
            return Err(DualError::ZeroDensity(x));
        };
        density.push(w / lw);
    }
    let lo = density.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = density.iter().copied().fold(0.0f64, f64::max);
    let table = FourierTable::build(lambda, order);
    let rows = g_from_alpha(&alpha(&table));
    Ok(DualFamily {
        rows,
        scaling: Scaling::Weighted { density, lo, hi },
        mu_rule: mu.atoms(0),
        lambda_rule: lambda.atoms(0),
        supports_disjoint: Some(false),
    })
}

/// Empirical frame bounds of the scaled family in the target space.
#[derive(Debug, Clone, Copy)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
    /// True when the bounds are eigenvalue extremes of the exact finite
    /// frame operator (atomic target); estimates from random test vectors
    /// otherwise.
    pub certified: bool,
}

/// Frame-operator eigenvalue extremes on an atomic target; min/max Rayleigh
/// quotients over `trials` random trigonometric polynomials otherwise.
pub fn frame_bounds_empirical(fam: &DualFamily, trials: usize, rng: &mut impl Rng) -> FrameBounds {
    let members = fam.scaled_members();
    if fam.mu_rule.is_exact() {
        let m = fam.mu_rule.len();
        let sqrt_w: Vec<f64> = fam.mu_rule.weights().iter().map(|w| w.sqrt()).collect();
        let mut op = vec![vec![Complex64::ZERO; m]; m];
        for h in &members {
            let u: Vec<Complex64> = h.values().iter().zip(&sqrt_w).map(|(v, s)| v * s).collect();
            for i in 0..m {
                for j in 0..m {
                    op[i][j] += u[i] * u[j].conj();
                }
            }
        }
        let eig = hermitian_eigenvalues(&op);
        FrameBounds {
            lower: eig[0],
            upper: eig[eig.len() - 1],
            certified: true,
        }
    } else {
        let degree = 8usize.min(fam.order());
        let mut lower = f64::INFINITY;
        let mut upper = 0.0f64;
        for _ in 0..trials {
            let mut f = BoundaryFunction::constant(&fam.mu_rule, Complex64::ZERO);
            for k in 0..=degree {
                let c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                f = f
                    .add(&sample_exponential(k as i64, &fam.mu_rule).scale(c))
                    .expect("same rule");
            }
            let norm_sqr = f.norm_sqr();
            if norm_sqr < 1e-12 {
                continue;
            }
            let energy: f64 = members
                .iter()
                .map(|h| inner_product(&f, h).expect("same rule").norm_sqr())
                .sum();
            let q = energy / norm_sqr;
            lower = lower.min(q);
            upper = upper.max(q);
        }
        FrameBounds {
            lower,
            upper,
            certified: false,
        }
    }
}

/// Coefficients `c_n = <f, h~_n>` of the Hardy-space element attached to `f`.
pub fn j_coeffs(f: &BoundaryFunction, fam: &DualFamily) -> Result<Vec<Complex64>, DualError> {
    if !Arc::ptr_eq(f.rule(), &fam.mu_rule) && **f.rule() != *fam.mu_rule {
        return Err(DualError::Measure(MeasureError::RuleMismatch));
    }
    fam.scaled_members()
        .iter()
        .map(|h| Ok(inner_product(f, h)?))
        .collect()
}

/// Drop the constant coefficient and shift left: the coefficient action of
/// `f -> (f(z) - f(0)) / z`.
pub fn backward_shift(c: &[Complex64]) -> Vec<Complex64> {
    if c.len() <= 1 {
        return vec![Complex64::ZERO];
    }
    c[1..].to_vec()
}

/// Residuals `|| f - sum_{n<=k} c_n e_n ||` of the dual reconstruction.
pub fn reconstruct_residuals(
    f: &BoundaryFunction,
    fam: &DualFamily,
) -> Result<Vec<f64>, DualError> {
    let coeffs = j_coeffs(f, fam)?;
    let mut partial = BoundaryFunction::constant(&fam.mu_rule, Complex64::ZERO);
    let mut out = Vec::with_capacity(coeffs.len());
    for (n, c) in coeffs.iter().enumerate() {
        let en = sample_exponential(n as i64, &fam.mu_rule);
        partial = partial.add(&en.scale(*c))?;
        out.push(f.sub(&partial)?.norm());
    }
    Ok(out)
}

/// Both sides of the backward-shift identity, computed independently.
///
/// Left: the shifted coefficient sequence of `f`. Right: the reference-space
/// coefficients of `(f~ - <f~, e_0> e_0) e_{-1}`, where `f~` is the zero
/// extension of `f`.
pub fn backward_shift_identity(
    f: &BoundaryFunction,
    fam: &DualFamily,
) -> Result<(Vec<Complex64>, Vec<Complex64>), DualError> {
    let lhs = backward_shift(&j_coeffs(f, fam)?);
    let f_ext = fam.extend_to_lambda(f)?;
    let e0 = sample_exponential(0, &fam.lambda_rule);
    let mean = inner_product(&f_ext, &e0)?;
    let shifted_vals: Vec<Complex64> = f_ext
        .values()
        .iter()
        .zip(fam.lambda_rule.nodes())
        .map(|(v, &x)| (v - mean) * Complex64::from_polar(1.0, -std::f64::consts::TAU * x))
        .collect();
    let shifted =
        BoundaryFunction::new(Arc::clone(&fam.lambda_rule), shifted_vals).expect("finite samples");
    let mut rhs = fam.lambda_coeffs(&shifted)?;
    rhs.truncate(lhs.len());
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn delta0() -> MeasureSpec {
        MeasureSpec::point_mass(0.0).unwrap()
    }

    fn delta_half() -> MeasureSpec {
        MeasureSpec::point_mass(0.5).unwrap()
    }

    fn comb2() -> MeasureSpec {
        MeasureSpec::uniform_comb(2).unwrap()
    }

    fn lopsided() -> MeasureSpec {
        MeasureSpec::atomic(vec![(0.0, 0.75), (0.5, 0.25)]).unwrap()
    }

    #[test]
    fn mixture_dual_two_atoms_is_tight() {
        let fam = mixture_dual(&delta0(), &delta_half(), 0.5, 32, 0).unwrap();
        assert_eq!(fam.supports_disjoint, Some(true));
        // members 0 and 1 restricted to the single target atom
        let h0 = fam.scaled_member(0);
        let h1 = fam.scaled_member(1);
        assert!((h0.values()[0] - Complex64::new(0.5, 0.0)).norm() < 1e-14);
        assert!((h1.values()[0] - Complex64::new(0.5, 0.0)).norm() < 1e-14);
        let f = BoundaryFunction::constant(fam.mu_rule(), Complex64::new(2.0, -1.0));
        let c = j_coeffs(&f, &fam).unwrap();
        let energy: f64 = c.iter().map(|x| x.norm_sqr()).sum();
        assert_abs_diff_eq!(energy, 0.5 * f.norm_sqr(), epsilon = 1e-12);
    }

    #[test]
    fn mixture_dual_tightness_across_etas() {
        for &eta in &[0.25, 0.5, 0.75] {
            let fam = mixture_dual(&delta0(), &delta_half(), eta, 64, 0).unwrap();
            let f = BoundaryFunction::constant(fam.mu_rule(), Complex64::new(1.0, 0.3));
            let c = j_coeffs(&f, &fam).unwrap();
            let energy: f64 = c.iter().map(|x| x.norm_sqr()).sum();
            let gap = (energy - eta * f.norm_sqr()).abs();
            assert!(gap < 1e-10 * f.norm_sqr(), "eta {eta}: gap {gap}");
        }
    }

    #[test]
    fn mixture_dual_eta_one_is_canonical() {
        let spec = comb2();
        let fam = mixture_dual(&spec, &delta0(), 1.0, 16, 0).unwrap();
        let t = FourierTable::build(&spec, 16);
        let g = g_from_alpha(&alpha(&t));
        assert!(fam.rows().max_entry_diff(&g) < 1e-14);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fb = frame_bounds_empirical(&fam, 10, &mut rng);
        assert!(fb.certified);
        assert_abs_diff_eq!(fb.lower, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(fb.upper, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn mixture_dual_reconstructs_constants() {
        let fam = mixture_dual(&delta0(), &delta_half(), 0.5, 32, 0).unwrap();
        let c = Complex64::new(3.0, 1.0);
        let f = BoundaryFunction::constant(fam.mu_rule(), c);
        let res = reconstruct_residuals(&f, &fam).unwrap();
        // (c/2)(e_0 + e_1) equals c at the atom x = 0
        assert!(res[1] < 1e-12, "residual {}", res[1]);
    }

    #[test]
    fn mixture_dual_rejects_bad_eta() {
        assert!(matches!(
            mixture_dual(&delta0(), &delta_half(), 0.0, 8, 0),
            Err(DualError::InvalidEta(_))
        ));
        assert!(matches!(
            mixture_dual(&delta0(), &delta_half(), 1.5, 8, 0),
            Err(DualError::InvalidEta(_))
        ));
    }

    #[test]
    fn mixture_dual_frame_operator_is_half_identity() {
        let fam = mixture_dual(&delta0(), &delta_half(), 0.5, 64, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let fb = frame_bounds_empirical(&fam, 10, &mut rng);
        assert!(fb.certified);
        assert_abs_diff_eq!(fb.lower, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(fb.upper, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn weighted_dual_two_atom_bounds() {
        let fam = weighted_dual(&lopsided(), &comb2(), 32).unwrap();
        let Scaling::Weighted { density, lo, hi } = fam.scaling() else {
            panic!("expected weighted scaling");
        };
        assert_abs_diff_eq!(density[0], 1.5, epsilon = 1e-14);
        assert_abs_diff_eq!(density[1], 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(*lo, 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(*hi, 1.5, epsilon = 1e-14);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let fb = frame_bounds_empirical(&fam, 10, &mut rng);
        assert!(fb.certified);
        // extremes land exactly on 1/hi and 1/lo here
        assert!(fb.lower >= 1.0 / hi - 1e-9, "lower {}", fb.lower);
        assert!(fb.upper <= 1.0 / lo + 1e-9, "upper {}", fb.upper);
        assert_abs_diff_eq!(fb.lower, 2.0 / 3.0, epsilon = 1e-10);
        assert_abs_diff_eq!(fb.upper, 2.0, epsilon = 1e-10);
    }

    #[test]
    fn weighted_dual_four_atom_pair() {
        let mu =
            MeasureSpec::atomic(vec![(0.0, 0.4), (0.25, 0.1), (0.5, 0.3), (0.75, 0.2)]).unwrap();
        let la = MeasureSpec::uniform_comb(4).unwrap();
        let fam = weighted_dual(&mu, &la, 48).unwrap();
        let Scaling::Weighted { lo, hi, .. } = fam.scaling().clone() else {
            unreachable!()
        };
        assert_abs_diff_eq!(lo, 0.4, epsilon = 1e-14);
        assert_abs_diff_eq!(hi, 1.6, epsilon = 1e-14);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let fb = frame_bounds_empirical(&fam, 10, &mut rng);
        assert!(fb.certified);
        assert!(fb.lower >= 1.0 / hi - 1e-9 && fb.upper <= 1.0 / lo + 1e-9);
        // four-dimensional target space: expansion terminates by k = 3
        let f = sample_exponential(2, fam.mu_rule())
            .add(&sample_exponential(1, fam.mu_rule()).scale(Complex64::new(0.0, 0.5)))
            .unwrap();
        let res = reconstruct_residuals(&f, &fam).unwrap();
        assert!(res[3] < 1e-10, "residual {}", res[3]);
        let (lhs, rhs) = backward_shift_identity(&f, &fam).unwrap();
        let worst = lhs
            .iter()
            .zip(&rhs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(worst < 1e-10, "shift identity gap {worst}");
    }

    #[test]
    fn weighted_dual_identity_pair_is_parseval() {
        let fam = weighted_dual(&comb2(), &comb2(), 32).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let fb = frame_bounds_empirical(&fam, 10, &mut rng);
        assert_abs_diff_eq!(fb.lower, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(fb.upper, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn weighted_dual_reconstructs_exponential() {
        let fam = weighted_dual(&lopsided(), &comb2(), 16).unwrap();
        let f = sample_exponential(1, fam.mu_rule());
        let res = reconstruct_residuals(&f, &fam).unwrap();
        assert!(res[2] < 1e-12, "residual {}", res[2]);
    }

    #[test]
    fn weighted_dual_rejects_unsupported_pairs() {
        let mu3 = MeasureSpec::cantor(3, &[0, 2]).unwrap();
        assert!(matches!(
            weighted_dual(&mu3, &comb2(), 8),
            Err(DualError::UnsupportedSpec(_))
        ));
        // target atom missing from the reference support
        let off = MeasureSpec::atomic(vec![(0.25, 1.0)]).unwrap();
        assert!(matches!(
            weighted_dual(&off, &comb2(), 8),
            Err(DualError::ZeroDensity(_))
        ));
    }

    #[test]
    fn j_norm_equivalence_on_random_vectors() {
        let fam = weighted_dual(&lopsided(), &comb2(), 48).unwrap();
        let Scaling::Weighted { lo, hi, .. } = fam.scaling().clone() else {
            unreachable!()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let vals = vec![
                Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
                Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            ];
            let f = BoundaryFunction::new(Arc::clone(fam.mu_rule()), vals).unwrap();
            let nf = f.norm_sqr();
            if nf < 1e-9 {
                continue;
            }
            let c = j_coeffs(&f, &fam).unwrap();
            let energy: f64 = c.iter().map(|x| x.norm_sqr()).sum();
            assert!(energy >= nf / hi - 1e-9, "lower equivalence");
            assert!(energy <= nf / lo + 1e-9, "upper equivalence");
        }
    }

    #[test]
    fn j_coeffs_are_linear() {
        let fam = weighted_dual(&lopsided(), &comb2(), 16).unwrap();
        let f = sample_exponential(1, fam.mu_rule());
        let g = sample_exponential(2, fam.mu_rule()).scale(Complex64::new(0.0, 0.7));
        let sum = f.add(&g).unwrap();
        let cf = j_coeffs(&f, &fam).unwrap();
        let cg = j_coeffs(&g, &fam).unwrap();
        let cs = j_coeffs(&sum, &fam).unwrap();
        for n in 0..cf.len() {
            assert!((cs[n] - cf[n] - cg[n]).norm() < 1e-13);
        }
    }

    #[test]
    fn j_coeffs_of_constant_on_canonical_family() {
        let fam = weighted_dual(&comb2(), &comb2(), 16).unwrap();
        let f = BoundaryFunction::constant(fam.mu_rule(), Complex64::ONE);
        let c = j_coeffs(&f, &fam).unwrap();
        assert!((c[0] - Complex64::ONE).norm() < 1e-13);
        for n in 1..c.len() {
            assert!(c[n].norm() < 1e-13);
        }
    }

    #[test]
    fn backward_shift_drops_constant() {
        let c0 = backward_shift(&[Complex64::ONE]);
        assert!(c0.iter().all(|c| c.norm() == 0.0));
        let shifted = backward_shift(&[Complex64::ZERO, Complex64::ONE, Complex64::ZERO]);
        assert_eq!(shifted[0], Complex64::ONE);
        assert_eq!(shifted[1], Complex64::ZERO);
    }

    #[test]
    fn backward_shift_identity_weighted_pair() {
        let fam = weighted_dual(&lopsided(), &comb2(), 32).unwrap();
        let f = sample_exponential(0, fam.mu_rule());
        let (lhs, rhs) = backward_shift_identity(&f, &fam).unwrap();
        let worst = lhs
            .iter()
            .zip(&rhs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(worst < 1e-10, "identity gap {worst}");
    }

    #[test]
    fn backward_shift_identity_strict_subsupport() {
        // the reference charges an atom the target misses; the identity
        // still holds coefficientwise
        let fam = mixture_dual(&delta0(), &delta_half(), 0.5, 32, 0).unwrap();
        let f = sample_exponential(0, fam.mu_rule());
        let (lhs, rhs) = backward_shift_identity(&f, &fam).unwrap();
        let worst = lhs
            .iter()
            .zip(&rhs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(worst < 1e-10, "identity gap {worst}");
        // the witness has a nonzero shifted sequence
        assert!(lhs[0].norm() > 0.1);
    }

    #[test]
    fn cantor_mixture_energy_is_monotone_and_tightness_bounded() {
        // digit-system target: coefficients through the exact moment route,
        // energy sums monotone and capped by eta times the squared norm
        let mu = MeasureSpec::cantor(3, &[0, 2]).unwrap();
        let nu = MeasureSpec::point_mass(0.25).unwrap();
        let eta = 0.5;
        let fam = mixture_dual(&mu, &nu, eta, 128, 8).unwrap();
        let mu_table = FourierTable::build(&mu, 128);
        let coeffs: Vec<Complex64> =
            crate::kaczmarz::coeffs_from_moments(mu_table.values(), fam.rows())
                .iter()
                .map(|c| eta * c)
                .collect();
        let mut acc = 0.0;
        for c in &coeffs {
            let next = acc + c.norm_sqr();
            assert!(next + 1e-15 >= acc);
            acc = next;
        }
        assert!(acc <= eta * 1.0 * (1.0 + 1e-8), "energy {acc}");

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fb = frame_bounds_empirical(&fam, 8, &mut rng);
        assert!(!fb.certified);
        assert!(fb.lower > 0.0);
        assert!(fb.upper <= eta + 1e-3, "estimated upper {}", fb.upper);
    }

    #[test]
    fn reconstruction_residuals_nonincreasing_on_atomic() {
        let fam = weighted_dual(&lopsided(), &comb2(), 24).unwrap();
        let f = sample_exponential(1, fam.mu_rule())
            .add(&sample_exponential(0, fam.mu_rule()).scale(Complex64::new(0.5, 0.5)))
            .unwrap();
        let res = reconstruct_residuals(&f, &fam).unwrap();
        for w in res.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
        assert!(res.last().unwrap() < &1e-10);
    }

    #[test]
    fn distinct_mixtures_give_distinct_families() {
        let mu = delta0();
        let fam_a = mixture_dual(&mu, &delta_half(), 0.5, 24, 0).unwrap();
        let fam_b = mixture_dual(&mu, &delta_half(), 0.75, 24, 0).unwrap();
        let fam_c = mixture_dual(&mu, &MeasureSpec::point_mass(0.25).unwrap(), 0.5, 24, 0).unwrap();
        for other in [&fam_b, &fam_c] {
            let worst = (0..=24)
                .map(|n| {
                    fam_a
                        .scaled_member(n)
                        .sub(&other.scaled_member(n))
                        .unwrap()
                        .norm()
                })
                .fold(0.0, f64::max);
            assert!(worst > 1e-6, "families should differ, max row gap {worst}");
        }
    }
}
