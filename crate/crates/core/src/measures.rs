//! Singular-measure descriptors, their moment tables, and finite quadrature
//! realizations.
//!
//! A [`MeasureSpec`] describes a probability measure on `[0, 1)` symbolically:
//! a finite atomic measure, the invariant measure of an affine digit system
//! (`x -> (x + d) / R` over a digit set), or a convex mixture of the two. The
//! moments `m(n) = int e^{-2 pi i n x} dmu(x)` are computed exactly for atoms
//! and through the convergent infinite product for digit systems. A
//! [`QuadratureRule`] realizes the measure as a finite node/weight family for
//! integration of boundary data.

use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

const TAU: f64 = std::f64::consts::TAU;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeasureError {
    #[error("invalid measure: {0}")]
    InvalidSpec(String),
    #[error("boundary functions live on different quadrature rules")]
    RuleMismatch,
    #[error("invalid moment table: {0}")]
    InvalidTable(String),
}

/// `e^{2 pi i x}` as a point of the unit circle.
pub fn circle_point(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * x)
}

/// Symbolic description of a singular probability measure on `[0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub enum MeasureSpec {
    /// Finitely many atoms `(position, weight)` with distinct positions and
    /// total weight one.
    Atomic { atoms: Vec<(f64, f64)> },
    /// Invariant measure of the maps `x -> (x + d) / scale` for `d` in
    /// `digits`, chosen with the given probabilities. With fewer digits than
    /// `scale` the support is a Cantor-type set.
    Ifs {
        scale: u32,
        digits: Vec<u32>,
        weights: Vec<f64>,
    },
    /// Convex mixture `sum eta_i mu_i`.
    Mixture { terms: Vec<(f64, MeasureSpec)> },
}

const MASS_TOL: f64 = 1e-12;

impl MeasureSpec {
    pub fn atomic(atoms: Vec<(f64, f64)>) -> Result<Self, MeasureError> {
        if atoms.is_empty() {
            return Err(MeasureError::InvalidSpec("no atoms".into()));
        }
        for &(x, w) in &atoms {
            if !(0.0..1.0).contains(&x) {
                return Err(MeasureError::InvalidSpec(format!(
                    "atom position {x} outside [0, 1)"
                )));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(MeasureError::InvalidSpec(format!("atom weight {w} <= 0")));
            }
        }
        let mut xs: Vec<f64> = atoms.iter().map(|a| a.0).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if xs.windows(2).any(|p| p[0] == p[1]) {
            return Err(MeasureError::InvalidSpec("duplicate atom positions".into()));
        }
        let mass: f64 = atoms.iter().map(|a| a.1).sum();
        if (mass - 1.0).abs() > MASS_TOL {
            return Err(MeasureError::InvalidSpec(format!(
                "atom weights sum to {mass}, expected 1"
            )));
        }
        Ok(MeasureSpec::Atomic { atoms })
    }

    pub fn ifs(scale: u32, digits: Vec<u32>, weights: Vec<f64>) -> Result<Self, MeasureError> {
        if scale < 2 {
            return Err(MeasureError::InvalidSpec("scale must be >= 2".into()));
        }
        if digits.is_empty() || digits.len() >= scale as usize {
            return Err(MeasureError::InvalidSpec(
                "digit count must be >= 1 and < scale".into(),
            ));
        }
        if digits.windows(2).any(|p| p[0] >= p[1]) || *digits.last().unwrap() >= scale {
            return Err(MeasureError::InvalidSpec(
                "digits must be strictly increasing in [0, scale)".into(),
            ));
        }
        if weights.len() != digits.len() || weights.iter().any(|&w| !(w.is_finite() && w > 0.0)) {
            return Err(MeasureError::InvalidSpec(
                "need one positive weight per digit".into(),
            ));
        }
        let mass: f64 = weights.iter().sum();
        if (mass - 1.0).abs() > MASS_TOL {
            return Err(MeasureError::InvalidSpec(format!(
                "digit weights sum to {mass}, expected 1"
            )));
        }
        Ok(MeasureSpec::Ifs {
            scale,
            digits,
            weights,
        })
    }

    pub fn mixture(terms: Vec<(f64, MeasureSpec)>) -> Result<Self, MeasureError> {
        if terms.is_empty() {
            return Err(MeasureError::InvalidSpec("empty mixture".into()));
        }
        if terms
            .iter()
            .any(|&(eta, _)| !(eta.is_finite() && eta > 0.0))
        {
            return Err(MeasureError::InvalidSpec(
                "mixture coefficients must be positive".into(),
            ));
        }
        let mass: f64 = terms.iter().map(|t| t.0).sum();
        if (mass - 1.0).abs() > MASS_TOL {
            return Err(MeasureError::InvalidSpec(format!(
                "mixture coefficients sum to {mass}, expected 1"
            )));
        }
        Ok(MeasureSpec::Mixture { terms })
    }

    /// Point mass at `x`.
    pub fn point_mass(x: f64) -> Result<Self, MeasureError> {
        Self::atomic(vec![(x, 1.0)])
    }

    /// Equal atoms at `j / m` for `j = 0..m`.
    pub fn uniform_comb(m: usize) -> Result<Self, MeasureError> {
        Self::atomic(
            (0..m)
                .map(|j| (j as f64 / m as f64, 1.0 / m as f64))
                .collect(),
        )
    }

    /// Equal-weight Cantor-type measure on the given digit set.
    pub fn cantor(scale: u32, digits: &[u32]) -> Result<Self, MeasureError> {
        let w = 1.0 / digits.len() as f64;
        Self::ifs(scale, digits.to_vec(), vec![w; digits.len()])
    }

    /// Moment `int e^{-2 pi i n x} dmu(x)`; negative `n` is the conjugate of
    /// `|n|` since the measure is real.
    pub fn fourier(&self, n: i64) -> Complex64 {
        if n < 0 {
            return self.fourier(-n).conj();
        }
        match self {
            MeasureSpec::Atomic { atoms } => atoms
                .iter()
                .map(|&(x, w)| Complex64::from_polar(w, -TAU * n as f64 * x))
                .sum(),
            MeasureSpec::Ifs {
                scale,
                digits,
                weights,
            } => {
                if n == 0 {
                    return Complex64::ONE;
                }
                let maxd = *digits.last().unwrap() as f64;
                let r = *scale as f64;
                let mut val = Complex64::ONE;
                let mut rk = r;
                // stop once the remaining factors differ from 1 below
                // double-precision resolution
                while TAU * n as f64 * maxd / rk >= 1e-16 {
                    let factor: Complex64 = digits
                        .iter()
                        .zip(weights)
                        .map(|(&d, &w)| Complex64::from_polar(w, -TAU * n as f64 * d as f64 / rk))
                        .sum();
                    val *= factor;
                    rk *= r;
                }
                val
            }
            MeasureSpec::Mixture { terms } => terms
                .iter()
                .map(|(eta, spec)| Complex64::new(*eta, 0.0) * spec.fourier(n))
                .sum(),
        }
    }

    /// Finite quadrature realization. Exact for atomic measures; for a digit
    /// system the rule has one node per digit word of length `depth` and
    /// integrates `e^{2 pi i n x}` with error at most
    /// `2 pi |n| scale^{-depth}`.
    pub fn atoms(&self, depth: u32) -> Arc<QuadratureRule> {
        match self {
            MeasureSpec::Atomic { atoms } => Arc::new(QuadratureRule {
                nodes: atoms.iter().map(|a| a.0).collect(),
                weights: atoms.iter().map(|a| a.1).collect(),
                exact: true,
                depth: 0,
            }),
            MeasureSpec::Ifs {
                scale,
                digits,
                weights,
            } => {
                assert!(depth >= 1, "digit-system quadrature needs depth >= 1");
                let r = *scale as f64;
                let mut nodes = vec![0.0f64];
                let mut wts = vec![1.0f64];
                for level in 1..=depth {
                    let shift = r.powi(-(level as i32));
                    let mut next_nodes = Vec::with_capacity(nodes.len() * digits.len());
                    let mut next_wts = Vec::with_capacity(wts.len() * digits.len());
                    for (x, w) in nodes.iter().zip(&wts) {
                        for (&d, &dw) in digits.iter().zip(weights) {
                            next_nodes.push(x + d as f64 * shift);
                            next_wts.push(w * dw);
                        }
                    }
                    nodes = next_nodes;
                    wts = next_wts;
                }
                Arc::new(QuadratureRule {
                    nodes,
                    weights: wts,
                    exact: false,
                    depth,
                })
            }
            MeasureSpec::Mixture { terms } => {
                let mut nodes = Vec::new();
                let mut wts = Vec::new();
                let mut exact = true;
                let mut max_depth = 0;
                for (eta, spec) in terms {
                    let rule = spec.atoms(depth);
                    exact &= rule.exact;
                    max_depth = max_depth.max(rule.depth);
                    nodes.extend_from_slice(&rule.nodes);
                    wts.extend(rule.weights.iter().map(|w| eta * w));
                }
                Arc::new(QuadratureRule {
                    nodes,
                    weights: wts,
                    exact,
                    depth: max_depth,
                })
            }
        }
    }

    /// True when two atomic specs share no atom position. Used as a
    /// disjoint-support warning for mixture hypotheses; non-atomic pairs
    /// return `None` (not decidable here).
    pub fn atomic_supports_disjoint(&self, other: &MeasureSpec) -> Option<bool> {
        match (self, other) {
            (MeasureSpec::Atomic { atoms: a }, MeasureSpec::Atomic { atoms: b }) => {
                Some(a.iter().all(|(x, _)| b.iter().all(|(y, _)| x != y)))
            }
            _ => None,
        }
    }
}

/// Nodes and positive weights realizing a measure for integration.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    exact: bool,
    depth: u32,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Whether the rule integrates the measure exactly (atomic case).
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Quadrature error bound for the integrand `e^{2 pi i n x}`.
    pub fn exponential_error_bound(&self, n: i64, scale: u32) -> f64 {
        if self.exact {
            0.0
        } else {
            TAU * n.unsigned_abs() as f64 * (scale as f64).powi(-(self.depth as i32))
        }
    }
}

/// Samples of a function at the nodes of a quadrature rule; the discrete
/// stand-in for an element of `L^2(mu)`.
#[derive(Debug, Clone)]
pub struct BoundaryFunction {
    rule: Arc<QuadratureRule>,
    values: Vec<Complex64>,
}

impl BoundaryFunction {
    pub fn new(rule: Arc<QuadratureRule>, values: Vec<Complex64>) -> Result<Self, MeasureError> {
        if values.len() != rule.len() {
            return Err(MeasureError::InvalidSpec(
                "one value per quadrature node required".into(),
            ));
        }
        if values
            .iter()
            .any(|v| !v.re.is_finite() || !v.im.is_finite())
        {
            return Err(MeasureError::InvalidSpec(
                "boundary values must be finite".into(),
            ));
        }
        Ok(BoundaryFunction { rule, values })
    }

    /// Samples of `f` at the rule's nodes.
    pub fn sample(rule: &Arc<QuadratureRule>, f: impl Fn(f64) -> Complex64) -> Self {
        BoundaryFunction {
            rule: Arc::clone(rule),
            values: rule.nodes.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn constant(rule: &Arc<QuadratureRule>, v: Complex64) -> Self {
        BoundaryFunction {
            rule: Arc::clone(rule),
            values: vec![v; rule.len()],
        }
    }

    pub fn rule(&self) -> &Arc<QuadratureRule> {
        &self.rule
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn same_rule(&self, other: &BoundaryFunction) -> bool {
        Arc::ptr_eq(&self.rule, &other.rule) || *self.rule == *other.rule
    }

    pub fn add(&self, other: &BoundaryFunction) -> Result<Self, MeasureError> {
        if !self.same_rule(other) {
            return Err(MeasureError::RuleMismatch);
        }
        Ok(BoundaryFunction {
            rule: Arc::clone(&self.rule),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &BoundaryFunction) -> Result<Self, MeasureError> {
        if !self.same_rule(other) {
            return Err(MeasureError::RuleMismatch);
        }
        Ok(BoundaryFunction {
            rule: Arc::clone(&self.rule),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, s: Complex64) -> Self {
        BoundaryFunction {
            rule: Arc::clone(&self.rule),
            values: self.values.iter().map(|v| v * s).collect(),
        }
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.rule
            .weights
            .iter()
            .zip(&self.values)
            .map(|(w, v)| w * v.norm_sqr())
            .sum()
    }
}

/// `<f, g> = sum_k w_k f(x_k) conj(g(x_k))`.
pub fn inner_product(
    f: &BoundaryFunction,
    g: &BoundaryFunction,
) -> Result<Complex64, MeasureError> {
    if !f.same_rule(g) {
        return Err(MeasureError::RuleMismatch);
    }
    Ok(f.rule
        .weights
        .iter()
        .zip(f.values.iter().zip(&g.values))
        .map(|(w, (a, b))| w * a * b.conj())
        .sum())
}

/// The exponential `e^{2 pi i n x}` sampled on a rule.
pub fn sample_exponential(n: i64, rule: &Arc<QuadratureRule>) -> BoundaryFunction {
    BoundaryFunction::sample(rule, |x| Complex64::from_polar(1.0, TAU * n as f64 * x))
}

/// Moments `m(0..=order)` of a measure, with `m(0) = 1` and `|m(n)| <= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierTable {
    values: Vec<Complex64>,
}

impl FourierTable {
    pub fn new(values: Vec<Complex64>) -> Result<Self, MeasureError> {
        if values.is_empty() {
            return Err(MeasureError::InvalidTable("empty table".into()));
        }
        if (values[0] - Complex64::ONE).norm() > 1e-9 {
            return Err(MeasureError::InvalidTable(format!(
                "m(0) = {} but a probability measure has m(0) = 1",
                values[0]
            )));
        }
        if let Some((n, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| v.norm() > 1.0 + 1e-9 || !v.re.is_finite() || !v.im.is_finite())
        {
            return Err(MeasureError::InvalidTable(format!(
                "|m({n})| = {} exceeds 1",
                v.norm()
            )));
        }
        let mut values = values;
        values[0] = Complex64::ONE;
        Ok(FourierTable { values })
    }

    pub fn build(spec: &MeasureSpec, order: usize) -> Self {
        let values = (0..=order as i64).map(|n| spec.fourier(n)).collect();
        FourierTable { values }
    }

    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    /// Moment at any integer index; negative indices conjugate.
    pub fn at(&self, n: i64) -> Complex64 {
        if n < 0 {
            self.values[(-n) as usize].conj()
        } else {
            self.values[n as usize]
        }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}
