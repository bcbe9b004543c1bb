//! Named verification suites. Each suite measures a family of identities at
//! pinned tolerances and returns one record per check; `all` concatenates
//! every suite. Sampling is driven by a seeded generator recorded in the
//! report, so reruns with the same configuration reproduce the same errors.

use std::time::Instant;

use anyhow::{bail, Result};
use kaczmarz_kernels::clark::{clark_family, verify_affine, verify_expsum};
use kaczmarz_kernels::duals::{
    backward_shift_identity, frame_bounds_empirical, j_coeffs, mixture_dual, reconstruct_residuals,
    weighted_dual, Scaling,
};
use kaczmarz_kernels::kaczmarz::{
    alpha, coeffs_from_moments, expand, g_from_alpha, g_recursive, gram, GnMatrix,
};
use kaczmarz_kernels::kernels::{
    dbr_closed, gram_kernel, psd_check, reproduce_check, KernelHandle,
};
use kaczmarz_kernels::measures::{sample_exponential, BoundaryFunction, FourierTable, MeasureSpec};
use kaczmarz_kernels::series::{DiscPoint, PowerSeries};
use kaczmarz_kernels::transforms::{
    cauchy_transform_nodes, inner_from_measure, measure_from_inner, normalized_cauchy,
    radial_check, InnerSeries,
};
use kaczmarz_kernels::wold::{toeplitz_adjoint, wold_layers, wold_reconstruct};
use kaczmarz_kernels::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::builtin;
use crate::report::{CheckRecord, VerificationReport};

#[derive(Debug, Clone, Copy)]
pub struct SuiteParams {
    /// Series order; `None` lets each suite use the order its tolerances
    /// were pinned at.
    pub order: Option<usize>,
    pub depth: u32,
    pub seed: u64,
    pub tol_scale: f64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            order: None,
            depth: 12,
            seed: 0x5EED,
            tol_scale: 1.0,
        }
    }
}

pub const SUITE_NAMES: [&str; 13] = [
    "two-path",
    "kernel-equality",
    "reproducing",
    "parseval",
    "herglotz-roundtrip",
    "expsum",
    "clark",
    "weighted-dual",
    "wold",
    "psd",
    "spectral",
    "transform",
    "all",
];

fn canonical(name: &str) -> &str {
    match name {
        "kaczmarz-two-path" => "two-path",
        other => other,
    }
}

pub fn run_suite(name: &str, p: &SuiteParams) -> Result<VerificationReport> {
    let key = canonical(name);
    let checks = match key {
        "two-path" => two_path(p),
        "kernel-equality" => kernel_equality(p),
        "reproducing" => reproducing(p),
        "parseval" => parseval(p),
        "herglotz-roundtrip" => herglotz_roundtrip(p),
        "expsum" => expsum(p),
        "clark" => clark(p),
        "weighted-dual" => weighted_dual_suite(p),
        "wold" => wold(p),
        "psd" => psd(p),
        "spectral" => spectral(p),
        "transform" => transform(p),
        "all" => {
            let mut acc = Vec::new();
            for s in SUITE_NAMES.iter().filter(|s| **s != "all") {
                acc.extend(run_suite(s, p)?.checks);
            }
            acc
        }
        _ => bail!(
            "unknown suite '{name}'; available: {}",
            SUITE_NAMES.join(", ")
        ),
    };
    Ok(VerificationReport::new(
        key,
        p.seed,
        p.order,
        p.depth,
        p.tol_scale,
        checks,
    ))
}

fn battery() -> Vec<(&'static str, MeasureSpec)> {
    ["delta0", "comb2", "mu3", "mu4", "mix"]
        .into_iter()
        .map(|n| (n, builtin(n).expect("battery measure")))
        .collect()
}

fn timed(
    name: impl Into<String>,
    bound: f64,
    tol_scale: f64,
    f: impl FnOnce() -> f64,
) -> CheckRecord {
    let start = Instant::now();
    let error = f();
    CheckRecord::within(
        name,
        error,
        bound * tol_scale,
        start.elapsed().as_secs_f64(),
    )
}

fn seeded_points(rng: &mut ChaCha8Rng, count: usize, r_max: f64) -> Vec<DiscPoint> {
    (0..count)
        .map(|_| {
            let r = r_max * rng.random_range(0.0..1.0f64).sqrt();
            let t = rng.random_range(0.0..1.0f64);
            DiscPoint::from_polar(r, t).expect("inside the disc")
        })
        .collect()
}

fn grid_points(count: usize, r_max: f64, twist: f64) -> Vec<DiscPoint> {
    (0..count)
        .map(|i| {
            let r = r_max * (i as f64 + 1.0) / count as f64;
            DiscPoint::from_polar(r, twist + i as f64 / count as f64).expect("inside the disc")
        })
        .collect()
}

fn b_of(spec: &MeasureSpec, order: usize) -> InnerSeries {
    inner_from_measure(&FourierTable::build(spec, order))
}

/// Criterion 1: the recursion route and the reciprocal route produce the
/// same rows.
fn two_path(p: &SuiteParams) -> Vec<CheckRecord> {
    let order = p.order.unwrap_or(128);
    battery()
        .into_iter()
        .map(|(name, spec)| {
            timed(format!("two-path/{name}"), 1e-10, p.tol_scale, || {
                let t = FourierTable::build(&spec, order);
                g_recursive(&t).max_entry_diff(&g_from_alpha(&alpha(&t)))
            })
        })
        .collect()
}

/// Criterion 2: the Gram double series equals the closed-form kernel.
fn kernel_equality(p: &SuiteParams) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let zs = grid_points(5, 0.7, 0.0);
    let ws = grid_points(5, 0.7, 0.37);
    out.push(timed("kernel-equality/mu3", 1e-7, p.tol_scale, || {
        let spec = builtin("mu3").unwrap();
        let order = p.order.unwrap_or(512);
        let t = FourierTable::build(&spec, order);
        let g = g_from_alpha(&alpha(&t));
        let gm = gram(&t, &g);
        let b = inner_from_measure(&t);
        let mut worst = 0.0f64;
        for &z in &zs {
            for &w in &ws {
                let s = gram_kernel(&gm, z, w);
                let c = dbr_closed(&b, z, w);
                worst = worst.max((s.value - c.value).norm());
            }
        }
        worst
    }));
    out.push(timed("kernel-equality/comb2", 1e-12, p.tol_scale, || {
        let spec = builtin("comb2").unwrap();
        let t = FourierTable::build(&spec, p.order.unwrap_or(512).min(256));
        let g = g_from_alpha(&alpha(&t));
        let gm = gram(&t, &g);
        let mut worst = 0.0f64;
        for &z in &zs {
            for &w in &ws {
                let s = gram_kernel(&gm, z, w);
                let expect = Complex64::ONE + z.value().conj() * w.value();
                worst = worst.max((s.value - expect).norm());
            }
        }
        worst
    }));
    out
}

/// The four kernel families of criterion 3 over one measure.
fn reproducing_cases(
    spec: &MeasureSpec,
    order: usize,
    depth: u32,
) -> Vec<(&'static str, KernelHandle)> {
    let t = FourierTable::build(spec, order);
    let b = inner_from_measure(&t);
    let closed = KernelHandle::closed_dbr(b.clone());
    let anchors = vec![
        DiscPoint::from_polar(0.0, 0.0).unwrap(),
        DiscPoint::from_polar(0.3, 0.15).unwrap(),
    ];
    let projected = KernelHandle::projected(closed.clone(), anchors).expect("anchors condition");
    let layer = KernelHandle::projected(
        closed.clone(),
        vec![DiscPoint::from_polar(0.25, 0.4).unwrap()],
    )
    .expect("anchor conditions");
    let layered = KernelHandle::layered(b, vec![layer]).expect("projected layer");
    // tight mixture-dual family blended with a mutually singular companion;
    // a point mass off the comb atoms is singular to every battery measure
    let companion = MeasureSpec::point_mass(0.25).expect("valid");
    let fam = mixture_dual(spec, &companion, 0.5, order, depth).expect("valid mixture");
    let scaled: Vec<Vec<Complex64>> = fam
        .rows()
        .rows()
        .iter()
        .map(|r| r.iter().map(|c| 0.5 * c).collect())
        .collect();
    let gm = gram(&t, &GnMatrix::from_rows(scaled.clone()));
    let dual_kernel = KernelHandle::gram_series(gm, scaled);
    vec![
        ("closed", closed),
        ("projected", projected),
        ("layered", layered),
        ("mixture-dual", dual_kernel),
    ]
}

/// Criterion 3: every kernel family reproduces itself through boundary
/// integration, exactly on atoms and to quadrature accuracy on the Cantor
/// measure.
fn reproducing(p: &SuiteParams) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let pts = vec![
        DiscPoint::from_polar(0.0, 0.0).unwrap(),
        DiscPoint::from_polar(0.3, 0.0).unwrap(),
        DiscPoint::from_polar(0.5, 0.25).unwrap(),
        DiscPoint::from_polar(0.45, 0.6).unwrap(),
        DiscPoint::from_polar(0.6, 0.9).unwrap(),
    ];
    let comb = builtin("comb2").unwrap();
    let comb_rule = comb.atoms(0);
    for (kind, handle) in reproducing_cases(&comb, p.order.unwrap_or(256), 0) {
        let name = format!("reproducing/comb2/{kind}");
        let pts = pts.clone();
        let rule = comb_rule.clone();
        out.push(timed(name, 1e-10, p.tol_scale, move || {
            reproduce_check(&handle, &rule, &pts).expect("same rule")
        }));
    }
    let mu3 = builtin("mu3").unwrap();
    let mu3_rule = mu3.atoms(p.depth.max(12));
    for (kind, handle) in reproducing_cases(&mu3, p.order.unwrap_or(256), p.depth.max(12)) {
        let name = format!("reproducing/mu3/{kind}");
        let pts = pts.clone();
        let rule = mu3_rule.clone();
        out.push(timed(name, 1e-5, p.tol_scale, move || {
            reproduce_check(&handle, &rule, &pts).expect("same rule")
        }));
    }
    out
}

/// Criterion 4: energy identities. The two-atom expansion terminates after
/// two members; blended duals are tight at the blend weight; Cantor partial
/// sums stay monotone and bounded and capture the constant immediately.
fn parseval(p: &SuiteParams) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    out.push(timed(
        "parseval/comb2-exact-at-1",
        1e-12,
        p.tol_scale,
        || {
            let spec = builtin("comb2").unwrap();
            let t = FourierTable::build(&spec, p.order.unwrap_or(64));
            let g = g_from_alpha(&alpha(&t));
            let rule = spec.atoms(0);
            let f = sample_exponential(1, &rule)
                .add(&sample_exponential(0, &rule).scale(Complex64::new(0.5, -0.5)))
                .unwrap();
            let ex = expand(&f, &g, &t).expect("same rule");
            let energy_gap = (ex.energy_partial_sums[1] - ex.norm_sqr).abs();
            energy_gap.max(ex.residuals[1])
        },
    ));
    for eta in [0.25, 0.5, 0.75] {
        let name = format!("parseval/tight-eta-{eta}");
        out.push(timed(name, 1e-10, p.tol_scale, move || {
            let mu = builtin("delta0").unwrap();
            let nu = builtin("half").unwrap();
            let fam = mixture_dual(&mu, &nu, eta, 128, 0).expect("valid mixture");
            let f = BoundaryFunction::constant(fam.mu_rule(), Complex64::new(1.0, -0.7));
            let c = j_coeffs(&f, &fam).expect("same rule");
            let energy: f64 = c.iter().map(|x| x.norm_sqr()).sum();
            (energy - eta * f.norm_sqr()).abs() / f.norm_sqr()
        }));
    }
    let order = p.order.unwrap_or(512);
    let start = Instant::now();
    let spec = builtin("mu3").unwrap();
    let t = FourierTable::build(&spec, order);
    let g = g_from_alpha(&alpha(&t));
    // coefficients of the constant through the exact bilinear form: the
    // moments of e_0 are the table itself
    let coeffs = coeffs_from_moments(t.values(), &g);
    let norm_sqr = 1.0; // <e_0, e_0> is the total mass
    let mut acc = 0.0f64;
    let mut monotone_defect = 0.0f64;
    let mut sums = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        let next = acc + c.norm_sqr();
        monotone_defect = monotone_defect.max(acc - next);
        acc = next;
        sums.push(acc);
    }
    let overshoot = (sums[order] - norm_sqr * (1.0 + 1e-10)).max(0.0);
    let elapsed = start.elapsed().as_secs_f64();
    out.push(CheckRecord::within(
        "parseval/mu3-monotone-bounded",
        monotone_defect.max(overshoot),
        1e-8 * p.tol_scale,
        elapsed,
    ));
    // attained energy fraction, logged through the record's error field
    let fraction = sums[order] / norm_sqr;
    out.push(CheckRecord::exceeds(
        "parseval/mu3-energy-fraction",
        fraction,
        0.99,
        elapsed,
    ));
    out
}

/// Criterion 5: measure -> inner function -> measure is the identity on
/// moment tables.
fn herglotz_roundtrip(p: &SuiteParams) -> Vec<CheckRecord> {
    let order = p.order.unwrap_or(256);
    battery()
        .into_iter()
        .map(|(name, spec)| {
            timed(
                format!("herglotz-roundtrip/{name}"),
                1e-12,
                p.tol_scale,
                || {
                    let t = FourierTable::build(&spec, order);
                    let back = measure_from_inner(&inner_from_measure(&t)).expect("unit constant");
                    (0..=order as i64)
                        .map(|n| (back.at(n) - t.at(n)).norm())
                        .fold(0.0, f64::max)
                },
            )
        })
        .collect()
}

/// Criterion 6: the root-of-unity resolvent average.
fn expsum(p: &SuiteParams) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    out.push(timed("expsum/rational-case", 1e-15, p.tol_scale, || {
        let b = InnerSeries::monomial(8, 1);
        verify_expsum(&b, 2, &[DiscPoint::from_polar(0.5, 0.0).unwrap()])
    }));
    let seed = p.seed;
    let order = p.order.unwrap_or(256);
    out.push(timed("expsum/mu3-samples", 1e-10, p.tol_scale, move || {
        let b = b_of(&builtin("mu3").unwrap(), order);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let samples = seeded_points(&mut rng, 100, 0.7);
        (1..=8)
            .map(|n| verify_expsum(&b, n, &samples))
            .fold(0.0, f64::max)
    }));
    out
}

/// Criterion 7: rotated-measure averaging and the affine three-measure
/// identity.
fn clark(p: &SuiteParams) -> Vec<CheckRecord> {
    let order = p.order.unwrap_or(64).max(64);
    let bs: Vec<(&str, InnerSeries)> = vec![
        ("z", InnerSeries::monomial(order, 1)),
        ("z2", InnerSeries::monomial(order, 2)),
        ("mu3", b_of(&builtin("mu3").unwrap(), order)),
    ];
    let mut out = Vec::new();
    for (name, b) in &bs {
        let b = b.clone();
        out.push(timed(
            format!("clark/decomposition-{name}"),
            1e-10,
            p.tol_scale,
            move || {
                (1..=4)
                    .map(|n| {
                        clark_family(&b, n)
                            .expect("rotations stay inner")
                            .decomposition_residual(64)
                    })
                    .fold(0.0, f64::max)
            },
        ));
    }
    for (name, b) in &bs {
        for (m, q) in [(1usize, 2usize), (2, 2)] {
            let b = b.clone();
            out.push(timed(
                format!("clark/affine-{name}-m{m}q{q}"),
                1e-9,
                p.tol_scale,
                move || {
                    verify_affine(&b, m, q, 64)
                        .expect("rotations stay inner")
                        .residual
                },
            ));
        }
    }
    out
}

/// Criterion 8: density-weighted duals on the two-atom pair.
fn weighted_dual_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    let order = p.order.unwrap_or(32);
    let mut out = Vec::new();
    let start = Instant::now();
    let mu = builtin("lopsided").unwrap();
    let la = builtin("comb2").unwrap();
    let fam = weighted_dual(&mu, &la, order).expect("atomic pair");
    let Scaling::Weighted { lo, hi, .. } = fam.scaling().clone() else {
        unreachable!("weighted_dual returns weighted scaling");
    };
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let fb = frame_bounds_empirical(&fam, 32, &mut rng);
    let elapsed = start.elapsed().as_secs_f64();
    out.push(CheckRecord::within(
        "weighted-dual/lower-bound",
        (1.0 / hi - fb.lower).max(0.0),
        1e-9 * p.tol_scale,
        elapsed,
    ));
    out.push(CheckRecord::within(
        "weighted-dual/upper-bound",
        (fb.upper - 1.0 / lo).max(0.0),
        1e-9 * p.tol_scale,
        elapsed,
    ));
    let fam2 = fam.clone();
    out.push(timed(
        "weighted-dual/reconstruction",
        1e-10,
        p.tol_scale,
        move || {
            let f = sample_exponential(1, fam2.mu_rule());
            reconstruct_residuals(&f, &fam2).expect("same rule")[2]
        },
    ));
    out.push(timed(
        "weighted-dual/backward-shift",
        1e-10,
        p.tol_scale,
        move || {
            let f = sample_exponential(0, fam.mu_rule());
            let (lhs, rhs) = backward_shift_identity(&f, &fam).expect("same rule");
            lhs.iter()
                .zip(&rhs)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max)
        },
    ));
    out
}

/// Criterion 9: layer decompositions. Reconstruction telescopes exactly for
/// every inner series; the norm and membership identities are exact for
/// polynomial inner functions and are limited by the truncation energy
/// deficit for the Cantor measure (reported as measured).
fn wold(p: &SuiteParams) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    out.push(timed("wold/interleave-exact", 1e-12, p.tol_scale, || {
        let b = InnerSeries::monomial(64, 2);
        let f = PowerSeries::new(
            (0..=64)
                .map(|k| Complex64::new(0.6, -0.1).powu(k as u32))
                .collect(),
        )
        .unwrap();
        let w = wold_layers(&f, &b, 8);
        let rec = wold_reconstruct(&w);
        let rec_err = (0..=64)
            .map(|k| (rec.coeff(k) - f.coeff(k)).norm())
            .fold(0.0, f64::max);
        let membership = w.membership_defects().into_iter().fold(0.0f64, f64::max);
        rec_err
            .max(w.norm_gap(&f) / f.norm_sqr())
            .max(membership)
            .max(w.orthogonality_defect())
    }));
    let order = p.order.unwrap_or(512);
    let start = Instant::now();
    let b = b_of(&builtin("mu3").unwrap(), order);
    let f = PowerSeries::new(
        (0..=order)
            .map(|k| Complex64::new(0.4, 0.0).powu(k as u32))
            .collect(),
    )
    .unwrap();
    let w = wold_layers(&f, &b, 8);
    let rec = wold_reconstruct(&w);
    let rec_err = (0..=order)
        .map(|k| (rec.coeff(k) - f.coeff(k)).norm())
        .fold(0.0, f64::max);
    let gap = w.norm_gap(&f);
    let membership = w
        .layers()
        .iter()
        .zip(w.membership_defects())
        .map(|(phi, d)| d / phi.norm_sqr().sqrt().max(1.0))
        .fold(0.0f64, f64::max);
    let elapsed = start.elapsed().as_secs_f64();
    out.push(CheckRecord::within(
        "wold/mu3-reconstruction",
        rec_err,
        1e-10 * p.tol_scale,
        elapsed,
    ));
    out.push(CheckRecord::within(
        "wold/mu3-pythagoras",
        gap,
        1e-10 * f.norm_sqr() * p.tol_scale,
        elapsed,
    ));
    out.push(CheckRecord::within(
        "wold/mu3-membership",
        membership,
        1e-9 * p.tol_scale,
        elapsed,
    ));
    out
}

/// Criterion 10: kernel sections are positive semidefinite on seeded points.
fn psd(p: &SuiteParams) -> Vec<CheckRecord> {
    let order = p.order.unwrap_or(128);
    let comb = builtin("comb2").unwrap();
    let mu3 = builtin("mu3").unwrap();
    let mut handles: Vec<(String, KernelHandle)> = vec![
        (
            "closed-shift".into(),
            KernelHandle::closed_dbr(InnerSeries::monomial(order, 1)),
        ),
        (
            "closed-comb2".into(),
            KernelHandle::closed_dbr(b_of(&comb, order)),
        ),
        (
            "closed-mu3".into(),
            KernelHandle::closed_dbr(b_of(&mu3, order)),
        ),
    ];
    for (name, spec) in [("comb2", &comb), ("mu3", &mu3)] {
        let t = FourierTable::build(spec, order);
        let g = g_from_alpha(&alpha(&t));
        let gm = gram(&t, &g);
        handles.push((
            format!("gram-{name}"),
            KernelHandle::gram_series(gm, g.rows().to_vec()),
        ));
    }
    for (name, spec) in [("comb2", &comb), ("mu3", &mu3)] {
        let cases = reproducing_cases(spec, order, p.depth.max(8));
        for (kind, handle) in cases {
            if kind == "closed" {
                continue; // already covered above
            }
            handles.push((format!("{kind}-{name}"), handle));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let points = seeded_points(&mut rng, 20, 0.75);
    handles
        .into_iter()
        .map(|(name, handle)| {
            let start = Instant::now();
            let rep = psd_check(&handle, &points).expect("distinct seeded points");
            CheckRecord::within(
                format!("psd/{name}"),
                -rep.min_eigenvalue,
                1e-9 * rep.trace.abs().max(1e-300) * p.tol_scale,
                start.elapsed().as_secs_f64(),
            )
        })
        .collect()
}

/// Criterion 11: the scale-4 digit measure is orthogonal across its
/// lacunary frequency set; the scale-3 measure shows no such smallness.
fn spectral(p: &SuiteParams) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    out.push(timed(
        "spectral/mu4-orthogonality",
        1e-8,
        p.tol_scale,
        || {
            let mu4 = builtin("mu4").unwrap();
            let mut gamma: Vec<i64> = (0..16)
                .map(|mask: i64| (0..4).map(|i| ((mask >> i) & 1) << (2 * i)).sum())
                .collect();
            gamma.sort_unstable();
            let mut worst = 0.0f64;
            for (i, &a) in gamma.iter().enumerate() {
                for &b in gamma.iter().skip(i + 1) {
                    worst = worst.max(mu4.fourier(a - b).norm());
                }
            }
            worst
        },
    ));
    let start = Instant::now();
    let mu3 = builtin("mu3").unwrap();
    let contrast = (1..=64).map(|k| mu3.fourier(k).norm()).fold(0.0, f64::max);
    out.push(CheckRecord::exceeds(
        "spectral/mu3-contrast",
        contrast,
        0.01,
        start.elapsed().as_secs_f64(),
    ));
    out
}

/// Extra suite: the two evaluation routes of the normalized transform agree
/// on a grid, and its radial values converge to the boundary data.
fn transform(p: &SuiteParams) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let order = p.order.unwrap_or(256);
    for name in ["comb2", "comb4"] {
        let spec = builtin(name).unwrap();
        out.push(timed(
            format!("transform/route-agreement-{name}"),
            1e-8,
            p.tol_scale,
            move || {
                let t = FourierTable::build(&spec, order);
                let g = g_from_alpha(&alpha(&t));
                let rule = spec.atoms(0);
                let f = sample_exponential(1, &rule)
                    .add(&sample_exponential(2, &rule).scale(Complex64::new(0.3, 0.4)))
                    .unwrap();
                let mut worst = 0.0f64;
                for k in 0..5 {
                    for &z in &grid_points(5, 0.7, k as f64 / 5.0) {
                        let nc = normalized_cauchy(&f, &t, &g, z).expect("inside disc");
                        worst = worst.max(nc.disagreement());
                    }
                }
                worst
            },
        ));
    }
    out.push(timed("transform/radial-comb2", 2e-3, p.tol_scale, || {
        let spec = builtin("comb2").unwrap();
        let rule = spec.atoms(0);
        let f = sample_exponential(1, &rule);
        let one = BoundaryFunction::constant(&rule, Complex64::ONE);
        let v = |z: Complex64| cauchy_transform_nodes(&f, z) / cauchy_transform_nodes(&one, z);
        let radii = [0.9, 0.99, 0.999, 1.0 - 1e-4];
        let errs = radial_check(v, &f, &radii);
        let monotone_defect = errs
            .windows(2)
            .map(|w| (w[1] - w[0]).max(0.0))
            .fold(0.0, f64::max);
        errs.last()
            .copied()
            .unwrap_or(f64::INFINITY)
            .max(monotone_defect)
    }));
    out.push(timed("transform/radial-mu3", 1.0, p.tol_scale, || {
        let spec = builtin("mu3").unwrap();
        let rule = spec.atoms(10);
        let fine = spec.atoms(14);
        let f_fine = sample_exponential(0, &fine)
            .add(&sample_exponential(1, &fine))
            .unwrap();
        let target = sample_exponential(0, &rule)
            .add(&sample_exponential(1, &rule))
            .unwrap();
        let one = BoundaryFunction::constant(&fine, Complex64::ONE);
        let v = |z: Complex64| cauchy_transform_nodes(&f_fine, z) / cauchy_transform_nodes(&one, z);
        let errs = radial_check(v, &target, &[0.9, 0.99, 0.999]);
        let monotone_defect = errs
            .windows(2)
            .map(|w| (w[1] - w[0]).max(0.0))
            .fold(0.0, f64::max);
        // strict decrease is the check; the terminal error is reported
        if monotone_defect > 0.0 {
            1.0 + monotone_defect
        } else {
            errs[2]
        }
    }));
    out
}

/// Quick structural self-check used by the executable's smoke path: the
/// adjoint-annihilation identity for a polynomial inner function.
pub fn smoke() -> bool {
    let b = InnerSeries::monomial(8, 2);
    let f = PowerSeries::monomial(8, 3);
    let t = toeplitz_adjoint(&b, &f);
    (t.coeff(1) - Complex64::ONE).norm() < 1e-15
}
