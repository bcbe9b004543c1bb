//! Cross-module identities on randomly drawn atomic measures. The fixed
//! Cantor-type cases live in the per-module tests and the verification
//! suites; here the same identities are exercised across the atomic family,
//! where every quadrature is exact and tolerances can stay tight.

use kaczmarz_kernels::kaczmarz::{alpha, g_from_alpha, g_recursive, gram};
use kaczmarz_kernels::kernels::{psd_check, reproduce_check, KernelHandle};
use kaczmarz_kernels::measures::{sample_exponential, FourierTable, MeasureSpec};
use kaczmarz_kernels::series::DiscPoint;
use kaczmarz_kernels::transforms::{inner_from_measure, measure_from_inner, normalized_cauchy};
use kaczmarz_kernels::wold::{wold_layers, wold_reconstruct};
use kaczmarz_kernels::Complex64;
use proptest::prelude::*;

fn arb_atomic() -> impl Strategy<Value = MeasureSpec> {
    proptest::collection::vec((0.0..1.0f64, 0.05..1.0f64), 1..6).prop_map(|raw| {
        let mut seen = std::collections::BTreeSet::new();
        let kept: Vec<(f64, f64)> = raw
            .into_iter()
            .filter(|(x, _)| seen.insert(x.to_bits()))
            .collect();
        let total: f64 = kept.iter().map(|a| a.1).sum();
        let mut atoms: Vec<(f64, f64)> = kept.iter().map(|&(x, w)| (x, w / total)).collect();
        let rest: f64 = atoms.iter().skip(1).map(|a| a.1).sum();
        atoms[0].1 = 1.0 - rest;
        MeasureSpec::atomic(atoms).unwrap()
    })
}

fn arb_disc(r_max: f64) -> impl Strategy<Value = DiscPoint> {
    (0.0..1.0f64, 0.0..1.0f64)
        .prop_map(move |(r, t)| DiscPoint::from_polar(r_max * r.sqrt(), t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn two_routes_agree_on_random_atomic(spec in arb_atomic()) {
        let t = FourierTable::build(&spec, 48);
        let direct = g_from_alpha(&alpha(&t));
        let recursive = g_recursive(&t);
        prop_assert!(direct.max_entry_diff(&recursive) < 1e-10);
    }

    #[test]
    fn moment_inner_roundtrip_on_random_atomic(spec in arb_atomic()) {
        let t = FourierTable::build(&spec, 96);
        let b = inner_from_measure(&t);
        let back = measure_from_inner(&b).unwrap();
        for n in 0..=96 {
            prop_assert!((back.at(n) - t.at(n)).norm() < 1e-12);
        }
    }

    #[test]
    fn kernel_double_series_matches_closed_form(
        spec in arb_atomic(),
        z in arb_disc(0.7),
        w in arb_disc(0.7),
    ) {
        let t = FourierTable::build(&spec, 192);
        let g = g_from_alpha(&alpha(&t));
        let gm = gram(&t, &g);
        let series = kaczmarz_kernels::kernels::gram_kernel(&gm, z, w);
        let closed = kaczmarz_kernels::kernels::dbr_closed(&inner_from_measure(&t), z, w);
        prop_assert!(
            (series.value - closed.value).norm() <= series.bound + closed.bound + 1e-9,
            "gap {} exceeds bounds {} + {}",
            (series.value - closed.value).norm(), series.bound, closed.bound
        );
    }

    #[test]
    fn closed_kernel_reproduces_on_random_atomic(
        spec in arb_atomic(),
        pts in proptest::collection::vec(arb_disc(0.6), 2..5),
    ) {
        let t = FourierTable::build(&spec, 256);
        let h = KernelHandle::closed_dbr(inner_from_measure(&t));
        let rule = spec.atoms(0);
        let err = reproduce_check(&h, &rule, &pts).unwrap();
        prop_assert!(err < 1e-8, "reproduction error {err}");
    }

    #[test]
    fn sections_stay_psd_on_random_atomic(
        spec in arb_atomic(),
        seeds in proptest::collection::vec((0.02..0.95f64, 0.0..1.0f64), 3..9),
    ) {
        // distinct radii guarantee distinct points
        let mut pts = Vec::new();
        let mut used = std::collections::BTreeSet::new();
        for (i, (r, th)) in seeds.iter().enumerate() {
            let r = 0.8 * r * (1.0 + i as f64) / (seeds.len() as f64 + 1.0);
            if used.insert((r.to_bits(), th.to_bits())) {
                pts.push(DiscPoint::from_polar(r, *th).unwrap());
            }
        }
        let t = FourierTable::build(&spec, 96);
        let h = KernelHandle::closed_dbr(inner_from_measure(&t));
        let rep = psd_check(&h, &pts).unwrap();
        prop_assert!(rep.passes(1e-9), "min eig {} trace {}", rep.min_eigenvalue, rep.trace);
    }

    #[test]
    fn transform_routes_agree_on_random_atomic(
        spec in arb_atomic(),
        z in arb_disc(0.7),
    ) {
        let t = FourierTable::build(&spec, 256);
        let g = g_from_alpha(&alpha(&t));
        let rule = spec.atoms(0);
        let f = sample_exponential(1, &rule)
            .add(&sample_exponential(2, &rule).scale(Complex64::new(0.3, -0.4)))
            .unwrap();
        let nc = normalized_cauchy(&f, &t, &g, z).unwrap();
        prop_assert!(
            nc.disagreement() <= nc.ratio_bound + nc.series_bound + 1e-8,
            "routes differ by {}",
            nc.disagreement()
        );
    }

    #[test]
    fn layer_expansion_telescopes_on_random_atomic(
        spec in arb_atomic(),
        depth in 1usize..6,
    ) {
        let t = FourierTable::build(&spec, 128);
        let b = inner_from_measure(&t);
        let f = kaczmarz_kernels::series::PowerSeries::new(
            (0..=128)
                .map(|k| Complex64::new(0.55, 0.2).powu(k as u32))
                .collect(),
        )
        .unwrap();
        let w = wold_layers(&f, &b, depth);
        let rec = wold_reconstruct(&w);
        let worst = (0..=128)
            .map(|k| (rec.coeff(k) - f.coeff(k)).norm())
            .fold(0.0, f64::max);
        prop_assert!(worst < 1e-10, "reconstruction gap {worst}");
    }
}
