//! Library side of the verification CLI: measure configuration, report
//! types, the named suites, and the CSV table generators behind the data
//! subcommands.

pub mod config;
pub mod report;
pub mod suites;

/// Shared knobs of the data subcommands.
#[derive(Debug, Clone, Copy)]
pub struct DataParams {
    pub order: usize,
    pub depth: u32,
}

pub mod data {
    //! CSV table generators, one per data subcommand.

    use anyhow::Result;
    use kaczmarz_kernels::clark::clark_family;
    use kaczmarz_kernels::duals::{
        frame_bounds_empirical, mixture_dual, reconstruct_residuals, weighted_dual,
    };
    use kaczmarz_kernels::kaczmarz::{alpha, g_from_alpha, gram};
    use kaczmarz_kernels::kernels::{dbr_closed, gram_kernel, reproduce_check, KernelHandle};
    use kaczmarz_kernels::measures::{sample_exponential, FourierTable, MeasureSpec};
    use kaczmarz_kernels::series::{DiscPoint, PowerSeries};
    use kaczmarz_kernels::transforms::{inner_from_measure, normalized_cauchy};
    use kaczmarz_kernels::wold::{wold_layers, wold_reconstruct};
    use kaczmarz_kernels::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::DataParams;

    pub fn fourier_csv(spec: &MeasureSpec, order: usize) -> String {
        let mut out = String::from("n,re,im\n");
        for n in 0..=order as i64 {
            let m = spec.fourier(n);
            out.push_str(&format!("{n},{:.17e},{:.17e}\n", m.re, m.im));
        }
        out
    }

    pub fn alpha_csv(spec: &MeasureSpec, order: usize) -> String {
        let t = FourierTable::build(spec, order);
        let a = alpha(&t);
        let mut out = String::from("n,re,im\n");
        for (n, c) in a.values().iter().enumerate() {
            out.push_str(&format!("{n},{:.17e},{:.17e}\n", c.re, c.im));
        }
        out
    }

    pub fn gram_csv(spec: &MeasureSpec, order: usize) -> String {
        let t = FourierTable::build(spec, order);
        let g = g_from_alpha(&alpha(&t));
        let gm = gram(&t, &g);
        let mut out = String::from("n,m,re,im\n");
        for n in 0..gm.size() {
            for m in 0..gm.size() {
                let e = gm.entry(n, m);
                out.push_str(&format!("{n},{m},{:.17e},{:.17e}\n", e.re, e.im));
            }
        }
        out
    }

    fn grid(count: usize, r_max: f64, twist: f64) -> Vec<DiscPoint> {
        (0..count)
            .map(|i| {
                let r = r_max * (i as f64 + 1.0) / count as f64;
                DiscPoint::from_polar(r, twist + i as f64 / count as f64).expect("inside disc")
            })
            .collect()
    }

    pub fn transform_csv(spec: &MeasureSpec, p: &DataParams) -> Result<String> {
        let t = FourierTable::build(spec, p.order);
        let g = g_from_alpha(&alpha(&t));
        let rule = spec.atoms(p.depth);
        let f = sample_exponential(1, &rule);
        let mut out = String::from("z_re,z_im,ratio_re,ratio_im,series_re,series_im,diff\n");
        for k in 0..5 {
            for &z in &grid(5, 0.7, k as f64 / 5.0) {
                let nc = normalized_cauchy(&f, &t, &g, z)?;
                out.push_str(&format!(
                    "{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.3e}\n",
                    z.value().re,
                    z.value().im,
                    nc.via_ratio.re,
                    nc.via_ratio.im,
                    nc.via_series.re,
                    nc.via_series.im,
                    nc.disagreement()
                ));
            }
        }
        Ok(out)
    }

    pub fn kernel_csv(spec: &MeasureSpec, p: &DataParams) -> Result<String> {
        let t = FourierTable::build(spec, p.order);
        let g = g_from_alpha(&alpha(&t));
        let gm = gram(&t, &g);
        let b = inner_from_measure(&t);
        let handle = KernelHandle::closed_dbr(b.clone());
        let rule = spec.atoms(p.depth);
        let zs = grid(5, 0.7, 0.0);
        let ws = grid(5, 0.7, 0.41);
        let mut out = String::from(
            "z_re,z_im,w_re,w_im,closed_re,closed_im,series_re,series_im,reproduce_err\n",
        );
        for &z in &zs {
            for &w in &ws {
                let closed = dbr_closed(&b, z, w);
                let series = gram_kernel(&gm, z, w);
                let rep = reproduce_check(&handle, &rule, &[z, w])?;
                out.push_str(&format!(
                    "{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.3e}\n",
                    z.value().re,
                    z.value().im,
                    w.value().re,
                    w.value().im,
                    closed.value.re,
                    closed.value.im,
                    series.value.re,
                    series.value.im,
                    rep
                ));
            }
        }
        Ok(out)
    }

    pub fn dual_csv(
        mu: &MeasureSpec,
        other: &MeasureSpec,
        eta: f64,
        weighted: bool,
        p: &DataParams,
        seed: u64,
    ) -> Result<String> {
        let fam = if weighted {
            weighted_dual(mu, other, p.order)?
        } else {
            mixture_dual(mu, other, eta, p.order, p.depth)?
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fb = frame_bounds_empirical(&fam, 32, &mut rng);
        let mut out = String::from("record,value\n");
        out.push_str(&format!("lower_bound,{:.17e}\n", fb.lower));
        out.push_str(&format!("upper_bound,{:.17e}\n", fb.upper));
        out.push_str(&format!("certified,{}\n", fb.certified));
        if let Some(d) = fam.supports_disjoint {
            out.push_str(&format!("supports_disjoint,{d}\n"));
        } else {
            out.push_str("supports_disjoint,asserted-by-caller\n");
        }
        let f = sample_exponential(1, fam.mu_rule());
        for (k, r) in reconstruct_residuals(&f, &fam)?.iter().enumerate().take(16) {
            out.push_str(&format!("residual_{k},{:.17e}\n", r));
        }
        Ok(out)
    }

    pub fn clark_csv(spec: &MeasureSpec, levels: usize, p: &DataParams) -> Result<String> {
        let t = FourierTable::build(spec, p.order);
        let b = inner_from_measure(&t);
        let fam = clark_family(&b, levels.max(1))?;
        let mut out = String::from("k,residual\n");
        for k in 0..=p.order.min(64) as i64 {
            let avg: Complex64 = (0..fam.degree())
                .map(|j| fam.sigma(j).at(k))
                .sum::<Complex64>()
                / fam.degree() as f64;
            out.push_str(&format!(
                "{k},{:.17e}\n",
                (fam.power_table().at(k) - avg).norm()
            ));
        }
        Ok(out)
    }

    pub fn wold_csv(spec: &MeasureSpec, layers: usize, p: &DataParams) -> Result<String> {
        let t = FourierTable::build(spec, p.order);
        let b = inner_from_measure(&t);
        let f = PowerSeries::new(
            (0..=p.order)
                .map(|k| Complex64::new(0.4, 0.0).powu(k as u32))
                .collect(),
        )
        .expect("finite coefficients");
        let w = wold_layers(&f, &b, layers);
        let rec = wold_reconstruct(&w);
        let rec_err = (0..=p.order)
            .map(|k| (rec.coeff(k) - f.coeff(k)).norm())
            .fold(0.0, f64::max);
        let mut out = String::from("record,value\n");
        for (n, phi) in w.layers().iter().enumerate() {
            out.push_str(&format!("layer_norm_{n},{:.17e}\n", phi.norm_sqr().sqrt()));
        }
        out.push_str(&format!(
            "residual_norm,{:.17e}\n",
            w.residual().norm_sqr().sqrt()
        ));
        out.push_str(&format!("reconstruction_error,{rec_err:.17e}\n"));
        out.push_str(&format!("norm_gap,{:.17e}\n", w.norm_gap(&f)));
        Ok(out)
    }
}
