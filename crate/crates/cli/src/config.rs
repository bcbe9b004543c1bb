//! Measure configuration: TOML files and built-in named measures.
//!
//! The file format is a key-value tree with a `type` tag:
//!
//! ```toml
//! type = "atomic"
//! atoms = [[0.0, 0.5], [0.5, 0.5]]
//! ```
//!
//! ```toml
//! type = "ifs"
//! scale = 3
//! digits = [0, 2]
//! weights = [0.5, 0.5]
//! ```
//!
//! Mixtures nest:
//!
//! ```toml
//! type = "mixture"
//! [[terms]]
//! coefficient = 0.5
//! measure = { type = "atomic", atoms = [[0.0, 1.0]] }
//! [[terms]]
//! coefficient = 0.5
//! measure = { type = "atomic", atoms = [[0.5, 1.0]] }
//! ```

use std::path::Path;

use anyhow::{anyhow, Context, Result};
use kaczmarz_kernels::measures::MeasureSpec;
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum RawSpec {
    Atomic {
        atoms: Vec<[f64; 2]>,
    },
    Ifs {
        scale: u32,
        digits: Vec<u32>,
        weights: Vec<f64>,
    },
    Mixture {
        terms: Vec<RawTerm>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    coefficient: f64,
    measure: RawSpec,
}

fn build(raw: RawSpec) -> Result<MeasureSpec> {
    let spec = match raw {
        RawSpec::Atomic { atoms } => {
            MeasureSpec::atomic(atoms.into_iter().map(|[x, w]| (x, w)).collect())?
        }
        RawSpec::Ifs {
            scale,
            digits,
            weights,
        } => MeasureSpec::ifs(scale, digits, weights)?,
        RawSpec::Mixture { terms } => {
            let built: Result<Vec<(f64, MeasureSpec)>> = terms
                .into_iter()
                .map(|t| Ok((t.coefficient, build(t.measure)?)))
                .collect();
            MeasureSpec::mixture(built?)?
        }
    };
    Ok(spec)
}

/// Parse a measure from TOML text.
pub fn parse_measure(text: &str) -> Result<MeasureSpec> {
    let raw: RawSpec = toml::from_str(text).context("invalid measure configuration")?;
    build(raw)
}

/// Built-in measures by name, else a path to a TOML file.
pub fn resolve_measure(name_or_path: &str) -> Result<MeasureSpec> {
    if let Some(spec) = builtin(name_or_path) {
        return Ok(spec);
    }
    let path = Path::new(name_or_path);
    if !path.exists() {
        return Err(anyhow!(
            "unknown measure '{name_or_path}' (not a built-in name and not a file); \
             built-ins: {}",
            BUILTIN_NAMES.join(", ")
        ));
    }
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read measure file {name_or_path}"))?;
    parse_measure(&text)
}

pub const BUILTIN_NAMES: [&str; 8] = [
    "delta0", "half", "comb2", "comb4", "mu3", "mu4", "mix", "lopsided",
];

/// The standard test battery by name.
pub fn builtin(name: &str) -> Option<MeasureSpec> {
    let spec = match name {
        "delta0" => MeasureSpec::point_mass(0.0),
        "half" => MeasureSpec::point_mass(0.5),
        "comb2" => MeasureSpec::uniform_comb(2),
        "comb4" => MeasureSpec::uniform_comb(4),
        "mu3" => MeasureSpec::cantor(3, &[0, 2]),
        "mu4" => MeasureSpec::cantor(4, &[0, 2]),
        "mix" => MeasureSpec::mixture(vec![
            (0.5, MeasureSpec::cantor(3, &[0, 2]).expect("valid")),
            (0.5, MeasureSpec::point_mass(0.5).expect("valid")),
        ]),
        "lopsided" => MeasureSpec::atomic(vec![(0.0, 0.75), (0.5, 0.25)]),
        _ => return None,
    };
    Some(spec.expect("built-in measures are valid"))
}
