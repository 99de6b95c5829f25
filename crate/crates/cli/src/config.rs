//! Flat `key = value` run configuration; command-line flags win.

use std::path::Path;

use anyhow::Context;
use ladderlab::crossbreed::CrossbreedConfig;
use ladderlab::factorize::FactorizeConfig;
use ladderlab::ladder::DEFAULT_L0;
use ladderlab::zeta_eval::EvalConfig;
use serde::Deserialize;

use crate::Failure;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub k0: Option<usize>,
    pub l0: Option<u64>,
    pub correction_order: Option<u8>,
    pub solve_tol: Option<f64>,
    pub integral_rel_tol: Option<f64>,
    pub transport_rel_tol: Option<f64>,
    pub residual_tol: Option<f64>,
    pub exact_budget: Option<f64>,
    pub power_budget: Option<f64>,
    pub secondary_budget: Option<f64>,
    pub asymptotic_factor: Option<f64>,
    pub asymptotic_floor: Option<f64>,
}

impl FileConfig {
    pub fn read(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))
            .map_err(|e| Failure::Usage(format!("{e:#}")))?;
        toml::from_str(&text)
            .map_err(|e| Failure::Usage(format!("config {}: {e}", path.display())).into())
    }
}

#[derive(Debug, Clone)]
pub struct Settings {
    pub eval: EvalConfig,
    pub l0: u64,
    pub factorize: FactorizeConfig,
    pub crossbreed: CrossbreedConfig,
}

/// Flag values that override the file.
#[derive(Debug, Default, Clone, Copy)]
pub struct Overrides {
    pub k0: Option<usize>,
    pub l0: Option<u64>,
    pub correction_order: Option<u8>,
}

impl Settings {
    pub fn resolve(file: &FileConfig, flags: Overrides) -> anyhow::Result<Self> {
        let order = flags
            .correction_order
            .or(file.correction_order)
            .unwrap_or(EvalConfig::default().correction_order);
        let eval = EvalConfig::new(order, EvalConfig::default().min_height)
            .map_err(|e| Failure::Usage(e.to_string()))?;

        let mut factorize = FactorizeConfig::default();
        factorize.k0 = flags.k0.or(file.k0).unwrap_or(factorize.k0);
        set(&mut factorize.solve_tol, file.solve_tol);
        set(&mut factorize.integral_rel_tol, file.integral_rel_tol);
        set(&mut factorize.transport_rel_tol, file.transport_rel_tol);
        set(&mut factorize.residual_tol, file.residual_tol);

        let mut crossbreed = CrossbreedConfig::default();
        set(&mut crossbreed.exact_budget, file.exact_budget);
        set(&mut crossbreed.power_budget, file.power_budget);
        set(&mut crossbreed.secondary_budget, file.secondary_budget);
        set(&mut crossbreed.asymptotic_factor, file.asymptotic_factor);
        set(&mut crossbreed.asymptotic_floor, file.asymptotic_floor);

        let positive = [
            factorize.solve_tol,
            factorize.integral_rel_tol,
            factorize.transport_rel_tol,
            factorize.residual_tol,
            crossbreed.exact_budget,
            crossbreed.power_budget,
            crossbreed.secondary_budget,
            crossbreed.asymptotic_factor,
            crossbreed.asymptotic_floor,
        ];
        if positive.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
            return Err(Failure::Usage("tolerances and budgets must be positive".into()).into());
        }
        if factorize.k0 == 0 {
            return Err(Failure::Usage("k0 must be at least 1".into()).into());
        }
        Ok(Self {
            eval,
            l0: flags.l0.or(file.l0).unwrap_or(DEFAULT_L0),
            factorize,
            crossbreed,
        })
    }
}

fn set(slot: &mut f64, value: Option<f64>) {
    if let Some(v) = value {
        *slot = v;
    }
}
