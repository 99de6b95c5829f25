//! Subcommand bodies.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::Context;
use ladderlab::crossbreed::{
    check_asymptotic_41, check_beta_product_52, check_exact_32_33, check_exact_hybrid_35,
    check_power_pair_51, check_secondary_43, check_secondary_exact_53, FormulaId, HybridReport,
};
use ladderlab::factorize::{factorize, FactorizationCertificate, FunctionFamily};
use ladderlab::ladder::{prime_count, rho_gap, LadderModel};
use ladderlab::zeta_eval::EULER_GAMMA;
use rayon::prelude::*;

use crate::config::{FileConfig, Settings};
use crate::output::{self, SweepRow};
use crate::{BuildArgs, CertifyArgs, Common, Failure, SweepArgs, VerifyArgs};

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Failure::Usage(msg.into()).into()
}

fn settings(common: &Common) -> anyhow::Result<Settings> {
    let file = match &common.config {
        Some(path) => FileConfig::read(path)?,
        None => FileConfig::default(),
    };
    Settings::resolve(&file, common.overrides())
}

fn cache_path(common: &Common) -> anyhow::Result<&PathBuf> {
    common
        .cache
        .as_ref()
        .ok_or_else(|| usage("no cache given: pass --cache or set LADDERLAB_CACHE"))
}

fn load_model(common: &Common, s: &Settings) -> anyhow::Result<LadderModel> {
    let path = cache_path(common)?;
    if !path.exists() {
        return Err(Failure::Cache(format!(
            "cache {} not found; run `ladderlab ladder-build` first",
            path.display()
        ))
        .into());
    }
    let model = LadderModel::load(path, s.eval).map_err(|e| match e {
        ladderlab::Error::Io(io) => {
            Failure::Cache(format!("reading {}: {io}", path.display())).into()
        }
        other => anyhow::Error::from(other),
    })?;
    Ok(model.with_l0(s.l0))
}

pub fn ladder_build(a: &BuildArgs) -> anyhow::Result<()> {
    if !(a.t0 >= 100.0 && a.t0.is_finite()) {
        return Err(usage(format!("t0 = {} must be at least 100", a.t0)));
    }
    if !(a.t_max > a.t0 + 100.0 && a.t_max.is_finite()) {
        return Err(usage(format!("t_max = {} must exceed t0 + 100", a.t_max)));
    }
    let s = settings(&a.common)?;
    let path = cache_path(&a.common)?;
    if path.exists() {
        if let Ok(model) = LadderModel::load_matching(path, a.t0, a.t_max, s.eval) {
            println!(
                "cache {} is current: {} checkpoints, max drift ratio {:.3}",
                path.display(),
                model.checkpoint_count(),
                max_drift_ratio(&model)
            );
            return Ok(());
        }
    }
    let model = LadderModel::build(a.t0, a.t_max, s.eval)?;
    model
        .save(path)
        .with_context(|| format!("writing {}", path.display()))?;
    println!(
        "wrote {}: {} checkpoints, max drift ratio {:.3}",
        path.display(),
        model.checkpoint_count(),
        max_drift_ratio(&model)
    );
    Ok(())
}

/// max over checkpoints of (t − φ₁(t)) / ((1−c)·t/ln t).
fn max_drift_ratio(m: &LadderModel) -> f64 {
    let offset = m.t0() - m.anchor_offset();
    m.checkpoints()
        .map(|(t, phi)| (t - offset - phi) / ((1.0 - EULER_GAMMA) * t / t.ln()))
        .fold(0.0, f64::max)
}

/// Certificates shared between checks of one invocation.
struct Certs<'a> {
    model: &'a LadderModel,
    s: &'a Settings,
    l: u64,
    u: f64,
    memo: BTreeMap<(String, u64, usize), FactorizationCertificate>,
}

impl<'a> Certs<'a> {
    fn get(
        &mut self,
        family: FunctionFamily,
        k: usize,
    ) -> anyhow::Result<FactorizationCertificate> {
        let key = (
            family.id().to_string(),
            family.delta().map_or(0, f64::to_bits),
            k,
        );
        if let Some(c) = self.memo.get(&key) {
            return Ok(c.clone());
        }
        let c = factorize(&family, self.l, self.u, k, self.model, &self.s.factorize)?;
        self.memo.insert(key, c.clone());
        Ok(c)
    }

    fn triple(&mut self, k: [usize; 3]) -> anyhow::Result<[FactorizationCertificate; 3]> {
        Ok([
            self.get(FunctionFamily::F1, k[0])?,
            self.get(FunctionFamily::F2, k[1])?,
            self.get(FunctionFamily::F3, k[2])?,
        ])
    }
}

fn triple_k(id: FormulaId, k: &[usize]) -> anyhow::Result<[usize; 3]> {
    match *k {
        [k] => Ok([k; 3]),
        [a, b, c] => Ok([a, b, c]),
        _ => Err(usage(format!("{id} takes --k as one value or a 3-tuple"))),
    }
}

/// Whether `id` accepts the given --k; `all` keeps only these.
fn applies(id: FormulaId, k: &[usize]) -> bool {
    let equal = k.windows(2).all(|w| w[0] == w[1]);
    match id {
        FormulaId::C18 => k.iter().all(|&k| k == 1),
        // With k = 1 this is C18 itself.
        FormulaId::A43 => equal && k.iter().any(|&k| k != 1) && k.len() != 2,
        FormulaId::P51 => k.len() <= 2,
        FormulaId::B52 => k.len() == 1,
        _ => k.len() == 1 || k.len() == 3,
    }
}

fn parse_formulas(ids: &[String], k: &[usize]) -> anyhow::Result<Vec<FormulaId>> {
    let mut out = Vec::new();
    for id in ids {
        if id.eq_ignore_ascii_case("all") {
            out.extend(FormulaId::ALL.into_iter().filter(|&f| applies(f, k)));
        } else {
            out.push(
                id.trim()
                    .parse::<FormulaId>()
                    .map_err(|e| usage(e.to_string()))?,
            );
        }
    }
    let mut seen = Vec::new();
    out.retain(|f| {
        let fresh = !seen.contains(f);
        seen.push(*f);
        fresh
    });
    Ok(out)
}

fn run_check(id: FormulaId, a: &VerifyArgs, certs: &mut Certs<'_>) -> anyhow::Result<HybridReport> {
    let (model, s) = (certs.model, certs.s);
    let (l, u, k) = (a.l, a.u, a.k.as_slice());
    let report = match id {
        FormulaId::X32 | FormulaId::X33 => {
            let [c1, c2, c3] = certs.triple(triple_k(id, k)?)?;
            let [x32, x33] = check_exact_32_33(&c1, &c2, &c3, model, &s.crossbreed)?;
            if id == FormulaId::X32 {
                x32
            } else {
                x33
            }
        }
        FormulaId::T35 => {
            let [c1, c2, c3] = certs.triple(triple_k(id, k)?)?;
            check_exact_hybrid_35(&c1, &c2, &c3, model, &s.crossbreed)?
        }
        FormulaId::A41 => {
            let [c1, c2, c3] = certs.triple(triple_k(id, k)?)?;
            check_asymptotic_41(&c1, &c2, &c3, model, &s.crossbreed)?
        }
        FormulaId::A43 | FormulaId::C18 => {
            let ks = triple_k(id, k)?;
            if id == FormulaId::C18 && ks != [1; 3] {
                return Err(usage("C18 is the k = 1 case; omit --k or pass --k 1"));
            }
            let [c1, c2, c3] = certs.triple(ks)?;
            check_secondary_43(&c1, &c2, &c3, model, &s.crossbreed)?
        }
        FormulaId::P51 => {
            let (k4, k5) = match *k {
                [k] => (k, k),
                [k4, k5] => (k4, k5),
                _ => return Err(usage("P51 takes --k as one value or a pair")),
            };
            check_power_pair_51(
                l,
                u,
                k4,
                k5,
                a.delta4,
                a.delta5,
                model,
                &s.factorize,
                &s.crossbreed,
            )?
        }
        FormulaId::B52 => {
            let [k] = *k else {
                return Err(usage("B52 takes a single --k"));
            };
            check_beta_product_52(
                k,
                a.delta4,
                a.delta5,
                l,
                u,
                model,
                &s.factorize,
                &s.crossbreed,
            )?
        }
        FormulaId::T53 => {
            let [k1, k2, k3] = triple_k(id, k)?;
            check_secondary_exact_53(
                k1,
                k2,
                k3,
                a.delta4,
                a.delta5,
                l,
                u,
                model,
                &s.factorize,
                &s.crossbreed,
            )?
        }
    };
    Ok(report)
}

fn unix_seconds() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs())
}

pub fn verify(a: &VerifyArgs) -> anyhow::Result<()> {
    let formulas = parse_formulas(&a.formula, &a.k)?;
    let s = settings(&a.common)?;
    let model = load_model(&a.common, &s)?;
    let mut certs = Certs {
        model: &model,
        s: &s,
        l: a.l,
        u: a.u,
        memo: BTreeMap::new(),
    };
    let reports = formulas
        .iter()
        .map(|&id| run_check(id, a, &mut certs).with_context(|| format!("checking {id}")))
        .collect::<anyhow::Result<Vec<_>>>()?;

    let timestamp = (!a.no_timestamp).then(unix_seconds);
    let mut w = output::sink(a.out.as_deref())?;
    output::write_reports(&mut *w, &reports, a.mode.csv, timestamp)?;
    let failed = reports.iter().filter(|r| !r.pass()).count();
    if failed > 0 {
        return Err(Failure::Budget(failed).into());
    }
    Ok(())
}

fn parse_family(name: &str, delta: Option<f64>, l: u64) -> anyhow::Result<FunctionFamily> {
    let family = match name.to_ascii_lowercase().as_str() {
        "f1" => FunctionFamily::F1,
        "f2" => FunctionFamily::F2,
        "f3" => FunctionFamily::F3,
        "unit" => FunctionFamily::Unit,
        "power" => {
            let d = delta.ok_or_else(|| usage("the power family needs --delta"))?;
            FunctionFamily::power(d, l)?
        }
        other => return Err(usage(format!("unknown family {other:?}"))),
    };
    if delta.is_some() && family.delta().is_none() {
        return Err(usage("--delta applies only to the power family"));
    }
    Ok(family)
}

pub fn certify(a: &CertifyArgs) -> anyhow::Result<()> {
    let family = parse_family(&a.family, a.delta, a.l)?;
    let s = settings(&a.common)?;
    let model = load_model(&a.common, &s)?;
    let cert = factorize(&family, a.l, a.u, a.k, &model, &s.factorize)?;
    let mut w = output::sink(a.out.as_deref())?;
    output::write_certificate(&mut *w, &cert, a.mode.csv)
}

fn sweep_ls(a: &SweepArgs) -> anyhow::Result<Vec<u64>> {
    let mut ls = match &a.log_range {
        Some(spec) => {
            let parts: Vec<&str> = spec.split(':').collect();
            let bad = || usage(format!("--log-range expects LO:HI:N, got {spec:?}"));
            let [lo, hi, n] = parts[..] else {
                return Err(bad());
            };
            let lo: f64 = lo.parse().map_err(|_| bad())?;
            let hi: f64 = hi.parse().map_err(|_| bad())?;
            let n: usize = n.parse().map_err(|_| bad())?;
            if !(lo >= 1.0 && hi >= lo && n >= 1) {
                return Err(bad());
            }
            let step = if n == 1 {
                0.0
            } else {
                (hi / lo).ln() / (n - 1) as f64
            };
            (0..n)
                .map(|i| (lo * (step * i as f64).exp()).round() as u64)
                .collect()
        }
        None => a.l.clone(),
    };
    if ls.is_empty() {
        return Err(usage("sweep needs --L or --log-range"));
    }
    ls.sort_unstable();
    ls.dedup();
    Ok(ls)
}

fn sweep_row(
    id: FormulaId,
    l: u64,
    a: &SweepArgs,
    model: &LadderModel,
    s: &Settings,
) -> anyhow::Result<SweepRow> {
    let ks = [a.k; 3];
    let mut certs = Certs {
        model,
        s,
        l,
        u: a.u,
        memo: BTreeMap::new(),
    };
    let [c1, c2, c3] = certs.triple(ks)?;
    let report = match id {
        FormulaId::A41 => check_asymptotic_41(&c1, &c2, &c3, model, &s.crossbreed)?,
        _ => check_secondary_43(&c1, &c2, &c3, model, &s.crossbreed)?,
    };
    let set = model.disconnected_set(l, a.u, 1)?;
    let gap = rho_gap(&set.components[0], &set.components[1])?;
    let scale = (1.0 - EULER_GAMMA) * prime_count(PI * l as f64)? as f64;
    Ok(SweepRow {
        l,
        deviation: report.deviation.unwrap_or(report.rel_residual),
        budget: report.tol_budget,
        gap_ratio: gap / scale,
    })
}

pub fn sweep(a: &SweepArgs) -> anyhow::Result<()> {
    let id: FormulaId = a
        .formula
        .trim()
        .parse()
        .map_err(|e: ladderlab::Error| usage(e.to_string()))?;
    match id {
        FormulaId::C18 if a.k != 1 => return Err(usage("C18 is the k = 1 case")),
        FormulaId::C18 | FormulaId::A41 | FormulaId::A43 => {}
        other => return Err(usage(format!("sweeps cover C18, A41 and A43, not {other}"))),
    }
    let ls = sweep_ls(a)?;
    let s = settings(&a.common)?;
    let model = load_model(&a.common, &s)?;
    if let Some(&l) = ls.iter().find(|&&l| l < s.l0) {
        return Err(ladderlab::Error::LTooSmall { l, l0: s.l0 }.into());
    }
    let rows = ls
        .par_iter()
        .map(|&l| sweep_row(id, l, a, &model, &s).with_context(|| format!("sweep at L = {l}")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let mut w = output::sink(a.out.as_deref())?;
    output::write_sweep(&mut *w, &rows)?;
    // NaN deviations count as failures.
    let failed = rows
        .iter()
        .filter(|r| {
            !matches!(
                r.deviation.partial_cmp(&r.budget),
                Some(Ordering::Less | Ordering::Equal)
            )
        })
        .count();
    if failed > 0 {
        return Err(Failure::Budget(failed).into());
    }
    Ok(())
}
