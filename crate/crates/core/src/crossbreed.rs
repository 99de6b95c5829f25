//! Hybrid formulas obtained by eliminating πL and U across certificates.
//!
//! Exact checks compare both sides of an identity that must hold up to
//! numerical error. Asymptotic checks report the deviation |lhs/rhs − 1|,
//! which is a genuine O(U/πL) quantity at finite L, against the budget
//! `asymptotic_factor·k·U/(πL) + asymptotic_floor`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorize::{factorize, FactorizationCertificate, FactorizeConfig, FunctionFamily};
use crate::ladder::LadderModel;
use crate::zeta_eval::zeta_mod_sq;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FormulaId {
    X32,
    X33,
    T35,
    A41,
    A43,
    C18,
    P51,
    B52,
    T53,
}

impl FormulaId {
    pub const ALL: [FormulaId; 9] = [
        Self::X32,
        Self::X33,
        Self::T35,
        Self::A41,
        Self::A43,
        Self::C18,
        Self::P51,
        Self::B52,
        Self::T53,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::X32 => "X32",
            Self::X33 => "X33",
            Self::T35 => "T35",
            Self::A41 => "A41",
            Self::A43 => "A43",
            Self::C18 => "C18",
            Self::P51 => "P51",
            Self::B52 => "B52",
            Self::T53 => "T53",
        }
    }

    pub fn is_asymptotic(&self) -> bool {
        matches!(self, Self::A41 | Self::A43 | Self::C18)
    }
}

impl std::str::FromStr for FormulaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown formula id {s:?}")))
    }
}

impl std::fmt::Display for FormulaId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HybridInputs {
    #[serde(rename = "L")]
    pub l: u64,
    #[serde(rename = "U")]
    pub u: f64,
    pub k: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deltas: Option<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HybridReport {
    pub formula_id: FormulaId,
    pub inputs: HybridInputs,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub tol_budget: f64,
    /// |lhs/rhs − 1| for the asymptotic formulas.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deviation: Option<f64>,
    /// Worst relative miss of either side of the power pair against U.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_residual: Option<f64>,
    /// Error bound implied by the certificate residuals alone.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub propagated_bound: Option<f64>,
}

impl HybridReport {
    fn new(
        formula_id: FormulaId,
        inputs: HybridInputs,
        lhs: f64,
        rhs: f64,
        tol_budget: f64,
    ) -> Self {
        let abs_residual = (lhs - rhs).abs();
        Self {
            formula_id,
            inputs,
            lhs,
            rhs,
            abs_residual,
            rel_residual: abs_residual / (1.0 + lhs.abs().max(rhs.abs())),
            tol_budget,
            deviation: None,
            reference_residual: None,
            propagated_bound: None,
        }
    }

    /// The quantity compared against `tol_budget`.
    pub fn metric(&self) -> f64 {
        match self.deviation {
            Some(d) => d,
            None => self
                .rel_residual
                .max(self.reference_residual.unwrap_or(0.0)),
        }
    }

    pub fn pass(&self) -> bool {
        self.metric() <= self.tol_budget
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossbreedConfig {
    /// X32, X33, T35.
    pub exact_budget: f64,
    /// P51, against U and between the sides.
    pub power_budget: f64,
    /// B52, T53; the fractional exponents amplify certificate error.
    pub secondary_budget: f64,
    pub asymptotic_factor: f64,
    pub asymptotic_floor: f64,
}

impl Default for CrossbreedConfig {
    fn default() -> Self {
        Self {
            exact_budget: 1e-6,
            power_budget: 1e-6,
            secondary_budget: 1e-5,
            asymptotic_factor: 5.0,
            asymptotic_floor: 1e-6,
        }
    }
}

impl CrossbreedConfig {
    pub fn asymptotic_budget(&self, k: usize, l: u64, u: f64) -> f64 {
        self.asymptotic_factor * k as f64 * u / (PI * l as f64) + self.asymptotic_floor
    }
}

fn same_u(a: f64, b: f64) -> bool {
    a.to_bits() == b.to_bits()
}

fn shared_params(certs: &[&FactorizationCertificate]) -> Result<(u64, f64)> {
    let (l, u) = (certs[0].l, certs[0].u);
    for c in &certs[1..] {
        if c.l != l || !same_u(c.u, u) {
            return Err(Error::MismatchedParams(format!(
                "(L, U) = ({l}, {u}) vs ({}, {})",
                c.l, c.u
            )));
        }
    }
    Ok((l, u))
}

fn expect_family(cert: &FactorizationCertificate, family: FunctionFamily) -> Result<()> {
    if cert.family != family {
        return Err(Error::MismatchedParams(format!(
            "expected a {} certificate, got {}",
            family.id(),
            cert.family.id()
        )));
    }
    Ok(())
}

fn expect_trig_triple(
    c1: &FactorizationCertificate,
    c2: &FactorizationCertificate,
    c3: &FactorizationCertificate,
) -> Result<(u64, f64)> {
    expect_family(c1, FunctionFamily::F1)?;
    expect_family(c2, FunctionFamily::F2)?;
    expect_family(c3, FunctionFamily::F3)?;
    shared_params(&[c1, c2, c3])
}

/// Checks that every point of every certificate lies in Δ(U, πL, max k).
pub fn assert_points_in_set(
    certs: &[&FactorizationCertificate],
    model: &LadderModel,
) -> Result<()> {
    let (l, u) = shared_params(certs)?;
    let kbar = certs.iter().map(|c| c.k).max().unwrap_or(1);
    let set = model.disconnected_set(l, u, kbar)?;
    let outside = |point: f64, order: usize| {
        let seg = &set.components[order];
        Error::PointOutsideSet {
            point,
            order,
            left: seg.left,
            right: seg.right,
        }
    };
    for c in certs {
        if !set.components[0].contains_open(c.alpha0) {
            return Err(outside(c.alpha0, 0));
        }
        for (i, (&a, &b)) in c.alphas.iter().zip(&c.betas).enumerate() {
            let seg = &set.components[i + 1];
            for p in [a, b] {
                if !seg.contains_open(p) {
                    return Err(outside(p, i + 1));
                }
            }
        }
    }
    Ok(())
}

/// Term f(α₀)·∏ and its error bound (|f(α₀)| + |mean|)·residual.
fn exact_term(cert: &FactorizationCertificate, model: &LadderModel) -> Result<(f64, f64)> {
    let product = cert.zeta_ratio_product(model)?;
    let weight = cert.family.eval(cert.alpha0);
    let mean = cert.family.closed_form_mean(cert.l, cert.u)?;
    Ok((
        weight * product,
        (weight.abs() + mean.abs()) * cert.residual,
    ))
}

fn trig_inputs(l: u64, u: f64, k: Vec<usize>) -> HybridInputs {
    HybridInputs {
        l,
        u,
        k,
        deltas: None,
    }
}

/// X32 and X33.
pub fn check_exact_32_33(
    c1: &FactorizationCertificate,
    c2: &FactorizationCertificate,
    c3: &FactorizationCertificate,
    model: &LadderModel,
    cfg: &CrossbreedConfig,
) -> Result<[HybridReport; 2]> {
    let (l, u) = expect_trig_triple(c1, c2, c3)?;
    let (t1, e1) = exact_term(c1, model)?;
    let (t2, e2) = exact_term(c2, model)?;
    let (t3, e3) = exact_term(c3, model)?;
    let target = PI * l as f64 + 0.5 * u;

    let mut x32 = HybridReport::new(
        FormulaId::X32,
        trig_inputs(l, u, vec![c1.k, c3.k]),
        t1 + 0.5 * t3,
        0.5 * target,
        cfg.exact_budget,
    );
    x32.propagated_bound = Some((e1 + 0.5 * e3) / (1.0 + x32.lhs.abs().max(x32.rhs.abs())));

    let mut x33 = HybridReport::new(
        FormulaId::X33,
        trig_inputs(l, u, vec![c2.k, c1.k]),
        t2 + t1,
        target,
        cfg.exact_budget,
    );
    x33.propagated_bound = Some((e1 + e2) / (1.0 + x33.lhs.abs().max(x33.rhs.abs())));
    Ok([x32, x33])
}

/// T35: {α₀²∏₂}cos²α₀² − {α₀¹∏₁}sin²α₀¹ = {α₀³∏₃}cos 2α₀³.
pub fn check_exact_hybrid_35(
    c1: &FactorizationCertificate,
    c2: &FactorizationCertificate,
    c3: &FactorizationCertificate,
    model: &LadderModel,
    cfg: &CrossbreedConfig,
) -> Result<HybridReport> {
    let (l, u) = expect_trig_triple(c1, c2, c3)?;
    assert_points_in_set(&[c1, c2, c3], model)?;
    let (t1, e1) = exact_term(c1, model)?;
    let (t2, e2) = exact_term(c2, model)?;
    let (t3, e3) = exact_term(c3, model)?;
    let mut report = HybridReport::new(
        FormulaId::T35,
        trig_inputs(l, u, vec![c1.k, c2.k, c3.k]),
        t2 - t1,
        t3,
        cfg.exact_budget,
    );
    report.propagated_bound = Some((e1 + e2 + e3) / (1.0 + report.lhs.abs().max(report.rhs.abs())));
    Ok(report)
}

fn mod_sq(model: &LadderModel, t: f64) -> Result<f64> {
    zeta_mod_sq(t, model.eval())
}

/// ∏ |ζ(½+iα_r)|²/|ζ(½+iβ_r)|², or the α-part alone.
fn raw_product(
    cert: &FactorizationCertificate,
    model: &LadderModel,
    with_betas: bool,
) -> Result<f64> {
    let mut product = 1.0;
    for (a, b) in cert.alphas.iter().zip(&cert.betas) {
        product *= mod_sq(model, *a)?;
        if with_betas {
            product /= mod_sq(model, *b)?;
        }
    }
    Ok(product)
}

fn asymptotic_report(
    id: FormulaId,
    inputs: HybridInputs,
    terms: [f64; 3],
    budget: f64,
) -> Result<HybridReport> {
    let [cos2_term, sin2_term, rhs] = terms;
    let scale = cos2_term.abs().max(sin2_term.abs()).max(rhs.abs());
    if rhs.abs() < 1e-12 * scale || rhs == 0.0 {
        return Err(Error::RhsNearZero { rhs });
    }
    let mut report = HybridReport::new(id, inputs, cos2_term - sin2_term, rhs, budget);
    report.deviation = Some((report.lhs / report.rhs - 1.0).abs());
    Ok(report)
}

/// A41: ω factors and α₀ prefactors dropped, raw |ζ|² ratios kept.
pub fn check_asymptotic_41(
    c1: &FactorizationCertificate,
    c2: &FactorizationCertificate,
    c3: &FactorizationCertificate,
    model: &LadderModel,
    cfg: &CrossbreedConfig,
) -> Result<HybridReport> {
    let (l, u) = expect_trig_triple(c1, c2, c3)?;
    let kbar = c1.k.max(c2.k).max(c3.k);
    let terms = [
        raw_product(c2, model, true)? * c2.alpha0.cos().powi(2),
        raw_product(c1, model, true)? * c1.alpha0.sin().powi(2),
        raw_product(c3, model, true)? * (2.0 * c3.alpha0).cos(),
    ];
    asymptotic_report(
        FormulaId::A41,
        trig_inputs(l, u, vec![c1.k, c2.k, c3.k]),
        terms,
        cfg.asymptotic_budget(kbar, l, u),
    )
}

/// A43 with k₁ = k₂ = k₃ = k; reported as C18 when k = 1.
///
/// The β-products are shared by all three certificates and cancel, so only
/// the α-parts are evaluated.
pub fn check_secondary_43(
    c1: &FactorizationCertificate,
    c2: &FactorizationCertificate,
    c3: &FactorizationCertificate,
    model: &LadderModel,
    cfg: &CrossbreedConfig,
) -> Result<HybridReport> {
    let (l, u) = expect_trig_triple(c1, c2, c3)?;
    if c1.k != c2.k || c2.k != c3.k {
        return Err(Error::UnequalK([c1.k, c2.k, c3.k]));
    }
    let k = c1.k;
    let terms = [
        raw_product(c2, model, false)? * c2.alpha0.cos().powi(2),
        raw_product(c1, model, false)? * c1.alpha0.sin().powi(2),
        raw_product(c3, model, false)? * (2.0 * c3.alpha0).cos(),
    ];
    let id = if k == 1 {
        FormulaId::C18
    } else {
        FormulaId::A43
    };
    asymptotic_report(
        id,
        trig_inputs(l, u, vec![k; 3]),
        terms,
        cfg.asymptotic_budget(k, l, u),
    )
}

fn power_delta(cert: &FactorizationCertificate) -> Result<f64> {
    cert.family.delta().ok_or_else(|| {
        Error::MismatchedParams(format!(
            "expected a power certificate, got {}",
            cert.family.id()
        ))
    })
}

/// (1+Δ)^{1/Δ}(α₀ − πL)·{∏}^{1/Δ}, which Algorithm F forces to equal U.
pub fn power_side(cert: &FactorizationCertificate, model: &LadderModel) -> Result<f64> {
    let delta = power_delta(cert)?;
    let product = cert.zeta_ratio_product(model)?;
    Ok((1.0 + delta).powf(1.0 / delta)
        * (cert.alpha0 - PI * cert.l as f64)
        * product.powf(1.0 / delta))
}

fn check_distinct(d4: f64, d5: f64) -> Result<()> {
    if !(d4 > 0.0 && d5 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "power exponents must be positive, got {d4} and {d5}"
        )));
    }
    if d4 == d5 {
        return Err(Error::EqualDeltas(d4));
    }
    Ok(())
}

/// P51 from two ready-made power certificates.
pub fn power_pair_51_from(
    c4: &FactorizationCertificate,
    c5: &FactorizationCertificate,
    model: &LadderModel,
    cfg: &CrossbreedConfig,
) -> Result<HybridReport> {
    let (l, u) = shared_params(&[c4, c5])?;
    let (d4, d5) = (power_delta(c4)?, power_delta(c5)?);
    check_distinct(d4, d5)?;
    let lhs = power_side(c4, model)?;
    let rhs = power_side(c5, model)?;
    let mut report = HybridReport::new(
        FormulaId::P51,
        HybridInputs {
            l,
            u,
            k: vec![c4.k, c5.k],
            deltas: Some([d4, d5]),
        },
        lhs,
        rhs,
        cfg.power_budget,
    );
    report.reference_residual = Some(((lhs - u).abs().max((rhs - u).abs())) / u);
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
pub fn check_power_pair_51(
    l: u64,
    u: f64,
    k4: usize,
    k5: usize,
    d4: f64,
    d5: f64,
    model: &LadderModel,
    fcfg: &FactorizeConfig,
    cfg: &CrossbreedConfig,
) -> Result<HybridReport> {
    check_distinct(d4, d5)?;
    let c4 = factorize(&FunctionFamily::power(d4, l)?, l, u, k4, model, fcfg)?;
    let c5 = factorize(&FunctionFamily::power(d5, l)?, l, u, k5, model, fcfg)?;
    power_pair_51_from(&c4, &c5, model, cfg)
}

fn alpha_product(cert: &FactorizationCertificate, model: &LadderModel) -> Result<f64> {
    cert.alphas
        .iter()
        .try_fold(1.0, |acc, &a| Ok(acc * model.z_tilde_sq(a)?))
}

fn beta_product(cert: &FactorizationCertificate, model: &LadderModel) -> Result<f64> {
    cert.betas
        .iter()
        .try_fold(1.0, |acc, &b| Ok(acc * model.z_tilde_sq(b)?))
}

/// Right side of B52 from power certificates with equal k, using the
/// exponents `d4`, `d5` (normally the certificates' own).
pub fn beta_product_52_from(
    c4: &FactorizationCertificate,
    c5: &FactorizationCertificate,
    d4: f64,
    d5: f64,
    model: &LadderModel,
) -> Result<f64> {
    let (l, _) = shared_params(&[c4, c5])?;
    check_distinct(d4, d5)?;
    if c4.k != c5.k {
        return Err(Error::MismatchedParams(format!(
            "B52 needs k4 = k5, got {} and {}",
            c4.k, c5.k
        )));
    }
    let pl = PI * l as f64;
    let e = d4 * d5 / (d5 - d4);
    let constant = ((1.0 + d4).powf(1.0 / d4) / (1.0 + d5).powf(1.0 / d5)).powf(e);
    let offsets = ((c4.alpha0 - pl) / (c5.alpha0 - pl)).powf(e);
    let a4 = alpha_product(c4, model)?.powf(d5 / (d5 - d4));
    let a5 = alpha_product(c5, model)?.powf(-d4 / (d5 - d4));
    Ok(constant * offsets * a4 * a5)
}

/// B52 evaluated from fresh power certificates.
pub fn compute_beta_product_52(
    k: usize,
    d4: f64,
    d5: f64,
    l: u64,
    u: f64,
    model: &LadderModel,
    fcfg: &FactorizeConfig,
) -> Result<f64> {
    if k == 0 {
        return Err(Error::BadK { k, k0: fcfg.k0 });
    }
    check_distinct(d4, d5)?;
    let c4 = factorize(&FunctionFamily::power(d4, l)?, l, u, k, model, fcfg)?;
    let c5 = factorize(&FunctionFamily::power(d5, l)?, l, u, k, model, fcfg)?;
    beta_product_52_from(&c4, &c5, d4, d5, model)
}

/// Direct ∏ Z̃²(β_r) against B52, with the exponents given explicitly.
pub fn beta_report_52(
    c4: &FactorizationCertificate,
    c5: &FactorizationCertificate,
    d4: f64,
    d5: f64,
    model: &LadderModel,
    cfg: &CrossbreedConfig,
) -> Result<HybridReport> {
    let rhs = beta_product_52_from(c4, c5, d4, d5, model)?;
    let lhs = beta_product(c4, model)?;
    Ok(HybridReport::new(
        FormulaId::B52,
        HybridInputs {
            l: c4.l,
            u: c4.u,
            k: vec![c4.k],
            deltas: Some([d4, d5]),
        },
        lhs,
        rhs,
        cfg.secondary_budget,
    ))
}

#[allow(clippy::too_many_arguments)]
pub fn check_beta_product_52(
    k: usize,
    d4: f64,
    d5: f64,
    l: u64,
    u: f64,
    model: &LadderModel,
    fcfg: &FactorizeConfig,
    cfg: &CrossbreedConfig,
) -> Result<HybridReport> {
    if k == 0 {
        return Err(Error::BadK { k, k0: fcfg.k0 });
    }
    check_distinct(d4, d5)?;
    let c4 = factorize(&FunctionFamily::power(d4, l)?, l, u, k, model, fcfg)?;
    let c5 = factorize(&FunctionFamily::power(d5, l)?, l, u, k, model, fcfg)?;
    beta_report_52(&c4, &c5, d4, d5, model, cfg)
}

fn find_k(certs: &[FactorizationCertificate], k: usize) -> Result<&FactorizationCertificate> {
    certs
        .iter()
        .find(|c| c.k == k)
        .ok_or_else(|| Error::MismatchedParams(format!("no power certificate with k = {k}")))
}

/// T53 from trig certificates and power certificates covering every k in
/// use, with the exponents given explicitly.
///
/// The constant [(1+Δ4)^{1/Δ4}/(1+Δ5)^{1/Δ5}]^{Δ4Δ5/(Δ5−Δ4)} is common to all
/// three terms and is dropped, as in the formula itself.
pub fn secondary_exact_53_from(
    trig: [&FactorizationCertificate; 3],
    power4: &[FactorizationCertificate],
    power5: &[FactorizationCertificate],
    d4: f64,
    d5: f64,
    model: &LadderModel,
    cfg: &CrossbreedConfig,
) -> Result<HybridReport> {
    let [c1, c2, c3] = trig;
    let (l, u) = expect_trig_triple(c1, c2, c3)?;
    check_distinct(d4, d5)?;
    let mut all: Vec<&FactorizationCertificate> = vec![c1, c2, c3];
    all.extend(power4.iter().chain(power5));
    shared_params(&all)?;

    let pl = PI * l as f64;
    let e = d4 * d5 / (d5 - d4);
    let term = |c: &FactorizationCertificate, weight: f64| -> Result<f64> {
        let p4 = find_k(power4, c.k)?;
        let p5 = find_k(power5, c.k)?;
        let mut numerator = 1.0;
        for r in 0..c.k {
            numerator *= model.z_tilde_sq(c.alphas[r])?
                * model.z_tilde_sq(p5.alphas[r])?.powf(d4 / (d5 - d4))
                * model.z_tilde_sq(p4.alphas[r])?.powf(-d5 / (d5 - d4));
        }
        let denominator = ((p4.alpha0 - pl) / (p5.alpha0 - pl)).powf(e);
        Ok(c.alpha0 * numerator / denominator * weight)
    };
    let lhs = term(c2, c2.alpha0.cos().powi(2))? - term(c1, c1.alpha0.sin().powi(2))?;
    let rhs = term(c3, (2.0 * c3.alpha0).cos())?;
    Ok(HybridReport::new(
        FormulaId::T53,
        HybridInputs {
            l,
            u,
            k: vec![c1.k, c2.k, c3.k],
            deltas: Some([d4, d5]),
        },
        lhs,
        rhs,
        cfg.secondary_budget,
    ))
}

/// Builds every certificate T53 needs and evaluates it.
#[allow(clippy::too_many_arguments)]
pub fn check_secondary_exact_53(
    k1: usize,
    k2: usize,
    k3: usize,
    d4: f64,
    d5: f64,
    l: u64,
    u: f64,
    model: &LadderModel,
    fcfg: &FactorizeConfig,
    cfg: &CrossbreedConfig,
) -> Result<HybridReport> {
    check_distinct(d4, d5)?;
    let c1 = factorize(&FunctionFamily::F1, l, u, k1, model, fcfg)?;
    let c2 = factorize(&FunctionFamily::F2, l, u, k2, model, fcfg)?;
    let c3 = factorize(&FunctionFamily::F3, l, u, k3, model, fcfg)?;
    let mut ks = vec![k1, k2, k3];
    ks.sort_unstable();
    ks.dedup();
    let build = |delta: f64| -> Result<Vec<FactorizationCertificate>> {
        let family = FunctionFamily::power(delta, l)?;
        ks.iter()
            .map(|&k| factorize(&family, l, u, k, model, fcfg))
            .collect()
    };
    let (p4, p5) = (build(d4)?, build(d5)?);
    secondary_exact_53_from([&c1, &c2, &c3], &p4, &p5, d4, d5, model, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_ids_parse_case_insensitively() {
        for id in FormulaId::ALL {
            assert_eq!(id.as_str().parse::<FormulaId>().unwrap(), id);
            assert_eq!(id.as_str().to_lowercase().parse::<FormulaId>().unwrap(), id);
        }
        assert!("X99".parse::<FormulaId>().is_err());
    }

    #[test]
    fn relative_residual_definition() {
        let inputs = trig_inputs(100, 0.5, vec![1]);
        let r = HybridReport::new(FormulaId::X33, inputs, 2.0, -3.0, 1e-6);
        assert_eq!(r.abs_residual, 5.0);
        assert_eq!(r.rel_residual, 5.0 / 4.0);
        assert!(!r.pass());
    }

    #[test]
    fn asymptotic_budget_is_linear_in_k() {
        let cfg = CrossbreedConfig::default();
        let b1 = cfg.asymptotic_budget(1, 1000, 0.5) - cfg.asymptotic_floor;
        let b3 = cfg.asymptotic_budget(3, 1000, 0.5) - cfg.asymptotic_floor;
        assert!((b3 / b1 - 3.0).abs() < 1e-12);
        assert!(cfg.asymptotic_budget(1, 1000, 0.5) < 0.01);
    }

    #[test]
    fn equal_deltas_rejected() {
        assert!(matches!(
            check_distinct(2.0, 2.0),
            Err(Error::EqualDeltas(_))
        ));
        assert!(check_distinct(-1.0, 2.0).is_err());
        assert!(check_distinct(0.5, 2.0).is_ok());
    }
}
