//! Exact ζ-factorization certificates.
//!
//! For an external function f ≥ 0 on the base segment S₀ = [πL, πL+U] and
//! its reverse iterates S₁, …, S_k, put
//!
//! ```text
//! J_r = ∫_{S_r} f(φ₁^r(t)) dt,   K_r = |S_r|.
//! ```
//!
//! Since φ₁' = Z̃² maps S_r onto S_{r−1}, the weighted mean value theorem
//! gives points α_r, β_r ∈ S_r with J_{r−1} = Z̃²(α_r)·J_r and
//! K_{r−1} = Z̃²(β_r)·K_r, and a point α₀ ∈ S₀ with f(α₀) = J_k/K_k. The
//! products telescope to
//!
//! ```text
//! ∏_{r=1}^{k} Z̃²(α_r)/Z̃²(β_r) = mean(f)/f(α₀).
//! ```
//!
//! β_r depends on the segment lengths only, so every family shares the same
//! β sequence for a given (L, U).

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ladder::{IteratedSegment, LadderModel};
use crate::numerics::{integrate_adaptive, mean_value_point};
use crate::report::fmt17;

/// The admissible external functions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "id", rename_all = "lowercase")]
pub enum FunctionFamily {
    /// t·sin²t
    F1,
    /// t·cos²t
    F2,
    /// t·cos 2t
    F3,
    /// 1
    Unit,
    /// (t − anchor)^delta with anchor = πL
    Power { delta: f64, anchor: f64 },
}

impl FunctionFamily {
    pub fn power(delta: f64, l: u64) -> Result<Self> {
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "power exponent must be positive, got {delta}"
            )));
        }
        Ok(Self::Power {
            delta,
            anchor: PI * l as f64,
        })
    }

    pub fn id(&self) -> &'static str {
        match self {
            Self::F1 => "f1",
            Self::F2 => "f2",
            Self::F3 => "f3",
            Self::Unit => "unit",
            Self::Power { .. } => "power",
        }
    }

    pub fn delta(&self) -> Option<f64> {
        match self {
            Self::Power { delta, .. } => Some(*delta),
            _ => None,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            Self::F1 => t * t.sin().powi(2),
            Self::F2 => t * t.cos().powi(2),
            Self::F3 => t * (2.0 * t).cos(),
            Self::Unit => 1.0,
            // Iterated endpoints can land a rounding error left of the anchor.
            Self::Power { delta, anchor } => (t - anchor).max(0.0).powf(delta),
        }
    }

    /// (1/U)∫_{πL}^{πL+U} f(t) dt in closed form.
    pub fn closed_form_mean(&self, l: u64, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < PI / 4.0) {
            return Err(Error::BadU(u));
        }
        let pl = PI * l as f64;
        let sinc2 = (2.0 * u).sin() / (2.0 * u);
        let sin2_over_u = u.sin().powi(2) / u;
        Ok(match *self {
            Self::F1 => 0.25 * (2.0 * pl + u) - 0.5 * (pl + u) * sinc2 + 0.25 * sin2_over_u,
            Self::F2 => 0.25 * (2.0 * pl + u) + 0.5 * (pl + u) * sinc2 - 0.25 * sin2_over_u,
            Self::F3 => (pl + u) * sinc2 - 0.5 * sin2_over_u,
            Self::Unit => 1.0,
            Self::Power { delta, anchor } => {
                if (anchor - pl).abs() > 1e-9 * pl {
                    return Err(Error::MismatchedParams(format!(
                        "power family anchored at {anchor}, base segment starts at {pl}"
                    )));
                }
                u.powf(delta) / (1.0 + delta)
            }
        })
    }
}

pub fn closed_form_mean(family: &FunctionFamily, l: u64, u: f64) -> Result<f64> {
    family.closed_form_mean(l, u)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorizeConfig {
    /// Largest admissible k.
    pub k0: usize,
    /// Relative tolerance of every mean-value solve.
    pub solve_tol: f64,
    /// Relative tolerance of the iterated integrals J_r.
    pub integral_rel_tol: f64,
    /// Allowed relative miss of the change-of-variables identity.
    pub transport_rel_tol: f64,
    /// Largest accepted certificate residual.
    pub residual_tol: f64,
}

impl Default for FactorizeConfig {
    fn default() -> Self {
        Self {
            k0: 3,
            solve_tol: 1e-12,
            integral_rel_tol: 1e-11,
            transport_rel_tol: 1e-7,
            residual_tol: 1e-7,
        }
    }
}

/// J₀..J_k, K₀..K_k and the segments they live on.
#[derive(Debug, Clone, PartialEq)]
pub struct IteratedIntegrals {
    pub segments: Vec<IteratedSegment>,
    pub j: Vec<f64>,
    pub k: Vec<f64>,
    /// ∫_{S_r} f(φ₁^r t)·Z̃²(t) dt for r = 1..k, which must reproduce J_{r−1}.
    pub transported: Vec<f64>,
}

/// φ₁ applied `r` times; NaN outside the cached range so that quadrature fails loudly.
fn forward(model: &LadderModel, t: f64, r: usize) -> f64 {
    (0..r).try_fold(t, |x, _| model.phi1(x)).unwrap_or(f64::NAN)
}

pub fn iterated_integrals(
    family: &FunctionFamily,
    l: u64,
    u: f64,
    k: usize,
    model: &LadderModel,
    cfg: &FactorizeConfig,
) -> Result<IteratedIntegrals> {
    if k > cfg.k0 {
        return Err(Error::BadK { k, k0: cfg.k0 });
    }
    let mean = family.closed_form_mean(l, u)?;
    let base = model.base_segment(l, u)?;
    let mut segments = vec![model.reverse_iterate_segment(base, 0)?];
    for r in 1..=k {
        let next = model.reverse_iterate_segment(segments[r - 1].segment(), 1)?;
        segments.push(IteratedSegment {
            base,
            order: r,
            ..next
        });
    }

    let lengths: Vec<f64> = segments.iter().map(IteratedSegment::length).collect();
    let mut j = Vec::with_capacity(k + 1);
    j.push(u * mean);
    let tol = cfg.integral_rel_tol * (u * mean).abs().max(f64::MIN_POSITIVE);
    let mut transported = Vec::with_capacity(k);
    for r in 1..=k {
        let seg = &segments[r];
        let jr = if matches!(family, FunctionFamily::Unit) {
            lengths[r]
        } else {
            integrate_adaptive(
                |t| family.eval(forward(model, t, r)),
                seg.left,
                seg.right,
                tol,
            )?
        };
        let moved = integrate_adaptive(
            |t| family.eval(forward(model, t, r)) * model.z_tilde_sq_unchecked(t),
            seg.left,
            seg.right,
            tol,
        )?;
        let expected = j[r - 1];
        if (moved - expected).abs() > cfg.transport_rel_tol * expected.abs() {
            return Err(Error::TransportViolation {
                order: r,
                lhs: moved,
                rhs: expected,
            });
        }
        j.push(jr);
        transported.push(moved);
    }
    Ok(IteratedIntegrals {
        segments,
        j,
        k: lengths,
        transported,
    })
}

/// One instance of an exact ζ-factorization formula.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorizationCertificate {
    pub family: FunctionFamily,
    pub l: u64,
    pub u: f64,
    pub k: usize,
    pub alpha0: f64,
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    pub j: Vec<f64>,
    #[serde(rename = "K")]
    pub lengths: Vec<f64>,
    #[serde(skip)]
    pub segments: Vec<IteratedSegment>,
    pub residual: f64,
}

impl FactorizationCertificate {
    /// ∏ Z̃²(α_r)/Z̃²(β_r), freshly evaluated.
    pub fn zeta_ratio_product(&self, model: &LadderModel) -> Result<f64> {
        let mut product = 1.0;
        for (a, b) in self.alphas.iter().zip(&self.betas) {
            product *= model.z_tilde_sq(*a)? / model.z_tilde_sq(*b)?;
        }
        Ok(product)
    }

    /// Flat record: family, L, U, k, α₀, α₁..α_k, β₁..β_k, residual.
    pub fn record(&self) -> Vec<String> {
        let mut out = vec![
            self.family.id().to_string(),
            self.l.to_string(),
            fmt17(self.u),
            self.k.to_string(),
            fmt17(self.alpha0),
        ];
        out.extend(self.alphas.iter().map(|&x| fmt17(x)));
        out.extend(self.betas.iter().map(|&x| fmt17(x)));
        out.push(fmt17(self.residual));
        out
    }
}

/// Builds the certificate for (family, L, U, k).
pub fn factorize(
    family: &FunctionFamily,
    l: u64,
    u: f64,
    k: usize,
    model: &LadderModel,
    cfg: &FactorizeConfig,
) -> Result<FactorizationCertificate> {
    if k == 0 || k > cfg.k0 {
        return Err(Error::BadK { k, k0: cfg.k0 });
    }
    let integrals = iterated_integrals(family, l, u, k, model, cfg)?;
    let IteratedIntegrals {
        segments,
        j,
        k: lengths,
        ..
    } = integrals;

    let z2 = |t: f64| model.z_tilde_sq_unchecked(t);
    let mut alphas = Vec::with_capacity(k);
    let mut betas = Vec::with_capacity(k);
    for r in 1..=k {
        let seg = &segments[r];
        let alpha = mean_value_point(z2, seg.left, seg.right, j[r - 1] / j[r], cfg.solve_tol)?;
        let beta = mean_value_point(
            z2,
            seg.left,
            seg.right,
            lengths[r - 1] / lengths[r],
            cfg.solve_tol,
        )?;
        for point in [alpha, beta] {
            if !seg.contains_open(point) {
                return Err(Error::PointOutsideSet {
                    point,
                    order: r,
                    left: seg.left,
                    right: seg.right,
                });
            }
        }
        alphas.push(alpha);
        betas.push(beta);
    }

    let base = &segments[0];
    let alpha0 = mean_value_point(
        |t| family.eval(t),
        base.left,
        base.right,
        j[k] / lengths[k],
        cfg.solve_tol,
    )?;
    if !base.contains_open(alpha0) {
        return Err(Error::PointOutsideSet {
            point: alpha0,
            order: 0,
            left: base.left,
            right: base.right,
        });
    }
    if !(family.eval(alpha0) > 0.0) {
        return Err(Error::ZeroDenominator(alpha0));
    }

    let mut cert = FactorizationCertificate {
        family: *family,
        l,
        u,
        k,
        alpha0,
        alphas,
        betas,
        j,
        lengths,
        segments,
        residual: f64::NAN,
    };
    cert.residual = verify_certificate(&cert, model)?;
    if !(cert.residual <= cfg.residual_tol) {
        return Err(Error::CertificateResidual {
            residual: cert.residual,
            tol: cfg.residual_tol,
        });
    }
    Ok(cert)
}

/// |∏ Z̃²(α_r)/Z̃²(β_r) − mean/f(α₀)| / (1 + |mean/f(α₀)|), from fresh evaluations.
pub fn verify_certificate(cert: &FactorizationCertificate, model: &LadderModel) -> Result<f64> {
    let product = cert.zeta_ratio_product(model)?;
    let rhs = cert.family.closed_form_mean(cert.l, cert.u)? / cert.family.eval(cert.alpha0);
    Ok((product - rhs).abs() / (1.0 + rhs.abs()))
}
