//! Riemann–Siegel theta, the Hardy Z-function and |ζ(1/2+it)|².
//!
//! Above [`EULER_MACLAURIN_BELOW`] the Hardy function is evaluated with the
//! Riemann–Siegel main sum plus up to five remainder coefficients C₀..C₄.
//! The coefficients are polynomials in `p - 1/2` assembled once from the
//! Taylor expansion of Ψ(p) = cos(2π(p² − p − 1/16)) / cos(2πp).
//!
//! Below that height the remainder series is too short to reach 1e-7, so a
//! short Euler–Maclaurin sum (about t/π terms) is used instead.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Euler's constant c.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Heights below this are summed with Euler–Maclaurin rather than Riemann–Siegel.
pub const EULER_MACLAURIN_BELOW: f64 = 200.0;

pub const MAX_CORRECTION_ORDER: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    /// Number of Riemann–Siegel remainder coefficients beyond C₀ (0..=4).
    pub correction_order: u8,
    /// Evaluation below this height is refused.
    pub min_height: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            correction_order: MAX_CORRECTION_ORDER,
            min_height: 50.0,
        }
    }
}

impl EvalConfig {
    pub fn new(correction_order: u8, min_height: f64) -> Result<Self> {
        if correction_order > MAX_CORRECTION_ORDER {
            return Err(Error::InvalidParameter(format!(
                "correction_order {correction_order} exceeds {MAX_CORRECTION_ORDER}"
            )));
        }
        if !(min_height >= 10.0) {
            return Err(Error::InvalidParameter(format!(
                "min_height {min_height} must be at least 10"
            )));
        }
        Ok(Self {
            correction_order,
            min_height,
        })
    }

    fn check(&self, t: f64) -> Result<()> {
        if t.is_nan() || t < self.min_height {
            return Err(Error::HeightTooLow {
                t,
                min: self.min_height,
            });
        }
        Ok(())
    }
}

/// θ(t) from its asymptotic series, carried to the t⁻⁷ term.
pub(crate) fn theta_series(t: f64) -> f64 {
    let inv = 1.0 / t;
    let inv2 = inv * inv;
    let tail = inv
        * (1.0 / 48.0
            + inv2 * (7.0 / 5760.0 + inv2 * (31.0 / 80640.0 + inv2 * (127.0 / 430080.0))));
    0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0 + tail
}

pub fn riemann_siegel_theta(t: f64, cfg: &EvalConfig) -> Result<f64> {
    cfg.check(t)?;
    Ok(theta_series(t))
}

pub fn hardy_z(t: f64, cfg: &EvalConfig) -> Result<f64> {
    cfg.check(t)?;
    Ok(hardy_z_unchecked(t, cfg.correction_order))
}

/// |ζ(1/2+it)|², computed as `hardy_z(t)²`.
pub fn zeta_mod_sq(t: f64, cfg: &EvalConfig) -> Result<f64> {
    let z = hardy_z(t, cfg)?;
    Ok(z * z)
}

pub(crate) fn hardy_z_unchecked(t: f64, correction_order: u8) -> f64 {
    if t < EULER_MACLAURIN_BELOW {
        hardy_z_euler_maclaurin(t)
    } else {
        hardy_z_riemann_siegel(t, correction_order)
    }
}

const TABLE_LEN: usize = 1400;

/// (ln n, n^-1/2) for n = 1..TABLE_LEN; index 0 is unused.
fn log_table() -> &'static [(f64, f64)] {
    static TABLE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..=TABLE_LEN)
            .map(|n| {
                let x = n.max(1) as f64;
                (x.ln(), 1.0 / x.sqrt())
            })
            .collect()
    })
}

fn log_and_rsqrt(n: usize) -> (f64, f64) {
    match log_table().get(n) {
        Some(&entry) => entry,
        None => {
            let x = n as f64;
            (x.ln(), 1.0 / x.sqrt())
        }
    }
}

fn hardy_z_riemann_siegel(t: f64, correction_order: u8) -> f64 {
    let theta = theta_series(t);
    let a = (t / (2.0 * PI)).sqrt();
    let n_max = a.floor() as usize;
    let p = a - n_max as f64;

    let mut main = 0.0;
    for n in 1..=n_max {
        let (ln_n, rsqrt) = log_and_rsqrt(n);
        main += rsqrt * (theta - t * ln_n).cos();
    }

    let x = p - 0.5;
    let inv_a = 1.0 / a;
    let coeffs = remainder_polys();
    let mut remainder = 0.0;
    let mut scale = 1.0;
    for poly in coeffs.iter().take(correction_order as usize + 1) {
        remainder += scale * horner(poly, x);
        scale *= inv_a;
    }
    let sign = if n_max % 2 == 1 { 1.0 } else { -1.0 };
    2.0 * main + sign * inv_a.sqrt() * remainder
}

fn horner(poly: &[f64], x: f64) -> f64 {
    poly.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

const PSI_DEGREE: usize = 72;
const PSI_SAMPLES: usize = 256;

/// Taylor coefficients of Ψ about p = 1/2, from the trapezoidal rule on the
/// unit circle in x = p − 1/2. Ψ is entire, so the rule converges geometrically.
fn psi_taylor() -> Vec<f64> {
    let psi = |x: Complex64| -> Complex64 {
        let num = (x * x * (2.0 * PI) - 5.0 * PI / 8.0).cos();
        let den = (x * (2.0 * PI)).cos();
        -num / den
    };
    let samples: Vec<Complex64> = (0..PSI_SAMPLES)
        .map(|j| {
            let angle = 2.0 * PI * j as f64 / PSI_SAMPLES as f64;
            psi(Complex64::from_polar(1.0, angle))
        })
        .collect();
    (0..=PSI_DEGREE + 12)
        .map(|n| {
            let sum: Complex64 = samples
                .iter()
                .enumerate()
                .map(|(j, s)| {
                    let angle = -2.0 * PI * (n * j % PSI_SAMPLES) as f64 / PSI_SAMPLES as f64;
                    s * Complex64::from_polar(1.0, angle)
                })
                .sum();
            sum.re / PSI_SAMPLES as f64
        })
        .collect()
}

/// Polynomial (in x = p − 1/2) of the m-th derivative of Ψ.
fn psi_derivative(taylor: &[f64], m: usize) -> Vec<f64> {
    (0..=PSI_DEGREE)
        .map(|n| {
            let falling: f64 = ((n + 1)..=(n + m)).map(|j| j as f64).product();
            taylor[n + m] * falling
        })
        .collect()
}

/// C₀..C₄ as polynomials in x = p − 1/2.
fn remainder_polys() -> &'static [Vec<f64>; 5] {
    static POLYS: OnceLock<[Vec<f64>; 5]> = OnceLock::new();
    POLYS.get_or_init(|| {
        let taylor = psi_taylor();
        let d = |m: usize| psi_derivative(&taylor, m);
        let combine = |terms: &[(f64, usize)]| -> Vec<f64> {
            let mut out = vec![0.0; PSI_DEGREE + 1];
            for &(weight, m) in terms {
                for (o, c) in out.iter_mut().zip(d(m)) {
                    *o += weight * c;
                }
            }
            out
        };
        let pi2 = PI * PI;
        let pi4 = pi2 * pi2;
        let pi6 = pi4 * pi2;
        let pi8 = pi4 * pi4;
        [
            d(0),
            combine(&[(-1.0 / (96.0 * pi2), 3)]),
            combine(&[(1.0 / (64.0 * pi2), 2), (1.0 / (18432.0 * pi4), 6)]),
            combine(&[
                (-1.0 / (64.0 * pi2), 1),
                (-1.0 / (3840.0 * pi4), 5),
                (-1.0 / (5_308_416.0 * pi6), 9),
            ]),
            combine(&[
                (1.0 / (128.0 * pi2), 0),
                (19.0 / (24576.0 * pi4), 4),
                (11.0 / (5_898_240.0 * pi6), 8),
                (1.0 / (2_038_431_744.0 * pi8), 12),
            ]),
        ]
    })
}

/// Value of the remainder coefficient C_k at fractional part p.
pub fn remainder_coefficient(k: usize, p: f64) -> f64 {
    horner(&remainder_polys()[k], p - 0.5)
}

const EM_TERMS: usize = 20;

/// B₂ₖ/(2k)! for k = 1..=EM_TERMS, via B₂ₖ/(2k)! = (−1)^(k+1)·2ζ(2k)/(2π)^(2k).
fn bernoulli_over_factorial() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let pi2 = PI * PI;
        let small = [
            pi2 / 6.0,
            pi2 * pi2 / 90.0,
            pi2 * pi2 * pi2 / 945.0,
            pi2 * pi2 * pi2 * pi2 / 9450.0,
        ];
        (1..=EM_TERMS)
            .map(|k| {
                let zeta = if k <= small.len() {
                    small[k - 1]
                } else {
                    (1..=100)
                        .rev()
                        .map(|n| (n as f64).powi(-2 * k as i32))
                        .sum()
                };
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                sign * 2.0 * zeta / (2.0 * PI).powi(2 * k as i32)
            })
            .collect()
    })
}

fn hardy_z_euler_maclaurin(t: f64) -> f64 {
    let s = Complex64::new(0.5, t);
    let n_cut = (t / PI).ceil() as usize + 5;

    let mut sum = Complex64::new(0.0, 0.0);
    for n in 1..n_cut {
        let (ln_n, rsqrt) = log_and_rsqrt(n);
        sum += Complex64::from_polar(rsqrt, -t * ln_n);
    }

    let big_n = n_cut as f64;
    let n_pow = Complex64::from_polar(1.0 / big_n.sqrt(), -t * big_n.ln());
    sum += n_pow * big_n / (s - 1.0) + n_pow * 0.5;

    let mut pochhammer = s;
    let mut n_shift = n_pow / big_n;
    let inv_n2 = 1.0 / (big_n * big_n);
    for (k, coeff) in bernoulli_over_factorial().iter().enumerate() {
        sum += pochhammer * n_shift * *coeff;
        let j = 2.0 * (k + 1) as f64;
        pochhammer *= (s + (j - 1.0)) * (s + j);
        n_shift *= inv_n2;
    }

    let phase = Complex64::from_polar(1.0, theta_series(t));
    (phase * sum).re
}
