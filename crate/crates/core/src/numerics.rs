//! Adaptive Gauss–Kronrod quadrature and bracketed root location.
//!
//! Both routines size their initial grids from the local oscillation scale
//! of Z(t)², 2π / ln(t/2π), so that no zeta oscillation falls between two
//! samples.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::{E, PI};

use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 48;
const MAX_PANELS: usize = 20_000;

/// Local oscillation scale of Z(t)² near height `t`; 2π for heights where
/// ln(t/2π) would be below one.
pub fn oscillation_scale(t: f64) -> f64 {
    let ratio = t.abs() / (2.0 * PI);
    if ratio > E {
        2.0 * PI / ratio.ln()
    } else {
        2.0 * PI
    }
}

// 15-point Kronrod nodes (non-negative half) and weights; the Gauss
// 7-point rule uses the odd-indexed nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One G7–K15 panel: (Kronrod estimate, error estimate).
///
/// The raw |K − G| difference is rescaled as in QUADPACK's `qk15`, with a
/// floor at the round-off level of the panel.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut values = [(0.0, 0.0); 7];
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = fc.abs() * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let (f1, f2) = (f(center - dx), f(center + dx));
        values[j] = (f1, f2);
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((values[j].0 - mean).abs() + (values[j].1 - mean).abs());
    }
    let result = kronrod * half;
    let res_abs = abs_sum * half.abs();
    let res_asc = asc * half.abs();
    let mut err = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (result, err)
}

#[cfg(test)]
fn gk15_raw<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// ∫ₐᵇ f with estimated absolute error at most `tol`.
///
/// The interval is first cut into panels no wider than an eighth of the
/// oscillation scale at `b`. The panel with the largest G7/K15 error
/// estimate is then bisected until the summed estimate drops below `tol`.
/// Fails if a panel would need more than `MAX_DEPTH` bisections or the
/// panel count exceeds `MAX_PANELS`.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(a <= b) || !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "integrate_adaptive needs a <= b and tol > 0 (a = {a}, b = {b}, tol = {tol})"
        )));
    }
    if a == b {
        return Ok(0.0);
    }
    let width = b - a;
    let panel = oscillation_scale(b) / 8.0;
    let count = (width / panel).ceil().max(1.0) as usize;
    let fail = || Error::NoConvergence { a, b, tol };

    let evaluate = |lo: f64, hi: f64, depth: u32| -> Result<Panel> {
        let (value, err) = gk15(&f, lo, hi);
        if !value.is_finite() || !err.is_finite() {
            return Err(fail());
        }
        Ok(Panel {
            lo,
            hi,
            value,
            err,
            depth,
        })
    };

    let mut heap = BinaryHeap::with_capacity(2 * count);
    let mut err_sum = 0.0;
    for i in 0..count {
        let lo = a + width * i as f64 / count as f64;
        let hi = if i + 1 == count {
            b
        } else {
            a + width * (i + 1) as f64 / count as f64
        };
        let p = evaluate(lo, hi, 0)?;
        err_sum += p.err;
        heap.push(p);
    }

    loop {
        if err_sum <= tol {
            // The running sum drifts under repeated subtraction; confirm it.
            err_sum = heap.iter().map(|p| p.err).sum();
            if err_sum <= tol {
                break;
            }
        }
        if heap.len() >= MAX_PANELS.max(2 * count) {
            return Err(fail());
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.lo + worst.hi);
        if worst.depth >= MAX_DEPTH || mid <= worst.lo || mid >= worst.hi {
            return Err(fail());
        }
        let left = evaluate(worst.lo, mid, worst.depth + 1)?;
        let right = evaluate(mid, worst.hi, worst.depth + 1)?;
        err_sum += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }

    let mut panels = heap.into_vec();
    panels.sort_unstable_by(|p, q| p.lo.total_cmp(&q.lo));
    let mut total = CompensatedSum::default();
    for p in &panels {
        total.add(p.value);
    }
    Ok(total.value())
}

struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    err: f64,
    depth: u32,
}

// Max-heap on the error estimate; ties broken by position for determinism.
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

/// Leftmost interior point of (a, b) where `f` attains `target`, to within
/// `tol·(1 + |target|)`.
///
/// A uniform grid with step at most an eighth of the oscillation scale is
/// scanned for the first sign change of `f − target`, which is then refined
/// by bisection. If `f` stays within tolerance of `target` on the whole grid
/// the midpoint is returned. When the bracket collapses to adjacent floats
/// before the tolerance is met, the better endpoint is returned.
pub fn mean_value_point<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    target: f64,
    tol: f64,
) -> Result<f64> {
    if !(a < b) || !(tol > 0.0) || !target.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "mean_value_point needs a < b, tol > 0 and a finite target (a = {a}, b = {b}, target = {target})"
        )));
    }
    let threshold = tol * (1.0 + target.abs());
    let step = (oscillation_scale(b) / 8.0).min((b - a) / 16.0);
    let n = ((b - a) / step).ceil() as usize;
    let grid = |i: usize| {
        if i == n {
            b
        } else {
            a + (b - a) * i as f64 / n as f64
        }
    };

    let mut values = Vec::with_capacity(n + 1);
    for i in 0..=n {
        values.push(f(grid(i)) - target);
    }
    if values.iter().all(|g| g.abs() <= threshold) {
        return Ok(0.5 * (a + b));
    }

    let bracket = values
        .windows(2)
        .position(|w| (w[0] <= 0.0 && w[1] >= 0.0) || (w[0] >= 0.0 && w[1] <= 0.0));
    let Some(i) = bracket else {
        let (min, max) = values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &g| {
                (lo.min(g + target), hi.max(g + target))
            });
        return Err(Error::TargetOutsideRange {
            target,
            a,
            b,
            min,
            max,
        });
    };

    let (mut lo, mut hi) = (grid(i), grid(i + 1));
    let (mut g_lo, mut g_hi) = (values[i], values[i + 1]);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            let best = if g_lo.abs() <= g_hi.abs() && lo > a {
                lo
            } else {
                hi
            };
            return Ok(best);
        }
        let g_mid = f(mid) - target;
        if g_mid.abs() <= threshold && mid > a && mid < b {
            return Ok(mid);
        }
        if (g_lo <= 0.0) == (g_mid <= 0.0) && g_lo != 0.0 {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
            g_hi = g_mid;
        }
    }
}

/// Root of `f(x) = target` for increasing `f` on [a, b], by bisection to
/// `|f(x) − target| ≤ 1e-12·(1 + |target|)`.
pub fn invert_increasing<F: Fn(f64) -> f64>(f: F, target: f64, a: f64, b: f64) -> Result<f64> {
    let (mut lo, mut hi) = (a, b);
    let (f_lo, f_hi) = (f(lo), f(hi));
    if !(f_lo <= target && target <= f_hi) {
        return Err(Error::NotBracketed {
            target,
            lo: f_lo,
            hi: f_hi,
        });
    }
    let threshold = 1e-12 * (1.0 + target.abs());
    if (f_lo - target).abs() <= threshold {
        return Ok(lo);
    }
    if (f_hi - target).abs() <= threshold {
        return Ok(hi);
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(if (f(lo) - target).abs() <= (f(hi) - target).abs() {
                lo
            } else {
                hi
            });
        }
        let value = f(mid);
        if (value - target).abs() <= threshold {
            return Ok(mid);
        }
        if value < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}
