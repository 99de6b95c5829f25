//! The operational Jacob's ladder φ₁ and the sets built from it.
//!
//! φ₁(t) = t₀ − (1−c)·π(t₀) + Φ(t), with Φ(t) = ∫_{t₀}^{t} Z̃²(u) du and
//! Z̃²(u) = |ζ(1/2+iu)|² / ω(u), ω(u) = ln(u/2π) + 1 + c. Its derivative is
//! exactly Z̃², and the drift t − φ₁(t) follows (1−c)·π(t) on average.
//!
//! Φ is tabulated at unit spacing; values between checkpoints are completed
//! by local quadrature. Inverse queries bisect on Φ itself, never on a
//! derivative, because Z̃² vanishes at every zeta zero.

mod cache_file;
mod primes;

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

pub use self::cache_file::CacheHeader;
pub use self::primes::{prime_count, PRIME_COUNT_LIMIT};
use crate::error::{Error, Result};
use crate::numerics::{integrate_adaptive, CompensatedSum};
use crate::zeta_eval::{hardy_z_unchecked, EvalConfig, EULER_GAMMA};

pub const DEFAULT_T0: f64 = 200.0;
/// Smallest admissible L; π·64 ≈ 201 is the first multiple of π above t₀.
pub const DEFAULT_L0: u64 = 64;
pub const CACHE_STEP: f64 = 1.0;
/// Tag identifying the ω definition in cache headers.
pub const OMEGA_TAG: &str = "ln(t/2pi)+1+euler";

/// Absolute tolerance of each cached panel integral.
const PANEL_TOL: f64 = 1e-11;
/// Absolute tolerance of the partial panel completing Φ between checkpoints.
const LOCAL_TOL: f64 = 1e-12;
/// Relative Φ-residual at which inverse bisection stops.
const INVERSE_REL_TOL: f64 = 2e-14;

/// ω(t) = ln(t/2π) + 1 + c.
pub fn omega(t: f64) -> f64 {
    (t / (2.0 * PI)).ln() + 1.0 + EULER_GAMMA
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Segment {
    pub left: f64,
    pub right: f64,
}

impl Segment {
    pub fn new(left: f64, right: f64) -> Result<Self> {
        if !(left < right) {
            return Err(Error::InvalidParameter(format!(
                "segment needs left < right, got [{left}, {right}]"
            )));
        }
        Ok(Self { left, right })
    }

    /// The base segment [πL, πL+U].
    pub fn base(l: u64, u: f64) -> Self {
        let left = PI * l as f64;
        Self {
            left,
            right: left + u,
        }
    }

    pub fn length(&self) -> f64 {
        self.right - self.left
    }

    pub fn contains_open(&self, x: f64) -> bool {
        self.left < x && x < self.right
    }
}

/// The r-th reverse iterate of a base segment under φ₁.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IteratedSegment {
    pub base: Segment,
    pub order: usize,
    pub left: f64,
    pub right: f64,
}

impl IteratedSegment {
    pub fn segment(&self) -> Segment {
        Segment {
            left: self.left,
            right: self.right,
        }
    }

    pub fn length(&self) -> f64 {
        self.right - self.left
    }

    pub fn contains_open(&self, x: f64) -> bool {
        self.left < x && x < self.right
    }
}

/// Δ(U, πL, k): the base segment and its first k reverse iterates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DisconnectedSet {
    pub l: u64,
    pub u: f64,
    pub k: usize,
    pub components: Vec<IteratedSegment>,
}

impl DisconnectedSet {
    /// Gaps between consecutive components, in order.
    pub fn gaps(&self) -> Vec<f64> {
        self.components
            .windows(2)
            .map(|w| w[1].left - w[0].right)
            .collect()
    }
}

/// b.left − a.right for a segment `a` lying strictly left of `b`.
pub fn rho_gap(a: &IteratedSegment, b: &IteratedSegment) -> Result<f64> {
    if a.right < b.left {
        Ok(b.left - a.right)
    } else {
        Err(Error::NotSeparated {
            right: a.right,
            left: b.left,
        })
    }
}

/// The frozen ladder: anchor, evaluator settings and the Φ checkpoint table.
#[derive(Debug, Clone)]
pub struct LadderModel {
    t0: f64,
    t_max: f64,
    anchor_offset: f64,
    eval: EvalConfig,
    l0: u64,
    abscissae: Vec<f64>,
    cumulative: Vec<f64>,
}

impl LadderModel {
    /// Tabulates Φ on [t0, t_max]. Panels are integrated in parallel and
    /// accumulated with compensated summation.
    pub fn build(t0: f64, t_max: f64, eval: EvalConfig) -> Result<Self> {
        Self::check_range(t0, t_max, &eval)?;
        let panels = ((t_max - t0) / CACHE_STEP).ceil() as usize;
        let abscissae: Vec<f64> = (0..=panels)
            .map(|i| {
                if i == panels {
                    t_max
                } else {
                    t0 + i as f64 * CACHE_STEP
                }
            })
            .collect();
        let order = eval.correction_order;
        let increments = abscissae
            .par_windows(2)
            .map(|w| integrate_adaptive(|t| z_tilde_sq_raw(t, order), w[0], w[1], PANEL_TOL))
            .collect::<Result<Vec<f64>>>()?;
        let mut cumulative = Vec::with_capacity(abscissae.len());
        let mut sum = CompensatedSum::default();
        cumulative.push(0.0);
        for inc in increments {
            sum.add(inc);
            cumulative.push(sum.value());
        }
        Self::from_table(t0, t_max, eval, abscissae, cumulative)
    }

    fn check_range(t0: f64, t_max: f64, eval: &EvalConfig) -> Result<()> {
        if !(t0 >= eval.min_height) || !(t_max > t0) || t_max > PRIME_COUNT_LIMIT {
            return Err(Error::InvalidParameter(format!(
                "ladder range [{t0}, {t_max}] must satisfy {} <= t0 < t_max <= 1e7",
                eval.min_height
            )));
        }
        Ok(())
    }

    fn from_table(
        t0: f64,
        t_max: f64,
        eval: EvalConfig,
        abscissae: Vec<f64>,
        cumulative: Vec<f64>,
    ) -> Result<Self> {
        Self::check_range(t0, t_max, &eval)?;
        if abscissae.len() != cumulative.len() || abscissae.len() < 2 {
            return Err(Error::InvalidParameter("malformed checkpoint table".into()));
        }
        for (w, c) in abscissae.windows(2).zip(cumulative.windows(2)) {
            if !(w[1] > w[0]) || w[1] - w[0] > CACHE_STEP * (1.0 + 1e-12) {
                return Err(Error::InvalidParameter(format!(
                    "checkpoint spacing violated at t = {}",
                    w[0]
                )));
            }
            if !(c[1] > c[0]) {
                return Err(Error::NonMonotoneCache(w[0]));
            }
        }
        if abscissae[0] != t0 || *abscissae.last().unwrap() != t_max || cumulative[0] != 0.0 {
            return Err(Error::InvalidParameter(
                "checkpoint table does not span [t0, t_max] from Φ(t0) = 0".into(),
            ));
        }
        let anchor_offset = (1.0 - EULER_GAMMA) * prime_count(t0)? as f64;
        Ok(Self {
            t0,
            t_max,
            anchor_offset,
            eval,
            l0: DEFAULT_L0,
            abscissae,
            cumulative,
        })
    }

    pub fn with_l0(mut self, l0: u64) -> Self {
        self.l0 = l0;
        self
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    /// (1−c)·π(t₀).
    pub fn anchor_offset(&self) -> f64 {
        self.anchor_offset
    }

    pub fn eval(&self) -> &EvalConfig {
        &self.eval
    }

    pub fn l0(&self) -> u64 {
        self.l0
    }

    /// Cached (t, Φ(t)) pairs.
    pub fn checkpoints(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.abscissae
            .iter()
            .copied()
            .zip(self.cumulative.iter().copied())
    }

    pub fn checkpoint_count(&self) -> usize {
        self.abscissae.len()
    }

    fn check_height(&self, t: f64) -> Result<()> {
        if t.is_nan() || t < self.t0 {
            return Err(Error::HeightTooLow { t, min: self.t0 });
        }
        if t > self.t_max {
            return Err(Error::HeightAboveCache {
                t,
                t_max: self.t_max,
            });
        }
        Ok(())
    }

    pub fn omega(&self, t: f64) -> Result<f64> {
        if t.is_nan() || t < self.t0 {
            return Err(Error::HeightTooLow { t, min: self.t0 });
        }
        Ok(omega(t))
    }

    /// Z̃²(t) = |ζ(1/2+it)|² / ω(t).
    pub fn z_tilde_sq(&self, t: f64) -> Result<f64> {
        if t.is_nan() || t < self.t0 {
            return Err(Error::HeightTooLow { t, min: self.t0 });
        }
        Ok(z_tilde_sq_raw(t, self.eval.correction_order))
    }

    pub(crate) fn z_tilde_sq_unchecked(&self, t: f64) -> f64 {
        z_tilde_sq_raw(t, self.eval.correction_order)
    }

    /// Φ(t) = ∫_{t₀}^{t} Z̃², from the nearest checkpoint plus local quadrature.
    pub fn cumulative(&self, t: f64) -> Result<f64> {
        self.check_height(t)?;
        let i = self
            .abscissae
            .partition_point(|&x| x <= t)
            .saturating_sub(1);
        let i = i.min(self.abscissae.len() - 2);
        let (lo, hi) = (self.abscissae[i], self.abscissae[i + 1]);
        let f = |u| self.z_tilde_sq_unchecked(u);
        if t - lo <= hi - t {
            Ok(self.cumulative[i] + integrate_adaptive(f, lo, t, LOCAL_TOL)?)
        } else {
            Ok(self.cumulative[i + 1] - integrate_adaptive(f, t, hi, LOCAL_TOL)?)
        }
    }

    /// φ₁(t) = t₀ − (1−c)·π(t₀) + Φ(t).
    pub fn phi1(&self, t: f64) -> Result<f64> {
        Ok(self.phi1_base() + self.cumulative(t)?)
    }

    fn phi1_base(&self) -> f64 {
        self.t0 - self.anchor_offset
    }

    /// The t with φ₁(t) = y, to a Φ-residual of about 2e-14·max(1, y).
    pub fn phi1_inverse(&self, y: f64) -> Result<f64> {
        let target = y - self.phi1_base();
        let last = *self.cumulative.last().unwrap();
        if !(0.0..=last).contains(&target) {
            return Err(Error::OutOfRange {
                value: y,
                lo: self.phi1_base(),
                hi: self.phi1_base() + last,
            });
        }
        let i = self
            .cumulative
            .partition_point(|&c| c <= target)
            .saturating_sub(1)
            .min(self.cumulative.len() - 2);
        let (mut lo, mut hi) = (self.abscissae[i], self.abscissae[i + 1]);
        let (mut phi_lo, mut phi_hi) = (self.cumulative[i], self.cumulative[i + 1]);
        if phi_lo == target {
            return Ok(lo);
        }
        let threshold = INVERSE_REL_TOL * y.abs().max(1.0);
        let f = |u| self.z_tilde_sq_unchecked(u);
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                return Ok(if target - phi_lo <= phi_hi - target {
                    lo
                } else {
                    hi
                });
            }
            let phi_mid = phi_lo + integrate_adaptive(f, lo, mid, LOCAL_TOL)?;
            if (phi_mid - target).abs() <= threshold {
                return Ok(mid);
            }
            if phi_mid < target {
                lo = mid;
                phi_lo = phi_mid;
            } else {
                hi = mid;
                phi_hi = phi_mid;
            }
        }
    }

    /// Applies φ₁⁻¹ `r` times to both endpoints of `seg`.
    pub fn reverse_iterate_segment(&self, seg: Segment, r: usize) -> Result<IteratedSegment> {
        let mut current = IteratedSegment {
            base: seg,
            order: 0,
            left: seg.left,
            right: seg.right,
        };
        for _ in 0..r {
            current = self.next_iterate(&current)?;
        }
        Ok(current)
    }

    fn next_iterate(&self, seg: &IteratedSegment) -> Result<IteratedSegment> {
        let left = self.phi1_inverse(seg.left)?;
        let right = self.phi1_inverse(seg.right)?;
        if !(left < right) {
            return Err(Error::InvalidParameter(format!(
                "reverse iterate of order {} collapsed to [{left}, {right}]",
                seg.order + 1
            )));
        }
        Ok(IteratedSegment {
            base: seg.base,
            order: seg.order + 1,
            left,
            right,
        })
    }

    /// Δ(U, πL, k) with components of orders 0..=k.
    pub fn disconnected_set(&self, l: u64, u: f64, k: usize) -> Result<DisconnectedSet> {
        let base = self.base_segment(l, u)?;
        if k == 0 {
            return Err(Error::InvalidParameter(
                "a disconnected set needs k >= 1".into(),
            ));
        }
        let mut components = Vec::with_capacity(k + 1);
        components.push(self.reverse_iterate_segment(base, 0)?);
        for r in 1..=k {
            let next = self.next_iterate(&components[r - 1])?;
            components.push(next);
        }
        for (r, w) in components.windows(2).enumerate() {
            if !(w[0].right < w[1].left) {
                return Err(Error::OverlapDetected {
                    order: r,
                    next: r + 1,
                    right: w[0].right,
                    left: w[1].left,
                });
            }
        }
        Ok(DisconnectedSet {
            l,
            u,
            k,
            components,
        })
    }

    /// Validated base segment [πL, πL+U].
    pub fn base_segment(&self, l: u64, u: f64) -> Result<Segment> {
        if !(u > 0.0 && u < PI / 4.0) {
            return Err(Error::BadU(u));
        }
        if l < self.l0 {
            return Err(Error::LTooSmall { l, l0: self.l0 });
        }
        let base = Segment::base(l, u);
        if base.left < self.t0 {
            return Err(Error::HeightTooLow {
                t: base.left,
                min: self.t0,
            });
        }
        Ok(base)
    }
}

fn z_tilde_sq_raw(t: f64, correction_order: u8) -> f64 {
    let z = hardy_z_unchecked(t, correction_order);
    z * z / omega(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_model() -> LadderModel {
        LadderModel::build(DEFAULT_T0, 420.0, EvalConfig::default()).unwrap()
    }

    #[test]
    fn omega_values() {
        assert!((omega(1000.0) - 6.647_093_877_474_32).abs() < 1e-12);
        let root = 2.0 * PI * (-1.0 - EULER_GAMMA).exp();
        assert!(omega(root).abs() < 1e-12);
        assert!(root < DEFAULT_T0);
        let ratio = omega(1e6) / 1e6f64.ln();
        assert!((0.9..1.1).contains(&ratio));
    }

    #[test]
    fn anchor_value() {
        let m = small_model();
        assert!((m.phi1(DEFAULT_T0).unwrap() - 180.551_920_585_47).abs() < 1e-9);
        assert_eq!(
            m.phi1_inverse(m.phi1(DEFAULT_T0).unwrap()).unwrap(),
            DEFAULT_T0
        );
    }

    #[test]
    fn cache_is_strictly_increasing_and_below_diagonal() {
        let m = small_model();
        assert!(m.checkpoint_count() >= 221);
        let pts: Vec<_> = m.checkpoints().collect();
        assert_eq!(pts[0], (DEFAULT_T0, 0.0));
        for w in pts.windows(2) {
            assert!(w[1].0 > w[0].0 && w[1].1 > w[0].1);
        }
        for &(t, _) in &pts {
            assert!(m.phi1(t).unwrap() < t);
        }
    }

    #[test]
    fn range_errors() {
        let m = small_model();
        assert!(matches!(m.phi1(199.0), Err(Error::HeightTooLow { .. })));
        assert!(matches!(m.phi1(421.0), Err(Error::HeightAboveCache { .. })));
        assert!(matches!(
            m.phi1_inverse(100.0),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            m.z_tilde_sq(14.13),
            Err(Error::HeightTooLow { .. })
        ));
        assert!(matches!(m.omega(150.0), Err(Error::HeightTooLow { .. })));
    }

    #[test]
    fn inverse_round_trip() {
        let m = small_model();
        for &t in &[205.3, 250.0, 301.7, 377.25] {
            let y = m.phi1(t).unwrap();
            let back = m.phi1_inverse(y).unwrap();
            assert!((back - t).abs() < 1e-6, "{t} -> {back}");
            assert!((m.phi1(back).unwrap() - y).abs() <= 1e-9 * y.max(1.0));
        }
    }

    #[test]
    fn zeroth_iterate_is_the_base() {
        let m = small_model();
        let seg = Segment::base(64, 0.5);
        let it = m.reverse_iterate_segment(seg, 0).unwrap();
        assert_eq!((it.left, it.right), (seg.left, seg.right));
        assert_eq!(it.order, 0);
    }

    #[test]
    fn gap_requires_separation() {
        let m = small_model();
        let it = m
            .reverse_iterate_segment(Segment::base(64, 0.5), 0)
            .unwrap();
        assert!(matches!(rho_gap(&it, &it), Err(Error::NotSeparated { .. })));
    }

    #[test]
    fn base_segment_validation() {
        let m = small_model();
        assert!(matches!(m.base_segment(100, 0.0), Err(Error::BadU(_))));
        assert!(matches!(m.base_segment(100, PI / 4.0), Err(Error::BadU(_))));
        assert!(matches!(
            m.base_segment(63, 0.5),
            Err(Error::LTooSmall { .. })
        ));
        assert!(m.disconnected_set(100, 0.5, 0).is_err());
    }
}
