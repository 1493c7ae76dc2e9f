//! Interpolation schedules s(t).
//!
//! Five closed-form families are provided. Each is defined by its speed law
//! against the gap at the floor fraction w:
//!
//! | kind            | ds/dt                  | total time T          |
//! |-----------------|------------------------|-----------------------|
//! | `Constant`      | ε                      | 1/ε                   |
//! | `ConstantPrimed`| ε·w                    | 1/(ε·w)               |
//! | `Fast`          | ε·Δ_w³/√(w(1-w))       | √(1-w)/(ε·√w)         |
//! | `FastPrimed`    | ε·Δ_w³                 | 1/(ε·w)               |
//! | `Standard`      | ε·Δ_w²                 | φ_w/(ε·√(w(1-w)))     |
//!
//! The primed families reduce to the unprimed closed forms under an ε
//! remapping (ε_c = ε'·w, ε_f = ε'·√(w(1-w))), derived by equating the
//! defining speed laws; that keeps a single source of truth per shape.
//! A tabulated schedule with monotone-cubic interpolation is also available
//! so that bounds stated for arbitrary s(t) can be exercised.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::gap_raw;

/// Slack allowed when clamping t to [0, T]; larger excursions are errors.
/// Floating-point endpoint accumulation in integrators motivates the value.
const TIME_CLAMP_TOL: f64 = 1e-9;

/// Schedule family tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleKind {
    Constant,
    ConstantPrimed,
    Fast,
    FastPrimed,
    Standard,
}

/// Parameters (kind, ε, w) of a closed-form family; ε > 0 and 0 < w < 1.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ScheduleParams {
    pub kind: ScheduleKind,
    pub epsilon: f64,
    pub w: f64,
}

impl ScheduleParams {
    pub fn new(kind: ScheduleKind, epsilon: f64, w: f64) -> Result<Self> {
        if !epsilon.is_finite() || epsilon <= 0.0 {
            return Err(Error::InvalidEpsilon(epsilon));
        }
        if !w.is_finite() || w <= 0.0 || w >= 1.0 {
            return Err(Error::InvalidW(w));
        }
        Ok(Self { kind, epsilon, w })
    }

    /// ε of the unprimed shape this family evaluates through.
    fn effective_epsilon(&self) -> f64 {
        match self.kind {
            ScheduleKind::Constant | ScheduleKind::Fast | ScheduleKind::Standard => self.epsilon,
            ScheduleKind::ConstantPrimed => self.epsilon * self.w,
            ScheduleKind::FastPrimed => self.epsilon * (self.w * (1.0 - self.w)).sqrt(),
        }
    }
}

/// φ_w = arctan(√((1-w)/w)); decreasing in w with range (0, π/2).
pub fn phi_w(w: f64) -> Result<f64> {
    if !w.is_finite() || w <= 0.0 || w >= 1.0 {
        return Err(Error::InvalidW(w));
    }
    Ok(((1.0 - w) / w).sqrt().atan())
}

/// Total run time of a family, fixed by s(0) = 0, s(T) = 1.
pub fn total_time(params: &ScheduleParams) -> Result<f64> {
    // Re-validate so the function stands alone.
    let p = ScheduleParams::new(params.kind, params.epsilon, params.w)?;
    let (eps, w) = (p.epsilon, p.w);
    Ok(match p.kind {
        ScheduleKind::Constant => 1.0 / eps,
        ScheduleKind::ConstantPrimed => 1.0 / (eps * w),
        ScheduleKind::Fast => (1.0 - w).sqrt() / (eps * w.sqrt()),
        ScheduleKind::FastPrimed => 1.0 / (eps * w),
        ScheduleKind::Standard => phi_w(w)? / (eps * (w * (1.0 - w)).sqrt()),
    })
}

#[derive(Debug, Clone)]
enum Shape {
    Family(ScheduleParams),
    Table(MonotoneCubic),
}

/// A concrete schedule: monotone s: [0, T] → [0, 1] with s(0) = 0, s(T) = 1,
/// exposing s(t), ds/dt and the speed as a function of s.
#[derive(Debug, Clone)]
pub struct Schedule {
    shape: Shape,
    total_time: f64,
}

impl Schedule {
    /// Closed-form family schedule.
    pub fn family(params: ScheduleParams) -> Result<Self> {
        let total = total_time(&params)?;
        Ok(Self {
            shape: Shape::Family(params),
            total_time: total,
        })
    }

    /// Convenience constructor from raw (kind, ε, w).
    pub fn new(kind: ScheduleKind, epsilon: f64, w: f64) -> Result<Self> {
        Self::family(ScheduleParams::new(kind, epsilon, w)?)
    }

    /// User-defined schedule from (t, s) samples, interpolated by a
    /// monotone cubic. Requires t strictly increasing from 0, s
    /// nondecreasing with s(0) = 0 and s(T) = 1 within 1e-9.
    pub fn from_samples(samples: &[(f64, f64)]) -> Result<Self> {
        let table = MonotoneCubic::new(samples)?;
        let total = *table.t.last().unwrap();
        Ok(Self {
            shape: Shape::Table(table),
            total_time: total,
        })
    }

    pub fn params(&self) -> Option<&ScheduleParams> {
        match &self.shape {
            Shape::Family(p) => Some(p),
            Shape::Table(_) => None,
        }
    }

    pub fn total_time(&self) -> f64 {
        self.total_time
    }

    fn clamp_time(&self, t: f64) -> Result<f64> {
        if !t.is_finite() || t < -TIME_CLAMP_TOL || t > self.total_time + TIME_CLAMP_TOL {
            return Err(Error::TimeOutOfRange {
                t,
                total: self.total_time,
            });
        }
        Ok(t.clamp(0.0, self.total_time))
    }

    /// s(t) for t ∈ [0, T] (inputs within 1e-9 outside are clamped).
    pub fn s_of_t(&self, t: f64) -> Result<f64> {
        let t = self.clamp_time(t)?;
        Ok(self.s_clamped(t))
    }

    /// ds/dt at time t.
    pub fn ds_dt(&self, t: f64) -> Result<f64> {
        let t = self.clamp_time(t)?;
        Ok(self.ds_dt_clamped(t))
    }

    /// ds/dt evaluated where the schedule passes through s. For the
    /// closed-form families this is the defining speed law; for a table it
    /// is recovered by inverting s(t).
    pub fn speed_at_s(&self, s: f64) -> Result<f64> {
        if !s.is_finite() || !(0.0..=1.0).contains(&s) {
            return Err(Error::InvalidS(s));
        }
        match &self.shape {
            Shape::Family(p) => Ok(family_speed_at_s(p, s)),
            Shape::Table(table) => {
                let t = table.invert(s);
                Ok(table.derivative(t).max(0.0))
            }
        }
    }

    /// Node times when tabulated; quadratures scan segment by segment so
    /// every feature of the interpolant is resolved.
    pub(crate) fn table_nodes(&self) -> Option<&[f64]> {
        match &self.shape {
            Shape::Family(_) => None,
            Shape::Table(table) => Some(&table.t),
        }
    }

    /// Hot-path s(t); caller guarantees t ∈ [0, T].
    #[inline]
    pub(crate) fn s_clamped(&self, t: f64) -> f64 {
        let v = match &self.shape {
            Shape::Family(p) => family_s_of_t(p, t, self.total_time),
            Shape::Table(table) => table.value(t),
        };
        v.clamp(0.0, 1.0)
    }

    /// Hot-path ds/dt; caller guarantees t ∈ [0, T].
    #[inline]
    pub(crate) fn ds_dt_clamped(&self, t: f64) -> f64 {
        match &self.shape {
            Shape::Family(p) => family_speed_at_s(p, family_s_of_t(p, t, self.total_time)),
            Shape::Table(table) => table.derivative(t).max(0.0),
        }
    }
}

fn family_s_of_t(p: &ScheduleParams, t: f64, total: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    if t == total {
        return 1.0;
    }
    let w = p.w;
    // u runs from +1 at t=0 to -1 at t=T; both shaped forms are odd in u.
    let u = 1.0 - 2.0 * t / total;
    match p.kind {
        ScheduleKind::Constant | ScheduleKind::ConstantPrimed => t / total,
        ScheduleKind::Fast | ScheduleKind::FastPrimed => {
            let denom = 1.0 - u * u * (1.0 - w);
            0.5 - 0.5 * u * (w / denom).sqrt()
        }
        ScheduleKind::Standard => {
            let phi = ((1.0 - w) / w).sqrt().atan();
            0.5 - 0.5 * (w / (1.0 - w)).sqrt() * (u * phi).tan()
        }
    }
}

fn family_speed_at_s(p: &ScheduleParams, s: f64) -> f64 {
    let eps = p.effective_epsilon();
    let w = p.w;
    match p.kind {
        ScheduleKind::Constant | ScheduleKind::ConstantPrimed => eps,
        ScheduleKind::Fast | ScheduleKind::FastPrimed => {
            eps * gap_raw(w, s).powi(3) / (w * (1.0 - w)).sqrt()
        }
        ScheduleKind::Standard => {
            let d = gap_raw(w, s);
            eps * d * d
        }
    }
}

/// Monotone cubic Hermite interpolant (Fritsch–Carlson slope limiter).
#[derive(Debug, Clone)]
struct MonotoneCubic {
    t: Vec<f64>,
    s: Vec<f64>,
    slope: Vec<f64>,
}

impl MonotoneCubic {
    fn new(samples: &[(f64, f64)]) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidTable("need at least two samples".into()));
        }
        let t: Vec<f64> = samples.iter().map(|p| p.0).collect();
        let s: Vec<f64> = samples.iter().map(|p| p.1).collect();
        if t.iter().any(|x| !x.is_finite()) || s.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidTable("non-finite sample".into()));
        }
        if t[0].abs() > TIME_CLAMP_TOL {
            return Err(Error::InvalidTable(format!("t must start at 0, got {}", t[0])));
        }
        for k in 1..t.len() {
            if t[k] <= t[k - 1] {
                return Err(Error::InvalidTable("t must be strictly increasing".into()));
            }
            if s[k] < s[k - 1] {
                return Err(Error::InvalidTable("s must be nondecreasing".into()));
            }
        }
        if s[0].abs() > TIME_CLAMP_TOL || (s[s.len() - 1] - 1.0).abs() > TIME_CLAMP_TOL {
            return Err(Error::InvalidTable(
                "s must run from 0 to 1 within 1e-9".into(),
            ));
        }

        let n = t.len();
        let mut secant = vec![0.0; n - 1];
        for k in 0..n - 1 {
            secant[k] = (s[k + 1] - s[k]) / (t[k + 1] - t[k]);
        }
        let mut slope = vec![0.0; n];
        if n == 2 {
            slope[0] = secant[0];
            slope[1] = secant[0];
        } else {
            slope[0] = endpoint_slope(t[1] - t[0], t[2] - t[1], secant[0], secant[1]);
            slope[n - 1] = endpoint_slope(
                t[n - 1] - t[n - 2],
                t[n - 2] - t[n - 3],
                secant[n - 2],
                secant[n - 3],
            );
        }
        for k in 1..n - 1 {
            slope[k] = if secant[k - 1] * secant[k] <= 0.0 {
                0.0
            } else {
                0.5 * (secant[k - 1] + secant[k])
            };
        }
        for k in 0..n - 1 {
            if secant[k] == 0.0 {
                slope[k] = 0.0;
                slope[k + 1] = 0.0;
            } else {
                let a = slope[k] / secant[k];
                let b = slope[k + 1] / secant[k];
                let h = (a * a + b * b).sqrt();
                if h > 3.0 {
                    let scale = 3.0 / h;
                    slope[k] = scale * a * secant[k];
                    slope[k + 1] = scale * b * secant[k];
                }
            }
        }
        Ok(Self { t, s, slope })
    }

    fn segment(&self, t: f64) -> usize {
        match self.t.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
            Ok(k) => k.min(self.t.len() - 2),
            Err(k) => k.saturating_sub(1).min(self.t.len() - 2),
        }
    }

    fn value(&self, t: f64) -> f64 {
        let k = self.segment(t);
        let h = self.t[k + 1] - self.t[k];
        let x = (t - self.t[k]) / h;
        let (h00, h10, h01, h11) = hermite_basis(x);
        h00 * self.s[k] + h10 * h * self.slope[k] + h01 * self.s[k + 1] + h11 * h * self.slope[k + 1]
    }

    fn derivative(&self, t: f64) -> f64 {
        let k = self.segment(t);
        let h = self.t[k + 1] - self.t[k];
        let x = (t - self.t[k]) / h;
        let (d00, d10, d01, d11) = hermite_basis_deriv(x);
        (d00 * self.s[k] + d01 * self.s[k + 1]) / h + d10 * self.slope[k] + d11 * self.slope[k + 1]
    }

    /// t with s(t) = target. Node values are snapped exactly (so plateau
    /// edges invert cleanly); interior targets are bisected within their
    /// single strictly-monotone segment.
    fn invert(&self, target: f64) -> f64 {
        let n = self.t.len();
        let idx = self.s.partition_point(|&v| v < target);
        if idx == 0 {
            return self.t[0];
        }
        if idx >= n || self.s[idx] == target {
            return self.t[idx.min(n - 1)];
        }
        // s[idx-1] < target < s[idx]
        let (mut lo, mut hi) = (self.t[idx - 1], self.t[idx]);
        for _ in 0..128 {
            let mid = 0.5 * (lo + hi);
            if self.value(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-14 * self.t[n - 1].max(1.0) {
                break;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Second-order one-sided slope estimate with the usual monotone clamps.
fn endpoint_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if m * d0 <= 0.0 {
        0.0
    } else if d0 * d1 <= 0.0 && m.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        m
    }
}

fn hermite_basis(x: f64) -> (f64, f64, f64, f64) {
    let x2 = x * x;
    let x3 = x2 * x;
    (
        2.0 * x3 - 3.0 * x2 + 1.0,
        x3 - 2.0 * x2 + x,
        -2.0 * x3 + 3.0 * x2,
        x3 - x2,
    )
}

fn hermite_basis_deriv(x: f64) -> (f64, f64, f64, f64) {
    let x2 = x * x;
    (
        6.0 * x2 - 6.0 * x,
        3.0 * x2 - 4.0 * x + 1.0,
        -6.0 * x2 + 6.0 * x,
        3.0 * x2 - 2.0 * x,
    )
}

/// Writes the schedule dump CSV (`t,s,ds_dt`) with `samples` rows covering
/// [0, T] uniformly. Values are printed with 12 significant digits.
pub fn write_schedule_csv<W: Write>(
    schedule: &Schedule,
    samples: usize,
    out: &mut W,
) -> io::Result<()> {
    writeln!(out, "t,s,ds_dt")?;
    let n = samples.max(2);
    let total = schedule.total_time();
    for i in 0..n {
        let t = total * i as f64 / (n - 1) as f64;
        let s = schedule.s_clamped(t);
        let v = schedule.ds_dt_clamped(t);
        writeln!(out, "{},{},{}", fmt12(t), fmt12(s), fmt12(v))?;
    }
    Ok(())
}

/// 12-significant-digit formatting used by every CSV the crate emits.
pub fn fmt12(x: f64) -> String {
    format!("{x:.11e}")
}
