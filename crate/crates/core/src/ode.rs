//! Direct numerical integration of the two-level Schrödinger equation.
//!
//! The integrator is a classical fixed-order RK4. Steps are sized so the
//! phase advanced per step, (Δ_λ + |θ̇|)·h, stays at or below a target
//! (0.01 by default); the dynamics are smooth and bounded, so no adaptive
//! machinery is needed and runs stay bit-deterministic. The identity part of
//! the Hamiltonian contributes only a global phase and is dropped from the
//! integrated generator, which keeps the per-step norm error far below the
//! 1e-9 unitarity budget even for runs of ~10^4 natural time units.

use std::io::{self, Write};

use num_complex::Complex64;
use serde::Serialize;

use crate::bounds::theorem1_bound;
use crate::error::{Error, Result};
use crate::geometry::{dtheta_ds_raw, gap_raw, QubitState, TargetFraction};
use crate::schedule::{fmt12, Schedule};

/// Norm drift beyond this is an integration failure.
const DRIFT_FAIL_TOL: f64 = 1e-6;

/// λ below this floor is rejected; the run time stops being desk-scale.
pub const LAMBDA_FLOOR: f64 = 1e-8;

/// Step-size policy.
#[derive(Debug, Clone, Copy)]
pub enum StepControl {
    /// Fixed step h > 0 (the final step is shortened to land on T).
    FixedStep(f64),
    /// Step chosen so (Δ_λ + |θ̇|)·h stays at or below the given phase,
    /// which must lie in (0, 0.1].
    TargetPhase(f64),
}

/// Integration options.
#[derive(Debug, Clone, Copy)]
pub struct IntegratorConfig {
    pub step_control: StepControl,
    /// Renormalize after every step (drift is still recorded first).
    pub renormalize: bool,
    /// Number of uniformly spaced trajectory samples to keep (0 = none).
    pub sample_count: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            step_control: StepControl::TargetPhase(0.01),
            renormalize: true,
            sample_count: 0,
        }
    }
}

impl IntegratorConfig {
    fn validate(&self) -> Result<()> {
        match self.step_control {
            StepControl::FixedStep(h) => {
                if !h.is_finite() || h <= 0.0 {
                    return Err(Error::InvalidTimeStep(h));
                }
            }
            StepControl::TargetPhase(q) => {
                if !q.is_finite() || q <= 0.0 || q > 0.1 {
                    return Err(Error::InvalidArgument(format!(
                        "target phase per step must lie in (0, 0.1], got {q}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// One stored trajectory point: time, schedule value and fidelity with the
/// instantaneous ground state of the frame Hamiltonian.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TrajectorySample {
    pub t: f64,
    pub s: f64,
    pub ground_fidelity: f64,
}

/// Outcome of a run.
#[derive(Debug, Clone, Serialize)]
pub struct SimResult {
    pub final_state: QubitState,
    pub success_probability: f64,
    pub error_amplitude: f64,
    /// Largest |norm - 1| observed before renormalization.
    pub norm_drift: f64,
    pub steps: u64,
    pub trajectory: Vec<TrajectorySample>,
}

impl SimResult {
    fn from_probability(
        final_state: QubitState,
        p: f64,
        norm_drift: f64,
        steps: u64,
        trajectory: Vec<TrajectorySample>,
    ) -> Self {
        let p = p.clamp(0.0, 1.0);
        Self {
            final_state,
            success_probability: p,
            error_amplitude: (1.0 - p).sqrt(),
            norm_drift,
            steps,
            trajectory,
        }
    }
}

#[derive(Clone, Copy)]
struct State2(Complex64, Complex64);

impl State2 {
    #[inline]
    fn axpy(&self, h: f64, d: &State2) -> State2 {
        State2(self.0 + h * d.0, self.1 + h * d.1)
    }

    #[inline]
    fn norm_sq(&self) -> f64 {
        self.0.norm_sqr() + self.1.norm_sqr()
    }
}

/// dψ/dt = -i H ψ for the traceless H = -(1/2) v·σ.
#[inline]
fn deriv(v: [f64; 3], psi: &State2) -> State2 {
    let half_i = Complex64::new(0.0, 0.5);
    let off = Complex64::new(v[0], -v[1]);
    State2(
        half_i * (v[2] * psi.0 + off * psi.1),
        half_i * (off.conj() * psi.0 - v[2] * psi.1),
    )
}

#[inline]
fn fidelity_with_axis(psi: &State2, axis: [f64; 3]) -> f64 {
    let cross = psi.0.conj() * psi.1;
    let r = [
        2.0 * cross.re,
        2.0 * cross.im,
        psi.0.norm_sqr() - psi.1.norm_sqr(),
    ];
    0.5 * (1.0 + r[0] * axis[0] + r[1] * axis[1] + r[2] * axis[2])
}

/// Generic driver: `field(t)` is the traceless Pauli vector of the frame
/// Hamiltonian, whose norm is also the precession rate used for phase-based
/// step control.
fn integrate<F>(
    schedule: &Schedule,
    config: &IntegratorConfig,
    initial: State2,
    field: F,
) -> Result<(State2, f64, u64, Vec<TrajectorySample>)>
where
    F: Fn(f64) -> [f64; 3],
{
    config.validate()?;
    let total = schedule.total_time();
    let mut psi = initial;
    let mut t = 0.0_f64;
    let mut drift_max = 0.0_f64;
    let mut steps = 0_u64;

    let mut trajectory = Vec::new();
    let mut next_sample = 0usize;
    let mut record = |t: f64, psi: &State2, next_sample: &mut usize| {
        let targets = config.sample_count;
        if targets == 0 || *next_sample >= targets {
            return;
        }
        let due = |k: usize| total * k as f64 / (targets - 1).max(1) as f64 - 1e-12;
        if t < due(*next_sample) {
            return;
        }
        let s = schedule.s_clamped(t);
        let v = field(t);
        let m = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let axis = if m > 0.0 {
            [v[0] / m, v[1] / m, v[2] / m]
        } else {
            [0.0, 0.0, 1.0]
        };
        trajectory.push(TrajectorySample {
            t,
            s,
            ground_fidelity: fidelity_with_axis(psi, axis),
        });
        // Skip every target this step overran; one state, one row.
        while *next_sample < targets && t >= due(*next_sample) {
            *next_sample += 1;
        }
    };
    record(0.0, &psi, &mut next_sample);

    while t < total {
        let h = match config.step_control {
            StepControl::FixedStep(h) => h.min(total - t),
            StepControl::TargetPhase(q) => {
                let v = field(t);
                let rate = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                (q / rate.max(1e-300)).min(total - t)
            }
        };
        if h <= total * 1e-15 {
            return Err(Error::StepUnderflow { t, h });
        }

        let k1 = deriv(field(t), &psi);
        let k2 = deriv(field(t + 0.5 * h), &psi.axpy(0.5 * h, &k1));
        let k3 = deriv(field(t + 0.5 * h), &psi.axpy(0.5 * h, &k2));
        let k4 = deriv(field((t + h).min(total)), &psi.axpy(h, &k3));
        psi = State2(
            psi.0 + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
            psi.1 + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
        );
        t += h;
        steps += 1;

        let norm = psi.norm_sq().sqrt();
        let drift = (norm - 1.0).abs();
        drift_max = drift_max.max(drift);
        if drift > DRIFT_FAIL_TOL {
            return Err(Error::Integration(format!(
                "norm drift {drift:e} exceeded {DRIFT_FAIL_TOL:e} at t = {t} (step {steps})"
            )));
        }
        if config.renormalize {
            psi = State2(psi.0 / norm, psi.1 / norm);
        }
        record(t, &psi, &mut next_sample);
    }

    Ok((psi, drift_max, steps, trajectory))
}

fn check_lambda_floor(lambda: TargetFraction) -> Result<f64> {
    let l = lambda.get();
    if l < LAMBDA_FLOOR {
        return Err(Error::InvalidArgument(format!(
            "lambda = {l} is below the {LAMBDA_FLOOR:e} simulation floor"
        )));
    }
    Ok(l)
}

/// Integrates i d|ψ⟩/dt = H(s(t))|ψ⟩ from |B⟩ over [0, T] and reports
/// P(λ) = |⟨E|ψ(T)⟩|².
pub fn evolve(
    schedule: &Schedule,
    lambda: TargetFraction,
    config: &IntegratorConfig,
) -> Result<SimResult> {
    let l = check_lambda_floor(lambda)?;
    let begin = crate::geometry::begin_state(lambda);
    let initial = State2(begin.amp0, begin.amp1);
    let sqrt_l = l.sqrt();
    let sqrt_1ml = (1.0 - l).sqrt();
    let field = |t: f64| -> [f64; 3] {
        let s = schedule.s_clamped(t);
        [sqrt_l, 0.0, sqrt_1ml * (1.0 - 2.0 * s)]
    };
    let (psi, drift, steps, traj) = integrate(schedule, config, initial, field)?;
    let end = crate::geometry::end_state(lambda);
    let final_state = QubitState::new_unchecked(psi.0, psi.1);
    let p = end.fidelity(&final_state.normalized());
    Ok(SimResult::from_probability(final_state, p, drift, steps, traj))
}

/// Integrates the rotating-frame equation with H_φ = I/2 - (Δ_λ/2)Z - (θ̇/2)Y
/// from |0⟩ and reports P = |⟨0|φ(T)⟩|². Must agree with [`evolve`] to
/// integration tolerance; trajectory fidelities are taken against n̂_φ.
pub fn evolve_phi_frame(
    schedule: &Schedule,
    lambda: TargetFraction,
    config: &IntegratorConfig,
) -> Result<SimResult> {
    let l = check_lambda_floor(lambda)?;
    let initial = State2(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    let field = |t: f64| -> [f64; 3] {
        let s = schedule.s_clamped(t);
        let theta_dot = dtheta_ds_raw(l, s) * schedule.ds_dt_clamped(t);
        [0.0, theta_dot, gap_raw(l, s)]
    };
    let (psi, drift, steps, traj) = integrate(schedule, config, initial, field)?;
    let final_state = QubitState::new_unchecked(psi.0, psi.1);
    let p = final_state.normalized().amp0.norm_sqr();
    Ok(SimResult::from_probability(final_state, p, drift, steps, traj))
}

/// Runs [`evolve`] over a λ grid; order is preserved and failures carry the
/// offending index.
pub fn sweep_lambda(
    schedule: &Schedule,
    lambda_grid: &[f64],
    config: &IntegratorConfig,
) -> Result<Vec<(f64, SimResult)>> {
    let mut out = Vec::with_capacity(lambda_grid.len());
    for (index, &l) in lambda_grid.iter().enumerate() {
        let run = TargetFraction::new(l)
            .and_then(|tf| evolve(schedule, tf, config))
            .map_err(|source| Error::SweepPoint {
                index,
                lambda: l,
                source: Box::new(source),
            })?;
        out.push((l, run));
    }
    Ok(out)
}

/// One row of the sweep CSV.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub lambda: f64,
    pub success_probability: f64,
    pub error_amplitude: f64,
    pub bound_thm1: f64,
}

/// Attaches the general bound to each sweep point.
pub fn sweep_rows(schedule: &Schedule, points: &[(f64, SimResult)]) -> Result<Vec<SweepRow>> {
    points
        .iter()
        .map(|(l, sim)| {
            let bound = theorem1_bound(schedule, TargetFraction::new(*l)?)?;
            Ok(SweepRow {
                lambda: *l,
                success_probability: sim.success_probability,
                error_amplitude: sim.error_amplitude,
                bound_thm1: bound.delta_bound,
            })
        })
        .collect()
}

/// Sweep CSV: header `lambda,P,delta,bound_thm1`, 12 significant digits.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: &mut W) -> io::Result<()> {
    writeln!(out, "lambda,P,delta,bound_thm1")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{}",
            fmt12(r.lambda),
            fmt12(r.success_probability),
            fmt12(r.error_amplitude),
            fmt12(r.bound_thm1)
        )?;
    }
    Ok(())
}

/// CSV trajectory dump: header `t,s,fidelity`.
pub fn write_trajectory_csv<W: Write>(samples: &[TrajectorySample], out: &mut W) -> io::Result<()> {
    writeln!(out, "t,s,fidelity")?;
    for p in samples {
        writeln!(
            out,
            "{},{},{}",
            fmt12(p.t),
            fmt12(p.s),
            fmt12(p.ground_fidelity)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::theorem2_exact;
    use crate::schedule::{ScheduleKind, ScheduleParams};

    fn lam(x: f64) -> TargetFraction {
        TargetFraction::new(x).unwrap()
    }

    fn sched(kind: ScheduleKind, eps: f64, w: f64) -> Schedule {
        Schedule::family(ScheduleParams::new(kind, eps, w).unwrap()).unwrap()
    }

    #[test]
    fn lambda_one_always_succeeds() {
        for kind in [ScheduleKind::Constant, ScheduleKind::Fast, ScheduleKind::Standard] {
            let sch = sched(kind, 0.05, 0.3);
            let r = evolve(&sch, lam(1.0), &IntegratorConfig::default()).unwrap();
            assert!((r.success_probability - 1.0).abs() < 1e-10, "{kind:?}");
        }
    }

    #[test]
    fn fast_schedule_matches_exact_error() {
        // Includes the extreme corners of the (eps, w) envelope; the dense
        // grid lives in the acceptance suite.
        for &(eps, w) in &[(0.05, 0.25), (0.01, 0.01), (0.2, 0.01), (0.2, 0.9)] {
            let sch = sched(ScheduleKind::Fast, eps, w);
            let r = evolve(&sch, lam(w), &IntegratorConfig::default()).unwrap();
            let exact = theorem2_exact(eps, w).unwrap();
            assert!(
                (r.error_amplitude - exact).abs() < 1e-6,
                "eps={eps} w={w}: sim {} vs exact {exact}",
                r.error_amplitude
            );
        }
    }

    #[test]
    fn standard_schedule_is_fixed_point_spot_check() {
        let sch = sched(ScheduleKind::Standard, 0.1, 0.01);
        for &l in &[0.01, 0.05, 0.3, 0.7, 1.0] {
            let r = evolve(&sch, lam(l), &IntegratorConfig::default()).unwrap();
            assert!(
                r.error_amplitude <= 0.2 + 1e-6,
                "lambda={l}: delta={}",
                r.error_amplitude
            );
        }
    }

    #[test]
    fn constant_schedule_fails_at_small_lambda() {
        let sch = sched(ScheduleKind::Constant, 0.01, 0.1);
        let r = evolve(&sch, lam(0.005), &IntegratorConfig::default()).unwrap();
        assert!(r.error_amplitude >= 0.5, "delta = {}", r.error_amplitude);
    }

    #[test]
    fn vanishing_lambda_limit() {
        // P(0) = 0 is a statement about the degenerate no-target case; the
        // documented stand-in is the lambda = 1e-6 limit, where essentially
        // no weight reaches the target at fixed run time.
        let sch = sched(ScheduleKind::Standard, 0.1, 0.01);
        let r = evolve(&sch, lam(1e-6), &IntegratorConfig::default()).unwrap();
        assert!(
            r.success_probability < 0.01,
            "P = {}",
            r.success_probability
        );
    }

    #[test]
    fn unitarity_without_renormalization() {
        let sch = sched(ScheduleKind::Standard, 0.05, 0.1);
        let config = IntegratorConfig {
            renormalize: false,
            ..Default::default()
        };
        for &l in &[0.1, 0.5, 1.0] {
            let r = evolve(&sch, lam(l), &config).unwrap();
            assert!(r.norm_drift <= 1e-9, "lambda={l}: drift={}", r.norm_drift);
        }
    }

    #[test]
    fn rk4_convergence_order() {
        let sch = sched(ScheduleKind::Standard, 0.1, 0.25);
        let l = lam(0.4);
        let run = |h: f64| {
            evolve(
                &sch,
                l,
                &IntegratorConfig {
                    step_control: StepControl::FixedStep(h),
                    renormalize: true,
                    sample_count: 0,
                },
            )
            .unwrap()
            .success_probability
        };
        let reference = run(0.002);
        let err_h = (run(0.2) - reference).abs();
        let err_h2 = (run(0.1) - reference).abs();
        assert!(
            err_h / err_h2 >= 8.0,
            "order check failed: {err_h:e} / {err_h2:e}"
        );
    }

    #[test]
    fn phi_frame_agrees_with_lab_frame() {
        for (kind, eps, w, l) in [
            (ScheduleKind::Standard, 0.1, 0.1, 0.35),
            (ScheduleKind::Fast, 0.05, 0.2, 0.2),
            (ScheduleKind::Constant, 0.05, 0.1, 0.6),
        ] {
            let sch = sched(kind, eps, w);
            let lab = evolve(&sch, lam(l), &IntegratorConfig::default()).unwrap();
            let phi = evolve_phi_frame(&sch, lam(l), &IntegratorConfig::default()).unwrap();
            assert!(
                (lab.success_probability - phi.success_probability).abs() <= 1e-6,
                "{kind:?}: lab={} phi={}",
                lab.success_probability,
                phi.success_probability
            );
        }
    }

    #[test]
    fn fast_at_floor_keeps_constant_angle_to_effective_axis() {
        // In the rotating frame the effective axis is fixed for the fast
        // schedule at lambda = w, so the ground-state fidelity must be
        // constant along the whole trajectory.
        let (eps, w) = (0.05, 0.25);
        let sch = sched(ScheduleKind::Fast, eps, w);
        let config = IntegratorConfig {
            sample_count: 200,
            ..Default::default()
        };
        let r = evolve_phi_frame(&sch, lam(w), &config).unwrap();
        assert!(r.trajectory.len() >= 150);
        let fids: Vec<f64> = r.trajectory.iter().map(|p| p.ground_fidelity).collect();
        let (lo, hi) = fids
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &f| {
                (a.min(f), b.max(f))
            });
        assert!(hi - lo < 1e-9, "fidelity varied by {}", hi - lo);
    }

    #[test]
    fn frozen_schedule_segment_precesses_in_place() {
        // Plateau between t = 0.4 and t = 0.6: the Hamiltonian is constant
        // there, so the ground-state fidelity cannot change.
        let tab =
            Schedule::from_samples(&[(0.0, 0.0), (0.4, 0.5), (0.6, 0.5), (1.0, 1.0)]).unwrap();
        let config = IntegratorConfig {
            sample_count: 101,
            ..Default::default()
        };
        let r = evolve(&tab, lam(0.5), &config).unwrap();
        let inside: Vec<f64> = r
            .trajectory
            .iter()
            .filter(|p| p.t >= 0.42 && p.t <= 0.58)
            .map(|p| p.ground_fidelity)
            .collect();
        assert!(inside.len() >= 10);
        let (lo, hi) = inside
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &f| {
                (a.min(f), b.max(f))
            });
        assert!(hi - lo < 1e-9, "fidelity varied by {}", hi - lo);
    }

    #[test]
    fn sweep_preserves_order_and_indexes_failures() {
        let sch = sched(ScheduleKind::Standard, 0.1, 0.2);
        let grid = [0.2, 0.5, 1.0];
        let points = sweep_lambda(&sch, &grid, &IntegratorConfig::default()).unwrap();
        assert_eq!(points.len(), 3);
        for (g, (l, _)) in grid.iter().zip(points.iter()) {
            assert_eq!(g, l);
        }
        // single-point grid equals a direct evolve
        let single = sweep_lambda(&sch, &[0.5], &IntegratorConfig::default()).unwrap();
        let direct = evolve(&sch, lam(0.5), &IntegratorConfig::default()).unwrap();
        assert_eq!(
            single[0].1.success_probability,
            direct.success_probability
        );

        let err = sweep_lambda(&sch, &[0.5, -1.0], &IntegratorConfig::default()).unwrap_err();
        match err {
            Error::SweepPoint { index, .. } => assert_eq!(index, 1),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn sweep_csv_format() {
        let sch = sched(ScheduleKind::Standard, 0.1, 0.2);
        let points = sweep_lambda(&sch, &[0.3, 0.9], &IntegratorConfig::default()).unwrap();
        let rows = sweep_rows(&sch, &points).unwrap();
        let mut buf = Vec::new();
        write_sweep_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "lambda,P,delta,bound_thm1");
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(first.len(), 4);
        assert!((first[0].parse::<f64>().unwrap() - 0.3).abs() < 1e-12);
    }

    #[test]
    fn config_and_domain_errors() {
        let sch = sched(ScheduleKind::Standard, 0.1, 0.2);
        let bad = IntegratorConfig {
            step_control: StepControl::TargetPhase(0.5),
            ..Default::default()
        };
        assert!(evolve(&sch, lam(0.5), &bad).is_err());
        let bad = IntegratorConfig {
            step_control: StepControl::FixedStep(0.0),
            ..Default::default()
        };
        assert!(evolve(&sch, lam(0.5), &bad).is_err());
        assert!(evolve(&sch, lam(1e-9), &IntegratorConfig::default()).is_err());
    }
}
