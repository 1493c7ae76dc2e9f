//! Gate-model (Trotterized) simulation.
//!
//! One time step of width δt at schedule value s is the product of partial
//! reflections S_B(α)·S_E(β) with α = -(1-s)δt, β = sδt, where
//! S_B(α) = I - (1-e^{-iα})|B⟩⟨B| and S_E(β) = I - (1-e^{+iβ})|E⟩⟨E|.
//! The same product is generated exactly by one step of a continuous
//! effective Hamiltonian H_t = I/2 - (γ/2) n̂_t·σ; γ and n̂_t are computed
//! here in closed form together with the small frame angles η₁, η₂ used to
//! rotate n̂_t onto n̂. Their magnitude claims (η ≤ δt/4, Δ_λ/γ - 1 ≤ δt²/50
//! for δt ≤ 2π) back the Trotterized error bound and are exposed for
//! numerical scanning.

use std::io::{self, Write};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    begin_state, end_state, gap_raw, theta_raw, BlochVector, Hamiltonian2, QubitState,
    TargetFraction,
};
use crate::ode::SimResult;
use crate::schedule::{fmt12, Schedule};

/// Dense 2×2 unitary, row major.
#[derive(Debug, Clone, Copy)]
pub struct Unitary2 {
    pub m: [[Complex64; 2]; 2],
}

impl Unitary2 {
    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self {
            m: [[one, zero], [zero, one]],
        }
    }

    /// I - (1 - phase)|v⟩⟨v| for a normalized |v⟩.
    fn partial_reflection(v: &QubitState, phase: Complex64) -> Self {
        let mut u = Self::identity();
        let f = Complex64::new(1.0, 0.0) - phase;
        let amps = [v.amp0, v.amp1];
        for (r, ar) in amps.iter().enumerate() {
            for (c, ac) in amps.iter().enumerate() {
                u.m[r][c] -= f * *ar * ac.conj();
            }
        }
        u
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self {
            m: [[Complex64::new(0.0, 0.0); 2]; 2],
        };
        for r in 0..2 {
            for c in 0..2 {
                out.m[r][c] = self.m[r][0] * other.m[0][c] + self.m[r][1] * other.m[1][c];
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        Self {
            m: [
                [self.m[0][0].conj(), self.m[1][0].conj()],
                [self.m[0][1].conj(), self.m[1][1].conj()],
            ],
        }
    }

    pub fn apply(&self, psi: &QubitState) -> QubitState {
        QubitState::new_unchecked(
            self.m[0][0] * psi.amp0 + self.m[0][1] * psi.amp1,
            self.m[1][0] * psi.amp0 + self.m[1][1] * psi.amp1,
        )
    }

    /// max |(U†U - I)_{ij}|.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.adjoint().mul(self);
        let mut worst = 0.0_f64;
        for r in 0..2 {
            for c in 0..2 {
                let expect = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((p.m[r][c] - expect).norm());
            }
        }
        worst
    }

    /// Largest entry-wise distance to `other` after aligning `other` by the
    /// given global phase: max |self - e^{i·phase}·other|.
    pub fn distance_up_to_phase(&self, other: &Self, phase: f64) -> f64 {
        let ph = Complex64::from_polar(1.0, phase);
        let mut worst = 0.0_f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.m[r][c] - ph * other.m[r][c]).norm());
            }
        }
        worst
    }
}

/// Exact matrix exponential exp(-i H t) of a two-level Hamiltonian.
pub fn exp_minus_i_h_t(h: &Hamiltonian2, t: f64) -> Unitary2 {
    let g = h.gap();
    let phase = Complex64::from_polar(1.0, -h.identity_coeff * t);
    let half = g * t / 2.0;
    let (sin, cos) = half.sin_cos();
    let axis = if g > 0.0 {
        [
            h.pauli_coeff[0] / g,
            h.pauli_coeff[1] / g,
            h.pauli_coeff[2] / g,
        ]
    } else {
        [0.0, 0.0, 0.0]
    };
    // exp(+i half n̂·σ) = cos I + i sin n̂·σ
    let is = Complex64::new(0.0, sin);
    Unitary2 {
        m: [
            [
                phase * (Complex64::new(cos, 0.0) + is * axis[2]),
                phase * is * Complex64::new(axis[0], -axis[1]),
            ],
            [
                phase * is * Complex64::new(axis[0], axis[1]),
                phase * (Complex64::new(cos, 0.0) - is * axis[2]),
            ],
        ],
    }
}

/// Rotation about the begin state: S_B(α) = I - (1-e^{-iα})|B⟩⟨B|.
pub fn partial_reflection_begin(alpha: f64, lambda: TargetFraction) -> Unitary2 {
    Unitary2::partial_reflection(&begin_state(lambda), Complex64::from_polar(1.0, -alpha))
}

/// Rotation about the end state: S_E(β) = I - (1-e^{+iβ})|E⟩⟨E|.
pub fn partial_reflection_end(beta: f64, lambda: TargetFraction) -> Unitary2 {
    Unitary2::partial_reflection(&end_state(lambda), Complex64::from_polar(1.0, beta))
}

/// What to do with the leftover fraction of time when T/δt is not integral.
/// `DropFraction` follows the l = ⌊T/δt⌋ definition exactly; `AppendFinal`
/// adds one extra step evaluated at s = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EndpointRule {
    #[default]
    DropFraction,
    AppendFinal,
}

/// Ordered list of partial-reflection angle pairs for one run.
#[derive(Debug, Clone, Serialize)]
pub struct GateSequence {
    /// (α_j, β_j) in radians.
    pub pairs: Vec<(f64, f64)>,
    pub dt: f64,
}

impl GateSequence {
    /// Oracle queries consumed by the sequence: L = 2·len + 1.
    pub fn query_count(&self) -> u64 {
        2 * self.pairs.len() as u64 + 1
    }

    /// CSV export `j,alpha,beta` (radians, 12 significant digits).
    pub fn write_csv<W: Write>(&self, out: &mut W) -> io::Result<()> {
        writeln!(out, "j,alpha,beta")?;
        for (j, (alpha, beta)) in self.pairs.iter().enumerate() {
            writeln!(out, "{},{},{}", j, fmt12(*alpha), fmt12(*beta))?;
        }
        Ok(())
    }
}

/// Angle pairs (α_j, β_j) = (-(1-s_j)δt, s_j·δt) with s_j = s(j·δt) for
/// j = 0..⌊T/δt⌋-1.
pub fn angle_sequence(schedule: &Schedule, dt: f64, rule: EndpointRule) -> Result<GateSequence> {
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::InvalidTimeStep(dt));
    }
    let total = schedule.total_time();
    let l = (total / dt).floor() as usize;
    if l == 0 && rule == EndpointRule::DropFraction {
        return Err(Error::DegenerateSequence { dt, total });
    }
    let mut pairs = Vec::with_capacity(l + 1);
    for j in 0..l {
        let s = schedule.s_of_t(j as f64 * dt)?;
        pairs.push((-(1.0 - s) * dt, s * dt));
    }
    if rule == EndpointRule::AppendFinal {
        pairs.push((0.0, dt));
    }
    Ok(GateSequence { pairs, dt })
}

/// Applies the sequence of products S_B(α_j)·S_E(β_j) to |B⟩ and reports
/// P = |⟨E|ψ_l⟩|².
pub fn apply_sequence(sequence: &GateSequence, lambda: TargetFraction) -> Result<SimResult> {
    let mut psi = begin_state(lambda);
    for &(alpha, beta) in &sequence.pairs {
        let step = partial_reflection_begin(alpha, lambda)
            .mul(&partial_reflection_end(beta, lambda));
        psi = step.apply(&psi);
    }
    let norm = psi.norm_sq().sqrt();
    let drift = (norm - 1.0).abs();
    let p = end_state(lambda).fidelity(&psi.normalized());
    let p = p.clamp(0.0, 1.0);
    Ok(SimResult {
        final_state: psi,
        success_probability: p,
        error_amplitude: (1.0 - p).sqrt(),
        norm_drift: drift,
        steps: sequence.pairs.len() as u64,
        trajectory: Vec::new(),
    })
}

/// Builds the angle sequence for (schedule, δt) and runs it.
pub fn simulate_gate(
    schedule: &Schedule,
    lambda: TargetFraction,
    dt: f64,
    rule: EndpointRule,
) -> Result<(SimResult, GateSequence)> {
    let sequence = angle_sequence(schedule, dt, rule)?;
    let result = apply_sequence(&sequence, lambda)?;
    Ok((result, sequence))
}

/// Effective step Hamiltonian data at (s, λ, δt) plus the frame angles.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TrotterFrameData {
    pub gamma: f64,
    pub n_t: BlochVector,
    pub eta1: f64,
    pub eta2: f64,
}

fn check_s(s: f64) -> Result<f64> {
    if !s.is_finite() || !(0.0..=1.0).contains(&s) {
        return Err(Error::InvalidS(s));
    }
    Ok(s)
}

/// Solves exp(-i(1-s)H₀δt)·exp(-i s H₁δt) = exp(-i H_t δt) for
/// H_t = I/2 - (γ/2) n̂_t·σ, returning (γ, n̂_t). When sin(γδt/2) is below
/// 1e-12 the axis is a removable singularity and the δt → 0 limit n̂(s) is
/// substituted.
pub fn effective_trotter_hamiltonian(
    s: f64,
    lambda: TargetFraction,
    dt: f64,
) -> Result<(f64, BlochVector)> {
    let s = check_s(s)?;
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::InvalidTimeStep(dt));
    }
    let l = lambda.get();
    let a = (1.0 - s) * dt / 2.0;
    let b = s * dt / 2.0;
    let cos_half = (a - b).cos() - 2.0 * l * a.sin() * b.sin();
    // The Pauli part of the product, sin(γδt/2)·n̂_t, componentwise. Its
    // norm is sin(γδt/2); recovering the half angle from atan2 of the pair
    // stays well conditioned where arccos alone would lose digits.
    let raw = BlochVector::new(
        l.sqrt() * (a + b).sin(),
        -2.0 * (l * (1.0 - l)).sqrt() * a.sin() * b.sin(),
        (1.0 - l).sqrt() * (a - b).sin(),
    );
    let sin_half = raw.norm();
    let gamma = 2.0 * sin_half.atan2(cos_half) / dt;
    let n_t = if sin_half < 1e-13 {
        // Removable singularity: fall back to the δt → 0 limit direction.
        let th = theta_raw(l, s);
        BlochVector::new(th.sin(), 0.0, th.cos())
    } else {
        BlochVector::new(raw.x / sin_half, raw.y / sin_half, raw.z / sin_half)
    };
    Ok((gamma, n_t))
}

/// H_t assembled as a [`Hamiltonian2`].
pub fn trotter_hamiltonian(s: f64, lambda: TargetFraction, dt: f64) -> Result<Hamiltonian2> {
    let (gamma, n_t) = effective_trotter_hamiltonian(s, lambda, dt)?;
    Ok(Hamiltonian2::new(
        0.5,
        [gamma * n_t.x, gamma * n_t.y, gamma * n_t.z],
    ))
}

/// Frame angles (η₁, η₂) that rotate n̂_t onto n̂. η₁ uses the limit
/// convention 0 where n̂_t·ŷ vanishes; η₂ = arccos(n̂_t·n̂).
pub fn eta_angles(s: f64, lambda: TargetFraction, dt: f64) -> Result<(f64, f64)> {
    let (_, n_t) = effective_trotter_hamiltonian(s, lambda, dt)?;
    let th = theta_raw(lambda.get(), s);
    let (sin_t, cos_t) = th.sin_cos();
    let eta1 = if n_t.y == 0.0 {
        0.0
    } else {
        ((n_t.x * cos_t - n_t.z * sin_t) / n_t.y).atan()
    };
    let eta2 = (n_t.x * sin_t + n_t.z * cos_t).clamp(-1.0, 1.0).acos();
    Ok((eta1, eta2))
}

/// (γ, n̂_t, η₁, η₂) in one call.
pub fn trotter_frame_data(s: f64, lambda: TargetFraction, dt: f64) -> Result<TrotterFrameData> {
    let (gamma, n_t) = effective_trotter_hamiltonian(s, lambda, dt)?;
    let (eta1, eta2) = eta_angles(s, lambda, dt)?;
    Ok(TrotterFrameData {
        gamma,
        n_t,
        eta1,
        eta2,
    })
}

/// max_s Δ_λ(s)/γ(s) - 1 over a uniform s grid; the claim under test is
/// that this stays at or below δt²/50 whenever δt ≤ 2π.
pub fn gamma_ratio_claim(lambda: TargetFraction, dt: f64) -> Result<f64> {
    let n = 2001;
    let mut worst = 0.0_f64;
    for i in 0..n {
        let s = i as f64 / (n - 1) as f64;
        let (gamma, _) = effective_trotter_hamiltonian(s, lambda, dt)?;
        if gamma > 0.0 {
            worst = worst.max(gap_raw(lambda.get(), s) / gamma - 1.0);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::hamiltonian;
    use crate::ode::{evolve, IntegratorConfig};
    use crate::schedule::{ScheduleKind, ScheduleParams};

    fn lam(x: f64) -> TargetFraction {
        TargetFraction::new(x).unwrap()
    }

    fn sched(kind: ScheduleKind, eps: f64, w: f64) -> Schedule {
        Schedule::family(ScheduleParams::new(kind, eps, w).unwrap()).unwrap()
    }

    #[test]
    fn partial_reflections_are_unitary() {
        for &alpha in &[0.0, 0.3, -1.2, std::f64::consts::PI, 5.9] {
            for &l in &[0.1, 0.5, 1.0] {
                let u = partial_reflection_begin(alpha, lam(l));
                assert!(u.unitarity_defect() < 1e-12);
                let u = partial_reflection_end(alpha, lam(l));
                assert!(u.unitarity_defect() < 1e-12);
            }
        }
    }

    #[test]
    fn reflection_limits() {
        let l = lam(0.3);
        let u = partial_reflection_begin(0.0, l);
        assert!(u.distance_up_to_phase(&Unitary2::identity(), 0.0) < 1e-15);

        // alpha = pi: eigenvalue -1 on |B>, +1 on the orthogonal state.
        let u = partial_reflection_begin(std::f64::consts::PI, l);
        let b = begin_state(l);
        let out = u.apply(&b);
        assert!((out.inner(&b).re + 1.0).abs() < 1e-12);
        let perp = QubitState::new_unchecked(-b.amp1.conj(), b.amp0.conj());
        let out = u.apply(&perp);
        assert!((out.inner(&perp).re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reflection_exponential_identity() {
        // S_B(alpha) = exp(-i alpha) exp(i alpha H0) and
        // S_E(beta) = exp(+i beta) exp(-i beta H1), with the matrix
        // exponential as the oracle.
        for &(angle, l) in &[(0.7, 0.2), (-1.3, 0.5), (2.4, 0.9)] {
            let tf = lam(l);
            let h0 = hamiltonian(tf, 0.0).unwrap();
            let exp_plus = exp_minus_i_h_t(&h0, -angle); // exp(+i angle H0)
            assert!(
                partial_reflection_begin(angle, tf).distance_up_to_phase(&exp_plus, -angle)
                    < 1e-12,
                "alpha={angle} l={l}"
            );

            let h1 = hamiltonian(tf, 1.0).unwrap();
            let exp_minus = exp_minus_i_h_t(&h1, angle); // exp(-i angle H1)
            assert!(
                partial_reflection_end(angle, tf).distance_up_to_phase(&exp_minus, angle) < 1e-12,
                "beta={angle} l={l}"
            );
        }
    }

    #[test]
    fn angle_sequence_endpoints_and_midpoint() {
        let sch = sched(ScheduleKind::Standard, 0.05, 0.1);
        let dt = sch.total_time() / 10.0;
        let seq = angle_sequence(&sch, dt, EndpointRule::DropFraction).unwrap();
        assert_eq!(seq.pairs.len(), 10);
        // j = 0: s = 0 -> (-dt, 0)
        assert!((seq.pairs[0].0 + dt).abs() < 1e-12);
        assert!(seq.pairs[0].1.abs() < 1e-12);
        // j = 5: s = 1/2 -> (-dt/2, dt/2)
        assert!((seq.pairs[5].0 + dt / 2.0).abs() < 1e-9);
        assert!((seq.pairs[5].1 - dt / 2.0).abs() < 1e-9);

        let seq = angle_sequence(&sch, dt, EndpointRule::AppendFinal).unwrap();
        assert_eq!(seq.pairs.len(), 11);
        let last = *seq.pairs.last().unwrap();
        assert_eq!(last.0, 0.0);
        assert!((last.1 - dt).abs() < 1e-15);

        // degenerate: dt > T with DropFraction
        assert!(angle_sequence(&sch, sch.total_time() * 1.5, EndpointRule::DropFraction).is_err());
        assert!(angle_sequence(&sch, -0.1, EndpointRule::DropFraction).is_err());
    }

    #[test]
    fn standard_angles_match_closed_form() {
        // alpha_j = -dt/2 - (dt/2) sqrt(w/(1-w)) tan((1-2 t_j/T) phi_w).
        let (eps, w) = (0.05, 0.1);
        let sch = sched(ScheduleKind::Standard, eps, w);
        let dt = 0.07;
        let seq = angle_sequence(&sch, dt, EndpointRule::DropFraction).unwrap();
        let phi = crate::schedule::phi_w(w).unwrap();
        let total = sch.total_time();
        for (j, &(alpha, beta)) in seq.pairs.iter().enumerate() {
            let tj = j as f64 * dt;
            let tan = ((1.0 - 2.0 * tj / total) * phi).tan();
            let expect_alpha = -dt / 2.0 - dt / 2.0 * (w / (1.0 - w)).sqrt() * tan;
            let expect_beta = dt / 2.0 - dt / 2.0 * (w / (1.0 - w)).sqrt() * tan;
            assert!((alpha - expect_alpha).abs() < 1e-12, "j={j}");
            assert!((beta - expect_beta).abs() < 1e-12, "j={j}");
        }
    }

    #[test]
    fn gate_run_at_lambda_one_is_exact() {
        let sch = sched(ScheduleKind::Standard, 0.05, 0.2);
        let (r, seq) = simulate_gate(&sch, lam(1.0), 0.11, EndpointRule::DropFraction).unwrap();
        assert!((r.success_probability - 1.0).abs() < 1e-10);
        assert_eq!(seq.query_count(), 2 * seq.pairs.len() as u64 + 1);
    }

    #[test]
    fn gate_respects_trotter_bound_and_converges_to_ode() {
        let (eps, w) = (0.05, 0.1);
        let sch = sched(ScheduleKind::Standard, eps, w);
        let l = lam(0.3);
        let p_ode = evolve(&sch, l, &IntegratorConfig::default())
            .unwrap()
            .success_probability;
        let mut prev_gap = f64::INFINITY;
        for &dt in &[0.2, 0.1, 0.05, 0.025] {
            let (r, seq) = simulate_gate(&sch, l, dt, EndpointRule::DropFraction).unwrap();
            let bound = 3.1 * dt.sqrt() + 2.0 * eps * (1.0 + dt * dt / 25.0);
            assert!(r.error_amplitude <= bound + 1e-6, "dt={dt}");
            let expected_l = (sch.total_time() / dt).floor() as u64;
            assert_eq!(seq.query_count(), 2 * expected_l + 1);
            let gap = (r.success_probability - p_ode).abs();
            assert!(gap < prev_gap, "dt={dt}: {gap} !< {prev_gap}");
            prev_gap = gap;
        }
    }

    #[test]
    fn trotter_hamiltonian_small_dt_limits() {
        let l = lam(0.37);
        let dt = 1e-4;
        for i in 0..=20 {
            let s = i as f64 / 20.0;
            let (gamma, n_t) = effective_trotter_hamiltonian(s, l, dt).unwrap();
            let d = gap_raw(0.37, s);
            assert!((gamma - d).abs() <= 1e-6, "s={s}: gamma={gamma} gap={d}");
            let th = theta_raw(0.37, s);
            let dist = ((n_t.x - th.sin()).powi(2) + n_t.y.powi(2) + (n_t.z - th.cos()).powi(2))
                .sqrt();
            assert!(dist <= 1e-4, "s={s}: |n_t - n| = {dist}");
            assert!((n_t.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn trotter_midpoint_y_component() {
        let (l, dt) = (0.3, 0.5);
        let tf = lam(l);
        let (gamma, n_t) = effective_trotter_hamiltonian(0.5, tf, dt).unwrap();
        let a = 0.25 * dt;
        let expect = -2.0 * (l * (1.0 - l)).sqrt() * a.sin() * a.sin() / (gamma * dt / 2.0).sin();
        assert!((n_t.y - expect).abs() < 1e-12);
        assert!(n_t.y.abs() > 1e-4, "the y tilt should be visible at dt=0.5");
    }

    #[test]
    fn trotter_product_reconstruction() {
        // S_B(-(1-s)dt) S_E(s dt) carries global phase e^{i dt} relative to
        // exp(-i H_t dt); equality must hold to 1e-9 everywhere.
        for &dt in &[0.05, 0.5, 1.7, 4.9, 2.0 * std::f64::consts::PI] {
            for &l in &[0.02, 0.31, 0.77, 1.0] {
                let tf = lam(l);
                for i in 0..=16 {
                    let s = i as f64 / 16.0;
                    let h_t = trotter_hamiltonian(s, tf, dt).unwrap();
                    let direct = exp_minus_i_h_t(&h_t, dt);
                    let product = partial_reflection_begin(-(1.0 - s) * dt, tf)
                        .mul(&partial_reflection_end(s * dt, tf));
                    let dist = product.distance_up_to_phase(&direct, dt);
                    assert!(dist < 1e-9, "dt={dt} l={l} s={s}: dist={dist:e}");
                }
            }
        }
    }

    #[test]
    fn eta_angle_properties() {
        let l = lam(0.3);
        for &dt in &[0.1, 1.0, 2.0 * std::f64::consts::PI] {
            // endpoints: eta2 vanishes, eta1 uses the 0 convention
            let (e1, e2) = eta_angles(0.0, l, dt).unwrap();
            assert_eq!(e1, 0.0);
            assert!(e2.abs() < 1e-9);
            let (_, e2) = eta_angles(1.0, l, dt).unwrap();
            assert!(e2.abs() < 1e-9);

            let mut max1 = 0.0_f64;
            let mut max2 = 0.0_f64;
            for i in 0..=50 {
                let s = i as f64 / 50.0;
                let (e1, e2) = eta_angles(s, l, dt).unwrap();
                let (m1, m2) = eta_angles(1.0 - s, l, dt).unwrap();
                assert!((e1 + m1).abs() < 1e-10, "eta1 antisymmetry at s={s}");
                assert!((e2 - m2).abs() < 1e-10, "eta2 symmetry at s={s}");
                max1 = max1.max(e1.abs());
                max2 = max2.max(e2.abs());
            }
            assert!(max1 <= dt / 4.0 + 1e-12, "dt={dt}: max eta1={max1}");
            assert!(max2 <= dt / 4.0 + 1e-12, "dt={dt}: max eta2={max2}");
        }
    }

    #[test]
    fn gamma_ratio_examples() {
        let r = gamma_ratio_claim(lam(0.3), 0.1).unwrap();
        assert!(r <= 2e-4, "ratio = {r:e}");
        assert!(r >= 0.0);
        let r = gamma_ratio_claim(lam(0.3), 1e-3).unwrap();
        assert!(r <= 2e-8);
        for &dt in &[0.5, 2.0, 6.0] {
            for &l in &[0.05, 0.4, 0.95] {
                let r = gamma_ratio_claim(lam(l), dt).unwrap();
                assert!(r <= dt * dt / 50.0 + 1e-12, "dt={dt} l={l}: {r}");
            }
        }
    }

    #[test]
    fn sequence_csv_format() {
        let sch = sched(ScheduleKind::Standard, 0.05, 0.1);
        let seq = angle_sequence(&sch, 1.0, EndpointRule::DropFraction).unwrap();
        let mut buf = Vec::new();
        seq.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "j,alpha,beta");
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(first[0], "0");
        assert!((first[1].parse::<f64>().unwrap() + 1.0).abs() < 1e-12);
    }
}
