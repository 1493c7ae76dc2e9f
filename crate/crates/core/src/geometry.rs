//! Two-dimensional reduction of the search problem.
//!
//! The search Hamiltonian `H(s) = (1-s)H_0 + s H_1` restricted to the span of
//! the begin and end states is a two-level system. In the symmetrized basis it
//! reads `H(s) = I/2 - (Δ_λ/2) n̂(s)·σ` with a gap `Δ_λ(s)` that dips to `√λ`
//! at the midpoint and a field axis n̂(s) tilted by an angle θ(s) from ẑ in
//! the xz-plane. This module holds those quantities, the qubit/Bloch-vector
//! maps, and the rotating-frame quantities (χ, H_φ) used for error analysis.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerance on state and Bloch-vector norms.
pub const NORM_TOL: f64 = 1e-9;

/// Fraction of marked items, λ = M/N. Constructing one proves 0 < λ ≤ 1;
/// λ = 0 is rejected because the end state is undefined with no targets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TargetFraction(f64);

impl TargetFraction {
    pub fn new(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda <= 0.0 || lambda > 1.0 {
            return Err(Error::InvalidLambda(lambda));
        }
        Ok(Self(lambda))
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for TargetFraction {
    type Error = Error;
    fn try_from(lambda: f64) -> Result<Self> {
        Self::new(lambda)
    }
}

/// Normalized two-level state, amplitudes in the rotated `{|0>, |1>}` basis.
///
/// Global phase carries no physics here; comparisons go through
/// [`QubitState::fidelity`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct QubitState {
    pub amp0: Complex64,
    pub amp1: Complex64,
}

impl QubitState {
    /// Builds a state, rejecting amplitudes whose norm is off by more than
    /// [`NORM_TOL`].
    pub fn new(amp0: Complex64, amp1: Complex64) -> Result<Self> {
        let norm_sq = amp0.norm_sqr() + amp1.norm_sqr();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { amp0, amp1 })
    }

    pub(crate) fn new_unchecked(amp0: Complex64, amp1: Complex64) -> Self {
        Self { amp0, amp1 }
    }

    pub fn norm_sq(&self) -> f64 {
        self.amp0.norm_sqr() + self.amp1.norm_sqr()
    }

    /// Inner product ⟨self|other⟩.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amp0.conj() * other.amp0 + self.amp1.conj() * other.amp1
    }

    /// Phase-invariant overlap |⟨self|other⟩|².
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Returns the state scaled back onto the unit sphere.
    pub fn normalized(&self) -> Self {
        let n = self.norm_sq().sqrt();
        Self {
            amp0: self.amp0 / n,
            amp1: self.amp1 / n,
        }
    }
}

/// Point on (or near) the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self::new(self.x / n, self.y / n, self.z / n)
    }
}

/// Hermitian two-level operator `identity_coeff·I - (1/2) pauli_coeff·σ`.
/// Its eigenvalue gap equals the Euclidean norm of `pauli_coeff`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Hamiltonian2 {
    pub identity_coeff: f64,
    pub pauli_coeff: [f64; 3],
}

impl Hamiltonian2 {
    pub fn new(identity_coeff: f64, pauli_coeff: [f64; 3]) -> Self {
        Self {
            identity_coeff,
            pauli_coeff,
        }
    }

    /// Eigenvalue gap, `|pauli_coeff|`.
    pub fn gap(&self) -> f64 {
        let [x, y, z] = self.pauli_coeff;
        (x * x + y * y + z * z).sqrt()
    }

    /// Dense 2×2 matrix, row major.
    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        let c = self.identity_coeff;
        let [x, y, z] = self.pauli_coeff;
        [
            [
                Complex64::new(c - z / 2.0, 0.0),
                Complex64::new(-x / 2.0, y / 2.0),
            ],
            [
                Complex64::new(-x / 2.0, -y / 2.0),
                Complex64::new(c + z / 2.0, 0.0),
            ],
        ]
    }

    /// Ground state, the `+v̂` Bloch point of the Pauli vector. Fails when the
    /// operator is proportional to the identity.
    pub fn ground_state(&self) -> Result<QubitState> {
        let g = self.gap();
        if g == 0.0 {
            return Err(Error::InvalidArgument(
                "degenerate Hamiltonian has no unique ground state".into(),
            ));
        }
        let [x, y, z] = self.pauli_coeff;
        state_of_bloch(&BlochVector::new(x / g, y / g, z / g))
    }
}

/// Frame-change angles at a point of the evolution: θ is the Hamiltonian tilt
/// from ẑ, μ the basis-change angle with cos(2μ) = √(1-λ), and χ the tilt of
/// the rotating-frame effective Hamiltonian, χ = arctan(θ̇/Δ_λ).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FrameAngles {
    pub theta: f64,
    pub mu: f64,
    pub chi: f64,
}

#[inline]
fn check_s(s: f64) -> Result<f64> {
    if !s.is_finite() || !(0.0..=1.0).contains(&s) {
        return Err(Error::InvalidS(s));
    }
    Ok(s)
}

#[inline]
pub(crate) fn gap_raw(lambda: f64, s: f64) -> f64 {
    (1.0 - 4.0 * s * (1.0 - s) * (1.0 - lambda)).max(0.0).sqrt()
}

#[inline]
pub(crate) fn theta_raw(lambda: f64, s: f64) -> f64 {
    let arg = (1.0 - 2.0 * s) * (1.0 - lambda).sqrt() / gap_raw(lambda, s);
    arg.clamp(-1.0, 1.0).acos()
}

#[inline]
pub(crate) fn dtheta_ds_raw(lambda: f64, s: f64) -> f64 {
    let d = gap_raw(lambda, s);
    2.0 * (lambda * (1.0 - lambda)).sqrt() / (d * d)
}

/// Eigenvalue gap Δ_λ(s) = √(1 - 4s(1-s)(1-λ)); equals 1 at the endpoints
/// and √λ at s = 1/2.
pub fn gap(lambda: TargetFraction, s: f64) -> Result<f64> {
    Ok(gap_raw(lambda.get(), check_s(s)?))
}

/// Tilt angle θ(s) = arccos((1-2s)√(1-λ)/Δ_λ) of the field axis, in [0, π].
pub fn theta(lambda: TargetFraction, s: f64) -> Result<f64> {
    Ok(theta_raw(lambda.get(), check_s(s)?))
}

/// dθ/ds = 2√(λ(1-λ))/Δ_λ²; strictly positive for λ ∈ (0, 1).
pub fn dtheta_ds(lambda: TargetFraction, s: f64) -> Result<f64> {
    Ok(dtheta_ds_raw(lambda.get(), check_s(s)?))
}

/// Interpolated two-level Hamiltonian: identity coefficient 1/2 and Pauli
/// vector Δ_λ·n̂(s) = (√λ, 0, √(1-λ)(1-2s)).
pub fn hamiltonian(lambda: TargetFraction, s: f64) -> Result<Hamiltonian2> {
    let s = check_s(s)?;
    let l = lambda.get();
    Ok(Hamiltonian2::new(
        0.5,
        [l.sqrt(), 0.0, (1.0 - l).sqrt() * (1.0 - 2.0 * s)],
    ))
}

/// Begin state |B⟩, the ground state of H(s=0) (Bloch point n̂₀).
pub fn begin_state(lambda: TargetFraction) -> QubitState {
    let half = theta_raw(lambda.get(), 0.0) / 2.0;
    QubitState::new_unchecked(
        Complex64::new(half.cos(), 0.0),
        Complex64::new(half.sin(), 0.0),
    )
}

/// End state |E⟩, the ground state of H(s=1) (Bloch point n̂₁); ⟨B|E⟩ = √λ.
pub fn end_state(lambda: TargetFraction) -> QubitState {
    let half = theta_raw(lambda.get(), 1.0) / 2.0;
    QubitState::new_unchecked(
        Complex64::new(half.cos(), 0.0),
        Complex64::new(half.sin(), 0.0),
    )
}

/// Bloch vector of a normalized state; rejects non-unit inputs.
pub fn bloch_of_state(state: &QubitState) -> Result<BlochVector> {
    let norm_sq = state.norm_sq();
    if (norm_sq - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { norm_sq });
    }
    let cross = state.amp0.conj() * state.amp1;
    Ok(BlochVector::new(
        2.0 * cross.re,
        2.0 * cross.im,
        state.amp0.norm_sqr() - state.amp1.norm_sqr(),
    ))
}

/// State |r̂⟩ = cos(ξ/2)|0⟩ + e^{iφ} sin(ξ/2)|1⟩ mapped from a unit Bloch
/// vector; satisfies r̂·σ|r̂⟩ = |r̂⟩.
pub fn state_of_bloch(r: &BlochVector) -> Result<QubitState> {
    let norm = r.norm();
    if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotUnitBloch { norm });
    }
    let xi = (r.z / norm).clamp(-1.0, 1.0).acos();
    let phi = r.y.atan2(r.x);
    let (half_sin, half_cos) = ((xi / 2.0).sin(), (xi / 2.0).cos());
    Ok(QubitState::new_unchecked(
        Complex64::new(half_cos, 0.0),
        Complex64::from_polar(half_sin, phi),
    ))
}

/// Rotating-frame tilt χ = arctan(θ̇/Δ_λ) with θ̇ = dθ/ds · ds/dt; lies in
/// (-π/2, π/2).
pub fn chi_angle(lambda: TargetFraction, s: f64, ds_dt: f64) -> Result<f64> {
    let s = check_s(s)?;
    if !ds_dt.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "ds_dt must be finite, got {ds_dt}"
        )));
    }
    let l = lambda.get();
    let theta_dot = dtheta_ds_raw(l, s) * ds_dt;
    Ok((theta_dot / gap_raw(l, s)).atan())
}

/// All three frame angles at (λ, s, ṡ).
pub fn frame_angles(lambda: TargetFraction, s: f64, ds_dt: f64) -> Result<FrameAngles> {
    let chi = chi_angle(lambda, s, ds_dt)?;
    let l = lambda.get();
    Ok(FrameAngles {
        theta: theta_raw(l, s),
        mu: 0.5 * (1.0 - l).sqrt().clamp(-1.0, 1.0).acos(),
        chi,
    })
}

/// Effective Hamiltonian H_φ = I/2 - (m/2) n̂_φ·σ seen in the frame that
/// keeps the field axis on ẑ: m = √(Δ_λ² + θ̇²), n̂_φ = (θ̇ ŷ + Δ_λ ẑ)/m.
pub fn effective_hamiltonian_phi(
    lambda: TargetFraction,
    s: f64,
    ds_dt: f64,
) -> Result<Hamiltonian2> {
    let s = check_s(s)?;
    if !ds_dt.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "ds_dt must be finite, got {ds_dt}"
        )));
    }
    let l = lambda.get();
    let theta_dot = dtheta_ds_raw(l, s) * ds_dt;
    Ok(Hamiltonian2::new(0.5, [0.0, theta_dot, gap_raw(l, s)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn lam(x: f64) -> TargetFraction {
        TargetFraction::new(x).unwrap()
    }

    fn random_state(rng: &mut ChaCha8Rng) -> QubitState {
        let a = Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
        let b = Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
        QubitState::new_unchecked(a, b).normalized()
    }

    /// Analytic eigendecomposition of a 2x2 Hermitian matrix; independent of
    /// the Bloch-vector construction under test.
    fn ground_state_oracle(h: &Hamiltonian2) -> QubitState {
        let m = h.matrix();
        let (a, b, d) = (m[0][0].re, m[0][1], m[1][1].re);
        let tr = a + d;
        let det = a * d - b.norm_sqr();
        let e0 = tr / 2.0 - ((tr * tr) / 4.0 - det).sqrt();
        // (H - e0) v = 0 -> v = (b, e0 - a) or (e0 - d, b*)
        let v = if b.norm() > 1e-14 {
            (b, Complex64::new(e0 - a, 0.0))
        } else if a <= d {
            (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
        } else {
            (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))
        };
        QubitState::new_unchecked(v.0, v.1).normalized()
    }

    #[test]
    fn lambda_domain_is_enforced() {
        assert!(TargetFraction::new(0.0).is_err());
        assert!(TargetFraction::new(-0.1).is_err());
        assert!(TargetFraction::new(1.0 + 1e-12).is_err());
        assert!(TargetFraction::new(f64::NAN).is_err());
        assert!(TargetFraction::new(1.0).is_ok());
        assert!(TargetFraction::new(1e-12).is_ok());
    }

    #[test]
    fn gap_examples() {
        assert!((gap(lam(0.3), 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((gap(lam(0.25), 0.5).unwrap() - 0.5).abs() < 1e-15);
        assert!((gap(lam(1.0), 0.7).unwrap() - 1.0).abs() < 1e-15);
        assert!(gap(lam(0.3), -0.1).is_err());
        assert!(gap(lam(0.3), 1.1).is_err());
    }

    #[test]
    fn gap_symmetry_and_range() {
        for &l in &[1e-4, 0.01, 0.25, 0.5, 0.9, 1.0] {
            let tf = lam(l);
            for i in 0..=40 {
                let s = i as f64 / 40.0;
                let g = gap(tf, s).unwrap();
                let g_mirror = gap(tf, 1.0 - s).unwrap();
                assert!((g - g_mirror).abs() < 1e-14);
                assert!(g <= 1.0 + 1e-15 && g >= l.sqrt() - 1e-15);
            }
            assert!((gap(tf, 0.5).unwrap() - l.sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn theta_examples_and_symmetry() {
        assert!((theta(lam(0.25), 0.5).unwrap() - FRAC_PI_2).abs() < 1e-14);
        assert!((theta(lam(0.25), 0.0).unwrap() - PI / 6.0).abs() < 1e-14);
        for &l in &[0.05, 0.25, 0.7] {
            for i in 0..=20 {
                let s = i as f64 / 20.0;
                let sum = theta(lam(l), s).unwrap() + theta(lam(l), 1.0 - s).unwrap();
                assert!((sum - PI).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn dtheta_matches_central_difference() {
        let h = 1e-6;
        for &l in &[0.1, 0.25, 0.5, 0.95] {
            let tf = lam(l);
            for i in 1..40 {
                let s = i as f64 / 40.0;
                let fd = (theta(tf, s + h).unwrap() - theta(tf, s - h).unwrap()) / (2.0 * h);
                let an = dtheta_ds(tf, s).unwrap();
                assert!(
                    (fd - an).abs() <= 1e-6 * an.abs().max(1.0),
                    "lambda={l} s={s}: fd={fd} analytic={an}"
                );
            }
        }
        // frozen spot values
        assert!((dtheta_ds(lam(0.25), 0.0).unwrap() - 2.0 * 0.1875f64.sqrt()).abs() < 1e-14);
        assert!((dtheta_ds(lam(0.25), 0.5).unwrap() - 2.0 * 3.0f64.sqrt()).abs() < 1e-12);
        assert_eq!(dtheta_ds(lam(1.0), 0.3).unwrap(), 0.0);
    }

    #[test]
    fn theta_at_interior_consistent_with_derivative() {
        // theta(0.1, 0.3) has no closed-form anchor; check it against the
        // integral of dtheta_ds from 0.
        let tf = lam(0.1);
        let n = 20_000;
        let mut acc = theta(tf, 0.0).unwrap();
        let h = 0.3 / n as f64;
        for i in 0..n {
            let s = i as f64 * h;
            // Simpson-free midpoint rule is plenty at this resolution.
            acc += dtheta_ds(tf, s + h / 2.0).unwrap() * h;
        }
        assert!((acc - theta(tf, 0.3).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn hamiltonian_examples() {
        let h = hamiltonian(lam(0.25), 0.0).unwrap();
        assert_eq!(h.identity_coeff, 0.5);
        assert!((h.pauli_coeff[0] - 0.5).abs() < 1e-15);
        assert_eq!(h.pauli_coeff[1], 0.0);
        assert!((h.pauli_coeff[2] - 0.75f64.sqrt()).abs() < 1e-15);

        let h1 = hamiltonian(lam(0.25), 1.0).unwrap();
        assert!((h1.pauli_coeff[2] + 0.75f64.sqrt()).abs() < 1e-15);

        let hm = hamiltonian(lam(0.25), 0.5).unwrap();
        assert!(hm.pauli_coeff[2].abs() < 1e-15);
        assert!((hm.gap() - 0.5).abs() < 1e-15);

        for &(l, s) in &[(0.1, 0.2), (0.7, 0.9), (1.0, 0.5)] {
            let tf = lam(l);
            assert!(
                (hamiltonian(tf, s).unwrap().gap() - gap(tf, s).unwrap()).abs() < 1e-14
            );
        }
    }

    #[test]
    fn begin_end_states() {
        let b = begin_state(lam(1.0));
        let e = end_state(lam(1.0));
        assert!((b.fidelity(&e) - 1.0).abs() < 1e-12);

        let b = begin_state(lam(0.25));
        let e = end_state(lam(0.25));
        assert!((b.fidelity(&e) - 0.25).abs() < 1e-12);
        assert!((b.inner(&e).re - 0.5).abs() < 1e-12);

        for &l in &[0.01, 0.3, 0.8, 1.0] {
            let tf = lam(l);
            let oracle = ground_state_oracle(&hamiltonian(tf, 0.0).unwrap());
            assert!(
                (begin_state(tf).fidelity(&oracle) - 1.0).abs() < 1e-10,
                "begin state is not the s=0 ground state at lambda={l}"
            );
            let oracle1 = ground_state_oracle(&hamiltonian(tf, 1.0).unwrap());
            assert!((end_state(tf).fidelity(&oracle1) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn hamiltonian_eigenvectors_map_to_plus_minus_n() {
        for &(l, s) in &[(0.2, 0.3), (0.6, 0.8), (0.9, 0.5)] {
            let tf = lam(l);
            let h = hamiltonian(tf, s).unwrap();
            let ground = ground_state_oracle(&h);
            let r = bloch_of_state(&ground).unwrap();
            let n_hat = {
                let g = h.gap();
                BlochVector::new(
                    h.pauli_coeff[0] / g,
                    h.pauli_coeff[1] / g,
                    h.pauli_coeff[2] / g,
                )
            };
            assert!((r.dot(&n_hat) - 1.0).abs() < 1e-10, "ground maps to +n̂");
            assert!((h.ground_state().unwrap().fidelity(&ground) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn bloch_round_trip() {
        let zero = QubitState::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)).unwrap();
        let r = bloch_of_state(&zero).unwrap();
        assert!((r.z - 1.0).abs() < 1e-15 && r.x.abs() < 1e-15 && r.y.abs() < 1e-15);

        let plus = QubitState::new(
            Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        )
        .unwrap();
        let r = bloch_of_state(&plus).unwrap();
        assert!((r.x - 1.0).abs() < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let psi = random_state(&mut rng);
            let back = state_of_bloch(&bloch_of_state(&psi).unwrap()).unwrap();
            assert!((psi.fidelity(&back) - 1.0).abs() < 1e-12);
            // r̂·σ |r̂> = |r̂>
            let r = bloch_of_state(&psi).unwrap();
            let h = Hamiltonian2::new(0.0, [-2.0 * r.x, -2.0 * r.y, -2.0 * r.z]);
            // H = r̂·σ under this encoding; apply and compare.
            let m = h.matrix();
            let out = QubitState::new_unchecked(
                m[0][0] * psi.amp0 + m[0][1] * psi.amp1,
                m[1][0] * psi.amp0 + m[1][1] * psi.amp1,
            );
            assert!((out.fidelity(&psi) - 1.0).abs() < 1e-10);
            assert!((out.inner(&psi).norm() - 1.0).abs() < 1e-10);
        }

        let bad = QubitState::new_unchecked(Complex64::new(0.7, 0.0), Complex64::new(0.0, 0.0));
        assert!(bloch_of_state(&bad).is_err());
        assert!(state_of_bloch(&BlochVector::new(0.5, 0.0, 0.0)).is_err());
    }

    #[test]
    fn chi_angle_cases() {
        assert_eq!(chi_angle(lam(0.3), 0.4, 0.0).unwrap(), 0.0);

        // Fast schedule at lambda = w: chi = arctan(2 eps), independent of s.
        let eps = 0.07;
        let w = 0.2;
        let tf = lam(w);
        for i in 0..=10 {
            let s = i as f64 / 10.0;
            let sdot = eps * gap_raw(w, s).powi(3) / (w * (1.0 - w)).sqrt();
            let chi = chi_angle(tf, s, sdot).unwrap();
            assert!(
                (chi - (2.0 * eps).atan()).abs() < 1e-12,
                "s={s}: chi={chi}"
            );
        }

        // Cross-check chi against finite-difference theta-dot for the
        // standard schedule at lambda = w = 0.1, s = 0.5.
        let w = 0.1;
        let tf = lam(w);
        let eps = 0.05;
        let sdot = eps * gap_raw(w, 0.5).powi(2);
        let h = 1e-6;
        let fd_dtheta = (theta_raw(w, 0.5 + h) - theta_raw(w, 0.5 - h)) / (2.0 * h);
        let expected = (fd_dtheta * sdot / gap_raw(w, 0.5)).atan();
        assert!((chi_angle(tf, 0.5, sdot).unwrap() - expected).abs() < 1e-8);
    }

    #[test]
    fn effective_hamiltonian_phi_components() {
        let tf = lam(0.3);
        let h = effective_hamiltonian_phi(tf, 0.25, 0.0).unwrap();
        assert_eq!(h.pauli_coeff[0], 0.0);
        assert_eq!(h.pauli_coeff[1], 0.0);
        assert!((h.pauli_coeff[2] - gap_raw(0.3, 0.25)).abs() < 1e-15);

        // m^2 = gap^2 + theta_dot^2 by construction.
        let sdot = 0.11;
        let h = effective_hamiltonian_phi(tf, 0.6, sdot).unwrap();
        let theta_dot = dtheta_ds_raw(0.3, 0.6) * sdot;
        let m2 = gap_raw(0.3, 0.6).powi(2) + theta_dot * theta_dot;
        assert!((h.gap().powi(2) - m2).abs() < 1e-13);

        // Fast schedule at lambda = w: m = Delta_w sqrt(1 + 4 eps^2).
        let (eps, w) = (0.05, 0.25);
        let tf = lam(w);
        for i in 0..=8 {
            let s = i as f64 / 8.0;
            let sdot = eps * gap_raw(w, s).powi(3) / (w * (1.0 - w)).sqrt();
            let m = effective_hamiltonian_phi(tf, s, sdot).unwrap().gap();
            let expect = gap_raw(w, s) * (1.0 + 4.0 * eps * eps).sqrt();
            assert!((m - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn frame_consistency_rotating_begin_state_gives_zero() {
        // exp(i (theta/2) Y) |B> = |0> up to global phase (Lemma-style check).
        for &l in &[0.05, 0.3, 0.75, 1.0] {
            let tf = lam(l);
            let th = theta(tf, 0.0).unwrap();
            let b = begin_state(tf);
            let (c, s) = ((th / 2.0).cos(), (th / 2.0).sin());
            // exp(i a Y) = [[cos a, sin a], [-sin a, cos a]]
            let rotated = QubitState::new_unchecked(
                c * b.amp0 + s * b.amp1,
                -s * b.amp0 + c * b.amp1,
            );
            let zero =
                QubitState::new_unchecked(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
            assert!((rotated.fidelity(&zero) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn frame_angles_fields() {
        let fa = frame_angles(lam(0.36), 0.0, 0.0).unwrap();
        // cos(2 mu) = sqrt(1 - lambda) = 0.8
        assert!((fa.mu - 0.5 * 0.8f64.acos()).abs() < 1e-14);
        assert_eq!(fa.chi, 0.0);
        assert!(fa.theta >= 0.0 && fa.theta <= PI);
    }
}
