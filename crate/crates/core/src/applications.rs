//! Search instances with natural lower bounds.
//!
//! Relatively-prime state preparation: the target fraction is φ(J)/J, which
//! admits the analytic floor 1/(e^γ·ln ln J + 3/ln ln J), so the search can
//! run with w set classically and no knowledge of λ. The run itself uses the
//! two-level reduction; the number-theoretic oracle enters only through the
//! membership count. Natural logarithms are used in the floor, following the
//! number-theory source of the inequality.
//!
//! Oblivious amplitude amplification: a dense statevector harness (up to 12
//! qubits) where partial reflections about the start and target states are
//! implemented with U, U† and phases on the ancilla projector Π only. With
//! U = A⊗V the dynamics stay in the 2D span of |Φ⟩, |Φ⊥⟩ and must reproduce
//! the two-level amplification profile exactly.

use ndarray::{linalg::kron, Array1, Array2};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gate::GateSequence;
use crate::geometry::TargetFraction;
use crate::ode::{IntegratorConfig, SimResult, StepControl};
use crate::schedule::{total_time, Schedule, ScheduleKind, ScheduleParams};

/// Euler–Mascheroni constant to f64 precision.
pub const EULER_MASCHERONI: f64 = 0.577_215_664_901_532_9;

/// Largest register (system + ancilla) the dense harness accepts.
pub const MAX_QUBITS: usize = 12;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Euler's totient by direct gcd enumeration: |{x ∈ [1, J] : gcd(x, J) = 1}|.
pub fn totient(j: u64) -> Result<u64> {
    if j == 0 {
        return Err(Error::InvalidModulus { j, min: 1 });
    }
    Ok((1..=j).filter(|&x| gcd(x, j) == 1).count() as u64)
}

/// φ(0..=limit) by a multiplicative sieve; φ(0) is set to 0.
/// Independent of [`totient`], which the tests exploit as a cross-check.
pub fn totient_sieve(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut phi: Vec<u64> = (0..=limit).collect();
    for p in 2..=n {
        if phi[p] == p as u64 {
            let mut m = p;
            while m <= n {
                phi[m] -= phi[m] / p as u64;
                m += p;
            }
        }
    }
    phi
}

/// Analytic lower bound on φ(J)/J for J ≥ 3:
/// 1/(e^γ·ln ln J + 3/ln ln J), natural logarithms.
pub fn relprime_lower_bound(j: u64) -> Result<f64> {
    if j < 3 {
        return Err(Error::InvalidModulus { j, min: 3 });
    }
    let ll = (j as f64).ln().ln();
    Ok(1.0 / (EULER_MASCHERONI.exp() * ll + 3.0 / ll))
}

/// One relatively-prime search instance.
#[derive(Debug, Clone, Serialize)]
pub struct RelPrimeInstance {
    pub j: u64,
    pub totient: u64,
    pub lambda: f64,
    pub w_bound: f64,
}

impl RelPrimeInstance {
    pub fn new(j: u64) -> Result<Self> {
        let tot = totient(j)?;
        let w_bound = relprime_lower_bound(j)?;
        let lambda = tot as f64 / j as f64;
        if w_bound >= lambda {
            // The inequality is strict for all J >= 3; violation means a bug.
            return Err(Error::InvalidArgument(format!(
                "lower bound {w_bound} is not below phi(J)/J = {lambda} at J = {j}"
            )));
        }
        Ok(Self {
            j,
            totient: tot,
            lambda,
            w_bound,
        })
    }
}

/// How to run the search.
#[derive(Debug, Clone, Copy)]
pub enum SearchMode {
    Adiabatic,
    Gate { dt: f64 },
}

/// Run cost: total evolution time or oracle queries.
#[derive(Debug, Clone, Copy, Serialize)]
#[serde(untagged)]
pub enum TimeOrQueries {
    Time(f64),
    Queries(u64),
}

/// Outcome of a relatively-prime search run.
#[derive(Debug, Clone, Serialize)]
pub struct RelPrimeRun {
    pub instance: RelPrimeInstance,
    pub result: SimResult,
    /// 2ε in the adiabatic mode, the Trotterized bound in gate mode.
    pub bound: f64,
    pub time_or_queries: TimeOrQueries,
    pub within_bound: bool,
}

/// Runs the standard-schedule search with w = the analytic floor and
/// λ = φ(J)/J, adiabatically or Trotterized.
pub fn run_relprime_search(j: u64, epsilon: f64, mode: SearchMode) -> Result<RelPrimeRun> {
    let instance = RelPrimeInstance::new(j)?;
    let params = ScheduleParams::new(ScheduleKind::Standard, epsilon, instance.w_bound)?;
    let schedule = Schedule::family(params)?;
    let lambda = TargetFraction::new(instance.lambda)?;
    let (result, bound, cost) = match mode {
        SearchMode::Adiabatic => {
            let result = crate::ode::evolve(&schedule, lambda, &IntegratorConfig::default())?;
            let bound = 2.0 * epsilon;
            let time = total_time(&params)?;
            (result, bound, TimeOrQueries::Time(time))
        }
        SearchMode::Gate { dt } => {
            let (result, sequence) = crate::gate::simulate_gate(
                &schedule,
                lambda,
                dt,
                crate::gate::EndpointRule::DropFraction,
            )?;
            let bound = crate::bounds::theorem4_bound(&schedule, lambda, dt)?;
            let queries = sequence.query_count();
            (result, bound, TimeOrQueries::Queries(queries))
        }
    };
    let within_bound = result.error_amplitude <= bound + 1e-6;
    Ok(RelPrimeRun {
        instance,
        result,
        bound,
        time_or_queries: cost,
        within_bound,
    })
}

/// Dense oblivious-amplitude-amplification instance:
/// U acts on m ancilla qubits (leading register) plus n system qubits, and
/// ⟨0…0|⊗I · U|0…0⟩|ψ⟩ has norm √λ for every |ψ⟩.
#[derive(Debug, Clone)]
pub struct OAAInstance {
    pub n: usize,
    pub m: usize,
    pub u: Array2<Complex64>,
    pub lambda: f64,
}

/// Which projector the reflection phases act on: Π itself as written in the
/// oblivious construction, or its complement I-Π (the convention in which
/// the target is a ground state).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReflectionConvention {
    AsWritten,
    Complemented,
}

/// Amplification outcome for one instance.
#[derive(Debug, Clone, Serialize)]
pub struct OAARun {
    pub lambda_measured: f64,
    pub success_probability: f64,
    pub error_amplitude: f64,
    pub queries: Option<u64>,
}

fn check_register(n: usize, m: usize) -> Result<(usize, usize)> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument(
            "need at least one system and one ancilla qubit".into(),
        ));
    }
    if n + m > MAX_QUBITS {
        return Err(Error::DimensionTooLarge { qubits: n + m });
    }
    Ok((1 << n, 1 << (n + m)))
}

fn unitarity_defect(u: &Array2<Complex64>) -> f64 {
    let dim = u.nrows();
    let prod = u.t().mapv(|c| c.conj()).dot(u);
    let mut worst = 0.0_f64;
    for r in 0..dim {
        for c in 0..dim {
            let expect = if r == c { 1.0 } else { 0.0 };
            worst = worst.max((prod[[r, c]] - expect).norm());
        }
    }
    worst
}

/// Uniformly random normalized statevector on `qubits` qubits.
pub fn random_state(qubits: usize, rng: &mut ChaCha8Rng) -> Array1<Complex64> {
    let dim = 1 << qubits;
    let mut v = Array1::from_elem(dim, Complex64::new(0.0, 0.0));
    for x in v.iter_mut() {
        *x = Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
    }
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    v.mapv_into(|c| c / norm)
}

/// Random dense unitary built from Givens rotations and phases; unitary by
/// construction, no decomposition needed.
pub fn random_unitary(dim: usize, rng: &mut ChaCha8Rng) -> Array2<Complex64> {
    let mut u = Array2::from_shape_fn((dim, dim), |(r, c)| {
        Complex64::new(if r == c { 1.0 } else { 0.0 }, 0.0)
    });
    for i in 0..dim {
        for j in (i + 1)..dim {
            let theta = std::f64::consts::PI * rng.gen::<f64>();
            let phase = 2.0 * std::f64::consts::PI * rng.gen::<f64>();
            let (sin, cos) = theta.sin_cos();
            let e = Complex64::from_polar(1.0, phase);
            for c in 0..dim {
                let a = u[[i, c]];
                let b = u[[j, c]];
                u[[i, c]] = cos * a - sin * e * b;
                u[[j, c]] = sin * e.conj() * a + cos * b;
            }
        }
    }
    for r in 0..dim {
        let e = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * rng.gen::<f64>());
        for c in 0..dim {
            u[[r, c]] *= e;
        }
    }
    u
}

impl OAAInstance {
    /// Wraps a caller-supplied U after verifying that λ does not depend on
    /// |ψ⟩ (measured on three seeded random states, 1e-9 spread).
    pub fn from_unitary(n: usize, m: usize, u: Array2<Complex64>, seed: u64) -> Result<Self> {
        let (_, dim) = check_register(n, m)?;
        if u.nrows() != dim || u.ncols() != dim {
            return Err(Error::InvalidArgument(format!(
                "U must be {dim}x{dim}, got {}x{}",
                u.nrows(),
                u.ncols()
            )));
        }
        let defect = unitarity_defect(&u);
        if defect > 1e-9 {
            return Err(Error::InvalidArgument(format!(
                "U is not unitary: defect {defect:e}"
            )));
        }
        let instance = Self {
            n,
            m,
            u,
            lambda: 0.0,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut lambdas = Vec::new();
        for _ in 0..3 {
            let psi = random_state(n, &mut rng);
            lambdas.push(instance.measure_lambda(&psi)?);
        }
        let spread = lambdas.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - lambdas.iter().cloned().fold(f64::INFINITY, f64::min);
        if spread > 1e-9 {
            return Err(Error::LambdaNotIndependent { spread });
        }
        let lambda = lambdas.iter().sum::<f64>() / lambdas.len() as f64;
        if lambda <= 0.0 || lambda > 1.0 + 1e-12 {
            return Err(Error::InvalidLambda(lambda));
        }
        Ok(Self {
            lambda: lambda.min(1.0),
            ..instance
        })
    }

    fn dim(&self) -> usize {
        1 << (self.n + self.m)
    }

    fn sys_dim(&self) -> usize {
        1 << self.n
    }

    /// |0…0⟩_anc ⊗ |ψ⟩ followed by U.
    fn start_state(&self, psi: &Array1<Complex64>) -> Result<Array1<Complex64>> {
        if psi.len() != self.sys_dim() {
            return Err(Error::InvalidArgument(format!(
                "psi must have dimension {}, got {}",
                self.sys_dim(),
                psi.len()
            )));
        }
        let norm_sq: f64 = psi.iter().map(|c| c.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > 1e-9 {
            return Err(Error::NotNormalized { norm_sq });
        }
        let mut embedded = Array1::from_elem(self.dim(), Complex64::new(0.0, 0.0));
        embedded.slice_mut(ndarray::s![..self.sys_dim()]).assign(psi);
        Ok(self.u.dot(&embedded))
    }

    /// λ as seen by this |ψ⟩: ‖Π U|0…0⟩|ψ⟩‖².
    pub fn measure_lambda(&self, psi: &Array1<Complex64>) -> Result<f64> {
        let start = self.start_state(psi)?;
        Ok(start
            .iter()
            .take(self.sys_dim())
            .map(|c| c.norm_sqr())
            .sum())
    }
}

/// Builds U = A ⊗ V with A a single-axis rotation on the ancilla register
/// satisfying ⟨0…0|A|0…0⟩ = √λ, which makes λ independent of |ψ⟩ by
/// construction (still verified before returning).
pub fn build_oaa_unitary(
    n: usize,
    m: usize,
    lambda: f64,
    v: &Array2<Complex64>,
) -> Result<OAAInstance> {
    let (sys_dim, _) = check_register(n, m)?;
    if !(0.0..=1.0).contains(&lambda) || lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::InvalidLambda(lambda));
    }
    if v.nrows() != sys_dim || v.ncols() != sys_dim {
        return Err(Error::InvalidArgument(format!(
            "V must be {sys_dim}x{sys_dim}, got {}x{}",
            v.nrows(),
            v.ncols()
        )));
    }
    let anc_dim = 1 << m;
    let mut a = Array2::from_shape_fn((anc_dim, anc_dim), |(r, c)| {
        Complex64::new(if r == c { 1.0 } else { 0.0 }, 0.0)
    });
    let (sin, cos) = ((1.0 - lambda).sqrt(), lambda.sqrt());
    a[[0, 0]] = Complex64::new(cos, 0.0);
    a[[0, 1]] = Complex64::new(-sin, 0.0);
    a[[1, 0]] = Complex64::new(sin, 0.0);
    a[[1, 1]] = Complex64::new(cos, 0.0);
    let u = kron(&a, v);
    OAAInstance::from_unitary(n, m, u, 0)
}

/// Multiplies the amplitudes selected by the projector (Π for `AsWritten`,
/// I-Π for `Complemented`) by e^{i·angle}.
fn apply_projector_phase(
    state: &mut Array1<Complex64>,
    sys_dim: usize,
    angle: f64,
    convention: ReflectionConvention,
    complement: bool,
) {
    let phase = Complex64::from_polar(1.0, angle);
    let on_pi = match convention {
        ReflectionConvention::AsWritten => !complement,
        ReflectionConvention::Complemented => complement,
    };
    if on_pi {
        for c in state.iter_mut().take(sys_dim) {
            *c *= phase;
        }
    } else {
        for c in state.iter_mut().skip(sys_dim) {
            *c *= phase;
        }
    }
}

fn finish_run(
    instance: &OAAInstance,
    start: &Array1<Complex64>,
    final_state: &Array1<Complex64>,
    queries: Option<u64>,
) -> OAARun {
    let sys_dim = instance.sys_dim();
    let lambda_measured: f64 = start.iter().take(sys_dim).map(|c| c.norm_sqr()).sum();
    // Target |Φ⟩ = Π|start⟩/√λ; construction-independent.
    let mut overlap = Complex64::new(0.0, 0.0);
    for k in 0..sys_dim {
        overlap += start[k].conj() * final_state[k];
    }
    let p = (overlap.norm_sqr() / lambda_measured).clamp(0.0, 1.0);
    OAARun {
        lambda_measured,
        success_probability: p,
        error_amplitude: (1.0 - p).sqrt(),
        queries,
    }
}

/// Gate-mode oblivious amplification: per step applies the target phase
/// e^{iβ·P} and the start-side rotation U e^{-iα·P} U† with P the projector
/// selected by the convention.
pub fn run_oaa_gate(
    instance: &OAAInstance,
    sequence: &GateSequence,
    psi: &Array1<Complex64>,
    convention: ReflectionConvention,
) -> Result<OAARun> {
    let start = instance.start_state(psi)?;
    let sys_dim = instance.sys_dim();
    let u_dag = instance.u.t().mapv(|c| c.conj());
    let mut state = start.clone();
    for &(alpha, beta) in &sequence.pairs {
        apply_projector_phase(&mut state, sys_dim, beta, convention, false);
        let mut rotated = u_dag.dot(&state);
        apply_projector_phase(&mut rotated, sys_dim, -alpha, convention, false);
        state = instance.u.dot(&rotated);
    }
    Ok(finish_run(
        instance,
        &start,
        &state,
        Some(sequence.query_count()),
    ))
}

/// Adiabatic-mode oblivious amplification: integrates
/// H(s) = (1-s)·U P U† + s·P (or the complemented projectors) over the
/// schedule in the full statevector.
pub fn run_oaa_adiabatic(
    instance: &OAAInstance,
    schedule: &Schedule,
    config: &IntegratorConfig,
    psi: &Array1<Complex64>,
    convention: ReflectionConvention,
) -> Result<OAARun> {
    let start = instance.start_state(psi)?;
    let sys_dim = instance.sys_dim();
    let u_dag = instance.u.t().mapv(|c| c.conj());
    let project = |state: &Array1<Complex64>, complement: bool| -> Array1<Complex64> {
        let mut out = Array1::from_elem(state.len(), Complex64::new(0.0, 0.0));
        let keep_pi = match convention {
            ReflectionConvention::AsWritten => !complement,
            ReflectionConvention::Complemented => complement,
        };
        if keep_pi {
            for k in 0..sys_dim {
                out[k] = state[k];
            }
        } else {
            for k in sys_dim..state.len() {
                out[k] = state[k];
            }
        }
        out
    };
    let h_apply = |t: f64, state: &Array1<Complex64>| -> Array1<Complex64> {
        let s = schedule.s_clamped(t);
        let end_part = project(state, false);
        let begin_part = instance.u.dot(&project(&u_dag.dot(state), false));
        let mut out = Array1::from_elem(state.len(), Complex64::new(0.0, 0.0));
        for k in 0..state.len() {
            out[k] = (1.0 - s) * begin_part[k] + s * end_part[k];
        }
        out
    };

    let step_h = match config.step_control {
        StepControl::FixedStep(h) => {
            if !h.is_finite() || h <= 0.0 {
                return Err(Error::InvalidTimeStep(h));
            }
            h
        }
        // The projector Hamiltonian has norm <= 1, so the phase target is
        // the step directly.
        StepControl::TargetPhase(q) => {
            if !q.is_finite() || q <= 0.0 || q > 0.1 {
                return Err(Error::InvalidArgument(format!(
                    "target phase per step must lie in (0, 0.1], got {q}"
                )));
            }
            q
        }
    };

    let total = schedule.total_time();
    let mut state = start.clone();
    let mut t = 0.0;
    let minus_i = Complex64::new(0.0, -1.0);
    while t < total {
        let h = step_h.min(total - t);
        if h <= total * 1e-15 {
            return Err(Error::StepUnderflow { t, h });
        }
        let k1 = h_apply(t, &state).mapv(|c| c * minus_i);
        let s1: Array1<Complex64> = &state + &k1.mapv(|c| c * (h / 2.0));
        let k2 = h_apply(t + h / 2.0, &s1).mapv(|c| c * minus_i);
        let s2: Array1<Complex64> = &state + &k2.mapv(|c| c * (h / 2.0));
        let k3 = h_apply(t + h / 2.0, &s2).mapv(|c| c * minus_i);
        let s3: Array1<Complex64> = &state + &k3.mapv(|c| c * h);
        let k4 = h_apply((t + h).min(total), &s3).mapv(|c| c * minus_i);
        for k in 0..state.len() {
            state[k] += h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
        }
        t += h;
        let norm = state.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-6 {
            return Err(Error::Integration(format!(
                "statevector norm drift {:e} at t = {t}",
                (norm - 1.0).abs()
            )));
        }
        if config.renormalize {
            state.mapv_inplace(|c| c / norm);
        }
    }
    Ok(finish_run(instance, &start, &state, None))
}
