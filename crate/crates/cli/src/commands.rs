//! Implementations of the subcommands.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use adiasearch::applications::{
    build_oaa_unitary, random_state, random_unitary, run_oaa_adiabatic, run_oaa_gate,
    run_relprime_search, ReflectionConvention, SearchMode,
};
use adiasearch::bounds::{
    heuristic_ratio, theorem1_bound, theorem2_exact, theorem3_closed_standard, theorem4_bound,
    BoundReport,
};
use adiasearch::claims::{run_suite, SuiteReport, SUITE_NAMES};
use adiasearch::gate::{angle_sequence, apply_sequence, simulate_gate, EndpointRule};
use adiasearch::ode::{
    evolve, evolve_phi_frame, write_trajectory_csv, IntegratorConfig, StepControl,
};
use adiasearch::schedule::{fmt12, total_time, write_schedule_csv, ScheduleKind, ScheduleParams};
use adiasearch::{Schedule, TargetFraction};
use rand::SeedableRng;

use crate::{Cli, CliError, CliResult, Command, ConventionArg, FormatArg, SpacingArg};

pub fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Schedule {
            family,
            epsilon,
            w,
            samples,
            format,
        } => cmd_schedule(cli, family.kind(), *epsilon, *w, *samples, *format),
        Command::Simulate {
            family,
            epsilon,
            w,
            lambda,
            phase,
            step,
            phi_frame,
            samples,
            trajectory,
        } => cmd_simulate(
            cli,
            family.kind(),
            *epsilon,
            *w,
            *lambda,
            *phase,
            *step,
            *phi_frame,
            *samples,
            trajectory.as_deref(),
        ),
        Command::Sweep {
            family,
            epsilon,
            w,
            grid_min,
            grid_max,
            grid_count,
            spacing,
        } => cmd_sweep(
            cli,
            family.kind(),
            *epsilon,
            *w,
            grid_min.unwrap_or(*w),
            *grid_max,
            *grid_count,
            *spacing,
        ),
        Command::Bounds {
            family,
            epsilon,
            w,
            lambda,
            dt,
        } => cmd_bounds(cli, family.kind(), *epsilon, *w, *lambda, *dt),
        Command::Gate {
            family,
            epsilon,
            w,
            lambda,
            dt,
            final_step,
            emit_angles,
        } => cmd_gate(
            cli,
            family.kind(),
            *epsilon,
            *w,
            *lambda,
            *dt,
            *final_step,
            emit_angles.as_deref(),
        ),
        Command::Relprime { j, epsilon, gate_dt } => cmd_relprime(cli, *j, *epsilon, *gate_dt),
        Command::Oaa {
            n,
            m,
            lambda,
            epsilon,
            w,
            dt,
            adiabatic,
            convention,
        } => cmd_oaa(cli, *n, *m, *lambda, *epsilon, *w, *dt, *adiabatic, *convention),
        Command::Verify { suites } => cmd_verify(cli, suites),
        Command::Figure2 { out_dir, samples } => cmd_figure2(out_dir, *samples),
    }
}

fn emit(cli: &Cli, content: &str) -> CliResult<()> {
    match &cli.output {
        Some(path) => {
            fs::write(path, content)?;
            Ok(())
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(cli: &Cli, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Numerical(format!("serialization failed: {e}")))?;
    text.push('\n');
    emit(cli, &text)
}

fn schedule_of(kind: ScheduleKind, epsilon: f64, w: f64) -> CliResult<Schedule> {
    Ok(Schedule::family(ScheduleParams::new(kind, epsilon, w)?)?)
}

fn integrator(phase: f64, step: Option<f64>, samples: usize) -> IntegratorConfig {
    IntegratorConfig {
        step_control: match step {
            Some(h) => StepControl::FixedStep(h),
            None => StepControl::TargetPhase(phase),
        },
        renormalize: true,
        sample_count: samples,
    }
}

fn cmd_schedule(
    cli: &Cli,
    kind: ScheduleKind,
    epsilon: f64,
    w: f64,
    samples: usize,
    format: FormatArg,
) -> CliResult<()> {
    let schedule = schedule_of(kind, epsilon, w)?;
    match format {
        FormatArg::Csv => {
            let mut buf = Vec::new();
            write_schedule_csv(&schedule, samples, &mut buf)?;
            emit(cli, &String::from_utf8_lossy(&buf))
        }
        FormatArg::Json => {
            #[derive(Serialize)]
            struct Row {
                t: f64,
                s: f64,
                ds_dt: f64,
            }
            #[derive(Serialize)]
            struct Out {
                family: ScheduleKind,
                epsilon: f64,
                w: f64,
                total_time: f64,
                rows: Vec<Row>,
            }
            let n = samples.max(2);
            let total = schedule.total_time();
            let rows = (0..n)
                .map(|i| {
                    let t = total * i as f64 / (n - 1) as f64;
                    Ok(Row {
                        t,
                        s: schedule.s_of_t(t)?,
                        ds_dt: schedule.ds_dt(t)?,
                    })
                })
                .collect::<Result<Vec<_>, adiasearch::Error>>()?;
            emit_json(
                cli,
                &Out {
                    family: kind,
                    epsilon,
                    w,
                    total_time: total,
                    rows,
                },
            )
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    cli: &Cli,
    kind: ScheduleKind,
    epsilon: f64,
    w: f64,
    lambda: f64,
    phase: f64,
    step: Option<f64>,
    phi_frame: bool,
    samples: usize,
    trajectory: Option<&Path>,
) -> CliResult<()> {
    let schedule = schedule_of(kind, epsilon, w)?;
    let tf = TargetFraction::new(lambda)?;
    let config = integrator(phase, step, samples.max(if trajectory.is_some() { 256 } else { 0 }));
    let sim = if phi_frame {
        evolve_phi_frame(&schedule, tf, &config)?
    } else {
        evolve(&schedule, tf, &config)?
    };
    if let Some(path) = trajectory {
        let mut buf = Vec::new();
        write_trajectory_csv(&sim.trajectory, &mut buf)?;
        fs::write(path, buf)?;
    }
    let bound = theorem1_bound(&schedule, tf)?;
    #[derive(Serialize)]
    struct Out {
        family: ScheduleKind,
        epsilon: f64,
        w: f64,
        lambda: f64,
        frame: &'static str,
        total_time: f64,
        steps: u64,
        success_probability: f64,
        error_amplitude: f64,
        norm_drift: f64,
        bound_thm1: f64,
    }
    emit_json(
        cli,
        &Out {
            family: kind,
            epsilon,
            w,
            lambda,
            frame: if phi_frame { "phi" } else { "lab" },
            total_time: schedule.total_time(),
            steps: sim.steps,
            success_probability: sim.success_probability,
            error_amplitude: sim.error_amplitude,
            norm_drift: sim.norm_drift,
            bound_thm1: bound.delta_bound,
        },
    )
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    cli: &Cli,
    kind: ScheduleKind,
    epsilon: f64,
    w: f64,
    grid_min: f64,
    grid_max: f64,
    grid_count: usize,
    spacing: SpacingArg,
) -> CliResult<()> {
    if grid_count < 1 || grid_min <= 0.0 || grid_max > 1.0 || grid_min > grid_max {
        return Err(CliError::Usage(format!(
            "invalid grid: min {grid_min}, max {grid_max}, count {grid_count}"
        )));
    }
    let schedule = schedule_of(kind, epsilon, w)?;
    let grid: Vec<f64> = (0..grid_count)
        .map(|i| {
            let x = i as f64 / (grid_count - 1).max(1) as f64;
            match spacing {
                SpacingArg::Linear => grid_min + (grid_max - grid_min) * x,
                SpacingArg::Log => (grid_min.ln() + (grid_max.ln() - grid_min.ln()) * x).exp(),
            }
        })
        .collect();
    let config = IntegratorConfig::default();
    let points: Vec<_> = grid
        .par_iter()
        .enumerate()
        .map(|(index, &lambda)| -> CliResult<String> {
            let tf = TargetFraction::new(lambda).map_err(|e| {
                CliError::Usage(format!("lambda[{index}] = {lambda}: {e}"))
            })?;
            let sim = evolve(&schedule, tf, &config).map_err(|e| {
                CliError::Numerical(format!("lambda[{index}] = {lambda}: {e}"))
            })?;
            let thm1 = theorem1_bound(&schedule, tf)?;
            let thm3 = if kind == ScheduleKind::Standard && lambda >= w {
                fmt12(theorem3_closed_standard(tf, epsilon, w)?.delta_bound)
            } else {
                String::new()
            };
            let dominated = sim.error_amplitude <= thm1.delta_bound + 1e-6;
            Ok(format!(
                "{},{},{},{},{},{}",
                fmt12(lambda),
                fmt12(sim.success_probability),
                fmt12(sim.error_amplitude),
                fmt12(thm1.delta_bound),
                thm3,
                dominated
            ))
        })
        .collect();
    let mut out = String::from("lambda,P,delta,bound_thm1,bound_thm3,dominated\n");
    for row in points {
        out.push_str(&row?);
        out.push('\n');
    }
    emit(cli, &out)
}

fn cmd_bounds(
    cli: &Cli,
    kind: ScheduleKind,
    epsilon: f64,
    w: f64,
    lambda: f64,
    dt: Option<f64>,
) -> CliResult<()> {
    let schedule = schedule_of(kind, epsilon, w)?;
    let tf = TargetFraction::new(lambda)?;
    let thm1 = theorem1_bound(&schedule, tf)?;
    let thm2 = match kind {
        ScheduleKind::Fast | ScheduleKind::FastPrimed => Some(theorem2_exact(
            match kind {
                ScheduleKind::FastPrimed => epsilon * (w * (1.0 - w)).sqrt(),
                _ => epsilon,
            },
            w,
        )?),
        _ => None,
    };
    let thm3 = if kind == ScheduleKind::Standard && lambda >= w {
        Some(theorem3_closed_standard(tf, epsilon, w)?)
    } else {
        None
    };
    let thm4 = dt.map(|dt| theorem4_bound(&schedule, tf, dt)).transpose()?;
    let heuristic_max = (0..=200)
        .map(|i| heuristic_ratio(&schedule, tf, i as f64 / 200.0))
        .try_fold(0.0_f64, |acc, r| r.map(|v| acc.max(v)))?;
    #[derive(Serialize)]
    struct Out {
        family: ScheduleKind,
        epsilon: f64,
        w: f64,
        lambda: f64,
        theorem1: BoundReport,
        /// Exact δ(w; ε, w) for the fast shapes.
        theorem2_exact_at_floor: Option<f64>,
        theorem3: Option<BoundReport>,
        theorem4: Option<f64>,
        /// max over s of ṡ·√(λ(1-λ))/Δ³, the heuristic adiabatic ratio.
        heuristic_ratio_max: f64,
    }
    emit_json(
        cli,
        &Out {
            family: kind,
            epsilon,
            w,
            lambda,
            theorem1: thm1,
            theorem2_exact_at_floor: thm2,
            theorem3: thm3,
            theorem4: thm4,
            heuristic_ratio_max: heuristic_max,
        },
    )
}

#[allow(clippy::too_many_arguments)]
fn cmd_gate(
    cli: &Cli,
    kind: ScheduleKind,
    epsilon: f64,
    w: f64,
    lambda: f64,
    dt: f64,
    final_step: bool,
    emit_angles: Option<&Path>,
) -> CliResult<()> {
    let schedule = schedule_of(kind, epsilon, w)?;
    let tf = TargetFraction::new(lambda)?;
    let rule = if final_step {
        EndpointRule::AppendFinal
    } else {
        EndpointRule::DropFraction
    };
    let (sim, sequence) = simulate_gate(&schedule, tf, dt, rule)?;
    if let Some(path) = emit_angles {
        let mut buf = Vec::new();
        sequence.write_csv(&mut buf)?;
        fs::write(path, buf)?;
    }
    let bound = theorem4_bound(&schedule, tf, dt)?;
    #[derive(Serialize)]
    struct Out {
        family: ScheduleKind,
        epsilon: f64,
        w: f64,
        lambda: f64,
        dt: f64,
        total_time: f64,
        steps: u64,
        query_count: u64,
        success_probability: f64,
        error_amplitude: f64,
        bound_thm4: f64,
    }
    emit_json(
        cli,
        &Out {
            family: kind,
            epsilon,
            w,
            lambda,
            dt,
            total_time: schedule.total_time(),
            steps: sim.steps,
            query_count: sequence.query_count(),
            success_probability: sim.success_probability,
            error_amplitude: sim.error_amplitude,
            bound_thm4: bound,
        },
    )
}

fn cmd_relprime(cli: &Cli, j: u64, epsilon: f64, gate_dt: Option<f64>) -> CliResult<()> {
    let mode = match gate_dt {
        Some(dt) => SearchMode::Gate { dt },
        None => SearchMode::Adiabatic,
    };
    let run = run_relprime_search(j, epsilon, mode)?;
    #[derive(Serialize)]
    struct Out {
        #[serde(rename = "J")]
        j: u64,
        totient: u64,
        lambda: f64,
        w_bound: f64,
        #[serde(rename = "T_or_queries")]
        time_or_queries: adiasearch::applications::TimeOrQueries,
        delta: f64,
        bound: f64,
    }
    emit_json(
        cli,
        &Out {
            j: run.instance.j,
            totient: run.instance.totient,
            lambda: run.instance.lambda,
            w_bound: run.instance.w_bound,
            time_or_queries: run.time_or_queries,
            delta: run.result.error_amplitude,
            bound: run.bound,
        },
    )?;
    if !run.within_bound {
        return Err(CliError::Claim(format!(
            "simulated delta {} exceeded the bound {}",
            run.result.error_amplitude, run.bound
        )));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_oaa(
    cli: &Cli,
    n: usize,
    m: usize,
    lambda: f64,
    epsilon: f64,
    w: f64,
    dt: f64,
    adiabatic: bool,
    convention: ConventionArg,
) -> CliResult<()> {
    let schedule = schedule_of(ScheduleKind::Standard, epsilon, w)?;
    let tf = TargetFraction::new(lambda)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let v = random_unitary(1 << n, &mut rng);
    let psi = random_state(n, &mut rng);
    let instance = build_oaa_unitary(n, m, lambda, &v)?;
    let convention = match convention {
        ConventionArg::AsWritten => ReflectionConvention::AsWritten,
        ConventionArg::Complemented => ReflectionConvention::Complemented,
    };
    let config = IntegratorConfig::default();
    let (run, reference) = if adiabatic {
        let run = run_oaa_adiabatic(&instance, &schedule, &config, &psi, convention)?;
        let reference = evolve(&schedule, tf, &config)?.success_probability;
        (run, reference)
    } else {
        let sequence = angle_sequence(&schedule, dt, EndpointRule::DropFraction)?;
        let run = run_oaa_gate(&instance, &sequence, &psi, convention)?;
        let reference = apply_sequence(&sequence, tf)?.success_probability;
        (run, reference)
    };
    #[derive(Serialize)]
    struct Out {
        n: usize,
        m: usize,
        lambda: f64,
        mode: &'static str,
        convention: &'static str,
        queries: Option<u64>,
        lambda_measured: f64,
        success_probability: f64,
        error_amplitude: f64,
        reference_2d_p: f64,
        abs_diff_vs_2d: f64,
    }
    emit_json(
        cli,
        &Out {
            n,
            m,
            lambda,
            mode: if adiabatic { "adiabatic" } else { "gate" },
            convention: match convention {
                ReflectionConvention::AsWritten => "as-written",
                ReflectionConvention::Complemented => "complemented",
            },
            queries: run.queries,
            lambda_measured: run.lambda_measured,
            success_probability: run.success_probability,
            error_amplitude: run.error_amplitude,
            reference_2d_p: reference,
            abs_diff_vs_2d: (run.success_probability - reference).abs(),
        },
    )
}

fn cmd_verify(cli: &Cli, suites: &[String]) -> CliResult<()> {
    let selected: Vec<&str> = if suites.is_empty() {
        SUITE_NAMES.to_vec()
    } else {
        for name in suites {
            if !SUITE_NAMES.contains(&name.as_str()) {
                return Err(CliError::Usage(format!(
                    "unknown suite '{name}'; available: {}",
                    SUITE_NAMES.join(", ")
                )));
            }
        }
        suites.iter().map(String::as_str).collect()
    };
    let seed = cli.seed;
    let reports: Vec<SuiteReport> = selected
        .par_iter()
        .map(|name| run_suite(name, seed))
        .collect::<Result<_, _>>()?;
    let all_pass = reports.iter().all(SuiteReport::all_pass);
    #[derive(Serialize)]
    struct Out {
        seed: u64,
        all_pass: bool,
        suites: Vec<SuiteReport>,
    }
    emit_json(
        cli,
        &Out {
            seed,
            all_pass,
            suites: reports.clone(),
        },
    )?;
    if !all_pass {
        let failing: Vec<String> = reports
            .iter()
            .flat_map(|r| {
                r.failing_ids()
                    .into_iter()
                    .map(|id| format!("{}/{}", r.suite, id))
                    .collect::<Vec<_>>()
            })
            .collect();
        return Err(CliError::Claim(format!(
            "failing claims: {}",
            failing.join(", ")
        )));
    }
    Ok(())
}

fn cmd_figure2(out_dir: &PathBuf, samples: usize) -> CliResult<()> {
    fs::create_dir_all(out_dir)?;
    let w = 0.05;
    let epsilon = 0.05;
    let mut written = Vec::new();
    for (kind, name) in [
        (ScheduleKind::Constant, "schedule_constant.csv"),
        (ScheduleKind::Fast, "schedule_fast.csv"),
        (ScheduleKind::Standard, "schedule_standard.csv"),
    ] {
        let schedule = schedule_of(kind, epsilon, w)?;
        let mut buf = Vec::new();
        write_schedule_csv(&schedule, samples, &mut buf)?;
        let path = out_dir.join(name);
        fs::write(&path, buf)?;
        written.push(path);
    }

    // Run time (in units of 1/ε) against w for the three families.
    let mut table = String::from("w,T_constant,T_fast,T_standard\n");
    for i in 0..60 {
        let w = (1e-3f64.ln() + (0.9f64.ln() - 1e-3f64.ln()) * i as f64 / 59.0).exp();
        let tc = total_time(&ScheduleParams::new(ScheduleKind::Constant, 1.0, w)?)?;
        let tf = total_time(&ScheduleParams::new(ScheduleKind::Fast, 1.0, w)?)?;
        let ts = total_time(&ScheduleParams::new(ScheduleKind::Standard, 1.0, w)?)?;
        table.push_str(&format!(
            "{},{},{},{}\n",
            fmt12(w),
            fmt12(tc),
            fmt12(tf),
            fmt12(ts)
        ));
    }
    let path = out_dir.join("times_vs_w.csv");
    fs::write(&path, table)?;
    written.push(path);

    let mut stdout = std::io::stdout().lock();
    for path in written {
        writeln!(stdout, "{}", path.display())?;
    }
    Ok(())
}
