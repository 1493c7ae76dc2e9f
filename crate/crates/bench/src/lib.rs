//! Shared fixtures for the benchmarks.

use adiasearch::schedule::{ScheduleKind, ScheduleParams};
use adiasearch::{Schedule, TargetFraction};

pub fn standard_schedule(epsilon: f64, w: f64) -> Schedule {
    Schedule::family(ScheduleParams::new(ScheduleKind::Standard, epsilon, w).unwrap()).unwrap()
}

pub fn fast_schedule(epsilon: f64, w: f64) -> Schedule {
    Schedule::family(ScheduleParams::new(ScheduleKind::Fast, epsilon, w).unwrap()).unwrap()
}

pub fn lambda(x: f64) -> TargetFraction {
    TargetFraction::new(x).unwrap()
}
