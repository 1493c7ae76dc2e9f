//! Numerical laboratory for fixed-point adiabatic quantum search.
//!
//! The crate simulates the two-level reduction of adiabatic search under a
//! family of interpolation schedules, evaluates the closed-form and
//! quadrature error bounds attached to them, Trotterizes the evolution into
//! partial-reflection gate sequences, and checks the whole stack against
//! itself: exact expressions vs. direct Schrödinger integration, closed
//! forms vs. total-variation quadrature, gate model vs. continuous model.
//!
//! Modules:
//! - [`geometry`]: the 2D reduction (gap, tilt angle, Bloch maps, frames).
//! - [`schedule`]: interpolation families s(t) with closed-form speeds.
//! - [`bounds`]: error bounds (general, exact-fast, standard closed form,
//!   Trotterized) and the fidelity triangle inequality.
//! - [`ode`]: RK4 Schrödinger integration in the lab and rotating frames.
//! - [`gate`]: partial reflections, angle sequences, effective step
//!   Hamiltonian and its inequality claims.
//! - [`applications`]: relatively-prime state preparation and oblivious
//!   amplitude amplification on small statevectors.
//! - [`claims`]: machine-checkable claim suites used by the CLI and the
//!   acceptance tests.

pub mod applications;
pub mod bounds;
pub mod claims;
pub mod error;
pub mod gate;
pub mod geometry;
pub mod ode;
pub mod schedule;

pub use error::{Error, Result};
pub use geometry::{BlochVector, FrameAngles, Hamiltonian2, QubitState, TargetFraction};
pub use schedule::{Schedule, ScheduleKind, ScheduleParams};
