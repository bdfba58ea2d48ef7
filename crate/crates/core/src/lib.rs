//! Casimir pressure on the boundaries of a compactified spatial dimension.
//!
//! The crate evaluates the (3,3) stress component for free scalar and
//! fermionic fields living on `R^{D-d} x T^d`, where one spatial direction has
//! circumference `L` and, optionally, imaginary time has circumference
//! `beta = 1/T`. Boundary conditions along the spatial circle are controlled by
//! a twist `theta` (0 periodic, 1 antiperiodic); imaginary time is fixed by
//! the field statistics.
//!
//! Layering, bottom up:
//!
//! * [`series`]: compensated accumulation, tolerance-driven 1D sums and
//!   2D/orthant lattice sums with tail bounds, adaptive quadrature.
//! * [`specfun`]: `K_nu(z)` for integer and half-integer order, gamma,
//!   Riemann zeta at integer arguments.
//! * [`zeta`]: Epstein-Hurwitz zeta functions, both the defining lattice sum
//!   and the Bessel-series continuation.
//! * [`pressure`]: vacuum, thermal and cross pressure components, massless
//!   closed forms and the dimensionless profile `g(xi)`.
//! * [`crossover`]: roots of `g`, phase diagrams and force curves.
//! * [`oracle`]: slow, independent reference evaluations used by the tests
//!   and by the `oracle` CLI subcommand.
//!
//! Natural units (`hbar = c = k_B = 1`) are used throughout; [`units`] holds
//! the conversions to MeV, fm and kelvin.
#![no_std]
#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
mod math;

pub mod crossover;
pub mod oracle;
pub mod pressure;
pub mod series;
pub mod specfun;
pub mod units;
pub mod zeta;

pub use error::{Error, Result};
pub use series::{SeriesControl, SumResult, TailMode};
