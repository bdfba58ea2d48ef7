//! The (3,3) stress component on the boundaries of the compact direction.
//!
//! With imaginary time compactified to `beta` the pressure splits as
//! `vacuum + thermal + cross`. Massive fields go through Bessel sums
//! ([`vacuum_pressure`], [`thermal_pressure`]); massless fields through
//! closed forms and the profile [`g_function`].

mod massive;
mod massless;

pub use massive::{cross_component, thermal_component, thermal_pressure, vacuum_pressure};
pub use massless::{
    dirichlet_pressure, g_function, g_parts, g_prefactor, massless_breakdown,
    massless_thermal_pressure, massless_vacuum_pressure, small_mass_vacuum_pressure, twisted_zeta,
    GParts, MasslessMethod, MasslessVacuum,
};

use crate::error::{Error, Result};
use crate::series::SeriesControl;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Scalar,
    Fermion,
}

impl FieldKind {
    /// Components of the field: 1, or `2^{floor(D/2)}` for a Dirac fermion.
    pub fn degeneracy(self, dim: u32) -> f64 {
        match self {
            FieldKind::Scalar => 1.0,
            FieldKind::Fermion => (1u64 << (dim / 2)) as f64,
        }
    }

    /// Twist along imaginary time fixed by the KMS condition.
    pub fn time_twist(self) -> Twist {
        match self {
            FieldKind::Scalar => Twist::Periodic,
            FieldKind::Fermion => Twist::Antiperiodic,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FieldKind::Scalar => "scalar",
            FieldKind::Fermion => "fermion",
        }
    }
}

impl core::str::FromStr for FieldKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scalar" | "boson" => Ok(FieldKind::Scalar),
            "fermion" | "dirac" => Ok(FieldKind::Fermion),
            _ => Err(Error::InvalidConfig("field must be scalar or fermion")),
        }
    }
}

/// The two boundary conditions with closed-form massless results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Twist {
    Periodic,
    Antiperiodic,
}

impl Twist {
    pub fn from_theta(theta: f64) -> Result<Self> {
        if theta == 0.0 {
            Ok(Twist::Periodic)
        } else if theta == 1.0 {
            Ok(Twist::Antiperiodic)
        } else {
            Err(Error::Unsupported(
                "only theta = 0 or theta = 1 has a closed form",
            ))
        }
    }

    pub fn theta(self) -> f64 {
        match self {
            Twist::Periodic => 0.0,
            Twist::Antiperiodic => 1.0,
        }
    }
}

/// Physical inputs in natural units. `beta = inf` means zero temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityConfig {
    pub dim: u32,
    pub length: f64,
    pub beta: f64,
    pub mass: f64,
    pub theta: f64,
}

impl CavityConfig {
    pub fn new(dim: u32, length: f64, beta: f64, mass: f64, theta: f64) -> Result<Self> {
        let cfg = CavityConfig {
            dim,
            length,
            beta,
            mass,
            theta,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Zero-temperature cavity.
    pub fn vacuum(dim: u32, length: f64, mass: f64, theta: f64) -> Result<Self> {
        Self::new(dim, length, f64::INFINITY, mass, theta)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::InvalidConfig("D must be at least 2"));
        }
        if !(self.length > 0.0) || !self.length.is_finite() {
            return Err(Error::InvalidConfig("L must be positive and finite"));
        }
        if !(self.beta > 0.0) {
            return Err(Error::InvalidConfig("beta must be positive (or infinite)"));
        }
        if !(self.mass >= 0.0) || !self.mass.is_finite() {
            return Err(Error::InvalidConfig("m must be finite and non-negative"));
        }
        if !(0.0..=1.0).contains(&self.theta) {
            return Err(Error::InvalidConfig("theta must lie in [0, 1]"));
        }
        Ok(())
    }

    pub fn is_thermal(&self) -> bool {
        self.beta.is_finite()
    }

    /// `xi = L T = L / beta`.
    pub fn xi(&self) -> f64 {
        self.length / self.beta
    }
}

/// `total == (vacuum + thermal) + cross` holds exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PressureBreakdown {
    pub vacuum: f64,
    pub thermal: f64,
    pub cross: f64,
    pub total: f64,
    pub terms_used: u64,
    /// Sum of the reported truncation bounds of all series involved.
    pub tail_estimate: f64,
}

impl PressureBreakdown {
    pub fn new(vacuum: f64, thermal: f64, cross: f64) -> Self {
        PressureBreakdown {
            vacuum,
            thermal,
            cross,
            total: (vacuum + thermal) + cross,
            terms_used: 0,
            tail_estimate: 0.0,
        }
    }

    pub(crate) fn with_diagnostics(mut self, terms_used: u64, tail_estimate: f64) -> Self {
        self.terms_used = terms_used;
        self.tail_estimate = tail_estimate;
        self
    }
}

/// Full pressure for any supported configuration, massive or massless.
pub fn pressure(
    field: FieldKind,
    cfg: &CavityConfig,
    ctrl: &SeriesControl,
) -> Result<PressureBreakdown> {
    cfg.validate()?;
    ctrl.validate()?;
    if cfg.mass > 0.0 {
        return thermal_pressure(field, cfg, ctrl);
    }
    if !cfg.is_thermal() {
        let v = massless_vacuum_pressure(field, cfg)?;
        return Ok(PressureBreakdown::new(v.value, 0.0, 0.0).with_diagnostics(v.terms_used, 0.0));
    }
    massless_breakdown(field, cfg, ctrl)
}
