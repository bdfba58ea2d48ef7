use core::cell::Cell;

use super::{CavityConfig, FieldKind, PressureBreakdown};
use crate::error::{Error, Result};
use crate::math::{exp, powf, sqrt, twist_weight};
use crate::series::{sum_lattice2, sum_pairs_until, sum_until, Lattice2, SeriesControl, SumResult};
use crate::specfun::{bessel_k, bessel_k_pair, BesselOrder};
use core::f64::consts::PI;

fn require_mass(cfg: &CavityConfig) -> Result<()> {
    cfg.validate()?;
    if cfg.mass > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(
            "massive pressure needs m > 0; use the massless routes",
        ))
    }
}

// Sum term(n) for n >= 1 where |term(k)| <= envelope(n) e^{-rate (k - n)}
// for every k >= n; `envelope` is recorded by `term` as it goes.
fn sum_exp_series<T>(alternating: bool, rate: f64, ctrl: &SeriesControl, mut term: T) -> SumResult
where
    T: FnMut(u64) -> (f64, f64),
{
    let envelope = Cell::new(f64::INFINITY);
    let rho = exp(-rate);
    let t = |n: u64| {
        let (v, env) = term(n);
        envelope.set(env);
        v
    };
    let tail = |_| {
        let e = envelope.get();
        if e == 0.0 {
            0.0
        } else {
            e * rho / (1.0 - rho)
        }
    };
    if alternating {
        sum_pairs_until(t, tail, ctrl)
    } else {
        sum_until(t, tail, ctrl)
    }
}

/// Zero-temperature pressure
/// `N 2 (m/2piL)^{D/2} sum_n cos(theta pi n) [(1-D) K_{D/2}(mnL)/n^{D/2} - mL K_{D/2-1}(mnL)/n^{D/2-1}]`.
pub fn vacuum_pressure(
    field: FieldKind,
    cfg: &CavityConfig,
    ctrl: &SeriesControl,
) -> Result<SumResult> {
    require_mass(cfg)?;
    ctrl.validate()?;
    let dim = cfg.dim as f64;
    let half = dim / 2.0;
    let ml = cfg.mass * cfg.length;
    let lower = BesselOrder::from_twice(cfg.dim as i64 - 2);
    let mut failure = None;

    // x^{-D/2} K_{D/2}(x) and x^{1-D/2} K_{D/2-1}(x) both decay faster than e^{-x}
    let r = sum_exp_series(cfg.theta != 0.0, ml, ctrl, |n| {
        let nf = n as f64;
        let (k_lo, k_hi) = match bessel_k_pair(lower, ml * nf) {
            Ok(p) => p,
            Err(e) => {
                failure.get_or_insert(e);
                return (0.0, 0.0);
            }
        };
        let a = (1.0 - dim) * k_hi / powf(nf, half);
        let b = ml * k_lo / powf(nf, half - 1.0);
        (twist_weight(cfg.theta, n) * (a - b), a.abs() + b.abs())
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let r = r.check("vacuum pressure series")?;
    let pre = 2.0 * powf(cfg.mass / (2.0 * PI * cfg.length), half) * field.degeneracy(cfg.dim);
    Ok(r.scaled(pre))
}

/// Pure thermal part `N 2 (m/2pi beta)^{D/2} sum_n w(n) K_{D/2}(m beta n)/n^{D/2}`,
/// `w = 1` for scalars and `(-1)^n` for fermions.
pub fn thermal_component(
    field: FieldKind,
    cfg: &CavityConfig,
    ctrl: &SeriesControl,
) -> Result<SumResult> {
    require_mass(cfg)?;
    ctrl.validate()?;
    if !cfg.is_thermal() {
        return Ok(SumResult::exact(0.0));
    }
    let half = cfg.dim as f64 / 2.0;
    let mb = cfg.mass * cfg.beta;
    let order = BesselOrder::from_twice(cfg.dim as i64);
    let tw = field.time_twist().theta();
    let mut failure = None;
    let r = sum_exp_series(tw != 0.0, mb, ctrl, |n| {
        let nf = n as f64;
        let k = match bessel_k(order, mb * nf) {
            Ok(k) => k,
            Err(e) => {
                failure.get_or_insert(e);
                return (0.0, 0.0);
            }
        };
        let a = k / powf(nf, half);
        (twist_weight(tw, n) * a, a)
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let r = r.check("thermal pressure series")?;
    let pre = 2.0 * powf(cfg.mass / (2.0 * PI * cfg.beta), half) * field.degeneracy(cfg.dim);
    Ok(r.scaled(pre))
}

/// Cross term
/// `N 4 (m/2pi)^{D/2} sum_{n1,n2>=1} w(n2) cos(theta pi n1)
///  [((1-D) n1^2 L^2 + n2^2 beta^2) r^{-D/2-2} K_{D/2}(mr) - m n1^2 L^2 r^{-D/2-1} K_{D/2-1}(mr)]`
/// with `r^2 = n1^2 L^2 + n2^2 beta^2`.
pub fn cross_component(
    field: FieldKind,
    cfg: &CavityConfig,
    ctrl: &SeriesControl,
) -> Result<SumResult> {
    require_mass(cfg)?;
    ctrl.validate()?;
    if !cfg.is_thermal() {
        return Ok(SumResult::exact(0.0));
    }
    let dim = cfg.dim as f64;
    let half = dim / 2.0;
    let m = cfg.mass;
    let (l, b) = (cfg.length, cfg.beta);
    let lower = BesselOrder::from_twice(cfg.dim as i64 - 2);
    let tw = field.time_twist().theta();
    let failure: Cell<Option<Error>> = Cell::new(None);
    let record = |e: Error| {
        let prev = failure.take();
        failure.set(Some(prev.unwrap_or(e)));
    };

    let term = |n1: u64, n2: u64| {
        let x = n1 as f64 * l;
        let y = n2 as f64 * b;
        let r2 = x * x + y * y;
        let r = sqrt(r2);
        let (k_lo, k_hi) = match bessel_k_pair(lower, m * r) {
            Ok(p) => p,
            Err(e) => {
                record(e);
                return 0.0;
            }
        };
        let rp = powf(r, -half);
        let v = ((1.0 - dim) * x * x + y * y) / r2 * rp * k_hi - m * x * x / r * rp * k_lo;
        twist_weight(cfg.theta, n1) * twist_weight(tw, n2) * v
    };
    // |(1-D) x^2 + y^2| <= max(D-1, 1) r^2 and x^2 <= r^2
    let coef = (dim - 1.0).max(1.0);
    let bound = |r: f64| match bessel_k_pair(lower, m * r) {
        Ok((k_lo, k_hi)) => powf(r, -half) * (coef * k_hi + m * r * k_lo),
        Err(_) => f64::INFINITY,
    };
    let lat = Lattice2 {
        unit: [l, b],
        decay: m,
        valid_from: 0.0,
    };
    let r = sum_lattice2(&lat, ctrl, term, bound);
    if let Some(e) = failure.take() {
        return Err(e);
    }
    let r = r.check("cross-term double sum")?;
    let pre = 4.0 * powf(m / (2.0 * PI), half) * field.degeneracy(cfg.dim);
    Ok(r.scaled(pre))
}

/// Vacuum, thermal and cross components for a massive field. With
/// `beta = inf` only the vacuum part is non-zero.
pub fn thermal_pressure(
    field: FieldKind,
    cfg: &CavityConfig,
    ctrl: &SeriesControl,
) -> Result<PressureBreakdown> {
    let v = vacuum_pressure(field, cfg, ctrl)?;
    let t = thermal_component(field, cfg, ctrl)?;
    let c = cross_component(field, cfg, ctrl)?;
    Ok(
        PressureBreakdown::new(v.value, t.value, c.value).with_diagnostics(
            v.terms_used + t.terms_used + c.terms_used,
            v.tail_estimate + t.tail_estimate + c.tail_estimate,
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn heavy_field_is_exponentially_suppressed() {
        let cfg = CavityConfig::vacuum(4, 10.0, 10.0, 0.0).unwrap();
        let p = vacuum_pressure(FieldKind::Scalar, &cfg, &SeriesControl::default()).unwrap();
        let pre = 2.0 * (10.0 / (2.0 * PI * 10.0)).powi(2);
        assert!(p.value < 0.0);
        assert!(p.value.abs() < exp(-100.0) * pre * (100.0 + 3.0));
        // leading term dominates
        let lead = pre
            * (-3.0 * bessel_k(BesselOrder::integer(2), 100.0).unwrap()
                - 100.0 * bessel_k(BesselOrder::integer(1), 100.0).unwrap());
        assert!(rel(p.value, lead) < 1e-12);
    }

    #[test]
    fn fermion_vacuum_is_degeneracy_times_scalar() {
        let ctrl = SeriesControl::default();
        let cfg = CavityConfig::vacuum(4, 1.3, 0.7, 0.4).unwrap();
        let s = vacuum_pressure(FieldKind::Scalar, &cfg, &ctrl)
            .unwrap()
            .value;
        let f = vacuum_pressure(FieldKind::Fermion, &cfg, &ctrl)
            .unwrap()
            .value;
        assert!(rel(f / s, 4.0) < 1e-14);
    }

    #[test]
    fn massless_callers_are_redirected() {
        let cfg = CavityConfig::vacuum(4, 1.0, 0.0, 0.0).unwrap();
        assert!(vacuum_pressure(FieldKind::Scalar, &cfg, &SeriesControl::default()).is_err());
    }

    #[test]
    fn cold_bath_leaves_vacuum() {
        let ctrl = SeriesControl::default();
        let cfg = CavityConfig::new(4, 1.0, 60.0, 1.0, 0.0).unwrap();
        let b = thermal_pressure(FieldKind::Scalar, &cfg, &ctrl).unwrap();
        assert!(b.thermal.abs() < 1e-20 && b.cross.abs() < 1e-20);
        let zero_t = thermal_pressure(
            FieldKind::Scalar,
            &CavityConfig {
                beta: f64::INFINITY,
                ..cfg
            },
            &ctrl,
        )
        .unwrap();
        assert_eq!(zero_t.thermal, 0.0);
        assert_eq!(zero_t.cross, 0.0);
        assert!(rel(b.total, zero_t.total) < 1e-12);
    }

    #[test]
    fn antiperiodic_time_makes_fermion_thermal_negative() {
        let ctrl = SeriesControl::default();
        let cfg = CavityConfig::new(4, 1.0, 1.0, 0.5, 0.0).unwrap();
        assert!(
            thermal_component(FieldKind::Scalar, &cfg, &ctrl)
                .unwrap()
                .value
                > 0.0
        );
        assert!(
            thermal_component(FieldKind::Fermion, &cfg, &ctrl)
                .unwrap()
                .value
                < 0.0
        );
    }
}
