use super::{CavityConfig, FieldKind, PressureBreakdown, Twist};
use crate::error::{Error, Result};
use crate::math::{exp, expm1, powf, powi};
use crate::series::{sum_pairs_until, sum_until, SeriesControl, SumResult};
use crate::specfun::{dirichlet_eta, gamma, riemann_zeta};
use core::f64::consts::PI;

const ZETA3: f64 = 1.202_056_903_159_594_2;

// B_0 .. B_20 (odd ones beyond B_1 vanish)
const BERNOULLI: [f64; 21] = [
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
    0.0,
    7.0 / 6.0,
    0.0,
    -3617.0 / 510.0,
    0.0,
    43867.0 / 798.0,
    0.0,
    -174611.0 / 330.0,
];

/// How a massless vacuum pressure was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MasslessMethod {
    /// Riemann zeta or Dirichlet eta closed form (`theta` in {0, 1}).
    ClosedForm,
    /// Bernoulli-polynomial closed form for even `D` and generic `theta`.
    BernoulliPolynomial,
    /// Direct summation of `sum cos(theta pi n) / n^D` with a
    /// summation-by-parts tail bound (odd `D`, generic `theta`).
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MasslessVacuum {
    pub value: f64,
    pub method: MasslessMethod,
    pub terms_used: u64,
}

/// `C_s(theta) = sum_{n >= 1} cos(theta pi n) / n^s` for integer `s >= 2`.
pub fn twisted_zeta(s: u32, theta: f64) -> Result<(f64, MasslessMethod, u64)> {
    if s < 2 {
        return Err(Error::Domain("twisted zeta needs s >= 2"));
    }
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::Domain("theta must lie in [0, 1]"));
    }
    let sf = s as f64;
    if theta == 0.0 {
        return Ok((riemann_zeta(sf)?, MasslessMethod::ClosedForm, 0));
    }
    if theta == 1.0 {
        return Ok((-dirichlet_eta(sf)?, MasslessMethod::ClosedForm, 0));
    }
    if s % 2 == 0 && (s as usize) < BERNOULLI.len() {
        // sum cos(2 pi n x)/n^{2k} = (-1)^{k-1} (2 pi)^{2k} B_{2k}(x) / (2 (2k)!)
        let k = s / 2;
        let x = theta / 2.0;
        let mut b = 0.0;
        let mut binom = 1.0;
        for (j, bj) in BERNOULLI.iter().enumerate().take(s as usize + 1) {
            b += binom * bj * powi(x, (s as usize - j) as i32);
            binom = binom * (s as usize - j) as f64 / (j + 1) as f64;
        }
        let mut fact = 1.0;
        for i in 2..=s {
            fact *= i as f64;
        }
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        let v = sign * powi(2.0 * PI, s as i32) * b / (2.0 * fact);
        return Ok((v, MasslessMethod::BernoulliPolynomial, 0));
    }
    // |sum_{k>n} cos(k a) / k^s| <= (n+1)^{-s} / sin(a/2) by Abel summation
    let half_sin = libm::sin(theta * PI / 2.0);
    let ctrl = SeriesControl::default()
        .with_rel_tol(1e-15)
        .with_max_terms(50_000_000);
    let r = sum_until(
        |n| crate::math::twist_weight(theta, n) / powf(n as f64, sf),
        |n| {
            let next = (n + 1) as f64;
            (powf(next, -sf) / half_sin).min(powf(n as f64, 1.0 - sf) / (sf - 1.0))
        },
        &ctrl,
    )
    .check("massless twisted sum")?;
    Ok((r.value, MasslessMethod::Series, r.terms_used))
}

/// `N (1-D) Gamma(D/2) pi^{-D/2} C_D(theta) / L^D`, the `m -> 0` limit of
/// the vacuum pressure.
pub fn massless_vacuum_pressure(field: FieldKind, cfg: &CavityConfig) -> Result<MasslessVacuum> {
    cfg.validate()?;
    let dim = cfg.dim as f64;
    let (cd, method, terms) = twisted_zeta(cfg.dim, cfg.theta)?;
    let value =
        field.degeneracy(cfg.dim) * (1.0 - dim) * gamma(dim / 2.0)? * powf(PI, -dim / 2.0) * cd
            / powf(cfg.length, dim);
    Ok(MasslessVacuum {
        value,
        method,
        terms_used: terms,
    })
}

/// Leading small-argument form of both Bessel sums,
/// `N [(1-D) Gamma(D/2) C_D - (mL)^2 Gamma(D/2-1) C_{D-2} / 2] pi^{-D/2} / L^D`.
pub fn small_mass_vacuum_pressure(field: FieldKind, cfg: &CavityConfig) -> Result<f64> {
    cfg.validate()?;
    if cfg.dim < 4 {
        return Err(Error::Unsupported("small-mass form needs D >= 4"));
    }
    let dim = cfg.dim as f64;
    let ml = cfg.mass * cfg.length;
    let (cd, _, _) = twisted_zeta(cfg.dim, cfg.theta)?;
    let (cd2, _, _) = twisted_zeta(cfg.dim - 2, cfg.theta)?;
    let lead = (1.0 - dim) * gamma(dim / 2.0)? * cd;
    let corr = 0.5 * gamma(dim / 2.0 - 1.0)? * ml * ml * cd2;
    Ok(field.degeneracy(cfg.dim) * (lead - corr) * powf(PI, -dim / 2.0) / powf(cfg.length, dim))
}

/// Massless thermal part `N Gamma(D/2) pi^{-D/2} C_D(theta_time) / beta^D`:
/// Stefan-Boltzmann `pi^2 / (90 beta^4)` for a scalar in `D = 4`.
pub fn massless_thermal_pressure(field: FieldKind, dim: u32, beta: f64) -> Result<f64> {
    if dim < 2 {
        return Err(Error::InvalidConfig("D must be at least 2"));
    }
    if !(beta > 0.0) {
        return Err(Error::InvalidConfig("beta must be positive"));
    }
    if beta.is_infinite() {
        return Ok(0.0);
    }
    let d = dim as f64;
    let (c, _, _) = twisted_zeta(dim, field.time_twist().theta())?;
    Ok(field.degeneracy(dim) * gamma(d / 2.0)? * powf(PI, -d / 2.0) * c / powf(beta, d))
}

/// `L^4` times the massless `D = 4` vacuum pressure:
/// `-pi^2/30`, `7 pi^2/240`, `-2 pi^2/15`, `7 pi^2/60`.
pub fn g_prefactor(field: FieldKind, twist: Twist) -> f64 {
    let pi2 = PI * PI;
    match (field, twist) {
        (FieldKind::Scalar, Twist::Periodic) => -pi2 / 30.0,
        (FieldKind::Scalar, Twist::Antiperiodic) => 7.0 * pi2 / 240.0,
        (FieldKind::Fermion, Twist::Periodic) => -2.0 * pi2 / 15.0,
        (FieldKind::Fermion, Twist::Antiperiodic) => 7.0 * pi2 / 60.0,
    }
}

/// `g = 1 + thermal + cross` in units of the vacuum term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GParts {
    pub thermal: f64,
    pub cross: f64,
    pub terms_used: u64,
    pub tail_estimate: f64,
}

impl GParts {
    pub fn g(&self) -> f64 {
        (1.0 + self.thermal) + self.cross
    }
}

// S_w(xi) = sum_{n1,n2 >= 1} w1(n1) w2(n2) (3 n1^2 - n2^2/xi^2) / (n1^2 + n2^2/xi^2)^3
//
// The n2 sum is done in closed form: with b = n1 xi and x = pi b,
//   sum_{n2 in Z} (3b^2 - n2^2)/(b^2 + n2^2)^3
//     = (pi/b^3) [coth x + x csch^2 x + x^2 coth x csch^2 x]
//   sum_{n2 in Z} (-1)^n2 (3b^2 - n2^2)/(b^2 + n2^2)^3
//     = (pi/(2 b^3)) csch x [x^2 + 2 x^2 csch^2 x + 2 x coth x + 2]
// leaving a single n1 sum whose remainder after the power-law pieces
// decays like e^{-2x} (periodic) or e^{-x} (antiperiodic).
fn lattice_s(alt1: bool, alt2: bool, xi: f64, ctrl: &SeriesControl) -> Result<SumResult> {
    let xi4 = powi(xi, 4);
    let w1 = |n: u64| if alt1 && n % 2 == 1 { -1.0 } else { 1.0 };
    // power-law parts: -3/2 sum w1/n1^4, plus (pi xi/2) sum w1/n1^3 when w2 = 1
    let z4 = if alt1 {
        -dirichlet_eta(4.0)?
    } else {
        riemann_zeta(4.0)?
    };
    let mut closed = -1.5 * z4;
    if !alt2 {
        let z3 = if alt1 { -0.75 * ZETA3 } else { ZETA3 };
        closed += 0.5 * PI * xi * z3;
    }

    let rate = if alt2 { PI * xi } else { 2.0 * PI * xi };
    let rho = exp(-rate);
    let remainder = |n: u64| {
        let b = n as f64 * xi;
        let x = PI * b;
        let e2 = exp(-2.0 * x);
        // csch^2 x = 4 e^{-2x} / (1 - e^{-2x})^2, coth x = (1 + e^{-2x}) / (1 - e^{-2x})
        let one_minus = -expm1(-2.0 * x);
        let coth = (1.0 + e2) / one_minus;
        let csch2 = 4.0 * e2 / (one_minus * one_minus);
        if alt2 {
            let csch = 2.0 * exp(-x) / one_minus;
            PI / (2.0 * b * b * b) * csch * (x * x + 2.0 * x * x * csch2 + 2.0 * x * coth + 2.0)
        } else {
            PI / (b * b * b) * (2.0 * e2 / one_minus + x * csch2 + x * x * coth * csch2)
        }
    };
    // remainder(b) e^{rate n} is non-increasing in n, so the tail after n
    // is at most remainder(n) rho / (1 - rho)
    let last = core::cell::Cell::new(f64::INFINITY);
    let term = |n: u64| {
        let r = remainder(n);
        last.set(r);
        w1(n) * r
    };
    let tail = |_| {
        let r = last.get();
        if r == 0.0 {
            0.0
        } else {
            0.5 * xi4 * r * rho / (1.0 - rho)
        }
    };
    // the tolerance refers to S, not to the remainder sum
    let scale = 0.5 * xi4;
    let sum = if alt1 {
        sum_pairs_until(|n| scale * term(n), tail, ctrl)
    } else {
        sum_until(|n| scale * term(n), tail, ctrl)
    };
    let sum = sum.check("g-function lattice sum")?;
    Ok(SumResult {
        value: closed + sum.value,
        ..sum
    })
}

/// Thermal and cross parts of `g(xi)` for the massless field in `D = 4`.
pub fn g_parts(field: FieldKind, twist: Twist, xi: f64, ctrl: &SeriesControl) -> Result<GParts> {
    if !(xi > 0.0) || !xi.is_finite() {
        return Err(Error::Domain("g needs a positive finite xi"));
    }
    ctrl.validate()?;
    let pi4 = powi(PI, 4);
    let xi4 = powi(xi, 4);
    let (thermal, cross_coef, alt1, alt2) = match (field, twist) {
        (FieldKind::Scalar, Twist::Periodic) => (-xi4 / 3.0, 60.0 / pi4, false, false),
        (FieldKind::Scalar, Twist::Antiperiodic) => {
            (8.0 * xi4 / 21.0, -480.0 / (7.0 * pi4), true, false)
        }
        (FieldKind::Fermion, Twist::Periodic) => (7.0 * xi4 / 24.0, 60.0 / pi4, false, true),
        (FieldKind::Fermion, Twist::Antiperiodic) => (-xi4 / 3.0, -480.0 / (7.0 * pi4), true, true),
    };
    let s = lattice_s(alt1, alt2, xi, ctrl)?;
    Ok(GParts {
        thermal,
        cross: cross_coef * s.value,
        terms_used: s.terms_used,
        tail_estimate: cross_coef.abs() * s.tail_estimate,
    })
}

/// Dimensionless profile with total pressure `g_prefactor / L^4 * g(xi)`,
/// `xi = L T`.
pub fn g_function(field: FieldKind, twist: Twist, xi: f64, ctrl: &SeriesControl) -> Result<f64> {
    g_parts(field, twist, xi, ctrl).map(|p| p.g())
}

/// Vacuum, thermal and cross components of the massless `D = 4` pressure.
pub fn massless_breakdown(
    field: FieldKind,
    cfg: &CavityConfig,
    ctrl: &SeriesControl,
) -> Result<PressureBreakdown> {
    cfg.validate()?;
    if cfg.mass != 0.0 {
        return Err(Error::Domain("massless breakdown needs m = 0"));
    }
    let vac = massless_vacuum_pressure(field, cfg)?;
    if !cfg.is_thermal() {
        return Ok(PressureBreakdown::new(vac.value, 0.0, 0.0));
    }
    if cfg.dim != 4 {
        return Err(Error::Unsupported(
            "massless thermal pressure is implemented for D = 4",
        ));
    }
    let twist = Twist::from_theta(cfg.theta)?;
    let parts = g_parts(field, twist, cfg.xi(), ctrl)?;
    let scale = g_prefactor(field, twist) / powi(cfg.length, 4);
    let thermal = massless_thermal_pressure(field, 4, cfg.beta)?;
    Ok(
        PressureBreakdown::new(vac.value, thermal, scale * parts.cross)
            .with_diagnostics(parts.terms_used, scale.abs() * parts.tail_estimate),
    )
}

/// Scalar plates with Dirichlet walls at separation `a = cfg.length`: the
/// periodic result at `L = 2a`, doubled for the two photon polarisations.
pub fn dirichlet_pressure(cfg: &CavityConfig, electromagnetic: bool) -> Result<f64> {
    cfg.validate()?;
    if cfg.mass != 0.0 || cfg.theta != 0.0 {
        return Err(Error::Unsupported(
            "Dirichlet mapping needs a massless periodic field",
        ));
    }
    let mapped = CavityConfig {
        length: 2.0 * cfg.length,
        beta: f64::INFINITY,
        ..*cfg
    };
    let p = massless_vacuum_pressure(FieldKind::Scalar, &mapped)?.value;
    Ok(if electromagnetic { 2.0 * p } else { p })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn d4_closed_forms() {
        let pi2 = PI * PI;
        for (field, theta, exact) in [
            (FieldKind::Scalar, 0.0, -pi2 / 30.0),
            (FieldKind::Scalar, 1.0, 7.0 * pi2 / 240.0),
            (FieldKind::Fermion, 0.0, -2.0 * pi2 / 15.0),
            (FieldKind::Fermion, 1.0, 7.0 * pi2 / 60.0),
        ] {
            let cfg = CavityConfig::vacuum(4, 1.0, 0.0, theta).unwrap();
            let v = massless_vacuum_pressure(field, &cfg).unwrap();
            assert!((v.value - exact).abs() < 1e-14);
            assert_eq!(v.method, MasslessMethod::ClosedForm);
            assert_eq!(g_prefactor(field, Twist::from_theta(theta).unwrap()), exact);
        }
        let cfg = CavityConfig::vacuum(4, 2.0, 0.0, 1.0).unwrap();
        let v = massless_vacuum_pressure(FieldKind::Fermion, &cfg)
            .unwrap()
            .value;
        assert!(rel(v, 7.0 * pi2 / (60.0 * 16.0)) < 1e-14);
    }

    #[test]
    fn bernoulli_route_matches_series() {
        for theta in [0.1, 0.37, 0.5, 0.9] {
            for s in [2u32, 4, 6] {
                let (closed, m, _) = twisted_zeta(s, theta).unwrap();
                assert_eq!(m, MasslessMethod::BernoulliPolynomial);
                let direct: f64 = (1..200_000u64)
                    .map(|n| crate::math::cos(theta * PI * n as f64) / (n as f64).powi(s as i32))
                    .sum();
                assert!(
                    (closed - direct).abs() < 1e-9,
                    "s={s} theta={theta}: {closed} vs {direct}"
                );
            }
        }
        // continuity into the closed forms at the end points
        let (near0, _, _) = twisted_zeta(4, 1e-9).unwrap();
        assert!((near0 - riemann_zeta(4.0).unwrap()).abs() < 1e-12);
        let (near1, _, _) = twisted_zeta(4, 1.0 - 1e-9).unwrap();
        assert!((near1 + dirichlet_eta(4.0).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn odd_dimension_uses_series() {
        let (v, m, n) = twisted_zeta(3, 0.5).unwrap();
        assert_eq!(m, MasslessMethod::Series);
        assert!(n > 0);
        // sum cos(pi n/2)/n^3 = -eta(3)/8 (only even n survive, alternating)
        assert!((v + 0.75 * ZETA3 / 8.0).abs() < 1e-13);
    }

    #[test]
    fn stefan_boltzmann() {
        let t = massless_thermal_pressure(FieldKind::Scalar, 4, 2.0).unwrap();
        assert!(rel(t, PI * PI / (90.0 * 16.0)) < 1e-14);
        let f = massless_thermal_pressure(FieldKind::Fermion, 4, 1.0).unwrap();
        assert!(rel(f, -7.0 * PI * PI / 180.0) < 1e-14);
    }

    #[test]
    fn closed_form_inner_sums() {
        // compare lattice_s against a plain box sum with a generous cutoff
        let ctrl = SeriesControl::default();
        for (alt1, alt2) in [(false, false), (true, false), (false, true), (true, true)] {
            let xi = 1.3;
            let s = lattice_s(alt1, alt2, xi, &ctrl).unwrap().value;
            let mut box_sum = 0.0;
            let n = 3000u64;
            for n1 in 1..=n {
                for n2 in 1..=n {
                    let (a, b) = (n1 as f64, n2 as f64 / xi);
                    let mut t = (3.0 * a * a - b * b) / (a * a + b * b).powi(3);
                    if alt1 && n1 % 2 == 1 {
                        t = -t;
                    }
                    if alt2 && n2 % 2 == 1 {
                        t = -t;
                    }
                    box_sum += t;
                }
            }
            assert!(
                (s - box_sum).abs() < 1e-6,
                "{alt1} {alt2}: {s} vs {box_sum}"
            );
        }
    }

    #[test]
    fn g_reference_values() {
        let ctrl = SeriesControl::default();
        let g = |xi| g_function(FieldKind::Scalar, Twist::Periodic, xi, &ctrl).unwrap();
        assert!((g(0.5) - 0.999_933_40).abs() < 1e-8);
        assert!((g(1.0) - 0.928_067_18).abs() < 1e-8);
        assert!((g(1.5) - 0.069_917_62).abs() < 1e-8);
        let f = g_function(FieldKind::Fermion, Twist::Antiperiodic, 1.0, &ctrl).unwrap();
        assert!((f - 0.530_324_10).abs() < 1e-8);
        let tight = SeriesControl::default().with_rel_tol(1e-14);
        for xi in [1e-3, 1e-2, 0.1] {
            let g = g_function(FieldKind::Scalar, Twist::Periodic, xi, &tight).unwrap();
            assert!((g - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn dirichlet_mapping() {
        let cfg = CavityConfig::vacuum(4, 1.0, 0.0, 0.0).unwrap();
        let pi2 = PI * PI;
        assert!((dirichlet_pressure(&cfg, false).unwrap() + pi2 / 480.0).abs() < 1e-15);
        assert!((dirichlet_pressure(&cfg, true).unwrap() + pi2 / 240.0).abs() < 1e-15);
        let half = CavityConfig { length: 0.5, ..cfg };
        assert!((dirichlet_pressure(&half, false).unwrap() + pi2 / 30.0).abs() < 1e-14);
    }

    #[test]
    fn breakdown_matches_g() {
        let ctrl = SeriesControl::default();
        let cfg = CavityConfig::new(4, 1.2, 0.8, 0.0, 1.0).unwrap();
        let b = massless_breakdown(FieldKind::Fermion, &cfg, &ctrl).unwrap();
        let g = g_function(FieldKind::Fermion, Twist::Antiperiodic, 1.5, &ctrl).unwrap();
        let expect = g_prefactor(FieldKind::Fermion, Twist::Antiperiodic) * g / 1.2f64.powi(4);
        assert!(rel(b.total, expect) < 1e-13);
        assert_eq!(b.total, (b.vacuum + b.thermal) + b.cross);
    }
}
