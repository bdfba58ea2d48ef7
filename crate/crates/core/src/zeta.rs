//! Epstein-Hurwitz zeta functions
//!
//! ```text
//! Z_d^{c^2}(nu; a; theta) = sum_{n in Z^d} (c^2 + sum_i a_i (n_i + theta_i/2)^2)^{-nu}
//! ```
//!
//! by the defining lattice sum (where it converges) and by the Bessel-series
//! continuation
//!
//! ```text
//! Gamma(nu) Z = 2 pi^{d/2} / sqrt(prod a) * [ Gamma(nu - d/2) / (2 c^{2nu-d})
//!     + sum_{S nonempty} 2^{|S|} sum_{n_i >= 1, i in S}
//!       (pi R / c)^{nu-d/2} prod cos(theta_i pi n_i) K_{nu-d/2}(2 pi c R) ]
//! ```
//!
//! with `R^2 = sum_{i in S} n_i^2 / a_i`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{powf, sqrt, twist_weight};
use crate::series::{
    geometric_tail, quad, sum_lattice2, sum_orthant_shells, CompensatedSum, Lattice2,
    SeriesControl, SumResult,
};
use crate::specfun::{bessel_k, gamma, BesselOrder};
use core::f64::consts::PI;

#[derive(Debug, Clone, PartialEq)]
pub struct ZetaParams {
    pub nu: f64,
    pub c: f64,
    pub a: Vec<f64>,
    pub theta: Vec<f64>,
}

impl ZetaParams {
    pub fn new(nu: f64, c: f64, a: &[f64], theta: &[f64]) -> Result<Self> {
        let p = ZetaParams {
            nu,
            c,
            a: a.to_vec(),
            theta: theta.to_vec(),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn d(&self) -> usize {
        self.a.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.a.is_empty() {
            return Err(Error::InvalidConfig("zeta needs d >= 1"));
        }
        if self.a.len() != self.theta.len() {
            return Err(Error::InvalidConfig(
                "a and theta must have the same length",
            ));
        }
        if !self.nu.is_finite() {
            return Err(Error::InvalidConfig("nu must be finite"));
        }
        if !(self.c >= 0.0) || !self.c.is_finite() {
            return Err(Error::InvalidConfig("c must be finite and non-negative"));
        }
        if self.a.iter().any(|&a| !(a > 0.0) || !a.is_finite()) {
            return Err(Error::InvalidConfig("every a_i must be positive"));
        }
        if self.theta.iter().any(|&t| !(0.0..=1.0).contains(&t)) {
            return Err(Error::InvalidConfig("every theta_i must lie in [0, 1]"));
        }
        Ok(())
    }
}

/// Defining lattice sum for `d = 1, 2`. The box `|n_i| <= N` is summed
/// exactly and the remainder replaced by Euler-Maclaurin end corrections
/// (d = 1, and the rows of d = 2) and by the exact line integral over the
/// rows outside the box (d = 2). `N` is doubled until two successive
/// estimates agree to `ctrl.rel_tol`.
pub fn zeta_direct(p: &ZetaParams, ctrl: &SeriesControl) -> Result<SumResult> {
    p.validate()?;
    ctrl.validate()?;
    let d = p.d();
    if d > 2 {
        return Err(Error::Unsupported(
            "direct zeta sum is implemented for d <= 2",
        ));
    }
    if !(p.nu > d as f64 / 2.0) {
        return Err(Error::Domain("direct zeta sum needs nu > d/2"));
    }
    if p.c == 0.0 && p.theta.contains(&0.0) {
        return Err(Error::Domain(
            "direct zeta sum has a singular n = 0 term at c = 0",
        ));
    }

    let mut n = 16u64;
    let mut prev = f64::NAN;
    loop {
        let cost = if d == 1 {
            2 * n + 1
        } else {
            (2 * n + 1) * (2 * n + 1)
        };
        if cost > ctrl.max_terms {
            return Err(Error::NotConverged {
                what: "direct zeta sum",
                terms: cost,
                tail_estimate: f64::INFINITY,
            });
        }
        let value = if d == 1 {
            direct_1d(p.nu, p.c * p.c, p.a[0], p.theta[0], n)
        } else {
            direct_2d(p, n)?
        };
        let change = (value - prev).abs();
        if change <= ctrl.target(value) {
            return Ok(SumResult {
                value,
                terms_used: cost,
                tail_estimate: change,
                converged: true,
            });
        }
        prev = value;
        n *= 2;
    }
}

// Full sum over n in Z of (b + a (n + s)^2)^{-nu}, truncated at |n| <= n_max.
fn direct_1d(nu: f64, b: f64, a: f64, theta: f64, n_max: u64) -> f64 {
    let s = theta / 2.0;
    let f = |x: f64| powf(b + a * x * x, -nu);
    let mut acc = CompensatedSum::new();
    let nm = n_max as i64;
    for k in -nm..=nm {
        acc.add(f(k as f64 + s));
    }
    // right tail starts at x = N + s, left tail at x = N - s (by symmetry of f)
    acc.add(em_tail(nu, b, a, n_max as f64 + s));
    acc.add(em_tail(nu, b, a, n_max as f64 - s));
    acc.value()
}

// sum_{k >= 1} f(x0 + k) with f(x) = (b + a x^2)^{-nu}, x0 > 0, by
// integral_{x0}^inf f - f(x0)/2 - f'(x0)/12 + f'''(x0)/720.
fn em_tail(nu: f64, b: f64, a: f64, x0: f64) -> f64 {
    let u = b + a * x0 * x0;
    let f0 = powf(u, -nu);
    let f1 = -2.0 * nu * a * x0 * powf(u, -nu - 1.0);
    // f''' = -4 nu (nu+1) a^2 x (u^{-nu-2}) (3 - 2 (nu+2) a x^2 / u)
    let f3 = -4.0
        * nu
        * (nu + 1.0)
        * a
        * a
        * x0
        * powf(u, -nu - 2.0)
        * (3.0 - 2.0 * (nu + 2.0) * a * x0 * x0 / u);
    line_integral_from(nu, b, a, x0) - 0.5 * f0 - f1 / 12.0 + f3 / 720.0
}

// integral_{x0}^inf (b + a x^2)^{-nu} dx through x = x0 / t.
fn line_integral_from(nu: f64, b: f64, a: f64, x0: f64) -> f64 {
    let r = quad::integrate(
        |t| {
            if t <= 0.0 {
                return 0.0;
            }
            let x = x0 / t;
            x0 / (t * t) * powf(b + a * x * x, -nu)
        },
        0.0,
        1.0,
        0.0,
        1e-14,
        400,
    );
    r.value
}

fn direct_2d(p: &ZetaParams, n_max: u64) -> Result<f64> {
    let nu = p.nu;
    let c2 = p.c * p.c;
    let [a1, a2] = [p.a[0], p.a[1]];
    let s1 = p.theta[0] / 2.0;
    let nm = n_max as i64;

    // rows inside the box, each summed over all n2
    let mut acc = CompensatedSum::new();
    for k1 in -nm..=nm {
        let x1 = k1 as f64 + s1;
        let b = c2 + a1 * x1 * x1;
        acc.add(direct_1d(nu, b, a2, p.theta[1], n_max));
    }

    // rows outside: sum_{n2} f is the line integral up to terms of order
    // exp(-2 pi sqrt(b / a2)), and b grows like a1 N^2 there
    let line = sqrt(PI / a2) * gamma(nu - 0.5)? / gamma(nu)?;
    let h = |x: f64| line * powf(c2 + a1 * x * x, 0.5 - nu);
    let outer = |x0: f64| {
        // sum_{k >= 1} h(x0 + k) by explicit terms then Euler-Maclaurin
        let mut s = CompensatedSum::new();
        let extra = 4 * n_max;
        for k in 1..=extra {
            s.add(h(x0 + k as f64));
        }
        s.add(em_tail(nu - 0.5, c2, a1, x0 + extra as f64) * line);
        s.value()
    };
    acc.add(outer(n_max as f64 + s1));
    acc.add(outer(n_max as f64 - s1));
    Ok(acc.value())
}

/// Continuation scaled by `Gamma(nu)`: `Gamma(nu) Z = bulk + lattice`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaParts {
    /// `pi^{d/2} Gamma(nu - d/2) c^{d - 2nu} / sqrt(prod a)`; `None` at a
    /// pole of `Gamma(nu - d/2)`.
    pub bulk: Option<f64>,
    /// Everything else: the exponentially convergent Bessel sums.
    pub lattice: SumResult,
}

impl ZetaParts {
    pub fn scaled_total(&self) -> Result<f64> {
        match self.bulk {
            Some(b) => Ok(b + self.lattice.value),
            None => Err(Error::Pole("Gamma(nu - d/2) in the bulk term")),
        }
    }
}

// A summand x^p K_q(x) e^{kappa x} is non-increasing for x >= (p + |q|) / (1 - kappa).
// Returns (decay in R, valid_from in R) for x = 2 pi c R.
fn decay_profile(p: f64, q: f64, c: f64) -> (f64, f64) {
    let s = p + q.abs();
    if s <= 0.0 {
        (2.0 * PI * c, 0.0)
    } else {
        (PI * c, 2.0 * s / (2.0 * PI * c))
    }
}

fn prefactor(p: &ZetaParams) -> f64 {
    let prod: f64 = p.a.iter().product();
    2.0 * powf(PI, p.d() as f64 / 2.0) / sqrt(prod)
}

fn check_continuation(p: &ZetaParams, ctrl: &SeriesControl) -> Result<(f64, BesselOrder)> {
    p.validate()?;
    ctrl.validate()?;
    if !(p.c > 0.0) {
        return Err(Error::Domain("zeta continuation needs c > 0"));
    }
    let mu = p.nu - p.d() as f64 / 2.0;
    let order = BesselOrder::from_nu(mu)?;
    Ok((mu, order))
}

/// `Gamma(nu) Z` split into bulk and lattice parts.
pub fn zeta_continued_parts(p: &ZetaParams, ctrl: &SeriesControl) -> Result<ZetaParts> {
    let (mu, order) = check_continuation(p, ctrl)?;
    let c = p.c;
    let pre = prefactor(p);
    let bulk = match gamma(mu) {
        Ok(g) => Some(pre * g / (2.0 * powf(c, 2.0 * mu))),
        Err(Error::Pole(_)) => None,
        Err(e) => return Err(e),
    };
    // (pi R / c)^mu K_mu(2 pi c R) = (x / 2c^2)^mu K_mu(x)
    let kernel = |r: f64| -> Result<f64> {
        let x = 2.0 * PI * c * r;
        Ok(powf(x / (2.0 * c * c), mu) * bessel_k(order, x)?)
    };
    let (decay, valid_from) = decay_profile(mu, mu, c);
    let lattice = subset_sums(p, ctrl, decay, valid_from, &|_, r| kernel(r), &|r| {
        kernel(r)
    })?;
    Ok(ZetaParts {
        bulk,
        lattice: lattice.scaled(pre),
    })
}

/// Continued `Z`, failing with [`Error::Pole`] where the bulk term or
/// `1/Gamma(nu)` is singular.
pub fn zeta_continued(p: &ZetaParams, ctrl: &SeriesControl) -> Result<f64> {
    let parts = zeta_continued_parts(p, ctrl)?;
    let g = gamma(p.nu)?;
    Ok(parts.scaled_total()? / g)
}

/// `d/da_2` of `Gamma(nu) Z` for `d = 2`, split like [`ZetaParts`].
pub fn zeta_continued_da2_parts(p: &ZetaParams, ctrl: &SeriesControl) -> Result<ZetaParts> {
    if p.d() != 2 {
        return Err(Error::Unsupported("a_2 derivative is defined for d = 2"));
    }
    let (mu, _) = check_continuation(p, ctrl)?;
    let lower = BesselOrder::from_nu(mu - 1.0)?;
    let c = p.c;
    let a2 = p.a[1];
    let pre = prefactor(p);
    let base = zeta_continued_parts(p, ctrl)?;

    // d/da2 of (x/2c^2)^mu K_mu(x) at x = 2 pi c R equals
    // (x/2c^2)^mu K_{mu-1}(x) * (-dx/da2); dx/da2 = -x/(2 a2) on the
    // n2-only sum and -pi c n2^2 / (a2^2 R) on the double sum.
    let dkernel = |n: &[u64], r: f64| -> Result<f64> {
        let x = 2.0 * PI * c * r;
        let core = powf(x / (2.0 * c * c), mu) * bessel_k(lower, x)?;
        let dx = match n {
            [0, _] => x / (2.0 * a2),
            [_, n2] => {
                let n2 = *n2 as f64;
                PI * c * n2 * n2 / (a2 * a2 * r)
            }
            _ => unreachable!(),
        };
        Ok(core * dx)
    };
    // |dx| <= 2 pi c r / (2 a2) on both branches since n2^2/a2 <= r^2
    let bound = |r: f64| -> Result<f64> {
        let x = 2.0 * PI * c * r;
        Ok(powf(x / (2.0 * c * c), mu) * bessel_k(lower, x)? * x / (2.0 * a2))
    };
    let (decay, valid_from) = decay_profile(mu + 1.0, mu - 1.0, c);
    let own = subset_sums_with(p, ctrl, decay, valid_from, &dkernel, &bound, |set| set[1])?;

    let bulk = base.bulk.map(|b| -b / (2.0 * a2));
    let lattice = base
        .lattice
        .scaled(-1.0 / (2.0 * a2))
        .merge(own.scaled(pre));
    Ok(ZetaParts { bulk, lattice })
}

/// `dZ/da_2` by term-wise differentiation of the continuation.
pub fn zeta_continued_da2(p: &ZetaParams, ctrl: &SeriesControl) -> Result<f64> {
    let parts = zeta_continued_da2_parts(p, ctrl)?;
    Ok(parts.scaled_total()? / gamma(p.nu)?)
}

// Sum over nonempty subsets S of 2^|S| sum_{n in N^S} prod cos(theta_i pi n_i) term(n, R).
fn subset_sums(
    p: &ZetaParams,
    ctrl: &SeriesControl,
    decay: f64,
    valid_from: f64,
    term: &dyn Fn(&[u64], f64) -> Result<f64>,
    bound: &dyn Fn(f64) -> Result<f64>,
) -> Result<SumResult> {
    subset_sums_with(p, ctrl, decay, valid_from, term, bound, |_| true)
}

// As subset_sums, restricted to the subsets accepted by `keep`. `term`
// receives the full index vector with zeros outside S.
fn subset_sums_with(
    p: &ZetaParams,
    ctrl: &SeriesControl,
    decay: f64,
    valid_from: f64,
    term: &dyn Fn(&[u64], f64) -> Result<f64>,
    bound: &dyn Fn(f64) -> Result<f64>,
    keep: impl Fn(&[bool]) -> bool,
) -> Result<SumResult> {
    let d = p.d();
    let unit: Vec<f64> = p.a.iter().map(|&a| 1.0 / sqrt(a)).collect();
    let mut total = SumResult::exact(0.0);
    let mut failure: Option<Error> = None;

    for mask in 1u32..(1u32 << d) {
        let set: Vec<bool> = (0..d).map(|i| mask & (1 << i) != 0).collect();
        if !keep(&set) {
            continue;
        }
        let dims: Vec<usize> = (0..d).filter(|&i| set[i]).collect();
        let k = dims.len();
        let sub_unit: Vec<f64> = dims.iter().map(|&i| unit[i]).collect();
        let mut full = vec![0u64; d];
        let mut eval = |n: &[u64]| -> f64 {
            let mut r2 = 0.0;
            let mut w = 1.0;
            for (j, &i) in dims.iter().enumerate() {
                full[i] = n[j];
                let x = n[j] as f64 * sub_unit[j];
                r2 += x * x;
                w *= twist_weight(p.theta[i], n[j]);
            }
            match term(&full, sqrt(r2)) {
                Ok(v) => w * v,
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            }
        };
        let safe_bound = |r: f64| bound(r).unwrap_or(f64::INFINITY);

        let part = match k {
            1 => {
                let u = sub_unit[0];
                let rho = crate::math::exp(-decay * u);
                crate::series::sum_until(
                    |n| eval(&[n]),
                    |n| {
                        let r = (n + 1) as f64 * u;
                        if r < valid_from {
                            f64::INFINITY
                        } else {
                            geometric_tail(safe_bound(r), rho)
                        }
                    },
                    ctrl,
                )
            }
            2 => {
                let lat = Lattice2 {
                    unit: [sub_unit[0], sub_unit[1]],
                    decay,
                    valid_from,
                };
                sum_lattice2(&lat, ctrl, |n1, n2| eval(&[n1, n2]), safe_bound)
            }
            _ => sum_orthant_shells(&sub_unit, decay, valid_from, ctrl, |n| eval(n)),
        };
        if let Some(e) = failure.take() {
            return Err(e);
        }
        let part = part.check("zeta continuation lattice sum")?;
        total = total.merge(part.scaled((1u64 << k) as f64));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn parameter_validation() {
        assert!(ZetaParams::new(2.0, 1.0, &[1.0], &[0.0]).is_ok());
        assert!(ZetaParams::new(2.0, -1.0, &[1.0], &[0.0]).is_err());
        assert!(ZetaParams::new(2.0, 1.0, &[0.0], &[0.0]).is_err());
        assert!(ZetaParams::new(2.0, 1.0, &[1.0], &[1.5]).is_err());
        assert!(ZetaParams::new(2.0, 1.0, &[1.0, 1.0], &[0.0]).is_err());
        let ctrl = SeriesControl::default();
        let p = ZetaParams::new(0.5, 1.0, &[1.0], &[0.0]).unwrap();
        assert!(matches!(zeta_direct(&p, &ctrl), Err(Error::Domain(_))));
        let p = ZetaParams::new(2.0, 0.0, &[1.0], &[0.0]).unwrap();
        assert!(matches!(zeta_continued(&p, &ctrl), Err(Error::Domain(_))));
    }

    #[test]
    fn massless_antiperiodic_direct_is_eta_like() {
        // sum_n ((n + 1/2)^2)^{-2} = 2 * 16 * (1 - 2^-4) zeta(4)
        let p = ZetaParams::new(2.0, 0.0, &[1.0], &[1.0]).unwrap();
        let r = zeta_direct(&p, &SeriesControl::default()).unwrap();
        let exact = 2.0 * 16.0 * (15.0 / 16.0) * PI.powi(4) / 90.0;
        assert!(rel(r.value, exact) < 1e-10);
    }

    #[test]
    fn zero_mode_dominates_when_mass_exceeds_spacing() {
        // the n = 0 term wins once c^2 is small against a, not for c -> inf
        // at fixed a, where the sum approaches the integral pi / (2 c^3)
        let ctrl = SeriesControl::default();
        let p = ZetaParams::new(2.0, 1.0, &[1e4], &[0.0]).unwrap();
        let r = zeta_direct(&p, &ctrl).unwrap();
        assert!(rel(r.value, 1.0) < 1e-7);
        let c = 30.0;
        let p = ZetaParams::new(2.0, c, &[1.0], &[0.0]).unwrap();
        let r = zeta_direct(&p, &ctrl).unwrap();
        assert!(rel(r.value, PI / (2.0 * c * c * c)) < 1e-12);
        let cont = zeta_continued(&p, &ctrl).unwrap();
        assert!(rel(cont, r.value) < 1e-9);
    }

    #[test]
    fn continuation_matches_direct_d1() {
        let ctrl = SeriesControl::default();
        for theta in [0.0, 0.5, 1.0] {
            for c in [0.5, 1.0, 2.0] {
                let p = ZetaParams::new(2.0, c, &[1.0], &[theta]).unwrap();
                let direct = zeta_direct(&p, &ctrl).unwrap().value;
                let cont = zeta_continued(&p, &ctrl).unwrap();
                assert!(
                    rel(cont, direct) < 1e-9,
                    "theta={theta} c={c}: {cont} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn continuation_matches_direct_d2() {
        let ctrl = SeriesControl::default();
        let p = ZetaParams::new(3.0, 1.0, &[1.0, 1.0], &[0.0, 0.0]).unwrap();
        let direct = zeta_direct(&p, &ctrl).unwrap().value;
        let cont = zeta_continued(&p, &ctrl).unwrap();
        assert!(rel(cont, direct) < 1e-9, "{cont} vs {direct}");
        let p = ZetaParams::new(2.0, 0.7, &[1.3, 0.6], &[1.0, 0.5]).unwrap();
        let direct = zeta_direct(&p, &ctrl).unwrap().value;
        let cont = zeta_continued(&p, &ctrl).unwrap();
        assert!(rel(cont, direct) < 1e-9, "{cont} vs {direct}");
    }

    #[test]
    fn bulk_pole_is_tagged() {
        // nu - d/2 = 0 for d = 2, nu = 1
        let p = ZetaParams::new(1.0, 1.0, &[1.0, 1.0], &[0.0, 0.0]).unwrap();
        let ctrl = SeriesControl::default();
        let parts = zeta_continued_parts(&p, &ctrl).unwrap();
        assert!(parts.bulk.is_none());
        assert!(parts.lattice.value.is_finite());
        assert!(matches!(zeta_continued(&p, &ctrl), Err(Error::Pole(_))));
    }

    #[test]
    fn alternating_single_sum() {
        // for theta = 1 the d = 1 single sum alternates in sign
        let p = ZetaParams::new(2.0, 0.3, &[1.0], &[1.0]).unwrap();
        let ctrl = SeriesControl::default();
        let parts = zeta_continued_parts(&p, &ctrl).unwrap();
        let periodic = ZetaParams::new(2.0, 0.3, &[1.0], &[0.0]).unwrap();
        let pparts = zeta_continued_parts(&periodic, &ctrl).unwrap();
        assert!(parts.lattice.value < 0.0 && pparts.lattice.value > 0.0);
        assert_eq!(parts.bulk, pparts.bulk);
    }

    #[test]
    fn bulk_derivative_scaling() {
        let p = ZetaParams::new(3.0, 1.0, &[1.0, 2.0], &[0.0, 0.0]).unwrap();
        let ctrl = SeriesControl::default();
        let base = zeta_continued_parts(&p, &ctrl).unwrap();
        let der = zeta_continued_da2_parts(&p, &ctrl).unwrap();
        let b = base.bulk.unwrap();
        assert!(rel(2.0 * der.bulk.unwrap(), -b / 2.0) < 1e-15);
    }

    #[test]
    fn three_dimensional_continuation() {
        let p = ZetaParams::new(3.0, 1.0, &[1.0, 1.0, 1.0], &[0.0, 1.0, 0.5]).unwrap();
        let ctrl = SeriesControl::default();
        let v = zeta_continued(&p, &ctrl).unwrap();
        let q = ZetaParams::new(3.0, 1.0, &[1.0, 1.0, 1.0], &[0.5, 0.0, 1.0]).unwrap();
        let w = zeta_continued(&q, &ctrl).unwrap();
        assert!(rel(v, w) < 1e-10);
    }
}
