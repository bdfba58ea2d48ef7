//! Slow, independent reference values.
//!
//! Nothing here touches `specfun`, `zeta` or `pressure`: Bessel functions
//! come from their integral representation, lattice sums from raw boxes
//! with continuum tail corrections, derivatives from central differences.

use alloc::string::String;

use crate::math::{cos, cosh, exp, powf, sqrt};
use crate::series::{quad, CompensatedSum};
use core::f64::consts::PI;

/// One comparison between an oracle and a production routine.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub target: String,
    pub reference_value: f64,
    pub main_value: f64,
    pub rel_diff: f64,
    pub method: String,
}

impl OracleReport {
    pub fn new(
        target: impl Into<String>,
        reference_value: f64,
        main_value: f64,
        method: impl Into<String>,
    ) -> Self {
        let rel_diff = (reference_value - main_value).abs() / reference_value.abs().max(1e-300);
        OracleReport {
            target: target.into(),
            reference_value,
            main_value,
            rel_diff,
            method: method.into(),
        }
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.rel_diff <= tol
    }
}

/// Reference value together with the quadrature's own error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadValue {
    pub value: f64,
    pub error: f64,
    pub converged: bool,
}

/// `K_nu(z) = int_0^inf e^{-z cosh t} cosh(nu t) dt`, evaluated as
/// `e^{-z} int_0^inf e^{-2z sinh^2(t/2)} cosh(nu t) dt` by adaptive
/// Gauss-Kronrod on a truncated range.
pub fn bessel_quadrature(nu: f64, z: f64) -> QuadValue {
    if !(z > 0.0) {
        return QuadValue {
            value: f64::NAN,
            error: f64::INFINITY,
            converged: false,
        };
    }
    let nu = nu.abs();
    let integrand = |t: f64| {
        let s = libm::sinh(0.5 * t);
        exp(-2.0 * z * s * s) * cosh(nu * t)
    };
    // beyond t_max the log of the integrand is below -60 relative to its peak
    let mut t_max = 1.0;
    let peak_log = if nu > 0.0 { ln_peak(nu, z) } else { 0.0 };
    while (-2.0 * z * crate::math::powi(libm::sinh(0.5 * t_max), 2) + nu * t_max) - peak_log > -60.0
    {
        t_max *= 1.5;
    }
    let pieces = 8;
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    let mut ok = true;
    for i in 0..pieces {
        let a = t_max * i as f64 / pieces as f64;
        let b = t_max * (i + 1) as f64 / pieces as f64;
        let r = quad::integrate(integrand, a, b, 1e-14, 1e-15, 2000);
        acc.add(r.value);
        err += r.error;
        ok &= r.converged || r.error <= 1e-13 * r.value.abs();
    }
    let scale = exp(-z);
    QuadValue {
        value: acc.value() * scale,
        error: err * scale,
        converged: ok,
    }
}

// max over t of -2 z sinh^2(t/2) + nu t, located by a coarse search
fn ln_peak(nu: f64, z: f64) -> f64 {
    let mut best: f64 = 0.0;
    let mut t = 0.0;
    while t < 100.0 {
        let s = libm::sinh(0.5 * t);
        let v = -2.0 * z * s * s + nu * t;
        best = best.max(v);
        if v < best - 100.0 {
            break;
        }
        t += 0.01;
    }
    best
}

// integral_{x0}^inf (b + a x^2)^{-nu} dx
fn tail_line(nu: f64, b: f64, a: f64, x0: f64) -> f64 {
    if x0 <= 0.0 {
        // the whole half line
        return 0.5 * sqrt(PI / a) * libm::tgamma(nu - 0.5) / libm::tgamma(nu) * powf(b, 0.5 - nu)
            - tail_segment(nu, b, a, x0, 0.0);
    }
    quad::integrate(
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
        1e-15,
        2000,
    )
    .value
}

// integral_{lo}^{hi} (b + a x^2)^{-nu} dx
fn tail_segment(nu: f64, b: f64, a: f64, lo: f64, hi: f64) -> f64 {
    if lo >= hi {
        return 0.0;
    }
    quad::integrate(|x| powf(b + a * x * x, -nu), lo, hi, 0.0, 1e-15, 2000).value
}

/// Raw sum of `(c^2 + sum a_i (n_i + theta_i/2)^2)^{-nu}` over the box
/// `|n_i| <= n_max` (d = 1 or 2), plus the integral of the summand over the
/// complement of the union of unit cells around the box points.
pub fn zeta_bruteforce(nu: f64, c: f64, a: &[f64], theta: &[f64], n_max: u64) -> f64 {
    let c2 = c * c;
    let nm = n_max as i64;
    let half_width = n_max as f64 + 0.5;
    match (a, theta) {
        ([a1], [t1]) => {
            let s = t1 / 2.0;
            let mut acc = CompensatedSum::new();
            for k in -nm..=nm {
                let x = k as f64 + s;
                acc.add(powf(c2 + a1 * x * x, -nu));
            }
            acc.add(tail_line(nu, c2, *a1, half_width + s));
            acc.add(tail_line(nu, c2, *a1, half_width - s));
            acc.value()
        }
        ([a1, a2], [t1, t2]) => {
            let (s1, s2) = (t1 / 2.0, t2 / 2.0);
            let mut acc = CompensatedSum::new();
            for k1 in -nm..=nm {
                let x = k1 as f64 + s1;
                let b = c2 + a1 * x * x;
                let mut row = CompensatedSum::new();
                for k2 in -nm..=nm {
                    let y = k2 as f64 + s2;
                    row.add(powf(b + a2 * y * y, -nu));
                }
                acc.add(row.value());
            }
            // |x| beyond the box: full lines in y
            let line = sqrt(PI / a2) * libm::tgamma(nu - 0.5) / libm::tgamma(nu);
            acc.add(line * tail_line(nu - 0.5, c2, *a1, half_width + s1));
            acc.add(line * tail_line(nu - 0.5, c2, *a1, half_width - s1));
            // |y| beyond the box for x inside it
            let strip = |x: f64| {
                let b = c2 + a1 * x * x;
                tail_line(nu, b, *a2, half_width + s2) + tail_line(nu, b, *a2, half_width - s2)
            };
            let x0 = -half_width + s1;
            let x1 = half_width + s1;
            let pieces = 16;
            for i in 0..pieces {
                let lo = x0 + (x1 - x0) * i as f64 / pieces as f64;
                let hi = x0 + (x1 - x0) * (i + 1) as f64 / pieces as f64;
                acc.add(quad::integrate(strip, lo, hi, 0.0, 1e-13, 200).value);
            }
            acc.value()
        }
        _ => f64::NAN,
    }
}

/// Both sides of
/// `sum_{n1,n2>=1} (3 n1^2 - n2^2)/(n1^2 + n2^2)^3 = sum_{n1,n2>=1} 1/(n1^2 + n2^2)^2`
/// over the square `n_i <= n_max`. The difference of the summands,
/// `2 (n1^2 - n2^2)/(n1^2 + n2^2)^3`, is antisymmetric under the swap.
pub fn lattice_identity_check(n_max: u64) -> OracleReport {
    let mut lhs = CompensatedSum::new();
    let mut rhs = CompensatedSum::new();
    for n1 in 1..=n_max {
        let a = (n1 * n1) as f64;
        for n2 in 1..=n_max {
            let b = (n2 * n2) as f64;
            let r2 = a + b;
            let r4 = r2 * r2;
            lhs.add((3.0 * a - b) / (r4 * r2));
            rhs.add(1.0 / r4);
        }
    }
    OracleReport::new(
        "lattice identity (3n1^2-n2^2)/r^6 vs 1/r^4",
        rhs.value(),
        lhs.value(),
        alloc::format!("independent square-box sums, n_max = {n_max}"),
    )
}

/// `sum_{n1,n2 >= 1} 1/(n1^2 + n2^2)^2 = zeta(2) G - zeta(4)` with Catalan's
/// constant `G`, from `sum' 1/(m^2+n^2)^s = 4 zeta(s) beta(s)`.
pub fn quadrant_sum_closed_form() -> f64 {
    const CATALAN: f64 = 0.915_965_594_177_219;
    let z2 = PI * PI / 6.0;
    let z4 = PI * PI * PI * PI / 90.0;
    z2 * CATALAN - z4
}

/// Symmetric difference quotient `(f(x + h) - f(x - h)) / 2h`.
pub fn central_difference<F: FnMut(f64) -> f64>(mut f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Five-point difference quotient, error `O(h^4)`.
pub fn five_point_difference<F: FnMut(f64) -> f64>(mut f: F, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
}

/// Free energy density of a massive field with one spatial circle `L`
/// (twist `theta`) and imaginary-time circle `beta` (twist `theta_time`):
/// `f = -N (m/2pi)^{D/2} sum'_{n in Z^2} cos(theta pi n1) cos(theta_time pi n2) K_{D/2}(m r)/r^{D/2}`
/// with `r^2 = n1^2 L^2 + n2^2 beta^2`, L-independent vacuum energy dropped.
/// Points with `m r > r_cut` are left out.
#[allow(clippy::too_many_arguments)]
pub fn free_energy(
    dim: u32,
    degeneracy: f64,
    mass: f64,
    length: f64,
    beta: f64,
    theta: f64,
    theta_time: f64,
    r_cut: f64,
) -> f64 {
    let half = dim as f64 / 2.0;
    let n1_max = (r_cut / (mass * length)) as i64 + 1;
    let n2_max = if beta.is_finite() {
        (r_cut / (mass * beta)) as i64 + 1
    } else {
        0
    };
    let mut acc = CompensatedSum::new();
    for n1 in -n1_max..=n1_max {
        for n2 in -n2_max..=n2_max {
            if n1 == 0 && n2 == 0 {
                continue;
            }
            let x = n1 as f64 * length;
            let y = if n2 == 0 { 0.0 } else { n2 as f64 * beta };
            let r = sqrt(x * x + y * y);
            if mass * r > r_cut {
                continue;
            }
            let w = cos(theta * PI * n1 as f64) * cos(theta_time * PI * n2 as f64);
            let k = bessel_quadrature(half, mass * r).value;
            acc.add(w * k / powf(r, half));
        }
    }
    -degeneracy * powf(mass / (2.0 * PI), half) * acc.value()
}

/// Pressure on the plates `P = -d(L f)/dL = -f - L df/dL` from
/// [`free_energy`] with a central difference in `L`.
#[allow(clippy::too_many_arguments)]
pub fn pressure_from_free_energy(
    dim: u32,
    degeneracy: f64,
    mass: f64,
    length: f64,
    beta: f64,
    theta: f64,
    theta_time: f64,
) -> f64 {
    let r_cut = 45.0;
    let f = |l: f64| free_energy(dim, degeneracy, mass, l, beta, theta, theta_time, r_cut);
    let df = five_point_difference(f, length, 1e-3 * length);
    -f(length) - length * df
}
