//! Modified Bessel functions of the second kind for integer and half-integer
//! order, gamma and the Riemann zeta function.
//!
//! `K_nu` is built from a base pair at the fractional part of the order,
//! `(K_0, K_1)` or `(K_{1/2}, K_{3/2})`, followed by upward recurrence
//! `K_{nu+1} = K_{nu-1} + (2 nu / z) K_nu`, which is stable for `K`. The base
//! pair uses the ascending series for `z <= 2` and Steed's continued fraction
//! (Temme's CF2) above. Everything is carried scaled by `e^z` so large
//! arguments underflow only at the very end.

use crate::error::{Error, Result};
use crate::math::{exp, ln, powf, sqrt};
use core::f64::consts::PI;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_SWITCH: f64 = 2.0;

/// Order of a Bessel function stored as `2 nu`, so half-integers are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BesselOrder {
    twice_nu: u32,
}

impl BesselOrder {
    /// Order `twice_nu / 2`. Negative values are folded by `K_{-nu} = K_nu`.
    pub fn from_twice(twice_nu: i64) -> Self {
        BesselOrder {
            twice_nu: twice_nu.unsigned_abs() as u32,
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::from_twice(2 * n)
    }

    /// Accepts any real `nu` whose double is an integer.
    pub fn from_nu(nu: f64) -> Result<Self> {
        let t = 2.0 * nu;
        if !t.is_finite() || t != crate::math::round(t) || t.abs() > u32::MAX as f64 {
            return Err(Error::Domain(
                "Bessel order must be an integer or half-integer",
            ));
        }
        Ok(Self::from_twice(t as i64))
    }

    pub fn twice_nu(self) -> u32 {
        self.twice_nu
    }

    pub fn nu(self) -> f64 {
        self.twice_nu as f64 / 2.0
    }

    pub fn is_half_integer(self) -> bool {
        self.twice_nu % 2 == 1
    }

    /// The order one higher.
    pub fn succ(self) -> Self {
        BesselOrder {
            twice_nu: self.twice_nu + 2,
        }
    }
}

/// `K_nu(z)` together with the underflow flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KValue {
    pub value: f64,
    /// Set when the true value is below the smallest normal `f64` and
    /// `value` was replaced by exact zero.
    pub underflowed: bool,
}

/// `K_nu(z)`, relative accuracy about `1e-14` for `z` in `[1e-6, 700]`.
pub fn bessel_k(order: BesselOrder, z: f64) -> Result<f64> {
    bessel_k_flagged(order, z).map(|k| k.value)
}

pub fn bessel_k_flagged(order: BesselOrder, z: f64) -> Result<KValue> {
    let scaled = bessel_k_scaled(order, z)?;
    Ok(unscale(scaled, z))
}

/// `(K_nu(z), K_{nu+1}(z))` from a single recurrence pass.
pub fn bessel_k_pair(order: BesselOrder, z: f64) -> Result<(f64, f64)> {
    let (a, b) = scaled_pair(order, z)?;
    Ok((unscale(a, z).value, unscale(b, z).value))
}

/// `e^z K_nu(z)`. Non-increasing in `z` for every `nu >= 0`, which is what
/// the exponential tail bounds rely on.
pub fn bessel_k_scaled(order: BesselOrder, z: f64) -> Result<f64> {
    scaled_pair(order, z).map(|p| p.0)
}

/// Leading small-argument behaviour `2^{nu-1} Gamma(nu) z^{-nu}`.
pub fn bessel_k_small_z(order: BesselOrder, z: f64) -> Result<f64> {
    if order.twice_nu == 0 {
        return Err(Error::Domain("small-z form needs nu > 0"));
    }
    check_argument(z)?;
    let nu = order.nu();
    let v = powf(2.0, nu - 1.0) * gamma(nu)? * powf(z, -nu);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow("K_nu(z) for small z"))
    }
}

fn check_argument(z: f64) -> Result<()> {
    if z.is_nan() || z <= 0.0 {
        Err(Error::Domain("Bessel K needs z > 0"))
    } else {
        Ok(())
    }
}

fn unscale(scaled: f64, z: f64) -> KValue {
    // scaled * e^{-z}, evaluated in logs near the bottom of the range
    let v = if z < 700.0 {
        scaled * exp(-z)
    } else {
        exp(ln(scaled) - z)
    };
    if v < f64::MIN_POSITIVE {
        KValue {
            value: 0.0,
            underflowed: true,
        }
    } else {
        KValue {
            value: v,
            underflowed: false,
        }
    }
}

fn scaled_pair(order: BesselOrder, z: f64) -> Result<(f64, f64)> {
    check_argument(z)?;
    if z == f64::INFINITY {
        return Ok((0.0, 0.0));
    }
    let (mut k0, mut k1, mut mu) = if order.is_half_integer() {
        let k_half = sqrt(PI / (2.0 * z));
        (k_half, k_half * (1.0 + 1.0 / z), 0.5)
    } else if z <= SERIES_SWITCH {
        let (a, b) = k01_series(z);
        let e = exp(z);
        (a * e, b * e, 0.0)
    } else {
        let (a, b) = k01_steed_scaled(z);
        (a, b, 0.0)
    };
    let steps = (order.twice_nu / 2) as usize;
    for _ in 0..steps {
        let next = k0 + (2.0 * (mu + 1.0) / z) * k1;
        k0 = k1;
        k1 = next;
        mu += 1.0;
    }
    if !k0.is_finite() || !k1.is_finite() {
        return Err(Error::Overflow("K_nu(z) exceeds f64 range"));
    }
    Ok((k0, k1))
}

// Ascending series:
// K_0 = -(ln(z/2) + gamma) I_0 + sum_{k>=1} H_k (z^2/4)^k / (k!)^2
// K_1 = 1/z + ln(z/2) I_1 - (z/4) sum_{k>=0} (psi(k+1) + psi(k+2)) (z^2/4)^k / (k! (k+1)!)
fn k01_series(z: f64) -> (f64, f64) {
    let q = 0.25 * z * z;
    let l = ln(0.5 * z);

    let mut i0 = 1.0;
    let mut s0 = 0.0;
    let mut i1 = 1.0;
    let mut s1 = -2.0 * EULER_GAMMA + 1.0;
    let mut t0 = 1.0; // q^k / (k!)^2
    let mut t1 = 1.0; // q^k / (k! (k+1)!)
    let mut harmonic = 0.0;
    for k in 1..60 {
        let kf = k as f64;
        t0 *= q / (kf * kf);
        t1 *= q / (kf * (kf + 1.0));
        harmonic += 1.0 / kf;
        let psi1 = -EULER_GAMMA + harmonic;
        let psi2 = psi1 + 1.0 / (kf + 1.0);
        i0 += t0;
        s0 += harmonic * t0;
        i1 += t1;
        s1 += (psi1 + psi2) * t1;
        if t0 < 1e-18 * i0 && t1 < 1e-18 * i1 {
            break;
        }
    }
    let k0 = -(l + EULER_GAMMA) * i0 + s0;
    let i1 = 0.5 * z * i1;
    let k1 = 1.0 / z + l * i1 - 0.25 * z * s1;
    (k0, k1)
}

// Steed's method for CF2 at order zero; returns e^z K_0 and e^z K_1.
fn k01_steed_scaled(z: f64) -> (f64, f64) {
    let mut b = 2.0 * (1.0 + z);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000u32 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    h *= a1;
    let k0 = sqrt(PI / (2.0 * z)) / s;
    let k1 = k0 * (z + 0.5 - h) / z;
    (k0, k1)
}

/// `Gamma(x)`; poles at non-positive integers are reported.
pub fn gamma(x: f64) -> Result<f64> {
    if x <= 0.0 && x == crate::math::floor(x) {
        return Err(Error::Pole("gamma at a non-positive integer"));
    }
    let g = libm::tgamma(x);
    if g.is_finite() {
        Ok(g)
    } else {
        Err(Error::Overflow("gamma"))
    }
}

// B_{2k} / (2k)! for k = 1..=9
const BERNOULLI_OVER_FACTORIAL: [f64; 9] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -5.284_190_138_687_493e-10,
    1.338_253_653_068_468e-11,
    -3.389_680_296_322_583e-13,
    8.586_062_056_277_845e-15,
];

/// Riemann `zeta(s)` for real `s > 1` by Euler-Maclaurin.
pub fn riemann_zeta(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::Domain("riemann_zeta needs s > 1"));
    }
    const N: u32 = 12;
    let n = N as f64;
    let mut acc = crate::series::CompensatedSum::new();
    for k in (1..N).rev() {
        acc.add(powf(k as f64, -s));
    }
    let mut tail = powf(n, 1.0 - s) / (s - 1.0) + 0.5 * powf(n, -s);
    // rising factorial s (s+1) ... (s+2k-2) times N^{-s-2k+1}
    let mut rising = s;
    let mut npow = powf(n, -s - 1.0);
    for (k, coef) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        if k > 0 {
            let j = 2.0 * k as f64;
            rising *= (s + j - 1.0) * (s + j);
            npow /= n * n;
        }
        tail += coef * rising * npow;
    }
    acc.add(tail);
    Ok(acc.value())
}

/// Dirichlet `eta(s) = (1 - 2^{1-s}) zeta(s)` for `s > 1`.
pub fn dirichlet_eta(s: f64) -> Result<f64> {
    Ok(-crate::math::expm1((1.0 - s) * core::f64::consts::LN_2) * riemann_zeta(s)?)
}
