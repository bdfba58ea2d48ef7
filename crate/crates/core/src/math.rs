// Thin wrappers so the numeric code reads like std float methods without std.

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub(crate) fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub(crate) fn powi(x: f64, n: i32) -> f64 {
    libm::pow(x, n as f64)
}

#[inline]
pub(crate) fn cosh(x: f64) -> f64 {
    libm::cosh(x)
}

#[inline]
pub(crate) fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub(crate) fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

#[inline]
pub(crate) fn round(x: f64) -> f64 {
    libm::round(x)
}

#[inline]
pub(crate) fn expm1(x: f64) -> f64 {
    libm::expm1(x)
}

/// `cos(theta * pi * n)` with exact values at the periodic and antiperiodic
/// points, so that sign patterns do not pick up rounding noise.
#[inline]
pub(crate) fn twist_weight(theta: f64, n: u64) -> f64 {
    if theta == 0.0 {
        1.0
    } else if theta == 1.0 {
        if n % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    } else {
        // reduce n*theta mod 2 before the cosine to keep the argument small
        let t = (n as f64) * theta;
        let r = t - 2.0 * floor(t / 2.0);
        cos(core::f64::consts::PI * r)
    }
}
