//! Conversions out of natural units (`hbar = c = k_B = 1`).

/// `hbar c` in MeV fm.
pub const HBAR_C_MEV_FM: f64 = 197.326_980_4;

/// Boltzmann constant in MeV per kelvin.
pub const K_B_MEV_PER_K: f64 = 8.617_333_262e-11;

const FM_PER_MM: f64 = 1e12;

/// `L T` in fm MeV for a dimensionless `xi = L T`.
pub fn xi_to_fm_mev(xi: f64) -> f64 {
    xi * HBAR_C_MEV_FM
}

/// `L T` in fm K.
pub fn xi_to_fm_kelvin(xi: f64) -> f64 {
    xi * HBAR_C_MEV_FM / K_B_MEV_PER_K
}

/// `L T` in mm K.
pub fn xi_to_mm_kelvin(xi: f64) -> f64 {
    xi_to_fm_kelvin(xi) / FM_PER_MM
}

/// Temperature in kelvin of a natural-unit temperature given in MeV.
pub fn mev_to_kelvin(t_mev: f64) -> f64 {
    t_mev / K_B_MEV_PER_K
}
