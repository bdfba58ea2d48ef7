//! Sign changes of the massless `D = 4` pressure in the `(L, T)` plane.
//!
//! The total pressure is `g_prefactor / L^4 * g(L T)`, so every crossover is
//! a root `xi*` of `g` and the boundary between attraction and repulsion is
//! the hyperbola `T = xi* / L`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::powi;
use crate::pressure::{g_function, g_prefactor, FieldKind, Twist};
use crate::series::SeriesControl;
use crate::units;

/// Upper end of the bracketing scan.
pub const XI_MAX: f64 = 10.0;
const SCAN_STEPS: u32 = 100;
const BISECT_WIDTH: f64 = 1e-3;
const STEP_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossoverResult {
    pub xi_star: f64,
    /// Final bracket with `g(lo) g(hi) <= 0`.
    pub bracket: (f64, f64),
    pub residual: f64,
    pub iterations: u32,
    pub fm_mev: f64,
    pub fm_kelvin: f64,
    pub mm_kelvin: f64,
    pub dg_dxi: f64,
    /// `dP/dL < 0` at the root, so small displacements are pushed back.
    pub stable: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Crossover {
    Root(CrossoverResult),
    /// `g` keeps one sign on `(0, XI_MAX]`; `attractive` gives that sign of
    /// the pressure.
    NoRoot {
        attractive: bool,
    },
}

/// Locate the root of `g` for the given field and spatial twist: scan
/// `xi = 0.1, 0.2, ..., 10`, bisect the first sign change down to width
/// `1e-3`, then finish with a secant iteration safeguarded by the bracket.
pub fn find_crossover(field: FieldKind, twist: Twist, ctrl: &SeriesControl) -> Result<Crossover> {
    let g = |xi: f64| g_function(field, twist, xi, ctrl);
    let mut prev_xi = 0.1;
    let mut prev_g = g(prev_xi)?;
    let mut bracket = None;
    for k in 2..=SCAN_STEPS {
        let xi = k as f64 / 10.0;
        let gx = g(xi)?;
        if gx == 0.0 {
            bracket = Some((xi, xi, gx, gx));
            break;
        }
        if prev_g * gx < 0.0 {
            bracket = Some((prev_xi, xi, prev_g, gx));
            break;
        }
        prev_xi = xi;
        prev_g = gx;
    }
    let Some((mut lo, mut hi, mut glo, mut ghi)) = bracket else {
        let attractive = g_prefactor(field, twist) * prev_g < 0.0;
        return Ok(Crossover::NoRoot { attractive });
    };
    debug_assert!(glo * ghi <= 0.0);

    let mut iterations = 0u32;
    while hi - lo > BISECT_WIDTH {
        let mid = 0.5 * (lo + hi);
        let gm = g(mid)?;
        iterations += 1;
        if gm == 0.0 {
            lo = mid;
            hi = mid;
            glo = 0.0;
            ghi = 0.0;
            break;
        }
        if glo * gm < 0.0 {
            hi = mid;
            ghi = gm;
        } else {
            lo = mid;
            glo = gm;
        }
    }

    let (mut x0, mut g0, mut x1, mut g1) = (lo, glo, hi, ghi);
    let mut xi = if g1 == 0.0 { x1 } else { x0 };
    let mut gxi = if g1 == 0.0 { g1 } else { g0 };
    while hi > lo && gxi != 0.0 {
        let mut next = if g1 != g0 {
            x1 - g1 * (x1 - x0) / (g1 - g0)
        } else {
            f64::NAN
        };
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let gn = g(next)?;
        iterations += 1;
        let step = (next - x1).abs();
        if glo * gn < 0.0 {
            hi = next;
        } else {
            lo = next;
            glo = gn;
        }
        x0 = x1;
        g0 = g1;
        x1 = next;
        g1 = gn;
        xi = next;
        gxi = gn;
        if step <= STEP_TOL || hi - lo <= STEP_TOL {
            break;
        }
        if iterations > 200 {
            return Err(Error::NotConverged {
                what: "crossover secant iteration",
                terms: iterations as u64,
                tail_estimate: hi - lo,
            });
        }
    }

    let h = 1e-5;
    let dg = (g(xi + h)? - g(xi - h)?) / (2.0 * h);
    Ok(Crossover::Root(CrossoverResult {
        xi_star: xi,
        bracket: (lo, hi),
        residual: gxi.abs(),
        iterations,
        fm_mev: units::xi_to_fm_mev(xi),
        fm_kelvin: units::xi_to_fm_kelvin(xi),
        mm_kelvin: units::xi_to_mm_kelvin(xi),
        dg_dxi: dg,
        stable: g_prefactor(field, twist) * dg < 0.0,
    }))
}

/// Massless `D = 4` total pressure at length `l` and temperature `t`
/// (`t = 0` is the vacuum).
pub fn massless_total(
    field: FieldKind,
    twist: Twist,
    l: f64,
    t: f64,
    ctrl: &SeriesControl,
) -> Result<f64> {
    if !(l > 0.0) || !l.is_finite() {
        return Err(Error::InvalidConfig("L must be positive and finite"));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidConfig("T must be finite and non-negative"));
    }
    let g = if t == 0.0 {
        1.0
    } else {
        g_function(field, twist, l * t, ctrl)?
    };
    Ok(g_prefactor(field, twist) * g / powi(l, 4))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseCell {
    pub length: f64,
    pub temperature: f64,
    pub pressure: f64,
    pub attractive: bool,
}

/// Cells in row-major order: one row per temperature, one column per length.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGrid {
    pub lengths: Vec<f64>,
    pub temperatures: Vec<f64>,
    pub cells: Vec<PhaseCell>,
}

impl PhaseGrid {
    pub fn cell(&self, row: usize, col: usize) -> &PhaseCell {
        &self.cells[row * self.lengths.len() + col]
    }
}

fn check_grid(grid: &[f64], what: &'static str) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidConfig(what));
    }
    let up = grid.windows(2).all(|w| w[0] < w[1]);
    let down = grid.windows(2).all(|w| w[0] > w[1]);
    if !(up || down) {
        return Err(Error::InvalidConfig(what));
    }
    Ok(())
}

/// Sign and magnitude of the massless pressure on an `(L, T)` grid.
pub fn phase_diagram(
    field: FieldKind,
    twist: Twist,
    lengths: &[f64],
    temperatures: &[f64],
    ctrl: &SeriesControl,
) -> Result<PhaseGrid> {
    check_grid(
        lengths,
        "length grid must be non-empty and strictly monotone",
    )?;
    check_grid(
        temperatures,
        "temperature grid must be non-empty and strictly monotone",
    )?;
    let mut cells = Vec::with_capacity(lengths.len() * temperatures.len());
    for (row, &t) in temperatures.iter().enumerate() {
        for (col, &l) in lengths.iter().enumerate() {
            let p = massless_total(field, twist, l, t, ctrl).map_err(|e| e.at_cell(row, col))?;
            cells.push(PhaseCell {
                length: l,
                temperature: t,
                pressure: p,
                attractive: p < 0.0,
            });
        }
    }
    Ok(PhaseGrid {
        lengths: lengths.to_vec(),
        temperatures: temperatures.to_vec(),
        cells,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ForceCurve {
    pub temperature: f64,
    /// `(L, pressure)` pairs.
    pub points: Vec<(f64, f64)>,
}

/// Pressure against cavity length, one curve per temperature.
pub fn force_vs_length(
    field: FieldKind,
    twist: Twist,
    temperatures: &[f64],
    lengths: &[f64],
    ctrl: &SeriesControl,
) -> Result<Vec<ForceCurve>> {
    let mut curves = Vec::with_capacity(temperatures.len());
    for (row, &t) in temperatures.iter().enumerate() {
        let mut points = Vec::with_capacity(lengths.len());
        for (col, &l) in lengths.iter().enumerate() {
            let p = massless_total(field, twist, l, t, ctrl).map_err(|e| e.at_cell(row, col))?;
            points.push((l, p));
        }
        curves.push(ForceCurve {
            temperature: t,
            points,
        });
    }
    Ok(curves)
}
