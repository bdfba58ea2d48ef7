//! Sums over the positive orthant of a lattice with exponentially decaying
//! terms.
//!
//! Points `n` carry a physical radius `r(n) = |(n_1 u_1, n_2 u_2, ...)|`.
//! Callers supply a majorant `bound(r)` with `|term(n)| <= bound(r(n))`,
//! where `bound` is non-increasing and `bound(r) e^{decay r}` is
//! non-increasing for `r >= valid_from`. Both strategies only stop once they
//! are inside that region.

use alloc::vec;
use alloc::vec::Vec;

use super::{CompensatedSum, SeriesControl, SumResult, TailMode};
use crate::math::{ceil, exp, sqrt};

/// Geometry of a two-dimensional orthant sum over `n_1, n_2 >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice2 {
    pub unit: [f64; 2],
    pub decay: f64,
    pub valid_from: f64,
}

impl Lattice2 {
    #[inline]
    fn radius(&self, n1: u64, n2: u64) -> f64 {
        let x = n1 as f64 * self.unit[0];
        let y = n2 as f64 * self.unit[1];
        sqrt(x * x + y * y)
    }
}

/// Sum `term(n1, n2)` over `n1, n2 >= 1`.
///
/// `ExpBound` (and `IntegralCompare`) walk row by row with rigorous
/// exponential tail bounds; `ShellDoubling` grows a box instead.
pub fn sum_lattice2<T, B>(lat: &Lattice2, ctrl: &SeriesControl, mut term: T, bound: B) -> SumResult
where
    T: FnMut(u64, u64) -> f64,
    B: Fn(f64) -> f64,
{
    match ctrl.tail_mode {
        TailMode::ShellDoubling => {
            sum_orthant_shells(&lat.unit, lat.decay, lat.valid_from, ctrl, |n: &[u64]| {
                term(n[0], n[1])
            })
        }
        TailMode::ExpBound | TailMode::IntegralCompare => sum_rows(lat, ctrl, term, bound),
    }
}

// Per-row tails must stay well below the global allowance since they add up
// over many rows.
const ROW_TOL_FACTOR: f64 = 1e-4;

fn sum_rows<T, B>(lat: &Lattice2, ctrl: &SeriesControl, mut term: T, bound: B) -> SumResult
where
    T: FnMut(u64, u64) -> f64,
    B: Fn(f64) -> f64,
{
    let [u1, u2] = lat.unit;
    // r >= (x + y)/sqrt(2) turns the 2D remainder into a product of
    // geometric series
    let rho1 = exp(-lat.decay * u1 / core::f64::consts::SQRT_2);
    let rho2 = exp(-lat.decay * u2 / core::f64::consts::SQRT_2);

    let mut total = CompensatedSum::new();
    let mut terms = 0u64;
    let mut row_tails = 0.0;

    let mut n1 = 0u64;
    loop {
        n1 += 1;
        let mut row = CompensatedSum::new();
        let mut n2 = 0u64;
        loop {
            n2 += 1;
            row.add(term(n1, n2));
            terms += 1;
            if terms >= ctrl.max_terms {
                total.add(row.value());
                return SumResult {
                    value: total.value(),
                    terms_used: terms,
                    tail_estimate: f64::INFINITY,
                    converged: false,
                };
            }
            let ra = lat.radius(n1, n2 + 1);
            if ra < lat.valid_from {
                continue;
            }
            let delta = lat.radius(n1, n2 + 2) - ra;
            let b = bound(ra);
            let tail = if b == 0.0 {
                0.0
            } else {
                b / -crate::math::expm1(-lat.decay * delta)
            };
            let scale = total.value() + row.value();
            if tail <= ROW_TOL_FACTOR * ctrl.target(scale) {
                row_tails += tail;
                break;
            }
        }
        total.add(row.value());

        let rstar = ((n1 + 1) as f64 * u1 + u2) / core::f64::consts::SQRT_2;
        if rstar >= lat.valid_from {
            let b = bound(rstar);
            let outer_tail = if b == 0.0 {
                0.0
            } else {
                b / ((1.0 - rho1) * (1.0 - rho2))
            };
            if outer_tail + row_tails <= ctrl.target(total.value()) {
                return SumResult {
                    value: total.value(),
                    terms_used: terms,
                    tail_estimate: outer_tail + row_tails,
                    converged: true,
                };
            }
        }
    }
}

/// Sum `term(n)` over the orthant `n_i >= 1` of any dimension by doubling
/// a box `n_i u_i <= R`. Stops when the newest shell is below tolerance and
/// `decay * R >= 4`, so that the next shell is smaller still.
pub fn sum_orthant_shells<T>(
    unit: &[f64],
    decay: f64,
    valid_from: f64,
    ctrl: &SeriesControl,
    mut term: T,
) -> SumResult
where
    T: FnMut(&[u64]) -> f64,
{
    let dim = unit.len();
    if dim == 0 {
        return SumResult::exact(0.0);
    }
    let max_unit = unit.iter().copied().fold(0.0, f64::max);
    let mut radius = 4.0 * max_unit;
    let mut prev: Vec<u64> = vec![0; dim];
    let mut total = CompensatedSum::new();
    let mut terms = 0u64;
    let mut last_shell_abs = f64::INFINITY;

    loop {
        let extent: Vec<u64> = unit.iter().map(|&u| ceil(radius / u) as u64).collect();
        let box_size: f64 = extent.iter().map(|&e| e as f64).product();
        let prev_size: f64 = prev.iter().map(|&e| e as f64).product();
        if terms as f64 + (box_size - prev_size) > ctrl.max_terms as f64 {
            return SumResult {
                value: total.value(),
                terms_used: terms,
                tail_estimate: last_shell_abs,
                converged: false,
            };
        }

        let mut shell = CompensatedSum::new();
        let mut shell_abs = 0.0;
        let mut n: Vec<u64> = vec![1; dim];
        'odometer: loop {
            let inside_prev = n.iter().zip(&prev).all(|(&k, &p)| k <= p);
            if !inside_prev {
                let t = term(&n);
                shell.add(t);
                shell_abs += t.abs();
                terms += 1;
            }
            for i in 0..dim {
                if n[i] < extent[i] {
                    n[i] += 1;
                    continue 'odometer;
                }
                n[i] = 1;
            }
            break;
        }
        total.add(shell.value());
        let first_shell = prev.iter().all(|&p| p == 0);
        last_shell_abs = shell_abs;

        if !first_shell
            && shell_abs <= ctrl.target(total.value())
            && decay * radius >= 4.0
            && radius >= valid_from
        {
            return SumResult {
                value: total.value(),
                terms_used: terms,
                tail_estimate: shell_abs,
                converged: true,
            };
        }
        prev = extent;
        radius *= 2.0;
    }
}
