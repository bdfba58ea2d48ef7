//! Truncation control for every infinite sum in the crate.
//!
//! All accumulation is compensated (Neumaier). A sum stops when a bound on
//! the remaining tail drops below `rel_tol * max(|partial|, abs_floor)`; if
//! that never happens within `max_terms` the result comes back with
//! `converged == false` and callers turn it into [`Error::NotConverged`].

mod lattice;
pub mod quad;

pub use lattice::{sum_lattice2, sum_orthant_shells, Lattice2};

use crate::error::{Error, Result};

/// How the remaining tail of a sum is estimated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailMode {
    /// Rigorous bound from exponential decay, `K_nu(z) <= K_nu(z0) e^{-(z-z0)}`.
    ExpBound,
    /// Grow the summation box by doubling and stop when the newest shell is
    /// below tolerance.
    ShellDoubling,
    /// Compare the remainder of a power-law sum with the matching integral.
    IntegralCompare,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub abs_floor: f64,
    pub max_terms: u64,
    /// Preferred strategy for lattice sums that support more than one.
    /// Exponentially decaying sums treat `IntegralCompare` as `ExpBound`.
    pub tail_mode: TailMode,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            rel_tol: 1e-10,
            abs_floor: 1e-300,
            max_terms: 10_000_000,
            tail_mode: TailMode::ExpBound,
        }
    }
}

impl SeriesControl {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_max_terms(mut self, max_terms: u64) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn with_tail_mode(mut self, tail_mode: TailMode) -> Self {
        self.tail_mode = tail_mode;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::InvalidConfig("rel_tol must lie in (0, 1)"));
        }
        if !(self.abs_floor > 0.0) {
            return Err(Error::InvalidConfig("abs_floor must be positive"));
        }
        if self.max_terms == 0 {
            return Err(Error::InvalidConfig("max_terms must be at least 1"));
        }
        Ok(())
    }

    /// Absolute tail allowance for a partial sum of the given size.
    #[inline]
    pub fn target(&self, partial: f64) -> f64 {
        self.rel_tol * partial.abs().max(self.abs_floor)
    }
}

/// Outcome of a truncated sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumResult {
    pub value: f64,
    pub terms_used: u64,
    /// Upper estimate of the neglected remainder, non-negative.
    pub tail_estimate: f64,
    pub converged: bool,
}

impl SumResult {
    pub fn exact(value: f64) -> Self {
        SumResult {
            value,
            terms_used: 0,
            tail_estimate: 0.0,
            converged: true,
        }
    }

    /// Turn a non-converged sum into an error naming the quantity.
    pub fn check(self, what: &'static str) -> Result<SumResult> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NotConverged {
                what,
                terms: self.terms_used,
                tail_estimate: self.tail_estimate,
            })
        }
    }

    /// Combine diagnostics of sums that are added together.
    pub fn merge(self, other: SumResult) -> SumResult {
        SumResult {
            value: self.value + other.value,
            terms_used: self.terms_used + other.terms_used,
            tail_estimate: self.tail_estimate + other.tail_estimate,
            converged: self.converged && other.converged,
        }
    }

    /// Scale the value and the tail by a constant prefactor.
    pub fn scaled(self, factor: f64) -> SumResult {
        SumResult {
            value: self.value * factor,
            tail_estimate: self.tail_estimate * factor.abs(),
            ..self
        }
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        s.extend(iter);
        s
    }
}

/// Compensated sum of a slice.
pub fn compensated_sum(values: &[f64]) -> f64 {
    values.iter().copied().collect::<CompensatedSum>().value()
}

/// Sum `term(1) + term(2) + ...` until `tail_bound(n)`, a bound on
/// `sum_{k > n} |term(k)|`, falls below tolerance.
pub fn sum_until<T, B>(term: T, tail_bound: B, ctrl: &SeriesControl) -> SumResult
where
    T: FnMut(u64) -> f64,
    B: FnMut(u64) -> f64,
{
    sum_blocks(1, term, tail_bound, ctrl)
}

/// Like [`sum_until`] but only tests for convergence after adjacent pairs,
/// so an alternating series cannot stop on a near-cancelling single term.
pub fn sum_pairs_until<T, B>(term: T, tail_bound: B, ctrl: &SeriesControl) -> SumResult
where
    T: FnMut(u64) -> f64,
    B: FnMut(u64) -> f64,
{
    sum_blocks(2, term, tail_bound, ctrl)
}

fn sum_blocks<T, B>(block: u64, mut term: T, mut tail_bound: B, ctrl: &SeriesControl) -> SumResult
where
    T: FnMut(u64) -> f64,
    B: FnMut(u64) -> f64,
{
    let mut acc = CompensatedSum::new();
    let mut n = 0u64;
    let mut tail = f64::INFINITY;
    while n < ctrl.max_terms {
        for _ in 0..block {
            n += 1;
            acc.add(term(n));
        }
        tail = tail_bound(n);
        if tail <= ctrl.target(acc.value()) {
            return SumResult {
                value: acc.value(),
                terms_used: n,
                tail_estimate: tail,
                converged: true,
            };
        }
    }
    SumResult {
        value: acc.value(),
        terms_used: n,
        tail_estimate: tail,
        converged: false,
    }
}

/// `first / (1 - ratio)`: bound on `sum_{k>=0} first * ratio^k`.
#[inline]
pub fn geometric_tail(first: f64, ratio: f64) -> f64 {
    if first == 0.0 {
        return 0.0;
    }
    if ratio >= 1.0 {
        return f64::INFINITY;
    }
    first / (1.0 - ratio)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math;
    use alloc::vec::Vec;
    use core::f64::consts::PI;

    fn zeta4_tail(n: u64) -> f64 {
        // sum_{k>n} k^-4 <= integral_n^inf x^-4 dx
        1.0 / (3.0 * (n as f64).powi(3))
    }

    #[test]
    fn riemann_zeta_four() {
        let ctrl = SeriesControl::default();
        let r = sum_until(|n| 1.0 / (n as f64).powi(4), zeta4_tail, &ctrl);
        assert!(r.converged);
        let exact = PI.powi(4) / 90.0;
        assert!((r.value - exact).abs() <= 1e-10 * exact);
        assert!(r.tail_estimate <= ctrl.target(r.value));
    }

    #[test]
    fn dirichlet_eta_four() {
        let ctrl = SeriesControl::default();
        let r = sum_pairs_until(
            |n| if n % 2 == 0 { 1.0 } else { -1.0 } / (n as f64).powi(4),
            |n| 1.0 / ((n + 1) as f64).powi(4),
            &ctrl,
        );
        assert!(r.converged);
        assert_eq!(r.terms_used % 2, 0);
        let exact = -7.0 * PI.powi(4) / 720.0;
        assert!((r.value - exact).abs() <= 1e-10 * exact.abs());
    }

    #[test]
    fn reports_non_convergence() {
        let ctrl = SeriesControl::default().with_max_terms(100);
        let r = sum_until(|n| 1.0 / n as f64, |_| f64::INFINITY, &ctrl);
        assert!(!r.converged);
        assert_eq!(r.terms_used, 100);
        assert!(matches!(
            r.check("harmonic"),
            Err(Error::NotConverged { terms: 100, .. })
        ));
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::new();
        s.add(1.0);
        for _ in 0..10_000 {
            s.add(1e-16);
        }
        s.add(-1.0);
        assert!((s.value() - 1e-12).abs() < 1e-24);
    }

    #[test]
    fn forward_and_reverse_accumulation_agree() {
        // mixed signs spanning several orders of magnitude
        let terms: Vec<f64> = (1..20_000u64)
            .map(|n| {
                let x = n as f64;
                math::cos(0.37 * x) * (1.0 / (x * x) + 1e4 * math::exp(-x / 50.0))
            })
            .collect();
        let fwd = compensated_sum(&terms);
        let rev: CompensatedSum = terms.iter().rev().copied().collect();
        assert!((fwd - rev.value()).abs() <= 1e-13 * fwd.abs());
    }

    #[test]
    fn control_validation() {
        assert!(SeriesControl::default().validate().is_ok());
        assert!(SeriesControl::default()
            .with_rel_tol(0.0)
            .validate()
            .is_err());
        assert!(SeriesControl::default()
            .with_rel_tol(1.0)
            .validate()
            .is_err());
        assert!(SeriesControl::default()
            .with_max_terms(0)
            .validate()
            .is_err());
    }

    #[test]
    fn geometric_tail_edges() {
        assert_eq!(geometric_tail(0.0, 2.0), 0.0);
        assert!(geometric_tail(1.0, 1.0).is_infinite());
        assert!((geometric_tail(1.0, 0.5) - 2.0).abs() < 1e-15);
    }
}
