//! Oracle runs: each report pairs an oracle value with the production value.

use casimir_core::oracle::{
    bessel_quadrature, five_point_difference, lattice_identity_check, pressure_from_free_energy,
    quadrant_sum_closed_form, zeta_bruteforce, OracleReport,
};
use casimir_core::pressure::{g_function, thermal_pressure, CavityConfig, FieldKind, Twist};
use casimir_core::specfun::{bessel_k, BesselOrder};
use casimir_core::zeta::{zeta_continued, zeta_continued_da2, ZetaParams};
use casimir_core::SeriesControl;

use crate::args::{Format, OracleArgs, OracleTarget};
use crate::output::{write_text, Cell, Shape, Table};
use crate::CliError;

fn tight() -> SeriesControl {
    SeriesControl::default().with_rel_tol(1e-14)
}

pub fn bessel_reports() -> Result<Vec<OracleReport>, CliError> {
    let mut out = Vec::new();
    for twice in 1..=6 {
        let order = BesselOrder::from_twice(twice);
        for z in [1e-3, 0.1, 1.0, 2.0, 10.0, 50.0] {
            let q = bessel_quadrature(order.nu(), z);
            let k = bessel_k(order, z)?;
            out.push(OracleReport::new(
                format!("bessel_k(nu={}, z={z})", order.nu()),
                q.value,
                k,
                "adaptive Gauss-Kronrod on the cosh integral",
            ));
        }
    }
    Ok(out)
}

pub fn zeta_grid() -> Result<Vec<ZetaParams>, CliError> {
    let mut grid = Vec::new();
    for d in [1usize, 2] {
        for nu in [2.0, 3.0] {
            for c in [0.5, 1.0, 2.0] {
                for theta in [0.0, 0.5, 1.0] {
                    let a = [1.0, 1.7];
                    grid.push(ZetaParams::new(nu, c, &a[..d], &vec![theta; d])?);
                }
            }
        }
    }
    Ok(grid)
}

fn label(p: &ZetaParams) -> String {
    format!("nu={}, c={}, a={:?}, theta={:?}", p.nu, p.c, p.a, p.theta)
}

pub fn zeta_reports() -> Result<Vec<OracleReport>, CliError> {
    let ctrl = SeriesControl::default();
    let mut out = Vec::new();
    for p in zeta_grid()? {
        let n_max = if p.d() == 1 { 1_000_000 } else { 1000 };
        let brute = zeta_bruteforce(p.nu, p.c, &p.a, &p.theta, n_max);
        out.push(OracleReport::new(
            format!("zeta_continued({})", label(&p)),
            brute,
            zeta_continued(&p, &ctrl)?,
            format!("box sum |n_i| <= {n_max} plus continuum tail"),
        ));
    }
    Ok(out)
}

pub fn derivative_reports() -> Result<Vec<OracleReport>, CliError> {
    let ctrl = tight();
    let mut out = Vec::new();
    for p in zeta_grid()?.into_iter().filter(|p| p.d() == 2) {
        let a2 = p.a[1];
        let mut failure = None;
        let fd = five_point_difference(
            |x| match ZetaParams::new(p.nu, p.c, &[p.a[0], x], &p.theta)
                .and_then(|q| zeta_continued(&q, &ctrl))
            {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            },
            a2,
            1e-3 * a2,
        );
        if let Some(e) = failure {
            return Err(e.into());
        }
        out.push(OracleReport::new(
            format!("zeta_continued_da2({})", label(&p)),
            fd,
            zeta_continued_da2(&p, &ctrl)?,
            "five-point difference in a_2",
        ));
    }
    Ok(out)
}

pub fn lattice_reports() -> Result<Vec<OracleReport>, CliError> {
    let g = g_function(FieldKind::Scalar, Twist::Periodic, 1.0, &tight())?;
    let pi4 = std::f64::consts::PI.powi(4);
    Ok(vec![
        lattice_identity_check(10_000),
        OracleReport::new(
            "g(scalar, theta=0, xi=1)",
            1.0 - 1.0 / 3.0 + 60.0 / pi4 * quadrant_sum_closed_form(),
            g,
            "zeta(2) Catalan - zeta(4) for the quadrant sum",
        ),
    ])
}

pub fn pressure_reports() -> Result<Vec<OracleReport>, CliError> {
    let ctrl = tight();
    let mut out = Vec::new();
    for (field, dim, m, l, beta, theta) in [
        (FieldKind::Scalar, 4u32, 1.0, 1.0, 1.0, 0.0),
        (FieldKind::Fermion, 4, 1.0, 1.0, 1.0, 1.0),
        (FieldKind::Scalar, 3, 0.7, 1.3, 0.9, 0.5),
    ] {
        let cfg = CavityConfig::new(dim, l, beta, m, theta)?;
        let b = thermal_pressure(field, &cfg, &ctrl)?;
        let reference = pressure_from_free_energy(
            dim,
            field.degeneracy(dim),
            m,
            l,
            beta,
            theta,
            field.time_twist().theta(),
        );
        out.push(OracleReport::new(
            format!(
                "thermal_pressure({}, D={dim}, m={m}, L={l}, beta={beta}, theta={theta})",
                field.name()
            ),
            reference,
            b.total,
            "-d(L f)/dL of the lattice free energy, quadrature Bessel values",
        ));
    }
    Ok(out)
}

pub fn cmd_oracle(a: OracleArgs) -> Result<(), CliError> {
    let targets: Vec<OracleTarget> = if a.all || a.target.is_empty() {
        vec![
            OracleTarget::Bessel,
            OracleTarget::Zeta,
            OracleTarget::Derivative,
            OracleTarget::Lattice,
            OracleTarget::Pressure,
        ]
    } else {
        a.target.clone()
    };
    let mut reports = Vec::new();
    for t in targets {
        eprintln!("oracle: running {t:?}");
        reports.extend(match t {
            OracleTarget::Bessel => bessel_reports()?,
            OracleTarget::Zeta => zeta_reports()?,
            OracleTarget::Derivative => derivative_reports()?,
            OracleTarget::Lattice => lattice_reports()?,
            OracleTarget::Pressure => pressure_reports()?,
        });
    }
    let mut table = Table::new(
        Shape::Lines,
        &[
            "target",
            "reference_value",
            "main_value",
            "rel_diff",
            "method",
        ],
    )
    .comment("rel_diff = |reference - main| / max(|reference|, 1e-300)");
    let mut worst: Option<&OracleReport> = None;
    for r in &reports {
        table.push(vec![
            Cell::Text(r.target.clone()),
            Cell::Num(r.reference_value),
            Cell::Num(r.main_value),
            Cell::Num(r.rel_diff),
            Cell::Text(r.method.clone()),
        ]);
        if worst.map_or(true, |w| !(r.rel_diff <= w.rel_diff)) {
            worst = Some(r);
        }
    }
    let failed: Vec<&OracleReport> = reports.iter().filter(|r| !r.passes(a.tol)).collect();
    table.notes.push(format!(
        "{} reports, {} above tol {:e}",
        reports.len(),
        failed.len(),
        a.tol
    ));
    write_text(
        &table.render(a.out.output.unwrap_or(Format::Json)),
        a.out.out.as_deref(),
    )?;
    if let Some(w) = worst {
        eprintln!("oracle: worst rel_diff {:.3e} ({})", w.rel_diff, w.target);
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Check(format!(
            "{} of {} reports exceed rel_diff {:e}, first: {}",
            failed.len(),
            reports.len(),
            a.tol,
            failed[0].target
        )))
    }
}
