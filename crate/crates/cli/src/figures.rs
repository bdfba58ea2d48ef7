//! CSV data behind figures 1-6. Figure 6 has two files, the fermion force
//! curves and the fermion phase diagram.

use std::path::PathBuf;

use casimir_core::crossover::{force_vs_length, phase_diagram};
use casimir_core::pressure::{
    massless_vacuum_pressure, small_mass_vacuum_pressure, vacuum_pressure, CavityConfig, FieldKind,
    Twist,
};
use casimir_core::SeriesControl;

use crate::args::FigureArgs;
use crate::commands::{g_table, linspace, phase_table, UNITS_NOTE};
use crate::output::{Cell, Shape, Table};
use crate::CliError;

/// Heat-bath temperatures of the force curves, in units of 1/L.
pub const CURVE_TEMPERATURES: [f64; 3] = [0.1, 1.0, 1.3];

fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|k| lo * (hi / lo).powf(k as f64 / (n - 1) as f64))
        .collect()
}

fn figure1(points: usize, ctrl: &SeriesControl) -> Result<Table, CliError> {
    let mut t = Table::new(Shape::Rows, &["mL", "exact", "small_mass", "massless"])
        .comment(UNITS_NOTE)
        .comment("scalar, D = 4, theta = 0, T = 0; every column is L^4 times the pressure")
        .comment("exact: 2 (m/2piL)^2 sum_n [-3 K_2(mnL)/n^2 - mL K_1(mnL)/n] (times L^4)")
        .comment(
            "small_mass: K_nu(z) ~ Gamma(nu)/2 (2/z)^nu for both Bessel sums: -pi^2/30 - (mL)^2/12",
        )
        .comment("massless: -pi^2/30");
    for ml in log_space(1e-3, 5.0, points) {
        let cfg = CavityConfig::vacuum(4, 1.0, ml, 0.0)?;
        let exact = vacuum_pressure(FieldKind::Scalar, &cfg, ctrl)?.value;
        let small = small_mass_vacuum_pressure(FieldKind::Scalar, &cfg)?;
        let zero =
            massless_vacuum_pressure(FieldKind::Scalar, &CavityConfig::vacuum(4, 1.0, 0.0, 0.0)?)?
                .value;
        t.push(vec![
            Cell::Num(ml),
            Cell::Num(exact),
            Cell::Num(small),
            Cell::Num(zero),
        ]);
    }
    Ok(t)
}

fn curves(
    field: FieldKind,
    twist: Twist,
    points: usize,
    ctrl: &SeriesControl,
) -> Result<Table, CliError> {
    let lengths = linspace(0.2, 4.0, points)?;
    let curves = force_vs_length(field, twist, &CURVE_TEMPERATURES, &lengths, ctrl)?;
    let mut t = Table::new(Shape::Rows, &["T", "L", "pressure", "attractive"])
        .comment(UNITS_NOTE)
        .comment(format!(
            "field = {}, theta = {}, D = 4, m = 0",
            field.name(),
            twist.theta()
        ))
        .comment("pressure = g_prefactor / L^4 * g(L T); T in the same inverse length unit as 1/L")
        .comment("rows ordered by T, then L");
    for c in &curves {
        for &(l, p) in &c.points {
            t.push(vec![
                Cell::Num(c.temperature),
                Cell::Num(l),
                Cell::Num(p),
                Cell::Bool(p < 0.0),
            ]);
        }
    }
    Ok(t)
}

fn phase(
    field: FieldKind,
    twist: Twist,
    a: &FigureArgs,
    ctrl: &SeriesControl,
) -> Result<Table, CliError> {
    let ls = linspace(a.grid.l_min, a.grid.l_max, a.grid.nl)?;
    let ts = linspace(a.grid.t_min, a.grid.t_max, a.grid.nt)?;
    let grid = phase_diagram(field, twist, &ls, &ts, ctrl)?;
    Ok(phase_table(field, twist.theta(), &grid))
}

fn g_curve(field: FieldKind, theta: f64, ctrl: &SeriesControl) -> Result<Table, CliError> {
    // step 0.01 so the root falls between neighbouring rows
    let xis: Vec<f64> = (1..=300).map(|k| k as f64 / 100.0).collect();
    g_table(field, theta, &xis, ctrl)
}

/// Tables for one figure with their file names.
pub fn figure_tables(a: &FigureArgs) -> Result<Vec<(String, Table)>, CliError> {
    let ctrl = a.series.control()?;
    let s = FieldKind::Scalar;
    let f = FieldKind::Fermion;
    Ok(match a.id {
        1 => vec![("figure1.csv".into(), figure1(a.points, &ctrl)?)],
        2 => vec![("figure2.csv".into(), g_curve(s, 0.0, &ctrl)?)],
        3 => vec![(
            "figure3.csv".into(),
            curves(s, Twist::Periodic, a.points, &ctrl)?,
        )],
        4 => vec![("figure4.csv".into(), phase(s, Twist::Periodic, a, &ctrl)?)],
        5 => vec![("figure5.csv".into(), g_curve(f, 1.0, &ctrl)?)],
        6 => vec![
            (
                "figure6_curves.csv".into(),
                curves(f, Twist::Antiperiodic, a.points, &ctrl)?,
            ),
            (
                "figure6_phase.csv".into(),
                phase(f, Twist::Antiperiodic, a, &ctrl)?,
            ),
        ],
        _ => return Err(CliError::Usage(format!("no figure {}", a.id))),
    })
}

pub fn cmd_figure(a: FigureArgs) -> Result<(), CliError> {
    let tables = figure_tables(&a)?;
    std::fs::create_dir_all(&a.out_dir).map_err(|source| CliError::Io {
        path: a.out_dir.clone(),
        source,
    })?;
    for (name, table) in tables {
        let path: PathBuf = a.out_dir.join(name);
        std::fs::write(&path, table.csv()).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        println!("{}", path.display());
    }
    Ok(())
}
