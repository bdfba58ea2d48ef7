use casimir_core::crossover::{find_crossover, phase_diagram, Crossover, PhaseGrid, XI_MAX};
use casimir_core::pressure::{dirichlet_pressure, g_parts, pressure, FieldKind};

use crate::args::{Cli, Command, CrossoverArgs, Format, GArgs, PhaseArgs, PressureArgs};
use crate::output::{write_text, Cell, Shape, Table};
use crate::{figures, suite, CliError};

pub const UNITS_NOTE: &str =
    "natural units hbar = c = k_B = 1; lengths in any unit u, pressures in u^-D, T in u^-1";

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Pressure(a) => cmd_pressure(a),
        Command::G(a) => cmd_g(a),
        Command::Crossover(a) => cmd_crossover(a),
        Command::PhaseDiagram(a) => cmd_phase_diagram(a),
        Command::Figure(a) => figures::cmd_figure(a),
        Command::Oracle(a) => suite::cmd_oracle(a),
    }
}

fn cmd_pressure(a: PressureArgs) -> Result<(), CliError> {
    let ctrl = a.series.control()?;
    let cfg = a.phys.cavity()?;
    let fmt = a.out.output.unwrap_or(Format::Pretty);
    let table = if a.dirichlet {
        let p = dirichlet_pressure(&cfg, a.electromagnetic)?;
        let mut t = Table::new(Shape::Record, &["a", "electromagnetic", "total"])
            .comment(UNITS_NOTE)
            .comment("massless scalar between Dirichlet plates at separation a: periodic vacuum pressure at L = 2a")
            .comment("electromagnetic = 1 doubles it for the two polarisations");
        t.push(vec![
            Cell::Num(cfg.length),
            Cell::Bool(a.electromagnetic),
            Cell::Num(p),
        ]);
        t
    } else {
        let field: FieldKind = a.phys.field.into();
        let b = pressure(field, &cfg, &ctrl)?;
        let mut t = Table::new(
            Shape::Record,
            &[
                "field", "D", "L", "beta", "m", "theta", "vacuum", "thermal", "cross", "total", "terms_used",
                "tail_estimate",
            ],
        )
        .comment(UNITS_NOTE)
        .comment("pressure on the boundaries of the compact direction, total = (vacuum + thermal) + cross")
        .comment("vacuum: 2N (m/2piL)^{D/2} sum_n cos(theta pi n) [(1-D) K_{D/2}(mnL)/n^{D/2} - mL K_{D/2-1}(mnL)/n^{D/2-1}]")
        .comment("thermal: 2N (m/2pi beta)^{D/2} sum_n w(n) K_{D/2}(m beta n)/n^{D/2}, w = 1 scalar, (-1)^n fermion")
        .comment("cross: double sum over n1, n2 >= 1 with both twists; massless D = 4 uses g(L/beta)")
        .comment("N = 1 scalar, 2^{floor(D/2)} fermion; beta = inf means T = 0");
        t.push(vec![
            Cell::Text(field.name().into()),
            Cell::Int(cfg.dim.into()),
            Cell::Num(cfg.length),
            Cell::Num(cfg.beta),
            Cell::Num(cfg.mass),
            Cell::Num(cfg.theta),
            Cell::Num(b.vacuum),
            Cell::Num(b.thermal),
            Cell::Num(b.cross),
            Cell::Num(b.total),
            Cell::Int(b.terms_used),
            Cell::Num(b.tail_estimate),
        ]);
        t.notes.push(format!(
            "{}: {}",
            UNITS_NOTE,
            if b.total < 0.0 {
                "attractive"
            } else {
                "repulsive"
            }
        ));
        t
    };
    write_text(&table.render(fmt), a.out.out.as_deref())
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, CliError> {
    if n == 0 || !(lo.is_finite() && hi.is_finite()) || (n > 1 && !(hi > lo)) {
        return Err(CliError::Usage(format!(
            "bad range [{lo}, {hi}] with {n} points"
        )));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n)
        .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
        .collect())
}

pub fn g_table(
    field: FieldKind,
    theta: f64,
    xis: &[f64],
    ctrl: &casimir_core::SeriesControl,
) -> Result<Table, CliError> {
    let twist = casimir_core::pressure::Twist::from_theta(theta)?;
    let mut t = Table::new(Shape::Rows, &["xi", "g", "thermal", "cross", "tail_estimate"])
        .comment(UNITS_NOTE)
        .comment(format!("field = {}, theta = {theta}, D = 4, m = 0", field.name()))
        .comment("total pressure = g_prefactor / L^4 * g(xi), xi = L T; g = (1 + thermal) + cross")
        .comment("thermal: black-body term over the vacuum term; cross: lattice double sum over the vacuum term");
    for &xi in xis {
        let p = g_parts(field, twist, xi, ctrl)?;
        t.push(vec![
            Cell::Num(xi),
            Cell::Num(p.g()),
            Cell::Num(p.thermal),
            Cell::Num(p.cross),
            Cell::Num(p.tail_estimate),
        ]);
    }
    Ok(t)
}

fn cmd_g(a: GArgs) -> Result<(), CliError> {
    let ctrl = a.series.control()?;
    let xis = if a.xi.is_empty() {
        linspace(a.xi_min, a.xi_max, a.points)?
    } else {
        a.xi.clone()
    };
    let t = g_table(a.twist.field.into(), a.twist.theta, &xis, &ctrl)?;
    write_text(
        &t.render(a.out.output.unwrap_or(Format::Pretty)),
        a.out.out.as_deref(),
    )
}

fn cmd_crossover(a: CrossoverArgs) -> Result<(), CliError> {
    let ctrl = a.series.control()?;
    let field: FieldKind = a.twist.field.into();
    let twist = a.twist.twist()?;
    let fmt = a.out.output.unwrap_or(Format::Pretty);
    let table = match find_crossover(field, twist, &ctrl)? {
        Crossover::Root(r) => {
            let mut t = Table::new(
                Shape::Record,
                &[
                    "field", "theta", "xi_star", "bracket_lo", "bracket_hi", "residual", "iterations", "fm_mev",
                    "fm_kelvin", "mm_kelvin", "dg_dxi", "stable",
                ],
            )
            .comment(UNITS_NOTE)
            .comment("xi_star: root of g, the pressure vanishes on T = xi_star / L")
            .comment("fm_mev = xi_star hbar c; fm_kelvin = xi_star hbar c / k_B; mm_kelvin likewise in mm K")
            .comment("stable: dP/dL < 0 at the root");
            t.push(vec![
                Cell::Text(field.name().into()),
                Cell::Num(twist.theta()),
                Cell::Num(r.xi_star),
                Cell::Num(r.bracket.0),
                Cell::Num(r.bracket.1),
                Cell::Num(r.residual),
                Cell::Int(r.iterations.into()),
                Cell::Num(r.fm_mev),
                Cell::Num(r.fm_kelvin),
                Cell::Num(r.mm_kelvin),
                Cell::Num(r.dg_dxi),
                Cell::Bool(r.stable),
            ]);
            t.notes.push(format!(
                "L T = {:.6} = {:.1} MeV fm = {:.3e} fm K = {:.3} mm K; equilibrium is {}",
                r.xi_star,
                r.fm_mev,
                r.fm_kelvin,
                r.mm_kelvin,
                if r.stable { "stable" } else { "unstable" }
            ));
            t
        }
        Crossover::NoRoot { attractive } => {
            let message = format!(
                "no root on (0, {XI_MAX}]: always {}",
                if attractive {
                    "attractive"
                } else {
                    "repulsive"
                }
            );
            let mut t = Table::new(
                Shape::Record,
                &["field", "theta", "root", "attractive", "message"],
            )
            .comment(UNITS_NOTE)
            .comment("g keeps one sign on the scanned range");
            t.push(vec![
                Cell::Text(field.name().into()),
                Cell::Num(twist.theta()),
                Cell::Bool(false),
                Cell::Bool(attractive),
                Cell::Text(message),
            ]);
            t
        }
    };
    write_text(&table.render(fmt), a.out.out.as_deref())
}

pub fn phase_table(field: FieldKind, theta: f64, grid: &PhaseGrid) -> Table {
    let mut t = Table::new(Shape::Rows, &["L", "T", "xi", "pressure", "attractive"])
        .comment(UNITS_NOTE)
        .comment(format!(
            "field = {}, theta = {theta}, D = 4, m = 0",
            field.name()
        ))
        .comment("pressure = g_prefactor / L^4 * g(L T); attractive = 1 where pressure < 0")
        .comment("rows ordered by T, then L");
    for c in &grid.cells {
        t.push(vec![
            Cell::Num(c.length),
            Cell::Num(c.temperature),
            Cell::Num(c.length * c.temperature),
            Cell::Num(c.pressure),
            Cell::Bool(c.attractive),
        ]);
    }
    t
}

fn sign_map(grid: &PhaseGrid) -> String {
    let mut s = String::from("# attractive, . repulsive; T grows upward, L to the right\n");
    for row in (0..grid.temperatures.len()).rev() {
        s.push_str(&format!("T={:<8.4} ", grid.temperatures[row]));
        for col in 0..grid.lengths.len() {
            s.push(if grid.cell(row, col).attractive {
                '#'
            } else {
                '.'
            });
        }
        s.push('\n');
    }
    s.push_str(&format!(
        "L from {} to {}\n",
        grid.lengths[0],
        grid.lengths[grid.lengths.len() - 1]
    ));
    s
}

fn cmd_phase_diagram(a: PhaseArgs) -> Result<(), CliError> {
    let ctrl = a.series.control()?;
    let field: FieldKind = a.twist.field.into();
    let twist = a.twist.twist()?;
    let ls = linspace(a.grid.l_min, a.grid.l_max, a.grid.nl)?;
    let ts = linspace(a.grid.t_min, a.grid.t_max, a.grid.nt)?;
    let grid = phase_diagram(field, twist, &ls, &ts, &ctrl)?;
    let text = match a.out.output.unwrap_or(Format::Pretty) {
        Format::Pretty => sign_map(&grid),
        f => phase_table(field, twist.theta(), &grid).render(f),
    };
    write_text(&text, a.out.out.as_deref())
}
