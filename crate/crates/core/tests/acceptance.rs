//! Acceptance checks 1-12. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use casimir_core::crossover::{find_crossover, Crossover};
use casimir_core::oracle::{central_difference, lattice_identity_check, zeta_bruteforce};
use casimir_core::pressure::{
    dirichlet_pressure, g_function, massless_vacuum_pressure, thermal_component, vacuum_pressure,
    CavityConfig, FieldKind, Twist,
};
use casimir_core::specfun::{bessel_k, BesselOrder};
use casimir_core::zeta::{zeta_continued, zeta_continued_da2, ZetaParams};
use casimir_core::{units, SeriesControl};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Check = (u32, &'static str, fn() -> Outcome);

fn within(what: &str, got: f64, want: f64, tol: f64) -> Outcome {
    let d = (got - want).abs();
    if d <= tol {
        Ok(format!("{what}: {got:.15e} (|diff| {d:.1e})"))
    } else {
        Err(format!(
            "{what}: {got:.15e}, expected {want:.15e}, |diff| {d:.1e} > {tol:.0e}"
        ))
    }
}

fn all(parts: Vec<Outcome>) -> Outcome {
    let mut ok = Vec::new();
    for p in parts {
        ok.push(p?);
    }
    Ok(ok.join("; "))
}

fn vac(field: FieldKind, theta: f64) -> Result<f64, String> {
    let cfg = CavityConfig::vacuum(4, 1.0, 0.0, theta).map_err(|e| e.to_string())?;
    massless_vacuum_pressure(field, &cfg)
        .map(|v| v.value)
        .map_err(|e| e.to_string())
}

fn c1() -> Outcome {
    within(
        "scalar periodic",
        vac(FieldKind::Scalar, 0.0)?,
        -PI * PI / 30.0,
        1e-10,
    )
}

fn c2() -> Outcome {
    within(
        "scalar antiperiodic",
        vac(FieldKind::Scalar, 1.0)?,
        7.0 * PI * PI / 240.0,
        1e-10,
    )
}

fn c3() -> Outcome {
    all(vec![
        within(
            "fermion periodic",
            vac(FieldKind::Fermion, 0.0)?,
            -2.0 * PI * PI / 15.0,
            1e-10,
        ),
        within(
            "fermion antiperiodic",
            vac(FieldKind::Fermion, 1.0)?,
            7.0 * PI * PI / 60.0,
            1e-10,
        ),
    ])
}

fn c4() -> Outcome {
    let beta = 1.0;
    let cfg = CavityConfig::new(4, 1.0, beta, 1e-3, 0.0).map_err(|e| e.to_string())?;
    let t = thermal_component(FieldKind::Scalar, &cfg, &SeriesControl::default())
        .map_err(|e| e.to_string())?
        .value;
    let sb = PI * PI / (90.0 * beta.powi(4));
    let rel = (t - sb).abs() / sb;
    if rel <= 1e-3 {
        Ok(format!(
            "m beta = 1e-3: {t:.10e} vs {sb:.10e}, rel {rel:.1e}"
        ))
    } else {
        Err(format!(
            "m beta = 1e-3: {t:.10e} vs {sb:.10e}, rel {rel:.1e} > 1e-3"
        ))
    }
}

fn c5() -> Outcome {
    let ctrl = SeriesControl::default();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    for dim in 2..=5u32 {
        let want = (1u64 << (dim / 2)) as f64;
        for _ in 0..20 {
            let m = rng.gen_range(0.05..3.0);
            let l = rng.gen_range(0.2..4.0);
            let theta = rng.gen_range(0.0..=1.0);
            let cfg = CavityConfig::vacuum(dim, l, m, theta).map_err(|e| e.to_string())?;
            let s = vacuum_pressure(FieldKind::Scalar, &cfg, &ctrl)
                .map_err(|e| e.to_string())?
                .value;
            let f = vacuum_pressure(FieldKind::Fermion, &cfg, &ctrl)
                .map_err(|e| e.to_string())?
                .value;
            let rel = (f / s - want).abs() / want;
            worst = worst.max(rel);
            if rel > 1e-12 {
                return Err(format!(
                    "D={dim} m={m} L={l} theta={theta}: ratio {} vs {want}",
                    f / s
                ));
            }
        }
    }
    Ok(format!("80 samples, worst relative deviation {worst:.1e}"))
}

fn c6() -> Outcome {
    let ctrl = SeriesControl::default();
    let mut out = Vec::new();
    for (field, twist, lo, hi, mev_fm) in [
        (FieldKind::Scalar, Twist::Periodic, 1.51, 1.53, 300.0),
        (FieldKind::Fermion, Twist::Antiperiodic, 1.20, 1.22, 239.0),
    ] {
        let r = match find_crossover(field, twist, &ctrl).map_err(|e| e.to_string())? {
            Crossover::Root(r) => r,
            Crossover::NoRoot { .. } => return Err(format!("{}: no root", field.name())),
        };
        if !(lo..=hi).contains(&r.xi_star) {
            return Err(format!(
                "{}: xi* = {} outside [{lo}, {hi}]",
                field.name(),
                r.xi_star
            ));
        }
        let conv = units::xi_to_fm_mev(r.xi_star);
        // three significant figures
        if (conv - mev_fm).abs() >= 0.5 {
            return Err(format!(
                "{}: {conv:.2} MeV fm does not round to {mev_fm}",
                field.name()
            ));
        }
        out.push(format!(
            "{} xi* = {:.10} ({conv:.2} MeV fm)",
            field.name(),
            r.xi_star
        ));
    }
    Ok(out.join("; "))
}

fn c7() -> Outcome {
    let ctrl = SeriesControl::default();
    let mut out = Vec::new();
    for (field, twist) in [
        (FieldKind::Scalar, Twist::Antiperiodic),
        (FieldKind::Fermion, Twist::Periodic),
    ] {
        let mut sign = 0.0;
        let mut min_abs = f64::INFINITY;
        for k in 1..=300 {
            let xi = 3.0 * k as f64 / 300.0;
            let g = g_function(field, twist, xi, &ctrl).map_err(|e| e.to_string())?;
            if k == 1 {
                sign = g.signum();
            }
            if g.signum() != sign || g == 0.0 {
                return Err(format!(
                    "{} theta={}: g({xi}) = {g} changes sign",
                    field.name(),
                    twist.theta()
                ));
            }
            min_abs = min_abs.min(g.abs());
        }
        if field == FieldKind::Scalar && sign < 0.0 {
            return Err("scalar antiperiodic g is negative".into());
        }
        out.push(format!(
            "{} theta={}: sign {sign:+}, min |g| {min_abs:.3e}",
            field.name(),
            twist.theta()
        ));
    }
    Ok(out.join("; "))
}

fn zeta_grid() -> Vec<ZetaParams> {
    let mut grid = Vec::new();
    for d in [1usize, 2] {
        for nu in [2.0, 3.0] {
            for c in [0.5, 1.0, 2.0] {
                for theta in [0.0, 0.5, 1.0] {
                    let a = [1.0, 1.7];
                    grid.push(ZetaParams::new(nu, c, &a[..d], &vec![theta; d]).unwrap());
                }
            }
        }
    }
    grid
}

fn c8() -> Outcome {
    let ctrl = SeriesControl::default();
    let mut worst: f64 = 0.0;
    let grid = zeta_grid();
    for p in &grid {
        let n_max = if p.d() == 1 { 1_000_000 } else { 1000 };
        let brute = zeta_bruteforce(p.nu, p.c, &p.a, &p.theta, n_max);
        let cont = zeta_continued(p, &ctrl).map_err(|e| e.to_string())?;
        let rel = (cont - brute).abs() / brute.abs();
        worst = worst.max(rel);
        if rel > 1e-8 {
            return Err(format!(
                "{p:?}: continued {cont:.15e} vs brute force {brute:.15e}, rel {rel:.1e}"
            ));
        }
    }
    let mut worst_d: f64 = 0.0;
    let mut n_d = 0;
    for p in grid.iter().filter(|p| p.d() == 2) {
        let analytic = zeta_continued_da2(p, &ctrl).map_err(|e| e.to_string())?;
        let a2 = p.a[1];
        let fd = central_difference(
            |x| {
                let q = ZetaParams::new(p.nu, p.c, &[p.a[0], x], &p.theta).unwrap();
                zeta_continued(&q, &ctrl).unwrap()
            },
            a2,
            1e-4 * a2,
        );
        let rel = (analytic - fd).abs() / fd.abs();
        worst_d = worst_d.max(rel);
        n_d += 1;
        if rel > 1e-6 {
            return Err(format!(
                "{p:?}: dZ/da2 {analytic:.12e} vs difference {fd:.12e}, rel {rel:.1e}"
            ));
        }
    }
    Ok(format!(
        "{} points, worst rel {worst:.1e}; da2 on {n_d} points, worst rel {worst_d:.1e}",
        grid.len()
    ))
}

fn c9() -> Outcome {
    let cfg = CavityConfig::vacuum(4, 1.0, 0.0, 0.0).map_err(|e| e.to_string())?;
    all(vec![
        within(
            "Dirichlet scalar",
            dirichlet_pressure(&cfg, false).map_err(|e| e.to_string())?,
            -PI * PI / 480.0,
            1e-12,
        ),
        within(
            "electromagnetic",
            dirichlet_pressure(&cfg, true).map_err(|e| e.to_string())?,
            -PI * PI / 240.0,
            1e-12,
        ),
    ])
}

const ORDER_SLACK: f64 = 0.01;

fn c10() -> Outcome {
    let ctrl = SeriesControl::default().with_rel_tol(1e-14);
    let mut out = Vec::new();
    for (field, theta) in [
        (FieldKind::Scalar, 0.0),
        (FieldKind::Scalar, 1.0),
        (FieldKind::Fermion, 0.0),
        (FieldKind::Fermion, 1.0),
    ] {
        let p0 = vac(field, theta)?;
        let mut dev = Vec::new();
        for ml in [1e-1, 1e-2, 1e-3] {
            let cfg = CavityConfig::vacuum(4, 1.0, ml, theta).map_err(|e| e.to_string())?;
            let p = vacuum_pressure(field, &cfg, &ctrl)
                .map_err(|e| e.to_string())?
                .value;
            dev.push((p - p0).abs() / p0.abs());
        }
        let o1 = (dev[0] / dev[1]).log10();
        let o2 = (dev[1] / dev[2]).log10();
        // the periodic zero mode adds an (mL)^3 term of opposite sign, so a
        // two-point estimate of an exact order 2 sits just below 2
        if o1 < 2.0 - ORDER_SLACK || o2 < 2.0 - ORDER_SLACK {
            return Err(format!(
                "{} theta={theta}: deviations {dev:?}, observed orders {o1:.3} {o2:.3}",
                field.name()
            ));
        }
        out.push(format!(
            "{} theta={theta}: orders {o1:.4}, {o2:.4}",
            field.name()
        ));
    }
    Ok(out.join("; "))
}

fn c11() -> Outcome {
    let r = lattice_identity_check(10_000);
    let d = (r.reference_value - r.main_value).abs();
    if d <= 1e-9 {
        Ok(format!(
            "n_max 1e4: {:.15e} vs {:.15e}, |diff| {d:.1e}",
            r.main_value, r.reference_value
        ))
    } else {
        Err(format!("|diff| {d:.1e} > 1e-9"))
    }
}

fn c12() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for twice in 1..=20i64 {
        let nu = twice as f64 / 2.0;
        for k in 0..100 {
            let z = 1e-3 * (5e4f64).powf(k as f64 / 99.0);
            let lo = bessel_k(BesselOrder::from_twice(twice - 2), z).map_err(|e| e.to_string())?;
            let mid = bessel_k(BesselOrder::from_twice(twice), z).map_err(|e| e.to_string())?;
            let hi = bessel_k(BesselOrder::from_twice(twice + 2), z).map_err(|e| e.to_string())?;
            if !(lo.is_finite() && mid.is_finite() && hi.is_finite()) || mid == 0.0 {
                continue;
            }
            let res = (lo - hi + 2.0 * nu / z * mid).abs() / mid;
            worst = worst.max(res);
            count += 1;
            if res > 1e-10 {
                return Err(format!("nu={nu} z={z}: residual {res:.1e}"));
            }
        }
    }
    Ok(format!(
        "{count} (nu, z) points, worst residual {worst:.1e}"
    ))
}

fn main() -> ExitCode {
    let checks: [Check; 12] = [
        (1, "massless scalar periodic vacuum", c1),
        (2, "massless scalar antiperiodic vacuum", c2),
        (3, "massless fermion vacuum", c3),
        (4, "Stefan-Boltzmann limit", c4),
        (5, "fermion/scalar degeneracy ratio", c5),
        (6, "crossover roots", c6),
        (7, "no-root sign checks", c7),
        (8, "zeta continuation vs brute force", c8),
        (9, "Dirichlet mapping", c9),
        (10, "massive to massless order", c10),
        (11, "lattice identity", c11),
        (12, "Bessel recurrence", c12),
    ];
    let mut failed = 0;
    for (id, name, check) in checks {
        let t = Instant::now();
        let res = check();
        let ms = t.elapsed().as_secs_f64() * 1e3;
        match res {
            Ok(detail) => println!("criterion {id:>2} PASS  {name} [{ms:.0} ms]: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name} [{ms:.0} ms]: {detail}");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: 12/12 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 12 criteria failed");
        ExitCode::FAILURE
    }
}
