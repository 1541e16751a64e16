//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Desk scale by default. `ASEDF_ACCEPTANCE_FULL=1` switches every criterion
//! to its full meshes and end times (many hours on one core), and
//! `ASEDF_ACCEPTANCE_ONLY=2,5` runs a subset.

use std::f64::consts::PI;
use std::time::Instant;

use asedf::diagnostics::{relative_drift, vortex_height, wall_density, VortexWindow};
use asedf::gks::{compatibility_residual, gks_time_integrated_flux, GaussPointInput, GksInterfaceState, GksParams};
use asedf::gks::{Half, MomentTable};
use asedf::quadrature::GaussRule;
use asedf::reconstruction::basis::ZeroMeanBasis;
use asedf::reconstruction::smoothness::linear_weights;
use asedf::reconstruction::{
    beta_indicators, df_alpha, evaluate_polynomial, modal_coefficients, simplified_beta5, wenoz_weights, SchemeConfig,
    StencilLevel,
};
use asedf::state::euler_flux;
use asedf::time::{step, RhsEvaluator, StepPlan, TimeScheme};
use asedf::{
    convergence_suite, run_case, timing_harness, CaseSpec, Conserved, FluxKind, GasModel, Primitive, Problem, Result,
    Solver,
};

// 1-D sin wave
const SIN1D_LEVELS: [usize; 4] = [20, 40, 80, 160];
const SIN1D_MIN_ORDER: [(usize, f64); 2] = [(5, 4.7), (7, 6.7)];
const SIN1D_R9_FIRST_ORDER: f64 = 8.0;
const SIN1D_REF_N40: [(usize, f64); 3] = [(5, 8.337553e-7), (7, 5.108345e-9), (9, 2.848478e-11)];
// 2-D sin wave
const SIN2D_MIN_ORDER: [(usize, f64); 3] = [(5, 4.7), (7, 6.7), (9, 7.3)];
const SIN2D_REF_N40: [(usize, f64); 3] = [(5, 1.882335e-6), (7, 1.911540e-8), (9, 8.139979e-11)];
const REF_FACTOR: f64 = 3.0;
// viscous shock tube
const VORTEX_BAND: (f64, f64) = (0.153, 0.178);
const WALL_MASS_DRIFT: f64 = 1e-10;
// timing
const RATIO_7: (f64, f64) = (1.2, 1.7);
const RATIO_9: (f64, f64) = (1.5, 2.2);
const TIMING_STEPS: usize = 20;
// property suites
const MONOMIAL_TOL: f64 = 1e-11;
const ZERO_MEAN_TOL: f64 = 1e-14;
const MOMENT_TOL: f64 = 1e-10;
const COMPAT_TOL: f64 = 1e-12;
const UNIFORM_FLUX_TOL: f64 = 1e-12;
const ODE_SLOPE_TOL: f64 = 0.1;
const PERIODIC_DRIFT: f64 = 1e-11;
// threshold study
const SIGMA_SWEEP: [f64; 4] = [1.0, 2.0, 3.0, 6.0];

const ORDERS: [usize; 3] = [5, 7, 9];

#[derive(Clone, Copy, PartialEq)]
enum Scale {
    Desk,
    Full,
}

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Verdict { pass, detail: detail.into() }
    }
}

type Criterion = fn(Scale) -> Result<Verdict>;

fn main() {
    let scale = match std::env::var("ASEDF_ACCEPTANCE_FULL").as_deref() {
        Ok("1") => Scale::Full,
        _ => Scale::Desk,
    };
    let only: Option<Vec<usize>> = std::env::var("ASEDF_ACCEPTANCE_ONLY")
        .ok()
        .map(|s| s.split(',').filter_map(|t| t.trim().parse().ok()).collect());
    let criteria: [(usize, &str, Criterion); 7] = [
        (1, "1-D sin-wave convergence", sin_wave_1d),
        (2, "2-D sin-wave convergence", sin_wave_2d),
        (3, "robustness suite", robustness),
        (4, "viscous shock tube", viscous_shock_tube),
        (5, "timing ratios", timing),
        (6, "property suites", properties),
        (7, "threshold study", threshold_study),
    ];
    let label = if scale == Scale::Full { "full" } else { "desk" };
    println!("acceptance ({label} scale)");
    let mut failed = 0;
    for (id, title, run) in criteria {
        if only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        let start = Instant::now();
        let v = run(scale).unwrap_or_else(|e| Verdict::new(false, format!("error: {e}")));
        let secs = start.elapsed().as_secs_f64();
        println!("{} {id} {title} [{secs:.0}s]: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        failed += usize::from(!v.pass);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

fn reference(table: &[(usize, f64)], order: usize) -> f64 {
    table.iter().find(|(o, _)| *o == order).map(|(_, e)| *e).unwrap()
}

fn within_factor(value: f64, reference: f64) -> bool {
    value > 0.0 && value <= REF_FACTOR * reference && value >= reference / REF_FACTOR
}

fn sin_wave_1d(_: Scale) -> Result<Verdict> {
    let mut pass = true;
    let mut parts = Vec::new();
    for order in ORDERS {
        let spec = CaseSpec::new(Problem::SinWave1d).with_order(order);
        let rows = convergence_suite(&spec, &SIN1D_LEVELS)?;
        let orders: Vec<f64> = rows.iter().filter_map(|r| r.order).collect();
        let ok_orders = match order {
            9 => orders.first().is_some_and(|o| *o >= SIN1D_R9_FIRST_ORDER),
            _ => {
                let min = reference(&SIN1D_MIN_ORDER, order);
                orders.len() == SIN1D_LEVELS.len() - 1 && orders.iter().all(|o| *o >= min)
            }
        };
        let e40 = rows.iter().find(|r| r.n == 40).map_or(f64::NAN, |r| r.l1);
        let ok_ref = within_factor(e40, reference(&SIN1D_REF_N40, order));
        pass &= ok_orders && ok_ref;
        let os: Vec<String> = orders.iter().map(|o| format!("{o:.2}")).collect();
        parts.push(format!("r{order} L1(40)={e40:.3e} orders {}", os.join("/")));
    }
    Ok(Verdict::new(pass, parts.join("; ")))
}

fn sin_wave_2d(scale: Scale) -> Result<Verdict> {
    let levels: &[usize] = match scale {
        Scale::Desk => &[20, 40],
        Scale::Full => &[20, 40, 80],
    };
    let mut pass = true;
    let mut parts = Vec::new();
    for order in ORDERS {
        let spec = CaseSpec::new(Problem::SinWave2d).with_order(order);
        let rows = convergence_suite(&spec, levels)?;
        let finest = rows.last().and_then(|r| r.order).unwrap_or(f64::NAN);
        let e40 = rows.iter().find(|r| r.n == 40).map_or(f64::NAN, |r| r.l1);
        pass &= finest >= reference(&SIN2D_MIN_ORDER, order) && within_factor(e40, reference(&SIN2D_REF_N40, order));
        parts.push(format!("r{order} L1(40)={e40:.3e} finest order {finest:.2}"));
    }
    Ok(Verdict::new(pass, parts.join("; ")))
}

struct RobustCase {
    problem: Problem,
    desk: (usize, usize, f64),
}

const ROBUST: [RobustCase; 5] = [
    RobustCase { problem: Problem::BlastWave, desk: (400, 1, 0.2) },
    RobustCase { problem: Problem::Config3, desk: (100, 100, 0.6) },
    RobustCase { problem: Problem::DoubleMach, desk: (160, 40, 0.2) },
    RobustCase { problem: Problem::JetMach80, desk: (100, 50, 0.07) },
    RobustCase { problem: Problem::JetMach20000, desk: (400, 200, 1e-4) },
];

fn robustness(scale: Scale) -> Result<Verdict> {
    let mut pass = true;
    let mut parts = Vec::new();
    for case in &ROBUST {
        let mut spec = CaseSpec::new(case.problem);
        if scale == Scale::Desk {
            let (nx, ny, t) = case.desk;
            spec = spec.with_mesh(nx, ny);
            spec.t_end = t;
        } else if case.problem == Problem::JetMach20000 {
            spec = spec.with_mesh(400, 200);
        }
        let mut worst = (f64::INFINITY, f64::INFINITY);
        for order in ORDERS {
            match run_case(&spec.clone().with_order(order), None) {
                Ok(run) => {
                    let r = run.report;
                    let ok = r.min_rho > 0.0 && r.min_p > 0.0 && (r.time - spec.t_end).abs() < 1e-9 * spec.t_end;
                    pass &= ok;
                    worst = (worst.0.min(r.min_rho), worst.1.min(r.min_p));
                    if !ok {
                        parts.push(format!("{} r{order} stopped at t={:e}", spec.name, r.time));
                    }
                }
                Err(e) => {
                    pass = false;
                    parts.push(format!("{} r{order}: {e}", spec.name));
                }
            }
        }
        parts.push(format!(
            "{} {}x{} t={} min rho {:.3e} min p {:.3e}",
            spec.name, spec.nx, spec.ny, spec.t_end, worst.0, worst.1
        ));
    }
    Ok(Verdict::new(pass, parts.join("; ")))
}

fn viscous_shock_tube(scale: Scale) -> Result<Verdict> {
    let (orders, mesh): (&[usize], _) = match scale {
        Scale::Desk => (&[5], (250, 125)),
        Scale::Full => (&[5, 7], (500, 250)),
    };
    let mut pass = true;
    let mut parts = Vec::new();
    for &order in orders {
        let spec = CaseSpec::new(Problem::ViscousShockTube).with_mesh(mesh.0, mesh.1).with_order(order);
        let run = run_case(&spec, None)?;
        let r = &run.report;
        let stable = r.min_rho > 0.0 && r.min_p > 0.0 && r.drift < WALL_MASS_DRIFT;
        let wall = wall_density(&run.field);
        let shape = wall_profile_matches(&wall);
        let height = vortex_height(&run.field, VortexWindow::default());
        let in_band = height.is_some_and(|h| (VORTEX_BAND.0..=VORTEX_BAND.1).contains(&h));
        pass &= stable && shape && (scale == Scale::Desk || in_band);
        let h = height.map_or("none".to_string(), |h| format!("{h:.4}"));
        parts.push(format!(
            "{}x{} r{order} drift {:.1e} wall shape {} vortex height {h}",
            mesh.0,
            mesh.1,
            r.drift,
            if shape { "ok" } else { "off" }
        ));
    }
    Ok(Verdict::new(pass, parts.join("; ")))
}

/// The reflected shock has crossed back past the contact by t = 1: the wall
/// density is lowest in the middle of the tube and rises steeply into the
/// compressed gas next to the right wall.
fn wall_profile_matches(wall: &[(f64, f64)]) -> bool {
    let mean = |lo: f64, hi: f64| {
        let v: Vec<f64> = wall.iter().filter(|(x, _)| (lo..hi).contains(x)).map(|(_, r)| *r).collect();
        v.iter().sum::<f64>() / v.len().max(1) as f64
    };
    let left = mean(0.0, 0.3);
    let right = mean(0.85, 1.0);
    right > 1.5 * left && left > 10.0
}

fn timing(scale: Scale) -> Result<Verdict> {
    let spec = CaseSpec::new(Problem::Config3).with_mesh(200, 200);
    let repeats = if scale == Scale::Full { 3 } else { 2 };
    let rows = timing_harness(&spec, TIMING_STEPS, &ORDERS, repeats)?;
    let r7 = rows[1].ratio;
    let r9 = rows[2].ratio;
    let pass = (RATIO_7.0..=RATIO_7.1).contains(&r7) && (RATIO_9.0..=RATIO_9.1).contains(&r9);
    let secs: Vec<String> = rows.iter().map(|r| format!("{:.2}s", r.seconds)).collect();
    Ok(Verdict::new(pass, format!("{} ratios {r7:.2} / {r9:.2}", secs.join(" "))))
}

fn threshold_study(scale: Scale) -> Result<Verdict> {
    let n = if scale == Scale::Full { 250 } else { 100 };
    let mut counts = Vec::new();
    for s in SIGMA_SWEEP {
        let mut spec = CaseSpec::new(Problem::Config3).with_mesh(n, n);
        spec.recon.sigma_thres = s;
        let r = run_case(&spec, None)?.report;
        if !(r.min_rho > 0.0 && r.min_p > 0.0) {
            return Ok(Verdict::new(false, format!("sigma_thres {s} lost positivity")));
        }
        counts.push(r.df_limited);
    }
    let monotone = counts.windows(2).all(|w| w[1] <= w[0]);
    let listed: Vec<String> = SIGMA_SWEEP.iter().zip(&counts).map(|(s, c)| format!("{s}:{c}")).collect();
    Ok(Verdict::new(monotone, format!("{n}x{n} df-limited {}", listed.join(" "))))
}

fn properties(_: Scale) -> Result<Verdict> {
    let checks: [(&str, fn() -> Result<bool>); 10] = [
        ("monomials", monomial_reproduction),
        ("zero-mean", zero_mean_basis),
        ("wenoz", wenoz_weight_limits),
        ("beta5", simplified_beta_agrees),
        ("alpha", df_alpha_table),
        ("moments", maxwellian_moments),
        ("compatibility", compatibility),
        ("uniform-flux", uniform_flux),
        ("ode-orders", ode_orders),
        ("periodic-drift", periodic_drift),
    ];
    let mut failed = Vec::new();
    for (name, check) in checks {
        if !check()? {
            failed.push(name);
        }
    }
    let detail = if failed.is_empty() { "10/10 suites".to_string() } else { format!("failed: {}", failed.join(", ")) };
    Ok(Verdict::new(failed.is_empty(), detail))
}

const LEVELS: [StencilLevel; 6] = [
    StencilLevel::R3Minus,
    StencilLevel::R3Center,
    StencilLevel::R3Plus,
    StencilLevel::R5,
    StencilLevel::R7,
    StencilLevel::R9,
];

/// Averages of `(xi - s)^d` over the cells `[k-1, k]`, `k` running over the
/// stencil offsets.
fn monomial_window(level: StencilLevel, d: usize, s: f64) -> Vec<f64> {
    let anti = |x: f64| (x - s).powi(d as i32 + 1) / (d + 1) as f64;
    (0..level.len())
        .map(|k| {
            let k = level.first_offset() + k as isize;
            anti(k as f64) - anti(k as f64 - 1.0)
        })
        .collect()
}

fn monomial_reproduction() -> Result<bool> {
    let s = 0.37;
    for level in LEVELS {
        for d in 0..=level.degree() {
            let window = monomial_window(level, d, s);
            let w0 = window[(-level.first_offset()) as usize];
            let modal = modal_coefficients(level, &window)?;
            for xi in [-1.0, 0.0] {
                let (v, dv) = evaluate_polynomial(w0, &modal, xi);
                let exact = (xi - s).powi(d as i32);
                let dexact = if d == 0 { 0.0 } else { d as f64 * (xi - s).powi(d as i32 - 1) };
                let scale = 1.0 + exact.abs().max(dexact.abs());
                if (v - exact).abs() > MONOMIAL_TOL * scale || (dv - dexact).abs() > MONOMIAL_TOL * scale {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn zero_mean_basis() -> Result<bool> {
    let rule = GaussRule::unit(6);
    Ok((1..=8).all(|n| rule.average(-1.0, 0.0, |xi| ZeroMeanBasis::value(n, xi)).abs() < ZERO_MEAN_TOL))
}

fn wenoz_weight_limits() -> Result<bool> {
    let cfg = SchemeConfig::default();
    let d = linear_weights(&cfg);
    let equal = wenoz_weights(0.4, [0.4; 3], &cfg);
    let linear = equal.iter().zip(d).all(|(w, d)| (w - d).abs() < 1e-15);
    let rough = [1e3, 1e-4, 1e-4];
    let w = wenoz_weights(simplified_beta5(rough), rough, &cfg);
    let suppressed = w[1] < 1e-6;
    let mut normalised = true;
    let mut x = 0.123_f64;
    for _ in 0..100 {
        let mut next = || {
            x = (x * 7919.0 + 0.31).fract();
            10.0 * x
        };
        let b = [next(), next(), next()];
        let w = wenoz_weights(next(), b, &cfg);
        normalised &= (w.iter().sum::<f64>() - 1.0).abs() < 1e-14 && w.iter().all(|v| *v > 0.0);
    }
    // smooth data: weights approach the linear ones as the mesh is refined
    let dev = |h: f64| {
        let window: [f64; 5] = std::array::from_fn(|k| {
            let (a, b) = ((k as f64 - 3.0) * h, (k as f64 - 2.0) * h);
            ((a + 0.3).cos() - (b + 0.3).cos()) / h
        });
        let b3 = beta_indicators(&window);
        let w = wenoz_weights(simplified_beta5(b3), b3, &cfg);
        w.iter().zip(d).map(|(w, d)| (w - d).abs()).fold(0.0, f64::max)
    };
    let converging = dev(0.05) < dev(0.1) && dev(0.025) < dev(0.05);
    Ok(linear && suppressed && normalised && converging)
}

/// Full fifth-order indicator: the quartic matching the five averages, with
/// `sum_q int_{-1}^0 (d^q P / dxi^q)^2`.
fn beta5_oracle(window: &[f64; 5]) -> f64 {
    // monomial coefficients c_n of P(xi) = sum c_n xi^n from cell averages
    let mut a = [[0.0; 6]; 5];
    for (row, k) in (-2..=2).enumerate() {
        for n in 0..5 {
            let hi = (k as f64).powi(n as i32 + 1);
            let lo = (k as f64 - 1.0).powi(n as i32 + 1);
            a[row][n] = (hi - lo) / (n + 1) as f64;
        }
        a[row][5] = window[row];
    }
    for col in 0..5 {
        let pivot = (col..5).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        a.swap(col, pivot);
        for row in 0..5 {
            if row != col {
                let f = a[row][col] / a[col][col];
                for k in col..6 {
                    a[row][k] -= f * a[col][k];
                }
            }
        }
    }
    let c: Vec<f64> = (0..5).map(|n| a[n][5] / a[n][n]).collect();
    let rule = GaussRule::unit(6);
    let deriv = |q: usize, xi: f64| -> f64 {
        (q..5)
            .map(|n| {
                let fall: f64 = ((n - q + 1)..=n).map(|m| m as f64).product();
                c[n] * fall * xi.powi((n - q) as i32)
            })
            .sum()
    };
    (1..=4).map(|q| rule.average(-1.0, 0.0, |xi| deriv(q, xi).powi(2))).sum()
}

fn simplified_beta_agrees() -> Result<bool> {
    let rel = |h: f64| {
        let window: [f64; 5] = std::array::from_fn(|k| {
            let (a, b) = ((k as f64 - 3.0) * h, (k as f64 - 2.0) * h);
            ((b + 0.4).sin() - (a + 0.4).sin()) / h
        });
        let exact = beta5_oracle(&window);
        (simplified_beta5(beta_indicators(&window)) - exact).abs() / exact
    };
    let r: Vec<f64> = [0.1, 0.05, 0.025, 0.0125].iter().map(|&h| rel(h)).collect();
    // first order in h: each halving at least roughly halves the gap
    Ok(r.windows(2).all(|w| w[1] < 0.6 * w[0]) && r[3] < 0.05)
}

fn df_alpha_table() -> Result<bool> {
    let table = [(0.0, 2.0, 1.0), (1.9, 2.0, 1.0), (2.0, 2.0, 1.0), (4.0, 2.0, 0.5), (30.0, 3.0, 0.1), (6.0, 6.0, 1.0)];
    let exact = table.iter().all(|&(a, t, e)| (df_alpha(a, t) - e).abs() < 1e-15);
    let invariant = [(0.5, 1.0), (7.0, 2.0), (40.0, 3.0)]
        .iter()
        .all(|&(a, t)| (df_alpha(a, t) - df_alpha(13.0 * a, 13.0 * t)).abs() < 1e-15);
    Ok(exact && invariant)
}

/// Composite Gauss integral of `u^n` against the 1-D Maxwellian over `[a, b]`.
fn quad_moment(n: usize, big_u: f64, lambda: f64, a: f64, b: f64) -> f64 {
    let rule = GaussRule::unit(20);
    let panels = 400;
    let h = (b - a) / panels as f64;
    let norm = (lambda / PI).sqrt();
    (0..panels)
        .map(|p| {
            let lo = a + p as f64 * h;
            h * rule.average(lo, lo + h, |u| u.powi(n as i32) * norm * (-lambda * (u - big_u).powi(2)).exp())
        })
        .sum()
}

fn maxwellian_moments() -> Result<bool> {
    for (big_u, lambda) in [(0.0, 1.0), (1.3, 0.4), (-2.2, 3.0), (0.4, 0.25)] {
        let t = MomentTable::from_parts(1.0, big_u, 0.0, lambda, 3.0);
        let width = 12.0 / f64::sqrt(lambda);
        for n in 0..=6 {
            let scale = (1.0f64).max((1.0 / lambda).powf(n as f64 / 2.0)).max(t.u_full[n].abs());
            let full = quad_moment(n, big_u, lambda, big_u - width, big_u + width);
            let pos = quad_moment(n, big_u, lambda, 0.0, (big_u + width).max(1.0));
            let neg = quad_moment(n, big_u, lambda, (big_u - width).min(-1.0), 0.0);
            let ok = (t.u_full[n] - full).abs() <= MOMENT_TOL * scale
                && (t.u_pos[n] - pos).abs() <= MOMENT_TOL * scale
                && (t.u_neg[n] - neg).abs() <= MOMENT_TOL * scale;
            if !ok {
                return Ok(false);
            }
        }
        let psi = t.psi(Half::Full, 0, 0);
        if (psi[0] - 1.0).abs() > 1e-15 || (psi[1] - big_u).abs() > 1e-15 {
            return Ok(false);
        }
    }
    Ok(true)
}

const AIR: GasModel = GasModel { gamma: 1.4, mu: 0.0, prandtl: 1.0 };

fn compatibility() -> Result<bool> {
    let mut x = 0.5_f64;
    let mut next = |lo: f64, hi: f64| {
        x = (x * 3571.0 + 0.17).fract();
        lo + (hi - lo) * x
    };
    for _ in 0..50 {
        let mut prim = || Primitive::new(next(0.2, 3.0), next(-2.0, 2.0), next(-2.0, 2.0), next(0.2, 3.0));
        let (ql, qr) = (prim(), prim());
        let mut slope = || Conserved::new(next(-1.0, 1.0), next(-1.0, 1.0), next(-1.0, 1.0), next(-1.0, 1.0));
        let input = GaussPointInput {
            wl: ql.to_conserved(&AIR),
            wr: qr.to_conserved(&AIR),
            normal_l: slope(),
            normal_r: slope(),
            tangential_l: slope(),
            tangential_r: slope(),
        };
        let s = GksInterfaceState::assemble(&input, &AIR, 0.01, &GksParams::default())?;
        for (t, an, at, a) in [
            (&s.l, &s.al_n, &s.al_t, &s.time_l),
            (&s.r, &s.ar_n, &s.ar_t, &s.time_r),
            (&s.c, &s.ac_n, &s.ac_t, &s.time_c),
        ] {
            let scale = an.0.iter().chain(at.0.iter()).map(|v| v.abs()).fold(1.0, f64::max);
            if compatibility_residual(t, an, at, a).iter().any(|r| r.abs() > COMPAT_TOL * scale) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn uniform_flux() -> Result<bool> {
    for q in [Primitive::new(1.2, 0.7, -0.4, 0.8), Primitive::new(0.3, -3.0, 1.0, 5.0)] {
        let w = q.to_conserved(&AIR);
        let input = GaussPointInput { wl: w, wr: w, ..Default::default() };
        let dt = 0.013;
        let s = GksInterfaceState::assemble(&input, &AIR, dt, &GksParams::default())?;
        let f = gks_time_integrated_flux(&s, dt) * (1.0 / dt);
        if (f - euler_flux(q, &AIR)).max_abs() > UNIFORM_FLUX_TOL * euler_flux(q, &AIR).max_abs().max(1.0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `y' = k y` with its exact time derivative `k^2 y`.
struct Linear(f64);

impl RhsEvaluator<f64> for Linear {
    fn rhs(&mut self, _: f64, y: &f64, _: f64, _: usize) -> Result<f64> {
        Ok(self.0 * y)
    }
    fn rhs_with_derivative(&mut self, _: f64, y: &f64, _: f64, _: usize) -> Result<(f64, f64)> {
        Ok((self.0 * y, self.0 * self.0 * y))
    }
}

fn ode_orders() -> Result<bool> {
    let global = |scheme: TimeScheme, n: usize| -> Result<f64> {
        let dt = 1.0 / n as f64;
        let mut y = 1.0;
        for s in 0..n {
            y = step(scheme, &y, s as f64 * dt, dt, &mut Linear(-1.0))?;
        }
        Ok((y - (-1.0f64).exp()).abs())
    };
    for (scheme, p) in [(TimeScheme::SspRk3, 3.0), (TimeScheme::S2o4, 4.0)] {
        let e: Vec<f64> = [10, 20, 40].iter().map(|&n| global(scheme, n)).collect::<Result<_>>()?;
        if e.windows(2).any(|w| ((w[0] / w[1]).log2() - p).abs() > ODE_SLOPE_TOL) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn periodic_drift() -> Result<bool> {
    for flux in [FluxKind::Gks, FluxKind::Lf] {
        let mut spec = CaseSpec::new(Problem::SinWave2d).with_mesh(20, 20);
        spec.flux = flux;
        let mut solver = Solver::new(spec.initial_field(), spec.scheme(), spec.boundaries())?;
        let before = solver.field.conserved_total();
        let plan = StepPlan { cfl: 0.5, scheme: spec.time_scheme(), fixed_dt: None };
        solver.run(&plan, f64::INFINITY, Some(100))?;
        let after = solver.field.conserved_total();
        let momentum = (before.rho_u - after.rho_u).abs().max((before.rho_v - after.rho_v).abs()) / before.rho_u.abs();
        if relative_drift(before, after).max(momentum) > PERIODIC_DRIFT {
            return Ok(false);
        }
    }
    Ok(true)
}
