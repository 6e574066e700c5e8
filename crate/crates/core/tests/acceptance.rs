//! Acceptance run: one PASS/FAIL line per criterion. Runtimes are measured on
//! the calling thread and checked against each criterion's budget.
//!
//! The run reports without gating so that a workspace test run continues past
//! it; `cargo test --test acceptance -- --strict` exits 1 on any failure.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use latnorm::bounds::{geometric_bound, height_bounds};
use latnorm::channel::pep_curve;
use latnorm::cli;
use latnorm::enumeration::{count_table, BoxSpec, CountTable, DEFAULT_BUDGET};
use latnorm::estimator::{attach_estimates, error_profile};
use latnorm::export;
use latnorm::fixture::{FieldContext, UnitSource};
use latnorm::zeta::{dirichlet_coeffs, zeta_value};
use latnorm::Precision;

// tolerances and thresholds
const REGULATOR_QUADRATIC: f64 = 0.481211825059603;
const REGULATOR_QUADRATIC_TOL: f64 = 1e-9;
const REGULATOR_OCTIC: f64 = 28.4375954169998;
const REGULATOR_OCTIC_TOL: f64 = 1e-6;
const MAX_ERROR_QUADRATIC: u64 = 2;
const MAX_ERROR_EXTENDED: u64 = 3;
const MAX_ERROR_QUARTIC: u64 = 3;
const ZERO_FRACTION_OCTIC: f64 = 0.5;
const CUMULATIVE_F15_OCTIC: f64 = 0.90;
const UNIT_ESTIMATE: f64 = 19.13;
const UNIT_ESTIMATE_TOL: f64 = 0.01;
const ZETA2_TOL: f64 = 1e-3;
const PEP_RATIO_LO: f64 = 0.95;
const PEP_RATIO_HI: f64 = 1.05;
const PEP_GAMMA_REL: f64 = 1e-12;
const BOUND_REL_TOL: f64 = 1e-4;
const BOUND_ZETA_CUTOFF: usize = 1_000_000;

struct Outcome {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
    limit: Duration,
}

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn load(name: &str) -> FieldContext {
    FieldContext::load(fixture_path(name), Precision::default()).expect("fixture loads")
}

fn estimated(ctx: &FieldContext, radius: f64, max_norm: Option<u64>) -> CountTable {
    let spec = BoxSpec::new(radius).unwrap();
    let limit = spec.norm_limit(ctx.degree()).min(max_norm.unwrap_or(u64::MAX));
    let zeta = dirichlet_coeffs(&ctx.field, limit as usize).unwrap();
    let mut t = count_table(&ctx.field, &spec, &zeta, max_norm, DEFAULT_BUDGET).unwrap();
    attach_estimates(&mut t, &ctx.units);
    t
}

fn archive_dir() -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn regulator_quadratic() -> (bool, String) {
    let out = archive_dir().join("field-info-qsqrt5.json");
    let path = fixture_path("qsqrt5.json");
    let code = cli::run(["latnorm", "field-info", path.to_str().unwrap(), "--output", out.to_str().unwrap()]);
    let info: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let rho = info["regulator"].as_f64().unwrap();
    let source = info["unit_source"].as_str().unwrap().to_string();
    let pass =
        code == 0 && (rho - REGULATOR_QUADRATIC).abs() <= REGULATOR_QUADRATIC_TOL && source == "continued_fraction";
    (pass, format!("rho = {} via {source}", export::format_float(rho)))
}

fn regulator_octic() -> (bool, String) {
    let ctx = load("qzeta32plus.json");
    let rho = ctx.units.regulator();
    let pass = (rho - REGULATOR_OCTIC).abs() <= REGULATOR_OCTIC_TOL;
    (
        pass,
        format!(
            "rho = {} for x^8-8x^6+20x^4-16x^2+2, want {REGULATOR_OCTIC} (ratio {:.6})",
            export::format_float(rho),
            rho / REGULATOR_OCTIC
        ),
    )
}

fn conductor17_regulator() -> String {
    let ctx = load("qzeta17plus.json");
    let rho = ctx.units.regulator();
    format!(
        "Q(zeta17+zeta17^-1): rho = {}, |rho - {REGULATOR_OCTIC}| = {:.1e}",
        export::format_float(rho),
        (rho - REGULATOR_OCTIC).abs()
    )
}

fn quadratic_error() -> (bool, String) {
    let ctx = load("qsqrt5.json");
    let t = estimated(&ctx, 10.0, Some(100));
    let p = error_profile(&t).unwrap();
    let some_nonzero = t.rows.iter().any(|r| r.f.unwrap_or(0) >= 1);
    (
        p.max_error <= MAX_ERROR_QUADRATIC && some_nonzero,
        format!("max f_k = {} over {} rows, zero fraction {:.3}", p.max_error, p.rows, p.zero_fraction),
    )
}

fn quadratic_extended() -> (bool, String) {
    let ctx = load("qsqrt5.json");
    let dir = archive_dir();
    let t = estimated(&ctx, 2000.0, Some(2000));
    export::write_count_table(&t, fs::File::create(dir.join("qsqrt5-R2000.csv")).unwrap()).unwrap();
    let p = error_profile(&t).unwrap();
    let worst: Vec<String> = t
        .rows
        .iter()
        .filter(|r| r.f == Some(p.max_error))
        .map(|r| format!("k={} b={} n={:.2}", r.k, r.b.unwrap(), r.n_raw.unwrap()))
        .collect();

    let v = estimated(&ctx, 2000f64.sqrt(), None);
    export::write_count_table(&v, fs::File::create(dir.join("qsqrt5-Rsqrt2000.csv")).unwrap()).unwrap();
    let pv = error_profile(&v).unwrap();
    (
        p.max_error <= MAX_ERROR_EXTENDED,
        format!(
            "R = 2000: max f_k = {} ({}); R = sqrt(2000) archived, max f_k = {}",
            p.max_error,
            worst.join(", "),
            pv.max_error
        ),
    )
}

fn quartic_error() -> (bool, String) {
    let ctx = load("quartic725.json");
    let t = estimated(&ctx, 10.0, Some(10_000));
    let p = error_profile(&t).unwrap();
    let over = t.rows.iter().filter(|r| r.f.unwrap_or(0) > MAX_ERROR_QUARTIC).count();
    (
        p.max_error <= MAX_ERROR_QUARTIC,
        format!("max f_k = {}, {over} of {} rows above {MAX_ERROR_QUARTIC}", p.max_error, p.rows),
    )
}

fn octic_profile() -> (bool, String) {
    let ctx = load("qzeta32plus.json");
    let t = estimated(&ctx, 5.0, Some(65_536));
    let p = error_profile(&t).unwrap();
    let f15 = p.fraction_at_most(15);
    (
        p.zero_fraction > ZERO_FRACTION_OCTIC && f15 >= CUMULATIVE_F15_OCTIC,
        format!(
            "zero fraction {:.3}, P(f_k <= 15) = {:.3} over {} rows (rho = {})",
            p.zero_fraction,
            f15,
            p.rows,
            export::format_float(ctx.units.regulator())
        ),
    )
}

fn unit_count() -> (bool, String) {
    let ctx = load("qsqrt5.json");
    let t = estimated(&ctx, 10.0, Some(1));
    let r = t.row(1).unwrap();
    let n1 = r.n_raw.unwrap();
    (
        (n1 - UNIT_ESTIMATE).abs() <= UNIT_ESTIMATE_TOL && r.b == Some(18),
        format!("n_1 = {n1:.4}, b_1 = {}", r.b.unwrap()),
    )
}

fn zeta_oracle() -> (bool, String) {
    let ctx = load("qsqrt5.json");
    let z = dirichlet_coeffs(&ctx.field, 10_000).unwrap();
    let chi = |d: u64| match d % 5 {
        1 | 4 => 1i64,
        2 | 3 => -1,
        _ => 0,
    };
    let mismatches = (1..=10_000u64)
        .filter(|&k| {
            let want: i64 = (1..=k).filter(|d| k % d == 0).map(chi).sum();
            z.coeff(k).unwrap() as i64 != want
        })
        .count();
    (mismatches == 0, format!("{mismatches} mismatches for k <= 10000"))
}

fn zeta_two() -> (bool, String) {
    let ctx = load("qsqrt5.json");
    let z = dirichlet_coeffs(&ctx.field, 1_000_000).unwrap();
    let v = zeta_value(&z, 2, ZETA2_TOL).unwrap();
    let pi2 = std::f64::consts::PI.powi(2);
    let closed = pi2 / 6.0 * 4.0 * pi2 / (25.0 * 5f64.sqrt());
    (
        (v.value - closed).abs() <= ZETA2_TOL,
        format!("partial sum {:.6} (tail {:.1e}), closed form {closed:.6}", v.value, v.tail),
    )
}

fn height_propositions() -> (bool, String) {
    let mut cases = Vec::new();
    for (name, heights) in [("qsqrt5.json", &[10.0, 100.0][..]), ("quartic725.json", &[10.0][..])] {
        let ctx = load(name);
        for &m in heights {
            for s in [2, 3] {
                let r = height_bounds(&ctx.field, s, m, DEFAULT_BUDGET).unwrap();
                cases.push((r.lower_bound_holds && r.upper_bound_holds, format!("n={} s={s} m={m}", ctx.degree())));
            }
        }
    }
    let failed: Vec<&str> = cases.iter().filter(|c| !c.0).map(|c| c.1.as_str()).collect();
    (
        failed.is_empty(),
        if failed.is_empty() {
            format!("{} cases hold", cases.len())
        } else {
            format!("fails at {}", failed.join("; "))
        },
    )
}

fn bound_chain() -> (bool, String) {
    let mut checked = 0;
    let mut failed = Vec::new();
    let mut truncated = 0;
    for name in ["qsqrt5.json", "quartic725.json", "qzeta32plus.json", "qzeta17plus.json"] {
        let ctx = load(name);
        let z = dirichlet_coeffs(&ctx.field, BOUND_ZETA_CUTOFF).unwrap();
        for s in [2, 3] {
            for r in [5.0, 10.0] {
                checked += 1;
                match geometric_bound(&z, &ctx.units, s, r, BOUND_REL_TOL) {
                    Ok(g) => {
                        truncated += g.truncated as usize;
                        if !(g.chain_holds && g.stable) {
                            failed.push(format!("{} s={s} R={r}", ctx.label));
                        }
                    }
                    Err(e) => failed.push(format!("{} s={s} R={r}: {e}", ctx.label)),
                }
            }
        }
    }
    (
        failed.is_empty(),
        if failed.is_empty() {
            format!("{checked} cases ordered and stable ({truncated} summed to the zeta cutoff {BOUND_ZETA_CUTOFF})")
        } else {
            format!("fails at {}", failed.join("; "))
        },
    )
}

fn pep_alignment() -> (bool, String) {
    let ctx = load("quartic725.json");
    let t = estimated(&ctx, 10.0, Some(10_000));
    let c = pep_curve(&t, 0.0, 30.0, 16).unwrap();
    let drift =
        c.pe_estimate.iter().zip(&c.pe_exact).map(|(e, x)| ((e / x) - c.ratio).abs() / c.ratio).fold(0.0, f64::max);
    (
        (PEP_RATIO_LO..=PEP_RATIO_HI).contains(&c.ratio) && drift <= PEP_GAMMA_REL,
        format!("ratio {:.5}, max relative drift over the SNR grid {drift:.1e}", c.ratio),
    )
}

fn timed(id: u32, name: &'static str, limit_s: u64, f: fn() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (pass, detail) = f();
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(limit_s);
    Outcome { id, name, pass: pass && elapsed <= limit, detail, elapsed, limit }
}

fn main() -> ExitCode {
    // filter arguments are ignored; every criterion runs
    let strict = std::env::args().any(|a| a == "--strict");
    let outcomes = [
        timed(1, "regulator, degree 2", 1, regulator_quadratic),
        timed(2, "regulator, degree 8", 1, regulator_octic),
        timed(3, "n = 2 error, R = 10", 5, quadratic_error),
        timed(4, "n = 2 error, R = 2000", 120, quadratic_extended),
        timed(5, "n = 4 error, R = 10", 120, quartic_error),
        timed(6, "n = 8 error profile, R = 5", 300, octic_profile),
        timed(7, "unit count estimate", 1, unit_count),
        timed(8, "zeta coefficients vs character sums", 5, zeta_oracle),
        timed(9, "zeta value at 2", 10, zeta_two),
        timed(10, "height-bounded sums", 60, height_propositions),
        timed(11, "geometric bound chain", 60, bound_chain),
        timed(12, "PEP alignment", 1, pep_alignment),
    ];
    println!();
    for o in &outcomes {
        println!(
            "[{}] {:>2} {}: {} ({:.2} s, limit {} s)",
            if o.pass { "PASS" } else { "FAIL" },
            o.id,
            o.name,
            o.detail,
            o.elapsed.as_secs_f64(),
            o.limit.as_secs()
        );
    }
    println!("[INFO]  - {}", conductor17_regulator());
    let ctx = load("qsqrt5.json");
    assert_eq!(ctx.unit_source, UnitSource::ContinuedFraction);
    let passed = outcomes.iter().filter(|o| o.pass).count();
    let failing: Vec<String> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id.to_string()).collect();
    println!(
        "\nacceptance: {passed} of {} criteria pass{}",
        outcomes.len(),
        if failing.is_empty() { String::new() } else { format!("; failing: {}", failing.join(", ")) }
    );
    if passed == outcomes.len() || !strict {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
