//! The `latnorm` command line. [`run`] returns the process exit code:
//! 0 on success, 2 for invalid input, 3 when a budget or cutoff is hit.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::bounds::{geometric_bound, height_bounds};
use crate::channel::{eve_probability, pep_curve};
use crate::enumeration::{count_table, enumerate_points, BoxSpec, CountTable, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::estimator::{attach_estimates, error_profile};
use crate::export;
use crate::fixture::FieldContext;
use crate::numberfield::Precision;
use crate::zeta::{dirichlet_coeffs, ZetaSeries};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

/// Zeta cutoff for `bounds --radius` when none is given.
pub const DEFAULT_BOUNDS_CUTOFF: usize = 1_000_000;

#[derive(Debug, Parser)]
#[command(name = "latnorm", version, about = "Norm counts and probability bounds for totally real lattice codes")]
pub struct Cli {
    /// Number of Dirichlet coefficients of ζ_K to compute.
    #[arg(long, global = true)]
    pub zeta_cutoff: Option<usize>,
    /// Maximum number of search nodes visited by the enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Certified precision of the embeddings, in bits.
    #[arg(long, global = true, default_value_t = 80)]
    pub precision_bits: u32,
    /// Write the main artifact here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct BoxArgs {
    /// Field document (JSON).
    pub field: PathBuf,
    /// Half-width of the cube [-R, R]^n.
    #[arg(long)]
    pub radius: f64,
    /// Keep only norms up to this value.
    #[arg(long)]
    pub max_norm: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Embeddings, discriminant, regulator, w and vol(Λ_log).
    FieldInfo { field: PathBuf },
    /// Dirichlet coefficients a_k of ζ_K as CSV.
    ZetaCoeffs {
        field: PathBuf,
        #[arg(long)]
        max: usize,
    },
    /// Box points with coordinates, norm and height as CSV.
    Enumerate {
        field: PathBuf,
        #[arg(long)]
        radius: f64,
    },
    /// Exact counts b_k by norm.
    Counts(BoxArgs),
    /// Adds the estimate columns and writes the error profile.
    Estimate {
        #[command(flatten)]
        target: BoxArgs,
        /// Reuse a table written by `counts` instead of enumerating.
        #[arg(long)]
        counts: Option<PathBuf>,
        /// Where to write the f_k histogram CSV.
        #[arg(long)]
        histogram: Option<PathBuf>,
    },
    /// Height propositions (--height) or the geometric bound (--radius).
    Bounds {
        field: PathBuf,
        #[arg(long)]
        s: u32,
        #[arg(long, conflicts_with = "radius", required_unless_present = "radius")]
        height: Option<f64>,
        #[arg(long)]
        radius: Option<f64>,
        /// Largest weighted derivative tail, relative to the bound.
        #[arg(long, default_value_t = 1e-4)]
        tolerance: f64,
    },
    /// Union-bound PEP curve with estimated and exact counts.
    Pep {
        #[command(flatten)]
        target: BoxArgs,
        /// START:STOP:POINTS in dB.
        #[arg(long)]
        snr: SnrRange,
    },
    /// Eavesdropper's probability of correct decision.
    Eve {
        #[command(flatten)]
        target: BoxArgs,
        #[arg(long)]
        gamma: f64,
        /// Volume of the fundamental region of Bob's lattice.
        #[arg(long)]
        vol: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SnrRange {
    pub start_db: f64,
    pub stop_db: f64,
    pub points: usize,
}

impl FromStr for SnrRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, p] = parts[..] else {
            return Err(format!("expected START:STOP:POINTS, got {s:?}"));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("{t:?} is not a number"));
        let points = p.trim().parse().map_err(|_| format!("{p:?} is not a point count"))?;
        Ok(SnrRange { start_db: num(a)?, stop_db: num(b)?, points })
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.name());
            eprintln!("hint: {}", e.hint());
            if e.is_limit() {
                EXIT_LIMIT
            } else {
                EXIT_INVALID
            }
        }
    }
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load(cli: &Cli, path: &Path) -> Result<FieldContext> {
    FieldContext::load(path, Precision::new(cli.precision_bits)?)
}

fn zeta_for(cli: &Cli, ctx: &FieldContext, needed: u64) -> Result<ZetaSeries> {
    let cutoff = match cli.zeta_cutoff {
        Some(c) => c,
        None => {
            usize::try_from(needed).map_err(|_| Error::InvalidParameter(format!("norm limit {needed} too large")))?
        }
    };
    dirichlet_coeffs(&ctx.field, cutoff)
}

fn exact_table(cli: &Cli, ctx: &FieldContext, target: &BoxArgs) -> Result<CountTable> {
    let spec = BoxSpec::new(target.radius)?;
    let limit = spec.norm_limit(ctx.degree()).min(target.max_norm.unwrap_or(u64::MAX));
    let zeta = zeta_for(cli, ctx, limit)?;
    count_table(&ctx.field, &spec, &zeta, target.max_norm, cli.budget)
}

fn estimated_table(cli: &Cli, ctx: &FieldContext, target: &BoxArgs) -> Result<CountTable> {
    let mut table = exact_table(cli, ctx, target)?;
    attach_estimates(&mut table, &ctx.units);
    Ok(table)
}

fn execute(cli: &Cli) -> Result<()> {
    let out = cli.output.as_deref();
    match &cli.command {
        Command::FieldInfo { field } => {
            let ctx = load(cli, field)?;
            let k = &ctx.field;
            let (r1, r2) = k.signature();
            let report = json!({
                "label": ctx.label,
                "min_poly": k.min_poly().to_string(),
                "degree": k.degree(),
                "signature": [r1, r2],
                "poly_discriminant": k.poly_discriminant().to_string(),
                "embeddings": k.roots().iter().map(|r| r.value.to_f64()).collect::<Vec<_>>(),
                "embedding_radius": k.roots().iter().map(|r| r.radius).fold(0.0, f64::max),
                "precision_bits": k.precision().bits(),
                "fundamental_units": ctx.units.units().iter().map(|u| u.to_string()).collect::<Vec<_>>(),
                "unit_source": ctx.unit_source,
                "regulator": ctx.units.regulator(),
                "second_minor": ctx.units.second_minor(),
                "w": ctx.units.w(),
                "log_volume": ctx.units.log_volume(),
                "expected_regulator": ctx.regulator_check.map(|c| c.expected),
                "regulator_ratio": ctx.regulator_check.map(|c| c.ratio),
                "regulator_matches": ctx.regulator_check.map(|c| c.matches),
            });
            export::write_json(&report, sink(out)?)
        }
        Command::ZetaCoeffs { field, max } => {
            let ctx = load(cli, field)?;
            let zeta = dirichlet_coeffs(&ctx.field, cli.zeta_cutoff.unwrap_or(*max).max(*max))?;
            export::write_zeta_coeffs(&zeta, *max, sink(out)?)
        }
        Command::Enumerate { field, radius } => {
            let ctx = load(cli, field)?;
            let points = enumerate_points(&ctx.field, &BoxSpec::new(*radius)?, cli.budget)?;
            export::write_points(&points, ctx.degree(), sink(out)?)
        }
        Command::Counts(target) => {
            let ctx = load(cli, &target.field)?;
            export::write_count_table(&exact_table(cli, &ctx, target)?, sink(out)?)
        }
        Command::Estimate { target, counts, histogram } => {
            let ctx = load(cli, &target.field)?;
            let table = match counts {
                Some(path) => {
                    let mut t =
                        export::read_count_table(File::open(path)?, target.radius, ctx.degree(), target.max_norm)?;
                    attach_estimates(&mut t, &ctx.units);
                    t
                }
                None => estimated_table(cli, &ctx, target)?,
            };
            export::write_count_table(&table, sink(out)?)?;
            let profile = error_profile(&table)?;
            if let Some(path) = histogram {
                export::write_error_histogram(&profile, BufWriter::new(File::create(path)?))?;
            }
            eprintln!(
                "rows {} max_error {} zero_fraction {}",
                profile.rows,
                profile.max_error,
                export::format_float(profile.zero_fraction)
            );
            Ok(())
        }
        Command::Bounds { field, s, height, radius, tolerance } => {
            let ctx = load(cli, field)?;
            let report = match (height, radius) {
                (Some(m), _) => {
                    let r = height_bounds(&ctx.field, *s, *m, cli.budget)?;
                    json!({ "label": ctx.label, "kind": "height", "report": r })
                }
                (None, Some(r)) => {
                    let zeta = dirichlet_coeffs(&ctx.field, cli.zeta_cutoff.unwrap_or(DEFAULT_BOUNDS_CUTOFF))?;
                    let g = geometric_bound(&zeta, &ctx.units, *s, *r, *tolerance)?;
                    json!({ "label": ctx.label, "kind": "geometric", "tolerance": tolerance, "report": g })
                }
                (None, None) => unreachable!("clap requires --height or --radius"),
            };
            export::write_json(&report, sink(out)?)
        }
        Command::Pep { target, snr } => {
            let ctx = load(cli, &target.field)?;
            let table = estimated_table(cli, &ctx, target)?;
            let curve = pep_curve(&table, snr.start_db, snr.stop_db, snr.points)?;
            eprintln!("ratio {}", export::format_float(curve.ratio));
            export::write_pep_curve(&curve, sink(out)?)
        }
        Command::Eve { target, gamma, vol } => {
            let ctx = load(cli, &target.field)?;
            let table = exact_table(cli, &ctx, target)?;
            let p = eve_probability(&table, *gamma, *vol)?;
            let report = json!({
                "label": ctx.label,
                "radius": target.radius,
                "gamma_e": gamma,
                "vol_lambda_b": vol,
                "k_limit": table.k_limit,
                "probability": p,
            });
            export::write_json(&report, sink(out)?)
        }
    }
}
