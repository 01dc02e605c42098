//! Command-line front end.
//!
//! Output is line-oriented and independent of `--jobs`. Exit codes: 0
//! success, 2 input error, 3 precondition violation, 4 resource cap.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use num_traits::Zero;

use crate::certificates::{
    certificate_by_search, certificate_constructive, support_reduce, CertifyOptions, InfeasibilityCertificate,
};
use crate::error::{Error, Result};
use crate::feasibility::{mixed_feasible, verify_exhaustion, BoundsBox, BoundsPolicy, FeasibilityVerdict, MixedOptions};
use crate::io::{emit_points, emit_system, parse_points, parse_system};
use crate::lab::random::{random_family, random_infeasible_system, random_planar_set, seeded};
use crate::lab::witness::fig1;
use crate::lab::{
    check_2d_helly_radon, fractional_probe, helly_grid_search, helly_independent, helly_number_search, radon_grid_search,
    radon_number_search,
    witness_cube, witness_radon_double,
};
use crate::numeric::{fmt_point, parse_rational, AffineForm, Point, Rational};
use crate::spaces::{GroundSet, SpaceDescriptor};
use crate::system::InequalitySystem;

#[derive(Debug, Parser)]
#[command(name = "mixhelly", version, about = "Exact feasibility, infeasibility certificates and Helly/Radon oracles")]
pub struct Cli {
    /// Worker threads for parallel subset scans; output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide a system file over its space.
    Feasible {
        file: PathBuf,
        #[command(flatten)]
        budgets: Budgets,
        /// Refuse systems without LP-bounded discrete coordinates instead of
        /// using the certified box.
        #[arg(long)]
        require_bounds: bool,
    },
    /// Extract a small infeasible subsystem.
    Certify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Search)]
        method: MethodArg,
        /// Largest certificate size searched; defaults to the space's Helly
        /// budget.
        #[arg(long)]
        budget: Option<usize>,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Shrink a system to a few forms with the same supremum.
    Support {
        file: PathBuf,
        /// Objective `c1 … ck b` as one quoted argument.
        #[arg(long, allow_hyphen_values = true)]
        objective: String,
        /// Helly budget `h`; the support has at most `h − 1` forms.
        #[arg(long)]
        budget: Option<usize>,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Helly/Radon experiments.
    Lab {
        #[command(subcommand)]
        command: LabCommand,
    },
    /// Seeded random instances in the file formats.
    Gen {
        #[command(subcommand)]
        command: GenCommand,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Budgets {
    #[arg(long, default_value_t = 200_000)]
    pub node_cap: usize,
    #[arg(long, default_value = "1048576", value_parser = rational_arg)]
    pub t_max: Rational,
    #[arg(long, default_value = "1", value_parser = rational_arg)]
    pub delta0: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Search,
    Constructive,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct WindowArgs {
    /// Space descriptor such as `Z^2` or `{0,1,2,5/2} x Z`.
    #[arg(long, value_parser = space_arg, required_unless_present = "points")]
    pub space: Option<SpaceDescriptor>,
    /// `lo:hi` for every coordinate, or a comma list with one range per
    /// coordinate. Defaults to `0:3`.
    #[arg(long)]
    pub window: Option<String>,
    /// Point-set file used as a finite ground set.
    #[arg(long)]
    pub points: Option<PathBuf>,
    #[arg(long)]
    pub max_size: Option<usize>,
    #[arg(long, default_value_t = 10_000_000)]
    pub node_cap: u64,
    /// Real axes are sampled at multiples of `1/grid`.
    #[arg(long, default_value_t = 2)]
    pub grid: u32,
}

#[derive(Debug, Subcommand)]
pub enum LabCommand {
    /// Largest Helly-independent configuration in a window.
    Helly(WindowArgs),
    /// Largest partition-free configuration in a window.
    Radon(WindowArgs),
    /// Named witnesses: `fig1`, `cube`, `radon-double`.
    Witness {
        name: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
    },
    /// Helly/Radon case split on random finite planar sets.
    Thm5 {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        max_points: usize,
    },
    /// Fractional pairs `(α, β)` on a random family of lattice hulls.
    Probe {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        sets: usize,
        #[arg(long, default_value_t = 4)]
        h: usize,
        #[arg(long, default_value_t = 3)]
        width: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// An infeasible system over `ℝⁿ × ℤᵈ`.
    Infeasible {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = 16)]
        max_forms: usize,
    },
    /// A random finite planar point set.
    Planar {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_points: usize,
    },
}

fn rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s)
}

fn space_arg(s: &str) -> std::result::Result<SpaceDescriptor, String> {
    s.parse()
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::parse(0, format!("{}: {e}", path.display())))
}

fn certify_options(b: &Budgets, jobs: usize) -> CertifyOptions {
    CertifyOptions {
        node_cap: b.node_cap,
        t_max: b.t_max.clone(),
        delta0: b.delta0.clone(),
        parallel: cfg!(feature = "parallel") && jobs != 1,
        ..CertifyOptions::default()
    }
}

/// Parse `lo:hi` or `lo:hi,lo:hi,…` into a box of the given dimension.
pub fn parse_window(text: &str, dim: usize) -> Result<BoundsBox> {
    let ranges = text
        .split(',')
        .map(|r| {
            let (lo, hi) = r.split_once(':').ok_or_else(|| Error::parse(0, format!("window range `{r}` is not lo:hi")))?;
            let lo = parse_rational(lo).map_err(|e| Error::parse(0, e))?;
            let hi = parse_rational(hi).map_err(|e| Error::parse(0, e))?;
            Ok((lo, hi))
        })
        .collect::<Result<Vec<_>>>()?;
    let ranges = match ranges.len() {
        1 => vec![ranges[0].clone(); dim],
        n if n == dim => ranges,
        n => return Err(Error::DimensionMismatch { expected: dim, found: n }),
    };
    Ok(BoundsBox {
        lower: ranges.iter().map(|(l, _)| Some(l.clone())).collect(),
        upper: ranges.into_iter().map(|(_, h)| Some(h)).collect(),
    })
}

fn ground_and_window(args: &WindowArgs) -> Result<(GroundSet, Option<BoundsBox>)> {
    if let Some(path) = &args.points {
        let (_, pts) = parse_points(&read(path)?)?;
        let dim = pts.first().map_or(0, Vec::len);
        let window = args.window.as_deref().map(|w| parse_window(w, dim)).transpose()?;
        return Ok((GroundSet::Points(pts), window));
    }
    let space = args.space.clone().expect("clap requires --space without --points");
    let window = parse_window(args.window.as_deref().unwrap_or("0:3"), space.dim())?;
    Ok((space.into(), Some(window)))
}

fn points_str(points: &[Point]) -> String {
    points.iter().map(|p| format!("({})", fmt_point(p))).join(" ")
}

/// Render a verdict in the line format of the `feasible` command.
pub fn render_verdict(system: &InequalitySystem, verdict: &FeasibilityVerdict) -> String {
    let mut out = String::new();
    match verdict {
        FeasibilityVerdict::Feasible { witness } => {
            writeln!(out, "FEASIBLE witness=({})", fmt_point(witness)).ok();
        }
        FeasibilityVerdict::Infeasible { farkas } => {
            let support = farkas
                .multipliers
                .iter()
                .enumerate()
                .filter(|(_, l)| !l.is_zero())
                .map(|(i, l)| format!("{i}:{l}"))
                .join(",");
            writeln!(out, "INFEASIBLE").ok();
            writeln!(out, "FARKAS multipliers={support}").ok();
        }
        FeasibilityVerdict::InfeasibleByExhaustion(record) => {
            writeln!(out, "INFEASIBLE").ok();
            writeln!(out, "EXHAUSTION nodes={} leaves={}", record.nodes, record.root.leaves()).ok();
            let ok = verify_exhaustion(system, record);
            writeln!(out, "CHECK exhaustion record re-verified {}", if ok { "ok" } else { "FAILED" }).ok();
        }
    }
    out
}

/// Run a parsed command line, returning the text for standard output.
pub fn run(cli: Cli) -> Result<String> {
    #[cfg(feature = "parallel")]
    if cli.jobs > 0 {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    let jobs = cli.jobs;
    let mut out = String::new();
    match cli.command {
        Command::Feasible {
            file,
            budgets,
            require_bounds,
        } => {
            let system = parse_system(&read(&file)?)?;
            let options = MixedOptions {
                bounds: if require_bounds {
                    BoundsPolicy::Require
                } else {
                    BoundsPolicy::Certified
                },
                node_cap: budgets.node_cap,
            };
            let verdict = mixed_feasible(&system, &options)?;
            out.push_str(&render_verdict(&system, &verdict));
        }
        Command::Certify {
            file,
            method,
            budget,
            budgets,
        } => {
            let system = parse_system(&read(&file)?)?;
            let options = certify_options(&budgets, jobs);
            let budget = resolve_budget(&system.space, budget)?;
            let mut certs: Vec<InfeasibilityCertificate> = Vec::new();
            if method != MethodArg::Constructive {
                certs.push(certificate_by_search(&system, budget, &options)?);
            }
            if method != MethodArg::Search {
                certs.push(certificate_constructive(&system, &options)?);
            }
            for c in &certs {
                writeln!(out, "{c}").ok();
            }
            if let [s, c] = certs.as_slice() {
                writeln!(
                    out,
                    "COMPARE search={} constructive={} budget={budget} both_verified={}",
                    s.size(),
                    c.size(),
                    s.verify(&system) && c.verify(&system)
                )
                .ok();
            }
        }
        Command::Support {
            file,
            objective,
            budget,
            budgets,
        } => {
            let system = parse_system(&read(&file)?)?;
            let values = objective
                .split_whitespace()
                .map(|t| parse_rational(t).map_err(|e| Error::parse(0, e)))
                .collect::<Result<Vec<_>>>()?;
            if values.len() != system.dim() + 1 {
                return Err(Error::DimensionMismatch {
                    expected: system.dim() + 1,
                    found: values.len(),
                });
            }
            let objective = AffineForm::from_vector(values);
            let budget = resolve_budget(&system.space, budget)?;
            let cert = support_reduce(&system, &objective, budget, &certify_options(&budgets, jobs))?;
            writeln!(out, "{cert}").ok();
        }
        Command::Lab { command } => run_lab(command, &mut out)?,
        Command::Gen { command } => match command {
            GenCommand::Infeasible { seed, n, d, max_forms } => {
                let system = random_infeasible_system(&mut seeded(seed), n, d, max_forms, 8)?;
                out.push_str(&emit_system(&system));
            }
            GenCommand::Planar { seed, max_points } => {
                let pts = random_planar_set(&mut seeded(seed), max_points.max(1));
                out.push_str(&emit_points(&SpaceDescriptor::reals(2), &pts));
            }
        },
    }
    Ok(out)
}

fn resolve_budget(space: &SpaceDescriptor, budget: Option<usize>) -> Result<usize> {
    match (budget, space.helly_budget().value()) {
        (Some(b), _) => Ok(b),
        (None, Some(h)) => Ok(h as usize),
        (None, None) => Err(Error::precondition(format!(
            "no known Helly budget for {space}; pass --budget"
        ))),
    }
}

fn run_lab(command: LabCommand, out: &mut String) -> Result<()> {
    match command {
        LabCommand::Helly(args) => {
            let (ground, window) = ground_and_window(&args)?;
            let max_size = args.max_size.unwrap_or(64);
            let r = match (&ground, &window) {
                (GroundSet::Space(space), Some(w)) if space.has_real() => {
                    writeln!(out, "grid=1/{} (real axes sampled)", args.grid).ok();
                    helly_grid_search(space, w, args.grid, max_size, args.node_cap)?
                }
                _ => helly_number_search(&ground, window.as_ref(), max_size, args.node_cap)?,
            };
            writeln!(out, "h_lower={}", r.size).ok();
            writeln!(out, "configuration={}", points_str(&r.configuration)).ok();
            match r.exhausted_at {
                Some(k) => writeln!(out, "no_independent_set_of_size={k}").ok(),
                None => writeln!(out, "scan_stopped_at_max_size=true").ok(),
            };
            writeln!(out, "window_points={} examined={}", r.window_points, r.examined).ok();
        }
        LabCommand::Radon(args) => {
            let (ground, window) = ground_and_window(&args)?;
            let max_size = args.max_size.unwrap_or(64);
            let r = match (&ground, &window) {
                (GroundSet::Space(space), Some(w)) if space.has_real() => {
                    writeln!(out, "grid=1/{} (real axes sampled)", args.grid).ok();
                    radon_grid_search(space, w, args.grid, max_size, args.node_cap)?
                }
                _ => radon_number_search(&ground, window.as_ref(), max_size, args.node_cap)?,
            };
            writeln!(out, "partition_free_max={}", r.partition_free_max).ok();
            writeln!(out, "r_lower={}", r.partition_free_max + 1).ok();
            writeln!(out, "configuration={}", points_str(&r.configuration)).ok();
            writeln!(out, "next_all_partitioned={}", r.next_all_partitioned).ok();
            writeln!(out, "window_points={} examined={}", r.window_points, r.examined).ok();
        }
        LabCommand::Witness { name, dim } => match name.as_str() {
            "fig1" => {
                let report = fig1()?;
                writeln!(out, "{report}").ok();
                if !report.holds() {
                    return Err(Error::precondition("the five-set pattern failed to verify"));
                }
            }
            "cube" => {
                let c = witness_cube(dim)?;
                let ok = helly_independent(&c, &SpaceDescriptor::integers(dim).into())?;
                writeln!(out, "cube d={dim} points={}", c.len()).ok();
                writeln!(out, "helly_independent={ok}").ok();
            }
            "radon-double" => {
                if dim != 2 {
                    return Err(Error::precondition("radon-double lifts the Z^2 window witness; use --dim 2"));
                }
                let z2 = SpaceDescriptor::integers(2);
                let r = radon_number_search(&z2.clone().into(), Some(&parse_window("0:3", 2)?), 64, 10_000_000)?;
                let lifted = witness_radon_double(&r.configuration, &z2)?;
                writeln!(out, "base={}", points_str(&r.configuration)).ok();
                writeln!(out, "lifted={}", points_str(&lifted)).ok();
                writeln!(out, "partition_free_in_Z^3=true size={} r_lower={}", lifted.len(), lifted.len() + 1).ok();
            }
            other => return Err(Error::precondition(format!("unknown witness `{other}` (fig1, cube, radon-double)"))),
        },
        LabCommand::Thm5 {
            seed,
            count,
            max_points,
        } => {
            let mut rng = seeded(seed);
            let mut consistent = 0;
            for i in 0..count {
                let pts = random_planar_set(&mut rng, max_points.max(1));
                let r = check_2d_helly_radon(&pts, 10_000_000)?;
                if r.consistent {
                    consistent += 1;
                } else {
                    writeln!(out, "VIOLATION instance={i} h={} r={} M={}", r.helly, r.radon, points_str(&pts)).ok();
                }
            }
            writeln!(out, "thm5 instances={count} consistent={consistent}").ok();
        }
        LabCommand::Probe { seed, sets, h, width } => {
            let family = random_family(&mut seeded(seed), sets, width);
            let r = fractional_probe(&family, &SpaceDescriptor::integers(2).into(), h, 10_000_000)?;
            writeln!(out, "alpha={} beta={} intersecting={} tuples={}", r.alpha, r.beta, r.intersecting, r.tuples).ok();
            if let Some(p) = r.best_point {
                writeln!(out, "best_point=({})", fmt_point(&p)).ok();
            }
        }
    }
    Ok(())
}

/// Entry point used by the binary: prints output or the error, and returns
/// the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
