//! Command-line front end for `oddpts-core`.

pub mod cache;
pub mod config;
pub mod reports;
pub mod reproduce;

use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use oddpts_core::arith::{fmt_rat, parse_rat};
use oddpts_core::elliptic::{special_curve, EllipticCurveQ};
use oddpts_core::gl2::{self, GL2Sub};
use oddpts_core::modcurve::{self, JContext};
use oddpts_core::{cm, entangle, Error};

use config::FileConfig;
use reports::*;
use reproduce::Suite;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "oddpts", version, about = "Odd-degree points on X1(N): genus and degree bookkeeping, GL2 orbits, CM Cartan orbits, torsion degrees")]
pub struct Cli {
    /// Output format [default: text]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for parallel scans
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// TOML config file (also read from ODDPTS_CONFIG)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Modular-curve genera, map degrees and the odd-degree level classifier
    #[command(subcommand)]
    Modcurve(ModcurveCmd),
    /// Same as `modcurve genus`
    Genus(GenusArgs),
    /// Same as `modcurve degree`
    Degree(DegreeArgs),
    /// Subgroups of GL2(Z/N)
    #[command(subcommand)]
    Gl2(Gl2Cmd),
    /// CM Cartan orbits
    #[command(subcommand)]
    Cm(CmCmd),
    /// The 2-division / 27-isogeny entanglement curves
    #[command(subcommand)]
    Entangle(EntangleCmd),
    /// Division polynomials
    #[command(subcommand)]
    Elliptic(EllipticCmd),
    /// Run the regression scorecard
    Reproduce {
        #[arg(value_enum)]
        suite: Suite,
        /// Time budget in seconds for the whole suite
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ModcurveCmd {
    Genus(GenusArgs),
    Degree(DegreeArgs),
    /// Levels n for which X1(n) may have an odd-degree point above j
    AllowedLevels {
        #[arg(long, allow_hyphen_values = true)]
        j: String,
        /// JSON such as {"cm": -7, "isogenies": [3, 7]}
        #[arg(long)]
        flags: Option<String>,
        /// List the allowed levels up to this bound
        #[arg(long, default_value_t = 100)]
        up_to: u64,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct GenusArgs {
    #[arg(long)]
    pub x1: Option<u64>,
    #[arg(long)]
    pub x0: Option<u64>,
}

#[derive(Args, Debug)]
pub struct DegreeArgs {
    /// Source level: X1(from)
    #[arg(long)]
    pub from: u64,
    /// Target level X1(to); omit with --to-x0
    #[arg(long, required_unless_present = "to_x0")]
    pub to: Option<u64>,
    /// Degree of X1(from) -> X0(from)
    #[arg(long, conflicts_with = "to")]
    pub to_x0: bool,
}

#[derive(Args, Debug)]
pub struct GroupArgs {
    /// Built-in name (full, borel, diagonal, x1, scalars, special-7) or a JSON generator file
    #[arg(long)]
    pub group: String,
    /// Level N for built-in groups
    #[arg(long)]
    pub level: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Gl2Cmd {
    /// Degrees of closed points of X1(N) above a j with the given mod-N image
    Orbits(GroupArgs),
    /// Maximal subgroups of the mod-p^2 preimage of a mod-p group
    Maximal(GroupArgs),
    /// Frobenius certificate that the mod-p^2 image is the full preimage
    CertifyLevel {
        #[command(flatten)]
        group: GroupArgs,
        /// "a1,a2,a3,a4,a6"; defaults to [1,-1,0,-107,-379]
        #[arg(long, allow_hyphen_values = true)]
        curve: Option<String>,
        /// Largest prime scanned
        #[arg(long, default_value_t = 100_000)]
        bound: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum CmCmd {
    /// Orbit sizes of (O/NO)^x on points of order N
    Orbits {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long)]
        n: u64,
        /// Quotient by the global units
        #[arg(long)]
        reduced: bool,
    },
    /// Level to which an isolated odd-degree CM point reduces
    ReduceLevel {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long)]
        n: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum EntangleCmd {
    /// Check the known rational points of Y and which of them lift to X
    Verify,
}

#[derive(Subcommand, Debug)]
pub enum EllipticCmd {
    /// Degrees of the closed points of X1(N) above j(E)
    DivpolyDegrees {
        /// "a1,a2,a3,a4,a6"
        #[arg(long, allow_hyphen_values = true, required_unless_present = "j", conflicts_with = "j")]
        curve: Option<String>,
        /// Use a model with this j-invariant
        #[arg(long, allow_hyphen_values = true)]
        j: Option<String>,
        #[arg(long)]
        n: usize,
        /// Only look for factors of degree at most this
        #[arg(long)]
        cap: Option<usize>,
    },
}

/// Effective settings after merging flags over the config file.
#[derive(Clone, Debug)]
pub struct Settings {
    pub format: Format,
    pub jobs: Option<usize>,
    pub file: FileConfig,
}

impl Settings {
    pub fn resolve(cli: &Cli) -> anyhow::Result<Self> {
        let path = cli.config.clone().or_else(|| std::env::var_os(config::CONFIG_ENV).map(PathBuf::from));
        let file = match path {
            Some(p) => FileConfig::load(&p)?,
            None => FileConfig::default(),
        };
        Ok(Settings {
            format: cli.format.or(file.format).unwrap_or_default(),
            jobs: cli.jobs.or(file.jobs),
            file,
        })
    }
}

/// Failure classes, mapped to exit codes 1, 2 and 3.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Infeasible(String),
    Other(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Other(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Infeasible(_) => 3,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(s) | Failure::Infeasible(s) | Failure::Other(s) => f.write_str(s),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Infeasible(_) => Failure::Infeasible(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn group_from(args: &GroupArgs) -> Result<GL2Sub, Failure> {
    let path = Path::new(&args.group);
    if path.is_file() {
        let g = gl2::load_generator_file(path)?;
        if let Some(n) = args.level {
            if n != g.level() {
                return Err(Failure::Usage(format!("--level {n} but the file is at level {}", g.level())));
            }
        }
        return Ok(g);
    }
    let n = match (args.level, args.group.as_str()) {
        (Some(n), _) => n,
        (None, "special-7") => 7,
        (None, _) => return Err(Failure::Usage("--level is required for built-in groups".into())),
    };
    Ok(gl2::builtin(&args.group, n)?)
}

fn genus(a: &GenusArgs) -> Report {
    match (a.x1, a.x0) {
        (Some(n), _) => Report::Genus(GenusReport { curve: "X1".into(), n, genus: modcurve::genus_x1(n) }),
        (_, Some(n)) => Report::Genus(GenusReport { curve: "X0".into(), n, genus: modcurve::genus_x0(n) }),
        _ => unreachable!("clap requires one of --x1/--x0"),
    }
}

fn degree(a: &DegreeArgs) -> Result<Report, Failure> {
    if a.from == 0 {
        return Err(Failure::Usage("levels must be positive".into()));
    }
    let (target, degree) = match a.to {
        Some(to) => (format!("X1({to})"), modcurve::deg_x1_to_x1(a.from, to)?),
        None => (format!("X0({})", a.from), modcurve::deg_x1_to_x0(a.from)),
    };
    Ok(Report::Degree(DegreeReport { source: format!("X1({})", a.from), target, degree }))
}

fn curve_arg(s: Option<&str>) -> Result<EllipticCurveQ, Failure> {
    match s {
        Some(s) => Ok(EllipticCurveQ::parse(s)?),
        None => Ok(special_curve()),
    }
}

/// Executes a parsed command. Parallel work runs on the global rayon pool,
/// which the caller sizes.
pub fn run(cli: &Cli, settings: &Settings) -> Result<Report, Failure> {
    if let Some(dir) = &settings.file.cache_dir {
        if std::env::var_os(cache::CACHE_ENV).is_none() {
            std::env::set_var(cache::CACHE_ENV, dir);
        }
    }
    Ok(match &cli.command {
        Command::Genus(a) | Command::Modcurve(ModcurveCmd::Genus(a)) => genus(a),
        Command::Degree(a) | Command::Modcurve(ModcurveCmd::Degree(a)) => degree(a)?,
        Command::Modcurve(ModcurveCmd::AllowedLevels { j, flags, up_to }) => {
            let ctx = JContext::parse(j, flags.as_deref())?;
            let c = modcurve::allowed_odd_degree_levels(&ctx);
            Report::Levels(LevelsReport {
                j: fmt_rat(&ctx.j),
                cm: ctx.cm,
                isogenies: ctx.isogenies.iter().copied().collect(),
                summary: c.to_string(),
                levels_up_to: *up_to,
                levels: c.members_up_to(*up_to),
                constraint: c,
            })
        }
        Command::Gl2(Gl2Cmd::Orbits(g)) => {
            let h = group_from(g)?;
            let degrees = gl2::x1_orbit_degrees(&h)?;
            Report::Orbits(OrbitsReport { group: g.group.clone(), level: h.level(), order: h.order(), degrees })
        }
        Command::Gl2(Gl2Cmd::Maximal(g)) => Report::Maximal(gl2::maximal_subgroup_fingerprints(&group_from(g)?)?),
        Command::Gl2(Gl2Cmd::CertifyLevel { group, curve, bound }) => {
            let e = curve_arg(curve.as_deref())?;
            Report::Certificate(gl2::frobenius_level_certificate(&e, &group_from(group)?, *bound)?)
        }
        Command::Cm(CmCmd::Orbits { disc, n, reduced }) => {
            let sizes = if *reduced { cm::reduced_orbit_sizes(*disc, *n)? } else { cm::cartan_orbit_sizes(*disc, *n)? };
            Report::CmOrbits(CmOrbitsReport { disc: *disc, n: *n, reduced: *reduced, min: sizes.first().copied(), sizes })
        }
        Command::Cm(CmCmd::ReduceLevel { disc, n }) => Report::Reduction(cm::cm_reduce_level(*disc, *n)?),
        Command::Entangle(EntangleCmd::Verify) => Report::Entangle(entangle::verify_xy_curves()?),
        Command::Elliptic(EllipticCmd::DivpolyDegrees { curve, j, n, cap }) => {
            let e = match j {
                Some(j) => EllipticCurveQ::from_j(&parse_rat(j)?),
                None => curve_arg(curve.as_deref())?,
            };
            Report::Degrees(DegreesReport { curve: e.to_strings(), degrees: cache::x1_degrees(&e, *n, *cap)? })
        }
        Command::Reproduce { suite, budget } => {
            let b = budget.map(Duration::from_secs).unwrap_or_else(|| settings.file.budget_for(*suite));
            Report::Scorecard(reproduce::reproduce(*suite, b))
        }
    })
}
