//! Command-line front end: parses field and stress configs, runs the
//! identity suites, and prints deterministic reports.
//!
//! Exit codes: 0 all checks pass, 1 an identity is violated, 2 usage or
//! parse error.

use clap::{Parser, Subcommand, ValueEnum};
use jetstress::config::{parse_box, parse_face_selector, parse_section, parse_stress, StressConfig};
use jetstress::fields::{SamplingGrid, SectionField};
use jetstress::jets::{iterate_prolong, prolong};
use jetstress::multiindex::IncreasingIndex;
use jetstress::scalar::{Rat, Scalar};
use jetstress::stress::StressDensity;
use jetstress::suites::{run_suite, suite_dim_limit, SuiteConfig};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Rational,
    Float,
}

#[derive(Parser)]
#[command(
    name = "jetstress",
    about = "Exact verification kernel for exterior calculus, jets, currents and stress balance on box charts",
    version
)]
struct Cli {
    /// Arithmetic backend; defaults to JETSTRESS_MODE or rational.
    #[arg(long, global = true)]
    mode: Option<Mode>,

    /// Residual tolerance in float mode (ignored in rational mode).
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an identity suite: exterior, jets, currents, stress, or all.
    Check {
        suite: String,
        /// Random instances per identity and size.
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Seed for all randomized trials.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Largest ambient dimension to exercise.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Prolong a section and print the jet listing with its norms.
    Jet {
        section: PathBuf,
        #[arg(long)]
        order: usize,
        /// Print the iterated (binary-indexed) prolongation instead.
        #[arg(long)]
        iterated: bool,
        /// Grid points per axis for the norms.
        #[arg(long, default_value_t = 3)]
        grid: usize,
    },
    /// Check the balance equation for a stress and a section.
    Balance { stress: PathBuf, field: PathBuf },
    /// Print the traction density, or the surface traction of one face.
    Traction {
        stress: PathBuf,
        /// Face selector `axis:lo` or `axis:hi`.
        #[arg(long)]
        face: Option<String>,
    },
    /// Print the generalized divergence of a stress.
    Divergence { stress: PathBuf },
    /// Integrate the stress power over a sub-body.
    Restrict {
        stress: PathBuf,
        field: PathBuf,
        /// Sub-box in the `[a,b]x[c,d]` format.
        #[arg(long)]
        subbody: String,
    },
    /// Print the C^r grid norm of a section.
    Norm {
        section: PathBuf,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 3)]
        grid: usize,
    },
    /// Print the sampled injectivity margin and immersion verdict.
    Margin {
        section: PathBuf,
        #[arg(long, default_value_t = 3)]
        grid: usize,
    },
}

enum Failure {
    /// Parse/usage problems: exit 2.
    Usage(String),
    /// An identity violated: exit 1.
    Identity,
}

impl From<jetstress::Error> for Failure {
    fn from(err: jetstress::Error) -> Self {
        Failure::Usage(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mode = cli.mode.unwrap_or_else(|| {
        match std::env::var("JETSTRESS_MODE").ok().as_deref() {
            Some("float") => Mode::Float,
            _ => Mode::Rational,
        }
    });
    let result = match mode {
        Mode::Rational => run::<Rat>(&cli, Rat::from_int(0)),
        Mode::Float => run::<f64>(&cli, cli.tol.unwrap_or(1e-10)),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Identity) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_section<S: Scalar>(path: &Path) -> Result<SectionField<S>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_section(&text)?)
}

fn read_simple_stress<S: Scalar>(path: &Path) -> Result<StressDensity<S>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    match parse_stress(&text)? {
        StressConfig::Simple(s) => Ok(s),
        StressConfig::NonHolonomic(_) => Err(Failure::Usage(
            "this command needs a simple stress config, got a non-holonomic one".into(),
        )),
    }
}

fn run<S: Scalar>(cli: &Cli, tol: S) -> Result<(), Failure> {
    match &cli.command {
        Command::Check { suite, trials, seed, dim } => {
            let Some(limit) = suite_dim_limit(suite) else {
                return Err(Failure::Usage(format!(
                    "unknown suite `{suite}`; expected exterior, jets, currents, stress, or all"
                )));
            };
            let dim = dim.unwrap_or(limit);
            if dim > limit {
                return Err(Failure::Usage(format!(
                    "suite `{suite}` supports dimensions up to {limit}, got {dim}"
                )));
            }
            if dim == 0 {
                return Err(Failure::Usage("dimension must be at least 1".into()));
            }
            let cfg = SuiteConfig::new(dim, *trials, *seed, tol.clone());
            let mode = if S::EXACT { "rational" } else { "float" };
            println!(
                "jetstress check: suite={suite} mode={mode} dim<={dim} trials={trials} seed={seed} tol={tol}"
            );
            let mut all_ok = true;
            for report in run_suite(suite, &cfg)? {
                print!("{}", report.render());
                print!("{}", report.render_kv());
                all_ok &= report.all_passed();
            }
            if all_ok {
                Ok(())
            } else {
                Err(Failure::Identity)
            }
        }
        Command::Jet { section, order, iterated, grid } => {
            let w = read_section::<S>(section)?;
            let grid = SamplingGrid::uniform(w.dimension(), *grid)?;
            let base_norm = w.cr_norm(*order, &grid)?;
            let jet = prolong(&w, *order)?;
            let jet_norm = jet.norm0(&grid)?;
            let hat = iterate_prolong(&w, *order)?;
            let hat_norm = hat.norm0(&grid)?;
            if *iterated {
                print!("{}", hat.render());
            } else {
                print!("{}", jet.render());
            }
            println!("norm.section_cr = {base_norm}");
            println!("norm.jet0 = {jet_norm}");
            println!("norm.iterated0 = {hat_norm}");
            let equal = jet_norm == base_norm && hat_norm == base_norm;
            println!("norm.isometry = {}", if equal { "equal" } else { "VIOLATED" });
            if equal {
                Ok(())
            } else {
                Err(Failure::Identity)
            }
        }
        Command::Balance { stress, field } => {
            let s = read_simple_stress::<S>(stress)?;
            let w = read_section::<S>(field)?;
            let report = s.balance_check(&w).map_err(|e| Failure::Usage(e.to_string()))?;
            print!("{}", report.render());
            print!("{}", report.render_kv());
            if report.is_balanced(&tol) {
                Ok(())
            } else {
                Err(Failure::Identity)
            }
        }
        Command::Traction { stress, face } => {
            let s = read_simple_stress::<S>(stress)?;
            let traction = s.traction_stress()?;
            match face {
                None => {
                    for alpha in 1..=s.fiber_dimension() {
                        for hat in IncreasingIndex::enumerate(s.base_dimension(), s.base_dimension() - 1)? {
                            println!("s[{alpha}]{hat} = {}", traction.component(alpha, &hat)?);
                        }
                    }
                    Ok(())
                }
                Some(selector) => {
                    let (axis, end) = parse_face_selector(selector)?;
                    let face = s.domain().face(axis, end)?;
                    let surface = traction.surface_traction(&face)?;
                    println!("face: {face}");
                    for alpha in 1..=s.fiber_dimension() {
                        println!("t[{alpha}] = {}", surface.component(alpha)?);
                    }
                    Ok(())
                }
            }
        }
        Command::Divergence { stress } => {
            let s = read_simple_stress::<S>(stress)?;
            let div = s.divergence()?;
            for alpha in 1..=s.fiber_dimension() {
                println!("div[{alpha}] = {}", div.component(alpha)?);
            }
            Ok(())
        }
        Command::Restrict { stress, field, subbody } => {
            let s = read_simple_stress::<S>(stress)?;
            let w = read_section::<S>(field)?;
            let region = parse_box::<S>(subbody)?;
            let force = s.restrict_force_system(&region, &w)?;
            println!("force.subbody = {force}");
            println!("force.total = {}", s.force_of(&w)?);
            Ok(())
        }
        Command::Norm { section, order, grid } => {
            let w = read_section::<S>(section)?;
            let grid = SamplingGrid::uniform(w.dimension(), *grid)?;
            println!("norm.cr = {}", w.cr_norm(*order, &grid)?);
            Ok(())
        }
        Command::Margin { section, grid } => {
            let w = read_section::<S>(section)?;
            let grid = SamplingGrid::uniform(w.dimension(), *grid)?;
            println!("margin = {}", w.injectivity_margin(&grid)?);
            println!(
                "immersion_on_grid = {}",
                w.is_immersion_on_grid(&grid)?
            );
            Ok(())
        }
    }
}
