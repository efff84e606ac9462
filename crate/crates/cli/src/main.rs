use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use morsekit::ShiftSpec;

mod report;

/// Degenerate covector: the witness has been printed.
pub const EXIT_DEGENERATE: u8 = 2;
/// `verify` found a failing property.
pub const EXIT_PROPERTY_FAILED: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "morsekit", version, about = "Morse polytopes of univariate supports, computed exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hull vertices, root order and monomial orders of a covector
    Extract(Opts),
    /// Value of the support function and the vertex it comes from
    Mu(Opts),
    /// Correction terms at every root, by both routes
    Cj(Opts),
    /// The trapezoid stack and its areas
    Fiber(Opts),
    /// All combinatorial types with an interior witness each
    Enumerate(Opts),
    /// Vertices of the polytope and the cone-to-vertex table
    Polytope(Opts),
    /// Counts of the singular strata and the three linear relations
    Strata(Opts),
    /// Seeded property checks on random Morse covectors
    Verify(Opts),
    /// SVG of the projected polytope, or of the fiber polygon when a covector is given
    Plot(Opts),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Svg,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// JSON file, `-` for stdin, or inline text such as '{"A":[1,2,3,4],"gamma":[1,4,3,3]}' or 1,2,3,4
    #[arg(allow_hyphen_values = true)]
    input: String,
    /// `c1,c2` or `unit-interval`
    #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
    shift: ShiftSpec,
    /// Coordinates kept when projecting, `i,j`
    #[arg(long, value_parser = parse_axes)]
    axes: Option<(usize, usize)>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Upper bound for sampled covector entries
    #[arg(long, default_value_t = 50)]
    bound: u32,
    /// Worker threads; defaults to all cores
    #[arg(long, env = "MORSEKIT_JOBS")]
    jobs: Option<usize>,
    #[arg(long = "max-support-size", default_value_t = 7)]
    max_support_size: usize,
}

fn parse_axes(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("axes must look like `i,j`")?;
    let a = a.trim().parse().map_err(|_| format!("bad axis {a:?}"))?;
    let b = b.trim().parse().map_err(|_| format!("bad axis {b:?}"))?;
    Ok((a, b))
}

fn read_input(input: &str) -> anyhow::Result<String> {
    if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(s);
    }
    let path = Path::new(input);
    if path.is_file() {
        return std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()));
    }
    Ok(input.to_string())
}

/// What a command produced: text for stdout and the exit status.
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    pub fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

type Handler = fn(&report::Ctx) -> anyhow::Result<Outcome>;

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let (opts, handler): (Opts, Handler) = match cli.command {
        Command::Extract(o) => (o, |c| c.extract()),
        Command::Mu(o) => (o, |c| c.mu()),
        Command::Cj(o) => (o, |c| c.cj()),
        Command::Fiber(o) => (o, |c| c.fiber()),
        Command::Enumerate(o) => (o, |c| c.enumerate()),
        Command::Polytope(o) => (o, |c| c.polytope()),
        Command::Strata(o) => (o, |c| c.strata()),
        Command::Verify(o) => (o, |c| c.verify()),
        Command::Plot(o) => (o, |c| c.plot()),
    };
    if let Some(k) = opts.jobs {
        if k == 0 {
            bail!("--jobs must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let text = read_input(&opts.input)?;
    let problem = morsekit::io::parse_problem(&text)?;
    let shift = opts.shift.resolve(&problem.support);
    handler(&report::Ctx {
        problem,
        shift,
        opts: &opts,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // usage errors count as malformed input, keeping 2 for degenerate covectors
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
