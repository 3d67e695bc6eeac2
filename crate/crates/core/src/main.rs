use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use etale_brauer::arith::place::Place;
use etale_brauer::arith::rational::parse_rational;
use etale_brauer::brauer::ObstructionVerdict;
use etale_brauer::cohomology::key_diagram;
use etale_brauer::report::{self, Config, Request};
use etale_brauer::threefold::{ledger_instance, ProjPoint};
use etale_brauer::{Error, Result};

#[derive(Parser)]
#[command(name = "etale-brauer", version, about = "Certified Hasse-principle checks for Chatelet surfaces and conic bundles over Q")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Height bound for rational-point searches [default: 1000 for iskovskikh, 100 otherwise]
    #[arg(long, global = true)]
    height: Option<u64>,
    /// Maximal residue-disc depth
    #[arg(long, global = true, default_value_t = etale_brauer::chatelet::local::DEFAULT_DEPTH_CAP)]
    depth_cap: u32,
    /// Print the JSON report (default)
    #[arg(long, global = true, conflicts_with = "human")]
    json: bool,
    /// Print a short plain-text summary instead of JSON
    #[arg(long, global = true)]
    human: bool,
    /// Worker threads
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Append the per-place invariant table (iskovskikh, brauer)
    #[arg(long, global = true)]
    explain: bool,
    /// Write the report to a file as well
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// The bundled Iskovskikh surface: local solvability, Brauer-Manin verdict, point search
    Iskovskikh {
        /// Check a single place only
        #[arg(long)]
        place: Option<Place>,
    },
    /// Audit a conic-bundle construction {"a", "Pinf", "P0"} [default: ledger instance]
    Construct { input: Option<PathBuf> },
    /// Per-fiber verdicts over sampled base points
    Sweep {
        /// {"a", "Pinf", "P0", "points"?} [default: ledger instance]
        input: Option<PathBuf>,
        /// Base point "(u:v)" or "u:v"; repeatable
        #[arg(long = "point")]
        points: Vec<String>,
    },
    /// Key-diagram checks or H^i of a module [default: bundled diagram]
    Cohomology { input: Option<PathBuf> },
    /// The Hilbert symbol (a, b)_v
    Hilbert {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        place: Place,
    },
    /// Local solvability of {"a", "P", "places"?} [default: Iskovskikh surface]
    Local {
        input: Option<PathBuf>,
        /// Restrict to these places; repeatable
        #[arg(long)]
        place: Vec<Place>,
    },
    /// Brauer-Manin verdict for the class {"a", "P1", "P2"} [default: Iskovskikh class]
    Brauer { input: Option<PathBuf> },
    /// Replay reports; exit 0 iff every one re-validates
    Verify {
        #[arg(required = true)]
        reports: Vec<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse { location: path.display().to_string(), message: e.to_string() })
}

fn from_file(command: &str, path: &Option<PathBuf>) -> Result<Option<Request>> {
    path.as_ref().map(|p| report::request_from_json(command, &read(p)?)).transpose()
}

fn parse_point(s: &str) -> Result<ProjPoint> {
    let t = s.trim();
    if t.starts_with('(') {
        t.parse()
    } else {
        format!("({t})").parse()
    }
}

fn request(command: &Command) -> Result<Request> {
    let class = || etale_brauer::brauer::QuaternionClass::iskovskikh();
    Ok(match command {
        Command::Iskovskikh { place } => Request::Iskovskikh { place: place.clone() },
        Command::Construct { input } => {
            from_file("construct", input)?.unwrap_or(Request::Construct { construction: ledger_instance() })
        }
        Command::Sweep { input, points } => {
            let mut r = from_file("sweep", input)?.unwrap_or(Request::Sweep {
                construction: ledger_instance(),
                points: report::default_sweep_points(),
            });
            if !points.is_empty() {
                let parsed = points.iter().map(|p| parse_point(p)).collect::<Result<Vec<_>>>()?;
                if let Request::Sweep { points, .. } = &mut r {
                    *points = parsed;
                }
            }
            r
        }
        Command::Cohomology { input } => from_file("cohomology", input)?.unwrap_or(Request::Cohomology {
            input: report::CohomologyInput::Diagram { diagram: key_diagram() },
        }),
        Command::Hilbert { a, b, place } => {
            Request::Hilbert { a: parse_rational(a)?, b: parse_rational(b)?, place: place.clone() }
        }
        Command::Local { input, place } => {
            let mut r = from_file("local", input)?
                .unwrap_or(Request::Local { surface: class().surface(), places: None });
            if !place.is_empty() {
                if let Request::Local { places, .. } = &mut r {
                    *places = Some(place.clone());
                }
            }
            r
        }
        Command::Brauer { input } => from_file("brauer", input)?.unwrap_or(Request::Brauer { class: class() }),
        Command::Verify { .. } => unreachable!("verify builds no request"),
    })
}

fn emit(g: &Global, text: &str) -> Result<()> {
    print!("{text}");
    if let Some(path) = &g.output {
        std::fs::write(path, text)?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<i32> {
    if let Command::Verify { reports } = &cli.command {
        let mut replayer = report::Replayer::new();
        for path in reports {
            let v: serde_json::Value = serde_json::from_str(&read(path)?)
                .map_err(|e| Error::Parse { location: path.display().to_string(), message: e.to_string() })?;
            match replayer.verify(&v) {
                Ok(o) => println!("{}: ok ({}, {} steps, digest {})", path.display(), o.command, o.steps, o.digest),
                Err(e) => {
                    eprintln!("{}: {e}", path.display());
                    return Ok(e.exit_code());
                }
            }
        }
        return Ok(0);
    }
    let req = request(&cli.command)?;
    let mut config = Config::default_for(&req);
    config.depth_cap = cli.global.depth_cap;
    if let Some(h) = cli.global.height {
        config.height = h;
    }
    let rep = report::run(&req, &config)?;
    let mut text = if cli.global.human { rep.human() } else { rep.to_json_pretty() + "\n" };
    if cli.global.explain {
        if let Some(v) = rep.step("obstruction") {
            let verdict: ObstructionVerdict =
                serde_json::from_value(v.clone()).map_err(|e| Error::parse("obstruction step", e.to_string()))?;
            if cli.global.human {
                text.push_str(&verdict.explain());
            } else {
                eprint!("{}", verdict.explain());
            }
        }
    }
    emit(&cli.global, &text)?;
    Ok(rep.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let code = match run(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
