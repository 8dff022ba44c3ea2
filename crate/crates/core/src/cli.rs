//! The `bipath` command line.
//!
//! Exit codes: 0 success, 1 bad input or unmet hypothesis, 2 internal check failed.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bottleneck::{bottleneck, brute_force_bottleneck};
use crate::homology::BipathFunction;
use crate::io::{self, FileKind, FiltrationInput, Mode};
use crate::stability::{self, persistence_diagram, stability_report, TOLERANCE};
use crate::Error;

pub const SEED_ENV: &str = "BIPATH_SEED";

#[derive(Debug, Parser)]
#[command(name = "bipath", version, about = "Bipath persistent homology diagrams and distances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the persistence diagram of a filtration file.
    Diagram {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        degree: usize,
        #[arg(long)]
        output: PathBuf,
        /// Also write plot coordinates as CSV.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Bottleneck distance between two diagram files.
    Distance {
        a: PathBuf,
        b: PathBuf,
        /// Cross-check against exhaustive search (small diagrams only).
        #[arg(long)]
        oracle: bool,
    },
    /// Check the stability bound for a pair of functions, or for random perturbations.
    Stability {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        degree: usize,
        /// Number of random perturbations of f to test.
        #[arg(long)]
        trials: Option<usize>,
        /// Largest perturbation of any finite value.
        #[arg(long, default_value_t = 0.1)]
        noise: f64,
        /// RNG seed (falls back to $BIPATH_SEED, then 0).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check a filtration or diagram file.
    Validate { file: PathBuf },
}

/// Failure of a command, with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: if e.is_internal() { 2 } else { 1 }, message: e.to_string() }
    }
}

impl From<io::FormatError> for Failure {
    fn from(e: io::FormatError) -> Self {
        Error::from(e).into()
    }
}

fn user_error(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| user_error(format!("cannot write {}: {e}", path.display())))
}

pub fn format_distance(x: f64) -> String {
    if x.is_infinite() {
        "inf".into()
    } else {
        format!("{x:.9}")
    }
}

/// Runs the CLI with explicit arguments and output streams; returns the exit code.
pub fn run_with(args: impl IntoIterator<Item = OsString>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let result = match cli.command {
        Command::Diagram { input, degree, output, plot } => cmd_diagram(&input, degree, &output, plot.as_deref(), out),
        Command::Distance { a, b, oracle } => cmd_distance(&a, &b, oracle, out, err),
        Command::Stability { f, g, degree, trials, noise, seed } => {
            cmd_stability(&f, g.as_deref(), degree, trials, noise, seed, out)
        }
        Command::Validate { file } => cmd_validate(&file, out),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn cmd_diagram(input: &Path, degree: usize, output: &Path, plot: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    let filtration = io::read_filtration(input)?;
    let diagram = persistence_diagram(&filtration.complex, &filtration.function, degree, filtration.field)?;
    write_file(output, &io::diagram_to_json(&diagram, filtration.field.modulus() as u64, degree))?;
    if let Some(plot) = plot {
        write_file(plot, &io::diagram_to_csv(&diagram))?;
    }
    for (interval, mult) in diagram.iter() {
        let _ = writeln!(out, "{interval} x{mult}");
    }
    Ok(())
}

fn cmd_distance(a: &Path, b: &Path, oracle: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let da = io::read_diagram(a)?;
    let db = io::read_diagram(b)?;
    if da.field != db.field || da.degree != db.degree {
        let _ = writeln!(
            err,
            "warning: comparing a degree-{} diagram over GF({}) with a degree-{} diagram over GF({})",
            da.degree, da.field, db.degree, db.field
        );
    }
    let result = bottleneck(&da.diagram, &db.diagram);
    let _ = writeln!(out, "{}", format_distance(result.distance));
    if oracle {
        let brute = brute_force_bottleneck(&da.diagram, &db.diagram).map_err(Error::from)?;
        let agree = (brute.is_infinite() && result.distance.is_infinite())
            || (brute - result.distance).abs() <= TOLERANCE;
        if !agree {
            return Err(Failure {
                code: 2,
                message: format!(
                    "exhaustive search gives {} but the matching search gives {}",
                    format_distance(brute),
                    format_distance(result.distance)
                ),
            });
        }
        let _ = writeln!(out, "oracle agrees");
    }
    Ok(())
}

fn seed_from_env(seed: Option<u64>) -> Result<u64, Failure> {
    if let Some(s) = seed {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| user_error(format!("{SEED_ENV}={v:?} is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn perturb(input: &FiltrationInput, noise: f64, rng: &mut ChaCha8Rng) -> Result<BipathFunction, Error> {
    match (&input.mode, &input.vertex_values) {
        (Mode::LowerStar, Some((v1, v2))) => {
            let v1 = stability::perturb_values(v1, noise, rng);
            let v2 = stability::perturb_values(v2, noise, rng);
            Ok(BipathFunction::lower_star(&input.complex, &v1, &v2)?)
        }
        _ => Ok(stability::perturb_simplexwise(&input.complex, &input.function, noise, rng)),
    }
}

fn cmd_stability(
    f: &Path,
    g: Option<&Path>,
    degree: usize,
    trials: Option<usize>,
    noise: f64,
    seed: Option<u64>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let fin = io::read_filtration(f)?;
    match (g, trials) {
        (Some(g), None) => {
            let gin = io::read_filtration(g)?;
            if gin.complex != fin.complex {
                return Err(user_error("f and g must be defined on the same simplicial complex"));
            }
            let report = stability_report(&fin.complex, &fin.function, &gin.function, degree, fin.field)?;
            let _ = writeln!(out, "lhs {}", format_distance(report.lhs));
            let _ = writeln!(out, "rhs {}", format_distance(report.rhs));
            if report.holds {
                let _ = writeln!(out, "PASS");
                Ok(())
            } else {
                let _ = writeln!(out, "FAIL");
                Err(Failure { code: 2, message: "bottleneck distance exceeds the function distance".into() })
            }
        }
        (None, Some(n)) => {
            if !(noise >= 0.0 && noise.is_finite()) {
                return Err(user_error("--noise must be a nonnegative number"));
            }
            let seed = seed_from_env(seed)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut passed = 0;
            for trial in 0..n {
                let gf = perturb(&fin, noise, &mut rng)?;
                let report = stability_report(&fin.complex, &fin.function, &gf, degree, fin.field)?;
                if report.holds {
                    passed += 1;
                } else {
                    let _ = writeln!(
                        out,
                        "trial {trial}: FAIL lhs {} rhs {}",
                        format_distance(report.lhs),
                        format_distance(report.rhs)
                    );
                }
            }
            let _ = writeln!(out, "seed {seed}: {passed}/{n} trials passed");
            if passed == n {
                Ok(())
            } else {
                Err(Failure { code: 2, message: format!("{} trials violated the stability bound", n - passed) })
            }
        }
        (Some(_), Some(_)) => Err(user_error("give either --g or --trials, not both")),
        (None, None) => Err(user_error("give --g for a single comparison or --trials for random perturbations")),
    }
}

fn cmd_validate(file: &Path, out: &mut dyn Write) -> Result<(), Failure> {
    let text = io::read_text(file)?;
    match io::detect_kind(&text)? {
        FileKind::Filtration => {
            let f = io::parse_filtration(&text)?;
            let _ = writeln!(
                out,
                "ok: filtration with {} simplices over GF({})",
                f.complex.len(),
                f.field.modulus()
            );
        }
        FileKind::Diagram => {
            let d = io::parse_diagram(&text)?;
            let _ = writeln!(out, "ok: diagram with {} points", d.diagram.len());
        }
    }
    Ok(())
}
