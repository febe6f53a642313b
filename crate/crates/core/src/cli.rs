//! Command-line front end. `run` returns the exit code and both output streams
//! so it can be driven in-process.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::bundle::{check_claims, cut_along};
use crate::curves::{check_curve, make_61_curve, PLCurve};
use crate::error::Error;
use crate::layered::family;
use crate::normal::{is_normal, reconstruct, NormalVector};
use crate::report::{Report, EXIT_INVALID};
use crate::search::{find_meridian_discs, minimal_of, verify_61_1, verify_61_2, SearchBudget, Status};
use crate::tri::{boundary_complex, first_homology, skeleton, solid_torus_candidate, Triangulation};

#[derive(Parser, Debug)]
#[command(name = "solid-torus", version, about = "Layered solid tori and their normal meridian discs")]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Omit timing so equal inputs give byte-identical reports.
    #[arg(long, global = true)]
    deterministic: bool,
    /// Worker threads for enumeration.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the layered solid torus T_i.
    Gen {
        #[arg(long)]
        family: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Tag boundary edge classes with their slopes.
        #[arg(long)]
        labels: bool,
    },
    /// Parse and check a triangulation file.
    Validate {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// First homology and the boundary kernel slope.
    Homology {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Enumerate normal meridian discs within a budget.
    Meridian {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        max_pieces: u64,
        #[arg(long)]
        max_weight: Option<u64>,
        /// Seconds.
        #[arg(long)]
        time_limit: Option<u64>,
    },
    /// Parallelity bundle of the manifold cut along a disc.
    Bundle {
        #[arg(long = "in")]
        input: PathBuf,
        /// Normal vector as JSON or `tet i: T a b c d | Q p q r` lines.
        #[arg(long)]
        disc: PathBuf,
    },
    #[command(subcommand)]
    Curve(CurveCommand),
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Subcommand, Debug)]
enum CurveCommand {
    /// Build and certify the one-edge-point curve in T_i.
    #[command(name = "make-61")]
    Make61 {
        #[arg(long)]
        i: usize,
        /// Write the curve JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the witness disc JSON here.
        #[arg(long)]
        disc_out: Option<PathBuf>,
    },
    /// Check a curve against a disc.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        tri: PathBuf,
        #[arg(long)]
        disc: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Piece-count lower bound for meridian discs of T_i.
    #[command(name = "61-1")]
    PieceBound {
        #[arg(long)]
        i: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Lower bound on `|n x - y|` for the boundary slope of T_i.
    #[command(name = "61-2")]
    ArithmeticBound {
        #[arg(long)]
        i: usize,
        #[arg(long, default_value_t = 1000)]
        window: i64,
    },
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Defaults to three times x_{i+3}.
    #[arg(long)]
    max_pieces: Option<u64>,
    #[arg(long)]
    time_limit: Option<u64>,
}

/// Exit code and the text for stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read(path: &Path, report: &mut Report) -> Result<Vec<u8>, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    report.add_input(&path.display().to_string(), &bytes);
    Ok(bytes)
}

fn text(bytes: Vec<u8>, path: &Path) -> Result<String, Failure> {
    String::from_utf8(bytes).map_err(|_| Failure::Input(format!("{}: not UTF-8", path.display())))
}

fn read_tri(path: &Path, report: &mut Report) -> Result<Triangulation, Failure> {
    let s = text(read(path, report)?, path)?;
    Triangulation::parse(&s).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_vector(path: &Path, report: &mut Report) -> Result<NormalVector, Failure> {
    let s = text(read(path, report)?, path)?;
    let v = if s.trim_start().starts_with('[') {
        serde_json::from_str(&s).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
    } else {
        NormalVector::parse_text(&s)?
    };
    Ok(v)
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn to_json(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializes");
    s.push('\n');
    s
}

fn execute(cli: &Cli, report: &mut Report) -> Result<Option<String>, Failure> {
    match &cli.command {
        Command::Gen { family: i, out, labels } => {
            let lt = family(*i);
            let body = if *labels {
                lt.labelled().serialize_labelled()
            } else {
                lt.tri.serialize()
            };
            let triple: Vec<String> = lt.triple().slopes().iter().map(|s| s.to_string()).collect();
            report.push(
                "gen",
                "layered solid torus with i+1 tetrahedra",
                Status::from_bool(lt.tet_count() == i + 1),
                json!({ "i": i, "tetrahedra": lt.tet_count(), "slopes": triple }),
            );
            match out {
                Some(p) => write(p, &body)?,
                None if !cli.json => return Ok(Some(body)),
                None => {}
            }
        }
        Command::Validate { input } => {
            let tri = read_tri(input, report)?;
            let sk = skeleton(&tri);
            let bc = boundary_complex(&tri);
            report.push(
                "validate",
                "gluings form a valid triangulation",
                Status::Pass,
                json!({
                    "skeleton": sk,
                    "euler_characteristic": sk.euler_characteristic(),
                    "boundary": bc.kind(),
                    "orientable": tri.is_orientable(),
                }),
            );
        }
        Command::Homology { input } => {
            let tri = read_tri(input, report)?;
            let h = first_homology(&tri)?;
            let c = solid_torus_candidate(&tri)?;
            report.push("homology", "first homology of the manifold", Status::Pass, &h);
            report.push(
                "solid-torus-candidate",
                "torus boundary, H1 = Z and a primitive boundary kernel",
                Status::from_bool(c.candidate),
                &c,
            );
        }
        Command::Meridian {
            input,
            max_pieces,
            max_weight,
            time_limit,
        } => {
            let tri = read_tri(input, report)?;
            let mut budget = SearchBudget::pieces(*max_pieces);
            if let Some(w) = max_weight {
                budget = budget.with_weight(*w);
            }
            if let Some(t) = time_limit {
                budget = budget.with_time_limit(Duration::from_secs(*t));
            }
            let search = find_meridian_discs(&tri, budget)?;
            let status = if search.discs.is_empty() {
                Status::Inconclusive
            } else {
                Status::Pass
            };
            let best = minimal_of(&search.discs);
            report.push(
                "meridian",
                "a normal meridian disc exists within the budget",
                status,
                json!({
                    "budget": budget,
                    "meridian": search.meridian,
                    "examined": search.examined,
                    "complete": search.complete,
                    "discs": search.discs.iter().map(|d| json!({
                        "vector": d.vector,
                        "pieces": d.piece_count(),
                        "complexity": d.complexity,
                    })).collect::<Vec<_>>(),
                    "least_complexity": best.map(|d| &d.vector),
                }),
            );
        }
        Command::Bundle { input, disc } => {
            let tri = read_tri(input, report)?;
            let v = read_vector(disc, report)?;
            if !is_normal(&tri, &v)? {
                return Err(Failure::Input("disc is not an admissible normal vector".into()));
            }
            let surface = reconstruct(&tri, &v)?;
            let cut = cut_along(&tri, &v)?;
            let claims = check_claims(&tri, &v)?;
            report.push(
                "cut",
                "the manifold cut along the disc",
                Status::Pass,
                json!({ "surface": surface, "cut": cut.summary() }),
            );
            report.push(
                "minimal",
                "the disc has least (boundary length, weight)",
                match claims.minimal {
                    Some(true) => Status::Pass,
                    Some(false) => Status::Fail,
                    None => Status::Inconclusive,
                },
                claims.minimal,
            );
            report.push(
                "claim-1",
                "every parallelity bundle component is a product",
                Status::from_bool(claims.claim1),
                &claims.components,
            );
            report.push(
                "claim-2",
                "every bundle component meeting A meets both D- and D+",
                Status::from_bool(claims.claim2),
                &claims.details,
            );
        }
        Command::Curve(CurveCommand::Make61 { i, out, disc_out }) => {
            let c = make_61_curve(*i)?;
            if let Some(p) = out {
                write(p, &to_json(&c.curve))?;
            }
            if let Some(p) = disc_out {
                write(p, &to_json(&c.witness_disc))?;
            }
            report.push(
                "curve",
                "an embedded curve meeting the 1-skeleton once and a meridian disc once; interior for i >= 1 \
                 (necessary conditions for a core curve)",
                Status::from_bool(c.holds()),
                &c,
            );
        }
        Command::Curve(CurveCommand::Check { input, tri, disc }) => {
            let t = read_tri(tri, report)?;
            let s = text(read(input, report)?, input)?;
            let c: PLCurve = serde_json::from_str(&s).map_err(|e| Failure::Input(format!("{}: {e}", input.display())))?;
            let v = read_vector(disc, report)?;
            let chk = check_curve(&t, &c, &v)?;
            report.push(
                "curve-check",
                "embedded, pairs to +-1 with the disc, at most 10 arcs per face and 18 per tetrahedron",
                Status::from_bool(chk.holds()),
                &chk,
            );
        }
        Command::Verify(VerifyCommand::PieceBound { i, budget }) => {
            let mut b = match budget.max_pieces {
                Some(n) => SearchBudget::pieces(n),
                None => SearchBudget::default_for(*i),
            };
            if let Some(t) = budget.time_limit {
                b = b.with_time_limit(Duration::from_secs(t));
            }
            let r = verify_61_1(*i, b)?;
            report.push(
                "61-1",
                "every normal meridian disc of T_i has at least x_{i+2} and at least phi^{i+1} pieces",
                r.status,
                json!({ "budget": b, "result": r }),
            );
        }
        Command::Verify(VerifyCommand::ArithmeticBound { i, window }) => {
            if *window < 0 {
                return Err(Failure::Usage("--window must be non-negative".into()));
            }
            let r = verify_61_2(*i, *window);
            report.push(
                "61-2",
                "min over n of |n x_{i+2} - y_{i+2}| is at least x_{i+2}/3 and at least phi^{i-1}",
                r.status,
                &r,
            );
        }
    }
    Ok(None)
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let command: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let mut report = Report::new(command);
    let started = Instant::now();
    let result = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli, &mut report)),
            Err(e) => Err(Failure::Usage(e.to_string())),
        },
        None => execute(&cli, &mut report),
    };
    match result {
        Err(Failure::Input(m)) | Err(Failure::Usage(m)) => Outcome {
            code: EXIT_INVALID,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
        Ok(raw) => {
            if !cli.deterministic {
                report.timing_ms = Some(started.elapsed().as_millis() as u64);
            }
            let stdout = match raw {
                Some(body) => body,
                None if cli.json => report.to_json(),
                None => report.to_text(),
            };
            Outcome {
                code: report.exit_code(),
                stdout,
                stderr: String::new(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("solid-torus").chain(args.iter().copied()))
    }

    #[test]
    fn arithmetic_bound_passes() {
        let o = go(&["verify", "61-2", "--i", "20"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
    }

    #[test]
    fn unknown_subcommand_is_invalid() {
        assert_eq!(go(&["frobnicate"]).code, EXIT_INVALID);
    }

    #[test]
    fn deterministic_json_has_no_timing() {
        let o = go(&["--json", "--deterministic", "verify", "61-2", "--i", "3"]);
        assert!(!o.stdout.contains("timing_ms"));
        assert_eq!(o.stdout, go(&["--json", "--deterministic", "verify", "61-2", "--i", "3"]).stdout);
    }
}
