//! Command-line front end for `holoaut`.
//!
//! [`run`] takes the full argument vector and returns the exit code and the
//! text destined for stdout and stderr, so the binary writes each stream once
//! and tests can drive the tool in-process.
//!
//! Exit codes: 0 on success, 2 when the mathematics refuses the input (a
//! singular point, a non-unimodular matrix, a word leaving the domain, …),
//! 1 for malformed input or usage errors.

pub mod output;
pub mod point;
pub mod scene;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use holoaut::json::{
    classification_json, commutation_json, error_json, index_result_json, point_to_json, preservation_json,
    report_json, word_to_value,
};
use holoaut::{AutomorphismWord, ContourSpec, DomainSpec, Error, HomotopyPath};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::scene::{parse_scene, Scene};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MALFORMED: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "holoaut", version, about = "Evaluate and analyse automorphism words of C^n and its domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Image of a point under a word, or under a path at `--t`.
    Eval(Opts),
    /// Concatenate words in the order given; the result applies the first word first.
    Compose(Opts),
    /// Inverse of a word.
    Invert(Opts),
    /// Complex Jacobian determinant of a word at a point.
    Jacobian(Opts),
    /// Winding index of a word along a contour.
    WindingIndex(Opts),
    /// Whether a word lies in the negative-index component.
    NegativeComponent(Opts),
    /// Certify a homotopy path on a uniform grid.
    HomotopyCertify(Opts),
    /// Empirical modulus of continuity of a homotopy path.
    Continuity(Opts),
    /// Test whether a word commutes with the standard torus action.
    Centralizer(Opts),
    /// Recover the diagonal coefficients of a torus-equivariant word.
    ExtractDiagonal(Opts),
    /// Classify the scene's domain.
    Classify(Opts),
    /// Test whether a word preserves the scene's domain.
    Preserves(Opts),
    /// Check that an exponent matrix is unimodular.
    ValidateExponents(Opts),
}

#[derive(Debug, Args)]
struct Opts {
    /// Scene file (JSON).
    #[arg(long)]
    scene: PathBuf,
    /// Word name; repeat for `compose`.
    #[arg(long)]
    word: Vec<String>,
    /// Contour name.
    #[arg(long)]
    contour: Option<String>,
    /// Homotopy path name.
    #[arg(long)]
    path: Option<String>,
    /// Exponent matrix name.
    #[arg(long)]
    matrix: Option<String>,
    /// Point as "re,im;re,im;…".
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    /// Path parameter in [0, 1].
    #[arg(long, allow_negative_numbers = true)]
    t: Option<f64>,
    /// Time step for `continuity`.
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Grid size for `homotopy-certify`.
    #[arg(long, default_value_t = 1001)]
    grid: usize,
    /// Radius of the sampling polydisc.
    #[arg(long, default_value_t = 2.0)]
    radius: f64,
    /// Pretty-print with this many spaces per level.
    #[arg(long)]
    json_indent: Option<usize>,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Failure of a command before or during the computation.
#[derive(Debug)]
enum Failure {
    Malformed(String),
    Op(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Op(e)
    }
}

type CmdResult = Result<Value, Failure>;

/// Exit code for an operation error: refusals by the mathematics exit 2,
/// everything else counts as malformed input.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_domain_error() {
        EXIT_DOMAIN
    } else {
        EXIT_MALFORMED
    }
}

fn malformed(msg: impl Into<String>) -> Failure {
    Failure::Malformed(msg.into())
}

fn with_newline(mut s: String) -> String {
    s.push('\n');
    s
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_MALFORMED,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let opts = match &cli.command {
        Command::Eval(o)
        | Command::Compose(o)
        | Command::Invert(o)
        | Command::Jacobian(o)
        | Command::WindingIndex(o)
        | Command::NegativeComponent(o)
        | Command::HomotopyCertify(o)
        | Command::Continuity(o)
        | Command::Centralizer(o)
        | Command::ExtractDiagonal(o)
        | Command::Classify(o)
        | Command::Preserves(o)
        | Command::ValidateExponents(o) => o,
    };
    let indent = opts.json_indent;
    match execute(&cli.command, opts) {
        Ok(v) => Outcome {
            code: EXIT_OK,
            stdout: with_newline(output::render(&v, indent)),
            stderr: String::new(),
        },
        Err(Failure::Malformed(msg)) => Outcome {
            code: EXIT_MALFORMED,
            stdout: with_newline(output::render(
                &json!({ "error": "MalformedInput", "message": msg }),
                indent,
            )),
            stderr: format!("holoaut: {msg}\n"),
        },
        Err(Failure::Op(e)) => Outcome {
            code: exit_code(&e),
            stdout: with_newline(output::render(&error_json(&e), indent)),
            stderr: format!("holoaut: {e}\n"),
        },
    }
}

fn load_scene(path: &PathBuf) -> Result<Scene, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| malformed(format!("cannot read scene {}: {e}", path.display())))?;
    parse_scene(&text).map_err(|e| malformed(format!("scene {}: {e}", path.display())))
}

fn lookup<'a, T>(map: &'a std::collections::BTreeMap<String, T>, what: &str, name: Option<&String>) -> Result<&'a T, Failure> {
    let name = name.ok_or_else(|| malformed(format!("--{what} is required")))?;
    map.get(name)
        .ok_or_else(|| malformed(format!("no {what} named {name:?} in the scene")))
}

fn single_word<'a>(scene: &'a Scene, opts: &Opts) -> Result<&'a AutomorphismWord, Failure> {
    match opts.word.as_slice() {
        [name] => lookup(&scene.words, "word", Some(name)),
        [] => Err(malformed("--word is required")),
        _ => Err(malformed("exactly one --word is expected")),
    }
}

fn required_point(opts: &Opts) -> Result<Vec<Complex64>, Failure> {
    let text = opts.point.as_ref().ok_or_else(|| malformed("--point is required"))?;
    point::parse_point(text).map_err(|e| malformed(format!("--point: {e}")))
}

fn contour<'a>(scene: &'a Scene, opts: &Opts) -> Result<&'a ContourSpec, Failure> {
    lookup(&scene.contours, "contour", opts.contour.as_ref())
}

fn path<'a>(scene: &'a Scene, opts: &Opts) -> Result<&'a HomotopyPath, Failure> {
    lookup(&scene.paths, "path", opts.path.as_ref())
}

/// The scene's domain, or all of C^n when none is given.
fn domain_or_full(scene: &Scene, n: usize) -> Result<DomainSpec, Failure> {
    match &scene.domain {
        Some(d) => Ok(d.clone()),
        None => Ok(DomainSpec::full(n)?),
    }
}

fn execute(command: &Command, opts: &Opts) -> CmdResult {
    let scene = load_scene(&opts.scene)?;
    match command {
        Command::Eval(_) => {
            let z = required_point(opts)?;
            let image = match (&opts.path, opts.t) {
                (Some(_), Some(t)) => path(&scene, opts)?.at(t)?.eval(&z)?,
                (Some(_), None) => return Err(malformed("--t is required with --path")),
                (None, Some(_)) => return Err(malformed("--t needs --path")),
                (None, None) => single_word(&scene, opts)?.eval(&z)?,
            };
            Ok(json!({ "image": point_to_json(&image) }))
        }
        Command::Compose(_) => {
            if opts.word.is_empty() {
                return Err(malformed("--word is required"));
            }
            let mut acc: Option<AutomorphismWord> = None;
            for name in &opts.word {
                let w = lookup(&scene.words, "word", Some(name))?;
                acc = Some(match acc {
                    None => w.clone(),
                    Some(prev) => prev.compose(w)?,
                });
            }
            Ok(json!({ "word": word_to_value(&acc.expect("at least one word")) }))
        }
        Command::Invert(_) => {
            let w = single_word(&scene, opts)?;
            Ok(json!({ "word": word_to_value(&w.inverse()?) }))
        }
        Command::Jacobian(_) => {
            let w = single_word(&scene, opts)?;
            let det = w.jacobian_det(&required_point(opts)?)?;
            Ok(json!({ "det": [det.re, det.im] }))
        }
        Command::WindingIndex(_) => {
            let w = single_word(&scene, opts)?;
            let r = holoaut::winding_index(w, contour(&scene, opts)?)?;
            Ok(index_result_json(&r))
        }
        Command::NegativeComponent(_) => {
            let w = single_word(&scene, opts)?;
            let r = holoaut::winding_index(w, contour(&scene, opts)?)?;
            let mut v = index_result_json(&r);
            v["negative"] = json!(r.index < 0);
            Ok(v)
        }
        Command::HomotopyCertify(_) => {
            let p = path(&scene, opts)?;
            if let Some(t) = opts.t {
                let det = p.det(t)?;
                let word = p.at(t)?;
                return Ok(json!({ "t": t, "det": [det.re, det.im], "word": word_to_value(&word) }));
            }
            let r = holoaut::certify_path(p, opts.grid, opts.radius, opts.seed)?;
            Ok(report_json(&r))
        }
        Command::Continuity(_) => {
            let p = path(&scene, opts)?;
            let m = holoaut::continuity_modulus(p, opts.dt, opts.radius, opts.seed)?;
            Ok(json!({ "dt": opts.dt, "modulus": m }))
        }
        Command::Centralizer(_) => {
            let w = single_word(&scene, opts)?;
            let d = domain_or_full(&scene, w.dim())?;
            Ok(commutation_json(&holoaut::commutes_with_torus(w, &d, opts.seed)?))
        }
        Command::ExtractDiagonal(_) => {
            let w = single_word(&scene, opts)?;
            let d = domain_or_full(&scene, w.dim())?;
            let lambda = holoaut::extract_diagonal(w, &d, opts.seed)?;
            Ok(json!({ "lambda": point_to_json(&lambda) }))
        }
        Command::Classify(_) => {
            let d = scene
                .domain
                .as_ref()
                .ok_or_else(|| malformed("the scene has no domain to classify"))?;
            Ok(classification_json(&holoaut::classify_domain(d)))
        }
        Command::Preserves(_) => {
            let w = single_word(&scene, opts)?;
            let d = domain_or_full(&scene, w.dim())?;
            Ok(preservation_json(&holoaut::word_preserves_domain(w, &d, opts.seed)?))
        }
        Command::ValidateExponents(_) => {
            let m = lookup(&scene.exponent_matrices, "matrix", opts.matrix.as_ref())?;
            let det = holoaut::validate_exponent_matrix(m.rows()?)?;
            Ok(json!({ "det": det }))
        }
    }
}
