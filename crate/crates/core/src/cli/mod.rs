//! Command-line frontend: argument parsing, input loading, reports.

mod commands;
pub mod input;
mod report;

use std::collections::BTreeMap;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

pub use report::{canonical, error_json, CheckEntry, RunReport, Timing};

use crate::error::{Error, Result};

const FORMATS: &str = "\
Input formats (JSON; integers may be numbers or decimal strings):
  simplicial complex   {\"vertices\": 4, \"facets\": [[0,1,2],[0,1,3],[0,2,3],[1,2,3]]}
  X-based complex      {\"base\": <simplicial complex>,
                        \"pieces\": {\"0-1\": {\"0\": 1}},
                        \"components\": [{\"from\": [\"0-1\", 1, 0], \"to\": [\"0-1-2\", 0, 0], \"coeff\": \"1\"}]}
  chain complex        {\"lo\": 0, \"hi\": 1, \"ranks\": {\"0\": 1, \"1\": 1},
                        \"differentials\": {\"1\": {\"rows\": 1, \"cols\": 1, \"entries\": [[0, 0, \"2\"]]}}}
  diagram              {\"objects\": [\"a\", \"b\"], \"complexes\": {\"a\": <chain complex>, ...},
                        \"arrows\": [{\"src\": \"a\", \"dst\": \"b\", \"map\": {\"0\": <matrix>}}]}
                       or the string \"random\" (seeded by --seed, at most --max-size objects)
  pair                 {\"complex\": <simplicial complex>, \"subcomplex\": [[0,1],[1,2]],
                        \"cycle\": {\"0-1-2\": \"1\"}}   (cycle optional)
  simplicial map       {\"source\": <simplicial complex>, \"target\": <simplicial complex>, \"vertex_map\": [0,1,1]}
  form                 {\"form\": [[2,1],[1,2]]}
  product              {\"left\": <X-based complex>, \"right\": <X-based complex>}  or one complex
A simplicial complex is accepted wherever an X-based complex is expected and
stands for its dual cell complex. `--input corpus:NAME` loads a bundled
complex: delta1 delta2 circle3 bdry-delta3 bdry-delta4 octahedron torus7 rp2
wedge pinched-torus.
Open sets: each --star value is a comma-separated list of simplex keys
(\"0-1,2\"), standing for the union of their open stars.
Exit status: 0 when every check passes, 1 when some check fails, 2 on errors
(a JSON error object is printed).";

#[derive(Parser, Debug, Clone)]
#[command(name = "zxl", version, about = "Exact checks for X-based chain complexes and Poincaré duality", after_long_help = FORMATS)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Options {
    /// Input file, or `corpus:NAME`.
    #[arg(long, global = true)]
    pub input: Option<String>,
    /// Restrict homology output to one degree.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub degree: Option<i64>,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Both)]
    pub mode: ModeArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub report: Format,
    /// Seed for randomized inputs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Reject inputs built on more simplices than this.
    #[arg(long = "max-size", global = true)]
    pub max_size: Option<usize>,
    /// Open set as a union of open stars; repeatable.
    #[arg(long, global = true)]
    pub star: Vec<String>,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Homology of a chain complex, simplicial complex or assembly.
    Homology,
    /// Assembly of an X-based complex.
    Assemble,
    /// Dual cell complex of the identity, compared with the subdivision.
    Dualcells,
    /// Fundamental symmetric structure of a closed pseudomanifold.
    Fundclass,
    /// Fundamental structure with per-simplex nondegeneracy checks.
    VerifySapc,
    /// Relative structure of a pair.
    VerifyPair,
    /// Signature of a form or of a 4k-dimensional fundamental structure.
    Signature,
    /// Barycentric subdivision of an X-based complex.
    Subdivide,
    /// Evaluation on a union of open stars.
    CosheafEval,
    Hocolim,
    Holim,
    /// Chain product: weighted model against the colimit definition.
    Coend,
    /// Local and global nondegeneracy, cross-checked.
    CheckDuality,
    /// Mayer-Vietoris squares of open stars.
    MvCheck,
    /// Comparison maps under a simplicial map.
    Naturality,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeArg {
    Local,
    Global,
    Both,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

fn command_name(c: Command) -> String {
    let name = format!("{c:?}");
    let mut out = String::new();
    for (i, ch) in name.chars().enumerate() {
        if ch.is_uppercase() && i > 0 {
            out.push('-');
        }
        out.push(ch.to_ascii_lowercase());
    }
    out
}

/// Runs one command and builds its report.
pub fn run(cli: &Cli) -> Result<RunReport> {
    let start = Instant::now();
    let opts = &cli.options;
    let path = opts
        .input
        .as_deref()
        .ok_or_else(|| Error::Precondition("--input is required".into()))?;
    let doc = if path == "random" {
        input::Loaded {
            name: path.into(),
            sha256: String::new(),
            value: serde_json::Value::String("random".into()),
        }
    } else {
        input::load(path)?
    };
    if let Some(max) = opts.max_size {
        let size = input::size(&doc.value);
        if size > max {
            return Err(Error::Precondition(format!(
                "input has {size} simplices, more than --max-size {max}"
            )));
        }
    }
    let (checks, results) = commands::run(cli.command, opts, &doc)?;
    let mut inputs = BTreeMap::new();
    if path == "random" {
        inputs.insert(format!("random:{}", opts.seed), String::new());
    } else {
        inputs.insert(doc.name.clone(), doc.sha256.clone());
    }
    let timing = opts.timing.then(|| Timing {
        millis: start.elapsed().as_millis(),
    });
    Ok(RunReport {
        command: command_name(cli.command),
        inputs,
        checks,
        results,
        timing,
    })
}

/// Parses arguments, runs, and renders; returns the output and exit code.
pub fn main_with<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (e.render().to_string(), code);
        }
    };
    match run(&cli) {
        Ok(r) => {
            let out = match cli.options.report {
                Format::Json => r.to_json() + "\n",
                Format::Text => r.to_text(),
            };
            (out, r.exit_code())
        }
        Err(e) => (error_json(&command_name(cli.command), &e) + "\n", 2),
    }
}
