//! Argument parsing and file handling around [`run_command`].

use std::ffi::OsString;
use std::io::Read;

use clap::{Parser, Subcommand};

use crate::ast::SpecDocument;
use crate::commands::{run_command, Command, Format, Options, Outcome};
use crate::parser::{parse_spec, parse_syntax};

#[derive(Debug, Parser)]
#[command(name = "quivrel", version, about = "Admissible ideals of quiver categorifications")]
struct Args {
    /// Degree bound for rewriting and basis enumeration.
    #[arg(long, global = true, env = "QUIVREL_DEGREE_BOUND", default_value_t = 12)]
    degree_bound: usize,
    /// Largest cycle power searched when deciding nilpotency.
    #[arg(long, global = true, default_value_t = 64)]
    cycle_cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Decide whether the ideal of the document is admissible.
    CheckAdmissible { spec: String },
    /// Dimension of the quotient Hom space from X to Y.
    Homdim {
        spec: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Normal-form basis of Hom(I, J).
    Basis { spec: String, i: String, j: String },
    /// Dimension of the radical of the quotient between two vertices.
    RadicalDim { spec: String, i: String, j: String },
    /// Whether the quotient category is connected.
    Connected { spec: String },
    /// Compare (C/I)/J with C/J~ on every vertex pair; SPEC2 holds J.
    Stack { spec: String, spec2: String },
    /// Sample the weakly Archimedean axioms of the declared monoid.
    MonoidCheck {
        spec: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Hom dimensions on a grid; WINDOW is `x0,x1,y0,y1`.
    Region {
        spec: String,
        #[arg(allow_hyphen_values = true)]
        window: String,
        step: String,
    },
    /// Minimal nilpotency index on circles 0..=N of a chain.
    Nilpotency { spec: String, n: usize },
    /// Check the closed-form plane dimensions against an M x N grid quiver.
    OraclePlane { m: usize, n: usize },
    /// Print the canonical form of a document.
    Print { spec: String },
}

fn read_source(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("cannot read stdin: {e}"))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))
}

fn fail(stderr: String) -> Outcome {
    Outcome {
        code: 2,
        stdout: String::new(),
        stderr,
    }
}

/// Loads a document; `full` requires a complete, resolvable one.
fn load(path: &str, full: bool) -> Result<SpecDocument, Outcome> {
    let src = read_source(path).map_err(|e| fail(format!("error: {e}\n")))?;
    let parsed = if full { parse_spec(&src) } else { parse_syntax(&src) };
    parsed.map_err(|e| fail(e.render(&src, path)))
}

/// Full command line in, exit code and output out.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                fail(text)
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let opts = Options {
        degree_bound: args.degree_bound,
        cycle_cap: args.cycle_cap,
        format: args.format,
    };
    let (cmd, spec) = match args.command {
        Sub::CheckAdmissible { spec } => (Command::CheckAdmissible, Some(spec)),
        Sub::Homdim { spec, x, y } => (Command::HomDim { x, y }, Some(spec)),
        Sub::Basis { spec, i, j } => (Command::Basis { i, j }, Some(spec)),
        Sub::RadicalDim { spec, i, j } => (Command::RadicalDim { i, j }, Some(spec)),
        Sub::Connected { spec } => (Command::Connected, Some(spec)),
        Sub::Stack { spec, spec2 } => match load(&spec2, false) {
            Ok(second) => (
                Command::Stack {
                    second: Box::new(second),
                },
                Some(spec),
            ),
            Err(o) => return o,
        },
        Sub::MonoidCheck { spec, seed, samples } => (Command::MonoidCheck { seed, samples }, Some(spec)),
        Sub::Region { spec, window, step } => (Command::Region { window, step }, Some(spec)),
        Sub::Nilpotency { spec, n } => (Command::Nilpotency { n }, Some(spec)),
        Sub::OraclePlane { m, n } => (Command::OraclePlane { m, n }, None),
        Sub::Print { spec } => (Command::Print, Some(spec)),
    };
    let doc = match spec.map(|p| load(&p, true)).transpose() {
        Ok(d) => d,
        Err(o) => return o,
    };
    run_command(&cmd, doc.as_ref(), &opts)
}
