//! Spec-file front end and command surface for `quivrel-core`.

pub mod app;
pub mod ast;
pub mod commands;
pub mod error;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod resolve;

pub use app::run;
pub use commands::{run_command, Command, Format, Options, Outcome};
pub use parser::{parse_spec, parse_syntax};
pub use printer::print_spec;
