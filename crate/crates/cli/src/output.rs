use std::fmt;
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use fanweave::basis::Label;
use fanweave::Tolerances;
use serde::Serialize;

/// Exit code for bad input and failed invariants.
pub const EXIT_INVALID: u8 = 2;
/// Exit code of `compare` on an INEQUIVALENT verdict.
pub const EXIT_INEQUIVALENT: u8 = 3;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn invalid(message: impl fmt::Display) -> Self {
        Self {
            code: EXIT_INVALID,
            message: message.to_string(),
        }
    }
}

impl From<fanweave::Error> for Failure {
    fn from(e: fanweave::Error) -> Self {
        Failure::invalid(e)
    }
}

pub type CliResult<T> = std::result::Result<T, Failure>;

/// Every JSON document the tool writes. Basis files are read back from
/// `result`.
#[derive(Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub command: &'a str,
    pub seed: u64,
    pub tolerances: &'a Tolerances,
    pub result: T,
}

/// What a command produced. `checks` holds every invariant the command
/// verified; any failure turns into exit code 2 after output is written.
pub struct Outcome {
    pub json: String,
    pub report: Vec<String>,
    pub dot: Option<String>,
    pub checks: Vec<(String, bool)>,
    pub exit: u8,
}

impl Outcome {
    pub fn new<T: Serialize>(command: &str, seed: u64, tol: &Tolerances, result: T) -> CliResult<Self> {
        let env = Envelope {
            command,
            seed,
            tolerances: tol,
            result,
        };
        let mut json = serde_json::to_string_pretty(&env).map_err(Failure::invalid)?;
        json.push('\n');
        Ok(Self {
            json,
            report: vec![format!("seed {seed}")],
            dot: None,
            checks: Vec::new(),
            exit: 0,
        })
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.report.push(s.into());
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool) {
        let name = name.into();
        self.report.push(format!("{name}: {}", if ok { "pass" } else { "FAIL" }));
        self.checks.push((name, ok));
    }

    fn text(&self) -> String {
        let mut s = self.report.join("\n");
        s.push('\n');
        s
    }

    /// Writes the requested rendering and returns the exit code.
    pub fn emit(self, format: Option<Format>, out: Option<&Path>) -> CliResult<u8> {
        let format = format.unwrap_or(if out.is_some() { Format::Json } else { Format::Text });
        let body = match format {
            Format::Json => self.json.clone(),
            Format::Text => self.text(),
            Format::Dot => self
                .dot
                .clone()
                .ok_or_else(|| Failure::invalid("--format dot is only available for fans"))?,
        };
        match out {
            Some(path) => {
                write_file(path, &body)?;
                if format != Format::Text {
                    print!("{}", self.text());
                }
            }
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(body.as_bytes()).map_err(Failure::invalid)?;
            }
        }
        if let Some((name, _)) = self.checks.iter().find(|(_, ok)| !ok) {
            return Err(Failure::invalid(format!("invariant failed: {name}")));
        }
        Ok(self.exit)
    }
}

pub fn write_file(path: &Path, body: &str) -> CliResult<()> {
    std::fs::write(path, body).map_err(|e| Failure::invalid(format!("cannot write {}: {e}", path.display())))
}

pub fn join_labels<'a>(labels: impl IntoIterator<Item = &'a Label>) -> String {
    labels.into_iter().map(Label::to_string).collect::<Vec<_>>().join(",")
}

/// `7 of size 3` style summary of a size multiset, ascending.
pub fn size_summary(sizes: impl IntoIterator<Item = usize>) -> String {
    let mut sizes: Vec<usize> = sizes.into_iter().collect();
    sizes.sort_unstable();
    let parts: Vec<String> = sizes
        .chunk_by(|a, b| a == b)
        .map(|run| match (run[0], run.len()) {
            (1, 1) => "1 singleton".to_string(),
            (1, k) => format!("{k} singletons"),
            (s, k) => format!("{k} of size {s}"),
        })
        .collect();
    parts.join(", ")
}

pub fn sci(x: f64) -> String {
    format!("{x:.1e}")
}
