//! Text, JSON and CSV rendering of command results.

use std::io::{self, Write};

use anyhow::{bail, Result};
use slicekit::pipeline::{BatchEntry, BatchSummary, ObstructionReport};

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub enum Output {
    Batch {
        entries: Vec<BatchEntry>,
        summary: BatchSummary,
    },
    Report(Box<ObstructionReport>),
    Plain {
        text: String,
        json: serde_json::Value,
    },
    /// A result to print followed by a nonzero exit.
    Failed(Box<Output>, String),
}

pub fn elements(xs: &[Vec<u64>]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| format!("{x:?}")).collect();
    format!("[{}]", parts.join(" "))
}

fn report_text(r: &ObstructionReport) -> String {
    ObstructionReport::CSV_HEADER
        .iter()
        .zip(r.csv_record())
        .map(|(k, v)| format!("{k}: {v}\n"))
        .collect()
}

fn summary_text(s: &BatchSummary) -> String {
    let mut out = format!(
        "reports: {}, errors: {}, obstructed: {}\n",
        s.reports, s.errors, s.obstructed
    );
    for (case, n) in &s.cases {
        out.push_str(&format!("case {case}: {n}\n"));
    }
    out
}

fn csv_writer() -> csv::Writer<io::StdoutLock<'static>> {
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    w.write_record(ObstructionReport::CSV_HEADER)
        .expect("writing to stdout");
    w
}

impl Output {
    pub fn write(self, format: Format) -> Result<()> {
        let mut out = io::stdout().lock();
        match (self, format) {
            (Output::Failed(inner, msg), f) => {
                drop(out);
                inner.write(f)?;
                bail!(msg);
            }
            (Output::Batch { entries, summary }, Format::Text) => {
                for e in &entries {
                    match e {
                        BatchEntry::Report(r) => writeln!(out, "{}", report_text(r))?,
                        BatchEntry::Error(e) => {
                            writeln!(out, "error at line {} ({}): {}\n", e.line, e.name, e.error)?
                        }
                    }
                }
                write!(out, "{}", summary_text(&summary))?;
            }
            (Output::Batch { entries, summary }, Format::Json) => {
                serde_json::to_writer_pretty(&mut out, &entries)?;
                writeln!(out)?;
                eprint!("{}", summary_text(&summary));
            }
            (Output::Batch { entries, summary }, Format::Csv) => {
                drop(out);
                let mut w = csv_writer();
                for e in &entries {
                    match e {
                        BatchEntry::Report(r) => w.write_record(r.csv_record())?,
                        BatchEntry::Error(e) => {
                            eprintln!("error at line {} ({}): {}", e.line, e.name, e.error)
                        }
                    }
                }
                w.flush()?;
                eprint!("{}", summary_text(&summary));
            }
            (Output::Report(r), Format::Text) => write!(out, "{}", report_text(&r))?,
            (Output::Report(r), Format::Json) => {
                serde_json::to_writer_pretty(&mut out, &r)?;
                writeln!(out)?;
            }
            (Output::Report(r), Format::Csv) => {
                drop(out);
                let mut w = csv_writer();
                w.write_record(r.csv_record())?;
                w.flush()?;
            }
            (Output::Plain { text, .. }, Format::Text) => write!(out, "{text}")?,
            (Output::Plain { json, .. }, Format::Json) => {
                serde_json::to_writer_pretty(&mut out, &json)?;
                writeln!(out)?;
            }
            (Output::Plain { .. }, Format::Csv) => {
                bail!("--csv is only available for obstruction reports (analyze, sum)")
            }
        }
        Ok(())
    }
}
