//! Resolving knot arguments: table names, `!name` mirrors, or inline `pd:`/`dt:` codes.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use slicekit::diagram::{parse_knot_list, parse_record, Diagram, KnotRecord};
use slicekit::fixtures::{dt_records, figure_records, lookup_in, pd_records};

pub struct KnotSource {
    records: Vec<KnotRecord>,
}

impl KnotSource {
    /// Bundled tables, or every `*.txt` knot list in `dir` when given.
    pub fn new(dir: Option<&Path>) -> Result<Self> {
        let records = match dir {
            None => {
                let mut all = pd_records();
                all.extend(figure_records());
                all.extend(dt_records());
                all
            }
            Some(dir) => {
                let mut paths: Vec<_> = fs::read_dir(dir)
                    .with_context(|| format!("reading fixture directory {}", dir.display()))?
                    .filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|p| p.extension().is_some_and(|x| x == "txt"))
                    .collect();
                paths.sort();
                let mut all = Vec::new();
                for p in paths {
                    let text = fs::read_to_string(&p)
                        .with_context(|| format!("reading {}", p.display()))?;
                    all.extend(parse_knot_list(&text));
                }
                all
            }
        };
        Ok(KnotSource { records })
    }

    pub fn resolve(&self, arg: &str) -> Result<Diagram> {
        if arg.contains(':') {
            return parse_record(arg)
                .map(|d| d.with_name(arg))
                .with_context(|| format!("parsing knot code {arg:?}"));
        }
        let base = arg.strip_prefix('!').unwrap_or(arg);
        if let Some(r) = self.records.iter().find(|r| r.name == base) {
            if let Err(e) = &r.diagram {
                bail!("fixture {base} is malformed: {e}");
            }
        }
        lookup_in(&self.records, arg).with_context(|| format!("unknown knot {arg:?}"))
    }
}
