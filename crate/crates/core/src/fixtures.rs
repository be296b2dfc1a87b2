//! Bundled table diagrams (KnotInfo PD and DT codes).

use crate::diagram::{mirror, parse_knot_list, Diagram, KnotRecord};

pub const TABLE_PD: &str = include_str!("../data/table_pd.txt");
pub const TABLE_DT: &str = include_str!("../data/table_dt.txt");
pub const FIGURES: &str = include_str!("../data/figures.txt");

/// All PD records of the bundled table.
pub fn pd_records() -> Vec<KnotRecord> {
    parse_knot_list(TABLE_PD)
}

/// Diagrams standing in for figures (12_1609 with b = rb = 2).
pub fn figure_records() -> Vec<KnotRecord> {
    parse_knot_list(FIGURES)
}

/// All DT records of the bundled table.
pub fn dt_records() -> Vec<KnotRecord> {
    parse_knot_list(TABLE_DT)
}

/// Look up a table knot by name; a leading `!` selects the mirror image.
pub fn lookup(name: &str) -> Option<Diagram> {
    let mut all = pd_records();
    all.extend(figure_records());
    lookup_in(&all, name)
}

pub fn lookup_in(records: &[KnotRecord], name: &str) -> Option<Diagram> {
    let (base, mirrored) = match name.strip_prefix('!') {
        Some(b) => (b, true),
        None => (name, false),
    };
    let d = records
        .iter()
        .find(|r| r.name == base)?
        .diagram
        .clone()
        .ok()?;
    Some(if mirrored { mirror(&d) } else { d })
}
