//! The sliceness obstruction battery.
//!
//! Stages run cheap to expensive (determinant, Milnor-Fox, signatures, linking
//! form, Rudolph-Bennequin) and every stage is recorded even after an earlier
//! one has already obstructed. Connected sums are assembled from the summands'
//! invariants: Seifert matrices and linking forms add, Alexander polynomials
//! multiply.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::diagram::{
    connected_sum_at, goeritz_determinant, goeritz_matrix, mirror, parse_knot_list,
    rudolph_bennequin, seifert_matrix, switch_crossing, Diagram, DiagramError,
};
use crate::forms::{
    direct_sum_all, find_metabolizer, largest_cone_subgroup, livingston_naik_applies, FormError,
    LinkingForm, Subgroup, Theorem1Case, DEFAULT_BOUND,
};
use crate::intlinalg::{cokernel_with_pairing, smith_normal_form, IntMatrix, LinAlgError};
use crate::numtheory::is_perfect_square;
use crate::polynomials::{determinant_of, milnor_fox, normalize_alexander, LaurentPoly, PolyError};
use crate::signatures::{
    alexander_from_seifert, all_nonsingular_signatures_vanish, murasugi_signature, SignatureError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("determinant routes disagree: {0}")]
    Inconsistent(String),
    #[error("a connected sum needs at least one summand")]
    EmptySum,
    #[error("neighbor diagram does not match the switched base: {0}")]
    NeighborMismatch(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalyzeConfig {
    /// Largest group order enumerated by the cone and metabolizer searches.
    pub bound: u64,
}

impl Default for AnalyzeConfig {
    fn default() -> Self {
        AnalyzeConfig {
            bound: DEFAULT_BOUND,
        }
    }
}

/// A result that may have been skipped because an enumeration bound was hit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bounded<T> {
    Value(T),
    Skipped,
}

impl<T> Bounded<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Bounded::Value(v) => Some(v),
            Bounded::Skipped => None,
        }
    }
}

pub const SKIPPED: &str = "skipped (bound)";

impl<T: Serialize> Serialize for Bounded<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Bounded::Value(v) => v.serialize(s),
            Bounded::Skipped => s.serialize_str(SKIPPED),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Bounded<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bounded::Value(v) => v.fmt(f),
            Bounded::Skipped => f.write_str(SKIPPED),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    NonSquareDeterminant(u64),
    MilnorFox,
    Signature(i64),
    TristramLevine,
    NoMetabolizer,
    RudolphBennequin(i64),
    IndirectRb(i64),
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::NonSquareDeterminant(d) => write!(f, "determinant {d} is not a square"),
            Obstruction::MilnorFox => {
                write!(f, "Alexander polynomial is not of the form f(t)f(1/t)")
            }
            Obstruction::Signature(s) => write!(f, "signature {s} is nonzero"),
            Obstruction::TristramLevine => {
                write!(f, "a nonsingular Tristram-Levine signature is nonzero")
            }
            Obstruction::NoMetabolizer => write!(f, "linking form has no metabolizer"),
            Obstruction::RudolphBennequin(rb) => {
                write!(f, "Rudolph-Bennequin number {rb} is positive")
            }
            Obstruction::IndirectRb(b) => {
                write!(f, "crossing-change neighbor gives 4-genus at least {b}")
            }
        }
    }
}

impl Serialize for Obstruction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "reasons", rename_all = "kebab-case")]
pub enum Verdict {
    SliceObstructed(Vec<Obstruction>),
    NoObstructionFound,
}

impl Verdict {
    pub fn is_obstructed(&self) -> bool {
        matches!(self, Verdict::SliceObstructed(_))
    }

    pub fn reasons(&self) -> &[Obstruction] {
        match self {
            Verdict::SliceObstructed(r) => r,
            Verdict::NoObstructionFound => &[],
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::NoObstructionFound => f.write_str("no-obstruction-found"),
            Verdict::SliceObstructed(r) => {
                let r: Vec<String> = r.iter().map(|o| o.to_string()).collect();
                write!(f, "slice-obstructed: {}", r.join("; "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub name: String,
    pub determinant: u64,
    pub determinant_is_square: bool,
    pub alexander: LaurentPoly,
    pub milnor_fox: Bounded<Option<LaurentPoly>>,
    pub signature: i64,
    pub tl_vanishes: bool,
    pub h1: Vec<u64>,
    pub gram: LinkingForm,
    pub cone_size: Bounded<u64>,
    pub theorem1_case: Bounded<Theorem1Case>,
    pub metabolizer: Bounded<Option<Subgroup>>,
    pub livingston_naik: bool,
    pub rb_best: Option<i64>,
    pub verdict: Verdict,
}

impl ObstructionReport {
    /// Add the conclusion of an indirect Rudolph-Bennequin argument.
    pub fn with_indirect_rb(mut self, bound: i64) -> Self {
        if bound >= 1 {
            let mut reasons = self.verdict.reasons().to_vec();
            reasons.push(Obstruction::IndirectRb(bound));
            self.verdict = Verdict::SliceObstructed(reasons);
        }
        self
    }

    pub const CSV_HEADER: [&'static str; 15] = [
        "name",
        "determinant",
        "determinant_is_square",
        "alexander",
        "milnor_fox",
        "signature",
        "tl_vanishes",
        "h1",
        "gram",
        "cone_size",
        "theorem1_case",
        "metabolizer",
        "livingston_naik",
        "rb_best",
        "verdict",
    ];

    pub fn csv_record(&self) -> Vec<String> {
        let opt = |o: Option<String>| o.unwrap_or_else(|| "none".into());
        let h1: Vec<String> = self.h1.iter().map(|d| d.to_string()).collect();
        let metabolizer = match &self.metabolizer {
            Bounded::Skipped => SKIPPED.to_string(),
            Bounded::Value(None) => "none".into(),
            Bounded::Value(Some(m)) => {
                let gens: Vec<String> = m.generators.iter().map(|g| format!("{g:?}")).collect();
                format!("order {} gens {}", m.order, gens.join(" "))
            }
        };
        vec![
            self.name.clone(),
            self.determinant.to_string(),
            self.determinant_is_square.to_string(),
            self.alexander.to_string(),
            match &self.milnor_fox {
                Bounded::Skipped => SKIPPED.to_string(),
                Bounded::Value(f) => opt(f.as_ref().map(|f| f.to_string())),
            },
            self.signature.to_string(),
            self.tl_vanishes.to_string(),
            h1.join(","),
            self.gram.to_string(),
            self.cone_size.to_string(),
            self.theorem1_case.to_string(),
            metabolizer,
            self.livingston_naik.to_string(),
            opt(self.rb_best.map(|r| r.to_string())),
            self.verdict.to_string(),
        ]
    }
}

/// Invariants of one knot, or of a connected sum assembled from its summands.
#[derive(Debug, Clone)]
pub struct KnotInvariants {
    pub name: String,
    pub seifert: IntMatrix,
    pub alexander: LaurentPoly,
    pub form: LinkingForm,
    pub goeritz_det: BigInt,
    /// Diagrams of the summands, used for the Rudolph-Bennequin stage.
    pub diagrams: Vec<Diagram>,
}

impl KnotInvariants {
    pub fn of(d: &Diagram) -> Result<Self, PipelineError> {
        if !d.is_knot() {
            return Err(DiagramError::Components(d.component_count()).into());
        }
        let seifert = seifert_matrix(d)?;
        let alexander = alexander_from_seifert(&seifert)?;
        let goeritz = goeritz_matrix(d)?;
        let form = cokernel_with_pairing(&goeritz)?;
        Ok(KnotInvariants {
            name: d.name().to_string(),
            seifert,
            alexander,
            form,
            goeritz_det: goeritz_determinant(d)?.abs(),
            diagrams: vec![d.clone()],
        })
    }

    pub fn sum(parts: &[KnotInvariants]) -> Result<Self, PipelineError> {
        let (first, rest) = parts.split_first().ok_or(PipelineError::EmptySum)?;
        let mut out = first.clone();
        for p in rest {
            out.name = format!("{}#{}", out.name, p.name);
            out.seifert = out.seifert.block_sum(&p.seifert);
            out.alexander = normalize_alexander(&(&out.alexander * &p.alexander))?;
            out.goeritz_det *= &p.goeritz_det;
            out.diagrams.extend(p.diagrams.iter().cloned());
        }
        out.form = direct_sum_all(parts.iter().map(|p| &p.form));
        Ok(out)
    }
}

/// A diagram of the connected sum, joined along non-negative Seifert circles where possible.
pub fn sum_diagram(ds: &[Diagram]) -> Result<Diagram, PipelineError> {
    let (first, rest) = ds.split_first().ok_or(PipelineError::EmptySum)?;
    let mut acc = first.clone();
    for d in rest {
        let e1 = joining_edge(&acc, false);
        let e2 = joining_edge(d, true);
        acc = connected_sum_at(&acc, e1, d, e2)?;
    }
    Ok(acc)
}

fn joining_edge(d: &Diagram, smallest: bool) -> u32 {
    let data = d.seifert_data();
    let pick = |c: &Vec<u32>| {
        if smallest {
            c.iter().min().copied()
        } else {
            c.iter().max().copied()
        }
    };
    (0..data.count())
        .filter(|i| !data.negative_circles.contains(i))
        .find_map(|i| pick(&data.circles[i]))
        .or_else(|| data.circles.iter().find_map(pick))
        .unwrap_or(0)
}

/// max(rb(D), rb(mirror D)) over the summands' joined diagram, when defined.
fn rb_best(diagrams: &[Diagram]) -> Option<i64> {
    let plain = sum_diagram(diagrams).ok();
    let mirrored = sum_diagram(&diagrams.iter().map(mirror).collect::<Vec<_>>()).ok();
    [plain, mirrored]
        .into_iter()
        .flatten()
        .filter_map(|d| rudolph_bennequin(&d).ok())
        .max()
}

fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    smith_normal_form(&IntMatrix::diagonal(orders))
        .invariant_factors()
        .into_iter()
        .filter_map(|d| d.to_u64())
        .filter(|&d| d > 1)
        .collect()
}

fn bounded<T>(r: Result<T, FormError>) -> Result<Bounded<T>, PipelineError> {
    match r {
        Ok(v) => Ok(Bounded::Value(v)),
        Err(FormError::BoundExceeded { .. }) | Err(FormError::Overflow) => Ok(Bounded::Skipped),
        Err(e) => Err(e.into()),
    }
}

pub fn analyze(d: &Diagram, config: &AnalyzeConfig) -> Result<ObstructionReport, PipelineError> {
    analyze_invariants(&KnotInvariants::of(d)?, config)
}

/// Report on the connected sum of the given diagrams.
pub fn analyze_sum(
    ds: &[Diagram],
    config: &AnalyzeConfig,
) -> Result<ObstructionReport, PipelineError> {
    let parts = ds
        .iter()
        .map(KnotInvariants::of)
        .collect::<Result<Vec<_>, _>>()?;
    analyze_invariants(&KnotInvariants::sum(&parts)?, config)
}

pub fn analyze_invariants(
    k: &KnotInvariants,
    config: &AnalyzeConfig,
) -> Result<ObstructionReport, PipelineError> {
    let alex_det = determinant_of(&k.alexander);
    let h1_order = k.form.order().ok_or(FormError::Overflow)?;
    if alex_det != k.goeritz_det || alex_det != BigInt::from(h1_order) {
        return Err(PipelineError::Inconsistent(format!(
            "|Δ(-1)| = {alex_det}, |det G| = {}, |H1| = {h1_order}",
            k.goeritz_det
        )));
    }
    let determinant = h1_order;
    let determinant_is_square = is_perfect_square(determinant);
    let milnor_fox = match milnor_fox(&k.alexander) {
        Ok(f) => Bounded::Value(f),
        Err(PolyError::DegreeCap(_)) => Bounded::Skipped,
        Err(e) => return Err(e.into()),
    };
    let signature = murasugi_signature(&k.seifert)?;
    let tl_vanishes = all_nonsingular_signatures_vanish(&k.seifert, &k.alexander)?;
    let largest = bounded(largest_cone_subgroup(&k.form, config.bound))?;
    let cone_size = match &largest {
        Bounded::Value(l) => Bounded::Value(l.cone_size),
        Bounded::Skipped => Bounded::Skipped,
    };
    let theorem1_case = match &largest {
        Bounded::Value(l) => Bounded::Value(l.case),
        Bounded::Skipped => Bounded::Skipped,
    };
    let metabolizer = bounded(find_metabolizer(&k.form, config.bound))?;
    let h1 = invariant_factors(k.form.orders());
    let livingston_naik = livingston_naik_applies(&h1).is_some();
    let rb_best = rb_best(&k.diagrams);

    let mut reasons = Vec::new();
    if !determinant_is_square {
        reasons.push(Obstruction::NonSquareDeterminant(determinant));
    }
    if milnor_fox == Bounded::Value(None) {
        reasons.push(Obstruction::MilnorFox);
    }
    if signature != 0 {
        reasons.push(Obstruction::Signature(signature));
    }
    if !tl_vanishes {
        reasons.push(Obstruction::TristramLevine);
    }
    if metabolizer == Bounded::Value(None) {
        reasons.push(Obstruction::NoMetabolizer);
    }
    if let Some(rb) = rb_best.filter(|&rb| rb >= 1) {
        reasons.push(Obstruction::RudolphBennequin(rb));
    }
    let verdict = if reasons.is_empty() {
        Verdict::NoObstructionFound
    } else {
        Verdict::SliceObstructed(reasons)
    };
    Ok(ObstructionReport {
        name: k.name.clone(),
        determinant,
        determinant_is_square,
        alexander: k.alexander.clone(),
        milnor_fox,
        signature,
        tl_vanishes,
        h1,
        gram: k.form.clone(),
        cone_size,
        theorem1_case,
        metabolizer,
        livingston_naik,
        rb_best,
        verdict,
    })
}

/// A knot, one of its crossings, and a diagram claimed to represent the knot
/// obtained by switching that crossing.
#[derive(Debug, Clone)]
pub struct IndirectRbQuery {
    pub base: Diagram,
    pub crossing_to_switch: usize,
    pub neighbor_diagram: Diagram,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndirectRbResult {
    pub neighbor_rb: Option<i64>,
    /// Lower bound max(0, rb − 1) for the 4-genus of the base knot.
    pub bound: i64,
}

impl IndirectRbResult {
    pub fn not_smoothly_slice(&self) -> bool {
        self.bound >= 1
    }
}

/// Lower bound on the base knot's 4-genus from a crossing-change neighbor, whose
/// 4-genus differs by at most one.
pub fn indirect_rb(q: &IndirectRbQuery) -> Result<IndirectRbResult, PipelineError> {
    let switched = switch_crossing(&q.base, q.crossing_to_switch)?;
    let a = alexander_from_seifert(&seifert_matrix(&switched)?)?;
    let b = alexander_from_seifert(&seifert_matrix(&q.neighbor_diagram)?)?;
    let (da, db) = (
        goeritz_determinant(&switched)?.abs(),
        goeritz_determinant(&q.neighbor_diagram)?.abs(),
    );
    if da != db {
        return Err(PipelineError::NeighborMismatch(format!(
            "determinant {da} vs {db}"
        )));
    }
    if a != b {
        return Err(PipelineError::NeighborMismatch(format!(
            "Alexander polynomial {a} vs {b}"
        )));
    }
    let neighbor_rb = rb_best(std::slice::from_ref(&q.neighbor_diagram));
    Ok(IndirectRbResult {
        neighbor_rb,
        bound: neighbor_rb.map_or(0, |rb| (rb - 1).max(0)),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchError {
    pub line: usize,
    pub name: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum BatchEntry {
    Report(Box<ObstructionReport>),
    Error(BatchError),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BatchSummary {
    pub reports: usize,
    pub errors: usize,
    pub obstructed: usize,
    /// Counts per cone case, including "skipped (bound)".
    pub cases: BTreeMap<String, usize>,
}

/// Analyze every record of a knot list. Output order follows input order.
pub fn batch(text: &str, config: &AnalyzeConfig) -> (Vec<BatchEntry>, BatchSummary) {
    let records = parse_knot_list(text);
    let slots: Vec<Mutex<Option<BatchEntry>>> = records.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(records.len().max(1));
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(r) = records.get(i) else { break };
                let result = r
                    .diagram
                    .clone()
                    .map_err(PipelineError::from)
                    .and_then(|d| analyze(&d, config));
                let entry = match result {
                    Ok(rep) => BatchEntry::Report(Box::new(rep)),
                    Err(e) => BatchEntry::Error(BatchError {
                        line: r.line,
                        name: r.name.clone(),
                        error: e.to_string(),
                    }),
                };
                *slots[i].lock().unwrap() = Some(entry);
            });
        }
    });
    let entries: Vec<BatchEntry> = slots
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("every record analyzed"))
        .collect();
    let mut summary = BatchSummary::default();
    for e in &entries {
        match e {
            BatchEntry::Report(r) => {
                summary.reports += 1;
                if r.verdict.is_obstructed() {
                    summary.obstructed += 1;
                }
                *summary
                    .cases
                    .entry(r.theorem1_case.to_string())
                    .or_default() += 1;
            }
            BatchEntry::Error(_) => summary.errors += 1,
        }
    }
    (entries, summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_pd, two_bridge_diagram};
    use crate::fixtures::lookup;

    const TREFOIL: &str = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)";

    #[test]
    fn trefoil_report() {
        let r = analyze(
            &parse_pd(TREFOIL).unwrap().with_name("3_1"),
            &AnalyzeConfig::default(),
        )
        .unwrap();
        assert_eq!(r.determinant, 3);
        assert_eq!(r.signature, 2);
        assert_eq!(r.rb_best, Some(1));
        let reasons = r.verdict.reasons();
        assert!(reasons.contains(&Obstruction::NonSquareDeterminant(3)));
        assert!(reasons.contains(&Obstruction::Signature(2)));
        assert!(reasons.contains(&Obstruction::RudolphBennequin(1)));
        assert_eq!(r.theorem1_case, Bounded::Value(Theorem1Case::NotApplicable));
    }

    #[test]
    fn cyclic_square_determinant_has_metabolizer() {
        let d = two_bridge_diagram(9, 2).unwrap();
        let r = analyze(&d, &AnalyzeConfig::default()).unwrap();
        assert_eq!(r.h1, vec![9]);
        let Bounded::Value(Some(m)) = &r.metabolizer else {
            panic!("no metabolizer")
        };
        assert_eq!(m.order, 3);
        assert_eq!(
            r.theorem1_case,
            Bounded::Value(Theorem1Case::HasMetabolizer)
        );
        // 6_1 is slice; nothing should fire.
        assert_eq!(r.verdict, Verdict::NoObstructionFound);
    }

    #[test]
    fn unknot_report() {
        let r = analyze(&Diagram::unknot(), &AnalyzeConfig::default()).unwrap();
        assert_eq!((r.determinant, r.h1.len()), (1, 0));
        assert_eq!(r.verdict, Verdict::NoObstructionFound);
    }

    #[test]
    fn sum_matches_composite_diagram() {
        let t = parse_pd(TREFOIL).unwrap();
        let config = AnalyzeConfig::default();
        let s = analyze_sum(&[t.clone(), t.clone()], &config).unwrap();
        let c = analyze(&crate::diagram::connected_sum(&t, &t).unwrap(), &config).unwrap();
        assert_eq!(
            (s.determinant, &s.h1, &s.alexander, s.signature),
            (c.determinant, &c.h1, &c.alexander, c.signature)
        );
        assert_eq!(
            (s.cone_size.clone(), s.rb_best),
            (c.cone_size.clone(), c.rb_best)
        );
        assert_eq!(s.rb_best, Some(2));
        let tm = analyze_sum(&[t.clone(), mirror(&t)], &config).unwrap();
        assert!(tm.metabolizer.value().unwrap().is_some());
        assert_eq!((tm.signature, tm.tl_vanishes), (0, true));
    }

    #[test]
    fn bound_marks_skipped() {
        let d = two_bridge_diagram(9, 2).unwrap();
        let r = analyze(&d, &AnalyzeConfig { bound: 5 }).unwrap();
        assert_eq!(r.cone_size, Bounded::Skipped);
        assert_eq!(serde_json::to_value(&r).unwrap()["metabolizer"], SKIPPED);
    }

    #[test]
    fn indirect_rb_on_figure_diagram() {
        let n = lookup("12_1609").unwrap();
        let base = switch_crossing(&n, 0).unwrap();
        let q = IndirectRbQuery {
            base,
            crossing_to_switch: 0,
            neighbor_diagram: n.clone(),
        };
        let r = indirect_rb(&q).unwrap();
        assert_eq!((r.neighbor_rb, r.bound), (Some(2), 1));
        let wrong = IndirectRbQuery {
            neighbor_diagram: parse_pd(TREFOIL).unwrap(),
            ..q
        };
        assert!(matches!(
            indirect_rb(&wrong),
            Err(PipelineError::NeighborMismatch(_))
        ));
    }

    #[test]
    fn batch_keeps_order_and_errors() {
        let text = format!("3_1\tpd:{TREFOIL}\nbad\tpd:X(1,2\n4_1\tdt:4 6 8 2\n");
        let (entries, summary) = batch(&text, &AnalyzeConfig::default());
        assert_eq!(entries.len(), 3);
        assert!(matches!(&entries[1], BatchEntry::Error(e) if e.name == "bad"));
        let BatchEntry::Report(r) = &entries[2] else {
            panic!()
        };
        assert_eq!(r.determinant, 5);
        assert_eq!(
            (summary.reports, summary.errors, summary.obstructed),
            (2, 1, 2)
        );
        let (e, s) = batch("", &AnalyzeConfig::default());
        assert!(e.is_empty());
        assert_eq!(s, BatchSummary::default());
    }
}
