//! Oriented knot diagrams in planar-diagram (PD) form.
//!
//! A crossing `X(a,b,c,d)` lists its four edge labels counterclockwise, starting
//! at the incoming under-strand, so `c` is the outgoing under-strand. The
//! crossing is positive when the over-strand enters at `d`, negative when it
//! enters at `b`. Diagrams may also carry crossingless circles; these only
//! appear as intermediate links (smoothings) and in the 0-crossing unknot.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::intlinalg::{IntMatrix, LinAlgError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("edge label {label} occurs {count} times")]
    LabelCount { label: u32, count: usize },
    #[error("inconsistent orientation at edge {0}")]
    Orientation(u32),
    #[error("diagram has {0} components, expected a knot")]
    Components(usize),
    #[error("malformed DT code at position {pos}: {msg}")]
    DtMalformed { pos: usize, msg: String },
    #[error("DT code is not realizable by a planar diagram")]
    DtNotRealizable,
    #[error("no crossing with id {0}")]
    NoCrossing(usize),
    #[error("no edge labelled {0}")]
    NoEdge(u32),
    #[error("diagram is disconnected")]
    Disconnected,
    #[error("invalid 2-bridge parameters ({p}, {q}): {msg}")]
    TwoBridge { p: i64, q: i64, msg: String },
    #[error("estimate inapplicable: a negative Seifert circle meets nugatory crossing {0}")]
    RbInapplicable(usize),
    #[error("braid form not reached: {0}")]
    Braid(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// One crossing; `edges` in counterclockwise order from the incoming under-strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Crossing {
    pub edges: [u32; 4],
    /// Slot (1 or 3) where the over-strand enters.
    pub over_in: u8,
}

impl Crossing {
    pub fn new(edges: [u32; 4], over_in: u8) -> Self {
        debug_assert!(over_in == 1 || over_in == 3);
        Crossing { edges, over_in }
    }

    pub fn sign(&self) -> i32 {
        if self.over_in == 3 {
            1
        } else {
            -1
        }
    }

    pub fn is_incoming(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in as usize
    }

    pub(crate) fn over_out(&self) -> usize {
        4 - self.over_in as usize
    }

    /// Outgoing slot joined to incoming slot `s` by the oriented smoothing.
    pub(crate) fn smoothing_out(&self, s: usize) -> usize {
        if s == 0 {
            self.over_out()
        } else {
            2
        }
    }

    /// The same crossing with over and under exchanged.
    pub fn switched(&self) -> Crossing {
        let o = self.over_in as usize;
        let e = self.edges;
        Crossing {
            edges: [e[o % 4], e[(o + 1) % 4], e[(o + 2) % 4], e[(o + 3) % 4]],
            over_in: (4 - o) as u8,
        }
    }

    fn reversed(&self) -> Crossing {
        let e = self.edges;
        Crossing {
            edges: [e[2], e[3], e[0], e[1]],
            over_in: self.over_in,
        }
    }
}

/// An oriented diagram. Knots are the single-component case.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    name: String,
    crossings: Vec<Crossing>,
    free_loops: usize,
}

pub type KnotDiagram = Diagram;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeifertData {
    /// Edge labels of each circle in orientation order; crossingless circles are empty.
    pub circles: Vec<Vec<u32>>,
    /// Indices into `circles` of circles meeting only negative crossings.
    pub negative_circles: Vec<usize>,
    pub writhe: i64,
}

impl SeifertData {
    pub fn count(&self) -> usize {
        self.circles.len()
    }

    pub fn negative_count(&self) -> usize {
        self.negative_circles.len()
    }
}

/// Slot positions of every edge: where it leaves (tail) and where it arrives (head).
pub(crate) struct Ends {
    #[allow(dead_code)]
    pub tail: HashMap<u32, (usize, usize)>,
    pub head: HashMap<u32, (usize, usize)>,
}

/// Faces as cycles of corners; corner k of crossing c lies between slots k and k+1.
pub(crate) struct Faces {
    pub corner_face: Vec<usize>,
    pub cycles: Vec<Vec<(usize, usize)>>,
}

impl Diagram {
    /// The 0-crossing unknot.
    pub fn unknot() -> Self {
        Diagram {
            name: String::new(),
            crossings: vec![],
            free_loops: 1,
        }
    }

    /// Build from crossings and extra circles, checking labels and orientations.
    pub fn from_crossings(
        crossings: Vec<Crossing>,
        free_loops: usize,
    ) -> Result<Self, DiagramError> {
        let d = Diagram {
            name: String::new(),
            crossings,
            free_loops,
        };
        d.check()?;
        Ok(d)
    }

    pub(crate) fn from_parts_unchecked(crossings: Vec<Crossing>, free_loops: usize) -> Self {
        Diagram {
            name: String::new(),
            crossings,
            free_loops,
        }
    }

    fn check(&self) -> Result<(), DiagramError> {
        let mut ins: HashMap<u32, usize> = HashMap::new();
        let mut outs: HashMap<u32, usize> = HashMap::new();
        for c in &self.crossings {
            for s in 0..4 {
                let m = if c.is_incoming(s) {
                    &mut ins
                } else {
                    &mut outs
                };
                *m.entry(c.edges[s]).or_default() += 1;
            }
        }
        for (&l, &n) in ins.iter().chain(outs.iter()) {
            let total = ins.get(&l).copied().unwrap_or(0) + outs.get(&l).copied().unwrap_or(0);
            if total != 2 {
                return Err(DiagramError::LabelCount {
                    label: l,
                    count: total,
                });
            }
            if n != 1 {
                return Err(DiagramError::Orientation(l));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign() as i64).sum()
    }

    pub fn max_label(&self) -> u32 {
        self.crossings
            .iter()
            .flat_map(|c| c.edges)
            .max()
            .unwrap_or(0)
    }

    pub(crate) fn ends(&self) -> Ends {
        let mut tail = HashMap::new();
        let mut head = HashMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                if c.is_incoming(s) {
                    head.insert(c.edges[s], (i, s));
                } else {
                    tail.insert(c.edges[s], (i, s));
                }
            }
        }
        Ends { tail, head }
    }

    /// Edge labels of each component with crossings, in orientation order. Each
    /// component starts at its smallest label; components are sorted by it.
    pub fn component_edges(&self) -> Vec<Vec<u32>> {
        let ends = self.ends();
        let mut labels: Vec<u32> = ends.head.keys().copied().collect();
        labels.sort_unstable();
        let mut seen = std::collections::HashSet::new();
        let mut comps = Vec::new();
        for &start in &labels {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut e = start;
            loop {
                seen.insert(e);
                comp.push(e);
                let (c, j) = ends.head[&e];
                e = self.crossings[c].edges[(j + 2) % 4];
                if e == start {
                    break;
                }
            }
            comps.push(comp);
        }
        comps
    }

    pub fn component_count(&self) -> usize {
        self.component_edges().len() + self.free_loops
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    /// Relabel edges 1, 2, … along the orientation, component by component.
    pub fn relabeled(&self) -> Diagram {
        let mut map = HashMap::new();
        let mut next = 1u32;
        for comp in self.component_edges() {
            for e in comp {
                map.insert(e, next);
                next += 1;
            }
        }
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing {
                edges: c.edges.map(|e| map[&e]),
                over_in: c.over_in,
            })
            .collect();
        Diagram {
            name: self.name.clone(),
            crossings,
            free_loops: self.free_loops,
        }
    }

    /// For each slot, the slot at the other end of its edge.
    pub(crate) fn partners(&self) -> Vec<[(usize, usize); 4]> {
        let mut first: HashMap<u32, (usize, usize)> = HashMap::new();
        let mut out = vec![[(0, 0); 4]; self.crossings.len()];
        for (i, c) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                if let Some(&(j, t)) = first.get(&c.edges[s]) {
                    out[i][s] = (j, t);
                    out[j][t] = (i, s);
                } else {
                    first.insert(c.edges[s], (i, s));
                }
            }
        }
        out
    }

    pub(crate) fn faces(&self) -> Faces {
        let partners = self.partners();
        let n = self.crossings.len();
        let mut corner_face = vec![usize::MAX; 4 * n];
        let mut cycles = Vec::new();
        for start in 0..4 * n {
            if corner_face[start] != usize::MAX {
                continue;
            }
            let id = cycles.len();
            let mut cyc = Vec::new();
            let (mut c, mut k) = (start / 4, start % 4);
            loop {
                corner_face[4 * c + k] = id;
                cyc.push((c, k));
                let (c2, j) = partners[c][(k + 1) % 4];
                c = c2;
                k = j;
                if 4 * c + k == start {
                    break;
                }
            }
            cycles.push(cyc);
        }
        Faces {
            corner_face,
            cycles,
        }
    }

    /// Whether the underlying 4-valent graph is connected (no split pieces).
    pub fn is_connected(&self) -> bool {
        if self.crossings.is_empty() {
            return self.free_loops <= 1;
        }
        if self.free_loops > 0 {
            return false;
        }
        let partners = self.partners();
        let mut seen = vec![false; self.crossings.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(c) = queue.pop_front() {
            for &(d, _) in &partners[c] {
                if !seen[d] {
                    seen[d] = true;
                    queue.push_back(d);
                }
            }
        }
        seen.iter().all(|&b| b)
    }

    /// Seifert circles as edge cycles, plus a map from edge label to circle index.
    pub(crate) fn seifert_circles(&self) -> (Vec<Vec<u32>>, HashMap<u32, usize>) {
        let ends = self.ends();
        let mut labels: Vec<u32> = ends.head.keys().copied().collect();
        labels.sort_unstable();
        let mut circle_of = HashMap::new();
        let mut circles = Vec::new();
        for &start in &labels {
            if circle_of.contains_key(&start) {
                continue;
            }
            let id = circles.len();
            let mut cyc = Vec::new();
            let mut e = start;
            loop {
                circle_of.insert(e, id);
                cyc.push(e);
                let (c, j) = ends.head[&e];
                let x = &self.crossings[c];
                e = x.edges[x.smoothing_out(j)];
                if e == start {
                    break;
                }
            }
            circles.push(cyc);
        }
        (circles, circle_of)
    }

    /// The two Seifert circles at crossing `c`: (circle of the under-in edge, circle of the over-in edge).
    fn circles_at(&self, c: usize, circle_of: &HashMap<u32, usize>) -> (usize, usize) {
        let x = &self.crossings[c];
        (
            circle_of[&x.edges[0]],
            circle_of[&x.edges[x.over_in as usize]],
        )
    }

    /// Crossings whose smoothing disconnects the diagram: two opposite corners share a face.
    pub fn nugatory_crossings(&self) -> Vec<usize> {
        let faces = self.faces();
        (0..self.crossings.len())
            .filter(|&c| {
                faces.corner_face[4 * c] == faces.corner_face[4 * c + 2]
                    || faces.corner_face[4 * c + 1] == faces.corner_face[4 * c + 3]
            })
            .collect()
    }

    pub fn to_pd_string(&self) -> String {
        self.crossings
            .iter()
            .map(|c| {
                format!(
                    "X({},{},{},{})",
                    c.edges[0], c.edges[1], c.edges[2], c.edges[3]
                )
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// DT code read from the smallest edge label: pass k is the head of the k-th edge.
    pub fn to_dt(&self) -> Result<Vec<i64>, DiagramError> {
        if self.crossings.is_empty() {
            return if self.free_loops == 1 {
                Ok(vec![])
            } else {
                Err(DiagramError::Components(self.free_loops))
            };
        }
        let comps = self.component_edges();
        if comps.len() != 1 || self.free_loops != 0 {
            return Err(DiagramError::Components(self.component_count()));
        }
        let ends = self.ends();
        let n = self.crossings.len();
        let mut passes: Vec<Vec<(usize, bool)>> = vec![vec![]; n];
        for (k, e) in comps[0].iter().enumerate() {
            let (c, j) = ends.head[e];
            passes[c].push((k + 1, j == 0));
        }
        let mut code = vec![0i64; n];
        for p in &passes {
            let (odd, even) = if p[0].0 % 2 == 1 {
                (p[0], p[1])
            } else {
                (p[1], p[0])
            };
            if odd.0 % 2 != 1 || even.0 % 2 != 0 {
                return Err(DiagramError::DtMalformed {
                    pos: 0,
                    msg: "crossing with passes of equal parity".into(),
                });
            }
            let v = even.0 as i64;
            code[(odd.0 - 1) / 2] = if even.1 { v } else { -v };
        }
        Ok(code)
    }

    pub fn seifert_data(&self) -> SeifertData {
        let (mut circles, circle_of) = self.seifert_circles();
        let mut has_pos = vec![false; circles.len()];
        let mut has_any = vec![false; circles.len()];
        for c in 0..self.crossings.len() {
            let (a, b) = self.circles_at(c, &circle_of);
            for i in [a, b] {
                has_any[i] = true;
                if self.crossings[c].sign() > 0 {
                    has_pos[i] = true;
                }
            }
        }
        let negative_circles = (0..circles.len())
            .filter(|&i| has_any[i] && !has_pos[i])
            .collect();
        circles.extend(std::iter::repeat(Vec::new()).take(self.free_loops));
        SeifertData {
            circles,
            negative_circles,
            writhe: self.writhe(),
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd_string())
    }
}

// ---------------------------------------------------------------- parsing

/// Parse PD text such as `X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)`. Empty text is the unknot.
pub fn parse_pd(text: &str) -> Result<Diagram, DiagramError> {
    let raw = parse_pd_terms(text)?;
    if raw.is_empty() {
        return Ok(Diagram::unknot());
    }
    let mut count: HashMap<u32, usize> = HashMap::new();
    for t in &raw {
        for &e in t {
            *count.entry(e).or_default() += 1;
        }
    }
    let mut bad: Vec<(u32, usize)> = count
        .iter()
        .filter(|(_, &n)| n != 2)
        .map(|(&l, &n)| (l, n))
        .collect();
    bad.sort_unstable();
    if let Some(&(label, count)) = bad.first() {
        return Err(DiagramError::LabelCount { label, count });
    }
    let d = orient_pd(&raw)?;
    let k = d.component_count();
    if k != 1 {
        return Err(DiagramError::Components(k));
    }
    Ok(d)
}

fn parse_pd_terms(text: &str) -> Result<Vec<[u32; 4]>, DiagramError> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let err = |pos: usize, msg: &str| DiagramError::Parse {
        pos,
        msg: msg.to_string(),
    };
    let skip = |i: &mut usize| {
        while *i < chars.len() && (chars[*i].is_whitespace() || chars[*i] == ',') {
            *i += 1;
        }
    };
    skip(&mut i);
    let wrapped =
        text[text.char_indices().nth(i).map_or(text.len(), |(b, _)| b)..].starts_with("PD[");
    if wrapped {
        i += 3;
    }
    let mut terms = Vec::new();
    loop {
        skip(&mut i);
        if i >= chars.len() {
            if wrapped {
                return Err(err(i, "missing closing ]"));
            }
            break;
        }
        if wrapped && chars[i] == ']' {
            i += 1;
            skip(&mut i);
            if i < chars.len() {
                return Err(err(i, "trailing text"));
            }
            break;
        }
        if chars[i] != 'X' {
            return Err(err(i, "expected X"));
        }
        i += 1;
        let close = match chars.get(i) {
            Some('(') => ')',
            Some('[') => ']',
            _ => return Err(err(i, "expected ( or [")),
        };
        i += 1;
        let mut vals = Vec::new();
        loop {
            while i < chars.len() && chars[i].is_whitespace() {
                i += 1;
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(err(i, "expected a positive integer label"));
            }
            let s: String = chars[start..i].iter().collect();
            vals.push(
                s.parse::<u32>()
                    .map_err(|_| err(start, "label out of range"))?,
            );
            while i < chars.len() && chars[i].is_whitespace() {
                i += 1;
            }
            match chars.get(i) {
                Some(',') => i += 1,
                Some(&c) if c == close => {
                    i += 1;
                    break;
                }
                _ => return Err(err(i, "expected , or closing bracket")),
            }
        }
        if vals.len() != 4 {
            return Err(err(i, "a crossing needs exactly 4 labels"));
        }
        terms.push([vals[0], vals[1], vals[2], vals[3]]);
    }
    Ok(terms)
}

/// Fix the over-strand direction of every crossing by following the strands.
fn orient_pd(raw: &[[u32; 4]]) -> Result<Diagram, DiagramError> {
    let n = raw.len();
    let mut pos: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
    for (i, t) in raw.iter().enumerate() {
        for s in 0..4 {
            pos.entry(t[s]).or_default().push((i, s));
        }
    }
    let other = |c: usize, s: usize| -> (usize, usize) {
        let v = &pos[&raw[c][s]];
        if v[0] == (c, s) {
            v[1]
        } else {
            v[0]
        }
    };
    let mut over_in: Vec<Option<usize>> = vec![None; n];
    let mut used_out = vec![[false; 4]; n];
    let walk = |c0: usize,
                s0: usize,
                over_in: &mut Vec<Option<usize>>,
                used_out: &mut Vec<[bool; 4]>|
     -> Result<(), DiagramError> {
        let (mut c, mut s) = (c0, s0);
        loop {
            if used_out[c][s] {
                return Err(DiagramError::Orientation(raw[c][s]));
            }
            used_out[c][s] = true;
            let (c2, j) = other(c, s);
            if j == 2 {
                return Err(DiagramError::Orientation(raw[c][s]));
            }
            if j != 0 {
                match over_in[c2] {
                    None => over_in[c2] = Some(j),
                    Some(o) if o == j => {}
                    Some(_) => return Err(DiagramError::Orientation(raw[c][s])),
                }
            }
            let out = (j + 2) % 4;
            if (c2, out) == (c0, s0) {
                return Ok(());
            }
            c = c2;
            s = out;
        }
    };
    for c in 0..n {
        if !used_out[c][2] {
            walk(c, 2, &mut over_in, &mut used_out)?;
        }
    }
    // over-strands not reached lie on components without under-passes
    while let Some(c) = (0..n).find(|&c| over_in[c].is_none()) {
        over_in[c] = Some(1);
        walk(c, 3, &mut over_in, &mut used_out)?;
    }
    let crossings = raw
        .iter()
        .zip(&over_in)
        .map(|(t, o)| Crossing {
            edges: *t,
            over_in: o.unwrap() as u8,
        })
        .collect();
    Diagram::from_crossings(crossings, 0)
}

/// Orient a diagram given by unoriented crossings (slots 0 and 2 carry the under-strand).
fn orient_unoriented(raw: &[[u32; 4]], free_loops: usize) -> Result<Diagram, DiagramError> {
    let n = raw.len();
    let mut pos: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
    for (i, t) in raw.iter().enumerate() {
        for s in 0..4 {
            pos.entry(t[s]).or_default().push((i, s));
        }
    }
    for (&l, v) in &pos {
        if v.len() != 2 {
            return Err(DiagramError::LabelCount {
                label: l,
                count: v.len(),
            });
        }
    }
    let other = |c: usize, s: usize| -> (usize, usize) {
        let v = &pos[&raw[c][s]];
        if v[0] == (c, s) {
            v[1]
        } else {
            v[0]
        }
    };
    let mut dir: Vec<[Option<bool>; 4]> = vec![[None; 4]; n];
    for c0 in 0..n {
        for s0 in [2, 3, 0, 1] {
            if dir[c0][s0].is_some() {
                continue;
            }
            let (mut c, mut s) = (c0, s0);
            loop {
                dir[c][s] = Some(false);
                let (c2, j) = other(c, s);
                dir[c2][j] = Some(true);
                let out = (j + 2) % 4;
                if (c2, out) == (c0, s0) {
                    break;
                }
                c = c2;
                s = out;
            }
        }
    }
    let crossings = raw
        .iter()
        .zip(&dir)
        .map(|(t, d)| {
            let t = if d[0] == Some(true) {
                *t
            } else {
                [t[2], t[3], t[0], t[1]]
            };
            let over_in = if d[0] == Some(true) {
                if d[1] == Some(true) {
                    1
                } else {
                    3
                }
            } else if d[3] == Some(true) {
                1
            } else {
                3
            };
            Crossing { edges: t, over_in }
        })
        .collect();
    Ok(Diagram::from_crossings(crossings, free_loops)?.relabeled())
}

/// Parse a DT code given as whitespace or comma separated even integers.
pub fn parse_dt_str(text: &str) -> Result<Diagram, DiagramError> {
    let body = text.trim().trim_start_matches('[').trim_end_matches(']');
    let mut code = Vec::new();
    for (i, tok) in body
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .enumerate()
    {
        let tok = tok.replace('−', "-");
        code.push(tok.parse::<i64>().map_err(|_| DiagramError::DtMalformed {
            pos: i + 1,
            msg: format!("not an integer: {tok}"),
        })?);
    }
    parse_dt(&code)
}

/// Realize a Dowker-Thistlethwaite code. A positive entry means the even pass goes under.
///
/// The planar embedding is found by trying the local orientation of every crossing
/// after the first and keeping the first choice whose face count satisfies Euler's
/// formula. The first crossing's choice is fixed, which fixes the mirror image.
pub fn parse_dt(code: &[i64]) -> Result<Diagram, DiagramError> {
    let n = code.len();
    if n == 0 {
        return Ok(Diagram::unknot());
    }
    if n > 24 {
        return Err(DiagramError::DtMalformed {
            pos: 25,
            msg: "more than 24 crossings".into(),
        });
    }
    let mut seen = vec![false; n];
    for (i, &v) in code.iter().enumerate() {
        let a = v.unsigned_abs() as usize;
        if v == 0 || a % 2 != 0 || a > 2 * n {
            return Err(DiagramError::DtMalformed {
                pos: i + 1,
                msg: format!("{v} is not an even label in 2..{}", 2 * n),
            });
        }
        if seen[a / 2 - 1] {
            return Err(DiagramError::DtMalformed {
                pos: i + 1,
                msg: format!("label {a} repeated"),
            });
        }
        seen[a / 2 - 1] = true;
    }
    let m = 2 * n as u32;
    let edge_in = |p: u32| p;
    let edge_out = |p: u32| if p == m { 1 } else { p + 1 };
    for mask in 0u32..(1 << (n - 1)) {
        let crossings: Vec<Crossing> = code
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let a = 2 * i as u32 + 1;
                let b = v.unsigned_abs() as u32;
                let even_under = v > 0;
                let chi = i == 0 || mask & (1 << (i - 1)) == 0;
                let (ia, oa, ib, ob) = (edge_in(a), edge_out(a), edge_in(b), edge_out(b));
                match (chi, even_under) {
                    (true, false) => Crossing {
                        edges: [ia, ib, oa, ob],
                        over_in: 1,
                    },
                    (true, true) => Crossing {
                        edges: [ib, oa, ob, ia],
                        over_in: 3,
                    },
                    (false, false) => Crossing {
                        edges: [ia, ob, oa, ib],
                        over_in: 3,
                    },
                    (false, true) => Crossing {
                        edges: [ib, ia, ob, oa],
                        over_in: 1,
                    },
                }
            })
            .collect();
        let d = Diagram::from_parts_unchecked(crossings, 0);
        if d.faces().cycles.len() == n + 2 {
            d.check()?;
            return Ok(d);
        }
    }
    Err(DiagramError::DtNotRealizable)
}

/// A record of a knot-list file.
#[derive(Debug, Clone)]
pub struct KnotRecord {
    pub line: usize,
    pub name: String,
    pub diagram: Result<Diagram, DiagramError>,
}

/// Parse `name<TAB>format:payload` lines with format `dt`, `pd` or `2bridge`.
/// Blank lines and `#` comments are skipped; bad records are kept with their error.
pub fn parse_knot_list(text: &str) -> Vec<KnotRecord> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, rest) = match line.split_once('\t') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => match line.split_once(char::is_whitespace) {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (line, ""),
            },
        };
        let diagram = parse_record(rest).map(|d| d.with_name(name));
        out.push(KnotRecord {
            line: i + 1,
            name: name.to_string(),
            diagram,
        });
    }
    out
}

/// Parse a single `format:payload` diagram specification.
pub fn parse_record(spec: &str) -> Result<Diagram, DiagramError> {
    let Some((fmt, payload)) = spec.split_once(':') else {
        return Err(DiagramError::Parse {
            pos: 0,
            msg: "expected format:payload".into(),
        });
    };
    match fmt.trim() {
        "dt" => parse_dt_str(payload),
        "pd" => parse_pd(payload),
        "2bridge" => {
            let nums: Vec<&str> = payload
                .split(|c: char| c == '/' || c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .collect();
            let parse = |s: &str| {
                s.parse::<i64>().map_err(|_| DiagramError::Parse {
                    pos: 0,
                    msg: format!("bad integer {s}"),
                })
            };
            if nums.len() != 2 {
                return Err(DiagramError::Parse {
                    pos: 0,
                    msg: "2bridge payload is p/q".into(),
                });
            }
            two_bridge_diagram(parse(nums[0])?, parse(nums[1])?)
        }
        other => Err(DiagramError::Parse {
            pos: 0,
            msg: format!("unknown format {other}"),
        }),
    }
}

// ---------------------------------------------------------------- braids and plats

/// Generators are ±i for σᵢ^{±1} acting on positions i, i+1 (1-based).
/// With strands oriented downwards σᵢ is a positive crossing.
fn braid_crossings(
    strands: usize,
    word: &[i32],
    next: &mut u32,
) -> (Vec<u32>, Vec<u32>, Vec<[u32; 4]>) {
    let top: Vec<u32> = (0..strands)
        .map(|_| {
            *next += 1;
            *next
        })
        .collect();
    let mut pos = top.clone();
    let mut raw = Vec::new();
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        let (tl, tr) = (pos[i], pos[i + 1]);
        *next += 1;
        let bl = *next;
        *next += 1;
        let br = *next;
        raw.push(if g < 0 {
            [bl, br, tr, tl]
        } else {
            [br, tr, tl, bl]
        });
        pos[i] = bl;
        pos[i + 1] = br;
    }
    (top, pos, raw)
}

fn glue(raw: Vec<[u32; 4]>, pairs: &[(u32, u32)]) -> Result<Diagram, DiagramError> {
    let mut parent: HashMap<u32, u32> = HashMap::new();
    fn find(p: &mut HashMap<u32, u32>, x: u32) -> u32 {
        let y = *p.get(&x).unwrap_or(&x);
        if y == x {
            x
        } else {
            let r = find(p, y);
            p.insert(x, r);
            r
        }
    }
    let mut all: BTreeSet<u32> = BTreeSet::new();
    for &(a, b) in pairs {
        all.insert(a);
        all.insert(b);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent.insert(ra, rb);
        }
    }
    let raw: Vec<[u32; 4]> = raw
        .iter()
        .map(|t| t.map(|e| find(&mut parent, e)))
        .collect();
    let used: BTreeSet<u32> = raw.iter().flatten().copied().collect();
    let classes: BTreeSet<u32> = all.iter().map(|&e| find(&mut parent, e)).collect();
    let free = classes.iter().filter(|c| !used.contains(c)).count();
    orient_unoriented(&raw, free)
}

#[cfg(test)]
/// Closure of a braid word on `strands` strands.
pub(crate) fn braid_closure(strands: usize, word: &[i32]) -> Result<Diagram, DiagramError> {
    if word
        .iter()
        .any(|&g| g == 0 || g.unsigned_abs() as usize >= strands)
    {
        return Err(DiagramError::Braid(format!(
            "generator out of range for {strands} strands"
        )));
    }
    let mut next = 0;
    let (top, bottom, raw) = braid_crossings(strands, word, &mut next);
    let pairs: Vec<(u32, u32)> = top.iter().zip(&bottom).map(|(&a, &b)| (a, b)).collect();
    glue(raw, &pairs)
}

/// Plat closure of a braid word on an even number of strands.
fn plat_closure(strands: usize, word: &[i32]) -> Result<Diagram, DiagramError> {
    let mut next = 0;
    let (top, bottom, raw) = braid_crossings(strands, word, &mut next);
    let mut pairs = Vec::new();
    for k in (0..strands).step_by(2) {
        pairs.push((top[k], top[k + 1]));
        pairs.push((bottom[k], bottom[k + 1]));
    }
    glue(raw, &pairs)
}

/// Alternating 4-plat diagram of the 2-bridge knot with fraction p/q.
pub fn two_bridge_diagram(p: i64, q: i64) -> Result<Diagram, DiagramError> {
    let bad = |msg: &str| DiagramError::TwoBridge {
        p,
        q,
        msg: msg.to_string(),
    };
    if p <= 0 || p % 2 == 0 {
        return Err(bad("p must be odd and positive"));
    }
    if p == 1 {
        return Ok(Diagram::unknot().with_name("2bridge(1/1)"));
    }
    if q <= 0 || q >= p {
        return Err(bad("need 0 < q < p"));
    }
    if p.gcd(&q) != 1 {
        return Err(bad("p and q are not coprime"));
    }
    let mut cf = Vec::new();
    let (mut a, mut b) = (p, q);
    while b != 0 {
        cf.push(a / b);
        (a, b) = (b, a % b);
    }
    if cf.len() % 2 == 0 {
        *cf.last_mut().unwrap() -= 1;
        cf.push(1);
    }
    let mut word = Vec::new();
    for (i, &k) in cf.iter().enumerate() {
        let g = if i % 2 == 0 { 2 } else { -1 };
        word.extend(std::iter::repeat(g).take(k as usize));
    }
    let d = plat_closure(4, &word)?;
    if !d.is_knot() {
        return Err(bad("plat closure is not a knot"));
    }
    Ok(d.with_name(format!("2bridge({p}/{q})")))
}

// ---------------------------------------------------------------- surgeries

pub fn mirror(d: &Diagram) -> Diagram {
    let name = if d.name.is_empty() {
        String::new()
    } else if let Some(s) = d.name.strip_prefix('!') {
        s.to_string()
    } else {
        format!("!{}", d.name)
    };
    Diagram {
        name,
        crossings: d.crossings.iter().map(Crossing::switched).collect(),
        free_loops: d.free_loops,
    }
}

pub fn reverse(d: &Diagram) -> Diagram {
    Diagram {
        name: d.name.clone(),
        crossings: d.crossings.iter().map(Crossing::reversed).collect(),
        free_loops: d.free_loops,
    }
}

pub fn switch_crossing(d: &Diagram, id: usize) -> Result<Diagram, DiagramError> {
    let mut out = d.clone();
    let c = out
        .crossings
        .get_mut(id)
        .ok_or(DiagramError::NoCrossing(id))?;
    *c = c.switched();
    Ok(out)
}

/// Oriented smoothing of one crossing; the result may be a link.
pub fn smooth_crossing(d: &Diagram, id: usize) -> Result<Diagram, DiagramError> {
    let x = *d.crossings.get(id).ok_or(DiagramError::NoCrossing(id))?;
    let e = x.edges;
    let pairs = [(e[0], e[x.over_out()]), (e[x.over_in as usize], e[2])];
    Ok(remove_crossing(d, id, &pairs))
}

/// Delete crossing `id`, joining the listed pairs of its edges (one incoming, one outgoing).
pub(crate) fn remove_crossing(d: &Diagram, id: usize, pairs: &[(u32, u32)]) -> Diagram {
    let mut rename: HashMap<u32, u32> = HashMap::new();
    let mut free = d.free_loops;
    let rest: Vec<Crossing> = d
        .crossings
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != id)
        .map(|(_, c)| *c)
        .collect();
    // Each pair (head-edge h, tail-edge t) becomes one edge labelled h.
    // Chains through the removed crossing are resolved by repeated renaming.
    for &(h, t) in pairs {
        let h = resolve(&rename, h);
        let t = resolve(&rename, t);
        if h == t {
            free += 1;
        } else {
            rename.insert(t, h);
        }
    }
    let crossings: Vec<Crossing> = rest
        .iter()
        .map(|c| Crossing {
            edges: c.edges.map(|l| resolve(&rename, l)),
            over_in: c.over_in,
        })
        .collect();
    Diagram {
        name: String::new(),
        crossings,
        free_loops: free,
    }
}

fn resolve(rename: &HashMap<u32, u32>, mut l: u32) -> u32 {
    while let Some(&m) = rename.get(&l) {
        l = m;
    }
    l
}

/// Connected sum joining the largest edge label of `d1` with the smallest of `d2`.
pub fn connected_sum(d1: &Diagram, d2: &Diagram) -> Result<Diagram, DiagramError> {
    let e1 = d1.crossings.iter().flat_map(|c| c.edges).max();
    let e2 = d2.crossings.iter().flat_map(|c| c.edges).min();
    match (e1, e2) {
        (Some(a), Some(b)) => connected_sum_at(d1, a, d2, b),
        _ => connected_sum_at(d1, e1.unwrap_or(0), d2, e2.unwrap_or(0)),
    }
}

/// Connected sum cutting edge `e1` of `d1` and edge `e2` of `d2`. Both diagrams are
/// knots; a crossingless summand is absorbed.
pub fn connected_sum_at(
    d1: &Diagram,
    e1: u32,
    d2: &Diagram,
    e2: u32,
) -> Result<Diagram, DiagramError> {
    for d in [d1, d2] {
        if !d.is_knot() {
            return Err(DiagramError::Components(d.component_count()));
        }
    }
    let name = match (d1.name.is_empty(), d2.name.is_empty()) {
        (false, false) => format!("{}#{}", d1.name, d2.name),
        _ => String::new(),
    };
    if d1.crossings.is_empty() {
        return Ok(d2.relabeled().with_name(name));
    }
    if d2.crossings.is_empty() {
        return Ok(d1.relabeled().with_name(name));
    }
    let off = d1.max_label();
    let ends1 = d1.ends();
    let ends2 = d2.ends();
    let (&(h1c, h1s), &(h2c, h2s)) = (
        ends1.head.get(&e1).ok_or(DiagramError::NoEdge(e1))?,
        ends2.head.get(&e2).ok_or(DiagramError::NoEdge(e2))?,
    );
    let mut crossings = d1.crossings.clone();
    let base = crossings.len();
    crossings.extend(d2.crossings.iter().map(|c| Crossing {
        edges: c.edges.map(|l| l + off),
        over_in: c.over_in,
    }));
    crossings[h1c].edges[h1s] = e2 + off;
    crossings[base + h2c].edges[h2s] = e1;
    Ok(Diagram::from_crossings(crossings, 0)?
        .relabeled()
        .with_name(name))
}

// ---------------------------------------------------------------- Bennequin numbers

/// b(D) = (w − s + 1)/2.
pub fn bennequin(d: &Diagram) -> i64 {
    let s = d.seifert_data();
    Integer::div_floor(&(s.writhe - s.count() as i64 + 1), &2)
}

/// rb(D) = b(D) + s₋(D); refused when a negative circle meets a nugatory crossing.
pub fn rudolph_bennequin(d: &Diagram) -> Result<i64, DiagramError> {
    let s = d.seifert_data();
    let (_, circle_of) = d.seifert_circles();
    let negative: BTreeSet<usize> = s.negative_circles.iter().copied().collect();
    for c in d.nugatory_crossings() {
        let (a, b) = d.circles_at(c, &circle_of);
        if negative.contains(&a) || negative.contains(&b) {
            return Err(DiagramError::RbInapplicable(c));
        }
    }
    Ok(bennequin(d) + s.negative_count() as i64)
}

// ---------------------------------------------------------------- Goeritz matrix

/// Sign applied to the raw Goeritz matrix so that the positive trefoil's form is +1/3.
const GOERITZ_SIGN: i64 = -1;

/// Two-colouring of the faces; colour of each face, or None if not bipartite.
fn face_colours(d: &Diagram, faces: &Faces) -> Vec<u8> {
    let nf = faces.cycles.len();
    let mut adj: Vec<Vec<usize>> = vec![vec![]; nf];
    for c in 0..d.crossings.len() {
        for k in 0..4 {
            let a = faces.corner_face[4 * c + k];
            let b = faces.corner_face[4 * c + (k + 1) % 4];
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut col = vec![u8::MAX; nf];
    for s in 0..nf {
        if col[s] != u8::MAX {
            continue;
        }
        col[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(f) = q.pop_front() {
            for &g in &adj[f] {
                if col[g] == u8::MAX {
                    col[g] = 1 - col[f];
                    q.push_back(g);
                }
            }
        }
    }
    col
}

/// Goeritz matrix of the faces of one colour (the smaller class) with one face removed.
pub fn goeritz_matrix(d: &Diagram) -> Result<IntMatrix, DiagramError> {
    goeritz_matrix_for(d, None)
}

pub(crate) fn goeritz_matrix_for(
    d: &Diagram,
    colour: Option<u8>,
) -> Result<IntMatrix, DiagramError> {
    if !d.is_connected() {
        return Err(DiagramError::Disconnected);
    }
    if d.crossings.is_empty() {
        return Ok(IntMatrix::zeros(0, 0));
    }
    let faces = d.faces();
    let col = face_colours(d, &faces);
    let white = colour.unwrap_or_else(|| {
        let zeros = col.iter().filter(|&&c| c == 0).count();
        if 2 * zeros <= col.len() {
            0
        } else {
            1
        }
    });
    let whites: Vec<usize> = (0..col.len()).filter(|&f| col[f] == white).collect();
    let index: HashMap<usize, usize> = whites.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let m = whites.len();
    let mut g = vec![vec![0i64; m]; m];
    for c in 0..d.crossings.len() {
        // corners 1 and 3 are swept by the over-strand turning counterclockwise
        let k = if col[faces.corner_face[4 * c + 1]] == white {
            1
        } else {
            0
        };
        let eta = if k == 1 { 1 } else { -1 };
        let a = index[&faces.corner_face[4 * c + k]];
        let b = index[&faces.corner_face[4 * c + k + 2]];
        if a != b {
            g[a][b] -= eta;
            g[b][a] -= eta;
            g[a][a] += eta;
            g[b][b] += eta;
        }
    }
    let rows: Vec<Vec<i64>> = g[1..]
        .iter()
        .map(|r| r[1..].iter().map(|v| v * GOERITZ_SIGN).collect())
        .collect();
    Ok(if rows.is_empty() {
        IntMatrix::zeros(0, 0)
    } else {
        IntMatrix::from_rows(&rows)
    })
}

// ---------------------------------------------------------------- Seifert matrix

/// Sign applied to the braid Seifert matrix so that the positive trefoil has σ = +2.
const SEIFERT_SIGN: i64 = -1;

/// Apply Vogel moves until the diagram is a closed braid.
fn vogel_braided(d: &Diagram) -> Result<Diagram, DiagramError> {
    let mut d = d.clone();
    let cap = 4 * d.crossings.len() * d.crossings.len() + 64;
    for _ in 0..cap {
        let (_, circle_of) = d.seifert_circles();
        let faces = d.faces();
        let mut mv = None;
        'search: for cyc in &faces.cycles {
            let walk: Vec<(u32, bool)> = cyc
                .iter()
                .map(|&(c, k)| {
                    let x = &d.crossings[c];
                    let s = (k + 1) % 4;
                    (x.edges[s], !x.is_incoming(s))
                })
                .collect();
            for i in 0..walk.len() {
                for j in i + 1..walk.len() {
                    let (a, fa) = walk[i];
                    let (b, fb) = walk[j];
                    if fa == fb && circle_of[&a] != circle_of[&b] {
                        mv = Some((a, b, fa));
                        break 'search;
                    }
                }
            }
        }
        let Some((a, b, face_right)) = mv else {
            return Ok(d);
        };
        d = vogel_move(&d, a, b, face_right);
    }
    Err(DiagramError::Braid("Vogel moves did not terminate".into()))
}

/// Reidemeister II move pushing edge `a` over edge `b` across a shared face.
fn vogel_move(d: &Diagram, a: u32, b: u32, face_right: bool) -> Diagram {
    let ends = d.ends();
    let m = d.max_label();
    let (a1, a2, a3) = (a, m + 1, m + 2);
    let (b1, b2, b3) = (b, m + 3, m + 4);
    let mut crossings = d.crossings.clone();
    let (hc, hs) = ends.head[&a];
    crossings[hc].edges[hs] = a3;
    let (hc, hs) = ends.head[&b];
    crossings[hc].edges[hs] = b3;
    if face_right {
        crossings.push(Crossing {
            edges: [b2, a1, b3, a2],
            over_in: 1,
        });
        crossings.push(Crossing {
            edges: [b1, a3, b2, a2],
            over_in: 3,
        });
    } else {
        crossings.push(Crossing {
            edges: [b2, a2, b3, a1],
            over_in: 3,
        });
        crossings.push(Crossing {
            edges: [b1, a2, b2, a3],
            over_in: 1,
        });
    }
    Diagram {
        name: d.name.clone(),
        crossings,
        free_loops: d.free_loops,
    }
}

/// Read a braid word (generators ±level, 1-based) from a braided diagram.
fn read_braid(d: &Diagram) -> Result<(usize, Vec<i32>), DiagramError> {
    let (circles, circle_of) = d.seifert_circles();
    let s = circles.len();
    let n = d.crossings.len();
    let mut nbrs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); s];
    for c in 0..n {
        let (x, y) = d.circles_at(c, &circle_of);
        nbrs[x].insert(y);
        nbrs[y].insert(x);
    }
    if nbrs.iter().any(|v| v.len() > 2) {
        return Err(DiagramError::Braid("Seifert graph is not a path".into()));
    }
    let start = (0..s)
        .find(|&i| nbrs[i].len() <= 1)
        .ok_or_else(|| DiagramError::Braid("Seifert graph is a cycle".into()))?;
    let mut order = vec![start];
    while order.len() < s {
        let last = *order.last().unwrap();
        let prev = if order.len() >= 2 {
            Some(order[order.len() - 2])
        } else {
            None
        };
        let Some(&nx) = nbrs[last].iter().find(|&&v| Some(v) != prev) else {
            return Err(DiagramError::Braid("Seifert graph is disconnected".into()));
        };
        order.push(nx);
    }
    let mut level = vec![0usize; s];
    for (l, &c) in order.iter().enumerate() {
        level[c] = l;
    }
    let ends = d.ends();
    // crossings met along each circle, in orientation order
    let seq: Vec<Vec<usize>> = order
        .iter()
        .map(|&ci| circles[ci].iter().map(|e| ends.head[e].0).collect())
        .collect();
    let lower = |c: usize| {
        let (x, y) = d.circles_at(c, &circle_of);
        level[x].min(level[y])
    };
    let mut lin: Vec<Vec<usize>> = Vec::with_capacity(s);
    for l in 0..s {
        let cyc = &seq[l];
        let rot = if l == 0 {
            0
        } else {
            let first_shared = lin[l - 1].iter().find(|&&c| lower(c) == l - 1).copied();
            let Some(x) = first_shared else {
                return Err(DiagramError::Braid("empty level".into()));
            };
            cyc.iter().position(|&c| c == x).unwrap()
        };
        let mut v = cyc[rot..].to_vec();
        v.extend_from_slice(&cyc[..rot]);
        if l > 0 {
            let below: Vec<usize> = lin[l - 1]
                .iter()
                .copied()
                .filter(|&c| lower(c) == l - 1)
                .collect();
            let here: Vec<usize> = v.iter().copied().filter(|&c| lower(c) == l - 1).collect();
            if below != here {
                return Err(DiagramError::Braid("inconsistent crossing order".into()));
            }
        }
        lin.push(v);
    }
    // merge the per-circle orders
    let mut succ: Vec<Vec<usize>> = vec![vec![]; n];
    let mut indeg = vec![0usize; n];
    for v in &lin {
        for w in v.windows(2) {
            succ[w[0]].push(w[1]);
            indeg[w[1]] += 1;
        }
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&c| indeg[c] == 0).collect();
    let mut word = Vec::with_capacity(n);
    while let Some(c) = ready.pop_first() {
        word.push(d.crossings[c].sign() * (lower(c) as i32 + 1));
        for &t in &succ[c] {
            indeg[t] -= 1;
            if indeg[t] == 0 {
                ready.insert(t);
            }
        }
    }
    if word.len() != n {
        return Err(DiagramError::Braid("cyclic crossing order".into()));
    }
    Ok((s, word))
}

/// Seifert matrix of the canonical surface of a closed braid.
pub(crate) fn braid_seifert_matrix(word: &[i32]) -> IntMatrix {
    let m = word.len();
    let next: Vec<Option<usize>> = (0..m)
        .map(|j| (j + 1..m).find(|&k| word[k].abs() == word[j].abs()))
        .collect();
    let gens: Vec<usize> = (0..m).filter(|&j| next[j].is_some()).collect();
    let k = gens.len();
    let mut a = vec![vec![0i64; k]; k];
    for (ii, &i) in gens.iter().enumerate() {
        let hi = next[i].unwrap();
        for (jj, &j) in gens.iter().enumerate().skip(ii) {
            let hj = next[j].unwrap();
            if i == j {
                a[ii][ii] = match (word[i] > 0, word[hi] > 0) {
                    (true, true) => -1,
                    (false, false) => 1,
                    _ => 0,
                };
            } else if hi > hj || hi < j {
                continue;
            } else if hi == j {
                if word[j] > 0 {
                    a[jj][ii] = 1;
                } else {
                    a[ii][jj] = -1;
                }
            } else {
                let (li, lj) = (word[i].abs(), word[j].abs());
                if li - lj == 1 {
                    a[jj][ii] = -1;
                } else if lj - li == 1 {
                    a[ii][jj] = 1;
                }
            }
        }
    }
    let rows: Vec<Vec<i64>> = a
        .into_iter()
        .map(|r| r.into_iter().map(|v| v * SEIFERT_SIGN).collect())
        .collect();
    if rows.is_empty() {
        IntMatrix::zeros(0, 0)
    } else {
        IntMatrix::from_rows(&rows)
    }
}

/// Seifert matrix V of the Seifert-algorithm surface (after braiding by Vogel moves),
/// normalized so that signature(V + Vᵀ) is +2 on the positive trefoil.
pub fn seifert_matrix(d: &Diagram) -> Result<IntMatrix, DiagramError> {
    if !d.is_connected() {
        return Err(DiagramError::Disconnected);
    }
    if d.crossings.is_empty() {
        return Ok(IntMatrix::zeros(0, 0));
    }
    let braided = vogel_braided(d)?;
    let (_, word) = read_braid(&braided)?;
    Ok(braid_seifert_matrix(&word))
}

/// Braid word (generator index times crossing sign) of a closed-braid form of `d`.
pub fn braid_word(d: &Diagram) -> Result<(usize, Vec<i32>), DiagramError> {
    if d.crossings.is_empty() {
        return Ok((1, vec![]));
    }
    read_braid(&vogel_braided(d)?)
}

/// |det| of the Goeritz matrix.
pub fn goeritz_determinant(d: &Diagram) -> Result<BigInt, DiagramError> {
    use num_traits::Signed;
    Ok(crate::intlinalg::determinant(&goeritz_matrix(d)?)?.abs())
}
