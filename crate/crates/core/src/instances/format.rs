//! Plain-text formats.
//!
//! ```text
//! c comment lines start with 'c'
//! p hs <n> <m> <d>        s <e1> <e2> ...
//! p edge <n> <m>          e <u> <v>
//! p tour <n>              a <u> <v>
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{Graph, HypergraphInstance, Id, InstanceError, ProblemKind, Solution, Tournament};

/// Largest `n` a header may declare.
pub const MAX_DECLARED_IDS: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based line number; 0 when the problem is only visible at end of input.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("missing header line")]
    MissingHeader,
    #[error("malformed header")]
    MalformedHeader,
    #[error("declared size {0} exceeds the supported maximum")]
    TooLarge(usize),
    #[error("malformed line")]
    MalformedLine,
    #[error("id {id} out of range 1..={n}")]
    OutOfRange { id: u64, n: usize },
    #[error("set of size {size} exceeds rank {d}")]
    SetTooLarge { size: usize, d: usize },
    #[error("element {0} repeated within a set")]
    RepeatedElement(Id),
    #[error("declared {declared} records, found {found}")]
    CountMismatch { declared: usize, found: usize },
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Id, Id),
    #[error("self-loop at {0}")]
    SelfLoop(Id),
    #[error("pair {0},{1} has more than one arc")]
    DoubledPair(Id, Id),
    #[error("pair {0},{1} has no arc")]
    MissingPair(Id, Id),
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Non-comment, non-blank lines with their 1-based numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

fn header<'a>(recs: &mut impl Iterator<Item = (usize, Vec<&'a str>)>, tag: &str, arity: usize) -> Result<(usize, Vec<usize>), ParseError> {
    let (line, toks) = recs.next().ok_or(err(0, ParseErrorKind::MissingHeader))?;
    if toks.len() != arity + 2 || toks[0] != "p" || toks[1] != tag {
        return Err(err(line, ParseErrorKind::MalformedHeader));
    }
    let nums = toks[2..]
        .iter()
        .map(|t| t.parse::<usize>().map_err(|_| err(line, ParseErrorKind::MalformedHeader)))
        .collect::<Result<Vec<_>, _>>()?;
    if nums[0] > MAX_DECLARED_IDS {
        return Err(err(line, ParseErrorKind::TooLarge(nums[0])));
    }
    Ok((line, nums))
}

fn parse_id(tok: &str, n: usize, line: usize) -> Result<Id, ParseError> {
    let v: u64 = tok.parse().map_err(|_| err(line, ParseErrorKind::MalformedLine))?;
    if v == 0 || v > n as u64 {
        return Err(err(line, ParseErrorKind::OutOfRange { id: v, n }));
    }
    Ok(v as Id)
}

fn pair(toks: &[&str], tag: &str, n: usize, line: usize) -> Result<(Id, Id), ParseError> {
    if toks.len() != 3 || toks[0] != tag {
        return Err(err(line, ParseErrorKind::MalformedLine));
    }
    let u = parse_id(toks[1], n, line)?;
    let v = parse_id(toks[2], n, line)?;
    if u == v {
        return Err(err(line, ParseErrorKind::SelfLoop(u)));
    }
    Ok((u, v))
}

fn check_count(declared: usize, found: usize) -> Result<(), ParseError> {
    if declared != found {
        return Err(err(0, ParseErrorKind::CountMismatch { declared, found }));
    }
    Ok(())
}

/// Parses a `.hs` file. The universe is `1..=n`; repeated sets collapse.
pub fn parse_hs(text: &str) -> Result<HypergraphInstance, ParseError> {
    let mut recs = records(text);
    let (hline, nums) = header(&mut recs, "hs", 3)?;
    let (n, m, d) = (nums[0], nums[1], nums[2]);
    if d == 0 {
        return Err(err(hline, ParseErrorKind::MalformedHeader));
    }
    let mut family = BTreeSet::new();
    let mut found = 0;
    for (line, toks) in recs {
        if toks[0] != "s" || toks.len() < 2 {
            return Err(err(line, ParseErrorKind::MalformedLine));
        }
        let mut set = BTreeSet::new();
        for t in &toks[1..] {
            let e = parse_id(t, n, line)?;
            if !set.insert(e) {
                return Err(err(line, ParseErrorKind::RepeatedElement(e)));
            }
        }
        if set.len() > d {
            return Err(err(line, ParseErrorKind::SetTooLarge { size: set.len(), d }));
        }
        family.insert(set.into_iter().collect::<Vec<_>>());
        found += 1;
    }
    check_count(m, found)?;
    Ok(HypergraphInstance::from_sorted_parts(
        d,
        (1..=n as Id).collect(),
        family.into_iter().collect(),
    ))
}

/// Parses a `.gr` file with vertices `1..=n`.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut recs = records(text);
    let (_, nums) = header(&mut recs, "edge", 2)?;
    let (n, m) = (nums[0], nums[1]);
    let mut seen = BTreeSet::new();
    let mut edges = Vec::new();
    for (line, toks) in recs {
        let (u, v) = pair(&toks, "e", n, line)?;
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(err(line, ParseErrorKind::DuplicateEdge(u.min(v), u.max(v))));
        }
        edges.push((u, v));
    }
    check_count(m, edges.len())?;
    Ok(Graph::dense(n, edges).expect("edges validated during parsing"))
}

/// Parses a `.tour` file; every pair of vertices needs exactly one arc.
pub fn parse_tournament(text: &str) -> Result<Tournament, ParseError> {
    let mut recs = records(text);
    let (_, nums) = header(&mut recs, "tour", 1)?;
    let n = nums[0];
    let mut seen = BTreeSet::new();
    let mut arcs = Vec::new();
    for (line, toks) in recs {
        let (u, v) = pair(&toks, "a", n, line)?;
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(err(line, ParseErrorKind::DoubledPair(u.min(v), u.max(v))));
        }
        arcs.push((u, v));
    }
    match Tournament::dense(n, arcs) {
        Ok(t) => Ok(t),
        Err(InstanceError::MissingArc(u, v)) => Err(err(0, ParseErrorKind::MissingPair(u, v))),
        Err(e) => unreachable!("arcs validated during parsing: {e}"),
    }
}

/// Parses a solution file: whitespace-separated ids on non-comment lines.
pub fn parse_solution(text: &str, kind: ProblemKind) -> Result<Solution, ParseError> {
    let mut ids = BTreeSet::new();
    for (line, toks) in records(text) {
        for t in toks {
            ids.insert(parse_id(t, Id::MAX as usize, line)?);
        }
    }
    Ok(Solution { kind, elements: ids })
}

/// Serializes an instance whose universe is `1..=n` (see [`HypergraphInstance::densify`]).
pub fn write_hs(inst: &HypergraphInstance) -> Result<String, InstanceError> {
    if !inst.is_dense() {
        return Err(InstanceError::NotDense);
    }
    let mut out = format!("p hs {} {} {}\n", inst.n(), inst.m(), inst.d());
    for set in inst.family() {
        out.push('s');
        for e in set {
            write!(out, " {e}").unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn write_graph(g: &Graph) -> Result<String, InstanceError> {
    if !g.vertices().enumerate().all(|(i, v)| v as usize == i + 1) {
        return Err(InstanceError::NotDense);
    }
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    Ok(out)
}

pub fn write_tournament(t: &Tournament) -> Result<String, InstanceError> {
    if !t.vertices().enumerate().all(|(i, v)| v as usize == i + 1) {
        return Err(InstanceError::NotDense);
    }
    let mut out = format!("p tour {}\n", t.n());
    for (u, v) in t.arcs() {
        writeln!(out, "a {u} {v}").unwrap();
    }
    Ok(out)
}

pub fn write_solution(sol: &Solution) -> String {
    let mut out = format!("c {} solution, size {}\n", sol.kind, sol.len());
    let ids: Vec<String> = sol.elements.iter().map(|e| e.to_string()).collect();
    out.push_str(&ids.join(" "));
    out.push('\n');
    out
}
