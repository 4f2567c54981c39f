//! Finite quivers, paths, and the line-oriented quiver file format.
//!
//! Paths compose right to left: in a product `pq` the path `q` is walked
//! first, so the stored arrow sequence is in application order with the
//! rightmost written letter first.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

pub type VertexId = usize;
pub type ArrowId = usize;

/// A finite quiver with declaration-ordered vertices and arrows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertex_names: Vec<String>,
    arrow_names: Vec<String>,
    arrow_src: Vec<VertexId>,
    arrow_tgt: Vec<VertexId>,
    vertex_index: BTreeMap<String, VertexId>,
    arrow_index: BTreeMap<String, ArrowId>,
    arrows_from: Vec<Vec<ArrowId>>,
    arrows_into: Vec<Vec<ArrowId>>,
}

impl Quiver {
    pub fn new(
        vertices: &[&str],
        arrows: &[(&str, &str, &str)],
    ) -> Result<Quiver, ParseError> {
        let mut text = String::new();
        for v in vertices {
            text.push_str("vertex ");
            text.push_str(v);
            text.push('\n');
        }
        for (name, src, tgt) in arrows {
            text.push_str("arrow ");
            text.push_str(name);
            text.push_str(" : ");
            text.push_str(src);
            text.push_str(" -> ");
            text.push_str(tgt);
            text.push('\n');
        }
        parse_quiver(&text)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrow_names.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrow_names[a]
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn arrow_id(&self, name: &str) -> Option<ArrowId> {
        self.arrow_index.get(name).copied()
    }

    pub fn src(&self, a: ArrowId) -> VertexId {
        self.arrow_src[a]
    }

    pub fn tgt(&self, a: ArrowId) -> VertexId {
        self.arrow_tgt[a]
    }

    /// Outgoing arrows of `v` in declaration order.
    pub fn arrows_from(&self, v: VertexId) -> &[ArrowId] {
        &self.arrows_from[v]
    }

    /// Incoming arrows of `v` in declaration order.
    pub fn arrows_into(&self, v: VertexId) -> &[ArrowId] {
        &self.arrows_into[v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.vertex_count()
    }

    pub fn arrows(&self) -> impl Iterator<Item = ArrowId> {
        0..self.arrow_count()
    }

    pub fn has_sinks(&self) -> bool {
        self.arrows_from.iter().any(|out| out.is_empty())
    }

    /// First sink in declaration order, if any.
    pub fn first_sink(&self) -> Option<VertexId> {
        self.arrows_from.iter().position(|out| out.is_empty())
    }
}

/// Syntax or validation error with 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

fn err(line: usize, column: usize, message: &str) -> ParseError {
    ParseError { line, column, message: message.to_string() }
}

/// Tokens of a line together with their 1-based starting columns.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut col = 0usize;
    let mut start = None;
    for (i, c) in line.char_indices() {
        col += 1;
        if c.is_whitespace() {
            if let Some((s, sc)) = start.take() {
                out.push((sc, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some((i, col));
        }
    }
    if let Some((s, sc)) = start {
        out.push((sc, &line[s..]));
    }
    out
}

/// Parse the line-oriented quiver format: `#` starts a comment,
/// `vertex <id>` declares a vertex, `arrow <id> : <src> -> <tgt>`
/// declares an arrow between declared vertices.
pub fn parse_quiver(text: &str) -> Result<Quiver, ParseError> {
    let mut q = Quiver {
        vertex_names: Vec::new(),
        arrow_names: Vec::new(),
        arrow_src: Vec::new(),
        arrow_tgt: Vec::new(),
        vertex_index: BTreeMap::new(),
        arrow_index: BTreeMap::new(),
        arrows_from: Vec::new(),
        arrows_into: Vec::new(),
    };
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let tokens = tokenize(line);
        if tokens.is_empty() {
            continue;
        }
        let (dcol, directive) = tokens[0];
        match directive {
            "vertex" => {
                if tokens.len() != 2 {
                    return Err(err(lineno, dcol, "expected: vertex <id>"));
                }
                let (col, name) = tokens[1];
                if q.vertex_index.contains_key(name) {
                    return Err(err(lineno, col, "duplicate vertex id"));
                }
                let id = q.vertex_names.len();
                q.vertex_index.insert(name.to_string(), id);
                q.vertex_names.push(name.to_string());
                q.arrows_from.push(Vec::new());
                q.arrows_into.push(Vec::new());
            }
            "arrow" => {
                if tokens.len() != 6 || tokens[2].1 != ":" || tokens[4].1 != "->" {
                    return Err(err(lineno, dcol, "expected: arrow <id> : <src> -> <tgt>"));
                }
                let (ncol, name) = tokens[1];
                if q.arrow_index.contains_key(name) {
                    return Err(err(lineno, ncol, "duplicate arrow id"));
                }
                let (scol, sname) = tokens[3];
                let src = q
                    .vertex_index
                    .get(sname)
                    .copied()
                    .ok_or_else(|| err(lineno, scol, "undeclared vertex"))?;
                let (tcol, tname) = tokens[5];
                let tgt = q
                    .vertex_index
                    .get(tname)
                    .copied()
                    .ok_or_else(|| err(lineno, tcol, "undeclared vertex"))?;
                let id = q.arrow_names.len();
                q.arrow_index.insert(name.to_string(), id);
                q.arrow_names.push(name.to_string());
                q.arrow_src.push(src);
                q.arrow_tgt.push(tgt);
                q.arrows_from[src].push(id);
                q.arrows_into[tgt].push(id);
            }
            _ => return Err(err(lineno, dcol, "unknown directive")),
        }
    }
    Ok(q)
}

/// A path in a quiver. `base` is the source vertex; `arrows` is in
/// application order, so `arrows[0]` is the rightmost written letter and
/// the target of `arrows[i]` is the source of `arrows[i+1]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Path {
    pub base: VertexId,
    pub arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Path {
        Path { base: v, arrows: Vec::new() }
    }

    /// Builds a path from arrows in application order, checking
    /// composability; `None` when consecutive arrows do not meet.
    pub fn from_arrows(q: &Quiver, arrows: Vec<ArrowId>) -> Option<Path> {
        if arrows.is_empty() {
            return None;
        }
        for w in arrows.windows(2) {
            if q.tgt(w[0]) != q.src(w[1]) {
                return None;
            }
        }
        Some(Path { base: q.src(arrows[0]), arrows })
    }

    pub fn of_arrow(q: &Quiver, a: ArrowId) -> Path {
        Path { base: q.src(a), arrows: alloc::vec![a] }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self) -> VertexId {
        self.base
    }

    pub fn target(&self, q: &Quiver) -> VertexId {
        match self.arrows.last() {
            Some(&a) => q.tgt(a),
            None => self.base,
        }
    }

    /// Written form, leftmost letter = last applied arrow; trivial paths
    /// render as `e(v)`.
    pub fn render(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            let mut s = String::from("e(");
            s.push_str(q.vertex_name(self.base));
            s.push(')');
            return s;
        }
        let mut s = String::new();
        for (i, &a) in self.arrows.iter().rev().enumerate() {
            if i > 0 {
                s.push('.');
            }
            s.push_str(q.arrow_name(a));
        }
        s
    }
}

/// Concatenation `pq` (walk `q`, then `p`); `None` is the zero marker,
/// returned when `s(p) != t(q)`.
pub fn compose(q: &Quiver, p: &Path, r: &Path) -> Option<Path> {
    if p.source() != r.target(q) {
        return None;
    }
    let mut arrows = r.arrows.clone();
    arrows.extend_from_slice(&p.arrows);
    Some(Path { base: r.base, arrows })
}

/// All paths of exactly `length` with optional endpoint constraints, in
/// lexicographic declaration order.
pub fn enumerate_paths(
    q: &Quiver,
    length: usize,
    src: Option<VertexId>,
    tgt: Option<VertexId>,
) -> Vec<Path> {
    let mut out = Vec::new();
    let starts: Vec<VertexId> = match src {
        Some(v) => alloc::vec![v],
        None => q.vertices().collect(),
    };
    for v in starts {
        let mut stack = alloc::vec![(Path::trivial(v), v)];
        while let Some((path, head)) = stack.pop() {
            if path.len() == length {
                if tgt.map_or(true, |t| t == head) {
                    out.push(path);
                }
                continue;
            }
            // Push in reverse so declaration order pops first.
            for &a in q.arrows_from(head).iter().rev() {
                let mut next = path.clone();
                next.arrows.push(a);
                stack.push((next, q.tgt(a)));
            }
        }
    }
    out
}

/// A pair of paths with a common source and a common target.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ParallelPair {
    pub first: Path,
    pub second: Path,
}

impl ParallelPair {
    pub fn new(q: &Quiver, first: Path, second: Path) -> Option<ParallelPair> {
        if first.source() == second.source() && first.target(q) == second.target(q) {
            Some(ParallelPair { first, second })
        } else {
            None
        }
    }
}
