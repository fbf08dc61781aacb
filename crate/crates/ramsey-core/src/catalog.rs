//! The coloring file format and the built-in seed catalog.
//!
//! Format v1, line by line (`#` starts a comment, blank lines ignored):
//!
//! ```text
//! ramsey-coloring 1
//! n=<int> r=<int>
//! bounds=<k1,...,kr>      # optional metadata
//! source=<free text>      # optional metadata
//! edge <u> <v> <color>    # one line per unordered pair, or instead:
//! cyclic <n>; <color>:<d1>,<d2>; ...
//! ```
//!
//! The explicit body lists every unordered pair exactly once; the cyclic
//! body names each color's distance classes, which must partition
//! `1..=n/2`. Parsing is total: every input yields a coloring or an error
//! carrying the offending line number. Serialization writes edges in
//! lexicographic pair order and picks the cyclic form automatically for
//! colorings built from distance classes, so `parse(serialize(c)) == c`.

use std::collections::BTreeSet;
use std::fmt;

use crate::coloring::{
    CliqueBoundVector, Color, ColoringError, DistanceClasses, EdgeColoring,
};

pub const FORMAT_NAME: &str = "ramsey-coloring";
pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    BadHeader,
    BadVersion(String),
    Malformed(String),
    Coloring(ColoringError),
}

/// A located parse failure.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: ", self.line)?;
        match &self.kind {
            ParseErrorKind::BadHeader => {
                write!(f, "expected header '{FORMAT_NAME} {FORMAT_VERSION}'")
            }
            ParseErrorKind::BadVersion(v) => {
                write!(f, "unsupported format version '{v}' (expected {FORMAT_VERSION})")
            }
            ParseErrorKind::Malformed(msg) => write!(f, "{msg}"),
            ParseErrorKind::Coloring(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown seed '{0}'")]
    UnknownSeed(String),
}

/// Optional claims attached to a coloring file. Bound vectors here are
/// echoes of what the producer asserted; only verification makes them true.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ColoringMetadata {
    pub bounds: Option<CliqueBoundVector>,
    pub source: Option<String>,
}

/// Renders a coloring in format v1.
pub fn serialize(c: &EdgeColoring, meta: &ColoringMetadata) -> String {
    let mut out = String::new();
    out.push_str(FORMAT_NAME);
    out.push(' ');
    out.push_str(FORMAT_VERSION);
    out.push('\n');
    out.push_str(&format!("n={} r={}\n", c.n(), c.r()));
    if let Some(bounds) = &meta.bounds {
        out.push_str(&format!("bounds={bounds}\n"));
    }
    if let Some(source) = &meta.source {
        out.push_str(&format!("source={source}\n"));
    }
    if let Some(classes) = c.cyclic_classes() {
        out.push_str(&format!("cyclic {}", c.n()));
        for (color, distances) in classes {
            let ds: Vec<String> = distances.iter().map(|d| d.to_string()).collect();
            out.push_str(&format!("; {color}:{}", ds.join(",")));
        }
        out.push('\n');
    } else {
        for (u, v, color) in c.edges() {
            out.push_str(&format!("edge {u} {v} {color}\n"));
        }
    }
    out
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn malformed(line: usize, msg: impl Into<String>) -> ParseError {
    err(line, ParseErrorKind::Malformed(msg.into()))
}

/// Parses format v1 text into a validated coloring plus its metadata.
pub fn parse(text: &str) -> Result<(EdgeColoring, ColoringMetadata), ParseError> {
    // Comment and blank lines are transparent everywhere.
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line, header) = lines.next().ok_or_else(|| err(0, ParseErrorKind::BadHeader))?;
    let mut parts = header.split_whitespace();
    if parts.next() != Some(FORMAT_NAME) {
        return Err(err(line, ParseErrorKind::BadHeader));
    }
    let version = parts.next().unwrap_or("");
    if version != FORMAT_VERSION || parts.next().is_some() {
        return Err(err(line, ParseErrorKind::BadVersion(version.to_string())));
    }

    let (line, size) = lines
        .next()
        .ok_or_else(|| malformed(line, "missing 'n=<int> r=<int>' line"))?;
    let (n, r) = parse_size_line(line, size)?;

    let mut meta = ColoringMetadata::default();
    let mut edges: Vec<(usize, usize, Color)> = Vec::new();
    let mut seen = vec![false; n * n.saturating_sub(1) / 2];
    let mut cyclic: Option<(usize, DistanceClasses)> = None;
    let mut last_line = line;

    for (line, content) in lines {
        last_line = line;
        if let Some(rest) = content.strip_prefix("bounds=") {
            if !edges.is_empty() || cyclic.is_some() {
                return Err(malformed(line, "metadata must precede the body"));
            }
            let bounds: CliqueBoundVector = rest
                .parse()
                .map_err(|e: ColoringError| err(line, ParseErrorKind::Coloring(e)))?;
            if bounds.len() != r {
                return Err(malformed(
                    line,
                    format!("bounds has {} entries but r={r}", bounds.len()),
                ));
            }
            meta.bounds = Some(bounds);
        } else if let Some(rest) = content.strip_prefix("source=") {
            if !edges.is_empty() || cyclic.is_some() {
                return Err(malformed(line, "metadata must precede the body"));
            }
            meta.source = Some(rest.to_string());
        } else if content.starts_with("edge") {
            if cyclic.is_some() {
                return Err(malformed(line, "explicit edges cannot follow a cyclic body"));
            }
            let (u, v, color) = parse_edge_line(line, content, n, r)?;
            let idx = edge_slot(n, u, v);
            if seen[idx] {
                return Err(err(
                    line,
                    ParseErrorKind::Coloring(ColoringError::DuplicateEdge(u.min(v), u.max(v))),
                ));
            }
            seen[idx] = true;
            edges.push((u, v, color));
        } else if content.starts_with("cyclic") {
            if cyclic.is_some() || !edges.is_empty() {
                return Err(malformed(line, "body given twice"));
            }
            cyclic = Some((line, parse_cyclic_line(line, content, n)?));
        } else {
            return Err(malformed(line, format!("unrecognized line '{content}'")));
        }
    }

    let coloring = match cyclic {
        Some((line, classes)) => EdgeColoring::cyclic(n, &classes)
            .map_err(|e| err(line, ParseErrorKind::Coloring(e)))?,
        None => EdgeColoring::from_edges(n, r, edges)
            .map_err(|e| err(last_line, ParseErrorKind::Coloring(e)))?,
    };
    if coloring.r() != r {
        // A cyclic body whose largest color falls short of the header.
        return Err(malformed(
            last_line,
            format!("body uses {} colors but header says r={r}", coloring.r()),
        ));
    }
    Ok((coloring, meta))
}

fn parse_size_line(line: usize, content: &str) -> Result<(usize, usize), ParseError> {
    let mut n = None;
    let mut r = None;
    for token in content.split_whitespace() {
        if let Some(v) = token.strip_prefix("n=") {
            n = v.parse::<usize>().ok();
        } else if let Some(v) = token.strip_prefix("r=") {
            r = v.parse::<usize>().ok();
        } else {
            return Err(malformed(line, format!("unexpected token '{token}'")));
        }
    }
    match (n, r) {
        (Some(n), Some(r)) => Ok((n, r)),
        _ => Err(malformed(line, "expected 'n=<int> r=<int>'")),
    }
}

fn parse_edge_line(
    line: usize,
    content: &str,
    n: usize,
    r: usize,
) -> Result<(usize, usize, Color), ParseError> {
    let fields: Vec<&str> = content.split_whitespace().collect();
    if fields.len() != 4 {
        return Err(malformed(line, "expected 'edge <u> <v> <color>'"));
    }
    let u: usize = fields[1]
        .parse()
        .map_err(|_| malformed(line, format!("bad vertex '{}'", fields[1])))?;
    let v: usize = fields[2]
        .parse()
        .map_err(|_| malformed(line, format!("bad vertex '{}'", fields[2])))?;
    let color: u64 = fields[3]
        .parse()
        .map_err(|_| malformed(line, format!("bad color '{}'", fields[3])))?;
    for &x in &[u, v] {
        if x >= n {
            return Err(err(
                line,
                ParseErrorKind::Coloring(ColoringError::VertexOutOfRange { vertex: x, n }),
            ));
        }
    }
    if u == v {
        return Err(err(line, ParseErrorKind::Coloring(ColoringError::SelfLoop(u))));
    }
    if color == 0 || color > r as u64 || color > Color::MAX as u64 {
        return Err(err(
            line,
            ParseErrorKind::Coloring(ColoringError::ColorOutOfRange {
                color: color.min(Color::MAX as u64) as Color,
                r,
            }),
        ));
    }
    Ok((u, v, color as Color))
}

fn parse_cyclic_line(
    line: usize,
    content: &str,
    n: usize,
) -> Result<DistanceClasses, ParseError> {
    let mut groups = content.split(';').map(str::trim);
    let head = groups.next().unwrap_or("");
    let body_n: usize = head
        .strip_prefix("cyclic")
        .map(str::trim)
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| malformed(line, "expected 'cyclic <n>; ...'"))?;
    if body_n != n {
        return Err(malformed(
            line,
            format!("cyclic body says n={body_n} but header says n={n}"),
        ));
    }
    let mut classes = DistanceClasses::new();
    for group in groups {
        let (color_part, dist_part) = group
            .split_once(':')
            .ok_or_else(|| malformed(line, format!("expected '<color>:<distances>' in '{group}'")))?;
        let color: Color = color_part
            .trim()
            .parse()
            .map_err(|_| malformed(line, format!("bad color '{color_part}'")))?;
        let mut distances = BTreeSet::new();
        let dist_part = dist_part.trim();
        if !dist_part.is_empty() {
            for d in dist_part.split(',') {
                let d: usize = d
                    .trim()
                    .parse()
                    .map_err(|_| malformed(line, format!("bad distance '{d}'")))?;
                distances.insert(d);
            }
        }
        if classes.insert(color, distances).is_some() {
            return Err(malformed(line, format!("color {color} listed twice")));
        }
    }
    Ok(classes)
}

fn edge_slot(n: usize, u: usize, v: usize) -> usize {
    let (a, b) = (u.min(v), u.max(v));
    a * (2 * n - a - 1) / 2 + b - a - 1
}

// ---------------------------------------------------------------------------
// Seed catalog
// ---------------------------------------------------------------------------

/// The shipped seed witnesses. Each certification runs in the test suite,
/// so none of these is trusted by authority.
const SEEDS: &[(&str, &str)] = &[
    ("c5", include_str!("../data/seeds/c5.txt")),
    ("wagner8", include_str!("../data/seeds/wagner8.txt")),
    ("qr13", include_str!("../data/seeds/qr13.txt")),
    ("qr17", include_str!("../data/seeds/qr17.txt")),
];

pub fn seed_names() -> Vec<&'static str> {
    SEEDS.iter().map(|(name, _)| *name).collect()
}

/// Raw file text of a seed, exactly as shipped.
pub fn seed_text(name: &str) -> Result<&'static str, CatalogError> {
    SEEDS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
        .ok_or_else(|| CatalogError::UnknownSeed(name.to_string()))
}

/// A seed coloring and the bound vector it is claimed (and, in the test
/// suite, verified) to satisfy.
pub fn seed(name: &str) -> Result<(EdgeColoring, CliqueBoundVector), CatalogError> {
    let text = seed_text(name)?;
    let (coloring, meta) = parse(text)?;
    let bounds = meta.bounds.expect("every shipped seed declares bounds");
    Ok((coloring, bounds))
}
