//! Edge colorings of complete graphs and elementary manipulations.
//!
//! An [`EdgeColoring`] assigns one of `r` colors (numbered `1..=r`) to every
//! edge of the complete graph on vertices `0..n`. Storage is a dense
//! upper-triangular array with one byte per edge, so colorings on a few
//! thousand vertices stay cheap and colorings up to ~20,000 vertices fit in
//! memory. Color `0` is reserved as a blank placeholder for matrix
//! reinterpretations and never appears on an edge.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::bitset::{words_for, BitSet};

/// Edge color identifier. Valid edge colors are `1..=r`; `0` is the reserved
/// blank symbol used only by matrix reinterpretations.
pub type Color = u8;

/// Largest supported color count, bounded by the byte-per-edge storage.
pub const MAX_COLORS: usize = u8::MAX as usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ColoringError {
    #[error("vertex count must be at least 1")]
    NoVertices,
    #[error("color count must be in 1..={MAX_COLORS}, got {0}")]
    BadColorCount(usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("missing edge {{{0}, {1}}}")]
    MissingEdge(usize, usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("color {color} out of range 1..={r}")]
    ColorOutOfRange { color: Color, r: usize },
    #[error("not a permutation of 1..={r}")]
    NotAPermutation { r: usize },
    #[error("vertex subset is empty")]
    EmptySubset,
    #[error("distance classes do not partition 1..={half}: {reason}")]
    DistanceClassesNotAPartition { half: usize, reason: String },
    #[error("bound vector has {got} entries, coloring has {expected} colors")]
    LengthMismatch { expected: usize, got: usize },
    #[error("clique bound {0} must be at least 2")]
    BoundTooSmall(usize),
    #[error("empty bound vector")]
    EmptyBounds,
    #[error("cannot parse bound vector '{0}'")]
    MalformedBounds(String),
}

/// The target vector `(k_1, ..., k_r)`: color `i` must avoid a monochromatic
/// `K_{k_i}`. An entry of 2 means the color must be entirely absent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CliqueBoundVector(Vec<usize>);

impl CliqueBoundVector {
    pub fn new(bounds: Vec<usize>) -> Result<Self, ColoringError> {
        if bounds.is_empty() {
            return Err(ColoringError::EmptyBounds);
        }
        if let Some(&bad) = bounds.iter().find(|&&k| k < 2) {
            return Err(ColoringError::BoundTooSmall(bad));
        }
        Ok(CliqueBoundVector(bounds))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false: the constructor rejects empty vectors.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Bound for `color` (1-based).
    pub fn bound_for(&self, color: Color) -> usize {
        self.0[color as usize - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// Ascending copy, the canonical form under color permutation.
    pub fn sorted(&self) -> CliqueBoundVector {
        let mut v = self.0.clone();
        v.sort_unstable();
        CliqueBoundVector(v)
    }

    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }
}

impl fmt::Display for CliqueBoundVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in &self.0 {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for CliqueBoundVector {
    type Err = ColoringError;

    /// Parses the `k1,k2,...,kr` form used by table files and the CLI.
    fn from_str(s: &str) -> Result<Self, ColoringError> {
        if s.trim().is_empty() {
            return Err(ColoringError::EmptyBounds);
        }
        let entries = s
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| ColoringError::MalformedBounds(s.to_string()))?;
        CliqueBoundVector::new(entries)
    }
}

/// Distance classes of a cyclic (circulant) coloring: for each color, the set
/// of circular distances it covers. Kept on the coloring that produced it so
/// serialization can round-trip the compact form.
pub type DistanceClasses = BTreeMap<Color, BTreeSet<usize>>;

/// A total symmetric assignment of one of `r` colors to every edge of `K_n`.
///
/// Symmetry is unrepresentable rather than validated: the single stored byte
/// for the unordered pair `{u, v}` serves both directions.
#[derive(Debug, Clone)]
pub struct EdgeColoring {
    n: usize,
    r: usize,
    /// Upper-triangular, row-major: entry for `{u, v}` with `u < v` lives at
    /// `offset(u) + v - u - 1`.
    chi: Vec<Color>,
    /// Set when the coloring was produced by [`EdgeColoring::cyclic`].
    cyclic: Option<DistanceClasses>,
}

/// Equality is semantic: same vertices, colors, and edge assignment. The
/// cyclic provenance tag is ignored.
impl PartialEq for EdgeColoring {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.r == other.r && self.chi == other.chi
    }
}

impl Eq for EdgeColoring {}

#[inline]
fn pair_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * (2 * n - u - 1) / 2 + v - u - 1
}

impl EdgeColoring {
    fn check_header(n: usize, r: usize) -> Result<(), ColoringError> {
        if n == 0 {
            return Err(ColoringError::NoVertices);
        }
        if r == 0 || r > MAX_COLORS {
            return Err(ColoringError::BadColorCount(r));
        }
        Ok(())
    }

    /// Builds a coloring from an explicit edge list. Every unordered pair of
    /// distinct vertices must appear exactly once with a color in `1..=r`.
    pub fn from_edges(
        n: usize,
        r: usize,
        edges: impl IntoIterator<Item = (usize, usize, Color)>,
    ) -> Result<Self, ColoringError> {
        Self::check_header(n, r)?;
        let m = n * (n - 1) / 2;
        let mut chi = vec![0 as Color; m];
        for (a, b, color) in edges {
            for &x in &[a, b] {
                if x >= n {
                    return Err(ColoringError::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(ColoringError::SelfLoop(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if color == 0 || color as usize > r {
                return Err(ColoringError::ColorOutOfRange { color, r });
            }
            let idx = pair_index(n, u, v);
            if chi[idx] != 0 {
                return Err(ColoringError::DuplicateEdge(u, v));
            }
            chi[idx] = color;
        }
        // Color 0 marks a pair the input never mentioned.
        if let Some(idx) = chi.iter().position(|&c| c == 0) {
            let (u, v) = Self::pair_from_index(n, idx);
            return Err(ColoringError::MissingEdge(u, v));
        }
        Ok(EdgeColoring {
            n,
            r,
            chi,
            cyclic: None,
        })
    }

    /// Builds a coloring by evaluating `f` on every pair `u < v`. The
    /// returned color must lie in `1..=r`; completeness and symmetry hold by
    /// construction.
    pub fn from_fn(
        n: usize,
        r: usize,
        mut f: impl FnMut(usize, usize) -> Color,
    ) -> Result<Self, ColoringError> {
        Self::check_header(n, r)?;
        let mut chi = Vec::with_capacity(n * (n - 1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                let color = f(u, v);
                if color == 0 || color as usize > r {
                    return Err(ColoringError::ColorOutOfRange { color, r });
                }
                chi.push(color);
            }
        }
        Ok(EdgeColoring {
            n,
            r,
            chi,
            cyclic: None,
        })
    }

    /// The circulant coloring on `Z_n`: the edge `{u, v}` takes the color of
    /// the class containing the circular distance `min(|u-v|, n-|u-v|)`.
    ///
    /// The classes must partition `{1, ..., floor(n/2)}`. The color count is
    /// the largest color mentioned; a class may be empty, and such a color
    /// simply has no edges.
    pub fn cyclic(n: usize, classes: &DistanceClasses) -> Result<Self, ColoringError> {
        if n == 0 {
            return Err(ColoringError::NoVertices);
        }
        let half = n / 2;
        let not_partition = |reason: String| ColoringError::DistanceClassesNotAPartition {
            half,
            reason,
        };
        let mut owner: Vec<Color> = vec![0; half + 1];
        for (&color, distances) in classes {
            if color == 0 {
                return Err(not_partition("class for reserved color 0".into()));
            }
            for &d in distances {
                if d == 0 || d > half {
                    return Err(not_partition(format!("distance {d} outside 1..={half}")));
                }
                if owner[d] != 0 {
                    return Err(not_partition(format!(
                        "distance {d} in classes for colors {} and {color}",
                        owner[d]
                    )));
                }
                owner[d] = color;
            }
        }
        if let Some(d) = (1..=half).find(|&d| owner[d] == 0) {
            return Err(not_partition(format!("distance {d} not covered")));
        }
        let r = classes.keys().next_back().copied().unwrap_or(1) as usize;
        let mut coloring = Self::from_fn(n, r, |u, v| {
            let d = v - u;
            owner[d.min(n - d)]
        })?;
        coloring.cyclic = Some(classes.clone());
        Ok(coloring)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edge_count(&self) -> usize {
        self.chi.len()
    }

    /// Distance classes, if this coloring came from [`EdgeColoring::cyclic`].
    pub fn cyclic_classes(&self) -> Option<&DistanceClasses> {
        self.cyclic.as_ref()
    }

    /// Color of the edge `{u, v}`.
    ///
    /// Panics if `u == v` or either vertex is out of range.
    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Color {
        assert!(u != v, "no self-loops in a complete-graph coloring");
        assert!(u < self.n && v < self.n, "vertex out of range");
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.chi[pair_index(self.n, a, b)]
    }

    /// All edges as `(u, v, color)` with `u < v`, in lexicographic pair order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Color)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n).map(move |v| (u, v, self.chi[pair_index(self.n, u, v)]))
        })
    }

    fn pair_from_index(n: usize, mut idx: usize) -> (usize, usize) {
        for u in 0..n {
            let row = n - u - 1;
            if idx < row {
                return (u, u + 1 + idx);
            }
            idx -= row;
        }
        unreachable!("index past the last pair")
    }

    /// Applies a color permutation: `chi'({u,v}) = pi(chi({u,v}))`.
    ///
    /// `pi` is given as a slice of length `r` where `pi[i-1]` is the new name
    /// of color `i`, and must be a bijection on `1..=r`.
    pub fn relabel_colors(&self, pi: &[Color]) -> Result<Self, ColoringError> {
        if pi.len() != self.r {
            return Err(ColoringError::NotAPermutation { r: self.r });
        }
        let mut seen = vec![false; self.r + 1];
        for &c in pi {
            if c == 0 || c as usize > self.r || seen[c as usize] {
                return Err(ColoringError::NotAPermutation { r: self.r });
            }
            seen[c as usize] = true;
        }
        let chi = self.chi.iter().map(|&c| pi[c as usize - 1]).collect();
        let cyclic = self.cyclic.as_ref().map(|classes| {
            classes
                .iter()
                .map(|(&c, ds)| (pi[c as usize - 1], ds.clone()))
                .collect()
        });
        Ok(EdgeColoring {
            n: self.n,
            r: self.r,
            chi,
            cyclic,
        })
    }

    /// Induced coloring on a vertex subset, renumbered `0..|subset|-1` in
    /// increasing order of the original labels. The subset is read as a set;
    /// duplicates are ignored.
    pub fn restrict(&self, subset: &[usize]) -> Result<Self, ColoringError> {
        let mut verts: Vec<usize> = subset.to_vec();
        verts.sort_unstable();
        verts.dedup();
        if verts.is_empty() {
            return Err(ColoringError::EmptySubset);
        }
        if let Some(&v) = verts.last() {
            if v >= self.n {
                return Err(ColoringError::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        EdgeColoring::from_fn(verts.len(), self.r, |i, j| self.color(verts[i], verts[j]))
    }

    /// The simple graph formed by the edges of one color.
    pub fn color_view(&self, color: Color) -> Result<ColorGraphView, ColoringError> {
        if color == 0 || color as usize > self.r {
            return Err(ColoringError::ColorOutOfRange { color, r: self.r });
        }
        let words = words_for(self.n);
        let mut bits = vec![0u64; self.n * words];
        let mut edge_count = 0usize;
        for (u, v, c) in self.edges() {
            if c == color {
                bits[u * words + v / 64] |= 1u64 << (v % 64);
                bits[v * words + u / 64] |= 1u64 << (u % 64);
                edge_count += 1;
            }
        }
        Ok(ColorGraphView {
            n: self.n,
            words,
            bits,
            edge_count,
        })
    }

    /// Is the given vertex set a clique of the given color? Used to
    /// revalidate witnesses independently of any search structure.
    pub fn is_mono_clique(&self, color: Color, vertices: &[usize]) -> bool {
        if vertices.iter().any(|&v| v >= self.n) {
            return false;
        }
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != vertices.len() {
            return false;
        }
        for (i, &u) in sorted.iter().enumerate() {
            for &v in &sorted[i + 1..] {
                if self.color(u, v) != color {
                    return false;
                }
            }
        }
        true
    }
}

/// Adjacency of a single color class, with neighbor sets stored as bit rows
/// for fast intersection during clique search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorGraphView {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    edge_count: usize,
}

impl ColorGraphView {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Neighbor bit row of `v`.
    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.bits[u * self.words + v / 64] >> (v % 64)) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        BitSet::from_words(self.row(v)).iter().collect()
    }
}
