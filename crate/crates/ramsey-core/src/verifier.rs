//! Exact monochromatic-clique search.
//!
//! The certification question is "does color `i` contain a monochromatic
//! `K_k`?", answered by [`find_mono_clique`] with a depth-first branch and
//! bound over the color view's bitset adjacency: vertices are visited in
//! descending color-degree order, a branch is cut when the candidate count
//! cannot reach `k`, and additionally when a greedy coloring of the
//! candidate set proves no large enough clique survives. The search is
//! exact and, with the fixed vertex order, deterministic.
//!
//! [`naive_mono_clique`] is the independent oracle: plain enumeration of
//! all k-subsets straight off the coloring, used to cross-check the search
//! in tests and to certify small seeds by definition.

use std::time::{Duration, Instant};

use itertools::Itertools;

use crate::bitset::BitSet;
use crate::coloring::{CliqueBoundVector, Color, ColorGraphView, EdgeColoring};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifierError {
    #[error("color {color} out of range 1..={r}")]
    ColorOutOfRange { color: Color, r: usize },
    #[error("bound vector has {got} entries, coloring has {expected} colors")]
    LengthMismatch { expected: usize, got: usize },
    #[error("oracle refuses {n} choose {k} = {subsets} subsets (cap {cap})")]
    InstanceTooLargeForOracle {
        n: usize,
        k: usize,
        subsets: u128,
        cap: u64,
    },
}

/// Result of one clique query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A monochromatic clique, as original vertex ids.
    Found(Vec<usize>),
    /// Exhaustively certified: no such clique exists.
    Absent,
    /// The node budget ran out before the search finished.
    OutOfBudget,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

/// Per-color verdict inside a [`VerificationReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColorCertification {
    /// No monochromatic clique of the queried size.
    Certified,
    /// An explicit monochromatic clique of the queried size.
    Counterexample(Vec<usize>),
    /// Budget exhausted; certification must never be approximate, so this
    /// is a distinct non-answer.
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct ColorReport {
    pub color: Color,
    /// The clique size this color must avoid.
    pub bound: usize,
    pub certification: ColorCertification,
    pub stats: SearchStats,
}

/// Outcome of checking a coloring against a full bound vector.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub per_color: Vec<ColorReport>,
}

impl VerificationReport {
    /// True when every color was certified clique-free at its bound, i.e.
    /// the coloring witnesses the bound vector.
    pub fn all_certified(&self) -> bool {
        self.per_color
            .iter()
            .all(|c| c.certification == ColorCertification::Certified)
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &ColorReport> {
        self.per_color
            .iter()
            .filter(|c| matches!(c.certification, ColorCertification::Counterexample(_)))
    }

    pub fn inconclusive(&self) -> impl Iterator<Item = &ColorReport> {
        self.per_color
            .iter()
            .filter(|c| c.certification == ColorCertification::Inconclusive)
    }
}

fn check_color(c: &EdgeColoring, color: Color) -> Result<(), VerifierError> {
    if color == 0 || color as usize > c.r() {
        return Err(VerifierError::ColorOutOfRange { color, r: c.r() });
    }
    Ok(())
}

/// Finds some `K_k` in the given color, or certifies absence.
///
/// `k = 0` is present with an empty witness by convention; `k = 1` returns
/// a single vertex; `k = 2` an edge of that color.
pub fn find_mono_clique(
    c: &EdgeColoring,
    color: Color,
    k: usize,
) -> Result<Option<Vec<usize>>, VerifierError> {
    let (outcome, _) = find_mono_clique_budgeted(c, color, k, None)?;
    match outcome {
        SearchOutcome::Found(w) => Ok(Some(w)),
        SearchOutcome::Absent => Ok(None),
        SearchOutcome::OutOfBudget => unreachable!("no budget was set"),
    }
}

/// [`find_mono_clique`] with an optional node budget.
pub fn find_mono_clique_budgeted(
    c: &EdgeColoring,
    color: Color,
    k: usize,
    budget: Option<u64>,
) -> Result<(SearchOutcome, SearchStats), VerifierError> {
    check_color(c, color)?;
    let start = Instant::now();
    if k == 0 {
        return Ok((
            SearchOutcome::Found(Vec::new()),
            SearchStats {
                nodes: 0,
                elapsed: start.elapsed(),
            },
        ));
    }
    let view = c.color_view(color).expect("color already checked");
    let mut search = CliqueSearch::new(&view, budget);
    let outcome = search.exists(k);
    Ok((
        outcome,
        SearchStats {
            nodes: search.nodes,
            elapsed: start.elapsed(),
        },
    ))
}

/// Exact maximum clique size in one color, with a witness.
///
/// An empty color yields size 0 and an empty witness.
pub fn max_mono_clique(
    c: &EdgeColoring,
    color: Color,
) -> Result<(usize, Vec<usize>), VerifierError> {
    check_color(c, color)?;
    let view = c.color_view(color).expect("color already checked");
    if view.edge_count() == 0 {
        return Ok((0, Vec::new()));
    }
    let mut search = CliqueSearch::new(&view, None);
    let best = search.maximum();
    Ok((best.len(), best))
}

/// Checks every color of `c` against its entry in `bounds`.
pub fn verify(
    c: &EdgeColoring,
    bounds: &CliqueBoundVector,
) -> Result<VerificationReport, VerifierError> {
    verify_budgeted(c, bounds, None)
}

/// [`verify`] with an optional per-color node budget; a color whose search
/// exceeds the budget is reported [`ColorCertification::Inconclusive`].
pub fn verify_budgeted(
    c: &EdgeColoring,
    bounds: &CliqueBoundVector,
    budget: Option<u64>,
) -> Result<VerificationReport, VerifierError> {
    if bounds.len() != c.r() {
        return Err(VerifierError::LengthMismatch {
            expected: c.r(),
            got: bounds.len(),
        });
    }
    let mut per_color = Vec::with_capacity(c.r());
    for color in 1..=c.r() as Color {
        let bound = bounds.bound_for(color);
        let (outcome, stats) = find_mono_clique_budgeted(c, color, bound, budget)?;
        let certification = match outcome {
            SearchOutcome::Found(w) => {
                debug_assert!(c.is_mono_clique(color, &w));
                ColorCertification::Counterexample(w)
            }
            SearchOutcome::Absent => ColorCertification::Certified,
            SearchOutcome::OutOfBudget => ColorCertification::Inconclusive,
        };
        per_color.push(ColorReport {
            color,
            bound,
            certification,
            stats,
        });
    }
    Ok(VerificationReport { per_color })
}

/// Default subset cap for the naive oracle.
pub const ORACLE_CAP: u64 = 20_000_000;

/// The definitional check: enumerate every k-subset of the vertices and test
/// it pairwise against the raw coloring. Same contract as
/// [`find_mono_clique`], deliberately independent of the bitset search path.
pub fn naive_mono_clique(
    c: &EdgeColoring,
    color: Color,
    k: usize,
) -> Result<Option<Vec<usize>>, VerifierError> {
    naive_mono_clique_capped(c, color, k, ORACLE_CAP)
}

pub fn naive_mono_clique_capped(
    c: &EdgeColoring,
    color: Color,
    k: usize,
    cap: u64,
) -> Result<Option<Vec<usize>>, VerifierError> {
    check_color(c, color)?;
    let n = c.n();
    if k == 0 {
        return Ok(Some(Vec::new()));
    }
    if k > n {
        return Ok(None);
    }
    let subsets = binomial(n, k);
    if subsets > cap as u128 {
        return Err(VerifierError::InstanceTooLargeForOracle { n, k, subsets, cap });
    }
    for subset in (0..n).combinations(k) {
        let mono = subset
            .iter()
            .tuple_combinations()
            .all(|(&u, &v)| c.color(u, v) == color);
        if mono {
            return Ok(Some(subset));
        }
    }
    Ok(None)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return acc;
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// Branch-and-bound engine
// ---------------------------------------------------------------------------

struct CliqueSearch {
    /// Adjacency in search-position space.
    adj: Vec<BitSet>,
    /// Search position -> original vertex id.
    order: Vec<usize>,
    n: usize,
    nodes: u64,
    budget: Option<u64>,
    /// Current clique as search positions, one per depth.
    stack: Vec<usize>,
    /// Candidate set per depth; `pool[d]` is owned by the node at depth `d`.
    pool: Vec<BitSet>,
    best: Vec<usize>,
}

enum Step {
    Found,
    Absent,
    OutOfBudget,
}

impl CliqueSearch {
    fn new(view: &ColorGraphView, budget: Option<u64>) -> Self {
        let n = view.n();
        // Descending degree, ties by vertex id: high-degree vertices first
        // shrinks candidate sets fastest and fixes the search order.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(view.degree(v)), v));
        let mut pos_of = vec![0usize; n];
        for (p, &v) in order.iter().enumerate() {
            pos_of[v] = p;
        }
        let mut adj = vec![BitSet::empty(n); n];
        for v in 0..n {
            for w in view.neighbors(v) {
                adj[pos_of[v]].insert(pos_of[w]);
            }
        }
        CliqueSearch {
            adj,
            order,
            n,
            nodes: 0,
            budget,
            stack: Vec::new(),
            pool: Vec::new(),
            best: Vec::new(),
        }
    }

    fn witness(&self) -> Vec<usize> {
        self.stack.iter().map(|&p| self.order[p]).collect()
    }

    /// Any clique of exactly `k` vertices, or proof of absence.
    fn exists(&mut self, k: usize) -> SearchOutcome {
        if k > self.n {
            return SearchOutcome::Absent;
        }
        self.pool = vec![BitSet::empty(self.n); k + 1];
        self.pool[0] = BitSet::full(self.n);
        match self.dfs_exists(0, k) {
            Step::Found => SearchOutcome::Found(self.witness()),
            Step::Absent => SearchOutcome::Absent,
            Step::OutOfBudget => SearchOutcome::OutOfBudget,
        }
    }

    fn dfs_exists(&mut self, depth: usize, k: usize) -> Step {
        self.nodes += 1;
        if let Some(b) = self.budget {
            if self.nodes > b {
                return Step::OutOfBudget;
            }
        }
        if depth == k {
            return Step::Found;
        }
        let need = k - depth;
        if self.pool[depth].count() < need {
            return Step::Absent;
        }
        if !self.color_classes_reach(depth, need) {
            return Step::Absent;
        }
        // Candidates in ascending position; each clique is visited once,
        // in sorted order, because tried vertices leave the pool.
        loop {
            let v = match self.pool[depth].first() {
                Some(v) => v,
                None => return Step::Absent,
            };
            self.pool[depth].remove(v);
            let (head, tail) = self.pool.split_at_mut(depth + 1);
            head[depth].intersect_into(self.adj[v].words(), &mut tail[0]);
            self.stack.push(v);
            let step = self.dfs_exists(depth + 1, k);
            if !matches!(step, Step::Absent) {
                return step; // keep the stack: it is the witness
            }
            self.stack.pop();
            // The rest of the clique must come out of what is left.
            if self.pool[depth].count() < need {
                return Step::Absent;
            }
        }
    }

    /// Greedy-colors the candidate set at `depth` and reports whether the
    /// class count reaches `need`; fewer classes proves no `K_need` inside.
    fn color_classes_reach(&self, depth: usize, need: usize) -> bool {
        let mut uncolored = self.pool[depth].clone();
        let mut avail = BitSet::empty(self.n);
        let mut classes = 0usize;
        while !uncolored.is_empty() {
            classes += 1;
            if classes >= need {
                return true;
            }
            // One class: a greedily maximal independent set.
            avail.clone_from(&uncolored);
            while let Some(v) = avail.first() {
                uncolored.remove(v);
                avail.remove(v);
                avail.subtract(self.adj[v].words());
            }
        }
        classes >= need
    }

    /// Exact maximum clique; returns the witness in original vertex ids.
    fn maximum(&mut self) -> Vec<usize> {
        self.pool = vec![BitSet::empty(self.n); self.n + 1];
        self.pool[0] = BitSet::full(self.n);
        self.best = Vec::new();
        self.dfs_max(0);
        self.best.clone()
    }

    fn dfs_max(&mut self, depth: usize) {
        self.nodes += 1;
        if depth > self.best.len() {
            self.best = self.witness();
        }
        if self.pool[depth].is_empty() {
            return;
        }
        // Beating the incumbent needs best+1 vertices total.
        let need = self.best.len() + 1 - depth;
        if self.pool[depth].count() < need || !self.color_classes_reach(depth, need) {
            return;
        }
        loop {
            let v = match self.pool[depth].first() {
                Some(v) => v,
                None => return,
            };
            self.pool[depth].remove(v);
            let (head, tail) = self.pool.split_at_mut(depth + 1);
            head[depth].intersect_into(self.adj[v].words(), &mut tail[0]);
            self.stack.push(v);
            self.dfs_max(depth + 1);
            self.stack.pop();
            // Even taking everything left cannot beat the incumbent.
            if depth + self.pool[depth].count() <= self.best.len() {
                return;
            }
        }
    }
}
