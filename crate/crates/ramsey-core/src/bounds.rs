//! Derivation of lower bounds from a table of known ones.
//!
//! A [`BoundFact`] records `R(vector) >= L` with provenance. [`derive`]
//! closes a [`BoundTable`] under four rules and returns the best derivable
//! bound as a [`DerivationTree`]:
//!
//! - table lookup on the sorted target;
//! - trivial reductions: drop an entry equal to 2, and `R(k) = k` for a
//!   single entry;
//! - copy blowup: remove one entry `k1 >= 3` (all entries at least 3),
//!   `L = (k1-1)(L_sub-1)+1`;
//! - block stretch: pick entries `k1 < k2` with `k1 >= 3` and the rest at
//!   least 3, replace them by `k2-k1+1`, `L = (k1+1)(L_sub-1)+1`.
//!
//! All arithmetic is exact integer arithmetic; every node recomputes from
//! its children. Derived numbers never assert more than the table leaves
//! do: [`materialize`] can replay a tree into an explicit coloring when
//! witnesses for the leaves are on hand, and certification of that coloring
//! is the verifier's job, not this module's.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use itertools::Itertools;

use crate::coloring::{CliqueBoundVector, EdgeColoring};
use crate::constructions::{
    block_stretch, copy_blowup, ConstructionError, ConstructionProvenance, ConstructionResult,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("line {line}: cannot parse '{text}'")]
    Parse { line: usize, text: String },
    #[error("line {line}: invalid bound {reason}")]
    InvalidBound { line: usize, reason: String },
    #[error("no bound derivable for R({0}) with the enabled rules")]
    NoBoundDerivable(CliqueBoundVector),
    #[error("bound arithmetic overflowed")]
    ArithmeticOverflow,
    #[error("no witness coloring stored for R({0})")]
    MissingWitness(CliqueBoundVector),
    #[error("witness for R({vector}) has {got} vertices, fact needs {expected}")]
    WitnessMismatch {
        vector: CliqueBoundVector,
        expected: u64,
        got: usize,
    },
    #[error("witness bounds {bounds} do not cover vector {vector}")]
    WitnessBoundsMismatch {
        vector: CliqueBoundVector,
        bounds: CliqueBoundVector,
    },
    #[error("reading table: {0}")]
    Io(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// How a fact came to be known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// A line of a known-bounds table.
    Table { source: String },
    /// `R(k) = k`: the single-color complete graph on `k-1` vertices.
    SingleColor,
    /// An entry equal to 2 dropped: that color is simply absent.
    DropTwo { sub: Box<BoundFact> },
    /// Copy blowup with the chosen removed entry.
    Blowup { k1: usize, sub: Box<BoundFact> },
    /// Block stretch with the chosen entry pair.
    Stretch {
        k1: usize,
        k2: usize,
        sub: Box<BoundFact>,
    },
    /// An explicitly verified coloring, referenced by label.
    Verified { label: String },
}

impl Provenance {
    fn sub(&self) -> Option<&BoundFact> {
        match self {
            Provenance::DropTwo { sub }
            | Provenance::Blowup { sub, .. }
            | Provenance::Stretch { sub, .. } => Some(sub),
            _ => None,
        }
    }

    /// Pre-order key giving the deterministic tie-break order on equally
    /// good derivations: table < single-color < drop < blowup < stretch,
    /// then parameters, then sub-derivations.
    fn key(&self, out: &mut Vec<u64>) {
        match self {
            Provenance::Table { .. } => out.push(0),
            Provenance::SingleColor => out.push(1),
            Provenance::DropTwo { sub } => {
                out.push(2);
                sub.provenance.key(out);
            }
            Provenance::Blowup { k1, sub } => {
                out.extend([3, *k1 as u64]);
                sub.provenance.key(out);
            }
            Provenance::Stretch { k1, k2, sub } => {
                out.extend([4, *k1 as u64, *k2 as u64]);
                sub.provenance.key(out);
            }
            Provenance::Verified { .. } => out.push(5),
        }
    }
}

/// A claim `R(vector) >= lower_bound`, vector in canonical ascending order,
/// equivalently: a suitable coloring on `lower_bound - 1` vertices exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundFact {
    vector: CliqueBoundVector,
    lower_bound: u64,
    provenance: Provenance,
}

impl BoundFact {
    fn new(
        vector: CliqueBoundVector,
        lower_bound: u64,
        provenance: Provenance,
    ) -> BoundFact {
        debug_assert!(vector.is_sorted() && lower_bound >= 2);
        BoundFact {
            vector,
            lower_bound,
            provenance,
        }
    }

    /// A table leaf; the vector is normalized to ascending order.
    pub fn table(
        vector: CliqueBoundVector,
        lower_bound: u64,
        source: impl Into<String>,
    ) -> Result<BoundFact, BoundsError> {
        if lower_bound < 2 {
            return Err(BoundsError::InvalidBound {
                line: 0,
                reason: format!("{lower_bound} < 2"),
            });
        }
        Ok(BoundFact::new(
            vector.sorted(),
            lower_bound,
            Provenance::Table {
                source: source.into(),
            },
        ))
    }

    /// A leaf backed by a verified coloring on `n` vertices, asserting
    /// `R(bounds) >= n + 1`.
    pub fn verified(
        coloring_n: usize,
        bounds: &CliqueBoundVector,
        label: impl Into<String>,
    ) -> BoundFact {
        BoundFact::new(
            bounds.sorted(),
            coloring_n as u64 + 1,
            Provenance::Verified {
                label: label.into(),
            },
        )
    }

    pub fn vector(&self) -> &CliqueBoundVector {
        &self.vector
    }

    pub fn lower_bound(&self) -> u64 {
        self.lower_bound
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Height of the derivation: 0 at leaves.
    pub fn depth(&self) -> usize {
        self.provenance.sub().map_or(0, |s| s.depth() + 1)
    }

    /// Recomputes this node's bound from its children and checks it,
    /// recursively. A valid tree proves its own arithmetic.
    pub fn validate(&self) -> Result<(), BoundsError> {
        let ok = match &self.provenance {
            Provenance::Table { .. } | Provenance::Verified { .. } => self.lower_bound >= 2,
            Provenance::SingleColor => {
                self.vector.len() == 1 && self.lower_bound == self.vector.as_slice()[0] as u64
            }
            Provenance::DropTwo { sub } => {
                sub.validate()?;
                self.lower_bound == sub.lower_bound
            }
            Provenance::Blowup { k1, sub } => {
                sub.validate()?;
                blowup_bound(*k1, sub.lower_bound)? == self.lower_bound
            }
            Provenance::Stretch { k1, sub, .. } => {
                sub.validate()?;
                stretch_bound(*k1, sub.lower_bound)? == self.lower_bound
            }
        };
        if ok {
            Ok(())
        } else {
            Err(BoundsError::InvalidBound {
                line: 0,
                reason: format!(
                    "node R({}) >= {} does not recompute from its children",
                    self.vector, self.lower_bound
                ),
            })
        }
    }
}

/// `(k1-1)(L-1)+1`, checked.
fn blowup_bound(k1: usize, sub: u64) -> Result<u64, BoundsError> {
    (k1 as u64 - 1)
        .checked_mul(sub - 1)
        .and_then(|x| x.checked_add(1))
        .ok_or(BoundsError::ArithmeticOverflow)
}

/// `(k1+1)(L-1)+1`, checked.
fn stretch_bound(k1: usize, sub: u64) -> Result<u64, BoundsError> {
    (k1 as u64 + 1)
        .checked_mul(sub - 1)
        .and_then(|x| x.checked_add(1))
        .ok_or(BoundsError::ArithmeticOverflow)
}

/// Known bounds, keyed by sorted vector. Duplicate vectors keep the larger
/// bound (first seen wins ties).
#[derive(Debug, Clone, Default)]
pub struct BoundTable {
    facts: HashMap<Vec<usize>, BoundFact>,
}

/// The known-bounds file shipped with the crate.
pub const SAMPLE_TABLE: &str = include_str!("../data/known_bounds.txt");

impl BoundTable {
    pub fn new() -> BoundTable {
        BoundTable::default()
    }

    /// The shipped sample table.
    pub fn sample() -> BoundTable {
        BoundTable::parse_with_source(SAMPLE_TABLE, "known_bounds.txt")
            .expect("shipped table parses")
    }

    pub fn insert(&mut self, fact: BoundFact) {
        let key = fact.vector.as_slice().to_vec();
        match self.facts.get(&key) {
            Some(existing) if existing.lower_bound >= fact.lower_bound => {}
            _ => {
                self.facts.insert(key, fact);
            }
        }
    }

    pub fn get(&self, sorted: &[usize]) -> Option<&BoundFact> {
        self.facts.get(sorted)
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn facts(&self) -> impl Iterator<Item = &BoundFact> {
        self.facts.values()
    }

    /// Parses the table format: one `k1,...,kr;L` fact per line, `#` starts
    /// a comment, blank lines ignored. Vectors are normalized on load.
    pub fn parse_with_source(text: &str, source: &str) -> Result<BoundTable, BoundsError> {
        let mut table = BoundTable::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (vector_part, bound_part) = content.split_once(';').ok_or_else(|| {
                BoundsError::Parse {
                    line,
                    text: content.to_string(),
                }
            })?;
            // Unreadable vectors are parse errors; readable ones with
            // entries below 2 are invalid bounds.
            let vector: CliqueBoundVector = vector_part.parse().map_err(|e| match e {
                crate::coloring::ColoringError::BoundTooSmall(_) => BoundsError::InvalidBound {
                    line,
                    reason: format!("'{vector_part}': {e}"),
                },
                _ => BoundsError::Parse {
                    line,
                    text: content.to_string(),
                },
            })?;
            let bound: u64 = bound_part.trim().parse().map_err(|_| BoundsError::Parse {
                line,
                text: content.to_string(),
            })?;
            if bound < 2 {
                return Err(BoundsError::InvalidBound {
                    line,
                    reason: format!("{bound} < 2"),
                });
            }
            table.insert(
                BoundFact::table(vector, bound, format!("{source}:{line}"))
                    .expect("bound checked"),
            );
        }
        Ok(table)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<BoundTable, BoundsError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| BoundsError::Io(format!("{}: {e}", path.display())))?;
        let source = path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        BoundTable::parse_with_source(&text, &source)
    }
}

/// Rule toggles for [`derive`], mostly for testing rule interplay; the
/// default enables everything.
#[derive(Debug, Clone, Copy)]
pub struct DeriveOptions {
    pub memoize: bool,
    pub use_table: bool,
    pub use_reductions: bool,
    pub use_blowup: bool,
    pub use_stretch: bool,
}

impl Default for DeriveOptions {
    fn default() -> Self {
        DeriveOptions {
            memoize: true,
            use_table: true,
            use_reductions: true,
            use_blowup: true,
            use_stretch: true,
        }
    }
}

/// The best derivation found for a target, as a tree whose root claims the
/// bound and whose leaves are table entries, base cases, or verified
/// colorings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTree {
    root: BoundFact,
}

impl DerivationTree {
    pub fn root(&self) -> &BoundFact {
        &self.root
    }

    pub fn lower_bound(&self) -> u64 {
        self.root.lower_bound
    }

    /// Recursively checks the arithmetic invariant at every node.
    pub fn validate(&self) -> Result<(), BoundsError> {
        self.root.validate()
    }

    /// One line per step, indented by derivation depth, each showing the
    /// formula instantiation and its arithmetic.
    pub fn explain(&self) -> String {
        let mut out = String::new();
        explain_fact(&self.root, 0, &mut out);
        out
    }
}

fn explain_fact(fact: &BoundFact, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    let head = format!("{pad}R({}) >= {}", fact.vector, fact.lower_bound);
    match &fact.provenance {
        Provenance::Table { source } => {
            let _ = writeln!(out, "{head}  [table {source}]");
        }
        Provenance::SingleColor => {
            let _ = writeln!(out, "{head}  [single color: R(k) = k]");
        }
        Provenance::Verified { label } => {
            let _ = writeln!(out, "{head}  [verified coloring {label}]");
        }
        Provenance::DropTwo { sub } => {
            let _ = writeln!(out, "{head}  [drop 2-entry]");
            explain_fact(sub, indent + 1, out);
        }
        Provenance::Blowup { k1, sub } => {
            let _ = writeln!(
                out,
                "{head}  [blowup k1={k1}: ({k1}-1)*({}-1)+1 = {}]",
                sub.lower_bound, fact.lower_bound
            );
            explain_fact(sub, indent + 1, out);
        }
        Provenance::Stretch { k1, k2, sub } => {
            let _ = writeln!(
                out,
                "{head}  [stretch k1={k1} k2={k2}: ({k1}+1)*({}-1)+1 = {}]",
                sub.lower_bound, fact.lower_bound
            );
            explain_fact(sub, indent + 1, out);
        }
    }
}

/// Best lower bound for `target` derivable from `table` under the enabled
/// rules. Deterministic: ties prefer shallower trees, then the smaller
/// provenance key.
pub fn derive(
    target: &CliqueBoundVector,
    table: &BoundTable,
    options: DeriveOptions,
) -> Result<DerivationTree, BoundsError> {
    let mut deriver = Deriver {
        table,
        options,
        memo: HashMap::new(),
    };
    let sorted = target.sorted();
    match deriver.best(sorted.as_slice())? {
        Some(root) => Ok(DerivationTree { root }),
        None => Err(BoundsError::NoBoundDerivable(sorted)),
    }
}

struct Deriver<'t> {
    table: &'t BoundTable,
    options: DeriveOptions,
    memo: HashMap<Vec<usize>, Option<BoundFact>>,
}

impl Deriver<'_> {
    fn best(&mut self, sorted: &[usize]) -> Result<Option<BoundFact>, BoundsError> {
        if self.options.memoize {
            if let Some(hit) = self.memo.get(sorted) {
                return Ok(hit.clone());
            }
        }
        let mut best: Option<BoundFact> = None;

        if self.options.use_table {
            if let Some(fact) = self.table.get(sorted) {
                consider(&mut best, fact.clone());
            }
        }

        if self.options.use_reductions {
            if sorted.len() == 1 {
                let k = sorted[0];
                consider(
                    &mut best,
                    BoundFact::new(
                        CliqueBoundVector::new(vec![k]).expect("k >= 2"),
                        k as u64,
                        Provenance::SingleColor,
                    ),
                );
            } else if sorted[0] == 2 {
                if let Some(sub) = self.best(&sorted[1..])? {
                    let fact = BoundFact::new(
                        CliqueBoundVector::new(sorted.to_vec()).expect("entries >= 2"),
                        sub.lower_bound,
                        Provenance::DropTwo { sub: Box::new(sub) },
                    );
                    consider(&mut best, fact);
                }
            }
        }

        // Both formulas need every entry >= 3: the removed entries must be,
        // and a 2 left in the residue is ruled out by their statements.
        let all_at_least_3 = sorted[0] >= 3;

        if self.options.use_blowup && all_at_least_3 && sorted.len() >= 2 {
            for k1 in sorted.iter().copied().dedup() {
                let sub_vec = remove_one(sorted, k1);
                if let Some(sub) = self.best(&sub_vec)? {
                    let bound = blowup_bound(k1, sub.lower_bound)?;
                    let fact = BoundFact::new(
                        CliqueBoundVector::new(sorted.to_vec()).expect("entries >= 2"),
                        bound,
                        Provenance::Blowup {
                            k1,
                            sub: Box::new(sub),
                        },
                    );
                    consider(&mut best, fact);
                }
            }
        }

        if self.options.use_stretch && all_at_least_3 && sorted.len() >= 3 {
            let values: Vec<usize> = sorted.iter().copied().dedup().collect();
            for (i, &k1) in values.iter().enumerate() {
                for &k2 in &values[i + 1..] {
                    let mut sub_vec = remove_one(&remove_one(sorted, k1), k2);
                    sub_vec.push(k2 - k1 + 1);
                    sub_vec.sort_unstable();
                    if let Some(sub) = self.best(&sub_vec)? {
                        let bound = stretch_bound(k1, sub.lower_bound)?;
                        let fact = BoundFact::new(
                            CliqueBoundVector::new(sorted.to_vec()).expect("entries >= 2"),
                            bound,
                            Provenance::Stretch {
                                k1,
                                k2,
                                sub: Box::new(sub),
                            },
                        );
                        consider(&mut best, fact);
                    }
                }
            }
        }

        if self.options.memoize {
            self.memo.insert(sorted.to_vec(), best.clone());
        }
        Ok(best)
    }
}

fn remove_one(sorted: &[usize], value: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(sorted.len() - 1);
    let mut removed = false;
    for &x in sorted {
        if !removed && x == value {
            removed = true;
        } else {
            out.push(x);
        }
    }
    debug_assert!(removed, "value {value} not present");
    out
}

/// Larger bound wins; on ties the shallower tree, then the smaller
/// provenance key.
fn consider(best: &mut Option<BoundFact>, candidate: BoundFact) {
    let better = match best {
        None => true,
        Some(b) => {
            let cmp = candidate
                .lower_bound
                .cmp(&b.lower_bound)
                .then_with(|| b.depth().cmp(&candidate.depth()));
            match cmp {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Less => false,
                std::cmp::Ordering::Equal => {
                    let (mut ck, mut bk) = (Vec::new(), Vec::new());
                    candidate.provenance.key(&mut ck);
                    b.provenance.key(&mut bk);
                    ck < bk
                }
            }
        }
    };
    if better {
        *best = Some(candidate);
    }
}

/// Explicit colorings available to [`materialize`], keyed by the sorted
/// bound vector they are known (or claimed) to satisfy.
#[derive(Debug, Clone, Default)]
pub struct WitnessStore {
    by_vector: HashMap<Vec<usize>, (EdgeColoring, CliqueBoundVector)>,
}

impl WitnessStore {
    pub fn new() -> WitnessStore {
        WitnessStore::default()
    }

    /// Registers a coloring as the witness for its bound vector (given in
    /// color order; the store key is the sorted form).
    pub fn insert(&mut self, coloring: EdgeColoring, bounds: CliqueBoundVector) {
        assert_eq!(
            coloring.r(),
            bounds.len(),
            "bound vector length must match the coloring's color count"
        );
        self.by_vector
            .insert(bounds.sorted().as_slice().to_vec(), (coloring, bounds));
    }

    pub fn get(&self, sorted: &[usize]) -> Option<&(EdgeColoring, CliqueBoundVector)> {
        self.by_vector.get(sorted)
    }
}

/// Replays a derivation into an explicit coloring on `lower_bound - 1`
/// vertices claiming the tree's target vector. Every leaf must have a
/// stored witness of exactly the size its bound asserts.
pub fn materialize(
    tree: &DerivationTree,
    store: &WitnessStore,
) -> Result<ConstructionResult, BoundsError> {
    let (coloring, bounds, provenance) = materialize_fact(&tree.root, store)?;
    Ok(ConstructionResult {
        coloring,
        claimed_bounds: bounds,
        provenance,
    })
}

fn materialize_fact(
    fact: &BoundFact,
    store: &WitnessStore,
) -> Result<(EdgeColoring, CliqueBoundVector, ConstructionProvenance), BoundsError> {
    match &fact.provenance {
        Provenance::Table { source } => stored_witness(fact, store, source),
        Provenance::Verified { label } => stored_witness(fact, store, label),
        Provenance::SingleColor => {
            let k = fact.vector.as_slice()[0];
            let coloring =
                EdgeColoring::from_fn(k - 1, 1, |_, _| 1).map_err(ConstructionError::from)?;
            Ok((
                coloring,
                fact.vector.clone(),
                ConstructionProvenance::CompleteSingleColor { k },
            ))
        }
        Provenance::DropTwo { sub } => {
            let (coloring, bounds, _) = materialize_fact(sub, store)?;
            let r = coloring.r();
            let padded = EdgeColoring::from_fn(coloring.n(), r + 1, |u, v| coloring.color(u, v))
                .map_err(ConstructionError::from)?;
            let mut claimed: Vec<usize> = bounds.as_slice().to_vec();
            claimed.push(2);
            Ok((
                padded,
                CliqueBoundVector::new(claimed).expect("entries >= 2"),
                ConstructionProvenance::ExtraEmptyColor,
            ))
        }
        Provenance::Blowup { k1, sub } => {
            let (base, base_bounds, _) = materialize_fact(sub, store)?;
            let result = copy_blowup(&base, &base_bounds, *k1)?;
            Ok((result.coloring, result.claimed_bounds, result.provenance))
        }
        Provenance::Stretch { k1, k2, sub } => {
            let (base, base_bounds, _) = materialize_fact(sub, store)?;
            let m = k2 - k1 + 1;
            let stretched = base_bounds
                .iter()
                .position(|b| b == m)
                .map(|i| (i + 1) as crate::coloring::Color)
                .ok_or_else(|| BoundsError::WitnessBoundsMismatch {
                    vector: fact.vector.clone(),
                    bounds: base_bounds.clone(),
                })?;
            let result = block_stretch(&base, &base_bounds, *k1, stretched)?;
            Ok((result.coloring, result.claimed_bounds, result.provenance))
        }
    }
}

fn stored_witness(
    fact: &BoundFact,
    store: &WitnessStore,
    label: &str,
) -> Result<(EdgeColoring, CliqueBoundVector, ConstructionProvenance), BoundsError> {
    let (coloring, bounds) = store
        .get(fact.vector.as_slice())
        .ok_or_else(|| BoundsError::MissingWitness(fact.vector.clone()))?;
    if coloring.n() as u64 != fact.lower_bound - 1 {
        return Err(BoundsError::WitnessMismatch {
            vector: fact.vector.clone(),
            expected: fact.lower_bound - 1,
            got: coloring.n(),
        });
    }
    Ok((
        coloring.clone(),
        bounds.clone(),
        ConstructionProvenance::Stored {
            label: label.to_string(),
        },
    ))
}
