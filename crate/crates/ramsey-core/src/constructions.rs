//! The two witness-enlarging constructions.
//!
//! Both take a base coloring on `n` vertices that avoids its claimed bound
//! vector and emit a larger coloring with one extra color:
//!
//! - **Copy blowup** ([`copy_blowup`]): `k1 - 1` disjoint copies of the
//!   base, every cross-copy edge in the fresh color 1, base colors shifted
//!   up by one. A `K_{k1}` in color 1 would need two vertices in one copy,
//!   which is impossible, so the output claims
//!   `(k1, shifted base bounds)` on `(k1-1) * n` vertices. With a base on
//!   `R(k_2,...,k_r) - 1` vertices this realizes
//!   `R(k_1,...,k_r) > (k_1-1)(R(k_2,...,k_r)-1)`.
//!
//! - **Block stretch** ([`block_stretch`]): a `(t+1) x (t+1)` grid of
//!   blocks, each a reinterpretation of the base pattern
//!   ([`IncidenceReinterpretation`]), arranged per [`BlockRecipe`]. One
//!   chosen base color (the *stretched* color, bound `m`) trades its bound
//!   up to `m + t - 1` while a fresh color comes in bounded by `t`;
//!   the rest pass through. On `(t+1) * n` vertices this realizes
//!   `R(k_1,...,k_r) > (k_1+1)(R(k_2-k_1+1,k_3,...,k_r)-1)`.
//!
//! Claimed bound vectors are exactly that: claims, recorded in the
//! [`ConstructionResult`] and certified only by the verifier.

use std::fmt;

use crate::coloring::{CliqueBoundVector, Color, ColoringError, EdgeColoring};
use crate::verifier::{self, VerificationReport, VerifierError};

/// Largest output coloring the constructions will materialize. Beyond this
/// the dense edge array stops being reasonable; size arithmetic alone never
/// needs the coloring.
pub const MAX_OUTPUT_VERTICES: usize = 30_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("copy blowup requires k1 >= 3, got {0}")]
    K1TooSmall(usize),
    #[error("block stretch requires t >= 3, got {0}")]
    TTooSmall(usize),
    #[error("block stretch requires at least 2 base colors, got {0}")]
    TooFewBaseColors(usize),
    #[error("stretched color {color} out of range 1..={r}")]
    StretchedColorInvalid { color: Color, r: usize },
    #[error("base bound {bound} for color {color} must be at least 3 here")]
    BaseBoundTooSmall { color: Color, bound: usize },
    #[error("base has {expected} colors but bound vector has {got} entries")]
    BoundsLengthMismatch { expected: usize, got: usize },
    #[error("output would have {vertices} vertices, over the {max} materialization limit")]
    OutputTooLarge { vertices: u128, max: usize },
    #[error("substitution covers {got} colors, base has {expected}")]
    SubstitutionIncomplete { expected: usize, got: usize },
    #[error("output symbol {symbol} out of range 0..={r}")]
    SymbolOutOfRange { symbol: Color, r: usize },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// A base coloring pattern re-read under a substitution of color symbols
/// plus a color for the "same base vertex" diagonal cells.
///
/// Output symbols live in `0..=r_out`, where 0 is the blank that never
/// reaches an edge (it marks the untouched diagonal of the identity block).
#[derive(Debug, Clone)]
pub struct IncidenceReinterpretation<'a> {
    base: &'a EdgeColoring,
    /// `substitution[c - 1]` is the output symbol for base color `c`.
    substitution: Vec<Color>,
    diagonal_color: Color,
    r_out: usize,
}

impl<'a> IncidenceReinterpretation<'a> {
    pub fn new(
        base: &'a EdgeColoring,
        substitution: Vec<Color>,
        diagonal_color: Color,
        r_out: usize,
    ) -> Result<Self, ConstructionError> {
        if substitution.len() != base.r() {
            return Err(ConstructionError::SubstitutionIncomplete {
                expected: base.r(),
                got: substitution.len(),
            });
        }
        for &sym in substitution.iter().chain([&diagonal_color]) {
            if sym as usize > r_out {
                return Err(ConstructionError::SymbolOutOfRange { symbol: sym, r: r_out });
            }
        }
        Ok(IncidenceReinterpretation {
            base,
            substitution,
            diagonal_color,
            r_out,
        })
    }

    pub fn base(&self) -> &EdgeColoring {
        self.base
    }

    pub fn r_out(&self) -> usize {
        self.r_out
    }

    /// Reads cell `(u, v)` of the reinterpreted pattern: the diagonal color
    /// when `u == v`, otherwise the substituted base edge color.
    pub fn apply(&self, u: usize, v: usize) -> Result<Color, ConstructionError> {
        let n = self.base.n();
        for &x in &[u, v] {
            if x >= n {
                return Err(ConstructionError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Ok(self.diagonal_color);
        }
        Ok(self.substitution[self.base.color(u, v) as usize - 1])
    }
}

/// Roles of the off-diagonal blocks in the stretch grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockRole {
    /// Identity block: base pattern with a blank diagonal.
    A,
    /// Stretch block: diagonal takes the stretched output color, the
    /// stretched base color emits the fresh color.
    B,
    /// Fresh-diagonal block: diagonal takes the fresh color, everything
    /// else passes through.
    C,
}

/// The `(t+1) x (t+1)` block layout:
///
/// ```text
/// A
/// B A
/// C C A
/// C C B A
/// C C B B A
/// ...
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockRecipe {
    t: usize,
}

impl BlockRecipe {
    pub fn new(t: usize) -> Result<Self, ConstructionError> {
        if t < 3 {
            return Err(ConstructionError::TTooSmall(t));
        }
        Ok(BlockRecipe { t })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Number of block rows/columns.
    pub fn grid(&self) -> usize {
        self.t + 1
    }

    /// Role of block `(i, j)` for 1-based indices `1 <= j <= i <= t+1`.
    /// Diagonal blocks are A; the lower triangle follows the layout above
    /// (and the upper triangle by symmetry via `role(j, i)`).
    pub fn role(&self, i: usize, j: usize) -> BlockRole {
        assert!(
            1 <= j && j <= i && i <= self.grid(),
            "block index ({i},{j}) outside the lower triangle"
        );
        if i == j {
            BlockRole::A
        } else if i == 2 && j == 1 {
            BlockRole::B
        } else if j <= 2 {
            BlockRole::C
        } else {
            BlockRole::B
        }
    }
}

/// Which construction produced a result, over what base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionProvenance {
    Blowup {
        k1: usize,
        base_n: usize,
        base_bounds: CliqueBoundVector,
    },
    Stretch {
        t: usize,
        stretched_color: Color,
        base_n: usize,
        base_bounds: CliqueBoundVector,
    },
    /// Taken as-is from a witness store or the seed catalog.
    Stored { label: String },
    /// The complete graph `K_{k-1}` in a single color, witnessing `R(k) = k`.
    CompleteSingleColor { k: usize },
    /// A color with no edges appended, for a bound entry of 2.
    ExtraEmptyColor,
}

impl fmt::Display for ConstructionProvenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionProvenance::Blowup { k1, base_n, base_bounds } => {
                write!(f, "blowup k1={k1} over n={base_n} bounds={base_bounds}")
            }
            ConstructionProvenance::Stretch { t, stretched_color, base_n, base_bounds } => {
                write!(
                    f,
                    "stretch t={t} stretched={stretched_color} over n={base_n} bounds={base_bounds}"
                )
            }
            ConstructionProvenance::Stored { label } => write!(f, "stored witness {label}"),
            ConstructionProvenance::CompleteSingleColor { k } => {
                write!(f, "complete single-color graph for R({k}) = {k}")
            }
            ConstructionProvenance::ExtraEmptyColor => write!(f, "empty color appended"),
        }
    }
}

/// A constructed coloring together with the bound vector the construction
/// asserts it satisfies.
#[derive(Debug, Clone)]
pub struct ConstructionResult {
    pub coloring: EdgeColoring,
    pub claimed_bounds: CliqueBoundVector,
    pub provenance: ConstructionProvenance,
}

impl ConstructionResult {
    /// Runs the exact verifier against the claimed bounds. The claim is
    /// trustworthy only when this certifies.
    pub fn certify(&self) -> Result<VerificationReport, VerifierError> {
        verifier::verify(&self.coloring, &self.claimed_bounds)
    }
}

/// Output size of a copy blowup, if it fits in `usize`.
pub fn blowup_vertex_count(k1: usize, base_n: usize) -> Option<usize> {
    k1.checked_sub(1)?.checked_mul(base_n)
}

/// Output size of a block stretch, if it fits in `usize`.
pub fn stretch_vertex_count(t: usize, base_n: usize) -> Option<usize> {
    t.checked_add(1)?.checked_mul(base_n)
}

fn check_bounds_len(
    base: &EdgeColoring,
    base_bounds: &CliqueBoundVector,
) -> Result<(), ConstructionError> {
    if base_bounds.len() != base.r() {
        return Err(ConstructionError::BoundsLengthMismatch {
            expected: base.r(),
            got: base_bounds.len(),
        });
    }
    Ok(())
}

fn check_output_size(vertices: Option<usize>, exact: u128) -> Result<usize, ConstructionError> {
    match vertices {
        Some(v) if v <= MAX_OUTPUT_VERTICES => Ok(v),
        _ => Err(ConstructionError::OutputTooLarge {
            vertices: exact,
            max: MAX_OUTPUT_VERTICES,
        }),
    }
}

/// `k1 - 1` disjoint copies of the base with all cross edges in the fresh
/// color 1; base color `j` becomes output color `j + 1`.
///
/// Requires `k1 >= 3` and every base bound `>= 3`. The base bounds are
/// caller-asserted; the output claims `(k1, base bounds shifted)`.
pub fn copy_blowup(
    base: &EdgeColoring,
    base_bounds: &CliqueBoundVector,
    k1: usize,
) -> Result<ConstructionResult, ConstructionError> {
    if k1 < 3 {
        return Err(ConstructionError::K1TooSmall(k1));
    }
    check_bounds_len(base, base_bounds)?;
    for (i, bound) in base_bounds.iter().enumerate() {
        if bound < 3 {
            return Err(ConstructionError::BaseBoundTooSmall {
                color: (i + 1) as Color,
                bound,
            });
        }
    }
    let nb = base.n();
    let n_out = check_output_size(
        blowup_vertex_count(k1, nb),
        (k1 as u128 - 1) * nb as u128,
    )?;
    // Output vertex = copy * nb + base vertex.
    let coloring = EdgeColoring::from_fn(n_out, base.r() + 1, |a, b| {
        let (p, u) = (a / nb, a % nb);
        let (q, v) = (b / nb, b % nb);
        if p == q {
            base.color(u, v) + 1
        } else {
            1
        }
    })?;
    let mut claimed = Vec::with_capacity(base.r() + 1);
    claimed.push(k1);
    claimed.extend(base_bounds.iter());
    Ok(ConstructionResult {
        coloring,
        claimed_bounds: CliqueBoundVector::new(claimed).expect("entries >= 3"),
        provenance: ConstructionProvenance::Blowup {
            k1,
            base_n: nb,
            base_bounds: base_bounds.clone(),
        },
    })
}

/// The canonical output labeling of a block stretch: fresh color 1, first
/// pass-through color 2, stretched color 3, remaining pass-throughs 4..=r.
/// Returns (substitution for identity/fresh-diagonal blocks, substitution
/// for stretch blocks).
fn stretch_substitutions(base_r: usize, stretched: Color) -> (Vec<Color>, Vec<Color>) {
    let mut canon = vec![0 as Color; base_r];
    canon[stretched as usize - 1] = 3;
    let mut next: Color = 2;
    for c in 1..=base_r as Color {
        if c != stretched {
            canon[c as usize - 1] = next;
            // Skip 3, which the stretched color owns.
            next = if next == 2 { 4 } else { next + 1 };
        }
    }
    let mut stretch_sub = canon.clone();
    stretch_sub[stretched as usize - 1] = 1;
    (canon, stretch_sub)
}

/// The `(t+1) x (t+1)` block-grid construction stretching one base color.
///
/// `stretched_color` is the base color whose bound `m` grows to
/// `m + t - 1`; it may be absent from the base (`m = 2`), in which case
/// stretched edges arise only from stretch-block diagonals. All other base
/// bounds must be at least 3. Output colors follow the canonical labeling
/// described in [`stretch_substitutions`]; apply
/// [`EdgeColoring::relabel_colors`] afterwards for any other convention.
pub fn block_stretch(
    base: &EdgeColoring,
    base_bounds: &CliqueBoundVector,
    t: usize,
    stretched_color: Color,
) -> Result<ConstructionResult, ConstructionError> {
    let recipe = BlockRecipe::new(t)?;
    if base.r() < 2 {
        return Err(ConstructionError::TooFewBaseColors(base.r()));
    }
    check_bounds_len(base, base_bounds)?;
    if stretched_color == 0 || stretched_color as usize > base.r() {
        return Err(ConstructionError::StretchedColorInvalid {
            color: stretched_color,
            r: base.r(),
        });
    }
    for (i, bound) in base_bounds.iter().enumerate() {
        let color = (i + 1) as Color;
        if color != stretched_color && bound < 3 {
            return Err(ConstructionError::BaseBoundTooSmall { color, bound });
        }
    }
    let nb = base.n();
    let n_out = check_output_size(
        stretch_vertex_count(t, nb),
        (t as u128 + 1) * nb as u128,
    )?;
    let r_out = base.r() + 1;
    let (canon, stretch_sub) = stretch_substitutions(base.r(), stretched_color);

    let coloring = EdgeColoring::from_fn(n_out, r_out, |a, b| {
        let (p, u) = (a / nb, a % nb);
        let (q, v) = (b / nb, b % nb);
        if p == q {
            // Identity block, off-diagonal cell.
            return canon[base.color(u, v) as usize - 1];
        }
        let (hi, lo, x, y) = if p > q { (p, q, u, v) } else { (q, p, v, u) };
        match recipe.role(hi + 1, lo + 1) {
            BlockRole::A => unreachable!("off-diagonal blocks are B or C"),
            BlockRole::B => {
                if x == y {
                    3
                } else {
                    stretch_sub[base.color(x, y) as usize - 1]
                }
            }
            BlockRole::C => {
                if x == y {
                    1
                } else {
                    canon[base.color(x, y) as usize - 1]
                }
            }
        }
    })?;

    let m = base_bounds.bound_for(stretched_color);
    let mut claimed = vec![0usize; r_out];
    claimed[0] = t;
    claimed[2] = m + t - 1;
    for c in 1..=base.r() as Color {
        if c != stretched_color {
            claimed[canon[c as usize - 1] as usize - 1] = base_bounds.bound_for(c);
        }
    }
    Ok(ConstructionResult {
        coloring,
        claimed_bounds: CliqueBoundVector::new(claimed).expect("entries >= 2"),
        provenance: ConstructionProvenance::Stretch {
            t,
            stretched_color,
            base_n: nb,
            base_bounds: base_bounds.clone(),
        },
    })
}
