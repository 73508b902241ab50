//! Numeric tolerances shared across modules.

/// Barycentric coordinates closer to zero than this are treated as a
/// general-position violation rather than classified.
pub const BARYCENTRIC: f64 = 1e-9;

/// Gram determinants in `(-GRAM_CLAMP, 0)` are rounding noise on degenerate
/// simplices and clamp to zero.
pub const GRAM_CLAMP: f64 = 1e-12;

/// Entrywise agreement of a squared factorization with its 0/1 membership
/// matrix.
pub const FACTORIZATION: f64 = 1e-9;

/// Evaluation of combinatorial decompositions (sums of a few weights).
pub const COMBINATORIAL_EVAL: f64 = 1e-12;

/// Relative agreement of geometric decompositions with Euclidean volumes.
/// Angle and area sums accumulate error of order n·eps per cell.
pub const GEOMETRIC_EVAL: f64 = 1e-6;

/// Sine of the angle below which three planar points count as collinear.
pub const COLLINEAR: f64 = 1e-9;

/// Relative eigenvalue cutoff for pseudo-inverses of Gram matrices.
pub const PSEUDO_INVERSE: f64 = 1e-10;
