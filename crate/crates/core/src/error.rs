use thiserror::Error;

use crate::geometry::Rational;

/// Errors raised by the exact linear-algebra and lattice layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty point set")]
    EmptyInput,
}

/// Errors raised while building monomial ideals, Newton polyhedra and faces.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyhedronError {
    #[error("a monomial ideal needs at least one generator")]
    NoGenerators,
    #[error("ambient dimension must be positive")]
    ZeroDimension,
    #[error("exponent vectors must be nonnegative, found {0:?}")]
    NegativeExponent(Vec<i64>),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("face {0} lies in a coordinate hyperplane and has no functional")]
    CoordinateFace(usize),
    #[error("face {0} is the whole polyhedron and has no functional")]
    WholePolyhedron(usize),
    #[error("no linear functional is identically one on face {0}")]
    InconsistentFunctional(usize),
    #[error("facet {0} is a coordinate facet and has no m-value")]
    CoordinateFacet(usize),
    #[error("face index {0} out of range")]
    NoSuchFace(usize),
}

/// Errors raised by the semigroup and residue computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootsError {
    #[error(transparent)]
    Polyhedron(#[from] PolyhedronError),
    #[error("the unit ideal has no Bernstein-Sato roots")]
    ImproperIdeal,
    #[error("face {0} lies in a coordinate hyperplane")]
    CoordinateFace(usize),
    #[error("no point of the semigroup lies on face {face} inside the box [0, {bound}]")]
    EmptyFaceBox { face: usize, bound: i64 },
    #[error("the box [0, {bound}] is too small to reach every recession direction of face {face}")]
    FaceBoxTooSmall { face: usize, bound: i64 },
    #[error("the direction lattice of face {0} does not have full rank in the kernel of its functional")]
    DegenerateFace(usize),
    #[error("shift {0:?} does not lie in the exponent set on the face")]
    ShiftOffFace(Vec<i64>),
    #[error("value cap must be positive, got {0}")]
    NonPositiveCap(Rational),
    #[error("residue set of face {face} did not stabilize up to search budget {budget}")]
    NotStabilized { face: usize, budget: i64 },
}

/// Errors raised by the b-polynomial algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BPolyError {
    #[error("{name}: argument {value} out of range ({reason})")]
    OutOfDomain {
        name: &'static str,
        value: i64,
        reason: &'static str,
    },
    #[error("root {0} is not negative")]
    NonNegativeRoot(Rational),
    #[error("(s - ({0})) does not divide the polynomial")]
    InexactDivision(Rational),
}

/// Errors raised by the brute-force oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle limited to {max_dim} variables and exponents at most {max_exponent}; got {dim} variables, exponent {exponent}")]
    OutOfScale {
        dim: usize,
        exponent: i64,
        max_dim: usize,
        max_exponent: i64,
    },
    #[error("face {0} lies in a coordinate hyperplane")]
    CoordinateFace(usize),
    #[error("box radius must be at least {needed}, got {radius}")]
    RadiusTooSmall { radius: i64, needed: i64 },
    #[error("no linear functional is identically one on the face points of face {0}")]
    NoFunctional(usize),
}
