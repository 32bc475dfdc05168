use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("letter {letter} is not a generator of the braid group on {strands} strands")]
    LetterOutOfRange { letter: i32, strands: usize },
    #[error("braids on {left} and {right} strands cannot be combined")]
    StrandMismatch { left: usize, right: usize },
    #[error("strand {strand} does not exist in a braid on {strands} strands")]
    StrandOutOfRange { strand: usize, strands: usize },
    #[error("strand {strand} does not return to its starting position")]
    StrandNotFixed { strand: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnnularError {
    #[error("the annular braid group needs d >= 1, got {0}")]
    Degree(usize),
    #[error("b generators need d >= 2")]
    NoBGenerators,
    #[error("the braid is not pure")]
    NotPure,
    #[error("index {index} is out of range for d = {d}")]
    IndexOutOfRange { index: usize, d: usize },
    #[error("annular words of degree {left} and {right} cannot be combined")]
    DegreeMismatch { left: usize, right: usize },
    #[error("cannot parse annular letter {0:?}")]
    BadLetter(String),
    #[error("wreath parameter b must be positive")]
    WreathIndex,
    #[error("wreath elements do not match: {0}")]
    WreathMismatch(String),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SupportError {
    #[error("support element {element} is out of range 1..={d}")]
    OutOfRange { element: usize, d: usize },
    #[error("support {0:?} is not simple")]
    NotSimple(Vec<usize>),
    #[error("support {0:?} is not sparse")]
    NotSparse(Vec<usize>),
    #[error("shift of {support:?} to {target:?} is not reachable: {reason}")]
    Unreachable { support: Vec<usize>, target: Vec<usize>, reason: String },
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("support {0:?} is not reduced (gcd {1})")]
    NonReduced(Vec<usize>, usize),
    #[error(transparent)]
    Annular(#[from] AnnularError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrackError {
    #[error("the polynomial is singular at parameter {s:.6} of segment {segment}")]
    Singular { segment: usize, s: f64 },
    #[error("a root reached the origin at parameter {s:.6} of segment {segment}")]
    RootAtOrigin { segment: usize, s: f64 },
    #[error("root finding did not converge at parameter {s:.6} of segment {segment}")]
    NoConvergence { segment: usize, s: f64 },
    #[error("step refinement exhausted on segment {segment} in [{s0:.9}, {s1:.9}]")]
    RefinementExhausted { segment: usize, s0: f64, s1: f64 },
    #[error("two strands share an argument at parameter {s:.9} of segment {segment}")]
    ArgumentCollision { segment: usize, s: f64 },
    #[error("invalid loop: {0}")]
    InvalidLoop(String),
    #[error(transparent)]
    Annular(#[from] AnnularError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WitnessError {
    #[error("exponent set {0:?} does not generate the integers (gcd {1})")]
    NonReduced(Vec<usize>, usize),
    #[error("exponent set {0:?} must contain 0 and at least one positive exponent")]
    BadSupport(Vec<usize>),
    #[error("loop for {target} reads out as {got}")]
    Mismatch { target: String, got: String },
    #[error(transparent)]
    Track(#[from] TrackError),
    #[error(transparent)]
    Support(#[from] SupportError),
    #[error(transparent)]
    Annular(#[from] AnnularError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TropicalError {
    #[error("exponents must satisfy 0 < p < d, got p = {p}, d = {d}")]
    Exponents { p: usize, d: usize },
    #[error("exponents p = {p} and d = {d} must be coprime")]
    NotCoprime { p: usize, d: usize },
    #[error("coefficients must be nonzero")]
    ZeroCoefficient,
    #[error("parameter {s:.6} of segment {segment} lies on the tropical discriminant")]
    OnDiscriminant { segment: usize, s: f64 },
    #[error("invalid parameters: {0}")]
    Parameters(String),
}
