use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("unknown variable `{name}` at position {pos} (expected x0..x4)")]
    UnknownVariable { name: String, pos: usize },

    #[error("invalid characteristic {0}: expected an odd prime below 2^31")]
    InvalidCharacteristic(u64),

    #[error("operands live over different fields (p = {0} and p = {1})")]
    FieldMismatch(u32, u32),

    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("quadric must be a nonzero homogeneous form of degree 2")]
    NotAQuadric,

    #[error("quadric is degenerate: Gram matrix has rank {0} < 5")]
    DegenerateQuadric(usize),

    #[error("the line V({0}) is not contained in the quadric")]
    LineNotOnQuadric(String),

    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    #[error("ideal quotient by the zero ideal")]
    ZeroDivisorIdeal,

    #[error("saturation did not stabilize after {0} quotient steps")]
    SaturationDiverged(usize),

    #[error("ideal is not saturated with respect to the irrelevant ideal")]
    NotSaturated,

    #[error("expected a subscheme of dimension {expected}, found dimension {found}")]
    WrongDimension { expected: i64, found: i64 },

    #[error("module is not saturated (depth {depth} < 2); saturate it first")]
    DepthTooLow { depth: usize },

    #[error("module is not maximal Cohen-Macaulay: {0}")]
    NotMcm(String),

    #[error("the zero module is not a valid input here")]
    ZeroModule,

    #[error("expected a rank-{expected} module, found rank {found}")]
    RankMismatch { expected: i64, found: String },

    #[error("no E-type resolution context supplied")]
    MissingContext,

    #[error("window {lo}..{hi} is too short to certify stabilization of the Hilbert polynomial")]
    WindowTooShort { lo: i32, hi: i32 },

    #[error("{0} is not contained in the ideal being linked")]
    NotInIdeal(String),

    #[error("({0}) is not a regular sequence on the coordinate ring of the quadric")]
    NotRegularSequence(String),

    #[error("input error: {0}")]
    Input(String),

    /// An internal consistency check failed; this signals an engine bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
