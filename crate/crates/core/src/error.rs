use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient variable counts differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("coefficient of d{slot} depends on x{support}; only x1..x{bound} are allowed there", bound = slot - 1)]
    NotUnitriangular { slot: usize, support: usize },

    #[error("not a triangular automorphism: {detail}")]
    NotTriangular { detail: String },

    #[error("nilpotency cap exceeded after {cap} iterations")]
    NilpotencyCapExceeded { cap: usize },

    #[error("need at least two variables, got {n}")]
    AmbientTooSmall { n: usize },

    #[error("outside filtration level {level}: {witness}")]
    OutsideFiltrationLevel { level: u32, witness: String },

    #[error("filtration not preserved at level {level}: image of {witness} escapes")]
    FiltrationNotPreserved { level: u32, witness: String },

    #[error("sublevel {sublevel} exceeds domain level {level}")]
    SublevelExceedsDomain { sublevel: u32, level: u32 },

    #[error("derived-series inclusion violated: target {index} has components below d{index}")]
    DerivedSeriesInclusion { index: usize },

    #[error("leading coefficient of target {index} is not a scalar; the homomorphism law must fail")]
    NonScalarLeading { index: usize },

    #[error("zero leading scalar at index {index}: not injective")]
    ZeroLeadingScalar { index: usize },

    #[error("integrability failure: targets {i} and {j} do not commute")]
    NonCommutingTargets { i: usize, j: usize },

    #[error("target {index} is not realizable in T^n \u{22c9} T_n: {detail}")]
    NotRealizable { index: usize, detail: String },

    #[error("solver consistency failure: {detail}")]
    SolverConsistency { detail: String },

    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("malformed endomorphism file: {msg}")]
    EndoFile { msg: String },
}
