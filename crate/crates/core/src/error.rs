use thiserror::Error;

/// Every failure the library can report.
///
/// Variants are grouped by the module that raises them. The CLI maps
/// [`Error::SplittingFailed`] to exit code 2 and everything else to 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // exactfield
    #[error("minimal polynomial is reducible over Q")]
    ReducibleMinPoly,
    #[error("field degree {0} exceeds the supported maximum {1}")]
    DegreeTooLarge(usize, usize),
    #[error("minimal polynomial must be monic of degree at least 1")]
    NotMonic,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("generator image is not a root of the minimal polynomial")]
    NotAnAutomorphism,
    #[error("automorphism list is not closed under composition")]
    NotAGroup,
    #[error("no primitive element found for the fixed field after bounded search")]
    PrimitiveElementNotFound,
    #[error("cannot adjoin the square root of zero")]
    ZeroRadicand,
    #[error("automorphism does not fix the radicand and cannot be extended")]
    RadicandNotFixed,

    // moebius
    #[error("Möbius matrix is singular")]
    SingularMap,
    #[error("projective point (0:0)")]
    ZeroPoint,
    #[error("interpolation points are not pairwise distinct")]
    DegenerateTriple,

    // curve
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("multiplicity {0} is outside 1..p-1")]
    MultiplicityOutOfRange(u64),
    #[error("branch multiplicities do not sum to 0 mod p")]
    BadMultiplicitySum,
    #[error("branch point listed twice")]
    DuplicateBranchPoint,
    #[error("genus {0} is below 2")]
    GenusTooSmall(i64),
    #[error("curve has a branch point at infinity; polynomial undefined")]
    InfinityPresent,

    // galois
    #[error("Galois conjugate by sigma^{0} is not isomorphic to the curve")]
    NotQuasiRational(usize),
    #[error("two distinct scaling exponents match for sigma^{0}")]
    AmbiguousCharacter(usize),
    #[error("character is not multiplicative at sigma^{0}")]
    CharacterNotMultiplicative(usize),

    // descent
    #[error("(m, p) = ({0}, {1}) lies in the exceptional list; uniqueness not asserted")]
    ExceptionalCase(usize, u64),
    #[error("no Möbius map carries the branch data onto its conjugate by sigma^{0}")]
    NoMatchingMap(usize),
    #[error("several Möbius maps carry the branch data onto its conjugate by sigma^{0}")]
    NonUniqueMap(usize),
    #[error("cocycle relation fails for (sigma^{0}, sigma^{1})")]
    CocycleViolation(usize, usize),
    #[error("holonomy matrix is not a fixed scalar")]
    HolonomyNotScalar,
    #[error("norm equation unsolved; obstruction {0}")]
    SplittingFailed(String),
    #[error("output coefficient does not lie in the output field")]
    CoefficientNotInSubfield,
    #[error("certificate invalid: {0}")]
    CertificateInvalid(String),

    // exceptional / moduli
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("isomorphism stabilizer is not a subgroup")]
    NotASubgroup,
    #[error("inconsistent advisor flags: {0}")]
    InconsistentFlags(String),

    // documents
    #[error("parse error at line {line}, column {column}: {message}")]
    ParseError {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error at {path}: {message}")]
    SchemaError { path: String, message: String },
}

impl Error {
    /// Short machine-readable name, used in error documents and the C ABI.
    pub fn code_name(&self) -> &'static str {
        match self {
            Error::ReducibleMinPoly => "ReducibleMinPoly",
            Error::DegreeTooLarge(..) => "DegreeTooLarge",
            Error::NotMonic => "NotMonic",
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch => "FieldMismatch",
            Error::NotAnAutomorphism => "NotAnAutomorphism",
            Error::NotAGroup => "NotAGroup",
            Error::PrimitiveElementNotFound => "PrimitiveElementNotFound",
            Error::ZeroRadicand => "ZeroRadicand",
            Error::RadicandNotFixed => "RadicandNotFixed",
            Error::SingularMap => "SingularMap",
            Error::ZeroPoint => "ZeroPoint",
            Error::DegenerateTriple => "DegenerateTriple",
            Error::NotPrime(_) => "NotPrime",
            Error::MultiplicityOutOfRange(_) => "MultiplicityOutOfRange",
            Error::BadMultiplicitySum => "BadMultiplicitySum",
            Error::DuplicateBranchPoint => "DuplicateBranchPoint",
            Error::GenusTooSmall(_) => "GenusTooSmall",
            Error::InfinityPresent => "InfinityPresent",
            Error::NotQuasiRational(_) => "NotQuasiRational",
            Error::AmbiguousCharacter(_) => "AmbiguousCharacter",
            Error::CharacterNotMultiplicative(_) => "CharacterNotMultiplicative",
            Error::ExceptionalCase(..) => "ExceptionalCase",
            Error::NoMatchingMap(_) => "NoMatchingMap",
            Error::NonUniqueMap(_) => "NonUniqueMap",
            Error::CocycleViolation(..) => "CocycleViolation",
            Error::HolonomyNotScalar => "HolonomyNotScalar",
            Error::SplittingFailed(_) => "SplittingFailed",
            Error::CoefficientNotInSubfield => "CoefficientNotInSubfield",
            Error::CertificateInvalid(_) => "CertificateInvalid",
            Error::BadParameter(_) => "BadParameter",
            Error::NotASubgroup => "NotASubgroup",
            Error::InconsistentFlags(_) => "InconsistentFlags",
            Error::ParseError { .. } => "ParseError",
            Error::SchemaError { .. } => "SchemaError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
