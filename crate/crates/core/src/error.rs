use thiserror::Error;

/// Errors raised by the library. Every variant maps to a stable code string
/// through [`Error::code`], which the CLI emits verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("element does not belong to the group: {0}")]
    DescriptorMismatch(String),
    #[error("group has a formal real factor of rank {0}; elements live only in the discrete part")]
    NotDiscrete(usize),
    #[error("membership search exceeded its bound without a decision")]
    SearchBoundExceeded,
    #[error("oracle has no value at {0}")]
    OutOfDomain(String),
    #[error("function fails the degree test at level {0}")]
    NotAPolynomial(usize),
    #[error("polynomial has degree {actual} above the bound {bound}")]
    DegreeViolation { actual: usize, bound: usize },
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("decompositions represent different points")]
    DecompositionMismatch,
    #[error("point {0} is not in the semigroup")]
    MembershipViolation(String),
    #[error("no decomposition t = u - v available for this semigroup; supply one")]
    NoDecomposition,
    #[error("polynomial is not homogeneous of degree 2")]
    NotHomogeneousQuadratic,
    #[error("expected a real value, found {0}")]
    NotReal(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal identity failed: {0}")]
    InternalIdentity(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidDescriptor(_) => "invalid_descriptor",
            Error::DescriptorMismatch(_) => "descriptor_mismatch",
            Error::NotDiscrete(_) => "not_discrete",
            Error::SearchBoundExceeded => "search_bound_exceeded",
            Error::OutOfDomain(_) => "out_of_domain",
            Error::NotAPolynomial(_) => "not_a_polynomial",
            Error::DegreeViolation { .. } => "degree_violation",
            Error::DegenerateInput(_) => "degenerate_input",
            Error::DecompositionMismatch => "decomposition_mismatch",
            Error::MembershipViolation(_) => "membership_violation",
            Error::NoDecomposition => "no_decomposition",
            Error::NotHomogeneousQuadratic => "not_homogeneous_quadratic",
            Error::NotReal(_) => "not_real",
            Error::Overflow(_) => "overflow",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::InternalIdentity(_) => "internal_identity",
            Error::Parse(_) => "parse_error",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
