use thiserror::Error;

/// Errors raised by the library. Every variant has a stable short name (see
/// [`Error::name`]) which the command-line tool prints.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient {0} is not a unit")]
    NotAUnit(String),
    #[error("coefficient involves Gauss-sum parameters")]
    NotTauPure,
    #[error("q = {q} is not congruent to 1 modulo {modulus}")]
    BadCongruence { q: u64, modulus: u64 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("prime power {0} is not supported, only primes are")]
    UnsupportedPrimePower(u64),
    #[error("q = {q} exceeds the bound {bound}")]
    BoundExceeded { q: u64, bound: u64 },
    #[error("unknown Cartan type {0}")]
    UnknownType(String),
    #[error("Cartan matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("inconsistent quadratic form values: {0}")]
    InconsistentQ(String),
    #[error("coweight {0:?} is not dominant")]
    NotDominant(Vec<i32>),
    #[error("the twisted root datum is not simply connected")]
    TwistNotSimplyConnected,
    #[error("computation did not terminate: {0}")]
    NonTermination(String),
    #[error("parabolic subgroup {0:?} is infinite")]
    InfiniteParabolic(Vec<usize>),
    #[error("illegal representative: {0}")]
    IllegalRepresentative(String),
    #[error("division is not exact: {0}")]
    DivisionNotExact(String),
    #[error("character peeling failed: {0}")]
    PeelingFailure(String),
    #[error("illegal denominator: {0}")]
    IllegalDenominator(String),
    #[error("no normalization makes the involution unitriangular: {0}")]
    NormalizationFailure(String),
    #[error("coweight {0:?} is not in the box of restricted coweights")]
    NotInBox(Vec<i32>),
    #[error("coweight {0:?} is not in the twisted lattice")]
    NotInTildeLattice(Vec<i32>),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotAUnit(_) => "NotAUnit",
            Error::NotTauPure => "NotTauPure",
            Error::BadCongruence { .. } => "BadCongruence",
            Error::NotPrimePower(_) => "NotPrimePower",
            Error::UnsupportedPrimePower(_) => "UnsupportedPrimePower",
            Error::BoundExceeded { .. } => "BoundExceeded",
            Error::UnknownType(_) => "UnknownType",
            Error::NotSymmetrizable => "NotSymmetrizable",
            Error::InconsistentQ(_) => "InconsistentQ",
            Error::NotDominant(_) => "NotDominant",
            Error::TwistNotSimplyConnected => "TwistNotSimplyConnected",
            Error::NonTermination(_) => "NonTermination",
            Error::InfiniteParabolic(_) => "InfiniteParabolic",
            Error::IllegalRepresentative(_) => "IllegalRepresentative",
            Error::DivisionNotExact(_) => "DivisionNotExact",
            Error::PeelingFailure(_) => "PeelingFailure",
            Error::IllegalDenominator(_) => "IllegalDenominator",
            Error::NormalizationFailure(_) => "NormalizationFailure",
            Error::NotInBox(_) => "NotInBox",
            Error::NotInTildeLattice(_) => "NotInTildeLattice",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
