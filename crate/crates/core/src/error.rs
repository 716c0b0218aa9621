use thiserror::Error;

use crate::parse::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("undefined resultant: zero polynomial input")]
    UndefinedResultant,

    #[error("zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),

    #[error("degree {found} is below the required minimum {required}")]
    DegreeTooLow { found: usize, required: usize },

    #[error("variable lists do not match: {0}")]
    VariableMismatch(String),

    #[error("not in Q: negative hbar exponent {0}")]
    NotInQ(i32),

    #[error("operator has an off-diagonal term (a+)^{i} a^{j}")]
    OffDiagonal { i: u32, j: u32 },

    #[error("unsupported quadratic part: the t^0 term must be exactly a+a")]
    UnsupportedQuadraticPart,

    #[error("non-unit jet: the t^0 coefficient must be 1")]
    NonUnitJet,

    #[error("unperturbed operator is not diagonal in the z^m basis")]
    NonDiagonalUnperturbed,

    #[error("degenerate unperturbed spectrum at levels {0} and {1}")]
    DegenerateLevel(u32, u32),

    #[error("level gap between {0} and {1} is not an hbar monomial")]
    NonMonomialGap(u32, u32),

    #[error("insufficient data: {found} nonzero entries, need at least {required}")]
    InsufficientData { found: usize, required: usize },

    #[error("empty coefficient sequence")]
    EmptySequence,

    #[error("non-isolated singularity suspected: no stabilization up to jet order {0}")]
    NonIsolatedSingularity(usize),

    #[error(transparent)]
    Parse(#[from] ParseError),
}
