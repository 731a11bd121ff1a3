use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet size mismatch: {left} vs {right}")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("letter {letter} is outside the alphabet 1..={n}")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("word \"{0}\" is not a Lyndon word")]
    NotLyndon(String),
    #[error("a single letter has no standard factorization")]
    SingleLetter,
    #[error("polynomial is not a Lie element: residual word \"{0}\" is not Lyndon")]
    NotLie(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation is undefined on the zero element")]
    ZeroElement,
    #[error("element has a nonzero constant term and does not lie in the differential module")]
    NotInOmega,
    #[error("denominator maps to zero: element is not in the domain of the induced map")]
    SubstitutionPole,
    #[error("expected a polynomial, found a proper fraction")]
    NotPolynomial,
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
