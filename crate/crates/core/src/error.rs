use alloc::string::String;

/// Every failure the core library can report.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at byte {position}: expected {expected}")]
    SyntaxError { position: usize, expected: String },
    #[error("coefficient error at byte {position}: denominator {denominator} vanishes in the field")]
    CoefficientError { position: usize, denominator: String },
    #[error("substitution image for {var} has a constant term")]
    NonLocalSubstitution { var: char },
    #[error("the zero polynomial has no singularity to classify")]
    ZeroPolynomial,
    #[error("polynomial is not in the maximal ideal (x, y, z)")]
    NotInMaximalIdeal,
    #[error("an irrational root of {poly} is required{}", branch_suffix(.branch))]
    NeedsAlgebraicExtension { poly: String, branch: String },
    #[error("Fedder's criterion needs positive characteristic")]
    CharZero,
    #[error("Groebner basis exceeded the budget of {budget} elements")]
    OracleOverflow { budget: usize },
    #[error("computation too large: {what}")]
    ComputationBudget { what: String },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

fn branch_suffix(branch: &str) -> String {
    if branch.is_empty() {
        String::new()
    } else {
        alloc::format!(" (branch {branch})")
    }
}

pub type Result<T> = core::result::Result<T, Error>;
