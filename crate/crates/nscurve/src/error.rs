use thiserror::Error;

/// Errors raised by the exact pipeline.
///
/// The variants fall into two groups: violations of an operation's
/// precondition (bad input, caller error) and "theorem violations" that can
/// only happen if an internal identity fails, which indicates a bug or an
/// invalid curve.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("n and s must satisfy 2 <= n < s with gcd(n, s) = 1, got ({n}, {s})")]
    InvalidNS { n: u32, s: u32 },
    #[error("lambda index ({0}, {1}) is outside the curve support")]
    InvalidLambdaIndex(u32, u32),
    #[error("constant term is not an invertible rational: {0}")]
    NonInvertibleConstant(String),
    #[error("series has a nonzero constant term where zero is required")]
    NonzeroConstantTerm,
    #[error("series constant term must be exactly 1, got {0}")]
    ConstantTermNotOne(String),
    #[error("series has a {0}^-1 term (nonzero residue)")]
    ResidueObstruction(String),
    #[error("series division by {0} left a nonzero remainder")]
    InexactDivision(String),
    #[error("series cutoff {have} is too small to determine the result (need {need})")]
    InsufficientCutoff { have: i64, need: i64 },
    #[error("series is not symmetric under exchanging {0} and {1}")]
    NotSymmetric(String, String),
    #[error("linear system for the fundamental form is inconsistent at weight {0}")]
    InconsistentSystem(i64),
    #[error("omega-hat asymmetric at (i,j)=({0},{1})")]
    AsymmetricOmegaHat(i64, i64),
    #[error("omega-hat is not regular at infinity after clearing the diagonal pole")]
    OmegaHatNotRegular,
    #[error("differential dr_{0} has a nonzero residue at infinity")]
    NonzeroDrResidue(usize),
    #[error("puiseux iteration failed to stabilize within {0} rounds")]
    PuiseuxDiverged(usize),
    #[error("n_points = {0} is too small; need at least max(g, 2g-1) = {1}")]
    TooFewPoints(usize, usize),
    #[error("nonzero residual of weighted degree {0} in the expansion solve")]
    NonzeroResidual(i64),
    #[error("cannot parse {what}: {detail}")]
    Parse { what: String, detail: String },
}

/// True for errors that signal a broken internal identity rather than bad
/// caller input. The command-line tool maps these to a distinct exit code.
impl Error {
    pub fn is_theorem_violation(&self) -> bool {
        matches!(
            self,
            Error::InconsistentSystem(_)
                | Error::AsymmetricOmegaHat(_, _)
                | Error::OmegaHatNotRegular
                | Error::NonzeroDrResidue(_)
                | Error::PuiseuxDiverged(_)
                | Error::NonzeroResidual(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
