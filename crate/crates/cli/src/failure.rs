use std::fmt;

use serde::Serialize;
use surface_tower::Error;

/// Everything that can end a run unsuccessfully.
#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Io(String),
    Config(String),
    Argument(String),
    NotFound(String),
    ChecksFailed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(m) | Failure::Config(m) | Failure::Argument(m) | Failure::NotFound(m) | Failure::ChecksFailed(m) => {
                f.write_str(m)
            }
        }
    }
}

impl Failure {
    /// Stable name and exit code. Codes 0, 1 and 2 are left to success,
    /// panics and argument parsing.
    pub fn kind(&self) -> (&'static str, i32) {
        match self {
            Failure::Core(e) => match e {
                Error::BudgetExceeded { .. } => ("BudgetExceeded", 3),
                Error::InvalidGenus(_) => ("InvalidGenus", 4),
                Error::InvalidPermutation(_) => ("InvalidPermutation", 5),
                Error::RelatorViolated { .. } => ("RelatorViolated", 6),
                Error::NotTransitive { .. } => ("NotTransitive", 7),
                Error::PresentationMismatch => ("PresentationMismatch", 8),
                Error::WordProblemUnavailable => ("WordProblemUnavailable", 9),
                Error::IntersectionIndexOverflow { .. } => ("IntersectionIndexOverflow", 10),
                Error::IndexOverflow { .. } => ("IndexOverflow", 11),
                Error::ArithmeticOverflow(_) => ("ArithmeticOverflow", 12),
                Error::NotNormal => ("NotNormal", 13),
                Error::NotInvariant(_) => ("NotInvariant", 14),
                Error::NotAnEndomorphism(_) => ("NotAnEndomorphism", 15),
                Error::IdentificationInvalid(_) => ("IdentificationInvalid", 16),
                Error::NotRestrictable(_) => ("NotRestrictable", 17),
                Error::InvalidCycle(_) => ("InvalidCycle", 18),
                Error::SingularMatrix => ("SingularMatrix", 19),
                Error::NotAnIsomorphism(_) => ("NotAnIsomorphism", 20),
                Error::OrientationReversing => ("OrientationReversing", 21),
                Error::NotInUpperHalfPlane => ("NotInUpperHalfPlane", 22),
                Error::IncompatibleTower(_) => ("IncompatibleTower", 23),
                Error::InconsistentInput(_) => ("InconsistentInput", 24),
                Error::Schema(_) => ("Schema", 25),
            },
            Failure::Io(_) => ("Io", 30),
            Failure::Config(_) => ("Config", 31),
            Failure::Argument(_) => ("Argument", 32),
            Failure::NotFound(_) => ("NotFound", 33),
            Failure::ChecksFailed(_) => ("ChecksFailed", 40),
        }
    }

    /// One-line JSON diagnostic for stderr.
    pub fn diagnostic(&self) -> String {
        #[derive(Serialize)]
        struct Diagnostic<'a> {
            error: &'a str,
            code: i32,
            message: String,
        }
        let (error, code) = self.kind();
        serde_json::to_string(&Diagnostic { error, code, message: self.to_string() }).expect("plain struct")
    }
}

pub type Outcome<T> = std::result::Result<T, Failure>;
