use thiserror::Error;

/// A violated structural axiom, with the element indices that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Axiom {
    TableShape(String),
    EntryOutOfRange { row: usize, col: usize, value: usize },
    AddAssociativity(usize, usize, usize),
    AddCommutativity(usize, usize),
    NoZero,
    NoNegative(usize),
    MulAssociativity(usize, usize, usize),
    NoUnit,
    LeftDistributivity(usize, usize, usize),
    RightDistributivity(usize, usize, usize),
    /// r(m + m') != rm + rm'
    ActionAdditive(usize, usize, usize),
    /// (r + r')m != rm + r'm
    ActionDistributive(usize, usize, usize),
    /// (rr')m != r(r'm)
    ActionAssociative(usize, usize, usize),
    ActionUnital(usize),
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Axiom::TableShape(s) => write!(f, "malformed table: {s}"),
            Axiom::EntryOutOfRange { row, col, value } => {
                write!(f, "entry {value} at ({row},{col}) is not an element index")
            }
            Axiom::AddAssociativity(a, b, c) => write!(f, "addition not associative at ({a},{b},{c})"),
            Axiom::AddCommutativity(a, b) => write!(f, "addition not commutative at ({a},{b})"),
            Axiom::NoZero => write!(f, "no additive identity"),
            Axiom::NoNegative(a) => write!(f, "element {a} has no additive inverse"),
            Axiom::MulAssociativity(a, b, c) => {
                write!(f, "multiplication not associative at ({a},{b},{c})")
            }
            Axiom::NoUnit => write!(f, "no-unit: no two-sided multiplicative identity"),
            Axiom::LeftDistributivity(a, b, c) => {
                write!(f, "left distributivity fails at ({a},{b},{c})")
            }
            Axiom::RightDistributivity(a, b, c) => {
                write!(f, "right distributivity fails at ({a},{b},{c})")
            }
            Axiom::ActionAdditive(r, m, n) => write!(f, "r(m+m') != rm+rm' at (r={r},m={m},m'={n})"),
            Axiom::ActionDistributive(r, s, m) => {
                write!(f, "(r+r')m != rm+r'm at (r={r},r'={s},m={m})")
            }
            Axiom::ActionAssociative(r, s, m) => {
                write!(f, "(rr')m != r(r'm) at (r={r},r'={s},m={m})")
            }
            Axiom::ActionUnital(m) => write!(f, "1*m != m at m={m}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("size limit: {what} has order {order}, bound is {bound}")]
    SizeLimit {
        what: String,
        order: usize,
        bound: usize,
    },
    #[error("axiom violated: {0}")]
    Axiom(Axiom),
    #[error("not an ideal: {0}")]
    InvalidIdeal(String),
    #[error("not a submodule: {0}")]
    InvalidSubmodule(String),
    #[error("improper submodule: the test requires a proper submodule")]
    ImproperSubmodule,
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("endomorphism is not idempotent at element {0}")]
    NotIdempotent(usize),
    #[error("not a module homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("colon set of an empty subset")]
    EmptySet,
    /// Two routes that must agree disagreed; always an implementation bug.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl From<Axiom> for Error {
    fn from(a: Axiom) -> Self {
        Error::Axiom(a)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
