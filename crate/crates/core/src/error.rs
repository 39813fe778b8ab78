use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the toolkit reports. Variants carry enough context to
/// reproduce the failing case (a witness, a path, a bound).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot combine elements of different groups: {0} vs {1}")]
    MixedGroupKinds(String, String),
    #[error("point {point} is outside the domain of {group}")]
    PointOutOfDomain { point: String, group: String },
    #[error("symbol `{0}` has no assigned value")]
    UnboundSymbol(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("no certified optimum within radius budget {budget}")]
    RadiusBudgetExceeded { budget: usize },
    #[error("point {point} escapes the truncation window {window}")]
    TruncationEscape { point: String, window: String },
    #[error("{size} target points exceed the bitmask width {width}")]
    MaskWidthExceeded { size: usize, width: usize },
    #[error("group is not fully enumerable within {budget} elements")]
    NotFullyEnumerable { budget: usize },
    #[error("classifier label changes along generator {generator}: {from} -> {to}")]
    ClassifierViolation {
        from: String,
        to: String,
        generator: String,
    },
    #[error("coset family condition `{condition}` fails: {witness}")]
    ConditionViolated { condition: String, witness: String },
    #[error("edge set is not invariant: {witness}")]
    NotInvariant { witness: String },
    #[error("missing double coset representatives for orbit pair ({0}, {1})")]
    MissingRepresentatives(usize, usize),
    #[error("presentation synthesis requires finite-presentability criteria to hold: {0}")]
    PreconditionNotFp(String),
    #[error("vertex {0} is labelled by the trivial group")]
    TrivialLabel(usize),
    #[error("graph sequence is not increasing at step {index}: edge {edge:?} disappears")]
    NotIncreasing { index: usize, edge: (usize, usize) },
    #[error("complement restricted to class {class} is not regular at step {index} (vertex {vertex})")]
    NotRegularOnClass {
        index: usize,
        class: usize,
        vertex: usize,
    },
    #[error("complement edge {edge:?} joins two classes at step {index}")]
    CrossClassEdge { index: usize, edge: (usize, usize) },
    #[error("generator images do not define a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("map onto the quotient is not surjective: image has {image} of {target} elements")]
    NotSurjective { image: usize, target: usize },
    #[error("subgroup does not contain the fibre product")]
    DoesNotContainH,
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("enumeration budget exceeded: {size} > {budget}")]
    BudgetExceeded { size: usize, budget: usize },
    #[error("generator symbol `{0}` is used twice")]
    SymbolClash(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolated(String),
    #[error("parse error at `{path}`: {reason}")]
    Parse { path: String, reason: String },
}

impl Error {
    /// Stable machine-readable code, used by the CLI error object.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MixedGroupKinds(..) => "MixedGroupKinds",
            Error::PointOutOfDomain { .. } => "PointOutOfDomain",
            Error::UnboundSymbol(_) => "UnboundSymbol",
            Error::InvalidElement(_) => "InvalidElement",
            Error::RadiusBudgetExceeded { .. } => "RadiusBudgetExceeded",
            Error::TruncationEscape { .. } => "TruncationEscape",
            Error::MaskWidthExceeded { .. } => "MaskWidthExceeded",
            Error::NotFullyEnumerable { .. } => "NotFullyEnumerable",
            Error::ClassifierViolation { .. } => "ClassifierViolation",
            Error::ConditionViolated { .. } => "ConditionViolated",
            Error::NotInvariant { .. } => "NotInvariant",
            Error::MissingRepresentatives(..) => "MissingRepresentatives",
            Error::PreconditionNotFp(_) => "PreconditionNotFP",
            Error::TrivialLabel(_) => "TrivialLabel",
            Error::NotIncreasing { .. } => "NotIncreasing",
            Error::NotRegularOnClass { .. } => "NotRegularOnClass",
            Error::CrossClassEdge { .. } => "CrossClassEdge",
            Error::NotHomomorphism(_) => "NotHomomorphism",
            Error::NotSurjective { .. } => "NotSurjective",
            Error::DoesNotContainH => "DoesNotContainH",
            Error::NotNormal(_) => "NotNormal",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::SymbolClash(_) => "SymbolClash",
            Error::Unsupported(_) => "Unsupported",
            Error::InvariantViolated(_) => "InvariantViolated",
            Error::Parse { .. } => "Parse",
        }
    }
}
