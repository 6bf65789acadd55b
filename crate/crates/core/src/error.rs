use alloc::string::String;

use crate::syntax::Fragment;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid name `{0}`: expected a letter followed by letters, digits or underscores")]
    InvalidName(String),
    #[error("name `{0}` uses the reserved substring `__`")]
    ReservedName(String),
    #[error("`{0}` is used both as a concept name and as a role name")]
    NameClash(String),
    #[error("an ontology needs at least one axiom")]
    EmptyOntology,
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("conditional bound {0} lies outside [0, 1]")]
    BoundOutOfRange(String),
    #[error("lo > hi in conditional bounds [{lo}, {hi}]")]
    LowerAboveUpper { lo: String, hi: String },
    #[error("negated concept names cannot be combined with probabilistic conditionals")]
    MixedFragment,
    #[error("expected an ontology in {expected}, found {found}")]
    WrongFragment { expected: &'static str, found: Fragment },
    #[error("Statistical EL concepts must be negation-free")]
    NegationInSel,
    #[error("axiom {0} is not in normal form")]
    NotNormalForm(usize),
    #[error("interpretation domain must be non-empty")]
    EmptyDomain,
    #[error("invalid domain element `{0}`")]
    InvalidElement(String),
    #[error("duplicate domain element `{0}`")]
    DuplicateElement(String),
    #[error("unknown domain element `{0}`")]
    UnknownElement(String),
    #[error("enumeration of {count} interpretations exceeds the ceiling of {ceiling}")]
    EnumerationTooLarge { count: u128, ceiling: u64 },
    #[error("signature of {size} names exceeds the supported maximum of {limit}")]
    SignatureTooLarge { size: usize, limit: usize },
    #[error("search budget field `{0}` must be positive")]
    InvalidBudget(&'static str),
    #[error("concept `{0}` is not in the base signature of the reduction")]
    OutsideBase(String),
    #[error("decorated name `{0}` collides with another name")]
    DecoratedCollision(String),
    #[error("input model does not satisfy axiom {axiom} of the {against} ontology")]
    PreconditionViolated { axiom: usize, against: &'static str },
    #[error("the R+ extension of the model is empty")]
    EmptyRealPart,
    #[error("constructed model fails axiom {axiom} of the {against} ontology")]
    ConstructionFailed { axiom: usize, against: &'static str },
}
