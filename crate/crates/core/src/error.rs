use thiserror::Error;

/// Errors raised by validators, constructions and searches.
///
/// Variants carrying element indices refer to the 0-based indices of the
/// monoid being examined.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table shape mismatch: {0}")]
    Shape(String),
    #[error("entry {value} at ({row},{col}) is out of range 0..{n}")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("declared identity fails on element {0}")]
    NotIdentity(usize),
    #[error("not a congruence: {0} ~ {1} but multiplying by {2} separates them")]
    NotACongruence(usize, usize, usize),
    #[error("map is not a homomorphism at ({0},{1})")]
    NotHomomorphism(usize, usize),
    #[error("map does not send identity to identity")]
    IdentityNotPreserved,
    #[error("maps are not mutually inverse at {0}")]
    NotInverse(usize),

    #[error("element {0} has no generalized inverse")]
    NoInverse(usize),
    #[error("element {0} has two generalized inverses {1} and {2}")]
    NonUniqueInverse(usize, usize, usize),
    #[error("idempotents {0} and {1} do not commute")]
    IdempotentsDoNotCommute(usize, usize),
    #[error("not a semilattice: {0}")]
    NotASemilattice(String),
    #[error("not a group: element {0} has no two-sided inverse")]
    NotAGroup(usize),
    #[error("natural order axiom violated: {0}")]
    OrderAxiomViolation(String),
    #[error("minimal group congruence check failed: {0}")]
    InternalCharacterizationFailure(String),

    #[error("kernel mismatch: {0} maps to the identity but is not in the image of the kernel")]
    KernelMismatch(usize),
    #[error("invalid extension: {0}")]
    InvalidExtension(String),
    #[error("no splitting candidate in fiber over {class} (fiber {fiber:?})")]
    EmptyCandidateFiber { class: usize, fiber: Vec<usize> },
    #[error("theorem violated: {0}")]
    TheoremViolation(String),

    #[error("almost action axiom A{axiom} fails at {witness:?}")]
    AxiomViolation { axiom: u8, witness: Vec<usize> },
    #[error("factor system condition {condition} fails at {witness:?}")]
    ConditionViolation { condition: u8, witness: Vec<usize> },
    #[error("gluing condition fails at g={0}, h={1}")]
    GluingConditionViolation(usize, usize),
    #[error("gluing map does not send the identity to the top element")]
    IdentityNotTop,
    #[error("crossed product multiplication depends on representatives: {0:?}")]
    IllDefinedMultiplication(Vec<usize>),
    #[error("no n with k(n)*s({h}) = s({h})*k({n})")]
    NoActionWitness { h: usize, n: usize },
    #[error("no n with k(n)*s({0}{1}) = s({0})*s({1})")]
    NoChiWitness(usize, usize),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("isomorphism check failed: {0}")]
    IsoCheckFailed(String),
    #[error("no isomorphism found: {0}")]
    IsoNotFound(String),

    #[error("size {n} exceeds the isomorphism search limit {limit}")]
    SizeLimitExceeded { n: usize, limit: usize },
    #[error("bound exceeded: {requested} > {max}")]
    BoundExceeded { requested: usize, max: usize },
    #[error("search space {space} exceeds budget {budget}")]
    BudgetExceeded { space: u128, budget: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
