use thiserror::Error;

/// Errors raised by monoid construction, morphism validation and the
/// universal constructions built on top of them.
///
/// Member and homomorphism indices are stored 0-based and displayed 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a monoid needs at least one element")]
    EmptyMonoid,
    #[error("table must be {expected}x{expected}, row {row} has {found} entries")]
    NotSquare {
        expected: usize,
        row: usize,
        found: usize,
    },
    #[error("table entry ({row},{col}) = {value} is out of range for {size} elements")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
    #[error("element names must be non-empty")]
    EmptyName,
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("element {0} is not a two-sided identity")]
    BadIdentity(usize),
    #[error("table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NonAssociative(usize, usize, usize),

    #[error("map has {found} entries but the source has {expected} elements")]
    MapLength { expected: usize, found: usize },
    #[error("map entry {value} is out of range for a target of {size} elements")]
    MapOutOfRange { value: usize, size: usize },
    #[error("map does not send the identity to the identity")]
    NotIdentityPreserving,
    #[error("map is not multiplicative at ({0},{1})")]
    NotMultiplicative(usize, usize),
    #[error("homomorphism {} is not atom-preserving", .0 + 1)]
    NotAtomPreserving(usize),
    #[error("monoid is not atomic")]
    NotAtomic,
    #[error("member {} of the family is not atomic", .0 + 1)]
    MemberNotAtomic(usize),
    #[error("letter `{0}` is mapped to a non-atom")]
    ImageNotAtom(String),
    #[error("letter `{0}` has no image")]
    UnmappedLetter(String),
    #[error("source monoids of the homomorphisms differ")]
    SourceMismatch,
    #[error("target monoids of the homomorphisms differ")]
    TargetMismatch,
    #[error("expected {expected} homomorphisms, one per family member, found {found}")]
    FamilyArity { expected: usize, found: usize },
    #[error("source of {0} exceeds the exhaustive enumeration cap of {1} elements")]
    TooLargeForEnumeration(usize, usize),

    #[error("window of length {window} is shorter than threshold + 2*period = {needed}")]
    WindowTooShort { window: usize, needed: usize },
    #[error("membership is not periodic at {0}")]
    PeriodViolated(usize),
    #[error("period must be positive")]
    ZeroPeriod,

    #[error("a family needs at least one member")]
    EmptyFamily,
    #[error("family index {0} (1-based) is out of range")]
    BadIndex(usize),
    #[error("element {elem} is out of range for member {}", .index + 1)]
    BadLetter { index: usize, elem: usize },
    #[error("word is congruent to the empty word")]
    EmptyClass,
    #[error("search exceeded its budget of {0} states")]
    SearchBudgetExceeded(usize),
    #[error("precondition unmet: member {} does not satisfy the property", .0 + 1)]
    PreconditionUnmet(usize),
    #[error("property `{0}` is not supported here")]
    UnsupportedProperty(String),
    #[error("cannot parse `{0}`")]
    Parse(String),

    #[error("tuple has {found} components, the family has {expected} members")]
    TupleArity { expected: usize, found: usize },
    #[error("tuple does not lie in the atomic product")]
    NotInProduct,
    #[error("materialization exceeded the cap of {0} elements")]
    CapExceeded(usize),

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
