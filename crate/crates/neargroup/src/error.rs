use thiserror::Error;

/// Errors raised across the toolkit. Everything here signals a contract
/// violation or an unsupported configuration, never a numeric tolerance.
#[derive(Debug, Error)]
pub enum Error {
    #[error("group order {0} exceeds the supported maximum of 512")]
    OrderTooLarge(usize),
    #[error("multiplication table has the wrong shape for order {0}")]
    BadTableShape(usize),
    #[error("multiplication table entry out of range")]
    EntryOutOfRange,
    #[error("no two-sided identity element in multiplication table")]
    MissingIdentity,
    #[error("element {0} has no two-sided inverse")]
    MissingInverse(usize),
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("symmetric_group supports n in {{3, 4}}, got {0}")]
    UnsupportedSymmetricGroup(usize),
    #[error("G_n requires n >= 1, got {0}")]
    BadGnParameter(usize),
    #[error("map is not a group homomorphism: fails at ({0}, {1})")]
    NotAHomomorphism(usize, usize),
    #[error("subgroup is not closed or lacks identity/inverses")]
    NotASubgroup,
    #[error("element {0} does not belong to the expected group or subgroup")]
    NotAMember(usize),
    #[error("cyclic decomposition certificate is missing")]
    MissingCertificate,
    #[error("cyclic certificate is invalid: {0}")]
    BadCertificate(String),
    #[error("certificate generator order {order} does not divide the modulus {modulus}")]
    OrderDoesNotDivideModulus { order: usize, modulus: u32 },
    #[error("preferred representatives do not match the double cosets: {0}")]
    BadRepresentatives(String),
    #[error("cochain degree {0} is not supported here")]
    UnsupportedDegree(usize),
    #[error("cochain table has {got} entries, expected {expected}")]
    BadCochainTable { got: usize, expected: usize },
    #[error("cochain moduli differ: {0} vs {1}")]
    CochainModulusMismatch(u32, u32),
    #[error("cochains are defined on different groups")]
    GroupMismatch,
    #[error("pullback homomorphism target does not carry the base cochain")]
    BadPullback,
    #[error("group of order {order} is not the canonical {expected}")]
    NotCanonicalGroup {
        order: usize,
        expected: &'static str,
    },
    #[error("the root-of-unity modulus {0} must be a positive multiple of 36")]
    UnsupportedModulus(u32),
    #[error("linear system too large: {unknowns} unknowns x {equations} equations")]
    SystemTooLarge { unknowns: usize, equations: usize },
    #[error("cocycle is not adapted: omega({0}, {1}, {2}) != 1 with the last argument in H")]
    NotAdapted(usize, usize, usize),
    #[error("Schur multiplier shortcut disagrees with the general formula at ({0}, {1}); omega is not adapted")]
    SchurMismatch(usize, usize),
    #[error("unsupported configuration at double coset of {rep_label}: {reason}")]
    UnsupportedConfiguration { rep_label: String, reason: String },
    #[error("category is not a near-group category: {0}")]
    NotNearGroup(String),
    #[error("indicator sum is not divisible by the stabilizer order {0}; this signals a bug")]
    InexactIndicatorDivision(usize),
    #[error("element {0} is not central of order 2")]
    NotCentralInvolution(usize),
    #[error("twist data is inconsistent: {0}")]
    BadTwistData(String),
    #[error("isomorphism test supports orders up to 512, got {0} and {1}")]
    IsoSizeGuard(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
