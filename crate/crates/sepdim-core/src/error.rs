use core::fmt;

/// Errors reported by construction, verification, certification and search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two objects that must share a ground-set size do not.
    SizeMismatch { expected: usize, found: usize },
    /// An image sequence is not a bijection on [n].
    NotABijection,
    /// A vertex lies outside [n].
    VertexOutOfRange { vertex: u32, n: usize },
    /// A sequence that must consist of distinct elements repeats one.
    RepeatedElement { element: u32 },
    /// The endpoints of a pair coincide.
    DegeneratePair { vertex: u32 },
    /// Two edges that must be disjoint share a vertex.
    PairsNotDisjoint,
    /// Multiplicative inversion of the zero field element.
    ZeroInverse,
    /// The given integer is not prime.
    NotPrime(u64),
    /// The given integer is not a prime power.
    NotPrimePower(u64),
    /// A point of the plane does not appear on any line of the class.
    PointNotOnLine { point: u32 },
    /// The family does not verify as a perfect separating family.
    NotPerfect,
    /// Every vertex pair reaches the extremal count lambda, so no
    /// certificate pair can be chosen (happens for n <= 4).
    NoNonExtremalPair,
    /// The random generator hit its member cap before separating every pair.
    MemberCapExceeded { cap: usize },
    /// A parameter lies outside the operation's documented domain.
    Domain(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SizeMismatch { expected, found } => {
                write!(f, "ground-set size mismatch: expected {expected}, found {found}")
            }
            Error::NotABijection => write!(f, "image sequence is not a bijection on [n]"),
            Error::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range [1, {n}]")
            }
            Error::RepeatedElement { element } => write!(f, "repeated element {element}"),
            Error::DegeneratePair { vertex } => {
                write!(f, "pair endpoints coincide at vertex {vertex}")
            }
            Error::PairsNotDisjoint => write!(f, "edge pairs are not disjoint"),
            Error::ZeroInverse => write!(f, "zero has no multiplicative inverse"),
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::NotPrimePower(q) => write!(f, "{q} is not a prime power"),
            Error::PointNotOnLine { point } => {
                write!(f, "point {point} is on no line of the parallel class")
            }
            Error::NotPerfect => write!(f, "family is not a perfect separating family"),
            Error::NoNonExtremalPair => {
                write!(f, "every vertex pair is extremal; no certificate pair exists")
            }
            Error::MemberCapExceeded { cap } => {
                write!(f, "generator exceeded the cap of {cap} members")
            }
            Error::Domain(msg) => write!(f, "{msg}"),
        }
    }
}

impl core::error::Error for Error {}
