use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty element set")]
    Empty,
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("reflexive cover on `{0}`")]
    ReflexiveCover(String),
    #[error("cover relation contains a cycle through `{0}`")]
    CycleInCovers(String),
    #[error("cover [{0}, {1}] is implied by other covers (not transitively reduced)")]
    NotTransitivelyReduced(String, String),
    #[error("relation is not antisymmetric on `{0}` and `{1}`")]
    NotAntisymmetric(String, String),
    #[error("not a lattice: `{a}` and `{b}` have no {kind}")]
    NotALattice {
        a: String,
        b: String,
        kind: &'static str,
    },
    #[error("not a slim rectangular lattice: {0}")]
    NotRectangular(String),
    #[error("layout contradiction at `{0}`: not the join of its boundary projections")]
    LayoutContradiction(String),
    #[error("neon tube [{foot}, {peak}]: slope says {slope}, boundary membership says {boundary}")]
    KindMismatch {
        foot: String,
        peak: String,
        slope: &'static str,
        boundary: &'static str,
    },
    #[error("lamp map is not an isomorphism onto Jir(Con L): {0}")]
    IsoFailure(String),
    #[error("internal lamp with peak `{0}` has no {1} shield")]
    MissingShield(String, &'static str),
    #[error("`{0}` is not the top of a 4-cell")]
    NotACell(String),
    #[error("4-cell with top `{0}` is not distributive")]
    NotDistributiveCell(String),
    #[error("multifork rank must be at least 1")]
    ZeroRank,
    #[error("no multifork decomposition found: {0}")]
    DecompositionFailed(String),
    #[error("grey cell not found: {0}")]
    GreyCellNotFound(String),
    #[error("lockstep replay mismatch: {0}")]
    ReplayMismatch(String),
    #[error("patch characterization disagrees: {0}")]
    EquivalenceViolation(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
