//! Error taxonomy. Variants are grouped by how a front end should react:
//! bad input, model validation failure, a resource cap, a falsified
//! theorem-level assertion, or an internal cross-check mismatch.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, ModelError>;

#[derive(Debug, Error)]
pub enum ModelError {
    /// Malformed input: unknown vertices, duplicate edges, non-bijective
    /// generator maps, and similar structural problems.
    #[error("input: {0}")]
    Input(String),

    /// The model parses but fails a validation requirement.
    #[error("validation: {0}")]
    Validation(String),

    #[error("degenerate removal: removing every vertex leaves the empty graph")]
    DegenerateRemoval,

    #[error("not a cut set: {0}")]
    NotACutSet(String),

    #[error("not off-the-wall: vertex {0} lies in a cut set of the family")]
    NotOffTheWall(String),

    #[error("off-the-wall set has {count} points; at least 3 are required")]
    OffTheWallTooSmall { count: usize },

    #[error("group too large: closure exceeded the cap of {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("family too large: {size} divisions exceed the cap of {cap}")]
    FamilyTooLarge { size: usize, cap: usize },

    #[error("complex too large: vertex count exceeded the cap of {cap}")]
    ComplexTooLarge { cap: usize },

    #[error("too many walls: {walls} exceed the cap of {cap}")]
    TooManyWalls { walls: usize, cap: usize },

    /// A generator fails to be a graph automorphism or does not preserve
    /// the declared cut-set family.
    #[error("action mismatch: {0}")]
    ActionMismatch(String),

    #[error("overlapping cut sets: {0}")]
    OverlappingCutSets(String),

    /// A vertex of the subdivided tree matches no type, or matches two,
    /// on an instance with no thin classes.
    #[error("classification violation: {0}")]
    Classification(String),

    #[error("adjacency law violated: {0}")]
    AdjacencyLaw(String),

    /// A structure that a theorem requires to be a tree is not one.
    #[error("not a tree: {0}")]
    NotATree(String),

    /// A per-instance analog of a supporting lemma failed (pinch images,
    /// off-the-wall bijection, class/element correspondence).
    #[error("lemma violation: {0}")]
    LemmaViolation(String),

    /// The equivariant comparison of the subdivided dual tree with the
    /// cut point tree of the pinched space failed.
    #[error("tree comparison failed: {0}")]
    Isomorphism(String),

    /// Two routes that must agree (construction vs. independent oracle)
    /// disagreed. Always indicates a bug or a falsified instance.
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
}

impl ModelError {
    /// True for errors caused by a configured resource cap.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            ModelError::GroupTooLarge { .. }
                | ModelError::FamilyTooLarge { .. }
                | ModelError::ComplexTooLarge { .. }
                | ModelError::TooManyWalls { .. }
        )
    }

    /// True for falsified theorem-level assertions.
    pub fn is_assertion(&self) -> bool {
        matches!(
            self,
            ModelError::Classification(_)
                | ModelError::AdjacencyLaw(_)
                | ModelError::NotATree(_)
                | ModelError::LemmaViolation(_)
                | ModelError::Isomorphism(_)
        )
    }
}
