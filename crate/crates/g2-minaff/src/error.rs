use crate::g2::Weight;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A pair of root coordinates that is not one of the 12 roots of G2.
    #[error("({m})α1 + ({n})α2 is not a root of G2")]
    InvalidRoot { m: i64, n: i64 },

    /// An operation that requires a dominant weight received a non-dominant one.
    #[error("weight ({}, {}) is not dominant", .0.c1, .0.c2)]
    NonDominantWeight(Weight),

    /// 128-bit checked arithmetic on coefficients or dimensions overflowed.
    #[error("integer overflow in coefficient arithmetic")]
    Overflow,

    /// A formal character that is not a nonnegative integer combination of
    /// irreducible characters was passed to the decomposition routine.
    #[error("not the character of a finite-dimensional module: {0}")]
    NotModuleCharacter(String),

    /// A lattice point outside the polytope attached to the given highest weight.
    #[error("point ({a1}, {a2}, {a3}, {a4}, {a5}) violates the polytope inequalities for k={k}, l={l}")]
    NotInPolytope {
        a1: u32,
        a2: u32,
        a3: u32,
        a4: u32,
        a5: u32,
        k: u32,
        l: u32,
    },

    /// A non-positive affine root where a positive one is required.
    #[error("affine root ({m})α1 + ({n})α2 + ({p})δ is not positive")]
    NonPositiveAffineRoot { m: i64, n: i64, p: i64 },

    /// The node subset J must be nonempty.
    #[error("the node subset J must be a nonempty subset of {{1, 2}}")]
    EmptyNodeSet,
}
