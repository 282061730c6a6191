//! Exact finite geometry over small prime fields, built around one object:
//! the twelve-point model of Witt's 5-(12,6,1) design in PG(5,3).
//!
//! The model is obtained from the Veronese surface (the image of PG(2,3)
//! under the quadratic embedding into PG(5,3)) by replacing one of its
//! conics, which in order 3 is a planar quadrangle, with the diagonal
//! triangle of that quadrangle. Every structural claim about the result is
//! certified by exhaustive computation:
//!
//! * every hyperplane meets the model in 0, 3 or 6 points, and the 132
//!   six-point sections form the Steiner system S(5,6,12) ([`design`]);
//! * the block automorphisms form a sharply 5-transitive group of order
//!   95040 (the Mathieu group M12), and each one lifts to a unique
//!   collineation of PG(5,3) ([`automorphisms`]);
//! * evaluating linear functionals on the twelve points yields the
//!   self-dual extended ternary Golay code, and the analogous code on the
//!   Veronese surface is the dual of the PG(2,3) line code ([`codes`]);
//! * projections through points, bisecants and the triangle produce an
//!   11-cap, elliptic quadrics and the affine plane of order 3, and the
//!   blocks decompose into four affine shapes ([`projections`]).
//!
//! Each capability has a runnable example under `examples/`, and the
//! `witt12` binary exposes the whole certificate suite on the command line
//! (see [`cli`]).

pub mod automorphisms;
pub mod cert;
pub mod cli;
pub mod codes;
pub mod design;
pub mod gf;
pub mod projections;
pub mod projgeom;
pub mod veronese;

pub use gf::{Matrix, PrimeField};
pub use projgeom::{Hyperplane, PlaneQuadric, ProjPoint, Subspace};
pub use veronese::{VeroneseConfig, WittModel};

/// Errors reported by constructors and geometric operations that accept
/// arbitrary caller data. Violations of internal invariants panic instead.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unsupported field modulus {0}; expected 2, 3 or 5")]
    UnsupportedModulus(u8),
    #[error("the zero vector does not represent a projective point")]
    ZeroVector,
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("expected {expected} points, got {got}")]
    WrongPointCount { expected: usize, got: usize },
    #[error("identical points do not span a line")]
    IdenticalPoints,
    #[error("points are collinear")]
    CollinearPoints,
    #[error("points do not form a planar quadrangle")]
    DegenerateQuadrangle,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("frame is not in general position")]
    DegenerateFrame,
    #[error("point lies in the projection center")]
    PointInCenter,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("certification failed: {0}")]
    Certification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
