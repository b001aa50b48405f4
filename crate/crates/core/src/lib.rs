//! Exact edge-skeleton computation for convex polytopes given by
//! optimization oracles.
//!
//! The crate computes the graph of vertices and edges of a bounded rational
//! polytope from two ingredients: a black-box linear optimization oracle and
//! a superset of the polytope's edge directions. Everything runs in exact
//! rational arithmetic; results are deterministic and certificate-checked.
//!
//! Main pieces:
//!
//! * [`lp`] — exact simplex with dual / Farkas / ray certificates.
//! * [`oracle`] — the oracle abstraction plus V-polytope, H-polytope and
//!   signed Minkowski sum oracles, and the derived procedures (membership,
//!   ray shooting, initial vertex) built from `optimize` alone.
//! * [`skeleton`] — breadth-first edge-skeleton traversal with the
//!   extremal-ray neighbor filter.
//! * [`rsearch`] — space-efficient reverse-search traversal streaming the
//!   same graph.
//! * [`gkz`] — regular triangulations by lifting, secondary and resultant
//!   polytope oracles, and circuit-based edge direction supersets.
//! * [`verify`] — brute-force reference skeletons for cross-checking.

pub mod direction;
pub mod error;
pub mod exact;
pub mod gkz;
pub mod linalg;
pub mod lp;
pub mod oracle;
pub mod par;
pub mod rsearch;
pub mod skeleton;
pub mod verify;

pub use direction::{canonical_direction, DirectionMode, DirectionSet, DirectionSource};
pub use error::{Error, Result};
pub use exact::{Scalar, Vector};
pub use lp::{solve_lp, LpProblem, LpResult, LpStatus, Sense};
pub use oracle::{
    HPolytopeOracle, MembershipResult, MembershipVerdict, MinkowskiOracle, Oracle, SignedTerm,
    VPolytopeOracle, WellDescribedMeta,
};
pub use par::{configure_threads, parallel_enabled, set_parallel};
pub use skeleton::{edge_skeleton, SkeletonGraph};
