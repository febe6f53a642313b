//! Tetrahedral pseudo-manifolds with boundary: gluing data, skeleta, the
//! boundary surface and integral homology.

pub mod boundary;
pub mod homology;
pub mod perm;
pub mod skeleton;
pub mod snf;
pub mod triangulation;

pub use boundary::{boundary_complex, BoundaryComplex, SurfaceKind};
pub use homology::{calibrate, first_homology, solid_torus_candidate, CandidateReport, EdgeFrame, HomologySummary};
pub use perm::Perm4;
pub use skeleton::{skeleton, Skeleton, SkeletonSummary};
pub use triangulation::{Gluing, Triangulation};
