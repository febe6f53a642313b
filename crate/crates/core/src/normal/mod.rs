//! Normal surfaces: coordinates, matching equations, reconstruction,
//! boundary curves and straight-line realisations.

pub mod complex;
pub mod curve;
pub mod geometry;
pub mod vector;

pub use complex::{euler_from_counts, reconstruct, NormalComplex, ReconstructedSurface, SurfaceComponent};
pub use curve::{min_curve_length, NormalCurve, TorusModel};
pub use geometry::{geometrize, GeometrizedSurface};
pub use vector::{check_admissible, check_matching, is_normal, MatchingReport, NormalVector};

use crate::error::Result;
use crate::slope::Slope;
use crate::tri::homology::{calibrate, EdgeFrame};
use crate::tri::{BoundaryComplex, Skeleton, Triangulation};

/// Slope of a connected boundary curve in the calibrated frame of `tri`.
pub fn boundary_slope(tri: &Triangulation, c: &NormalCurve) -> Result<Slope> {
    let (frame, sk, bc) = calibrate(tri)?;
    TorusModel::from_boundary(&bc, &sk, &frame)?.slope(c)
}

/// Slope of a connected boundary curve in a given frame.
pub fn boundary_slope_in_frame(tri: &Triangulation, frame: &EdgeFrame, c: &NormalCurve) -> Result<Slope> {
    let sk = Skeleton::compute(tri)?;
    let bc = BoundaryComplex::compute(tri, &sk);
    TorusModel::from_boundary(&bc, &sk, frame)?.slope(c)
}
