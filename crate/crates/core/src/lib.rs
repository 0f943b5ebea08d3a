//! Convex regions that play the role of order statistics for multivariate
//! data.
//!
//! Three constructions map a point cloud and a level `alpha` to a nested
//! family of convex regions and pick the one whose realized outside fraction
//! is closest to `alpha`:
//!
//! * [`depth::halfspace_peel`] intersects the majority halfspaces of all
//!   hyperplanes with a given depth index, peeling level by level;
//! * [`depth::direct_peel`] repeatedly strips the convex hull layer;
//! * [`depth::mahal_region`] takes the hull of the points closest to the mean
//!   in Mahalanobis distance.
//!
//! [`experiments`] reproduces a simulation protocol that scores regions by
//! coverage error on fresh test sets and by volume.

// `!(x > y)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod depth;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod linalg;
pub mod par;
mod points;

pub use depth::{direct_peel, halfspace_peel, mahal_region, Algorithm, PeelResult};
pub use error::{Error, Result};
pub use geometry::{ConvexRegion, Hyperplane, Tolerance};
pub use points::PointSet;
