//! Planar geometry over the complex plane: ellipses, the Joukowsky map,
//! support functions, convex hulls and Hausdorff distance.

mod ellipse;
mod hull;
mod support;

pub use ellipse::{square_map_ellipse, Ellipse, JoukowskyMap};
pub use hull::{convex_hull_2d, hausdorff_distance, Polygon2D};
pub use support::{
    minkowski_support_sum, natural_parametrization, support_profile_of_cloud, uniform_angles,
    SupportProfile,
};

use crate::error::{Error, Result};
use crate::linalg::{is_finite, C64};

/// A finite set of points in the plane.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PointCloud {
    points: Vec<C64>,
}

impl PointCloud {
    pub fn new(points: Vec<C64>) -> Result<Self> {
        if !points.iter().copied().all(is_finite) {
            return Err(Error::NonFinite);
        }
        Ok(Self { points })
    }

    pub(crate) fn from_vec(points: Vec<C64>) -> Self {
        debug_assert!(points.iter().copied().all(is_finite));
        Self { points }
    }

    pub fn points(&self) -> &[C64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn into_points(self) -> Vec<C64> {
        self.points
    }

    pub fn extend(&mut self, other: PointCloud) {
        self.points.extend(other.points);
    }
}

pub(crate) fn wrap_pi(x: f64) -> f64 {
    let r = x.rem_euclid(std::f64::consts::PI);
    // rem_euclid can land exactly on π for tiny negative inputs
    if r >= std::f64::consts::PI {
        0.0
    } else {
        r
    }
}

/// Distance between two angles modulo π.
pub fn angle_distance_mod_pi(a: f64, b: f64) -> f64 {
    let d = wrap_pi(a - b);
    d.min(std::f64::consts::PI - d)
}
