use std::f64::consts::PI;

use super::{Ellipse, PointCloud};
use crate::error::{Error, Result};
use crate::linalg::C64;

/// Support function `h(φ) = max_{z∈K} Re(z e^{-iφ})` sampled on an angle grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportProfile {
    angles: Vec<f64>,
    values: Vec<f64>,
}

/// `k` evenly spaced angles `2πj/k`.
pub fn uniform_angles(k: usize) -> Vec<f64> {
    (0..k).map(|j| 2.0 * PI * j as f64 / k as f64).collect()
}

impl SupportProfile {
    pub fn new(angles: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if angles.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: angles.len(),
                got: values.len(),
            });
        }
        let increasing = angles.windows(2).all(|w| w[0] < w[1]);
        let in_range = angles.iter().all(|&a| (0.0..2.0 * PI).contains(&a));
        if !(increasing && in_range) {
            return Err(Error::Precondition(
                "angles must be strictly increasing in [0, 2π)".into(),
            ));
        }
        Ok(Self { angles, values })
    }

    /// Samples `f` on the uniform `k`-angle grid.
    pub fn from_fn(k: usize, f: impl Fn(f64) -> f64) -> Self {
        let angles = uniform_angles(k);
        let values = angles.iter().map(|&a| f(a)).collect();
        Self { angles, values }
    }

    pub fn of_ellipse(e: &Ellipse, k: usize) -> Self {
        Self::from_fn(k, |phi| e.support(phi))
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if !same_grid(self, other) {
            return Err(Error::GridMismatch);
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    fn is_uniform(&self) -> bool {
        let k = self.angles.len() as f64;
        self.angles
            .iter()
            .enumerate()
            .all(|(j, &a)| (a - 2.0 * PI * j as f64 / k).abs() <= 1e-12)
    }
}

fn same_grid(a: &SupportProfile, b: &SupportProfile) -> bool {
    a.angles.len() == b.angles.len()
        && a.angles
            .iter()
            .zip(&b.angles)
            .all(|(x, y)| (x - y).abs() <= 1e-15)
}

pub fn support_profile_of_cloud(cloud: &PointCloud, k: usize) -> Result<SupportProfile> {
    if cloud.is_empty() {
        return Err(Error::EmptyCloud);
    }
    Ok(SupportProfile::from_fn(k, |phi| {
        let dir = C64::from_polar(1.0, -phi);
        cloud
            .points()
            .iter()
            .map(|&p| (p * dir).re)
            .fold(f64::NEG_INFINITY, f64::max)
    }))
}

pub const MIN_NATURAL_ANGLES: usize = 16;

/// Boundary recovery `x = h cos φ - h' sin φ`, `y = h sin φ + h' cos φ`
/// with `h'` by periodic central differences.
pub fn natural_parametrization(h: &SupportProfile) -> Result<PointCloud> {
    let k = h.len();
    if k < MIN_NATURAL_ANGLES {
        return Err(Error::ProfileTooCoarse {
            got: k,
            min: MIN_NATURAL_ANGLES,
        });
    }
    if !h.is_uniform() {
        return Err(Error::Precondition(
            "natural parametrization needs a uniform grid".into(),
        ));
    }
    let step = 2.0 * PI / k as f64;
    let v = &h.values;
    let points = (0..k)
        .map(|j| {
            let dh = (v[(j + 1) % k] - v[(j + k - 1) % k]) / (2.0 * step);
            let (s, c) = h.angles[j].sin_cos();
            C64::new(v[j] * c - dh * s, v[j] * s + dh * c)
        })
        .collect();
    Ok(PointCloud::from_vec(points))
}

/// Support function of the Minkowski sum.
pub fn minkowski_support_sum(h1: &SupportProfile, h2: &SupportProfile) -> Result<SupportProfile> {
    if !same_grid(h1, h2) {
        return Err(Error::GridMismatch);
    }
    Ok(SupportProfile {
        angles: h1.angles.clone(),
        values: h1
            .values
            .iter()
            .zip(&h2.values)
            .map(|(a, b)| a + b)
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn cloud(points: &[C64]) -> PointCloud {
        PointCloud::new(points.to_vec()).unwrap()
    }

    #[test]
    fn cloud_support_examples() {
        let h = support_profile_of_cloud(&cloud(&[c(0.0, 0.0)]), 8).unwrap();
        assert!(h.values().iter().all(|&v| v == 0.0));
        let diamond = cloud(&[c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)]);
        assert_eq!(
            support_profile_of_cloud(&diamond, 4).unwrap().values()[0],
            1.0
        );
        assert_eq!(
            support_profile_of_cloud(&PointCloud::default(), 4),
            Err(Error::EmptyCloud)
        );
    }

    #[test]
    fn cloud_support_of_sampled_ellipse() {
        let e = Ellipse::new(c(0.0, 0.0), 6.0, 2.0, 0.0);
        let pts: Vec<C64> = (0..360)
            .map(|j| e.boundary_point(2.0 * PI * j as f64 / 360.0))
            .collect();
        // φ = π/4 sits on the 8-angle grid
        let h = support_profile_of_cloud(&cloud(&pts), 8).unwrap();
        assert!((h.values()[1] - 20f64.sqrt()).abs() < 2e-3);
        assert!((e.support(FRAC_PI_4) - 20f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn natural_parametrization_examples() {
        let unit = SupportProfile::from_fn(64, |_| 1.0);
        let pts = natural_parametrization(&unit).unwrap();
        for (p, a) in pts.points().iter().zip(unit.angles()) {
            assert!((p - C64::from_polar(1.0, *a)).norm() < 1e-14);
        }
        let centre = c(2.0, -3.0);
        let point = SupportProfile::from_fn(64, |phi| (centre * C64::from_polar(1.0, -phi)).re);
        for p in natural_parametrization(&point).unwrap().points() {
            // central difference of a pure sinusoid is exact up to sin(Δ)/Δ
            assert!((p - centre).norm() < 1e-2);
        }
        let fine = SupportProfile::from_fn(4096, |phi| (centre * C64::from_polar(1.0, -phi)).re);
        for p in natural_parametrization(&fine).unwrap().points() {
            assert!((p - centre).norm() < 1e-5);
        }
    }

    #[test]
    fn natural_parametrization_recovers_ellipse() {
        let e = Ellipse::new(c(0.0, 0.0), 6.0, 2.0, 0.0);
        let h = SupportProfile::of_ellipse(&e, 4096);
        let pts = natural_parametrization(&h).unwrap();
        for p in pts.points() {
            assert!(e.distance_to_boundary(*p) < 1e-3);
        }
    }

    #[test]
    fn natural_parametrization_rejects_coarse_grid() {
        let h = SupportProfile::from_fn(8, |_| 1.0);
        assert!(matches!(
            natural_parametrization(&h),
            Err(Error::ProfileTooCoarse { got: 8, .. })
        ));
    }

    #[test]
    fn minkowski_examples() {
        let unit = SupportProfile::from_fn(32, |_| 1.0);
        let zero = SupportProfile::from_fn(32, |_| 0.0);
        assert_eq!(minkowski_support_sum(&unit, &zero).unwrap(), unit);
        let two = minkowski_support_sum(&unit, &unit).unwrap();
        assert!(two.values().iter().all(|&v| v == 2.0));
        assert_eq!(
            minkowski_support_sum(&unit, &SupportProfile::from_fn(16, |_| 1.0)),
            Err(Error::GridMismatch)
        );
    }

    #[test]
    fn minkowski_of_segments_matches_brute_force() {
        // [-1,1] + i[-1,1] is the square; enumerate sums of sampled segment points
        let hx = SupportProfile::of_ellipse(&Ellipse::new(c(0.0, 0.0), 1.0, 0.0, 0.0), 64);
        let hy = SupportProfile::of_ellipse(&Ellipse::new(c(0.0, 0.0), 0.0, 1.0, 0.0), 64);
        let sum = minkowski_support_sum(&hx, &hy).unwrap();
        let ticks: Vec<f64> = (0..=20).map(|k| -1.0 + 0.1 * k as f64).collect();
        let mut pts = Vec::new();
        for &x in &ticks {
            for &y in &ticks {
                pts.push(c(x, y));
            }
        }
        let brute = support_profile_of_cloud(&cloud(&pts), 64).unwrap();
        assert!(sum.max_abs_diff(&brute).unwrap() < 1e-12);
    }

    #[test]
    fn profile_validation() {
        assert!(SupportProfile::new(vec![0.0, 1.0], vec![1.0]).is_err());
        assert!(SupportProfile::new(vec![1.0, 0.5], vec![1.0, 1.0]).is_err());
        assert!(SupportProfile::new(vec![0.0, 7.0], vec![1.0, 1.0]).is_err());
        assert!(SupportProfile::new(vec![0.0, 1.0], vec![1.0, 1.0]).is_ok());
    }
}
