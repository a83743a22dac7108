use std::f64::consts::{FRAC_PI_2, PI};

use super::{angle_distance_mod_pi, wrap_pi, Polygon2D};
use crate::linalg::{arg, C64};

/// Closed elliptical region `center + e^{i·rotation}(axis_u cos t + i·axis_v sin t)`.
///
/// Either axis may be the larger one, and either may be zero (segment or
/// point). Use [`Ellipse::canonical`] before comparing two ellipses.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ellipse {
    pub center: C64,
    pub axis_u: f64,
    pub axis_v: f64,
    /// Radians in `[0, π)`.
    pub rotation: f64,
}

impl Ellipse {
    pub fn new(center: C64, axis_u: f64, axis_v: f64, rotation: f64) -> Self {
        assert!(
            axis_u >= 0.0 && axis_v >= 0.0,
            "ellipse axes must be nonnegative: ({axis_u}, {axis_v})"
        );
        Self {
            center,
            axis_u,
            axis_v,
            rotation: wrap_pi(rotation),
        }
    }

    pub fn circle(center: C64, radius: f64) -> Self {
        Self::new(center, radius, radius, 0.0)
    }

    pub fn point(center: C64) -> Self {
        Self::new(center, 0.0, 0.0, 0.0)
    }

    /// Major axis first; rotation follows the major axis and is zeroed for circles.
    pub fn canonical(&self) -> Self {
        let (u, v, rot) = if self.axis_v > self.axis_u {
            (self.axis_v, self.axis_u, self.rotation + FRAC_PI_2)
        } else {
            (self.axis_u, self.axis_v, self.rotation)
        };
        let rot = if u == v { 0.0 } else { rot };
        Self::new(self.center, u, v, rot)
    }

    pub fn major(&self) -> f64 {
        self.axis_u.max(self.axis_v)
    }

    pub fn minor(&self) -> f64 {
        self.axis_u.min(self.axis_v)
    }

    pub fn diameter(&self) -> f64 {
        2.0 * self.major()
    }

    /// Same region, compared on canonical parameters. Rotation is ignored
    /// when the major and minor axes agree within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let a = self.canonical();
        let b = other.canonical();
        if (a.center - b.center).norm() > tol
            || (a.axis_u - b.axis_u).abs() > tol
            || (a.axis_v - b.axis_v).abs() > tol
        {
            return false;
        }
        let round = a.axis_u - a.axis_v <= tol || b.axis_u - b.axis_v <= tol;
        round || angle_distance_mod_pi(a.rotation, b.rotation) <= tol
    }

    /// Image under `z ↦ scale·z + shift`.
    pub fn affine(&self, scale: C64, shift: C64) -> Self {
        let s = scale.norm();
        Self::new(
            scale * self.center + shift,
            s * self.axis_u,
            s * self.axis_v,
            self.rotation + arg(scale),
        )
    }

    #[inline]
    fn frame(&self) -> C64 {
        C64::from_polar(1.0, self.rotation)
    }

    /// Coordinates of `p` in the ellipse's own axis frame.
    pub fn to_local(&self, p: C64) -> C64 {
        self.frame().conj() * (p - self.center)
    }

    pub fn boundary_point(&self, t: f64) -> C64 {
        self.center + self.frame() * C64::new(self.axis_u * t.cos(), self.axis_v * t.sin())
    }

    /// `Re(center·e^{-iφ}) + sqrt(u² cos²(φ-rot) + v² sin²(φ-rot))`.
    pub fn support(&self, phi: f64) -> f64 {
        let d = phi - self.rotation;
        (self.center * C64::from_polar(1.0, -phi)).re
            + (self.axis_u.powi(2) * d.cos().powi(2) + self.axis_v.powi(2) * d.sin().powi(2)).sqrt()
    }

    /// Concentric scale factor `r` with `p ∈ center + r·∂E`; infinite when
    /// `p` is off the line of a degenerate ellipse.
    pub fn level(&self, p: C64) -> f64 {
        let q = self.to_local(p);
        let part = |x: f64, axis: f64| {
            if axis > 0.0 {
                (x / axis).powi(2)
            } else if x == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        };
        (part(q.re, self.axis_u) + part(q.im, self.axis_v)).sqrt()
    }

    /// Euclidean distance from `p` to the boundary curve.
    pub fn distance_to_boundary(&self, p: C64) -> f64 {
        let q = self.to_local(p);
        // Work in the first quadrant with the larger axis along x.
        let (e0, e1, y0, y1) = if self.axis_u >= self.axis_v {
            (self.axis_u, self.axis_v, q.re.abs(), q.im.abs())
        } else {
            (self.axis_v, self.axis_u, q.im.abs(), q.re.abs())
        };
        if e0 == 0.0 {
            return y0.hypot(y1);
        }
        if e1 <= 1e-15 * e0 {
            // segment [-e0, e0]
            let dx = (y0 - e0).max(0.0);
            return dx.hypot(y1);
        }
        distance_point_ellipse(e0, e1, y0, y1)
    }

    /// Distance from `p` to the region; zero inside.
    pub fn outside_distance(&self, p: C64) -> f64 {
        let inside = if self.minor() > 1e-15 * self.major() {
            self.level(p) <= 1.0
        } else {
            false
        };
        if inside {
            0.0
        } else {
            self.distance_to_boundary(p)
        }
    }

    /// Membership in the closed region, allowing `tol` of Euclidean slack.
    pub fn contains(&self, p: C64, tol: f64) -> bool {
        self.outside_distance(p) <= tol
    }

    /// Inscribed convex polygon through `k` equally spaced boundary parameters.
    pub fn polygon(&self, k: usize) -> Polygon2D {
        let pts: Vec<C64> = (0..k.max(1))
            .map(|j| self.boundary_point(2.0 * PI * j as f64 / k as f64))
            .collect();
        super::convex_hull_2d(&super::PointCloud::from_vec(pts))
            .expect("boundary sample is nonempty")
    }
}

// Closest point on x²/e0² + y²/e1² = 1 for a query in the first quadrant,
// e0 ≥ e1 > 0, by bisection on the Lagrange multiplier.
fn distance_point_ellipse(e0: f64, e1: f64, y0: f64, y1: f64) -> f64 {
    if y1 > 0.0 {
        if y0 > 0.0 {
            let z0 = y0 / e0;
            let z1 = y1 / e1;
            let g = z0 * z0 + z1 * z1 - 1.0;
            if g == 0.0 {
                return 0.0;
            }
            let r0 = (e0 / e1).powi(2);
            let s = bisect_root(r0, z0, z1, g);
            let x0 = r0 * y0 / (s + r0);
            let x1 = y1 / (s + 1.0);
            (x0 - y0).hypot(x1 - y1)
        } else {
            (y1 - e1).abs()
        }
    } else {
        let numer = e0 * y0;
        let denom = e0 * e0 - e1 * e1;
        if numer < denom {
            let xd = numer / denom;
            let x0 = e0 * xd;
            let x1 = e1 * (1.0 - xd * xd).max(0.0).sqrt();
            (x0 - y0).hypot(x1)
        } else {
            (y0 - e0).abs()
        }
    }
}

fn bisect_root(r0: f64, z0: f64, z1: f64, g: f64) -> f64 {
    let n0 = r0 * z0;
    let mut s0 = z1 - 1.0;
    let mut s1 = if g < 0.0 { 0.0 } else { n0.hypot(z1) - 1.0 };
    let mut s = 0.0;
    for _ in 0..1100 {
        s = 0.5 * (s0 + s1);
        if s == s0 || s == s1 {
            break;
        }
        let ratio0 = n0 / (s + r0);
        let ratio1 = z1 / (s + 1.0);
        let val = ratio0 * ratio0 + ratio1 * ratio1 - 1.0;
        if val > 0.0 {
            s0 = s;
        } else if val < 0.0 {
            s1 = s;
        } else {
            break;
        }
    }
    s
}

/// `J_{a,b}(z) = a z + b / z` restricted to the unit circle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JoukowskyMap {
    pub a: C64,
    pub b: C64,
}

impl JoukowskyMap {
    pub fn new(a: C64, b: C64) -> Self {
        Self { a, b }
    }

    /// `a·e^{it} + b·e^{-it}`.
    pub fn eval(&self, t: f64) -> C64 {
        self.a * C64::from_polar(1.0, t) + self.b * C64::from_polar(1.0, -t)
    }

    /// Value at an arbitrary point `z` of the unit circle.
    pub fn eval_at(&self, z: C64) -> C64 {
        self.a * z + self.b * z.conj()
    }

    /// The ellipse traced by the map.
    ///
    /// Writing `a = |a|e^{iα}`, `b = |b|e^{iβ}` and `s = t + (α-β)/2`, the value is
    /// `e^{i(α+β)/2}((|a|+|b|) cos s + i(|a|-|b|) sin s)`.
    pub fn ellipse(&self) -> Ellipse {
        let (ma, mb) = (self.a.norm(), self.b.norm());
        Ellipse::new(
            C64::new(0.0, 0.0),
            ma + mb,
            (ma - mb).abs(),
            0.5 * (arg(self.a) + arg(self.b)),
        )
    }
}

/// Image of the axis-aligned, origin-centred ellipse with semi-axes
/// `(axis_u, axis_v)` under `z ↦ z²`.
pub fn square_map_ellipse(axis_u: f64, axis_v: f64) -> Ellipse {
    let (u2, v2) = (axis_u * axis_u, axis_v * axis_v);
    Ellipse::new(
        C64::new(0.5 * (u2 - v2), 0.0),
        0.5 * (u2 + v2),
        axis_u * axis_v,
        0.0,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn axis62() -> Ellipse {
        Ellipse::new(c(0.0, 0.0), 6.0, 2.0, 0.0)
    }

    #[test]
    fn joukowsky_eval_examples() {
        let j = JoukowskyMap::new(c(8.0, 0.0), c(4.0, 0.0));
        assert!((j.eval(0.0) - c(12.0, 0.0)).norm() < 1e-15);
        assert!((j.eval(FRAC_PI_2) - c(0.0, 4.0)).norm() < 1e-14);
        let id = JoukowskyMap::new(c(1.0, 0.0), c(0.0, 0.0));
        for k in 0..10 {
            let t = 0.7 * k as f64;
            assert!((id.eval(t) - C64::from_polar(1.0, t)).norm() < 1e-15);
        }
    }

    #[test]
    fn joukowsky_ellipse_examples() {
        let e = JoukowskyMap::new(c(8.0, 0.0), c(4.0, 0.0)).ellipse();
        assert_eq!((e.axis_u, e.axis_v, e.rotation), (12.0, 4.0, 0.0));
        assert_eq!(e.center, c(0.0, 0.0));
        let seg = JoukowskyMap::new(c(1.0, 0.0), c(1.0, 0.0)).ellipse();
        assert_eq!((seg.axis_u, seg.axis_v), (2.0, 0.0));
        // circle: sampled moduli all equal 2
        let j = JoukowskyMap::new(c(0.0, 2.0), c(0.0, 0.0));
        let e = j.ellipse();
        assert_eq!((e.axis_u, e.axis_v), (2.0, 2.0));
        for k in 0..720 {
            let z = j.eval(2.0 * PI * k as f64 / 720.0);
            assert!((z.norm() - 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn support_examples() {
        assert!((axis62().support(0.0) - 6.0).abs() < 1e-15);
        assert!((axis62().support(FRAC_PI_2) - 2.0).abs() < 1e-15);
        let unit = Ellipse::circle(c(0.0, 0.0), 1.0);
        for k in 0..16 {
            assert!((unit.support(0.4 * k as f64) - 1.0).abs() < 1e-15);
        }
        // centre offset enters linearly
        let shifted = Ellipse::new(c(1.0, 2.0), 6.0, 2.0, 0.0);
        assert!((shifted.support(FRAC_PI_2) - 4.0).abs() < 1e-14);
    }

    #[test]
    fn boundary_point_examples() {
        assert!((axis62().boundary_point(0.0) - c(6.0, 0.0)).norm() < 1e-15);
        assert!((axis62().boundary_point(FRAC_PI_2) - c(0.0, 2.0)).norm() < 1e-15);
        assert_eq!(Ellipse::point(c(5.0, 0.0)).boundary_point(1.3), c(5.0, 0.0));
    }

    #[test]
    fn contains_examples() {
        let e = axis62();
        assert!(e.contains(c(1.0, 1.0), 0.0));
        assert!(!e.contains(c(7.0, 0.0), 1e-9));
        assert!((e.outside_distance(c(7.0, 0.0)) - 1.0).abs() < 1e-12);
        assert!(e.contains(e.center, 0.0));
        let seg = Ellipse::new(c(0.0, 0.0), 1.0, 0.0, FRAC_PI_4);
        assert!(seg.contains(C64::from_polar(0.5, FRAC_PI_4), 1e-12));
        assert!(!seg.contains(c(0.0, 0.5), 1e-3));
        let pt = Ellipse::point(c(1.0, 1.0));
        assert!(pt.contains(c(1.0, 1.0), 0.0));
        assert!((pt.outside_distance(c(4.0, 5.0)) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn distance_to_boundary_matches_dense_sampling() {
        let e = Ellipse::new(c(0.3, -0.2), 3.0, 1.2, 0.4);
        let boundary: Vec<C64> = (0..200_000)
            .map(|k| e.boundary_point(2.0 * PI * k as f64 / 200_000.0))
            .collect();
        for &p in &[
            c(4.0, 1.0),
            c(0.0, 0.0),
            c(-1.0, 2.5),
            c(0.31, -0.19),
            c(10.0, -7.0),
        ] {
            let brute = boundary
                .iter()
                .map(|b| (b - p).norm())
                .fold(f64::INFINITY, f64::min);
            let d = e.distance_to_boundary(p);
            assert!((d - brute).abs() < 1e-6, "p={p}: {d} vs {brute}");
        }
    }

    #[test]
    fn square_map_examples() {
        let s = square_map_ellipse(1.0, 0.0);
        assert_eq!((s.center, s.axis_u, s.axis_v), (c(0.5, 0.0), 0.5, 0.0));
        let s = square_map_ellipse(1.0, 1.0);
        assert_eq!((s.center, s.axis_u, s.axis_v), (c(0.0, 0.0), 1.0, 1.0));
        let s = square_map_ellipse(6.0, 2.0);
        assert_eq!((s.center, s.axis_u, s.axis_v), (c(16.0, 0.0), 20.0, 12.0));
    }

    #[test]
    fn canonical_swaps_minor_first() {
        let e = Ellipse::new(c(0.0, 0.0), 1.0, 3.0, 0.2);
        let k = e.canonical();
        assert_eq!((k.axis_u, k.axis_v), (3.0, 1.0));
        assert!((k.rotation - (0.2 + FRAC_PI_2)).abs() < 1e-15);
        assert!(e.approx_eq(&k, 1e-15));
        // π-periodicity
        let r = Ellipse::new(c(0.0, 0.0), 3.0, 1.0, 0.2 + PI);
        assert!(r.approx_eq(&Ellipse::new(c(0.0, 0.0), 3.0, 1.0, 0.2), 1e-12));
    }

    #[test]
    fn affine_maps_boundary() {
        let e = Ellipse::new(c(1.0, -1.0), 2.0, 0.5, 0.3);
        let (s, b) = (c(0.0, 2.0), c(3.0, 1.0));
        let f = e.affine(s, b);
        for k in 0..50 {
            let p = s * e.boundary_point(0.13 * k as f64) + b;
            assert!(f.distance_to_boundary(p) < 1e-12);
        }
    }
}
