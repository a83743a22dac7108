use std::cmp::Ordering;

use super::PointCloud;
use crate::error::{Error, Result};
use crate::linalg::C64;

/// Convex polygon with counterclockwise vertices and no collinear runs.
///
/// One vertex is a point and two vertices a segment.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon2D {
    vertices: Vec<C64>,
}

#[inline]
fn cross(o: C64, a: C64, b: C64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

fn lex(a: &C64, b: &C64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Drops points well inside the octagon spanned by the extreme points in
/// eight directions (Akl–Toussaint), keeping anything near its edges.
fn discard_interior(points: &[C64]) -> Vec<C64> {
    const DIRS: [(f64, f64); 8] = [
        (1.0, 0.0),
        (1.0, 1.0),
        (0.0, 1.0),
        (-1.0, 1.0),
        (-1.0, 0.0),
        (-1.0, -1.0),
        (0.0, -1.0),
        (1.0, -1.0),
    ];
    let mut best = [(f64::NEG_INFINITY, points[0]); 8];
    for &p in points {
        for (slot, (dx, dy)) in best.iter_mut().zip(DIRS) {
            let h = dx * p.re + dy * p.im;
            if h > slot.0 {
                *slot = (h, p);
            }
        }
    }
    let mut octagon: Vec<C64> = best.iter().map(|&(_, p)| p).collect();
    octagon.dedup();
    if octagon.len() > 1 && octagon[0] == octagon[octagon.len() - 1] {
        octagon.pop();
    }
    if octagon.len() < 3 {
        return points.to_vec();
    }
    let extent = (best[0].0 + best[4].0).max(best[2].0 + best[6].0);
    let margin = 1e-9 * extent * extent;
    let k = octagon.len();
    points
        .iter()
        .copied()
        .filter(|&p| (0..k).any(|i| cross(octagon[i], octagon[(i + 1) % k], p) <= margin))
        .collect()
}

/// Andrew's monotone chain. Collinear vertices are dropped with a cross-product
/// tolerance of `1e-12 · extent²`.
pub fn convex_hull_2d(cloud: &PointCloud) -> Result<Polygon2D> {
    if cloud.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let mut pts = if cloud.len() > 256 {
        discard_interior(cloud.points())
    } else {
        cloud.points().to_vec()
    };
    pts.sort_unstable_by(lex);
    pts.dedup();
    if pts.len() <= 2 {
        return Ok(Polygon2D { vertices: pts });
    }
    let (mut lo, mut hi) = (pts[0], pts[0]);
    for p in &pts {
        lo = C64::new(lo.re.min(p.re), lo.im.min(p.im));
        hi = C64::new(hi.re.max(p.re), hi.im.max(p.im));
    }
    let eps = 1e-12 * (hi - lo).norm_sqr();

    let mut hull: Vec<C64> = Vec::with_capacity(2 * pts.len().min(4096));
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= eps {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= eps
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    if hull.len() < 3 {
        // everything collinear: keep the two extremes
        hull = vec![pts[0], pts[pts.len() - 1]];
    }
    Ok(Polygon2D { vertices: hull })
}

impl Polygon2D {
    pub fn vertices(&self) -> &[C64] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        if n < 3 {
            return 0.0;
        }
        0.5 * (0..n)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                a.re * b.im - a.im * b.re
            })
            .sum::<f64>()
    }

    pub fn diameter(&self) -> f64 {
        let v = &self.vertices;
        let mut best = 0.0f64;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                best = best.max((v[i] - v[j]).norm());
            }
        }
        best
    }

    fn contains_point(&self, p: C64) -> bool {
        let n = self.vertices.len();
        n >= 3 && (0..n).all(|i| cross(self.vertices[i], self.vertices[(i + 1) % n], p) >= 0.0)
    }

    /// Distance from `p` to the closed polygonal region.
    pub fn distance_to(&self, p: C64) -> f64 {
        let v = &self.vertices;
        match v.len() {
            0 => f64::INFINITY,
            1 => (p - v[0]).norm(),
            2 => segment_distance(p, v[0], v[1]),
            n => {
                if self.contains_point(p) {
                    0.0
                } else {
                    (0..n)
                        .map(|i| segment_distance(p, v[i], v[(i + 1) % n]))
                        .fold(f64::INFINITY, f64::min)
                }
            }
        }
    }
}

fn segment_distance(p: C64, a: C64, b: C64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + d * t)).norm()
}

/// Symmetric Hausdorff distance between two convex regions.
///
/// Distance to a convex set is convex, so each one-sided maximum is attained
/// at a vertex.
pub fn hausdorff_distance(a: &Polygon2D, b: &Polygon2D) -> f64 {
    let one_sided = |x: &Polygon2D, y: &Polygon2D| {
        x.vertices
            .iter()
            .map(|&p| y.distance_to(p))
            .fold(0.0, f64::max)
    };
    one_sided(a, b).max(one_sided(b, a))
}
