//! Planar polygons, vertical prisms and segment queries.

use serde::{Deserialize, Serialize};

pub const EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

// Plain methods keep call sites short; the types are small `Copy` values.
#[allow(clippy::should_implement_trait)]
impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }

    pub fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }

    pub fn scale(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dist(self, o: Vec2) -> f64 {
        self.sub(o).norm()
    }

    pub fn rotate(self, yaw: f64) -> Vec2 {
        let (s, c) = yaw.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn lerp(self, o: Vec2, t: f64) -> Vec2 {
        self.add(o.sub(self).scale(t))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

#[allow(clippy::should_implement_trait)]
impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn xy(self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }

    pub fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }

    pub fn lerp(self, o: Vec3, t: f64) -> Vec3 {
        Vec3::new(
            self.x + (o.x - self.x) * t,
            self.y + (o.y - self.y) * t,
            self.z + (o.z - self.z) * t,
        )
    }
}

/// Convex polygon with counter-clockwise vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polygon {
    pub points: Vec<Vec2>,
}

impl Polygon {
    /// Builds a polygon, reversing clockwise input.
    pub fn new(mut points: Vec<Vec2>) -> Self {
        if signed_area(&points) < 0.0 {
            points.reverse();
        }
        Polygon { points }
    }

    /// Axis-aligned rectangle of size `w` × `d` centered on the origin.
    pub fn rect(w: f64, d: f64) -> Self {
        let (hw, hd) = (w / 2.0, d / 2.0);
        Polygon::new(vec![
            Vec2::new(-hw, -hd),
            Vec2::new(hw, -hd),
            Vec2::new(hw, hd),
            Vec2::new(-hw, hd),
        ])
    }

    pub fn from_bounds(min: Vec2, max: Vec2) -> Self {
        Polygon::new(vec![min, Vec2::new(max.x, min.y), max, Vec2::new(min.x, max.y)])
    }

    pub fn transformed(&self, at: Vec2, yaw: f64) -> Polygon {
        Polygon {
            points: self.points.iter().map(|p| p.rotate(yaw).add(at)).collect(),
        }
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.points).abs()
    }

    pub fn centroid(&self) -> Vec2 {
        let n = self.points.len() as f64;
        let s = self.points.iter().fold(Vec2::default(), |a, p| a.add(*p));
        s.scale(1.0 / n)
    }

    pub fn bounds(&self) -> (Vec2, Vec2) {
        let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.points {
            lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        (lo, hi)
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vec2, Vec2)> + '_ {
        let n = self.points.len();
        (0..n).map(move |i| (self.points[i], self.points[(i + 1) % n]))
    }

    /// Point inside or on the boundary (within `tol`).
    pub fn contains(&self, p: Vec2, tol: f64) -> bool {
        self.edges().all(|(a, b)| {
            let e = b.sub(a);
            e.cross(p.sub(a)) >= -tol * e.norm()
        })
    }

    pub fn contains_polygon(&self, other: &Polygon, tol: f64) -> bool {
        other.points.iter().all(|p| self.contains(*p, tol))
    }

    /// Distance from an interior point to the nearest edge.
    pub fn edge_distance(&self, p: Vec2) -> f64 {
        self.edges()
            .map(|(a, b)| {
                let e = b.sub(a);
                e.cross(p.sub(a)) / e.norm()
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Interiors intersect. Polygons that only touch do not overlap.
    pub fn overlaps(&self, other: &Polygon, tol: f64) -> bool {
        for poly in [self, other] {
            for (a, b) in poly.edges() {
                let axis = Vec2::new(a.y - b.y, b.x - a.x);
                let len = axis.norm();
                if len < EPS {
                    continue;
                }
                let axis = axis.scale(1.0 / len);
                let (lo1, hi1) = project(self, axis);
                let (lo2, hi2) = project(other, axis);
                if hi1 <= lo2 + tol || hi2 <= lo1 + tol {
                    return false;
                }
            }
        }
        true
    }

    /// Intersection with another convex polygon (Sutherland–Hodgman).
    pub fn clip(&self, clipper: &Polygon) -> Polygon {
        let mut out = self.points.clone();
        for (a, b) in clipper.edges() {
            if out.is_empty() {
                break;
            }
            let input = std::mem::take(&mut out);
            let e = b.sub(a);
            let inside = |p: Vec2| e.cross(p.sub(a)) >= 0.0;
            for i in 0..input.len() {
                let cur = input[i];
                let prev = input[(i + input.len() - 1) % input.len()];
                let (ci, pi) = (inside(cur), inside(prev));
                if ci != pi {
                    let d = cur.sub(prev);
                    let denom = e.cross(d);
                    if denom.abs() > EPS {
                        let t = e.cross(a.sub(prev)) / denom;
                        out.push(prev.add(d.scale(t)));
                    }
                }
                if ci {
                    out.push(cur);
                }
            }
        }
        Polygon { points: out }
    }

    pub fn intersection_area(&self, other: &Polygon) -> f64 {
        let c = self.clip(other);
        if c.points.len() < 3 {
            0.0
        } else {
            c.area()
        }
    }
}

fn signed_area(points: &[Vec2]) -> f64 {
    let n = points.len();
    (0..n).map(|i| points[i].cross(points[(i + 1) % n])).sum::<f64>() / 2.0
}

fn project(poly: &Polygon, axis: Vec2) -> (f64, f64) {
    poly.points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            let d = p.dot(axis);
            (lo.min(d), hi.max(d))
        })
}

/// Vertical extrusion of a convex footprint between two heights.
#[derive(Clone, Debug, PartialEq)]
pub struct Prism {
    pub footprint: Polygon,
    pub z0: f64,
    pub z1: f64,
}

impl Prism {
    pub fn new(footprint: Polygon, z0: f64, z1: f64) -> Self {
        Prism { footprint, z0, z1 }
    }

    /// Interiors intersect; face contact is not an overlap.
    pub fn overlaps(&self, other: &Prism, tol: f64) -> bool {
        self.z1 > other.z0 + tol && other.z1 > self.z0 + tol && self.footprint.overlaps(&other.footprint, tol)
    }

    /// Parameter interval of the segment `a→b` inside the prism (Cyrus–Beck).
    pub fn clip_segment(&self, a: Vec3, b: Vec3) -> Option<(f64, f64)> {
        let d = b.sub(a);
        let mut t0: f64 = 0.0;
        let mut t1: f64 = 1.0;
        // Half-spaces z >= z0 and z <= z1.
        for (num, den) in [(a.z - self.z0, d.z), (self.z1 - a.z, -d.z)] {
            if !clip_halfspace(num, den, &mut t0, &mut t1) {
                return None;
            }
        }
        for (p, q) in self.footprint.edges() {
            let e = q.sub(p);
            let n = e.norm();
            if n < EPS {
                continue;
            }
            // Signed distance inside the edge, positive to the left.
            let num = e.cross(a.xy().sub(p)) / n;
            let den = e.cross(d.xy()) / n;
            if !clip_halfspace(num, den, &mut t0, &mut t1) {
                return None;
            }
        }
        (t0 <= t1).then_some((t0, t1))
    }

    /// The segment passes through the prism interior for a non-trivial length.
    pub fn blocks_segment(&self, a: Vec3, b: Vec3, tol: f64) -> bool {
        let len = ((b.x - a.x).powi(2) + (b.y - a.y).powi(2) + (b.z - a.z).powi(2)).sqrt();
        match self.clip_segment(a, b) {
            Some((t0, t1)) => (t1 - t0) * len > tol,
            None => false,
        }
    }
}

/// Restricts `[t0, t1]` to `num + den·t >= 0`. Returns false when empty. A
/// segment parallel to the boundary must lie strictly inside, so segments
/// running along a face are left out.
fn clip_halfspace(num: f64, den: f64, t0: &mut f64, t1: &mut f64) -> bool {
    if den.abs() < EPS {
        return num > EPS;
    }
    let t = -num / den;
    if den > 0.0 {
        *t0 = t0.max(t);
    } else {
        *t1 = t1.min(t);
    }
    *t0 <= *t1
}
