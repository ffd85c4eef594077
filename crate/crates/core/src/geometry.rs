//! Analytic bounded sets: balls, axis-aligned boxes and finite disjoint unions.
//!
//! Points are stored as `[f64; 3]`; coordinates beyond the set's dimension
//! are ignored and kept at zero.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sphere::unit_ball_volume;

pub type Point = [f64; 3];

#[inline]
pub(crate) fn norm(v: &Point, dim: usize) -> f64 {
    v[..dim].iter().map(|a| a * a).sum::<f64>().sqrt()
}

#[inline]
pub(crate) fn sub(a: &Point, b: &Point) -> Point {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn to_point(v: &[f64]) -> Point {
    let mut p = [0.0; 3];
    p[..v.len()].copy_from_slice(v);
    p
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisBox {
    pub lo: Point,
    pub hi: Point,
    pub dim: usize,
}

/// One convex member of a [`GeometricSet`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Shape {
    Ball(Ball),
    AxisBox(AxisBox),
}

impl Shape {
    pub fn dim(&self) -> usize {
        match self {
            Shape::Ball(b) => b.dim,
            Shape::AxisBox(b) => b.dim,
        }
    }

    pub fn volume(&self) -> f64 {
        match self {
            Shape::Ball(b) => unit_ball_volume(b.dim) * b.radius.powi(b.dim as i32),
            Shape::AxisBox(b) => (0..b.dim).map(|i| b.hi[i] - b.lo[i]).product(),
        }
    }

    pub fn contains(&self, x: &Point) -> bool {
        match self {
            Shape::Ball(b) => norm(&sub(x, &b.center), b.dim) < b.radius,
            Shape::AxisBox(b) => (0..b.dim).all(|i| x[i] > b.lo[i] && x[i] < b.hi[i]),
        }
    }

    /// Euclidean distance from `x` to the closed shape (0 inside).
    pub fn distance(&self, x: &Point) -> f64 {
        match self {
            Shape::Ball(b) => (norm(&sub(x, &b.center), b.dim) - b.radius).max(0.0),
            Shape::AxisBox(b) => (0..b.dim)
                .map(|i| {
                    let d = (b.lo[i] - x[i]).max(x[i] - b.hi[i]).max(0.0);
                    d * d
                })
                .sum::<f64>()
                .sqrt(),
        }
    }

    /// Distance from an interior point to the boundary.
    pub fn depth(&self, x: &Point) -> f64 {
        match self {
            Shape::Ball(b) => (b.radius - norm(&sub(x, &b.center), b.dim)).max(0.0),
            Shape::AxisBox(b) => (0..b.dim)
                .map(|i| (x[i] - b.lo[i]).min(b.hi[i] - x[i]))
                .fold(f64::INFINITY, f64::min)
                .max(0.0),
        }
    }

    /// Parameter interval `[t_in, t_out]` (with `t_in ≥ 0`) on which the ray
    /// `y + t·dir`, `t ≥ 0`, lies inside the shape.
    pub fn ray_interval(&self, y: &Point, dir: &Point) -> Option<(f64, f64)> {
        let (t0, t1) = match self {
            Shape::Ball(b) => {
                let dim = b.dim;
                let w = sub(y, &b.center);
                let bq: f64 = (0..dim).map(|i| dir[i] * w[i]).sum();
                let c: f64 = (0..dim).map(|i| w[i] * w[i]).sum::<f64>() - b.radius * b.radius;
                let disc = bq * bq - c;
                if disc <= 0.0 {
                    return None;
                }
                let s = disc.sqrt();
                (-bq - s, -bq + s)
            }
            Shape::AxisBox(b) => {
                let mut t0 = f64::NEG_INFINITY;
                let mut t1 = f64::INFINITY;
                for i in 0..b.dim {
                    if dir[i] == 0.0 {
                        if y[i] <= b.lo[i] || y[i] >= b.hi[i] {
                            return None;
                        }
                        continue;
                    }
                    let a = (b.lo[i] - y[i]) / dir[i];
                    let c = (b.hi[i] - y[i]) / dir[i];
                    t0 = t0.max(a.min(c));
                    t1 = t1.min(a.max(c));
                }
                (t0, t1)
            }
        };
        let t0 = t0.max(0.0);
        if t1 <= t0 {
            None
        } else {
            Some((t0, t1))
        }
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        match self {
            Shape::Ball(b) => {
                let mut lo = b.center;
                let mut hi = b.center;
                for i in 0..b.dim {
                    lo[i] -= b.radius;
                    hi[i] += b.radius;
                }
                (lo, hi)
            }
            Shape::AxisBox(b) => (b.lo, b.hi),
        }
    }

    pub fn scaled(&self, lambda: f64) -> Shape {
        let sc = |p: &Point| [p[0] * lambda, p[1] * lambda, p[2] * lambda];
        match self {
            Shape::Ball(b) => Shape::Ball(Ball {
                center: sc(&b.center),
                radius: b.radius * lambda,
                dim: b.dim,
            }),
            Shape::AxisBox(b) => Shape::AxisBox(AxisBox {
                lo: sc(&b.lo),
                hi: sc(&b.hi),
                dim: b.dim,
            }),
        }
    }

    fn disjoint_from(&self, other: &Shape) -> bool {
        let slack = 1e-12;
        match (self, other) {
            (Shape::Ball(a), Shape::Ball(b)) => {
                norm(&sub(&a.center, &b.center), a.dim) >= a.radius + b.radius - slack
            }
            (Shape::AxisBox(a), Shape::AxisBox(b)) => {
                (0..a.dim).any(|i| a.hi[i] <= b.lo[i] + slack || b.hi[i] <= a.lo[i] + slack)
            }
            (Shape::Ball(a), bx @ Shape::AxisBox(_)) | (bx @ Shape::AxisBox(_), Shape::Ball(a)) => {
                bx.distance(&a.center) >= a.radius - slack
            }
        }
    }
}

/// A bounded set with exact volume, membership and distance queries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum GeometricSet {
    Empty { dim: usize },
    Ball(Ball),
    AxisBox(AxisBox),
    DisjointUnion(Vec<Shape>),
}

impl GeometricSet {
    pub fn ball(center: &[f64], radius: f64) -> Result<Self> {
        let dim = center.len();
        check_dim(dim)?;
        if !(radius > 0.0 && radius.is_finite()) || center.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidSet(format!("ball radius {radius} must be positive and finite")));
        }
        Ok(GeometricSet::Ball(Ball {
            center: to_point(center),
            radius,
            dim,
        }))
    }

    pub fn axis_box(lo: &[f64], hi: &[f64]) -> Result<Self> {
        let dim = lo.len();
        check_dim(dim)?;
        if hi.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "box corners have lengths {} and {}",
                dim,
                hi.len()
            )));
        }
        if lo.iter().zip(hi).any(|(a, b)| !(a < b) || !a.is_finite() || !b.is_finite()) {
            return Err(Error::InvalidSet(format!("box requires lo < hi componentwise: {lo:?} {hi:?}")));
        }
        Ok(GeometricSet::AxisBox(AxisBox {
            lo: to_point(lo),
            hi: to_point(hi),
            dim,
        }))
    }

    pub fn empty(dim: usize) -> Self {
        GeometricSet::Empty { dim }
    }

    /// Union of pairwise disjoint members; overlap is rejected.
    pub fn disjoint_union(members: Vec<GeometricSet>) -> Result<Self> {
        let mut shapes = Vec::new();
        let mut dim = None;
        for m in members {
            let d = m.dim();
            if *dim.get_or_insert(d) != d {
                return Err(Error::DimensionMismatch("union members differ in dimension".into()));
            }
            shapes.extend(m.members());
        }
        for (i, a) in shapes.iter().enumerate() {
            for b in &shapes[i + 1..] {
                if !a.disjoint_from(b) {
                    return Err(Error::InvalidSet(format!("union members overlap: {a:?} and {b:?}")));
                }
            }
        }
        Ok(match shapes.len() {
            0 => GeometricSet::Empty { dim: dim.unwrap_or(1) },
            1 => shapes.pop().map(GeometricSet::from).unwrap(),
            _ => GeometricSet::DisjointUnion(shapes),
        })
    }

    pub fn dim(&self) -> usize {
        match self {
            GeometricSet::Empty { dim } => *dim,
            GeometricSet::Ball(b) => b.dim,
            GeometricSet::AxisBox(b) => b.dim,
            GeometricSet::DisjointUnion(s) => s[0].dim(),
        }
    }

    /// Members as owned shapes (one for a single ball or box).
    pub fn members(&self) -> Vec<Shape> {
        match self {
            GeometricSet::Empty { .. } => Vec::new(),
            GeometricSet::Ball(b) => vec![Shape::Ball(b.clone())],
            GeometricSet::AxisBox(b) => vec![Shape::AxisBox(b.clone())],
            GeometricSet::DisjointUnion(s) => s.clone(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, GeometricSet::Empty { .. })
    }

    pub fn volume(&self) -> f64 {
        self.members().iter().map(Shape::volume).sum()
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.members().iter().any(|s| s.contains(x))
    }

    /// Euclidean distance to the closure of the set; `+∞` for the empty set.
    pub fn distance(&self, x: &Point) -> f64 {
        self.members()
            .iter()
            .map(|s| s.distance(x))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn bounding_box(&self) -> Option<(Point, Point)> {
        let members = self.members();
        let dim = self.dim();
        let mut it = members.iter().map(Shape::bounding_box);
        let (mut lo, mut hi) = it.next()?;
        for (l, h) in it {
            for i in 0..dim {
                lo[i] = lo[i].min(l[i]);
                hi[i] = hi[i].max(h[i]);
            }
        }
        Some((lo, hi))
    }

    /// Diagonal of the bounding box (0 for the empty set).
    pub fn diameter(&self) -> f64 {
        match self.bounding_box() {
            Some((lo, hi)) => norm(&sub(&hi, &lo), self.dim()),
            None => 0.0,
        }
    }

    /// Image under x ↦ λx.
    pub fn scaled(&self, lambda: f64) -> GeometricSet {
        match self {
            GeometricSet::Empty { dim } => GeometricSet::Empty { dim: *dim },
            GeometricSet::DisjointUnion(s) => {
                GeometricSet::DisjointUnion(s.iter().map(|m| m.scaled(lambda)).collect())
            }
            single => GeometricSet::from(single.members()[0].scaled(lambda)),
        }
    }

    /// True when `self ⊆ other`, decided for the shapes the crate produces
    /// (ball-in-ball, box-in-box, box-in-ball, ball-in-box).
    pub fn is_subset_of(&self, other: &GeometricSet) -> bool {
        self.members().iter().all(|a| {
            other.members().iter().any(|b| shape_subset(a, b))
        })
    }
}

fn shape_subset(a: &Shape, b: &Shape) -> bool {
    let eps = 1e-12;
    match (a, b) {
        (Shape::Ball(a), Shape::Ball(b)) => {
            norm(&sub(&a.center, &b.center), a.dim) + a.radius <= b.radius + eps
        }
        (Shape::AxisBox(a), Shape::AxisBox(b)) => {
            (0..a.dim).all(|i| a.lo[i] >= b.lo[i] - eps && a.hi[i] <= b.hi[i] + eps)
        }
        (Shape::AxisBox(a), Shape::Ball(b)) => {
            // all corners inside
            (0..1usize << a.dim).all(|mask| {
                let mut c = [0.0; 3];
                for i in 0..a.dim {
                    c[i] = if mask & (1 << i) != 0 { a.hi[i] } else { a.lo[i] };
                }
                norm(&sub(&c, &b.center), a.dim) <= b.radius + eps
            })
        }
        (Shape::Ball(a), Shape::AxisBox(b)) => {
            (0..a.dim).all(|i| a.center[i] - a.radius >= b.lo[i] - eps && a.center[i] + a.radius <= b.hi[i] + eps)
        }
    }
}

impl From<Shape> for GeometricSet {
    fn from(s: Shape) -> Self {
        match s {
            Shape::Ball(b) => GeometricSet::Ball(b),
            Shape::AxisBox(b) => GeometricSet::AxisBox(b),
        }
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if (1..=3).contains(&dim) {
        Ok(())
    } else {
        Err(Error::InvalidSet(format!("dimension {dim} not in 1..=3")))
    }
}
