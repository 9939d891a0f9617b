//! Orientation and angle predicates, generic over the coordinate scalar.
//!
//! With integer or rational coordinates every predicate is exact. With
//! floating point they are the usual naive evaluations; the verifier only
//! ever calls them on snapped integer coordinates.

use std::cmp::Ordering;

use num_traits::{Float, NumCast, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

/// Coordinate scalar. Implemented for every signed numeric type with a
/// total-enough order: `i64`, `i128`, `f32`, `f64`, `num_rational::Ratio`...
pub trait Scalar: Clone + PartialOrd + Signed {}

impl<T: Clone + PartialOrd + Signed> Scalar for T {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T> Point<T> {
    pub const fn new(x: T, y: T) -> Self {
        Point { x, y }
    }
}

impl<T: Scalar> Point<T> {
    pub fn sub(&self, o: &Self) -> Self {
        Point::new(self.x.clone() - o.x.clone(), self.y.clone() - o.y.clone())
    }

    pub fn cross(&self, o: &Self) -> T {
        self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone()
    }

    pub fn dot(&self, o: &Self) -> T {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone()
    }

    pub fn cast<U: NumCast>(&self) -> Option<Point<U>>
    where
        T: ToPrimitive,
    {
        Some(Point::new(U::from(self.x.clone())?, U::from(self.y.clone())?))
    }
}

impl<T: Float> Point<T> {
    pub fn norm(&self) -> T {
        self.x.hypot(self.y)
    }

    /// Counterclockwise angle in `[0, 2π)` from direction `self` to `o`.
    pub fn ccw_angle_to(&self, o: &Self) -> T {
        let two_pi = T::from(std::f64::consts::TAU).unwrap();
        let a = o.y.atan2(o.x) - self.y.atan2(self.x);
        if a < T::zero() {
            a + two_pi
        } else {
            a
        }
    }
}

/// Sign of the turn `a → b → c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

pub fn orient<T: Scalar>(a: &Point<T>, b: &Point<T>, c: &Point<T>) -> Orientation {
    let d = b.sub(a).cross(&c.sub(a));
    if d.is_positive() {
        Orientation::CounterClockwise
    } else if d.is_negative() {
        Orientation::Clockwise
    } else {
        Orientation::Collinear
    }
}

fn on_segment<T: Scalar>(p: &Point<T>, a: &Point<T>, b: &Point<T>) -> bool {
    let lo = |u: &T, v: &T| if u < v { u.clone() } else { v.clone() };
    let hi = |u: &T, v: &T| if u < v { v.clone() } else { u.clone() };
    lo(&a.x, &b.x) <= p.x && p.x <= hi(&a.x, &b.x) && lo(&a.y, &b.y) <= p.y && p.y <= hi(&a.y, &b.y)
}

/// True iff closed segments `ab` and `cd` share at least one point.
pub fn segments_intersect<T: Scalar>(a: &Point<T>, b: &Point<T>, c: &Point<T>, d: &Point<T>) -> bool {
    use Orientation::Collinear;
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 != o2 && o3 != o4 && o1 != Collinear && o2 != Collinear && o3 != Collinear && o4 != Collinear {
        return true;
    }
    (o1 == Collinear && on_segment(c, a, b))
        || (o2 == Collinear && on_segment(d, a, b))
        || (o3 == Collinear && on_segment(a, c, d))
        || (o4 == Collinear && on_segment(b, c, d))
}

/// Whether two straight edges of a drawing conflict. Edges sharing one
/// endpoint conflict only if they overlap beyond it.
pub fn edges_conflict<T: Scalar>(a: &Point<T>, b: &Point<T>, c: &Point<T>, d: &Point<T>) -> bool {
    let shared = [(a, c), (a, d), (b, c), (b, d)].iter().filter(|(p, q)| p == q).count();
    match shared {
        0 => segments_intersect(a, b, c, d),
        1 => {
            let (p, other1, other2) = if a == c {
                (a, b, d)
            } else if a == d {
                (a, b, c)
            } else if b == c {
                (b, a, d)
            } else {
                (b, a, c)
            };
            let u = other1.sub(p);
            let v = other2.sub(p);
            u.cross(&v).is_zero() && u.dot(&v).is_positive()
        }
        _ => true,
    }
}

/// Class of the counterclockwise sweep from direction `from` to direction `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AngleClass {
    /// Strictly between 0 and π.
    Convex,
    /// Exactly π.
    Straight,
    /// Strictly between π and 2π, or the full turn at a degree-one vertex.
    Reflex,
    /// Zero: the two edges overlap.
    Zero,
}

pub fn classify_sweep<T: Scalar>(from: &Point<T>, to: &Point<T>, full_turn: bool) -> AngleClass {
    if full_turn {
        return AngleClass::Reflex;
    }
    let c = from.cross(to);
    if c.is_positive() {
        AngleClass::Convex
    } else if c.is_negative() {
        AngleClass::Reflex
    } else if from.dot(to).is_negative() {
        AngleClass::Straight
    } else {
        AngleClass::Zero
    }
}

fn upper_half<T: Scalar>(p: &Point<T>) -> bool {
    p.y.is_positive() || (p.y.is_zero() && p.x.is_positive())
}

/// Compares directions by counterclockwise angle from the positive x axis.
pub fn direction_cmp<T: Scalar>(p: &Point<T>, q: &Point<T>) -> Ordering {
    match (upper_half(p), upper_half(q)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => {
            let c = p.cross(q);
            if c.is_positive() {
                Ordering::Less
            } else if c.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        }
    }
}

/// Twice the signed area of a closed polygon.
pub fn signed_area2<T: Scalar>(poly: &[Point<T>]) -> T {
    let mut acc = T::zero();
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        acc = acc + poly[i].cross(&poly[j]);
    }
    acc
}

/// Strict convex hull (no collinear points), counterclockwise, as indices.
pub fn convex_hull<T: Scalar>(pts: &[Point<T>]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&i, &j| {
        pts[i]
            .x
            .partial_cmp(&pts[j].x)
            .unwrap_or(Ordering::Equal)
            .then(pts[i].y.partial_cmp(&pts[j].y).unwrap_or(Ordering::Equal))
    });
    idx.dedup_by(|a, b| pts[*a] == pts[*b]);
    if idx.len() < 3 {
        return idx;
    }
    let mut hull: Vec<usize> = Vec::with_capacity(2 * idx.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &usize>> = if pass == 0 { Box::new(idx.iter()) } else { Box::new(idx.iter().rev()) };
        for &i in iter {
            while hull.len() >= start + 2
                && orient(&pts[hull[hull.len() - 2]], &pts[hull[hull.len() - 1]], &pts[i]) != Orientation::CounterClockwise
            {
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    hull
}
