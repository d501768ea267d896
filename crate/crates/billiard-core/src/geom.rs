//! Exact planar primitives over [`QuadScalar`]: points, vectors, segments,
//! orientation-preserving-or-reversing isometries, and the orientation
//! predicate every feasibility decision in this crate reduces to.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::num::QuadScalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point2 {
    pub x: QuadScalar,
    pub y: QuadScalar,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector2 {
    pub x: QuadScalar,
    pub y: QuadScalar,
}

/// Closed segment with distinct endpoints.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Segment {
    pub a: Point2,
    pub b: Point2,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("degenerate line: the two defining points coincide")]
    DegenerateLine,
}

impl Point2 {
    pub fn new(x: QuadScalar, y: QuadScalar) -> Self {
        Self { x, y }
    }

    pub fn from_integers(x: i64, y: i64) -> Self {
        Self::new(QuadScalar::from_integer(x), QuadScalar::from_integer(y))
    }

    pub fn to_vector(&self) -> Vector2 {
        Vector2 { x: self.x.clone(), y: self.y.clone() }
    }

    /// Midpoint of `self` and `other`.
    pub fn midpoint(&self, other: &Point2) -> Point2 {
        let half = QuadScalar::from_ratio(1, 2);
        Point2::new(
            &(&self.x + &other.x) * &half,
            &(&self.y + &other.y) * &half,
        )
    }
}

impl Vector2 {
    pub fn new(x: QuadScalar, y: QuadScalar) -> Self {
        Self { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn cross(&self, other: &Vector2) -> QuadScalar {
        &(&self.x * &other.y) - &(&self.y * &other.x)
    }

    pub fn dot(&self, other: &Vector2) -> QuadScalar {
        &(&self.x * &other.x) + &(&self.y * &other.y)
    }

    pub fn norm_sq(&self) -> QuadScalar {
        self.dot(self)
    }

    /// Counterclockwise quarter turn.
    pub fn perp(&self) -> Vector2 {
        Vector2::new(-&self.y, self.x.clone())
    }

    pub fn scale(&self, k: &QuadScalar) -> Vector2 {
        Vector2::new(&self.x * k, &self.y * k)
    }
}

impl<'a, 'b> Sub<&'b Point2> for &'a Point2 {
    type Output = Vector2;
    fn sub(self, rhs: &'b Point2) -> Vector2 {
        Vector2::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl<'a, 'b> Add<&'b Vector2> for &'a Point2 {
    type Output = Point2;
    fn add(self, rhs: &'b Vector2) -> Point2 {
        Point2::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl<'a, 'b> Add<&'b Vector2> for &'a Vector2 {
    type Output = Vector2;
    fn add(self, rhs: &'b Vector2) -> Vector2 {
        Vector2::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl<'a, 'b> Sub<&'b Vector2> for &'a Vector2 {
    type Output = Vector2;
    fn sub(self, rhs: &'b Vector2) -> Vector2 {
        Vector2::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl<'a> Neg for &'a Vector2 {
    type Output = Vector2;
    fn neg(self) -> Vector2 {
        Vector2::new(-&self.x, -&self.y)
    }
}

impl fmt::Debug for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Debug for Vector2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.x, self.y)
    }
}

impl Segment {
    /// Panics on coincident endpoints; polygon validation guarantees callers
    /// never construct degenerate edges.
    pub fn new(a: Point2, b: Point2) -> Self {
        assert!(a != b, "degenerate segment");
        Self { a, b }
    }

    pub fn direction(&self) -> Vector2 {
        &self.b - &self.a
    }
}

/// Sign of the turn `p -> q -> r`: +1 counterclockwise, -1 clockwise,
/// 0 collinear. Exact.
pub fn orient(p: &Point2, q: &Point2, r: &Point2) -> i8 {
    (q - p).cross(&(r - p)).sign()
}

/// True when `r` lies on the closed segment `[a, b]` (the three points need
/// not be known collinear in advance).
pub fn on_segment(a: &Point2, b: &Point2, r: &Point2) -> bool {
    if orient(a, b, r) != 0 {
        return false;
    }
    let w = b - a;
    if w.is_zero() {
        return r == a;
    }
    let t = (r - a).dot(&w);
    t.sign() >= 0 && (&w.norm_sq() - &t).sign() >= 0
}

/// True when the closed segments share at least one point (proper crossings,
/// endpoint touches, and collinear overlaps all count).
pub fn segments_intersect(s1: &Segment, s2: &Segment) -> bool {
    closed_segments_meet(&s1.a, &s1.b, &s2.a, &s2.b)
}

/// Endpoint form of [`segments_intersect`]; also tolerates degenerate
/// "segments" where both endpoints coincide.
pub fn closed_segments_meet(a1: &Point2, b1: &Point2, a2: &Point2, b2: &Point2) -> bool {
    let o1 = orient(a1, b1, a2);
    let o2 = orient(a1, b1, b2);
    let o3 = orient(a2, b2, a1);
    let o4 = orient(a2, b2, b1);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    // Remaining positives all involve a collinear endpoint.
    (o1 == 0 && on_segment(a1, b1, a2))
        || (o2 == 0 && on_segment(a1, b1, b2))
        || (o3 == 0 && on_segment(a2, b2, a1))
        || (o4 == 0 && on_segment(a2, b2, b1))
}

/// Affine map `x -> M x + t` whose linear part is exactly orthogonal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineIsometry {
    // Row-major linear part.
    m: [QuadScalar; 4],
    t: Vector2,
}

impl AffineIsometry {
    pub fn identity() -> Self {
        Self {
            m: [
                QuadScalar::one(),
                QuadScalar::zero(),
                QuadScalar::zero(),
                QuadScalar::one(),
            ],
            t: Vector2::new(QuadScalar::zero(), QuadScalar::zero()),
        }
    }

    pub fn new(m: [QuadScalar; 4], t: Vector2) -> Self {
        let iso = Self { m, t };
        debug_assert!(iso.is_orthogonal(), "linear part is not orthogonal");
        iso
    }

    pub fn apply(&self, p: &Point2) -> Point2 {
        Point2::new(
            &(&(&self.m[0] * &p.x) + &(&self.m[1] * &p.y)) + &self.t.x,
            &(&(&self.m[2] * &p.x) + &(&self.m[3] * &p.y)) + &self.t.y,
        )
    }

    /// Applies only the linear part; directions transform without translation.
    pub fn apply_vector(&self, v: &Vector2) -> Vector2 {
        Vector2::new(
            &(&self.m[0] * &v.x) + &(&self.m[1] * &v.y),
            &(&self.m[2] * &v.x) + &(&self.m[3] * &v.y),
        )
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &AffineIsometry) -> AffineIsometry {
        let m = [
            &(&self.m[0] * &other.m[0]) + &(&self.m[1] * &other.m[2]),
            &(&self.m[0] * &other.m[1]) + &(&self.m[1] * &other.m[3]),
            &(&self.m[2] * &other.m[0]) + &(&self.m[3] * &other.m[2]),
            &(&self.m[2] * &other.m[1]) + &(&self.m[3] * &other.m[3]),
        ];
        let t = &self.apply_vector(&other.t) + &self.t;
        AffineIsometry { m, t }
    }

    pub fn det_sign(&self) -> i8 {
        (&(&self.m[0] * &self.m[3]) - &(&self.m[1] * &self.m[2])).sign()
    }

    pub fn is_orthogonal(&self) -> bool {
        let [a, b, c, d] = &self.m;
        let one = QuadScalar::one();
        let zero = QuadScalar::zero();
        &(a * a) + &(c * c) == one
            && &(b * b) + &(d * d) == one
            && &(a * b) + &(c * d) == zero
    }
}

/// Reflection across the line through `p` and `q`. The linear part has
/// determinant -1 and the line itself is fixed pointwise.
pub fn reflect_across(p: &Point2, q: &Point2) -> Result<AffineIsometry, GeomError> {
    let u = q - p;
    let n2 = u.norm_sq();
    if n2.is_zero() {
        return Err(GeomError::DegenerateLine);
    }
    let ux2 = &u.x * &u.x;
    let uy2 = &u.y * &u.y;
    let two_uxuy = &QuadScalar::from_integer(2) * &(&u.x * &u.y);
    let m = [
        &(&ux2 - &uy2) / &n2,
        &two_uxuy / &n2,
        &two_uxuy / &n2,
        &(&uy2 - &ux2) / &n2,
    ];
    // t = p - M p keeps the defining point fixed.
    let mp = Vector2::new(
        &(&m[0] * &p.x) + &(&m[1] * &p.y),
        &(&m[2] * &p.x) + &(&m[3] * &p.y),
    );
    let t = &p.to_vector() - &mp;
    Ok(AffineIsometry::new(m, t))
}
