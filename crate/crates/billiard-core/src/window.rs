//! Feasibility windows for unfolded corridors.
//!
//! A corridor is feasible exactly when some straight line crosses every
//! unfolded portal interior in order. Orienting each portal along the travel
//! direction splits its endpoints into a left one and a right one, and such a
//! transversal exists iff the convex hull of the left endpoints is disjoint
//! from the convex hull of the right endpoints (closed hulls; touching kills
//! the transversal because crossings must avoid portal endpoints).
//!
//! [`Window`] maintains both hulls incrementally plus a separating-line
//! witness so that the common case of an extension costs two half-plane
//! tests instead of a full hull intersection check.

use crate::geom::{closed_segments_meet, on_segment, orient, Point2, Vector2};
use crate::num::QuadScalar;

/// Convex hull under incremental insertion. Vertices are kept in
/// counterclockwise order with no collinear triples; sizes 0, 1 and 2
/// (point/segment) are first-class.
#[derive(Clone, Debug, Default)]
pub struct Hull {
    pts: Vec<Point2>,
}

impl Hull {
    pub fn new() -> Self {
        Hull { pts: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.pts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty()
    }

    pub fn points(&self) -> &[Point2] {
        &self.pts
    }

    /// Closed membership test.
    pub fn contains(&self, p: &Point2) -> bool {
        match self.pts.len() {
            0 => false,
            1 => &self.pts[0] == p,
            2 => on_segment(&self.pts[0], &self.pts[1], p),
            m => (0..m).all(|i| orient(&self.pts[i], &self.pts[(i + 1) % m], p) >= 0),
        }
    }

    /// Grows the hull to cover `p`. Points inside or on the current hull
    /// leave it untouched, so the vertex list stays minimal.
    pub fn insert(&mut self, p: Point2) {
        match self.pts.len() {
            0 => self.pts.push(p),
            1 => {
                if self.pts[0] != p {
                    self.pts.push(p);
                }
            }
            2 => self.insert_into_segment(p),
            _ => self.insert_into_polygon(p),
        }
    }

    fn insert_into_segment(&mut self, p: Point2) {
        let (a, b) = (&self.pts[0], &self.pts[1]);
        match orient(a, b, &p) {
            1 => self.pts.push(p),
            -1 => self.pts.insert(1, p),
            _ => {
                // collinear: extend the span if p falls outside it
                let w = b - a;
                let t = (&p - a).dot(&w);
                if t.sign() < 0 {
                    self.pts[0] = p;
                } else if (&t - &w.norm_sq()).sign() > 0 {
                    self.pts[1] = p;
                }
            }
        }
    }

    fn insert_into_polygon(&mut self, p: Point2) {
        let m = self.pts.len();
        // An edge is treated as visible when p is strictly outside it, or on
        // its line but beyond its span; the latter folds soon-to-be-collinear
        // vertices into the replaced arc.
        let visible: Vec<bool> = (0..m)
            .map(|i| {
                let a = &self.pts[i];
                let b = &self.pts[(i + 1) % m];
                match orient(a, b, &p) {
                    -1 => true,
                    1 => false,
                    _ => !on_segment(a, b, &p),
                }
            })
            .collect();
        if visible.iter().all(|&v| !v) {
            return; // inside or on the boundary
        }
        // Visible edges form one contiguous arc; replace its interior
        // vertices with p.
        let k = (0..m)
            .find(|&i| visible[i] && !visible[(i + m - 1) % m])
            .expect("exterior point sees a proper arc");
        let mut arc = 1;
        while visible[(k + arc) % m] {
            arc += 1;
        }
        let mut next = Vec::with_capacity(m - arc + 2);
        let mut idx = (k + arc) % m;
        loop {
            next.push(self.pts[idx].clone());
            if idx == k {
                break;
            }
            idx = (idx + 1) % m;
        }
        next.push(p);
        self.pts = next;
    }

    fn edges(&self) -> impl Iterator<Item = (&Point2, &Point2)> {
        let m = self.pts.len();
        let count = match m {
            0 | 1 => 0,
            2 => 1,
            _ => m,
        };
        (0..count).map(move |i| (&self.pts[i], &self.pts[(i + 1) % m]))
    }
}

/// Closed-intersection test between two hulls. Complete for convex sets:
/// either one contains a vertex of the other, or their boundaries cross.
pub fn hulls_intersect(a: &Hull, b: &Hull) -> bool {
    a.pts.iter().any(|p| b.contains(p))
        || b.pts.iter().any(|p| a.contains(p))
        || a.edges()
            .any(|(a1, a2)| b.edges().any(|(b1, b2)| closed_segments_meet(a1, a2, b1, b2)))
}

fn dist2(p: &Point2, q: &Point2) -> QuadScalar {
    (p - q).norm_sq()
}

fn closest_point_on_segment(a: &Point2, b: &Point2, p: &Point2) -> Point2 {
    let w = b - a;
    let num = (p - a).dot(&w);
    if num.sign() <= 0 {
        return a.clone();
    }
    let den = w.norm_sq();
    if (&num - &den).sign() >= 0 {
        return b.clone();
    }
    let t = &num / &den;
    a + &w.scale(&t)
}

fn closest_to_hull(p: &Point2, hull: &Hull) -> Point2 {
    if hull.len() == 1 {
        return hull.pts[0].clone();
    }
    let mut best: Option<(QuadScalar, Point2)> = None;
    for (a, b) in hull.edges() {
        let c = closest_point_on_segment(a, b, p);
        let d = dist2(p, &c);
        if best.as_ref().map_or(true, |(bd, _)| &d < bd) {
            best = Some((d, c));
        }
    }
    best.expect("hull is nonempty").1
}

/// Closest pair between two disjoint hulls. The minimum over vertex-to-hull
/// projections from both sides realizes the true set distance for convex
/// polygons.
pub fn closest_pair(left: &Hull, right: &Hull) -> (Point2, Point2) {
    let mut best: Option<(QuadScalar, Point2, Point2)> = None;
    let mut offer = |l: Point2, r: Point2| {
        let d = dist2(&l, &r);
        if best.as_ref().map_or(true, |(bd, _, _)| &d < bd) {
            best = Some((d, l, r));
        }
    };
    for v in &left.pts {
        let c = closest_to_hull(v, right);
        offer(v.clone(), c);
    }
    for v in &right.pts {
        let c = closest_to_hull(v, left);
        offer(c, v.clone());
    }
    let (_, l, r) = best.expect("both hulls are nonempty");
    (l, r)
}

/// A line strictly separating the two hulls: the perpendicular bisector of
/// their closest pair. Stored as the normal `u` (pointing left-to-right) and
/// the midpoint functional value `c`, so each side test is one dot product.
#[derive(Clone, Debug)]
struct Separator {
    u: Vector2,
    c: QuadScalar,
}

impl Separator {
    fn between(l: &Point2, r: &Point2) -> Self {
        let u = r - l;
        let two = QuadScalar::from_integer(2);
        let c = &(&dot_point(l, &u) + &dot_point(r, &u)) / &two;
        Separator { u, c }
    }

    fn admits_left(&self, p: &Point2) -> bool {
        (&dot_point(p, &self.u) - &self.c).sign() < 0
    }

    fn admits_right(&self, p: &Point2) -> bool {
        (&dot_point(p, &self.u) - &self.c).sign() > 0
    }
}

fn dot_point(p: &Point2, u: &Vector2) -> QuadScalar {
    &(&p.x * &u.x) + &(&p.y * &u.y)
}

/// The feasibility state of a corridor: left-endpoint hull, right-endpoint
/// hull, and a separating witness that certifies their disjointness.
#[derive(Clone, Debug)]
pub struct Window {
    left: Hull,
    right: Hull,
    sep: Separator,
}

impl Window {
    /// Window after the first portal. Its endpoints are distinct, so the
    /// window always opens.
    pub fn first(l: Point2, r: Point2) -> Window {
        assert!(l != r, "portal endpoints coincide");
        let sep = Separator::between(&l, &r);
        let mut left = Hull::new();
        left.insert(l);
        let mut right = Hull::new();
        right.insert(r);
        Window { left, right, sep }
    }

    /// Adds the next portal's endpoints. Returns `None` when the hulls meet,
    /// i.e. no transversal line survives.
    ///
    /// Fast path: if both new points land strictly on their own sides of the
    /// cached separator, the old certificate still proves disjointness.
    /// Otherwise the full intersection test runs and, on success, a fresh
    /// separator is cut between the updated hulls.
    pub fn extend(&self, l: Point2, r: Point2) -> Option<Window> {
        let witness_holds = self.sep.admits_left(&l) && self.sep.admits_right(&r);
        let mut next = Window {
            left: self.left.clone(),
            right: self.right.clone(),
            sep: self.sep.clone(),
        };
        next.left.insert(l);
        next.right.insert(r);
        if witness_holds {
            return Some(next);
        }
        if hulls_intersect(&next.left, &next.right) {
            return None;
        }
        let (cl, cr) = closest_pair(&next.left, &next.right);
        next.sep = Separator::between(&cl, &cr);
        Some(next)
    }

    pub fn left(&self) -> &Hull {
        &self.left
    }

    pub fn right(&self) -> &Hull {
        &self.right
    }
}
