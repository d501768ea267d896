//! Convex polygon tables with exact vertices.
//!
//! A table is a strictly convex polygon whose vertices live in a single real
//! quadratic field. Edges are labelled `0..r` in counterclockwise order, edge
//! `i` running from vertex `i` to vertex `i+1 mod r`. The reflection isometry
//! across each edge line is precomputed once since unfolding reuses them
//! constantly.

use crate::geom::{orient, reflect_across, AffineIsometry, Point2};
use crate::num::QuadScalar;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolygonError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertices {0} and {1} coincide")]
    RepeatedVertex(usize, usize),
    #[error("vertices {0}, {1}, {2} are collinear")]
    CollinearVertices(usize, usize, usize),
    #[error("vertex {0} makes a clockwise turn; vertices must wind counterclockwise")]
    NotCounterclockwise(usize),
    #[error("vertex {0} makes a reflex turn; the polygon is not convex")]
    NonConvex(usize),
    #[error("boundary self-intersects between edges {0} and {1}")]
    SelfIntersecting(usize, usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A strictly convex table, vertices counterclockwise.
#[derive(Clone, PartialEq, Eq)]
pub struct Polygon {
    vertices: Vec<Point2>,
    reflections: Vec<AffineIsometry>,
}

impl Polygon {
    /// Validates and canonicalizes `vertices`.
    ///
    /// Checks run cheapest first: vertex count, repeated vertices, collinear
    /// triples, turn direction at every corner (all clockwise reads as a
    /// winding error, a mix as non-convexity), and finally pairwise edge
    /// crossings. Strict convexity actually rules out self-intersection, so
    /// the last check only fires if the turn scan has a bug; it stays as a
    /// safety net. Accepted vertex lists are rotated so the lexicographically
    /// smallest vertex comes first, making equal shapes compare equal.
    pub fn new(vertices: Vec<Point2>) -> Result<Self, PolygonError> {
        let r = vertices.len();
        if r < 3 {
            return Err(PolygonError::TooFewVertices(r));
        }
        for i in 0..r {
            for j in (i + 1)..r {
                if vertices[i] == vertices[j] {
                    return Err(PolygonError::RepeatedVertex(i, j));
                }
            }
        }
        let mut turns = Vec::with_capacity(r);
        for i in 0..r {
            let a = &vertices[i];
            let b = &vertices[(i + 1) % r];
            let c = &vertices[(i + 2) % r];
            let o = orient(a, b, c);
            if o == 0 {
                return Err(PolygonError::CollinearVertices(i, (i + 1) % r, (i + 2) % r));
            }
            turns.push(o);
        }
        if turns.iter().all(|&o| o < 0) {
            return Err(PolygonError::NotCounterclockwise(0));
        }
        if let Some(i) = turns.iter().position(|&o| o < 0) {
            // corner at vertex i+1 is the reflex one
            return Err(PolygonError::NonConvex((i + 1) % r));
        }
        for i in 0..r {
            for j in (i + 1)..r {
                // adjacent edges share exactly the common vertex; skip them
                if j == i + 1 || (i == 0 && j == r - 1) {
                    continue;
                }
                let e1 = crate::geom::Segment::new(
                    vertices[i].clone(),
                    vertices[(i + 1) % r].clone(),
                );
                let e2 = crate::geom::Segment::new(
                    vertices[j].clone(),
                    vertices[(j + 1) % r].clone(),
                );
                if crate::geom::segments_intersect(&e1, &e2) {
                    return Err(PolygonError::SelfIntersecting(i, j));
                }
            }
        }

        let start = (0..r)
            .min_by(|&i, &j| {
                let (p, q) = (&vertices[i], &vertices[j]);
                p.x.cmp(&q.x).then_with(|| p.y.cmp(&q.y))
            })
            .expect("nonempty");
        let mut rotated = Vec::with_capacity(r);
        rotated.extend_from_slice(&vertices[start..]);
        rotated.extend_from_slice(&vertices[..start]);

        let reflections = (0..r)
            .map(|i| {
                reflect_across(&rotated[i], &rotated[(i + 1) % r])
                    .expect("validated edges are nondegenerate")
            })
            .collect();
        Ok(Polygon {
            vertices: rotated,
            reflections,
        })
    }

    /// Number of sides.
    pub fn sides(&self) -> u8 {
        self.vertices.len() as u8
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point2 {
        &self.vertices[i % self.vertices.len()]
    }

    /// Endpoints of edge `i`, counterclockwise: (vertex i, vertex i+1).
    pub fn edge(&self, i: u8) -> (&Point2, &Point2) {
        let r = self.vertices.len();
        let i = i as usize % r;
        (&self.vertices[i], &self.vertices[(i + 1) % r])
    }

    /// Reflection isometry across the line carrying edge `i`.
    pub fn reflection(&self, i: u8) -> &AffineIsometry {
        &self.reflections[i as usize % self.reflections.len()]
    }

    /// Largest square-free radicand appearing in any coordinate, 0 when the
    /// table is rational.
    pub fn field_radicand(&self) -> u64 {
        self.vertices
            .iter()
            .flat_map(|p| [p.x.radicand(), p.y.radicand()])
            .max()
            .unwrap_or(0)
    }

    /// Edge labels adjacent to vertex `i` (the two edges meeting there).
    pub fn edges_at_vertex(&self, i: usize) -> (u8, u8) {
        let r = self.vertices.len();
        (((i + r - 1) % r) as u8, (i % r) as u8)
    }

    /// Strict interior test; boundary points report false.
    pub fn contains_interior(&self, p: &Point2) -> bool {
        let r = self.vertices.len();
        (0..r).all(|i| orient(&self.vertices[i], &self.vertices[(i + 1) % r], p) > 0)
    }

    /// Serializes in the `QFIELD`/`V` line format understood by [`Polygon::from_str`].
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        let d = self.field_radicand();
        if d != 0 {
            out.push_str(&format!("QFIELD {d}\n"));
        }
        for v in &self.vertices {
            out.push_str(&format!("V {} {}\n", v.x, v.y));
        }
        out
    }
}

impl fmt::Debug for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polygon[{} sides]", self.vertices.len())
    }
}

/// Text format: optional `# comment` lines, an optional `QFIELD <d>` header,
/// then one `V <x> <y>` line per vertex in counterclockwise order. Coordinates
/// use the scalar syntax of [`QuadScalar`], e.g. `1/2+3/2*sqrt(2)`.
impl FromStr for Polygon {
    type Err = PolygonError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut declared_d: Option<u64> = None;
        let mut vertices = Vec::new();
        for (idx, raw) in s.lines().enumerate() {
            let line = idx + 1;
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let mut parts = t.split_whitespace();
            match parts.next() {
                Some("QFIELD") => {
                    if !vertices.is_empty() || declared_d.is_some() {
                        return Err(PolygonError::Parse {
                            line,
                            msg: "QFIELD must appear once, before any vertex".into(),
                        });
                    }
                    let tok = parts.next().ok_or(PolygonError::Parse {
                        line,
                        msg: "QFIELD needs a radicand".into(),
                    })?;
                    let d: u64 = tok.parse().map_err(|_| PolygonError::Parse {
                        line,
                        msg: format!("bad radicand {tok:?}"),
                    })?;
                    if d < 2 || !crate::num::is_square_free(d) {
                        return Err(PolygonError::Parse {
                            line,
                            msg: format!("radicand {d} must be square-free and at least 2"),
                        });
                    }
                    declared_d = Some(d);
                }
                Some("V") => {
                    let mut coord = |what: &str| -> Result<QuadScalar, PolygonError> {
                        let tok = parts.next().ok_or_else(|| PolygonError::Parse {
                            line,
                            msg: format!("vertex line is missing {what}"),
                        })?;
                        QuadScalar::from_str(tok).map_err(|e| PolygonError::Parse {
                            line,
                            msg: format!("bad {what} {tok:?}: {e}"),
                        })
                    };
                    let x = coord("x")?;
                    let y = coord("y")?;
                    vertices.push(Point2 { x, y });
                }
                Some(other) => {
                    return Err(PolygonError::Parse {
                        line,
                        msg: format!("unknown directive {other:?}"),
                    });
                }
                None => unreachable!("blank lines were skipped"),
            }
            if let Some(extra) = parts.next() {
                return Err(PolygonError::Parse {
                    line,
                    msg: format!("trailing token {extra:?}"),
                });
            }
        }
        if let Some(d) = declared_d {
            for (i, v) in vertices.iter().enumerate() {
                for c in [&v.x, &v.y] {
                    let rd = c.radicand();
                    if rd != 0 && rd != d {
                        return Err(PolygonError::Parse {
                            line: 0,
                            msg: format!("vertex {i} uses sqrt({rd}) but QFIELD declares {d}"),
                        });
                    }
                }
            }
        }
        Polygon::new(vertices)
    }
}

/// Built-in tables used throughout the test corpus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogEntry {
    /// Unit square.
    Square,
    /// Equilateral triangle with unit side.
    Equilateral,
    /// Right isosceles triangle (legs 1, hypotenuse sqrt 2).
    RightIsosceles,
    /// Half of an equilateral triangle: angles pi/2, pi/3, pi/6.
    HalfEquilateral,
}

impl CatalogEntry {
    pub const ALL: [CatalogEntry; 4] = [
        CatalogEntry::Square,
        CatalogEntry::Equilateral,
        CatalogEntry::RightIsosceles,
        CatalogEntry::HalfEquilateral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CatalogEntry::Square => "square",
            CatalogEntry::Equilateral => "equilateral",
            CatalogEntry::RightIsosceles => "right-isosceles",
            CatalogEntry::HalfEquilateral => "half-equilateral",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|e| e.name() == name)
    }

    pub fn polygon(self) -> Polygon {
        let q = |n: i64, den: i64| QuadScalar::from_ratio(n, den);
        let pt = |x: QuadScalar, y: QuadScalar| Point2 { x, y };
        let verts = match self {
            CatalogEntry::Square => vec![
                pt(q(0, 1), q(0, 1)),
                pt(q(1, 1), q(0, 1)),
                pt(q(1, 1), q(1, 1)),
                pt(q(0, 1), q(1, 1)),
            ],
            CatalogEntry::Equilateral => vec![
                pt(q(0, 1), q(0, 1)),
                pt(q(1, 1), q(0, 1)),
                pt(q(1, 2), QuadScalar::sqrt_term(1, 2, 3)),
            ],
            CatalogEntry::RightIsosceles => vec![
                pt(q(0, 1), q(0, 1)),
                pt(q(1, 1), q(0, 1)),
                pt(q(0, 1), q(1, 1)),
            ],
            CatalogEntry::HalfEquilateral => vec![
                pt(q(0, 1), q(0, 1)),
                pt(q(1, 2), q(0, 1)),
                pt(q(0, 1), QuadScalar::sqrt_term(1, 2, 3)),
            ],
        };
        Polygon::new(verts).expect("catalog shapes are valid")
    }
}
