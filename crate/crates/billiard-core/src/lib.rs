//! Exact computational kernel for billiards in convex polygons.
//!
//! Everything here runs over the real quadratic field `Q(sqrt(d))` with
//! arbitrary-precision rational coefficients, so every predicate (orientation,
//! feasibility, diagonal counting) is decided exactly. The main entry points:
//!
//! * [`polygon::Polygon`]: validated strictly convex tables, a small catalog,
//!   and a plain-text file format.
//! * [`language::enumerate_language`]: the coding language of the billiard
//!   map, counted or stored level by level via unfolding corridors.
//! * [`diagonal::enumerate_diagonals`]: oriented vertex-to-vertex orbit
//!   segments and the cumulative counting function they induce.
//! * [`lattice`]: Möbius-sieve lattice counts and the cubic growth constants
//!   for the three classical tiling tables.

pub mod corridor;
pub mod diagonal;
pub mod geom;
pub mod language;
pub mod lattice;
pub mod num;
pub mod polygon;
pub mod sampling;
pub mod window;
pub mod word;

pub use geom::{orient, reflect_across, AffineIsometry, Point2, Segment, Vector2};
pub use num::QuadScalar;
pub use polygon::{CatalogEntry, Polygon};
pub use word::Word;
