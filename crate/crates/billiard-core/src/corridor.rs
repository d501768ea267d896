//! Unfolding machinery: instead of reflecting a trajectory at each wall, the
//! table is reflected and the trajectory goes straight. A word then maps to a
//! chain of polygon copies glued along portal edges, and the word is feasible
//! exactly when some straight line threads every portal interior.

use crate::geom::{AffineIsometry, Point2};
use crate::polygon::Polygon;
use crate::window::Window;
use crate::word::Word;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CorridorError {
    #[error("edge label {0} is outside the alphabet of a {1}-gon")]
    LetterOutOfRange(u8, u8),
    #[error("edge {0} repeated; a chord cannot return to the side it left")]
    RepeatedLetter(u8),
}

/// Running composition of edge reflections: the frame mapping the next
/// polygon copy into the plane of the original table.
#[derive(Clone, Debug)]
pub struct Unfolding {
    frame: AffineIsometry,
    reflections: usize,
}

impl Unfolding {
    pub fn identity() -> Self {
        Unfolding {
            frame: AffineIsometry::identity(),
            reflections: 0,
        }
    }

    /// True when the frame reverses orientation (odd number of reflections).
    pub fn flips(&self) -> bool {
        self.reflections % 2 == 1
    }

    pub fn apply(&self, p: &Point2) -> Point2 {
        self.frame.apply(p)
    }

    /// Endpoints of edge `letter`'s image under the current frame, split by
    /// side relative to the direction of travel through the corridor.
    ///
    /// The model edge runs counterclockwise, so a trajectory leaving the
    /// table through it has the edge's head on its left; each reflection
    /// swaps the roles.
    pub fn portal(&self, poly: &Polygon, letter: u8) -> (Point2, Point2) {
        let (tail, head) = poly.edge(letter);
        let (ft, fh) = (self.apply(tail), self.apply(head));
        if self.flips() {
            (ft, fh)
        } else {
            (fh, ft)
        }
    }

    /// Frame for the copy reached by crossing edge `letter`.
    pub fn after(&self, poly: &Polygon, letter: u8) -> Unfolding {
        Unfolding {
            frame: self.frame.compose(poly.reflection(letter)),
            reflections: self.reflections + 1,
        }
    }
}

/// A word together with its unfolded geometry and feasibility window.
/// Corridors are immutable; `extended` produces the child, which makes
/// depth-first search over words a matter of keeping a stack of them.
#[derive(Clone, Debug)]
pub struct Corridor {
    letters: Vec<u8>,
    unfolding: Unfolding,
    window: Option<Window>,
    portals: Vec<(Point2, Point2)>,
}

impl Corridor {
    /// The empty word: every direction is admissible.
    pub fn start() -> Self {
        Corridor {
            letters: Vec::new(),
            unfolding: Unfolding::identity(),
            window: None,
            portals: Vec::new(),
        }
    }

    /// Crosses one more edge. `Ok(None)` means the extended word is
    /// infeasible (its window closed); errors flag locally inadmissible
    /// input rather than geometric failure.
    pub fn extended(&self, poly: &Polygon, letter: u8) -> Result<Option<Corridor>, CorridorError> {
        if letter >= poly.sides() {
            return Err(CorridorError::LetterOutOfRange(letter, poly.sides()));
        }
        if self.letters.last() == Some(&letter) {
            return Err(CorridorError::RepeatedLetter(letter));
        }
        let (l, r) = self.unfolding.portal(poly, letter);
        let window = match &self.window {
            None => Some(Window::first(l.clone(), r.clone())),
            Some(w) => w.extend(l.clone(), r.clone()),
        };
        let Some(window) = window else {
            return Ok(None);
        };
        let mut letters = Vec::with_capacity(self.letters.len() + 1);
        letters.extend_from_slice(&self.letters);
        letters.push(letter);
        let mut portals = Vec::with_capacity(self.portals.len() + 1);
        portals.extend_from_slice(&self.portals);
        portals.push((l, r));
        Ok(Some(Corridor {
            letters,
            unfolding: self.unfolding.after(poly, letter),
            window: Some(window),
            portals,
        }))
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn word(&self) -> Word {
        Word::from_letters(self.letters.clone())
    }

    /// Per-step portal endpoints as (left, right) of the travel direction.
    pub fn portals(&self) -> &[(Point2, Point2)] {
        &self.portals
    }

    /// Frame of the copy beyond the last portal.
    pub fn unfolding(&self) -> &Unfolding {
        &self.unfolding
    }

    /// Walks a whole word from scratch. `Ok(Some)` iff feasible.
    pub fn along(poly: &Polygon, word: &Word) -> Result<Option<Corridor>, CorridorError> {
        let mut cur = Corridor::start();
        for &letter in word.letters() {
            match cur.extended(poly, letter)? {
                Some(next) => cur = next,
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }
}
