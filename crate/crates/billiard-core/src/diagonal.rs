//! Oriented generalized diagonals: vertex-to-vertex orbit segments,
//! enumerated exactly by sweeping a direction wedge through unfolded
//! corridors. Counting them per link number yields N_c, the other half of
//! the complexity identity p(n) = Σ_{j<n} N_c(j).

use crate::corridor::Unfolding;
use crate::geom::{orient, Point2, Vector2};
use crate::language::{
    bispecial_words, enumerate_language, extension_counts, EnumMode, EnumOptions, LanguageError,
};
use crate::polygon::Polygon;
use crate::word::Word;
use std::sync::atomic::{AtomicU64, Ordering};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagonalError {
    #[error("diagonal search exceeded the node budget of {0}")]
    CapExceeded(u64),
    #[error("word {0:?} is not bispecial")]
    NotBispecial(Word),
    #[error(transparent)]
    Language(#[from] LanguageError),
}

/// Open cone of directions at a fixed apex, spanning strictly less than a
/// half turn. Invariant: cross(lo, hi) > 0; the feasible set is the open
/// sector strictly between `lo` and `hi`.
#[derive(Clone, Debug)]
struct Wedge {
    lo: Vector2,
    hi: Vector2,
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

impl Wedge {
    /// Interior directions at vertex `i`: strictly between the edges into
    /// the two neighbouring vertices.
    fn at_vertex(poly: &Polygon, i: usize) -> Wedge {
        let r = poly.sides() as usize;
        let v = poly.vertex(i);
        Wedge {
            lo: poly.vertex((i + 1) % r) - v,
            hi: poly.vertex((i + r - 1) % r) - v,
        }
    }

    fn contains_strictly(&self, u: &Vector2) -> bool {
        self.lo.cross(u).sign() > 0 && u.cross(&self.hi).sign() > 0
    }

    /// Intersects with the open half-plane of directions passing the portal
    /// endpoint whose offset from the apex is `axis`: left endpoints must
    /// lie left of the ray, right endpoints right. The cut boundary is the
    /// line spanned by `axis` itself, so clipping never grows coordinates.
    fn clipped(&self, axis: &Vector2, side: Side) -> Option<Wedge> {
        debug_assert!(!axis.is_zero(), "degenerate portal endpoint");
        let eval = |t: &Vector2| match side {
            Side::Left => t.cross(axis).sign(),
            Side::Right => axis.cross(t).sign(),
        };
        let on_boundary_inside = || {
            if self.contains_strictly(axis) {
                axis.clone()
            } else {
                let flipped = -axis;
                debug_assert!(self.contains_strictly(&flipped));
                flipped
            }
        };
        match (eval(&self.lo), eval(&self.hi)) {
            (0, 0) => unreachable!("wedge bounds are never parallel"),
            (slo, shi) if slo >= 0 && shi >= 0 => Some(self.clone()),
            (slo, shi) if slo > 0 && shi < 0 => Some(Wedge {
                lo: self.lo.clone(),
                hi: on_boundary_inside(),
            }),
            (slo, shi) if slo < 0 && shi > 0 => Some(Wedge {
                lo: on_boundary_inside(),
                hi: self.hi.clone(),
            }),
            _ => None,
        }
    }
}

/// One oriented diagonal: start vertex index, bounce code, and the
/// straightened endpoint in the unfolded plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalRecord {
    pub start: u8,
    pub word: Word,
    pub end: Point2,
}

impl DiagonalRecord {
    pub fn links(&self) -> usize {
        self.word.len() + 1
    }
}

/// Exact per-link counts with the convention that the zero-link count is
/// the number of vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalTable {
    sides: u8,
    exact: Vec<u64>,
}

impl DiagonalTable {
    pub fn max_links(&self) -> usize {
        self.exact.len() - 1
    }

    /// Number of oriented diagonals with exactly `j` links, j ≥ 1.
    pub fn exact_links(&self, j: usize) -> u64 {
        assert!(j >= 1 && j <= self.max_links());
        self.exact[j]
    }

    /// Cumulative count with links ≤ n, seeded with the vertex count at 0.
    pub fn nc(&self, n: usize) -> u64 {
        assert!(n <= self.max_links());
        self.sides as u64 + self.exact[1..=n].iter().sum::<u64>()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DiagonalOptions {
    pub threads: usize,
    /// Search-node budget; exceeding it aborts with an error.
    pub max_nodes: u64,
    pub keep_records: bool,
}

impl Default for DiagonalOptions {
    fn default() -> Self {
        DiagonalOptions {
            threads: 1,
            max_nodes: 10_000_000,
            keep_records: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DiagonalCensus {
    pub table: DiagonalTable,
    /// Present when requested; ordered by start vertex, then word.
    pub records: Option<Vec<DiagonalRecord>>,
}

struct BeamWalker<'a> {
    poly: &'a Polygon,
    start: u8,
    apex: &'a Point2,
    max_depth: usize,
    counts: Vec<u64>,
    records: Option<Vec<DiagonalRecord>>,
    visited: &'a AtomicU64,
    cap: u64,
}

impl BeamWalker<'_> {
    /// A diagonal ends at an unfolded vertex whose offset from the apex
    /// lies strictly inside the wedge: strictness forces the segment across
    /// every portal in order, clear of all portal endpoints, so it meets no
    /// unfolded vertex before its own endpoint.
    fn record_ends(
        &mut self,
        letters: &[u8],
        frame: &Unfolding,
        wedge: &Wedge,
        last_portal: Option<&(Point2, Point2)>,
    ) {
        let links = letters.len();
        for q in 0..self.poly.sides() {
            let end = frame.apply(self.poly.vertex(q as usize));
            let u = &end - self.apex;
            if u.is_zero() || !wedge.contains_strictly(&u) {
                continue;
            }
            if let Some((l, r)) = last_portal {
                debug_assert!(
                    orient(l, r, self.apex) as i32 * orient(l, r, &end) as i32 == -1,
                    "endpoint must lie past the last portal"
                );
            }
            self.counts[links + 1] += 1;
            if let Some(records) = &mut self.records {
                records.push(DiagonalRecord {
                    start: self.start,
                    word: Word::from_letters(letters.to_vec()),
                    end,
                });
            }
        }
    }

    fn visit(
        &mut self,
        letters: &mut Vec<u8>,
        frame: &Unfolding,
        wedge: &Wedge,
        last_portal: Option<&(Point2, Point2)>,
    ) -> Result<(), DiagonalError> {
        if self.visited.fetch_add(1, Ordering::Relaxed) >= self.cap {
            return Err(DiagonalError::CapExceeded(self.cap));
        }
        self.record_ends(letters, frame, wedge, last_portal);
        if letters.len() == self.max_depth {
            return Ok(());
        }
        for letter in 0..self.poly.sides() {
            if letters.last() == Some(&letter) {
                continue;
            }
            let portal = frame.portal(self.poly, letter);
            let to_left = &portal.0 - self.apex;
            let to_right = &portal.1 - self.apex;
            if to_left.is_zero() || to_right.is_zero() {
                // The apex sits on this unfolded edge; nothing crosses it.
                continue;
            }
            let Some(narrowed) = wedge
                .clipped(&to_left, Side::Left)
                .and_then(|w| w.clipped(&to_right, Side::Right))
            else {
                continue;
            };
            let next = frame.after(self.poly, letter);
            letters.push(letter);
            self.visit(letters, &next, &narrowed, Some(&portal))?;
            letters.pop();
        }
        Ok(())
    }
}

/// Counts every oriented generalized diagonal with at most `max_links`
/// links: a depth-first sweep per start vertex, narrowing the direction
/// wedge at each crossed edge and reading off unfolded vertices that fall
/// strictly inside it. Parallel over start vertices; the merge keeps
/// vertex-index order, so output is deterministic.
pub fn enumerate_diagonals(
    poly: &Polygon,
    max_links: usize,
    opts: &DiagonalOptions,
) -> Result<DiagonalCensus, DiagonalError> {
    assert!(max_links >= 1);
    let r = poly.sides();
    let visited = AtomicU64::new(0);

    let run_vertex = |start: u8| -> Result<BeamWalker, DiagonalError> {
        let mut walker = BeamWalker {
            poly,
            start,
            apex: poly.vertex(start as usize),
            max_depth: max_links - 1,
            counts: vec![0; max_links + 1],
            records: opts.keep_records.then(Vec::new),
            visited: &visited,
            cap: opts.max_nodes,
        };
        let wedge = Wedge::at_vertex(poly, start as usize);
        let mut letters = Vec::with_capacity(walker.max_depth);
        walker.visit(&mut letters, &Unfolding::identity(), &wedge, None)?;
        Ok(walker)
    };

    let workers = opts.threads.clamp(1, r as usize);
    let results: Vec<Result<BeamWalker, DiagonalError>> = if workers == 1 {
        (0..r).map(run_vertex).collect()
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..r)
                .map(|start| scope.spawn(move || run_vertex(start)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("walker panicked")).collect()
        })
    };

    let mut exact = vec![0u64; max_links + 1];
    let mut records = opts.keep_records.then(Vec::new);
    for res in results {
        let walker = res?;
        for j in 1..=max_links {
            exact[j] += walker.counts[j];
        }
        if let (Some(all), Some(mut mine)) = (records.as_mut(), walker.records) {
            all.append(&mut mine);
        }
    }
    Ok(DiagonalCensus {
        table: DiagonalTable { sides: r, exact },
        records,
    })
}

/// Number of oriented diagonals whose code is exactly `word` (they have
/// |word| + 1 links). Words outside the language simply have none.
pub fn gd(poly: &Polygon, word: &Word) -> u64 {
    let r = poly.sides();
    if !word.is_locally_admissible(r) {
        return 0;
    }
    let mut total = 0;
    for start in 0..r {
        let apex = poly.vertex(start as usize);
        let mut wedge = Wedge::at_vertex(poly, start as usize);
        let mut frame = Unfolding::identity();
        let mut last_portal = None;
        let mut dead = false;
        for &letter in word.letters() {
            let portal = frame.portal(poly, letter);
            let to_left = &portal.0 - apex;
            let to_right = &portal.1 - apex;
            let narrowed = if to_left.is_zero() || to_right.is_zero() {
                None
            } else {
                wedge
                    .clipped(&to_left, Side::Left)
                    .and_then(|w| w.clipped(&to_right, Side::Right))
            };
            match narrowed {
                Some(w) => wedge = w,
                None => {
                    dead = true;
                    break;
                }
            }
            frame = frame.after(poly, letter);
            last_portal = Some(portal);
        }
        if dead {
            continue;
        }
        for q in 0..r {
            let end = frame.apply(poly.vertex(q as usize));
            let u = &end - apex;
            if u.is_zero() || !wedge.contains_strictly(&u) {
                continue;
            }
            if let Some((l, rp)) = &last_portal {
                debug_assert!(orient(l, rp, apex) as i32 * orient(l, rp, &end) as i32 == -1);
            }
            total += 1;
        }
    }
    total
}

/// The index of a bispecial word: one less than each one-sided extension
/// count, together with its diagonal count.
pub fn index_of(poly: &Polygon, word: &Word) -> Result<(u64, u64, u64), DiagonalError> {
    let counts = extension_counts(poly, word)?;
    if !counts.is_bispecial() {
        return Err(DiagonalError::NotBispecial(word.clone()));
    }
    Ok((counts.m_l as u64 - 1, counts.m_r as u64 - 1, gd(poly, word)))
}

#[derive(Clone, Debug)]
pub struct CensusRow {
    pub n: usize,
    pub p: u64,
    pub nc_sum: u64,
}

impl CensusRow {
    pub fn holds(&self) -> bool {
        self.p == self.nc_sum
    }
}

#[derive(Clone, Debug)]
pub struct CensusReport {
    pub rows: Vec<CensusRow>,
}

impl CensusReport {
    pub fn ok(&self) -> bool {
        self.rows.iter().all(CensusRow::holds)
    }
}

/// Checks p(n) = Σ_{j<n} N_c(j) for 1 ≤ n ≤ n_max, with both sides computed
/// by independent machinery: the word enumerator never sees a vertex, the
/// diagonal sweep never counts a word.
pub fn verify_complexity_census(
    poly: &Polygon,
    n_max: usize,
    threads: usize,
    budget: u64,
) -> Result<CensusReport, DiagonalError> {
    assert!(n_max >= 1);
    let language = enumerate_language(
        poly,
        n_max,
        &EnumOptions {
            mode: EnumMode::Count,
            threads,
            max_words: budget,
        },
    )?;
    let census = enumerate_diagonals(
        poly,
        n_max.max(2) - 1,
        &DiagonalOptions {
            threads,
            max_nodes: budget,
            keep_records: false,
        },
    )?;
    let rows = (1..=n_max)
        .map(|n| {
            let nc_sum = (0..n).map(|j| census.table.nc(j)).sum();
            CensusRow {
                n,
                p: language.p(n),
                nc_sum,
            }
        })
        .collect();
    Ok(CensusReport { rows })
}

#[derive(Clone, Debug)]
pub struct CellRow {
    pub word: Word,
    pub m_l: usize,
    pub m_r: usize,
    pub m_b: usize,
    pub gd: u64,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct CellReport {
    pub n: usize,
    pub rows: Vec<CellRow>,
}

impl CellReport {
    pub fn ok(&self) -> bool {
        self.rows.iter().all(|r| r.ok)
    }
}

/// Euler-characteristic bookkeeping for the bispecial cell complex: every
/// nonempty word's cell is a disk, but the empty word's cell is the whole
/// phase annulus, which costs one extra face.
pub fn cell_constant(n: usize) -> i64 {
    if n == 0 {
        2
    } else {
        1
    }
}

/// For every bispecial word of length n, checks
/// m_b = (m_l − 1) + (m_r − 1) + gd + c with c the cell constant above.
pub fn verify_cell_identity(
    poly: &Polygon,
    n: usize,
    threads: usize,
    budget: u64,
) -> Result<CellReport, DiagonalError> {
    let language = enumerate_language(
        poly,
        n + 2,
        &EnumOptions {
            mode: EnumMode::Store,
            threads,
            max_words: budget,
        },
    )?;
    let rows = bispecial_words(&language, n)
        .into_iter()
        .map(|(word, c)| {
            let gd = gd(poly, &word);
            let lhs = c.m_b as i64;
            let rhs = (c.m_l as i64 - 1) + (c.m_r as i64 - 1) + gd as i64 + cell_constant(n);
            CellRow {
                word,
                m_l: c.m_l,
                m_r: c.m_r,
                m_b: c.m_b,
                gd,
                ok: lhs == rhs,
            }
        })
        .collect();
    Ok(CellReport { n, rows })
}
