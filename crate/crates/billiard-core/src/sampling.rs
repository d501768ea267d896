//! Randomized trajectory tracing. Samples genuine billiard orbits with
//! exact arithmetic and records the edge codes they produce; every sampled
//! word must also show up in the enumerated language, which makes sampling
//! an independent soundness check on the geometric pruning.

use crate::geom::Point2;
use crate::num::QuadScalar;
use crate::polygon::{Polygon, PolygonError};
use crate::word::Word;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SamplingError {
    #[error("gave up after {0} consecutive vertex hits; seed is degenerate")]
    RetryBudgetExhausted(u32),
}

#[derive(Clone, Copy, Debug)]
pub struct SampleOptions {
    pub trials: u64,
    pub seed: u64,
    pub threads: usize,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            trials: 1000,
            seed: 0,
            threads: 1,
        }
    }
}

const FRACTION_BITS: u32 = 12;
const VERTEX_RETRIES: u32 = 64;

/// Random rational strictly between 0 and 1, with denominator 2^20.
fn random_fraction(rng: &mut ChaCha8Rng) -> BigRational {
    let k = rng.gen_range(1u32..(1 << FRACTION_BITS));
    BigRational::new(BigInt::from(k), BigInt::from(1u32 << FRACTION_BITS))
}

fn edge_point(poly: &Polygon, edge: u8, t: BigRational) -> Point2 {
    let (a, b) = poly.edge(edge);
    a + &(b - a).scale(&QuadScalar::from_rational(t))
}

/// One exact trace: start at a random interior point of a random edge, aim
/// at a random interior point of a different edge (such a chord always
/// points strictly inward on a convex table), and follow `len` bounces.
/// Returns None when the orbit runs into a vertex, where the flow is
/// undefined; the caller redraws.
fn trace(poly: &Polygon, len: usize, rng: &mut ChaCha8Rng) -> Option<Word> {
    let r = poly.sides();
    let start_edge = rng.gen_range(0..r);
    let target_edge = (start_edge + rng.gen_range(1..r)) % r;
    let mut pos = edge_point(poly, start_edge, random_fraction(rng));
    let target = edge_point(poly, target_edge, random_fraction(rng));
    let mut dir = &target - &pos;
    let mut current = start_edge;
    let mut letters = Vec::with_capacity(len);

    for _ in 0..len {
        // The ray leaves the table through exactly one boundary point, so
        // sign tests alone find the exit edge: its endpoints straddle the
        // ray line and the crossing parameter is positive. An endpoint on
        // the ray ahead of us is that unique exit point, hence a vertex
        // hit. Only the winning edge pays for a division.
        let mut exit_edge = None;
        for e in 0..r {
            if e == current {
                continue;
            }
            let (a, b) = poly.edge(e);
            let ca = dir.cross(&(a - &pos)).sign();
            let cb = dir.cross(&(b - &pos)).sign();
            if ca == 0 || cb == 0 {
                debug_assert!(ca != 0 || cb != 0, "chord cannot run along an edge");
                let v = if ca == 0 { a } else { b };
                if dir.dot(&(v - &pos)).sign() > 0 {
                    return None;
                }
                continue;
            }
            if ca != cb {
                let along = b - a;
                let ahead = (a - &pos).cross(&along).sign() * dir.cross(&along).sign();
                if ahead > 0 {
                    exit_edge = Some(e);
                    break;
                }
            }
        }
        let e = exit_edge.expect("an inward ray always exits a convex table");
        let (a, b) = poly.edge(e);
        let along = b - a;
        let s = (a - &pos).cross(&along) / dir.cross(&along);
        pos = &pos + &dir.scale(&s);
        dir = poly.reflection(e).apply_vector(&dir);
        letters.push(e);
        current = e;
    }
    Some(Word::from_letters(letters))
}

/// Seed for trial `index`, independent of how trials are split over threads.
fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    ChaCha8Rng::seed_from_u64(z ^ (z >> 31))
}

/// Traces `opts.trials` random orbits of `len` bounces and collects the
/// distinct words they spell. Deterministic in (seed, trials, len) no
/// matter how many threads run the trials.
pub fn sample_words(
    poly: &Polygon,
    len: usize,
    opts: &SampleOptions,
) -> Result<BTreeSet<Word>, SamplingError> {
    assert!(len >= 1 && opts.trials >= 1);
    let threads = opts.threads.max(1).min(opts.trials as usize);

    let run_range = |lo: u64, hi: u64| -> Result<BTreeSet<Word>, SamplingError> {
        let mut words = BTreeSet::new();
        for trial in lo..hi {
            let mut redraws = 0;
            loop {
                // Redraw streams stay disjoint from trial streams by offset.
                let mut rng = trial_rng(opts.seed, trial + (redraws as u64 + 1) * (1 << 48));
                match trace(poly, len, &mut rng) {
                    Some(word) => {
                        words.insert(word);
                        break;
                    }
                    None => {
                        redraws += 1;
                        if redraws > VERTEX_RETRIES {
                            return Err(SamplingError::RetryBudgetExhausted(VERTEX_RETRIES));
                        }
                    }
                }
            }
        }
        Ok(words)
    };

    if threads == 1 {
        return run_range(0, opts.trials);
    }
    let chunk = opts.trials.div_ceil(threads as u64);
    let partials: Vec<Result<BTreeSet<Word>, SamplingError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads as u64)
            .map(|t| {
                let lo = t * chunk;
                let hi = ((t + 1) * chunk).min(opts.trials);
                scope.spawn(move || run_range(lo, hi))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sampler panicked")).collect()
    });
    let mut words = BTreeSet::new();
    for partial in partials {
        words.extend(partial?);
    }
    Ok(words)
}

/// Convex quadrilateral with rational vertices, reproducible from a seed:
/// jitters the unit square's corners until the result is strictly convex.
pub fn random_convex_quadrilateral(seed: u64) -> Polygon {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        // Small integer vertices keep the exact arithmetic cheap downstream:
        // unfolding compositions grow digits per reflection, and the growth
        // rate is set by the coordinate height chosen here.
        let corners = [(0, 0), (8, 0), (8, 8), (0, 8)];
        let vertices: Vec<Point2> = corners
            .iter()
            .map(|&(x, y)| {
                let mut coord =
                    |base: i64| QuadScalar::from_integer(base + rng.gen_range(-2..=2i64));
                Point2::new(coord(x), coord(y))
            })
            .collect();
        match Polygon::new(vertices) {
            Ok(poly) => return poly,
            Err(PolygonError::NonConvex(_) | PolygonError::CollinearVertices(..)) => continue,
            Err(e) => unreachable!("jittered square cannot fail with {e}"),
        }
    }
}
