//! The coding language of a table: depth-first enumeration of all feasible
//! words with window pruning, complexity counts, and extension statistics.

use crate::corridor::{Corridor, CorridorError};
use crate::polygon::Polygon;
use crate::word::Word;
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LanguageError {
    #[error("enumeration exceeded the word cap of {0}")]
    CapExceeded(u64),
    #[error("word {0:?} uses a letter outside the alphabet")]
    LetterOutOfRange(Word),
    #[error("word {0:?} is not in the language")]
    NotInLanguage(Word),
}

/// Whether the enumerator keeps the words or only their counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumMode {
    Count,
    Store,
}

#[derive(Clone, Debug)]
pub struct EnumOptions {
    pub mode: EnumMode,
    pub threads: usize,
    /// Upper bound on the total number of words visited, across all levels.
    /// Hitting it aborts with an error; no partial table is ever returned.
    pub max_words: u64,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            mode: EnumMode::Count,
            threads: 1,
            max_words: 10_000_000,
        }
    }
}

/// Complexity table, with the convention p(0) = 0 even though the empty word
/// is a word: level zero carries no information and the difference identity
/// is only ever applied from n = 1 up.
#[derive(Clone, Debug)]
pub struct LanguageTable {
    p: Vec<u64>,
    levels: Option<Vec<Vec<Word>>>,
}

impl LanguageTable {
    pub fn max_n(&self) -> usize {
        self.p.len() - 1
    }

    /// Number of length-`n` words; p(0) = 0 by convention.
    pub fn p(&self, n: usize) -> u64 {
        self.p[n]
    }

    /// First difference s(n) = p(n+1) − p(n); defined for 1 ≤ n < max_n.
    pub fn s(&self, n: usize) -> Option<u64> {
        if n == 0 || n + 1 > self.max_n() {
            return None;
        }
        Some(self.p[n + 1] - self.p[n])
    }

    /// Sorted length-`n` slice, available in store mode.
    pub fn level(&self, n: usize) -> Option<&[Word]> {
        self.levels.as_ref().map(|ls| ls[n].as_slice())
    }
}

struct Walker<'a> {
    poly: &'a Polygon,
    max_n: usize,
    store: bool,
    counts: Vec<u64>,
    levels: Vec<Vec<Word>>,
    visited: &'a AtomicU64,
    cap: u64,
}

impl Walker<'_> {
    fn visit(&mut self, corridor: &Corridor) -> Result<(), LanguageError> {
        if self.visited.fetch_add(1, Ordering::Relaxed) >= self.cap {
            return Err(LanguageError::CapExceeded(self.cap));
        }
        let depth = corridor.len();
        self.counts[depth] += 1;
        if self.store {
            self.levels[depth].push(corridor.word());
        }
        if depth == self.max_n {
            return Ok(());
        }
        for letter in 0..self.poly.sides() {
            if corridor.letters().last() == Some(&letter) {
                continue;
            }
            let child = corridor
                .extended(self.poly, letter)
                .expect("letters stay inside the alphabet");
            if let Some(child) = child {
                self.visit(&child)?;
            }
        }
        Ok(())
    }
}

/// Enumerates L(1)..L(max_n) exactly. Letters are explored in increasing
/// order, so stored levels come out lexicographically sorted. The search
/// parallelizes over contiguous first-letter ranges; merging the per-worker
/// results in range order keeps the output identical to a sequential run.
pub fn enumerate_language(
    poly: &Polygon,
    max_n: usize,
    opts: &EnumOptions,
) -> Result<LanguageTable, LanguageError> {
    assert!(max_n >= 1, "enumeration needs at least one level");
    let r = poly.sides();
    let store = opts.mode == EnumMode::Store;
    let visited = AtomicU64::new(0);
    let workers = opts.threads.clamp(1, r as usize);

    // Contiguous first-letter chunks, at most one letter difference in size.
    let mut chunks: Vec<Vec<u8>> = vec![Vec::new(); workers];
    for letter in 0..r {
        chunks[letter as usize * workers / r as usize].push(letter);
    }

    let run_chunk = |letters: &[u8]| -> Result<Walker, LanguageError> {
        let mut walker = Walker {
            poly,
            max_n,
            store,
            counts: vec![0; max_n + 1],
            levels: vec![Vec::new(); max_n + 1],
            visited: &visited,
            cap: opts.max_words,
        };
        let root = Corridor::start();
        for &letter in letters {
            let child = root
                .extended(poly, letter)
                .expect("first letters are in range")
                .expect("every single letter is feasible");
            walker.visit(&child)?;
        }
        Ok(walker)
    };

    let results: Vec<Result<Walker, LanguageError>> = if workers == 1 {
        vec![run_chunk(&chunks[0])]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .iter()
                .map(|chunk| scope.spawn(|| run_chunk(chunk)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        })
    };

    let mut p = vec![0u64; max_n + 1];
    let mut levels: Vec<Vec<Word>> = vec![Vec::new(); max_n + 1];
    for res in results {
        let walker = res?;
        for n in 1..=max_n {
            p[n] += walker.counts[n];
        }
        if store {
            for (n, mut chunk_words) in walker.levels.into_iter().enumerate() {
                levels[n].append(&mut chunk_words);
            }
        }
    }
    p[0] = 0;
    if store {
        levels[0].push(Word::empty());
    }
    Ok(LanguageTable {
        p,
        levels: store.then_some(levels),
    })
}

/// True iff some trajectory realizes `word`. Locally inadmissible words
/// (repeated letters) are simply not in the language; letters outside the
/// alphabet are an input error.
pub fn word_feasible(poly: &Polygon, word: &Word) -> Result<bool, LanguageError> {
    match Corridor::along(poly, word) {
        Ok(result) => Ok(result.is_some()),
        Err(CorridorError::RepeatedLetter(_)) => Ok(false),
        Err(CorridorError::LetterOutOfRange(..)) => {
            Err(LanguageError::LetterOutOfRange(word.clone()))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtensionCounts {
    pub m_l: usize,
    pub m_r: usize,
    pub m_b: usize,
}

impl ExtensionCounts {
    pub fn is_bispecial(&self) -> bool {
        self.m_l > 1 && self.m_r > 1
    }
}

/// Direct single-word route: probes every one-letter and two-letter
/// extension with its own corridor. The batch route over stored levels
/// ([`extension_table`]) must agree with this everywhere.
pub fn extension_counts(poly: &Polygon, word: &Word) -> Result<ExtensionCounts, LanguageError> {
    let r = poly.sides();
    if word.letters().iter().any(|&c| c >= r) {
        return Err(LanguageError::LetterOutOfRange(word.clone()));
    }
    let Some(base) = Corridor::along(poly, word).expect("letters checked above") else {
        return Err(LanguageError::NotInLanguage(word.clone()));
    };

    let mut m_r = 0;
    for b in 0..r {
        if matches!(base.extended(poly, b), Ok(Some(_))) {
            m_r += 1;
        }
    }
    let (mut m_l, mut m_b) = (0, 0);
    for a in 0..r {
        let la = word.prefixed(a);
        if !la.is_locally_admissible(r) {
            continue;
        }
        let Some(left) = Corridor::along(poly, &la).expect("admissible") else {
            continue;
        };
        m_l += 1;
        for b in 0..r {
            if matches!(left.extended(poly, b), Ok(Some(_))) {
                m_b += 1;
            }
        }
    }
    Ok(ExtensionCounts { m_l, m_r, m_b })
}

/// Batch route: from stored levels n, n+1, n+2, computes extension counts of
/// every length-n word at once by bucketing prefixes, suffixes and middles.
pub fn extension_table(
    table: &LanguageTable,
    n: usize,
) -> BTreeMap<Word, ExtensionCounts> {
    let level_n = table.level(n).expect("store mode required");
    let level_n1 = table.level(n + 1).expect("need level n+1");
    let level_n2 = table.level(n + 2).expect("need level n+2");

    let mut by_suffix: BTreeMap<&[u8], usize> = BTreeMap::new();
    let mut by_prefix: BTreeMap<&[u8], usize> = BTreeMap::new();
    for w in level_n1 {
        let ls = w.letters();
        *by_suffix.entry(&ls[1..]).or_default() += 1;
        *by_prefix.entry(&ls[..ls.len() - 1]).or_default() += 1;
    }
    let mut by_middle: BTreeMap<&[u8], usize> = BTreeMap::new();
    for w in level_n2 {
        let ls = w.letters();
        *by_middle.entry(&ls[1..ls.len() - 1]).or_default() += 1;
    }

    level_n
        .iter()
        .map(|w| {
            let ls = w.letters();
            let counts = ExtensionCounts {
                m_l: by_suffix.get(ls).copied().unwrap_or(0),
                m_r: by_prefix.get(ls).copied().unwrap_or(0),
                m_b: by_middle.get(ls).copied().unwrap_or(0),
            };
            (w.clone(), counts)
        })
        .collect()
}

/// The bispecial words of length `n` with their extension counts.
/// Length 0 always yields the empty word (every letter extends it on both
/// sides). Requires a table stored to level n+2.
pub fn bispecial_words(table: &LanguageTable, n: usize) -> Vec<(Word, ExtensionCounts)> {
    extension_table(table, n)
        .into_iter()
        .filter(|(_, c)| c.is_bispecial())
        .collect()
}

/// Outcome of checking s(n+1) − s(n) = Σ over bispecial length-n words of
/// (m_b − m_l − m_r + 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub n: usize,
    pub lhs: i64,
    pub rhs: i64,
    /// Words whose individual contribution is nonzero, for failure reports.
    pub contributors: Vec<(Word, i64)>,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Second-difference identity of the complexity function. Needs a table
/// stored to level n+2; valid for n ≥ 1 since s(0) is not defined.
pub fn verify_difference_identity(table: &LanguageTable, n: usize) -> IdentityCheck {
    assert!(n >= 1, "the difference identity starts at n = 1");
    let s_n = table.s(n).expect("table too shallow") as i64;
    let s_n1 = table.s(n + 1).expect("table too shallow") as i64;
    let mut rhs = 0;
    let mut contributors = Vec::new();
    for (word, c) in bispecial_words(table, n) {
        let term = c.m_b as i64 - c.m_l as i64 - c.m_r as i64 + 1;
        rhs += term;
        if term != 0 {
            contributors.push((word, term));
        }
    }
    IdentityCheck {
        n,
        lhs: s_n1 - s_n,
        rhs,
        contributors,
    }
}
