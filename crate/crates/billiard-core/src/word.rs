//! Edge-label words. A word records the sequence of polygon sides an orbit
//! segment hits; consecutive letters always differ because no chord returns
//! to the side it just left.

use std::fmt;

/// A finite sequence of edge labels.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl Into<Vec<u8>>) -> Self {
        Word(letters.into())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<u8> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    pub fn push(&mut self, letter: u8) {
        self.0.push(letter);
    }

    /// `self` read backwards.
    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Prepends `a` and appends `b`.
    pub fn surrounded(&self, a: u8, b: u8) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 2);
        v.push(a);
        v.extend_from_slice(&self.0);
        v.push(b);
        Word(v)
    }

    pub fn prefixed(&self, a: u8) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(a);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn suffixed(&self, b: u8) -> Word {
        let mut v = self.0.clone();
        v.push(b);
        Word(v)
    }

    /// True when no two consecutive letters repeat and all letters are below
    /// `alphabet`. Languages of convex tables contain only such words.
    pub fn is_locally_admissible(&self, alphabet: u8) -> bool {
        self.0.iter().all(|&c| c < alphabet) && self.0.windows(2).all(|w| w[0] != w[1])
    }

    /// Comma-separated letters, the storage format for word streams.
    pub fn to_csl(&self) -> String {
        self.join(",")
    }

    /// Letters joined by `sep`; empty word renders as the empty string.
    pub fn join(&self, sep: &str) -> String {
        self.0
            .iter()
            .map(u8::to_string)
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w[{}]", self.to_csl())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_csl())
    }
}

impl From<&[u8]> for Word {
    fn from(letters: &[u8]) -> Self {
        Word(letters.to_vec())
    }
}

impl<const N: usize> From<[u8; N]> for Word {
    fn from(letters: [u8; N]) -> Self {
        Word(letters.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility_checks_alphabet_and_repeats() {
        assert!(Word::from([0, 1, 0]).is_locally_admissible(2));
        assert!(!Word::from([0, 0, 1]).is_locally_admissible(3));
        assert!(!Word::from([0, 3]).is_locally_admissible(3));
        assert!(Word::empty().is_locally_admissible(3));
    }

    #[test]
    fn reversal_and_rendering() {
        let w = Word::from([2, 0, 1]);
        assert_eq!(w.reversed(), Word::from([1, 0, 2]));
        assert_eq!(w.to_csl(), "2,0,1");
        assert_eq!(w.join("-"), "2-0-1");
        assert_eq!(Word::empty().to_csl(), "");
        assert_eq!(w.surrounded(3, 3), Word::from([3, 2, 0, 1, 3]));
    }
}
