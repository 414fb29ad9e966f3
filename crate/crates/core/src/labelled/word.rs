use std::cmp::Ordering;

/// Index of a letter in the graph's alphabet.
pub type Letter = usize;

/// A finite word over the alphabet. The empty word is the empty sequence.
///
/// Words are ordered by length first, then lexicographically.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letter(a: Letter) -> Self {
        Word(vec![a])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pushed(&self, a: Letter) -> Word {
        let mut v = self.0.clone();
        v.push(a);
        Word(v)
    }

    /// The first `n` letters.
    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    /// Letters from position `from` (0-based) to the end.
    pub fn suffix_from(&self, from: usize) -> Word {
        Word(self.0[from..].to_vec())
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    /// `Some(rest)` when `self = prefix · rest`.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|r| Word(r.to_vec()))
    }

    /// One word is a prefix of the other.
    pub fn comparable(&self, other: &Word) -> bool {
        self.starts_with(other) || other.starts_with(self)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}
