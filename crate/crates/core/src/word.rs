//! Letters, words and named alphabets.
//!
//! Letters are indices into an [`Alphabet`]; the alphabet fixes the
//! primary order (`<_1` for transformations), so comparing two [`Word`]s
//! as vectors is the lexicographic order they induce.

use std::collections::HashMap;

use crate::error::{Error, Result};

pub type Letter = u16;
pub type Word = Vec<Letter>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::AlphabetMismatch("empty alphabet".into()));
        }
        if names.len() > Letter::MAX as usize {
            return Err(Error::AlphabetMismatch("too many letters".into()));
        }
        let mut seen = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::AlphabetMismatch("empty letter name".into()));
            }
            if seen.insert(n.as_str(), i).is_some() {
                return Err(Error::AlphabetMismatch(format!("duplicate letter `{n}`")));
            }
        }
        Ok(Alphabet { names })
    }

    /// Alphabet of single-character letters, e.g. `"abc"`.
    pub fn from_chars(s: &str) -> Result<Self> {
        Self::new(s.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.names[l as usize]
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = Letter> + ExactSizeIterator + Clone {
        0..self.names.len() as Letter
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| i as Letter)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn single_char(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Parses a word. Single-character alphabets read one letter per
    /// character; otherwise letters are separated by `.` or whitespace.
    /// `ε` and the empty string denote the empty word.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "ε" {
            return Ok(Word::new());
        }
        if self.single_char() {
            s.chars().map(|c| self.letter(c.encode_utf8(&mut [0; 4]))).collect()
        } else {
            s.split(|c: char| c == '.' || c.is_whitespace()).filter(|t| !t.is_empty()).map(|t| self.letter(t)).collect()
        }
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        let sep = if self.single_char() { "" } else { "." };
        w.iter().map(|&l| self.name(l)).collect::<Vec<_>>().join(sep)
    }

    /// Maps a list of names (an order on the alphabet) to letters, checking
    /// it is a permutation of the alphabet.
    pub fn order(&self, names: &[impl AsRef<str>]) -> Result<Vec<Letter>> {
        let letters = names.iter().map(|n| self.letter(n.as_ref())).collect::<Result<Vec<_>>>()?;
        let mut sorted = letters.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != letters.len() || letters.len() != self.len() {
            return Err(Error::InvalidOrder(names.iter().map(AsRef::as_ref).collect::<Vec<_>>().join(",")));
        }
        Ok(letters)
    }
}

/// `rank[l]` is the position of `l` in `order`.
pub fn ranks(order: &[Letter]) -> Vec<usize> {
    let mut rank = vec![0; order.len()];
    for (i, &l) in order.iter().enumerate() {
        rank[l as usize] = i;
    }
    rank
}

pub fn is_proper_prefix(u: &[Letter], v: &[Letter]) -> bool {
    u.len() < v.len() && v.starts_with(u)
}

pub fn is_proper_suffix(u: &[Letter], v: &[Letter]) -> bool {
    u.len() < v.len() && v.ends_with(u)
}
