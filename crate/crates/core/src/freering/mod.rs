//! The free monoid ring over `v ⊔ V`, its free modules and term orders.

mod order;
mod parse;
mod poly;

pub use order::{OrderKind, SortKey, TermOrder};
pub use parse::{parse_poly, parse_poly_at};
pub use poly::NcPoly;

use serde::{Deserialize, Serialize};

/// Letter index: `0..nv` are coefficient letters, `nv..` are graded letters.
pub type Letter = u16;
pub type Word = Vec<Letter>;

/// The two ordered alphabets of a presentation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    pub v: Vec<String>,
    pub big: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(v: impl IntoIterator<Item = S>, big: impl IntoIterator<Item = S>) -> Self {
        Alphabet { v: v.into_iter().map(Into::into).collect(), big: big.into_iter().map(Into::into).collect() }
    }

    pub fn nv(&self) -> usize {
        self.v.len()
    }

    pub fn len(&self) -> usize {
        self.v.len() + self.big.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_v(&self, l: Letter) -> bool {
        (l as usize) < self.v.len()
    }

    pub fn name(&self, l: Letter) -> &str {
        let i = l as usize;
        if i < self.v.len() {
            &self.v[i]
        } else {
            &self.big[i - self.v.len()]
        }
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.v.iter().chain(self.big.iter()).position(|s| s == name).map(|i| i as Letter)
    }

    pub fn v_letters(&self) -> impl Iterator<Item = Letter> {
        0..self.v.len() as Letter
    }

    pub fn big_letters(&self) -> impl Iterator<Item = Letter> {
        self.v.len() as Letter..self.len() as Letter
    }

    pub fn word(&self, names: &[&str]) -> Word {
        names.iter().map(|n| self.letter(n).unwrap_or_else(|| panic!("unknown letter {n}"))).collect()
    }

    pub fn fmt_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i + 1;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let n = self.name(w[i]);
            if j - i > 1 {
                parts.push(format!("{n}^{}", j - i));
            } else {
                parts.push(n.to_string());
            }
            i = j;
        }
        parts.join("*")
    }

    pub fn fmt_term(&self, t: &Term) -> String {
        let mut s = self.fmt_word(&t.word);
        if t.pos > 0 {
            if t.word.is_empty() {
                s = format!("e{}", t.pos);
            } else {
                s.push_str(&format!("*e{}", t.pos));
            }
        }
        s
    }
}

/// A word tagged with a module position; position 0 marks a ring element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Term {
    pub word: Word,
    pub pos: u32,
}

impl Term {
    pub fn new(word: Word, pos: u32) -> Self {
        Term { word, pos }
    }

    pub fn ring(word: Word) -> Self {
        Term { word, pos: 0 }
    }

    pub fn degree(&self) -> usize {
        self.word.len()
    }

    pub fn mul_words(&self, left: &[Letter], right: &[Letter]) -> Term {
        let mut w = Vec::with_capacity(left.len() + self.word.len() + right.len());
        w.extend_from_slice(left);
        w.extend_from_slice(&self.word);
        w.extend_from_slice(right);
        Term { word: w, pos: self.pos }
    }
}

/// Position of `needle` inside `hay` at every offset where it occurs.
pub fn occurrences(hay: &[Letter], needle: &[Letter]) -> Vec<usize> {
    if needle.len() > hay.len() {
        return Vec::new();
    }
    (0..=hay.len() - needle.len()).filter(|&i| &hay[i..i + needle.len()] == needle).collect()
}
