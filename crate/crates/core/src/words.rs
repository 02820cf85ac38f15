//! Letters, alphabets and words over a free involutive alphabet.
//!
//! A [`Letter`] packs a generator index and an orientation bit, so the
//! involution is a single xor and never has a fixed point. Words are plain
//! letter vectors; reduction helpers return fresh values.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Generator `i` is encoded as `2i`, its inverse as `2i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter(u32);

impl Letter {
    pub fn positive(generator: usize) -> Self {
        Letter(generator as u32 * 2)
    }

    pub fn negative(generator: usize) -> Self {
        Letter(generator as u32 * 2 + 1)
    }

    pub fn from_index(index: usize) -> Self {
        Letter(index as u32)
    }

    /// Dense index in `0..2m`, ordered `a, a^-1, b, b^-1, ...`.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn generator(self) -> usize {
        (self.0 / 2) as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }
}

/// The positive letters `S'` together with their formal inverses `S''`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    lookup: HashMap<String, usize>,
    compact: bool,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut lookup = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if name.is_empty()
                || name.contains(|c: char| c.is_whitespace() || c == ',' || c == '^')
            {
                return Err(Error::InvalidName(name.clone()));
            }
            if lookup.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        let compact = names.iter().all(|n| {
            let mut chars = n.chars();
            matches!((chars.next(), chars.next()), (Some(c), None) if c.is_ascii_lowercase())
        });
        Ok(Alphabet { names, lookup, compact })
    }

    /// Number of positive letters, `m`.
    pub fn rank(&self) -> usize {
        self.names.len()
    }

    /// Number of letters including inverses, `2m`.
    pub fn letter_count(&self) -> usize {
        2 * self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Whether words can be written one character per letter.
    pub fn is_compact(&self) -> bool {
        self.compact
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.letter_count()).map(Letter::from_index)
    }

    pub fn generator_name(&self, generator: usize) -> &str {
        &self.names[generator]
    }

    /// Looks up a token such as `b` or `b^-1`.
    pub fn letter(&self, token: &str) -> Option<Letter> {
        if let Some(base) = token.strip_suffix("^-1") {
            self.lookup.get(base).map(|&i| Letter::negative(i))
        } else {
            self.lookup.get(token).map(|&i| Letter::positive(i))
        }
    }

    pub fn token(&self, letter: Letter) -> String {
        let name = &self.names[letter.generator()];
        if letter.is_positive() {
            name.clone()
        } else {
            format!("{name}^-1")
        }
    }

    /// Compact character for a letter; only meaningful on compact alphabets.
    fn compact_char(&self, letter: Letter) -> char {
        let c = self.names[letter.generator()].chars().next().unwrap_or('?');
        if letter.is_positive() {
            c
        } else {
            c.to_ascii_uppercase()
        }
    }

    fn compact_letter(&self, c: char) -> Option<Letter> {
        if !self.compact {
            return None;
        }
        if c.is_ascii_lowercase() {
            self.lookup.get(c.to_string().as_str()).map(|&i| Letter::positive(i))
        } else if c.is_ascii_uppercase() {
            self.lookup
                .get(c.to_ascii_lowercase().to_string().as_str())
                .map(|&i| Letter::negative(i))
        } else {
            None
        }
    }

    /// Parses compact (`abA`) or token (`a^-1, b`) notation.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        let token_form = text.contains(|c: char| c == ',' || c == '^' || c.is_whitespace());
        if !token_form && self.compact {
            return text
                .chars()
                .map(|c| {
                    self.compact_letter(c)
                        .ok_or_else(|| Error::UnknownSymbol(c.to_string()))
                })
                .collect::<Result<Vec<_>>>()
                .map(Word);
        }
        let mut letters = Vec::new();
        for token in text.split(|c: char| c == ',' || c.is_whitespace()) {
            if token.is_empty() {
                continue;
            }
            match self.letter(token) {
                Some(l) => letters.push(l),
                None if self.compact && token.chars().all(|c| self.compact_letter(c).is_some()) => {
                    return Err(Error::MixedForms(text.to_string()))
                }
                None => return Err(Error::UnknownSymbol(token.to_string())),
            }
        }
        Ok(Word(letters))
    }

    /// Compact notation when available, otherwise space-separated tokens.
    pub fn format_word(&self, word: &Word) -> String {
        if self.compact {
            word.iter().map(|&l| self.compact_char(l)).collect()
        } else {
            word.iter().map(|&l| self.token(l)).collect::<Vec<_>>().join(" ")
        }
    }

    pub fn tokens(&self, word: &Word) -> Vec<String> {
        word.iter().map(|&l| self.token(l)).collect()
    }

    pub fn display<'a>(&'a self, word: &'a Word) -> impl fmt::Display + 'a {
        DisplayWord { alphabet: self, word }
    }
}

struct DisplayWord<'a> {
    alphabet: &'a Alphabet,
    word: &'a Word,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.format_word(self.word))
    }
}

/// A finite, not necessarily reduced, sequence of letters.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Letter> {
        self.0.iter()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&other.0);
        Word(out)
    }

    pub fn slice(&self, start: usize, len: usize) -> Word {
        Word(self.0[start..start + len].to_vec())
    }

    /// Cyclic permutation starting at `offset`.
    pub fn rotate(&self, offset: usize) -> Word {
        if self.is_empty() {
            return Word::empty();
        }
        let offset = offset % self.len();
        let mut out = self.0[offset..].to_vec();
        out.extend_from_slice(&self.0[..offset]);
        Word(out)
    }

    pub fn invert(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[1] != p[0].inverse())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && match (self.0.first(), self.0.last()) {
                (Some(&f), Some(&l)) if self.len() > 1 => f != l.inverse(),
                _ => true,
            }
    }

    /// Stack-based free reduction.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Returns `(core, conjugator)` with `self = conjugator . core . conjugator^-1`
    /// in the free group and `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let reduced = self.free_reduce();
        let letters = &reduced.0;
        let mut k = 0;
        while 2 * k + 1 < letters.len() && letters[k] == letters[letters.len() - 1 - k].inverse() {
            k += 1;
        }
        let core = Word(letters[k..letters.len() - k].to_vec());
        let conjugator = Word(letters[..k].to_vec());
        (core, conjugator)
    }

    /// Sum of exponents per generator.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut sums = vec![0; rank];
        for l in &self.0 {
            sums[l.generator()] += if l.is_positive() { 1 } else { -1 };
        }
        sums
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Letter;
    type IntoIter = std::slice::Iter<'a, Letter>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Calls `f` on every nonempty reduced word of length `1..=max_len`,
/// in length-then-letter order.
pub fn for_each_reduced_word<F: FnMut(&Word)>(letter_count: usize, max_len: usize, mut f: F) {
    fn extend<F: FnMut(&Word)>(word: &mut Word, target: usize, letter_count: usize, f: &mut F) {
        if word.len() == target {
            f(word);
            return;
        }
        for i in 0..letter_count {
            let l = Letter::from_index(i);
            if word.0.last() == Some(&l.inverse()) {
                continue;
            }
            word.0.push(l);
            extend(word, target, letter_count, f);
            word.0.pop();
        }
    }
    let mut word = Word::empty();
    for len in 1..=max_len {
        extend(&mut word, len, letter_count, &mut f);
    }
}

/// Number of nonempty reduced words of length at most `max_len`, saturating.
pub fn reduced_word_count(letter_count: usize, max_len: usize) -> u128 {
    let mut total: u128 = 0;
    let mut level: u128 = letter_count as u128;
    for _ in 0..max_len {
        total = total.saturating_add(level);
        level = level.saturating_mul(letter_count.saturating_sub(1) as u128);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn abc() -> Alphabet {
        Alphabet::new(["a", "b", "c"]).unwrap()
    }

    #[test]
    fn alphabet_construction() {
        let s = abc();
        assert_eq!(s.rank(), 3);
        assert_eq!(s.letter_count(), 6);
        assert_eq!(s.token(Letter::negative(1)), "b^-1");
        let one = Alphabet::new(["a"]).unwrap();
        assert_eq!(one.letters().count(), 2);
        assert_eq!(Alphabet::new(["a", "a"]), Err(Error::DuplicateName("a".into())));
        assert_eq!(Alphabet::new(Vec::<String>::new()), Err(Error::EmptyAlphabet));
        assert!(matches!(Alphabet::new(["a^-1"]), Err(Error::InvalidName(_))));
    }

    #[test]
    fn involution_has_no_fixed_point() {
        for l in abc().letters() {
            assert_ne!(l, l.inverse());
            assert_eq!(l.inverse().inverse(), l);
        }
    }

    #[test]
    fn parse_compact_and_token_forms() {
        let s = abc();
        let w = s.parse_word("abA").unwrap();
        assert_eq!(w.letters(), &[Letter::positive(0), Letter::positive(1), Letter::negative(0)]);
        let w = s.parse_word("a^-1, b").unwrap();
        assert_eq!(w.letters(), &[Letter::negative(0), Letter::positive(1)]);
        assert_eq!(s.parse_word("x"), Err(Error::UnknownSymbol("x".into())));
        assert!(matches!(s.parse_word("ab, c"), Err(Error::MixedForms(_))));
        assert!(s.parse_word("").unwrap().is_empty());
    }

    #[test]
    fn parse_long_names() {
        let s = Alphabet::new(["x1", "x2"]).unwrap();
        assert!(!s.is_compact());
        let w = s.parse_word("x1 x2^-1").unwrap();
        assert_eq!(s.format_word(&w), "x1 x2^-1");
        assert_eq!(s.parse_word("x2").unwrap().len(), 1);
        assert_eq!(s.parse_word("x1x2"), Err(Error::UnknownSymbol("x1x2".into())));
    }

    #[test]
    fn reductions() {
        let s = abc();
        let w = s.parse_word("aAb").unwrap();
        assert_eq!(s.format_word(&w.free_reduce()), "b");
        let (core, conj) = s.parse_word("abA").unwrap().cyclic_reduce();
        assert_eq!(s.format_word(&core), "b");
        assert_eq!(s.format_word(&conj), "a");
        let (core, conj) = s.parse_word("aA").unwrap().cyclic_reduce();
        assert!(core.is_empty() && conj.is_empty());
        let w = s.parse_word("abc").unwrap();
        assert_eq!(w.cyclic_reduce(), (w.clone(), Word::empty()));
        assert_eq!(s.format_word(&s.parse_word("ab").unwrap().invert()), "BA");
        assert!(Word::empty().invert().is_empty());
    }

    #[test]
    fn counts_reduced_words() {
        let mut n = 0;
        for_each_reduced_word(4, 3, |w| {
            assert!(w.is_reduced());
            n += 1;
        });
        assert_eq!(n as u128, reduced_word_count(4, 3));
        assert_eq!(n, 4 + 12 + 36);
    }

    fn word_strategy() -> impl Strategy<Value = Word> {
        prop::collection::vec(0usize..6, 0..24)
            .prop_map(|v| v.into_iter().map(Letter::from_index).collect())
    }

    proptest! {
        #[test]
        fn free_reduce_is_a_retraction(w in word_strategy()) {
            let r = w.free_reduce();
            prop_assert!(r.is_reduced());
            prop_assert_eq!(r.free_reduce(), r.clone());
            prop_assert!(r.len() <= w.len());
            prop_assert_eq!(r.len() % 2, w.len() % 2);
        }

        #[test]
        fn word_times_inverse_reduces_to_empty(w in word_strategy()) {
            prop_assert!(w.concat(&w.invert()).free_reduce().is_empty());
            prop_assert_eq!(w.invert().invert(), w.clone());
            prop_assert_eq!(w.invert().free_reduce(), w.free_reduce().invert());
        }

        #[test]
        fn cyclic_reduce_conjugates_back(w in word_strategy()) {
            let (core, conj) = w.cyclic_reduce();
            prop_assert!(core.is_cyclically_reduced());
            let back = conj.concat(&core).concat(&conj.invert()).free_reduce();
            prop_assert_eq!(back, w.free_reduce());
        }

        #[test]
        fn compact_format_round_trips(w in word_strategy()) {
            let s = abc();
            prop_assert_eq!(s.parse_word(&s.format_word(&w)).unwrap(), w.clone());
            let tokens = s.tokens(&w).join(", ");
            prop_assert_eq!(s.parse_word(&tokens).unwrap(), w);
        }
    }
}
