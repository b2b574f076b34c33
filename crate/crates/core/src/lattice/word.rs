use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Letter;
use crate::{Error, Result};

/// A reduced word over the involutions `A`, `B`, `C`, i.e. an element of
/// `Δ = ⟨A⟩ * ⟨B⟩ * ⟨C⟩`. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaWord(Vec<Letter>);

impl DeltaWord {
    pub fn identity() -> DeltaWord {
        DeltaWord(Vec::new())
    }

    /// Validates that `letters` is a reduced word over `A`, `B`, `C`.
    pub fn new(letters: Vec<Letter>) -> Result<DeltaWord> {
        let render = || letters.iter().map(|l| l.as_char()).collect::<String>();
        if let Some(bad) = letters.iter().find(|l| !l.is_generator()) {
            return Err(Error::NotReduced { word: render(), reason: format!("letter {bad} is not one of A, B, C") });
        }
        if let Some(pos) = letters.windows(2).position(|w| w[0] == w[1]) {
            return Err(Error::NotReduced {
                word: render(),
                reason: format!("letters {} and {} are equal", pos, pos + 1),
            });
        }
        Ok(DeltaWord(letters))
    }

    pub(crate) fn from_reduced_unchecked(letters: Vec<Letter>) -> DeltaWord {
        debug_assert!(DeltaWord::new(letters.clone()).is_ok());
        DeltaWord(letters)
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

    /// The group inverse. Every generator is an involution, so this is the
    /// reversed word.
    pub fn inverse(&self) -> DeltaWord {
        DeltaWord(self.0.iter().rev().copied().collect())
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }
}

impl fmt::Display for DeltaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for letter in &self.0 {
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

impl FromStr for DeltaWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<DeltaWord> {
        let letters = s.chars().map(Letter::from_char).collect::<Result<Vec<_>>>()?;
        DeltaWord::new(letters)
    }
}

impl Serialize for DeltaWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DeltaWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Number of nontrivial reduced words of length strictly less than `len`,
/// i.e. `3 · (2^(len-1) - 1)`; `None` when that does not fit in a `u64`.
pub fn word_count_below_length(len: usize) -> Option<u64> {
    if len == 0 {
        return Some(0);
    }
    let shift = u32::try_from(len - 1).ok().filter(|&s| s < 127)?;
    let count = 3u128 * ((1u128 << shift) - 1);
    u64::try_from(count).ok()
}

// The two letters that may follow `prev`, in alphabetical order.
fn successors(prev: Letter) -> [Letter; 2] {
    match prev {
        Letter::A => [Letter::B, Letter::C],
        Letter::B => [Letter::A, Letter::C],
        _ => [Letter::A, Letter::B],
    }
}

/// The `i`-th nontrivial reduced word (0-based) in length-lexicographic
/// order with `A < B < C`.
///
/// ```
/// use quadrille::lattice::enumerate_word;
/// assert_eq!(enumerate_word(0).to_string(), "A");
/// assert_eq!(enumerate_word(3).to_string(), "AB");
/// assert_eq!(enumerate_word(9).to_string(), "ABA");
/// ```
pub fn enumerate_word(i: u64) -> DeltaWord {
    let i = i as u128;
    // Words of length len occupy [3(2^(len-1) - 1), 3(2^len - 1)).
    let mut len = 1u32;
    while 3 * ((1u128 << len) - 1) <= i {
        len += 1;
    }
    let block = (1u128) << (len - 1);
    let pos = i - 3 * (block - 1);
    let first = Letter::GENERATORS[(pos / block) as usize];
    let choices = pos % block;

    let mut letters = Vec::with_capacity(len as usize);
    letters.push(first);
    for bit in (0..len - 1).rev() {
        let prev = *letters.last().unwrap();
        letters.push(successors(prev)[((choices >> bit) & 1) as usize]);
    }
    DeltaWord(letters)
}

/// Inverse of [`enumerate_word`]. The identity has no index.
pub fn word_index(w: &DeltaWord) -> Result<u64> {
    let letters = w.letters();
    let (&first, rest) = letters.split_first().ok_or(Error::EmptyWord)?;
    if letters.len() > 64 {
        return Err(Error::WordTooLong(letters.len()));
    }
    let base = 3u128 * ((1u128 << (letters.len() - 1)) - 1);

    let mut pos = first.code() as u128;
    let mut prev = first;
    for &letter in rest {
        let bit = successors(prev).iter().position(|&s| s == letter).expect("reduced word") as u128;
        pos = (pos << 1) | bit;
        prev = letter;
    }
    u64::try_from(base + pos).map_err(|_| Error::WordTooLong(letters.len()))
}

/// All reduced words of exactly `len` letters, in enumeration order.
pub fn reduced_words_of_length(len: usize) -> impl Iterator<Item = DeltaWord> {
    let (start, end) = match len {
        0 => (0, 0),
        _ => (
            word_count_below_length(len).expect("length too large"),
            word_count_below_length(len + 1).expect("length too large"),
        ),
    };
    (start..end).map(enumerate_word)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> DeltaWord {
        s.parse().unwrap()
    }

    // Independent oracle: all strings over {A,B,C} of a given length,
    // filtered to reduced ones and sorted lexicographically.
    fn brute_force_words(len: usize) -> Vec<String> {
        let mut out = vec![String::new()];
        for _ in 0..len {
            out = out.into_iter().flat_map(|s| ["A", "B", "C"].map(|c| format!("{s}{c}"))).collect();
        }
        out.retain(|s| !s.as_bytes().windows(2).any(|p| p[0] == p[1]));
        out.sort();
        out
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_word(0), w("A"));
        assert_eq!(enumerate_word(3), w("AB"));
        assert_eq!(enumerate_word(9), w("ABA"));
        let length_two: Vec<String> = (3..9).map(|i| enumerate_word(i).to_string()).collect();
        assert_eq!(length_two, ["AB", "AC", "BA", "BC", "CA", "CB"]);
    }

    #[test]
    fn index_examples() {
        assert_eq!(word_index(&w("A")), Ok(0));
        assert_eq!(word_index(&w("CB")), Ok(8));
        assert_eq!(word_index(&w("BA")), Ok(5));
        assert_eq!(word_index(&DeltaWord::identity()), Err(Error::EmptyWord));
    }

    #[test]
    fn enumeration_matches_brute_force_up_to_length_ten() {
        let mut index = 0u64;
        for len in 1..=10 {
            let expected = brute_force_words(len);
            assert_eq!(expected.len(), 3 << (len - 1));
            for s in expected {
                assert_eq!(enumerate_word(index).to_string(), s, "index {index}");
                index += 1;
            }
        }
    }

    #[test]
    fn round_trip_up_to_length_six() {
        for len in 1..=6 {
            for word in reduced_words_of_length(len) {
                assert_eq!(enumerate_word(word_index(&word).unwrap()), word);
            }
        }
        for i in 0..2000 {
            assert_eq!(word_index(&enumerate_word(i)), Ok(i));
        }
    }

    #[test]
    fn validation() {
        assert!(matches!("AAB".parse::<DeltaWord>(), Err(Error::NotReduced { .. })));
        assert!(matches!("ABD".parse::<DeltaWord>(), Err(Error::NotReduced { .. })));
        assert!(matches!("AxB".parse::<DeltaWord>(), Err(Error::InvalidLetter('x'))));
        assert_eq!("".parse::<DeltaWord>(), Ok(DeltaWord::identity()));
        assert_eq!(w("ABC").inverse(), w("CBA"));
    }

    #[test]
    fn long_words() {
        let long = enumerate_word(u64::MAX);
        assert_eq!(word_index(&long), Ok(u64::MAX));
        let too_long = DeltaWord::new([Letter::C, Letter::B].repeat(32)).unwrap();
        assert_eq!(word_index(&too_long), Err(Error::WordTooLong(64)));
    }
}
