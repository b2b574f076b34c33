use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// One of the six edge colours.
///
/// `A`, `B`, `C` generate `Δ` and appear on vertical edges together with the
/// separator `D`; `E` and `F` only ever colour horizontal edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Letter {
    A = 0,
    B = 1,
    C = 2,
    D = 3,
    E = 4,
    F = 5,
}

impl Letter {
    pub const ALL: [Letter; 6] = [Letter::A, Letter::B, Letter::C, Letter::D, Letter::E, Letter::F];
    pub const GENERATORS: [Letter; 3] = [Letter::A, Letter::B, Letter::C];

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<Letter> {
        Letter::ALL.get(code as usize).copied()
    }

    pub fn is_generator(self) -> bool {
        matches!(self, Letter::A | Letter::B | Letter::C)
    }

    pub fn as_char(self) -> char {
        (b'A' + self.code()) as char
    }

    pub fn from_char(c: char) -> Result<Letter> {
        match c {
            'A'..='F' => Ok(Letter::ALL[(c as u8 - b'A') as usize]),
            _ => Err(Error::InvalidLetter(c)),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Letter> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Letter::from_char(c),
            (Some(c), Some(_)) => Err(Error::InvalidLetter(c)),
            (None, _) => Err(Error::InvalidLetter(' ')),
        }
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_round_trip() {
        for letter in Letter::ALL {
            assert_eq!(Letter::from_code(letter.code()), Some(letter));
            assert_eq!(letter.to_string().parse::<Letter>().unwrap(), letter);
        }
        assert_eq!(Letter::from_code(6), None);
    }

    #[test]
    fn generators_are_abc() {
        let gens: Vec<_> = Letter::ALL.into_iter().filter(|l| l.is_generator()).collect();
        assert_eq!(gens, Letter::GENERATORS);
    }

    #[test]
    fn rejects_other_characters() {
        assert_eq!(Letter::from_char('G'), Err(Error::InvalidLetter('G')));
        assert!("a".parse::<Letter>().is_err());
        assert!("AB".parse::<Letter>().is_err());
    }
}
