use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{enumerate_word, label_of, EdgeRef, Letter, Orientation, VertexCoord};

const CACHED_LABELS: usize = 128;

fn build_cycle(label: u64) -> Vec<Letter> {
    let mut cycle = enumerate_word(label).into_letters();
    cycle.reverse();
    cycle.push(Letter::D);
    cycle
}

/// The vertical colours of a column with the given label, reading upward from
/// row 0: the word `w` number `label` reversed, then `D`. The colour at row
/// `y` is entry `y mod (|w| + 1)`.
pub fn column_cycle(label: u64) -> std::borrow::Cow<'static, [Letter]> {
    static CACHE: OnceLock<Vec<Vec<Letter>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| (0..CACHED_LABELS as u64).map(build_cycle).collect());
    match cache.get(label as usize) {
        Some(cycle) => std::borrow::Cow::Borrowed(cycle),
        None => std::borrow::Cow::Owned(build_cycle(label)),
    }
}

/// Colour of `λ` on the vertical edge `(x, y)–(x, y+1)`.
pub fn vertical_at(x: &BigInt, y: &BigInt) -> Letter {
    let cycle = column_cycle(label_of(x));
    let phase = y.mod_floor(&BigInt::from(cycle.len())).to_usize().expect("phase below period");
    cycle[phase]
}

/// The colouring `λ`.
///
/// Horizontal edges alternate `E` (even `x`) and `F` (odd `x`); the vertical
/// line at column `x` repeats the word with index `label_of(x)`, reversed and
/// followed by `D`, anchored at row 0.
pub fn lambda_colour(e: &EdgeRef) -> Letter {
    match e.orientation {
        Orientation::Horizontal if e.base.x.is_even() => Letter::E,
        Orientation::Horizontal => Letter::F,
        Orientation::Vertical => vertical_at(&e.base.x, &e.base.y),
    }
}

/// A translate of `λ`: the configuration whose colour at edge `e` is the
/// colour of `λ` at `e + offset`. `λ` itself has offset zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Configuration {
    pub offset: VertexCoord,
}

impl Configuration {
    pub fn lambda() -> Configuration {
        Configuration::default()
    }

    pub fn at(offset: VertexCoord) -> Configuration {
        Configuration { offset }
    }

    pub fn translated(&self, t: &VertexCoord) -> Configuration {
        Configuration { offset: &self.offset + t }
    }

    pub fn colour(&self, e: &EdgeRef) -> Letter {
        lambda_colour(&e.translated(&self.offset))
    }

    /// Colours of the edges at the origin in the order up, down, right, left.
    pub fn incident_at_origin(&self) -> [Letter; 4] {
        let o = &self.offset;
        let (x, y) = (&o.x, &o.y);
        let horizontal = |x: &BigInt| if x.is_even() { Letter::E } else { Letter::F };
        [vertical_at(x, y), vertical_at(x, &(y - 1)), horizontal(x), horizontal(&(x - 1))]
    }

    /// The `len` vertical colours read upward from `v`.
    pub fn up_string(&self, v: &VertexCoord, len: usize) -> Vec<Letter> {
        let column = &v.x + &self.offset.x;
        let start = &v.y + &self.offset.y;
        let cycle = column_cycle(label_of(&column));
        let m = cycle.len();
        let phase = start.mod_floor(&BigInt::from(m)).to_usize().expect("phase below period");
        (0..len).map(|k| cycle[(phase + k) % m]).collect()
    }
}

pub fn configuration_colour(sigma: &Configuration, e: &EdgeRef) -> Letter {
    sigma.colour(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::word_index;

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_colour(&EdgeRef::horizontal(0, 0)), Letter::E);
        assert_eq!(lambda_colour(&EdgeRef::horizontal(-1, 7)), Letter::F);
        assert_eq!(lambda_colour(&EdgeRef::vertical(1, 0)), Letter::A);
        assert_eq!(lambda_colour(&EdgeRef::vertical(8, 2)), Letter::D);
        // Negative rows wrap with the period of the column.
        assert_eq!(lambda_colour(&EdgeRef::vertical(0, -1)), Letter::D);
        assert_eq!(lambda_colour(&EdgeRef::vertical(8, -1)), Letter::D);
        assert_eq!(lambda_colour(&EdgeRef::vertical(8, -2)), Letter::A);
    }

    #[test]
    fn configuration_examples() {
        let lambda = Configuration::lambda();
        assert_eq!(lambda.colour(&EdgeRef::vertical(8, 1)), Letter::A);
        let shifted = Configuration::at(VertexCoord::new(0, 1));
        assert_eq!(shifted.colour(&EdgeRef::vertical(8, 1)), Letter::D);
        assert_eq!(configuration_colour(&shifted, &EdgeRef::vertical(8, 1)), Letter::D);
    }

    #[test]
    fn translations_compose_additively() {
        let t = VertexCoord::new(5, -3);
        let s = VertexCoord::new(-17, 40);
        let twice = Configuration::lambda().translated(&t).translated(&s);
        let once = Configuration::at(&t + &s);
        for x in -20..20 {
            for y in -20..20 {
                for e in [EdgeRef::horizontal(x, y), EdgeRef::vertical(x, y)] {
                    assert_eq!(twice.colour(&e), once.colour(&e));
                }
            }
        }
    }

    #[test]
    fn up_string_spells_reversed_word_then_d() {
        for label in 0..200u64 {
            let word = enumerate_word(label);
            let column = BigInt::from(1u8) << label;
            let read = Configuration::lambda().up_string(&VertexCoord::new(column, 0), word.len() + 1);
            let mut expected = word.inverse().into_letters();
            expected.push(Letter::D);
            assert_eq!(read, expected);
            assert_eq!(word_index(&word).unwrap(), label);
        }
    }

    #[test]
    fn columns_are_periodic_with_one_d_and_no_repeats() {
        for x in -300i64..300 {
            let x = BigInt::from(x);
            let m = column_cycle(label_of(&x)).len() as i64;
            let colours: Vec<Letter> = (-2 * m..2 * m).map(|y| vertical_at(&x, &BigInt::from(y))).collect();
            for y in 0..colours.len() - m as usize {
                assert_eq!(colours[y], colours[y + m as usize]);
            }
            assert!(colours.windows(2).all(|p| p[0] != p[1]));
            assert_eq!(colours[..m as usize].iter().filter(|&&l| l == Letter::D).count(), 1);
        }
    }

    #[test]
    fn incident_edges_match_edge_evaluation() {
        for (x, y) in [(0, 0), (8, 1), (-7, -3), (1024, 5)] {
            let sigma = Configuration::at(VertexCoord::new(x, y));
            let expected = [
                sigma.colour(&EdgeRef::vertical(0, 0)),
                sigma.colour(&EdgeRef::vertical(0, -1)),
                sigma.colour(&EdgeRef::horizontal(0, 0)),
                sigma.colour(&EdgeRef::horizontal(-1, 0)),
            ];
            assert_eq!(sigma.incident_at_origin(), expected);
        }
    }
}
