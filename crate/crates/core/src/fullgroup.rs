//! The letters as involutions of the space of colourings, and the words they
//! generate.
//!
//! Letter `x` moves a configuration one step toward the neighbour of the
//! origin joined by an `x`-edge, and fixes it when there is no such edge.
//! Properness guarantees there is at most one. Each letter is therefore an
//! element of the topological full group: on each of the five clopen pieces
//! (up, down, right, left, none) it is a fixed translation.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::lattice::{extract_window, Configuration, DeltaWord, Letter, Pattern, VertexCoord};
use crate::{Error, Result};

/// A word over all six letters, not necessarily reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FullWord(pub Vec<Letter>);

impl FullWord {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &FullWord) -> FullWord {
        FullWord(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl From<&DeltaWord> for FullWord {
    fn from(w: &DeltaWord) -> FullWord {
        FullWord(w.letters().to_vec())
    }
}

impl fmt::Display for FullWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|l| write!(f, "{l}"))
    }
}

impl FromStr for FullWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<FullWord> {
        s.chars().map(Letter::from_char).collect::<Result<_>>().map(FullWord)
    }
}

/// Where a single letter moved the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Stay,
    Up,
    Down,
    Right,
    Left,
}

impl Step {
    pub fn vector(self) -> (i64, i64) {
        match self {
            Step::Stay => (0, 0),
            Step::Up => (0, 1),
            Step::Down => (0, -1),
            Step::Right => (1, 0),
            Step::Left => (-1, 0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionResult {
    pub result: Configuration,
    pub displacement: VertexCoord,
    /// One entry per letter, in the order the letters acted.
    pub trace: Vec<Step>,
}

/// Acts on `sigma` by the letter `x`.
pub fn apply_letter(x: Letter, sigma: &Configuration) -> ActionResult {
    const STEPS: [Step; 4] = [Step::Up, Step::Down, Step::Right, Step::Left];
    let incident = sigma.incident_at_origin();
    let step = match incident.iter().position(|&l| l == x) {
        Some(k) => STEPS[k],
        None => Step::Stay,
    };
    let (dx, dy) = step.vector();
    let displacement = VertexCoord::new(dx, dy);
    ActionResult { result: sigma.translated(&displacement), displacement, trace: vec![step] }
}

/// Acts by `w`, rightmost letter first.
pub fn apply_word(w: &FullWord, sigma: &Configuration) -> ActionResult {
    let mut current = sigma.clone();
    let mut trace = Vec::with_capacity(w.len());
    let (mut dx, mut dy) = (0i64, 0i64);
    for &letter in w.letters().iter().rev() {
        let step = apply_letter(letter, &current);
        let (sx, sy) = step.trace[0].vector();
        dx += sx;
        dy += sy;
        trace.extend(step.trace);
        current = step.result;
    }
    ActionResult { result: current, displacement: VertexCoord::new(dx, dy), trace }
}

/// Cancels adjacent equal letters until none remain: the normal form in the
/// free product of six copies of `Z/2`.
pub fn reduce_free_product(w: &FullWord) -> FullWord {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &letter in w.letters() {
        if out.last() == Some(&letter) {
            out.pop();
        } else {
            out.push(letter);
        }
    }
    FullWord(out)
}

/// Generators and inverses of the free group on `α`, `β`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum F2Symbol {
    Alpha,
    Beta,
    AlphaInv,
    BetaInv,
}

impl F2Symbol {
    pub const ALL: [F2Symbol; 4] = [F2Symbol::Alpha, F2Symbol::Beta, F2Symbol::AlphaInv, F2Symbol::BetaInv];

    pub fn inverse(self) -> F2Symbol {
        match self {
            F2Symbol::Alpha => F2Symbol::AlphaInv,
            F2Symbol::AlphaInv => F2Symbol::Alpha,
            F2Symbol::Beta => F2Symbol::BetaInv,
            F2Symbol::BetaInv => F2Symbol::Beta,
        }
    }

    /// Image in `Δ`: `α ↦ AB`, `β ↦ AC`.
    pub fn image(self) -> [Letter; 2] {
        match self {
            F2Symbol::Alpha => [Letter::A, Letter::B],
            F2Symbol::AlphaInv => [Letter::B, Letter::A],
            F2Symbol::Beta => [Letter::A, Letter::C],
            F2Symbol::BetaInv => [Letter::C, Letter::A],
        }
    }

    /// ASCII spelling: `a`, `b`, and upper case for inverses.
    pub fn as_char(self) -> char {
        match self {
            F2Symbol::Alpha => 'a',
            F2Symbol::Beta => 'b',
            F2Symbol::AlphaInv => 'A',
            F2Symbol::BetaInv => 'B',
        }
    }
}

/// A freely reduced word in `F₂ = ⟨α, β⟩`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Word(Vec<F2Symbol>);

impl F2Word {
    pub fn new(symbols: Vec<F2Symbol>) -> Result<F2Word> {
        if let Some(pos) = symbols.windows(2).position(|p| p[1] == p[0].inverse()) {
            let word: String = symbols.iter().map(|s| s.as_char()).collect();
            return Err(Error::NotReduced { word, reason: format!("symbols {} and {} cancel", pos, pos + 1) });
        }
        Ok(F2Word(symbols))
    }

    pub fn symbols(&self) -> &[F2Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every nontrivial freely reduced word of length at most `max_len`,
    /// shortest first; there are `4 · 3^(ℓ-1)` of length `ℓ`.
    pub fn enumerate(max_len: usize) -> Vec<F2Word> {
        let mut all = Vec::new();
        let mut layer: Vec<Vec<F2Symbol>> = vec![Vec::new()];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w| {
                    F2Symbol::ALL.into_iter().filter(move |&s| w.last().is_none_or(|&l| l.inverse() != s)).map(
                        move |s| {
                            let mut next = w.clone();
                            next.push(s);
                            next
                        },
                    )
                })
                .collect();
            all.extend(layer.iter().cloned().map(F2Word));
        }
        all
    }
}

impl fmt::Display for F2Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{}", s.as_char()))
    }
}

impl FromStr for F2Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<F2Word> {
        let symbols = s
            .chars()
            .map(|c| match c {
                'a' => Ok(F2Symbol::Alpha),
                'b' => Ok(F2Symbol::Beta),
                'A' => Ok(F2Symbol::AlphaInv),
                'B' => Ok(F2Symbol::BetaInv),
                other => Err(Error::InvalidLetter(other)),
            })
            .collect::<Result<Vec<_>>>()?;
        F2Word::new(symbols)
    }
}

impl Serialize for F2Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for F2Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

/// The embedding `F₂ → Δ`, `α ↦ AB`, `β ↦ AC`, followed by reduction.
///
/// ```
/// use quadrille::fullgroup::{f2_to_delta, F2Word};
/// let commutator: F2Word = "abAB".parse().unwrap();
/// assert_eq!(f2_to_delta(&commutator).to_string(), "ABACBACA");
/// ```
pub fn f2_to_delta(u: &F2Word) -> DeltaWord {
    let spelled = FullWord(u.symbols().iter().flat_map(|s| s.image()).collect());
    DeltaWord::from_reduced_unchecked(reduce_free_product(&spelled).0)
}

/// An axis-aligned rectangle of vertices, bounds inclusive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rect {
    pub min: VertexCoord,
    pub max: VertexCoord,
}

impl Rect {
    pub fn new(min: VertexCoord, max: VertexCoord) -> Rect {
        Rect { min, max }
    }

    /// The square `[-r, r]²`.
    pub fn centered(r: i64) -> Rect {
        Rect::new(VertexCoord::new(-r, -r), VertexCoord::new(r, r))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexCoord> + '_ {
        let width = num_traits::ToPrimitive::to_i64(&(&self.max.x - &self.min.x)).unwrap_or(-1);
        let height = num_traits::ToPrimitive::to_i64(&(&self.max.y - &self.min.y)).unwrap_or(-1);
        (0..=height).flat_map(move |dy| (0..=width).map(move |dx| self.min.shifted(dx, dy)))
    }
}

/// Tabulates `w` as a piecewise translation: for each centre in `region`,
/// the radius-`radius` window of `λ` around it is recorded together with the
/// displacement of `w` on that translate.
///
/// When the window content does not determine the displacement this fails
/// with [`Error::InconsistentField`]. A radius equal to the reduced length of
/// `w` always suffices.
pub fn displacement_field(w: &FullWord, region: &Rect, radius: u64) -> Result<HashMap<Pattern, VertexCoord>> {
    let w = reduce_free_product(w);
    let mut field: HashMap<Pattern, VertexCoord> = HashMap::new();
    for center in region.vertices() {
        let window = extract_window(&Configuration::lambda(), &center, radius);
        let displacement = apply_word(&w, &Configuration::at(center)).displacement;
        match field.get(&window.pattern) {
            Some(previous) if *previous != displacement => {
                return Err(Error::InconsistentField { first: previous.to_string(), second: displacement.to_string() })
            }
            Some(_) => {}
            None => {
                field.insert(window.pattern, displacement);
            }
        }
    }
    Ok(field)
}
