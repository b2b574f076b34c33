use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{column_cycle, label_of, Configuration, Letter, Orientation, VertexCoord};
use crate::{Error, Result};

/// The contents of a square window, independent of where it was taken.
///
/// Two windows with equal patterns are translates of one another; this is the
/// notion of "pattern" used throughout the crate (rectangular supports only).
///
/// Storage is row-major by edge class: first the `(2r+1) · 2r` horizontal
/// edges (rows `-r..=r`, left endpoints `-r..r`), then the `2r · (2r+1)`
/// vertical edges (lower endpoints on rows `-r..r`, columns `-r..=r`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    radius: u64,
    colours: Vec<Letter>,
}

impl Pattern {
    pub fn edge_count(radius: u64) -> usize {
        let r = radius as usize;
        2 * (2 * r + 1) * (2 * r)
    }

    pub fn new(radius: u64, colours: Vec<Letter>) -> Result<Pattern> {
        let expected = Pattern::edge_count(radius);
        if colours.len() != expected {
            return Err(Error::WindowShape { radius, expected, got: colours.len() });
        }
        Ok(Pattern { radius, colours })
    }

    pub fn radius(&self) -> u64 {
        self.radius
    }

    pub fn colours(&self) -> &[Letter] {
        &self.colours
    }

    fn index(&self, dx: i64, dy: i64, orientation: Orientation) -> Option<usize> {
        let r = self.radius as i64;
        let side = 2 * r;
        match orientation {
            Orientation::Horizontal if (-r..r).contains(&dx) && (-r..=r).contains(&dy) => {
                Some(((dy + r) * side + dx + r) as usize)
            }
            Orientation::Vertical if (-r..=r).contains(&dx) && (-r..r).contains(&dy) => {
                let horizontal = (side + 1) * side;
                Some((horizontal + (dy + r) * (side + 1) + dx + r) as usize)
            }
            _ => None,
        }
    }

    /// Colour of the edge based at `(dx, dy)` relative to the centre, if it
    /// lies inside the window.
    pub fn get(&self, dx: i64, dy: i64, orientation: Orientation) -> Option<Letter> {
        self.index(dx, dy, orientation).map(|i| self.colours[i])
    }

    pub fn set(&mut self, dx: i64, dy: i64, orientation: Orientation, letter: Letter) -> Result<()> {
        let i = self.index(dx, dy, orientation).ok_or(Error::WindowShape {
            radius: self.radius,
            expected: Pattern::edge_count(self.radius),
            got: usize::MAX,
        })?;
        self.colours[i] = letter;
        Ok(())
    }

    /// `(dx, dy, orientation, letter)` for every edge, in storage order.
    pub fn edges(&self) -> impl Iterator<Item = (i64, i64, Orientation, Letter)> + '_ {
        let r = self.radius as i64;
        let horizontal = (-r..=r).flat_map(move |dy| (-r..r).map(move |dx| (dx, dy, Orientation::Horizontal)));
        let vertical = (-r..r).flat_map(move |dy| (-r..=r).map(move |dx| (dx, dy, Orientation::Vertical)));
        horizontal.chain(vertical).zip(&self.colours).map(|((dx, dy, o), &l)| (dx, dy, o, l))
    }

    /// Compact text form: horizontal letters, `/`, vertical letters.
    pub fn to_compact(&self) -> String {
        let split = (2 * self.radius as usize + 1) * 2 * self.radius as usize;
        let (h, v) = self.colours.split_at(split);
        let h: String = h.iter().map(|l| l.as_char()).collect();
        let v: String = v.iter().map(|l| l.as_char()).collect();
        format!("{h}/{v}")
    }

    pub fn from_compact(radius: u64, s: &str) -> Result<Pattern> {
        let colours = s.chars().filter(|&c| c != '/').map(Letter::from_char).collect::<Result<Vec<_>>>()?;
        Pattern::new(radius, colours)
    }
}

/// A pattern together with the vertex it was read around.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub center: VertexCoord,
    pub pattern: Pattern,
}

impl Window {
    pub fn new(center: VertexCoord, pattern: Pattern) -> Window {
        Window { center, pattern }
    }

    /// A window with every edge coloured `fill`; handy for building
    /// counterexamples.
    pub fn filled(center: VertexCoord, radius: u64, fill: Letter) -> Window {
        let colours = vec![fill; Pattern::edge_count(radius)];
        Window { center, pattern: Pattern { radius, colours } }
    }

    pub fn radius(&self) -> u64 {
        self.pattern.radius
    }

    pub fn edge_count(&self) -> usize {
        self.pattern.colours.len()
    }

    pub fn get(&self, dx: i64, dy: i64, orientation: Orientation) -> Option<Letter> {
        self.pattern.get(dx, dy, orientation)
    }
}

/// Reads every edge of `sigma` with both endpoints in the L∞ ball of the
/// given radius around `center`.
pub fn extract_window(sigma: &Configuration, center: &VertexCoord, radius: u64) -> Window {
    let r = radius as i64;
    let side = 2 * radius as usize;
    let base = center + &sigma.offset;
    let mut colours = Vec::with_capacity(Pattern::edge_count(radius));

    let left_even = (&base.x - r).is_even();
    let row: Vec<Letter> = (0..side).map(|k| if (k % 2 == 0) == left_even { Letter::E } else { Letter::F }).collect();
    for _ in 0..=side {
        colours.extend_from_slice(&row);
    }

    // One cycle and starting phase per column, then walk the rows.
    let bottom = &base.y - r;
    let columns: Vec<(std::borrow::Cow<'static, [Letter]>, usize)> = (-r..=r)
        .map(|dx| {
            let cycle = column_cycle(label_of(&(&base.x + dx)));
            let phase = bottom.mod_floor(&BigInt::from(cycle.len())).to_usize().unwrap();
            (cycle, phase)
        })
        .collect();
    for dy in 0..side {
        for (cycle, phase) in &columns {
            colours.push(cycle[(phase + dy) % cycle.len()]);
        }
    }

    Window { center: center.clone(), pattern: Pattern { radius, colours } }
}

/// Whether, at every vertex of the window, the incident edges that lie in
/// the window carry pairwise distinct letters.
pub fn check_properness(win: &Window) -> bool {
    let r = win.radius() as i64;
    let p = &win.pattern;
    for dy in -r..=r {
        for dx in -r..=r {
            let incident = [
                p.get(dx, dy, Orientation::Horizontal),
                p.get(dx - 1, dy, Orientation::Horizontal),
                p.get(dx, dy, Orientation::Vertical),
                p.get(dx, dy - 1, Orientation::Vertical),
            ];
            let mut seen = 0u8;
            for letter in incident.into_iter().flatten() {
                let bit = 1 << letter.code();
                if seen & bit != 0 {
                    return false;
                }
                seen |= bit;
            }
        }
    }
    true
}
