use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// A vertex of `Z²`, or equally a translation vector. Column `x`, row `y`.
///
/// Coordinates are unbounded: witness translates for word number `i` sit at
/// column `2^i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexCoord {
    #[serde(with = "crate::json::decimal")]
    pub x: BigInt,
    #[serde(with = "crate::json::decimal")]
    pub y: BigInt,
}

impl VertexCoord {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> VertexCoord {
        VertexCoord { x: x.into(), y: y.into() }
    }

    pub fn origin() -> VertexCoord {
        VertexCoord::default()
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// The L∞ norm `max(|x|, |y|)`.
    pub fn linf_norm(&self) -> BigInt {
        self.x.abs().max(self.y.abs())
    }

    pub fn shifted(&self, dx: i64, dy: i64) -> VertexCoord {
        VertexCoord { x: &self.x + dx, y: &self.y + dy }
    }
}

impl fmt::Display for VertexCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl<'a> Add<&'a VertexCoord> for &'a VertexCoord {
    type Output = VertexCoord;
    fn add(self, rhs: &VertexCoord) -> VertexCoord {
        VertexCoord { x: &self.x + &rhs.x, y: &self.y + &rhs.y }
    }
}

impl Add for VertexCoord {
    type Output = VertexCoord;
    fn add(self, rhs: VertexCoord) -> VertexCoord {
        VertexCoord { x: self.x + rhs.x, y: self.y + rhs.y }
    }
}

impl<'a> Sub<&'a VertexCoord> for &'a VertexCoord {
    type Output = VertexCoord;
    fn sub(self, rhs: &VertexCoord) -> VertexCoord {
        VertexCoord { x: &self.x - &rhs.x, y: &self.y - &rhs.y }
    }
}

impl Sub for VertexCoord {
    type Output = VertexCoord;
    fn sub(self, rhs: VertexCoord) -> VertexCoord {
        VertexCoord { x: self.x - rhs.x, y: self.y - rhs.y }
    }
}

impl Neg for VertexCoord {
    type Output = VertexCoord;
    fn neg(self) -> VertexCoord {
        VertexCoord { x: -self.x, y: -self.y }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// An edge in canonical form: `Horizontal` at `(x, y)` is the edge
/// `(x, y)–(x+1, y)`, `Vertical` at `(x, y)` is `(x, y)–(x, y+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeRef {
    #[serde(flatten)]
    pub base: VertexCoord,
    pub orientation: Orientation,
}

impl EdgeRef {
    pub fn new(base: VertexCoord, orientation: Orientation) -> EdgeRef {
        EdgeRef { base, orientation }
    }

    pub fn horizontal(x: impl Into<BigInt>, y: impl Into<BigInt>) -> EdgeRef {
        EdgeRef::new(VertexCoord::new(x, y), Orientation::Horizontal)
    }

    pub fn vertical(x: impl Into<BigInt>, y: impl Into<BigInt>) -> EdgeRef {
        EdgeRef::new(VertexCoord::new(x, y), Orientation::Vertical)
    }

    pub fn translated(&self, t: &VertexCoord) -> EdgeRef {
        EdgeRef { base: &self.base + t, orientation: self.orientation }
    }

    /// The endpoint other than `base`.
    pub fn far_end(&self) -> VertexCoord {
        match self.orientation {
            Orientation::Horizontal => self.base.shifted(1, 0),
            Orientation::Vertical => self.base.shifted(0, 1),
        }
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.orientation {
            Orientation::Horizontal => "horizontal",
            Orientation::Vertical => "vertical",
        };
        write!(f, "{kind} {}", self.base)
    }
}
