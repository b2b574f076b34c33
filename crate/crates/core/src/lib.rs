//! Proper edge-colourings of the square lattice and the topological full
//! group of the minimal subshift they generate.
//!
//! The crate builds one explicit colouring `λ` of the edges of `Z²` by six
//! letters, evaluated lazily at arbitrary (big-integer) coordinates, and
//! produces checkable certificates for the facts that make the topological
//! full group of its orbit closure contain a non-abelian free group:
//!
//! * [`lattice`]: letters, reduced words of `Δ = ⟨A⟩ * ⟨B⟩ * ⟨C⟩`, the
//!   integer labelling and the colouring itself;
//! * [`fullgroup`]: the letter involutions acting on translates of `λ`;
//! * [`verify`]: witness translates, aperiodicity, recurrence evidence and
//!   the free subgroup sweep;
//! * [`odometer`]: the contrasting `Z_p × Z_p` odometer whose full group is
//!   a union of virtually abelian groups.
//!
//! ```
//! use quadrille::lattice::{lambda_colour, EdgeRef, Letter};
//!
//! // Column 8 carries the word "AB", written reversed and followed by D.
//! let up: Vec<Letter> = (0..3).map(|y| lambda_colour(&EdgeRef::vertical(8, y))).collect();
//! assert_eq!(up, [Letter::B, Letter::A, Letter::D]);
//! ```

pub mod error;
pub mod fullgroup;
pub mod json;
pub mod lattice;
pub mod odometer;
pub mod verify;

pub use error::{Error, Result};
