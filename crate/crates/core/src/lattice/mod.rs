//! The lattice side: letters, words of `Δ`, coordinates, the integer
//! labelling and the colouring `λ` with its translates.

mod colouring;
mod coord;
mod label;
mod letter;
mod window;
mod word;

pub use colouring::{column_cycle, configuration_colour, lambda_colour, vertical_at, Configuration};
pub use coord::{EdgeRef, Orientation, VertexCoord};
pub use label::{g_bound, label_of, label_of_i64, ZERO_LABEL};
pub use letter::Letter;
pub use window::{check_properness, extract_window, Pattern, Window};
pub use word::{enumerate_word, reduced_words_of_length, word_count_below_length, word_index, DeltaWord};
