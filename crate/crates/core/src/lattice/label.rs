use num_bigint::{BigInt, BigUint};
use num_traits::One;

/// Label of column 0, which has no 2-adic valuation.
///
/// A window of radius `r` around column 0 reappears around every column
/// labelled `k` as soon as `2^k > 2r`; with `k = 3` that covers every window
/// radius up to 3. Label 0 would make columns -1, 0, 1 all carry `A`, a
/// configuration found nowhere else on the lattice.
pub const ZERO_LABEL: u64 = 3;

/// The label of an integer column: the exponent of 2 in `|a|`, with
/// `label_of(0) = ZERO_LABEL`.
pub fn label_of(a: &BigInt) -> u64 {
    a.trailing_zeros().unwrap_or(ZERO_LABEL)
}

/// [`label_of`] on machine integers.
pub fn label_of_i64(a: i64) -> u64 {
    if a == 0 {
        ZERO_LABEL
    } else {
        a.trailing_zeros() as u64
    }
}

/// `2^(i+1)`: every interval of that many consecutive integers contains one
/// labelled `i`.
pub fn g_bound(i: u64) -> BigUint {
    BigUint::one() << (i + 1)
}
