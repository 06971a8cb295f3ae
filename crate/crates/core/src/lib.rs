//! Exact combinatorial engine for cohomological support varieties of rings
//! defined by square-free monomial ideals.
//!
//! An ideal with `n` minimal monomial generators is encoded by its set of
//! variable types (subsets of generators, stored as bitmasks). From that we
//! build the GCD graph and the Taylor graph, evaluate the associated
//! `2^n x 2^n` matrix at points over prime fields, and classify the support
//! variety with machine-checkable certificates: homotopy sources/sinks and
//! isolated vertices for lower bounds, triangular perfect matchings and
//! cycle-decomposition determinants for upper bounds, plus a randomized rank
//! oracle for corroboration.

pub mod detect;
pub mod error;
pub mod families;
pub mod fiber;
pub mod gcd;
pub mod graphs6;
pub mod ideal;
pub mod matching;
pub mod poly;
pub mod rank;
pub mod taylor;
pub mod variety;
pub mod verify;

pub use error::Error;
pub use ideal::{Mask, SquareFreeIdeal};

/// Structural cap on the number of generators: masks must fit a machine word
/// with margin.
pub const MAX_GENERATORS: usize = 24;

/// Render a vertex mask as the binary string `b_1 ... b_n` (bit of `f_1`
/// printed first).
pub fn mask_string(mask: Mask, n: usize) -> String {
    (0..n)
        .map(|i| if mask >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Parse a `b_1 ... b_n` binary string back into a mask.
pub fn parse_mask(s: &str) -> Result<Mask, Error> {
    let mut mask = 0;
    if s.len() > MAX_GENERATORS {
        return Err(Error::IndexOutOfRange);
    }
    for (i, c) in s.chars().enumerate() {
        match c {
            '1' => mask |= 1 << i,
            '0' => {}
            _ => return Err(Error::IndexOutOfRange),
        }
    }
    Ok(mask)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mask_strings_round_trip() {
        assert_eq!(mask_string(0b001011, 6), "110100");
        assert_eq!(parse_mask("110100").unwrap(), 0b001011);
        assert_eq!(mask_string(0, 4), "0000");
    }
}
