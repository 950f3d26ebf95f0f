//! The two code tables that map bit groups to block patterns.
//!
//! Table I maps a 3-bit group to a pattern with one or three black pixels and
//! is used on host blocks with two black pixels. Table II maps a 2-bit group
//! to a pattern with exactly two black pixels and is used on host blocks with
//! one or three. Because every write flips the black-count parity, the
//! extractor learns a block's bit width from the stego pattern alone.
//!
//! Bit groups are written most significant bit first: group `0b011` is the
//! string `"011"`.
//!
//! Table I as commonly printed lists `"1001"` for group `101`. That pattern
//! has two black pixels and is already Table II's code for `11`, so a block
//! written with it would decode as the wrong width. The table here uses
//! `"1011"` instead, the one odd-count pattern otherwise missing, which makes
//! Table I a bijection onto all eight odd-count patterns.

use crate::blockgrid::Pattern;
use crate::error::{Error, Result};

/// Table I, indexed by 3-bit group.
pub const TABLE_I: [Pattern; 8] = [
    Pattern::new(0b0001), // 000
    Pattern::new(0b0010), // 001
    Pattern::new(0b0100), // 010
    Pattern::new(0b0111), // 011
    Pattern::new(0b1000), // 100
    Pattern::new(0b1011), // 101 (corrected, see module docs)
    Pattern::new(0b1101), // 110
    Pattern::new(0b1110), // 111
];

/// Table II, indexed by 2-bit group.
pub const TABLE_II: [Pattern; 4] = [
    Pattern::new(0b0011), // 00
    Pattern::new(0b0101), // 01
    Pattern::new(0b0110), // 10
    Pattern::new(0b1001), // 11
];

const fn invert<const N: usize>(table: [Pattern; N]) -> [Option<u8>; 16] {
    let mut inv = [None; 16];
    let mut i = 0;
    while i < N {
        inv[table[i].code() as usize] = Some(i as u8);
        i += 1;
    }
    inv
}

const DECODE_I: [Option<u8>; 16] = invert(TABLE_I);
const DECODE_II: [Option<u8>; 16] = invert(TABLE_II);

/// Pattern for a 3-bit group. Only the low three bits of `bits` are used.
#[inline]
pub fn encode3(bits: u8) -> Pattern {
    TABLE_I[usize::from(bits & 0b111)]
}

/// Reverse lookup in Table I.
#[inline]
pub fn decode3(p: Pattern) -> Result<u8> {
    DECODE_I[usize::from(p.code())].ok_or(Error::NotInTable(p))
}

/// Pattern for a 2-bit group. Only the low two bits of `bits` are used.
#[inline]
pub fn encode2(bits: u8) -> Pattern {
    TABLE_II[usize::from(bits & 0b11)]
}

/// Reverse lookup in Table II. `"1010"` and `"1100"` have two black pixels
/// but no entry.
#[inline]
pub fn decode2(p: Pattern) -> Result<u8> {
    DECODE_II[usize::from(p.code())].ok_or(Error::NotInTable(p))
}
