//! MSB-first bit buffer used to carry payloads through the block stream.

use std::fmt;

/// An ordered sequence of bits, packed most significant bit first.
///
/// Bits past `len` in the last byte are always zero, so derived equality
/// compares contents.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitStream {
    bytes: Vec<u8>,
    len: usize,
}

impl BitStream {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self {
            bytes: Vec::with_capacity(bits.div_ceil(8)),
            len: 0,
        }
    }

    /// All bits of `bytes`, each byte most significant bit first.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        Self {
            bytes: bytes.to_vec(),
            len: bytes.len() * 8,
        }
    }

    /// Parses a string of `'0'`/`'1'`; other characters are skipped, so
    /// `"0110 1"` is five bits.
    pub fn from_bit_str(s: &str) -> Self {
        let mut out = Self::new();
        for c in s.chars() {
            match c {
                '0' => out.push(false),
                '1' => out.push(true),
                _ => {}
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(8) {
            self.bytes.push(0);
        }
        if bit {
            self.bytes[self.len / 8] |= 0x80 >> (self.len % 8);
        }
        self.len += 1;
    }

    /// Appends the low `width` bits of `value`, most significant first.
    pub fn push_bits(&mut self, value: u64, width: u32) {
        debug_assert!(width <= 64);
        for i in (0..width).rev() {
            self.push((value >> i) & 1 == 1);
        }
    }

    pub fn extend_from_bytes(&mut self, bytes: &[u8]) {
        if self.len.is_multiple_of(8) {
            self.bytes.extend_from_slice(bytes);
            self.len += bytes.len() * 8;
        } else {
            for &b in bytes {
                self.push_bits(u64::from(b), 8);
            }
        }
    }

    pub fn get(&self, index: usize) -> Option<bool> {
        (index < self.len).then(|| self.bytes[index / 8] & (0x80 >> (index % 8)) != 0)
    }

    /// Reads `width` bits starting at `start` as an unsigned integer.
    ///
    /// # Panics
    /// If the range runs past the end of the stream.
    pub fn read_bits(&self, start: usize, width: u32) -> u64 {
        assert!(
            start + width as usize <= self.len,
            "bit range out of bounds"
        );
        (start..start + width as usize)
            .fold(0, |acc, i| (acc << 1) | u64::from(self.get(i).unwrap()))
    }

    /// Drops every bit from `len` onward.
    pub fn truncate(&mut self, len: usize) {
        if len >= self.len {
            return;
        }
        self.bytes.truncate(len.div_ceil(8));
        if !len.is_multiple_of(8) {
            let keep = 0xFFu8 << (8 - len % 8);
            *self.bytes.last_mut().unwrap() &= keep;
        }
        self.len = len;
    }

    /// Bits `start..end` as a new stream.
    pub fn slice(&self, start: usize, end: usize) -> BitStream {
        assert!(start <= end && end <= self.len, "bit range out of bounds");
        if start.is_multiple_of(8) {
            let mut out = BitStream {
                bytes: self.bytes[start / 8..end.div_ceil(8)].to_vec(),
                len: self.len - start,
            };
            out.truncate(end - start);
            return out;
        }
        let mut out = BitStream::with_capacity(end - start);
        for i in start..end {
            out.push(self.get(i).unwrap());
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(|i| self.get(i).unwrap())
    }

    /// Packed bytes; a trailing partial byte is zero-padded.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }

    pub fn reader(&self) -> BitReader<'_> {
        BitReader {
            stream: self,
            pos: 0,
        }
    }
}

impl fmt::Debug for BitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitStream[{}](", self.len)?;
        for (i, b) in self.iter().take(96).enumerate() {
            if i > 0 && i % 8 == 0 {
                f.write_str(" ")?;
            }
            f.write_str(if b { "1" } else { "0" })?;
        }
        if self.len > 96 {
            f.write_str(" ..")?;
        }
        f.write_str(")")
    }
}

impl FromIterator<bool> for BitStream {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut out = BitStream::new();
        for b in iter {
            out.push(b);
        }
        out
    }
}

/// Sequential reader over a [`BitStream`].
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    stream: &'a BitStream,
    pos: usize,
}

impl BitReader<'_> {
    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.stream.len - self.pos
    }

    /// Reads the next `width` bits MSB-first. When fewer remain, the missing
    /// low-order bits are zero. Returns `None` once the stream is exhausted.
    pub fn read_group(&mut self, width: u32) -> Option<u8> {
        debug_assert!(width <= 8);
        if self.pos >= self.stream.len {
            return None;
        }
        let mut group = 0u8;
        for _ in 0..width {
            group <<= 1;
            if let Some(true) = self.stream.get(self.pos) {
                group |= 1;
            }
            self.pos = (self.pos + 1).min(self.stream.len);
        }
        Some(group)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn msb_first_bytes() {
        let s = BitStream::from_bytes(&[0xA5]);
        assert_eq!(s, BitStream::from_bit_str("10100101"));
        let mut t = BitStream::new();
        t.push_bits(8, 32);
        assert_eq!(t.as_bytes(), &[0, 0, 0, 8]);
        assert_eq!(t.read_bits(0, 32), 8);
    }

    #[test]
    fn groups_are_zero_padded() {
        let s = BitStream::from_bit_str("01");
        let mut r = s.reader();
        assert_eq!(r.read_group(3), Some(0b010));
        assert_eq!(r.read_group(3), None);

        let s = BitStream::from_bit_str("11011");
        let mut r = s.reader();
        assert_eq!(r.read_group(3), Some(0b110));
        assert_eq!(r.read_group(2), Some(0b11));
        assert_eq!(r.remaining(), 0);
    }

    #[test]
    fn truncate_clears_tail() {
        let mut s = BitStream::from_bytes(&[0xFF, 0xFF]);
        s.truncate(11);
        assert_eq!(s.as_bytes(), &[0xFF, 0xE0]);
        assert_eq!(s, BitStream::from_bit_str("11111111111"));
    }

    proptest! {
        #[test]
        fn slice_matches_bitwise(bytes in proptest::collection::vec(any::<u8>(), 0..12), a in 0usize..96, b in 0usize..96) {
            let s = BitStream::from_bytes(&bytes);
            let (lo, hi) = (a.min(b).min(s.len()), a.max(b).min(s.len()));
            let sl = s.slice(lo, hi);
            let expect: BitStream = s.iter().skip(lo).take(hi - lo).collect();
            prop_assert_eq!(sl, expect);
        }

        #[test]
        fn unaligned_extend(prefix in 0u32..8, bytes in proptest::collection::vec(any::<u8>(), 0..8)) {
            let mut s = BitStream::new();
            s.push_bits(0, prefix);
            s.extend_from_bytes(&bytes);
            prop_assert_eq!(s.len(), prefix as usize + bytes.len() * 8);
            prop_assert_eq!(s.slice(prefix as usize, s.len()), BitStream::from_bytes(&bytes));
        }
    }
}
