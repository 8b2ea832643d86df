//! Occupancy words: finite 0/1 words that serve both as chain states and
//! as monomial indices. The leftmost letter is site 1.

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OccupancyWord {
    bits: Vec<u8>,
}

impl OccupancyWord {
    pub fn empty() -> Self {
        OccupancyWord { bits: Vec::new() }
    }

    pub fn new(bits: Vec<u8>) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "letters must be 0 or 1");
        OccupancyWord { bits }
    }

    /// Word of length `n` whose set letters are the set bits of `mask`
    /// (bit `i` of the mask is site `i + 1`).
    pub fn from_mask(mask: u64, n: usize) -> Self {
        OccupancyWord {
            bits: (0..n).map(|i| (mask >> i & 1) as u8).collect(),
        }
    }

    pub fn to_mask(&self) -> u64 {
        self.bits
            .iter()
            .enumerate()
            .fold(0, |m, (i, &b)| m | (u64::from(b) << i))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, i: usize) -> u8 {
        self.bits[i]
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn first(&self) -> Option<u8> {
        self.bits.first().copied()
    }

    pub fn last(&self) -> Option<u8> {
        self.bits.last().copied()
    }

    /// Word with positions `from..to` removed/kept helpers.
    pub fn slice(&self, from: usize, to: usize) -> Self {
        OccupancyWord {
            bits: self.bits[from..to].to_vec(),
        }
    }

    pub fn without_first(&self) -> Self {
        self.slice(1, self.len())
    }

    pub fn without_last(&self) -> Self {
        self.slice(0, self.len() - 1)
    }

    /// Remove the letter at `i` (used by the three-term rewrite).
    pub fn without_index(&self, i: usize) -> Self {
        let mut bits = self.bits.clone();
        bits.remove(i);
        OccupancyWord { bits }
    }

    /// Swap letters `i` and `i + 1`.
    pub fn swapped(&self, i: usize) -> Self {
        let mut bits = self.bits.clone();
        bits.swap(i, i + 1);
        OccupancyWord { bits }
    }

    /// Number of pairs `i < j` with `w_i = 1` and `w_j = 0`.
    pub fn inversions(&self) -> usize {
        let mut ones = 0;
        let mut inv = 0;
        for &b in &self.bits {
            if b == 1 {
                ones += 1;
            } else {
                inv += ones;
            }
        }
        inv
    }

    /// All words of a given length, in mask order.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = OccupancyWord> {
        (0u64..(1 << n)).map(move |m| OccupancyWord::from_mask(m, n))
    }
}

impl fmt::Display for OccupancyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits.is_empty() {
            return write!(f, "ε");
        }
        for &b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseWordError(pub String);

impl fmt::Display for ParseWordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid 0/1 word: {}", self.0)
    }
}

impl std::error::Error for ParseWordError {}

impl FromStr for OccupancyWord {
    type Err = ParseWordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "ε" || s.is_empty() {
            return Ok(OccupancyWord::empty());
        }
        let mut bits = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bits.push(0),
                '1' => bits.push(1),
                _ => return Err(ParseWordError(s.to_string())),
            }
        }
        Ok(OccupancyWord { bits })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mask_round_trip() {
        for n in 0..6 {
            for m in 0u64..(1 << n) {
                let w = OccupancyWord::from_mask(m, n);
                assert_eq!(w.len(), n);
                assert_eq!(w.to_mask(), m);
            }
        }
    }

    #[test]
    fn leftmost_letter_is_site_one() {
        let w = OccupancyWord::from_mask(0b001, 3);
        assert_eq!(w.to_string(), "100");
    }

    #[test]
    fn inversio_count() {
        assert_eq!("10".parse::<OccupancyWord>().unwrap().inversions(), 1);
        assert_eq!("1100".parse::<OccupancyWord>().unwrap().inversions(), 4);
        assert_eq!("0011".parse::<OccupancyWord>().unwrap().inversions(), 0);
    }

    #[test]
    fn parse_and_display() {
        let w: OccupancyWord = "0110".parse().unwrap();
        assert_eq!(w.to_string(), "0110");
        assert_eq!(OccupancyWord::empty().to_string(), "ε");
        assert!("012".parse::<OccupancyWord>().is_err());
    }
}
