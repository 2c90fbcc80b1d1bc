use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Largest arity an explicit table may have.
pub const MAX_ARITY: usize = 16;

pub(crate) type Words = SmallVec<[u64; 1]>;

/// Mask with the low `2^n` bits set, for `n <= 6`.
#[inline]
pub(crate) const fn small_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

/// A Boolean function of explicit arity, stored as its `2^n`-bit table.
///
/// Bit `i` holds `f(a_1, ..., a_n)` where `i = sum a_j * 2^(j-1)`. Unused high
/// bits of the last word (arity < 6) are always zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthTable {
    arity: u8,
    words: Words,
}

fn word_count(arity: usize) -> usize {
    if arity <= 6 {
        1
    } else {
        1 << (arity - 6)
    }
}

fn check_arity(arity: usize) -> Result<()> {
    if arity > MAX_ARITY {
        Err(Error::input(format!("arity {arity} exceeds the maximum of {MAX_ARITY}")))
    } else {
        Ok(())
    }
}

impl TruthTable {
    /// The constant function of the given arity.
    pub fn constant(arity: usize, value: bool) -> Result<Self> {
        check_arity(arity)?;
        let mut words: Words = SmallVec::from_elem(if value { u64::MAX } else { 0 }, word_count(arity));
        if arity < 6 {
            words[0] &= small_mask(arity);
        }
        Ok(TruthTable { arity: arity as u8, words })
    }

    /// The projection onto `x_index` (1-based).
    pub fn projection(arity: usize, index: usize) -> Result<Self> {
        if index == 0 || index > arity {
            return Err(Error::input(format!("projection index {index} out of range for arity {arity}")));
        }
        Self::from_fn(arity, |i| (i >> (index - 1)) & 1 == 1)
    }

    /// Builds a table from a predicate on assignment indices.
    pub fn from_fn(arity: usize, mut f: impl FnMut(usize) -> bool) -> Result<Self> {
        let mut t = Self::constant(arity, false)?;
        for i in 0..t.len() {
            if f(i) {
                t.words[i >> 6] |= 1 << (i & 63);
            }
        }
        Ok(t)
    }

    /// Builds a table from a closure over the assignment bits `a_1..a_n`.
    pub fn from_assignments(arity: usize, mut f: impl FnMut(&[bool]) -> bool) -> Result<Self> {
        let mut buf = vec![false; arity];
        Self::from_fn(arity, |i| {
            for (j, b) in buf.iter_mut().enumerate() {
                *b = (i >> j) & 1 == 1;
            }
            f(&buf)
        })
    }

    /// Builds a table of arity at most 6 from the low `2^arity` bits of `bits`.
    pub fn from_u64(arity: usize, bits: u64) -> Result<Self> {
        if arity > 6 {
            return Err(Error::input(format!("from_u64 needs arity <= 6, got {arity}")));
        }
        if bits & !small_mask(arity) != 0 {
            return Err(Error::input(format!("table value {bits:#x} does not fit in {} bits", 1usize << arity)));
        }
        Ok(TruthTable { arity: arity as u8, words: SmallVec::from_elem(bits, 1) })
    }

    pub(crate) fn from_u64_unchecked(arity: usize, bits: u64) -> Self {
        debug_assert!(arity <= 6 && bits & !small_mask(arity) == 0);
        TruthTable { arity: arity as u8, words: SmallVec::from_elem(bits, 1) }
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    /// Number of table entries, `2^arity`.
    #[inline]
    pub fn len(&self) -> usize {
        1 << self.arity
    }

    /// A table always has at least one entry.
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn bit(&self, index: usize) -> bool {
        (self.words[index >> 6] >> (index & 63)) & 1 == 1
    }

    pub(crate) fn set_bit(&mut self, index: usize, value: bool) {
        let mask = 1u64 << (index & 63);
        if value {
            self.words[index >> 6] |= mask;
        } else {
            self.words[index >> 6] &= !mask;
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The table as a single word, when the arity is at most 6.
    pub fn as_u64(&self) -> Option<u64> {
        (self.arity <= 6).then(|| self.words[0])
    }

    /// `f(a)` for an explicit assignment.
    pub fn evaluate(&self, assignment: &[bool]) -> Result<bool> {
        if assignment.len() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: assignment.len() });
        }
        Ok(self.bit(encode(assignment)))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_constant(&self) -> Option<bool> {
        match self.count_ones() {
            0 => Some(false),
            n if n == self.len() => Some(true),
            _ => None,
        }
    }

    /// Indices of the zeros of `f`, ascending.
    pub fn zero_set(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.bit(i)).collect()
    }

    /// Pointwise negation `¬f`.
    pub fn negate(&self) -> Self {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        if self.arity < 6 {
            out.words[0] &= small_mask(self.arity());
        }
        out
    }

    /// The dual `f^d(x) = ¬f(¬x)`.
    pub fn dual(&self) -> Self {
        let last = self.len() - 1;
        let mut out = Self::constant(self.arity(), false).expect("arity already valid");
        for i in 0..self.len() {
            if !self.bit(last ^ i) {
                out.set_bit(i, true);
            }
        }
        out
    }

    /// `g(x) = f(¬x)`.
    pub fn reflect(&self) -> Self {
        let last = self.len() - 1;
        let mut out = Self::constant(self.arity(), false).expect("arity already valid");
        for i in 0..self.len() {
            if self.bit(last ^ i) {
                out.set_bit(i, true);
            }
        }
        out
    }

    fn zip(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Result<Self> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity(), found: other.arity() });
        }
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(other.words.iter()) {
            *w = op(*w, *o);
        }
        if self.arity < 6 {
            out.words[0] &= small_mask(self.arity());
        }
        Ok(out)
    }

    pub fn and(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a & b)
    }

    pub fn or(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a | b)
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a ^ b)
    }

    pub fn implies(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| !a | b)
    }

    /// Pointwise order `f <= g`.
    pub fn le(&self, other: &Self) -> Result<bool> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity(), found: other.arity() });
        }
        Ok(self.words.iter().zip(other.words.iter()).all(|(a, b)| a & !b == 0))
    }

    /// Whether `x_var` (0-based) is essential.
    pub fn is_essential(&self, var: usize) -> bool {
        if var >= self.arity() {
            return false;
        }
        if var < 6 {
            let shift = 1 << var;
            let low = crate::boolfn::table::VAR_LOW[var];
            self.words.iter().any(|w| ((w >> shift) ^ w) & low != 0)
        } else {
            let stride = 1 << (var - 6);
            (0..self.words.len()).filter(|j| j & stride == 0).any(|j| self.words[j] != self.words[j | stride])
        }
    }

    /// 0-based indices of the essential variables, ascending.
    pub fn essential_vars(&self) -> Vec<usize> {
        (0..self.arity()).filter(|&v| self.is_essential(v)).collect()
    }
}

/// For `v < 6`, the mask of in-word positions whose bit `v` is 0.
pub(crate) const VAR_LOW: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

/// Assignment to table index.
pub fn encode(assignment: &[bool]) -> usize {
    assignment.iter().enumerate().fold(0, |acc, (j, &b)| acc | ((b as usize) << j))
}

/// Table index to assignment of the given arity.
pub fn decode(index: usize, arity: usize) -> Vec<bool> {
    (0..arity).map(|j| (index >> j) & 1 == 1).collect()
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.arity)?;
        let mut started = false;
        for w in self.words.iter().rev() {
            if started {
                write!(f, "{w:016X}")?;
            } else if *w != 0 {
                write!(f, "{w:X}")?;
                started = true;
            }
        }
        if !started {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable({self})")
    }
}

impl FromStr for TruthTable {
    type Err = Error;

    /// Parses the `n:HEX` literal format.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (arity, hex) = s
            .split_once(':')
            .ok_or_else(|| Error::input(format!("function literal `{s}` is not of the form n:HEX")))?;
        let arity: usize = arity.parse().map_err(|_| Error::input(format!("bad arity in function literal `{s}`")))?;
        check_arity(arity)?;
        if hex.is_empty() || !hex.chars().all(|c| c.is_ascii_hexdigit()) {
            return Err(Error::input(format!("bad hex digits in function literal `{s}`")));
        }
        let mut t = Self::constant(arity, false)?;
        let capacity_bits = t.len();
        for (pos, c) in hex.chars().rev().enumerate() {
            let digit = c.to_digit(16).expect("checked hex digit") as u64;
            if digit == 0 {
                continue;
            }
            let bit = pos * 4;
            if bit + (64 - digit.leading_zeros() as usize) > capacity_bits {
                return Err(Error::input(format!("function literal `{s}` does not fit in {capacity_bits} table bits")));
            }
            t.words[bit >> 6] |= digit << (bit & 63);
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tt(s: &str) -> TruthTable {
        s.parse().unwrap()
    }

    #[test]
    fn literal_round_trip() {
        for s in ["0:0", "0:1", "1:3", "2:D", "4:FDD7", "3:E8"] {
            assert_eq!(tt(s).to_string(), s);
        }
        let big = TruthTable::constant(8, true).unwrap();
        assert_eq!(big.to_string(), format!("8:{}", "F".repeat(64)));
        assert_eq!(tt(&big.to_string()), big);
        assert_eq!(tt("3:00e8"), tt("3:E8"));
    }

    #[test]
    fn literal_rejects_overflow_and_garbage() {
        assert!("2:1F".parse::<TruthTable>().is_err());
        assert!("0:2".parse::<TruthTable>().is_err());
        assert!("17:0".parse::<TruthTable>().is_err());
        assert!("2:G".parse::<TruthTable>().is_err());
        assert!("2".parse::<TruthTable>().is_err());
    }

    #[test]
    fn evaluate_examples() {
        assert!(!tt("2:D").evaluate(&[true, false]).unwrap());
        assert!(tt("2:D").evaluate(&[false, false]).unwrap());
        assert!(!tt("4:FDD7").evaluate(&[true, true, false, false]).unwrap());
        assert_eq!(tt("2:D").evaluate(&[true]), Err(Error::ArityMismatch { expected: 2, found: 1 }));
    }

    #[test]
    fn zero_sets() {
        assert_eq!(tt("2:D").zero_set(), vec![1]);
        assert_eq!(decode(1, 2), vec![true, false]);
        let w2: Vec<_> = tt("4:FDD7").zero_set().into_iter().map(|i| decode(i, 4)).collect();
        assert_eq!(
            w2,
            vec![vec![true, true, false, false], vec![true, false, true, false], vec![true, false, false, true]]
        );
        assert!(tt("3:FF").zero_set().is_empty());
    }

    #[test]
    fn duals() {
        assert_eq!(tt("2:8").dual(), tt("2:E"));
        assert_eq!(tt("4:FDD7").dual().dual(), tt("4:FDD7"));
        assert_eq!(tt("3:E8").dual(), tt("3:E8"));
    }

    #[test]
    fn essential_variables() {
        assert_eq!(tt("2:A").essential_vars(), vec![0]);
        assert_eq!(tt("4:FDD7").essential_vars(), vec![0, 1, 2, 3]);
        let x8 = TruthTable::projection(8, 8).unwrap();
        assert_eq!(x8.essential_vars(), vec![7]);
        let x7 = TruthTable::projection(9, 7).unwrap();
        assert_eq!(x7.essential_vars(), vec![6]);
    }
}
