//! Algebraic normal form over the two-element field.

use std::fmt;

use super::table::TruthTable;

/// A multilinear polynomial; each monomial is a bit mask of variables
/// (bit `j` = `x_{j+1}`), the empty mask being the constant 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Anf {
    arity: usize,
    monomials: Vec<u32>,
}

impl Anf {
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Monomials ordered by degree, then by variable list.
    pub fn monomials(&self) -> &[u32] {
        &self.monomials
    }

    /// Variables of each monomial, 1-based.
    pub fn monomial_sets(&self) -> Vec<Vec<usize>> {
        self.monomials.iter().map(|&m| vars(m)).collect()
    }

    /// Degree of the polynomial; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.monomials.iter().map(|m| m.count_ones()).max().unwrap_or(0)
    }

    /// Evaluates every monomial directly at every point.
    pub fn to_table(&self) -> TruthTable {
        TruthTable::from_fn(self.arity, |a| self.monomials.iter().filter(|&&m| a as u32 & m == m).count() % 2 == 1)
            .expect("arity of an existing table")
    }
}

fn vars(m: u32) -> Vec<usize> {
    (0..32).filter(|j| (m >> j) & 1 == 1).map(|j| j + 1).collect()
}

/// Möbius transform of the table.
pub fn anf(f: &TruthTable) -> Anf {
    let n = f.arity();
    let mut words: Vec<u64> = f.words().to_vec();
    // Within-word butterflies.
    const LOW: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0F0F_0F0F_0F0F_0F0F,
        0x00FF_00FF_00FF_00FF,
        0x0000_FFFF_0000_FFFF,
        0x0000_0000_FFFF_FFFF,
    ];
    for w in words.iter_mut() {
        for (v, low) in LOW.iter().enumerate().take(n.min(6)) {
            *w ^= (*w & low) << (1 << v);
        }
    }
    // Across words.
    let mut stride = 1;
    while stride < words.len() {
        for i in 0..words.len() {
            if i & stride != 0 {
                words[i] ^= words[i ^ stride];
            }
        }
        stride <<= 1;
    }
    let len = 1usize << n;
    let mut monomials: Vec<u32> =
        (0..len).filter(|&i| (words[i / 64] >> (i % 64)) & 1 == 1).map(|i| i as u32).collect();
    monomials.sort_by_key(|&m| (m.count_ones(), vars(m)));
    Anf { arity: n, monomials }
}

impl fmt::Display for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return f.write_str("0");
        }
        for (i, &m) in self.monomials.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m == 0 {
                f.write_str("1")?;
            }
            for v in vars(m) {
                write!(f, "x{v}")?;
            }
        }
        Ok(())
    }
}
