//! Named functions used as generators and witnesses.

use super::table::TruthTable;
use crate::error::{Error, Result};

fn at_least_two(what: &str, k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::input(format!("{what} needs a parameter of at least 2, got {k}")));
    }
    Ok(())
}

/// `w_k` of arity `k+2`: 0 exactly when two inputs are 1, one of them `x1`.
pub fn w_k(k: usize) -> Result<TruthTable> {
    at_least_two("w_k", k)?;
    TruthTable::from_fn(k + 2, |i| !(i.count_ones() == 2 && i & 1 == 1))
}

/// `v_j(x) = w_j(¬x)`.
pub fn v_j(j: usize) -> Result<TruthTable> {
    at_least_two("v_j", j)?;
    Ok(w_k(j)?.reflect())
}

/// 0 exactly when at most one input is 1.
pub fn at_most_one_one(l: usize) -> Result<TruthTable> {
    at_least_two("at_most_one_one", l)?;
    TruthTable::from_fn(l, |i| i.count_ones() > 1)
}

pub fn majority() -> TruthTable {
    TruthTable::from_u64_unchecked(3, 0xE8)
}

/// `x + y + z`.
pub fn minority() -> TruthTable {
    TruthTable::from_u64_unchecked(3, 0x96)
}

/// `xy + yz + xz + x + z`.
pub fn two_thirds_minority() -> TruthTable {
    TruthTable::from_u64_unchecked(3, 0xB2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_values() {
        assert_eq!(w_k(2).unwrap().to_string(), "4:FDD7");
        assert_eq!(w_k(3).unwrap().to_string(), "5:FFFDFDD7");
        assert_eq!(v_j(2).unwrap().to_string(), "4:EBBF");
        assert_eq!(at_most_one_one(3).unwrap().to_string(), "3:E8");
        assert_eq!(at_most_one_one(3).unwrap().zero_set(), vec![0, 1, 2, 4]);
        assert!(w_k(1).is_err());
        assert!(v_j(0).is_err());
        assert!(at_most_one_one(1).is_err());
    }
}
